//! Ring and prime arguments.

use std::path::Path;

use fpzeta::ffield::{is_prime, primes_in};
use fpzeta::liealg::lookup;
use fpzeta::{catalog, parse_presentation, Error, LieRing, Params, Prime};

use crate::Failure;

/// A resolved `--ring` argument.
pub struct RingSpec {
    /// canonical catalog name, or the path of a ring file
    pub name: String,
    /// every catalog parameter, defaults included
    pub params: Params,
    pub ring: LieRing,
}

impl RingSpec {
    pub fn resolve(arg: &str, raw_params: &[String]) -> Result<Self, Failure> {
        let mut given = Params::new();
        for kv in raw_params {
            let (k, v) = kv.split_once('=').ok_or_else(|| Failure::Usage(format!("`{kv}` is not of the form k=v")))?;
            let v: i64 = v.trim().parse().map_err(|_| Failure::Usage(format!("`{v}` is not an integer")))?;
            if given.insert(k.trim().to_string(), v).is_some() {
                return Err(Failure::Usage(format!("parameter `{k}` given twice")));
            }
        }
        if let Some(entry) = lookup(arg) {
            let ring = catalog(arg, &given)?;
            let mut params = entry.default_params();
            params.extend(given);
            return Ok(RingSpec { name: entry.name.to_string(), params, ring });
        }
        let path = Path::new(arg);
        if !path.is_file() {
            return Err(Error::UnknownRing(arg.to_string()).into());
        }
        if !given.is_empty() {
            return Err(Failure::Usage("--param applies only to catalog rings".into()));
        }
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        let ring = parse_presentation(&text)?;
        Ok(RingSpec { name: arg.to_string(), params: Params::new(), ring })
    }
}

/// `a:b` for every prime in `[a, b]`, or a comma-separated list of primes.
pub fn parse_primes(s: &str) -> Result<Vec<Prime>, Failure> {
    let bad = |msg: String| Failure::Usage(msg);
    let values: Vec<u64> = if let Some((a, b)) = s.split_once(':') {
        let a: u64 = a.trim().parse().map_err(|_| bad(format!("bad range start `{a}`")))?;
        let b: u64 = b.trim().parse().map_err(|_| bad(format!("bad range end `{b}`")))?;
        if a > b {
            return Err(bad(format!("empty range {a}:{b}")));
        }
        primes_in(a, b)
    } else {
        let mut out = Vec::new();
        for part in s.split(',') {
            let q: u64 = part.trim().parse().map_err(|_| bad(format!("`{part}` is not a number")))?;
            if !is_prime(q) {
                return Err(Error::NotPrime(q).into());
            }
            out.push(q);
        }
        out
    };
    if values.is_empty() {
        return Err(bad(format!("no primes in `{s}`")));
    }
    let mut primes = values.into_iter().map(Prime::new).collect::<Result<Vec<_>, _>>()?;
    primes.sort_by_key(|p| p.get());
    primes.dedup();
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(s: &str) -> Vec<u32> {
        parse_primes(s).ok().unwrap().iter().map(|p| p.get()).collect()
    }

    #[test]
    fn ranges_and_lists() {
        assert_eq!(values("2:13"), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(values("7,3,3"), vec![3, 7]);
        assert_eq!(values(" 5 "), vec![5]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_primes("4"), Err(Failure::Lib(Error::NotPrime(4)))));
        assert!(matches!(parse_primes("2,9"), Err(Failure::Lib(Error::NotPrime(9)))));
        for s in ["14:16", "9:2", "a:3", "", "2,,3"] {
            assert!(parse_primes(s).is_err(), "{s}");
        }
    }
}
