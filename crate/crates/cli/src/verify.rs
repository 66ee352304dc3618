//! Counting versus closed forms over fixed grids of primes.

use std::path::Path;
use std::time::Instant;

use fpzeta::zeta::closed_form;
use fpzeta::{count_zeta, CountOptions, Error, Flavor, Method, Params, Prime, ZetaPoly};
use num_bigint::BigUint;
use serde::Serialize;

use crate::input::RingSpec;
use crate::record::{Meta, RunRecord};
use crate::Failure;

type Kv = &'static [(&'static str, i64)];

/// What the computed polynomial is compared with.
#[derive(Clone, Copy)]
enum Expect {
    /// a closed form with its parameters
    Oracle(&'static str, Kv),
    /// another catalog ring counted by brute force
    Ring(&'static str, Kv),
    /// the same ring counted by brute force
    Brute,
}

#[derive(Clone, Copy)]
struct Case {
    ring: &'static str,
    params: Kv,
    flavor: Flavor,
    method: Method,
    expect: Expect,
    primes: &'static [u64],
}

const fn oracle(ring: &'static str, params: Kv, flavor: Flavor, name: &'static str, op: Kv, primes: &'static [u64]) -> Case {
    Case { ring, params, flavor, method: Method::Auto, expect: Expect::Oracle(name, op), primes }
}

const fn ideal(ring: &'static str, params: Kv, name: &'static str, primes: &'static [u64]) -> Case {
    oracle(ring, params, Flavor::Ideal, name, params, primes)
}

const fn cross(ring: &'static str, params: Kv) -> Case {
    Case { ring, params, flavor: Flavor::Ideal, method: Method::Class2, expect: Expect::Brute, primes: P235 }
}

const P23: &[u64] = &[2, 3];
const P235: &[u64] = &[2, 3, 5];

pub const SUITES: &[&str] = &[
    "heisenberg", "mc-ideal", "mc-sub", "fil4", "free", "class2", "f2d", "grenham", "le", "lnp8", "vl", "sl2", "trn",
    "graded-mc", "other",
];

fn suite(name: &str) -> Option<Vec<Case>> {
    use Flavor::*;
    let cases = match name {
        "heisenberg" => vec![
            oracle("heisenberg", &[], Ideal, "H_ideal", &[], &[2, 3, 5, 7, 11, 13]),
            oracle("heisenberg", &[], Sub, "H_sub", &[], &[2, 3, 5, 7, 11, 13]),
        ],
        "mc-ideal" => vec![
            ideal("M", &[("c", 2)], "Mc_ideal", P235),
            ideal("M", &[("c", 3)], "Mc_ideal", P235),
            ideal("M", &[("c", 4)], "Mc_ideal", P235),
            ideal("M", &[("c", 5)], "Mc_ideal", P235),
        ],
        "mc-sub" => vec![
            oracle("M", &[("c", 2)], Sub, "Mc_sub", &[("c", 2)], P23),
            oracle("M", &[("c", 3)], Sub, "Mc_sub", &[("c", 3)], P23),
            oracle("M", &[("c", 4)], Sub, "Mc_sub", &[("c", 4)], P23),
        ],
        "fil4" => vec![
            ideal("fil4", &[], "Fil4_ideal", P235),
            Case { ring: "fil4", params: &[], flavor: Ideal, method: Method::Auto, expect: Expect::Ring("M", &[("c", 4)]), primes: P235 },
        ],
        "free" => vec![
            ideal("f", &[("c", 2), ("d", 2)], "fc2_ideal", P235).with_oracle_params(&[("c", 2)]),
            ideal("f", &[("c", 3), ("d", 2)], "fc2_ideal", P235).with_oracle_params(&[("c", 3)]),
            ideal("f", &[("c", 4), ("d", 2)], "fc2_ideal", &[2]).with_oracle_params(&[("c", 4)]),
        ],
        "class2" => vec![
            cross("heisenberg", &[]),
            cross("f", &[("c", 2), ("d", 2)]),
            cross("f", &[("c", 2), ("d", 3)]),
            cross("grenham", &[("n", 3)]),
            cross("H_m", &[("m", 2)]),
            cross("g64", &[]),
        ],
        "f2d" => vec![
            ideal("f", &[("c", 2), ("d", 2)], "f2d_ideal", P235).with_oracle_params(&[("d", 2)]),
            ideal("f", &[("c", 2), ("d", 3)], "f2d_ideal", P235).with_oracle_params(&[("d", 3)]),
            ideal("f", &[("c", 2), ("d", 4)], "f2d_ideal", P235).with_oracle_params(&[("d", 4)]),
        ],
        "grenham" => vec![
            ideal("grenham", &[("n", 2)], "grenham_ideal", P235),
            ideal("grenham", &[("n", 3)], "grenham_ideal", P235),
            ideal("grenham", &[("n", 4)], "grenham_ideal", P235),
        ],
        "le" => vec![ideal("L_E", &[], "LE_ideal", &[3, 5, 7, 11, 13])],
        "lnp8" => vec![ideal("L_np8", &[], "Lnp8_ideal", &[5, 7, 11, 13, 31])],
        "vl" => vec![
            ideal("vl", &[("a", 1), ("b", 1)], "vl_ideal", &[5, 7]),
            ideal("vl", &[("a", 1), ("b", 0)], "vl_ideal", &[5, 7]),
            ideal("vl", &[("a", 0), ("b", 0)], "vl_ideal", &[5, 7]),
        ],
        "sl2" => vec![oracle("sl2", &[], Sub, "sl2_sub", &[], &[5, 7, 11])],
        "trn" => vec![
            ideal("tr", &[("n", 1)], "trn_ideal", P235),
            ideal("tr", &[("n", 2)], "trn_ideal", P235),
            ideal("tr", &[("n", 3)], "trn_ideal", P235),
            ideal("tr", &[("n", 4)], "trn_ideal", &[2]),
        ],
        "graded-mc" => vec![
            oracle("m3_2", &[], GradedIdeal, "graded_mc", &[("c", 2)], P235),
            oracle("m4_3", &[], GradedIdeal, "graded_mc", &[("c", 3)], P235),
            oracle("m5_4_1", &[], GradedIdeal, "graded_mc", &[("c", 4)], P235),
            oracle("m6_5_1", &[], GradedIdeal, "graded_mc", &[("c", 5)], P235),
        ],
        "other" => vec![
            ideal("H_m", &[("m", 1)], "Hm_ideal", P235),
            ideal("H_m", &[("m", 2)], "Hm_ideal", P235),
            ideal("g53", &[], "g53_ideal", P235),
            ideal("g64", &[], "g64_ideal", P235),
        ],
        "all" => SUITES.iter().flat_map(|s| suite(s).unwrap()).collect(),
        _ => return None,
    };
    Some(cases)
}

impl Case {
    const fn with_oracle_params(mut self, op: Kv) -> Self {
        if let Expect::Oracle(name, _) = self.expect {
            self.expect = Expect::Oracle(name, op);
        }
        self
    }

    fn label(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let target = match self.expect {
            Expect::Oracle(name, op) => {
                let op: Vec<String> = op.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("{name}({})", op.join(","))
            }
            Expect::Ring(r, rp) => {
                let rp: Vec<String> = rp.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("{r}({}) by brute", rp.join(","))
            }
            Expect::Brute => "brute".into(),
        };
        format!("{}({}) {} vs {target}", self.ring, params.join(","), self.flavor)
    }
}

fn params(kv: Kv) -> Params {
    kv.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn expected(case: &Case, p: Prime) -> Result<ZetaPoly, Error> {
    let brute = CountOptions { method: Method::Brute, ..CountOptions::default() };
    match case.expect {
        Expect::Oracle(name, op) => closed_form(name, &params(op), p),
        Expect::Ring(r, rp) => Ok(count_zeta(&fpzeta::catalog(r, &params(rp))?, p, case.flavor, &brute)?.poly),
        Expect::Brute => {
            let ring = fpzeta::catalog(case.ring, &params(case.params))?;
            Ok(count_zeta(&ring, p, case.flavor, &brute)?.poly)
        }
    }
}

#[derive(Serialize)]
struct Row {
    case: String,
    status: &'static str,
    record: RunRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

pub fn run(name: &str, primes: Option<&[Prime]>, json: bool, golden: Option<&Path>, bless: bool) -> Result<(), Failure> {
    let cases = suite(name).ok_or_else(|| Failure::Usage(format!("unknown suite `{name}`; known: all, {}", SUITES.join(", "))))?;
    let mut rows = Vec::new();
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for case in &cases {
        let spec = RingSpec::resolve(case.ring, &case.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>())?;
        let grid: Vec<Prime> = match primes {
            Some(ps) => ps.to_vec(),
            None => case.primes.iter().map(|&q| Prime::new(q)).collect::<Result<_, _>>()?,
        };
        for p in grid {
            let start = Instant::now();
            let opts = CountOptions { method: case.method, ..CountOptions::default() };
            let result = count_zeta(&spec.ring, p, case.flavor, &opts)?;
            let meta = Meta { elapsed_ms: start.elapsed().as_millis() as u64, nodes: result.nodes };
            let record = RunRecord::new(&spec, case.flavor, result.method, &result.poly, Some(meta));
            let (status, want, note) = match expected(case, p) {
                Ok(want) if want == result.poly => {
                    passed += 1;
                    ("PASS", None, None)
                }
                Ok(want) => {
                    failed += 1;
                    ("FAIL", Some(want), None)
                }
                Err(e @ Error::OutOfDomain { .. }) => {
                    skipped += 1;
                    ("SKIP", None, Some(e.to_string()))
                }
                Err(e) => return Err(e.into()),
            };
            if !json {
                println!("{status} {} p={} [{}] {}ms", case.label(), p, result.method, meta.elapsed_ms);
                if let Some(w) = &want {
                    println!("    computed: {}", result.poly);
                    println!("    expected: {w}");
                }
                if let Some(n) = &note {
                    println!("    {n}");
                }
            }
            rows.push(Row {
                case: case.label(),
                status,
                record,
                expected: want.map(|w| w.coefficients().iter().map(BigUint::to_string).collect()),
                note,
            });
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
    } else {
        println!("{passed} passed, {failed} failed, {skipped} skipped");
    }

    let mut golden_ok = true;
    if let Some(dir) = golden {
        let records: Vec<RunRecord> = rows.iter().map(|r| r.record.without_meta()).collect();
        let text = serde_json::to_string_pretty(&records).expect("records serialize") + "\n";
        let path = dir.join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
            std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        } else {
            let stored = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Usage(format!("{}: {e}; rerun with --bless to create it", path.display())))?;
            golden_ok = stored == text;
            if !golden_ok {
                eprintln!("golden mismatch: {}", path.display());
            }
        }
    }
    if failed > 0 || !golden_ok {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_resolves() {
        for name in SUITES {
            for case in suite(name).unwrap() {
                let spec = RingSpec::resolve(case.ring, &case.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>());
                assert!(spec.is_ok(), "{}", case.label());
                if let Expect::Oracle(o, op) = case.expect {
                    let p = Prime::new(*case.primes.last().unwrap()).unwrap();
                    assert!(closed_form(o, &params(op), p).is_ok(), "{}", case.label());
                }
            }
        }
        assert!(suite("nope").is_none());
    }
}
