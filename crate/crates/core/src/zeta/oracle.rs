//! Closed forms for the catalog rings, evaluated at a numeric prime.

use num_bigint::BigUint;

use super::{gaussian_binomial, ZetaPoly};
use crate::error::{Error, Result};
use crate::ffield::Prime;
use crate::liealg::Params;

/// `(name, parameters)` of every closed form.
const ORACLES: &[(&str, &[&str])] = &[
    ("H_ideal", &[]),
    ("H_sub", &[]),
    ("Mc_ideal", &["c"]),
    ("Mc_sub", &["c"]),
    ("Fil4_ideal", &[]),
    ("fc2_ideal", &["c"]),
    ("grenham_ideal", &["n"]),
    ("f2d_ideal", &["d"]),
    ("LE_ideal", &[]),
    ("Lnp8_ideal", &[]),
    ("vl_ideal", &["a", "b"]),
    ("sl2_sub", &["override"]),
    ("Hm_ideal", &["m"]),
    ("g53_ideal", &[]),
    ("g64_ideal", &[]),
    ("trn_ideal", &["n"]),
    ("graded_mc", &["c"]),
];

pub fn oracle_names() -> impl Iterator<Item = (&'static str, &'static [&'static str])> {
    ORACLES.iter().copied()
}

/// Coefficients under construction.
struct Build {
    q: u64,
    c: Vec<BigUint>,
}

impl Build {
    fn new(q: u64) -> Self {
        Build { q, c: Vec::new() }
    }

    fn at(&mut self, k: usize, v: impl Into<BigUint>) -> &mut Self {
        if self.c.len() <= k {
            self.c.resize(k + 1, BigUint::default());
        }
        self.c[k] += v.into();
        self
    }

    fn pw(&self, e: usize) -> BigUint {
        BigUint::from(self.q).pow(e as u32)
    }

    /// `Σ_i coeffs[i] p^i`
    fn poly(&self, coeffs: &[u64]) -> BigUint {
        coeffs.iter().enumerate().map(|(i, &a)| BigUint::from(a) * self.pw(i)).sum()
    }

    fn gb(&self, n: usize, k: usize) -> BigUint {
        gaussian_binomial(n as u64, k as u64, self.q)
    }

    /// `t^shift ζ_{F_p^n}`
    fn abelian(&mut self, n: usize, shift: usize) -> &mut Self {
        for k in 0..=n {
            let v = self.gb(n, k);
            self.at(shift + k, v);
        }
        self
    }

    fn finish(&self, p: Prime) -> ZetaPoly {
        ZetaPoly::new(p, self.c.clone())
    }
}

fn param(name: &str, params: &Params, key: &str) -> Result<i64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::BadParam { ring: name.to_string(), msg: format!("missing parameter `{key}`") })
}

fn ranged(name: &str, params: &Params, key: &str, lo: i64, hi: i64) -> Result<usize> {
    let v = param(name, params, key)?;
    if v < lo || v > hi {
        return Err(Error::BadParam { ring: name.to_string(), msg: format!("{key} = {v} outside {lo}..={hi}") });
    }
    Ok(v as usize)
}

/// Evaluate the closed form `name` at `p`.
pub fn closed_form(name: &str, params: &Params, p: Prime) -> Result<ZetaPoly> {
    let q = p.get() as u64;
    let mut b = Build::new(q);
    let domain = |msg: &str| Error::OutOfDomain { name: name.to_string(), p: p.get(), msg: msg.to_string() };
    match name {
        "H_ideal" => {
            b.abelian(2, 0).at(3, 1u32);
        }
        "H_sub" => {
            b = mc_sub(q, 2);
        }
        "Mc_ideal" | "graded_mc" => {
            let c = ranged(name, params, "c", 2, 40)?;
            b.abelian(2, 0);
            for k in 3..=c + 1 {
                b.at(k, 1u32);
            }
        }
        "Fil4_ideal" => {
            b.abelian(2, 0);
            for k in 3..=5 {
                b.at(k, 1u32);
            }
        }
        "Mc_sub" => {
            let c = ranged(name, params, "c", 2, 40)?;
            b = mc_sub(q, c);
        }
        "fc2_ideal" => {
            let c = ranged(name, params, "c", 2, 4)?;
            b.abelian(2, 0).at(3, 1u32);
            if c >= 3 {
                let v = b.poly(&[1, 1]);
                b.at(4, v).at(5, 1u32);
            }
            if c >= 4 {
                let (v5, v6) = (b.poly(&[0, 1, 1]), b.poly(&[1, 1, 1]));
                b.at(5, v5).at(6, v6.clone()).at(7, v6).at(8, 1u32);
            }
        }
        "grenham_ideal" => {
            let n = ranged(name, params, "n", 2, 32)?;
            b.abelian(n, 0).at(2 * n - 1, 1u32);
            for i in 1..=n.saturating_sub(2) {
                let outer = b.gb(n - 1, i);
                for k in 0..=n - i - 1 {
                    let v = &outer * b.gb(n - i - 1, k) * b.pw(i * k);
                    b.at(2 * i + 1 + n - i - 1 - k, v);
                }
            }
        }
        "f2d_ideal" => {
            let d = ranged(name, params, "d", 2, 16)?;
            let dd = d * (d - 1) / 2;
            b.abelian(d, 0).at(d + dd, 1u32);
            for i in 1..dd {
                let pi = staircase(i);
                let outer = b.gb(dd, i);
                for k in 0..=d - pi {
                    let v = &outer * b.gb(d - pi, k) * b.pw(i * k);
                    b.at(i + pi + d - pi - k, v);
                }
            }
        }
        "LE_ideal" => {
            let e = BigUint::from(elliptic_point_count(p));
            b.abelian(6, 0);
            let (v5, v6) = (b.pw(2) * &e, b.poly(&[0, 1, 1]) * &e);
            let (v7, v8) = (b.gb(3, 1), b.gb(3, 2));
            b.at(5, v5).at(6, v6).at(7, v7).at(8, v8).at(9, 1u32);
        }
        "Lnp8_ideal" => {
            if q < 3 {
                return Err(domain("the formula needs p >= 3"));
            }
            let nn = cubic_root_count(p);
            let n = BigUint::from(nn);
            b.abelian(5, 0);
            let v3 = b.pw(3) * &n;
            let v4 = b.pw(2) * b.gb(3, 1) * &n;
            let v5 = b.poly(&[0, 1, 2, 1 + nn]);
            let v6 = b.poly(&[1, 1, 1 + nn]);
            let v7 = b.gb(3, 1);
            b.at(3, v3).at(4, v4).at(5, v5).at(6, v6).at(7, v7).at(8, 1u32);
        }
        "vl_ideal" => {
            if q <= 3 {
                return Err(domain("the construction assumes p > 3"));
            }
            let _a = param(name, params, "a")?;
            let bb = param(name, params, "b")?;
            let b_zero = bb.rem_euclid(q as i64) == 0;
            let c = [
                b.poly(&[1]),
                b.poly(&[1, 1, 1]),
                b.poly(&[1, 1, 1]),
                b.poly(&[1, 1, 1, 1]),
                b.poly(&[1, 1, 1]),
                b.poly(&[1, 1, 1]),
                if b_zero { b.poly(&[1, 1]) } else { b.poly(&[1]) },
                b.poly(&[1]),
            ];
            for (k, v) in c.into_iter().enumerate() {
                b.at(k, v);
            }
        }
        "sl2_sub" => {
            let force = params.get("override").copied().unwrap_or(0) != 0;
            if q < 5 && !force {
                return Err(domain("the formula needs p >= 5; pass override=1 to evaluate anyway"));
            }
            b = mc_sub(q, 2);
        }
        "Hm_ideal" => {
            let m = ranged(name, params, "m", 1, 16)?;
            b.abelian(2 * m, 0).at(2 * m + 1, 1u32);
        }
        "g53_ideal" => {
            let v = b.pw(1);
            b.abelian(3, 0).at(3, v).at(4, 1u32).at(5, 1u32);
        }
        "g64_ideal" => {
            let c = [
                b.poly(&[1]),
                b.poly(&[1, 1, 1, 1]),
                b.poly(&[1, 1, 2, 1, 1]),
                b.poly(&[1, 1, 2, 1]),
                b.poly(&[1, 1, 1]),
                b.poly(&[1, 1]),
                b.poly(&[1]),
            ];
            for (k, v) in c.into_iter().enumerate() {
                b.at(k, v);
            }
        }
        "trn_ideal" => {
            let n = ranged(name, params, "n", 1, 4)?;
            let rows: &[&[u64]] = match n {
                1 => &[&[1], &[1]],
                2 => &[&[1], &[1, 1], &[2], &[1]],
                3 => &[&[1], &[1, 1, 1], &[3, 1, 1], &[3, 2], &[3], &[2], &[1]],
                _ => &[
                    &[1],
                    &[1, 1, 1, 1],
                    &[4, 1, 2, 1, 1],
                    &[4, 4, 4, 1],
                    &[7, 3, 3],
                    &[8, 3],
                    &[6, 2],
                    &[5],
                    &[3],
                    &[2],
                    &[1],
                ],
            };
            for (k, r) in rows.iter().enumerate() {
                let v = b.poly(r);
                b.at(k, v);
            }
        }
        _ => return Err(Error::UnknownOracle(name.to_string())),
    }
    Ok(b.finish(p))
}

/// Subalgebra counts of the maximal-class ring `M_c`, built up from `M_2`.
fn mc_sub(q: u64, c: usize) -> Build {
    let mut b = Build::new(q);
    let v = b.poly(&[1, 1]);
    let w = b.poly(&[1, 1, 1]);
    b.at(0, 1u32).at(1, v).at(2, w).at(3, 1u32);
    for cc in 3..=c {
        for a in 0..cc {
            let v = b.gb(cc - 1, a) * b.pw(cc - 1 - a);
            b.at(a + 2, v);
        }
        let v = b.pw(cc);
        b.at(cc, v);
    }
    b
}

/// `k` with `binom(k-1, 2) < i <= binom(k, 2)`
fn staircase(i: usize) -> usize {
    let mut k = 2;
    while k * (k - 1) / 2 < i {
        k += 1;
    }
    k
}

/// Points of `y^2 z = x^3 - x z^2` in `P^2(F_p)`, by exhaustive search over
/// the normalized representatives `(x:y:1)`, `(x:1:0)`, `(1:0:0)`.
pub fn elliptic_point_count(p: Prime) -> u64 {
    let q = p.get() as u64;
    let on = |x: u64, y: u64, z: u64| {
        let lhs = y * y % q * z % q;
        let rhs = (x * x % q * x % q + q - x * z % q * z % q) % q;
        lhs == rhs
    };
    let mut count = 0;
    for x in 0..q {
        for y in 0..q {
            count += on(x, y, 1) as u64;
        }
        count += on(x, 1, 0) as u64;
    }
    count + on(1, 0, 0) as u64
}

/// Roots of `x^3 - 2` in F_p.
pub fn cubic_root_count(p: Prime) -> u64 {
    let q = p.get() as u64;
    (0..q).filter(|&x| x * x % q * x % q == 2 % q).count() as u64
}
