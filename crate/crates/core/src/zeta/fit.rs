//! Exact polynomial fits of coefficients across primes.
//!
//! A coefficient sampled at primes `p_1 < p_2 < ...` is interpolated through
//! its first `D + 1` samples; it is *polynomial* when that interpolant
//! reproduces every later sample exactly. With a modulus `N` each residue
//! class of `p mod N` is fitted on its own. Classes not coprime to `N` hold
//! at most one prime and are reported as raw values.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{count_zeta, CountOptions, Flavor};
use crate::error::{Error, Result};
use crate::ffield::{Prime, Rational};
use crate::liealg::LieRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Polynomial,
    NonPolynomial,
    /// A class of primes dividing the modulus; values are listed, not fitted.
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFit {
    pub residue: Option<u64>,
    pub primes: Vec<u64>,
    pub verdict: Verdict,
    /// Coefficients of the interpolant in ascending powers of `p`.
    #[serde(with = "rational_strings")]
    pub polynomial: Vec<Rational>,
    pub rendered: String,
    /// First sampled prime the interpolant gets wrong.
    pub first_mismatch: Option<u64>,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitResult {
    pub degree_bound: usize,
    pub modulus: Option<u64>,
    pub verdict: Verdict,
    pub classes: Vec<ClassFit>,
}

impl FitResult {
    pub fn is_polynomial(&self) -> bool {
        self.verdict == Verdict::Polynomial
    }

    /// The single interpolant when no modulus was used.
    pub fn polynomial(&self) -> Option<&[Rational]> {
        match (self.modulus, self.verdict) {
            (None, Verdict::Polynomial) => Some(&self.classes[0].polynomial),
            _ => None,
        }
    }

    pub fn class(&self, residue: u64) -> Option<&ClassFit> {
        self.classes.iter().find(|c| c.residue == Some(residue))
    }
}

mod rational_strings {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| s.parse::<Rational>().map_err(D::Error::custom)).collect()
    }
}

/// Interpolant through `points`, ascending coefficients with trailing zeros
/// removed.
fn lagrange(points: &[(BigInt, BigInt)]) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); points.len()];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis numerator Π_{j≠i} (x - x_j), ascending
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * Rational::from_integer(xj.clone());
            }
            basis = next;
            denom *= Rational::from_integer(xi - xj);
        }
        let scale = Rational::from_integer(yi.clone()) / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() == 1 && coeffs[0].is_zero() {
        coeffs.clear();
    }
    coeffs
}

fn evaluate(coeffs: &[Rational], x: &BigInt) -> Rational {
    let x = Rational::from_integer(x.clone());
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
}

/// `3/2*p^2 - p + 1` style rendering, highest power first.
pub fn render(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "p".to_string(),
            _ => format!("p^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fit_class(residue: Option<u64>, samples: &[(u64, BigInt)], degree: usize) -> Result<ClassFit> {
    let needed = degree + 2;
    if samples.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: samples.len(), class: residue });
    }
    let points: Vec<(BigInt, BigInt)> = samples.iter().map(|(p, v)| (BigInt::from(*p), v.clone())).collect();
    let poly = lagrange(&points[..=degree]);
    let first_mismatch = samples[degree + 1..]
        .iter()
        .zip(&points[degree + 1..])
        .find(|(_, (x, y))| evaluate(&poly, x) != Rational::from_integer(y.clone()))
        .map(|((p, _), _)| *p);
    let verdict = if first_mismatch.is_none() { Verdict::Polynomial } else { Verdict::NonPolynomial };
    Ok(ClassFit {
        residue,
        primes: samples.iter().map(|s| s.0).collect(),
        verdict,
        rendered: render(&poly),
        polynomial: poly,
        first_mismatch,
        values: samples.iter().map(|s| s.1.to_string()).collect(),
    })
}

/// Fit one coefficient sampled at distinct primes.
pub fn fit_coefficient(samples: &[(u64, BigInt)], degree: usize, modulus: Option<u64>) -> Result<FitResult> {
    let mut sorted = samples.to_vec();
    sorted.sort_by_key(|s| s.0);
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateSample(w[0].0));
    }
    let classes = match modulus {
        None | Some(1) => vec![fit_class(None, &sorted, degree)?],
        Some(0) => return Err(Error::BadParam { ring: "fit".into(), msg: "modulus must be positive".into() }),
        Some(n) => {
            let mut out = Vec::new();
            for r in 0..n {
                let members: Vec<(u64, BigInt)> = sorted.iter().filter(|s| s.0 % n == r).cloned().collect();
                if r.gcd(&n) != 1 {
                    if !members.is_empty() {
                        out.push(ClassFit {
                            residue: Some(r),
                            primes: members.iter().map(|s| s.0).collect(),
                            verdict: Verdict::Exceptional,
                            polynomial: Vec::new(),
                            rendered: String::new(),
                            first_mismatch: None,
                            values: members.iter().map(|s| s.1.to_string()).collect(),
                        });
                    }
                    continue;
                }
                out.push(fit_class(Some(r), &members, degree)?);
            }
            out
        }
    };
    let verdict = if classes.iter().all(|c| c.verdict != Verdict::NonPolynomial) {
        Verdict::Polynomial
    } else {
        Verdict::NonPolynomial
    };
    Ok(FitResult { degree_bound: degree, modulus: modulus.filter(|&n| n > 1), verdict, classes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientReport {
    /// power of `t`
    pub index: usize,
    pub fit: FitResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub ring: String,
    pub flavor: Flavor,
    pub primes: Vec<u64>,
    pub degree_bound: usize,
    pub modulus: Option<u64>,
    pub coefficients: Vec<CoefficientReport>,
    /// `uniform`, `porc`, `non-uniform` or `non-porc`, relative to the degree
    /// bound and the sampled primes.
    pub verdict: String,
}

impl UniformityReport {
    pub fn coefficient(&self, index: usize) -> Option<&FitResult> {
        self.coefficients.iter().find(|c| c.index == index).map(|c| &c.fit)
    }
}

/// Build a report from per-prime coefficient vectors.
pub fn scan_report(
    ring: &str,
    flavor: Flavor,
    samples: &[(u64, Vec<BigUint>)],
    degree: usize,
    modulus: Option<u64>,
) -> Result<UniformityReport> {
    let len = samples.iter().map(|s| s.1.len()).max().unwrap_or(0);
    let mut coefficients = Vec::with_capacity(len);
    for k in 0..len {
        let column: Vec<(u64, BigInt)> = samples
            .iter()
            .map(|(p, c)| (*p, BigInt::from(c.get(k).cloned().unwrap_or_default())))
            .collect();
        coefficients.push(CoefficientReport { index: k, fit: fit_coefficient(&column, degree, modulus)? });
    }
    let all = coefficients.iter().all(|c| c.fit.is_polynomial());
    let modulus = modulus.filter(|&n| n > 1);
    let verdict = match (modulus.is_some(), all) {
        (false, true) => "uniform",
        (false, false) => "non-uniform",
        (true, true) => "porc",
        (true, false) => "non-porc",
    };
    let mut primes: Vec<u64> = samples.iter().map(|s| s.0).collect();
    primes.sort_unstable();
    Ok(UniformityReport {
        ring: ring.to_string(),
        flavor,
        primes,
        degree_bound: degree,
        modulus,
        coefficients,
        verdict: verdict.to_string(),
    })
}

/// Count at every prime (in parallel) and fit each coefficient.
pub fn scan(
    ring: &LieRing,
    flavor: Flavor,
    primes: &[Prime],
    degree: usize,
    modulus: Option<u64>,
    opts: &CountOptions,
) -> Result<UniformityReport> {
    let needed = degree + 2;
    if modulus.filter(|&n| n > 1).is_none() && primes.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: primes.len(), class: None });
    }
    let mut samples: Vec<(u64, Vec<BigUint>)> = primes
        .par_iter()
        .map(|&p| count_zeta(ring, p, flavor, opts).map(|r| (p.get() as u64, r.poly.coefficients().to_vec())))
        .collect::<Result<_>>()?;
    samples.sort_by_key(|s| s.0);
    scan_report(ring.name(), flavor, &samples, degree, modulus)
}
