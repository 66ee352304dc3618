//! Zeta polynomials over F_p, their closed forms, and uniformity fits.

mod fit;
mod oracle;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::ffield::Prime;

pub use fit::{
    fit_coefficient, render, scan, scan_report, ClassFit, CoefficientReport, FitResult, UniformityReport,
    Verdict,
};
pub use oracle::{closed_form, cubic_root_count, elliptic_point_count, oracle_names};

/// `Σ_k a_k t^k`, where `a_k` counts closed subspaces of index `p^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZetaPoly {
    p: Prime,
    coefficients: Vec<BigUint>,
}

impl ZetaPoly {
    pub fn new(p: Prime, coefficients: Vec<BigUint>) -> Self {
        ZetaPoly { p, coefficients }
    }

    pub fn from_u64(p: Prime, coefficients: &[u64]) -> Self {
        ZetaPoly { p, coefficients: coefficients.iter().map(|&c| BigUint::from(c)).collect() }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> BigUint {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    /// Degree in `t`; equals the dimension of the ring.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Sum of the coefficients, i.e. the number of closed subspaces.
    pub fn total(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coefficients.iter().map(|c| u64::try_from(c).ok()).collect()
    }
}

impl fmt::Display for ZetaPoly {
    /// `1 + (4)t + (1)t^2 + (1)t^3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coefficients.iter().enumerate() {
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, " + ({c})t")?,
                _ => write!(f, " + ({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Number of `k`-dimensional subspaces of F_q^n (`q` need not be prime).
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - &one;
        den *= q.pow((i + 1) as u32) - &one;
    }
    num / den
}

/// `ζ_{F_p^n}`: every subspace of the abelian ring is closed.
pub fn abelian_zeta(n: usize, p: Prime) -> ZetaPoly {
    let q = p.get() as u64;
    ZetaPoly::new(p, (0..=n as u64).map(|k| gaussian_binomial(n as u64, k, q)).collect())
}
