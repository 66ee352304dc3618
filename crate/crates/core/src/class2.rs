//! Ideal counting for rings of nilpotency class 2.
//!
//! Let `L' = [L, L]`, of dimension `d2`, with `d1 = n - d2`. An ideal `Λ`
//! meets `L'` in some `Λ₂` of codimension `i` in `L'`, and projects to a
//! subspace `Λ₁` of `L/L'`. Because `[L, L']` vanishes, `Λ` is an ideal iff
//! `[Λ, L] ⊆ Λ₂`, i.e. iff `Λ₁` lies in
//!
//! ```text
//! X(Λ₂) = { x ∈ L/L' : [x, L] ⊆ Λ₂ },
//! ```
//!
//! and each `Λ₁` of dimension `j` lifts in `p^{i·j}` ways. Summing over all
//! `Λ₂ ≤ L'`, including `0` and `L'` itself,
//!
//! ```text
//! ζ = Σ_{Λ₂} Σ_j binom(rk X, j)_p p^{i·j} t^{i + d1 - j}.
//! ```

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::enumerate::{iterate_patterns, EchelonMatrix, MAX_DIM};
use crate::error::{Error, Result};
use crate::ffield::{linalg, Prime};
use crate::liealg::{lower_central_series, LieRing};
use crate::zeta::{gaussian_binomial, ZetaPoly};

/// `L = span(complement) ⊕ L'` for a class-2 ring mod `p`.
#[derive(Debug, Clone)]
pub struct Class2Split {
    p: Prime,
    n: usize,
    /// RREF basis of `L'`
    derived: Vec<Vec<u32>>,
    derived_pivots: Vec<usize>,
    /// standard basis vectors spanning a complement of `L'`
    complement: Vec<usize>,
    /// `[u_b, u_a]` for complement vectors, indexed `b * d1 + a`
    products: Vec<Vec<u32>>,
}

/// One `Λ₂ ≤ L'` with the data of `X(Λ₂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda2Datum {
    /// `Λ₂` in coordinates of the basis of `L'`
    pub lambda2: EchelonMatrix,
    pub codim: usize,
    /// `dim X(Λ₂)` inside `L/L'`
    pub rank: usize,
    /// `|L/L' : X(Λ₂)| = p^{index_exponent}`
    pub index_exponent: usize,
}

impl Class2Split {
    pub fn new(ring: &LieRing, p: Prime) -> Result<Self> {
        let lcs = lower_central_series(ring, p);
        if lcs.class != Some(2) {
            let found = lcs.class.map_or_else(|| "not nilpotent".to_string(), |c| c.to_string());
            return Err(Error::NotClass2 { found, p: p.get() });
        }
        let n = ring.dim();
        let mut derived = lcs.terms[1].clone();
        let derived_pivots = linalg::rref(&mut derived, p);
        if derived.len() > MAX_DIM {
            return Err(Error::DimensionTooLarge(derived.len()));
        }
        let complement: Vec<usize> = (0..n).filter(|c| !derived_pivots.contains(c)).collect();
        let sc = ring.structure(p);
        let products = complement
            .iter()
            .flat_map(|&b| complement.iter().map(move |&a| (b, a)))
            .map(|(b, a)| sc.get(b, a).to_vec())
            .collect();
        Ok(Class2Split { p, n, derived, derived_pivots, complement, products })
    }

    pub fn d1(&self) -> usize {
        self.complement.len()
    }

    pub fn d2(&self) -> usize {
        self.derived.len()
    }

    /// `Λ₂` as an RREF basis of a subspace of F_p^n, with its pivots.
    fn embed(&self, lambda2: &EchelonMatrix) -> (Vec<Vec<u32>>, Vec<usize>) {
        let p = self.p;
        let rows: Vec<Vec<u32>> = lambda2
            .rows()
            .iter()
            .map(|coords| {
                let mut v = vec![0u32; self.n];
                for (c, basis) in coords.iter().zip(&self.derived) {
                    if *c != 0 {
                        for (x, &y) in v.iter_mut().zip(basis) {
                            *x = p.mul_add(*x, *c, y);
                        }
                    }
                }
                v
            })
            .collect();
        let pivots = lambda2.pattern().pivots().iter().map(|&t| self.derived_pivots[t]).collect();
        (rows, pivots)
    }

    /// `(index exponent, rank)` of `X(Λ₂)`: the kernel of
    /// `x ↦ ([x, u_a] mod Λ₂)_a` on the complement.
    pub fn compute_x(&self, lambda2: &EchelonMatrix) -> (usize, usize) {
        assert_eq!(lambda2.pattern().dim(), self.d2());
        let (rows, pivots) = self.embed(lambda2);
        let d1 = self.d1();
        let map: Vec<Vec<u32>> = (0..d1)
            .map(|b| {
                let mut image = Vec::with_capacity(d1 * self.n);
                for a in 0..d1 {
                    let mut v = self.products[b * d1 + a].clone();
                    linalg::reduce_against(&mut v, &rows, &pivots, self.p);
                    image.extend_from_slice(&v);
                }
                image
            })
            .collect();
        let r = linalg::rank(&map, self.p);
        (r, d1 - r)
    }

    /// Every `Λ₂ ≤ L'` in pattern order.
    pub fn lambda2_data(&self) -> impl Iterator<Item = Lambda2Datum> + '_ {
        iterate_patterns(self.d2()).flat_map(move |pat| {
            EchelonMatrix::all(pat, self.p).map(move |m| {
                let (index_exponent, rank) = self.compute_x(&m);
                Lambda2Datum { codim: m.codim(), lambda2: m, rank, index_exponent }
            })
        })
    }
}

/// `(index exponent, rank)` of `X(Λ₂)` for `Λ₂` given in coordinates of the
/// RREF basis of `L'`.
pub fn compute_x(ring: &LieRing, p: Prime, lambda2: &EchelonMatrix) -> Result<(usize, usize)> {
    let split = Class2Split::new(ring, p)?;
    if lambda2.pattern().dim() != split.d2() {
        return Err(Error::InvalidRing(format!(
            "Λ₂ has ambient dimension {}, but dim L' = {}",
            lambda2.pattern().dim(),
            split.d2()
        )));
    }
    Ok(split.compute_x(lambda2))
}

pub fn class2_ideal_zeta(ring: &LieRing, p: Prime) -> Result<ZetaPoly> {
    class2_ideal_zeta_counted(ring, p).map(|(z, _)| z)
}

/// The zeta polynomial and the number of `Λ₂` visited.
pub(crate) fn class2_ideal_zeta_counted(ring: &LieRing, p: Prime) -> Result<(ZetaPoly, u64)> {
    let split = Class2Split::new(ring, p)?;
    let (d1, d2) = (split.d1(), split.d2());
    // (codim of Λ₂, rank of X) -> number of Λ₂
    let tally: BTreeMap<(usize, usize), u64> = (0..1u32 << d2)
        .into_par_iter()
        .map(|mask| {
            let pat = crate::enumerate::PivotPattern::new(d2, mask);
            let mut local: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            for m in EchelonMatrix::all(pat, p) {
                let (_, rank) = split.compute_x(&m);
                *local.entry((pat.codim(), rank)).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });

    let q = p.get() as u64;
    let mut coeffs = vec![BigUint::default(); d1 + d2 + 1];
    let mut visited = 0;
    for (&(i, rk), &count) in &tally {
        visited += count;
        for j in 0..=rk {
            let term = gaussian_binomial(rk as u64, j as u64, q) * BigUint::from(q).pow((i * j) as u32) * count;
            coeffs[i + d1 - j] += term;
        }
    }
    Ok((ZetaPoly::new(p, coeffs), visited))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::PivotPattern;
    use crate::liealg::{catalog, Params};

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn ring(name: &str, kv: &[(&str, i64)]) -> LieRing {
        let params: Params = kv.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        catalog(name, &params).unwrap()
    }

    #[test]
    fn heisenberg_boundaries() {
        let h = ring("heisenberg", &[]);
        let split = Class2Split::new(&h, pr(3)).unwrap();
        assert_eq!((split.d1(), split.d2()), (2, 1));
        let full = EchelonMatrix::new(PivotPattern::new(1, 1), vec![]);
        assert_eq!(split.compute_x(&full), (0, 2));
        // X(0) is the centre, which is L' itself
        let zero = EchelonMatrix::new(PivotPattern::new(1, 0), vec![]);
        assert_eq!(split.compute_x(&zero), (2, 0));
        assert_eq!(class2_ideal_zeta(&h, pr(3)).unwrap().to_u64().unwrap(), vec![1, 4, 1, 1]);
    }

    #[test]
    fn free_class_two_on_three() {
        let f = ring("f", &[("c", 2), ("d", 3)]);
        assert_eq!(class2_ideal_zeta(&f, pr(2)).unwrap().to_u64().unwrap(), vec![1, 7, 7, 15, 7, 7, 1]);
    }

    #[test]
    fn grenham_index_and_rank() {
        for n in 2..=5 {
            let g = ring("grenham", &[("n", n)]);
            for q in [2, 3, 5] {
                let split = Class2Split::new(&g, pr(q)).unwrap();
                let n = n as usize;
                for datum in split.lambda2_data() {
                    assert_eq!(datum.rank + datum.index_exponent, n);
                    if datum.codim == 0 {
                        assert_eq!((datum.index_exponent, datum.rank), (0, n));
                    } else {
                        let i = datum.codim;
                        assert_eq!((datum.index_exponent, datum.rank), (i + 1, n - (i + 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn lambda2_counts_are_gaussian() {
        let le = ring("L_E", &[]);
        let split = Class2Split::new(&le, pr(3)).unwrap();
        let mut by_codim = vec![0u64; split.d2() + 1];
        for d in split.lambda2_data() {
            by_codim[d.codim] += 1;
            assert_eq!(d.rank + d.index_exponent, split.d1());
        }
        for (i, &c) in by_codim.iter().enumerate() {
            assert_eq!(BigUint::from(c), gaussian_binomial(3, i as u64, 3));
        }
    }

    #[test]
    fn rejects_other_classes() {
        let m3 = ring("M", &[("c", 3)]);
        assert_eq!(class2_ideal_zeta(&m3, pr(5)), Err(Error::NotClass2 { found: "3".into(), p: 5 }));
        let tr = ring("tr", &[("n", 2)]);
        assert!(matches!(class2_ideal_zeta(&tr, pr(5)), Err(Error::NotClass2 { .. })));
        let ab = ring("abelian", &[("n", 3)]);
        assert!(matches!(class2_ideal_zeta(&ab, pr(5)), Err(Error::NotClass2 { .. })));
    }
}
