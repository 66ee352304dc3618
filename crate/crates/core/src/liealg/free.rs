//! Free nilpotent Lie rings `f_{c,d}` on a basis of left-normed commutators.
//!
//! Each candidate commutator `[x_{i1}, x_{i2}, ..., x_{iw}]` is expanded in the
//! free associative algebra; weight by weight, candidates are scanned in
//! lexicographic order and kept when independent of those already kept. For
//! `f_{3,2}` this yields `x1, x2, [x1,x2], [[x1,x2],x1], [[x1,x2],x2]`, and for
//! `f_{4,2}` it appends `[x1,x2,x1,x1], [x1,x2,x1,x2], [x1,x2,x2,x2]`.
//! Structure constants come from solving for the expansion of each product
//! in the basis of its weight.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LieRing;
use crate::error::{Error, Result};

type Word = Vec<u8>;
type AssocPoly = BTreeMap<Word, i64>;

fn commutator(a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
    let mut out = AssocPoly::new();
    for (wa, &ca) in a {
        for (wb, &cb) in b {
            let mut ab = wa.clone();
            ab.extend_from_slice(wb);
            *out.entry(ab).or_default() += ca * cb;
            let mut ba = wb.clone();
            ba.extend_from_slice(wa);
            *out.entry(ba).or_default() -= ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn generator(g: u8) -> AssocPoly {
    AssocPoly::from([(vec![g], 1)])
}

fn left_normed(word: &[u8]) -> AssocPoly {
    let mut acc = generator(word[0]);
    for &g in &word[1..] {
        acc = commutator(&acc, &generator(g));
    }
    acc
}

/// Incremental echelon form over Q, keyed by associative monomials.
#[derive(Default)]
struct Echelon {
    rows: Vec<(Word, BTreeMap<Word, BigRational>)>,
}

impl Echelon {
    fn reduce(&self, v: &AssocPoly) -> BTreeMap<Word, BigRational> {
        let mut v: BTreeMap<Word, BigRational> =
            v.iter().map(|(w, &c)| (w.clone(), BigRational::from_integer(c.into()))).collect();
        for (pivot, row) in &self.rows {
            if let Some(f) = v.get(pivot).cloned() {
                for (w, c) in row {
                    let e = v.entry(w.clone()).or_insert_with(BigRational::zero);
                    *e -= &f * c;
                }
                v.retain(|_, c| !c.is_zero());
            }
        }
        v
    }

    fn insert(&mut self, v: &AssocPoly) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(w, c)| (w.clone(), c.clone())) else {
            return false;
        };
        let row: BTreeMap<Word, BigRational> = r.into_iter().map(|(w, c)| (w, c / &lead)).collect();
        for (_, other) in self.rows.iter_mut() {
            if let Some(f) = other.get(&pivot).cloned() {
                for (w, c) in &row {
                    let e = other.entry(w.clone()).or_insert_with(BigRational::zero);
                    *e -= &f * c;
                }
                other.retain(|_, c| !c.is_zero());
            }
        }
        self.rows.push((pivot, row));
        true
    }
}

/// Solve `target = sum x_k basis[k]` exactly over Q.
fn coordinates(basis: &[AssocPoly], target: &AssocPoly) -> Option<Vec<BigRational>> {
    let mut monos: Vec<Word> = basis.iter().chain(std::iter::once(target)).flat_map(|p| p.keys().cloned()).collect();
    monos.sort();
    monos.dedup();
    let m = basis.len();
    // augmented matrix: one row per monomial, m + 1 columns
    let mut a: Vec<Vec<BigRational>> = monos
        .iter()
        .map(|w| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(BigInt::from(*b.get(w).unwrap_or(&0))))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(*target.get(w).unwrap_or(&0))));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(sel) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, sel);
        let inv = a[r][col].clone().recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); m];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[i][m].clone();
    }
    Some(x)
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the weight-`w` component of the free Lie algebra on `d`
/// generators (Witt's formula).
pub fn witt_dimension(d: usize, w: usize) -> usize {
    let sum: i64 = (1..=w).filter(|k| w.is_multiple_of(*k)).map(|k| mobius(k) * (d as i64).pow((w / k) as u32)).sum();
    (sum / w as i64) as usize
}

/// `f_{c,d}` with the graded left-normed basis described in the module docs.
pub fn free_nilpotent(c: usize, d: usize) -> Result<LieRing> {
    if c < 1 || !(1..=9).contains(&d) {
        return Err(Error::BadParam { ring: "f".into(), msg: format!("c = {c}, d = {d} out of range") });
    }
    let mut basis: Vec<AssocPoly> = Vec::new();
    let mut weight_of: Vec<usize> = Vec::new();
    let mut grading = Vec::new();
    for w in 1..=c {
        let mut ech = Echelon::default();
        let start = basis.len();
        let total = d.pow(w as u32);
        for code in 0..total {
            // base-d digits, most significant first, give lexicographic order
            let mut word: Word = vec![0; w];
            let mut rest = code;
            for slot in word.iter_mut().rev() {
                *slot = (rest % d) as u8;
                rest /= d;
            }
            let expansion = left_normed(&word);
            if ech.insert(&expansion) {
                basis.push(expansion);
                weight_of.push(w);
            }
        }
        debug_assert_eq!(basis.len() - start, witt_dimension(d, w));
        if basis.len() == start {
            break;
        }
        grading.push(basis.len() - start);
    }

    let n = basis.len();
    let mut ring = LieRing::new(format!("f_{c}_{d}"), n)?;
    for i in 0..n {
        for j in i + 1..n {
            let w = weight_of[i] + weight_of[j];
            if w > c {
                continue;
            }
            let product = commutator(&basis[i], &basis[j]);
            if product.is_empty() {
                continue;
            }
            let layer: Vec<usize> = (0..n).filter(|&k| weight_of[k] == w).collect();
            let layer_basis: Vec<AssocPoly> = layer.iter().map(|&k| basis[k].clone()).collect();
            let coords = coordinates(&layer_basis, &product).expect("Lie products lie in the Lie span");
            let mut terms = Vec::new();
            for (x, &k) in coords.iter().zip(&layer) {
                if x.is_zero() {
                    continue;
                }
                assert!(x.denom().is_one(), "non-integral structure constant");
                let v = x.numer().abs().to_i64().expect("small constant");
                terms.push((if x.is_negative() { -v } else { v }, k));
            }
            ring.set_bracket(i, j, &terms)?;
        }
    }
    ring.set_grading(Some(grading))?;
    Ok(ring.with_param("c", c as i64).with_param("d", d as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Prime;
    use crate::liealg::{lower_central_series, validate};

    #[test]
    fn witt_values() {
        assert_eq!(witt_dimension(2, 1), 2);
        assert_eq!(witt_dimension(2, 2), 1);
        assert_eq!(witt_dimension(2, 3), 2);
        assert_eq!(witt_dimension(2, 4), 3);
        assert_eq!(witt_dimension(3, 3), 8);
        assert_eq!(witt_dimension(2, 6), 9);
    }

    #[test]
    fn f32_matches_hall_layout() {
        let f = free_nilpotent(3, 2).unwrap();
        assert_eq!(f.dim(), 5);
        assert_eq!(f.grading(), Some(&[2, 1, 2][..]));
        // x3 = [x1,x2], x4 = [x3,x1], x5 = [x3,x2]
        assert_eq!(f.bracket_integral(0, 1), vec![0, 0, 1, 0, 0]);
        assert_eq!(f.bracket_integral(2, 0), vec![0, 0, 0, 1, 0]);
        assert_eq!(f.bracket_integral(2, 1), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn f42_layout() {
        let f = free_nilpotent(4, 2).unwrap();
        assert_eq!(f.dim(), 8);
        assert_eq!(f.grading(), Some(&[2, 1, 2, 3][..]));
        // x6 = [x4,x1], x7 = [x4,x2] = [x5,x1], x8 = [x5,x2]
        assert_eq!(f.bracket_integral(3, 0), vec![0, 0, 0, 0, 0, 1, 0, 0]);
        assert_eq!(f.bracket_integral(3, 1), vec![0, 0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(f.bracket_integral(4, 0), vec![0, 0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(f.bracket_integral(4, 1), vec![0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(f.bracket_integral(2, 2), vec![0; 8]);
    }

    #[test]
    fn free_rings_are_lie_and_nilpotent() {
        for (c, d) in [(2, 2), (2, 3), (2, 4), (3, 2), (4, 2), (3, 3)] {
            let f = free_nilpotent(c, d).unwrap();
            for p in [2u64, 3, 5, 7] {
                let p = Prime::new(p).unwrap();
                assert!(validate(&f, p).is_ok(), "f_{c},{d}");
                let lcs = lower_central_series(&f, p);
                assert_eq!(lcs.class, Some(c));
                let g = f.grading().unwrap();
                let mut expect: Vec<usize> = (0..g.len()).map(|i| g[i..].iter().sum()).collect();
                expect.push(0);
                assert_eq!(lcs.dims, expect);
            }
        }
        assert_eq!(free_nilpotent(3, 3).unwrap().dim(), 14);
    }
}
