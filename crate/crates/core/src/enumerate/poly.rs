//! Sparse polynomials over F_p of degree at most 3 in the free entries of an
//! echelon pattern.

use std::collections::BTreeMap;

use crate::ffield::Prime;

pub(super) type Var = u8;
pub(super) const NONE: Var = Var::MAX;

/// Sorted variable indices padded with `NONE`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(super) struct Mono(pub [Var; 3]);

impl Mono {
    pub const ONE: Mono = Mono([NONE; 3]);

    pub fn var(v: Var) -> Mono {
        Mono([v, NONE, NONE])
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().copied().take_while(|&v| v != NONE)
    }

    fn times(self, other: Mono) -> Mono {
        let mut all: Vec<Var> = self.vars().chain(other.vars()).collect();
        assert!(all.len() <= 3, "constraint degree above 3");
        all.sort_unstable();
        let mut out = [NONE; 3];
        out[..all.len()].copy_from_slice(&all);
        Mono(out)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(super) struct Poly {
    terms: BTreeMap<Mono, u32>,
}

impl Poly {
    pub fn constant(c: u32) -> Poly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(Mono::ONE, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Poly {
        Poly { terms: BTreeMap::from([(Mono::var(v), 1)]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &u32)> {
        self.terms.iter()
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Poly, c: u32, p: Prime) {
        if c == 0 {
            return;
        }
        for (&m, &a) in &other.terms {
            let e = self.terms.entry(m).or_insert(0);
            *e = p.mul_add(*e, a, c);
            if *e == 0 {
                self.terms.remove(&m);
            }
        }
    }

    /// `self += c * a * b`
    pub fn add_product(&mut self, a: &Poly, b: &Poly, c: u32, p: Prime) {
        if c == 0 {
            return;
        }
        for (&ma, &ca) in &a.terms {
            for (&mb, &cb) in &b.terms {
                let m = ma.times(mb);
                let e = self.terms.entry(m).or_insert(0);
                *e = p.mul_add(*e, p.mul(ca, cb), c);
                if *e == 0 {
                    self.terms.remove(&m);
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().flat_map(|m| m.vars()).max()
    }

    /// Scale so the leading term has coefficient 1; the zero set is unchanged.
    pub fn monic(mut self, p: Prime) -> Poly {
        if let Some((_, &lead)) = self.terms.iter().next_back() {
            let inv = p.inv(lead).expect("nonzero coefficient");
            for c in self.terms.values_mut() {
                *c = p.mul(*c, inv);
            }
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_cancellation() {
        let p = Prime::new(5).unwrap();
        let (x, y) = (Poly::var(0), Poly::var(1));
        let mut f = Poly::constant(1);
        f.add_product(&x, &y, 2, p);
        f.add_product(&y, &x, 3, p);
        assert!(f.is_constant());
        assert_eq!(f, Poly::constant(1));
        let mut g = Poly::default();
        g.add_product(&x, &x, 1, p);
        assert_eq!(g.max_var(), Some(0));
        assert_eq!(g.terms().next().unwrap().0, &Mono([0, 0, NONE]));
    }

    #[test]
    fn monic_scaling() {
        let p = Prime::new(7).unwrap();
        let mut f = Poly::constant(3);
        f.add_scaled(&Poly::var(2), 2, p);
        let f = f.monic(p);
        assert_eq!(f.terms().map(|(_, &c)| c).collect::<Vec<_>>(), vec![3, 1]);
    }
}
