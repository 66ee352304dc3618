//! Lie rings given by integer structure constants.
//!
//! A [`LieRing`] stores `[e_i, e_j]` for `i < j` only; antisymmetry supplies
//! the rest. Constants stay integral and are reduced modulo `p` when a
//! [`StructureConstants`] table is built, so one ring object serves every
//! prime of a scan.

mod catalog;
mod free;
mod parse;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ffield::{linalg, Prime};

pub use catalog::{catalog, catalog_entries, lookup, CatalogEntry, Params};
pub use free::{free_nilpotent, witt_dimension};
pub use parse::parse_presentation;

/// Sparse bracket table entry: `(coefficient, basis index)`, 0-based.
pub type Terms = Vec<(i64, usize)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRing {
    name: String,
    dim: usize,
    brackets: BTreeMap<(usize, usize), Terms>,
    grading: Option<Vec<usize>>,
    params: BTreeMap<String, i64>,
}

impl LieRing {
    /// An abelian ring of dimension `dim`; add structure with [`LieRing::set_bracket`].
    pub fn new(name: impl Into<String>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidRing("dimension must be at least 1".into()));
        }
        Ok(LieRing {
            name: name.into(),
            dim,
            brackets: BTreeMap::new(),
            grading: None,
            params: BTreeMap::new(),
        })
    }

    /// Set `[e_i, e_j]` (0-based). Either order is accepted; `i > j` stores
    /// the negated terms under `(j, i)`. Returns the previous value, if any.
    pub fn set_bracket(&mut self, i: usize, j: usize, terms: &[(i64, usize)]) -> Result<Option<Terms>> {
        let n = self.dim;
        if i == j {
            return Err(Error::InvalidRing(format!("[e{0}, e{0}] is always zero", i + 1)));
        }
        if let Some(&bad) = [i, j].iter().chain(terms.iter().map(|(_, k)| k)).find(|&&x| x >= n) {
            return Err(Error::InvalidRing(format!("basis index {} out of range 1..={n}", bad + 1)));
        }
        let sign = if i < j { 1 } else { -1 };
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(c, k) in terms {
            *acc.entry(k).or_default() += sign * c;
        }
        let terms: Terms = acc.into_iter().filter(|&(_, c)| c != 0).map(|(k, c)| (c, k)).collect();
        let key = (i.min(j), i.max(j));
        if terms.is_empty() {
            Ok(self.brackets.remove(&key))
        } else {
            Ok(self.brackets.insert(key, terms))
        }
    }

    pub fn with_grading(mut self, grading: Vec<usize>) -> Result<Self> {
        self.set_grading(Some(grading))?;
        Ok(self)
    }

    pub fn set_grading(&mut self, grading: Option<Vec<usize>>) -> Result<()> {
        if let Some(g) = &grading {
            if g.contains(&0) || g.iter().sum::<usize>() != self.dim {
                return Err(Error::InvalidRing(format!(
                    "grading {g:?} must consist of positive parts summing to {}",
                    self.dim
                )));
            }
        }
        self.grading = grading;
        Ok(())
    }

    pub fn with_param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn rename(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> Option<&[usize]> {
        self.grading.as_deref()
    }

    pub fn params(&self) -> &BTreeMap<String, i64> {
        &self.params
    }

    /// Stored brackets, keyed by 0-based `(i, j)` with `i < j`.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.brackets
    }

    /// Integer coordinates of `[e_i, e_j]`, 0-based.
    pub fn bracket_integral(&self, i: usize, j: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        if i == j {
            return out;
        }
        let (key, sign) = if i < j { ((i, j), 1) } else { ((j, i), -1) };
        if let Some(terms) = self.brackets.get(&key) {
            for &(c, k) in terms {
                out[k] += sign * c;
            }
        }
        out
    }

    /// Grading layer of each basis vector, or `None` for ungraded rings.
    pub fn layer_of(&self) -> Option<Vec<usize>> {
        let g = self.grading.as_ref()?;
        Some(g.iter().enumerate().flat_map(|(layer, &d)| std::iter::repeat_n(layer, d)).collect())
    }

    pub fn structure(&self, p: Prime) -> StructureConstants {
        let n = self.dim;
        let mut table = vec![0u32; n * n * n];
        for (&(i, j), terms) in &self.brackets {
            for &(c, k) in terms {
                let v = p.reduce(c);
                let a = (i * n + j) * n + k;
                let b = (j * n + i) * n + k;
                table[a] = p.add(table[a], v);
                table[b] = p.sub(table[b], v);
            }
        }
        StructureConstants { n, p, table }
    }

    /// Render in the ring-file format accepted by [`parse_presentation`].
    pub fn to_presentation(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() && !self.name.contains(char::is_whitespace) {
            writeln!(s, "name {}", self.name).unwrap();
        }
        writeln!(s, "dim {}", self.dim).unwrap();
        if let Some(g) = &self.grading {
            let parts: Vec<String> = g.iter().map(|d| d.to_string()).collect();
            writeln!(s, "grading {}", parts.join(" ")).unwrap();
        }
        for (&(i, j), terms) in &self.brackets {
            let rhs: Vec<String> = terms.iter().map(|&(c, k)| format!("{c}*{}", k + 1)).collect();
            writeln!(s, "bracket {} {} = {}", i + 1, j + 1, rhs.join(" + ")).unwrap();
        }
        s
    }
}

/// Dense structure constants reduced mod `p`: `get(i, j)[k]` is the
/// coefficient of `e_k` in `[e_i, e_j]`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    p: Prime,
    table: Vec<u32>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.n + j) * self.n;
        &self.table[start..start + self.n]
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.n];
        for (i, &ui) in u.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &vj) in v.iter().enumerate().filter(|(_, &x)| x != 0) {
                let f = p.mul(ui, vj);
                for (o, &c) in out.iter_mut().zip(self.get(i, j)) {
                    if c != 0 {
                        *o = p.mul_add(*o, f, c);
                    }
                }
            }
        }
        out
    }

    /// `[u, e_j]`
    pub fn bracket_basis(&self, u: &[u32], j: usize) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.n];
        for (i, &ui) in u.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (o, &c) in out.iter_mut().zip(self.get(i, j)) {
                if c != 0 {
                    *o = p.mul_add(*o, ui, c);
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|&c| c == 0)
    }
}

/// `C_j`: row `i` holds the coordinates of `[e_i, e_j]` mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointMatrix {
    pub index: usize,
    pub rows: Vec<Vec<u32>>,
}

pub fn adjoint_matrices(ring: &LieRing, p: Prime) -> Vec<AdjointMatrix> {
    let sc = ring.structure(p);
    let n = ring.dim();
    (0..n)
        .map(|j| AdjointMatrix { index: j, rows: (0..n).map(|i| sc.get(i, j).to_vec()).collect() })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiReport {
    Ok,
    /// First violating basis triple (1-based) and the nonzero Jacobi sum.
    Violation { triple: (usize, usize, usize), residual: Vec<u32> },
}

impl JacobiReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, JacobiReport::Ok)
    }
}

/// Check `[[x,y],z] + [[y,z],x] + [[z,x],y] = 0` mod `p` on all basis triples.
pub fn validate(ring: &LieRing, p: Prime) -> JacobiReport {
    let sc = ring.structure(p);
    let n = ring.dim();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = sc.bracket_basis(sc.get(i, j), k);
                let b = sc.bracket_basis(sc.get(j, k), i);
                let c = sc.bracket_basis(sc.get(k, i), j);
                let sum: Vec<u32> = (0..n).map(|t| p.add(p.add(a[t], b[t]), c[t])).collect();
                if sum.iter().any(|&x| x != 0) {
                    return JacobiReport::Violation { triple: (i + 1, j + 1, k + 1), residual: sum };
                }
            }
        }
    }
    JacobiReport::Ok
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerCentralSeries {
    /// `dim γ_1, dim γ_2, ...`; ends in 0 for nilpotent rings, otherwise at
    /// the first term that reproduces itself.
    pub dims: Vec<usize>,
    /// Nilpotency class, `None` when the series stabilises above zero.
    pub class: Option<usize>,
    /// RREF bases of each `γ_i` listed in `dims`.
    pub terms: Vec<Vec<Vec<u32>>>,
}

impl LowerCentralSeries {
    pub fn is_nilpotent(&self) -> bool {
        self.class.is_some()
    }
}

pub fn lower_central_series(ring: &LieRing, p: Prime) -> LowerCentralSeries {
    let sc = ring.structure(p);
    let n = ring.dim();
    let identity: Vec<Vec<u32>> = (0..n).map(|i| unit(n, i)).collect();
    let mut dims = vec![n];
    let mut terms = vec![identity.clone()];
    let mut current = identity;
    loop {
        let mut next: Vec<Vec<u32>> =
            current.iter().flat_map(|v| (0..n).map(|j| sc.bracket_basis(v, j))).collect();
        linalg::rref(&mut next, p);
        let d = next.len();
        if d == 0 {
            dims.push(0);
            terms.push(Vec::new());
            let class = dims.len() - 1;
            return LowerCentralSeries { dims, class: Some(class), terms };
        }
        if d == current.len() {
            return LowerCentralSeries { dims, class: None, terms };
        }
        dims.push(d);
        terms.push(next.clone());
        current = next;
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn heisenberg() -> LieRing {
        parse_presentation("dim 3\nbracket 1 2 = 1*3\n").unwrap()
    }

    #[test]
    fn heisenberg_adjoint() {
        let adj = adjoint_matrices(&heisenberg(), pr(5));
        assert_eq!(adj[1].rows[0], vec![0, 0, 1]);
        assert_eq!(adj[1].rows[1], vec![0, 0, 0]);
        assert_eq!(adj[1].rows[2], vec![0, 0, 0]);
        assert_eq!(adj[0].rows[1], vec![0, 0, 4]);
    }

    #[test]
    fn abelian_adjoint_is_zero() {
        let ring = LieRing::new("ab", 4).unwrap();
        for m in adjoint_matrices(&ring, pr(7)) {
            assert!(m.rows.iter().flatten().all(|&x| x == 0));
        }
    }

    #[test]
    fn maximal_class_adjoint_mod_two() {
        let m3 = catalog("M", &Params::from([("c".to_string(), 3)])).unwrap();
        let adj = adjoint_matrices(&m3, pr(2));
        // [x_1, x_0] = -x_2 and [x_2, x_0] = -x_3, i.e. +1 in characteristic 2
        assert_eq!(adj[0].rows[1], vec![0, 0, 1, 0]);
        assert_eq!(adj[0].rows[2], vec![0, 0, 0, 1]);
        assert_eq!(adj[0].rows[3], vec![0, 0, 0, 0]);
        assert_eq!(adj[0].rows[0], vec![0, 0, 0, 0]);
    }

    #[test]
    fn adjoint_antisymmetry_catalog() {
        for entry in catalog_entries() {
            let ring = catalog(entry.name, &entry.default_params()).unwrap();
            for p in [2u64, 3, 5] {
                let adj = adjoint_matrices(&ring, pr(p));
                let p = pr(p);
                for i in 0..ring.dim() {
                    for j in 0..ring.dim() {
                        let lhs = &adj[j].rows[i];
                        let rhs: Vec<u32> = adj[i].rows[j].iter().map(|&x| p.neg(x)).collect();
                        assert_eq!(lhs, &rhs, "{} rows {i},{j}", ring.name());
                    }
                    assert!(adj[i].rows[i].iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn jacobi_checks() {
        assert!(validate(&heisenberg(), pr(5)).is_ok());
        let m4 = catalog("M", &Params::from([("c".to_string(), 4)])).unwrap();
        assert!(validate(&m4, pr(3)).is_ok());
        // perturb so(3)-type data by adding e_1 to [e_1, e_3]
        let broken = parse_presentation(
            "dim 3\nbracket 1 2 = 1*3\nbracket 1 3 = 1*2 + 1*1\nbracket 2 3 = 1*1\n",
        )
        .unwrap();
        match validate(&broken, pr(5)) {
            JacobiReport::Violation { triple, residual } => {
                assert_eq!(triple, (1, 2, 3));
                // [[e3,e1],e2] = -[e1+e2, e2] = -e3
                assert_eq!(residual, vec![0, 0, 4]);
            }
            JacobiReport::Ok => panic!("expected a Jacobi violation"),
        }
    }

    #[test]
    fn lower_central_examples() {
        let h = lower_central_series(&heisenberg(), pr(3));
        assert_eq!(h.dims, vec![3, 1, 0]);
        assert_eq!(h.class, Some(2));
        let ab = lower_central_series(&LieRing::new("ab", 4).unwrap(), pr(3));
        assert_eq!(ab.dims, vec![4, 0]);
        assert_eq!(ab.class, Some(1));
        let tr2 = catalog("tr", &Params::from([("n".to_string(), 2)])).unwrap();
        let s = lower_central_series(&tr2, pr(5));
        assert_eq!(s.dims, vec![3, 1]);
        assert_eq!(s.class, None);
    }

    #[test]
    fn maximal_class_series() {
        for c in 2..=6 {
            let ring = catalog("M", &Params::from([("c".to_string(), c)])).unwrap();
            let s = lower_central_series(&ring, pr(5));
            let mut expect = vec![c as usize + 1];
            expect.extend((0..c as usize).rev());
            assert_eq!(s.dims, expect);
            assert_eq!(s.class, Some(c as usize));
        }
    }

    #[test]
    fn set_bracket_normalises_order() {
        let mut r = LieRing::new("t", 3).unwrap();
        r.set_bracket(1, 0, &[(1, 2)]).unwrap();
        assert_eq!(r.bracket_integral(0, 1), vec![0, 0, -1]);
        assert_eq!(r.bracket_integral(1, 0), vec![0, 0, 1]);
        assert!(r.set_bracket(0, 0, &[(1, 2)]).is_err());
        assert!(r.set_bracket(0, 5, &[(1, 2)]).is_err());
    }
}
