//! Subspaces of F_p^n as canonical echelon matrices.
//!
//! A subspace of dimension `r` has a unique generator matrix in reduced row
//! echelon form. Its *pattern* is the set of pivot columns; the remaining
//! entries of a pivot row to the right of its pivot, in non-pivot columns,
//! are free. Each pattern therefore carries `p^{#free}` subspaces, and the
//! `2^n` patterns together carry all of them.
//!
//! Counting closed subspaces is done pattern by pattern. The pruned search in
//! [`search`] treats the closure conditions as polynomial equations in the
//! free entries; the naive search visits every matrix and tests it with
//! [`ClosureTest`].

mod poly;
mod search;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class2;
use crate::error::{Error, Result};
use crate::ffield::{linalg, Prime};
use crate::liealg::{lower_central_series, LieRing, StructureConstants};
use crate::zeta::{gaussian_binomial, ZetaPoly};

/// Largest dimension accepted by the echelon enumeration.
pub const MAX_DIM: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Sub,
    Ideal,
    GradedIdeal,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Sub, Flavor::Ideal, Flavor::GradedIdeal];

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Sub => "sub",
            Flavor::Ideal => "ideal",
            Flavor::GradedIdeal => "graded-ideal",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sub" | "subalgebra" => Ok(Flavor::Sub),
            "ideal" => Ok(Flavor::Ideal),
            "graded-ideal" | "graded" => Ok(Flavor::GradedIdeal),
            _ => Err(format!("unknown flavor `{s}` (expected sub, ideal or graded-ideal)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Auto,
    Brute,
    Class2,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Class2 => "class2",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "brute" => Ok(Method::Brute),
            "class2" => Ok(Method::Class2),
            _ => Err(format!("unknown method `{s}` (expected auto, brute or class2)")),
        }
    }
}

/// A set of pivot columns, bit `i` of `mask` standing for column `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PivotPattern {
    n: usize,
    mask: u32,
}

impl PivotPattern {
    pub fn new(n: usize, mask: u32) -> Self {
        assert!(n <= 31 && (mask >> n) == 0, "pattern {mask:#b} does not fit dimension {n}");
        PivotPattern { n, mask }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn is_pivot(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_pivot(i)).collect()
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.is_pivot(i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn codim(&self) -> usize {
        self.n - self.rank()
    }

    /// Free positions `(pivot row, non-pivot column)`, row by row and left to
    /// right within a row.
    pub fn free_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in self.pivots() {
            for j in i + 1..self.n {
                if !self.is_pivot(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn num_free(&self) -> usize {
        self.pivots().iter().map(|&i| (i + 1..self.n).filter(|&j| !self.is_pivot(j)).count()).sum()
    }

    /// Alternating run lengths `(a_1, b_1), (a_2, b_2), ...`: `a_i` non-pivot
    /// columns followed by `b_i` pivot columns. `a_1` or the last `b_r` may be 0.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.n {
            let a = (i..self.n).take_while(|&j| !self.is_pivot(j)).count();
            i += a;
            let b = (i..self.n).take_while(|&j| self.is_pivot(j)).count();
            i += b;
            out.push((a, b));
        }
        out
    }
}

/// All `2^n` patterns by ascending mask.
pub fn iterate_patterns(n: usize) -> impl Iterator<Item = PivotPattern> {
    assert!((1..=31).contains(&n));
    (0..1u32 << n).map(move |mask| PivotPattern::new(n, mask))
}

/// A canonical generator matrix: its pattern and the free entries in the
/// order of [`PivotPattern::free_positions`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EchelonMatrix {
    pattern: PivotPattern,
    free: Vec<u32>,
}

impl EchelonMatrix {
    pub fn new(pattern: PivotPattern, free: Vec<u32>) -> Self {
        assert_eq!(free.len(), pattern.num_free());
        EchelonMatrix { pattern, free }
    }

    pub fn pattern(&self) -> PivotPattern {
        self.pattern
    }

    pub fn free_entries(&self) -> &[u32] {
        &self.free
    }

    pub fn rank(&self) -> usize {
        self.pattern.rank()
    }

    pub fn codim(&self) -> usize {
        self.pattern.codim()
    }

    /// The pivot rows, top to bottom.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        let n = self.pattern.n;
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(self.rank());
        let mut k = 0;
        for i in self.pattern.pivots() {
            let mut row = vec![0; n];
            row[i] = 1;
            for (j, x) in row.iter_mut().enumerate().skip(i + 1) {
                if !self.pattern.is_pivot(j) {
                    *x = self.free[k];
                    k += 1;
                }
            }
            rows.push(row);
        }
        rows
    }

    /// Every matrix with the given pattern, free entries counted in base `p`
    /// with the last position varying fastest.
    pub fn all(pattern: PivotPattern, p: Prime) -> impl Iterator<Item = EchelonMatrix> {
        let f = pattern.num_free();
        let p = p.get();
        let mut next = Some(vec![0u32; f]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            let mut pos = f;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                succ[pos] += 1;
                if succ[pos] < p {
                    next = Some(succ);
                    break;
                }
                succ[pos] = 0;
            }
            Some(EchelonMatrix { pattern, free: cur })
        })
    }
}

/// Every subspace of F_p^n, pattern by pattern.
pub fn all_subspaces(n: usize, p: Prime) -> impl Iterator<Item = EchelonMatrix> {
    iterate_patterns(n).flat_map(move |pat| EchelonMatrix::all(pat, p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub residue: Vec<u32>,
    pub member: bool,
}

/// Subtract `v[c]` times the row with pivot `c`, for every pivot `c`. The
/// residue vanishes on pivot columns; `v` lies in the row space iff it
/// vanishes everywhere.
pub fn reduce_vector(v: &[u32], m: &EchelonMatrix, p: Prime) -> Reduction {
    let rows = m.rows();
    let pivots = m.pattern.pivots();
    let mut residue = v.to_vec();
    linalg::reduce_against(&mut residue, &rows, &pivots, p);
    let member = residue.iter().all(|&x| x == 0);
    Reduction { residue, member }
}

/// Closure conditions of one flavor for a fixed ring and prime.
#[derive(Debug, Clone)]
pub struct ClosureTest {
    sc: StructureConstants,
    flavor: Flavor,
    layers: Option<Vec<usize>>,
}

impl ClosureTest {
    pub fn new(ring: &LieRing, p: Prime, flavor: Flavor) -> Result<Self> {
        let layers = ring.layer_of();
        if flavor == Flavor::GradedIdeal && layers.is_none() {
            return Err(Error::NotGraded(ring.name().to_string()));
        }
        Ok(ClosureTest { sc: ring.structure(p), flavor, layers })
    }

    pub fn is_closed(&self, m: &EchelonMatrix) -> bool {
        let rows = m.rows();
        let pivots = m.pattern.pivots();
        let p = self.sc.prime();
        let inside = |v: Vec<u32>| {
            let mut v = v;
            linalg::reduce_against(&mut v, &rows, &pivots, p);
            v.iter().all(|&x| x == 0)
        };
        match self.flavor {
            Flavor::Sub => {
                for a in 0..rows.len() {
                    for b in a + 1..rows.len() {
                        if !inside(self.sc.bracket(&rows[a], &rows[b])) {
                            return false;
                        }
                    }
                }
                true
            }
            Flavor::Ideal | Flavor::GradedIdeal => {
                if self.flavor == Flavor::GradedIdeal {
                    let layers = self.layers.as_ref().unwrap();
                    for row in &rows {
                        let mut seen = row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, _)| layers[k]);
                        let first = seen.next();
                        if seen.any(|l| Some(l) != first) {
                            return false;
                        }
                    }
                }
                rows.iter().all(|row| (0..self.sc.dim()).all(|k| inside(self.sc.bracket_basis(row, k))))
            }
        }
    }
}

/// Convenience form of [`ClosureTest::is_closed`].
pub fn is_closed(m: &EchelonMatrix, ring: &LieRing, p: Prime, flavor: Flavor) -> Result<bool> {
    Ok(ClosureTest::new(ring, p, flavor)?.is_closed(m))
}

/// Per-codimension counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTally {
    counts: Vec<BigUint>,
}

impl CountTally {
    pub fn new(n: usize) -> Self {
        CountTally { counts: vec![BigUint::zero(); n + 1] }
    }

    pub fn add(&mut self, codim: usize, amount: &BigUint) {
        self.counts[codim] += amount;
    }

    pub fn merge(&mut self, other: &CountTally) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn into_poly(self, p: Prime) -> ZetaPoly {
        ZetaPoly::new(p, self.counts)
    }
}

/// `Σ_k binom(n, k)_p`
pub fn count_all_subspaces(n: usize, p: Prime) -> BigUint {
    (0..=n).map(|k| gaussian_binomial(n as u64, k as u64, p.get() as u64)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    pub method: Method,
    /// Abort with [`Error::BudgetExhausted`] after this many search nodes.
    pub budget: Option<u64>,
    /// `false` visits every echelon matrix and tests it directly.
    pub prune: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { method: Method::Auto, budget: None, prune: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub poly: ZetaPoly,
    /// The method actually run; never `Auto`.
    pub method: Method,
    /// Search nodes (brute) or subspaces of `L'` visited (class2).
    pub nodes: u64,
}

pub(crate) struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    pub(crate) fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: AtomicU64::new(0), exhausted: AtomicBool::new(false) }
    }

    /// Record `n` more nodes; `false` once the limit has been passed.
    pub(crate) fn spend(&self, n: u64) -> bool {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if let Some(limit) = self.limit {
            if total > limit {
                self.exhausted.store(true, Ordering::Relaxed);
            }
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    fn check(&self) -> Result<()> {
        match self.limit {
            Some(budget) if self.exhausted.load(Ordering::Relaxed) => Err(Error::BudgetExhausted { budget }),
            _ => Ok(()),
        }
    }
}

/// Count the closed subspaces of `ring ⊗ F_p` by codimension.
pub fn count_zeta(ring: &LieRing, p: Prime, flavor: Flavor, opts: &CountOptions) -> Result<CountResult> {
    if flavor == Flavor::GradedIdeal && ring.grading().is_none() {
        return Err(Error::NotGraded(ring.name().to_string()));
    }
    let method = match opts.method {
        Method::Auto => {
            if flavor == Flavor::Ideal && lower_central_series(ring, p).class == Some(2) {
                Method::Class2
            } else {
                Method::Brute
            }
        }
        m => m,
    };
    match method {
        Method::Class2 => {
            if flavor != Flavor::Ideal {
                return Err(Error::MethodUnsupported { method: "class2".into(), flavor: flavor.to_string() });
            }
            let (poly, visited) = class2::class2_ideal_zeta_counted(ring, p)?;
            Ok(CountResult { poly, method, nodes: visited })
        }
        _ => {
            let (poly, nodes) = brute(ring, p, flavor, opts)?;
            Ok(CountResult { poly, method: Method::Brute, nodes })
        }
    }
}

fn brute(ring: &LieRing, p: Prime, flavor: Flavor, opts: &CountOptions) -> Result<(ZetaPoly, u64)> {
    let n = ring.dim();
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    let budget = Budget::new(opts.budget);
    let per_pattern: Vec<(usize, BigUint)> = if opts.prune {
        let setup = search::Setup::new(ring, p, flavor);
        (0..1u32 << n)
            .into_par_iter()
            .map(|mask| {
                let pat = PivotPattern::new(n, mask);
                (pat.codim(), setup.count_pattern(pat, &budget))
            })
            .collect()
    } else {
        let test = ClosureTest::new(ring, p, flavor)?;
        (0..1u32 << n)
            .into_par_iter()
            .map(|mask| {
                let pat = PivotPattern::new(n, mask);
                let mut hits = 0u64;
                let mut visited = 0u64;
                for m in EchelonMatrix::all(pat, p) {
                    visited += 1;
                    if visited.is_multiple_of(4096) && !budget.spend(4096) {
                        return (pat.codim(), BigUint::zero());
                    }
                    if test.is_closed(&m) {
                        hits += 1;
                    }
                }
                budget.spend(visited % 4096);
                (pat.codim(), BigUint::from(hits))
            })
            .collect()
    };
    budget.check()?;
    let mut tally = CountTally::new(n);
    for (codim, count) in &per_pattern {
        tally.add(*codim, count);
    }
    Ok((tally.into_poly(p), budget.used()))
}

#[cfg(test)]
mod tests;
