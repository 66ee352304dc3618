//! Pruned counting for one pivot pattern.
//!
//! Writing every closure condition as a polynomial in the free entries, the
//! entries are assigned column by column. A condition is checked as soon as
//! its last variable is reached; in the usual case it is linear in the
//! current column once the earlier columns are fixed, so the column is
//! solved by elimination instead of being enumerated. Entries that no later
//! condition mentions are counted, not enumerated: a leaf reached with `e`
//! such entries left open stands for `p^e` subspaces.
//!
//! Conditions without variables are decided before the search starts; a
//! nonzero one rejects the pattern outright.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;

use super::poly::{Poly, Var, NONE};
use super::{Budget, Flavor, PivotPattern};
use crate::ffield::{linalg, Prime};
use crate::liealg::{LieRing, StructureConstants};

const FLUSH: u64 = 1 << 12;

pub(super) struct Setup {
    n: usize,
    p: Prime,
    flavor: Flavor,
    sc: StructureConstants,
    layers: Option<Vec<usize>>,
}

struct Term {
    coef: u32,
    /// variables of earlier columns
    outer: [Var; 3],
    /// positions within the current column
    local: [Var; 3],
}

struct Constraint {
    terms: Vec<Term>,
}

struct Group {
    start: usize,
    end: usize,
    linear: bool,
    /// per position in the column: no later column mentions it
    dead: Vec<bool>,
    constraints: Vec<Constraint>,
}

struct Plan {
    nvars: usize,
    groups: Vec<Group>,
}

impl Setup {
    pub(super) fn new(ring: &LieRing, p: Prime, flavor: Flavor) -> Self {
        Setup { n: ring.dim(), p, flavor, sc: ring.structure(p), layers: ring.layer_of() }
    }

    pub(super) fn count_pattern(&self, pat: PivotPattern, budget: &Budget) -> BigUint {
        let Some(plan) = self.plan(pat) else {
            budget.spend(1);
            return BigUint::zero();
        };
        let mut run = Run {
            p: self.p,
            plan: &plan,
            vals: vec![0; plan.nvars],
            hist: vec![0; plan.nvars + 1],
            pending: 0,
            budget,
            stop: false,
        };
        run.dfs(0, 0);
        budget.spend(run.pending);
        let p = BigUint::from(self.p.get());
        let mut total = BigUint::zero();
        for &h in run.hist.iter().rev() {
            total *= &p;
            total += h;
        }
        total
    }

    fn allowed(&self, c: usize, j: usize) -> bool {
        match (&self.layers, self.flavor) {
            (Some(l), Flavor::GradedIdeal) => l[c] == l[j],
            _ => true,
        }
    }

    /// Polynomial conditions for `pat`, or `None` if a constant one fails.
    fn plan(&self, pat: PivotPattern) -> Option<Plan> {
        let (n, p) = (self.n, self.p);
        let pivots = pat.pivots();

        let mut positions: Vec<(usize, usize)> = Vec::new();
        for &c in &pivots {
            for j in c + 1..n {
                if !pat.is_pivot(j) && self.allowed(c, j) {
                    positions.push((j, c));
                }
            }
        }
        positions.sort_unstable();
        let nvars = positions.len();
        let mut var_at = vec![vec![None; n]; n];
        for (v, &(j, c)) in positions.iter().enumerate() {
            var_at[c][j] = Some(v as Var);
        }

        let rows: Vec<Vec<Poly>> = pivots
            .iter()
            .map(|&c| {
                (0..n)
                    .map(|j| {
                        if j == c {
                            Poly::constant(1)
                        } else {
                            var_at[c][j].map(Poly::var).unwrap_or_default()
                        }
                    })
                    .collect()
            })
            .collect();

        let minus_one = p.neg(1);
        let mut residues: BTreeSet<Poly> = BTreeSet::new();
        let mut reduce = |v: Vec<Poly>| {
            for j in pat.non_pivots() {
                let mut r = v[j].clone();
                for (&c, vc) in pivots.iter().zip(pivots.iter().map(|&c| &v[c])) {
                    if c < j {
                        if let Some(x) = var_at[c][j] {
                            r.add_product(vc, &Poly::var(x), minus_one, p);
                        }
                    }
                }
                if !r.is_zero() {
                    residues.insert(r.monic(p));
                }
            }
        };

        match self.flavor {
            Flavor::Ideal | Flavor::GradedIdeal => {
                for row in &rows {
                    for k in 0..n {
                        let mut v = vec![Poly::default(); n];
                        let mut any = false;
                        for (s, entry) in row.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                            for (t, &c) in self.sc.get(s, k).iter().enumerate() {
                                if c != 0 {
                                    v[t].add_scaled(entry, c, p);
                                    any = true;
                                }
                            }
                        }
                        if any {
                            reduce(v);
                        }
                    }
                }
            }
            Flavor::Sub => {
                for a in 0..rows.len() {
                    for b in a + 1..rows.len() {
                        let mut v = vec![Poly::default(); n];
                        let mut any = false;
                        for (s, x) in rows[a].iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                            for (s2, y) in rows[b].iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                                for (t, &c) in self.sc.get(s, s2).iter().enumerate() {
                                    if c != 0 {
                                        v[t].add_product(x, y, c, p);
                                        any = true;
                                    }
                                }
                            }
                        }
                        if any {
                            reduce(v);
                        }
                    }
                }
            }
        }

        if residues.iter().any(|r| r.is_constant()) {
            return None;
        }

        // columns of free entries, in order
        let mut groups: Vec<Group> = Vec::new();
        let mut group_of = vec![0usize; nvars];
        for v in 0..nvars {
            if v == 0 || positions[v].0 != positions[v - 1].0 {
                groups.push(Group {
                    start: v,
                    end: v,
                    linear: true,
                    dead: Vec::new(),
                    constraints: Vec::new(),
                });
            }
            let g = groups.len() - 1;
            groups[g].end = v + 1;
            group_of[v] = g;
        }

        let mut last_use = group_of.clone();
        for r in &residues {
            let g = group_of[r.max_var().unwrap() as usize];
            for (m, _) in r.terms() {
                for v in m.vars() {
                    last_use[v as usize] = last_use[v as usize].max(g);
                }
            }
            let start = groups[g].start;
            let mut terms = Vec::new();
            for (m, &coef) in r.terms() {
                let mut outer = [NONE; 3];
                let mut local = [NONE; 3];
                let (mut no, mut nl) = (0, 0);
                for v in m.vars() {
                    if (v as usize) < start {
                        outer[no] = v;
                        no += 1;
                    } else {
                        local[nl] = v - start as Var;
                        nl += 1;
                    }
                }
                if nl > 1 {
                    groups[g].linear = false;
                }
                terms.push(Term { coef, outer, local });
            }
            groups[g].constraints.push(Constraint { terms });
        }
        for g in groups.iter_mut() {
            g.dead = (g.start..g.end).map(|v| last_use[v] == group_of[v]).collect();
        }
        Some(Plan { nvars, groups })
    }
}

struct Run<'a> {
    p: Prime,
    plan: &'a Plan,
    vals: Vec<u32>,
    hist: Vec<u64>,
    pending: u64,
    budget: &'a Budget,
    stop: bool,
}

impl Run<'_> {
    fn tick(&mut self) {
        self.pending += 1;
        if self.pending == FLUSH {
            self.pending = 0;
            if !self.budget.spend(FLUSH) {
                self.stop = true;
            }
        }
    }

    fn outer_value(&self, t: &Term) -> u32 {
        let mut x = t.coef;
        for &v in t.outer.iter().take_while(|&&v| v != NONE) {
            x = self.p.mul(x, self.vals[v as usize]);
        }
        x
    }

    fn dfs(&mut self, g: usize, exp: usize) {
        self.tick();
        if self.stop {
            return;
        }
        let plan = self.plan;
        if g == plan.groups.len() {
            self.hist[exp] += 1;
            return;
        }
        let group = &plan.groups[g];
        if group.linear {
            self.solve_linear(g, group, exp);
        } else {
            self.enumerate_column(g, group, exp);
        }
    }

    fn solve_linear(&mut self, g: usize, group: &Group, exp: usize) {
        let p = self.p;
        let m = group.end - group.start;
        // dead positions first, so eliminating them leaves conditions on the live ones
        let order: Vec<usize> = (0..m).filter(|&i| group.dead[i]).chain((0..m).filter(|&i| !group.dead[i])).collect();
        let n_dead = order.iter().take_while(|&&i| group.dead[i]).count();
        let mut col_of = vec![0; m];
        for (col, &i) in order.iter().enumerate() {
            col_of[i] = col;
        }

        let mut system: Vec<Vec<u32>> = Vec::with_capacity(group.constraints.len());
        for c in &group.constraints {
            let mut row = vec![0u32; m + 1];
            for t in &c.terms {
                let x = self.outer_value(t);
                if x == 0 {
                    continue;
                }
                match t.local[0] {
                    NONE => row[m] = p.sub(row[m], x),
                    l => {
                        let col = col_of[l as usize];
                        row[col] = p.add(row[col], x);
                    }
                }
            }
            if row.iter().any(|&x| x != 0) {
                system.push(row);
            }
        }
        let pivots = linalg::rref(&mut system, p);
        if pivots.last() == Some(&m) {
            return;
        }
        let dead_free = n_dead - pivots.iter().filter(|&&c| c < n_dead).count();
        let live_rows: Vec<(usize, &Vec<u32>)> =
            pivots.iter().copied().zip(system.iter()).filter(|&(c, _)| c >= n_dead).collect();
        let live_free: Vec<usize> = (n_dead..m).filter(|c| !pivots.contains(c)).collect();

        let mut params = vec![0u32; live_free.len()];
        loop {
            for (k, &col) in live_free.iter().enumerate() {
                self.vals[group.start + order[col]] = params[k];
            }
            for &(col, row) in &live_rows {
                let mut x = row[m];
                for (k, &fc) in live_free.iter().enumerate() {
                    x = p.sub(x, p.mul(row[fc], params[k]));
                }
                self.vals[group.start + order[col]] = x;
            }
            self.dfs(g + 1, exp + dead_free);
            if self.stop || !advance(&mut params, p.get()) {
                break;
            }
        }
    }

    fn enumerate_column(&mut self, g: usize, group: &Group, exp: usize) {
        let p = self.p;
        let m = group.end - group.start;
        let mut local = vec![0u32; m];
        loop {
            self.vals[group.start..group.end].copy_from_slice(&local);
            let ok = group.constraints.iter().all(|c| {
                let mut sum = 0u32;
                for t in &c.terms {
                    let mut x = self.outer_value(t);
                    for &l in t.local.iter().take_while(|&&l| l != NONE) {
                        x = p.mul(x, local[l as usize]);
                    }
                    sum = p.add(sum, x);
                }
                sum == 0
            });
            if ok {
                self.dfs(g + 1, exp);
            } else {
                self.tick();
            }
            if self.stop || !advance(&mut local, p.get()) {
                break;
            }
        }
    }
}

/// Base-`p` increment; `false` after wrapping around to all zeros.
fn advance(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}
