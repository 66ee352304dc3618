use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::liealg::{catalog, catalog_entries, parse_presentation, Params};

fn pr(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn ring(name: &str, kv: &[(&str, i64)]) -> LieRing {
    let params: Params = kv.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    catalog(name, &params).unwrap()
}

fn heisenberg() -> LieRing {
    ring("heisenberg", &[])
}

fn count(r: &LieRing, p: u64, flavor: Flavor, prune: bool) -> Vec<u64> {
    let opts = CountOptions { method: Method::Brute, budget: None, prune };
    count_zeta(r, pr(p), flavor, &opts).unwrap().poly.to_u64().unwrap()
}

/// Subspace as the sorted list of all its vectors.
fn materialize(m: &EchelonMatrix, p: Prime) -> Vec<Vec<u32>> {
    let rows = m.rows();
    let n = m.pattern().dim();
    let mut out = BTreeSet::new();
    let mut coeffs = vec![0u32; rows.len()];
    loop {
        let mut v = vec![0u32; n];
        for (c, row) in coeffs.iter().zip(&rows) {
            for (x, &y) in v.iter_mut().zip(row) {
                *x = p.mul_add(*x, *c, y);
            }
        }
        out.insert(v);
        let mut k = coeffs.len();
        loop {
            if k == 0 {
                return out.into_iter().collect();
            }
            k -= 1;
            coeffs[k] += 1;
            if coeffs[k] < p.get() {
                break;
            }
            coeffs[k] = 0;
        }
    }
}

#[test]
fn pattern_counts() {
    assert_eq!(iterate_patterns(3).count(), 8);
    let one: Vec<_> = iterate_patterns(1).map(|p| p.pivots()).collect();
    assert_eq!(one, vec![vec![], vec![0]]);
    assert_eq!(iterate_patterns(4).count(), 16);
    let total: u64 = iterate_patterns(4).map(|pat| 2u64.pow(pat.num_free() as u32)).sum();
    assert_eq!(total, 67);
}

#[test]
fn pattern_shape() {
    // pivots at columns 1, 2, 4 of 6
    let pat = PivotPattern::new(6, 0b010110);
    assert_eq!(pat.codim(), 3);
    assert_eq!(pat.runs(), vec![(1, 2), (1, 1), (1, 0)]);
    assert_eq!(pat.free_positions(), vec![(1, 3), (1, 5), (2, 3), (2, 5), (4, 5)]);
    for n in 1..=8 {
        for pat in iterate_patterns(n) {
            let runs = pat.runs();
            assert_eq!(runs.iter().map(|r| r.0).sum::<usize>(), pat.codim());
            assert_eq!(runs.iter().map(|r| r.0 + r.1).sum::<usize>(), n);
            assert_eq!(pat.free_positions().len(), pat.num_free());
        }
    }
}

#[test]
fn count_all_examples() {
    assert_eq!(count_all_subspaces(2, pr(2)), BigUint::from(5u32));
    assert_eq!(count_all_subspaces(3, pr(3)), BigUint::from(28u32));
}

#[test]
fn enumeration_is_complete() {
    for n in 1..=5 {
        for q in [2, 3] {
            let p = pr(q);
            let visited = all_subspaces(n, p).count() as u64;
            let expect = count_all_subspaces(n, p);
            assert_eq!(BigUint::from(visited), expect);
            let by_free: BigUint = iterate_patterns(n).map(|pat| BigUint::from(q).pow(pat.num_free() as u32)).sum();
            assert_eq!(by_free, expect);
        }
    }
}

#[test]
fn echelon_forms_are_distinct_subspaces() {
    for n in 1..=4 {
        for q in [2, 3] {
            let p = pr(q);
            let mut seen = BTreeSet::new();
            for m in all_subspaces(n, p) {
                let span = materialize(&m, p);
                assert_eq!(span.len() as u64, q.pow(m.rank() as u32));
                assert!(seen.insert(span), "two matrices with one row space");
            }
        }
    }
}

#[test]
fn reduce_vector_examples() {
    let p = pr(5);
    let sc = heisenberg().structure(p);
    // pivots {2,3}: rows e_2, e_3
    let m = EchelonMatrix::new(PivotPattern::new(3, 0b110), vec![]);
    assert!(reduce_vector(&[0, 0, 0], &m, p).member);
    let v = sc.get(1, 0).to_vec();
    assert_eq!(v, vec![0, 0, 4]);
    assert!(reduce_vector(&v, &m, p).member);
    // pivots {1,2} with free m_13, m_23: [e_1, e_2] = e_3 never lies inside
    let pat = PivotPattern::new(3, 0b011);
    for m in EchelonMatrix::all(pat, p) {
        let r = reduce_vector(sc.get(0, 1), &m, p);
        assert!(!r.member);
        assert_eq!(r.residue, vec![0, 0, 1]);
    }
}

#[test]
fn is_closed_examples() {
    let h = heisenberg();
    let p = pr(3);
    let full = EchelonMatrix::new(PivotPattern::new(3, 0b111), vec![]);
    for flavor in Flavor::ALL {
        assert!(is_closed(&full, &h, p, flavor).unwrap());
    }
    for m in EchelonMatrix::all(PivotPattern::new(3, 0b101), p) {
        assert!(is_closed(&m, &h, p, Flavor::Ideal).unwrap());
    }
    // a plane closes under the bracket iff it contains the centre
    let planes: Vec<_> = EchelonMatrix::all(PivotPattern::new(3, 0b011), p).collect();
    assert_eq!(planes.len(), 9);
    for m in &planes {
        assert!(!is_closed(m, &h, p, Flavor::Sub).unwrap());
    }
    let closed = [0b101u32, 0b110]
        .iter()
        .flat_map(|&mask| EchelonMatrix::all(PivotPattern::new(3, mask), p))
        .filter(|m| is_closed(m, &h, p, Flavor::Sub).unwrap())
        .count();
    assert_eq!(closed, 4);
    let ungraded = parse_presentation("dim 3\nbracket 1 2 = 1*3\n").unwrap();
    assert_eq!(is_closed(&full, &ungraded, p, Flavor::GradedIdeal), Err(Error::NotGraded("ring".into())));
}

#[test]
fn count_examples() {
    let h = heisenberg();
    assert_eq!(count(&h, 3, Flavor::Ideal, true), vec![1, 4, 1, 1]);
    assert_eq!(count(&h, 3, Flavor::Sub, true), vec![1, 4, 13, 1]);
    assert_eq!(count(&ring("abelian", &[("n", 2)]), 2, Flavor::Sub, true), vec![1, 3, 1]);
    assert_eq!(count(&ring("f", &[("c", 3), ("d", 2)]), 2, Flavor::Ideal, true), vec![1, 3, 1, 1, 3, 1]);
    let m4 = count(&ring("M", &[("c", 4)]), 5, Flavor::Ideal, true);
    assert_eq!(m4, vec![1, 6, 1, 1, 1, 1]);
    assert_eq!(count(&ring("fil4", &[]), 5, Flavor::Ideal, true), m4);
}

#[test]
fn auto_dispatch_and_agreement() {
    let h = heisenberg();
    let auto = count_zeta(&h, pr(5), Flavor::Ideal, &CountOptions::default()).unwrap();
    assert_eq!(auto.method, Method::Class2);
    let sub = count_zeta(&h, pr(5), Flavor::Sub, &CountOptions::default()).unwrap();
    assert_eq!(sub.method, Method::Brute);
    assert_eq!(auto.poly.to_u64().unwrap(), count(&h, 5, Flavor::Ideal, true));
    let opts = CountOptions { method: Method::Class2, ..Default::default() };
    assert!(matches!(count_zeta(&h, pr(5), Flavor::Sub, &opts), Err(Error::MethodUnsupported { .. })));
}

#[test]
fn budget_exhaustion_is_an_error() {
    let r = ring("M", &[("c", 4)]);
    for prune in [true, false] {
        let opts = CountOptions { method: Method::Brute, budget: Some(10), prune };
        let err = count_zeta(&r, pr(3), Flavor::Sub, &opts).unwrap_err();
        assert_eq!(err, Error::BudgetExhausted { budget: 10 });
    }
    let opts = CountOptions { method: Method::Brute, budget: Some(1_000_000), prune: true };
    assert!(count_zeta(&r, pr(3), Flavor::Sub, &opts).is_ok());
}

#[test]
fn dimension_cap() {
    let big = ring("abelian", &[("n", 13)]);
    let opts = CountOptions { method: Method::Brute, ..Default::default() };
    assert_eq!(count_zeta(&big, pr(2), Flavor::Sub, &opts).unwrap_err(), Error::DimensionTooLarge(13));
}

#[test]
fn abelian_pruned_counts_without_enumerating() {
    let ab = ring("abelian", &[("n", 12)]);
    let opts = CountOptions { method: Method::Brute, ..Default::default() };
    let r = count_zeta(&ab, pr(31), Flavor::Ideal, &opts).unwrap();
    assert_eq!(r.poly, crate::zeta::abelian_zeta(12, pr(31)));
    assert!(r.nodes < 100_000);
}

/// Catalog rings of dimension at most `max`, with a few parameter choices.
fn small_rings(max: usize) -> Vec<LieRing> {
    let mut out: Vec<LieRing> = catalog_entries()
        .iter()
        .map(|e| catalog(e.name, &e.default_params()).unwrap())
        .filter(|r| r.dim() <= max)
        .collect();
    for (name, kv) in [
        ("M", &[("c", 2)][..]),
        ("M", &[("c", 5)]),
        ("tr", &[("n", 1)]),
        ("grenham", &[("n", 2)]),
        ("abelian", &[("n", 4)]),
        ("f", &[("c", 2), ("d", 3)]),
    ] {
        let r = ring(name, kv);
        if r.dim() <= max {
            out.push(r);
        }
    }
    out
}

#[test]
fn pruning_is_sound() {
    for r in small_rings(6) {
        for q in [2, 3] {
            for flavor in Flavor::ALL {
                if flavor == Flavor::GradedIdeal && r.grading().is_none() {
                    continue;
                }
                assert_eq!(
                    count(&r, q, flavor, true),
                    count(&r, q, flavor, false),
                    "{} p={q} {flavor}",
                    r.name()
                );
            }
        }
    }
}

#[test]
fn flavors_are_monotone_and_bounded() {
    for r in small_rings(6) {
        for q in [2, 3] {
            let sub = count(&r, q, Flavor::Sub, true);
            let ideal = count(&r, q, Flavor::Ideal, true);
            let n = r.dim();
            for z in [&sub, &ideal] {
                assert_eq!(z.len(), n + 1);
                assert_eq!((z[0], z[n]), (1, 1), "{}", r.name());
            }
            for k in 0..=n {
                assert!(ideal[k] <= sub[k], "{} p={q} k={k}", r.name());
            }
            if r.grading().is_some() {
                let graded = count(&r, q, Flavor::GradedIdeal, true);
                assert_eq!((graded[0], graded[n]), (1, 1));
                for k in 0..=n {
                    assert!(graded[k] <= ideal[k], "{} p={q} k={k}", r.name());
                }
            }
        }
    }
}

#[test]
fn membership_matches_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=6usize {
        for q in [2u64, 3, 5] {
            let p = pr(q);
            for _ in 0..10_000 {
                let pat = PivotPattern::new(n, rng.gen_range(0..1u32 << n));
                let free = (0..pat.num_free()).map(|_| rng.gen_range(0..q as u32)).collect();
                let m = EchelonMatrix::new(pat, free);
                let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q as u32)).collect();
                let mut with_v = m.rows();
                let before = linalg::rank(&with_v, p);
                with_v.push(v.clone());
                let after = linalg::rank(&with_v, p);
                assert_eq!(before, m.rank());
                let r = reduce_vector(&v, &m, p);
                assert_eq!(r.member, before == after);
                for c in pat.pivots() {
                    assert_eq!(r.residue[c], 0);
                }
            }
        }
    }
}

#[test]
fn deterministic_across_thread_counts() {
    let r = ring("M", &[("c", 4)]);
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = single.install(|| count(&r, 3, Flavor::Sub, true));
    let b = count(&r, 3, Flavor::Sub, true);
    assert_eq!(a, b);
}
