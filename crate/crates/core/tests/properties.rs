use fpzeta::class2::class2_ideal_zeta;
use fpzeta::enumerate::{count_all_subspaces, reduce_vector, EchelonMatrix, PivotPattern};
use fpzeta::ffield::linalg;
use fpzeta::liealg::lower_central_series;
use fpzeta::zeta::{abelian_zeta, gaussian_binomial};
use fpzeta::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn brute(ring: &LieRing, p: Prime, flavor: Flavor, prune: bool) -> ZetaPoly {
    let opts = CountOptions { method: Method::Brute, budget: None, prune };
    count_zeta(ring, p, flavor, &opts).unwrap().poly
}

/// Class-2 ring: brackets of the first `d1` basis vectors land in the last `d2`.
fn class2_ring() -> impl Strategy<Value = LieRing> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(d1, d2)| {
        let pairs = d1 * (d1 - 1) / 2;
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, d2), pairs).prop_map(move |table| {
            let mut ring = LieRing::new("random", d1 + d2).unwrap();
            let mut t = table.iter();
            for i in 0..d1 {
                for j in i + 1..d1 {
                    let terms: Vec<(i64, usize)> =
                        t.next().unwrap().iter().enumerate().map(|(k, &c)| (c, d1 + k)).collect();
                    ring.set_bracket(i, j, &terms).unwrap();
                }
            }
            ring.with_grading(vec![d1, d2]).unwrap()
        })
    })
}

fn prime() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(2u64), Just(3), Just(5)].prop_map(|q| Prime::new(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class2_agrees_with_brute_force(ring in class2_ring(), p in prime()) {
        prop_assume!(lower_central_series(&ring, p).class == Some(2));
        prop_assert_eq!(class2_ideal_zeta(&ring, p).unwrap(), brute(&ring, p, Flavor::Ideal, true));
    }

    #[test]
    fn pruned_search_agrees_with_naive(ring in class2_ring(), q in prop_oneof![Just(2u64), Just(3)]) {
        let p = Prime::new(q).unwrap();
        for flavor in Flavor::ALL {
            prop_assert_eq!(brute(&ring, p, flavor, true), brute(&ring, p, flavor, false), "{}", flavor);
        }
    }

    #[test]
    fn flavors_nest(ring in class2_ring(), p in prime()) {
        let [g, i, s] = [Flavor::GradedIdeal, Flavor::Ideal, Flavor::Sub].map(|f| brute(&ring, p, f, true));
        for k in 0..=ring.dim() {
            prop_assert!(g.coefficient(k) <= i.coefficient(k));
            prop_assert!(i.coefficient(k) <= s.coefficient(k));
        }
        for z in [&g, &i, &s] {
            prop_assert_eq!(z.coefficient(0), BigUint::from(1u32));
            prop_assert_eq!(z.coefficient(ring.dim()), BigUint::from(1u32));
        }
    }

    #[test]
    fn presentation_round_trips(ring in class2_ring()) {
        let back = parse_presentation(&ring.to_presentation()).unwrap();
        prop_assert_eq!(back.brackets(), ring.brackets());
        prop_assert_eq!(back.grading(), ring.grading());
    }

    #[test]
    fn membership_is_rank_preservation(
        n in 1usize..=6,
        p in prime(),
        mask in any::<u32>(),
        seed in proptest::collection::vec(any::<u32>(), 6 * 6 + 6),
    ) {
        let pat = PivotPattern::new(n, mask & ((1 << n) - 1));
        let q = p.get();
        let free = seed[..pat.num_free()].iter().map(|x| x % q).collect();
        let m = EchelonMatrix::new(pat, free);
        let v: Vec<u32> = seed[seed.len() - n..].iter().map(|x| x % q).collect();
        let mut rows = m.rows();
        rows.push(v.clone());
        let grows = linalg::rank(&rows, p) > m.rank();
        prop_assert_eq!(reduce_vector(&v, &m, p).member, !grows);
    }

    #[test]
    fn gaussian_binomials(n in 0u64..=12, k in 0u64..=12, q in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]) {
        prop_assume!(k <= n);
        prop_assert_eq!(gaussian_binomial(n, k, q), gaussian_binomial(n, n - k, q));
        if n > 0 && k > 0 {
            let pascal = gaussian_binomial(n - 1, k - 1, q) + BigUint::from(q).pow(k as u32) * gaussian_binomial(n - 1, k, q);
            prop_assert_eq!(gaussian_binomial(n, k, q), pascal);
        }
    }
}

#[test]
fn abelian_totals_count_every_subspace() {
    for n in 1..=6 {
        for q in [2, 3, 5] {
            let p = Prime::new(q).unwrap();
            let ab = catalog("abelian", &[("n".to_string(), n as i64)].into_iter().collect()).unwrap();
            let z = brute(&ab, p, Flavor::Sub, true);
            assert_eq!(z, abelian_zeta(n, p));
            assert_eq!(z.total(), count_all_subspaces(n, p));
        }
    }
}
