//! Randomized invariants: the two oracles agree everywhere, witnesses
//! re-verify, text formats round-trip, and lifts land where they claim.

use num_bigint::BigUint;
use proptest::prelude::*;

use evasive::evasive::{max_intersection_enum, max_intersection_subsets, Flavor};
use evasive::field::PrimeField;
use evasive::incidence::{hyperplanes_from_text, hyperplanes_to_text, Hyperplane};
use evasive::lift::{covering_witness, lift_affine, lift_linear, short_representative};
use evasive::points::{Domain, PointSet};
use evasive::polymap::PolynomialMap;
use evasive::subspace::{count_affine_flats, enumerate_affine, enumerate_linear, gaussian_binomial};
use evasive::witness::{find_box, RPartiteHypergraph};

const BUDGET: u64 = 1 << 22;

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5)]
}

/// A point set over a small prime field together with a flat dimension and
/// flavor to test.
fn oracle_instance() -> impl Strategy<Value = (PointSet, usize, Flavor)> {
    (small_prime(), 2usize..=3).prop_flat_map(|(p, d)| {
        (
            prop::collection::vec(prop::collection::vec(0..p as i64, d), 0..=6),
            1..=d - 1,
            prop::bool::ANY,
            Just(p),
            Just(d),
        )
            .prop_map(move |(pts, k, affine, p, d)| {
                let field = PrimeField::new(p).unwrap();
                let set = PointSet::new(Domain::Field(field), d, pts).unwrap();
                let flavor = if affine { Flavor::Affine } else { Flavor::Linear };
                (set, k, flavor)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracles_agree_and_witnesses_verify((s, k, flavor) in oracle_instance()) {
        let a = max_intersection_enum(&s, k, flavor, BUDGET).unwrap();
        let b = max_intersection_subsets(&s, k, flavor, BUDGET).unwrap();
        prop_assert_eq!(a.c_max, b.c_max);
        prop_assert!(a.verify(&s).unwrap());
        prop_assert!(b.verify(&s).unwrap());
    }

    #[test]
    fn subset_cmax_is_monotone_in_k((s, _, flavor) in oracle_instance()) {
        let d = s.dim();
        let mut last = 0;
        for k in 0..=d {
            let c = max_intersection_subsets(&s, k, flavor, BUDGET).unwrap().c_max;
            prop_assert!(c >= last, "c_max dropped from {} to {} at k={}", last, c, k);
            prop_assert!(c <= s.len());
            last = c;
        }
        // Every point lies in the full space.
        prop_assert_eq!(last, s.len());
    }

    #[test]
    fn pointset_text_roundtrips((s, _, _) in oracle_instance()) {
        let text = s.to_text();
        let back = PointSet::from_text(&text).unwrap();
        prop_assert_eq!(s, back);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn map_text_roundtrip_evaluates_identically(
        p in prop_oneof![Just(5u64), Just(7), Just(11)],
        k in 1usize..=2,
        d in 1usize..=3,
        degree in 1u32..=4,
        seed in 0u64..1000,
    ) {
        let field = PrimeField::new(p).unwrap();
        let map = PolynomialMap::sample(field, k, d, degree, seed);
        let back = PolynomialMap::from_text(&map.to_text()).unwrap();
        // Same evaluations on the full domain (small enough to sweep).
        let mut z = vec![0u64; k];
        loop {
            prop_assert_eq!(map.evaluate(&z).unwrap(), back.evaluate(&z).unwrap());
            let mut rolled = true;
            for slot in z.iter_mut().rev() {
                *slot += 1;
                if *slot < p {
                    rolled = false;
                    break;
                }
                *slot = 0;
            }
            if rolled {
                break;
            }
        }
    }

    #[test]
    fn short_representatives_stay_in_box(
        p in prop_oneof![Just(5u64), Just(7), Just(11), Just(13)],
        raw in prop::collection::vec(0u64..13, 2),
    ) {
        prop_assume!(raw.iter().any(|&c| c % p != 0));
        let field = PrimeField::new(p).unwrap();
        // Regime n^2 >= p guarantees a representative exists.
        let n = (p as f64).sqrt().ceil() as u64;
        let y = short_representative(field, &raw, n).unwrap();
        prop_assert!(y.iter().all(|&c| c.unsigned_abs() <= n));
        let equivalent = (1..p).any(|l| {
            field.mul(l, raw[0] % p) == field.elem(y[0])
                && field.mul(l, raw[1] % p) == field.elem(y[1])
        });
        prop_assert!(equivalent);
    }

    #[test]
    fn affine_lift_stays_in_grid(
        n in 4u64..=9,
        d in 2usize..=3,
        seed in 0u64..100,
    ) {
        let k = d - 1;
        let rep = lift_affine(n, d, k, seed, BUDGET).unwrap();
        prop_assert_eq!(rep.lifted.len(), rep.source_size);
        for pt in rep.lifted.points() {
            prop_assert!(pt.iter().all(|&c| c >= 1 && c <= n as i64));
        }
        prop_assert!(rep.p > n / 2 && rep.p <= n);
        if let Some(cert) = &rep.certificate {
            prop_assert!(cert.verify(&rep.lifted).unwrap());
        }
    }

    #[test]
    fn linear_lift_stays_in_grid(
        n in 2u64..=6,
        d in 2usize..=3,
        seed in 0u64..100,
    ) {
        let rep = lift_linear(n, d, 1, seed, BUDGET).unwrap();
        for pt in rep.lifted.points() {
            prop_assert!(pt.iter().all(|&c| c >= 1 && c <= n as i64));
        }
        // The kept bucket is at least a 3^-d fraction of the distinct
        // representatives.
        let star = rep.distinct_representatives.unwrap();
        prop_assert!(rep.lifted.len() * 3usize.pow(d as u32) >= star);
        if let Some(cert) = &rep.certificate {
            prop_assert!(cert.verify(&rep.lifted).unwrap());
        }
    }

    #[test]
    fn found_boxes_validate(
        edges in prop::collection::btree_set((0usize..6, 0usize..6), 0..=24),
        exhaustive in prop::bool::ANY,
    ) {
        let edges: Vec<Vec<usize>> = edges.into_iter().map(|(a, b)| vec![a, b]).collect();
        let h = RPartiteHypergraph::new(vec![6, 6], edges).unwrap();
        if let Some(w) = find_box(&h, &[2, 2], exhaustive, BUDGET).unwrap() {
            prop_assert!(w.validate(&h).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn covering_witnesses_validate(n in 2u64..=3, d in 2usize..=3) {
        let w = covering_witness(n, d, BUDGET).unwrap();
        prop_assert!(w.validate().unwrap());
        prop_assert_eq!(w.representatives.len() as u64, w.expected_count());
    }

    #[test]
    fn subspace_enumeration_matches_counts(
        p in small_prime(),
        d in 1usize..=3,
        k in 0usize..=3,
    ) {
        prop_assume!(k <= d);
        let field = PrimeField::new(p).unwrap();
        let linear = enumerate_linear(field, d, k, BUDGET).unwrap().count();
        prop_assert_eq!(BigUint::from(linear), gaussian_binomial(d, k, p));
        let affine = enumerate_affine(field, d, k, BUDGET).unwrap().count();
        prop_assert_eq!(BigUint::from(affine), count_affine_flats(d, k, p));
    }

    #[test]
    fn hyperplane_text_roundtrips(
        rows in prop::collection::vec(
            (prop::collection::vec(-9i64..=9, 3), -20i64..=20),
            0..=8,
        ),
    ) {
        let hs: Vec<Hyperplane> = rows
            .into_iter()
            .filter(|(normal, _)| normal.iter().any(|&c| c != 0))
            .map(|(normal, t)| Hyperplane::new(normal, t).unwrap())
            .collect();
        let text = hyperplanes_to_text(3, &hs).unwrap();
        prop_assert_eq!(hyperplanes_from_text(&text).unwrap(), hs);
    }

    #[test]
    fn hypergraph_text_roundtrips(
        edges in prop::collection::btree_set((0usize..4, 0usize..5, 0usize..3), 0..=15),
    ) {
        let edges: Vec<Vec<usize>> =
            edges.into_iter().map(|(a, b, c)| vec![a, b, c]).collect();
        let h = RPartiteHypergraph::new(vec![4, 5, 3], edges).unwrap();
        let back = RPartiteHypergraph::from_text(&h.to_text()).unwrap();
        prop_assert_eq!(h, back);
    }
}

