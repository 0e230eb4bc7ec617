mod common;

use chainlink::geometry::{build_chainlink_hrep, count_lattice_points, HPolytope};
use chainlink::poset::{rank_matrix_bruteforce, rank_polynomial_bruteforce};
use chainlink::qpoly::{analyze_modality, count_peaks, gaussian_binomial};
use chainlink::transfer::{alternating_trace, circular_fence_rank_polynomial};
use chainlink::{Composition, FinitePoset, Integer, OrientedPoset, QPoly, RankMat, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-20i64..20, 0..7).prop_map(|c| QPoly::from_i64s(&c))
}

fn rank_matrix() -> impl Strategy<Value = RankMat> {
    [poly(), poly(), poly(), poly()].prop_map(|[a, b, c, d]| RankMat::new([[a, b], [c, d]]))
}

/// Random poset on `n ≤ max` elements: relations only go from lower to
/// higher index, so the result is acyclic.
fn poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..2 * n).prop_map(move |pairs| {
            let rel: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|(i, j)| i != j)
                .map(|(i, j)| (i.min(j), i.max(j)))
                .collect();
            FinitePoset::from_relations(n, &rel).unwrap()
        })
    })
}

fn oriented(max: usize) -> impl Strategy<Value = OrientedPoset> {
    poset(max).prop_flat_map(|p| {
        let n = p.size();
        (Just(p), 0..n, 0..n).prop_map(|(p, l, r)| OrientedPoset::new(p, l, r).unwrap())
    })
}

fn to_poly(counts: &[u64]) -> QPoly {
    QPoly::from_coeffs(counts.iter().map(|&c| Integer::from(c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_commutes_and_associates(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn matrix_product_associates(x in rank_matrix(), y in rank_matrix(), z in rank_matrix()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!((&x * &y).trace(), (&y * &x).trace());
        prop_assert_eq!((&x * &y).det(), &x.det() * &y.det());
    }

    #[test]
    fn unimodal_shapes(up in prop::collection::btree_set(1u64..100, 1..8), down in prop::collection::btree_set(1u64..100, 0..8)) {
        let mut seq: Vec<Integer> = up.iter().map(|&v| Integer::from(v)).collect();
        let top = *up.iter().max().unwrap();
        seq.extend(down.iter().rev().filter(|&&v| v < top).map(|&v| Integer::from(v)));
        let m = count_peaks(&seq).unwrap();
        prop_assert!(m.unimodal);
        prop_assert_eq!(m.peak_count, 1);
    }

    #[test]
    fn ideal_counts_match_subsets(p in poset(14)) {
        let brute: QPoly = rank_polynomial_bruteforce(&p).unwrap();
        prop_assert_eq!(brute, to_poly(&ideal_counts(p.size(), p.covers())));
    }

    #[test]
    fn rank_matrix_matches_subsets(op in oriented(10)) {
        let m: RankMat = rank_matrix_bruteforce(&op).unwrap();
        let oracle = rank_matrix_counts(op.poset.size(), op.poset.covers(), op.left, op.right);
        for (i, row) in oracle.iter().enumerate() {
            for (j, counts) in row.iter().enumerate() {
                prop_assert_eq!(m.entry(i, j), &to_poly(counts));
            }
        }
    }

    #[test]
    fn linking_multiplies(p in oriented(6), q in oriented(6)) {
        let mp: RankMat = rank_matrix_bruteforce(&p).unwrap();
        let mq: RankMat = rank_matrix_bruteforce(&q).unwrap();
        let linked: RankMat = rank_matrix_bruteforce(&p.link(&q)).unwrap();
        prop_assert_eq!(linked, &mp * &mq);
    }

    #[test]
    fn closing_takes_the_trace(op in oriented(8)) {
        prop_assume!(!op.poset.lt(op.left, op.right));
        let m: RankMat = rank_matrix_bruteforce(&op).unwrap();
        let closed: QPoly = rank_polynomial_bruteforce(&op.closure().unwrap()).unwrap();
        prop_assert_eq!(closed, m.trace());
    }

    #[test]
    fn circular_fence_palindromic(parts in prop::collection::vec(1usize..4, 1..5)) {
        let mut c = parts.clone();
        c.extend(parts.iter().rev());
        let c = Composition::new(c).unwrap();
        let p: QPoly = circular_fence_rank_polynomial(&c).unwrap();
        prop_assert!(p.is_palindromic());
        prop_assert_eq!(p.value_at_one(), alternating_trace::<Integer>(&c).unwrap().value_at_one());
    }

    #[test]
    fn rotation_invariance(parts in prop::collection::vec(1usize..4, 1..4).prop_map(|v| {
        let mut w = v.clone();
        w.extend(v);
        w
    }), shift in 0usize..8) {
        let c = Composition::new(parts.clone()).unwrap();
        let k = 2 * (shift % (parts.len() / 2));
        let mut rotated = parts.clone();
        rotated.rotate_left(k);
        let r = Composition::new(rotated).unwrap();
        let x: QPoly = circular_fence_rank_polynomial(&c).unwrap();
        let y: QPoly = circular_fence_rank_polynomial(&r).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn lattice_counts_match_box_scan(
        a in prop::collection::vec(1usize..6, 1..4),
        l in 0usize..5,
        k in 1u64..3,
        t_frac in 0.0f64..=1.0,
    ) {
        let a = Composition::new(a).unwrap();
        prop_assume!(l <= a.min_part());
        let t = (t_frac * a.total() as f64).round() as i64;
        let p: HPolytope<Rational> = build_chainlink_hrep(&a, l);
        let got = count_lattice_points(&p, Some(&Rational::from_integer(BigInt::from(t))), k).unwrap();
        let ints: Vec<i64> = a.parts().iter().map(|&v| v as i64).collect();
        prop_assert_eq!(got, dilated_section(&ints, l as i64, t, k as i64));
    }

    #[test]
    fn json_round_trips(a in prop::collection::vec(1usize..8, 1..4), l in 0usize..3, c in poly()) {
        let a = Composition::new(a).unwrap();
        let p: HPolytope<Rational> = build_chainlink_hrep(&a, l);
        let back: HPolytope<Rational> = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
        let back: QPoly = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
        let back: Composition = a.to_string().trim_matches(|ch| ch == '(' || ch == ')').parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn gaussian_binomials_against_subsets() {
    for n in 0..=12usize {
        for k in 0..=n {
            let g: QPoly = gaussian_binomial(n, k as i64);
            assert_eq!(
                g.value_at_one(),
                Integer::from(binomial(n as u64, k as u64))
            );
            assert!(g.is_symmetric_about((k * (n - k)) as i64), "{n} {k}");
            assert_eq!(coeffs_u64(&g), gaussian_by_subsets(n, k), "{n} {k}");
        }
        assert!(gaussian_binomial::<Integer>(n, -1).is_zero());
        assert!(gaussian_binomial::<Integer>(n, n as i64 + 1).is_zero());
    }
}

#[test]
fn modality_rejects_negative() {
    assert!(analyze_modality(&QPoly::from_i64s(&[1, -1, 1])).is_err());
}
