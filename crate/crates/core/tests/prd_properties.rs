//! The curve, the membership oracle and the closed-form summaries are three
//! independent routes to the same set; these tests play them against each
//! other on random histograms.

mod common;

use common::{bounded_below, disjoint_pair, sparse_dirichlet};
use prd_core::{
    alpha_beta, decompose, interpolate_set, max_precision, max_recall, membership_oracle,
    prd_curve, tv_distance, DiscreteDistribution, PrdPoint,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 1000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn scaled_curve_points_are_attainable() {
    let mut rng = rng(1);
    for _ in 0..CASES {
        let size = rng.random_range(2..=8);
        let p = sparse_dirichlet(&mut rng, size, 0.25);
        let q = sparse_dirichlet(&mut rng, size, 0.25);
        let curve = prd_curve(&p, &q, 201).unwrap();
        for pt in curve.points() {
            for theta in [0.1, 0.5, 0.9, 1.0] {
                let s = pt.scaled(theta);
                if s.precision > 0.0 && s.recall > 0.0 {
                    assert!(
                        membership_oracle(s.precision, s.recall, &p, &q).unwrap(),
                        "{s:?} rejected for p={p:?} q={q:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn pushing_curve_points_outward_leaves_the_set() {
    let mut rng = rng(2);
    for _ in 0..CASES {
        let size = rng.random_range(2..=6);
        let p = sparse_dirichlet(&mut rng, size, 0.2);
        let q = sparse_dirichlet(&mut rng, size, 0.2);
        for pt in prd_curve(&p, &q, 201).unwrap().points() {
            if pt.is_origin() {
                continue;
            }
            let out = pt.scaled(1.01);
            if out.precision <= 1.0 && out.recall <= 1.0 {
                assert!(!membership_oracle(out.precision, out.recall, &p, &q).unwrap());
            }
        }
    }
}

#[test]
fn infeasible_points_are_not_dominated() {
    let mut rng = rng(3);
    let m = 201;
    let mut checked = 0;
    while checked < CASES {
        let size = rng.random_range(2..=8);
        let p = sparse_dirichlet(&mut rng, size, 0.25);
        let q = sparse_dirichlet(&mut rng, size, 0.25);
        let a = rng.random_range(1e-6..=1.0);
        let b = rng.random_range(1e-6..=1.0);
        if membership_oracle(a, b, &p, &q).unwrap() {
            continue;
        }
        checked += 1;
        let curve = prd_curve(&p, &q, m).unwrap();
        assert!(
            !curve
                .points()
                .iter()
                .any(|g| g.precision >= a && g.recall >= b),
            "({a}, {b}) dominated for p={p:?} q={q:?}"
        );
    }
}

#[test]
fn feasible_points_are_covered_at_grid_resolution() {
    let mut rng = rng(4);
    let m = 201;
    // Adjacent grid points differ by at most about π/(m+1) in the slower
    // coordinate.
    let slack = 4.0 / m as f64;
    let mut checked = 0;
    while checked < CASES {
        let size = rng.random_range(2..=8);
        let p = sparse_dirichlet(&mut rng, size, 0.25);
        let q = sparse_dirichlet(&mut rng, size, 0.25);
        let a = rng.random_range(1e-6..=1.0);
        let b = rng.random_range(1e-6..=1.0);
        if !membership_oracle(a, b, &p, &q).unwrap() {
            continue;
        }
        checked += 1;
        let curve = prd_curve(&p, &q, m).unwrap();
        assert!(curve
            .points()
            .iter()
            .any(|g| g.precision >= a - slack && g.recall >= b - slack));
    }
}

#[test]
fn interpolated_polygon_lies_inside_the_set() {
    // The set need not be convex, so chords between neighbouring grid points
    // can bulge past the true boundary by a margin that shrinks with m.
    let mut rng = rng(5);
    let m = 201;
    let shrink = 1.0 - 2.0 / m as f64;
    for _ in 0..200 {
        let p = sparse_dirichlet(&mut rng, 6, 0.2);
        let q = sparse_dirichlet(&mut rng, 6, 0.2);
        let poly = interpolate_set(&prd_curve(&p, &q, m).unwrap()).unwrap();
        let mut accepted = 0;
        for _ in 0..2000 {
            let pt = PrdPoint::new(rng.random_range(1e-6..1.0), rng.random_range(1e-6..1.0));
            if poly.contains(pt, 0.0) {
                accepted += 1;
                let inner = pt.scaled(shrink);
                assert!(membership_oracle(inner.precision, inner.recall, &p, &q).unwrap());
            }
        }
        if poly.is_degenerate() {
            assert_eq!(accepted, 0);
        }
    }
}

#[test]
fn line_relation_and_duality() {
    let mut rng = rng(6);
    for _ in 0..CASES {
        let size = rng.random_range(2..=8);
        let p = sparse_dirichlet(&mut rng, size, 0.25);
        let q = sparse_dirichlet(&mut rng, size, 0.25);
        let curve = prd_curve(&p, &q, 1001).unwrap();
        for (lambda, pt) in curve.iter() {
            assert!((pt.precision - lambda * pt.recall).abs() <= 1e-9);
            let dual = alpha_beta(1.0 / lambda, &q, &p).unwrap();
            assert!((pt.precision - dual.recall).abs() <= 1e-9);
            assert!((pt.recall - dual.precision).abs() <= 1e-9);
        }
    }
}

#[test]
fn monotone_with_support_mass_limits() {
    let mut rng = rng(7);
    for _ in 0..CASES {
        let size = rng.random_range(2..=8);
        let p = bounded_below(&mut rng, size);
        let q = bounded_below(&mut rng, size);
        let curve = prd_curve(&p, &q, 1001).unwrap();
        let pts = curve.points();
        assert!(pts.windows(2).all(|w| w[1].precision >= w[0].precision));
        assert!(pts.windows(2).all(|w| w[1].recall <= w[0].recall));
        let last = pts.last().unwrap();
        let first = pts.first().unwrap();
        assert!((last.precision - max_precision(&p, &q).unwrap()).abs() <= 1e-3);
        assert!((first.recall - max_recall(&p, &q).unwrap()).abs() <= 1e-3);
    }
}

#[test]
fn support_mass_formulas_match_the_oracle() {
    // The witness μ = Q restricted to supp(P) ∩ supp(Q) attains precision
    // Q(supp P); nothing above it is attainable.
    let mut rng = rng(8);
    for _ in 0..CASES {
        let size = rng.random_range(2..=8);
        let p = sparse_dirichlet(&mut rng, size, 0.3);
        let q = sparse_dirichlet(&mut rng, size, 0.3);
        let top = max_precision(&p, &q).unwrap();
        assert_eq!(max_recall(&q, &p).unwrap(), top);
        let common: Vec<usize> = (0..size)
            .filter(|&i| p.in_support(i) && q.in_support(i))
            .collect();
        if common.is_empty() {
            assert_eq!(top, 0.0);
            continue;
        }
        let q_common: f64 = common.iter().map(|&i| q.weights()[i]).sum();
        let beta = common
            .iter()
            .map(|&i| p.weights()[i] * q_common / q.weights()[i])
            .fold(f64::INFINITY, f64::min)
            .min(1.0);
        assert!(membership_oracle(top, beta, &p, &q).unwrap());
        if top + 1e-6 <= 1.0 {
            assert!(!membership_oracle(top + 1e-6, 1e-9, &p, &q).unwrap());
        }
    }
}

#[test]
fn equality_and_disjointness() {
    let mut rng = rng(9);
    for _ in 0..CASES {
        let size = rng.random_range(2..=8);
        let p = sparse_dirichlet(&mut rng, size, 0.25);
        let q = sparse_dirichlet(&mut rng, size, 0.25);
        assert!(membership_oracle(1.0, 1.0, &p, &p).unwrap());
        assert_eq!(
            membership_oracle(1.0, 1.0, &p, &q).unwrap(),
            p.approx_eq(&q, 1e-9)
        );

        let (p, q) = disjoint_pair(&mut rng, size);
        assert!(prd_curve(&p, &q, 201)
            .unwrap()
            .points()
            .iter()
            .all(PrdPoint::is_origin));
    }
}

#[test]
fn total_variation_identity() {
    let mut rng = rng(10);
    for _ in 0..CASES {
        let size = rng.random_range(2..=8);
        let p = sparse_dirichlet(&mut rng, size, 0.25);
        let q = sparse_dirichlet(&mut rng, size, 0.25);
        let at_one = prd_curve(&p, &q, 1001).unwrap().at_unit_slope().unwrap();
        let delta = tv_distance(&p, &q).unwrap();
        assert!((at_one.precision - (1.0 - delta)).abs() <= 1e-9);
        assert!((at_one.recall - (1.0 - delta)).abs() <= 1e-9);
    }
}

#[test]
fn decomposition_round_trip() {
    let mut rng = rng(11);
    let mut done = 0;
    while done < CASES {
        let p = sparse_dirichlet(&mut rng, 5, 0.2);
        let q = sparse_dirichlet(&mut rng, 5, 0.2);
        let curve = prd_curve(&p, &q, 51).unwrap();
        let idx = rng.random_range(0..curve.len());
        let pt = curve.points()[idx].scaled(rng.random_range(0.05..=1.0));
        if pt.precision <= 0.0 || pt.recall <= 0.0 {
            continue;
        }
        done += 1;
        let d = decompose(pt.precision, pt.recall, &p, &q).unwrap();
        for (got, want) in d.recombine_reference().iter().zip(p.weights()) {
            assert!((got - want).abs() <= 1e-9);
        }
        for (got, want) in d.recombine_model().iter().zip(q.weights()) {
            assert!((got - want).abs() <= 1e-9);
        }
    }
}

fn distribution(max_size: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.001f64..1.0], 1..=max_size)
        .prop_filter("needs mass", |w| w.iter().sum::<f64>() > 0.0)
}

fn pair() -> impl Strategy<Value = (DiscreteDistribution, DiscreteDistribution)> {
    (2usize..=8)
        .prop_flat_map(|n| {
            let side = prop::collection::vec(prop_oneof![Just(0.0), 0.001f64..1.0], n)
                .prop_filter("needs mass", |w| w.iter().sum::<f64>() > 0.0);
            (side.clone(), side)
        })
        .prop_map(|(a, b)| {
            (
                DiscreteDistribution::from_unnormalized(a).unwrap(),
                DiscreteDistribution::from_unnormalized(b).unwrap(),
            )
        })
}

proptest! {
    #[test]
    fn oracle_is_symmetric_under_swap((p, q) in pair(), a in 0.001f64..=1.0, b in 0.001f64..=1.0) {
        prop_assert_eq!(
            membership_oracle(a, b, &p, &q).unwrap(),
            membership_oracle(b, a, &q, &p).unwrap()
        );
    }

    #[test]
    fn oracle_is_monotone((p, q) in pair(), a in 0.001f64..=1.0, b in 0.001f64..=1.0, s in 0.0f64..1.0) {
        if membership_oracle(a, b, &p, &q).unwrap() {
            let (a2, b2) = (a * (1.0 - s).max(1e-3), b * (1.0 - s / 2.0));
            prop_assert!(membership_oracle(a2, b2, &p, &q).unwrap());
        }
    }

    #[test]
    fn boundary_points_stay_in_unit_square((p, q) in pair(), lambda in 1e-3f64..1e3) {
        let pt = alpha_beta(lambda, &p, &q).unwrap();
        prop_assert!((0.0..=1.0).contains(&pt.precision));
        prop_assert!((0.0..=1.0).contains(&pt.recall));
        prop_assert_eq!(pt.precision == 0.0, pt.recall == 0.0);
    }

    #[test]
    fn unnormalized_input_normalizes(w in distribution(10)) {
        let d = DiscreteDistribution::from_unnormalized(w).unwrap();
        prop_assert!((d.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}
