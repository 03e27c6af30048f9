use bicoeff_core::coeffsystem::{functional_value, maximize_with, triangle_bound, SearchConfig};
use bicoeff_core::schwarz::{box_feasible, stream_rng, tight_feasible_pair};
use bicoeff_core::{maximize_functional, Complex64, Feasibility, FunctionalId};
use rand::Rng;

fn draws(seed: u64, n: u64) -> Vec<(f64, f64, f64)> {
    (0..n)
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let b1 = 2.5 * (1.0 - rng.random::<f64>());
            let b2 = rng.random_range(-2.5..=2.5);
            let lambda = rng.random_range(0.0..3.0);
            (b1, b2, lambda)
        })
        .collect()
}

/// Exact box maximum computed by hand: `|2B1^2 + d|` replaces the separate
/// estimates of the two terms sharing a square.
fn exact_shared_square(id: FunctionalId, b1: f64, b2: f64) -> Option<f64> {
    let d = b2 - b1;
    let core = 2.0 * b1 + d.abs() + (2.0 * b1 * b1 + d).abs();
    match id {
        FunctionalId::SstarA2SqQ1 => Some(core / 4.0),
        FunctionalId::KA2Sq => Some(core / 12.0),
        _ => None,
    }
}

#[test]
fn box_alignment_matches_exact_maximum() {
    for (b1, b2, lambda) in draws(100, 20) {
        for id in FunctionalId::TRIANGLE {
            let r = maximize_functional(id, lambda, b1, b2, Feasibility::Box, 2000, 3).unwrap();
            let tb = triangle_bound(id, lambda, b1, b2).unwrap();
            let want = exact_shared_square(id, b1, b2).unwrap_or(tb);
            assert!(
                (r.analytic_max - want).abs() <= 1e-6 * want.max(1.0),
                "{id} at ({b1}, {b2}, {lambda}): {} vs {want}",
                r.analytic_max
            );
            assert!(r.max_modulus <= tb * (1.0 + 1e-12) + 1e-12);
            assert!(
                r.stochastic_max >= 0.99 * r.analytic_max,
                "{id}: stochastic {} vs {}",
                r.stochastic_max,
                r.analytic_max
            );
        }
    }
}

#[test]
fn shared_square_falls_short_of_term_by_term_estimate_when_b2_below_b1() {
    for id in [FunctionalId::SstarA2SqQ1, FunctionalId::KA2Sq] {
        let r = maximize_functional(id, 0.0, 1.0, 0.2, Feasibility::Box, 100, 0).unwrap();
        let tb = triangle_bound(id, 0.0, 1.0, 0.2).unwrap();
        assert!(r.max_modulus < tb - 0.1, "{id}");
        let r = maximize_functional(id, 0.0, 1.0, 1.7, Feasibility::Box, 100, 0).unwrap();
        let tb = triangle_bound(id, 0.0, 1.0, 1.7).unwrap();
        assert!((r.max_modulus - tb).abs() < 1e-9, "{id}");
    }
}

#[test]
fn keogh_merkes_grid() {
    for k in 0..41 {
        let v = -2.0 + 0.1 * k as f64;
        let id = FunctionalId::KeoghMerkes(Complex64::new(v, 0.0));
        let r = maximize_functional(id, 0.0, 1.0, 1.0, Feasibility::Tight, 500, k).unwrap();
        let want = 2.0 * (2.0 * v - 1.0).abs().max(1.0);
        assert!(
            (r.max_modulus - want).abs() < 1e-6,
            "v={v}: {}",
            r.max_modulus
        );
    }
}

#[test]
fn keogh_merkes_complex_parameter() {
    let v = Complex64::new(0.4, 0.9);
    let r = maximize_functional(
        FunctionalId::KeoghMerkes(v),
        0.0,
        1.0,
        1.0,
        Feasibility::Tight,
        500,
        1,
    )
    .unwrap();
    let want = 2.0 * (2.0 * v - 1.0).norm().max(1.0);
    assert!((r.max_modulus - want).abs() < 1e-6);
}

#[test]
fn argmax_is_feasible_and_reproduces_value() {
    for (i, id) in FunctionalId::ALL.iter().enumerate() {
        for mode in [Feasibility::Box, Feasibility::Tight] {
            let Ok(r) = maximize_functional(*id, 0.5, 1.2, -0.3, mode, 300, i as u64) else {
                continue;
            };
            let a = r.argmax;
            match mode {
                Feasibility::Box => assert!(box_feasible(&[a.p1, a.p2, a.q1, a.q2])),
                Feasibility::Tight => {
                    assert!(tight_feasible_pair(a.p1, a.p2), "{id}");
                    assert!(tight_feasible_pair(a.q1, a.q2), "{id}");
                }
            }
            let v = functional_value(*id, 0.5, 1.2, -0.3, &a).unwrap().norm();
            assert!((v - r.max_modulus).abs() <= 1e-12);
        }
    }
}

#[test]
fn tight_maximum_never_exceeds_box_maximum() {
    for (b1, b2, lambda) in draws(7, 5) {
        for id in FunctionalId::TRIANGLE {
            let bx = maximize_functional(id, lambda, b1, b2, Feasibility::Box, 200, 0).unwrap();
            let tt = maximize_functional(id, lambda, b1, b2, Feasibility::Tight, 200, 0).unwrap();
            assert!(tt.max_modulus <= bx.max_modulus + 1e-9, "{id}");
        }
    }
}

#[test]
fn fixed_seed_is_deterministic_across_schedulers() {
    for mode in [Feasibility::Box, Feasibility::Tight] {
        let mut cfg = SearchConfig::new(mode, 20_000, 99);
        let a = maximize_with(FunctionalId::KA3Diff, 0.0, 1.7, 0.4, &cfg).unwrap();
        let b = maximize_with(FunctionalId::KA3Diff, 0.0, 1.7, 0.4, &cfg).unwrap();
        cfg.parallel = false;
        let c = maximize_with(FunctionalId::KA3Diff, 0.0, 1.7, 0.4, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}

#[test]
fn r_sigma_example_maximum() {
    let r = maximize_functional(
        FunctionalId::RSigmaA2Sq,
        1.0,
        2.0,
        2.0,
        Feasibility::Box,
        1,
        0,
    )
    .unwrap();
    assert!((r.max_modulus - 2.0 / 3.0).abs() < 1e-12);
}
