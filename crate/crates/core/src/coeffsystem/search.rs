//! Global maximization of `|functional|` over the coefficient body.
//!
//! Three candidate sources are combined: an analytic phase-alignment
//! candidate, seeded random samples, and a coordinate pattern search started
//! from the best random sample.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::functional::{FunctionalId, Point, QuadForm};
use super::functional_value;
use crate::error::{Error, Result};
use crate::schwarz::{stream_rng, Feasibility};

const CIRCLE_GRID: usize = 1440;
const TIGHT_RADIAL_STEPS: usize = 40;
const TIGHT_PHASE_STEPS: usize = 72;
const PATTERN_MIN_STEP: f64 = 1e-11;
const PATTERN_MAX_ROUNDS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub mode: Feasibility,
    /// Number of random samples.
    pub budget: usize,
    pub seed: u64,
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(mode: Feasibility, budget: usize, seed: u64) -> Self {
        Self {
            mode,
            budget,
            seed,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub functional: String,
    pub max_modulus: f64,
    pub argmax: Point,
    pub mode: Feasibility,
    pub budget: usize,
    pub seed: u64,
    pub evaluations: usize,
    /// Value of the phase-alignment candidate.
    pub analytic_max: f64,
    /// Best value reached from random samples plus pattern search.
    pub stochastic_max: f64,
}

pub fn maximize_functional(
    id: FunctionalId,
    lambda: f64,
    b1: f64,
    b2: f64,
    mode: Feasibility,
    budget: usize,
    seed: u64,
) -> Result<ExtremalResult> {
    maximize_with(id, lambda, b1, b2, &SearchConfig::new(mode, budget, seed))
}

pub fn maximize_with(
    id: FunctionalId,
    lambda: f64,
    b1: f64,
    b2: f64,
    cfg: &SearchConfig,
) -> Result<ExtremalResult> {
    if cfg.budget < 1 {
        return Err(Error::Parameter("search budget must be at least 1".into()));
    }
    let form = id.form(lambda, b1, b2)?;
    let mut evaluations = 0;

    let (analytic_val, analytic_at) = match cfg.mode {
        Feasibility::Box => box_alignment(&form, &mut evaluations),
        Feasibility::Tight => tight_alignment(&form, &mut evaluations),
    };

    let decode = match cfg.mode {
        Feasibility::Box => decode_box,
        Feasibility::Tight => decode_tight,
    };
    let sample = |i: usize| {
        let mut rng = stream_rng(cfg.seed, i as u64);
        let x = random_params(&mut rng);
        let at = decode(&x);
        (form.eval(&at).norm(), x)
    };
    let best_random = if cfg.parallel {
        (0..cfg.budget)
            .into_par_iter()
            .map(sample)
            .reduce_with(pick_params)
    } else {
        (0..cfg.budget).map(sample).reduce(pick_params)
    }
    .expect("budget >= 1");
    evaluations += cfg.budget;

    let (stoch_val, stoch_params) = pattern_search(&form, decode, best_random, &mut evaluations);
    let stoch_at = decode(&stoch_params);

    let (_, argmax) = pick_point((analytic_val, analytic_at), (stoch_val, stoch_at));
    let max_modulus = functional_value(id, lambda, b1, b2, &argmax)?.norm();
    Ok(ExtremalResult {
        functional: id.name(),
        max_modulus,
        argmax,
        mode: cfg.mode,
        budget: cfg.budget,
        seed: cfg.seed,
        evaluations,
        analytic_max: analytic_val,
        stochastic_max: stoch_val,
    })
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Larger value wins; ties go to the lexicographically smaller argument.
fn pick_by<T, K: AsRef<[f64]>>(a: (f64, T), b: (f64, T), key: impl Fn(&T) -> K) -> (f64, T) {
    match a.0.total_cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if lex_cmp(key(&b.1).as_ref(), key(&a.1).as_ref()).is_lt() {
                b
            } else {
                a
            }
        }
    }
}

fn pick_params(a: (f64, [f64; 8]), b: (f64, [f64; 8])) -> (f64, [f64; 8]) {
    pick_by(a, b, |x| *x)
}

fn pick_point(a: (f64, Point), b: (f64, Point)) -> (f64, Point) {
    pick_by(a, b, |x| x.to_array())
}

fn polar(r: f64, theta: f64) -> Complex64 {
    Complex64::from_polar(r, theta)
}

fn unit_phase(z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z / z.norm()
    }
}

/// `max |c0 + c1 w + c2 w^2|` over `|w| = 1`, with the maximizing angle.
fn circle_max(c0: Complex64, c1: Complex64, c2: Complex64, evals: &mut usize) -> (f64, f64) {
    let f = |t: f64| {
        let w = polar(1.0, t);
        (c0 + c1 * w + c2 * w * w).norm()
    };
    let h = TAU / CIRCLE_GRID as f64;
    let (mut best_t, mut best) = (0.0, f(0.0));
    for k in 1..CIRCLE_GRID {
        let t = k as f64 * h;
        let v = f(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    *evals += CIRCLE_GRID;
    // golden-section refinement on the bracketing cell pair
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best_t - h, best_t + h);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-13 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
        *evals += 1;
    }
    let t = 0.5 * (lo + hi);
    let v = f(t);
    if v >= best {
        (v, t)
    } else {
        (best, best_t)
    }
}

/// Over the box the quadratic part peaks on `|p1| = |q1| = 2`; aligning the
/// phases of `p2` and `q2` with it gives the maximum exactly.
fn box_alignment(form: &QuadForm, evals: &mut usize) -> (f64, Point) {
    let zero = Complex64::new(0.0, 0.0);
    let quad_free = form.p1p1 == zero && form.p1q1 == zero && form.q1q1 == zero;
    let (p1, q1) = if quad_free {
        (zero, zero)
    } else {
        let (_, t) = circle_max(form.p1p1, form.p1q1, form.q1q1, evals);
        (Complex64::new(2.0, 0.0), polar(2.0, t))
    };
    let quad = form.quadratic(p1, q1);
    let dir = if quad.norm() > 0.0 {
        unit_phase(quad)
    } else {
        unit_phase(form.p2 + form.q2)
    };
    let align = |c: Complex64| {
        if c.norm() == 0.0 {
            zero
        } else {
            2.0 * dir / unit_phase(c)
        }
    };
    let at = Point::new(p1, align(form.p2), q1, align(form.q2));
    *evals += 1;
    (form.eval(&at).norm(), at)
}

/// Best `(p2, q2)` for given `(p1, q1)` under the tight constraints:
/// writing `p2 = p1^2/2 + u` with `|u| <= 2 - |p1|^2/2` makes the value
/// `W + a u + b v`, maximized by aligning `u`, `v` with `W`.
fn tight_inner(form: &QuadForm, p1: Complex64, q1: Complex64) -> (f64, Point) {
    let zero = Complex64::new(0.0, 0.0);
    let rp = (2.0 - p1.norm_sqr() / 2.0).max(0.0);
    let rq = (2.0 - q1.norm_sqr() / 2.0).max(0.0);
    let w = form.p2 * p1 * p1 / 2.0 + form.q2 * q1 * q1 / 2.0 + form.quadratic(p1, q1);
    let dir = if w.norm() > 0.0 {
        unit_phase(w)
    } else {
        unit_phase(form.p2 + form.q2)
    };
    let slack = |c: Complex64, r: f64| {
        if c.norm() == 0.0 {
            zero
        } else {
            r * dir / unit_phase(c)
        }
    };
    let at = Point::new(
        p1,
        p1 * p1 / 2.0 + slack(form.p2, rp),
        q1,
        q1 * q1 / 2.0 + slack(form.q2, rq),
    );
    let value = w.norm() + form.p2.norm() * rp + form.q2.norm() * rq;
    (value, at)
}

/// Grid over `(|p1|, |q1|, arg q1 - arg p1)` with the exact inner optimum,
/// then pattern search from the best cell. The value is invariant under
/// `(p_k, q_k) -> (p_k, q_k) e^{ik t}`, so `arg p1 = 0` is no loss.
fn tight_alignment(form: &QuadForm, evals: &mut usize) -> (f64, Point) {
    let eval3 = |x: &[f64; 3]| {
        let s = x[0].clamp(0.0, 2.0);
        let t = x[1].clamp(0.0, 2.0);
        tight_inner(form, Complex64::new(s, 0.0), polar(t, x[2]))
    };
    let uses_q1 = form.p1q1.norm() > 0.0 || form.q1q1.norm() > 0.0 || form.q2.norm() > 0.0;
    let t_steps = if uses_q1 { TIGHT_RADIAL_STEPS } else { 0 };
    let phase_steps = if uses_q1 { TIGHT_PHASE_STEPS } else { 1 };
    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    for i in 0..=TIGHT_RADIAL_STEPS {
        for j in 0..=t_steps {
            for k in 0..phase_steps {
                let x = [
                    2.0 * i as f64 / TIGHT_RADIAL_STEPS as f64,
                    2.0 * j as f64 / TIGHT_RADIAL_STEPS.max(1) as f64,
                    TAU * k as f64 / TIGHT_PHASE_STEPS as f64,
                ];
                let v = eval3(&x).0;
                *evals += 1;
                if v > best.0 {
                    best = (v, x);
                }
            }
        }
    }
    let (mut val, mut x) = best;
    let mut step = [0.05, 0.05, TAU / TIGHT_PHASE_STEPS as f64];
    let mut rounds = 0;
    while step.iter().any(|s| *s > PATTERN_MIN_STEP) && rounds < PATTERN_MAX_ROUNDS {
        rounds += 1;
        let mut improved = false;
        for d in 0..3 {
            for sign in [1.0, -1.0] {
                let mut y = x;
                y[d] += sign * step[d];
                if d < 2 {
                    y[d] = y[d].clamp(0.0, 2.0);
                }
                let v = eval3(&y).0;
                *evals += 1;
                if v > val {
                    val = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step.iter_mut().for_each(|s| *s *= 0.5);
        }
    }
    let (v, at) = eval3(&x);
    (v, at)
}

/// Four `(modulus fraction, phase)` pairs in `[0, 1] x [0, 2pi)`.
fn random_params<R: Rng>(rng: &mut R) -> [f64; 8] {
    let mut x = [0.0; 8];
    for k in 0..4 {
        // half the draws sit on the boundary, where maxima live
        x[2 * k] = if rng.random_bool(0.5) {
            1.0
        } else {
            rng.random::<f64>().sqrt()
        };
        x[2 * k + 1] = rng.random::<f64>() * TAU;
    }
    x
}

fn decode_box(x: &[f64; 8]) -> Point {
    let c = |k: usize| polar(2.0 * x[2 * k].clamp(0.0, 1.0), x[2 * k + 1]);
    Point::new(c(0), c(1), c(2), c(3))
}

fn decode_tight(x: &[f64; 8]) -> Point {
    let pair = |k: usize| {
        let c1 = polar(2.0 * x[2 * k].clamp(0.0, 1.0), x[2 * k + 1]);
        let r = 2.0 - c1.norm_sqr() / 2.0;
        let u = polar(r * x[2 * k + 2].clamp(0.0, 1.0), x[2 * k + 3]);
        (c1, c1 * c1 / 2.0 + u)
    };
    let (p1, p2) = pair(0);
    let (q1, q2) = pair(2);
    Point::new(p1, p2, q1, q2)
}

fn pattern_search(
    form: &QuadForm,
    decode: fn(&[f64; 8]) -> Point,
    start: (f64, [f64; 8]),
    evals: &mut usize,
) -> (f64, [f64; 8]) {
    let f = |x: &[f64; 8]| form.eval(&decode(x)).norm();
    let (mut val, mut x) = start;
    let mut step = [0.25, 0.5, 0.25, 0.5, 0.25, 0.5, 0.25, 0.5];
    let mut rounds = 0;
    while step.iter().any(|s| *s > PATTERN_MIN_STEP) && rounds < PATTERN_MAX_ROUNDS {
        rounds += 1;
        let mut improved = false;
        for d in 0..8 {
            for sign in [1.0, -1.0] {
                let mut y = x;
                y[d] += sign * step[d];
                if d % 2 == 0 {
                    y[d] = y[d].clamp(0.0, 1.0);
                }
                let v = f(&y);
                *evals += 1;
                if v > val {
                    val = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step.iter_mut().for_each(|s| *s *= 0.5);
        }
    }
    (val, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffsystem::triangle_bound;
    use crate::schwarz::{box_feasible, tight_feasible_pair};

    #[test]
    fn zero_budget_is_rejected() {
        let r = maximize_functional(FunctionalId::KRA2Sq, 0.0, 2.0, 2.0, Feasibility::Box, 0, 1);
        assert!(matches!(r, Err(Error::Parameter(_))));
    }

    #[test]
    fn r_sigma_box_maximum() {
        let r = maximize_functional(
            FunctionalId::RSigmaA2Sq,
            1.0,
            2.0,
            2.0,
            Feasibility::Box,
            64,
            0,
        )
        .unwrap();
        assert!((r.max_modulus - 2.0 / 3.0).abs() < 1e-12, "{r:?}");
        assert!((r.analytic_max - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn keogh_merkes_endpoints() {
        for (v, want) in [(0.0, 2.0), (1.5, 4.0), (0.5, 2.0), (-1.0, 6.0)] {
            let id = FunctionalId::KeoghMerkes(Complex64::new(v, 0.0));
            let r = maximize_functional(id, 0.0, 1.0, 1.0, Feasibility::Tight, 256, 3).unwrap();
            assert!((r.max_modulus - want).abs() < 1e-9, "v={v}: {r:?}");
            assert!(tight_feasible_pair(r.argmax.p1, r.argmax.p2));
            assert!(tight_feasible_pair(r.argmax.q1, r.argmax.q2));
        }
    }

    #[test]
    fn box_alignment_meets_triangle_bound_when_terms_separate() {
        for id in [
            FunctionalId::KRA3,
            FunctionalId::SstarKA2Sq,
            FunctionalId::KA3Diff,
        ] {
            let r = maximize_functional(id, 0.0, 1.3, -0.7, Feasibility::Box, 128, 9).unwrap();
            let tb = triangle_bound(id, 0.0, 1.3, -0.7).unwrap();
            assert!(
                (r.max_modulus - tb).abs() < 1e-9,
                "{id}: {} vs {tb}",
                r.max_modulus
            );
            let a = r.argmax;
            assert!(box_feasible(&[a.p1, a.p2, a.q1, a.q2]));
        }
    }

    #[test]
    fn parallel_and_serial_agree() {
        let mut cfg = SearchConfig::new(Feasibility::Tight, 2000, 42);
        let a = maximize_with(FunctionalId::SstarRA3, 0.0, 1.1, 0.2, &cfg).unwrap();
        cfg.parallel = false;
        let b = maximize_with(FunctionalId::SstarRA3, 0.0, 1.1, 0.2, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
