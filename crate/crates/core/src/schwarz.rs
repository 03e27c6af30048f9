//! Carathéodory and Schwarz coefficient tuples.
//!
//! A Carathéodory function `p(z) = 1 + p1 z + p2 z^2 + ...` has positive real
//! part on the unit disk; `r = (p - 1)/(p + 1)` is then a Schwarz function.
//! The transforms here act on coefficient tuples through truncated series.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::powerseries::PowerSeries;

/// Slack allowed in the feasibility predicates for floating-point rounding.
pub const FEASIBILITY_TOL: f64 = 1e-12;

pub const DEFAULT_COEFF_COUNT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Feasibility {
    /// `|p_i| <= 2` for every coefficient.
    Box,
    /// Box, plus the sharp second-coefficient region
    /// `|p2 - p1^2/2| <= 2 - |p1|^2/2`.
    Tight,
}

impl std::fmt::Display for Feasibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Feasibility::Box => "box",
            Feasibility::Tight => "tight",
        })
    }
}

impl std::str::FromStr for Feasibility {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(Feasibility::Box),
            "tight" => Ok(Feasibility::Tight),
            other => Err(Error::Parameter(format!("unknown mode `{other}`"))),
        }
    }
}

/// `p1..pK` of a Carathéodory function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaratheodoryCoeffs {
    pub p: Vec<Complex64>,
}

/// `r1..rK` of a Schwarz function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzCoeffs {
    pub r: Vec<Complex64>,
}

impl CaratheodoryCoeffs {
    pub fn new(p: Vec<Complex64>) -> Self {
        Self { p }
    }

    pub fn from_real(p: &[f64]) -> Self {
        Self::new(p.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The constant function `p = 1`.
    pub fn constant(k: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); k])
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `p_i`, one-based; zero past the stored tail.
    pub fn get(&self, i: usize) -> Complex64 {
        assert!(i >= 1, "Carathéodory coefficients are one-based");
        self.p.get(i - 1).copied().unwrap_or_default()
    }

    /// `p(z)` as a series of order `K` (constant term 1).
    pub fn to_series(&self) -> Result<PowerSeries> {
        let mut c = Vec::with_capacity(self.p.len() + 1);
        c.push(Complex64::new(1.0, 0.0));
        c.extend_from_slice(&self.p);
        PowerSeries::with_order(&c, self.p.len().max(1))
    }

    /// Convex combination `t p + (1 - t)` with the constant function.
    pub fn contract(&self, t: f64) -> Self {
        Self::new(self.p.iter().map(|c| c * t).collect())
    }

    pub fn is_feasible(&self, mode: Feasibility) -> bool {
        validate_caratheodory(self, mode)
    }
}

impl SchwarzCoeffs {
    pub fn new(r: Vec<Complex64>) -> Self {
        Self { r }
    }

    pub fn get(&self, i: usize) -> Complex64 {
        assert!(i >= 1, "Schwarz coefficients are one-based");
        self.r.get(i - 1).copied().unwrap_or_default()
    }

    /// `r(z)` as a series of order `K` (constant term 0).
    pub fn to_series(&self) -> Result<PowerSeries> {
        let mut c = Vec::with_capacity(self.r.len() + 1);
        c.push(Complex64::new(0.0, 0.0));
        c.extend_from_slice(&self.r);
        PowerSeries::with_order(&c, self.r.len().max(1))
    }
}

pub fn box_feasible(p: &[Complex64]) -> bool {
    p.iter().all(|c| c.norm() <= 2.0 + FEASIBILITY_TOL)
}

/// `|p2 - p1^2/2| <= 2 - |p1|^2/2`, together with `|p1| <= 2`.
pub fn tight_feasible_pair(p1: Complex64, p2: Complex64) -> bool {
    p1.norm() <= 2.0 + FEASIBILITY_TOL
        && (p2 - p1 * p1 / 2.0).norm() <= 2.0 - p1.norm_sqr() / 2.0 + FEASIBILITY_TOL
}

pub fn validate_caratheodory(p: &CaratheodoryCoeffs, mode: Feasibility) -> bool {
    let boxed = box_feasible(&p.p);
    match mode {
        Feasibility::Box => boxed,
        Feasibility::Tight => boxed && tight_feasible_pair(p.get(1), p.get(2)),
    }
}

/// `r = (p - 1)/(p + 1)`, by series division.
pub fn schwarz_from_caratheodory(p: &CaratheodoryCoeffs) -> Result<SchwarzCoeffs> {
    if !box_feasible(&p.p) {
        return Err(Error::Infeasible(format!(
            "some |p_i| exceeds 2 in {:?}",
            p.p
        )));
    }
    let series = p.to_series()?;
    let one = PowerSeries::one(series.order());
    let r = series.sub(&one)?.div(&series.add(&one)?)?;
    Ok(SchwarzCoeffs::new(r.coeffs()[1..=p.len()].to_vec()))
}

/// `p = (1 + r)/(1 - r)`.
pub fn caratheodory_from_schwarz(r: &SchwarzCoeffs) -> Result<CaratheodoryCoeffs> {
    if r.get(1).norm() > 1.0 + FEASIBILITY_TOL {
        return Err(Error::Infeasible(format!(
            "|r1| = {} exceeds 1",
            r.get(1).norm()
        )));
    }
    let series = r.to_series()?;
    let one = PowerSeries::one(series.order());
    let p = one.add(&series)?.div(&one.sub(&series)?)?;
    Ok(CaratheodoryCoeffs::new(p.coeffs()[1..=r.r.len()].to_vec()))
}

/// Coefficients of the Herglotz average `sum_j w_j (1 + x_j z)/(1 - x_j z)`,
/// i.e. `p_i = 2 sum_j w_j x_j^i`.
///
/// Weights must be non-negative and sum to one; points must be unimodular.
pub fn herglotz_coefficients(
    weights: &[f64],
    points: &[Complex64],
    k: usize,
) -> Result<CaratheodoryCoeffs> {
    if weights.is_empty() || weights.len() != points.len() {
        return Err(Error::Parameter(
            "weights and points must be non-empty and of equal length".into(),
        ));
    }
    let total: f64 = weights.iter().sum();
    if weights.iter().any(|&w| w < 0.0) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::Parameter(
            "weights must be non-negative and sum to 1".into(),
        ));
    }
    if points.iter().any(|x| (x.norm() - 1.0).abs() > 1e-12) {
        return Err(Error::Parameter(
            "Herglotz points must lie on the unit circle".into(),
        ));
    }
    Ok(herglotz_sum(weights, points, k))
}

fn herglotz_sum(weights: &[f64], points: &[Complex64], k: usize) -> CaratheodoryCoeffs {
    let p = (1..=k as i32)
        .map(|i| {
            weights
                .iter()
                .zip(points)
                .map(|(w, x)| 2.0 * w * x.powi(i))
                .sum()
        })
        .collect();
    CaratheodoryCoeffs::new(p)
}

/// Generator for a given `(seed, stream)` pair. Distinct streams are
/// independent, so sample `i` can be drawn without drawing samples `0..i`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws a Herglotz average with `atoms` extreme points from `rng`.
/// Weights are normalized independent uniforms; angles are uniform.
pub fn sample_caratheodory_with<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: usize,
    k: usize,
) -> Result<CaratheodoryCoeffs> {
    if atoms < 1 {
        return Err(Error::Parameter("atoms must be >= 1".into()));
    }
    let mut weights: Vec<f64> = (0..atoms)
        .map(|_| rng.random::<f64>() + f64::MIN_POSITIVE)
        .collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let points: Vec<Complex64> = (0..atoms)
        .map(|_| Complex64::from_polar(1.0, rng.random::<f64>() * TAU))
        .collect();
    Ok(herglotz_sum(&weights, &points, k))
}

/// Deterministic Herglotz sample for `(atoms, k, seed)`.
pub fn sample_caratheodory(atoms: usize, k: usize, seed: u64) -> Result<CaratheodoryCoeffs> {
    sample_caratheodory_with(&mut stream_rng(seed, 0), atoms, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn constant_maps_to_zero() {
        let r = schwarz_from_caratheodory(&CaratheodoryCoeffs::constant(3)).unwrap();
        assert!(r.r.iter().all(|c| c.norm() == 0.0));
        let p =
            caratheodory_from_schwarz(&SchwarzCoeffs::new(vec![Complex64::default(); 3])).unwrap();
        assert!(p.p.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn half_plane_map_gives_identity_schwarz() {
        let p = CaratheodoryCoeffs::from_real(&[2.0, 2.0, 2.0]);
        let r = schwarz_from_caratheodory(&p).unwrap();
        assert!(close(r.get(1), Complex64::new(1.0, 0.0)));
        assert!(close(r.get(2), Complex64::default()));
        assert!(close(r.get(3), Complex64::default()));

        let back = caratheodory_from_schwarz(&SchwarzCoeffs::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::default(),
            Complex64::default(),
            Complex64::default(),
        ]))
        .unwrap();
        assert!(back.p.iter().all(|c| close(*c, Complex64::new(2.0, 0.0))));
    }

    #[test]
    fn rotated_extreme_point() {
        let x = Complex64::from_polar(0.7, 1.1);
        let p = CaratheodoryCoeffs::new(vec![2.0 * x, 2.0 * x * x, 2.0 * x * x * x]);
        let r = schwarz_from_caratheodory(&p).unwrap();
        assert!(close(r.get(1), x));
        assert!(close(r.get(2), Complex64::default()));
        assert!(close(r.get(3), Complex64::default()));
    }

    #[test]
    fn third_coefficient_matches_closed_form() {
        let p = CaratheodoryCoeffs::new(vec![
            Complex64::new(0.3, -1.1),
            Complex64::new(-0.8, 0.4),
            Complex64::new(1.2, 0.9),
        ]);
        let (p1, p2, p3) = (p.get(1), p.get(2), p.get(3));
        let r = schwarz_from_caratheodory(&p).unwrap();
        assert!(close(r.get(1), p1 / 2.0));
        assert!(close(r.get(2), (p2 - p1 * p1 / 2.0) / 2.0));
        let r3 = (p3 + p1 / 2.0 * (p1 * p1 / 2.0 - p2) - p1 * p2 / 2.0) / 2.0;
        assert!(close(r.get(3), r3));
    }

    #[test]
    fn infeasible_input_is_rejected() {
        let p = CaratheodoryCoeffs::from_real(&[2.5, 0.0, 0.0]);
        assert!(matches!(
            schwarz_from_caratheodory(&p),
            Err(Error::Infeasible(_))
        ));
        let r = SchwarzCoeffs::new(vec![Complex64::new(1.5, 0.0)]);
        assert!(matches!(
            caratheodory_from_schwarz(&r),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn validate_modes() {
        let p = CaratheodoryCoeffs::from_real(&[2.0, 2.0]);
        assert!(validate_caratheodory(&p, Feasibility::Box));
        assert!(validate_caratheodory(&p, Feasibility::Tight));

        let p = CaratheodoryCoeffs::from_real(&[2.0, -2.0]);
        assert!(validate_caratheodory(&p, Feasibility::Box));
        assert!(!validate_caratheodory(&p, Feasibility::Tight));

        let p = CaratheodoryCoeffs::from_real(&[0.0, 0.0]);
        assert!(validate_caratheodory(&p, Feasibility::Box));
        assert!(validate_caratheodory(&p, Feasibility::Tight));
    }

    #[test]
    fn herglotz_examples() {
        let one = Complex64::new(1.0, 0.0);
        let p = herglotz_coefficients(&[1.0], &[one], 4).unwrap();
        assert!(p.p.iter().all(|c| close(*c, Complex64::new(2.0, 0.0))));

        let x = Complex64::from_polar(1.0, 2.3);
        let p = herglotz_coefficients(&[1.0], &[x], 5).unwrap();
        assert!(p.p.iter().all(|c| (c.norm() - 2.0).abs() < 1e-12));

        let p = herglotz_coefficients(&[0.5, 0.5], &[one, -one], 3).unwrap();
        assert!(close(p.get(1), Complex64::default()));
        assert!(close(p.get(2), Complex64::new(2.0, 0.0)));
        assert!(close(p.get(3), Complex64::default()));
    }

    #[test]
    fn herglotz_rejects_bad_measures() {
        let one = Complex64::new(1.0, 0.0);
        assert!(herglotz_coefficients(&[0.7], &[one], 2).is_err());
        assert!(herglotz_coefficients(&[1.0], &[one * 0.5], 2).is_err());
        assert!(herglotz_coefficients(&[], &[], 2).is_err());
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = sample_caratheodory(3, 3, 42).unwrap();
        let b = sample_caratheodory(3, 3, 42).unwrap();
        let c = sample_caratheodory(3, 3, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(sample_caratheodory(0, 3, 1).is_err());
    }

    #[test]
    fn single_atom_sample_is_extreme() {
        let p = sample_caratheodory(1, 4, 9).unwrap();
        assert!(p.p.iter().all(|c| (c.norm() - 2.0).abs() < 1e-12));
    }

    #[test]
    fn mode_parses() {
        assert_eq!("box".parse::<Feasibility>().unwrap(), Feasibility::Box);
        assert_eq!("tight".parse::<Feasibility>().unwrap(), Feasibility::Tight);
        assert!("loose".parse::<Feasibility>().is_err());
    }
}
