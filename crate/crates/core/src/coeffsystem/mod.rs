//! Coefficient systems linking `(a2, a3)` to Carathéodory coefficients.
//!
//! For each class, subordinating the defining operator of `f` and of its
//! inverse `F` to φ, and expanding `φ((p - 1)/(p + 1))`, gives two linear
//! relations in `a2` and two second-order relations in `(a3, a2^2)`.
//! Eliminating between them yields the identities modelled by
//! [`FunctionalId`]; bounding those identities over the coefficient body
//! gives the closed forms in [`crate::classbounds`].

mod functional;
mod search;

pub use functional::{FunctionalId, Monomial, Point, QuadForm, Quantity, Term};
pub use search::{maximize_functional, maximize_with, ExtremalResult, SearchConfig};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::classbounds::ClassSpec;
use crate::error::{Error, Result};
use crate::powerseries::PowerSeries;
use crate::schwarz::{
    box_feasible, sample_caratheodory_with, schwarz_from_caratheodory, tight_feasible_pair,
    CaratheodoryCoeffs,
};

/// Tolerance for algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// `phi(r(z))` with `r = (p - 1)/(p + 1)`, to the order of `phi`.
pub fn subordination_expand(phi: &PowerSeries, p: &CaratheodoryCoeffs) -> Result<PowerSeries> {
    if phi.coeff(0) != Complex64::new(1.0, 0.0) {
        return Err(Error::Parameter(format!(
            "phi must satisfy phi(0) = 1, got {}",
            phi.coeff(0)
        )));
    }
    let r = schwarz_from_caratheodory(p)?;
    let mut c = vec![Complex64::new(0.0, 0.0)];
    c.extend_from_slice(&r.r);
    let inner = PowerSeries::with_order(&c, phi.order())?;
    phi.compose(&inner)
}

/// Second Taylor coefficient of `phi(r(z))` in terms of `p1, p2`:
/// `(B1/2)(p2 - p1^2/2) + (B2/4) p1^2`.
pub fn second_coefficient(b1: f64, b2: f64, p1: Complex64, p2: Complex64) -> Complex64 {
    b1 / 2.0 * (p2 - p1 * p1 / 2.0) + b2 / 4.0 * p1 * p1
}

/// Differential operators whose image is subordinated to φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Operator {
    /// `(1 - lambda) f(z)/z + lambda f'(z)`
    Bazilevic(f64),
    /// `z f'(z)/f(z)`
    Starlike,
    /// `1 + z f''(z)/f'(z)`
    Convex,
    /// `f'(z)`
    Derivative,
}

impl Operator {
    pub fn apply(&self, f: &PowerSeries) -> Result<PowerSeries> {
        if !f.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let d = f.derivative();
        match *self {
            Operator::Bazilevic(lambda) => Ok(f
                .shift_down()?
                .scale(Complex64::new(1.0 - lambda, 0.0))
                .add(&d.scale(Complex64::new(lambda, 0.0)))?),
            Operator::Starlike => d.div(&f.shift_down()?),
            Operator::Convex => {
                let zf2 = d.derivative().shift_up();
                PowerSeries::one(f.order()).add(&zf2.div(&d)?)
            }
            Operator::Derivative => Ok(d),
        }
    }
}

/// Operators applied to `f` and to its inverse.
pub fn class_operators(class: ClassSpec) -> (Operator, Operator) {
    use Operator::*;
    match class {
        ClassSpec::RSigma { lambda } => (Bazilevic(lambda), Bazilevic(lambda)),
        ClassSpec::SstarSigma => (Starlike, Starlike),
        ClassSpec::KSigma => (Convex, Convex),
        ClassSpec::MixedKR => (Convex, Derivative),
        ClassSpec::MixedSstarR => (Starlike, Derivative),
        ClassSpec::MixedSstarK => (Starlike, Convex),
    }
}

/// Coefficients of the four relations
///
/// ```text
/// p_linear * a2                 = (B1/2) p1
/// p_a3 * a3 + p_a2sq * a2^2     = (B1/2)(p2 - p1^2/2) + (B2/4) p1^2
/// q_linear * a2                 = (B1/2) q1
/// q_a3 * a3 + q_a2sq * a2^2     = (B1/2)(q2 - q1^2/2) + (B2/4) q1^2
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassSystem {
    pub p_linear: f64,
    pub p_a3: f64,
    pub p_a2sq: f64,
    pub q_linear: f64,
    pub q_a3: f64,
    pub q_a2sq: f64,
}

impl ClassSystem {
    /// The relations the closed-form bounds are derived from.
    ///
    /// These agree with [`ClassSystem::from_operators`] for every class
    /// except `MixedSstarK`, whose `f`-side relation is taken as
    /// `3 a3 - a2^2` where `z f'/f` has `2 a3 - a2^2`.
    pub fn stated(class: ClassSpec) -> Self {
        let sys = |p: (f64, f64, f64), q: (f64, f64, f64)| ClassSystem {
            p_linear: p.0,
            p_a3: p.1,
            p_a2sq: p.2,
            q_linear: q.0,
            q_a3: q.1,
            q_a2sq: q.2,
        };
        match class {
            ClassSpec::RSigma { lambda } => {
                let (l1, l2) = (1.0 + lambda, 1.0 + 2.0 * lambda);
                sys((l1, l2, 0.0), (-l1, -l2, 2.0 * l2))
            }
            ClassSpec::SstarSigma => sys((1.0, 2.0, -1.0), (-1.0, -2.0, 3.0)),
            ClassSpec::KSigma => sys((2.0, 6.0, -4.0), (-2.0, -6.0, 8.0)),
            ClassSpec::MixedKR => sys((2.0, 6.0, -4.0), (-2.0, -3.0, 6.0)),
            ClassSpec::MixedSstarR => sys((1.0, 2.0, -1.0), (-2.0, -3.0, 6.0)),
            ClassSpec::MixedSstarK => sys((1.0, 3.0, -1.0), (-2.0, -6.0, 8.0)),
        }
    }

    /// Reads the relation coefficients off the operator series of
    /// `z + a2 z^2 + a3 z^3` and its inverse at unit `a2`, `a3`.
    pub fn from_operators(class: ClassSpec) -> Result<Self> {
        let (f_op, inv_op) = class_operators(class);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let f_a2 = PowerSeries::normalized(&[one, zero], 4)?;
        let f_a3 = PowerSeries::normalized(&[zero, one], 4)?;
        let p_a2 = f_op.apply(&f_a2)?;
        let p_a3 = f_op.apply(&f_a3)?;
        let q_a2 = inv_op.apply(&f_a2.revert()?)?;
        let q_a3 = inv_op.apply(&f_a3.revert()?)?;
        Ok(ClassSystem {
            p_linear: p_a2.coeff(1).re,
            p_a3: p_a3.coeff(2).re,
            p_a2sq: p_a2.coeff(2).re,
            q_linear: q_a2.coeff(1).re,
            q_a3: q_a3.coeff(2).re,
            q_a2sq: q_a2.coeff(2).re,
        })
    }

    /// `q1 = ratio * p1` on the solution set.
    pub fn q1_ratio(&self) -> f64 {
        self.q_linear / self.p_linear
    }

    fn det(&self) -> f64 {
        self.p_a3 * self.q_a2sq - self.p_a2sq * self.q_a3
    }

    /// Solves the two second-order relations for `(a3, a2^2)`.
    pub fn eliminate(&self, xp: Complex64, xq: Complex64) -> (Complex64, Complex64) {
        let det = self.det();
        let a3 = (xp * self.q_a2sq - xq * self.p_a2sq) / det;
        let a2sq = (self.p_a3 * xq - self.q_a3 * xp) / det;
        (a3, a2sq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassSolution {
    /// From the `f`-side linear relation.
    pub a2: Complex64,
    /// From eliminating `a3` between the second-order relations.
    pub a2_sq: Complex64,
    /// From eliminating `a2^2` between the second-order relations.
    pub a3: Complex64,
    /// The `F`-side linear relation holds at `a2`, i.e. `q1` is the
    /// class-specific multiple of `p1`.
    pub consistent: bool,
    /// `|a2^2 - a2_sq|`; zero (to rounding) when all four relations hold.
    pub residual: f64,
}

impl ClassSolution {
    pub fn realizable(&self) -> bool {
        self.consistent && self.residual <= 1e-10 * self.a2_sq.norm().max(1.0)
    }
}

fn check_b1(b1: f64) -> Result<()> {
    if !(b1 > 0.0 && b1.is_finite()) {
        return Err(Error::Validation(format!("B1 must be positive, got {b1}")));
    }
    Ok(())
}

pub fn solve_class_coefficients(
    class: ClassSpec,
    b1: f64,
    b2: f64,
    p: &CaratheodoryCoeffs,
    q: &CaratheodoryCoeffs,
) -> Result<ClassSolution> {
    solve_with_system(&ClassSystem::stated(class), b1, b2, p, q)
}

pub fn solve_with_system(
    sys: &ClassSystem,
    b1: f64,
    b2: f64,
    p: &CaratheodoryCoeffs,
    q: &CaratheodoryCoeffs,
) -> Result<ClassSolution> {
    check_b1(b1)?;
    for (name, c) in [("p", p), ("q", q)] {
        if !box_feasible(&c.p) {
            return Err(Error::Infeasible(format!(
                "{name} leaves the box |c_i| <= 2"
            )));
        }
    }
    let (p1, p2, q1, q2) = (p.get(1), p.get(2), q.get(1), q.get(2));
    let a2 = b1 / 2.0 * p1 / sys.p_linear;
    let consistent = (q1 - sys.q1_ratio() * p1).norm() <= ALGEBRA_TOL;
    let (a3, a2_sq) = sys.eliminate(
        second_coefficient(b1, b2, p1, p2),
        second_coefficient(b1, b2, q1, q2),
    );
    Ok(ClassSolution {
        a2,
        a2_sq,
        a3,
        consistent,
        residual: (a2 * a2 - a2_sq).norm(),
    })
}

/// A pair `(p, q)` for which all four relations hold, with the resulting
/// coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizedPair {
    pub p: CaratheodoryCoeffs,
    pub q: CaratheodoryCoeffs,
    pub a2: Complex64,
    pub a3: Complex64,
}

/// Given `p`, returns the unique `(q1, q2)` that satisfies the `F`-side
/// relations together with `(a2, a3)` taken from the `f` side.
pub fn implied_q(
    sys: &ClassSystem,
    b1: f64,
    b2: f64,
    p: &CaratheodoryCoeffs,
) -> Result<(CaratheodoryCoeffs, Complex64, Complex64)> {
    check_b1(b1)?;
    let (p1, p2) = (p.get(1), p.get(2));
    let a2 = b1 / 2.0 * p1 / sys.p_linear;
    let a3 = (second_coefficient(b1, b2, p1, p2) - sys.p_a2sq * a2 * a2) / sys.p_a3;
    let q1 = 2.0 * sys.q_linear * a2 / b1;
    let xq = sys.q_a3 * a3 + sys.q_a2sq * a2 * a2;
    let q2 = 2.0 / b1 * (xq - (b2 - b1) / 4.0 * q1 * q1);
    Ok((CaratheodoryCoeffs::new(vec![q1, q2]), a2, a3))
}

/// Draws `p` from a contracted Herglotz average and keeps it when the
/// implied `q` is tight-feasible.
pub fn sample_realized<R: Rng + ?Sized>(
    sys: &ClassSystem,
    b1: f64,
    b2: f64,
    rng: &mut R,
) -> Result<Option<RealizedPair>> {
    let atoms = rng.random_range(1..=4);
    let p = sample_caratheodory_with(rng, atoms, 2)?;
    let t = if rng.random_bool(0.25) {
        1.0
    } else {
        rng.random::<f64>()
    };
    let p = p.contract(t);
    let (q, a2, a3) = implied_q(sys, b1, b2, &p)?;
    if !tight_feasible_pair(q.get(1), q.get(2)) {
        return Ok(None);
    }
    Ok(Some(RealizedPair { p, q, a2, a3 }))
}

/// Evaluates a functional at `(p1, p2, q1, q2)`.
pub fn functional_value(
    id: FunctionalId,
    lambda: f64,
    b1: f64,
    b2: f64,
    at: &Point,
) -> Result<Complex64> {
    Ok(id.terms(lambda, b1, b2)?.iter().map(|t| t.eval(at)).sum())
}

/// Sum of `|coefficient| * max |monomial|` over the box: the bound obtained
/// by estimating each term separately.
pub fn triangle_bound(id: FunctionalId, lambda: f64, b1: f64, b2: f64) -> Result<f64> {
    Ok(id
        .terms(lambda, b1, b2)?
        .iter()
        .map(|t| t.coef.norm() * t.mono.box_max())
        .sum())
}
