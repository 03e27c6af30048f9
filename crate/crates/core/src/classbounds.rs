//! Closed-form `|a2|` and `|a3|` bounds for each bi-univalent class.
//!
//! Every bound takes the pair `(B1, B2)` rather than a φ so arbitrary
//! coefficient pairs can be probed. A bound that is a minimum over several
//! expressions reports each expression as a labelled [`Branch`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassSpec {
    /// `(1 - lambda) f/z + lambda f'` and the same for the inverse, both
    /// subordinate to φ.
    RSigma { lambda: f64 },
    /// `z f'/f` for `f` and its inverse.
    SstarSigma,
    /// `1 + z f''/f'` for `f` and its inverse.
    KSigma,
    /// `f` convex, inverse with `F'` subordinate to φ.
    MixedKR,
    /// `f` starlike, inverse with `F'` subordinate to φ.
    MixedSstarR,
    /// `f` starlike, inverse convex.
    MixedSstarK,
}

impl ClassSpec {
    pub fn r_sigma(lambda: f64) -> Result<Self> {
        let spec = ClassSpec::RSigma { lambda };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if let ClassSpec::RSigma { lambda } = *self {
            if !(lambda >= 0.0 && lambda.is_finite()) {
                return Err(Error::Validation(format!(
                    "lambda must be >= 0, got {lambda}"
                )));
            }
        }
        Ok(())
    }

    pub fn lambda(&self) -> f64 {
        match *self {
            ClassSpec::RSigma { lambda } => lambda,
            _ => 0.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassSpec::RSigma { .. } => "r-sigma",
            ClassSpec::SstarSigma => "sstar-sigma",
            ClassSpec::KSigma => "k-sigma",
            ClassSpec::MixedKR => "mixed-k-r",
            ClassSpec::MixedSstarR => "mixed-sstar-r",
            ClassSpec::MixedSstarK => "mixed-sstar-k",
        }
    }

    /// Parses a class name; `lambda` is only used for `r-sigma`.
    pub fn parse_with_lambda(name: &str, lambda: f64) -> Result<Self> {
        let spec = match name {
            "r-sigma" => ClassSpec::RSigma { lambda },
            "sstar-sigma" => ClassSpec::SstarSigma,
            "k-sigma" => ClassSpec::KSigma,
            "mixed-k-r" => ClassSpec::MixedKR,
            "mixed-sstar-r" => ClassSpec::MixedSstarR,
            "mixed-sstar-k" => ClassSpec::MixedSstarK,
            other => return Err(Error::Parameter(format!("unknown class `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub const ALL_NAMES: [&'static str; 6] = [
        "r-sigma",
        "sstar-sigma",
        "k-sigma",
        "mixed-k-r",
        "mixed-sstar-r",
        "mixed-sstar-k",
    ];
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::RSigma { lambda } => write!(f, "r-sigma(lambda={lambda})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    /// Accepts the bare class name; `r-sigma` defaults to `lambda = 1`.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_lambda(s, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub label: String,
    pub value: f64,
}

impl Branch {
    fn new(label: &str, value: f64) -> Self {
        Self {
            label: label.to_string(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub class: ClassSpec,
    pub b1: f64,
    pub b2: f64,
    /// `None` where no bound is claimed for the class.
    pub a2_bound: Option<f64>,
    pub a3_bound: Option<f64>,
    pub a2_branches: Vec<Branch>,
    pub a3_branches: Vec<Branch>,
    /// The Keogh–Merkes quantity `R`; only reported for `SstarSigma`.
    pub r_value: Option<f64>,
}

impl BoundReport {
    fn from_branches(
        class: ClassSpec,
        b1: f64,
        b2: f64,
        a2_branches: Vec<Branch>,
        a3_branches: Vec<Branch>,
    ) -> Self {
        let min = |bs: &[Branch]| bs.iter().map(|b| b.value).reduce(f64::min);
        Self {
            class,
            b1,
            b2,
            a2_bound: min(&a2_branches),
            a3_bound: min(&a3_branches),
            a2_branches,
            a3_branches,
            r_value: None,
        }
    }

    pub fn a2_branch(&self, i: usize) -> f64 {
        self.a2_branches[i].value
    }

    pub fn a3_branch(&self, i: usize) -> f64 {
        self.a3_branches[i].value
    }
}

fn check_b(b1: f64, b2: f64) -> Result<()> {
    if !(b1 > 0.0 && b1.is_finite()) {
        return Err(Error::Validation(format!("B1 must be positive, got {b1}")));
    }
    if !b2.is_finite() {
        return Err(Error::Validation(format!("B2 must be finite, got {b2}")));
    }
    Ok(())
}

/// `B1 + |B2 - B1|`, the quantity shared by the mixed-class bounds.
pub fn t_value(b1: f64, b2: f64) -> f64 {
    b1 + (b2 - b1).abs()
}

/// `R = (B1 + 3 B1 max{1, |(B1 - 4 B2)/(3 B1)|}) / 4`.
pub fn keogh_merkes_r(b1: f64, b2: f64) -> f64 {
    let ratio = ((b1 - 4.0 * b2) / (3.0 * b1)).abs();
    (b1 + 3.0 * b1 * ratio.max(1.0)) / 4.0
}

pub fn bound_r_sigma(lambda: f64, b1: f64, b2: f64) -> Result<BoundReport> {
    let class = ClassSpec::r_sigma(lambda)?;
    check_b(b1, b2)?;
    let a2 = ((b1 + (b1 - b2).abs()) / (1.0 + 2.0 * lambda)).sqrt();
    Ok(BoundReport::from_branches(
        class,
        b1,
        b2,
        vec![Branch::new("sqrt((B1+|B1-B2|)/(1+2*lambda))", a2)],
        vec![],
    ))
}

pub fn bound_sstar_sigma(b1: f64, b2: f64) -> Result<BoundReport> {
    check_b(b1, b2)?;
    let d = (b2 - b1).abs();
    let a2 = vec![
        Branch::new("sqrt(B1+|B2-B1|)", (b1 + d).sqrt()),
        Branch::new(
            "sqrt((B1^2+B1+|B2-B1|)/2)",
            ((b1 * b1 + b1 + d) / 2.0).sqrt(),
        ),
        Branch::new(
            "B1*sqrt(B1)/sqrt(B1^2+|B1-B2|)",
            b1 * b1.sqrt() / (b1 * b1 + d).sqrt(),
        ),
    ];
    let r = keogh_merkes_r(b1, b2);
    let a3 = vec![
        Branch::new("B1+|B2-B1|", b1 + d),
        Branch::new("(B1^2+B1+|B2-B1|)/2", (b1 * b1 + b1 + d) / 2.0),
        Branch::new("R", r),
    ];
    let mut report = BoundReport::from_branches(ClassSpec::SstarSigma, b1, b2, a2, a3);
    report.r_value = Some(r);
    Ok(report)
}

pub fn bound_k_sigma(b1: f64, b2: f64) -> Result<BoundReport> {
    check_b(b1, b2)?;
    let d = (b2 - b1).abs();
    let s = b1 * b1 + b1 + d;
    let a2 = vec![
        Branch::new("sqrt((B1^2+B1+|B2-B1|)/6)", (s / 6.0).sqrt()),
        Branch::new("B1/2", b1 / 2.0),
    ];
    let a3 = vec![
        Branch::new("(B1^2+B1+|B2-B1|)/6", s / 6.0),
        Branch::new("B1(3B1+2)/12", b1 * (3.0 * b1 + 2.0) / 12.0),
    ];
    Ok(BoundReport::from_branches(
        ClassSpec::KSigma,
        b1,
        b2,
        a2,
        a3,
    ))
}

pub fn bound_mixed(class: ClassSpec, b1: f64, b2: f64) -> Result<BoundReport> {
    check_b(b1, b2)?;
    let t = t_value(b1, b2);
    let (a2, a3) = match class {
        ClassSpec::MixedKR => (
            Branch::new("sqrt(3T/8)", (3.0 * t / 8.0).sqrt()),
            Branch::new("5T/12", 5.0 * t / 12.0),
        ),
        ClassSpec::MixedSstarR => (
            Branch::new("sqrt(5T)/3", (5.0 * t).sqrt() / 3.0),
            Branch::new("7T/9", 7.0 * t / 9.0),
        ),
        ClassSpec::MixedSstarK => (
            Branch::new("sqrt(T/2)", (t / 2.0).sqrt()),
            Branch::new("T/2", t / 2.0),
        ),
        other => {
            return Err(Error::Parameter(format!("{other} is not a mixed class")));
        }
    };
    Ok(BoundReport::from_branches(
        class,
        b1,
        b2,
        vec![a2],
        vec![a3],
    ))
}

/// Dispatches to the bound for `class`.
pub fn bound_for(class: ClassSpec, b1: f64, b2: f64) -> Result<BoundReport> {
    match class {
        ClassSpec::RSigma { lambda } => bound_r_sigma(lambda, b1, b2),
        ClassSpec::SstarSigma => bound_sstar_sigma(b1, b2),
        ClassSpec::KSigma => bound_k_sigma(b1, b2),
        _ => bound_mixed(class, b1, b2),
    }
}

/// Alternative closed forms obtained by bounding intermediate identities
/// term by term, reported next to the stated branches they shadow.
pub mod alternatives {
    /// Third `|a2|` branch for the starlike class via
    /// `4(B1^2 - B2 + B1) a2^2 = B1^3 (p2 + q2)`. Infinite when the
    /// left-hand factor vanishes.
    pub fn sstar_a2_ratio_branch(b1: f64, b2: f64) -> f64 {
        b1 * b1.sqrt() / (b1 * b1 + b1 - b2).abs().sqrt()
    }

    /// Second `|a3|` branch for the starlike class from the identity
    /// `16 a3 = 2B1^2 q1^2 + 4B2 p2 + (B1 - B2)(p1^2 + q1^2)`.
    pub fn sstar_a3_q1_branch(b1: f64, b2: f64) -> f64 {
        (b1 * b1 + b2.abs() + (b1 - b2).abs()) / 2.0
    }

    /// First `|a3|` branch for the convex class from the identity
    /// `-48 a3 = 2B1^2 p1^2 - 4B2 p2 + (B1 - B2)(p1^2 + q1^2)`.
    pub fn k_a3_p1_branch(b1: f64, b2: f64) -> f64 {
        (b1 * b1 + b2.abs() + (b1 - b2).abs()) / 6.0
    }
}

pub mod presets;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn assert_min_invariant(r: &BoundReport) {
        for (bound, branches) in [(r.a2_bound, &r.a2_branches), (r.a3_bound, &r.a3_branches)] {
            match bound {
                Some(v) => {
                    let m = branches
                        .iter()
                        .map(|b| b.value)
                        .fold(f64::INFINITY, f64::min);
                    assert_eq!(v, m);
                }
                None => assert!(branches.is_empty()),
            }
        }
    }

    #[test]
    fn r_sigma_examples() {
        let r = bound_r_sigma(1.0, 2.0, 2.0).unwrap();
        assert_relative_eq!(r.a2_bound.unwrap(), (2.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert!(r.a3_bound.is_none());
        for beta in [0.0, 0.3, 0.7] {
            let b = 2.0 * (1.0 - beta);
            let r = bound_r_sigma(1.0, b, b).unwrap();
            assert_relative_eq!(
                r.a2_bound.unwrap(),
                (2.0 * (1.0 - beta) / 3.0).sqrt(),
                epsilon = 1e-15
            );
        }
        let r = bound_r_sigma(0.0, 1.7, 1.7).unwrap();
        assert_relative_eq!(r.a2_bound.unwrap(), 1.7f64.sqrt(), epsilon = 1e-15);
        assert_min_invariant(&r);
    }

    #[test]
    fn sstar_branch_values_at_beta_zero() {
        let r = bound_sstar_sigma(2.0, 2.0).unwrap();
        let got: Vec<f64> = r.a2_branches.iter().map(|b| b.value).collect();
        let want = [2f64.sqrt(), 3f64.sqrt(), 2f64.sqrt()];
        for (g, w) in got.iter().zip(want) {
            assert_relative_eq!(*g, w, epsilon = 1e-15);
        }
        assert_relative_eq!(r.a2_bound.unwrap(), 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(r.r_value, Some(keogh_merkes_r(2.0, 2.0)));
        assert_min_invariant(&r);
    }

    #[test]
    fn sstar_order_beta_piecewise() {
        for i in 0..100 {
            let beta = i as f64 / 100.0;
            let b = 2.0 * (1.0 - beta);
            let r = bound_sstar_sigma(b, b).unwrap();
            let want = if beta <= 0.5 {
                (2.0 * (1.0 - beta)).sqrt()
            } else {
                ((1.0 - beta) * (3.0 - 2.0 * beta)).sqrt()
            };
            assert_relative_eq!(r.a2_bound.unwrap(), want, epsilon = 1e-14);
        }
    }

    #[test]
    fn sstar_strongly_starlike() {
        for alpha in [0.1, 0.25, 0.5, 0.8, 1.0] {
            let r = bound_sstar_sigma(2.0 * alpha, 2.0 * alpha * alpha).unwrap();
            assert_relative_eq!(
                r.a2_bound.unwrap(),
                2.0 * alpha / (1.0 + alpha).sqrt(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn k_sigma_order_beta() {
        for beta in [0.0, 0.2, 0.5, 0.95] {
            let b = 2.0 * (1.0 - beta);
            let r = bound_k_sigma(b, b).unwrap();
            assert_relative_eq!(r.a2_bound.unwrap(), 1.0 - beta, epsilon = 1e-14);
            assert_relative_eq!(
                r.a3_bound.unwrap(),
                (1.0 - beta) * (3.0 - 2.0 * beta) / 3.0,
                epsilon = 1e-14
            );
            assert_min_invariant(&r);
        }
        let r = bound_k_sigma(2.0, 2.0).unwrap();
        assert_eq!((r.a2_bound.unwrap(), r.a3_bound.unwrap()), (1.0, 1.0));
    }

    #[test]
    fn k_sigma_degenerate_limit() {
        let r = bound_k_sigma(1e-9, 1e-9).unwrap();
        assert!(r.a2_bound.unwrap() < 1e-4);
        assert!(r.a3_bound.unwrap() < 1e-8);
    }

    #[test]
    fn mixed_examples() {
        let r = bound_mixed(ClassSpec::MixedKR, 2.0, 2.0).unwrap();
        assert_relative_eq!(r.a2_bound.unwrap(), 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_relative_eq!(r.a3_bound.unwrap(), 5.0 / 6.0, epsilon = 1e-15);

        let r = bound_mixed(ClassSpec::MixedSstarR, 2.0, 2.0).unwrap();
        assert_relative_eq!(r.a2_bound.unwrap(), 10f64.sqrt() / 3.0, epsilon = 1e-15);
        assert_relative_eq!(r.a3_bound.unwrap(), 14.0 / 9.0, epsilon = 1e-15);

        for beta in [0.0, 0.4, 0.9] {
            let b = 2.0 * (1.0 - beta);
            let r = bound_mixed(ClassSpec::MixedSstarK, b, b).unwrap();
            assert_relative_eq!(r.a2_bound.unwrap(), (1.0 - beta).sqrt(), epsilon = 1e-15);
            assert_relative_eq!(r.a3_bound.unwrap(), 1.0 - beta, epsilon = 1e-15);
        }
        assert!(bound_mixed(ClassSpec::KSigma, 1.0, 1.0).is_err());
    }

    #[test]
    fn rejects_nonpositive_b1() {
        for class in [
            ClassSpec::RSigma { lambda: 1.0 },
            ClassSpec::SstarSigma,
            ClassSpec::KSigma,
            ClassSpec::MixedKR,
            ClassSpec::MixedSstarR,
            ClassSpec::MixedSstarK,
        ] {
            assert!(matches!(
                bound_for(class, 0.0, 1.0),
                Err(Error::Validation(_))
            ));
            assert!(matches!(
                bound_for(class, -1.0, 1.0),
                Err(Error::Validation(_))
            ));
        }
        assert!(bound_r_sigma(-0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn crossover_at_half() {
        let r = bound_sstar_sigma(1.0, 1.0).unwrap();
        assert!((r.a2_branch(0) - r.a2_branch(1)).abs() < 1e-12);
    }

    #[test]
    fn order_beta_bounds_are_monotone() {
        let classes = [
            ClassSpec::RSigma { lambda: 0.5 },
            ClassSpec::SstarSigma,
            ClassSpec::KSigma,
            ClassSpec::MixedKR,
            ClassSpec::MixedSstarR,
            ClassSpec::MixedSstarK,
        ];
        for class in classes {
            let mut prev: Option<(Option<f64>, Option<f64>)> = None;
            for i in 0..1000 {
                let b = 2.0 * (1.0 - i as f64 * 1e-3);
                let r = bound_for(class, b, b).unwrap();
                if let Some((p2, p3)) = prev {
                    if let (Some(x), Some(y)) = (p2, r.a2_bound) {
                        assert!(y <= x + 1e-15, "{class} a2 at step {i}");
                    }
                    if let (Some(x), Some(y)) = (p3, r.a3_bound) {
                        assert!(y <= x + 1e-15, "{class} a3 at step {i}");
                    }
                }
                prev = Some((r.a2_bound, r.a3_bound));
            }
        }
    }

    #[test]
    fn alternatives_at_sample_point() {
        let (b1, b2) = (1.0, -0.5);
        let r = bound_sstar_sigma(b1, b2).unwrap();
        assert_relative_eq!(r.a2_branch(2), 1.0 / 2.5f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(
            alternatives::sstar_a2_ratio_branch(b1, b2),
            1.0 / 2.5f64.sqrt(),
            epsilon = 1e-15
        );
        assert_relative_eq!(r.a3_branch(1), 1.75, epsilon = 1e-15);
        assert_relative_eq!(
            alternatives::sstar_a3_q1_branch(b1, b2),
            1.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn class_names_round_trip() {
        for name in ClassSpec::ALL_NAMES {
            let spec = ClassSpec::parse_with_lambda(name, 0.5).unwrap();
            assert_eq!(spec.name(), name);
        }
        assert!("q-sigma".parse::<ClassSpec>().is_err());
        assert!(ClassSpec::parse_with_lambda("r-sigma", -1.0).is_err());
    }
}
