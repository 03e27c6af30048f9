//! Catalogue of Ma–Minda functions `phi(z) = 1 + B1 z + B2 z^2 + ...`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::powerseries::PowerSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PhiFamily {
    /// `(1 + A z)/(1 + B z)`, `-1 <= B < A <= 1`.
    Janowski { a: f64, b: f64 },
    /// `(1 + (1 - 2 beta) z)/(1 - z)`, `0 <= beta < 1`.
    OrderBeta { beta: f64 },
    /// `((1 + z)/(1 - z))^alpha`, `0 < alpha <= 1`.
    StronglyStarlike { alpha: f64 },
    /// Raw `[B1, B2, B3, ...]`; only `B1 > 0` is enforced.
    Custom { b: Vec<f64> },
}

/// A validated φ with its leading coefficients cached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaMindaPhi {
    pub family: PhiFamily,
    pub b1: f64,
    pub b2: f64,
    /// Carried along for completeness; no bound consumes it.
    pub b3: f64,
}

impl MaMindaPhi {
    pub fn new(family: PhiFamily) -> Result<Self> {
        validate_family(&family)?;
        let s = family_series(&family, 3)?;
        let phi = Self {
            b1: s.coeff(1).re,
            b2: s.coeff(2).re,
            b3: s.coeff(3).re,
            family,
        };
        if phi.b1.is_nan() || phi.b1 <= 0.0 {
            return Err(Error::Validation(format!(
                "B1 must be positive, got {}",
                phi.b1
            )));
        }
        Ok(phi)
    }

    pub fn janowski(a: f64, b: f64) -> Result<Self> {
        Self::new(PhiFamily::Janowski { a, b })
    }

    pub fn order_beta(beta: f64) -> Result<Self> {
        Self::new(PhiFamily::OrderBeta { beta })
    }

    pub fn strongly_starlike(alpha: f64) -> Result<Self> {
        Self::new(PhiFamily::StronglyStarlike { alpha })
    }

    pub fn custom(b: Vec<f64>) -> Result<Self> {
        Self::new(PhiFamily::Custom { b })
    }

    /// `1 + B1 z + B2 z^2 + ...` to the requested order.
    pub fn coefficients(&self, order: usize) -> Result<PowerSeries> {
        family_series(&self.family, order)
    }
}

pub fn phi_coefficients(phi: &MaMindaPhi, order: usize) -> Result<PowerSeries> {
    phi.coefficients(order)
}

fn validate_family(family: &PhiFamily) -> Result<()> {
    let bad = |msg: String| Err(Error::Validation(msg));
    match *family {
        PhiFamily::Janowski { a, b } => {
            if !(-1.0 <= b && b < a && a <= 1.0) {
                return bad(format!("janowski needs -1 <= B < A <= 1, got A={a}, B={b}"));
            }
        }
        PhiFamily::OrderBeta { beta } => {
            if !(0.0..1.0).contains(&beta) {
                return bad(format!("beta must lie in [0, 1), got {beta}"));
            }
        }
        PhiFamily::StronglyStarlike { alpha } => {
            if !(alpha > 0.0 && alpha <= 1.0) {
                return bad(format!("alpha must lie in (0, 1], got {alpha}"));
            }
        }
        PhiFamily::Custom { ref b } => {
            if b.len() < 2 {
                return bad("custom phi needs at least B1 and B2".into());
            }
            if b.iter().any(|x| !x.is_finite()) {
                return bad("custom coefficients must be finite".into());
            }
        }
    }
    Ok(())
}

fn family_series(family: &PhiFamily, order: usize) -> Result<PowerSeries> {
    let order = order.max(1);
    let mut c = vec![1.0; order + 1];
    match *family {
        PhiFamily::Janowski { a, b } => {
            // (1 + A z) * sum (-B z)^k
            for (k, ck) in c.iter_mut().enumerate().skip(1) {
                *ck = (-b).powi(k as i32 - 1) * (a - b);
            }
        }
        PhiFamily::OrderBeta { beta } => {
            for ck in c.iter_mut().skip(1) {
                *ck = 2.0 * (1.0 - beta);
            }
        }
        PhiFamily::StronglyStarlike { alpha } => {
            let plus = binomial_series(alpha, 1.0, order)?;
            let minus = binomial_series(-alpha, -1.0, order)?;
            return plus.mul(&minus);
        }
        PhiFamily::Custom { ref b } => {
            for (k, ck) in c.iter_mut().enumerate().skip(1) {
                *ck = b.get(k - 1).copied().unwrap_or(0.0);
            }
        }
    }
    PowerSeries::from_real(&c)
}

/// `(1 + sign z)^exponent` as a truncated series.
fn binomial_series(exponent: f64, sign: f64, order: usize) -> Result<PowerSeries> {
    let mut c = Vec::with_capacity(order + 1);
    let mut term = 1.0;
    c.push(Complex64::new(1.0, 0.0));
    for k in 1..=order {
        term *= (exponent - (k as f64 - 1.0)) / k as f64 * sign;
        c.push(Complex64::new(term, 0.0));
    }
    PowerSeries::new(c)
}

impl fmt::Display for MaMindaPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            PhiFamily::Janowski { a, b } => write!(f, "janowski:{a},{b}"),
            PhiFamily::OrderBeta { beta } => write!(f, "beta:{beta}"),
            PhiFamily::StronglyStarlike { alpha } => write!(f, "alpha:{alpha}"),
            PhiFamily::Custom { b } => {
                let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                write!(f, "custom:{}", parts.join(","))
            }
        }
    }
}

/// Parses `janowski:A,B`, `beta:0.25`, `alpha:0.5` or `custom:B1,B2[,B3...]`.
impl FromStr for MaMindaPhi {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("expected FAMILY:ARGS, got `{s}`")))?;
        let nums = args
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<f64>()
                    .map_err(|_| Error::Parameter(format!("bad number `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let want = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(Error::Parameter(format!(
                    "`{name}` takes {n} argument(s), got {} in `{s}`",
                    nums.len()
                )))
            }
        };
        match name.trim() {
            "janowski" => {
                want(2)?;
                Self::janowski(nums[0], nums[1])
            }
            "beta" => {
                want(1)?;
                Self::order_beta(nums[0])
            }
            "alpha" => {
                want(1)?;
                Self::strongly_starlike(nums[0])
            }
            "custom" => Self::custom(nums),
            other => Err(Error::Parameter(format!("unknown phi family `{other}`"))),
        }
    }
}
