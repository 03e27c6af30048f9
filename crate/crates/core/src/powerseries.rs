//! Truncated complex power series.
//!
//! A [`PowerSeries`] of order `N` stores the Taylor coefficients `c0..=cN`.
//! Every binary operation requires both operands to share the same order and
//! truncates the result back to it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from `c0..=cN`. At least two coefficients are required.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Parameter(format!(
                "a series needs order >= 1, got {} coefficient(s)",
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Copies `coeffs` into a series of the given order, padding with zeros
    /// or dropping the tail as needed.
    pub fn with_order(coeffs: &[Complex64], order: usize) -> Result<Self> {
        let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        Self::new(c)
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order.max(1) + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// The identity series `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[1] = Complex64::new(1.0, 0.0);
        s
    }

    /// `z + a2 z^2 + a3 z^3 + ...` where `tail = [a2, a3, ...]`.
    pub fn normalized(tail: &[Complex64], order: usize) -> Result<Self> {
        let mut c = Vec::with_capacity(tail.len() + 2);
        c.push(Complex64::new(0.0, 0.0));
        c.push(Complex64::new(1.0, 0.0));
        c.extend_from_slice(tail);
        Self::with_order(&c, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// `c0 == 0` and `c1 == 1` exactly.
    pub fn is_normalized(&self) -> bool {
        self.coeffs[0] == Complex64::new(0.0, 0.0) && self.coeffs[1] == Complex64::new(1.0, 0.0)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `outer(inner(z))`, evaluated by Horner's scheme on series.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if inner.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::CompositionDomain(inner.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Term-wise derivative. The top coefficient becomes zero so the order is
    /// preserved.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 1..=n {
            out[k - 1] = self.coeffs[k] * k as f64;
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse `1 / self`; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == Complex64::new(0.0, 0.0) {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = c0.inv();
        for k in 1..=n {
            let s: Complex64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out[k] = -s / c0;
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, denom: &Self) -> Result<Self> {
        self.mul(&denom.recip()?)
    }

    /// Drops the leading `z` factor of a series with `c0 = 0`, returning
    /// `self(z) / z`. The new top coefficient is zero.
    pub fn shift_down(&self) -> Result<Self> {
        if self.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::CompositionDomain(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[..n].copy_from_slice(&self.coeffs[1..]);
        Ok(Self { coeffs: out })
    }

    /// `z * self(z)`, truncated; the top coefficient is dropped.
    pub fn shift_up(&self) -> Self {
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[1..].copy_from_slice(&self.coeffs[..n]);
        Self { coeffs: out }
    }

    /// Compositional inverse of a normalized series.
    ///
    /// Solved term by term: with `g_1..g_{n-1}` fixed, the `z^n` coefficient
    /// of `f(g(z))` equals `g_n` plus a quantity independent of `g_n`, so a
    /// single pass fixes each coefficient.
    pub fn revert(&self) -> Result<Self> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let n = self.order();
        let mut g = Self::identity(n);
        for k in 2..=n {
            let h = self.compose(&g)?;
            g.coeffs[k] = -h.coeffs[k];
        }
        Ok(g)
    }

    /// Largest per-coefficient distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn reals(s: &PowerSeries) -> Vec<f64> {
        s.coeffs().iter().map(|z| z.re).collect()
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = PowerSeries::from_real(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        let b = PowerSeries::from_real(&[1.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(reals(&a.mul(&b).unwrap()), vec![1.0, 0.0, -1.0, 0.0]);
    }

    #[test]
    fn mul_identity() {
        let a = PowerSeries::from_real(&[0.3, -1.0, 2.5, 7.0]).unwrap();
        assert_eq!(a.mul(&PowerSeries::one(3)).unwrap(), a);
    }

    #[test]
    fn mul_square_by_hand() {
        let a = PowerSeries::from_real(&[1.0, 2.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(reals(&a.mul(&a).unwrap()), vec![1.0, 4.0, 8.0, 8.0, 4.0]);
        let a3 = PowerSeries::with_order(a.coeffs(), 3).unwrap();
        assert_eq!(reals(&a3.mul(&a3).unwrap()), vec![1.0, 4.0, 8.0, 8.0]);
    }

    #[test]
    fn mul_rejects_order_mismatch() {
        let a = PowerSeries::one(3);
        let b = PowerSeries::one(4);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn compose_with_identity_inner() {
        let outer = PowerSeries::from_real(&[1.0, 0.7, -0.2]).unwrap();
        assert_eq!(outer.compose(&PowerSeries::identity(2)).unwrap(), outer);
    }

    #[test]
    fn compose_monomial_substitution() {
        let outer = PowerSeries::from_real(&[1.0, 2.0, 2.0, 0.0, 0.0]).unwrap();
        let inner = PowerSeries::from_real(&[0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            reals(&outer.compose(&inner).unwrap()),
            vec![1.0, 0.0, 2.0, 0.0, 2.0]
        );
    }

    #[test]
    fn compose_geometric_series() {
        // 1/(1-z) after z/(1-z) is (1-z)/(1-2z) = 1 + z + 2z^2 + 4z^3 + 8z^4.
        // Truncating the outer series at z^4 changes nothing below degree 5.
        let outer = PowerSeries::from_real(&[1.0; 5]).unwrap();
        let inner = PowerSeries::from_real(&[0.0, 1.0, 1.0, 1.0, 1.0]).unwrap();
        let got = reals(&outer.compose(&inner).unwrap());
        // [z^n] sum_{k<=4} (z/(1-z))^k = sum_k C(n-1, k-1)
        let oracle: Vec<f64> = (0..=4)
            .map(|n: u32| {
                if n == 0 {
                    1.0
                } else {
                    (1..=n.min(4)).map(|k| binom(n - 1, k - 1)).sum()
                }
            })
            .collect();
        assert_eq!(got, oracle);
        assert_eq!(got, vec![1.0, 1.0, 2.0, 4.0, 8.0]);
    }

    fn binom(n: u32, k: u32) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let outer = PowerSeries::one(3);
        let inner = PowerSeries::one(3);
        assert!(matches!(
            outer.compose(&inner),
            Err(Error::CompositionDomain(_))
        ));
    }

    #[test]
    fn revert_identity() {
        let f = PowerSeries::identity(6);
        assert_eq!(f.revert().unwrap(), f);
    }

    #[test]
    fn revert_low_order_terms() {
        let (a2, a3) = (Complex64::new(0.4, -0.3), Complex64::new(-0.2, 0.9));
        let f = PowerSeries::normalized(&[a2, a3], 3).unwrap();
        let g = f.revert().unwrap();
        assert!((g.coeff(2) + a2).norm() < 1e-15);
        assert!((g.coeff(3) - (2.0 * a2 * a2 - a3)).norm() < 1e-15);
    }

    #[test]
    fn revert_rejects_unnormalized() {
        let f = PowerSeries::from_real(&[0.0, 2.0, 1.0]).unwrap();
        assert_eq!(f.revert(), Err(Error::NotNormalized));
        let f = PowerSeries::from_real(&[0.1, 1.0, 1.0]).unwrap();
        assert_eq!(f.revert(), Err(Error::NotNormalized));
    }

    #[test]
    fn recip_of_one_minus_z() {
        let s = PowerSeries::from_real(&[1.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(reals(&s.recip().unwrap()), vec![1.0, 1.0, 1.0, 1.0]);
        assert_eq!(PowerSeries::zero(3).recip(), Err(Error::NotInvertible));
    }

    #[test]
    fn derivative_keeps_order() {
        let s = PowerSeries::from_real(&[5.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(reals(&s.derivative()), vec![1.0, 4.0, 9.0, 0.0]);
        assert_eq!(s.derivative().order(), 3);
    }

    #[test]
    fn too_short_is_rejected() {
        assert!(PowerSeries::new(vec![c(1.0)]).is_err());
    }
}
