use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(p1, p2, q1, q2)` of the search space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub p1: Complex64,
    pub p2: Complex64,
    pub q1: Complex64,
    pub q2: Complex64,
}

impl Point {
    pub fn new(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> Self {
        Self { p1, p2, q1, q2 }
    }

    pub fn real(p1: f64, p2: f64, q1: f64, q2: f64) -> Self {
        let c = |x| Complex64::new(x, 0.0);
        Self::new(c(p1), c(p2), c(q1), c(q2))
    }

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.p1.re, self.p1.im, self.p2.re, self.p2.im, self.q1.re, self.q1.im, self.q2.re,
            self.q2.im,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Monomial {
    P2,
    Q2,
    P1Sq,
    Q1Sq,
    P1Q1,
    /// `(p1 - q1)^2`
    DiffSq,
}

impl Monomial {
    pub fn eval(&self, x: &Point) -> Complex64 {
        match self {
            Monomial::P2 => x.p2,
            Monomial::Q2 => x.q2,
            Monomial::P1Sq => x.p1 * x.p1,
            Monomial::Q1Sq => x.q1 * x.q1,
            Monomial::P1Q1 => x.p1 * x.q1,
            Monomial::DiffSq => (x.p1 - x.q1) * (x.p1 - x.q1),
        }
    }

    /// Largest modulus over `|p_i|, |q_i| <= 2`.
    pub fn box_max(&self) -> f64 {
        match self {
            Monomial::P2 | Monomial::Q2 => 2.0,
            Monomial::P1Sq | Monomial::Q1Sq | Monomial::P1Q1 => 4.0,
            Monomial::DiffSq => 16.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Term {
    pub coef: Complex64,
    pub mono: Monomial,
}

impl Term {
    fn new(coef: f64, mono: Monomial) -> Self {
        Self {
            coef: Complex64::new(coef, 0.0),
            mono,
        }
    }

    pub fn eval(&self, x: &Point) -> Complex64 {
        self.coef * self.mono.eval(x)
    }
}

/// `a p2 + b q2 + c11 p1^2 + c12 p1 q1 + c22 q1^2`
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct QuadForm {
    pub p2: Complex64,
    pub q2: Complex64,
    pub p1p1: Complex64,
    pub p1q1: Complex64,
    pub q1q1: Complex64,
}

impl QuadForm {
    pub fn from_terms(terms: &[Term]) -> Self {
        let mut f = QuadForm::default();
        for t in terms {
            match t.mono {
                Monomial::P2 => f.p2 += t.coef,
                Monomial::Q2 => f.q2 += t.coef,
                Monomial::P1Sq => f.p1p1 += t.coef,
                Monomial::Q1Sq => f.q1q1 += t.coef,
                Monomial::P1Q1 => f.p1q1 += t.coef,
                Monomial::DiffSq => {
                    f.p1p1 += t.coef;
                    f.p1q1 -= 2.0 * t.coef;
                    f.q1q1 += t.coef;
                }
            }
        }
        f
    }

    pub fn quadratic(&self, p1: Complex64, q1: Complex64) -> Complex64 {
        self.p1p1 * p1 * p1 + self.p1q1 * p1 * q1 + self.q1q1 * q1 * q1
    }

    pub fn eval(&self, x: &Point) -> Complex64 {
        self.p2 * x.p2 + self.q2 * x.q2 + self.quadratic(x.p1, x.q1)
    }

    pub fn depends_on_q(&self) -> bool {
        let z = Complex64::new(0.0, 0.0);
        self.q2 != z || self.p1q1 != z || self.q1q1 != z
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// The functional equals `a2^2`.
    A2Squared,
    A3,
    /// `p2 - v p1^2`
    KeoghMerkes,
}

impl Quantity {
    pub fn label(&self) -> &'static str {
        match self {
            Quantity::A2Squared => "a2^2",
            Quantity::A3 => "a3",
            Quantity::KeoghMerkes => "p2-v*p1^2",
        }
    }
}

/// Coefficient identities, each written as a combination of `p2, q2` and
/// quadratic monomials in `p1, q1`, normalized so the value is the named
/// quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum FunctionalId {
    /// `8(1+2l) a2^2 = 2(p2+q2)B1 + (B2-B1)(p1^2+q1^2)`
    RSigmaA2Sq,
    /// `8 a2^2 = 2B1(p2+q2) + (B2-B1)(p1^2+q1^2)`
    SstarA2SqSum,
    /// `16 a2^2 = 2B1^2 q1^2 + 2B1(p2+q2) + (B2-B1)(p1^2+q1^2)`
    SstarA2SqQ1,
    /// `4(B1^2 - B2 + B1) a2^2 = B1^3 (p2+q2)`
    SstarA2SqRatio,
    /// `16 a3 = 2B1^2 q1^2 + 4B2 p2 + (B1-B2)(p1^2+q1^2)`
    SstarA3Q1,
    /// `16 a3 = 2B1^2 q1^2 + 4B1 p2 + (B2-B1)(p1^2+q1^2)`, which is what
    /// `16 a3 = 16 a2^2 - 2B1(q2 - p2)` gives with `SstarA2SqQ1`.
    SstarA3Q1Expanded,
    /// `4 a3 = (B1/2)(3p2 + q2) + (B2-B1) p1^2`
    SstarA3Mixed,
    /// `48 a2^2 = 2B1^2 p1^2 + 2B1(p2+q2) + (B2-B1)(p1^2+q1^2)`
    KA2Sq,
    /// `-48 a3 = 2B1^2 p1^2 - 4B2 p2 + (B1-B2)(p1^2+q1^2)`
    KA3P1,
    /// `48 a3 = 2B1^2 p1^2 + 4B1 p2 + (B2-B1)(p1^2+q1^2)`, which is what
    /// `-12 a3 = -12 a2^2 + B1(q2 - p2)/2` gives with `KA2Sq`.
    KA3P1Expanded,
    /// `-12 a3 = B1(q2-p2)/2 - 3(p1-q1)^2 B1^2/16`
    KA3Diff,
    /// `32 a2^2 = 2(p2+2q2)B1 + (p1^2+2q1^2)(B2-B1)`
    KRA2Sq,
    /// `48 a3 = 2(3p2+2q2)B1 + (3p1^2+2q1^2)(B2-B1)`
    KRA3,
    /// `36 a2^2 = 2(3p2+2q2)B1 + (3p1^2+2q1^2)(B2-B1)`
    SstarRA2Sq,
    /// `36 a3 = 2(6p2+q2)B1 + (6p1^2+q1^2)(B2-B1)`
    SstarRA3,
    /// `24 a2^2 = 2(2p2+q2)B1 + (2p1^2+q1^2)(B2-B1)`
    SstarKA2Sq,
    /// `72 a3 = 2(8p2+q2)B1 + (8p1^2+q1^2)(B2-B1)`
    SstarKA3,
    /// `p2 - v p1^2`
    KeoghMerkes(Complex64),
}

impl FunctionalId {
    /// Every identity except the parametrized Keogh–Merkes functional.
    pub const ALL: [FunctionalId; 17] = [
        FunctionalId::RSigmaA2Sq,
        FunctionalId::SstarA2SqSum,
        FunctionalId::SstarA2SqQ1,
        FunctionalId::SstarA2SqRatio,
        FunctionalId::SstarA3Q1,
        FunctionalId::SstarA3Q1Expanded,
        FunctionalId::SstarA3Mixed,
        FunctionalId::KA2Sq,
        FunctionalId::KA3P1,
        FunctionalId::KA3P1Expanded,
        FunctionalId::KA3Diff,
        FunctionalId::KRA2Sq,
        FunctionalId::KRA3,
        FunctionalId::SstarRA2Sq,
        FunctionalId::SstarRA3,
        FunctionalId::SstarKA2Sq,
        FunctionalId::SstarKA3,
    ];

    /// Identities whose closed-form bound is exactly the term-by-term box
    /// estimate.
    pub const TRIANGLE: [FunctionalId; 11] = [
        FunctionalId::RSigmaA2Sq,
        FunctionalId::SstarA2SqSum,
        FunctionalId::SstarA2SqQ1,
        FunctionalId::KA2Sq,
        FunctionalId::KA3Diff,
        FunctionalId::KRA2Sq,
        FunctionalId::KRA3,
        FunctionalId::SstarRA2Sq,
        FunctionalId::SstarRA3,
        FunctionalId::SstarKA2Sq,
        FunctionalId::SstarKA3,
    ];

    pub fn name(&self) -> String {
        let s = match self {
            FunctionalId::RSigmaA2Sq => "r-sigma.a2sq",
            FunctionalId::SstarA2SqSum => "sstar.a2sq.sum",
            FunctionalId::SstarA2SqQ1 => "sstar.a2sq.q1",
            FunctionalId::SstarA2SqRatio => "sstar.a2sq.ratio",
            FunctionalId::SstarA3Q1 => "sstar.a3.q1",
            FunctionalId::SstarA3Q1Expanded => "sstar.a3.q1-expanded",
            FunctionalId::SstarA3Mixed => "sstar.a3.mixed",
            FunctionalId::KA2Sq => "k.a2sq",
            FunctionalId::KA3P1 => "k.a3.p1",
            FunctionalId::KA3P1Expanded => "k.a3.p1-expanded",
            FunctionalId::KA3Diff => "k.a3.diff",
            FunctionalId::KRA2Sq => "k-r.a2sq",
            FunctionalId::KRA3 => "k-r.a3",
            FunctionalId::SstarRA2Sq => "sstar-r.a2sq",
            FunctionalId::SstarRA3 => "sstar-r.a3",
            FunctionalId::SstarKA2Sq => "sstar-k.a2sq",
            FunctionalId::SstarKA3 => "sstar-k.a3",
            FunctionalId::KeoghMerkes(v) => return format!("keogh-merkes:{}", fmt_complex(*v)),
        };
        s.to_string()
    }

    pub fn quantity(&self) -> Quantity {
        use FunctionalId::*;
        match self {
            RSigmaA2Sq | SstarA2SqSum | SstarA2SqQ1 | SstarA2SqRatio | KA2Sq | KRA2Sq
            | SstarRA2Sq | SstarKA2Sq => Quantity::A2Squared,
            SstarA3Q1 | SstarA3Q1Expanded | SstarA3Mixed | KA3P1 | KA3P1Expanded | KA3Diff
            | KRA3 | SstarRA3 | SstarKA3 => Quantity::A3,
            KeoghMerkes(_) => Quantity::KeoghMerkes,
        }
    }

    /// The identity's terms, already divided by its normalizing factor.
    pub fn terms(&self, lambda: f64, b1: f64, b2: f64) -> Result<Vec<Term>> {
        use Monomial::*;
        if !(b1 > 0.0 && b1.is_finite()) {
            return Err(Error::Validation(format!("B1 must be positive, got {b1}")));
        }
        let d = b2 - b1;
        let t = Term::new;
        // `2 x B1 p2 + 2 y B1 q2 + (B2-B1)(x p1^2 + y q1^2)` over `n`
        let weighted = |x: f64, y: f64, n: f64| {
            vec![
                t(2.0 * x * b1 / n, P2),
                t(2.0 * y * b1 / n, Q2),
                t(x * d / n, P1Sq),
                t(y * d / n, Q1Sq),
            ]
        };
        let terms = match *self {
            FunctionalId::RSigmaA2Sq => {
                if lambda.is_nan() || lambda < 0.0 {
                    return Err(Error::Validation(format!(
                        "lambda must be >= 0, got {lambda}"
                    )));
                }
                weighted(1.0, 1.0, 8.0 * (1.0 + 2.0 * lambda))
            }
            FunctionalId::SstarA2SqSum => weighted(1.0, 1.0, 8.0),
            FunctionalId::SstarA2SqQ1 => {
                let mut v = vec![t(2.0 * b1 * b1 / 16.0, Q1Sq)];
                v.extend(weighted(1.0, 1.0, 16.0));
                v
            }
            FunctionalId::SstarA2SqRatio => {
                let den = 4.0 * (b1 * b1 - b2 + b1);
                if den.abs() <= f64::EPSILON * 4.0 * (b1 * b1 + b1 + b2.abs()) {
                    return Err(Error::Singular { b1, b2 });
                }
                let k = b1.powi(3) / den;
                vec![t(k, P2), t(k, Q2)]
            }
            FunctionalId::SstarA3Q1 => vec![
                t(2.0 * b1 * b1 / 16.0, Q1Sq),
                t(4.0 * b2 / 16.0, P2),
                t(-d / 16.0, P1Sq),
                t(-d / 16.0, Q1Sq),
            ],
            FunctionalId::SstarA3Q1Expanded => vec![
                t(2.0 * b1 * b1 / 16.0, Q1Sq),
                t(4.0 * b1 / 16.0, P2),
                t(d / 16.0, P1Sq),
                t(d / 16.0, Q1Sq),
            ],
            FunctionalId::SstarA3Mixed => {
                vec![t(3.0 * b1 / 8.0, P2), t(b1 / 8.0, Q2), t(d / 4.0, P1Sq)]
            }
            FunctionalId::KA2Sq => {
                let mut v = vec![t(2.0 * b1 * b1 / 48.0, P1Sq)];
                v.extend(weighted(1.0, 1.0, 48.0));
                v
            }
            FunctionalId::KA3P1 => vec![
                t(-2.0 * b1 * b1 / 48.0, P1Sq),
                t(4.0 * b2 / 48.0, P2),
                t(d / 48.0, P1Sq),
                t(d / 48.0, Q1Sq),
            ],
            FunctionalId::KA3P1Expanded => vec![
                t(2.0 * b1 * b1 / 48.0, P1Sq),
                t(4.0 * b1 / 48.0, P2),
                t(d / 48.0, P1Sq),
                t(d / 48.0, Q1Sq),
            ],
            FunctionalId::KA3Diff => vec![
                t(-b1 / 24.0, Q2),
                t(b1 / 24.0, P2),
                t(3.0 * b1 * b1 / (16.0 * 12.0), DiffSq),
            ],
            FunctionalId::KRA2Sq => weighted(1.0, 2.0, 32.0),
            FunctionalId::KRA3 => weighted(3.0, 2.0, 48.0),
            FunctionalId::SstarRA2Sq => weighted(3.0, 2.0, 36.0),
            FunctionalId::SstarRA3 => weighted(6.0, 1.0, 36.0),
            FunctionalId::SstarKA2Sq => weighted(2.0, 1.0, 24.0),
            FunctionalId::SstarKA3 => weighted(8.0, 1.0, 72.0),
            FunctionalId::KeoghMerkes(v) => vec![
                Term::new(1.0, P2),
                Term {
                    coef: -v,
                    mono: P1Sq,
                },
            ],
        };
        Ok(terms)
    }

    pub fn form(&self, lambda: f64, b1: f64, b2: f64) -> Result<QuadForm> {
        Ok(QuadForm::from_terms(&self.terms(lambda, b1, b2)?))
    }
}

fn fmt_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else {
        format!("{}{:+}i", v.re, v.im)
    }
}

impl fmt::Display for FunctionalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for FunctionalId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(v) = s.strip_prefix("keogh-merkes:") {
            let v: Complex64 = v
                .parse()
                .map_err(|_| Error::Parameter(format!("bad complex number `{v}`")))?;
            return Ok(FunctionalId::KeoghMerkes(v));
        }
        FunctionalId::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| Error::Parameter(format!("unknown functional `{s}`")))
    }
}
