//! Fixed table of specializations for the catalogued φ families.
//!
//! Each row evaluates the generic bound through [`bound_for`] with a
//! catalogued φ, and independently evaluates the specialized closed form
//! in β or α. The two must agree to rounding.

use serde::Serialize;

use super::{bound_for, t_value, ClassSpec};
use crate::error::Result;
use crate::maminda::MaMindaPhi;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresetRow {
    pub label: String,
    /// Value from the generic `(B1, B2)` formula.
    pub generic: f64,
    /// Value from the specialized closed form.
    pub closed_form: f64,
    pub abs_diff: f64,
    /// Rounded value as usually quoted, where one exists.
    pub quoted: Option<&'static str>,
}

fn row(label: String, generic: f64, closed_form: f64, quoted: Option<&'static str>) -> PresetRow {
    PresetRow {
        label,
        generic,
        closed_form,
        abs_diff: (generic - closed_form).abs(),
        quoted,
    }
}

enum Coef {
    A2,
    A3,
}

fn generic(class: ClassSpec, phi: &MaMindaPhi, which: Coef) -> Result<f64> {
    let r = bound_for(class, phi.b1, phi.b2)?;
    let v = match which {
        Coef::A2 => r.a2_bound,
        Coef::A3 => r.a3_bound,
    };
    Ok(v.expect("preset rows only use claimed bounds"))
}

pub fn preset_table() -> Result<Vec<PresetRow>> {
    use Coef::*;
    let mut rows = Vec::new();

    // R_sigma(1, beta)
    for beta in [0.0, 0.25, 0.5] {
        let phi = MaMindaPhi::order_beta(beta)?;
        let class = ClassSpec::r_sigma(1.0)?;
        rows.push(row(
            format!("R_sigma(lambda=1) beta={beta} |a2|"),
            generic(class, &phi, A2)?,
            (2.0 * (1.0 - beta) / 3.0).sqrt(),
            (beta == 0.0).then_some("0.816"),
        ));
    }

    // S*_sigma(beta), piecewise in beta with the switch at 1/2
    for beta in [0.0, 0.25, 0.5, 0.75] {
        let phi = MaMindaPhi::order_beta(beta)?;
        let exact = if beta <= 0.5 {
            (2.0 * (1.0 - beta)).sqrt()
        } else {
            ((1.0 - beta) * (3.0 - 2.0 * beta)).sqrt()
        };
        rows.push(row(
            format!("S*_sigma(beta) beta={beta} |a2|"),
            generic(ClassSpec::SstarSigma, &phi, A2)?,
            exact,
            None,
        ));
    }
    {
        let phi = MaMindaPhi::order_beta(0.5)?;
        let r = bound_for(ClassSpec::SstarSigma, phi.b1, phi.b2)?;
        rows.push(row(
            "S*_sigma(beta) branch gap at beta=0.5".into(),
            r.a2_branch(0) - r.a2_branch(1),
            0.0,
            None,
        ));
    }

    // strongly starlike of order alpha
    for alpha in [0.25, 0.5, 1.0] {
        let phi = MaMindaPhi::strongly_starlike(alpha)?;
        rows.push(row(
            format!("S*_sigma,alpha alpha={alpha} |a2|"),
            generic(ClassSpec::SstarSigma, &phi, A2)?,
            2.0 * alpha / (1.0 + alpha).sqrt(),
            None,
        ));
    }

    // K_sigma(beta)
    for beta in [0.0, 0.25, 0.5] {
        let phi = MaMindaPhi::order_beta(beta)?;
        rows.push(row(
            format!("K_sigma(beta) beta={beta} |a2|"),
            generic(ClassSpec::KSigma, &phi, A2)?,
            1.0 - beta,
            None,
        ));
        rows.push(row(
            format!("K_sigma(beta) beta={beta} |a3|"),
            generic(ClassSpec::KSigma, &phi, A3)?,
            (1.0 - beta) * (3.0 - 2.0 * beta) / 3.0,
            None,
        ));
    }

    // f in K(beta), F in R(beta)
    for beta in [0.0, 0.5] {
        let phi = MaMindaPhi::order_beta(beta)?;
        let zero = beta == 0.0;
        rows.push(row(
            format!("K(beta)/R(beta) beta={beta} |a2|"),
            generic(ClassSpec::MixedKR, &phi, A2)?,
            (3.0 * (1.0 - beta)).sqrt() / 2.0,
            zero.then_some("0.867"),
        ));
        rows.push(row(
            format!("K(beta)/R(beta) beta={beta} |a3|"),
            generic(ClassSpec::MixedKR, &phi, A3)?,
            5.0 * (1.0 - beta) / 6.0,
            zero.then_some("0.833"),
        ));
    }

    // f in S*(beta), F in R(beta)
    for beta in [0.0, 0.5] {
        let phi = MaMindaPhi::order_beta(beta)?;
        let zero = beta == 0.0;
        rows.push(row(
            format!("S*(beta)/R(beta) beta={beta} |a2|"),
            generic(ClassSpec::MixedSstarR, &phi, A2)?,
            (10.0 * (1.0 - beta)).sqrt() / 3.0,
            zero.then_some("1.054"),
        ));
        rows.push(row(
            format!("S*(beta)/R(beta) beta={beta} |a3|"),
            generic(ClassSpec::MixedSstarR, &phi, A3)?,
            14.0 * (1.0 - beta) / 9.0,
            zero.then_some("1.56"),
        ));
    }

    // f in S*(beta), F in K(beta)
    for beta in [0.0, 0.5] {
        let phi = MaMindaPhi::order_beta(beta)?;
        let zero = beta == 0.0;
        rows.push(row(
            format!("S*(beta)/K(beta) beta={beta} |a2|"),
            generic(ClassSpec::MixedSstarK, &phi, A2)?,
            (1.0 - beta).sqrt(),
            zero.then_some("1"),
        ));
        rows.push(row(
            format!("S*(beta)/K(beta) beta={beta} |a3|"),
            generic(ClassSpec::MixedSstarK, &phi, A3)?,
            1.0 - beta,
            zero.then_some("1"),
        ));
    }

    // S*(phi)/K(phi) for a phi with B2 != B1
    for spec in ["alpha:0.5", "janowski:0.5,-0.5"] {
        let phi: MaMindaPhi = spec.parse()?;
        let t = t_value(phi.b1, phi.b2);
        rows.push(row(
            format!("S*(phi)/K(phi) {spec} |a2|"),
            generic(ClassSpec::MixedSstarK, &phi, A2)?,
            (t / 2.0).sqrt(),
            None,
        ));
        rows.push(row(
            format!("S*(phi)/K(phi) {spec} |a3|"),
            generic(ClassSpec::MixedSstarK, &phi, A3)?,
            t / 2.0,
            None,
        ));
    }

    Ok(rows)
}
