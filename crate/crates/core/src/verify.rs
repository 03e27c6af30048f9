//! Verification campaigns: every closed-form branch of a class is checked
//! against the searched maximum of the identity it is derived from.

use std::fmt;

use serde::Serialize;

use crate::classbounds::{alternatives, bound_for, BoundReport, ClassSpec};
use crate::coeffsystem::{maximize_with, FunctionalId, Quantity, SearchConfig};
use crate::error::{Error, Result};
use crate::schwarz::Feasibility;

/// Relative tolerance for a found maximum exceeding its bound.
pub const VERIFY_TOL: f64 = 1e-6;

/// Which searched maximum decides a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    Box,
    Tight,
    /// Informational; the identity is reported but not gated.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "REPORT")]
    Report,
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::Box => "box",
            Gate::Tight => "tight",
            Gate::Report => "report",
        })
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Report => "REPORT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub functional: String,
    pub quantity: Quantity,
    pub bound_label: String,
    /// In the units of `quantity`, so squared for `a2`.
    pub bound: f64,
    pub box_max: f64,
    pub tight_max: f64,
    /// Gated maximum minus bound.
    pub gap: f64,
    pub gate: Gate,
    pub status: Status,
}

/// A stated branch next to the value its own derivation produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub label: String,
    pub stated_formula: String,
    pub stated: f64,
    pub derived_formula: String,
    pub derived: f64,
    /// Box maximum of the underlying identity, in the units of the bound.
    pub searched: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub bounds: BoundReport,
    pub mode: Feasibility,
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<VerifyRow>,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }
}

struct Check {
    id: FunctionalId,
    branch: Branch,
    gate: Gate,
}

#[derive(Clone, Copy)]
enum Branch {
    A2(usize),
    A3(usize),
}

fn checks(class: ClassSpec) -> Vec<Check> {
    use FunctionalId::*;
    let c = |id, branch, gate| Check { id, branch, gate };
    match class {
        ClassSpec::RSigma { .. } => vec![c(RSigmaA2Sq, Branch::A2(0), Gate::Box)],
        ClassSpec::SstarSigma => vec![
            c(SstarA2SqSum, Branch::A2(0), Gate::Box),
            c(SstarA2SqQ1, Branch::A2(1), Gate::Box),
            c(SstarA2SqRatio, Branch::A2(2), Gate::Report),
            c(SstarA3Mixed, Branch::A3(0), Gate::Box),
            c(SstarA3Q1, Branch::A3(1), Gate::Report),
            c(SstarA3Q1Expanded, Branch::A3(1), Gate::Box),
            c(SstarA3Mixed, Branch::A3(2), Gate::Tight),
        ],
        ClassSpec::KSigma => vec![
            c(KA2Sq, Branch::A2(0), Gate::Box),
            c(KA3P1, Branch::A3(0), Gate::Report),
            c(KA3P1Expanded, Branch::A3(0), Gate::Box),
            c(KA3Diff, Branch::A3(1), Gate::Box),
        ],
        ClassSpec::MixedKR => vec![
            c(KRA2Sq, Branch::A2(0), Gate::Box),
            c(KRA3, Branch::A3(0), Gate::Box),
        ],
        ClassSpec::MixedSstarR => vec![
            c(SstarRA2Sq, Branch::A2(0), Gate::Box),
            c(SstarRA3, Branch::A3(0), Gate::Box),
        ],
        ClassSpec::MixedSstarK => vec![
            c(SstarKA2Sq, Branch::A2(0), Gate::Box),
            c(SstarKA3, Branch::A3(0), Gate::Box),
        ],
    }
}

/// Runs every check for `class`. In tight `mode` all gated rows are decided
/// by the tight maximum.
pub fn verify_class(
    class: ClassSpec,
    b1: f64,
    b2: f64,
    mode: Feasibility,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if samples < 1 {
        return Err(Error::Parameter("samples must be at least 1".into()));
    }
    class.validate()?;
    let bounds = bound_for(class, b1, b2)?;
    let lambda = class.lambda();
    let mut rows = Vec::new();
    for check in checks(class) {
        let (label, bound) = match check.branch {
            Branch::A2(i) => {
                let b = &bounds.a2_branches[i];
                (format!("({})^2", b.label), b.value * b.value)
            }
            Branch::A3(i) => {
                let b = &bounds.a3_branches[i];
                (b.label.clone(), b.value)
            }
        };
        let search = |m| {
            maximize_with(
                check.id,
                lambda,
                b1,
                b2,
                &SearchConfig::new(m, samples, seed),
            )
        };
        let (box_max, tight_max) = match (search(Feasibility::Box), search(Feasibility::Tight)) {
            (Ok(a), Ok(b)) => (a.max_modulus, b.max_modulus),
            // the ratio identity has no finite maximum on its singular set
            (Err(Error::Singular { .. }), _) => (f64::INFINITY, f64::INFINITY),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let gate = match (check.gate, mode) {
            (Gate::Report, _) => Gate::Report,
            (_, Feasibility::Tight) => Gate::Tight,
            (g, Feasibility::Box) => g,
        };
        let found = if gate == Gate::Tight {
            tight_max
        } else {
            box_max
        };
        let status = match gate {
            Gate::Report => Status::Report,
            _ if found > bound + VERIFY_TOL * bound.max(1.0) => Status::Fail,
            _ => Status::Pass,
        };
        rows.push(VerifyRow {
            functional: check.id.name(),
            quantity: check.id.quantity(),
            bound_label: label,
            bound,
            box_max,
            tight_max,
            gap: found - bound,
            gate,
            status,
        });
    }
    let discrepancies = discrepancies(class, &bounds, &rows);
    Ok(VerifyReport {
        bounds,
        mode,
        samples,
        seed,
        rows,
        discrepancies,
    })
}

fn row_box_max(rows: &[VerifyRow], id: FunctionalId) -> f64 {
    let name = id.name();
    rows.iter()
        .find(|r| r.functional == name)
        .map(|r| r.box_max)
        .unwrap_or(f64::NAN)
}

/// Stated branches whose term-by-term derivation gives a different value.
pub fn discrepancies(
    class: ClassSpec,
    bounds: &BoundReport,
    rows: &[VerifyRow],
) -> Vec<Discrepancy> {
    let (b1, b2) = (bounds.b1, bounds.b2);
    match class {
        ClassSpec::SstarSigma => vec![
            Discrepancy {
                label: "a2 third branch".into(),
                stated_formula: bounds.a2_branches[2].label.clone(),
                stated: bounds.a2_branch(2),
                derived_formula: "B1*sqrt(B1)/sqrt(|B1^2+B1-B2|)".into(),
                derived: alternatives::sstar_a2_ratio_branch(b1, b2),
                searched: row_box_max(rows, FunctionalId::SstarA2SqRatio).sqrt(),
            },
            Discrepancy {
                label: "a3 second branch".into(),
                stated_formula: bounds.a3_branches[1].label.clone(),
                stated: bounds.a3_branch(1),
                derived_formula: "(B1^2+|B2|+|B1-B2|)/2".into(),
                derived: alternatives::sstar_a3_q1_branch(b1, b2),
                searched: row_box_max(rows, FunctionalId::SstarA3Q1),
            },
        ],
        ClassSpec::KSigma => vec![Discrepancy {
            label: "a3 first branch".into(),
            stated_formula: bounds.a3_branches[0].label.clone(),
            stated: bounds.a3_branch(0),
            derived_formula: "(B1^2+|B2|+|B1-B2|)/6".into(),
            derived: alternatives::k_a3_p1_branch(b1, b2),
            searched: row_box_max(rows, FunctionalId::KA3P1),
        }],
        _ => Vec::new(),
    }
}
