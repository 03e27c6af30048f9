//! Text, CSV and JSON rendering. Machine formats carry 12 significant
//! digits, text carries 6.

use bicoeff_core::classbounds::presets::PresetRow;
use bicoeff_core::verify::{Status, VerifyReport};
use bicoeff_core::{BoundReport, Branch, Complex64, MaMindaPhi, PowerSeries};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const NOT_CLAIMED: &str = "not claimed in source";
const MACHINE_DIGITS: usize = 12;
const TEXT_DIGITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub struct Output {
    pub text: String,
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

pub fn fmt_num(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x, digits);
    if r == 0.0 {
        return "0".into();
    }
    if r.abs() < 1e-4 || r.abs() >= 1e15 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn fmt_complex(z: Complex64, digits: usize) -> String {
    if z.im == 0.0 {
        return fmt_num(z.re, digits);
    }
    let im = fmt_num(z.im.abs(), digits);
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{im}i", fmt_num(z.re, digits))
}

fn jnum(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x, MACHINE_DIGITS))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn jopt(x: Option<f64>) -> Value {
    x.map(jnum).unwrap_or(Value::Null)
}

fn json_doc(config: Value, rows: Vec<Value>, extra: Vec<(&str, Value)>) -> Output {
    let mut doc = Map::new();
    doc.insert("config".into(), config);
    doc.insert("rows".into(), Value::Array(rows));
    for (k, v) in extra {
        doc.insert(k.into(), v);
    }
    let mut text =
        serde_json::to_string_pretty(&Value::Object(doc)).expect("json values serialize");
    text.push('\n');
    Output { text }
}

fn csv_doc(header: &[&str], rows: Vec<Vec<String>>) -> Output {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory flush");
    Output {
        text: String::from_utf8(bytes).expect("utf-8 input"),
    }
}

/// Left-aligned columns separated by two spaces.
fn columns(rows: &[Vec<String>]) -> String {
    let n = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..n)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.get(j))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{c:<w$}", w = widths[j]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn lambda_of(report: &BoundReport) -> Option<f64> {
    match report.class {
        bicoeff_core::ClassSpec::RSigma { lambda } => Some(lambda),
        _ => None,
    }
}

fn target_config(
    command: &str,
    report: &BoundReport,
    phi: &MaMindaPhi,
    format: Format,
) -> Map<String, Value> {
    let mut c = Map::new();
    c.insert("command".into(), json!(command));
    c.insert("class".into(), json!(report.class.name()));
    c.insert("lambda".into(), jopt(lambda_of(report)));
    c.insert("phi".into(), json!(phi.to_string()));
    c.insert("b1".into(), jnum(phi.b1));
    c.insert("b2".into(), jnum(phi.b2));
    c.insert("format".into(), json!(format_name(format)));
    c
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn header_lines(report: &BoundReport, phi: &MaMindaPhi) -> String {
    let class = match lambda_of(report) {
        Some(l) => format!(
            "{} (lambda = {})",
            report.class.name(),
            fmt_num(l, TEXT_DIGITS)
        ),
        None => report.class.name().to_string(),
    };
    format!(
        "class  {class}\nphi    {phi} (B1 = {}, B2 = {})\n",
        fmt_num(phi.b1, TEXT_DIGITS),
        fmt_num(phi.b2, TEXT_DIGITS)
    )
}

struct BoundLine<'a> {
    quantity: &'static str,
    branch: Option<&'a Branch>,
    selected: bool,
}

fn bound_lines(report: &BoundReport) -> Vec<BoundLine<'_>> {
    let mut out = Vec::new();
    for (quantity, bound, branches) in [
        ("a2", report.a2_bound, &report.a2_branches),
        ("a3", report.a3_bound, &report.a3_branches),
    ] {
        if branches.is_empty() {
            out.push(BoundLine {
                quantity,
                branch: None,
                selected: false,
            });
        }
        // the first branch attaining the minimum is the selected one
        let sel = branches.iter().position(|b| Some(b.value) == bound);
        for (i, b) in branches.iter().enumerate() {
            out.push(BoundLine {
                quantity,
                branch: Some(b),
                selected: Some(i) == sel,
            });
        }
    }
    out
}

pub fn bounds(report: &BoundReport, phi: &MaMindaPhi, format: Format) -> Output {
    let lines = bound_lines(report);
    match format {
        Format::Text => {
            let mut text = header_lines(report, phi);
            for (quantity, bound) in [("a2", report.a2_bound), ("a3", report.a3_bound)] {
                match bound {
                    Some(v) => {
                        text.push_str(&format!("|{quantity}| <= {}\n", fmt_num(v, TEXT_DIGITS)))
                    }
                    None => text.push_str(&format!("|{quantity}|  {NOT_CLAIMED}\n")),
                }
                for l in lines.iter().filter(|l| l.quantity == quantity) {
                    if let Some(b) = l.branch {
                        let mark = if l.selected { "  (min)" } else { "" };
                        text.push_str(&format!(
                            "    {} = {}{mark}\n",
                            b.label,
                            fmt_num(b.value, TEXT_DIGITS)
                        ));
                    }
                }
            }
            Output { text }
        }
        Format::Csv => csv_doc(
            &["quantity", "branch", "value", "selected", "note"],
            lines
                .iter()
                .map(|l| match l.branch {
                    Some(b) => vec![
                        l.quantity.into(),
                        b.label.clone(),
                        fmt_num(b.value, MACHINE_DIGITS),
                        l.selected.to_string(),
                        String::new(),
                    ],
                    None => vec![
                        l.quantity.into(),
                        String::new(),
                        String::new(),
                        "false".into(),
                        NOT_CLAIMED.into(),
                    ],
                })
                .collect(),
        ),
        Format::Json => {
            let rows = lines
                .iter()
                .map(|l| {
                    json!({
                        "quantity": l.quantity,
                        "branch": l.branch.map(|b| b.label.clone()),
                        "value": jopt(l.branch.map(|b| b.value)),
                        "selected": l.selected,
                        "note": if l.branch.is_none() { Some(NOT_CLAIMED) } else { None },
                    })
                })
                .collect();
            let summary = json!({
                "a2": jopt(report.a2_bound),
                "a3": jopt(report.a3_bound),
            });
            json_doc(
                Value::Object(target_config("bounds", report, phi, format)),
                rows,
                vec![("bounds", summary)],
            )
        }
    }
}

pub fn verify(report: &VerifyReport, phi: &MaMindaPhi, format: Format) -> Output {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    match format {
        Format::Text => {
            let mut text = header_lines(&report.bounds, phi);
            text.push_str(&format!(
                "mode   {}, samples {}, seed {}\n\n",
                report.mode, report.samples, report.seed
            ));
            let mut grid = vec![[
                "functional",
                "quantity",
                "bound",
                "closed form",
                "box max",
                "tight max",
                "gap",
                "gate",
                "status",
            ]
            .map(String::from)
            .to_vec()];
            for r in &report.rows {
                grid.push(vec![
                    r.functional.clone(),
                    r.quantity.label().into(),
                    r.bound_label.clone(),
                    fmt_num(r.bound, TEXT_DIGITS),
                    fmt_num(r.box_max, TEXT_DIGITS),
                    fmt_num(r.tight_max, TEXT_DIGITS),
                    fmt_num(r.gap, TEXT_DIGITS),
                    r.gate.to_string(),
                    r.status.to_string(),
                ]);
            }
            text.push_str(&columns(&grid));
            if !report.discrepancies.is_empty() {
                text.push_str("\nstated vs derived branches\n");
                for d in &report.discrepancies {
                    text.push_str(&format!(
                        "  {}: stated {} = {}; derived {} = {}; searched {}\n",
                        d.label,
                        d.stated_formula,
                        fmt_num(d.stated, TEXT_DIGITS),
                        d.derived_formula,
                        fmt_num(d.derived, TEXT_DIGITS),
                        fmt_num(d.searched, TEXT_DIGITS),
                    ));
                }
            }
            text.push_str(&format!("\nresult {status}\n"));
            Output { text }
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        "check".into(),
                        r.functional.clone(),
                        r.quantity.label().into(),
                        r.bound_label.clone(),
                        fmt_num(r.bound, MACHINE_DIGITS),
                        fmt_num(r.box_max, MACHINE_DIGITS),
                        fmt_num(r.tight_max, MACHINE_DIGITS),
                        fmt_num(r.gap, MACHINE_DIGITS),
                        r.gate.to_string(),
                        r.status.to_string(),
                    ]
                })
                .collect();
            for d in &report.discrepancies {
                rows.push(vec![
                    "stated".into(),
                    d.label.clone(),
                    String::new(),
                    d.stated_formula.clone(),
                    fmt_num(d.stated, MACHINE_DIGITS),
                    fmt_num(d.searched, MACHINE_DIGITS),
                    String::new(),
                    String::new(),
                    String::new(),
                    Status::Report.to_string(),
                ]);
                rows.push(vec![
                    "derived".into(),
                    d.label.clone(),
                    String::new(),
                    d.derived_formula.clone(),
                    fmt_num(d.derived, MACHINE_DIGITS),
                    fmt_num(d.searched, MACHINE_DIGITS),
                    String::new(),
                    String::new(),
                    String::new(),
                    Status::Report.to_string(),
                ]);
            }
            csv_doc(
                &[
                    "kind",
                    "functional",
                    "quantity",
                    "bound_label",
                    "bound",
                    "box_max",
                    "tight_max",
                    "gap",
                    "gate",
                    "status",
                ],
                rows,
            )
        }
        Format::Json => {
            let mut config = target_config("verify", &report.bounds, phi, format);
            config.insert("mode".into(), json!(report.mode.to_string()));
            config.insert("samples".into(), json!(report.samples));
            config.insert("seed".into(), json!(report.seed));
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "functional": r.functional,
                        "quantity": r.quantity.label(),
                        "bound_label": r.bound_label,
                        "bound": jnum(r.bound),
                        "box_max": jnum(r.box_max),
                        "tight_max": jnum(r.tight_max),
                        "gap": jnum(r.gap),
                        "gate": r.gate.to_string(),
                        "status": r.status.to_string(),
                    })
                })
                .collect();
            let disc = report
                .discrepancies
                .iter()
                .map(|d| {
                    json!({
                        "label": d.label,
                        "stated_formula": d.stated_formula,
                        "stated": jnum(d.stated),
                        "derived_formula": d.derived_formula,
                        "derived": jnum(d.derived),
                        "searched": jnum(d.searched),
                    })
                })
                .collect();
            json_doc(
                Value::Object(config),
                rows,
                vec![
                    ("discrepancies", Value::Array(disc)),
                    ("status", json!(status)),
                ],
            )
        }
    }
}

pub fn table(rows: &[PresetRow], format: Format) -> Output {
    match format {
        Format::Text => {
            let mut grid = vec![["row", "generic", "closed form", "abs diff", "quoted"]
                .map(String::from)
                .to_vec()];
            for r in rows {
                grid.push(vec![
                    r.label.clone(),
                    fmt_num(r.generic, TEXT_DIGITS),
                    fmt_num(r.closed_form, TEXT_DIGITS),
                    fmt_num(r.abs_diff, 3),
                    r.quoted.map(|q| format!("~{q}")).unwrap_or_default(),
                ]);
            }
            Output {
                text: columns(&grid),
            }
        }
        Format::Csv => csv_doc(
            &["row", "generic", "closed_form", "abs_diff", "quoted"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.label.clone(),
                        fmt_num(r.generic, MACHINE_DIGITS),
                        fmt_num(r.closed_form, MACHINE_DIGITS),
                        fmt_num(r.abs_diff, MACHINE_DIGITS),
                        r.quoted.unwrap_or("").into(),
                    ]
                })
                .collect(),
        ),
        Format::Json => json_doc(
            json!({ "command": "table", "format": "json" }),
            rows.iter()
                .map(|r| {
                    json!({
                        "row": r.label,
                        "generic": jnum(r.generic),
                        "closed_form": jnum(r.closed_form),
                        "abs_diff": jnum(r.abs_diff),
                        "quoted": r.quoted,
                    })
                })
                .collect(),
            vec![],
        ),
    }
}

pub fn revert(tail: &[Complex64], inv: &PowerSeries, format: Format) -> Output {
    let ks = 1..=inv.order();
    match format {
        Format::Text => {
            let mut grid = vec![vec!["k".to_string(), "inverse coefficient".to_string()]];
            for k in ks {
                grid.push(vec![k.to_string(), fmt_complex(inv.coeff(k), TEXT_DIGITS)]);
            }
            Output {
                text: columns(&grid),
            }
        }
        Format::Csv => csv_doc(
            &["k", "re", "im"],
            ks.map(|k| {
                let c = inv.coeff(k);
                vec![
                    k.to_string(),
                    fmt_num(c.re, MACHINE_DIGITS),
                    fmt_num(c.im, MACHINE_DIGITS),
                ]
            })
            .collect(),
        ),
        Format::Json => {
            let input: Vec<Value> = tail
                .iter()
                .map(|z| json!({ "re": jnum(z.re), "im": jnum(z.im) }))
                .collect();
            json_doc(
                json!({ "command": "revert", "coeffs": input, "order": inv.order(), "format": "json" }),
                ks.map(|k| {
                    let c = inv.coeff(k);
                    json!({ "k": k, "re": jnum(c.re), "im": jnum(c.im) })
                })
                .collect(),
                vec![],
            )
        }
    }
}
