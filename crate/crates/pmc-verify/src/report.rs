//! Deterministic report emission.
//!
//! Reports are machine-readable CI artifacts, so their bytes must not depend
//! on anything but the run configuration: object keys keep insertion order,
//! floats are printed with a fixed 17-significant-digit scientific format,
//! and every collection is emitted in the deterministic order produced by
//! the suite and gate runners. Two runs of the same configuration produce
//! byte-identical output.

use crate::gates::{GateReport, GateStatus};
use crate::identities::{SuiteEntry, SuiteResult};

/// Minimal JSON document model with insertion-ordered objects.
#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

/// Fixed float formatting: 17 significant digits, scientific notation.
/// Non-finite values have no JSON representation and map to null.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else {
        "null".to_string()
    }
}

fn escape(s: &str, out: &mut String) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

impl Json {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Float(x) => out.push_str(&fmt_float(*x)),
            Json::Str(s) => escape(s, out),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Json::Obj(entries) => {
                if entries.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (key, value)) in entries.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    escape(key, out);
                    out.push_str(": ");
                    value.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }
}

/// FNV-1a 64-bit hash, used as the configuration fingerprint.
pub fn fingerprint(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pairs_obj(pairs: &[(String, f64)]) -> Json {
    Json::Obj(
        pairs
            .iter()
            .map(|(k, v)| (k.clone(), Json::Float(*v)))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// identity suite
// ---------------------------------------------------------------------------

pub fn suite_summary_json(result: &SuiteResult) -> Json {
    let per_kind = result
        .summary
        .per_kind
        .iter()
        .map(|s| {
            Json::Obj(vec![
                ("kind".into(), Json::Str(s.kind.name().into())),
                (
                    "aux".into(),
                    s.aux.map_or(Json::Null, |a| Json::Str(a.name().into())),
                ),
                ("evaluated".into(), Json::Int(s.evaluated as i64)),
                ("not_applicable".into(), Json::Int(s.not_applicable as i64)),
                ("failed".into(), Json::Int(s.failed as i64)),
                ("max_residual".into(), Json::Float(s.max_residual)),
                ("max_crosscheck".into(), Json::Float(s.max_crosscheck)),
                ("pass".into(), Json::Bool(s.pass)),
            ])
        })
        .collect();
    Json::Obj(vec![
        ("surface".into(), Json::Str(result.surface.clone())),
        ("pass".into(), Json::Bool(result.summary.pass)),
        (
            "max_residual".into(),
            Json::Float(result.summary.max_residual),
        ),
        ("per_kind".into(), Json::Arr(per_kind)),
    ])
}

pub fn suite_reports_json(result: &SuiteResult) -> Json {
    let entries = result
        .entries
        .iter()
        .map(|entry| match entry {
            SuiteEntry::Report(r) => Json::Obj(vec![
                ("kind".into(), Json::Str(r.kind.name().into())),
                (
                    "aux".into(),
                    r.aux.map_or(Json::Null, |a| Json::Str(a.name().into())),
                ),
                (
                    "point".into(),
                    Json::Arr(vec![Json::Float(r.point[0]), Json::Float(r.point[1])]),
                ),
                (
                    "status".into(),
                    Json::Str(if r.applicable {
                        "evaluated".into()
                    } else {
                        "not_applicable".into()
                    }),
                ),
                (
                    "reason".into(),
                    r.reason
                        .as_ref()
                        .map_or(Json::Null, |s| Json::Str(s.clone())),
                ),
                ("lhs".into(), Json::Float(r.lhs)),
                ("rhs".into(), Json::Float(r.rhs)),
                ("residual".into(), Json::Float(r.residual)),
                ("terms".into(), pairs_obj(&r.terms)),
                ("crosschecks".into(), pairs_obj(&r.crosschecks)),
            ]),
            SuiteEntry::Error {
                kind,
                aux,
                point,
                message,
            } => Json::Obj(vec![
                ("kind".into(), Json::Str(kind.name().into())),
                (
                    "aux".into(),
                    aux.map_or(Json::Null, |a| Json::Str(a.name().into())),
                ),
                (
                    "point".into(),
                    Json::Arr(vec![Json::Float(point[0]), Json::Float(point[1])]),
                ),
                ("status".into(), Json::Str("error".into())),
                ("reason".into(), Json::Str(message.clone())),
            ]),
        })
        .collect();
    Json::Arr(entries)
}

/// One row per (kind, point) with flattened term columns.
pub fn suite_csv(result: &SuiteResult) -> String {
    let mut term_names: Vec<String> = Vec::new();
    for entry in &result.entries {
        if let SuiteEntry::Report(r) = entry {
            for (name, _) in r.terms.iter().chain(r.crosschecks.iter()) {
                if !term_names.iter().any(|n| n == name) {
                    term_names.push(name.clone());
                }
            }
        }
    }
    term_names.sort();
    let mut out = String::from("u,v,kind,aux,status,reason,lhs,rhs,residual");
    for name in &term_names {
        out.push(',');
        out.push_str(&csv_field(&format!("term:{name}")));
    }
    out.push('\n');
    for entry in &result.entries {
        match entry {
            SuiteEntry::Report(r) => {
                let status = if r.applicable {
                    "evaluated"
                } else {
                    "not_applicable"
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}",
                    fmt_float(r.point[0]),
                    fmt_float(r.point[1]),
                    r.kind.name(),
                    r.aux.map_or("", |a| a.name()),
                    status,
                    csv_field(r.reason.as_deref().unwrap_or("")),
                    fmt_float(r.lhs),
                    fmt_float(r.rhs),
                    fmt_float(r.residual),
                ));
                for name in &term_names {
                    out.push(',');
                    let found = r
                        .terms
                        .iter()
                        .chain(r.crosschecks.iter())
                        .find(|(n, _)| n == name);
                    if let Some((_, v)) = found {
                        out.push_str(&fmt_float(*v));
                    }
                }
                out.push('\n');
            }
            SuiteEntry::Error {
                kind,
                aux,
                point,
                message,
            } => {
                out.push_str(&format!(
                    "{},{},{},{},error,{},,,",
                    fmt_float(point[0]),
                    fmt_float(point[1]),
                    kind.name(),
                    aux.map_or("", |a| a.name()),
                    csv_field(message),
                ));
                for _ in &term_names {
                    out.push(',');
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn suite_text(result: &SuiteResult) -> String {
    let mut out = format!("identity suite on {}\n", result.surface);
    for s in &result.summary.per_kind {
        let verdict = if s.pass { "PASS" } else { "FAIL" };
        let aux = s.aux.map_or(String::new(), |a| format!(" (V = {})", a.name()));
        out.push_str(&format!(
            "[{verdict}] {}{aux}: max residual {:.3e}, {} evaluated, {} not applicable, {} failed\n",
            s.kind.name(),
            s.max_residual,
            s.evaluated,
            s.not_applicable,
            s.failed
        ));
    }
    out.push_str(&format!(
        "suite: {} (max residual {:.3e})\n",
        if result.summary.pass { "PASS" } else { "FAIL" },
        result.summary.max_residual
    ));
    out
}

// ---------------------------------------------------------------------------
// theorem gates
// ---------------------------------------------------------------------------

pub fn gate_json(report: &GateReport) -> Json {
    let mut fields = vec![
        ("theorem".into(), Json::Str(report.theorem.name().into())),
        ("surface".into(), Json::Str(report.surface.clone())),
    ];
    match &report.status {
        GateStatus::NotApplicable { reason } => {
            fields.push(("status".into(), Json::Str("not_applicable".into())));
            fields.push(("reason".into(), Json::Str(reason.clone())));
        }
        GateStatus::PmcViolated { max_residual } => {
            fields.push(("status".into(), Json::Str("pmc_violated".into())));
            fields.push((
                "reason".into(),
                Json::Str("pmc residual exceeded".into()),
            ));
            fields.push(("max_pmc_residual".into(), Json::Float(*max_residual)));
        }
        GateStatus::Evaluated {
            margins,
            hypothesis_satisfied,
            readings,
            predicted_case,
            conclusion_consistent,
            observed,
            assumed,
        } => {
            fields.push(("status".into(), Json::Str("evaluated".into())));
            fields.push(("margins".into(), pairs_obj(margins)));
            fields.push((
                "hypothesis_satisfied".into(),
                Json::Bool(*hypothesis_satisfied),
            ));
            if !readings.is_empty() {
                fields.push((
                    "readings".into(),
                    Json::Obj(
                        readings
                            .iter()
                            .map(|(k, v)| (k.clone(), Json::Bool(*v)))
                            .collect(),
                    ),
                ));
            }
            fields.push(("predicted_case".into(), Json::Str(predicted_case.clone())));
            fields.push((
                "conclusion_consistent".into(),
                Json::Bool(*conclusion_consistent),
            ));
            let range = |m: &crate::gates::MinMax| {
                Json::Arr(vec![Json::Float(m.min), Json::Float(m.max)])
            };
            fields.push((
                "observed".into(),
                Json::Obj(vec![
                    ("phi2".into(), range(&observed.phi2)),
                    ("t2".into(), range(&observed.t2)),
                    ("h_norm".into(), range(&observed.h_norm)),
                    ("sigma2".into(), range(&observed.sigma2)),
                    (
                        "pmc_residual_max".into(),
                        Json::Float(observed.pmc_residual_max),
                    ),
                    ("umbilical".into(), Json::Bool(observed.umbilical)),
                    ("gap_equality".into(), Json::Bool(observed.gap_equality)),
                    ("xi_normal".into(), Json::Bool(observed.xi_normal)),
                ]),
            ));
            fields.push((
                "assumed".into(),
                Json::Obj(vec![
                    ("complete".into(), Json::Bool(assumed.complete)),
                    ("topology".into(), Json::Str(assumed.topology.into())),
                ]),
            ));
        }
    }
    Json::Obj(fields)
}

pub fn gates_csv(reports: &[GateReport]) -> String {
    let mut margin_names: Vec<String> = Vec::new();
    for report in reports {
        if let GateStatus::Evaluated { margins, .. } = &report.status {
            for (name, _) in margins {
                if !margin_names.iter().any(|n| n == name) {
                    margin_names.push(name.clone());
                }
            }
        }
    }
    margin_names.sort();
    let mut out =
        String::from("theorem,surface,status,reason,hypothesis_satisfied,predicted_case");
    for name in &margin_names {
        out.push(',');
        out.push_str(&csv_field(&format!("margin:{name}")));
    }
    out.push('\n');
    for report in reports {
        match &report.status {
            GateStatus::NotApplicable { reason } => {
                out.push_str(&format!(
                    "{},{},not_applicable,{},,",
                    report.theorem.name(),
                    csv_field(&report.surface),
                    csv_field(reason)
                ));
                for _ in &margin_names {
                    out.push(',');
                }
                out.push('\n');
            }
            GateStatus::PmcViolated { max_residual } => {
                out.push_str(&format!(
                    "{},{},pmc_violated,{},,",
                    report.theorem.name(),
                    csv_field(&report.surface),
                    csv_field(&format!("pmc residual {}", fmt_float(*max_residual)))
                ));
                for _ in &margin_names {
                    out.push(',');
                }
                out.push('\n');
            }
            GateStatus::Evaluated {
                margins,
                hypothesis_satisfied,
                predicted_case,
                ..
            } => {
                out.push_str(&format!(
                    "{},{},evaluated,,{},{}",
                    report.theorem.name(),
                    csv_field(&report.surface),
                    hypothesis_satisfied,
                    csv_field(predicted_case)
                ));
                for name in &margin_names {
                    out.push(',');
                    if let Some((_, v)) = margins.iter().find(|(n, _)| n == name) {
                        out.push_str(&fmt_float(*v));
                    }
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn gates_text(reports: &[GateReport]) -> String {
    let mut out = String::new();
    for report in reports {
        match &report.status {
            GateStatus::NotApplicable { reason } => {
                out.push_str(&format!(
                    "[N/A ] {} on {}: {}\n",
                    report.theorem.name(),
                    report.surface,
                    reason
                ));
            }
            GateStatus::PmcViolated { max_residual } => {
                out.push_str(&format!(
                    "[FAIL] {} on {}: pmc residual exceeded ({max_residual:.3e})\n",
                    report.theorem.name(),
                    report.surface
                ));
            }
            GateStatus::Evaluated {
                margins,
                hypothesis_satisfied,
                predicted_case,
                conclusion_consistent,
                ..
            } => {
                let verdict = if *conclusion_consistent { "PASS" } else { "FAIL" };
                let outcome = if *hypothesis_satisfied {
                    format!("hypothesis satisfied; {predicted_case}")
                } else {
                    predicted_case.clone()
                };
                out.push_str(&format!(
                    "[{verdict}] {} on {}: {outcome}\n",
                    report.theorem.name(),
                    report.surface,
                ));
                for (name, value) in margins {
                    out.push_str(&format!("        margin {name} = {value:.6e}\n"));
                }
            }
        }
    }
    out
}
