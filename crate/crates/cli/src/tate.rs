use std::path::Path;

use serde_json::{json, Value};
use tatelab::tate::default_n_report;
use tatelab::weil::WeilPoly;
use tatelab::{base_change, h_charpoly, tate_profile, validate_weil, IntPoly};

use crate::report::{to_value, Failure, Report, EXIT_MISMATCH};

pub fn parse_weil(poly: &str, q: u64) -> Result<WeilPoly, Failure> {
    let f: IntPoly = poly.parse()?;
    Ok(validate_weil(&f, q)?)
}

pub fn tate_report(
    poly: &str,
    q: u64,
    n_max: Option<u64>,
    reciprocal: bool,
) -> Result<Report, Failure> {
    let w = parse_weil(poly, q)?;
    let n_report = n_max.unwrap_or_else(|| default_n_report(w.dimension()));
    let profile = tate_profile(&w, n_report)?;
    let mut r = Report::new("tate", "exact");
    r.input("poly", w.poly().to_string())
        .input("q", q)
        .input("n_max", n_report)
        .input("reciprocal", reciprocal);
    for row in &profile.rows {
        r.row(row)?;
    }
    let mut summary = json!({
        "q": profile.q.to_string(),
        "d": profile.d,
        "polynomial": w.poly().pretty(),
    });
    if reciprocal {
        summary["reciprocal_form"] = Value::from(w.reciprocal_form().pretty());
    }
    r.summary = Some(summary);
    Ok(r)
}

pub fn print_tate(r: &Report) {
    let s = r.summary.as_ref().expect("tate reports carry a summary");
    println!(
        "Weil polynomial {} over F_{} (d = {})",
        s["polynomial"].as_str().unwrap_or_default(),
        s["q"].as_str().unwrap_or_default(),
        s["d"]
    );
    if let Some(rf) = s.get("reciprocal_form").and_then(Value::as_str) {
        println!("reciprocal form det(1 - Frob T) = {rf}");
    }
    for row in &r.rows {
        println!(
            "k = {}: stable dim {} from n = {}, defined over n = {} at the latest",
            row["k"],
            row["stable_dim"],
            row["min_stable_degree"],
            row["degree_bound"].as_str().unwrap_or_default()
        );
        let dims: Vec<String> = row["dims"]
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|e| format!("{}:{}", e["n"], e["dim"]))
                    .collect()
            })
            .unwrap_or_default();
        for chunk in dims.chunks(12) {
            println!("    {}", chunk.join("  "));
        }
    }
}

/// Recomputes a saved `tate` report and compares it field by field.
pub fn verify(path: &Path) -> Result<Report, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::input(
            "Io",
            format!("cannot read {}: {e}", path.display()),
            "pass a report written by `tatelab tate --json`",
        )
    })?;
    let saved: Report = serde_json::from_str(&text).map_err(|e| {
        Failure::input(
            "ReportFormat",
            format!("not a report: {e}"),
            "pass a report written by `tatelab tate --json`",
        )
    })?;
    let bad = |what: &str| {
        Failure::input(
            "ReportFormat",
            format!("report lacks a valid {what}"),
            "pass a report written by `tatelab tate --json`",
        )
    };
    if saved.command != "tate" {
        return Err(bad("command \"tate\""));
    }
    let poly = saved
        .inputs
        .get("poly")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("poly"))?;
    let q = saved
        .inputs
        .get("q")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("q"))?;
    let n_max = saved
        .inputs
        .get("n_max")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("n_max"))?;
    let reciprocal = saved
        .inputs
        .get("reciprocal")
        .and_then(Value::as_bool)
        .unwrap_or(false);
    let fresh = tate_report(poly, q, Some(n_max), reciprocal)?;
    let mut mismatches = Vec::new();
    if fresh.inputs != saved.inputs {
        mismatches.push("inputs");
    }
    if fresh.rows != saved.rows {
        mismatches.push("rows");
    }
    if fresh.summary != saved.summary {
        mismatches.push("summary");
    }
    if !mismatches.is_empty() {
        return Err(Failure {
            code: EXIT_MISMATCH,
            kind: "VerifyMismatch".to_string(),
            message: format!(
                "recomputed {} differ from {}",
                mismatches.join(", "),
                path.display()
            ),
            hint: "the report was edited or written by a different version".to_string(),
        });
    }
    let mut r = Report::new("tate-verify", "exact");
    r.input("file", path.display().to_string());
    r.summary = Some(json!({ "verified": true, "rows": fresh.rows.len() }));
    Ok(r)
}

pub fn weil_report(
    poly: &str,
    q: u64,
    r: Option<usize>,
    n: Option<u32>,
) -> Result<Report, Failure> {
    let w = parse_weil(poly, q)?;
    let mut rep = Report::new("weil", "128-bit root check");
    rep.input("poly", w.poly().to_string()).input("q", q);
    let mut first = to_value(&w)?;
    first["kind"] = Value::from("weil");
    first["pretty"] = Value::from(w.poly().pretty());
    rep.rows.push(first);
    if let Some(r) = r {
        rep.input("r", r);
        let h = h_charpoly(&w, r)?;
        let mut row = to_value(&h)?;
        row["kind"] = Value::from("cohomology");
        row["pretty"] = Value::from(h.poly().pretty());
        rep.rows.push(row);
    }
    if let Some(n) = n {
        rep.input("base_change", n);
        let b = base_change(&w, n)?;
        let mut row = to_value(&b)?;
        row["kind"] = Value::from("base_change");
        row["n"] = Value::from(n);
        row["pretty"] = Value::from(b.poly().pretty());
        rep.rows.push(row);
    }
    Ok(rep)
}

pub fn print_weil(r: &Report) {
    for row in &r.rows {
        let pretty = row["pretty"].as_str().unwrap_or_default();
        match row["kind"].as_str() {
            Some("weil") => println!(
                "valid Weil polynomial over F_{}: {} (d = {}, p = {}, e = {})",
                row["q"].as_str().unwrap_or_default(),
                pretty,
                row["d"],
                row["p"],
                row["e"]
            ),
            Some("cohomology") => println!("H^{}: {}", row["r"], pretty),
            Some("base_change") => println!(
                "over F_{} (n = {}): {}",
                row["q"].as_str().unwrap_or_default(),
                row["n"],
                pretty
            ),
            _ => {}
        }
    }
}
