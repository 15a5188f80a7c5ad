//! Text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use clifford_lab_core::clifford::Multivector;
use clifford_lab_core::harmonics::{Family, Grading};
use clifford_lab_core::report::Report;
use clifford_lab_core::scalar::Scalar;
use serde::Serialize;

#[derive(Serialize)]
struct CheckJson<'a> {
    id: &'a str,
    anchor: &'a str,
    passed: bool,
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'a str,
    model: &'a str,
    mode: &'a str,
    passed: bool,
    total: usize,
    failed: usize,
    checks: Vec<CheckJson<'a>>,
}

pub fn report_json(r: &Report) -> String {
    let checks = r
        .checks
        .iter()
        .map(|c| CheckJson {
            id: &c.id,
            anchor: &c.anchor,
            passed: c.passed,
            residual: c.residual,
            detail: c.detail.as_deref(),
        })
        .collect();
    let out = ReportJson {
        suite: &r.suite,
        model: &r.model,
        mode: &r.mode,
        passed: r.passed(),
        total: r.checks.len(),
        failed: r.failures().count(),
        checks,
    };
    serde_json::to_string_pretty(&out).expect("plain data") + "\n"
}

/// One aligned line per identity, then a summary.
pub fn report_text(r: &Report) -> String {
    let mut s = String::new();
    writeln!(s, "suite {} | model {} | mode {}", r.suite, r.model, r.mode).unwrap();
    let width = r.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let pad = width - c.id.chars().count();
        write!(s, "{status}  {}{}  {}", c.id, " ".repeat(pad), c.anchor).unwrap();
        if !c.passed || c.residual != 0.0 {
            write!(s, "  [residual {:.3e}]", c.residual).unwrap();
        }
        if let (false, Some(d)) = (c.passed, &c.detail) {
            write!(s, "  {d}").unwrap();
        }
        s.push('\n');
    }
    let failed = r.failures().count();
    writeln!(s, "{} of {} identities passed{}", r.checks.len() - failed, r.checks.len(), if failed == 0 { "" } else { " (FAILED)" })
        .unwrap();
    s
}

/// Diamond rows, top to bottom. Forms: row `k` holds `(p, k−p)` with `p`
/// decreasing. Clifford: row `s = n, …, −n` holds `r` increasing, which is
/// the same picture under `(r, s) = (q−p, n−p−q)`.
pub fn diamond_rows(n: i64, grading: Grading) -> Vec<Vec<(i64, i64)>> {
    match grading {
        Grading::Forms => (0..=2 * n)
            .map(|k| (0..=k).rev().filter(|p| *p <= n && k - p <= n).map(|p| (p, k - p)).collect())
            .collect(),
        Grading::Clifford => (-n..=n)
            .rev()
            .map(|s| {
                let w = n - s.abs();
                (0..=w).map(|j| (-w + 2 * j, s)).collect()
            })
            .collect(),
    }
}

pub fn diamond_text(model: &str, family: Family, grading: Grading, n: i64, dims: &BTreeMap<(i64, i64), usize>) -> String {
    let rows = diamond_rows(n, grading);
    let cell = dims.values().map(|d| d.to_string().len()).max().unwrap_or(1).max(1) + 3;
    let widest = rows.iter().map(Vec::len).max().unwrap_or(1);
    let mut s = String::new();
    let index = if grading == Grading::Forms { "(p,q)" } else { "(r,s)" };
    writeln!(s, "model {model} | family {} ({}) | grading {index} | invariant forms", family.tag(), family.symbol()).unwrap();
    for row in rows {
        let indent = (widest - row.len()) * cell / 2;
        let mut line = " ".repeat(indent);
        for key in row {
            let v = dims.get(&key).copied().unwrap_or(0).to_string();
            write!(line, "{v:^cell$}").unwrap();
        }
        writeln!(s, "{}", line.trim_end()).unwrap();
    }
    s
}

/// Pretty JSON with one `[index, index, dim]` triple per line.
pub fn diamond_json(model: &str, family: Family, grading: Grading, dims: &BTreeMap<(i64, i64), usize>) -> String {
    let q = |x: &str| serde_json::to_string(x).expect("plain string");
    let rows: Vec<String> = dims.iter().map(|(&(a, b), &d)| format!("    [{a}, {b}, {d}]")).collect();
    format!(
        "{{\n  \"model\": {},\n  \"family\": {},\n  \"grading\": {},\n  \"dims\": [\n{}\n  ],\n  \"invariant_forms\": true\n}}\n",
        q(model),
        q(family.tag()),
        q(grading.tag()),
        rows.join(",\n")
    )
}

/// `x∧y∧w`, `−2 a∧b + c∧d`, with coframe names.
pub fn form_text<S: Scalar + std::fmt::Display>(x: &Multivector<S>, labels: &[String]) -> String {
    let mut s = String::new();
    for (k, (blade, c)) in x.terms().enumerate() {
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains([' ', '+', '-']) => (true, rest.to_string()),
            _ => (false, text),
        };
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let names: Vec<&str> = (0..labels.len()).filter(|i| blade & (1 << i) != 0).map(|i| labels[i].as_str()).collect();
        let coeff = if mag == "1" && !names.is_empty() {
            String::new()
        } else if mag.contains([' ', '+', '-']) {
            format!("({mag})")
        } else {
            mag
        };
        s.push_str(&coeff);
        if !coeff.is_empty() && !names.is_empty() {
            s.push(' ');
        }
        s.push_str(&names.join("∧"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_shapes() {
        let rows = diamond_rows(2, Grading::Forms);
        assert_eq!(rows.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 3, 2, 1]);
        assert_eq!(rows[1], vec![(1, 0), (0, 1)]);
        let rows = diamond_rows(2, Grading::Clifford);
        assert_eq!(rows[0], vec![(0, 2)]);
        assert_eq!(rows[2], vec![(-2, 0), (0, 0), (2, 0)]);
    }

    #[test]
    fn diamond_picture() {
        let dims: BTreeMap<(i64, i64), usize> =
            diamond_rows(2, Grading::Forms).into_iter().flatten().map(|k| (k, if k == (1, 1) { 2 } else { 1 })).collect();
        let text = diamond_text("m", Family::D, Grading::Forms, 2, &dims);
        let lines: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(lines, vec!["     1", "   1   1", " 1   2   1", "   1   1", "     1"]);
    }

    #[test]
    fn diamond_json_parses() {
        let dims: BTreeMap<(i64, i64), usize> = [((0, 0), 1), ((1, 0), 2)].into_iter().collect();
        let v: serde_json::Value = serde_json::from_str(&diamond_json("m\"x", Family::CurlyBBt, Grading::Clifford, &dims)).unwrap();
        assert_eq!(v["model"], "m\"x");
        assert_eq!(v["family"], "B-Bt");
        assert_eq!(v["grading"], "rs");
        assert_eq!(v["dims"], serde_json::json!([[0, 0, 1], [1, 0, 2]]));
        assert_eq!(v["invariant_forms"], true);
    }
}
