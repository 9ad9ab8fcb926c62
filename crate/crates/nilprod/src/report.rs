//! Serializable report shapes and their text renderings.

use std::fmt::Write as _;

use nilprod_core::text::render_matrix;
use nilprod_core::{CensusReport, Mat2, NilFactorization, Ring, SuiteReport};
use serde::Serialize;
use serde_json::Number;

/// Exact integer for JSON, however large.
fn exact(digits: &str) -> Number {
    digits.parse().expect("decimal digits form a JSON number")
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusJson {
    pub ring: String,
    pub q: u32,
    pub n: u32,
    pub s: u32,
    pub brute_count: Option<u64>,
    pub formula_count: Option<Number>,
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CensusJson {
    pub fn new(report: &CensusReport, elapsed_ms: Option<u64>) -> Self {
        CensusJson {
            ring: report.ring.clone(),
            q: report.q,
            n: report.n,
            s: report.s,
            brute_count: report.brute_count,
            formula_count: report.formula_count.as_ref().map(|f| exact(&f.to_string())),
            matched: report.matches(),
            method: report.method.as_str(),
            elapsed_ms,
        }
    }

    pub fn text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let mut line = format!(
            "{} s={} method={} brute={} formula={} match={}",
            self.ring,
            self.s,
            self.method,
            opt(self.brute_count.map(|b| b.to_string())),
            opt(self.formula_count.as_ref().map(|f| f.to_string())),
            opt(self.matched.map(|m| m.to_string())),
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(line, " elapsed_ms={ms}");
        }
        line.push('\n');
        line
    }
}

/// One `table` row; also the CSV record layout.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub ring: String,
    pub q: Option<u32>,
    pub n: Option<u32>,
    pub s: u32,
    pub brute_count: Option<u64>,
    pub formula_count: Option<Number>,
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    pub method: &'static str,
    pub error: Option<String>,
}

impl TableRow {
    pub fn ok(report: &CensusReport) -> Self {
        let c = CensusJson::new(report, None);
        TableRow {
            ring: c.ring,
            q: Some(c.q),
            n: Some(c.n),
            s: c.s,
            brute_count: c.brute_count,
            formula_count: c.formula_count,
            matched: c.matched,
            method: c.method,
            error: None,
        }
    }

    pub fn failed(ring: &str, parsed: Option<&Ring>, s: u32, method: &'static str, error: String) -> Self {
        TableRow {
            ring: ring.to_string(),
            q: parsed.map(|r| r.q()),
            n: parsed.map(|r| r.n()),
            s,
            brute_count: None,
            formula_count: None,
            matched: None,
            method,
            error: Some(error),
        }
    }
}

pub const CSV_HEADER: &str = "ring,q,n,s,brute_count,formula_count,match,method,error";

pub fn table_csv(rows: &[TableRow]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn table_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:>3} {:>8} {:>12} {:>12} {:>6}  error",
        "ring", "s", "method", "brute", "formula", "match"
    );
    for r in rows {
        let dash = || "-".to_string();
        let _ = writeln!(
            out,
            "{:<14} {:>3} {:>8} {:>12} {:>12} {:>6}  {}",
            r.ring,
            r.s,
            short_method(r.method),
            r.brute_count.map(|b| b.to_string()).unwrap_or_else(dash),
            r.formula_count.as_ref().map(|f| f.to_string()).unwrap_or_else(dash),
            r.matched.map(|m| m.to_string()).unwrap_or_else(dash),
            r.error.as_deref().unwrap_or(""),
        );
    }
    out
}

fn short_method(m: &str) -> &str {
    match m {
        "set-product" => "product",
        "orbit-union" => "union",
        other => other,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationJson {
    pub target: String,
    pub factors: Vec<String>,
    pub conjugator: String,
    pub verified: bool,
}

impl FactorizationJson {
    pub fn new(ring: &Ring, f: &NilFactorization) -> Self {
        FactorizationJson {
            target: render_matrix(ring, &f.target),
            factors: f.factors.iter().map(|m| render_matrix(ring, m)).collect(),
            conjugator: render_matrix(ring, &f.conjugator),
            verified: f.verify(ring),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("target {}\n", self.target);
        for (i, f) in self.factors.iter().enumerate() {
            let _ = writeln!(out, "  N{} = {f}", i + 1);
        }
        let _ = writeln!(out, "conjugator {}", self.conjugator);
        let _ = writeln!(out, "verified {}", self.verified);
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RefusalJson {
    pub target: String,
    pub s: u32,
    pub refused: &'static str,
    pub error: String,
}

impl RefusalJson {
    pub fn new(ring: &Ring, target: &Mat2, s: u32, refused: &'static str, error: String) -> Self {
        RefusalJson {
            target: render_matrix(ring, target),
            s,
            refused,
            error,
        }
    }

    pub fn text(&self) -> String {
        format!("refused {} s={}: {}\n", self.target, self.s, self.error)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteJson {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub violations: u64,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyJson {
    pub ring: String,
    pub passed: bool,
    pub suites: Vec<SuiteJson>,
}

impl VerifyJson {
    pub fn new(ring: &Ring, reports: &[SuiteReport]) -> Self {
        let suites: Vec<SuiteJson> = reports
            .iter()
            .map(|r| SuiteJson {
                suite: r.suite.name().to_string(),
                passed: r.passed(),
                checks: r.checks,
                violations: r.violations,
                notes: r.notes.clone(),
            })
            .collect();
        VerifyJson {
            ring: ring.spec().to_string(),
            passed: suites.iter().all(|s| s.passed),
            suites,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("verify {}\n", self.ring);
        for s in &self.suites {
            let verdict = if s.passed { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {}: {verdict} ({} checks, {} violations)",
                s.suite, s.checks, s.violations
            );
            for n in &s.notes {
                let _ = writeln!(out, "    {n}");
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed { "pass" } else { "FAIL" });
        out
    }

    pub fn csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["ring", "suite", "passed", "checks", "violations"])?;
        for s in &self.suites {
            w.write_record([
                self.ring.as_str(),
                s.suite.as_str(),
                if s.passed { "true" } else { "false" },
                &s.checks.to_string(),
                &s.violations.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasJson {
    pub ring: String,
    pub union_size: u64,
    pub orbit_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingInfoJson {
    pub ring: String,
    pub p: u32,
    pub r: u32,
    pub n: u32,
    pub q: u32,
    pub cardinality: u64,
    pub modulus: Vec<u32>,
    pub uniformizer: String,
    pub sum_of_squares: [String; 2],
    pub matrix_count: Option<u64>,
}

impl RingInfoJson {
    pub fn new(ring: &Ring) -> Self {
        let (a, b) = ring.solve_sum_of_squares();
        RingInfoJson {
            ring: ring.spec().to_string(),
            p: ring.p(),
            r: ring.r(),
            n: ring.n(),
            q: ring.q(),
            cardinality: ring.cardinality(),
            modulus: ring.field().modulus().to_vec(),
            uniformizer: ring.render(ring.uniformizer()),
            sum_of_squares: [ring.render(a), ring.render(b)],
            matrix_count: ring.matrix_count(),
        }
    }

    pub fn text(&self) -> String {
        format!(
            "{}: p={} r={} n={} q={} |R|={} modulus={:?} uniformizer={} a^2+b^2=-1 at ({}, {})\n",
            self.ring,
            self.p,
            self.r,
            self.n,
            self.q,
            self.cardinality,
            self.modulus,
            self.uniformizer,
            self.sum_of_squares[0],
            self.sum_of_squares[1]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilprod_core::nilfactor::census_report_set_product;
    use nilprod_core::{RingSpec, DEFAULT_CAP};

    fn z9() -> Ring {
        Ring::new("zmod:3^2".parse::<RingSpec>().unwrap()).unwrap()
    }

    #[test]
    fn census_json_key_order() {
        let r = z9();
        let rep = census_report_set_product(&r, 3, DEFAULT_CAP).unwrap();
        let json = serde_json::to_string(&CensusJson::new(&rep, None)).unwrap();
        assert_eq!(
            json,
            r#"{"ring":"zmod:3^2","q":3,"n":2,"s":3,"brute_count":897,"formula_count":897,"match":true,"method":"set-product"}"#
        );
        let timed = serde_json::to_string(&CensusJson::new(&rep, Some(5))).unwrap();
        assert!(timed.ends_with(r#""elapsed_ms":5}"#));
    }

    #[test]
    fn csv_header_and_blank_options() {
        let r = z9();
        let rep = census_report_set_product(&r, 2, DEFAULT_CAP).unwrap();
        let rows = vec![
            TableRow::ok(&rep),
            TableRow::failed("zmod:2^1", None, 1, "set-product", "odd order required".into()),
        ];
        let csv = table_csv(&rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let brute = rep.brute_count.unwrap();
        assert_eq!(lines.next().unwrap(), format!("zmod:3^2,3,2,2,{brute},,,set-product,"));
        assert_eq!(lines.next().unwrap(), "zmod:2^1,,,1,,,,set-product,odd order required");
        assert_eq!(table_csv(&[]).unwrap().trim_end(), CSV_HEADER);
    }

    #[test]
    fn huge_formula_stays_exact() {
        let n = exact("123456789012345678901234567890123456789");
        assert_eq!(serde_json::to_string(&n).unwrap(), "123456789012345678901234567890123456789");
    }
}
