//! Deterministic CSV/JSON rendering of result rows.

use std::io::Write;

use serde_json::{Map, Value};

pub type Row = Map<String, Value>;

pub const UNITS: &str = "floats rounded to 6 significant digits; rationals exact as p/q; \
volumes and systoles in units of the input metric";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Rows of one run plus what the header needs.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<Row>,
    /// Rows whose checked inequality or identity came out false.
    pub violations: usize,
    /// Rows that failed to compute.
    pub errors: usize,
}

impl Report {
    pub fn single(row: Row) -> Self {
        Self { rows: vec![row], ..Self::default() }
    }

    pub fn push(&mut self, row: Row, violated: bool) {
        self.violations += usize::from(violated);
        self.rows.push(row);
    }
}

pub struct Meta<'a> {
    pub command: &'a str,
    pub seed: u64,
    pub constants: &'a str,
}

pub fn tool_version() -> String {
    format!("systolic {}", env!("CARGO_PKG_VERSION"))
}

/// Round to six significant digits; non-finite values become strings.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        });
    }
    if x == 0.0 {
        return Value::from(0.0);
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    Value::from(rounded)
}

fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn columns(rows: &[Row]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for row in rows {
        for key in row.keys() {
            if !out.contains(key) {
                out.push(key.clone());
            }
        }
    }
    out
}

pub fn render(report: &Report, meta: &Meta<'_>, format: Format) -> anyhow::Result<Vec<u8>> {
    match format {
        Format::Csv => render_csv(report, meta),
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("tool".into(), Value::from(tool_version()));
            doc.insert("command".into(), Value::from(meta.command));
            doc.insert("seed".into(), Value::from(meta.seed));
            doc.insert("constants".into(), Value::from(meta.constants));
            doc.insert("units".into(), Value::from(UNITS));
            doc.insert("violations".into(), Value::from(report.violations));
            doc.insert("errors".into(), Value::from(report.errors));
            doc.insert("rows".into(), Value::Array(report.rows.iter().cloned().map(Value::Object).collect()));
            let mut bytes = serde_json::to_vec_pretty(&Value::Object(doc))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

fn render_csv(report: &Report, meta: &Meta<'_>) -> anyhow::Result<Vec<u8>> {
    let mut out = Vec::new();
    writeln!(out, "# tool: {}", tool_version())?;
    writeln!(out, "# command: {}", meta.command)?;
    writeln!(out, "# seed: {}", meta.seed)?;
    writeln!(out, "# constants: {}", meta.constants)?;
    writeln!(out, "# units: {UNITS}")?;
    let cols = columns(&report.rows);
    let mut writer = csv::Writer::from_writer(&mut out);
    if !cols.is_empty() {
        writer.write_record(&cols)?;
    }
    for row in &report.rows {
        writer.write_record(cols.iter().map(|c| row.get(c).map(cell).unwrap_or_default()))?;
    }
    writer.flush()?;
    drop(writer);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(float(1_420.384_719).to_string(), "1420.38");
        assert_eq!(float(1.0 / 3.0).to_string(), "0.333333");
        assert_eq!(float(f64::INFINITY), Value::from("inf"));
        assert_eq!(float(0.0).to_string(), "0.0");
    }

    #[test]
    fn csv_columns_union_in_order() {
        let mut a = Row::new();
        a.insert("x".into(), Value::from(1));
        let mut b = Row::new();
        b.insert("x".into(), Value::from(2));
        b.insert("error".into(), Value::from("bad"));
        let report = Report { rows: vec![a, b], violations: 0, errors: 1 };
        let meta = Meta { command: "t", seed: 3, constants: "none" };
        let text = String::from_utf8(render(&report, &meta, Format::Csv).unwrap()).unwrap();
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body, vec!["x,error", "1,", "2,bad"]);
        assert!(text.contains("# seed: 3"));
    }
}
