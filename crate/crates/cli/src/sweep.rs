//! Experiment specs: a command name and a parameter grid, expanded in
//! declaration order and evaluated in parallel with ordered output.

use std::path::PathBuf;

use anyhow::{bail, Context as _, Result};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::commands::{run_named, Ctx};
use crate::output::{Report, Row};

/// `{"command": "sleeve", "grid": {"m": [3], "c": [7], "eps": ["1/8", "1/10"]}}`
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub command: String,
    pub grid: Map<String, Value>,
    #[serde(default)]
    pub constants: Option<PathBuf>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("unreadable experiment spec")
    }

    /// Cartesian product of the grid, first parameter varying slowest.
    pub fn points(&self) -> Result<Vec<Map<String, Value>>> {
        if self.grid.is_empty() {
            bail!("experiment grid is empty");
        }
        let mut points = vec![Map::new()];
        for (key, values) in &self.grid {
            let values = match values {
                Value::Array(items) => items.clone(),
                scalar => vec![scalar.clone()],
            };
            if values.is_empty() {
                bail!("grid parameter {key:?} has no values");
            }
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.insert(key.clone(), v.clone());
                        q
                    })
                })
                .collect();
        }
        Ok(points)
    }
}

/// Evaluate every grid point. Row failures become rows with an `error` field.
pub fn run(spec: &ExperimentSpec, ctx: &Ctx) -> Result<Report> {
    let points = spec.points()?;
    let results: Vec<(Map<String, Value>, Result<Report>)> = points
        .into_par_iter()
        .map(|p| {
            let outcome = run_named(&spec.command, Value::Object(p.clone()), ctx);
            (p, outcome)
        })
        .collect();
    let mut report = Report::default();
    for (index, (point, outcome)) in results.into_iter().enumerate() {
        let prefix = |extra: Row| -> Row {
            let mut row = Row::new();
            row.insert("point".into(), Value::from(index as u64));
            for (k, v) in &point {
                row.insert(k.clone(), v.clone());
            }
            for (k, v) in extra {
                row.insert(k, v);
            }
            row
        };
        match outcome {
            Ok(sub) => {
                report.violations += sub.violations;
                report.errors += sub.errors;
                report.rows.extend(sub.rows.into_iter().map(prefix));
            }
            Err(e) => {
                let mut extra = Row::new();
                extra.insert("error".into(), Value::from(format!("{e:#}")));
                report.errors += 1;
                report.rows.push(prefix(extra));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order() {
        let spec =
            ExperimentSpec::from_json(r#"{"command": "x", "grid": {"a": [1, 2], "b": ["p", "q"], "c": 5}}"#).unwrap();
        let pts: Vec<String> = spec.points().unwrap().iter().map(|p| Value::Object(p.clone()).to_string()).collect();
        assert_eq!(
            pts,
            vec![
                r#"{"a":1,"b":"p","c":5}"#,
                r#"{"a":1,"b":"q","c":5}"#,
                r#"{"a":2,"b":"p","c":5}"#,
                r#"{"a":2,"b":"q","c":5}"#,
            ]
        );
    }

    #[test]
    fn empty_grids_are_rejected() {
        assert!(ExperimentSpec::from_json(r#"{"command": "x", "grid": {}}"#).unwrap().points().is_err());
        assert!(ExperimentSpec::from_json(r#"{"command": "x", "grid": {"a": []}}"#).unwrap().points().is_err());
        assert!(ExperimentSpec::from_json(r#"{"command": "x"}"#).is_err());
    }
}
