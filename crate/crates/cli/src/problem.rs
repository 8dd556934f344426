//! Problem files.
//!
//! ```json
//! {
//!   "vars": ["x", "y"],
//!   "f": ["x^2 + y^2", "x + y"],
//!   "R": [[-1, 2], [-1, 2]],
//!   "P": [[1, 2], [1, 4]],
//!   "epsilon": 0.001,
//!   "mode": "measure"
//! }
//! ```

use std::path::Path;

use psiset_core::expr::FunctionError;
use psiset_core::{Interval, IntervalBox, Problem, Resolution, VectorFunction};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub vars: Vec<String>,
    pub f: Vec<String>,
    #[serde(rename = "R")]
    pub r: Vec<[f64; 2]>,
    #[serde(rename = "P")]
    pub p: Vec<[f64; 2]>,
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

/// A validated problem file.
#[derive(Debug, Clone)]
pub struct LoadedProblem {
    pub problem: Problem,
    pub epsilon: f64,
    pub mode: Resolution,
}

pub fn parse_mode(s: &str) -> Result<Resolution, String> {
    match s {
        "measure" => Ok(Resolution::Measure),
        "width" => Ok(Resolution::MaxWidth),
        other => Err(format!("unknown mode `{other}` (expected `measure` or `width`)")),
    }
}

fn invalid(msg: String) -> CliError {
    CliError::Invalid(msg)
}

fn to_box(field: &str, bounds: &[[f64; 2]]) -> Result<IntervalBox, CliError> {
    let components = bounds
        .iter()
        .enumerate()
        .map(|(i, &[lo, hi])| Interval::new(lo, hi).map_err(|_| invalid(format!("{field}[{i}]: [{lo}, {hi}] is not an interval with lo <= hi"))))
        .collect::<Result<Vec<_>, _>>()?;
    IntervalBox::new(components).map_err(|_| invalid(format!("{field}: must not be empty")))
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| invalid(format!("invalid problem JSON: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<LoadedProblem, CliError> {
        if self.vars.is_empty() {
            return Err(invalid("vars: at least one variable is required".into()));
        }
        if self.f.is_empty() {
            return Err(invalid("f: at least one expression is required".into()));
        }
        if self.r.len() != self.vars.len() {
            return Err(invalid(format!(
                "R: expected {} intervals (one per variable in vars), found {}",
                self.vars.len(),
                self.r.len()
            )));
        }
        if self.p.len() != self.f.len() {
            return Err(invalid(format!(
                "P: expected {} intervals (one per expression in f), found {}",
                self.f.len(),
                self.p.len()
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(invalid(format!("epsilon: must be a positive number, got {}", self.epsilon)));
        }
        let mode = match &self.mode {
            None => Resolution::Measure,
            Some(m) => parse_mode(m).map_err(|e| invalid(format!("mode: {e}")))?,
        };
        let r = to_box("R", &self.r)?;
        let p = to_box("P", &self.p)?;
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let function = VectorFunction::parse(&vars, &self.f).map_err(|e| match e {
            FunctionError::Parse { index, source } => invalid(format!("f[{index}]: {source}")),
            FunctionError::UndeclaredVariable { index, name } => {
                invalid(format!("f[{index}]: variable `{name}` is not listed in vars"))
            }
            FunctionError::Function { index, source } => invalid(format!("f[{index}]: {source}")),
            FunctionError::DuplicateVariable(v) => invalid(format!("vars: `{v}` is listed twice")),
            FunctionError::Empty => invalid("vars and f must not be empty".into()),
        })?;
        let problem = Problem::new(function, r, p).map_err(|e| invalid(e.to_string()))?;
        Ok(LoadedProblem {
            problem,
            epsilon: self.epsilon,
            mode,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F1: &str = r#"{"vars":["x","y"],"f":["x^2 + y^2","x + y"],"R":[[-1,2],[-1,2]],"P":[[1,2],[1,4]],"epsilon":0.01}"#;

    fn err(text: &str) -> String {
        match ProblemFile::from_json(text).and_then(|f| f.validate()) {
            Ok(_) => panic!("accepted {text}"),
            Err(e) => e.to_string(),
        }
    }

    #[test]
    fn loads_valid_file() {
        let p = ProblemFile::from_json(F1).unwrap().validate().unwrap();
        assert_eq!(p.mode, Resolution::Measure);
        assert_eq!(p.problem.adjustments().measure(), 9.0);
    }

    #[test]
    fn field_specific_messages() {
        assert!(err(&F1.replace("[[-1,2],[-1,2]]", "[[-1,2]]")).starts_with("R: expected 2"));
        assert!(err(&F1.replace("[[1,2],[1,4]]", "[[1,2]]")).starts_with("P: expected 2"));
        assert!(err(&F1.replace("0.01", "0")).starts_with("epsilon:"));
        assert!(err(&F1.replace("[[1,2],[1,4]]", "[[2,1],[1,4]]")).starts_with("P[0]:"));
        assert!(err(&F1.replace("x + y", "x + z")).starts_with("f[1]: variable `z`"));
        assert!(err(&F1.replace("x + y", "x + ")).starts_with("f[1]: syntax error"));
        assert!(err(&F1.replace("0.01}", "0.01,\"mode\":\"area\"}")).starts_with("mode:"));
        assert!(err(&F1.replace("\"y\"]", "\"x\"]")).starts_with("vars:"));
        let msg = err("{\"vars\": [\"x\",}");
        assert!(msg.contains("line 1 column"), "{msg}");
    }
}
