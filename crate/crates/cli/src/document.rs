//! JSON cycle documents.
//!
//! A cycle is `{"k": …, "l": …, "n": …, "m": …}` with optional `label` and
//! `oriented`; arrays of cycles and figure documents
//! `{"cycles": […], "relations": […]}` are accepted wherever cycles are read.

use std::fs;
use std::path::Path;

use cycles_core::{Cycle, Tolerance};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleDocument {
    pub k: f64,
    pub l: f64,
    pub n: f64,
    pub m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Whether the sign of the coordinates is significant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oriented: Option<bool>,
}

impl CycleDocument {
    pub fn from_cycle(c: &Cycle, label: Option<&str>) -> Self {
        CycleDocument {
            k: c.k,
            l: c.l,
            n: c.n,
            m: c.m,
            label: label.map(str::to_owned),
            oriented: None,
        }
    }

    pub fn to_cycle(&self) -> Result<Cycle, CliError> {
        Cycle::try_new(self.k, self.l, self.n, self.m)
            .map_err(|e| CliError::Parse(format!("{}: {e}", self.name())))
    }

    pub fn name(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("({}, {}, {}, {})", self.k, self.l, self.n, self.m))
    }

    /// Equality respecting orientation only when the document asks for it.
    pub fn same_cycle(&self, other: &CycleDocument, tol: Tolerance) -> Result<bool, CliError> {
        let (a, b) = (self.to_cycle()?, other.to_cycle()?);
        Ok(
            if self.oriented.unwrap_or(false) || other.oriented.unwrap_or(false) {
                a.oriented_eq(&b, tol)
            } else {
                a.proj_eq(&b, tol)
            },
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureDocument {
    pub cycles: Vec<CycleDocument>,
    #[serde(default)]
    pub relations: Vec<Value>,
}

fn collect(value: Value, out: &mut Vec<CycleDocument>) -> Result<(), CliError> {
    match value {
        Value::Array(items) => items.into_iter().try_for_each(|v| collect(v, out)),
        Value::Object(ref map) if map.contains_key("cycles") => {
            let figure: FigureDocument =
                serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
            out.extend(figure.cycles);
            Ok(())
        }
        other => {
            let doc: CycleDocument =
                serde_json::from_value(other).map_err(|e| CliError::Parse(e.to_string()))?;
            doc.to_cycle()?;
            out.push(doc);
            Ok(())
        }
    }
}

/// Parses JSON text holding one cycle, an array (nested arrays are
/// flattened) or a figure document.
pub fn parse_documents(text: &str) -> Result<Vec<CycleDocument>, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut out = Vec::new();
    collect(value, &mut out)?;
    Ok(out)
}

/// An argument is inline JSON when it starts with `{` or `[`, a file path
/// otherwise.
pub fn load_argument(arg: &str) -> Result<Vec<CycleDocument>, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return parse_documents(trimmed);
    }
    let text =
        fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Parse(format!("{arg}: {e}")))?;
    parse_documents(&text)
}

pub fn load_all(args: &[String]) -> Result<Vec<CycleDocument>, CliError> {
    let mut out = Vec::new();
    for arg in args {
        out.extend(load_argument(arg)?);
    }
    Ok(out)
}

pub fn expect_count(
    docs: Vec<CycleDocument>,
    count: usize,
) -> Result<Vec<CycleDocument>, CliError> {
    if docs.len() == count {
        Ok(docs)
    } else {
        Err(CliError::Parse(format!(
            "expected {count} cycles, got {}",
            docs.len()
        )))
    }
}
