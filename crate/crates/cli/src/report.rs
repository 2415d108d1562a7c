//! `key = value` reports and their exit codes.

use std::fmt::Write;

use sepdiff_core::diffpoly::Ring;
use sepdiff_core::reduction::ReductionCertificate;
use sepdiff_core::Error;

use crate::parse::{parse_dpoly, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Record,
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<(String, String)>,
    pub code: i32,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        let key = key.into();
        debug_assert!(
            self.lines.iter().all(|(k, _)| *k != key),
            "duplicate report key {key}"
        );
        self.lines.push((key, value.to_string()));
    }

    pub fn extend(&mut self, lines: impl IntoIterator<Item = (String, String)>) {
        for (k, v) in lines {
            self.push(k, v);
        }
    }

    /// Appends lines with every key prefixed by `prefix.`.
    pub fn extend_prefixed(
        &mut self,
        prefix: &str,
        lines: impl IntoIterator<Item = (String, String)>,
    ) {
        for (k, v) in lines {
            self.push(format!("{prefix}.{k}"), v);
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn error(err: &Error) -> Self {
        let code = match err {
            Error::Exhausted(_) => EXIT_EXHAUSTED,
            _ => EXIT_PRECONDITION,
        };
        let mut r = Report {
            lines: Vec::new(),
            code,
        };
        r.push("error", err.name());
        r.push("message", err);
        r
    }

    pub fn parse_error(err: &ParseError, input: &str) -> Self {
        let mut r = Report {
            lines: Vec::new(),
            code: EXIT_PARSE,
        };
        r.push("error", err.kind);
        r.push("input", input);
        r.push("position", err.position);
        r.push("message", &err.message);
        r
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Record => {
                for (k, v) in &self.lines {
                    let _ = writeln!(out, "{k} = {v}");
                }
            }
            Format::Text => {
                let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.lines {
                    let _ = writeln!(out, "{k:<width$}  {v}");
                }
            }
        }
        out
    }
}

/// Splits `key = value` lines; blank lines are skipped.
pub fn parse_record(text: &str) -> Result<Vec<(String, String)>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split_once(" = ")
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| format!("line {}: expected `key = value`", i + 1))
        })
        .collect()
}

/// Rebuilds a reduction certificate from its record lines.
pub fn certificate_from_record(
    lines: &[(String, String)],
    ring: &Ring,
) -> Result<ReductionCertificate, String> {
    let find = |key: &str| {
        lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| format!("missing `{key}`"))
    };
    let poly = |s: &str| parse_dpoly(s, ring).map_err(|e| e.to_string());
    let n = find("n")?.parse::<u32>().map_err(|e| e.to_string())?;
    let m = find("m")?.parse::<u32>().map_err(|e| e.to_string())?;
    let mut cofactors = std::collections::BTreeMap::new();
    for (k, v) in lines {
        if let Some(j) = k
            .strip_prefix("cofactor[")
            .and_then(|r| r.strip_suffix(']'))
        {
            let j = j.parse::<u32>().map_err(|e| e.to_string())?;
            cofactors.insert(j, poly(v)?);
        }
    }
    Ok(ReductionCertificate {
        n,
        m,
        cofactors,
        quotient: poly(find("quotient")?)?,
        remainder: poly(find("remainder")?)?,
    })
}
