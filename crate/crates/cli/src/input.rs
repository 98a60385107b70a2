//! Input documents: the text and JSON forms read by `gb`, `hilbert`,
//! `resolve` and `milnor-report`, and written by `family`.
//!
//! Text form, one item per line, `#` starts a comment:
//!
//! ```text
//! nvars: 4
//! grading: bigraded
//! hypersurface: x0*x1*x2*x3
//! x0^2 + x1^2, x2^3
//! ```
//!
//! Bare lines hold ideal generators separated by commas. Other `key: value`
//! lines are ignored. The JSON form is an object with the optional keys
//! `nvars`, `grading`, `hypersurface` and `generators`.

use std::sync::Arc;

use milnor_alg::polyring::{parse_polynomial, Field, Grading, Polynomial, Ring, MAX_VARS};
use serde::Deserialize;

use crate::config::CliError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
pub struct InputDoc {
    #[serde(default)]
    pub nvars: Option<usize>,
    #[serde(default)]
    pub grading: Option<String>,
    #[serde(default)]
    pub hypersurface: Option<String>,
    #[serde(default)]
    pub generators: Vec<String>,
}

impl InputDoc {
    pub fn parse(text: &str) -> Result<InputDoc, CliError> {
        let t = text.trim_start();
        if t.starts_with('{') {
            return Ok(serde_json::from_str(t)?);
        }
        let mut doc = InputDoc::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                let value = value.trim();
                match key.trim() {
                    "nvars" => {
                        doc.nvars = Some(value.parse().map_err(|_| CliError::Usage(format!("bad nvars '{value}'")))?);
                    }
                    "grading" => doc.grading = Some(value.to_string()),
                    "hypersurface" => doc.hypersurface = Some(value.to_string()),
                    _ => {}
                }
                continue;
            }
            doc.generators.extend(line.split(',').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()));
        }
        Ok(doc)
    }

    /// A document holding the given command-line polynomials.
    pub fn from_args(polys: &[String], hypersurface: bool) -> Result<InputDoc, CliError> {
        let mut doc = InputDoc::parse(&polys.join("\n"))?;
        if hypersurface {
            if doc.hypersurface.is_none() && doc.generators.len() == 1 {
                doc.hypersurface = doc.generators.pop();
            }
            if doc.hypersurface.is_none() || !doc.generators.is_empty() {
                return Err(CliError::Usage("expected exactly one hypersurface".into()));
            }
        }
        Ok(doc)
    }

    pub fn is_bigraded(&self) -> bool {
        self.grading.as_deref().is_some_and(|g| g.eq_ignore_ascii_case("bigraded"))
    }

    fn texts(&self) -> impl Iterator<Item = &String> {
        self.hypersurface.iter().chain(self.generators.iter())
    }

    /// Explicit `nvars`, else one more than the largest variable index and
    /// at least 4.
    pub fn nvars(&self, explicit: Option<usize>) -> Result<usize, CliError> {
        let n = explicit.or(self.nvars).unwrap_or_else(|| self.texts().map(|t| max_variable(t) + 1).max().unwrap_or(0).max(4));
        if n == 0 || n > MAX_VARS {
            return Err(CliError::Usage(format!("number of variables must be between 1 and {MAX_VARS}")));
        }
        Ok(n)
    }

    pub fn ring<F: Field>(&self, field: F, explicit_nvars: Option<usize>, bigraded: bool) -> Result<Arc<Ring<F>>, CliError> {
        let n = self.nvars(explicit_nvars)?;
        if bigraded || self.is_bigraded() {
            if n != 4 {
                return Err(CliError::Usage("the bigraded ring has four variables".into()));
            }
            return Ok(Ring::with_grading(field, 4, Grading::Bigraded { split: 2 }));
        }
        Ok(Ring::new(field, n))
    }

    pub fn hypersurface<F: Field>(&self, ring: &Arc<Ring<F>>) -> Result<Option<Polynomial<F>>, CliError> {
        Ok(self.hypersurface.as_deref().map(|t| parse_polynomial(ring, t)).transpose()?)
    }

    pub fn generators<F: Field>(&self, ring: &Arc<Ring<F>>) -> Result<Vec<Polynomial<F>>, CliError> {
        Ok(self.generators.iter().map(|t| parse_polynomial(ring, t)).collect::<Result<_, _>>()?)
    }
}

/// Largest `i` with `x<i>` in `text`, `0` if none.
fn max_variable(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if let Ok(v) = text[start..end].parse::<usize>() {
                best = best.max(v);
            }
            i = end.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_documents() {
        let doc = InputDoc::parse("# family\nnvars: 5\nhypersurface: x0*x4\nform: x0\nx0^2, x1\n\n").unwrap();
        assert_eq!(doc.nvars, Some(5));
        assert_eq!(doc.hypersurface.as_deref(), Some("x0*x4"));
        assert_eq!(doc.generators, vec!["x0^2", "x1"]);
    }

    #[test]
    fn json_documents() {
        let doc = InputDoc::parse(r#"{"hypersurface": "x0^3", "grading": "bigraded"}"#).unwrap();
        assert!(doc.is_bigraded());
        assert_eq!(doc.nvars(None).unwrap(), 4);
    }

    #[test]
    fn variable_count_inference() {
        assert_eq!(max_variable("x0 + 3*x12^2 - x3"), 12);
        let doc = InputDoc::parse("x0^2 + x6").unwrap();
        assert_eq!(doc.nvars(None).unwrap(), 7);
        assert_eq!(doc.nvars(Some(9)).unwrap(), 9);
        assert!(InputDoc::parse("x20").unwrap().nvars(None).is_err());
    }
}
