//! Line-oriented text serialization for graded complexes.
//!
//! The format is deliberately diff-able:
//!
//! ```text
//! complex
//! ring z2
//! generator N 2
//! generator S 0
//! boundary d b 2
//! end
//! ```
//!
//! `generator LABEL GRADE` lines appear in generator order; `boundary SRC
//! TGT COEFF` lines are the sparse nonzero entries sorted by (source,
//! target).  Round-tripping is lossless for any complex built from i64
//! coefficients.

use crate::complex::{ComplexError, GradedComplex, Ring};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SerialError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn parse_err(line: usize, message: impl Into<String>) -> SerialError {
    SerialError::Parse {
        line,
        message: message.into(),
    }
}

/// Serialize a complex to the text format above.
pub fn complex_to_text(c: &GradedComplex) -> String {
    let mut out = String::from("complex\n");
    let _ = writeln!(out, "ring {}", c.ring().name());
    for g in c.generators() {
        let _ = writeln!(out, "generator {} {}", g.label, g.grade);
    }
    let mut entries: Vec<(String, String, BigInt)> = Vec::new();
    for grade in c.grades().collect::<Vec<_>>() {
        let d = c.boundary(grade);
        let sources = c.labels_of_grade(grade);
        let targets = c.labels_of_grade(grade - 1);
        for (j, src) in sources.iter().enumerate() {
            for (i, tgt) in targets.iter().enumerate() {
                if !d[(i, j)].is_zero() {
                    entries.push((src.to_string(), tgt.to_string(), d[(i, j)].clone()));
                }
            }
        }
    }
    entries.sort();
    for (src, tgt, coeff) in entries {
        let _ = writeln!(out, "boundary {src} {tgt} {coeff}");
    }
    out.push_str("end\n");
    out
}

/// Parse the text format back into a complex.
pub fn complex_from_text(text: &str) -> Result<GradedComplex, SerialError> {
    let mut ring = None;
    let mut generators: Vec<(String, i64)> = Vec::new();
    let mut entries: Vec<(String, String, i64)> = Vec::new();
    let mut seen_header = false;
    let mut seen_end = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if seen_end {
            return Err(parse_err(lineno, "content after `end`"));
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        match head {
            "complex" => {
                if seen_header {
                    return Err(parse_err(lineno, "duplicate `complex` header"));
                }
                seen_header = true;
            }
            _ if !seen_header => {
                return Err(parse_err(lineno, "expected `complex` header first"));
            }
            "ring" => {
                let name = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing ring name"))?;
                ring = Some(
                    Ring::parse(name)
                        .ok_or_else(|| parse_err(lineno, format!("unknown ring `{name}`")))?,
                );
            }
            "generator" => {
                let label = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing generator label"))?;
                let grade: i64 = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing generator grade"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "grade is not an integer"))?;
                generators.push((label.to_string(), grade));
            }
            "boundary" => {
                let src = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing boundary source"))?;
                let tgt = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing boundary target"))?;
                let coeff: i64 = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing boundary coefficient"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "coefficient is not an integer"))?;
                entries.push((src.to_string(), tgt.to_string(), coeff));
            }
            "end" => seen_end = true,
            other => return Err(parse_err(lineno, format!("unknown directive `{other}`"))),
        }
        if parts.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens"));
        }
    }
    if !seen_end {
        return Err(parse_err(text.lines().count(), "missing `end`"));
    }
    let ring = ring.ok_or_else(|| parse_err(1, "missing `ring` line"))?;
    Ok(GradedComplex::build(&generators, &entries, ring)?)
}
