//! Line-oriented text serialization for DGAs.
//!
//! ```text
//! dga
//! modulus 0
//! generator a1 1
//! generator b1 0
//! diff a1 1 + b1 + b3 + b1.b2.b3
//! end
//! ```
//!
//! Words join their letters with `.`; `1` is the empty word and `0` the zero
//! element.  Output is byte-stable: generators in declaration order, words
//! in the canonical sorted order of `AlgebraElement`.

use crate::{AlgebraElement, DgaError, FreeDGA};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DgaSerialError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Dga(#[from] DgaError),
}

fn parse_err(line: usize, message: impl Into<String>) -> DgaSerialError {
    DgaSerialError::Parse {
        line,
        message: message.into(),
    }
}

pub fn dga_to_text(dga: &FreeDGA) -> String {
    let mut out = String::from("dga\n");
    let _ = writeln!(out, "modulus {}", dga.modulus());
    for (i, label) in dga.labels().iter().enumerate() {
        let _ = writeln!(out, "generator {} {}", label, dga.grade(i));
    }
    for (i, label) in dga.labels().iter().enumerate() {
        let d = dga.generator_differential(i);
        if !d.is_zero() {
            let _ = writeln!(out, "diff {} {}", label, dga.format_element(d));
        }
    }
    out.push_str("end\n");
    out
}

fn parse_element(
    text: &str,
    labels: &[(String, i64)],
    line: usize,
) -> Result<AlgebraElement, DgaSerialError> {
    let index = |name: &str| -> Result<usize, DgaSerialError> {
        labels
            .iter()
            .position(|(l, _)| l == name)
            .ok_or_else(|| parse_err(line, format!("unknown generator `{name}` in word")))
    };
    let mut words = Vec::new();
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(parse_err(line, "empty summand"));
        }
        if term == "0" {
            continue;
        }
        if term == "1" {
            words.push(Vec::new());
            continue;
        }
        let word: Result<Vec<usize>, _> = term.split('.').map(|l| index(l.trim())).collect();
        words.push(word?);
    }
    Ok(AlgebraElement::from_words(words))
}

pub fn dga_from_text(text: &str) -> Result<FreeDGA, DgaSerialError> {
    let mut modulus: Option<u64> = None;
    let mut generators: Vec<(String, i64)> = Vec::new();
    let mut diffs: Vec<(String, usize, String)> = Vec::new(); // label, line, rhs
    let mut seen_header = false;
    let mut seen_end = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if seen_end {
            return Err(parse_err(lineno, "content after `end`"));
        }
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match head {
            "dga" => {
                if seen_header {
                    return Err(parse_err(lineno, "duplicate `dga` header"));
                }
                seen_header = true;
            }
            _ if !seen_header => return Err(parse_err(lineno, "expected `dga` header first")),
            "modulus" => {
                modulus = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| parse_err(lineno, "modulus is not a non-negative integer"))?,
                );
            }
            "generator" => {
                let mut parts = rest.split_whitespace();
                let label = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing generator label"))?;
                let grade: i64 = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing generator grade"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "grade is not an integer"))?;
                if parts.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens"));
                }
                generators.push((label.to_string(), grade));
            }
            "diff" => {
                let (label, rhs) = rest
                    .trim()
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| parse_err(lineno, "missing differential right-hand side"))?;
                diffs.push((label.to_string(), lineno, rhs.to_string()));
            }
            "end" => seen_end = true,
            other => return Err(parse_err(lineno, format!("unknown directive `{other}`"))),
        }
    }
    if !seen_end {
        return Err(parse_err(text.lines().count(), "missing `end`"));
    }
    let modulus = modulus.ok_or_else(|| parse_err(1, "missing `modulus` line"))?;
    let parsed: Result<Vec<(String, AlgebraElement)>, DgaSerialError> = diffs
        .into_iter()
        .map(|(label, line, rhs)| Ok((label, parse_element(&rhs, &generators, line)?)))
        .collect();
    Ok(FreeDGA::build(&generators, modulus, &parsed?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let text = "dga\nmodulus 0\ngenerator a1 1\ngenerator a2 1\ngenerator b1 0\ngenerator b2 0\ngenerator b3 0\ndiff a1 1 + b1 + b3 + b1.b2.b3\ndiff a2 1 + b1 + b3 + b3.b2.b1\nend\n";
        let dga = dga_from_text(text).unwrap();
        let out = dga_to_text(&dga);
        let dga2 = dga_from_text(&out).unwrap();
        assert_eq!(dga_to_text(&dga2), out);
        assert_eq!(dga2.labels(), dga.labels());
        assert!(dga.verify().is_empty());
    }

    #[test]
    fn unknown_letter_diagnosed() {
        let text = "dga\nmodulus 0\ngenerator a 1\ndiff a b\nend\n";
        let err = dga_from_text(text).unwrap_err();
        assert!(matches!(err, DgaSerialError::Parse { line: 4, .. }));
    }
}
