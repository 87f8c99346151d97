//! Text formats for sign matrices.
//!
//! * `pm`: one line per row of `+` / `-` characters, no separators.
//! * `int`: one line per row of space-separated `1` / `-1` tokens.
//!
//! Both accept `#` comment lines (ignored on read, used for provenance on
//! write), use `\n` line endings, and require a trailing newline.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hmat::{Sign, SignMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pm,
    Int,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm" => Ok(Format::Pm),
            "int" => Ok(Format::Int),
            other => Err(Error::Shape(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Pm => "pm",
            Format::Int => "int",
        })
    }
}

/// Ordered `key: value` comment lines written ahead of a matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    entries: Vec<(String, String)>,
}

impl Provenance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn lines(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect()
    }
}

fn write_header(header: &[String], sink: &mut impl Write) -> Result<()> {
    for line in header {
        for part in line.split('\n') {
            writeln!(sink, "# {part}")?;
        }
    }
    Ok(())
}

pub fn write_pm(m: &SignMatrix, sink: &mut impl Write) -> Result<()> {
    write_pm_with_header(m, &[], sink)
}

pub fn write_pm_with_header(
    m: &SignMatrix,
    header: &[String],
    sink: &mut impl Write,
) -> Result<()> {
    write_header(header, sink)?;
    write!(sink, "{m}")?;
    Ok(())
}

pub fn write_int(m: &SignMatrix, sink: &mut impl Write) -> Result<()> {
    write_int_with_header(m, &[], sink)
}

pub fn write_int_with_header(
    m: &SignMatrix,
    header: &[String],
    sink: &mut impl Write,
) -> Result<()> {
    write_header(header, sink)?;
    let mut line = String::new();
    for i in 0..m.rows() {
        line.clear();
        for j in 0..m.cols() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(match m.entry(i, j)? {
                Sign::Plus => "1",
                Sign::Minus => "-1",
            });
        }
        writeln!(sink, "{line}")?;
    }
    Ok(())
}

pub fn write_matrix(
    m: &SignMatrix,
    format: Format,
    header: &[String],
    sink: &mut impl Write,
) -> Result<()> {
    match format {
        Format::Pm => write_pm_with_header(m, header, sink),
        Format::Int => write_int_with_header(m, header, sink),
    }
}

/// Data lines with their 1-based line numbers; comment lines dropped.
fn data_lines(text: &str) -> Result<Vec<(usize, &str)>> {
    if text.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let Some(body) = text.strip_suffix('\n') else {
        return Err(Error::Parse {
            line: text.split('\n').count(),
            message: "missing trailing newline".into(),
        });
    };
    let lines: Vec<(usize, &str)> = body
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#'))
        .collect();
    if lines.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    Ok(lines)
}

fn assemble(rows: Vec<(usize, Vec<Sign>)>) -> Result<SignMatrix> {
    let cols = rows[0].1.len();
    if let Some((line, row)) = rows.iter().find(|(_, r)| r.len() != cols) {
        return Err(Error::Parse {
            line: *line,
            message: format!("ragged row: {} entries, expected {cols}", row.len()),
        });
    }
    SignMatrix::from_fn(rows.len(), cols, |i, j| rows[i].1[j])
}

pub fn parse_pm(text: &str) -> Result<SignMatrix> {
    let rows = data_lines(text)?
        .into_iter()
        .map(|(line, l)| {
            if l.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "empty row".into(),
                });
            }
            let row = l
                .chars()
                .map(|c| match c {
                    '+' => Ok(Sign::Plus),
                    '-' => Ok(Sign::Minus),
                    other => Err(Error::Parse {
                        line,
                        message: format!("unexpected character {other:?}"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((line, row))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(rows)
}

pub fn parse_int(text: &str) -> Result<SignMatrix> {
    let rows = data_lines(text)?
        .into_iter()
        .map(|(line, l)| {
            let row = l
                .split_ascii_whitespace()
                .map(|tok| match tok {
                    "1" => Ok(Sign::Plus),
                    "-1" => Ok(Sign::Minus),
                    other => Err(Error::Parse {
                        line,
                        message: format!("unexpected token {other:?}"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            if row.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "empty row".into(),
                });
            }
            Ok((line, row))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(rows)
}

fn read_text(mut source: impl Read) -> Result<String> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    Ok(text)
}

pub fn read_pm(source: impl Read) -> Result<SignMatrix> {
    parse_pm(&read_text(source)?)
}

pub fn read_int(source: impl Read) -> Result<SignMatrix> {
    parse_int(&read_text(source)?)
}

/// Guesses the format from the first data line: any digit means `int`.
pub fn detect_format(text: &str) -> Format {
    let first = text.lines().find(|l| !l.starts_with('#')).unwrap_or("");
    if first.contains(|c: char| c.is_ascii_digit()) {
        Format::Int
    } else {
        Format::Pm
    }
}

pub fn parse_matrix(text: &str) -> Result<(SignMatrix, Format)> {
    let format = detect_format(text);
    let m = match format {
        Format::Pm => parse_pm(text)?,
        Format::Int => parse_int(text)?,
    };
    Ok((m, format))
}

/// SHA-256 of the comment-free `pm` serialization, hex encoded.
pub fn content_hash(m: &SignMatrix) -> String {
    hex::encode(Sha256::digest(m.to_string().as_bytes()))
}
