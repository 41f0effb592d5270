//! Line-oriented text formats for Cayley tables and matrix sets.
//!
//! ```text
//! skewlat 1            matrices 1
//! n 2                  char 0
//! meet                 dim 2
//! 0 0                  matrix e
//! 0 1                  1 0
//! join                 0 0
//! 0 1
//! 1 1
//! ```
//!
//! An algebra file may carry a `labels` line after `n`. Lines starting with
//! `#` and blank lines are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{AlgebraError, CayleyAlgebra};
use crate::matrix::{ExactMatrix, MatrixError, ScalarSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn tokens(&self) -> impl Iterator<Item = (usize, &str)> {
        let base = self.text.as_ptr() as usize;
        self.text
            .split_whitespace()
            .map(move |t| (t.as_ptr() as usize - base + 1, t))
    }

    fn error(&self, column: usize, reason: impl Into<String>) -> FormatError {
        FormatError::Parse {
            line: self.number,
            column,
            reason: reason.into(),
        }
    }
}

struct Lines<'a> {
    inner: Vec<Line<'a>>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner: Vec<Line<'a>> = text
            .split('\n')
            .enumerate()
            .map(|(i, t)| Line {
                number: i + 1,
                text: t.strip_suffix('\r').unwrap_or(t),
            })
            .filter(|l| {
                let t = l.text.trim_start();
                !t.is_empty() && !t.starts_with('#')
            })
            .collect();
        let last = text.split('\n').count();
        Lines {
            inner,
            pos: 0,
            last,
        }
    }

    fn next(&mut self, what: &str) -> Result<&Line<'a>, FormatError> {
        let line = self.inner.get(self.pos).ok_or_else(|| FormatError::Parse {
            line: self.last,
            column: 1,
            reason: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn peek(&self) -> Option<&Line<'a>> {
        self.inner.get(self.pos)
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.peek() {
            Some(l) => Err(l.error(1, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

/// Parses `keyword value` and returns the value token.
fn keyword_value<'a>(line: &'a Line<'_>, keyword: &str) -> Result<(usize, &'a str), FormatError> {
    let toks: Vec<(usize, &str)> = line.tokens().collect();
    match toks.as_slice() {
        [(_, k), v] if *k == keyword => Ok(*v),
        [(_, k), _, (c, _), ..] if *k == keyword => Err(line.error(*c, "unexpected extra token")),
        _ => Err(line.error(1, format!("expected `{keyword} <value>`"))),
    }
}

fn expect_keyword(line: &Line<'_>, keyword: &str) -> Result<(), FormatError> {
    let toks: Vec<(usize, &str)> = line.tokens().collect();
    match toks.as_slice() {
        [(_, k)] if *k == keyword => Ok(()),
        _ => Err(line.error(1, format!("expected `{keyword}`"))),
    }
}

fn parse_number<T: std::str::FromStr>(
    line: &Line<'_>,
    (col, tok): (usize, &str),
) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| line.error(col, format!("`{tok}` is not a valid number")))
}

fn parse_table(lines: &mut Lines<'_>, name: &str, n: usize) -> Result<Vec<usize>, FormatError> {
    expect_keyword(lines.next(name)?, name)?;
    let mut out = Vec::with_capacity(n * n);
    for _ in 0..n {
        let line = lines.next(&format!("a row of the {name} table"))?;
        let toks: Vec<(usize, &str)> = line.tokens().collect();
        if toks.len() != n {
            return Err(line.error(1, format!("expected {n} entries, found {}", toks.len())));
        }
        for t in toks {
            let v: usize = parse_number(line, t)?;
            if v >= n {
                return Err(line.error(t.0, format!("index {v} out of range 0..{n}")));
            }
            out.push(v);
        }
    }
    Ok(out)
}

pub fn parse_algebra(text: &str) -> Result<CayleyAlgebra, FormatError> {
    let mut lines = Lines::new(text);
    let header = lines.next("the header `skewlat 1`")?;
    let version = keyword_value(header, "skewlat")?;
    if version.1 != "1" {
        return Err(header.error(version.0, format!("unsupported version {}", version.1)));
    }
    let size_line = lines.next("`n <N>`")?;
    let n: usize = parse_number(size_line, keyword_value(size_line, "n")?)?;
    if n == 0 {
        return Err(size_line.error(1, "an algebra needs at least one element"));
    }
    let mut labels = None;
    if let Some(line) = lines.peek() {
        if line.tokens().next().is_some_and(|(_, t)| t == "labels") {
            let toks: Vec<String> = line.tokens().skip(1).map(|(_, t)| t.to_string()).collect();
            if toks.len() != n {
                return Err(line.error(1, format!("expected {n} labels, found {}", toks.len())));
            }
            labels = Some((line.number, toks));
            lines.pos += 1;
        }
    }
    let meet = parse_table(&mut lines, "meet", n)?;
    let join = parse_table(&mut lines, "join", n)?;
    lines.finish()?;
    let alg = CayleyAlgebra::from_flat(n, meet, join)?;
    match labels {
        Some((number, l)) => alg.with_labels(l).map_err(|e| FormatError::Parse {
            line: number,
            column: 1,
            reason: e.to_string(),
        }),
        None => Ok(alg),
    }
}

pub fn serialize_algebra(alg: &CayleyAlgebra) -> String {
    let n = alg.size();
    let mut s = format!("skewlat 1\nn {n}\n");
    if let Some(labels) = alg.labels() {
        let _ = writeln!(s, "labels {}", labels.join(" "));
    }
    for (name, row) in [
        (
            "meet",
            CayleyAlgebra::meet_row as fn(&CayleyAlgebra, usize) -> &[usize],
        ),
        ("join", CayleyAlgebra::join_row),
    ] {
        s.push_str(name);
        s.push('\n');
        for x in 0..n {
            let cells: Vec<String> = row(alg, x).iter().map(ToString::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
    }
    s
}

/// A named list of square matrices over a common scalar ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub scalar: ScalarSpec,
    pub dim: usize,
    pub matrices: Vec<(String, ExactMatrix)>,
}

pub fn parse_matrices(text: &str) -> Result<MatrixFile, FormatError> {
    let mut lines = Lines::new(text);
    let header = lines.next("the header `matrices 1`")?;
    let version = keyword_value(header, "matrices")?;
    if version.1 != "1" {
        return Err(header.error(version.0, format!("unsupported version {}", version.1)));
    }
    let char_line = lines.next("`char <0|p>`")?;
    let c = keyword_value(char_line, "char")?;
    let scalar = ScalarSpec::from_characteristic(parse_number(char_line, c)?)
        .map_err(|e| char_line.error(c.0, e.to_string()))?;
    let dim_line = lines.next("`dim <n>`")?;
    let dim: usize = parse_number(dim_line, keyword_value(dim_line, "dim")?)?;
    if dim == 0 {
        return Err(dim_line.error(1, "dimension must be positive"));
    }
    let mut matrices: Vec<(String, ExactMatrix)> = Vec::new();
    while lines.peek().is_some() {
        let head = lines.next("`matrix <name>`")?;
        let (col, name) = keyword_value(head, "matrix")?;
        if matrices.iter().any(|(n, _)| n == name) {
            return Err(head.error(col, format!("duplicate matrix name {name}")));
        }
        let name = name.to_string();
        let mut entries = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let line = lines.next(&format!("a row of matrix {name}"))?;
            let toks: Vec<(usize, &str)> = line.tokens().collect();
            if toks.len() != dim {
                return Err(line.error(1, format!("expected {dim} entries, found {}", toks.len())));
            }
            for t in toks {
                entries.push(parse_number::<BigInt>(line, t)?);
            }
        }
        matrices.push((name, ExactMatrix::from_entries(scalar, dim, dim, entries)?));
    }
    if matrices.is_empty() {
        return Err(FormatError::Parse {
            line: lines.last,
            column: 1,
            reason: "no matrices".into(),
        });
    }
    Ok(MatrixFile {
        scalar,
        dim,
        matrices,
    })
}

pub fn serialize_matrices(file: &MatrixFile) -> String {
    let mut s = format!(
        "matrices 1\nchar {}\ndim {}\n",
        file.scalar.characteristic(),
        file.dim
    );
    for (name, m) in &file.matrices {
        let _ = writeln!(s, "matrix {name}");
        s.push_str(&m.to_string());
    }
    s
}
