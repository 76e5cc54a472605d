//! Line-oriented text formats for quivers and representations.
//!
//! ```text
//! # quiver file
//! quiver 2
//! arrow k1 1 2
//! arrow k2 1 2
//!
//! # representation file
//! rep over Q
//! dims 1 2
//! map k1 2x1
//! 1
//! 0
//! map k2 2x1
//! 0
//! 1
//! ```
//!
//! `#` starts a comment anywhere on a line. Entries are integers or `a/b`;
//! maps with zero rows or zero columns have no entry lines.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::linalg::{FieldTag, Matrix, Scalar};
use crate::quiver::{Arrow, DimVector, Quiver};
use crate::rep::Representation;

/// A significant line: 1-based line number and the tokens with their
/// 1-based starting columns.
struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

impl Line<'_> {
    fn error(&self, token: usize, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(token).map_or(1, |t| t.0);
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn word(&self, i: usize) -> Option<&str> {
        self.tokens.get(i).map(|t| t.1)
    }

    fn expect_len(&self, n: usize, usage: &str) -> Result<(), ParseError> {
        if self.tokens.len() != n {
            let at = self.tokens.len().min(n);
            return Err(self.error(at, format!("expected `{usage}`")));
        }
        Ok(())
    }

    fn number<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T, ParseError> {
        self.word(i)
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| self.error(i, format!("expected {what}")))
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in content.char_indices() {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push((s + 1, &content[s..pos]));
                        start = None;
                    }
                    _ => {}
                }
            }
            if let Some(s) = start {
                tokens.push((s + 1, &content[s..]));
            }
            (!tokens.is_empty()).then_some(Line {
                number: i + 1,
                tokens,
            })
        })
        .collect()
}

fn end_of_input(text: &str) -> ParseError {
    ParseError {
        line: text.lines().count().max(1),
        column: 1,
        message: "unexpected end of input".into(),
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver, ParseError> {
    let lines = lines(text);
    let header = lines.first().ok_or_else(|| end_of_input(text))?;
    if header.word(0) != Some("quiver") {
        return Err(header.error(0, "expected `quiver <n>`"));
    }
    header.expect_len(2, "quiver <n>")?;
    let n: usize = header.number(1, "a vertex count")?;

    let mut arrows = Vec::new();
    for line in &lines[1..] {
        if line.word(0) != Some("arrow") {
            return Err(line.error(0, "expected `arrow <label> <tail> <head>`"));
        }
        line.expect_len(4, "arrow <label> <tail> <head>")?;
        let label = line.word(1).unwrap().to_string();
        let tail: usize = line.number(2, "a tail vertex")?;
        let head: usize = line.number(3, "a head vertex")?;
        for (i, v) in [(2, tail), (3, head)] {
            if v == 0 || v > n {
                return Err(line.error(i, format!("vertex {v} out of range 1..={n}")));
            }
        }
        if tail == head {
            return Err(line.error(2, format!("arrow {label} is a loop")));
        }
        if arrows.iter().any(|a: &Arrow| a.label == label) {
            return Err(line.error(1, format!("duplicate arrow label {label}")));
        }
        arrows.push(Arrow { label, tail, head });
    }
    Quiver::new(n, arrows).map_err(|e| header.error(0, e.to_string()))
}

pub fn parse_representation(text: &str, quiver: &Quiver) -> Result<Representation, ParseError> {
    let lines = lines(text);
    let mut it = lines.iter();

    let header = it.next().ok_or_else(|| end_of_input(text))?;
    if header.word(0) != Some("rep") || header.word(1) != Some("over") {
        return Err(header.error(0, "expected `rep over Q` or `rep over F<p>`"));
    }
    header.expect_len(3, "rep over <field>")?;
    let field: FieldTag = header
        .word(2)
        .unwrap()
        .parse()
        .map_err(|e: crate::Error| header.error(2, e.to_string()))?;

    let dims_line = it.next().ok_or_else(|| end_of_input(text))?;
    if dims_line.word(0) != Some("dims") {
        return Err(dims_line.error(0, "expected `dims d1 ... dn`"));
    }
    let n = quiver.vertex_count();
    dims_line.expect_len(n + 1, &format!("dims with {n} entries"))?;
    let dims: Vec<i64> = (1..=n)
        .map(|i| dims_line.number::<u32>(i, "a nonnegative dimension").map(i64::from))
        .collect::<Result<_, _>>()?;
    let dims = DimVector::from(dims);

    let mut maps: Vec<Option<Matrix>> = vec![None; quiver.arrows().len()];
    while let Some(line) = it.next() {
        if line.word(0) != Some("map") {
            return Err(line.error(0, "expected `map <label> <rows>x<cols>`"));
        }
        line.expect_len(3, "map <label> <rows>x<cols>")?;
        let label = line.word(1).unwrap();
        let k = quiver
            .arrow_index(label)
            .ok_or_else(|| line.error(1, format!("unknown arrow {label}")))?;
        if maps[k].is_some() {
            return Err(line.error(1, format!("map for arrow {label} given twice")));
        }
        let (rows, cols) = line
            .word(2)
            .unwrap()
            .split_once('x')
            .and_then(|(r, c)| Some((r.parse::<usize>().ok()?, c.parse::<usize>().ok()?)))
            .ok_or_else(|| line.error(2, "expected a shape `<rows>x<cols>`"))?;
        let arrow = &quiver.arrows()[k];
        let expected = (dims.at(arrow.head) as usize, dims.at(arrow.tail) as usize);
        if (rows, cols) != expected {
            return Err(line.error(
                2,
                format!(
                    "map {label} is {rows}x{cols}, expected {}x{} (dim {} x dim {})",
                    expected.0, expected.1, arrow.head, arrow.tail
                ),
            ));
        }
        let mut entries: Vec<Scalar> = Vec::with_capacity(rows * cols);
        // A map with no columns has no entries and no entry lines.
        let entry_lines = if cols == 0 { 0 } else { rows };
        for _ in 0..entry_lines {
            let row = it.next().ok_or_else(|| end_of_input(text))?;
            if row.tokens.len() != cols {
                return Err(row.error(
                    row.tokens.len().min(cols),
                    format!("expected {cols} entries in a row of map {label}"),
                ));
            }
            for (i, &(_, tok)) in row.tokens.iter().enumerate() {
                entries.push(field.parse_scalar(tok).map_err(|m| row.error(i, m))?);
            }
        }
        maps[k] = Some(Matrix::from_entries(field, rows, cols, entries).expect("validated shape"));
    }

    let maps = maps
        .into_iter()
        .zip(quiver.arrows())
        .map(|(m, a)| {
            m.ok_or_else(|| ParseError {
                line: header.number,
                column: 1,
                message: format!("missing map for arrow {}", a.label),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Representation::new(quiver.clone(), field, dims, maps).map_err(|e| header.error(0, e.to_string()))
}

pub fn print_quiver(q: &Quiver) -> String {
    let mut out = format!("quiver {}\n", q.vertex_count());
    for a in q.arrows() {
        writeln!(out, "arrow {} {} {}", a.label, a.tail, a.head).unwrap();
    }
    out
}

pub fn print_representation(x: &Representation) -> String {
    let mut out = format!("rep over {}\n", x.field());
    let dims: Vec<String> = x.dims().iter().map(ToString::to_string).collect();
    writeln!(out, "dims {}", dims.join(" ")).unwrap();
    for (a, m) in x.quiver().arrows().iter().zip(x.maps()) {
        writeln!(out, "map {} {}x{}", a.label, m.rows(), m.cols()).unwrap();
        if m.cols() > 0 {
            write!(out, "{m}").unwrap();
        }
    }
    out
}
