//! Text formats for parity-check matrices.
//!
//! * alist (MacKay): `n m`, `max_col_deg max_row_deg`, the `n` column degrees,
//!   the `m` row degrees, then `n` lines of 1-indexed check neighbours per bit
//!   and `m` lines of 1-indexed bit neighbours per check. Zero tokens are padding.
//! * dense: `rows cols` followed by `rows` lines of `cols` characters from `{0,1}`.
//!   Whitespace inside a row is ignored.

use std::fmt::Write as _;

use super::ClassicalCode;
use crate::error::{Error, Result};
use crate::f2::BitMatrix;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Alist,
    Dense,
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect()
}

/// Whitespace-separated tokens with 1-based column positions.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<(usize, usize)>> {
    tokens(line)
        .into_iter()
        .map(|(col, tok)| {
            tok.parse::<usize>().map(|v| (col, v)).map_err(|_| {
                Error::parse(
                    line_no,
                    col,
                    format!("expected a non-negative integer, found {tok:?}"),
                )
            })
        })
        .collect()
}

fn expect_count(line_no: usize, values: &[(usize, usize)], count: usize, what: &str) -> Result<()> {
    if values.len() != count {
        let col = values.get(count).map_or(1, |v| v.0);
        return Err(Error::parse(
            line_no,
            col,
            format!("expected {count} {what}, found {}", values.len()),
        ));
    }
    Ok(())
}

pub fn parse_alist(text: &str) -> Result<ClassicalCode> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let mut next_line = |what: &str| {
        it.next()
            .copied()
            .ok_or_else(|| Error::parse(text.lines().count() + 1, 1, format!("missing {what}")))
    };

    let (ln, l) = next_line("header line")?;
    let header = parse_numbers(ln, l)?;
    expect_count(ln, &header, 2, "header values (n m)")?;
    let (n, m) = (header[0].1, header[1].1);
    if n == 0 || m == 0 {
        return Err(Error::EmptyMatrix);
    }

    let (ln, l) = next_line("maximum degree line")?;
    let maxdeg = parse_numbers(ln, l)?;
    expect_count(ln, &maxdeg, 2, "maximum degrees")?;
    let (max_col, max_row) = (maxdeg[0].1, maxdeg[1].1);

    let (ln, l) = next_line("column degree line")?;
    let col_deg = parse_numbers(ln, l)?;
    expect_count(ln, &col_deg, n, "column degrees")?;
    let (ln, l) = next_line("row degree line")?;
    let row_deg = parse_numbers(ln, l)?;
    expect_count(ln, &row_deg, m, "row degrees")?;

    let declared_max_col = col_deg.iter().map(|v| v.1).max().unwrap_or(0);
    let declared_max_row = row_deg.iter().map(|v| v.1).max().unwrap_or(0);
    if declared_max_col != max_col || declared_max_row != max_row {
        return Err(Error::InconsistentDegrees(format!(
            "maximum degrees ({max_col}, {max_row}) disagree with degree lists ({declared_max_col}, {declared_max_row})"
        )));
    }

    let mut from_cols = BitMatrix::zeros(m, n);
    for (j, &(_, degree)) in col_deg.iter().enumerate() {
        let (ln, l) = next_line("column neighbour line")?;
        let mut seen = 0;
        for (col, v) in parse_numbers(ln, l)? {
            if v == 0 {
                continue;
            }
            if v > m {
                return Err(Error::parse(
                    ln,
                    col,
                    format!("check index {v} exceeds m = {m}"),
                ));
            }
            if from_cols.get(v - 1, j) {
                return Err(Error::parse(ln, col, format!("duplicate check index {v}")));
            }
            from_cols.set(v - 1, j, true);
            seen += 1;
        }
        if seen != degree {
            return Err(Error::InconsistentDegrees(format!(
                "bit {} declares degree {degree} but lists {seen} checks (line {ln})",
                j + 1,
            )));
        }
    }

    let mut from_rows = BitMatrix::zeros(m, n);
    for (i, &(_, degree)) in row_deg.iter().enumerate() {
        let (ln, l) = next_line("row neighbour line")?;
        let mut seen = 0;
        for (col, v) in parse_numbers(ln, l)? {
            if v == 0 {
                continue;
            }
            if v > n {
                return Err(Error::parse(
                    ln,
                    col,
                    format!("bit index {v} exceeds n = {n}"),
                ));
            }
            if from_rows.get(i, v - 1) {
                return Err(Error::parse(ln, col, format!("duplicate bit index {v}")));
            }
            from_rows.set(i, v - 1, true);
            seen += 1;
        }
        if seen != degree {
            return Err(Error::InconsistentDegrees(format!(
                "check {} declares degree {degree} but lists {seen} bits (line {ln})",
                i + 1,
            )));
        }
    }

    if let Some(&(ln, _)) = it.next() {
        return Err(Error::parse(ln, 1, "trailing content after alist body"));
    }
    if from_cols != from_rows {
        return Err(Error::InconsistentDegrees(
            "column neighbour lists disagree with row neighbour lists".into(),
        ));
    }
    ClassicalCode::from_matrix(from_rows)
}

pub fn emit_alist(code: &ClassicalCode) -> String {
    let h = code.matrix();
    let (m, n) = (h.rows(), h.cols());
    let cw = h.col_weights();
    let rw = h.row_weights();
    let ht = h.transpose();
    let join =
        |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let _ = writeln!(
        out,
        "{} {}",
        cw.iter().max().copied().unwrap_or(0),
        rw.iter().max().copied().unwrap_or(0)
    );
    let _ = writeln!(out, "{}", join(&mut cw.iter().copied()));
    let _ = writeln!(out, "{}", join(&mut rw.iter().copied()));
    for j in 0..n {
        let _ = writeln!(out, "{}", join(&mut ht.row(j).ones_iter().map(|i| i + 1)));
    }
    for i in 0..m {
        let _ = writeln!(out, "{}", join(&mut h.row(i).ones_iter().map(|j| j + 1)));
    }
    out
}

/// Parses the dense format into a raw matrix (which may be empty).
pub fn parse_dense_matrix(text: &str) -> Result<BitMatrix> {
    let lines = content_lines(text);
    let Some(&(ln, l)) = lines.first() else {
        return Err(Error::parse(1, 1, "missing header line"));
    };
    let header = parse_numbers(ln, l)?;
    expect_count(ln, &header, 2, "header values (rows cols)")?;
    let (rows, cols) = (header[0].1, header[1].1);
    let body = &lines[1..];
    if body.len() != rows {
        let at = body.get(rows).map_or(text.lines().count() + 1, |b| b.0);
        return Err(Error::parse(
            at,
            1,
            format!("expected {rows} matrix rows, found {}", body.len()),
        ));
    }
    let mut m = BitMatrix::zeros(rows, cols);
    for (i, &(ln, l)) in body.iter().enumerate() {
        let mut j = 0;
        for (pos, ch) in l.char_indices() {
            match ch {
                '0' | '1' => {
                    if j == cols {
                        return Err(Error::parse(
                            ln,
                            pos + 1,
                            format!("row longer than {cols} entries"),
                        ));
                    }
                    if ch == '1' {
                        m.set(i, j, true);
                    }
                    j += 1;
                }
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::parse(
                        ln,
                        pos + 1,
                        format!("unexpected character {c:?}"),
                    ))
                }
            }
        }
        if j != cols {
            return Err(Error::parse(
                ln,
                l.len() + 1,
                format!("row has {j} entries, expected {cols}"),
            ));
        }
    }
    Ok(m)
}

pub fn parse_dense(text: &str) -> Result<ClassicalCode> {
    ClassicalCode::from_matrix(parse_dense_matrix(text)?)
}

/// Dense text for any matrix, including the HX/HZ outputs of a product.
pub fn emit_dense_matrix(h: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", h.rows(), h.cols());
    for r in h.row_iter() {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn emit_dense(code: &ClassicalCode) -> String {
    emit_dense_matrix(code.matrix())
}

/// Guesses the format from the second content line: a row of exactly `cols`
/// 0/1 characters means dense, anything else alist.
pub fn sniff_format(text: &str) -> InputFormat {
    let lines = content_lines(text);
    let header_cols = lines
        .first()
        .and_then(|(ln, h)| parse_numbers(*ln, h).ok())
        .and_then(|v| v.get(1).map(|x| x.1));
    match (lines.get(1), header_cols) {
        (Some((_, l)), Some(cols)) => {
            let only_bits = l.chars().all(|c| c == '0' || c == '1' || c.is_whitespace());
            let bits = l.chars().filter(|c| !c.is_whitespace()).count();
            if only_bits && bits == cols {
                InputFormat::Dense
            } else {
                InputFormat::Alist
            }
        }
        _ => InputFormat::Dense,
    }
}

/// Parses with an explicit format, or sniffs one when `format` is `None`.
/// A sniffed dense guess falls back to alist when dense parsing fails.
pub fn parse_auto(text: &str, format: Option<InputFormat>) -> Result<ClassicalCode> {
    match format {
        Some(InputFormat::Alist) => parse_alist(text),
        Some(InputFormat::Dense) => parse_dense(text),
        None => match sniff_format(text) {
            InputFormat::Alist => parse_alist(text),
            InputFormat::Dense => parse_dense(text).or_else(|e| parse_alist(text).map_err(|_| e)),
        },
    }
}
