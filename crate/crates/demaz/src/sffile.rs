//! Line-oriented slipface and rank-grid files.
//!
//! ```text
//! slipface chi=<chi> k=<k> band=<N> box=<aLo>..<aHi>x<bLo>..<bHi>
//! <row for a = aLo: one value per b>
//! ...
//! ```
//!
//! A rank grid uses the header word `rankgrid`; its `band` is the offset
//! beyond which the table must equal the asymptote.

use std::fmt::Write as _;

use demaz_core::Grid;

use crate::grammar::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    Slipface,
    RankGrid,
}

impl GridKind {
    fn word(self) -> &'static str {
        match self {
            GridKind::Slipface => "slipface",
            GridKind::RankGrid => "rankgrid",
        }
    }
}

/// Positions in file errors are line numbers, counted from 1.
fn line_err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos: line, msg: msg.into() })
}

fn field<'a>(token: Option<&'a str>, key: &str, line: usize) -> Result<&'a str, ParseError> {
    match token.and_then(|t| t.strip_prefix(key)).and_then(|t| t.strip_prefix('=')) {
        Some(v) => Ok(v),
        None => line_err(line, format!("expected '{key}=' in header")),
    }
}

fn int(text: &str, line: usize) -> Result<i64, ParseError> {
    text.parse().or_else(|_| line_err(line, format!("bad integer '{text}'")))
}

fn range(text: &str, line: usize) -> Result<(i64, i64), ParseError> {
    let Some((lo, hi)) = text.split_once("..") else {
        return line_err(line, format!("bad range '{text}'"));
    };
    let (lo, hi) = (int(lo, line)?, int(hi, line)?);
    if lo > hi {
        return line_err(line, format!("empty range '{text}'"));
    }
    Ok((lo, hi))
}

pub fn read_grid(text: &str) -> Result<(GridKind, Grid), ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((hl, header)) = lines.next() else {
        return line_err(1, "missing header");
    };
    let mut tokens = header.split_whitespace();
    let kind = match tokens.next() {
        Some("slipface") => GridKind::Slipface,
        Some("rankgrid") => GridKind::RankGrid,
        _ => return line_err(hl, "header must start with 'slipface' or 'rankgrid'"),
    };
    let chi = int(field(tokens.next(), "chi", hl)?, hl)?;
    let period = int(field(tokens.next(), "k", hl)?, hl)?;
    let band = int(field(tokens.next(), "band", hl)?, hl)?;
    let boxed = field(tokens.next(), "box", hl)?;
    if tokens.next().is_some() {
        return line_err(hl, "trailing header fields");
    }
    let Some((a, b)) = boxed.split_once('x') else {
        return line_err(hl, "box must look like aLo..aHixbLo..bHi");
    };
    let ((a_lo, a_hi), (b_lo, b_hi)) = (range(a, hl)?, range(b, hl)?);
    let width = (b_hi - b_lo + 1) as usize;
    let mut values = Vec::new();
    let mut rows = 0;
    for (ln, row) in lines {
        let cells = row
            .split_whitespace()
            .map(|t| match t.parse::<i64>() {
                Ok(v) if v >= 0 => Ok(v),
                _ => line_err(ln, format!("expected a nonnegative integer, found '{t}'")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if cells.len() != width {
            return line_err(ln, format!("row has {} values, expected {width}", cells.len()));
        }
        values.extend(cells);
        rows += 1;
    }
    if rows != a_hi - a_lo + 1 {
        return line_err(hl, format!("expected {} rows, found {rows}", a_hi - a_lo + 1));
    }
    Ok((kind, Grid { chi, period, band, a_lo, a_hi, b_lo, b_hi, values }))
}

pub fn write_grid(kind: GridKind, g: &Grid) -> String {
    let mut out = format!(
        "{} chi={} k={} band={} box={}..{}x{}..{}\n",
        kind.word(),
        g.chi,
        g.period,
        g.band,
        g.a_lo,
        g.a_hi,
        g.b_lo,
        g.b_hi
    );
    let width = (g.b_hi - g.b_lo + 1) as usize;
    for row in g.values.chunks(width) {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

/// The counting function of `p` tabulated as a rank grid: band equal to the
/// displacement bound, box wide enough to hold two periods on every diagonal
/// of the band.
pub fn rank_grid_of(p: &demaz_core::Permutation) -> Grid {
    let m = p.diff_bound().max(1);
    let pad = 2 * m + 2 * p.period();
    let (lo, hi) = (p.lo() - pad, p.hi() + pad);
    Grid::tabulate(p.chi(), p.period(), m, (lo, hi), (lo, hi), |a, b| p.eval_s(a, b))
}
