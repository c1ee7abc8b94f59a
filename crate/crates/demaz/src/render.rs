//! Deterministic text and image renderings of slipface values.
//!
//! `Heatmap` shows `s(a, b)` with rows indexed by `a` and columns by `b`.
//! `Profiles` superimposes the graphs `y = s(x, b)` for every `b` in range;
//! in the ASCII and PGM forms each cell records how many graphs pass
//! through it.

use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
    Pgm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Heatmap,
    Profiles,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            "pgm" => Ok(Format::Pgm),
            _ => Err(format!("unknown format '{s}' (ascii, svg, pgm)")),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "heatmap" => Ok(Mode::Heatmap),
            "profiles" => Ok(Mode::Profiles),
            _ => Err(format!("unknown mode '{s}' (heatmap, profiles)")),
        }
    }
}

/// Inclusive integer interval written `lo..hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    fn len(self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    fn iter(self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got '{s}'"))?;
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad integer '{lo}'"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad integer '{hi}'"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub a: Span,
    pub b: Span,
    pub format: Format,
    pub mode: Mode,
}

const CELL: usize = 10;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];
const COUNT_GLYPHS: &[u8] = b"123456789abcdefghijklmnopqrstuvwxyz";

struct Table {
    rows: Vec<Vec<i64>>,
    max: i64,
}

fn tabulate<F: Fn(i64, i64) -> i64>(spec: &RenderSpec, f: F) -> Table {
    let rows: Vec<Vec<i64>> = spec.a.iter().map(|a| spec.b.iter().map(|b| f(a, b)).collect()).collect();
    let max = rows.iter().flatten().copied().max().unwrap_or(0);
    Table { rows, max }
}

/// Number of profile curves through each `(x, y)`, indexed `[y][x]`.
fn profile_counts(t: &Table, spec: &RenderSpec) -> Vec<Vec<usize>> {
    let mut counts = vec![vec![0usize; spec.a.len()]; t.max as usize + 1];
    for (x, row) in t.rows.iter().enumerate() {
        for &y in row {
            counts[y as usize][x] += 1;
        }
    }
    counts
}

fn shade(v: i64, max: i64) -> i64 {
    255 - v * 255 / max.max(1)
}

pub fn render<F: Fn(i64, i64) -> i64>(spec: &RenderSpec, f: F) -> Vec<u8> {
    let t = tabulate(spec, f);
    let text = match (spec.format, spec.mode) {
        (Format::Ascii, Mode::Heatmap) => ascii_heatmap(&t, spec),
        (Format::Ascii, Mode::Profiles) => ascii_profiles(&t, spec),
        (Format::Svg, Mode::Heatmap) => svg_heatmap(&t, spec),
        (Format::Svg, Mode::Profiles) => svg_profiles(&t, spec),
        (Format::Pgm, Mode::Heatmap) => pgm_heatmap(&t, spec),
        (Format::Pgm, Mode::Profiles) => pgm_profiles(&t, spec),
    };
    text.into_bytes()
}

fn header(kind: &str, spec: &RenderSpec) -> String {
    format!("# {kind} a={}..{} b={}..{}\n", spec.a.lo, spec.a.hi, spec.b.lo, spec.b.hi)
}

fn ascii_heatmap(t: &Table, spec: &RenderSpec) -> String {
    let mut out = header("heatmap", spec);
    let wa = spec.a.iter().map(|a| a.to_string().len()).max().unwrap();
    let wv = t.max.to_string().len().max(spec.b.iter().map(|b| b.to_string().len()).max().unwrap());
    let _ = write!(out, "{:>wa$} |", "");
    for b in spec.b.iter() {
        let _ = write!(out, " {b:>wv$}");
    }
    out.push('\n');
    for (a, row) in spec.a.iter().zip(&t.rows) {
        let _ = write!(out, "{a:>wa$} |");
        for v in row {
            let _ = write!(out, " {v:>wv$}");
        }
        out.push('\n');
    }
    out
}

fn ascii_profiles(t: &Table, spec: &RenderSpec) -> String {
    let mut out = header("profiles", spec);
    let counts = profile_counts(t, spec);
    let wy = t.max.to_string().len();
    for (y, row) in counts.iter().enumerate().rev() {
        let _ = write!(out, "{y:>wy$} |");
        for &c in row {
            out.push(match c {
                0 => '.',
                c if c <= COUNT_GLYPHS.len() => COUNT_GLYPHS[c - 1] as char,
                _ => '#',
            });
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{:>wy$} +{}", "", "-".repeat(spec.a.len()));
    out
}

fn svg_open(w: usize, h: usize) -> String {
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n")
}

fn svg_heatmap(t: &Table, spec: &RenderSpec) -> String {
    let mut out = svg_open(spec.b.len() * CELL, spec.a.len() * CELL);
    for (i, row) in t.rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let g = shade(v, t.max);
            let _ = writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"rgb({g},{g},{g})\"/>",
                j * CELL,
                i * CELL
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn svg_profiles(t: &Table, spec: &RenderSpec) -> String {
    let (w, h) = ((spec.a.len() - 1).max(1) * CELL, t.max.max(1) as usize * CELL);
    let mut out = svg_open(w, h);
    let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\" stroke=\"black\"/>");
    for j in 0..spec.b.len() {
        let points: Vec<String> = t
            .rows
            .iter()
            .enumerate()
            .map(|(x, row)| format!("{},{}", x * CELL, (t.max - row[j]) as usize * CELL))
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\"/>",
            points.join(" "),
            PALETTE[j % PALETTE.len()]
        );
    }
    out.push_str("</svg>\n");
    out
}

fn pgm_heatmap(t: &Table, spec: &RenderSpec) -> String {
    let mut out = format!("P2\n{} {}\n255\n", spec.b.len(), spec.a.len());
    for row in &t.rows {
        let px: Vec<String> = row.iter().map(|&v| shade(v, t.max).to_string()).collect();
        let _ = writeln!(out, "{}", px.join(" "));
    }
    out
}

fn pgm_profiles(t: &Table, spec: &RenderSpec) -> String {
    let counts = profile_counts(t, spec);
    let mut out = format!("P2\n{} {}\n255\n", spec.a.len(), counts.len());
    let curves = spec.b.len() as i64;
    for row in counts.iter().rev() {
        let px: Vec<String> = row.iter().map(|&c| shade(c as i64, curves).to_string()).collect();
        let _ = writeln!(out, "{}", px.join(" "));
    }
    out
}
