//! The `demaz` command line.
//!
//! Exit codes: 0 success or a true comparison, 1 a false comparison or a
//! failed validation, 2 unparsable input or arguments, 3 a domain error,
//! 4 a resource cap.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use demaz_core::demazure::{greedy_witness, star_with, stingy_witness, tll_with, tlr_with};
use demaz_core::oracle::{
    oracle_eval_s, oracle_greedy_max, oracle_star_sd, oracle_star_word, oracle_stingy_min, sd_line, MAX_ENUM_DEGREE,
};
use demaz_core::order::{bruhat_leq, weak_left_witness};
use demaz_core::perm::DEFAULT_MAX_WINDOW;
use demaz_core::{Comparison, Error, Limits, Permutation, Slipface};
use serde::Serialize;

use crate::grammar::{self, alias, format_ep, Expr, ExprError};
use crate::render::{render, Format, Mode, RenderSpec, Span};
use crate::sffile::{read_grid, write_grid, GridKind};

/// Version of every `--json` record.
pub const JSON_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "demaz", version, about = "Demazure products of eventually periodic permutations of Z")]
struct Cli {
    /// Print machine-readable JSON records
    #[arg(long, global = true)]
    json: bool,
    /// Largest window any intermediate permutation may use
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_MAX_WINDOW)]
    max_window: usize,
    /// Re-derive results through independent certificates
    #[arg(long, global = true)]
    extended_checks: bool,
    /// Print a named-family expression instead of the ep form when one fits
    #[arg(long, global = true)]
    alias: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Greedy product A * B
    Star {
        a: String,
        b: String,
    },
    /// Left stingy product A <| B
    Tll {
        a: String,
        b: String,
    },
    /// Right stingy product A |> B
    Tlr {
        a: String,
        b: String,
    },
    /// Ordinary composition, A after B
    Compose {
        a: String,
        b: String,
    },
    Inverse {
        a: String,
    },
    /// Compare two permutations
    Compare {
        rel: Rel,
        a: String,
        b: String,
    },
    /// Essential set of the counting function
    Ess {
        a: String,
    },
    /// Number of inversions
    Inv {
        a: String,
    },
    /// Render counting-function values
    Render {
        /// Permutation expression; omit when using --file
        expr: Option<String>,
        /// Slipface or rank-grid file ("-" for stdin)
        #[arg(long, conflicts_with = "expr")]
        file: Option<PathBuf>,
        #[arg(long = "a-range", value_name = "LO..HI", allow_hyphen_values = true, default_value = "-10..12")]
        a_range: Span,
        #[arg(long = "b-range", value_name = "LO..HI", allow_hyphen_values = true, default_value = "0..20")]
        b_range: Span,
        #[arg(long, default_value = "ascii")]
        format: Format,
        #[arg(long, default_value = "heatmap")]
        mode: Mode,
        /// Output file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rank-grid workflows
    Rankgrid {
        #[command(subcommand)]
        action: RankAction,
    },
    /// Check a raw permutation or a slipface file
    Validate {
        expr: Option<String>,
        #[arg(long, conflicts_with = "expr")]
        file: Option<PathBuf>,
    },
    #[command(hide = true)]
    Oracle {
        #[command(subcommand)]
        query: OracleCmd,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rel {
    Leq,
    LeqChi,
    Wleft,
    Wright,
}

#[derive(Subcommand, Debug)]
enum RankAction {
    /// Reconstruct the permutation of a submodular grid
    ToPerm { file: PathBuf },
    /// Greedy product of two grids
    Glue { first: PathBuf, second: PathBuf },
    /// Inversion count and g minus it for a finitary grid
    Dim {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
    },
}

#[derive(Subcommand, Debug)]
#[command(args_conflicts_with_subcommands = true)]
enum OracleCmd {
    Eval {
        a: String,
        #[arg(allow_hyphen_values = true)]
        x: i64,
        #[arg(allow_hyphen_values = true)]
        y: i64,
        #[arg(long, default_value_t = 256)]
        radius: i64,
    },
    StarSd {
        a: String,
        b: String,
        d: usize,
    },
    Word {
        a: String,
        #[arg(allow_hyphen_values = true)]
        word: Vec<i64>,
    },
    Greedy {
        a: String,
        b: String,
        d: usize,
    },
    Stingy {
        a: String,
        b: String,
        d: usize,
    },
}

/// A failed invocation, tagged by exit code.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Domain(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Parse(p) => Failure::Parse(format!("parse error {p}")),
            ExprError::Domain(d) => d.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Parse(format!("i/o error: {e}"))
    }
}

#[derive(Serialize)]
struct PermRecord<'a> {
    version: u32,
    period: i64,
    lo: i64,
    vals: &'a [i64],
    chi: i64,
    diff_bound: i64,
}

#[derive(Serialize)]
struct CompareRecord {
    version: u32,
    holds: bool,
    witness: Option<serde_json::Value>,
}

#[derive(Serialize)]
struct EssRecord {
    version: u32,
    points: Vec<serde_json::Value>,
    periodic: bool,
}

struct Ctx<'a> {
    cli: &'a Cli,
    limits: Limits,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

type Outcome = Result<i32, Failure>;

impl Ctx<'_> {
    fn perm(&self, text: &str) -> Result<Permutation, Failure> {
        Ok(grammar::parse_perm(text)?)
    }

    fn emit_perm(&mut self, p: &Permutation) -> Outcome {
        let line = if self.cli.json {
            let rec = PermRecord {
                version: JSON_VERSION,
                period: p.period(),
                lo: p.lo(),
                vals: p.vals(),
                chi: p.chi(),
                diff_bound: p.diff_bound(),
            };
            serde_json::to_string(&rec).expect("records serialize")
        } else if self.cli.alias {
            alias(p).unwrap_or_else(|| format_ep(p))
        } else {
            format_ep(p)
        };
        writeln!(self.out, "{line}")?;
        Ok(0)
    }

    fn emit_json<T: Serialize>(&mut self, rec: &T) -> std::io::Result<()> {
        writeln!(self.out, "{}", serde_json::to_string(rec).expect("records serialize"))
    }

    fn read_file(&mut self, path: &PathBuf) -> Result<String, Failure> {
        let mut text = String::new();
        if path.as_os_str() == "-" {
            self.stdin.read_to_string(&mut text)?;
        } else {
            text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
        }
        Ok(text)
    }

    fn slipface_file(&mut self, path: &PathBuf) -> Result<Slipface, Failure> {
        let text = self.read_file(path)?;
        let (kind, grid) =
            read_grid(&text).map_err(|e| Failure::Parse(format!("{}: line {}: {}", path.display(), e.pos, e.msg)))?;
        Ok(match kind {
            GridKind::Slipface => Slipface::from_grid(grid)?,
            GridKind::RankGrid => Slipface::from_rank_grid(grid)?,
        })
    }
}

/// Smallest `d <= MAX_ENUM_DEGREE` for which both inputs live in `S_d`.
fn common_degree(a: &Permutation, b: &Permutation) -> Option<usize> {
    (1..=MAX_ENUM_DEGREE).find(|&d| sd_line(a, d).is_ok() && sd_line(b, d).is_ok())
}

fn mismatch(what: &str) -> Failure {
    Failure::Domain(format!("extended check failed: {what}"))
}

fn check_product(cmd: &Cmd, a: &Permutation, b: &Permutation, result: &Permutation) -> Result<(), Failure> {
    let degree = common_degree(a, b);
    match cmd {
        Cmd::Star { .. } => {
            if greedy_witness(a, b)?.compose(b)? != *result {
                return Err(mismatch("greedy witness times B differs from the product"));
            }
            if let Some(d) = degree {
                if oracle_star_sd(a, b, d)? != *result {
                    return Err(mismatch("rank-table oracle disagrees"));
                }
            }
        }
        Cmd::Tll { .. } => {
            let beta1 = stingy_witness(a, &b.inverse())?;
            if a.compose(&beta1.inverse())? != *result {
                return Err(mismatch("stingy witness does not reproduce the product"));
            }
            if let Some(d) = degree {
                if oracle_stingy_min(a, &b.inverse(), d)? != *result {
                    return Err(mismatch("enumeration oracle disagrees"));
                }
            }
        }
        Cmd::Tlr { .. } => {
            let beta1 = stingy_witness(&b.inverse(), a)?;
            if b.inverse().compose(&beta1.inverse())?.inverse() != *result {
                return Err(mismatch("inverse identity fails"));
            }
        }
        _ => {}
    }
    Ok(())
}

fn compare(ctx: &mut Ctx, rel: Rel, a: &Permutation, b: &Permutation) -> Outcome {
    let (holds, witness, text) = match rel {
        Rel::Leq | Rel::LeqChi if matches!(rel, Rel::LeqChi) && a.chi() != b.chi() => (
            false,
            Some(serde_json::json!({ "chi_a": a.chi(), "chi_b": b.chi() })),
            format!("shift {} != {}", a.chi(), b.chi()),
        ),
        Rel::Leq | Rel::LeqChi => {
            let cmp = bruhat_leq(a, b);
            if ctx.cli.extended_checks {
                let (sa, sb) = (Slipface::from_perm(a), Slipface::from_perm(b));
                if sa.leq_grid(&sb).holds() != cmp.holds() {
                    return Err(mismatch("essential-set and grid comparators disagree"));
                }
            }
            match cmp {
                Comparison::Holds => (true, None, String::new()),
                Comparison::Fails(w) => (
                    false,
                    Some(serde_json::json!({ "a": w.a, "b": w.b, "lhs": w.lhs, "rhs": w.rhs })),
                    format!("witness a={} b={} lhs={} rhs={}", w.a, w.b, w.lhs, w.rhs),
                ),
            }
        }
        Rel::Wleft | Rel::Wright => {
            let found = match rel {
                Rel::Wleft => weak_left_witness(a, b),
                _ => weak_left_witness(&a.inverse(), &b.inverse()),
            };
            match found {
                None => (true, None, String::new()),
                Some((u, v)) => {
                    (false, Some(serde_json::json!({ "u": u, "v": v })), format!("inversion ({u},{v}) missing from B"))
                }
            }
        }
    };
    if ctx.cli.json {
        ctx.emit_json(&CompareRecord { version: JSON_VERSION, holds, witness })?;
    } else if holds {
        writeln!(ctx.out, "true")?;
    } else {
        writeln!(ctx.out, "false {text}")?;
    }
    Ok(if holds { 0 } else { 1 })
}

fn validate(ctx: &mut Ctx, expr: Option<&String>, file: Option<&PathBuf>) -> Outcome {
    let mut problems: Vec<String> = Vec::new();
    match (expr, file) {
        (Some(text), _) => {
            let parsed = grammar::parse(text).map_err(|e| Failure::Parse(format!("parse error {e}")))?;
            if let Expr::Ep(raw) = &parsed {
                if let Err(vs) = raw.validate() {
                    problems.extend(vs.iter().map(ToString::to_string));
                }
            }
            if problems.is_empty() {
                if let Err(e) = parsed.build() {
                    if e.is_resource() {
                        return Err(e.into());
                    }
                    problems.push(e.to_string());
                }
            }
        }
        (None, Some(path)) => {
            let text = ctx.read_file(path)?;
            let (kind, grid) = read_grid(&text).map_err(|e| Failure::Parse(format!("line {}: {}", e.pos, e.msg)))?;
            let built = match kind {
                GridKind::Slipface => Slipface::from_grid(grid),
                GridKind::RankGrid => Slipface::from_rank_grid(grid),
            };
            match built {
                Err(Error::NotASlipface(vs)) => problems.extend(vs.iter().map(ToString::to_string)),
                Err(e) => problems.push(e.to_string()),
                Ok(s) => {
                    if let Some((a, b, d)) = s.submodularity_violation() {
                        writeln!(ctx.out, "note: not submodular, delta({a},{b}) = {d}")?;
                    }
                }
            }
        }
        (None, None) => return Err(Failure::Parse("validate needs an expression or --file".into())),
    }
    if problems.is_empty() {
        writeln!(ctx.out, "ok")?;
        return Ok(0);
    }
    for p in &problems {
        writeln!(ctx.out, "violation: {p}")?;
    }
    Ok(1)
}

fn rankgrid(ctx: &mut Ctx, action: &RankAction) -> Outcome {
    match action {
        RankAction::ToPerm { file } => {
            let p = ctx.slipface_file(file)?.to_perm_with(&ctx.limits)?;
            ctx.emit_perm(&p)
        }
        RankAction::Glue { first, second } => {
            let (s, t) = (ctx.slipface_file(first)?, ctx.slipface_file(second)?);
            let glued = s.star_with(&t, &ctx.limits)?;
            write!(ctx.out, "{}", write_grid(GridKind::Slipface, glued.grid()))?;
            Ok(0)
        }
        RankAction::Dim { file, g } => {
            let p = ctx.slipface_file(file)?.to_perm_with(&ctx.limits)?;
            let inv = p.inv_count()? as i64;
            if ctx.cli.json {
                ctx.emit_json(&serde_json::json!({ "version": JSON_VERSION, "inv": inv, "dim": g - inv }))?;
            } else {
                writeln!(ctx.out, "inv={inv}")?;
                writeln!(ctx.out, "dim={}", g - inv)?;
            }
            Ok(0)
        }
    }
}

fn oracle(ctx: &mut Ctx, query: &OracleCmd) -> Outcome {
    match query {
        OracleCmd::Eval { a, x, y, radius } => {
            let v = oracle_eval_s(&ctx.perm(a)?, *x, *y, *radius)?;
            writeln!(ctx.out, "{v}")?;
            Ok(0)
        }
        OracleCmd::StarSd { a, b, d } => {
            let p = oracle_star_sd(&ctx.perm(a)?, &ctx.perm(b)?, *d)?;
            ctx.emit_perm(&p)
        }
        OracleCmd::Word { a, word } => {
            let p = oracle_star_word(&ctx.perm(a)?, word)?;
            ctx.emit_perm(&p)
        }
        OracleCmd::Greedy { a, b, d } => {
            let p = oracle_greedy_max(&ctx.perm(a)?, &ctx.perm(b)?, *d)?;
            ctx.emit_perm(&p)
        }
        OracleCmd::Stingy { a, b, d } => {
            let p = oracle_stingy_min(&ctx.perm(a)?, &ctx.perm(b)?, *d)?;
            ctx.emit_perm(&p)
        }
    }
}

fn dispatch(ctx: &mut Ctx) -> Outcome {
    let cli = ctx.cli;
    let limits = ctx.limits;
    match &cli.cmd {
        cmd @ (Cmd::Star { a, b } | Cmd::Tll { a, b } | Cmd::Tlr { a, b } | Cmd::Compose { a, b }) => {
            let (pa, pb) = (ctx.perm(a)?, ctx.perm(b)?);
            let result = match cmd {
                Cmd::Star { .. } => star_with(&pa, &pb, &limits)?,
                Cmd::Tll { .. } => tll_with(&pa, &pb, &limits)?,
                Cmd::Tlr { .. } => tlr_with(&pa, &pb, &limits)?,
                _ => pa.compose_with(&pb, &limits)?,
            };
            if cli.extended_checks {
                check_product(cmd, &pa, &pb, &result)?;
            }
            ctx.emit_perm(&result)
        }
        Cmd::Inverse { a } => {
            let p = ctx.perm(a)?.inverse();
            ctx.emit_perm(&p)
        }
        Cmd::Compare { rel, a, b } => {
            let (pa, pb) = (ctx.perm(a)?, ctx.perm(b)?);
            compare(ctx, *rel, &pa, &pb)
        }
        Cmd::Ess { a } => {
            let ess = Slipface::from_perm(&ctx.perm(a)?).ess_set();
            if cli.json {
                let points =
                    ess.points.iter().map(|p| serde_json::json!({ "a": p.a, "b": p.b, "value": p.value })).collect();
                ctx.emit_json(&EssRecord { version: JSON_VERSION, points, periodic: ess.periodic })?;
            } else {
                for p in &ess.points {
                    writeln!(ctx.out, "({},{}) value={}", p.a, p.b, p.value)?;
                }
                if ess.periodic {
                    writeln!(ctx.out, "periodic")?;
                }
            }
            Ok(0)
        }
        Cmd::Inv { a } => {
            let n = ctx.perm(a)?.inv_count()?;
            if cli.json {
                ctx.emit_json(&serde_json::json!({ "version": JSON_VERSION, "inv": n }))?;
            } else {
                writeln!(ctx.out, "{n}")?;
            }
            Ok(0)
        }
        Cmd::Render { expr, file, a_range, b_range, format, mode, output } => {
            let spec = RenderSpec { a: *a_range, b: *b_range, format: *format, mode: *mode };
            let bytes = match (expr, file) {
                (Some(e), _) => {
                    let p = ctx.perm(e)?;
                    render(&spec, |a, b| p.eval_s(a, b))
                }
                (None, Some(path)) => {
                    let s = ctx.slipface_file(path)?;
                    render(&spec, |a, b| s.eval(a, b))
                }
                (None, None) => return Err(Failure::Parse("render needs an expression or --file".into())),
            };
            match output {
                Some(path) => std::fs::write(path, bytes)
                    .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))?,
                None => ctx.out.write_all(&bytes)?,
            }
            Ok(0)
        }
        Cmd::Rankgrid { action } => rankgrid(ctx, action),
        Cmd::Validate { expr, file } => validate(ctx, expr.as_ref(), file.as_ref()),
        Cmd::Oracle { query } => oracle(ctx, query),
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, limits: Limits { max_window: cli.max_window }, stdin, out };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "demaz: {}", f.message());
            f.code()
        }
    }
}
