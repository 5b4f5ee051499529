//! The `mzvw` command line: exact algebra, single evaluations, identity
//! checks and batch sweeps.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 on
//! invalid input.

mod config;
mod suite;

pub use config::{parse_rational, SweepConfig};
pub use suite::{check_duality, check_homomorphism, run_relation, Relation, Selection, Tally};

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Rational;

use crate::algebra::{stuffle, HPoly, Word};
use crate::error::{Error, Result};
use crate::genfun::{eval_f, eval_g, GenFun, Lemma33Part, RelationReport, Thm31Case};
use crate::index::{dual_index, BiSeq, Index};
use crate::numeric::{adaptive, eval_mzv, eval_zeta_tilde, EvalParams, NumValue, TailMode};

#[derive(Debug, Parser)]
#[command(
    name = "mzvw",
    version,
    about = "Multiple zeta values: harmonic algebra, Ohno's relation and generating functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Harmonic (stuffle) product of two words or polynomials, e.g. `xy xy`.
    Stuffle { w1: String, w2: String },
    /// Dual of an admissible index, e.g. `3,1`.
    Dual { index: String },
    /// Evaluate a zeta value, a polynomial in x and y, or f/g at lambda.
    Eval(EvalCmd),
    /// Check one family of identities.
    Check(CheckCmd),
    /// Run the checks listed in a key=value config file.
    Sweep {
        config: PathBuf,
        /// Write the JSON-lines report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TailArg {
    BoundOnly,
    Richardson,
    Enclosure,
}

impl From<TailArg> for TailMode {
    fn from(t: TailArg) -> TailMode {
        match t {
            TailArg::BoundOnly => TailMode::BoundOnly,
            TailArg::Richardson => TailMode::Richardson,
            TailArg::Enclosure => TailMode::Enclosure,
        }
    }
}

#[derive(Debug, Args)]
struct NumArgs {
    /// Working precision in bits.
    #[arg(long, default_value_t = 256)]
    prec: u32,
    /// Starting summation cutoff; raised tenfold (up to 10^7) while the error exceeds tol/4.
    #[arg(long, default_value_t = 100_000)]
    cutoff: u64,
    #[arg(long, value_enum, default_value = "enclosure")]
    tail_mode: TailArg,
    /// Absolute tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// One JSON object per line.
    #[arg(long)]
    json: bool,
}

impl NumArgs {
    fn params(&self) -> Result<EvalParams> {
        let p = EvalParams {
            prec_bits: self.prec,
            cutoff: self.cutoff,
            tail_mode: self.tail_mode.into(),
        };
        p.validate()?;
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "tolerance {} must be positive",
                self.tol
            )));
        }
        Ok(p)
    }
}

#[derive(Debug, Args)]
struct EvalCmd {
    /// Admissible index such as `2,1`.
    #[arg(long, conflicts_with_all = ["poly", "biseq"])]
    index: Option<String>,
    /// Admissible polynomial such as `2*xyxy + xxxy`.
    #[arg(long, conflicts_with = "biseq")]
    poly: Option<String>,
    /// Sequence `k1,l1;k2,l2` for f (or g with --genfun g).
    #[arg(long)]
    biseq: Option<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, value_enum, default_value = "f")]
    genfun: GenArg,
    #[command(flatten)]
    num: NumArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenArg {
    F,
    G,
    Both,
}

impl GenArg {
    fn list(self) -> Vec<GenFun> {
        match self {
            GenArg::F => vec![GenFun::F],
            GenArg::G => vec![GenFun::G],
            GenArg::Both => vec![GenFun::F, GenFun::G],
        }
    }
}

#[derive(Debug, Args)]
struct CheckCmd {
    #[arg(value_enum)]
    relation: Relation,
    /// Enumerate every instance up to this weight when no explicit input is given.
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(long)]
    index: Option<String>,
    /// Ohno shift l (repeatable); default 0..=3.
    #[arg(long = "shift")]
    shifts: Vec<u32>,
    #[arg(long)]
    biseq: Option<String>,
    /// Word for duality, or two words for homomorphism.
    #[arg(long = "word")]
    words: Vec<String>,
    /// Rational lambda such as 1/3 (repeatable); default 1/3.
    #[arg(long = "lambda", allow_hyphen_values = true)]
    lambdas: Vec<String>,
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    part: Option<String>,
    /// Group position for lemma part ii (1-based).
    #[arg(long)]
    pos: Option<usize>,
    #[arg(long, value_enum, default_value = "both")]
    genfun: GenArg,
    /// Truncation order for the power-series check.
    #[arg(long, default_value_t = 6)]
    order: u32,
    /// Number of residues for the partial-fraction check.
    #[arg(long, default_value_t = 100)]
    n_max: u64,
    #[command(flatten)]
    num: NumArgs,
}

impl CheckCmd {
    fn selection(&self) -> Result<Selection> {
        let mut sel = Selection {
            max_weight: self.max_weight,
            ..Selection::default()
        };
        sel.index = self.index.as_deref().map(Index::parse).transpose()?;
        if !self.shifts.is_empty() {
            sel.shifts = self.shifts.clone();
        }
        sel.biseq = self.biseq.as_deref().map(BiSeq::parse).transpose()?;
        sel.words = self
            .words
            .iter()
            .map(|w| Word::parse(w))
            .collect::<Result<_>>()?;
        if !self.lambdas.is_empty() {
            let lambdas: Vec<Rational> = self
                .lambdas
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_>>()?;
            for lam in &lambdas {
                crate::genfun::check_lambda(lam)?;
            }
            sel.taylor_lambda = lambdas[0].clone();
            sel.residue_lambda = lambdas[0].clone();
            sel.lambdas = lambdas;
        }
        sel.case = self
            .case
            .as_deref()
            .map(str::parse::<Thm31Case>)
            .transpose()?;
        sel.part = self
            .part
            .as_deref()
            .map(str::parse::<Lemma33Part>)
            .transpose()?;
        sel.pos = self.pos;
        sel.genfun = self.genfun.list();
        sel.taylor_order = self.order;
        sel.residue_n_max = self.n_max;
        Ok(sel)
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(all_pass) => i32::from(!all_pass),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidParams(format!("i/o: {e}"))
}

/// Returns whether every check passed.
fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Stuffle { w1, w2 } => {
            let (a, b) = (HPoly::parse(&w1)?, HPoly::parse(&w2)?);
            writeln!(out, "{}", stuffle(&a, &b)).map_err(io_err)?;
            Ok(true)
        }
        Command::Dual { index } => {
            writeln!(out, "{}", dual_index(&Index::parse(&index)?)?.to_plain()).map_err(io_err)?;
            Ok(true)
        }
        Command::Eval(cmd) => {
            let p = cmd.num.params()?;
            let target = cmd.num.tol / 4.0;
            let err_of = |v: &NumValue| v.err;
            let (label, value, cutoff) = if let Some(k) = &cmd.index {
                let k = Index::parse(k)?;
                let (v, n) = adaptive(&p, target, err_of, |q| eval_mzv(&k, q))?;
                (format!("zeta{k}"), v, n)
            } else if let Some(poly) = &cmd.poly {
                let poly = HPoly::parse(poly)?;
                if !poly.is_admissible() {
                    return Err(Error::NotAdmissible(format!("polynomial {poly}")));
                }
                let (v, n) = adaptive(&p, target, err_of, |q| eval_zeta_tilde(&poly, q))?;
                (format!("zeta~({poly})"), v, n)
            } else if let Some(bs) = &cmd.biseq {
                let bs = BiSeq::parse(bs)?;
                let lambda = parse_rational(&cmd.lambda)?;
                let which = match cmd.genfun {
                    GenArg::G => GenFun::G,
                    _ => GenFun::F,
                };
                let (v, n) = adaptive(&p, target, err_of, |q| match which {
                    GenFun::F => eval_f(&bs, &lambda, q),
                    GenFun::G => eval_g(&bs, &lambda, q),
                })?;
                (format!("{}({bs}; {lambda})", which.as_str()), v, n)
            } else {
                return Err(Error::InvalidParams(
                    "give --index, --poly or --biseq".into(),
                ));
            };
            if cmd.num.json {
                let j = serde_json::json!({
                    "input": label,
                    "value": value.value_string(),
                    "err": value.err_string(),
                    "params": {"prec_bits": p.prec_bits, "cutoff": cutoff, "tail_mode": p.tail_mode.as_str()},
                });
                writeln!(out, "{j}").map_err(io_err)?;
            } else {
                writeln!(out, "{label} = {value}  (N={cutoff})").map_err(io_err)?;
            }
            Ok(true)
        }
        Command::Check(cmd) => {
            let p = cmd.num.params()?;
            let sel = cmd.selection()?;
            let reports = run_relation(cmd.relation, &sel, &p, cmd.num.tol)?;
            let mut all = true;
            for r in &reports {
                all &= r.pass;
                emit(out, r, cmd.num.json)?;
            }
            Ok(all)
        }
        Command::Sweep { config, out: path } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Parse(format!("{}: {e}", config.display())))?;
            let cfg = SweepConfig::parse(&text)?;
            match path {
                Some(path) => {
                    let file = File::create(&path).map_err(io_err)?;
                    let mut w = BufWriter::new(file);
                    let ok = sweep(&cfg, &mut w, err)?;
                    w.flush().map_err(io_err)?;
                    Ok(ok)
                }
                None => sweep(&cfg, out, err),
            }
        }
    }
}

fn emit(out: &mut dyn Write, r: &RelationReport, json: bool) -> Result<()> {
    if json {
        writeln!(out, "{}", r.to_json_line()).map_err(io_err)
    } else {
        writeln!(out, "{r}").map_err(io_err)
    }
}

/// Runs a sweep, writing JSON lines to `out` and the summary table to `err`.
pub fn sweep(cfg: &SweepConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let sel = cfg.selection();
    let mut all = true;
    let mut table = Vec::new();
    for &rel in &cfg.relations {
        let mut tally = Tally::default();
        for r in run_relation(rel, &sel, &cfg.eval, cfg.tolerance)? {
            tally.add(&r);
            all &= r.pass;
            emit(out, &r, true)?;
        }
        table.push((rel, tally));
    }
    writeln!(
        err,
        "{:<14}{:>8}{:>8}{:>8}{:>14}{:>12}",
        "relation", "checks", "pass", "fail", "max |diff|", "max N"
    )
    .map_err(io_err)?;
    for (rel, t) in &table {
        writeln!(
            err,
            "{:<14}{:>8}{:>8}{:>8}{:>14.3e}{:>12}",
            rel.as_str(),
            t.checks,
            t.passed,
            t.checks - t.passed,
            t.max_diff,
            t.max_cutoff
        )
        .map_err(io_err)?;
    }
    Ok(all)
}
