//! `tsum` command-line front end.

mod report;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;
use tsum_core::identities::{
    build_identity, catalog_records, catalog_to_jsonl, concordance, lookup, registry_list, reproduce, sweep,
    verify_with, Instance, Params, Status, VerificationReport,
};
use tsum_core::numerics::NumericContext;
use tsum_core::residue::derive_relation;
use tsum_core::series::Evaluator;
use tsum_core::syntax::{parse_kernel, parse_sumspec, parse_value};
use tsum_core::Rational;

pub use report::{Format, Record};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "tsum", version, about = "Evaluate and verify Euler T-sums and related series")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Decimal digits of the result.
    #[arg(long, global = true, default_value_t = 40)]
    digits: u32,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_terms: u64,
    #[arg(long, global = true, default_value_t = 12)]
    tail_order: u32,
    #[arg(long, global = true, default_value_t = 1e-25)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Jsonl)]
    format: FormatArg,
    /// Worker threads for verify-all; output order never depends on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Leave elapsed time out of the summary so output is bit-stable.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    p: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    p1: Option<i64>,
    #[arg(long)]
    p2: Option<i64>,
    #[arg(long)]
    p3: Option<i64>,
    #[arg(long)]
    k1: Option<i64>,
    #[arg(long)]
    k2: Option<i64>,
    #[arg(long)]
    k3: Option<i64>,
    /// Hurwitz shift, e.g. -1/2 or 1/3.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

impl ParamArgs {
    fn to_params(&self) -> Result<Params, CliError> {
        let mut p = Params::new();
        let ints = [
            ("p", self.p),
            ("q", self.q),
            ("m", self.m),
            ("p1", self.p1),
            ("p2", self.p2),
            ("p3", self.p3),
            ("k1", self.k1),
            ("k2", self.k2),
            ("k3", self.k3),
        ];
        for (name, v) in ints {
            if let Some(v) = v {
                p.insert(name, Rational::from(v));
            }
        }
        if let Some(a) = &self.a {
            let r = Rational::from_str_radix(a.trim(), 10)
                .map_err(|_| CliError::Usage(format!("--a expects a rational, got '{a}'")))?;
            p.insert("a", r);
        }
        Ok(p)
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate a sum spec (T[1^2;3], KT[2,4], ...) or a constant expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Verify one registry instance.
    Verify {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Verify every registry instance up to a weight.
    VerifyAll {
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        /// Restrict to one registry id.
        #[arg(long)]
        id: Option<String>,
    },
    /// Rederive the relation of a kernel and check it numerically.
    Derive {
        #[arg(long, conflicts_with = "id")]
        kernel: Option<String>,
        /// Use the anchor kernel of a registry entry.
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Registry entries.
    List,
    /// The registry catalog as JSON lines.
    Catalog,
}

/// Runs the CLI on `argv` (program name first), printing to stdout/stderr.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Exit code 0 iff no MISMATCH and no error.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, argv, out, err) {
        Ok(code) => code,
        // reader went away (e.g. piped into `head`)
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Tally {
    items: usize,
    confirmed: usize,
    mismatch: usize,
    skipped: usize,
    errors: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { items: 0, confirmed: 0, mismatch: 0, skipped: 0, errors: 0 }
    }

    fn code(&self) -> i32 {
        if self.errors > 0 {
            2
        } else if self.mismatch > 0 {
            1
        } else {
            0
        }
    }
}

fn context(o: &Opts) -> Result<NumericContext, CliError> {
    NumericContext::new(o.digits, o.max_terms, o.tail_order).map_err(|e| CliError::Usage(e.to_string()))
}

fn execute(cli: &Cli, argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let o = &cli.opts;
    let fmt = match o.format {
        FormatArg::Jsonl => Format::Jsonl,
        FormatArg::Csv => Format::Csv,
    };
    if let Cmd::Catalog = cli.cmd {
        out.write_all(catalog_to_jsonl(&catalog_records()).as_bytes())?;
        return Ok(0);
    }
    let start = Instant::now();
    let ctx = context(o)?;
    let mut w = report::Writer::new(fmt, out);
    w.emit(&Record::command(argv, &ctx, o.tol, o.jobs))?;
    let mut tally = Tally::new();
    match &cli.cmd {
        Cmd::Eval { expr } => {
            let ev = Evaluator::new(ctx);
            tally.items = 1;
            match eval_expr(expr, &ev) {
                Ok(rec) => w.emit(&rec)?,
                Err(e) => {
                    tally.errors += 1;
                    writeln!(err, "error: {expr}: {e}")?;
                    w.emit(&Record::error(expr, &e))?;
                }
            }
        }
        Cmd::Verify { id, params } => {
            let params = params.to_params()?;
            let ev = Evaluator::new(ctx);
            let rec = verify_instance(id, &params, &ev, o.tol, true);
            diagnose(err, &rec)?;
            tally_record(&mut tally, &rec);
            w.emit(&rec)?;
        }
        Cmd::VerifyAll { max_weight, id } => {
            let mut jobs: Vec<(&'static str, Params)> = Vec::new();
            for d in registry_list() {
                if id.as_deref().is_none_or(|want| want == d.id) {
                    for p in sweep(d, *max_weight) {
                        jobs.push((d.id, p));
                    }
                }
            }
            if let Some(want) = id {
                lookup(want).map_err(|e| CliError::Core(e.to_string()))?;
            }
            let ev = Evaluator::new(ctx);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(o.jobs.max(1))
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let recs: Vec<Record> = pool.install(|| {
                jobs.par_iter().map(|(id, p)| verify_instance(id, p, &ev, o.tol, true)).collect()
            });
            for rec in &recs {
                diagnose(err, rec)?;
                tally_record(&mut tally, rec);
                w.emit(rec)?;
            }
        }
        Cmd::Derive { kernel, id, params } => {
            let rec = derive(kernel.as_deref(), id.as_deref(), &params.to_params()?, &ctx, o.tol)?;
            tally_record(&mut tally, &rec);
            w.emit(&rec)?;
        }
        Cmd::List => {
            for d in registry_list() {
                tally.items += 1;
                w.emit(&Record::entry(d))?;
            }
        }
        Cmd::Catalog => unreachable!(),
    }
    let elapsed = (!o.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    w.emit(&Record::summary(tally.items, tally.confirmed, tally.mismatch, tally.skipped, tally.errors, elapsed))?;
    w.flush()?;
    Ok(tally.code())
}

fn diagnose(err: &mut dyn Write, rec: &Record) -> std::io::Result<()> {
    if rec.status().is_none() {
        let j = rec.json();
        writeln!(err, "error: {}: {}", j["subject"].as_str().unwrap_or(""), j["message"].as_str().unwrap_or(""))?;
    }
    Ok(())
}

fn tally_record(t: &mut Tally, rec: &Record) {
    t.items += 1;
    match rec.status() {
        Some(Status::Confirmed) => t.confirmed += 1,
        Some(Status::Mismatch) => t.mismatch += 1,
        Some(Status::Skipped) => t.skipped += 1,
        None => t.errors += 1,
    }
}

fn eval_expr(text: &str, ev: &Evaluator) -> Result<Record, String> {
    match parse_sumspec(text) {
        Ok(spec) => {
            let r = ev.sum(&spec).map_err(|e| e.to_string())?;
            Ok(Record::eval_sum(text, &spec, &r, ev.ctx()))
        }
        Err(first) => {
            let v = parse_value(text).map_err(|_| first.to_string())?;
            let n = ev.value(&v).map_err(|e| e.to_string())?;
            Ok(Record::eval_value(text, &v, &n, ev.ctx()))
        }
    }
}

fn verify_instance(id: &str, params: &Params, ev: &Evaluator, tol: f64, recheck: bool) -> Record {
    let inst = match build_identity(id, params) {
        Ok(i) => i,
        Err(e) => return Record::error(&format!("{id} {params}"), &e.to_string()),
    };
    match inst {
        Instance::Skipped { id, params, reason } => {
            Record::verification(&VerificationReport::skipped(&id, &params, &reason, ev.ctx(), tol), None, None)
        }
        Instance::Ready(identity) => match verify_with(&identity, ev, tol) {
            Ok(rep) => {
                let stable = if recheck && rep.status == Status::Mismatch {
                    let d = ev.ctx().digits();
                    reproduce(&identity, ev.ctx(), &[d, d + 20], tol).ok().map(|r| r.stable)
                } else {
                    None
                };
                Record::verification(&rep, Some(&identity), stable)
            }
            Err(e) => Record::error(&format!("{id} {params}"), &e.to_string()),
        },
    }
}

fn derive(
    kernel: Option<&str>,
    id: Option<&str>,
    params: &Params,
    ctx: &NumericContext,
    tol: f64,
) -> Result<Record, CliError> {
    let core = |e: String| CliError::Core(e);
    let (text, identity) = match (kernel, id) {
        (Some(k), _) => (k.to_string(), None),
        (None, Some(id)) => {
            let d = lookup(id).map_err(|e| core(e.to_string()))?;
            let p = d.complete(params);
            let text = d.anchor_for(&p).ok_or_else(|| core(format!("{id} has no kernel anchor for {p}")))?;
            let identity = match build_identity(id, &p).map_err(|e| core(e.to_string()))? {
                Instance::Ready(i) => Some(i),
                Instance::Skipped { reason, .. } => return Err(core(format!("{id} {p}: {reason}"))),
            };
            (text, identity)
        }
        (None, None) => return Err(CliError::Usage("derive needs --kernel or --id".into())),
    };
    let k = parse_kernel(&text).map_err(|e| core(format!("kernel '{text}': {e}")))?;
    let rel = derive_relation(&k).map_err(|e| core(e.to_string()))?;
    let ev = Evaluator::new(*ctx);
    let zero = ev.value(&rel.to_symbolic()).map_err(|e| core(e.to_string()))?;
    let agrees = match &identity {
        Some(i) => concordance(i).map_err(|e| core(e.to_string()))?,
        None => None,
    };
    Ok(Record::derivation(&k.to_string(), &rel, &zero, tol, agrees))
}
