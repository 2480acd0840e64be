//! `cnslab` command dispatch.
//!
//! Exit codes: 0 on success, 1 on usage or I/O errors, 2 when the arguments
//! parse but the computation is rejected by the library.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use cnslab_core::cns::{is_cns, katai_szabo_scan};
use cnslab_core::digitstat::{kp_empirical_constants, stats};
use cnslab_core::lab::{
    b_bound_check, case_split, fmt_sig, lambda_and_bound_check, sweep_each, BasePair, CaseKind,
    EmpiricalCAccumulator, CSV_HEADER, DEFAULT_C1,
};
use cnslab_core::multdep::{lebesgue_scan, mult_dep, qi_scan};
use cnslab_core::{bounds, make_base, CnsBase, DigitString, Error, FieldSpec, QuadInt};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cnslab", version, about = "Canonical number systems over imaginary quadratic rings")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether alpha is a CNS base.
    Validate(ValidateArgs),
    /// Expand gamma in base alpha.
    Expand(ExpandArgs),
    /// Evaluate a digit-string JSON document (from `expand`).
    Evaluate(EvaluateArgs),
    /// Digit statistics of gamma, optionally with the length envelope.
    Stats(StatsArgs),
    /// Decide multiplicative dependence of alpha and beta.
    Multdep(PairArgs),
    /// Two-base sweep over all gamma with norm up to n-max, as CSV.
    Sweep(SweepArgs),
    /// Evaluate log log x / (log log log x + C).
    Bound(BoundArgs),
    /// Run the interval case analysis for one gamma.
    Lab(LabArgs),
    /// Base and dependence scans.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args, Debug)]
struct FieldArg {
    /// Field parameter d of Q(sqrt(-d)); must agree with the `w[d]` tags.
    #[arg(long)]
    d: Option<i64>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// Digit-string JSON; read from standard input when absent.
    #[arg(long)]
    json: Option<String>,
    /// File holding the digit-string JSON.
    #[arg(long, conflicts_with = "json")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    /// Also estimate the length envelope over norms up to this bound.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the empirical-C JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long)]
    x: f64,
    #[arg(long = "C", allow_hyphen_values = true, default_value_t = 0.0)]
    c: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct LabArgs {
    /// Run the interval case analysis (the only lab mode).
    #[arg(long, required = true)]
    case_split: bool,
    #[command(flatten)]
    field: FieldArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, default_value_t = DEFAULT_C1)]
    c1: f64,
    /// Norm bound for estimating the length envelopes of both bases.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("scan_kind").required(true).multiple(false)))]
struct ScanArgs {
    /// CNS bases of Q(i) with |a|, |b| up to a-max.
    #[arg(long, group = "scan_kind")]
    katai_szabo: bool,
    /// Solutions of a^2 + 1 = x^v with v >= 3.
    #[arg(long, group = "scan_kind")]
    lebesgue: bool,
    /// Dependent pairs among -a +- i.
    #[arg(long, group = "scan_kind")]
    qi_multdep: bool,
    #[arg(long)]
    a_max: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Validate(a) => validate(a, out),
        Command::Expand(a) => expand(a, out),
        Command::Evaluate(a) => evaluate(a, out),
        Command::Stats(a) => stats_cmd(a, out),
        Command::Multdep(a) => multdep(a, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Bound(a) => bound(a, out),
        Command::Lab(a) => lab(a, out),
        Command::Scan(a) => scan(a, out),
    }
}

fn require_format(format: Format, allowed: &[Format]) -> Outcome {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--format {} is not available for this command",
            format.to_possible_value().expect("no skipped variants").get_name()
        )))
    }
}

fn parse_quad(text: &str, field: &FieldArg) -> std::result::Result<QuadInt, Failure> {
    let x: QuadInt = text.parse()?;
    if let Some(d) = field.d {
        let spec = FieldSpec::new(d)?;
        if spec != x.field() {
            return Err(Error::FieldMismatch(spec.d(), x.field().d()).into());
        }
    }
    Ok(x)
}

fn parse_base(text: &str, field: &FieldArg) -> std::result::Result<CnsBase, Failure> {
    Ok(make_base(parse_quad(text, field)?)?)
}

fn threads_from_env() -> std::result::Result<Option<usize>, Failure> {
    match std::env::var("CNSLAB_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!(
                "CNSLAB_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Outcome {
    writeln!(out, "{value}")?;
    Ok(())
}

fn validate(a: ValidateArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text])?;
    let alpha = parse_quad(&a.alpha, &a.field)?;
    let check = is_cns(&alpha);
    let e = -alpha.trace();
    let f = alpha.norm();
    match a.format {
        Format::Text => writeln!(
            out,
            "alpha={alpha} E={e} F={f} criterion_ok={} ring_match={} is_cns={}",
            check.criterion_ok,
            check.ring_match,
            check.is_cns()
        )?,
        _ => emit_json(
            out,
            &json!({
                "alpha": alpha.to_string(),
                "E": e.to_string(),
                "F": f.to_string(),
                "criterion_ok": check.criterion_ok,
                "ring_match": check.ring_match,
                "is_cns": check.is_cns(),
            }),
        )?,
    }
    Ok(())
}

fn expand(a: ExpandArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text])?;
    let base = parse_base(&a.alpha, &a.field)?;
    let gamma = parse_quad(&a.gamma, &a.field)?;
    let ds = base.expand(&gamma)?;
    match a.format {
        Format::Text => writeln!(out, "{ds}")?,
        _ => writeln!(out, "{}", ds.to_json())?,
    }
    Ok(())
}

fn evaluate(a: EvaluateArgs, out: &mut dyn Write) -> Outcome {
    let text = match (a.json, a.input) {
        (Some(j), _) => j,
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let ds = DigitString::from_json(text.trim())?;
    writeln!(out, "{}", ds.evaluate())?;
    Ok(())
}

fn stats_cmd(a: StatsArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text])?;
    let base = parse_base(&a.alpha, &a.field)?;
    let gamma = parse_quad(&a.gamma, &a.field)?;
    let st = stats(&gamma, &base)?;
    let kp = a
        .n_max
        .map(|n| kp_empirical_constants(&base, n))
        .transpose()?;
    match a.format {
        Format::Text => {
            write!(out, "Z={} S={} L={} defect={}", st.z, st.s, st.l, st.defect)?;
            if let Some(kp) = kp {
                write!(out, " e1={} e2={}", kp.e1, kp.e2)?;
            }
            writeln!(out)?;
        }
        _ => {
            let mut v = json!({
                "gamma": gamma.to_string(),
                "base": base.alpha().to_string(),
                "Z": st.z,
                "S": st.s,
                "L": st.l,
                "defect": st.defect,
            });
            if let (Some(kp), Some(n)) = (kp, a.n_max) {
                v["e1"] = json!(kp.e1);
                v["e2"] = json!(kp.e2);
                v["n_max"] = json!(n);
            }
            emit_json(out, &v)?;
        }
    }
    Ok(())
}

fn multdep(a: PairArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text])?;
    let alpha = parse_quad(&a.alpha, &a.field)?;
    let beta = parse_quad(&a.beta, &a.field)?;
    let v = mult_dep(&alpha, &beta)?;
    match a.format {
        Format::Text => {
            let show = |x: Option<u64>| x.map_or("-".to_string(), |x| x.to_string());
            writeln!(
                out,
                "{} u={} v={} w={}",
                if v.dependent { "dependent" } else { "independent" },
                show(v.u),
                show(v.v),
                show(v.w.map(u64::from)),
            )?
        }
        _ => emit_json(
            out,
            &json!({"dependent": v.dependent, "u": v.u, "v": v.v, "w": v.w}),
        )?,
    }
    Ok(())
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Csv])?;
    let threads = threads_from_env()?;
    let base_a = parse_base(&a.alpha, &a.field)?;
    let base_b = parse_base(&a.beta, &a.field)?;
    if mult_dep(base_a.alpha(), base_b.alpha())?.dependent {
        return Err(Error::DependentBases(base_a.alpha().to_string(), base_b.alpha().to_string()).into());
    }
    let mut file;
    let mut stdout_buf;
    let sink: &mut dyn Write = match &a.out {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => {
            stdout_buf = BufWriter::new(out);
            &mut stdout_buf
        }
    };
    writeln!(sink, "{CSV_HEADER}")?;
    let mut acc = EmpiricalCAccumulator::default();
    let mut io_err = None;
    let result = sweep_each(&base_a, &base_b, a.n_max, threads, |r| {
        acc.push(r);
        if let Err(e) = writeln!(sink, "{}", r.csv_row()) {
            io_err = Some(e);
            return Err(Error::InvalidParams("write failed".into()));
        }
        Ok(())
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    result?;
    sink.flush()?;
    if let Some(path) = a.report {
        let report = acc.finish()?;
        let mut f = File::create(path)?;
        writeln!(f, "{}", report.to_json(base_a.field(), a.n_max))?;
    }
    Ok(())
}

fn bound(a: BoundArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text])?;
    let value = bounds::theorem_bound(a.x, a.c)?;
    match a.format {
        Format::Text => writeln!(out, "{value}")?,
        _ => emit_json(out, &json!({"x": a.x, "C": a.c, "bound": value}))?,
    }
    Ok(())
}

fn lab(a: LabArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Json, Format::Text])?;
    debug_assert!(a.case_split);
    let base_a = parse_base(&a.alpha, &a.field)?;
    let base_b = parse_base(&a.beta, &a.field)?;
    let gamma = parse_quad(&a.gamma, &a.field)?;
    let kp_a = kp_empirical_constants(&base_a, a.n_max)?;
    let kp_b = kp_empirical_constants(&base_b, a.n_max)?;
    let pair = BasePair::new(base_a, base_b, kp_a, kp_b)?;
    let report = case_split(&gamma, &pair, a.c1)?;
    let mut v = serde_json::to_value(&report).expect("report serializes");
    v["gamma"] = json!(gamma.to_string());
    v["alpha"] = json!(pair.alpha.alpha().to_string());
    v["beta"] = json!(pair.beta.alpha().to_string());
    if let CaseKind::GapFound { .. } = report.case {
        let lam = lambda_and_bound_check(&gamma, &pair, &report)?;
        let bb = b_bound_check(&gamma, &pair, &report)?;
        v["lambda"] = serde_json::to_value(lam).expect("plain data");
        v["b_bound"] = serde_json::to_value(bb).expect("plain data");
    }
    match a.format {
        Format::Text => {
            write!(out, "theta={} k={} ", fmt_sig(report.theta, 9), report.k)?;
            match report.case {
                CaseKind::AllIntervalsHit => writeln!(out, "AllIntervalsHit")?,
                CaseKind::GapFound { s, p, q } => writeln!(
                    out,
                    "GapFound s={s} p={p} q={q} lambda_holds={} b_bound_holds={}",
                    v["lambda"]["holds"], v["b_bound"]["holds"]
                )?,
            }
        }
        _ => emit_json(out, &v)?,
    }
    Ok(())
}

fn scan(a: ScanArgs, out: &mut dyn Write) -> Outcome {
    require_format(a.format, &[Format::Csv, Format::Json, Format::Text])?;
    if a.katai_szabo {
        let bases: Vec<String> = katai_szabo_scan(a.a_max).iter().map(|x| x.to_string()).collect();
        match a.format {
            Format::Json => emit_json(out, &json!({ "bases": bases }))?,
            Format::Csv => {
                writeln!(out, "base")?;
                for b in &bases {
                    writeln!(out, "{b}")?;
                }
            }
            Format::Text => {
                for b in &bases {
                    writeln!(out, "{b}")?;
                }
            }
        }
    } else if a.lebesgue {
        let hits = lebesgue_scan(a.a_max);
        match a.format {
            Format::Json => emit_json(
                out,
                &json!({ "a_max": a.a_max, "solutions": hits.iter().map(|&(a, x, v)| json!([a, x, v])).collect::<Vec<_>>() }),
            )?,
            Format::Csv => {
                writeln!(out, "a,x,v")?;
                for (a, x, v) in hits {
                    writeln!(out, "{a},{x},{v}")?;
                }
            }
            Format::Text => {
                if hits.is_empty() {
                    writeln!(out, "no solutions with a <= {}", a.a_max)?;
                }
                for (a, x, v) in hits {
                    writeln!(out, "{a}^2+1 = {x}^{v}")?;
                }
            }
        }
    } else {
        let pairs = qi_scan(a.a_max)?;
        let rows: Vec<(String, String)> = pairs
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        match a.format {
            Format::Json => emit_json(out, &json!({ "pairs": rows }))?,
            Format::Csv => {
                writeln!(out, "alpha,beta")?;
                for (x, y) in &rows {
                    writeln!(out, "{x},{y}")?;
                }
            }
            Format::Text => {
                for (x, y) in &rows {
                    writeln!(out, "{x} {y}")?;
                }
            }
        }
    }
    Ok(())
}
