//! Command-line front end for `polycm-core`.
//!
//! [`run`] parses an argument vector, dispatches to the library and writes the
//! result to the supplied streams. It returns the process exit status: `0` on
//! success, `1` when a verification fails, `2` on a usage error.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use polycm_core::bounds::{bound_table, endpoint_constants, BoundCheck, BoundTable};
use polycm_core::cm::{
    cm_scan, shift_derivative, signed_derivative, CMScanReport, ShiftParams, DEFAULT_MAX_ORDER,
};
use polycm_core::constants::{zeta_int, ConstantTable};
use polycm_core::oracle::{
    polygamma_integral, polygamma_series, shift_integral, QuadratureSpec, SeriesSpec,
};
use polycm_core::{digamma, polygamma, EvalResult, GridSpec, PolygammaOrder};
use serde::Serialize;

pub mod table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] polycm_core::Error),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        use polycm_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                E::QuadratureDidNotConverge { .. }
                | E::EndpointMismatch { .. }
                | E::Overflow
                | E::ScanPoint { .. } => EXIT_FAILED,
                _ => EXIT_USAGE,
            },
            _ => EXIT_FAILED,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "polycm",
    version,
    about = "Polygamma evaluation and complete-monotonicity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function at one point and print value and error estimate.
    Eval(EvalArgs),
    /// Scan the signed derivatives of the shifted difference on a grid.
    VerifyCm(ScanArgs),
    /// Check the two-sided bounds on a grid in (1, inf).
    VerifyBounds(BoundArgs),
    /// Emit the bound table.
    Table(BoundArgs),
    /// Print the endpoint constants for a = 1/2, k = 0..3.
    Constants(FormatArg),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    /// ψ^(n)(x) by the asymptotic engine.
    Polygamma,
    /// ψ(x) by the asymptotic engine.
    Digamma,
    /// ψ^(n)(x) by the series oracle.
    Series,
    /// ψ^(n)(x) by the integral oracle.
    Integral,
    /// n-th derivative of the shifted difference.
    Shift,
    /// Signed derivative that complete monotonicity makes positive.
    Signed,
    /// Signed derivative as a single integral.
    ShiftIntegral,
    /// ζ(n) for integer n >= 2.
    Zeta,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::Polygamma => "polygamma",
            Function::Digamma => "digamma",
            Function::Series => "series",
            Function::Integral => "integral",
            Function::Shift => "shift",
            Function::Signed => "signed",
            Function::ShiftIntegral => "shift-integral",
            Function::Zeta => "zeta",
        }
    }
}

#[derive(Debug, Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    #[arg(long = "fn", value_enum, default_value = "polygamma")]
    function: Function,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    #[arg(long)]
    a: f64,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long, default_value_t = 0.1)]
    lo: f64,
    #[arg(long, default_value_t = 100.0)]
    hi: f64,
    #[arg(long, default_value_t = 60)]
    points: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct BoundArgs {
    #[arg(long)]
    a: f64,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long, default_value_t = 1.001)]
    lo: f64,
    #[arg(long, default_value_t = 1000.0)]
    hi: f64,
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Parse `argv` (including the program name) and execute it.
pub fn run<I, S, W, E>(argv: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "polycm: {e}");
            e.exit_code()
        }
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<i32, CliError> {
    match command {
        Command::Eval(args) => eval(&args, out),
        Command::VerifyCm(args) => verify_cm(&args, out),
        Command::VerifyBounds(args) => verify_bounds(&args, out),
        Command::Table(args) => emit_table(&args, out),
        Command::Constants(args) => constants(args.format, out),
    }
}

fn reject_format(verb: &str, format: Format, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--format {} is not available for {verb}",
            format
                .to_possible_value()
                .map(|v| v.get_name().to_owned())
                .unwrap_or_default()
        )))
    }
}

fn verdict(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn require<T>(value: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {what}")))
}

fn quadrature_spec(tol: Option<f64>) -> Result<QuadratureSpec, CliError> {
    Ok(match tol {
        Some(t) => QuadratureSpec::with_rel_tol(t)?,
        None => QuadratureSpec::default(),
    })
}

#[derive(Serialize)]
struct EvalOutput {
    function: &'static str,
    n: u32,
    x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(flatten)]
    result: EvalResult,
}

fn eval<W: Write>(args: &EvalArgs, out: &mut W) -> Result<i32, CliError> {
    reject_format("eval", args.format, &[Format::Text, Format::Json])?;
    let spec = quadrature_spec(args.tol)?;
    let shift = matches!(
        args.function,
        Function::Shift | Function::Signed | Function::ShiftIntegral
    );
    let params = if shift {
        let a = require(args.a, "a", "shifted functions")?;
        Some(ShiftParams::new(a, args.k)?)
    } else {
        None
    };
    let x = match args.function {
        Function::Zeta => args.x.unwrap_or(f64::NAN),
        _ => require(args.x, "x", "eval")?,
    };
    let result = match args.function {
        Function::Polygamma => polygamma(PolygammaOrder::new(args.n)?, x)?,
        Function::Digamma => digamma(x)?,
        Function::Series => polygamma_series(args.n, x, &SeriesSpec::default())?,
        Function::Integral => polygamma_integral(args.n, x, &spec)?,
        Function::Shift => shift_derivative(params.as_ref().unwrap(), args.n, x)?,
        Function::Signed => signed_derivative(params.as_ref().unwrap(), args.n, x)?,
        Function::ShiftIntegral => shift_integral(params.as_ref().unwrap(), args.n, x, &spec)?,
        Function::Zeta => EvalResult::new(zeta_int(args.n)?, 0.5 * f64::EPSILON),
    };
    match args.format {
        Format::Json => {
            let record = EvalOutput {
                function: args.function.name(),
                n: args.n,
                x,
                a: params.map(|p| p.a()),
                k: params.map(|p| p.k()),
                result,
            };
            serde_json::to_writer_pretty(&mut *out, &record)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "{}", result.value)?;
            writeln!(out, "abs_error_estimate {:e}", result.abs_error_estimate)?;
        }
    }
    Ok(EXIT_OK)
}

fn verify_cm<W: Write>(args: &ScanArgs, out: &mut W) -> Result<i32, CliError> {
    reject_format("verify-cm", args.format, &[Format::Text, Format::Json])?;
    let params = ShiftParams::new(args.a, args.k)?;
    let grid = GridSpec::logarithmic(args.lo, args.hi, args.points)?;
    let report = cm_scan(&params, args.max_order, &grid)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        _ => write_scan_text(&report, out)?,
    }
    Ok(verdict(report.passed))
}

fn write_scan_text<W: Write>(r: &CMScanReport, out: &mut W) -> io::Result<()> {
    let p = &r.params;
    writeln!(out, "a {}  k {}  parity {:?}", p.a(), p.k(), p.parity())?;
    writeln!(
        out,
        "grid [{}, {}] {} points, orders 0..={}",
        r.grid.lo,
        r.grid.hi,
        r.grid.points,
        r.derivative_orders.last().copied().unwrap_or(0)
    )?;
    writeln!(
        out,
        "evaluated {}  indeterminate {}  violations {}",
        r.evaluated_points, r.indeterminate_points, r.violations
    )?;
    writeln!(
        out,
        "min signed value {:e} at n = {}, x = {} (error {:e})",
        r.min_signed_value, r.witness_point.n, r.witness_point.x, r.witness_error
    )?;
    writeln!(out, "{}", if r.passed { "PASSED" } else { "FAILED" })
}

fn build_table(args: &BoundArgs) -> Result<BoundTable, CliError> {
    let params = ShiftParams::new(args.a, args.k)?;
    let grid = GridSpec::logarithmic(args.lo, args.hi, args.points)?;
    Ok(bound_table(&params, &grid)?)
}

fn verify_bounds<W: Write>(args: &BoundArgs, out: &mut W) -> Result<i32, CliError> {
    let format = args.format.unwrap_or(Format::Text);
    let t = build_table(args)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &t)?;
            writeln!(out)?;
        }
        Format::Csv => table::write_csv(&t.checks, &mut *out)?,
        Format::Text => write_bounds_text(&t, out)?,
    }
    Ok(verdict(t.passed()))
}

fn write_bounds_text<W: Write>(t: &BoundTable, out: &mut W) -> io::Result<()> {
    let failed: Vec<&BoundCheck> = t.checks.iter().filter(|c| !c.passed).collect();
    writeln!(out, "a {}  k {}", t.params.a(), t.params.k())?;
    writeln!(out, "checked {}  failed {}", t.checks.len(), failed.len())?;
    let tightest = |m: fn(&BoundCheck) -> f64| {
        t.checks
            .iter()
            .min_by(|l, r| m(l).total_cmp(&m(r)))
            .map(|c| (c.x, m(c)))
    };
    if let Some((x, m)) = tightest(|c| c.lower_margin) {
        writeln!(out, "smallest lower margin {m:e} at x = {x}")?;
    }
    if let Some((x, m)) = tightest(|c| c.upper_margin) {
        writeln!(out, "smallest upper margin {m:e} at x = {x}")?;
    }
    for c in failed {
        writeln!(
            out,
            "fails at x = {}: lower margin {:e}, upper margin {:e}",
            c.x, c.lower_margin, c.upper_margin
        )?;
    }
    writeln!(out, "{}", if t.passed() { "PASSED" } else { "FAILED" })
}

fn emit_table<W: Write>(args: &BoundArgs, out: &mut W) -> Result<i32, CliError> {
    let format = args.format.unwrap_or(Format::Csv);
    reject_format("table", format, &[Format::Csv, Format::Json])?;
    let t = build_table(args)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &t.checks)?;
            writeln!(out)?;
        }
        _ => table::write_csv(&t.checks, out)?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ConstantLine {
    k: u32,
    symbolic: &'static str,
    closed_form: f64,
    computed: EvalResult,
}

fn constants<W: Write>(format: Format, out: &mut W) -> Result<i32, CliError> {
    reject_format("constants", format, &[Format::Text, Format::Json])?;
    let c = ConstantTable::get();
    let pi2 = c.pi * c.pi;
    let zeta3 = c.zeta_int(3)?;
    let forms: [(u32, &'static str, f64); 4] = [
        (0, "3/2 - 2 ln 2", 1.5 - 2.0 * c.ln2),
        (1, "pi^2/3 - 9/2", pi2 / 3.0 - 4.5),
        (2, "15 - 12 zeta(3)", 15.0 - 12.0 * zeta3),
        (3, "14 pi^4/15 - 99", 14.0 * pi2 * pi2 / 15.0 - 99.0),
    ];
    let mut lines = Vec::with_capacity(forms.len());
    for (k, symbolic, closed_form) in forms {
        let computed = endpoint_constants(&ShiftParams::new(0.5, k)?)?;
        lines.push(ConstantLine {
            k,
            symbolic,
            closed_form,
            computed,
        });
    }
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &lines)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "endpoint values at a = 1/2, x = 1")?;
            for l in &lines {
                writeln!(
                    out,
                    "k = {}  {:<16} = {:+.15e}  computed {:+.15e} ± {:.1e}",
                    l.k, l.symbolic, l.closed_form, l.computed.value, l.computed.abs_error_estimate
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}
