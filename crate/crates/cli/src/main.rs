//! Command-line surface for the eulergamma engine.
//!
//! Subcommands: `compute` (digits of the constant through any formula
//! mode), `verify` (identity suite plus parameter-grid invariance),
//! `exponent` (decimal magnitude of a double-exponential series term), and
//! `bench` (term counts, timings, and the gamma-evaluation share across a
//! digit ladder).
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage error. Results go to stdout, diagnostics to stderr. The
//! optional THREADS variable caps internal parallelism (default: all
//! cores); outputs are bit-identical regardless.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use eulergamma::big::consts;
use eulergamma::big::elem;
use eulergamma::big::format::{parse_decimal, to_decimal_string};
use eulergamma::big::working_precision;
use eulergamma::identities::{
    self, corollary_one, corollary_two, gamma_pi_identity, limiting_formula, mellin_spot_check,
    IdentityReport,
};
use eulergamma::oracle;
use eulergamma::series::{euler_gamma, SeriesParams};
use eulergamma::specfun;
use eulergamma::BigReal;

#[derive(Parser)]
#[command(
    name = "eulergamma",
    version,
    about = "High-precision Euler's constant from a residue-series identity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute digits of Euler's constant
    Compute(ComputeArgs),
    /// Verify identities and parameter-grid invariance
    Verify(VerifyArgs),
    /// Report a double-exponential term as mantissa and decimal exponent
    Exponent(ExponentArgs),
    /// Benchmark term counts and timings across digit targets
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Formula {
    /// General two-parameter series
    Theorem,
    /// x = e, w = 2 specialization, printed form
    C1,
    /// x = w = 1 specialization, printed form
    C2,
    /// Classical exponential-integral formula
    Limit,
    /// Defining limit of partial harmonic sums
    Naive,
}

impl Formula {
    fn label(self) -> &'static str {
        match self {
            Formula::Theorem => "theorem",
            Formula::C1 => "c1",
            Formula::C2 => "c2",
            Formula::Limit => "limit",
            Formula::Naive => "naive",
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Decimal digits to print
    #[arg(long, default_value_t = 50)]
    digits: u32,
    /// Free parameter x > 0 (parsed at full working precision)
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x: String,
    /// Free parameter w > 0 (parsed at full working precision)
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    w: String,
    #[arg(long, value_enum, default_value_t = Formula::Theorem)]
    formula: Formula,
    /// Harmonic cutoff for --formula naive
    #[arg(long, default_value_t = 10_000)]
    n: u64,
    /// Emit a structured JSON report instead of plain digits
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 50)]
    digits: u32,
    /// `default` or a semicolon-separated list of x,w pairs
    #[arg(long, default_value = "default")]
    grid: String,
    /// `all` or a comma-separated subset of c1,c2,limit,gamma-pi,mellin
    #[arg(long, default_value = "all")]
    identities: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExponentArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    w: String,
    /// Term index k >= 0
    #[arg(long)]
    k: u32,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated digit targets
    #[arg(long = "digits-list", value_delimiter = ',', required = true)]
    digits_list: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Formula::Theorem)]
    formula: Formula,
}

/// JSON schema shared by compute runs.
#[derive(Serialize, Deserialize)]
struct RunReport {
    command: String,
    x: String,
    w: String,
    digits: u32,
    formula: String,
    result: String,
    error_exp10: i64,
    n1: u32,
    n2: u32,
    n3: u32,
    elapsed_ms: u64,
    pass: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct VerifyIdentityEntry {
    name: String,
    abs_diff_exp10: i64,
    pass: bool,
}

#[derive(Serialize, Deserialize)]
struct VerifyReport {
    command: String,
    digits: u32,
    grid_pairs: u32,
    grid_max_diff_exp10: i64,
    identities: Vec<VerifyIdentityEntry>,
    elapsed_ms: u64,
    pass: bool,
}

fn main() -> ExitCode {
    if let Ok(t) = std::env::var("THREADS") {
        match t.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Exponent(args) => cmd_exponent(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Smallest integer e with bound <= 10^e.
fn bound_exp10(b: &eulergamma::series::TailBound) -> i64 {
    if b.mantissa > 1.0 {
        b.exp10 + 1
    } else {
        b.exp10
    }
}

fn cmd_compute(args: ComputeArgs) -> ExitCode {
    let start = Instant::now();
    let digits = args.digits;

    let (result, counts, error_exp10) = match args.formula {
        Formula::Theorem => {
            let params = match SeriesParams::from_decimal(&args.x, &args.w, digits) {
                Ok(p) => p,
                Err(e) => return usage_error(e),
            };
            let r = euler_gamma(&params);
            (
                to_decimal_string(&r.value, digits),
                r.term_counts,
                bound_exp10(&r.error_bound),
            )
        }
        Formula::C1 => match identities::corollary_one_value(digits) {
            Ok(f) => (
                to_decimal_string(&f.value, digits),
                f.term_counts,
                -(digits as i64) - 2,
            ),
            Err(e) => return usage_error(e),
        },
        Formula::C2 => match identities::corollary_two_value(digits) {
            Ok(f) => (
                to_decimal_string(&f.value, digits),
                f.term_counts,
                -(digits as i64) - 2,
            ),
            Err(e) => return usage_error(e),
        },
        Formula::Limit => {
            let policy = match working_precision(digits) {
                Ok(p) => p,
                Err(e) => return usage_error(e),
            };
            let x = match parse_decimal(&args.x, policy.working_bits) {
                Ok(v) => v,
                Err(e) => return usage_error(e),
            };
            match identities::limiting_value(&x, digits) {
                Ok(f) => (
                    to_decimal_string(&f.value, digits),
                    f.term_counts,
                    -(digits as i64) - 2,
                ),
                Err(e) => return usage_error(e),
            }
        }
        Formula::Naive => {
            let v = match oracle::naive_gamma(args.n) {
                Ok(v) => v,
                Err(e) => return usage_error(e),
            };
            // the defining limit converges like 1/(2n); cap rendering at the
            // 64-digit working precision of this mode
            let shown = digits.min(60);
            let err = -((2 * args.n) as f64).log10();
            (
                to_decimal_string(&v, shown),
                (args.n.min(u32::MAX as u64) as u32, 0, 0),
                err.ceil() as i64,
            )
        }
    };

    let elapsed_ms = start.elapsed().as_millis() as u64;
    if args.json {
        let report = RunReport {
            command: "compute".into(),
            x: args.x,
            w: args.w,
            digits,
            formula: args.formula.label().into(),
            result,
            error_exp10,
            n1: counts.0,
            n2: counts.1,
            n3: counts.2,
            elapsed_ms,
            pass: None,
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!("{result}");
    }
    ExitCode::SUCCESS
}

/// The default invariance grid: (1,1), (e,2), (2,1), (1/2,3), (1, ln 2).
fn default_grid(digits: u32) -> Vec<(String, SeriesParams)> {
    let bits = working_precision(digits).expect("digits validated").working_bits;
    let one = BigReal::from_u64(1, bits);
    let entries: Vec<(&str, BigReal, BigReal)> = vec![
        ("x=1, w=1", one.clone(), one.clone()),
        ("x=e, w=2", consts::e(bits), BigReal::from_u64(2, bits)),
        ("x=2, w=1", BigReal::from_u64(2, bits), one.clone()),
        ("x=0.5, w=3", one.mul_pow2(-1), BigReal::from_u64(3, bits)),
        ("x=1, w=ln 2", one.clone(), consts::ln2(bits)),
    ];
    entries
        .into_iter()
        .map(|(label, x, w)| {
            (
                label.to_string(),
                SeriesParams::new(x, w, digits).expect("grid parameters are positive"),
            )
        })
        .collect()
}

fn parse_grid(spec: &str, digits: u32) -> Result<Vec<(String, SeriesParams)>, String> {
    if spec == "default" {
        return Ok(default_grid(digits));
    }
    let mut out = Vec::new();
    for pair in spec.split(';') {
        let Some((xs, ws)) = pair.split_once(',') else {
            return Err(format!("bad grid entry {pair:?}: expected x,w"));
        };
        let params = SeriesParams::from_decimal(xs.trim(), ws.trim(), digits)
            .map_err(|e| format!("bad grid entry {pair:?}: {e}"))?;
        out.push((format!("x={}, w={}", xs.trim(), ws.trim()), params));
    }
    if out.is_empty() {
        return Err("grid must contain at least one x,w pair".into());
    }
    Ok(out)
}

const IDENTITY_NAMES: [&str; 5] = ["c1", "c2", "limit", "gamma-pi", "mellin"];

fn run_identity(name: &str, digits: u32) -> Vec<IdentityReport> {
    match name {
        "c1" => vec![corollary_one(digits).expect("digits validated")],
        "c2" => vec![corollary_two(digits).expect("digits validated")],
        "limit" => {
            let bits = working_precision(digits).expect("digits validated").working_bits;
            ["0.5", "1", "2"]
                .iter()
                .map(|x| {
                    let xv = parse_decimal(x, bits).expect("literal");
                    limiting_formula(&xv, digits).expect("x > 0")
                })
                .collect()
        }
        "gamma-pi" => vec![gamma_pi_identity(digits).expect("digits validated")],
        "mellin" => {
            let one = BigReal::from_u64(1, 96);
            let half = one.mul_pow2(-1);
            let two = BigReal::from_u64(2, 96);
            vec![
                mellin_spot_check(&one, &one).expect("domain ok"),
                mellin_spot_check(&half, &one).expect("domain ok"),
                mellin_spot_check(&half, &two).expect("domain ok"),
            ]
        }
        _ => unreachable!("validated before dispatch"),
    }
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let start = Instant::now();
    if let Err(e) = working_precision(args.digits) {
        return usage_error(e);
    }
    let digits = args.digits;

    let wanted: Vec<&str> = if args.identities == "all" {
        IDENTITY_NAMES.to_vec()
    } else {
        let list: Vec<&str> = args.identities.split(',').map(str::trim).collect();
        for name in &list {
            if !IDENTITY_NAMES.contains(name) {
                return usage_error(format!(
                    "unknown identity {name:?} (expected one of {})",
                    IDENTITY_NAMES.join(", ")
                ));
            }
        }
        list
    };

    let grid = match parse_grid(&args.grid, digits) {
        Ok(g) => g,
        Err(e) => return usage_error(e),
    };

    let mut all_pass = true;
    let mut lines = Vec::new();

    // parameter-grid invariance: pairwise agreement within 10^-(D-2)
    let values: Vec<(String, BigReal)> = grid
        .iter()
        .map(|(label, p)| (label.clone(), euler_gamma(p).value))
        .collect();
    let bits = working_precision(digits).expect("digits validated").working_bits;
    let tol = consts::pow10(-(digits as i64) + 2, bits);
    let mut max_diff_exp10 = i64::MIN / 4;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            let diff = values[i].1.sub_p(&values[j].1, bits).abs();
            let e = diff.log10_abs().ceil() as i64;
            if !diff.is_zero() {
                max_diff_exp10 = max_diff_exp10.max(e);
            }
            if !diff.abs_le(&tol) {
                all_pass = false;
                lines.push(format!(
                    "grid FAIL: {} vs {} differ by 10^{}",
                    values[i].0, values[j].0, e
                ));
            }
        }
    }
    lines.push(format!(
        "grid: {} pairs agree within 10^{} (tolerance 10^{})",
        values.len() * (values.len() - 1) / 2,
        max_diff_exp10,
        -(digits as i64) + 2
    ));

    let mut entries = Vec::new();
    for name in wanted {
        for report in run_identity(name, digits) {
            let e10 = report.abs_diff.log10().ceil() as i64;
            all_pass &= report.pass;
            lines.push(format!(
                "identity {}: {} |lhs-rhs| <= 10^{}",
                report.name,
                if report.pass { "pass" } else { "FAIL" },
                e10
            ));
            entries.push(VerifyIdentityEntry {
                name: report.name.to_string(),
                abs_diff_exp10: e10,
                pass: report.pass,
            });
        }
    }

    let elapsed_ms = start.elapsed().as_millis() as u64;
    if args.json {
        let report = VerifyReport {
            command: "verify".into(),
            digits,
            grid_pairs: (values.len() * (values.len() - 1) / 2) as u32,
            grid_max_diff_exp10: max_diff_exp10,
            identities: entries,
            elapsed_ms,
            pass: all_pass,
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        for l in &lines {
            println!("{l}");
        }
        println!("verify: {}", if all_pass { "all checks passed" } else { "FAILURES" });
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_exponent(args: ExponentArgs) -> ExitCode {
    let p = 256;
    let x = match parse_decimal(&args.x, p) {
        Ok(v) if v.is_positive() => v,
        Ok(_) => return usage_error("x must satisfy x > 0"),
        Err(e) => return usage_error(e),
    };
    let w = match parse_decimal(&args.w, p) {
        Ok(v) if v.is_positive() => v,
        Ok(_) => return usage_error("w must satisfy w > 0"),
        Err(e) => return usage_error(e),
    };
    // term k of the double-exponential sum: e^{-x e^{wk}}
    let arg = x.mul_p(&elem::exp(&w.mul_u64(args.k as u64, p), p), p);
    match elem::exponent_of_exp_neg(&arg) {
        Ok((mant, exp10)) => {
            println!("{}e{}", to_decimal_string(&mant, 11), exp10);
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_bench(args: BenchArgs) -> ExitCode {
    if args.digits_list.is_empty() {
        return usage_error("digit list must not be empty");
    }
    if args.formula == Formula::Naive {
        return usage_error("bench covers the series formulas (theorem, c1, c2, limit)");
    }
    println!("digits  n1  n2  n3  elapsed_ms  gamma_share");
    for &d in &args.digits_list {
        if let Err(e) = working_precision(d) {
            return usage_error(e);
        }
        specfun::reset_gamma_eval_nanos();
        let start = Instant::now();
        let counts = match args.formula {
            Formula::Theorem => {
                let params = SeriesParams::from_decimal("1", "1", d).expect("defaults are valid");
                euler_gamma(&params).term_counts
            }
            Formula::C1 => identities::corollary_one_value(d).expect("digits validated").term_counts,
            Formula::C2 => identities::corollary_two_value(d).expect("digits validated").term_counts,
            Formula::Limit => {
                let bits = working_precision(d).expect("digits validated").working_bits;
                identities::limiting_value(&BigReal::from_u64(1, bits), d)
                    .expect("x > 0")
                    .term_counts
            }
            Formula::Naive => unreachable!(),
        };
        let total = start.elapsed();
        let share = specfun::gamma_eval_nanos() as f64 / total.as_nanos().max(1) as f64;
        println!(
            "{:<7} {:<3} {:<3} {:<3} {:<11} {:.2}",
            d,
            counts.0,
            counts.1,
            counts.2,
            total.as_millis(),
            share.min(1.0)
        );
    }
    ExitCode::SUCCESS
}
