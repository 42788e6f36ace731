//! Command-line runner.
//!
//! Every command produces an [`Outcome`]: a pass flag plus JSON, CSV and text
//! renderings. Exit status is 0 when everything passes (or a table was
//! produced), 1 when a verification check fails, and 2 on usage or
//! precondition errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{self, parse_rational, rat};
use crate::ktheory::{self, HelixWindow};
use crate::p1verify;
use crate::report::VerificationReport;
use crate::serde_big::number;
use crate::weierstrass::{self, CurveParams};
use crate::zalgebra::{self, GradedDims, QuadraticPresentation, RankMode};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Number of helix indices over which limit-slope convergence is checked.
pub const CONVERGENCE_INDEX: i64 = -60;
pub const CONVERGENCE_TOLERANCE: f64 = 1e-6;
/// Steps of the duality check.
pub const DUALITY_STEPS: i64 = 50;

#[derive(Debug, Parser)]
#[command(name = "nchelix", version, about = "Helices on elliptic curves and their graded algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    #[command(flatten)]
    Run(RunConfig),
    /// Run every config in a JSON suite file and print one aggregate report.
    Suite {
        /// Path to a JSON array of run configs.
        file: PathBuf,
    },
}

/// One runnable configuration, from flags or from a suite file entry.
#[derive(Clone, Debug, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum RunConfig {
    /// Helix window as Chern pairs, with its invariant checks.
    Helix(HelixArgs),
    /// Hilbert series coefficients.
    Hilbert(HilbertArgs),
    /// Graded dimensions of the quadratic presentation.
    SncDims(SncDimsArgs),
    /// Dimension checks of the canonical map into the orbit algebra.
    VerifyCanonical(VerifyCanonicalArgs),
    /// Exact checks in the section algebra of a Weierstrass cubic.
    Weierstrass(WeierstrassArgs),
    /// Feasibility search for helices (O, O(n)) on the projective line.
    P1(P1Args),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Orbit,
    Snc,
    /// Orbit algebra dimensions read off the K-theory table.
    Table,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Modular,
    Exact,
}

impl From<Mode> for RankMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Modular => RankMode::Modular,
            Mode::Exact => RankMode::Exact,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HelixArgs {
    #[arg(long)]
    pub d: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub from: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: i64,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertArgs {
    #[arg(long)]
    pub d: i64,
    #[arg(long, value_enum)]
    pub which: Which,
    /// Highest degree to list.
    #[arg(long)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncDimsArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    pub mode: Mode,
    /// Permutation of generators (0-based images), e.g. `--sigma 1,0`.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub sigma: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyCanonicalArgs {
    #[arg(long)]
    pub d: i64,
    #[arg(long, default_value_t = 8)]
    #[serde(default = "default_maxdeg")]
    pub maxdeg: usize,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeierstrassArgs {
    /// Coefficient `a` of `y^2 = x^3 + a x + b` (integer or `p/q`).
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Top degree for the generation checks.
    #[arg(long, default_value_t = 8)]
    #[serde(default = "default_maxdeg")]
    pub maxdeg: usize,
    /// Top degree for the decomposition checks (defaults to `maxdeg`).
    #[arg(long)]
    #[serde(default)]
    pub decomp_maxdeg: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct P1Args {
    #[arg(long)]
    pub n: u32,
    /// Largest twist searched (defaults to `3n + 2`).
    #[arg(long, allow_negative_numbers = true)]
    #[serde(default)]
    pub bound: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    #[serde(default)]
    pub format: Format,
}

fn default_maxdeg() -> usize {
    8
}

impl RunConfig {
    pub fn format(&self) -> Format {
        match self {
            RunConfig::Helix(a) => a.format,
            RunConfig::Hilbert(a) => a.format,
            RunConfig::SncDims(a) => a.format,
            RunConfig::VerifyCanonical(a) => a.format,
            RunConfig::Weierstrass(a) => a.format,
            RunConfig::P1(a) => a.format,
        }
    }
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub json: Value,
    pub csv: String,
    pub text: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value serialises");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
            Format::Text => self.text.clone(),
        }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    match config {
        RunConfig::Helix(a) => run_helix(a),
        RunConfig::Hilbert(a) => run_hilbert(a),
        RunConfig::SncDims(a) => run_snc_dims(a),
        RunConfig::VerifyCanonical(a) => run_verify_canonical(a),
        RunConfig::Weierstrass(a) => run_weierstrass(a),
        RunConfig::P1(a) => run_p1(a),
    }
}

fn big(v: &BigInt) -> Value {
    Value::Number(number(&v.to_string()))
}

fn report_csv(report: &VerificationReport) -> String {
    let mut out = String::from("check,pass,expected,actual\n");
    for c in &report.checks {
        let _ = writeln!(out, "{},{},\"{}\",\"{}\"", c.check, c.pass, c.expected, c.actual);
    }
    out
}

fn report_json(report: &VerificationReport) -> Value {
    serde_json::to_value(report).expect("report serialises")
}

/// Checks over a helix window: pairing, slope monotonicity, duality and the
/// limit slope (for `d > 2`).
pub fn helix_checks(d: i64, window: &HelixWindow) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let pairs = window.pairs();
    let bad_pairing = window
        .iter()
        .zip(pairs.iter().skip(1))
        .find(|((_, a), b)| ktheory::euler_pairing(a, b) != BigInt::from(d))
        .map(|((m, _), _)| m);
    report.push(crate::report::Check::predicate(
        "pairing_constant",
        bad_pairing.is_none(),
        match bad_pairing {
            None => format!("chi(L_m, L_m+1) = {d} across the window"),
            Some(m) => format!("fails at m = {m}"),
        },
    ));
    let bad_slope = window
        .iter()
        .zip(pairs.iter().skip(1))
        .find(|((_, a), b)| a.slope() >= b.slope())
        .map(|((m, _), _)| m);
    report.push(crate::report::Check::predicate(
        "slopes_increasing",
        bad_slope.is_none(),
        match bad_slope {
            None => "strict, exact rational comparison".to_string(),
            Some(m) => format!("fails at m = {m}"),
        },
    ));
    let steps = DUALITY_STEPS.min(-window.lo());
    let mismatch = ktheory::duality_mismatch(window, steps)?;
    report.push(crate::report::Check::predicate(
        "duality",
        mismatch.is_none(),
        match mismatch {
            None => format!("L_(-k)^* matches the reversed dual helix for 0 <= k <= {steps}"),
            Some(k) => format!("fails at k = {k}"),
        },
    ));
    if d > 2 {
        let theta = ktheory::limit_slope(d)?;
        let above = window
            .iter()
            .find(|(_, c)| theta.exact.cmp_rational(&c.slope()) != std::cmp::Ordering::Less)
            .map(|(m, _)| m);
        report.push(crate::report::Check::predicate(
            "slopes_above_limit",
            above.is_none(),
            match above {
                None => format!("theta_{d} < mu_m for every m in the window (exact)"),
                Some(m) => format!("fails at m = {m}"),
            },
        ));
        if let Some(c) = window.get(CONVERGENCE_INDEX) {
            let mu = c.slope().to_f64().unwrap_or(f64::NAN);
            let gap = (mu - theta.value).abs();
            report.push(crate::report::Check::predicate(
                "limit_convergence",
                gap < CONVERGENCE_TOLERANCE,
                format!("|mu_({CONVERGENCE_INDEX}) - theta_{d}| = {gap:e} < {CONVERGENCE_TOLERANCE:e}"),
            ));
        }
    }
    Ok(report)
}

fn run_helix(a: &HelixArgs) -> Result<Outcome> {
    let window = ktheory::generate_helix(a.d, a.from, a.to)?;
    let checks = helix_checks(a.d, &window)?;
    let rows: Vec<Value> = window
        .iter()
        .map(|(m, c)| {
            let s = c.slope();
            json!({
                "index": m,
                "rank": big(c.rank()),
                "degree": big(c.degree()),
                "slope_num": big(s.numer()),
                "slope_den": big(s.denom()),
            })
        })
        .collect();
    let limit = match ktheory::limit_slope(a.d) {
        Ok(l) => serde_json::to_value(&l).expect("limit slope serialises"),
        Err(_) => Value::Null,
    };
    let json = json!({
        "d": a.d,
        "from": a.from,
        "to": a.to,
        "rows": rows,
        "limit_slope": limit,
        "checks": report_json(&checks),
        "pass": checks.all_pass(),
    });
    let mut csv = String::from("index,rank,degree,slope_num,slope_den\n");
    let mut text = String::new();
    for (m, c) in window.iter() {
        let s = c.slope();
        let _ = writeln!(csv, "{m},{},{},{},{}", c.rank(), c.degree(), s.numer(), s.denom());
        let _ = writeln!(text, "L_{m} = {c}  slope {s}");
    }
    if let Ok(l) = ktheory::limit_slope(a.d) {
        let _ = writeln!(text, "theta_{} = {} = {}", a.d, l.exact, l.value);
    }
    text.push_str(&checks.to_string());
    Ok(Outcome {
        pass: checks.all_pass(),
        json,
        csv,
        text,
    })
}

fn dims_outcome(header: Value, dims: &GradedDims) -> Outcome {
    let mut json = header;
    json["rows"] = serde_json::to_value(dims).expect("dims serialise");
    let text = dims
        .as_slice()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    Outcome {
        pass: true,
        json,
        csv: dims.to_csv(),
        text: format!("{text}\n"),
    }
}

fn run_hilbert(a: &HilbertArgs) -> Result<Outcome> {
    let (dims, recurrence) = match a.which {
        Which::Orbit => {
            let series = exactmath::orbit_hilbert(a.d, a.terms)?;
            // From degree 1 on, b_n = d b_(n-1) - b_(n-2).
            let agrees = a.terms < 2 || {
                let tail = exactmath::recurrence_solve(a.d, rat(a.d), rat(a.d * a.d), a.terms - 1)?;
                series[1..] == tail[..]
            };
            (GradedDims(exactmath::to_naturals(&series)?), Some(agrees))
        }
        Which::Snc => {
            let series = exactmath::snc_hilbert(a.d, a.terms)?;
            let agrees = a.terms < 1 || series == exactmath::recurrence_solve(a.d, rat(1), rat(a.d), a.terms)?;
            (GradedDims(exactmath::to_naturals(&series)?), Some(agrees))
        }
        Which::Table => {
            let window = ktheory::generate_helix(a.d, -(a.terms as i64) - 1, 0)?;
            let table = ktheory::orbit_dim_table(a.d, &window, a.terms)?;
            (zalgebra::hat_dims(&table)?, None)
        }
    };
    let mut outcome = dims_outcome(json!({ "d": a.d, "which": a.which, "terms": a.terms }), &dims);
    if let Some(agrees) = recurrence {
        outcome.json["recurrence_agrees"] = Value::Bool(agrees);
        outcome.pass = agrees;
    }
    Ok(outcome)
}

fn run_snc_dims(a: &SncDimsArgs) -> Result<Outcome> {
    let pres = match &a.sigma {
        Some(perm) => {
            if perm.len() != a.d {
                return Err(Error::Precondition(format!(
                    "sigma has {} entries, expected d = {}",
                    perm.len(),
                    a.d
                )));
            }
            QuadraticPresentation::permutation(perm)?
        }
        None => QuadraticPresentation::identity(a.d)?,
    };
    let dims = zalgebra::presentation_dims(&pres, a.terms, a.mode.into())?;
    Ok(dims_outcome(
        json!({ "d": a.d, "terms": a.terms, "mode": a.mode, "sigma": a.sigma }),
        &dims,
    ))
}

fn run_verify_canonical(a: &VerifyCanonicalArgs) -> Result<Outcome> {
    let report = zalgebra::verify_canonical_map(a.d, a.maxdeg)?;
    Ok(Outcome {
        pass: report.all_pass(),
        json: json!({
            "d": a.d,
            "maxdeg": a.maxdeg,
            "checks": report_json(&report),
            "pass": report.all_pass(),
        }),
        csv: report_csv(&report),
        text: report.to_string(),
    })
}

fn run_weierstrass(a: &WeierstrassArgs) -> Result<Outcome> {
    let params = CurveParams::new(parse_rational(&a.a)?, parse_rational(&a.b)?)?;
    let generation = weierstrass::verify_generation(&params, a.maxdeg)?;
    let decomposition = weierstrass::verify_decomposition(&params, a.decomp_maxdeg.unwrap_or(a.maxdeg))?;
    let cover = weierstrass::find_cover_relation(&params)?;
    let distinct_roots = !num_traits::Zero::is_zero(&cover.discriminant);
    let mut all = VerificationReport::new();
    all.extend(generation.clone());
    all.extend(decomposition.clone());
    all.push(crate::report::Check::predicate(
        "cover_four_branch_points",
        distinct_roots,
        format!("discriminant of y^2 = q(u, v) is {}", cover.discriminant),
    ));
    let pass = all.all_pass();
    let json = json!({
        "a": params.a().to_string(),
        "b": params.b().to_string(),
        "generation": report_json(&generation),
        "decomposition": report_json(&decomposition),
        "cover": {
            "relation": serde_json::to_value(&cover).expect("cover serialises"),
            "distinct_roots": distinct_roots,
        },
        "pass": pass,
    });
    let mut text = all.to_string();
    let c = &cover.coefficients;
    let _ = writeln!(
        text,
        "y^2 = ({})u^4 + ({})u^3v + ({})u^2v^2 + ({})uv^3 + ({})v^4",
        c[0], c[1], c[2], c[3], c[4]
    );
    Ok(Outcome {
        pass,
        json,
        csv: report_csv(&all),
        text,
    })
}

fn run_p1(a: &P1Args) -> Result<Outcome> {
    let bound = a.bound.unwrap_or(3 * a.n as i64 + 2);
    let solutions = p1verify::feasibility(a.n, bound)?;
    let certificate = if a.n >= 2 {
        Some(p1verify::contradiction_certificate(a.n)?)
    } else {
        None
    };
    let mut json = json!({
        "n": a.n,
        "bound": bound,
        "solutions": serde_json::to_value(&solutions).expect("solutions serialise"),
    });
    if let Some(c) = &certificate {
        json["certificate"] = serde_json::to_value(c).expect("certificate serialises");
    }
    let mut csv = String::from("a,t\n");
    let mut text = format!("n = {}, bound = {bound}: {} solution(s)\n", a.n, solutions.len());
    for s in &solutions {
        let a: Vec<String> = s.a.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(csv, "{},{}", a.join(";"), s.t);
        let _ = writeln!(text, "  a = ({}), t = {}", a.join(", "), s.t);
    }
    if let Some(c) = &certificate {
        for step in &c.steps {
            let _ = writeln!(text, "  {step}");
        }
    }
    Ok(Outcome {
        pass: true,
        json,
        csv,
        text,
    })
}

/// Runs every config of a suite in input order.
pub fn run_suite(configs: &[RunConfig]) -> (bool, Value) {
    let results: Vec<Value> = configs
        .iter()
        .enumerate()
        .map(|(index, config)| {
            let config_json = serde_json::to_value(config).expect("config serialises");
            match run(config) {
                Ok(outcome) => json!({
                    "index": index,
                    "config": config_json,
                    "pass": outcome.pass,
                    "exit_code": outcome.exit_code(),
                    "output": outcome.json,
                }),
                Err(e) => json!({
                    "index": index,
                    "config": config_json,
                    "pass": false,
                    "exit_code": EXIT_USAGE,
                    "error": e.to_string(),
                }),
            }
        })
        .collect();
    let pass = results.iter().all(|r| r["pass"] == Value::Bool(true));
    (pass, json!({ "pass": pass, "results": results }))
}

pub fn parse_suite(text: &str) -> Result<Vec<RunConfig>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid suite file: {e}")))
}

/// Parses arguments, runs, and returns `(exit status, stdout, stderr)`.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return if e.use_stderr() {
                (code, String::new(), e.to_string())
            } else {
                (code, e.to_string(), String::new())
            };
        }
    };
    match cli.command {
        CliCommand::Run(config) => match run(&config) {
            Ok(outcome) => (outcome.exit_code(), outcome.render(config.format()), String::new()),
            Err(e) => (EXIT_USAGE, String::new(), format!("error: {e}\n")),
        },
        CliCommand::Suite { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return (EXIT_USAGE, String::new(), format!("error: cannot read {}: {e}\n", file.display())),
            };
            let configs = match parse_suite(&text) {
                Ok(c) => c,
                Err(e) => return (EXIT_USAGE, String::new(), format!("error: {e}\n")),
            };
            let (pass, report) = run_suite(&configs);
            let mut out = serde_json::to_string_pretty(&report).expect("report serialises");
            out.push('\n');
            (if pass { EXIT_PASS } else { EXIT_FAIL }, out, String::new())
        }
    }
}
