//! `point`, `sweep` and `verify` subcommands.
//!
//! Everything is reachable in-process through [`run`]; the binary only wires
//! up the real process streams. Numbers are printed as the shortest decimal
//! that round-trips, so a `point` query at a sweep grid node reproduces the
//! sweep row exactly.

use std::f64::consts::FRAC_PI_2;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::ghshift::{self, Method, Regime};
use crate::media::{kinematics, PotentialKind, PotentialSpec, ScatterScenario};
use crate::oracle;
use crate::qnum::ComplexNum;
use crate::scatter;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

pub const CSV_HEADER: &str = "theta_rad,abs_R,arg_R,phase_gh,shift_adim,regime";

#[derive(Parser, Debug)]
#[command(
    name = "quatgh",
    version,
    about = "GH shifts for complex and quaternionic step potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Amplitudes, phases and shift at one angle, as JSON.
    Point(PointArgs),
    /// CSV over an evenly spaced angle grid.
    Sweep(SweepArgs),
    /// Seeded oracle suite; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum KindArg {
    Complex,
    Purequat,
    General,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Analytic,
    Fd,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Analytic => Method::Analytic,
            MethodArg::Fd => Method::FiniteDifference,
        }
    }
}

/// Column groups of the sweep CSV. `theta_rad` and `regime` are always present.
#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputGroup {
    /// `abs_R`, `arg_R`
    Amplitude,
    /// `phase_gh`
    Phase,
    /// `shift_adim`
    Shift,
}

fn finite_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err("value must be finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug)]
struct PotentialArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Scalar part V1/E (complex and general kinds).
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    v1: Option<f64>,
    /// |V2 + iV3|/E (purequat and general kinds).
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    vmod: Option<f64>,
    /// arg(V2 + iV3) in radians, default 0.
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    vphase: Option<f64>,
    /// Incident momentum.
    #[arg(long, default_value_t = 1.0, value_parser = finite_f64, allow_negative_numbers = true)]
    p: f64,
    /// Shift derivative; general potentials default to `fd`.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Read every angle flag in degrees.
    #[arg(long)]
    deg: bool,
}

impl PotentialArgs {
    fn potential(&self) -> Result<PotentialSpec, Failure> {
        let forbid = |name: &str, v: Option<f64>| match v {
            Some(_) => Err(Failure::Usage(
                format!("--{name} is not used by --kind {:?}", self.kind).to_lowercase(),
            )),
            None => Ok(()),
        };
        let need = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| {
                Failure::Usage(format!("--kind {:?} requires --{name}", self.kind).to_lowercase())
            })
        };
        let vphase = self.vphase.unwrap_or(0.0);
        let spec = match self.kind {
            KindArg::Complex => {
                forbid("vmod", self.vmod)?;
                forbid("vphase", self.vphase)?;
                PotentialSpec::complex(need("v1", self.v1)?)
            }
            KindArg::Purequat => {
                forbid("v1", self.v1)?;
                PotentialSpec::pure_quaternionic(need("vmod", self.vmod)?, vphase)
            }
            KindArg::General => {
                PotentialSpec::from_polar(need("v1", self.v1)?, need("vmod", self.vmod)?, vphase)
            }
        };
        Ok(spec?)
    }

    fn method(&self, potential: &PotentialSpec) -> Method {
        match (self.method, potential.kind()) {
            (Some(m), _) => m.into(),
            (None, PotentialKind::General) => Method::FiniteDifference,
            (None, _) => Method::Analytic,
        }
    }

    fn angle(&self, x: f64) -> f64 {
        if self.deg {
            x.to_radians()
        } else {
            x
        }
    }
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Incidence angle (radians unless --deg).
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    theta_min: f64,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    theta_max: f64,
    /// Grid points, endpoints included.
    #[arg(long)]
    steps: usize,
    #[arg(long, value_enum, value_delimiter = ',')]
    outputs: Vec<OutputGroup>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Scenarios per potential kind.
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Added to every solved R before checking. Test hook.
    #[arg(long, hide = true, default_value_t = 0.0, value_parser = finite_f64)]
    inject_perturbation: f64,
}

/// Why a subcommand stopped early; each maps onto one exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(msg) => Failure::Usage(msg),
            e @ Error::UnsupportedMethod(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

/// One evaluated angle: the columns of a sweep row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub abs_r: f64,
    pub arg_r: f64,
    pub phase_gh: f64,
    /// `+∞` at critical incidence.
    pub shift_adim: f64,
    pub regime: Regime,
}

/// Validated sweep parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub potential: PotentialSpec,
    pub theta_min: f64,
    pub theta_max: f64,
    pub steps: usize,
    pub p: f64,
    pub method: Method,
    outputs: [bool; 3],
}

impl SweepConfig {
    /// Requires `0 ≤ theta_min < theta_max < π/2` and `steps ≥ 2`. All
    /// column groups are enabled; narrow them with [`SweepConfig::with_outputs`].
    pub fn new(
        potential: PotentialSpec,
        theta_min: f64,
        theta_max: f64,
        steps: usize,
        p: f64,
        method: Method,
    ) -> crate::Result<Self> {
        if !(0.0 <= theta_min && theta_min < theta_max && theta_max < FRAC_PI_2) {
            return Err(Error::InvalidArgument(format!(
                "need 0 <= theta_min < theta_max < pi/2, got [{theta_min}, {theta_max}]"
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "steps must be at least 2, got {steps}"
            )));
        }
        Ok(Self {
            potential,
            theta_min,
            theta_max,
            steps,
            p,
            method,
            outputs: [true; 3],
        })
    }

    /// Keeps only the listed column groups; an empty list keeps all of them.
    pub fn with_outputs(mut self, groups: &[OutputGroup]) -> Self {
        if !groups.is_empty() {
            self.outputs = [
                OutputGroup::Amplitude,
                OutputGroup::Phase,
                OutputGroup::Shift,
            ]
            .map(|g| groups.contains(&g));
        }
        self
    }

    pub fn emits(&self, group: OutputGroup) -> bool {
        self.outputs[group as usize]
    }

    /// Evenly spaced angles; the last node is exactly `theta_max`.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        let span = self.theta_max - self.theta_min;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.theta_max
                } else {
                    self.theta_min + span * (i as f64 / last as f64)
                }
            })
            .collect()
    }

    pub fn header(&self) -> String {
        let mut cols = vec!["theta_rad"];
        if self.emits(OutputGroup::Amplitude) {
            cols.extend(["abs_R", "arg_R"]);
        }
        if self.emits(OutputGroup::Phase) {
            cols.push("phase_gh");
        }
        if self.emits(OutputGroup::Shift) {
            cols.push("shift_adim");
        }
        cols.push("regime");
        cols.join(",")
    }
}

/// Reflection, GH phase and shift at one angle.
pub fn evaluate_point(scenario: &ScatterScenario, method: Method) -> crate::Result<SweepRow> {
    let r = scatter::reflection(scenario)?;
    let shift = ghshift::evaluate_shift(scenario, method)?;
    Ok(SweepRow {
        theta: scenario.theta(),
        abs_r: r.norm(),
        arg_r: r.arg(),
        phase_gh: shift.phase,
        shift_adim: shift.shift_adim,
        regime: shift.regime,
    })
}

/// Evaluates the grid in parallel; row order follows the grid.
pub fn sweep(config: &SweepConfig) -> crate::Result<Vec<SweepRow>> {
    config
        .grid()
        .into_par_iter()
        .map(|theta| {
            evaluate_point(
                &ScatterScenario::new(theta, config.p, config.potential)?,
                config.method,
            )
        })
        .collect()
}

fn fmt_real(out: &mut String, x: f64) {
    if x.is_finite() {
        out.push_str(ryu::Buffer::new().format_finite(x));
    } else {
        out.push_str(oracle::non_finite_token(x));
    }
}

/// CSV text (LF endings, header first) for `rows` under `config`'s columns.
pub fn render_csv(config: &SweepConfig, rows: &[SweepRow]) -> String {
    let mut out = config.header();
    out.push('\n');
    for row in rows {
        fmt_real(&mut out, row.theta);
        let mut field = |x: f64| {
            out.push(',');
            fmt_real(&mut out, x);
        };
        if config.emits(OutputGroup::Amplitude) {
            field(row.abs_r);
            field(row.arg_r);
        }
        if config.emits(OutputGroup::Phase) {
            field(row.phase_gh);
        }
        if config.emits(OutputGroup::Shift) {
            field(row.shift_adim);
        }
        let _ = writeln!(out, ",{}", row.regime.as_str());
    }
    out
}

fn real(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(oracle::non_finite_token(x))
    }
}

fn complex(z: ComplexNum) -> Value {
    json!({ "re": real(z.re), "im": real(z.im) })
}

/// The JSON object printed by `point`.
pub fn point_report(scenario: &ScatterScenario, method: Method) -> crate::Result<Value> {
    let row = evaluate_point(scenario, method)?;
    let amps = scatter::solve_matching(scenario)?;
    let k = kinematics(scenario);
    let v = scenario.potential();

    let mut obj = Map::new();
    obj.insert("kind".into(), json!(scenario.kind().as_str()));
    obj.insert(
        "method".into(),
        json!(match method {
            Method::Analytic => "analytic",
            Method::FiniteDifference => "fd",
        }),
    );
    obj.insert(
        "potential".into(),
        json!({ "v1": real(v.v1()), "v2": real(v.v2()), "v3": real(v.v3()) }),
    );
    obj.insert("theta_rad".into(), real(row.theta));
    obj.insert("p".into(), real(scenario.p()));
    obj.insert("index".into(), real(scenario.index()));
    obj.insert(
        "critical_angle".into(),
        scenario.critical_angle().map_or(Value::Null, real),
    );
    obj.insert(
        "kinematics".into(),
        json!({ "p_y": real(k.p_y), "p_z": real(k.p_z), "q_z": complex(k.q_z), "qt_abs": real(k.qt_abs) }),
    );
    obj.insert(
        "amplitudes".into(),
        json!({
            "r": complex(amps.r), "r_tilde": complex(amps.rt),
            "t": complex(amps.t), "t_tilde": complex(amps.tt),
            "alpha": complex(amps.alpha), "beta": complex(amps.beta),
        }),
    );
    obj.insert("abs_R".into(), real(row.abs_r));
    obj.insert("arg_R".into(), real(row.arg_r));
    obj.insert("phase_gh".into(), real(row.phase_gh));
    obj.insert("shift_adim".into(), real(row.shift_adim));
    obj.insert("regime".into(), json!(row.regime.as_str()));
    Ok(Value::Object(obj))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io("<stdout>".into(), e)),
    }
}

fn cmd_point(args: &PointArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let potential = args.potential.potential()?;
    let method = args.potential.method(&potential);
    let scenario = ScatterScenario::new(
        args.potential.angle(args.theta),
        args.potential.p,
        potential,
    )?;
    let mut text =
        serde_json::to_string_pretty(&point_report(&scenario, method)?).expect("plain JSON value");
    text.push('\n');
    emit(&text, args.out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let pa = &args.potential;
    let potential = pa.potential()?;
    let config = SweepConfig::new(
        potential,
        pa.angle(args.theta_min),
        pa.angle(args.theta_max),
        args.steps,
        pa.p,
        pa.method(&potential),
    )?
    .with_outputs(&args.outputs);
    let rows = sweep(&config)?;
    emit(&render_csv(&config, &rows), args.out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    args: &VerifyArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let report = oracle::run_suite_perturbed(args.seed, args.count, args.inject_perturbation)?;
    let mut text = report.to_json();
    text.push('\n');
    emit(&text, args.out.as_deref(), stdout)?;
    let _ = writeln!(stderr, "{report}");
    for c in report.failures().take(5) {
        let _ = writeln!(
            stderr,
            "  FAIL {} residual={:e} tol={:e} [{}]",
            c.name, c.residual, c.tolerance, c.scenario
        );
    }
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// process exit code: 0 success, 1 failed verification, 2 bad arguments,
/// 3 domain error, 4 unwritable output.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let outcome = match &cli.command {
        Command::Point(a) => cmd_point(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            EXIT_IO
        }
    }
}
