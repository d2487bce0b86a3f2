//! Command-line front end.
//!
//! Verbs: `payoff`, `decompose`, `nash`, `sweep`, `bell-verify`. Single
//! evaluations print JSON, sweeps print CSV, diagnostics go to stderr.
//!
//! Game files are JSON:
//!
//! ```json
//! {"n": 2, "A": [[3, 0], [5, 1]], "B": [[3, 5], [0, 1]]}
//! ```
//!
//! `B` is optional. When it is absent the symmetric partner `SAS`, i.e. the
//! transpose of `A`, is used and the output records `"b_source": "transpose"`.
//!
//! Angles are radians unless `--degrees` is given, which converts inputs only.
//! Floats are written in shortest round-trip form, so every output value
//! reads back as the identical double.
//!
//! Exit codes: 0 success, 1 acceptance failure, 2 parse error, 3 validation error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::{bell_nash_search, eta_grid, sample_ceilings, BellNashReport, CeilingCheck};
use crate::correlation::{CoordinatorParams, SchmidtParams};
use crate::equilibrium::{diagonal_nash_search, NashResult, SearchConfig};
use crate::payoff::{in_op, pc_coefficients, pc_table, DiagonalGame, PayoffBreakdown, PayoffTable, StrategyParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Largest accepted sweep length.
pub const MAX_SWEEP_STEPS: usize = 1_000_000;
/// Gap between numeric and closed-form Bell payoffs that `bell-verify` accepts.
pub const BELL_GAP_TOL: f64 = 1e-5;
/// Random strategy pairs drawn by `bell-verify` for the ceiling checks.
pub const CEILING_SAMPLES: usize = 100_000;

/// Fixed CSV header written by `sweep`; columns that do not apply are left empty.
pub const SWEEP_HEADER: [&str; 11] = [
    "axis", "value", "gamma1", "gamma2", "eta1", "eta2", "payoff_a", "payoff_b", "analytic", "residual", "converged",
];

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Parse(String),
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Invalid(_) => EXIT_INVALID,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// On-disk game description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BSource {
    File,
    Transpose,
}

impl GameFile {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn table(&self, rows: &[Vec<f64>], name: &str) -> CliResult<PayoffTable> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(CliError::Invalid(format!("{name} must be {n}x{n}", n = self.n)));
        }
        Ok(PayoffTable::from_rows(rows)?)
    }

    /// Validated game for the two-strategy quantum commands.
    pub fn game(&self) -> CliResult<(DiagonalGame, BSource)> {
        let a = self.table(&self.a, "A")?;
        if self.n != 2 {
            return Err(crate::Error::UnsupportedDimension(self.n).into());
        }
        match &self.b {
            Some(b) => Ok((DiagonalGame::new(a, self.table(b, "B")?)?, BSource::File)),
            None => Ok((DiagonalGame::symmetric(a), BSource::Transpose)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Gamma1,
    Gamma2,
    Eta1,
    Eta2,
}

impl SweepAxis {
    fn name(self) -> &'static str {
        match self {
            SweepAxis::Gamma1 => "gamma1",
            SweepAxis::Gamma2 => "gamma2",
            SweepAxis::Eta1 => "eta1",
            SweepAxis::Eta2 => "eta2",
        }
    }

    fn is_bell(self) -> bool {
        matches!(self, SweepAxis::Eta1 | SweepAxis::Eta2)
    }
}

/// A one-dimensional sweep; the other parameters stay fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(CliError::Invalid("sweep bounds must be finite".into()));
        }
        if self.start > self.stop {
            return Err(CliError::Invalid(format!("sweep start {} exceeds stop {}", self.start, self.stop)));
        }
        if !(2..=MAX_SWEEP_STEPS).contains(&self.steps) {
            return Err(CliError::Invalid(format!("sweep steps must be in 2..={MAX_SWEEP_STEPS}")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| if k + 1 == self.steps { self.stop } else { self.start + (self.stop - self.start) * k as f64 / last })
            .collect()
    }
}

/// Strategy flag: `0` or `1` for a pure strategy, otherwise `a0,a1,phase`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyArg {
    pub a0: f64,
    pub a1: f64,
    pub phase: f64,
}

impl FromStr for StrategyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let num = |p: &str| p.parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"));
        match parts.as_slice() {
            ["0"] => Ok(Self { a0: 1.0, a1: 0.0, phase: 0.0 }),
            ["1"] => Ok(Self { a0: 0.0, a1: 1.0, phase: 0.0 }),
            [a0, a1, phase] => Ok(Self { a0: num(a0)?, a1: num(a1)?, phase: num(phase)? }),
            _ => Err("expected 0, 1 or a0,a1,phase".into()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qgame", version, about = "Two-player quantum games: payoffs, decompositions, Nash search, Bell check")]
pub struct Cli {
    /// Read every angle flag in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Payoffs of both players with the pseudo-classical / interference split.
    Payoff(PayoffArgs),
    /// Pseudo-classical tables, interference operators and mixing coefficients.
    Decompose(DecomposeArgs),
    /// Numerical Nash equilibrium of a game file.
    Nash(NashArgs),
    /// CSV sweep of Nash payoffs along one parameter axis.
    Sweep(SweepArgs),
    /// Compare the Bell game's numeric equilibria with the closed form.
    BellVerify(BellVerifyArgs),
}

#[derive(Debug, Args)]
pub struct GameArg {
    #[arg(long, value_name = "FILE")]
    pub game: PathBuf,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma2: f64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid points per chart axis in the best-response search.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
}

impl SearchArgs {
    fn config(&self) -> CliResult<SearchConfig> {
        let mut cfg = SearchConfig { rng_seed: self.seed, ..SearchConfig::default() };
        if let Some(g) = self.grid {
            cfg.grid_density = g;
        }
        if let Some(r) = self.restarts {
            cfg.restarts = r;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct PayoffArgs {
    #[command(flatten)]
    pub game: GameArg,
    #[command(flatten)]
    pub gamma: GammaArgs,
    /// Player A's strategy: 0, 1, or a0,a1,phase.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: StrategyArg,
    /// Player B's strategy: 0, 1, or a0,a1,phase.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b: StrategyArg,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub game: GameArg,
    #[command(flatten)]
    pub gamma: GammaArgs,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NashArgs {
    #[command(flatten)]
    pub game: GameArg,
    #[command(flatten)]
    pub gamma: GammaArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Game file; required for gamma axes, rejected for eta axes.
    #[arg(long, value_name = "FILE")]
    pub game: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub axis: SweepAxis,
    #[arg(long, allow_hyphen_values = true)]
    pub start: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: f64,
    #[arg(long)]
    pub steps: usize,
    #[command(flatten)]
    pub gamma: GammaArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub eta1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub eta2: f64,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BellVerifyArgs {
    /// Check a single point instead of the grid (the other η defaults to 0).
    #[arg(long, allow_hyphen_values = true)]
    pub eta1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta2: Option<f64>,
    /// Points per η axis.
    #[arg(long, default_value_t = 11)]
    pub grid: usize,
    /// Seed for both the searches and the random ceiling samples.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Serialize)]
struct GammaOut {
    gamma1: f64,
    gamma2: f64,
}

impl From<CoordinatorParams> for GammaOut {
    fn from(g: CoordinatorParams) -> Self {
        Self { gamma1: g.gamma1(), gamma2: g.gamma2() }
    }
}

#[derive(Debug, Serialize)]
pub struct PayoffReport {
    b_source: BSource,
    gamma: GammaOut,
    a: StrategyParams,
    b: StrategyParams,
    pi_a: PayoffBreakdown,
    pi_b: PayoffBreakdown,
}

#[derive(Debug, Serialize)]
pub struct OperatorEntry {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    b_source: BSource,
    gamma: GammaOut,
    /// Weights of `A`, `SAS` and `CAC`.
    coefficients: [f64; 3],
    /// Diagonal of the pseudo-classical operator in slot order `i·n + j`.
    pc_a: Vec<f64>,
    pc_b: Vec<f64>,
    in_a: Vec<OperatorEntry>,
    in_b: Vec<OperatorEntry>,
}

#[derive(Debug, Serialize)]
pub struct NashReport {
    b_source: BSource,
    gamma: GammaOut,
    config: SearchConfig,
    #[serde(flatten)]
    result: NashResult<StrategyParams>,
}

#[derive(Debug, Serialize)]
pub struct FailingPoint {
    eta1: f64,
    eta2: f64,
    analytic: f64,
    numeric: f64,
    gap: f64,
    converged: bool,
}

#[derive(Debug, Serialize)]
pub struct BellVerifySummary {
    pass: bool,
    points: usize,
    max_gap: f64,
    gap_tol: f64,
    all_converged: bool,
    ceilings: CeilingCheck,
    ceilings_hold: bool,
    failing: Vec<FailingPoint>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `out` unless `--out` names a file.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, target, code)) => {
            let written = match target {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => out.write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "cannot write output: {e}");
                    EXIT_INVALID
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns the full output text, its destination
/// and the exit code. Nothing is written on error.
pub fn execute(cli: &Cli) -> CliResult<(String, Option<&Path>, i32)> {
    let angle = |x: f64| if cli.degrees { x.to_radians() } else { x };
    let gamma_of = |g: &GammaArgs| CoordinatorParams::new(angle(g.gamma1), angle(g.gamma2)).map_err(CliError::from);
    let strategy_of = |s: &StrategyArg| StrategyParams::new(s.a0, s.a1, angle(s.phase)).map_err(CliError::from);
    match &cli.command {
        Command::Payoff(args) => {
            let file = GameFile::read(&args.game.game)?;
            let report = cmd_payoff(&file, &strategy_of(&args.a)?, &strategy_of(&args.b)?, &gamma_of(&args.gamma)?)?;
            Ok((to_json(&report), args.out.as_deref(), EXIT_OK))
        }
        Command::Decompose(args) => {
            let report = cmd_decompose(&GameFile::read(&args.game.game)?, &gamma_of(&args.gamma)?)?;
            Ok((to_json(&report), args.out.as_deref(), EXIT_OK))
        }
        Command::Nash(args) => {
            let file = GameFile::read(&args.game.game)?;
            let report = cmd_nash(&file, &gamma_of(&args.gamma)?, &args.search.config()?)?;
            Ok((to_json(&report), args.out.as_deref(), EXIT_OK))
        }
        Command::Sweep(args) => {
            let spec = SweepSpec { axis: args.axis, start: angle(args.start), stop: angle(args.stop), steps: args.steps };
            spec.validate()?;
            let config = args.search.config()?;
            let file = match (&args.game, spec.axis.is_bell()) {
                (Some(_), true) => {
                    return Err(CliError::Invalid("eta sweeps run the Bell game and take no --game".into()))
                }
                (None, false) => return Err(CliError::Invalid("gamma sweeps need --game".into())),
                (Some(path), false) => Some(GameFile::read(path)?),
                (None, true) => None,
            };
            let fixed = SweepFixed {
                gamma1: angle(args.gamma.gamma1),
                gamma2: angle(args.gamma.gamma2),
                eta1: angle(args.eta1),
                eta2: angle(args.eta2),
            };
            Ok((cmd_sweep(file.as_ref(), &spec, &fixed, &config)?, args.out.as_deref(), EXIT_OK))
        }
        Command::BellVerify(args) => {
            let points = match (args.eta1, args.eta2) {
                (None, None) => {
                    if args.grid < 2 {
                        return Err(CliError::Invalid("--grid must be at least 2".into()));
                    }
                    eta_grid(args.grid)
                }
                (e1, e2) => vec![SchmidtParams::new(angle(e1.unwrap_or(0.0)), angle(e2.unwrap_or(0.0)))?],
            };
            let mut config = SearchConfig { rng_seed: args.seed, ..SearchConfig::default() };
            if let Some(r) = args.restarts {
                config.restarts = r;
            }
            config.validate()?;
            let summary = cmd_bell_verify(&points, &config, CEILING_SAMPLES)?;
            let code = if summary.pass { EXIT_OK } else { EXIT_FAIL };
            Ok((to_json(&summary), args.out.as_deref(), code))
        }
    }
}

/// Both players' payoffs with the pseudo-classical / interference split.
pub fn cmd_payoff(
    file: &GameFile,
    a: &StrategyParams,
    b: &StrategyParams,
    gamma: &CoordinatorParams,
) -> CliResult<PayoffReport> {
    let (game, b_source) = file.game()?;
    let (pi_a, pi_b) = game.payoffs(a, b, gamma)?;
    Ok(PayoffReport { b_source, gamma: (*gamma).into(), a: *a, b: *b, pi_a, pi_b })
}

pub fn cmd_decompose(file: &GameFile, gamma: &CoordinatorParams) -> CliResult<DecomposeReport> {
    let (game, b_source) = file.game()?;
    let flat = |t: &PayoffTable| t.rows().concat();
    let entries = |t: &PayoffTable| -> CliResult<Vec<OperatorEntry>> {
        let m = in_op(t, gamma)?;
        let d = m.dim();
        Ok((0..d * d)
            .map(|k| {
                let z = m.get(k / d, k % d);
                OperatorEntry { row: k / d, col: k % d, re: z.re, im: z.im }
            })
            .collect())
    };
    Ok(DecomposeReport {
        b_source,
        gamma: (*gamma).into(),
        coefficients: pc_coefficients(gamma),
        pc_a: flat(&pc_table(game.a(), gamma)?),
        pc_b: flat(&pc_table(game.b(), gamma)?),
        in_a: entries(game.a())?,
        in_b: entries(game.b())?,
    })
}

pub fn cmd_nash(file: &GameFile, gamma: &CoordinatorParams, cfg: &SearchConfig) -> CliResult<NashReport> {
    let (game, b_source) = file.game()?;
    let result = diagonal_nash_search(&game, gamma, cfg)?;
    Ok(NashReport { b_source, gamma: (*gamma).into(), config: *cfg, result })
}

/// Parameters held fixed while one axis is swept.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SweepFixed {
    pub gamma1: f64,
    pub gamma2: f64,
    pub eta1: f64,
    pub eta2: f64,
}

/// CSV sweep under [`SWEEP_HEADER`]. Gamma axes need a game file, eta axes
/// run the Bell game and take none.
pub fn cmd_sweep(file: Option<&GameFile>, spec: &SweepSpec, fixed: &SweepFixed, cfg: &SearchConfig) -> CliResult<String> {
    spec.validate()?;
    match (file, spec.axis.is_bell()) {
        (None, true) => bell_sweep(spec, fixed.eta1, fixed.eta2, cfg),
        (Some(f), false) => game_sweep(&f.game()?.0, spec, fixed.gamma1, fixed.gamma2, cfg),
        (Some(_), true) => Err(CliError::Invalid("eta sweeps run the Bell game and take no game file".into())),
        (None, false) => Err(CliError::Invalid("gamma sweeps need a game file".into())),
    }
}

/// Runs the η comparison on `points` plus the random ceiling checks.
pub fn cmd_bell_verify(points: &[SchmidtParams], cfg: &SearchConfig, samples: usize) -> CliResult<BellVerifySummary> {
    let reports: Vec<BellNashReport> = points
        .par_iter()
        .map(|e| bell_nash_search(e, cfg))
        .collect::<crate::Result<_>>()?;
    let max_gap = reports.iter().map(|r| r.gap).fold(0.0, f64::max);
    let failing: Vec<FailingPoint> = reports
        .iter()
        .filter(|r| r.gap.is_nan() || r.gap >= BELL_GAP_TOL)
        .map(|r| FailingPoint {
            eta1: r.eta.eta1(),
            eta2: r.eta.eta2(),
            analytic: r.analytic,
            numeric: r.numeric,
            gap: r.gap,
            converged: r.converged,
        })
        .collect();
    let ceilings = sample_ceilings(samples, cfg.rng_seed);
    let ceilings_hold = ceilings.holds();
    Ok(BellVerifySummary {
        pass: failing.is_empty() && ceilings_hold,
        points: reports.len(),
        max_gap,
        gap_tol: BELL_GAP_TOL,
        all_converged: reports.iter().all(|r| r.converged),
        ceilings,
        ceilings_hold,
        failing,
    })
}

fn bell_sweep(spec: &SweepSpec, eta1: f64, eta2: f64, cfg: &SearchConfig) -> CliResult<String> {
    let mut w = sweep_writer();
    for v in spec.values() {
        let (e1, e2) = if spec.axis == SweepAxis::Eta1 { (v, eta2) } else { (eta1, v) };
        let eta = SchmidtParams::new(e1, e2)?;
        let r = bell_nash_search(&eta, cfg)?;
        write_row(
            &mut w,
            spec.axis,
            v,
            [None, None, Some(eta.eta1()), Some(eta.eta2()), Some(r.numeric), Some(r.numeric), Some(r.analytic), Some(r.residual)],
            r.converged,
        )?;
    }
    finish(w)
}

fn game_sweep(game: &DiagonalGame, spec: &SweepSpec, g1: f64, g2: f64, cfg: &SearchConfig) -> CliResult<String> {
    let mut w = sweep_writer();
    for v in spec.values() {
        let (x, y) = if spec.axis == SweepAxis::Gamma1 { (v, g2) } else { (g1, v) };
        let gamma = CoordinatorParams::new(x, y)?;
        let r = diagonal_nash_search(game, &gamma, cfg)?;
        write_row(
            &mut w,
            spec.axis,
            v,
            [Some(gamma.gamma1()), Some(gamma.gamma2()), None, None, Some(r.payoff_a), Some(r.payoff_b), None, Some(r.residual)],
            r.converged,
        )?;
    }
    finish(w)
}

fn sweep_writer() -> csv::Writer<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_HEADER).expect("in-memory write");
    w
}

fn write_row(
    w: &mut csv::Writer<Vec<u8>>,
    axis: SweepAxis,
    value: f64,
    fields: [Option<f64>; 8],
    converged: bool,
) -> CliResult<()> {
    let num = |x: f64| serde_json::to_string(&x).expect("finite");
    let mut record = vec![axis.name().to_string(), num(value)];
    record.extend(fields.iter().map(|f| f.map(num).unwrap_or_default()));
    record.push(converged.to_string());
    w.write_record(&record).map_err(|e| CliError::Invalid(e.to_string()))
}

fn finish(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of ASCII fields"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("finite report values");
    let _ = writeln!(s);
    s
}
