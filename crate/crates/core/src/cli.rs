//! Command-line front end: configuration, execution and data emission.
//!
//! Every CSV file starts with `# key = value` lines echoing the full
//! configuration (and the collision schedule, when random), so the header
//! alone is enough to rerun the experiment. Numbers are written with 17
//! significant digits.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analysis::{distinct_values, PeriodOptions};
use crate::dynamics::{
    markovian_trajectory, orbit_sweep, random_schedule_from, run_trajectory, DynamicsError, OrbitMetric, OrbitScenario,
    PairSet, Schedule, Window, DEFAULT_WINDOW_LEN,
};
use crate::metrics::{backflow_events, DEFAULT_BACKFLOW_TOL};
use crate::model::{PureQubit, ThermalAncilla};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

const TRAJECTORY_COLUMNS: &str = "\
Columns (CSV order): n, coherence_A, coherence_env, negativity, trace_distance, rho_A_gg, rho_A_ee
  coherence_A     l1 coherence of the system started in (|g>+|e>)/sqrt2
  coherence_env   l1 coherence of the reduced environment state
  negativity      negativity across the A | environment cut
  trace_distance  distance between the evolved (|g>+|e>)/sqrt2 and (|g>-|e>)/sqrt2
  rho_A_gg/ee     populations of the first system state";

const ORBIT_COLUMNS: &str = "\
Columns (CSV order): p, n, value
  one row per windowed step n for every grid point p; value is the chosen --metric";

const MARKOVIAN_COLUMNS: &str = "\
Columns (CSV order): n, p, trace_distance, coherence_A, rho_A_gg, rho_A_ee
  rows ordered by p, then n; a footer reports monotonicity and the final state per p";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("numerical invariant violated: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::InvariantViolation { .. } => CliError::Numerical(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Coherence,
    CoherenceEnv,
    Negativity,
    TraceDistance,
}

impl From<MetricArg> for OrbitMetric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Coherence => OrbitMetric::CoherenceA,
            MetricArg::CoherenceEnv => OrbitMetric::CoherenceEnv,
            MetricArg::Negativity => OrbitMetric::Negativity,
            MetricArg::TraceDistance => OrbitMetric::TraceDistance,
        }
    }
}

fn metric_from_name(name: &str) -> Option<OrbitMetric> {
    [OrbitMetric::CoherenceA, OrbitMetric::CoherenceEnv, OrbitMetric::Negativity, OrbitMetric::TraceDistance]
        .into_iter()
        .find(|m| m.name() == name)
}

/// `start:stop:step`, inclusive of `stop` up to round-off.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    text: String,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid '{s}' is not of the form start:stop:step"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number '{t}' in grid '{s}'"));
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
            return Err(format!("grid '{s}' is empty"));
        }
        if start < 0.0 || stop > 1.0 {
            return Err(format!("grid '{s}' leaves [0, 1]"));
        }
        Ok(Self { start, stop, step, text: s.trim().to_string() })
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("window '{s}' is not of the form start:end"))?;
    let start = a.trim().parse().map_err(|_| format!("bad window start '{a}'"))?;
    let end = b.trim().parse().map_err(|_| format!("bad window end '{b}'"))?;
    Ok(Window { start, end })
}

fn parse_p_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad probability '{t}'"))).collect()
}

#[derive(Debug, Parser)]
#[command(name = "qcollide", version, about = "Qubit collision-model simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-collision metrics for 1 ancilla (repeated A-B) or 2-3 ancillas (random pairs).
    #[command(after_help = TRAJECTORY_COLUMNS)]
    Trajectory(CommonArgs),
    /// Long-term metric values over a grid of interaction probabilities.
    #[command(after_help = ORBIT_COLUMNS)]
    Orbit(CommonArgs),
    /// Fresh-ancilla (infinite bath) evolution for one or more p.
    #[command(after_help = MARKOVIAN_COLUMNS)]
    Markovian(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Interaction probability, or a comma-separated list (markovian).
    #[arg(long)]
    pub p: Option<String>,
    /// Grid of probabilities start:stop:step.
    #[arg(long = "p-grid")]
    pub p_grid: Option<String>,
    /// Ground-state weight of every ancilla.
    #[arg(long = "wg", default_value_t = 0.8)]
    pub w_g: f64,
    /// Number of ancillas (1..=3).
    #[arg(long, default_value_t = 1)]
    pub ancillas: usize,
    /// Number of collisions.
    #[arg(long, default_value_t = 100)]
    pub collisions: usize,
    /// Seed of the random collision schedule.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Half-open window of recorded steps start:end (orbit; default: last 60).
    #[arg(long)]
    pub window: Option<String>,
    /// Draw only system-ancilla pairs in random schedules.
    #[arg(long = "restrict-system-ancilla")]
    pub restrict_system_ancilla: bool,
    /// Metric recorded by orbit sweeps.
    #[arg(long, value_enum, default_value_t = MetricArg::Coherence)]
    pub metric: MetricArg,
    /// Minimum trace-distance increase counted as backflow.
    #[arg(long = "backflow-tol", default_value_t = DEFAULT_BACKFLOW_TOL)]
    pub backflow_tol: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Single,
    Multi,
    Markovian,
    Orbit,
}

impl Scenario {
    fn name(self) -> &'static str {
        match self {
            Scenario::Single => "single",
            Scenario::Multi => "multi",
            Scenario::Markovian => "markovian",
            Scenario::Orbit => "orbit",
        }
    }

    fn command(self) -> &'static str {
        match self {
            Scenario::Single | Scenario::Multi => "trajectory",
            Scenario::Markovian => "markovian",
            Scenario::Orbit => "orbit",
        }
    }
}

/// Validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    /// Explicit probabilities (from `--p`), used when no grid is given.
    pub p_values: Vec<f64>,
    pub p_grid: Option<GridSpec>,
    pub w_g: f64,
    pub n_ancillas: usize,
    pub n_collisions: usize,
    pub seed: Option<u64>,
    pub window: Option<Window>,
    pub restrict_system_ancilla: bool,
    pub metric: OrbitMetric,
    pub backflow_tol: f64,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_command(cmd: &Command) -> Result<Self, CliError> {
        let (args, command) = match cmd {
            Command::Trajectory(a) => (a, "trajectory"),
            Command::Orbit(a) => (a, "orbit"),
            Command::Markovian(a) => (a, "markovian"),
        };
        let scenario = match command {
            "trajectory" if args.ancillas > 1 => Scenario::Multi,
            "trajectory" => Scenario::Single,
            "orbit" => Scenario::Orbit,
            _ => Scenario::Markovian,
        };
        let cfg = Self {
            scenario,
            p_values: match &args.p {
                Some(s) => parse_p_list(s).map_err(CliError::Config)?,
                None => Vec::new(),
            },
            p_grid: args.p_grid.as_deref().map(str::parse).transpose().map_err(CliError::Config)?,
            w_g: args.w_g,
            n_ancillas: args.ancillas,
            n_collisions: args.collisions,
            seed: args.seed,
            window: args.window.as_deref().map(parse_window).transpose().map_err(CliError::Config)?,
            restrict_system_ancilla: args.restrict_system_ancilla,
            metric: args.metric.into(),
            backflow_tol: args.backflow_tol,
            format: args.format,
            output: args.out.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        match &self.p_grid {
            Some(g) => g.values(),
            None => self.p_values.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        let ps = self.probabilities();
        if ps.is_empty() {
            return bad("no interaction probability given (use --p or --p-grid)".into());
        }
        if let Some(p) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return bad(format!("interaction probability {p} is outside [0, 1]"));
        }
        if self.p_grid.is_some() && !self.p_values.is_empty() {
            return bad("--p and --p-grid are mutually exclusive".into());
        }
        if matches!(self.scenario, Scenario::Single | Scenario::Multi) && ps.len() != 1 {
            return bad("trajectory takes exactly one probability".into());
        }
        if !(0.0..=1.0).contains(&self.w_g) {
            return bad(format!("w_g = {} is outside [0, 1]", self.w_g));
        }
        if !(1..=3).contains(&self.n_ancillas) {
            return bad(format!("--ancillas must be 1, 2 or 3, got {}", self.n_ancillas));
        }
        if self.n_ancillas > 1 && matches!(self.scenario, Scenario::Orbit | Scenario::Markovian) {
            return bad(format!("{} runs use a single ancilla", self.scenario.command()));
        }
        if self.n_collisions == 0 {
            return bad("--collisions must be positive".into());
        }
        if self.backflow_tol.is_nan() || self.backflow_tol < 0.0 {
            return bad("--backflow-tol must be non-negative".into());
        }
        if let Some(w) = self.window {
            w.validate(self.n_collisions).map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(())
    }

    fn ancilla(&self) -> Result<ThermalAncilla, CliError> {
        ThermalAncilla::from_ground_weight(self.w_g).map_err(|e| CliError::Config(e.to_string()))
    }

    fn pair_set(&self) -> PairSet {
        if self.restrict_system_ancilla {
            PairSet::SystemAncilla
        } else {
            PairSet::All
        }
    }

    /// `# key = value` lines describing this configuration.
    pub fn header(&self) -> Vec<(String, String)> {
        let mut h = vec![
            ("command".to_string(), self.scenario.command().to_string()),
            ("scenario".to_string(), self.scenario.name().to_string()),
        ];
        match &self.p_grid {
            Some(g) => h.push(("p_grid".into(), g.to_string())),
            None => h.push(("p".into(), self.p_values.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))),
        }
        h.push(("w_g".into(), self.w_g.to_string()));
        h.push(("ancillas".into(), self.n_ancillas.to_string()));
        h.push(("collisions".into(), self.n_collisions.to_string()));
        h.push(("seed".into(), self.seed.map_or("none".into(), |s| s.to_string())));
        if let Some(w) = self.window {
            h.push(("window".into(), format!("{}:{}", w.start, w.end)));
        }
        h.push(("restrict_system_ancilla".into(), self.restrict_system_ancilla.to_string()));
        if self.scenario == Scenario::Orbit {
            h.push(("metric".into(), self.metric.name().to_string()));
        }
        h.push(("backflow_tol".into(), self.backflow_tol.to_string()));
        h.push(("format".into(), self.format.name().to_string()));
        h
    }

    /// Rebuilds a configuration from the `# key = value` lines of an emitted
    /// CSV file. Unknown keys are ignored.
    pub fn from_header(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self {
            scenario: Scenario::Single,
            p_values: Vec::new(),
            p_grid: None,
            w_g: 0.8,
            n_ancillas: 1,
            n_collisions: 100,
            seed: None,
            window: None,
            restrict_system_ancilla: false,
            metric: OrbitMetric::CoherenceA,
            backflow_tol: DEFAULT_BACKFLOW_TOL,
            format: OutputFormat::Csv,
            output: None,
        };
        let bad = |k: &str, v: &str| CliError::Config(format!("bad header value {k} = {v}"));
        for line in text.lines() {
            let Some(rest) = line.strip_prefix('#') else { break };
            let Some((key, value)) = rest.split_once('=') else { continue };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "scenario" => {
                    cfg.scenario = match value {
                        "single" => Scenario::Single,
                        "multi" => Scenario::Multi,
                        "orbit" => Scenario::Orbit,
                        "markovian" => Scenario::Markovian,
                        _ => return Err(bad(key, value)),
                    }
                }
                "p" => cfg.p_values = parse_p_list(value).map_err(CliError::Config)?,
                "p_grid" => cfg.p_grid = Some(value.parse().map_err(CliError::Config)?),
                "w_g" => cfg.w_g = value.parse().map_err(|_| bad(key, value))?,
                "ancillas" => cfg.n_ancillas = value.parse().map_err(|_| bad(key, value))?,
                "collisions" => cfg.n_collisions = value.parse().map_err(|_| bad(key, value))?,
                "seed" if value == "none" => cfg.seed = None,
                "seed" => cfg.seed = Some(value.parse().map_err(|_| bad(key, value))?),
                "window" => cfg.window = Some(parse_window(value).map_err(CliError::Config)?),
                "restrict_system_ancilla" => {
                    cfg.restrict_system_ancilla = value.parse().map_err(|_| bad(key, value))?
                }
                "metric" => cfg.metric = metric_from_name(value).ok_or_else(|| bad(key, value))?,
                "backflow_tol" => cfg.backflow_tol = value.parse().map_err(|_| bad(key, value))?,
                "format" => cfg.format = OutputFormat::from_str(value, true).map_err(|_| bad(key, value))?,
                _ => {}
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(i) => (*i).into(),
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(serde_json::Value::Null, Into::into),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

/// A table with header and footer comments.
#[derive(Debug, Clone, PartialEq)]
pub struct DataTable {
    pub header: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub footer: Vec<(String, String)>,
}

impl DataTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        for (k, v) in &self.footer {
            let _ = writeln!(out, "# {k} = {v}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// The data section of an emitted CSV file: everything that is not a comment.
pub fn csv_data_section(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
}

/// Runs the experiment and returns its table.
pub fn execute(cfg: &ExperimentConfig) -> Result<DataTable, CliError> {
    cfg.validate()?;
    match cfg.scenario {
        Scenario::Single | Scenario::Multi => trajectory_table(cfg),
        Scenario::Orbit => orbit_table(cfg),
        Scenario::Markovian => markovian_table(cfg),
    }
}

fn trajectory_table(cfg: &ExperimentConfig) -> Result<DataTable, CliError> {
    let mut cfg = cfg.clone();
    let p = cfg.probabilities()[0];
    let ancilla = cfg.ancilla()?;
    let ancillas = vec![ancilla; cfg.n_ancillas];
    let schedule = if cfg.n_ancillas == 1 {
        Schedule::repeated(2, (0, 1), cfg.n_collisions)?
    } else {
        let seed = *cfg.seed.get_or_insert_with(rand::random);
        random_schedule_from(cfg.n_ancillas + 1, cfg.n_collisions, seed, cfg.pair_set())?
    };
    let traj = run_trajectory(&[PureQubit::plus(), PureQubit::minus()], &ancillas, p, &schedule)?;

    let mut header = cfg.header();
    if cfg.n_ancillas > 1 {
        header.push(("schedule".into(), schedule.labelled().join(" ")));
    }
    let rows = traj
        .steps
        .iter()
        .map(|s| {
            vec![
                Cell::Int(s.n as u64),
                Cell::Num(s.coherence_a),
                s.coherence_env.into(),
                s.negativity.into(),
                s.trace_distance.into(),
                Cell::Num(s.populations_a[0]),
                Cell::Num(s.populations_a[1]),
            ]
        })
        .collect();
    let report =
        backflow_events(&traj.distance_series(), cfg.backflow_tol).map_err(|e| CliError::Config(e.to_string()))?;
    let footer = vec![
        ("backflow_events".into(), report.events.len().to_string()),
        ("total_backflow".into(), format!("{:.16e}", report.total_backflow)),
        ("verdict".into(), if report.is_markovian() { "markovian" } else { "non-markovian" }.into()),
    ];
    Ok(DataTable {
        header,
        columns: vec!["n", "coherence_A", "coherence_env", "negativity", "trace_distance", "rho_A_gg", "rho_A_ee"],
        rows,
        footer,
    })
}

fn orbit_table(cfg: &ExperimentConfig) -> Result<DataTable, CliError> {
    let grid = cfg.probabilities();
    let window = cfg.window.unwrap_or_else(|| Window::last(DEFAULT_WINDOW_LEN, cfg.n_collisions));
    let scenario = OrbitScenario { ancilla: cfg.ancilla()?, metric: cfg.metric, ..OrbitScenario::default() };
    let diagram = orbit_sweep(&grid, cfg.n_collisions, window, &scenario)?;
    let opts = PeriodOptions::default();

    let mut rows = Vec::new();
    let mut footer = Vec::new();
    for (p, values) in diagram.p_grid.iter().zip(&diagram.values) {
        for (k, v) in values.iter().enumerate() {
            rows.push(vec![Cell::Num(*p), Cell::Int((window.start + k) as u64), Cell::Num(*v)]);
        }
        let clusters = distinct_values(values, opts.cluster_tol).map_err(|e| CliError::Config(e.to_string()))?;
        footer.push((format!("clusters[p={p}]"), clusters.to_string()));
    }
    let mut header = cfg.header();
    header.push(("window_used".into(), format!("{}:{}", window.start, window.end)));
    Ok(DataTable { header, columns: vec!["p", "n", "value"], rows, footer })
}

fn markovian_table(cfg: &ExperimentConfig) -> Result<DataTable, CliError> {
    let ancilla = cfg.ancilla()?;
    let mut ps = cfg.probabilities();
    ps.sort_by(f64::total_cmp);
    ps.dedup();
    let mut rows = Vec::new();
    let mut footer = Vec::new();
    for p in ps {
        let traj = markovian_trajectory([PureQubit::plus(), PureQubit::minus()], p, &ancilla, cfg.n_collisions)?;
        for s in &traj.steps {
            rows.push(vec![
                Cell::Int(s.n as u64),
                Cell::Num(p),
                s.trace_distance.into(),
                Cell::Num(s.coherence_a),
                Cell::Num(s.populations_a[0]),
                Cell::Num(s.populations_a[1]),
            ]);
        }
        let report =
            backflow_events(&traj.distance_series(), cfg.backflow_tol).map_err(|e| CliError::Config(e.to_string()))?;
        footer.push((format!("monotone[p={p}]"), report.is_markovian().to_string()));
        let last = traj.steps.last().expect("n=0 is always recorded");
        footer.push((
            format!("final_rho_A[p={p}]"),
            format!("{:.16e},{:.16e}", last.populations_a[0], last.populations_a[1]),
        ));
    }
    Ok(DataTable {
        header: cfg.header(),
        columns: vec!["n", "p", "trace_distance", "coherence_A", "rho_A_gg", "rho_A_ee"],
        rows,
        footer,
    })
}

/// Runs a configuration and writes the result to its output (or stdout).
pub fn run(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let table = execute(cfg)?;
    let text = table.render(cfg.format);
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = ExperimentConfig::from_command(&cli.command).and_then(|cfg| run(&cfg));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("qcollide: {e}");
            e.exit_code()
        }
    }
}
