//! Batch front end.
//!
//! A run is described by a flat `key = value` file (TOML syntax) plus a few
//! flags that override it. Every key has a default, so an empty file is a
//! valid config; unknown keys are errors.
//!
//! | key | default |
//! |-----|---------|
//! | `n_sites` | 6 |
//! | `horizon` | 4 |
//! | `omega` | 1.0 |
//! | `mu` | 0.7 |
//! | `link_coupling` | 0.4 |
//! | `lambda` | 0.5 |
//! | `dt` | 0.15 |
//! | `base_operator` | `"x"` (`x`, `y`, `z`) |
//! | `kind` | `"local"` (`none`, `local`, `coefficient_nonlocal`, `operator_nonlocal`) |
//! | `nonlocal_site` | `n_sites − 1` |
//! | `experiment` | `"all"` |
//! | `n_foliations` | 50 |
//! | `seed` | 42 |
//! | `out` | `"reports"` |
//! | `format` | `"both"` (`rows`, `structured`, `both`) |
//! | `foliation_file` | none |
//! | `exploration_budget` | 10000 |
//! | `alice_site` | 0 |
//! | `bob_site` | `n_sites − 1` |
//! | `probe_site` | `n_sites / 2` |
//! | `cut` | first half of the chain |
//! | `initial_state` | `"tilted"` (`tilted`, `zero`, `plus`) |
//! | `expect` | `"auto"` (`auto`, `covariant`, `violation`) |
//! | `export_trajectory` | false |
//!
//! Each selected experiment writes `<out>/<name>.report` (structured) and
//! `<out>/<name>.rows` (CSV). Exit status: 0 when every verdict passes,
//! 2 when one fails, 1 on usage, config or I/O errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use toml::{Table, Value};

use crate::dynamics::{evolve_tracked, ModelConfig, NonlinearityKind, NonlinearitySpec, Pauli};
use crate::error::{Error, Result};
use crate::experiments::{
    degeneracy_experiment, entanglement_monitor, fmt_real, foliation_sweep, integrability_check,
    map_nonlinearity_check, signaling_experiment, Bound, Cell, Expectation, ExperimentReport,
    InitialState, MeasurementSetting,
};
use crate::spacetime::Foliation;

pub const KINDS: [&str; 4] = ["none", "local", "coefficient_nonlocal", "operator_nonlocal"];

const KEYS: [&str; 24] = [
    "n_sites",
    "horizon",
    "omega",
    "mu",
    "link_coupling",
    "lambda",
    "dt",
    "base_operator",
    "kind",
    "nonlocal_site",
    "experiment",
    "n_foliations",
    "seed",
    "out",
    "format",
    "foliation_file",
    "exploration_budget",
    "alice_site",
    "bob_site",
    "probe_site",
    "cut",
    "initial_state",
    "expect",
    "export_trajectory",
];

/// Norm drift allowed on the exported trajectory.
const TRAJECTORY_NORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Integrability,
    Sweep,
    Signal,
    Degeneracy,
    Nonlinearity,
    Entanglement,
    All,
}

impl Experiment {
    pub const EACH: [Experiment; 6] = [
        Experiment::Integrability,
        Experiment::Sweep,
        Experiment::Signal,
        Experiment::Degeneracy,
        Experiment::Nonlinearity,
        Experiment::Entanglement,
    ];

    /// Report name, also the stem of the output files.
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Integrability => "integrability_check",
            Experiment::Sweep => "foliation_sweep",
            Experiment::Signal => "signaling_experiment",
            Experiment::Degeneracy => "degeneracy_experiment",
            Experiment::Nonlinearity => "map_nonlinearity_check",
            Experiment::Entanglement => "entanglement_monitor",
            Experiment::All => "all",
        }
    }

    pub fn selected(self) -> Vec<Experiment> {
        match self {
            Experiment::All => Self::EACH.to_vec(),
            one => vec![one],
        }
    }
}

impl FromStr for Experiment {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "integrability" | "integrability_check" => Experiment::Integrability,
            "sweep" | "foliation_sweep" => Experiment::Sweep,
            "signal" | "signaling" | "signaling_experiment" => Experiment::Signal,
            "degeneracy" | "degeneracy_experiment" => Experiment::Degeneracy,
            "nonlinearity" | "map_nonlinearity_check" => Experiment::Nonlinearity,
            "entanglement" | "entanglement_monitor" => Experiment::Entanglement,
            "all" => Experiment::All,
            other => {
                return Err(format!(
                    "unknown experiment `{other}` (expected integrability, sweep, signal, \
                     degeneracy, nonlinearity, entanglement or all)"
                ))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Rows,
    Structured,
    Both,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Rows => "rows",
            OutputFormat::Structured => "structured",
            OutputFormat::Both => "both",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rows" => Ok(OutputFormat::Rows),
            "structured" => Ok(OutputFormat::Structured),
            "both" => Ok(OutputFormat::Both),
            other => Err(format!(
                "unknown format `{other}` (expected rows, structured or both)"
            )),
        }
    }
}

/// Fully resolved run description.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub experiment: Experiment,
    pub n_foliations: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub format: OutputFormat,
    pub foliation_file: Option<PathBuf>,
    pub exploration_budget: usize,
    pub alice_site: usize,
    pub bob_site: usize,
    pub probe_site: usize,
    pub cut: Vec<usize>,
    pub initial_state: InitialState,
    pub expect: Expectation,
    pub export_trajectory: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::from_table(&Table::new()).expect("defaults are valid")
    }
}

fn float(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(i) => Ok(*i as f64),
        other => Err(Error::config(key, format!("expected a number, got {}", other.type_str()))),
    }
}

fn uint(key: &str, v: &Value) -> Result<u64> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        Value::Integer(i) => Err(Error::config(key, format!("must be non-negative, got {i}"))),
        other => Err(Error::config(
            key,
            format!("expected an integer, got {}", other.type_str()),
        )),
    }
}

fn text<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::config(key, format!("expected a string, got {}", v.type_str())))
}

fn choice<T: FromStr<Err = String>>(key: &str, v: &Value) -> Result<T> {
    text(key, v)?.parse().map_err(|e| Error::config(key, e))
}

fn sites(key: &str, v: &Value) -> Result<Vec<usize>> {
    match v {
        Value::Array(items) => items.iter().map(|x| uint(key, x).map(|s| s as usize)).collect(),
        Value::String(s) => s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::config(key, format!("`{t}` is not a site index")))
            })
            .collect(),
        other => Err(Error::config(
            key,
            format!("expected an array of sites, got {}", other.type_str()),
        )),
    }
}

fn site_in_range(key: &str, site: usize, n: usize) -> Result<usize> {
    if site >= n {
        return Err(Error::config(
            key,
            format!("site {site} out of range for {n} sites"),
        ));
    }
    Ok(site)
}

impl RunConfig {
    /// Resolves a flat table, applying defaults for missing keys.
    pub fn from_table(table: &Table) -> Result<Self> {
        for (key, value) in table {
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::config(key, "unknown key"));
            }
            if value.is_table() {
                return Err(Error::config(key, "nested tables are not allowed"));
            }
        }
        let get = |k: &str| table.get(k);
        let d = ModelConfig::default();

        let n = get("n_sites").map(|v| uint("n_sites", v)).transpose()?.unwrap_or(d.n_sites as u64) as usize;
        if !(2..=crate::quantum::MAX_SITES).contains(&n) {
            return Err(Error::config(
                "n_sites",
                format!("{n} outside 2..={}", crate::quantum::MAX_SITES),
            ));
        }
        let horizon = get("horizon").map(|v| uint("horizon", v)).transpose()?.unwrap_or(d.horizon as u64) as usize;
        if horizon == 0 {
            return Err(Error::config("horizon", "must be at least 1"));
        }
        let real = |k: &str, default: f64| -> Result<f64> {
            let x = get(k).map(|v| float(k, v)).transpose()?.unwrap_or(default);
            if !x.is_finite() {
                return Err(Error::config(k, "must be finite"));
            }
            Ok(x)
        };
        let omega = real("omega", d.omega)?;
        let mu = real("mu", d.mu)?;
        let link_coupling = real("link_coupling", d.link_coupling)?;
        let lambda = real("lambda", d.nonlinearity.lambda)?;
        let dt = real("dt", d.dt)?;
        if dt <= 0.0 {
            return Err(Error::config("dt", format!("must be > 0, got {dt}")));
        }
        let base_operator = match get("base_operator").map(|v| text("base_operator", v)).transpose()? {
            None | Some("x") => Pauli::X,
            Some("y") => Pauli::Y,
            Some("z") => Pauli::Z,
            Some(other) => {
                return Err(Error::config(
                    "base_operator",
                    format!("unknown operator `{other}` (expected x, y or z)"),
                ))
            }
        };
        let remote = get("nonlocal_site")
            .map(|v| uint("nonlocal_site", v))
            .transpose()?
            .map_or(n - 1, |s| s as usize);
        let remote = site_in_range("nonlocal_site", remote, n)?;
        let kind = match get("kind").map(|v| text("kind", v)).transpose()? {
            None | Some("local") => NonlinearityKind::Local,
            Some("none") => NonlinearityKind::None,
            Some("coefficient_nonlocal") => NonlinearityKind::CoefficientNonlocal { source: remote },
            Some("operator_nonlocal") => NonlinearityKind::OperatorNonlocal { partner: remote },
            Some(other) => {
                return Err(Error::config(
                    "kind",
                    format!("unknown kind `{other}` (valid kinds: {})", KINDS.join(", ")),
                ))
            }
        };
        let model = ModelConfig {
            n_sites: n,
            horizon,
            omega,
            mu,
            link_coupling,
            dt,
            base_operator,
            nonlinearity: NonlinearitySpec::new(kind, lambda),
        };

        let opt_site = |k: &str, default: usize| -> Result<usize> {
            let s = get(k).map(|v| uint(k, v)).transpose()?.map_or(default, |s| s as usize);
            site_in_range(k, s, n)
        };
        let alice_site = opt_site("alice_site", 0)?;
        let bob_site = opt_site("bob_site", n - 1)?;
        let probe_site = opt_site("probe_site", n / 2)?;
        let cut = match get("cut") {
            Some(v) => {
                let mut c = sites("cut", v)?;
                c.sort_unstable();
                c.dedup();
                for &s in &c {
                    site_in_range("cut", s, n)?;
                }
                if c.is_empty() || c.len() == n {
                    return Err(Error::config("cut", "must be a proper, non-empty subset of sites"));
                }
                c
            }
            None => (0..n / 2).collect(),
        };

        Ok(RunConfig {
            model,
            experiment: get("experiment")
                .map(|v| choice("experiment", v))
                .transpose()?
                .unwrap_or(Experiment::All),
            n_foliations: get("n_foliations")
                .map(|v| uint("n_foliations", v))
                .transpose()?
                .unwrap_or(50) as usize,
            seed: get("seed").map(|v| uint("seed", v)).transpose()?.unwrap_or(42),
            out: get("out")
                .map(|v| text("out", v).map(PathBuf::from))
                .transpose()?
                .unwrap_or_else(|| PathBuf::from("reports")),
            format: get("format")
                .map(|v| choice("format", v))
                .transpose()?
                .unwrap_or(OutputFormat::Both),
            foliation_file: get("foliation_file")
                .map(|v| text("foliation_file", v).map(PathBuf::from))
                .transpose()?,
            exploration_budget: match get("exploration_budget")
                .map(|v| uint("exploration_budget", v))
                .transpose()?
            {
                Some(0) => return Err(Error::config("exploration_budget", "must be positive")),
                Some(b) => b as usize,
                None => 10_000,
            },
            alice_site,
            bob_site,
            probe_site,
            cut,
            initial_state: get("initial_state")
                .map(|v| choice("initial_state", v))
                .transpose()?
                .unwrap_or_default(),
            expect: get("expect")
                .map(|v| choice("expect", v))
                .transpose()?
                .unwrap_or_default(),
            export_trajectory: match get("export_trajectory") {
                None => false,
                Some(Value::Boolean(b)) => *b,
                Some(other) => {
                    return Err(Error::config(
                        "export_trajectory",
                        format!("expected a boolean, got {}", other.type_str()),
                    ))
                }
            },
        })
    }

    /// Key/value pairs of the resolved run settings not already covered by
    /// the model echo. The output directory is left out so that reports do
    /// not depend on where they were written.
    pub fn echo(&self) -> Vec<(String, String)> {
        let cut: Vec<String> = self.cut.iter().map(|s| s.to_string()).collect();
        let mut out = vec![
            ("experiment", self.experiment.name().to_string()),
            ("seed", self.seed.to_string()),
            ("n_foliations", self.n_foliations.to_string()),
            ("format", self.format.name().to_string()),
            ("exploration_budget", self.exploration_budget.to_string()),
            ("alice_site", self.alice_site.to_string()),
            ("bob_site", self.bob_site.to_string()),
            ("probe_site", self.probe_site.to_string()),
            ("cut", cut.join(" ")),
            ("initial_state", self.initial_state.name().to_string()),
            ("expect", self.expect.name().to_string()),
        ];
        if let Some(f) = &self.foliation_file {
            out.push(("foliation_file", f.display().to_string()));
        }
        out.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}

/// Parses config text (flat TOML).
pub fn parse_config(text: &str) -> Result<RunConfig> {
    RunConfig::from_table(&parse_table(text)?)
}

fn parse_table(text: &str) -> Result<Table> {
    text.parse::<Table>()
        .map_err(|e| Error::ConfigSyntax(e.to_string().trim_end().to_string()))
}

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    RunConfig::from_table(&read_table(path)?)
}

fn read_table(path: &Path) -> Result<Table> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_table(&text)
}

/// Parses `key=value`; the value is read as a TOML value, falling back to a
/// bare string.
fn parse_assignment(raw: &str) -> Result<(String, Value)> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| Error::ConfigSyntax(format!("`{raw}` is not key=value")))?;
    let key = key.trim().to_string();
    let value = value.trim();
    let parsed = format!("v = {value}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(value.to_string()));
    Ok((key, parsed))
}

fn read_foliation(config: &RunConfig) -> Result<Option<Foliation>> {
    let Some(path) = &config.foliation_file else {
        return Ok(None);
    };
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Foliation::parse(&text, config.model.n_sites, config.model.horizon).map(Some)
}

/// Runs one experiment and returns its report, with the run settings echoed.
pub fn run_experiment(config: &RunConfig, experiment: Experiment) -> Result<ExperimentReport> {
    let model = &config.model;
    let foliation = read_foliation(config)?;
    let initial = || config.initial_state.build(model.n_sites);
    let mut report = match experiment {
        Experiment::Integrability => {
            integrability_check(model, &initial()?, config.exploration_budget, config.expect)?
        }
        Experiment::Sweep => {
            let extra: Vec<Foliation> = foliation.into_iter().collect();
            foliation_sweep(model, &initial()?, config.n_foliations, config.seed, &extra, config.expect)?
        }
        Experiment::Signal => signaling_experiment(
            model,
            config.alice_site,
            config.bob_site,
            [MeasurementSetting::Z, MeasurementSetting::X],
            foliation.as_ref(),
        )?,
        Experiment::Degeneracy => {
            degeneracy_experiment(model, &initial()?, config.probe_site, foliation.as_ref())?
        }
        Experiment::Nonlinearity => map_nonlinearity_check(model, None, foliation.as_ref())?,
        Experiment::Entanglement => {
            entanglement_monitor(model, &initial()?, &config.cut, foliation.as_ref())?
        }
        Experiment::All => {
            return Err(Error::config("experiment", "`all` is not a single experiment"))
        }
    };
    for (k, v) in config.echo() {
        if !report.config.iter().any(|(key, _)| *key == k) {
            report.config.push((k, v));
        }
    }
    Ok(report)
}

/// Step-by-step record along the replayed (or synchronous) foliation.
pub fn trajectory_report(config: &RunConfig) -> Result<ExperimentReport> {
    let model = &config.model;
    let foliation = match read_foliation(config)? {
        Some(f) => f,
        None => crate::spacetime::canonical_foliation(
            model.n_sites,
            model.horizon,
            crate::spacetime::CanonicalKind::Synchronous,
        )?,
    };
    let initial = config.initial_state.build(model.n_sites)?;
    let ev = evolve_tracked(&initial, &foliation, model)?;
    let mut report = ExperimentReport::new("trajectory");
    for (k, v) in config.echo() {
        report.echo(&k, v);
    }
    report.foliation = Some(foliation);
    let drift = ev
        .states
        .iter()
        .map(|s| (s.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    report.metric("max_norm_drift", drift);
    report.expect("max_norm_drift", Bound::AtMost(TRAJECTORY_NORM_TOL));
    report.columns = ["step", "deformation", "coefficient"]
        .iter()
        .map(|s| s.to_string())
        .chain((0..model.n_sites).map(|i| format!("expect_{i}")))
        .collect();
    for (k, entry) in ev.record.entries.iter().enumerate() {
        let mut row = vec![
            Cell::from(k),
            Cell::from(entry.deformation.to_string()),
            Cell::from(entry.coefficient),
        ];
        row.extend(entry.expectations.iter().map(|&x| Cell::from(x)));
        report.rows.push(row);
    }
    Ok(report.finalize())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes a report in the configured format(s); returns the paths written.
pub fn write_report(config: &RunConfig, report: &ExperimentReport) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(&config.out).map_err(|source| Error::Io {
        path: config.out.clone(),
        source,
    })?;
    let mut written = Vec::new();
    if config.format != OutputFormat::Rows {
        let path = config.out.join(format!("{}.report", report.name));
        write_file(&path, &report.to_structured())?;
        written.push(path);
    }
    if config.format != OutputFormat::Structured {
        let path = config.out.join(format!("{}.rows", report.name));
        write_file(&path, &report.to_rows())?;
        written.push(path);
    }
    Ok(written)
}

/// Runs every selected experiment and writes its reports. Returns the exit
/// code: 0 if all verdicts pass, 2 if any fails, 1 on error.
pub fn run(config: &RunConfig) -> i32 {
    match try_run(config) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn try_run(config: &RunConfig) -> Result<bool> {
    let mut all_pass = true;
    let mut reports = Vec::new();
    for experiment in config.experiment.selected() {
        reports.push(run_experiment(config, experiment)?);
    }
    if config.export_trajectory {
        reports.push(trajectory_report(config)?);
    }
    for report in &reports {
        write_report(config, report)?;
        eprintln!("{}", report.summary());
        all_pass &= report.passed();
    }
    Ok(all_pass)
}

#[derive(Debug, Parser)]
#[command(name = "nlts", version, about = "Foliation-covariance experiments for nonlinear Tomonaga–Schwinger evolution")]
struct Args {
    /// Flat key = value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// rows, structured or both.
    #[arg(long)]
    format: Option<String>,
    /// Foliation to replay (one `A i` / `G i t` step per line).
    #[arg(long)]
    foliation_file: Option<PathBuf>,
    /// Override any config key, e.g. `--set lambda=0`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order-swap residues over reachable surfaces.
    Integrability,
    /// Final-state spread over canonical and random foliations.
    Sweep,
    /// Remote-measurement signaling with a Bell pair.
    Signal,
    /// Co-evolved versus interaction-picture expectation.
    Degeneracy,
    /// Unitarity of the composed propagator and breaking of superposition.
    Nonlinearity,
    /// Entanglement generated across a cut.
    Entanglement,
    /// Every experiment above.
    All,
}

impl Command {
    fn experiment(&self) -> Experiment {
        match self {
            Command::Integrability => Experiment::Integrability,
            Command::Sweep => Experiment::Sweep,
            Command::Signal => Experiment::Signal,
            Command::Degeneracy => Experiment::Degeneracy,
            Command::Nonlinearity => Experiment::Nonlinearity,
            Command::Entanglement => Experiment::Entanglement,
            Command::All => Experiment::All,
        }
    }
}

fn resolve(args: Args) -> Result<RunConfig> {
    let mut table = match &args.config {
        Some(path) => read_table(path)?,
        None => Table::new(),
    };
    for raw in &args.overrides {
        let (k, v) = parse_assignment(raw)?;
        table.insert(k, v);
    }
    if let Some(seed) = args.seed {
        let seed = i64::try_from(seed).map_err(|_| Error::config("seed", "too large"))?;
        table.insert("seed".into(), Value::Integer(seed));
    }
    if let Some(out) = args.out {
        table.insert("out".into(), Value::String(out.display().to_string()));
    }
    if let Some(format) = args.format {
        table.insert("format".into(), Value::String(format));
    }
    if let Some(f) = args.foliation_file {
        table.insert("foliation_file".into(), Value::String(f.display().to_string()));
    }
    if let Some(cmd) = &args.command {
        table.insert("experiment".into(), Value::String(cmd.experiment().name().into()));
    }
    RunConfig::from_table(&table)
}

/// Entry point for the binary: parses `args` (program name first), runs,
/// and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match resolve(args) {
        Ok(config) => run(&config),
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Human-readable dump of a resolved config, one `key = value` per line.
pub fn describe(config: &RunConfig) -> String {
    let m = &config.model;
    let mut s = String::new();
    let _ = writeln!(s, "n_sites = {}", m.n_sites);
    let _ = writeln!(s, "horizon = {}", m.horizon);
    for (k, v) in [
        ("omega", m.omega),
        ("mu", m.mu),
        ("link_coupling", m.link_coupling),
        ("lambda", m.nonlinearity.lambda),
        ("dt", m.dt),
    ] {
        let _ = writeln!(s, "{k} = {}", fmt_real(v));
    }
    let _ = writeln!(s, "base_operator = {}", m.base_operator.name());
    let _ = writeln!(s, "kind = {}", m.nonlinearity.kind.name());
    if let Some(j) = m.nonlinearity.kind.remote_site() {
        let _ = writeln!(s, "nonlocal_site = {j}");
    }
    for (k, v) in config.echo() {
        let _ = writeln!(s, "{k} = {v}");
    }
    s
}
