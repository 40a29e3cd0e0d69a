//! Command-line front end: `figure <id>`, `sweep` and `verify`.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 bad arguments, 3 I/O error,
//! 4 unphysical input.

mod figures;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::analysis::{detect_phenomena, sweep, SweepConfig};
use crate::channels::{ChannelKind, Sides};
use crate::model::{BatteryHamiltonian, BellCoefficients};
use crate::{Error, Result};

pub use figures::{figure_artifacts, FIGURE_IDS};
pub use output::{Artifact, FigureManifest, ManifestEntry};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_BAD_ARGS: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_UNPHYSICAL: u8 = 4;

pub const DEFAULT_COEFFICIENTS: [f64; 3] = [0.5, 0.3, 0.1];
pub const FIG2_COEFFICIENTS: [f64; 3] = [0.1, 0.5, 0.3];
pub const DEFAULT_EPS: [f64; 2] = [0.6, 0.3];
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 1000;

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Unphysical { .. } => EXIT_UNPHYSICAL,
        Error::Io(_) => EXIT_IO,
        Error::InvalidArgument(_)
        | Error::ParameterOutOfRange { .. }
        | Error::InvalidHamiltonian { .. }
        | Error::UnsupportedCombination(_)
        | Error::BranchNotApplicable { .. } => EXIT_BAD_ARGS,
        _ => EXIT_VERIFY_FAILED,
    }
}

/// `start:stop:count`, evenly spaced and inclusive. Points are snapped to
/// twelve decimals so `0.01:0.99:99` yields exactly the doubles nearest
/// `0.01, 0.02, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub const fn new(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let steps = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let v = self.start + (self.stop - self.start) * i as f64 / steps;
                (v * 1e12).round() / 1e12
            })
            .collect()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}:{}", self.start, self.stop, self.count)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("grid {s:?} is not start:stop:count"));
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(bad());
        };
        let start: f64 = start.trim().parse().map_err(|_| bad())?;
        let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        if count == 0 || !start.is_finite() || !stop.is_finite() || (count > 1 && stop <= start) {
            return Err(bad());
        }
        Ok(Self { start, stop, count })
    }
}

impl TryFrom<String> for GridSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GridSpec> for String {
    fn from(g: GridSpec) -> String {
        g.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

/// Every knob of a run. Fields left `None` fall back to the command's
/// defaults; a config file is overlaid by command-line flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub figure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<Sides>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c3: Option<f64>,
    #[serde(rename = "epsA", skip_serializing_if = "Option::is_none")]
    pub eps_a: Option<f64>,
    #[serde(rename = "epsB", skip_serializing_if = "Option::is_none")]
    pub eps_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Vec<Format>>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: RunConfig) -> RunConfig {
        RunConfig {
            command: over.command.or(self.command),
            figure: over.figure.or(self.figure),
            channel: over.channel.or(self.channel),
            sides: over.sides.or(self.sides),
            c1: over.c1.or(self.c1),
            c2: over.c2.or(self.c2),
            c3: over.c3.or(self.c3),
            eps_a: over.eps_a.or(self.eps_a),
            eps_b: over.eps_b.or(self.eps_b),
            p_grid: over.p_grid.or(self.p_grid),
            q_grid: over.q_grid.or(self.q_grid),
            n: over.n.or(self.n),
            seed: over.seed.or(self.seed),
            trials: over.trials.or(self.trials),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
        }
    }

    /// Coefficients with unset components taken from `defaults`. Unphysical
    /// triples are rejected naming the negative eigenvalue.
    pub fn coefficients(&self, defaults: [f64; 3]) -> Result<BellCoefficients> {
        let c = BellCoefficients::new_unchecked(
            self.c1.unwrap_or(defaults[0]),
            self.c2.unwrap_or(defaults[1]),
            self.c3.unwrap_or(defaults[2]),
        );
        c.check_physical()?;
        Ok(c)
    }

    pub fn hamiltonian(&self) -> Result<BatteryHamiltonian> {
        BatteryHamiltonian::new(
            self.eps_a.unwrap_or(DEFAULT_EPS[0]),
            self.eps_b.unwrap_or(DEFAULT_EPS[1]),
        )
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("out"))
    }

    pub fn wants_svg(&self) -> bool {
        self.format.as_ref().is_some_and(|f| f.contains(&Format::Svg))
    }
}

fn write_manifest(dir: &Path, figure: &str, config: &RunConfig, artifacts: &[Artifact]) -> Result<FigureManifest> {
    let files = output::write_artifacts(dir, artifacts)?;
    let manifest = FigureManifest {
        figure: figure.to_string(),
        config: serde_json::to_value(config).map_err(|e| Error::InvalidArgument(e.to_string()))?,
        files,
    };
    let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    text.push('\n');
    let name = if figure == "sweep" {
        "sweep_manifest.json".to_string()
    } else {
        format!("fig{figure}_manifest.json")
    };
    std::fs::write(dir.join(name), text)?;
    Ok(manifest)
}

/// Regenerates one figure's data under the configured output directory.
pub fn run_figure(id: &str, overrides: &RunConfig) -> Result<FigureManifest> {
    let mut config = overrides.clone();
    config.command = Some("figure".into());
    config.figure = Some(id.to_string());
    let artifacts = figure_artifacts(id, &config)?;
    let echo = figures::resolved_config(id, &config)?;
    write_manifest(&config.out_dir(), id, &echo, &artifacts)
}

/// Sweep settings resolved from a run config: channel defaults to
/// depolarizing, two-sided iff a q grid is given, `p ∈ {0.01..0.99}`,
/// `n = 1`.
pub fn sweep_config(config: &RunConfig) -> Result<SweepConfig> {
    let channel = config.channel.unwrap_or(ChannelKind::Depolarizing);
    let sides = config.sides.unwrap_or(if config.q_grid.is_some() {
        Sides::Two
    } else {
        Sides::One
    });
    let p_grid = config.p_grid.unwrap_or(GridSpec::new(0.01, 0.99, 99)).points();
    let q_grid = match sides {
        Sides::One => None,
        Sides::Two => Some(config.q_grid.unwrap_or(GridSpec::new(0.0, 1.0, 101)).points()),
    };
    let sweep = SweepConfig {
        channel,
        sides,
        coefficients: config.coefficients(DEFAULT_COEFFICIENTS)?,
        hamiltonian: config.hamiltonian()?,
        p_grid,
        q_grid,
        n_list: config.n.clone().unwrap_or_else(|| vec![1]),
    };
    sweep.validate()?;
    Ok(sweep)
}

/// Ad-hoc sweep: record CSV plus sudden-death and frozen reports.
pub fn run_sweep(config: &RunConfig) -> Result<FigureManifest> {
    let mut config = config.clone();
    config.command = Some("sweep".into());
    let sweep_cfg = sweep_config(&config)?;
    let records = sweep(&sweep_cfg)?;
    let phenomena = detect_phenomena(&sweep_cfg, &records);

    let mut artifacts = vec![Artifact {
        name: "sweep.csv".into(),
        bytes: output::records_csv(&records)?,
    }];
    let mut json = serde_json::to_string_pretty(&phenomena).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    json.push('\n');
    artifacts.push(Artifact {
        name: "phenomena.json".into(),
        bytes: json.into_bytes(),
    });
    if config.wants_svg() && sweep_cfg.q_grid.is_none() {
        let mut series = Vec::new();
        for &n in &sweep_cfg.n_list {
            let ys = records
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.capacity_general)
                .collect();
            series.push((format!("n={n}"), ys));
        }
        artifacts.push(Artifact {
            name: "sweep.svg".into(),
            bytes: output::line_chart(&format!("{} capacity", sweep_cfg.channel), &sweep_cfg.p_grid, &series)
                .into_bytes(),
        });
    }
    write_manifest(&config.out_dir(), "sweep", &config, &artifacts)
}

/// Runs the verification suite, prints its table and returns the exit code.
pub fn run_verify(seed: u64, trials: usize, self_test: bool) -> Result<u8> {
    let report = verify::run(seed, trials, self_test)?;
    print!("{}", report.render());
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

#[derive(Debug, Parser)]
#[command(
    name = "qbattery",
    version,
    about = "Capacity of two-qubit Bell-diagonal batteries under local noise channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regenerate the data behind one figure (1a, 1b, 2a, 2b, 3a-3c, 4a-4f, 5, 6).
    Figure {
        id: String,
        #[command(flatten)]
        opts: RunArgs,
    },
    /// Sweep one channel over p (and q) and report sudden death / frozen capacity.
    Sweep {
        #[command(flatten)]
        opts: RunArgs,
    },
    /// Cross-check every closed form against brute force and print a table.
    Verify {
        /// RNG seed for the random trials (default 42).
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random cross-check trials (default 1000).
        #[arg(long)]
        trials: Option<usize>,
        /// Plant a wrong coefficient-table row; the run must fail.
        #[arg(long)]
        self_test: bool,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Bell coefficient c1 (default 0.5).
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    /// Bell coefficient c2 (default 0.3).
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<f64>,
    /// Bell coefficient c3 (default 0.1).
    #[arg(long, allow_hyphen_values = true)]
    pub c3: Option<f64>,
    /// Level splitting of qubit A (default 0.6).
    #[arg(long = "epsA")]
    pub eps_a: Option<f64>,
    /// Level splitting of qubit B, at most epsA (default 0.3).
    #[arg(long = "epsB")]
    pub eps_b: Option<f64>,
    /// bf, pf, bpf, dep, gad or adc.
    #[arg(long)]
    pub channel: Option<ChannelKind>,
    /// one or two.
    #[arg(long)]
    pub sides: Option<Sides>,
    /// start:stop:count
    #[arg(long)]
    pub p_grid: Option<GridSpec>,
    /// start:stop:count for the second qubit; implies --sides two.
    #[arg(long)]
    pub q_grid: Option<GridSpec>,
    /// Comma-separated pass counts, e.g. 1,2,10,100.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory (default out).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated subset of csv,json,svg.
    #[arg(long, value_delimiter = ',')]
    pub format: Option<Vec<Format>>,
    /// JSON file with the same keys as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig> {
        let flags = RunConfig {
            channel: self.channel,
            sides: self.sides,
            c1: self.c1,
            c2: self.c2,
            c3: self.c3,
            eps_a: self.eps_a,
            eps_b: self.eps_b,
            p_grid: self.p_grid,
            q_grid: self.q_grid,
            n: self.n.clone(),
            seed: self.seed,
            out: self.out.clone(),
            format: self.format.clone(),
            ..RunConfig::default()
        };
        let base = match &self.config {
            Some(path) => load_config(path)?,
            None => RunConfig::default(),
        };
        Ok(base.overlay(flags))
    }
}

/// A missing config file is a bad argument, not an I/O failure.
fn load_config(path: &Path) -> Result<RunConfig> {
    match std::fs::read_to_string(path) {
        Ok(text) => RunConfig::from_json(&text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(Error::InvalidArgument(format!(
            "config file {} not found",
            path.display()
        ))),
        Err(e) => Err(e.into()),
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Figure { id, opts } => {
            let manifest = run_figure(&id, &opts.resolve()?)?;
            for f in &manifest.files {
                println!("{}  {}", f.sha256, f.path);
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { opts } => {
            let config = opts.resolve()?;
            let manifest = run_sweep(&config)?;
            for f in &manifest.files {
                println!("{}  {}", f.sha256, f.path);
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            seed,
            trials,
            self_test,
            config,
        } => {
            let file = match &config {
                Some(path) => load_config(path)?,
                None => RunConfig::default(),
            };
            let seed = seed.or(file.seed).unwrap_or(DEFAULT_SEED);
            let trials = trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
            run_verify(seed, trials, self_test)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors go to stderr.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_ARGS } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
