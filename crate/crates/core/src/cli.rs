//! Command-line frontend: `run`, `sweep`, `spectrum` and `landscape`.
//!
//! Settings come from a JSON [`RunConfig`] (every key optional, unknown keys
//! rejected) with command-line flags layered on top. `--print-config` echoes
//! the effective configuration in the same JSON format and exits.
//!
//! Exit codes: 0 on success, 1 on runtime failure, 2 on invalid input. `run`
//! also exits 1 when the optimizer did not converge to within the threshold.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bench::{
    landscape_scan, run_trial, summary_csv, sweep, ExperimentSpec, GridSpec, OptimizerConfig,
    TrialSpec, DEFAULT_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::model::{exact_spectrum, IsingChain};
use crate::optimize::{Crossover, DeConfig, LbfgsConfig, SpsaConfig};
use crate::state::Pauli;

/// Environment variable supplying the default for `--jobs`.
pub const JOBS_ENV: &str = "VQE_DE_JOBS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerKind {
    De,
    Spsa,
    Lbfgs,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CrossoverArg {
    Bin,
    Exp,
}

/// Landscape-scan settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LandscapeConfig {
    /// Indices of the two scanned parameters.
    pub free: [usize; 2],
    pub resolution: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Default for LandscapeConfig {
    fn default() -> Self {
        let grid = GridSpec::default();
        Self {
            free: [0, 1],
            resolution: grid.resolution,
            lo: grid.lo,
            hi: grid.hi,
        }
    }
}

/// Effective configuration of every subcommand.
///
/// Defaults: `n = [3]`, `layers = 1`, `include_initial_ry = true`,
/// `coupling = 1`, `axis = "Y"`, `optimizer = "de"`, the optimizer sections
/// at their library defaults, `n_opt = 20`, `threshold = 0.01`, `seed = 0`,
/// `jobs = 1`, no output files, and a 101×101 landscape over parameters
/// 0 and 1 spanning `[-π, π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Chain lengths; `run` and `landscape` need exactly one.
    pub n: Vec<usize>,
    pub layers: usize,
    pub include_initial_ry: bool,
    pub coupling: f64,
    pub axis: Pauli,
    pub optimizer: OptimizerKind,
    pub de: DeConfig,
    pub spsa: SpsaConfig,
    pub lbfgs: LbfgsConfig,
    /// Trials per chain length in a sweep.
    pub n_opt: usize,
    /// Success threshold on δ.
    pub threshold: f64,
    /// Trial seed for `run`, first seed for `sweep`, draw of the fixed
    /// parameters for `landscape`.
    pub seed: u64,
    /// Parallel trials in a sweep, DE evaluation threads in a single run.
    pub jobs: usize,
    /// Record file (`sweep`) or CSV grid (`landscape`).
    pub out: Option<PathBuf>,
    /// Summary CSV written by `sweep`.
    pub summary: Option<PathBuf>,
    pub landscape: LandscapeConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: vec![3],
            layers: 1,
            include_initial_ry: true,
            coupling: 1.0,
            axis: Pauli::Y,
            optimizer: OptimizerKind::De,
            de: DeConfig::default(),
            spsa: SpsaConfig::default(),
            lbfgs: LbfgsConfig::default(),
            n_opt: 20,
            threshold: DEFAULT_THRESHOLD,
            seed: 0,
            jobs: 1,
            out: None,
            summary: None,
            landscape: LandscapeConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// The optimizer section selected by `optimizer`.
    pub fn optimizer_config(&self) -> OptimizerConfig {
        match self.optimizer {
            OptimizerKind::De => OptimizerConfig::De(self.de.clone()),
            OptimizerKind::Spsa => OptimizerConfig::Spsa(self.spsa.clone()),
            OptimizerKind::Lbfgs => OptimizerConfig::Lbfgs(self.lbfgs.clone()),
            OptimizerKind::Hybrid => OptimizerConfig::Hybrid {
                de: self.de.clone(),
                lbfgs: self.lbfgs.clone(),
            },
        }
    }

    pub fn experiment(&self) -> ExperimentSpec {
        ExperimentSpec {
            n_range: self.n.clone(),
            n_layers: self.layers,
            include_initial_ry: self.include_initial_ry,
            coupling: self.coupling,
            axis: self.axis,
            optimizer: self.optimizer_config(),
            n_opt: self.n_opt,
            success_threshold: self.threshold,
            base_seed: self.seed,
            parallel_trials: self.jobs,
        }
    }

    fn single_n(&self) -> Result<usize> {
        match self.n.as_slice() {
            [n] => Ok(*n),
            _ => Err(Error::Config(format!(
                "this command takes a single chain length, got {:?}",
                self.n
            ))),
        }
    }

    fn chain(&self) -> Result<IsingChain> {
        let n = self.single_n()?;
        Ok(IsingChain::new(n)
            .with_coupling(self.coupling)
            .with_axis(self.axis))
    }

    /// Single-trial spec; DE evaluates its population on `jobs` threads.
    pub fn trial(&self) -> Result<TrialSpec> {
        let mut optimizer = self.optimizer_config();
        if let OptimizerConfig::De(de) | OptimizerConfig::Hybrid { de, .. } = &mut optimizer {
            de.workers = self.jobs;
        }
        Ok(TrialSpec {
            n: self.single_n()?,
            layers: self.layers,
            include_initial_ry: self.include_initial_ry,
            coupling: self.coupling,
            axis: self.axis,
            optimizer,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.n.is_empty() {
            return Err(Error::Config("n range is empty".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        if self.threshold.is_nan() || self.threshold < 0.0 {
            return Err(Error::Config("threshold must be non-negative".into()));
        }
        Ok(())
    }
}

/// Chain lengths given to `--n`. The alias keeps clap from treating the
/// flag as repeatable.
pub type ChainLengths = Vec<usize>;

/// Parses `--n` values: `5`, `3,5,7`, `3-6` (inclusive) or a mix.
pub fn parse_n_list(text: &str) -> std::result::Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{s}` is not a chain length"))
        };
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (number(a)?, number(b)?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend(a..=b);
            }
            None => out.push(number(part)?),
        }
    }
    Ok(out)
}

/// Parses `--free` values such as `0,5`.
pub fn parse_pair(text: &str) -> std::result::Result<[usize; 2], String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok([
            a.parse().map_err(|_| format!("`{a}` is not an index"))?,
            b.parse().map_err(|_| format!("`{b}` is not an index"))?,
        ]),
        _ => Err(format!(
            "expected two comma-separated indices, got `{text}`"
        )),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "vqe-de",
    version,
    about = "Differential Evolution versus local optimizers for VQE on the 1-D Ising chain"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one optimization and print its record as JSON.
    Run(Overrides),
    /// Run a batch of seeded trials and print the success-rate summary.
    Sweep(Overrides),
    /// Print the exact spectrum as `energy,degeneracy` lines.
    Spectrum(Overrides),
    /// Scan the energy over two parameters and write a CSV grid.
    Landscape(Overrides),
}

/// Flags shared by every subcommand; each mirrors a [`RunConfig`] key.
#[derive(Debug, Default, Args)]
pub struct Overrides {
    /// JSON configuration file; flags override its values.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long)]
    pub print_config: bool,
    /// Chain length(s): `5`, `3,5,7` or `3-8`.
    #[arg(long, value_parser = parse_n_list)]
    pub n: Option<ChainLengths>,
    #[arg(long)]
    pub layers: Option<usize>,
    #[arg(long, value_enum)]
    pub optimizer: Option<OptimizerKind>,
    /// DE crossover kind.
    #[arg(long, value_enum)]
    pub crossover: Option<CrossoverArg>,
    /// DE population multiplier p (population = p · parameter count).
    #[arg(long)]
    pub pop_mult: Option<usize>,
    /// Iteration budget of the selected optimizer (the DE phase for hybrid).
    #[arg(long)]
    pub maxiter: Option<usize>,
    #[arg(long)]
    pub n_opt: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Success threshold on δ.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Record file for `sweep`, CSV grid for `landscape`.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Summary CSV for `sweep`.
    #[arg(long, value_name = "PATH")]
    pub summary: Option<PathBuf>,
    #[arg(long, env = JOBS_ENV)]
    pub jobs: Option<usize>,
    /// Scanned parameter indices for `landscape`, e.g. `0,5`.
    #[arg(long, value_parser = parse_pair)]
    pub free: Option<[usize; 2]>,
    /// Grid points per axis for `landscape`.
    #[arg(long)]
    pub resolution: Option<usize>,
}

impl Overrides {
    /// Loads `--config` (or the defaults) and applies the flags.
    pub fn effective(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(n) = &self.n {
            c.n = n.clone();
        }
        if let Some(v) = self.layers {
            c.layers = v;
        }
        if let Some(v) = self.optimizer {
            c.optimizer = v;
        }
        if let Some(v) = self.crossover {
            c.de.crossover = match v {
                CrossoverArg::Bin => Crossover::Binomial,
                CrossoverArg::Exp => Crossover::Exponential,
            };
        }
        if let Some(v) = self.pop_mult {
            c.de.population_multiplier = v;
        }
        if let Some(v) = self.maxiter {
            match c.optimizer {
                OptimizerKind::De | OptimizerKind::Hybrid => c.de.max_iterations = v,
                OptimizerKind::Spsa => c.spsa.max_iterations = Some(v),
                OptimizerKind::Lbfgs => c.lbfgs.max_iterations = v,
            }
        }
        if let Some(v) = self.n_opt {
            c.n_opt = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.threshold {
            c.threshold = v;
        }
        if let Some(v) = &self.out {
            c.out = Some(v.clone());
        }
        if let Some(v) = &self.summary {
            c.summary = Some(v.clone());
        }
        if let Some(v) = self.jobs {
            c.jobs = v;
        }
        if let Some(v) = &self.free {
            c.landscape.free = *v;
        }
        if let Some(v) = self.resolution {
            c.landscape.resolution = v;
        }
        c.validate()?;
        Ok(c)
    }
}

/// Maps an error to the process exit code.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::InvalidArgument(_) | Error::Capacity { .. } | Error::Config(_) => 2,
        Error::NumericalConsistency { .. } | Error::Io(_) | Error::Json(_) => 1,
    }
}

/// Parses `args` (program name first) and runs the command, writing normal
/// output to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: &Command, out: &mut impl Write, err: &mut impl Write) -> Result<i32> {
    let overrides = match command {
        Command::Run(o) | Command::Sweep(o) | Command::Spectrum(o) | Command::Landscape(o) => o,
    };
    let config = overrides.effective()?;
    if overrides.print_config {
        writeln!(out, "{}", config.to_json())?;
        return Ok(0);
    }
    match command {
        Command::Run(_) => cmd_run(&config, out),
        Command::Sweep(_) => cmd_sweep(&config, out, err),
        Command::Spectrum(_) => cmd_spectrum(&config, out),
        Command::Landscape(_) => cmd_landscape(&config, out),
    }
}

fn cmd_run(config: &RunConfig, out: &mut impl Write) -> Result<i32> {
    let record = run_trial(&config.trial()?, config.seed)?;
    writeln!(out, "{}", serde_json::to_string(&record)?)?;
    Ok(if record.converged && record.delta <= config.threshold {
        0
    } else {
        1
    })
}

fn cmd_sweep(config: &RunConfig, out: &mut impl Write, err: &mut impl Write) -> Result<i32> {
    let spec = config.experiment();
    spec.validate()?;
    let records = sweep(&spec, config.out.as_deref())?;
    if records.is_empty() {
        writeln!(err, "no trials requested (n_opt = 0)")?;
        return Ok(0);
    }
    let table = summary_csv(&spec.summarize(&records)?);
    if let Some(path) = &config.summary {
        fs::write(path, &table)?;
    }
    write!(out, "{table}")?;
    Ok(0)
}

fn cmd_spectrum(config: &RunConfig, out: &mut impl Write) -> Result<i32> {
    writeln!(out, "energy,degeneracy")?;
    for level in exact_spectrum(&config.chain()?)? {
        writeln!(out, "{},{}", level.energy, level.degeneracy)?;
    }
    Ok(0)
}

fn cmd_landscape(config: &RunConfig, out: &mut impl Write) -> Result<i32> {
    let problem = config.trial()?.problem()?;
    let l = &config.landscape;
    let grid = GridSpec {
        resolution: l.resolution,
        lo: l.lo,
        hi: l.hi,
    };
    let scan = landscape_scan(&problem, (l.free[0], l.free[1]), grid, config.seed)?;
    let csv = scan.to_csv();
    match &config.out {
        Some(path) => fs::write(path, csv)?,
        None => write!(out, "{csv}")?,
    }
    Ok(0)
}
