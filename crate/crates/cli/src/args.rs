use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use interference_core::search_sim::Strategy;
use interference_core::theory_models::ModelKind;
use interference_core::DEFAULT_TOL;

#[derive(Debug, Parser)]
#[command(
    name = "interference",
    version,
    about = "Sector models of finite-order interference and oracle search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the decomposition identities and projector lemmas over an (N, h) grid.
    Verify(CommonArgs),
    /// Run one search and print the per-step success table.
    Search(CommonArgs),
    /// Check D_k ≤ 4hk² everywhere and the lower bound at the first success-½ step.
    Bound(CommonArgs),
    /// Minimal successful query count over a list of N, with a fitted exponent.
    Sweep(CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Search(_) => "search",
            Command::Bound(_) => "bound",
            Command::Sweep(_) => "sweep",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Verify(a) | Command::Search(a) | Command::Bound(a) | Command::Sweep(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Classical,
    Quantum,
    Synthetic,
}

impl From<KindArg> for ModelKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Classical => ModelKind::Classical,
            KindArg::Quantum => ModelKind::Quantum,
            KindArg::Synthetic => ModelKind::Synthetic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyArg {
    Grover,
    Reflect,
    Random,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Grover => Strategy::Grover,
            StrategyArg::Reflect => Strategy::Reflect,
            StrategyArg::Random => Strategy::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Model kind. `verify` checks every kind when omitted; other commands default to quantum.
    #[arg(long, value_enum)]
    pub model: Option<KindArg>,

    /// Number of slits; a comma-separated list for `sweep` and `verify`.
    /// Defaults: verify 1..=n-max, search/bound 4, sweep 4,16,64.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,

    /// Order of interference. Fixed at 1 (classical) and 2 (quantum); synthetic defaults to 3.
    /// For `verify` it restricts the grid to this h.
    #[arg(long)]
    pub h: Option<usize>,

    /// Synthetic sector dimensions as `size:dim` pairs, e.g. `1:1,2:2,3:1`.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<Dims>,

    /// Schedule strategy. Defaults to grover for quantum models, reflect otherwise.
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,

    /// Number of seeds (0..seeds) for random schedules.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,

    /// Number of oracle queries to simulate. Default ⌈4√N⌉.
    #[arg(long)]
    pub k_max: Option<usize>,

    /// Numerical tolerance for orthogonality and bound checks.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Largest N in the `verify` grid.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,

    /// Output file for the data table.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output file format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Replace the coherence projectors with a broken set (negative control).
    #[arg(long, hide = true)]
    pub corrupt: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Dims(pub BTreeMap<usize, usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    let mut map = BTreeMap::new();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (k, m) = part
            .split_once(':')
            .ok_or_else(|| format!("expected size:dim, got '{part}'"))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|e| format!("bad size '{k}': {e}"))?;
        let m: usize = m
            .trim()
            .parse()
            .map_err(|e| format!("bad dim '{m}': {e}"))?;
        map.insert(k, m);
    }
    Ok(Dims(map))
}

/// Resolved configuration, embedded in every output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub model: Option<KindArg>,
    pub n: Vec<usize>,
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims_per_size: Option<Dims>,
    pub strategy: Option<StrategyArg>,
    pub seeds: u64,
    pub k_max: Option<usize>,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub corrupt: bool,
}

impl RunConfig {
    pub fn from_command(cmd: &Command) -> Self {
        let a = cmd.args();
        RunConfig {
            command: cmd.name(),
            model: a.model,
            n: a.n.clone(),
            h: a.h,
            dims_per_size: a.dims.clone(),
            strategy: a.strategy,
            seeds: a.seeds,
            k_max: a.k_max,
            tol: a.tol,
            out: a.out.clone(),
            format: a.format,
            corrupt: a.corrupt,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config is plain data")
    }
}
