use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::genspec::GenSpec;

const AFTER_HELP: &str = "\
Generator specs (--gen):
  complete:N  path:N  ring:N  star:N
  er:N:P      ba:N:M  ws:N:K:P
  dumbbell:S[:complete|ring|er[:P]]   (default clusters: er:0.15)
Random generators require --seed.

Grids: START:END:COUNT (inclusive, evenly spaced) or a comma list.

--config FILE splices the whitespace-separated tokens of FILE in place of the
flag; '#' starts a comment. Later flags override earlier ones.

Exit codes: 0 ok, 1 usage, 2 input/output, 3 computation.";

#[derive(Debug, Parser)]
#[command(name = "netimb", version, about = "Network imbalance metric toolkit", after_help = AFTER_HELP)]
#[command(args_override_self = true)]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "NETIMB_THREADS", value_parser = clap::value_parser!(usize))]
    pub threads: Option<usize>,

    /// Read further arguments from FILE.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Imbalance report for one graph.
    Compute(ComputeArgs),
    /// Mean imbalance of a random model across a parameter grid.
    Sweep(SweepArgs),
    /// Greedy edge addition minimizing imbalance.
    Optimize(OptimizeArgs),
    /// Imbalance over an (a, h0) grid for one graph.
    PhaseDiagram(PhaseArgs),
    /// Imbalance against classical metrics along the small-world rewiring axis.
    Compare(CompareArgs),
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Degree Gini against imbalance for a fixed set of models at n = 50.
    Zoo(ZooArgs),
    /// Preferential-attachment graphs under a strict and a lenient threshold.
    Reversal(ReversalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    JsonText,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Edge-list file.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Generator spec, see below.
    #[arg(long = "gen", value_name = "SPEC")]
    pub generator: Option<GenSpec>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub source: Source,
    /// Seed for random generators.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Sigmoid steepness.
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Ideal hop threshold.
    #[arg(long, allow_negative_numbers = true)]
    pub h0: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file, written atomically; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Also report path length, path variance, Jain unfairness, degree Gini and lambda2.
    #[arg(long)]
    pub classical: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepModel {
    Er,
    Ba,
    Ws,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct GridChoice {
    /// Linear grid or list of model parameters.
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Log-spaced grid LO:HI:COUNT.
    #[arg(long, value_name = "LO:HI:COUNT")]
    pub log_grid: Option<LogGrid>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub model: SweepModel,
    #[arg(long)]
    pub n: usize,
    /// Lattice degree for ws.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[command(flatten)]
    pub grid: GridChoice,
    /// Profile `A,H0`; repeatable. Defaults to 1,4  2,3  0.5,6.
    #[arg(long = "profile", value_name = "A,H0")]
    pub profiles: Vec<ProfilePair>,
    #[arg(long, default_value_t = 20)]
    pub runs: usize,
    /// Base seed; run r uses seed + r.
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Edges to add.
    #[arg(long, default_value_t = 1, value_parser = parse_budget)]
    pub budget: u64,
    /// Second profile evaluated before and after, `A,H0`.
    #[arg(long, value_name = "A,H0")]
    pub also_profile: Option<ProfilePair>,
    /// Per-round trace CSV.
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub a_grid: Grid,
    #[arg(long)]
    pub h0_grid: Grid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Rewiring probabilities; default log grid 0.001:1:20.
    #[command(flatten)]
    pub grid: GridChoice,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 4.0)]
    pub h0: f64,
    #[arg(long, default_value_t = 20)]
    pub runs: usize,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateModel {
    Complete,
    Path,
    Ring,
    Star,
    Er,
    Ba,
    Ws,
    Dumbbell,
}

#[derive(Debug, Args)]
#[group(id = "what", required = true, multiple = false, args = ["generator", "model"])]
pub struct GenerateArgs {
    /// Generator spec.
    #[arg(long = "gen", value_name = "SPEC")]
    pub generator: Option<GenSpec>,
    /// Model name, with parameters from --n, --k, --p, --m.
    #[arg(long, value_enum)]
    pub model: Option<GenerateModel>,
    /// Node count, or cluster size for dumbbell.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ZooArgs {
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long, default_value_t = 4.0)]
    pub h0: f64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReversalArgs {
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 20)]
    pub runs: usize,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_budget(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(b) => Ok(b),
        Err(_) => Err(format!("bad budget `{s}`")),
    }
}

/// `A,H0` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePair(pub f64, pub f64);

impl FromStr for ProfilePair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, h0) = s
            .split_once(',')
            .ok_or_else(|| format!("expected A,H0, got `{s}`"))?;
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number `{t}` in `{s}`"))
        };
        Ok(ProfilePair(num(a)?, num(h0)?))
    }
}

/// `START:END:COUNT` or `x,y,z`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

fn triple(s: &str) -> Result<Option<(f64, f64, usize)>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 1 {
        return Ok(None);
    }
    if parts.len() != 3 {
        return Err(format!("expected START:END:COUNT, got `{s}`"));
    }
    let bad = || format!("bad grid `{s}`");
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count == 0 {
        return Err(format!("grid `{s}` has no points"));
    }
    Ok(Some((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        count,
    )))
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some((start, end, count)) = triple(s)? {
            return Ok(Grid(netimbalance::experiments::linear_grid(
                start, end, count,
            )));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("bad grid value `{t}`"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Grid)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogGrid(pub Vec<f64>);

impl FromStr for LogGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi, count) =
            triple(s)?.ok_or_else(|| format!("expected LO:HI:COUNT, got `{s}`"))?;
        if !(lo > 0.0 && hi > 0.0) {
            return Err(format!("log grid bounds must be positive, got `{s}`"));
        }
        Ok(LogGrid(netimbalance::experiments::log_grid(lo, hi, count)))
    }
}

impl GridChoice {
    pub fn values(&self) -> Option<Vec<f64>> {
        match (&self.grid, &self.log_grid) {
            (Some(g), _) => Some(g.0.clone()),
            (_, Some(g)) => Some(g.0.clone()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn grids_and_pairs() {
        assert_eq!(
            "0:0.4:5".parse::<Grid>().unwrap().0,
            vec![0.0, 0.1, 0.2, 0.30000000000000004, 0.4]
        );
        assert_eq!("1,2.5".parse::<Grid>().unwrap().0, vec![1.0, 2.5]);
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert_eq!("0.001:1:4".parse::<LogGrid>().unwrap().0.len(), 4);
        assert!("0:1:4".parse::<LogGrid>().is_err());
        assert_eq!("2,3".parse::<ProfilePair>(), Ok(ProfilePair(2.0, 3.0)));
        assert!("2".parse::<ProfilePair>().is_err());
    }
}
