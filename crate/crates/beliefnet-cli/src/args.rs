//! Command-line surface. Flags that only apply to one mode are rejected
//! elsewhere at dispatch time, so a run's header never carries settings
//! that had no effect.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "beliefnet",
    version,
    about = "Belief dynamics on directed social networks",
    long_about = "Simulates, verifies, and analyzes rule-driven belief evolution over \
                  directed social networks with mandatory self-ties."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check structural properties of an update family on a network
    Verify(VerifyArgs),
    /// Run one belief evolution and report how it ends
    Simulate(SimulateArgs),
    /// Enumerate equilibria and export transition-graph structure
    Analyze(AnalyzeArgs),
    /// Build a short schedule that drives a profile to an equilibrium
    #[command(name = "construct-sequence")]
    ConstructSequence(SequenceArgs),
    /// Run a batch of simulations over seeds, profiles, or networks
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Update rule for every agent: majority, stubborn, flipper, or threshold:<k>
    #[arg(long, default_value = "majority", conflicts_with = "function_file")]
    pub function: String,
    /// Per-agent rules instead, one "agent: rule" line each
    #[arg(long, value_name = "FILE")]
    pub function_file: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct LimitArgs {
    /// Cap (in agents) on profile-space sweeps [default: 12]
    #[arg(long, value_name = "N")]
    pub limit_exhaustive: Option<usize>,
    /// Cap on the monotonicity check's 3^n pair walk [default: 10]
    #[arg(long, value_name = "N")]
    pub limit_monotonic: Option<usize>,
    /// Cap on permutation searches for symmetries [default: 8]
    #[arg(long, value_name = "N")]
    pub limit_isomorphism: Option<usize>,
    /// Cap on transition-graph construction [default: 12]
    #[arg(long, value_name = "N")]
    pub limit_graph: Option<usize>,
    /// Cap on equilibrium enumeration [default: 20]
    #[arg(long, value_name = "N")]
    pub limit_equilibria: Option<usize>,
}

impl LimitArgs {
    pub fn resolve(&self) -> beliefnet::Limits {
        let d = beliefnet::Limits::default();
        beliefnet::Limits {
            exhaustive_agents: self.limit_exhaustive.unwrap_or(d.exhaustive_agents),
            monotonic_agents: self.limit_monotonic.unwrap_or(d.monotonic_agents),
            isomorphism_agents: self.limit_isomorphism.unwrap_or(d.isomorphism_agents),
            graph_agents: self.limit_graph.unwrap_or(d.graph_agents),
            equilibria_agents: self.limit_equilibria.unwrap_or(d.equilibria_agents),
        }
    }

    pub fn describe(limits: &beliefnet::Limits) -> String {
        format!(
            "exhaustive={} monotonic={} isomorphism={} graph={} equilibria={}",
            limits.exhaustive_agents,
            limits.monotonic_agents,
            limits.isomorphism_agents,
            limits.graph_agents,
            limits.equilibria_agents
        )
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Network file
    #[arg(long, value_name = "FILE")]
    pub network: PathBuf,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// "all" or a comma-separated subset of bounded, neutral, congruent,
    /// local, monotonic, non_slavish
    #[arg(long, default_value = "all")]
    pub axioms: String,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Everyone updates at every step
    Sync,
    /// Groups from a schedule file update in order
    Scheduled,
    /// Each step activates a random group drawn agent by agent
    Random,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Sync => "sync",
            Mode::Scheduled => "scheduled",
            Mode::Random => "random",
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Network file
    #[arg(long, value_name = "FILE")]
    pub network: PathBuf,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Starting profile as a bitstring in agent order
    #[arg(long, value_name = "BITS", conflicts_with = "initial_file")]
    pub initial: Option<String>,
    /// File holding the starting bitstring
    #[arg(long, value_name = "FILE")]
    pub initial_file: Option<PathBuf>,
    /// How agents take turns
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Schedule file (scheduled mode), one comma-separated group per line
    #[arg(long, value_name = "FILE")]
    pub schedule: Option<PathBuf>,
    /// Activation probability for every agent (random mode) [default: 0.5]
    #[arg(long, value_name = "P", conflicts_with = "probs")]
    pub prob: Option<f64>,
    /// Per-agent activation probabilities file (random mode)
    #[arg(long, value_name = "FILE")]
    pub probs: Option<PathBuf>,
    /// Random stream seed (random mode) [default: 0]
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Step budget (sync and random modes) [default: scales with 2^n]
    #[arg(long, value_name = "N")]
    pub max_steps: Option<usize>,
    /// Write the full step-by-step trace to this file
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Network file
    #[arg(long, value_name = "FILE")]
    pub network: PathBuf,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// List every equilibrium profile
    #[arg(long)]
    pub equilibria: bool,
    /// Export the full transition graph as DOT
    #[arg(long, value_name = "FILE")]
    pub transition_graph: Option<PathBuf>,
    /// Export the strongly-connected condensation as DOT
    #[arg(long, value_name = "FILE")]
    pub condensation: Option<PathBuf>,
    /// List the equilibria reachable from this profile
    #[arg(long, value_name = "BITS")]
    pub reachable_from: Option<String>,
    /// Build a converging schedule from this profile
    #[arg(long, value_name = "BITS")]
    pub construct_sequence: Option<String>,
    /// Run the shrinking phase of the construction before the growing one
    #[arg(long, requires = "construct_sequence")]
    pub decreasing_first: bool,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    /// Network file
    #[arg(long, value_name = "FILE")]
    pub network: PathBuf,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Starting profile as a bitstring in agent order
    #[arg(long, value_name = "BITS", conflicts_with = "initial_file")]
    pub initial: Option<String>,
    /// File holding the starting bitstring
    #[arg(long, value_name = "FILE")]
    pub initial_file: Option<PathBuf>,
    /// Run the shrinking phase before the growing one
    #[arg(long)]
    pub decreasing_first: bool,
    /// Write the constructed schedule to this file, ready for
    /// simulate --mode scheduled
    #[arg(long, value_name = "FILE")]
    pub schedule_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// One run per seed of a range (random mode)
    Seeds,
    /// One run per starting profile of the network
    Profiles,
    /// One run per network file in a directory
    Networks,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::Seeds => "seeds",
            Axis::Profiles => "profiles",
            Axis::Networks => "networks",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// What varies between cells
    #[arg(long, value_enum)]
    pub axis: Axis,
    /// Network file (seeds and profiles axes)
    #[arg(long, value_name = "FILE", conflicts_with = "networks_dir")]
    pub network: Option<PathBuf>,
    /// Directory of .net files (networks axis)
    #[arg(long, value_name = "DIR")]
    pub networks_dir: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// How agents take turns in every cell
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Starting profile (seeds and networks axes)
    #[arg(long, value_name = "BITS", conflicts_with = "initial_file")]
    pub initial: Option<String>,
    /// File holding the starting bitstring
    #[arg(long, value_name = "FILE")]
    pub initial_file: Option<PathBuf>,
    /// Schedule file (scheduled mode)
    #[arg(long, value_name = "FILE")]
    pub schedule: Option<PathBuf>,
    /// Activation probability (random mode) [default: 0.5]
    #[arg(long, value_name = "P", conflicts_with = "probs")]
    pub prob: Option<f64>,
    /// Per-agent activation probabilities file (random mode)
    #[arg(long, value_name = "FILE")]
    pub probs: Option<PathBuf>,
    /// Inclusive seed range for the seeds axis, e.g. 0..999
    #[arg(long, value_name = "A..B")]
    pub seeds: Option<String>,
    /// Seed shared by every cell on non-seed axes (random mode) [default: 0]
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Step budget per cell (sync and random modes) [default: scales with 2^n]
    #[arg(long, value_name = "N")]
    pub max_steps: Option<usize>,
    /// Write the result table here instead of stdout
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub limits: LimitArgs,
}
