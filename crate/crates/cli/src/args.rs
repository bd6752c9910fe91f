use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "hypercut",
    version,
    about = "Random-contraction cut algorithms for hypergraphs"
)]
pub struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Run one algorithm and print its cut.
    #[command(subcommand)]
    Solve(Solve),
    /// Enumerate solution families.
    #[command(subcommand)]
    Enumerate(Enumerate),
    /// Randomized optimality tests.
    #[command(subcommand)]
    Verify(Verify),
    /// Exhaustive reference answers for small instances.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Compare an algorithm's hit frequency with its success floor.
    #[command(subcommand)]
    Estimate(Estimate),
    /// Exact checks of the analysis identities.
    #[command(subcommand)]
    Check(Check),
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// Hubs 0 and 1 joined by t internally disjoint paths.
    Lowerbound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniformly random instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        t_costs: usize,
        #[arg(long, default_value_t = 0)]
        t_weights: usize,
        #[arg(long, default_value_t = 8)]
        max_cost: u64,
        #[arg(long, default_value_t = 4)]
        max_weight: u64,
        /// Draw vertex weights from 1..=max-weight instead of 0..=max-weight.
        #[arg(long)]
        positive_weights: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArg {
    #[arg(long)]
    pub instance: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct EdgeBudgets {
    /// Budgets for every criterion but the last, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub budgets: Vec<u64>,
    /// Criterion order (cost indices), objective last; defaults to 0..t.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Option<Vec<usize>>,
}

#[derive(Args, Debug, Clone)]
pub struct NodeBudgets {
    /// One budget per vertex-weight function, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub budgets: Vec<u64>,
    /// Cost function to minimise.
    #[arg(long, default_value_t = 0)]
    pub cost: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Constant,
    Arbitrary,
}

#[derive(Args, Debug, Clone)]
pub struct KCutArgs {
    #[arg(long)]
    pub k: usize,
    /// Part-weight lower bounds, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<u64>,
    /// Weight cost-function 0 into the contraction distribution and the value.
    #[arg(long)]
    pub weighted_costs: bool,
    /// Vertex-weight function for the size bounds (unit weights if absent).
    #[arg(long)]
    pub weight: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Solve {
    /// Budgeted multicriteria min-cut. With several trials the best proper
    /// cut within the budgets is kept.
    Bmulti {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        budgets: EdgeBudgets,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// Node-budgeted min-cut.
    NbBmulti {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        budgets: NodeBudgets,
        #[arg(long, value_enum, default_value_t = RankMode::Arbitrary)]
        rank_mode: RankMode,
    },
    /// Best of several non-uniform contraction runs for the global min-cut.
    Hmincut {
        #[command(flatten)]
        inst: InstanceArg,
        /// Runs; defaults to ⌈C(n,2)·ln n⌉.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        cost: usize,
    },
    /// Size-constrained min-k-cut, best of several runs.
    Kcut {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        kcut: KCutArgs,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Enumerate {
    /// All multiobjective min-cuts.
    Multi {
        #[command(flatten)]
        inst: InstanceArg,
        /// Repetitions, or `auto`.
        #[arg(long, default_value = "auto")]
        reps: String,
    },
    /// All pareto-optimal cuts.
    Pareto {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, default_value = "auto")]
        reps: String,
        /// Verifier runs per criterion, or `auto`.
        #[arg(long, default_value = "auto")]
        verify_reps: String,
    },
    /// Budget-free node-budgeted enumeration (constant rank).
    NbMulti {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, default_value = "auto")]
        reps: String,
        #[arg(long, default_value_t = 0)]
        cost: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Exit 0 when no dominating cut is found, 1 otherwise.
    Pareto {
        #[command(flatten)]
        inst: InstanceArg,
        /// Hyperedge ids of the cut, comma separated.
        #[arg(long)]
        cut: String,
        #[arg(long, default_value = "auto")]
        reps: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Oracle {
    Pareto(InstanceArg),
    Multi(InstanceArg),
    Bmulti {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        budgets: EdgeBudgets,
    },
    Parametric(InstanceArg),
    NbBmulti {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        budgets: NodeBudgets,
    },
    Kcut {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        kcut: KCutArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TrialArgs {
    /// Defaults to max(1000, ⌈30/Q⌉).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Count only this optimal cut (hyperedge ids, comma separated).
    #[arg(long)]
    pub fixed_target: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Estimate {
    Bmulti {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        budgets: EdgeBudgets,
        #[command(flatten)]
        trials: TrialArgs,
    },
    NbBmulti {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        budgets: NodeBudgets,
        #[arg(long, value_enum, default_value_t = RankMode::Arbitrary)]
        rank_mode: RankMode,
        #[command(flatten)]
        trials: TrialArgs,
    },
    Hmincut {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, default_value_t = 0)]
        cost: usize,
        #[command(flatten)]
        trials: TrialArgs,
    },
    Kcut {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        kcut: KCutArgs,
        #[command(flatten)]
        trials: TrialArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Closed form against brute force on random programs.
    LemmaLp {
        #[arg(long, default_value_t = 500)]
        sweep: usize,
    },
    /// The binomial ratio inequality on every valid triple.
    RatioIneq {
        #[arg(long, default_value_t = 30)]
        max_n: u64,
    },
}
