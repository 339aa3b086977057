use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linkdecay_core::{
    DecayBias, DegreeCombination, Measure, Model, PairSelection, ScoreSpec, TieBreak,
};

#[derive(Debug, Parser)]
#[command(
    name = "linkdecay",
    version,
    about = "Link decay prediction on evolving directed networks"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize an event file and assign compact node ids.
    Ingest(IngestCmd),
    /// Write the edge list live at a given time.
    Snapshot(SnapshotCmd),
    /// Score node pairs of a snapshot with one decay spec.
    Score(ScoreCmd),
    /// Compare complement-network closed forms against an explicit complement.
    Verify(VerifyCmd),
    /// Average precision of one decay spec on a temporal split.
    Evaluate(EvaluateCmd),
    /// Average precision of a measure for predicting new links.
    #[command(name = "evaluate-lp")]
    EvaluateLp(EvaluateLpCmd),
    /// Edge lifetimes, exponential half-life fit and survival curve.
    Survival(SurvivalCmd),
    /// Generate a synthetic event stream.
    Gen(GenCmd),
    /// Evaluate all 40 decay specs on one split.
    Sweep(SweepCmd),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ingest(_) => "ingest",
            Command::Snapshot(_) => "snapshot",
            Command::Score(_) => "score",
            Command::Verify(_) => "verify",
            Command::Evaluate(_) => "evaluate",
            Command::EvaluateLp(_) => "evaluate-lp",
            Command::Survival(_) => "survival",
            Command::Gen(_) => "gen",
            Command::Sweep(_) => "sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelfLoops {
    Skip,
    Fail,
}

impl SelfLoops {
    pub fn name(self) -> &'static str {
        match self {
            SelfLoops::Skip => "skip",
            SelfLoops::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ties {
    Lexicographic,
    Expected,
}

impl Ties {
    pub fn name(self) -> &'static str {
        match self {
            Ties::Lexicographic => "lexicographic",
            Ties::Expected => "expected",
        }
    }

    pub fn tie_break(self) -> TieBreak {
        match self {
            Ties::Lexicographic => TieBreak::Lexicographic,
            Ties::Expected => TieBreak::Expected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pairs {
    Edges,
    All,
}

impl Pairs {
    pub fn name(self) -> &'static str {
        match self {
            Pairs::Edges => "edges",
            Pairs::All => "all",
        }
    }

    pub fn selection(self) -> PairSelection {
        match self {
            Pairs::Edges => PairSelection::EdgesOnly,
            Pairs::All => PairSelection::AllPairs,
        }
    }
}

/// Settings shared by commands that read an event file.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Event file (`src dst ±1 time` per line); `-` reads stdin.
    #[arg(long, default_value = "-")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = SelfLoops::Skip)]
    pub self_loops: SelfLoops,
    /// Fail on deletes of absent edges instead of skipping them.
    #[arg(long, num_args = 0..=1, default_value_t = false, default_missing_value = "true")]
    pub strict_deletes: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Destination; `-` writes stdout. A file output gets a `.manifest` sibling.
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
    /// Key=value defaults; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long, default_value_t = Model::ComplementScore)]
    pub model: Model,
    #[arg(long, default_value_t = Measure::PreferentialAttachment)]
    pub measure: Measure,
    #[arg(long, default_value_t = DegreeCombination::Out)]
    pub combo: DegreeCombination,
    /// Use complement-network degrees in the Adamic–Adar weights.
    #[arg(long, num_args = 0..=1, default_value_t = false, default_missing_value = "true")]
    pub adad_complement_weights: bool,
}

impl SpecArgs {
    pub fn spec(&self) -> ScoreSpec {
        ScoreSpec {
            adad_complement_weights: self.adad_complement_weights,
            ..ScoreSpec::new(self.model, self.measure, self.combo)
        }
    }
}

#[derive(Debug, Args)]
pub struct IngestCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also write the `node index` table here.
    #[arg(long)]
    pub ids: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SnapshotCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Defaults to the last event time.
    #[arg(long)]
    pub time: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ScoreCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Defaults to the last event time.
    #[arg(long)]
    pub time: Option<u64>,
    /// File of `src dst` pairs to score; defaults to every live edge.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyCmd {
    /// Event file whose last snapshot is checked. Without it a random graph
    /// is drawn from `--nodes`, `--density` and `--seed`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = Measure::CommonNeighbors)]
    pub measure: Measure,
    #[arg(long, default_value_t = DegreeCombination::Sym)]
    pub combo: DegreeCombination,
    #[arg(long, num_args = 0..=1, default_value_t = false, default_missing_value = "true")]
    pub adad_complement_weights: bool,
    #[arg(long, value_enum, default_value_t = Pairs::Edges)]
    pub pairs: Pairs,
    #[arg(long, default_value_t = 30)]
    pub nodes: usize,
    #[arg(long, default_value_t = 0.2)]
    pub density: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Pairs checked when the graph is too large for an exhaustive check.
    #[arg(long, default_value_t = 1000)]
    pub sample_size: usize,
    #[arg(long, default_value_t = linkdecay_core::oracle::DEFAULT_COMPLEMENT_LIMIT)]
    pub complement_limit: usize,
}

#[derive(Debug, Args)]
pub struct EvaluateCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 0.75)]
    pub fraction: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Ties::Lexicographic)]
    pub ties: Ties,
    /// Write the full ranking (`src dst score label rank`) here.
    #[arg(long)]
    pub ranking: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateLpCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = Measure::CommonNeighbors)]
    pub measure: Measure,
    #[arg(long, default_value_t = DegreeCombination::Sym)]
    pub combo: DegreeCombination,
    #[arg(long, default_value_t = 0.75)]
    pub fraction: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SurvivalCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Write the Kaplan–Meier curve (`t fraction_surviving`) here.
    #[arg(long)]
    pub curve: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenCmd {
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 5000)]
    pub n_nodes: usize,
    #[arg(long, default_value_t = 50_000)]
    pub n_add_events: usize,
    #[arg(long, default_value_t = 1.0)]
    pub attach_exponent: f64,
    #[arg(long, default_value_t = 23.0)]
    pub decay_half_life: f64,
    #[arg(long, default_value_t = DecayBias::None)]
    pub decay_bias: DecayBias,
    #[arg(long, default_value_t = 0.27)]
    pub deletion_share: f64,
    #[arg(long, default_value_t = 4.0)]
    pub hazard_multiplier: f64,
    #[arg(long, default_value_t = 0.0)]
    pub closure_probability: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SweepCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 0.75)]
    pub fraction: f64,
    #[arg(long, required = true)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Ties::Lexicographic)]
    pub ties: Ties,
    #[arg(long, num_args = 0..=1, default_value_t = false, default_missing_value = "true")]
    pub adad_complement_weights: bool,
}
