//! Predicting which links of an evolving directed network will disappear.
//!
//! Two families of decay scores are built on classic link-prediction
//! measures: the negated creation score, and the creation score evaluated on
//! the complement network (computed in closed form from the original graph).
//! The [`evaluation`] module ranks decayed against surviving edges of a
//! temporal event stream and reports average precision.

pub mod error;
pub mod evaluation;
pub mod events;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod scoring;
pub mod synthgen;

pub use error::{LinkDecayError, Result};
pub use evaluation::{
    average_precision, edge_lifetimes, evaluate, evaluate_link_prediction,
    fit_exponential_half_life, random_baseline, temporal_split, APResult, EvaluationSplit, Label,
    Lifetime, RankedItem, SurvivalFit, TieBreak,
};
pub use events::{
    ingest_events, ingest_str, EdgeEvent, EdgeOp, IdMap, IngestOptions, IngestReport,
    SelfLoopPolicy, TemporalEdgeList, Timestamp,
};
pub use graph::{DegreeCombination, DegreeMode, Direction, Edge, Graph, NodeId};
pub use oracle::{
    check_closed_form, materialize_complement, OracleOptions, OracleReport, PairSelection,
};
pub use scoring::{score, score_batch, Measure, Model, ScoreSpec, ScoredEdge, Scorer};
pub use synthgen::{generate, random_digraph, DecayBias, GenConfig};
