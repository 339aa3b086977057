//! Inputs shared by the benchmarks.

use linkdecay_core::{generate, DecayBias, Edge, GenConfig, Graph, TemporalEdgeList};

/// A generated stream with the default size and a planted low-degree signal.
pub fn planted_stream(seed: u64) -> TemporalEdgeList {
    let cfg = GenConfig {
        decay_bias: DecayBias::LowDegree,
        ..GenConfig::with_seed(seed)
    };
    generate(&cfg).expect("default config is valid")
}

/// The final snapshot of [`planted_stream`] and its edges.
pub fn planted_snapshot(seed: u64) -> (Graph, Vec<Edge>) {
    let tel = planted_stream(seed);
    let g = tel.snapshot_at(tel.last_time().unwrap_or(0));
    let edges = g.edges().collect();
    (g, edges)
}
