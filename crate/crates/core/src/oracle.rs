//! Brute-force ground truth for the complement-network closed forms.
//!
//! The complement `Ā = 1 − I − A` is materialized explicitly and the raw
//! link-prediction measure is evaluated on it. For the `sym` combination the
//! undirected view of the graph is complemented, since `sym` reads the graph
//! as undirected; for `asym`, `in` and `out` the directed complement is used.
//!
//! The closed forms count `n` where the complement only offers the nodes
//! outside `{i, j}`. For common neighbors this gives the exact identity
//!
//! ```text
//! f_CN(Ā)_ij = n − δ₁(i) − δ₂(j) + cn(i, j) − |{i, j} \ (N₁(i) ∪ N₂(j))|
//! ```
//!
//! so the closed form is exact whenever both endpoints appear in the
//! selected neighborhoods, and off by at most 2 otherwise.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{LinkDecayError, Result};
use crate::graph::{DegreeCombination, Edge, Graph, NodeId};
use crate::scoring::{link_prediction_score, Measure, Model, ScoreSpec, Scorer};

/// Largest graph the oracle will complement by default.
pub const DEFAULT_COMPLEMENT_LIMIT: usize = 2000;

/// Graphs up to this size are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 50;

pub fn materialize_complement(g: &Graph) -> Result<Graph> {
    materialize_complement_with_limit(g, DEFAULT_COMPLEMENT_LIMIT)
}

/// `(i, j) ∈ Ē ⇔ i ≠ j ∧ (i, j) ∉ E`.
pub fn materialize_complement_with_limit(g: &Graph, limit: usize) -> Result<Graph> {
    let n = g.node_count();
    if n > limit {
        return Err(LinkDecayError::ComplementTooLarge {
            n,
            limit,
            dense: n as u128 * (n as u128).saturating_sub(1),
        });
    }
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) - g.edge_count());
    for i in 0..n as NodeId {
        for j in 0..n as NodeId {
            if i != j && !g.has_edge(i, j) {
                edges.push(Edge::new(i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// The complement a combination's measure is evaluated on.
fn complement_for(g: &Graph, combo: DegreeCombination, limit: usize) -> Result<Graph> {
    match combo {
        DegreeCombination::Sym => materialize_complement_with_limit(&g.symmetrized(), limit),
        _ => materialize_complement_with_limit(g, limit),
    }
}

/// `f_m(Ā)_ij` evaluated on the materialized complement. Adamic–Adar weights
/// use complement degrees.
pub fn brute_force_g2(
    g: &Graph,
    i: NodeId,
    j: NodeId,
    measure: Measure,
    combo: DegreeCombination,
) -> Result<f64> {
    g.check_pair(i, j)?;
    let complement = complement_for(g, combo, DEFAULT_COMPLEMENT_LIMIT)?;
    link_prediction_score(&complement, i, j, measure, combo)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    EdgesOnly,
    AllPairs,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub seed: u64,
    /// Pairs drawn when the graph is too large for an exhaustive check.
    pub sample_size: usize,
    pub complement_limit: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            sample_size: 1000,
            complement_limit: DEFAULT_COMPLEMENT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub spec: ScoreSpec,
    pub pairs_checked: usize,
    pub max_abs_deviation: f64,
    pub worst_pair: Option<Edge>,
    /// Deviation is exactly zero on every existing edge that was checked.
    pub edge_exact: bool,
}

impl OracleReport {
    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        let worst = self
            .worst_pair
            .map(|e| format!("{},{}", e.src, e.dst))
            .unwrap_or_else(|| "none".into());
        format!(
            "model={}\nmeasure={}\ncombo={}\nadad-complement-weights={}\npairs_checked={}\nmax_abs_deviation={}\nworst_pair={}\nedge_exact={}\n",
            self.spec.model,
            self.spec.measure,
            self.spec.combo,
            self.spec.adad_complement_weights,
            self.pairs_checked,
            self.max_abs_deviation,
            worst,
            self.edge_exact
        )
    }
}

pub fn check_closed_form(g: &Graph, spec: ScoreSpec, pairs: PairSelection) -> Result<OracleReport> {
    check_closed_form_with(g, spec, pairs, &OracleOptions::default())
}

/// Compares the complement-network closed form against the brute force on
/// the selected pairs. `spec.model` is ignored; the closed form is always
/// the complement-network score.
pub fn check_closed_form_with(
    g: &Graph,
    spec: ScoreSpec,
    pairs: PairSelection,
    options: &OracleOptions,
) -> Result<OracleReport> {
    let spec = ScoreSpec {
        model: Model::ComplementNetwork,
        ..spec
    };
    let complement = complement_for(g, spec.combo, options.complement_limit)?;
    let candidates = select_pairs(g, pairs, options);
    if candidates.is_empty() {
        return Err(LinkDecayError::InvalidConfig("no pairs to check".into()));
    }

    let closed = Scorer::new(g, spec);
    let mut report = OracleReport {
        spec,
        pairs_checked: 0,
        max_abs_deviation: 0.0,
        worst_pair: None,
        edge_exact: true,
    };
    for e in candidates {
        let formula = closed.score(e.src, e.dst)?;
        let brute = link_prediction_score(&complement, e.src, e.dst, spec.measure, spec.combo)?;
        let dev = (formula - brute).abs();
        report.pairs_checked += 1;
        if dev > report.max_abs_deviation || report.worst_pair.is_none() {
            report.max_abs_deviation = report.max_abs_deviation.max(dev);
            report.worst_pair = Some(e);
        }
        if dev != 0.0 && g.has_edge(e.src, e.dst) {
            report.edge_exact = false;
        }
    }
    Ok(report)
}

fn select_pairs(g: &Graph, pairs: PairSelection, options: &OracleOptions) -> Vec<Edge> {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    match pairs {
        PairSelection::EdgesOnly => {
            let edges: Vec<Edge> = g.edges().collect();
            if n <= EXHAUSTIVE_LIMIT || edges.len() <= options.sample_size {
                edges
            } else {
                let mut picked =
                    index::sample(&mut rng, edges.len(), options.sample_size).into_vec();
                picked.sort_unstable();
                picked.into_iter().map(|k| edges[k]).collect()
            }
        }
        PairSelection::AllPairs => {
            let total = n * n.saturating_sub(1);
            let decode = |k: usize| {
                let i = k / (n - 1);
                let mut j = k % (n - 1);
                if j >= i {
                    j += 1;
                }
                Edge::new(i as NodeId, j as NodeId)
            };
            if n <= EXHAUSTIVE_LIMIT || total <= options.sample_size {
                (0..total).map(decode).collect()
            } else {
                let mut picked = index::sample(&mut rng, total, options.sample_size).into_vec();
                picked.sort_unstable();
                picked.into_iter().map(decode).collect()
            }
        }
    }
}
