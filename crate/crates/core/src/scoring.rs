//! Link-prediction measures and the two decay models built on them.
//!
//! * Complement score: `g¹_m(A) = −f_m(A)`. A link with a low creation
//!   score is a likely candidate for removal.
//! * Complement network: `g²_m(A) = f_m(Ā)` with `Ā = 1 − I − A`, evaluated
//!   through closed forms over the original graph so the dense complement is
//!   never built:
//!
//! ```text
//! PA    (n−1−δ₁(i)) · (n−1−δ₂(j))
//! CN    n − δ₁(i) − δ₂(j) + cn
//! Cos   (n − δ₁(i) − δ₂(j) + cn) / (√(n−1−δ₁(i)) · √(n−1−δ₂(j)))
//! Jacc  (n − δ₁(i) − δ₂(j) + cn) / |N(i) ∪ N(j)|
//! Adad  Σ_V w(k) − Σ_N(i) w(k) − Σ_N(j) w(k) + Σ_N(i)∩N(j) w(k)
//! ```
//!
//! Degrees and neighborhoods are the ones selected by the
//! [`DegreeCombination`]. `w(k) = 1 / ln δ(k)`, and `0` when `δ(k) ≤ 1`.
//! The Jaccard denominator is the union in the original graph, and the
//! Adamic–Adar weights default to original-graph degrees; see
//! [`AdamicAdarWeights`] for the variant with complement degrees.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{LinkDecayError, Result};
use crate::graph::{for_each_common, DegreeCombination, Edge, Graph, NodeId};

/// Batches at least this long are scored in parallel.
const PARALLEL_BATCH: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    PreferentialAttachment,
    CommonNeighbors,
    Cosine,
    Jaccard,
    AdamicAdar,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::PreferentialAttachment,
        Measure::CommonNeighbors,
        Measure::Cosine,
        Measure::Jaccard,
        Measure::AdamicAdar,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Measure::PreferentialAttachment => "pa",
            Measure::CommonNeighbors => "cn",
            Measure::Cosine => "cos",
            Measure::Jaccard => "jacc",
            Measure::AdamicAdar => "adad",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = LinkDecayError;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                LinkDecayError::InvalidConfig(format!(
                    "unknown measure `{s}` (expected pa|cn|cos|jacc|adad)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    /// Negated link-prediction score.
    ComplementScore,
    /// Link prediction on the complement network.
    ComplementNetwork,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::ComplementScore, Model::ComplementNetwork];

    pub const fn name(self) -> &'static str {
        match self {
            Model::ComplementScore => "score",
            Model::ComplementNetwork => "network",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = LinkDecayError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "score" => Ok(Model::ComplementScore),
            "network" => Ok(Model::ComplementNetwork),
            other => Err(LinkDecayError::InvalidConfig(format!(
                "unknown model `{other}` (expected score|network)"
            ))),
        }
    }
}

/// Degrees used for the Adamic–Adar weights of the complement network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdamicAdarWeights {
    /// `1 / ln δ(k)` with original-graph degrees, as in the printed expansion.
    #[default]
    Original,
    /// `1 / ln (n−1−δ(k))`, i.e. the exact `f_Adad(Ā)` weights.
    Complement,
}

/// Selects one of the 2 × 5 × 4 decay scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScoreSpec {
    pub model: Model,
    pub measure: Measure,
    pub combo: DegreeCombination,
    pub adad_complement_weights: bool,
}

impl ScoreSpec {
    pub const fn new(model: Model, measure: Measure, combo: DegreeCombination) -> Self {
        Self {
            model,
            measure,
            combo,
            adad_complement_weights: false,
        }
    }

    /// All 40 model × measure × combo specs, model-major.
    pub fn all() -> Vec<ScoreSpec> {
        let mut specs = Vec::with_capacity(40);
        for model in Model::ALL {
            for measure in Measure::ALL {
                for combo in DegreeCombination::ALL {
                    specs.push(ScoreSpec::new(model, measure, combo));
                }
            }
        }
        specs
    }

    pub fn adad_weights(&self) -> AdamicAdarWeights {
        if self.adad_complement_weights {
            AdamicAdarWeights::Complement
        } else {
            AdamicAdarWeights::Original
        }
    }

    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "model" => self.model = value.parse()?,
            "measure" => self.measure = value.parse()?,
            "combo" => self.combo = value.parse()?,
            "adad-complement-weights" => {
                self.adad_complement_weights = value.parse().map_err(|_| {
                    LinkDecayError::InvalidConfig(format!(
                        "adad-complement-weights must be true|false, got `{value}`"
                    ))
                })?
            }
            other => {
                return Err(LinkDecayError::InvalidConfig(format!(
                    "unknown score setting `{other}`"
                )))
            }
        }
        Ok(())
    }
}

impl Default for ScoreSpec {
    fn default() -> Self {
        ScoreSpec::new(
            Model::ComplementScore,
            Measure::PreferentialAttachment,
            DegreeCombination::Out,
        )
    }
}

impl fmt::Display for ScoreSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "model={} measure={} combo={} adad-complement-weights={}",
            self.model, self.measure, self.combo, self.adad_complement_weights
        )
    }
}

impl FromStr for ScoreSpec {
    type Err = LinkDecayError;

    /// Parses whitespace- or comma-separated `key=value` settings on top of
    /// the default spec.
    fn from_str(s: &str) -> Result<Self> {
        let mut spec = ScoreSpec::default();
        for item in s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                LinkDecayError::InvalidConfig(format!("expected key=value, got `{item}`"))
            })?;
            spec.set(key.trim(), value.trim())?;
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredEdge {
    pub edge: Edge,
    pub score: f64,
}

/// `1 / ln d`, or 0 where the logarithm is zero or undefined.
#[inline]
pub fn adamic_adar_weight(degree: i64) -> f64 {
    if degree > 1 {
        1.0 / (degree as f64).ln()
    } else {
        0.0
    }
}

/// Maps `-0.0` to `0.0` so equal scores print and compare identically.
#[inline]
fn tidy(x: f64) -> f64 {
    debug_assert!(x.is_finite(), "score must be finite, got {x}");
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

#[inline]
fn guarded_ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Scores pairs of one graph under a fixed spec. Holds the `Σ_V w(k)` term
/// of the complement-network Adamic–Adar score so it is computed once.
pub struct Scorer<'g> {
    graph: &'g Graph,
    spec: ScoreSpec,
    adad_total: f64,
}

impl<'g> Scorer<'g> {
    pub fn new(graph: &'g Graph, spec: ScoreSpec) -> Self {
        let adad_total =
            if spec.model == Model::ComplementNetwork && spec.measure == Measure::AdamicAdar {
                let weight = WeightFn::new(graph, spec.combo, spec.adad_weights());
                (0..graph.node_count() as NodeId)
                    .map(|k| weight.at(k))
                    .sum()
            } else {
                0.0
            };
        Self {
            graph,
            spec,
            adad_total,
        }
    }

    pub fn spec(&self) -> ScoreSpec {
        self.spec
    }

    pub fn score(&self, i: NodeId, j: NodeId) -> Result<f64> {
        self.graph.check_pair(i, j)?;
        Ok(match self.spec.model {
            Model::ComplementScore => tidy(-raw_score(
                self.graph,
                i,
                j,
                self.spec.measure,
                self.spec.combo,
            )),
            Model::ComplementNetwork => tidy(self.network_score(i, j)),
        })
    }

    fn network_score(&self, i: NodeId, j: NodeId) -> f64 {
        let g = self.graph;
        let combo = self.spec.combo;
        let n = g.node_count() as f64;
        let (ni, nj) = g.pair_views(i, j, combo);
        let (d1, d2) = (ni.len() as f64, nj.len() as f64);
        let cn = || {
            let mut c = 0usize;
            for_each_common(ni, nj, |_| c += 1);
            c as f64
        };
        match self.spec.measure {
            Measure::PreferentialAttachment => (n - 1.0 - d1) * (n - 1.0 - d2),
            Measure::CommonNeighbors => n - d1 - d2 + cn(),
            Measure::Cosine => {
                let (c1, c2) = (n - 1.0 - d1, n - 1.0 - d2);
                if c1 <= 0.0 || c2 <= 0.0 {
                    0.0
                } else {
                    (n - d1 - d2 + cn()) / (c1.sqrt() * c2.sqrt())
                }
            }
            Measure::Jaccard => {
                let cn = cn();
                guarded_ratio(n - d1 - d2 + cn, d1 + d2 - cn)
            }
            Measure::AdamicAdar => {
                let weight = WeightFn::new(g, combo, self.spec.adad_weights());
                let side_i: f64 = ni.iter().map(|&k| weight.at(k)).sum();
                let side_j: f64 = nj.iter().map(|&k| weight.at(k)).sum();
                let mut both = 0.0;
                for_each_common(ni, nj, |k| both += weight.at(k));
                self.adad_total - side_i - side_j + both
            }
        }
    }
}

struct WeightFn<'g> {
    graph: &'g Graph,
    combo: DegreeCombination,
    weights: AdamicAdarWeights,
}

impl<'g> WeightFn<'g> {
    fn new(graph: &'g Graph, combo: DegreeCombination, weights: AdamicAdarWeights) -> Self {
        Self {
            graph,
            combo,
            weights,
        }
    }

    #[inline]
    fn at(&self, k: NodeId) -> f64 {
        let d = self.graph.view(k, self.combo.weight_side()).len() as i64;
        match self.weights {
            AdamicAdarWeights::Original => adamic_adar_weight(d),
            AdamicAdarWeights::Complement => {
                adamic_adar_weight(self.graph.node_count() as i64 - 1 - d)
            }
        }
    }
}

/// `f_m(A)_ij` for a validated pair.
fn raw_score(g: &Graph, i: NodeId, j: NodeId, measure: Measure, combo: DegreeCombination) -> f64 {
    let (ni, nj) = g.pair_views(i, j, combo);
    let (d1, d2) = (ni.len() as f64, nj.len() as f64);
    let cn = || {
        let mut c = 0usize;
        for_each_common(ni, nj, |_| c += 1);
        c as f64
    };
    match measure {
        Measure::PreferentialAttachment => d1 * d2,
        Measure::CommonNeighbors => cn(),
        Measure::Cosine => guarded_ratio(cn(), d1.sqrt() * d2.sqrt()),
        Measure::Jaccard => {
            let cn = cn();
            guarded_ratio(cn, d1 + d2 - cn)
        }
        Measure::AdamicAdar => {
            let weight = WeightFn::new(g, combo, AdamicAdarWeights::Original);
            let mut sum = 0.0;
            for_each_common(ni, nj, |k| sum += weight.at(k));
            sum
        }
    }
}

/// The link-prediction (creation) score `f_m(A)_ij`.
pub fn link_prediction_score(
    g: &Graph,
    i: NodeId,
    j: NodeId,
    measure: Measure,
    combo: DegreeCombination,
) -> Result<f64> {
    g.check_pair(i, j)?;
    Ok(tidy(raw_score(g, i, j, measure, combo)))
}

/// Complement-score decay model `−f_m(A)_ij`. Higher means more likely to decay.
pub fn complement_score(
    g: &Graph,
    i: NodeId,
    j: NodeId,
    measure: Measure,
    combo: DegreeCombination,
) -> Result<f64> {
    Scorer::new(g, ScoreSpec::new(Model::ComplementScore, measure, combo)).score(i, j)
}

/// Complement-network decay model, closed forms with original-graph
/// Adamic–Adar weights.
pub fn complement_network_score(
    g: &Graph,
    i: NodeId,
    j: NodeId,
    measure: Measure,
    combo: DegreeCombination,
) -> Result<f64> {
    complement_network_score_with(g, i, j, measure, combo, AdamicAdarWeights::Original)
}

pub fn complement_network_score_with(
    g: &Graph,
    i: NodeId,
    j: NodeId,
    measure: Measure,
    combo: DegreeCombination,
    weights: AdamicAdarWeights,
) -> Result<f64> {
    let spec = ScoreSpec {
        adad_complement_weights: weights == AdamicAdarWeights::Complement,
        ..ScoreSpec::new(Model::ComplementNetwork, measure, combo)
    };
    Scorer::new(g, spec).score(i, j)
}

pub fn score(g: &Graph, edge: Edge, spec: ScoreSpec) -> Result<f64> {
    Scorer::new(g, spec).score(edge.src, edge.dst)
}

/// Scores `pairs` in input order. Large batches run in parallel; the output
/// does not depend on it.
pub fn score_batch(g: &Graph, pairs: &[Edge], spec: ScoreSpec) -> Result<Vec<ScoredEdge>> {
    for (index, e) in pairs.iter().enumerate() {
        g.check_pair(e.src, e.dst)
            .map_err(|source| LinkDecayError::BatchItem {
                index,
                source: Box::new(source),
            })?;
    }
    let scorer = Scorer::new(g, spec);
    let one = |e: &Edge| ScoredEdge {
        edge: *e,
        score: scorer.score(e.src, e.dst).expect("pair validated above"),
    };
    Ok(if pairs.len() >= PARALLEL_BATCH {
        pairs.par_iter().map(one).collect()
    } else {
        pairs.iter().map(one).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{swim_surf, SwimSurf};
    use proptest::prelude::*;

    const SYM: DegreeCombination = DegreeCombination::Sym;

    #[test]
    fn fixture_complement_score_pa() {
        let g = swim_surf();
        let s = complement_score(
            &g,
            SwimSurf::SWIM,
            SwimSurf::SURF,
            Measure::PreferentialAttachment,
            SYM,
        )
        .unwrap();
        assert_eq!(s, -9.0);
    }

    #[test]
    fn fixture_complement_score_cn_orders_bridge_first() {
        let g = swim_surf();
        let tri = complement_score(
            &g,
            SwimSurf::WATER,
            SwimSurf::BEACH,
            Measure::CommonNeighbors,
            SYM,
        )
        .unwrap();
        let bridge = complement_score(
            &g,
            SwimSurf::SWIM,
            SwimSurf::SURF,
            Measure::CommonNeighbors,
            SYM,
        )
        .unwrap();
        assert_eq!(tri, -1.0);
        assert_eq!(bridge, 0.0);
        assert!(bridge > tri);
    }

    #[test]
    fn isolated_pair_scores_zero_everywhere() {
        let g = Graph::from_edges(4, [(2, 3)]).unwrap();
        for measure in Measure::ALL {
            for combo in DegreeCombination::ALL {
                let s = complement_score(&g, 0, 1, measure, combo).unwrap();
                assert_eq!(s.to_bits(), 0.0f64.to_bits(), "{measure} {combo}");
            }
        }
    }

    #[test]
    fn same_endpoint_rejected() {
        let g = swim_surf();
        for measure in Measure::ALL {
            assert!(complement_score(&g, 2, 2, measure, SYM).is_err());
            assert!(complement_network_score(&g, 2, 2, measure, SYM).is_err());
        }
    }

    #[test]
    fn fixture_complement_network_cn_and_pa() {
        let g = swim_surf();
        let cn = |i, j| complement_network_score(&g, i, j, Measure::CommonNeighbors, SYM).unwrap();
        assert_eq!(cn(SwimSurf::SWIM, SwimSurf::SURF), 0.0);
        assert_eq!(cn(SwimSurf::WATER, SwimSurf::BEACH), 3.0);
        let pa = complement_network_score(
            &g,
            SwimSurf::SWIM,
            SwimSurf::SURF,
            Measure::PreferentialAttachment,
            SYM,
        )
        .unwrap();
        assert_eq!(pa, 4.0);
    }

    #[test]
    fn empty_graph_network_cn_is_n() {
        for n in [3usize, 4, 9] {
            let g = Graph::empty(n);
            for combo in DegreeCombination::ALL {
                let s =
                    complement_network_score(&g, 0, 1, Measure::CommonNeighbors, combo).unwrap();
                assert_eq!(s, n as f64);
            }
        }
    }

    #[test]
    fn cosine_with_saturated_endpoint_is_zero() {
        // node 0 links to every other node: n − 1 − δ_out(0) = 0
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        let s =
            complement_network_score(&g, 0, 1, Measure::Cosine, DegreeCombination::Out).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn jaccard_verbatim_uses_original_union() {
        let g = swim_surf();
        // (n − 2 − 2 + 1) / |{swim, beach, water}| = 3 / 3
        let s =
            complement_network_score(&g, SwimSurf::WATER, SwimSurf::BEACH, Measure::Jaccard, SYM)
                .unwrap();
        assert_eq!(s, 1.0);
        // isolated endpoints: union is empty
        let g = Graph::from_edges(4, [(2, 3)]).unwrap();
        assert_eq!(
            complement_network_score(&g, 0, 1, Measure::Jaccard, SYM).unwrap(),
            0.0
        );
    }

    #[test]
    fn adamic_adar_weight_guards() {
        assert_eq!(adamic_adar_weight(-3), 0.0);
        assert_eq!(adamic_adar_weight(0), 0.0);
        assert_eq!(adamic_adar_weight(1), 0.0);
        assert_eq!(adamic_adar_weight(2), 1.0 / 2f64.ln());
    }

    #[test]
    fn fixture_adad_network_by_hand() {
        // Sym weights: water, beach, SEO, PageRank have δ = 2; swim, surf have δ = 3.
        let g = swim_surf();
        let w2 = 1.0 / 2f64.ln();
        let w3 = 1.0 / 3f64.ln();
        let total = 4.0 * w2 + 2.0 * w3;
        // N(swim) = {water, beach, surf}, N(surf) = {swim, SEO, PageRank}, no overlap
        let want = total - (2.0 * w2 + w3) - (w3 + 2.0 * w2);
        let got =
            complement_network_score(&g, SwimSurf::SWIM, SwimSurf::SURF, Measure::AdamicAdar, SYM)
                .unwrap();
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn spec_roundtrip_and_count() {
        let all = ScoreSpec::all();
        assert_eq!(all.len(), 40);
        for spec in &all {
            assert_eq!(&spec.to_string().parse::<ScoreSpec>().unwrap(), spec);
        }
        let spec: ScoreSpec = "model=network,measure=adad,combo=asym,adad-complement-weights=true"
            .parse()
            .unwrap();
        assert_eq!(spec.model, Model::ComplementNetwork);
        assert!(spec.adad_complement_weights);
        assert!("model=other".parse::<ScoreSpec>().is_err());
        assert!("measure".parse::<ScoreSpec>().is_err());
    }

    #[test]
    fn batch_empty_and_bridge_max() {
        let g = swim_surf();
        let spec = ScoreSpec::new(Model::ComplementScore, Measure::CommonNeighbors, SYM);
        assert!(score_batch(&g, &[], spec).unwrap().is_empty());

        let scored = score_batch(&g, &SwimSurf::LINKS, spec).unwrap();
        let order: Vec<Edge> = scored.iter().map(|s| s.edge).collect();
        assert_eq!(order, SwimSurf::LINKS);
        let max = scored
            .iter()
            .map(|s| s.score)
            .fold(f64::NEG_INFINITY, f64::max);
        let bridge = scored.iter().find(|s| s.edge == SwimSurf::BRIDGE).unwrap();
        assert_eq!(bridge.score, max);
        assert_eq!(scored.iter().filter(|s| s.score == max).count(), 1);

        assert_eq!(score_batch(&g, &SwimSurf::LINKS, spec).unwrap(), scored);
    }

    #[test]
    fn batch_reports_offending_index() {
        let g = swim_surf();
        let pairs = [Edge::new(0, 1), Edge::new(2, 2), Edge::new(0, 9)];
        match score_batch(&g, &pairs, ScoreSpec::default()) {
            Err(LinkDecayError::BatchItem { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parallel_batch_matches_sequential() {
        let mut edges = Vec::new();
        for i in 0..120u32 {
            for d in [1u32, 7, 13] {
                edges.push(Edge::new(i, (i + d) % 120));
            }
        }
        let g = Graph::from_edges(120, edges).unwrap();
        let pairs: Vec<Edge> = (0..5000u32)
            .map(|k| Edge::new(k % 120, (k * 7 + 1) % 120))
            .filter(|e| e.src != e.dst)
            .collect();
        assert!(pairs.len() >= PARALLEL_BATCH);
        for spec in ScoreSpec::all() {
            let batch = score_batch(&g, &pairs, spec).unwrap();
            for (s, e) in batch.iter().zip(&pairs) {
                assert_eq!(s.score.to_bits(), score(&g, *e, spec).unwrap().to_bits());
            }
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (3usize..20).prop_flat_map(|n| {
            prop::collection::vec((0..n as NodeId, 0..n as NodeId), 0..100).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(a, b)| a != b)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn scores_always_finite(g in arb_graph(), i in 0u32..20, j in 0u32..20, flag in any::<bool>()) {
            let n = g.node_count() as NodeId;
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            for mut spec in ScoreSpec::all() {
                spec.adad_complement_weights = flag;
                let s = score(&g, Edge::new(i, j), spec).unwrap();
                prop_assert!(s.is_finite(), "{} gave {}", spec, s);
            }
        }

        #[test]
        fn ranking_duality(g in arb_graph()) {
            for measure in Measure::ALL {
                for combo in DegreeCombination::ALL {
                    let edges: Vec<Edge> = g.edges().collect();
                    let mut by_decay = edges.clone();
                    let mut by_creation = edges.clone();
                    let decay = |e: &Edge| complement_score(&g, e.src, e.dst, measure, combo).unwrap();
                    let create = |e: &Edge| link_prediction_score(&g, e.src, e.dst, measure, combo).unwrap();
                    by_decay.sort_by(|a, b| decay(b).total_cmp(&decay(a)).then(a.cmp(b)));
                    by_creation.sort_by(|a, b| create(a).total_cmp(&create(b)).then(a.cmp(b)));
                    prop_assert_eq!(by_decay, by_creation);
                }
            }
        }

        #[test]
        fn pa_monotone_in_selected_degree(n in 4usize..40, d1 in 1usize..10, d2 in 1usize..10) {
            // star graphs: node 0 points at d1 leaves, node 1 at d2 others
            prop_assume!(d1 + 2 < n && d2 + 2 < n);
            let build = |a: usize, b: usize| {
                let mut edges = Vec::new();
                for k in 0..a { edges.push(Edge::new(0, 2 + k as NodeId)); }
                for k in 0..b { edges.push(Edge::new(1, (n - 1 - k) as NodeId)); }
                Graph::from_edges(n, edges).unwrap()
            };
            let out = DegreeCombination::Out;
            let pa = Measure::PreferentialAttachment;
            let (g, g_more) = (build(d1, d2), build(d1 + 1, d2));
            let s1 = complement_score(&g, 0, 1, pa, out).unwrap();
            let s2 = complement_score(&g_more, 0, 1, pa, out).unwrap();
            prop_assert!(s2 < s1);
            let c1 = complement_network_score(&g, 0, 1, pa, out).unwrap();
            let c2 = complement_network_score(&g_more, 0, 1, pa, out).unwrap();
            prop_assert!(c2 < c1);
        }

        #[test]
        fn relabeling_equivariance(g in arb_graph(), seed in any::<u64>(), flag in any::<bool>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let n = g.node_count();
            let mut perm: Vec<NodeId> = (0..n as NodeId).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let h = g.relabeled(&perm).unwrap();
            for mut spec in ScoreSpec::all() {
                spec.adad_complement_weights = flag;
                for i in 0..n as NodeId {
                    for j in 0..n as NodeId {
                        if i == j { continue; }
                        let a = score(&g, Edge::new(i, j), spec).unwrap();
                        let b = score(&h, Edge::new(perm[i as usize], perm[j as usize]), spec).unwrap();
                        // summation order of Adamic–Adar terms follows node ids
                        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{} {} {}", spec, a, b);
                    }
                }
            }
        }
    }
}
