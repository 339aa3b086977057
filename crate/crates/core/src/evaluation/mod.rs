//! Temporal evaluation: split a stream at `t1`, rank decayed edges against
//! surviving ones, and score the ranking with average precision.

mod ap;
mod split;
mod survival;

use std::collections::{HashMap, HashSet};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use ap::{average_precision, average_precision_with, APResult, Label, RankedItem, TieBreak};
pub use split::{split_time, temporal_split, EvaluationSplit, Shortfall, DEFAULT_FRACTION};
pub use survival::{
    edge_lifetimes, fit_exponential_half_life, survival_curve, write_survival_tsv, Lifetime,
    SurvivalFit,
};

use crate::error::{LinkDecayError, Result};
use crate::events::{EdgeOp, TemporalEdgeList, Timestamp};
use crate::graph::{DegreeCombination, Edge, NodeId};
use crate::scoring::{score_batch, Measure, Model, ScoreSpec};

impl EvaluationSplit {
    /// Test edges first, then zero-test edges, each sorted.
    pub fn labelled_edges(&self) -> impl Iterator<Item = (Edge, Label)> + '_ {
        self.test_set
            .iter()
            .map(|&e| (e, Label::Test))
            .chain(self.zero_test_set.iter().map(|&e| (e, Label::Zero)))
    }

    /// Ranks the split using `score` for every labelled edge.
    pub fn rank_by(
        &self,
        tie_break: TieBreak,
        mut score: impl FnMut(Edge) -> f64,
    ) -> Result<APResult> {
        let items: Vec<RankedItem> = self
            .labelled_edges()
            .map(|(e, label)| RankedItem::new(e, score(e), label))
            .collect();
        average_precision_with(&items, tie_break)
    }

    /// Scores the labelled edges on the training snapshot.
    pub fn score_with(&self, spec: ScoreSpec, tie_break: TieBreak) -> Result<APResult> {
        let edges: Vec<(Edge, Label)> = self.labelled_edges().collect();
        let pairs: Vec<Edge> = edges.iter().map(|(e, _)| *e).collect();
        let scored = score_batch(&self.training, &pairs, spec)?;
        let items: Vec<RankedItem> = scored
            .iter()
            .zip(&edges)
            .map(|(s, (_, label))| RankedItem::new(s.edge, s.score, *label))
            .collect();
        average_precision_with(&items, tie_break)
    }
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub split: EvaluationSplit,
    pub result: APResult,
}

pub fn evaluate(
    tel: &TemporalEdgeList,
    spec: ScoreSpec,
    fraction: f64,
    seed: u64,
) -> Result<APResult> {
    Ok(evaluate_with(tel, spec, fraction, seed, TieBreak::default())?.result)
}

pub fn evaluate_with(
    tel: &TemporalEdgeList,
    spec: ScoreSpec,
    fraction: f64,
    seed: u64,
    tie_break: TieBreak,
) -> Result<Evaluation> {
    let split = temporal_split(tel, fraction, seed)?;
    let result = split.score_with(spec, tie_break)?;
    Ok(Evaluation { split, result })
}

/// Uniform random scores drawn from `seed`.
pub fn random_baseline(split: &EvaluationSplit, seed: u64) -> Result<APResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split.rank_by(TieBreak::Lexicographic, |_| rng.random::<f64>())
}

/// Ranks edges by their age at `t1`: the time since the add that made them
/// live. Older edges rank higher.
pub fn age_baseline(tel: &TemporalEdgeList, split: &EvaluationSplit) -> Result<APResult> {
    let added = last_add_times(tel, split.t1);
    split.rank_by(TieBreak::Lexicographic, |e| (split.t1 - added[&e]) as f64)
}

fn last_add_times(tel: &TemporalEdgeList, t: Timestamp) -> HashMap<Edge, Timestamp> {
    let mut added = HashMap::new();
    for e in tel.events().iter().take_while(|e| e.time <= t) {
        if e.op == EdgeOp::Add {
            added.insert(e.edge(), e.time);
        }
    }
    added
}

#[derive(Debug, Clone)]
pub struct LinkPredictionSplit {
    pub t1: Timestamp,
    pub t_end: Timestamp,
    /// Present at `t_end` but not at `t1`. Sorted.
    pub positives: Vec<Edge>,
    /// Pairs never connected at any time. Sorted.
    pub negatives: Vec<Edge>,
}

/// Largest `n(n−1)` for which the never-connected pool is listed in full.
const ENUMERATE_POOL: u64 = 4_000_000;

pub fn link_prediction_split(
    tel: &TemporalEdgeList,
    fraction: f64,
    seed: u64,
) -> Result<LinkPredictionSplit> {
    let (t1, t_end) = split_time(tel, fraction)?;
    let at_t1 = tel.live_edges_at(t1);
    let mut positives: Vec<Edge> = tel
        .live_edges_at(t_end)
        .into_iter()
        .filter(|e| !at_t1.contains(e))
        .collect();
    if positives.is_empty() {
        return Err(LinkDecayError::NoNewEdges);
    }
    positives.sort_unstable();

    let ever: HashSet<Edge> = tel.events().iter().map(|e| e.edge()).collect();
    let n = tel.node_count() as u64;
    let capacity = n * n.saturating_sub(1);
    let pool = capacity - ever.len() as u64;
    let want = (positives.len() as u64).min(pool) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut negatives: Vec<Edge> = if capacity <= ENUMERATE_POOL || pool < 4 * want as u64 {
        let all: Vec<Edge> = (0..n as NodeId)
            .flat_map(|i| (0..n as NodeId).map(move |j| Edge::new(i, j)))
            .filter(|e| e.src != e.dst && !ever.contains(e))
            .collect();
        index::sample(&mut rng, all.len(), want)
            .into_iter()
            .map(|k| all[k])
            .collect()
    } else {
        let mut chosen = HashSet::with_capacity(want);
        let mut out = Vec::with_capacity(want);
        while out.len() < want {
            let i = rng.random_range(0..n as NodeId);
            let j = rng.random_range(0..n as NodeId);
            let e = Edge::new(i, j);
            if i != j && !ever.contains(&e) && chosen.insert(e) {
                out.push(e);
            }
        }
        out
    };
    negatives.sort_unstable();
    Ok(LinkPredictionSplit {
        t1,
        t_end,
        positives,
        negatives,
    })
}

/// Mirror protocol for edge creation, scored with `f_m` on the `t1` snapshot.
pub fn evaluate_link_prediction(
    tel: &TemporalEdgeList,
    measure: Measure,
    combo: DegreeCombination,
    fraction: f64,
    seed: u64,
) -> Result<APResult> {
    let split = link_prediction_split(tel, fraction, seed)?;
    let graph = tel.snapshot_at(split.t1);
    let labelled: Vec<(Edge, Label)> = split
        .positives
        .iter()
        .map(|&e| (e, Label::Test))
        .chain(split.negatives.iter().map(|&e| (e, Label::Zero)))
        .collect();
    let pairs: Vec<Edge> = labelled.iter().map(|(e, _)| *e).collect();
    let scored = score_batch(
        &graph,
        &pairs,
        ScoreSpec::new(Model::ComplementScore, measure, combo),
    )?;
    let items: Vec<RankedItem> = scored
        .iter()
        .zip(&labelled)
        .map(|(s, (_, label))| RankedItem::new(s.edge, -s.score + 0.0, *label))
        .collect();
    average_precision(&items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::events::{EdgeEvent, IngestOptions};
    use crate::graph::DegreeCombination;

    fn tel(n: usize, events: Vec<EdgeEvent>) -> TemporalEdgeList {
        TemporalEdgeList::from_events(n, events, &IngestOptions::default())
            .unwrap()
            .0
    }

    /// Ring of `n` nodes; every third arc is deleted late.
    fn churn(n: u32) -> TemporalEdgeList {
        let mut ev = Vec::new();
        for k in 0..n {
            ev.push(EdgeEvent::add(k, (k + 1) % n, 0));
            ev.push(EdgeEvent::add(k, (k + 2) % n, 1));
            if k % 3 == 0 {
                ev.push(EdgeEvent::delete(k, (k + 1) % n, 90));
            }
        }
        ev.push(EdgeEvent::add(0, n / 2, 100));
        tel(n as usize, ev)
    }

    #[test]
    fn scorer_that_knows_the_answer_is_perfect() {
        let t = churn(30);
        let split = temporal_split(&t, 0.75, 3).unwrap();
        let test: HashSet<Edge> = split.test_set.iter().copied().collect();
        let r = split
            .rank_by(TieBreak::Lexicographic, |e| {
                if test.contains(&e) {
                    1.0
                } else {
                    0.0
                }
            })
            .unwrap();
        assert_eq!(r.ap, 1.0);
    }

    #[test]
    fn evaluate_is_deterministic() {
        let t = churn(40);
        let spec: ScoreSpec = "model=network measure=adad combo=asym".parse().unwrap();
        let a = evaluate(&t, spec, 0.75, 5).unwrap();
        let b = evaluate(&t, spec, 0.75, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.positives, 14);
        assert_eq!(a.ranking.len(), 28);
    }

    #[test]
    fn random_baseline_two_items() {
        let t = tel(
            3,
            vec![
                EdgeEvent::add(0, 1, 0),
                EdgeEvent::add(1, 2, 0),
                EdgeEvent::delete(0, 1, 100),
            ],
        );
        let split = temporal_split(&t, 0.75, 0).unwrap();
        for seed in 0..20 {
            let ap = random_baseline(&split, seed).unwrap().ap;
            assert!(ap == 0.5 || ap == 1.0);
            assert_eq!(random_baseline(&split, seed).unwrap().ap, ap);
        }
    }

    #[test]
    fn age_baseline_prefers_old_edges() {
        let t = tel(
            4,
            vec![
                EdgeEvent::add(0, 1, 0),
                EdgeEvent::add(2, 3, 50),
                EdgeEvent::delete(0, 1, 90),
                EdgeEvent::add(1, 2, 100),
            ],
        );
        let split = temporal_split(&t, 0.75, 0).unwrap();
        assert_eq!(age_baseline(&t, &split).unwrap().ap, 1.0);
    }

    #[test]
    fn link_prediction_sets() {
        let t = churn(30);
        let s = link_prediction_split(&t, 0.75, 1).unwrap();
        assert_eq!(s.positives, vec![Edge::new(0, 15)]);
        assert_eq!(s.negatives.len(), 1);
        let ever: HashSet<Edge> = t.events().iter().map(|e| e.edge()).collect();
        assert!(s
            .negatives
            .iter()
            .all(|e| !ever.contains(e) && e.src != e.dst));
        let r = evaluate_link_prediction(
            &t,
            Measure::CommonNeighbors,
            DegreeCombination::Sym,
            0.75,
            1,
        )
        .unwrap();
        assert_eq!(r.ranking.len(), 2);
    }

    #[test]
    fn no_new_edges() {
        let t = tel(
            3,
            vec![EdgeEvent::add(0, 1, 0), EdgeEvent::delete(0, 1, 100)],
        );
        assert!(matches!(
            link_prediction_split(&t, 0.75, 0),
            Err(LinkDecayError::NoNewEdges)
        ));
    }

    #[test]
    fn rejection_sampling_path() {
        let n = 3000u32;
        let mut ev: Vec<EdgeEvent> = (0..n - 1).map(|k| EdgeEvent::add(k, k + 1, 0)).collect();
        ev.extend((0..50).map(|k| EdgeEvent::add(k * 7 + 3, k * 11 + 1000, 100)));
        let t = tel(n as usize, ev);
        let s = link_prediction_split(&t, 0.75, 4).unwrap();
        assert_eq!(s.negatives.len(), s.positives.len());
        assert_eq!(
            link_prediction_split(&t, 0.75, 4).unwrap().negatives,
            s.negatives
        );
        let uniq: HashSet<_> = s.negatives.iter().collect();
        assert_eq!(uniq.len(), s.negatives.len());
    }
}
