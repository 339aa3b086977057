//! Average precision over a ranking of decayed (`test`) and surviving
//! (`zero`) edges.
//!
//! Items are ranked by descending score. With `P(i)` the fraction of test
//! items among the top `i` and `I(i)` the test indicator at rank `i`,
//!
//! ```text
//! AP = Σᵢ P(i) · I(i) / |𝕋|
//! ```

use std::cmp::Ordering;
use std::fmt;

use crate::error::{LinkDecayError, Result};
use crate::graph::Edge;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    /// Member of the test set: the event being predicted happened.
    Test,
    /// Member of the zero test set.
    Zero,
}

impl Label {
    pub const fn name(self) -> &'static str {
        match self {
            Label::Test => "test",
            Label::Zero => "zero",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedItem {
    pub edge: Edge,
    pub score: f64,
    pub label: Label,
}

impl RankedItem {
    pub const fn new(edge: Edge, score: f64, label: Label) -> Self {
        Self { edge, score, label }
    }
}

/// How items with equal scores are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Ascending `(src, dst)` within a tie.
    #[default]
    Lexicographic,
    /// Expected AP over a uniformly random order within each tie.
    Expected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct APResult {
    pub ap: f64,
    /// Items in rank order, best first.
    pub ranking: Vec<RankedItem>,
    /// `P(i)` for `i = 1..=ranking.len()` under the stored order.
    pub precision_at: Vec<f64>,
    pub positives: usize,
    pub tie_break: TieBreak,
}

impl APResult {
    /// Recomputes AP from the stored ranking.
    pub fn recompute(&self) -> f64 {
        ap_of_sorted(&self.ranking, self.tie_break)
    }
}

fn rank_order(a: &RankedItem, b: &RankedItem) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then_with(|| a.edge.cmp(&b.edge))
}

pub fn average_precision(items: &[RankedItem]) -> Result<APResult> {
    average_precision_with(items, TieBreak::Lexicographic)
}

pub fn average_precision_with(items: &[RankedItem], tie_break: TieBreak) -> Result<APResult> {
    let positives = items.iter().filter(|it| it.label == Label::Test).count();
    if positives == 0 {
        return Err(LinkDecayError::NoPositives);
    }
    if let Some(bad) = items.iter().find(|it| !it.score.is_finite()) {
        return Err(LinkDecayError::InvalidConfig(format!(
            "non-finite score {} for ({}, {})",
            bad.score, bad.edge.src, bad.edge.dst
        )));
    }
    let mut ranking = items.to_vec();
    ranking.sort_by(rank_order);

    let mut hits = 0usize;
    let precision_at = ranking
        .iter()
        .enumerate()
        .map(|(k, it)| {
            if it.label == Label::Test {
                hits += 1;
            }
            hits as f64 / (k + 1) as f64
        })
        .collect();
    let ap = ap_of_sorted(&ranking, tie_break);
    Ok(APResult {
        ap,
        ranking,
        precision_at,
        positives,
        tie_break,
    })
}

fn ap_of_sorted(ranking: &[RankedItem], tie_break: TieBreak) -> f64 {
    let positives = ranking.iter().filter(|it| it.label == Label::Test).count();
    if positives == 0 {
        return 0.0;
    }
    let sum = match tie_break {
        TieBreak::Lexicographic => {
            let mut hits = 0usize;
            let mut sum = 0.0;
            for (k, it) in ranking.iter().enumerate() {
                if it.label == Label::Test {
                    hits += 1;
                    sum += hits as f64 / (k + 1) as f64;
                }
            }
            sum
        }
        TieBreak::Expected => expected_precision_sum(ranking),
    };
    sum / positives as f64
}

/// `E[Σ P(i)·I(i)]` when each block of equal scores is randomly permuted.
///
/// For a block at ranks `s+1..=s+g` holding `t` positives, after `before`
/// positives: rank `s+k` is positive with probability `t/g`, and given that,
/// the other positives above it in the block number `(k−1)(t−1)/(g−1)` in
/// expectation.
fn expected_precision_sum(ranking: &[RankedItem]) -> f64 {
    let mut sum = 0.0;
    let mut before = 0usize;
    let mut start = 0usize;
    while start < ranking.len() {
        let score = ranking[start].score;
        let end = start
            + ranking[start..]
                .iter()
                .take_while(|it| it.score == score)
                .count();
        let g = end - start;
        let t = ranking[start..end]
            .iter()
            .filter(|it| it.label == Label::Test)
            .count();
        if t > 0 {
            let p_pos = t as f64 / g as f64;
            for k in 1..=g {
                let others = if g > 1 {
                    (k - 1) as f64 * (t - 1) as f64 / (g - 1) as f64
                } else {
                    0.0
                };
                sum += p_pos * (before as f64 + 1.0 + others) / (start + k) as f64;
            }
        }
        before += t;
        start = end;
    }
    sum
}
