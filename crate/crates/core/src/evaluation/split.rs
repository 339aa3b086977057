use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{LinkDecayError, Result};
use crate::events::{TemporalEdgeList, Timestamp};
use crate::graph::{Edge, Graph};

pub const DEFAULT_FRACTION: f64 = 0.75;

/// Training snapshot plus the two labelled edge sets drawn from it.
#[derive(Debug, Clone)]
pub struct EvaluationSplit {
    pub t1: Timestamp,
    pub t_end: Timestamp,
    /// Network at `t1`.
    pub training: Graph,
    /// Present at `t1`, absent at `t_end`. Sorted.
    pub test_set: Vec<Edge>,
    /// Sample of edges present at both `t1` and `t_end`. Sorted.
    pub zero_test_set: Vec<Edge>,
    pub seed: u64,
    /// Set when there were fewer survivors than decayed edges.
    pub zero_shortfall: Option<Shortfall>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shortfall {
    pub wanted: usize,
    pub available: usize,
}

pub(crate) fn check_fraction(fraction: f64) -> Result<()> {
    if fraction > 0.0 && fraction < 1.0 {
        Ok(())
    } else {
        Err(LinkDecayError::InvalidConfig(format!(
            "fraction must lie in (0, 1), got {fraction}"
        )))
    }
}

/// `first + ⌊fraction · (last − first)⌋`.
pub fn split_time(tel: &TemporalEdgeList, fraction: f64) -> Result<(Timestamp, Timestamp)> {
    check_fraction(fraction)?;
    let (first, last) = match (tel.first_time(), tel.last_time()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(LinkDecayError::EmptyEvents),
    };
    let offset = (fraction * (last - first) as f64).floor() as Timestamp;
    Ok((first + offset, last))
}

pub fn temporal_split(tel: &TemporalEdgeList, fraction: f64, seed: u64) -> Result<EvaluationSplit> {
    let (t1, t_end) = split_time(tel, fraction)?;
    let at_t1 = tel.live_edges_at(t1);
    let at_end = tel.live_edges_at(t_end);

    let mut test_set: Vec<Edge> = at_t1
        .iter()
        .filter(|e| !at_end.contains(e))
        .copied()
        .collect();
    if test_set.is_empty() {
        return Err(LinkDecayError::NoDecayedEdges);
    }
    test_set.sort_unstable();
    let mut survivors: Vec<Edge> = at_t1
        .iter()
        .filter(|e| at_end.contains(e))
        .copied()
        .collect();
    survivors.sort_unstable();

    let wanted = test_set.len();
    let take = wanted.min(survivors.len());
    let zero_shortfall = (take < wanted).then_some(Shortfall {
        wanted,
        available: survivors.len(),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_test_set: Vec<Edge> = index::sample(&mut rng, survivors.len(), take)
        .into_iter()
        .map(|k| survivors[k])
        .collect();
    zero_test_set.sort_unstable();

    let training = Graph::from_edges(tel.node_count(), at_t1)?;
    Ok(EvaluationSplit {
        t1,
        t_end,
        training,
        test_set,
        zero_test_set,
        seed,
        zero_shortfall,
    })
}
