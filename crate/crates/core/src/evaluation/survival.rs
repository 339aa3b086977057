//! Edge lifetimes and the exponential survival law `S(t) = 2^(−t / t½)`.

use std::collections::HashMap;
use std::io::Write;

use crate::error::{LinkDecayError, Result};
use crate::events::{EdgeOp, TemporalEdgeList, Timestamp};
use crate::graph::Edge;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lifetime {
    pub duration: f64,
    /// The edge was still live at the end of the observation window.
    pub censored: bool,
}

impl Lifetime {
    pub const fn observed(duration: f64) -> Self {
        Self {
            duration,
            censored: false,
        }
    }

    pub const fn censored(duration: f64) -> Self {
        Self {
            duration,
            censored: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalFit {
    pub half_life: f64,
    /// Deletion rate per time unit.
    pub rate: f64,
    pub lifetimes_used: usize,
    pub censored: usize,
}

/// One record per add event, in add order.
pub fn edge_lifetimes(tel: &TemporalEdgeList) -> Vec<Lifetime> {
    let Some(t_end) = tel.last_time() else {
        return Vec::new();
    };
    let mut out: Vec<Lifetime> = Vec::new();
    let mut open: HashMap<Edge, (usize, Timestamp)> = HashMap::new();
    for e in tel.events() {
        match e.op {
            EdgeOp::Add => {
                open.insert(e.edge(), (out.len(), e.time));
                out.push(Lifetime::censored(0.0));
            }
            EdgeOp::Delete => {
                if let Some((slot, added)) = open.remove(&e.edge()) {
                    out[slot] = Lifetime::observed((e.time - added) as f64);
                }
            }
        }
    }
    for (slot, added) in open.into_values() {
        out[slot] = Lifetime::censored((t_end - added) as f64);
    }
    out
}

/// Maximum-likelihood exponential fit with right censoring:
/// `λ = #observed / Σ durations`, `t½ = ln 2 / λ`.
pub fn fit_exponential_half_life(lifetimes: &[Lifetime]) -> Result<SurvivalFit> {
    let observed = lifetimes.iter().filter(|l| !l.censored).count();
    if observed < 2 {
        return Err(LinkDecayError::InsufficientLifetimes(observed));
    }
    let total: f64 = lifetimes.iter().map(|l| l.duration).sum();
    if total.is_nan() || total <= 0.0 {
        return Err(LinkDecayError::InvalidConfig(
            "lifetimes sum to zero".into(),
        ));
    }
    let rate = observed as f64 / total;
    Ok(SurvivalFit {
        half_life: std::f64::consts::LN_2 / rate,
        rate,
        lifetimes_used: lifetimes.len(),
        censored: lifetimes.len() - observed,
    })
}

/// Kaplan–Meier estimate: `(t, fraction surviving past t)` at 0 and at each
/// distinct observed deletion time.
pub fn survival_curve(lifetimes: &[Lifetime]) -> Vec<(f64, f64)> {
    let mut sorted: Vec<Lifetime> = lifetimes.to_vec();
    // deletions before censorings at equal durations
    sorted.sort_by(|a, b| {
        a.duration
            .total_cmp(&b.duration)
            .then(a.censored.cmp(&b.censored))
    });
    let mut curve = vec![(0.0, 1.0)];
    let mut at_risk = sorted.len();
    let mut surviving = 1.0;
    let mut k = 0;
    while k < sorted.len() {
        let t = sorted[k].duration;
        let group = sorted[k..].iter().take_while(|l| l.duration == t).count();
        let deaths = sorted[k..k + group].iter().filter(|l| !l.censored).count();
        if deaths > 0 {
            surviving *= 1.0 - deaths as f64 / at_risk as f64;
            if t == 0.0 {
                curve[0].1 = surviving;
            } else {
                curve.push((t, surviving));
            }
        }
        at_risk -= group;
        k += group;
    }
    curve
}

pub fn write_survival_tsv<W: Write>(curve: &[(f64, f64)], mut w: W) -> std::io::Result<()> {
    writeln!(w, "t\tfraction_surviving")?;
    for (t, s) in curve {
        writeln!(w, "{t}\t{s}")?;
    }
    Ok(())
}
