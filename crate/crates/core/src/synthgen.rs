//! Synthetic temporal networks with a controllable decay signal.
//!
//! Adds arrive evenly spaced over a horizon `T`. Endpoints are drawn with
//! probability proportional to `(degree + 1)^α`. Every live edge carries an
//! exponential lifetime; under a decay bias, edges in the biased class die
//! `hazard_multiplier` times faster. Classes are re-evaluated at every
//! integer tick and the residual lifetime is redrawn when the class changes.
//!
//! `T` is chosen so that, without bias, deletions make up `deletion_share`
//! of all operations: with `x = λT`, a fraction `1 − (1 − e^{−x})/x` of
//! the adds is deleted before `T`.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use crate::error::{LinkDecayError, Result};
use crate::events::{EdgeEvent, IngestOptions, TemporalEdgeList, Timestamp};
use crate::graph::{Edge, Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecayBias {
    #[default]
    None,
    /// Faster decay when the endpoint-degree product is below the median
    /// over live edges.
    LowDegree,
    /// Faster decay when the endpoints share no neighbor.
    FewCommonNeighbors,
}

impl DecayBias {
    pub const fn name(self) -> &'static str {
        match self {
            DecayBias::None => "none",
            DecayBias::LowDegree => "low_degree",
            DecayBias::FewCommonNeighbors => "few_common_neighbors",
        }
    }
}

impl fmt::Display for DecayBias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecayBias {
    type Err = LinkDecayError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "none" => Ok(DecayBias::None),
            "low_degree" => Ok(DecayBias::LowDegree),
            "few_common_neighbors" => Ok(DecayBias::FewCommonNeighbors),
            _ => Err(LinkDecayError::InvalidConfig(format!(
                "unknown decay bias {s:?} (expected none, low_degree, few_common_neighbors)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub n_nodes: usize,
    pub n_add_events: usize,
    pub attach_exponent: f64,
    /// In ticks.
    pub decay_half_life: f64,
    pub decay_bias: DecayBias,
    /// Target share of delete events among all events, without bias.
    pub deletion_share: f64,
    pub hazard_multiplier: f64,
    /// Chance that an add closes a triangle instead of attaching
    /// preferentially.
    pub closure_probability: f64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            n_nodes: 5000,
            n_add_events: 50_000,
            attach_exponent: 1.0,
            decay_half_life: 23.0,
            decay_bias: DecayBias::None,
            deletion_share: 0.27,
            hazard_multiplier: 4.0,
            closure_probability: 0.0,
            seed: 0,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| LinkDecayError::InvalidConfig(format!("bad value {value:?} for {key}")))
}

impl GenConfig {
    pub const KEYS: [&'static str; 9] = [
        "n-nodes",
        "n-add-events",
        "attach-exponent",
        "decay-half-life",
        "decay-bias",
        "deletion-share",
        "hazard-multiplier",
        "closure-probability",
        "seed",
    ];

    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Sets a field by its key; underscores and dashes are interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.replace('_', "-").as_str() {
            "n-nodes" => self.n_nodes = parse(key, value)?,
            "n-add-events" => self.n_add_events = parse(key, value)?,
            "attach-exponent" => self.attach_exponent = parse(key, value)?,
            "decay-half-life" => self.decay_half_life = parse(key, value)?,
            "decay-bias" => self.decay_bias = value.trim().parse()?,
            "deletion-share" => self.deletion_share = parse(key, value)?,
            "hazard-multiplier" => self.hazard_multiplier = parse(key, value)?,
            "closure-probability" => self.closure_probability = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            _ => {
                return Err(LinkDecayError::InvalidConfig(format!(
                    "unknown generator key {key:?}"
                )))
            }
        }
        Ok(())
    }

    /// `(key, value)` for every field, in [`Self::KEYS`] order.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let values = [
            self.n_nodes.to_string(),
            self.n_add_events.to_string(),
            self.attach_exponent.to_string(),
            self.decay_half_life.to_string(),
            self.decay_bias.to_string(),
            self.deletion_share.to_string(),
            self.hazard_multiplier.to_string(),
            self.closure_probability.to_string(),
            self.seed.to_string(),
        ];
        Self::KEYS.into_iter().zip(values).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(LinkDecayError::InvalidConfig(msg));
        if self.n_nodes < 2 {
            return bad(format!("n_nodes must be at least 2, got {}", self.n_nodes));
        }
        if self.n_nodes > NodeId::MAX as usize {
            return bad(format!("n_nodes {} exceeds the id range", self.n_nodes));
        }
        if self.n_add_events == 0 {
            return bad("n_add_events must be positive".into());
        }
        let capacity = self.n_nodes as u128 * (self.n_nodes as u128 - 1);
        if self.n_add_events as u128 > capacity {
            return bad(format!(
                "{} adds exceed the {capacity} possible directed edges on {} nodes",
                self.n_add_events, self.n_nodes
            ));
        }
        if !(self.decay_half_life > 0.0 && self.decay_half_life.is_finite()) {
            return bad(format!(
                "decay_half_life must be positive, got {}",
                self.decay_half_life
            ));
        }
        if !(self.deletion_share > 0.0 && self.deletion_share < 0.5) {
            return bad(format!(
                "deletion_share must lie in (0, 0.5), got {}",
                self.deletion_share
            ));
        }
        if !(self.attach_exponent >= 0.0 && self.attach_exponent.is_finite()) {
            return bad(format!(
                "attach_exponent must be non-negative, got {}",
                self.attach_exponent
            ));
        }
        if !(self.hazard_multiplier > 0.0 && self.hazard_multiplier.is_finite()) {
            return bad(format!(
                "hazard_multiplier must be positive, got {}",
                self.hazard_multiplier
            ));
        }
        if !(0.0..=1.0).contains(&self.closure_probability) {
            return bad(format!(
                "closure_probability must lie in [0, 1], got {}",
                self.closure_probability
            ));
        }
        Ok(())
    }

    /// Base deletion rate per tick.
    pub fn decay_rate(&self) -> f64 {
        std::f64::consts::LN_2 / self.decay_half_life
    }

    /// Length of the add window in ticks.
    pub fn horizon(&self) -> f64 {
        horizon_factor(self.deletion_share) / self.decay_rate()
    }
}

/// Solves `(1 − e^{−x}) / x = 1 − p` with `p = share / (1 − share)`.
fn horizon_factor(share: f64) -> f64 {
    let target = 1.0 - share / (1.0 - share);
    let kept = |x: f64| -(-x).exp_m1() / x;
    let (mut lo, mut hi) = (1e-12, 1.0);
    while kept(hi) > target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kept(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Prefix sums over node weights for sampling proportional to weight.
struct Fenwick {
    tree: Vec<f64>,
    weights: Vec<f64>,
    updates: usize,
}

impl Fenwick {
    fn new(weights: Vec<f64>) -> Self {
        let mut f = Self {
            tree: vec![0.0; weights.len() + 1],
            weights,
            updates: 0,
        };
        f.rebuild();
        f
    }

    fn rebuild(&mut self) {
        self.tree[0] = 0.0;
        self.tree[1..].copy_from_slice(&self.weights);
        for i in 1..self.tree.len() {
            let parent = i + (i & i.wrapping_neg());
            if parent < self.tree.len() {
                self.tree[parent] += self.tree[i];
            }
        }
        self.updates = 0;
    }

    fn set(&mut self, k: usize, w: f64) {
        let delta = w - self.weights[k];
        self.weights[k] = w;
        let mut i = k + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
        self.updates += 1;
        if self.updates >= 1 << 16 {
            self.rebuild();
        }
    }

    fn total(&self) -> f64 {
        let mut i = self.weights.len();
        let mut s = 0.0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Smallest `k` whose prefix sum through `k` exceeds `u`.
    fn find(&self, mut u: f64) -> usize {
        let n = self.weights.len();
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= u {
                pos = next;
                u -= self.tree[next];
            }
            step >>= 1;
        }
        pos.min(n - 1)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let u = rng.random::<f64>() * self.total();
        self.find(u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Pending {
    time: f64,
    edge: Edge,
    version: u64,
}

impl Eq for Pending {}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time
            .total_cmp(&other.time)
            .then_with(|| self.edge.cmp(&other.edge))
            .then_with(|| self.version.cmp(&other.version))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Live {
    version: u64,
    biased: bool,
}

struct Sim {
    cfg: GenConfig,
    rng: ChaCha8Rng,
    base: Exp<f64>,
    fast: Exp<f64>,
    out: Vec<Vec<NodeId>>,
    inn: Vec<Vec<NodeId>>,
    /// Live edges in a stable order, for deterministic sweeps.
    order: Vec<Edge>,
    live: HashMap<Edge, (usize, Live)>,
    attach: Fenwick,
    heap: BinaryHeap<Reverse<Pending>>,
    next_version: u64,
    median_product: u64,
    events: Vec<(f64, EdgeEvent)>,
}

impl Sim {
    fn new(cfg: GenConfig) -> Self {
        let rate = cfg.decay_rate();
        let n = cfg.n_nodes;
        Self {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            base: Exp::new(rate).expect("positive rate"),
            fast: Exp::new(rate * cfg.hazard_multiplier).expect("positive rate"),
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            order: Vec::new(),
            live: HashMap::new(),
            attach: Fenwick::new(vec![1.0; n]),
            heap: BinaryHeap::new(),
            next_version: 0,
            median_product: 0,
            events: Vec::with_capacity(cfg.n_add_events * 2),
        }
    }

    fn degree(&self, v: NodeId) -> usize {
        self.out[v as usize].len() + self.inn[v as usize].len()
    }

    fn refresh_weight(&mut self, v: NodeId) {
        let w = (self.degree(v) as f64 + 1.0).powf(self.cfg.attach_exponent);
        self.attach.set(v as usize, w);
    }

    fn has_edge(&self, e: Edge) -> bool {
        self.live.contains_key(&e)
    }

    fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.out[v as usize]
            .iter()
            .chain(&self.inn[v as usize])
            .copied()
    }

    fn common_neighbors(&self, e: Edge) -> usize {
        let (a, b) = if self.degree(e.src) <= self.degree(e.dst) {
            (e.src, e.dst)
        } else {
            (e.dst, e.src)
        };
        let small: HashSet<NodeId> = self.neighbors(a).collect();
        let big: HashSet<NodeId> = self.neighbors(b).filter(|k| small.contains(k)).collect();
        big.len()
    }

    fn product(&self, e: Edge) -> u64 {
        self.degree(e.src) as u64 * self.degree(e.dst) as u64
    }

    fn is_biased(&self, e: Edge) -> bool {
        match self.cfg.decay_bias {
            DecayBias::None => false,
            DecayBias::LowDegree => self.product(e) < self.median_product,
            DecayBias::FewCommonNeighbors => self.common_neighbors(e) == 0,
        }
    }

    fn schedule(&mut self, e: Edge, now: f64, biased: bool) -> u64 {
        let lifetime = if biased {
            self.fast.sample(&mut self.rng)
        } else {
            self.base.sample(&mut self.rng)
        };
        let version = self.next_version;
        self.next_version += 1;
        self.heap.push(Reverse(Pending {
            time: now + lifetime,
            edge: e,
            version,
        }));
        version
    }

    fn pick_pair(&mut self) -> Edge {
        let n = self.cfg.n_nodes as NodeId;
        if self.cfg.closure_probability > 0.0
            && self.rng.random::<f64>() < self.cfg.closure_probability
        {
            if let Some(e) = self.closing_pair() {
                return e;
            }
        }
        for _ in 0..64 {
            let src = self.attach.sample(&mut self.rng) as NodeId;
            let dst = self.attach.sample(&mut self.rng) as NodeId;
            let e = Edge::new(src, dst);
            if src != dst && !self.has_edge(e) {
                return e;
            }
        }
        // dense corner: scan from a random start for any absent pair
        let total = n as u64 * n as u64;
        let start = self.rng.random_range(0..total);
        (0..total)
            .map(|k| (start + k) % total)
            .map(|k| Edge::new((k / n as u64) as NodeId, (k % n as u64) as NodeId))
            .find(|e| e.src != e.dst && !self.has_edge(*e))
            .expect("fewer live edges than capacity")
    }

    /// `src → k → dst` walk over undirected neighborhoods.
    fn closing_pair(&mut self) -> Option<Edge> {
        let src = self.attach.sample(&mut self.rng) as NodeId;
        let first: Vec<NodeId> = self.neighbors(src).collect();
        if first.is_empty() {
            return None;
        }
        let k = first[self.rng.random_range(0..first.len())];
        let second: Vec<NodeId> = self.neighbors(k).collect();
        let dst = second[self.rng.random_range(0..second.len())];
        let e = Edge::new(src, dst);
        (dst != src && !self.has_edge(e)).then_some(e)
    }

    fn add(&mut self, now: f64) {
        let e = self.pick_pair();
        self.out[e.src as usize].push(e.dst);
        self.inn[e.dst as usize].push(e.src);
        self.refresh_weight(e.src);
        self.refresh_weight(e.dst);
        let biased = self.is_biased(e);
        let version = self.schedule(e, now, biased);
        self.live
            .insert(e, (self.order.len(), Live { version, biased }));
        self.order.push(e);
        self.events.push((now, EdgeEvent::add(e.src, e.dst, 0)));
    }

    fn delete(&mut self, p: Pending) {
        match self.live.get(&p.edge) {
            Some((_, live)) if live.version == p.version => {}
            _ => return,
        }
        let e = p.edge;
        let (slot, _) = self.live.remove(&e).expect("checked above");
        self.order.swap_remove(slot);
        if let Some(&moved) = self.order.get(slot) {
            self.live.get_mut(&moved).expect("live").0 = slot;
        }
        remove_value(&mut self.out[e.src as usize], e.dst);
        remove_value(&mut self.inn[e.dst as usize], e.src);
        self.refresh_weight(e.src);
        self.refresh_weight(e.dst);
        self.events
            .push((p.time, EdgeEvent::delete(e.src, e.dst, 0)));
    }

    fn reclassify(&mut self, now: f64) {
        if self.cfg.decay_bias == DecayBias::LowDegree {
            let mut products: Vec<u64> = self.order.iter().map(|&e| self.product(e)).collect();
            if products.is_empty() {
                return;
            }
            let mid = products.len() / 2;
            self.median_product = *products.select_nth_unstable(mid).1;
        }
        for k in 0..self.order.len() {
            let e = self.order[k];
            let biased = self.is_biased(e);
            if self.live[&e].1.biased != biased {
                let version = self.schedule(e, now, biased);
                let live = &mut self.live.get_mut(&e).expect("live").1;
                live.version = version;
                live.biased = biased;
            }
        }
    }

    fn run(mut self) -> Vec<(f64, EdgeEvent)> {
        let horizon = self.cfg.horizon();
        let adds = self.cfg.n_add_events;
        let spacing = horizon / adds as f64;
        let mut next_add = 0usize;
        let mut next_tick = 1.0f64;
        loop {
            let add_time = (next_add < adds).then_some(next_add as f64 * spacing);
            let del_time = self.heap.peek().map(|p| p.0.time).filter(|&t| t < horizon);
            let tick = (self.cfg.decay_bias != DecayBias::None && next_tick < horizon)
                .then_some(next_tick);
            let next = [add_time, del_time, tick]
                .into_iter()
                .flatten()
                .min_by(f64::total_cmp);
            let Some(now) = next else { break };
            if Some(now) == del_time {
                let Reverse(p) = self.heap.pop().expect("peeked");
                self.delete(p);
            } else if Some(now) == add_time {
                self.add(now);
                next_add += 1;
            } else {
                self.reclassify(now);
                next_tick += 1.0;
            }
        }
        self.events
    }
}

fn remove_value(list: &mut Vec<NodeId>, v: NodeId) {
    let at = list
        .iter()
        .position(|&x| x == v)
        .expect("adjacency in sync");
    list.swap_remove(at);
}

/// Runs the generator. Event times are rounded to whole ticks.
pub fn generate(cfg: &GenConfig) -> Result<TemporalEdgeList> {
    cfg.validate()?;
    let events = Sim::new(*cfg).run().into_iter().map(|(t, mut e)| {
        e.time = t.round() as Timestamp;
        e
    });
    let (tel, report) =
        TemporalEdgeList::from_events(cfg.n_nodes, events, &IngestOptions::default())?;
    debug_assert!(report.is_clean());
    Ok(tel)
}

/// Directed G(n, p): each ordered pair `i ≠ j` is an edge independently with
/// probability `density`.
pub fn random_digraph(n: usize, density: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&density) {
        return Err(LinkDecayError::InvalidConfig(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n as NodeId {
        for j in 0..n as NodeId {
            if i != j && rng.random::<f64>() < density {
                edges.push(Edge::new(i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}
