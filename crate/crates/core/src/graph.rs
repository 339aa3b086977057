//! Immutable directed graph snapshots.
//!
//! Adjacency is stored CSR-style: one flat array of sorted neighbor ids per
//! direction plus an offset array. Three views are kept: out-neighbors,
//! in-neighbors, and their union (the undirected view). Every score in this
//! crate reduces to sorted-slice intersections over these views.

use std::fmt;
use std::str::FromStr;

use crate::error::{LinkDecayError, Result};

pub type NodeId = u32;

/// A directed node pair `src -> dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
}

impl Edge {
    pub const fn new(src: NodeId, dst: NodeId) -> Self {
        Self { src, dst }
    }

    pub const fn reversed(self) -> Self {
        Self {
            src: self.dst,
            dst: self.src,
        }
    }
}

impl From<(NodeId, NodeId)> for Edge {
    fn from((src, dst): (NodeId, NodeId)) -> Self {
        Self { src, dst }
    }
}

/// Which neighbor set of a node to look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
    /// `N_in ∪ N_out`, without multiplicity.
    Both,
}

/// Which degree of a node to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeMode {
    Out,
    In,
    /// `δ_out + δ_in`; a reciprocated pair contributes twice.
    Total,
}

/// How the degrees and neighborhoods of the two endpoints of a pair `(i, j)`
/// are selected in a directed graph.
///
/// | combo | side of `i` | side of `j` |
/// |-------|-------------|-------------|
/// | sym   | both        | both        |
/// | asym  | out         | in          |
/// | in    | in          | in          |
/// | out   | out         | out         |
///
/// The selected degree of an endpoint is always the size of its selected
/// neighbor set, so `sym` uses the undirected degree `|N_in ∪ N_out|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegreeCombination {
    Sym,
    Asym,
    In,
    Out,
}

impl DegreeCombination {
    pub const ALL: [DegreeCombination; 4] = [
        DegreeCombination::Sym,
        DegreeCombination::Asym,
        DegreeCombination::In,
        DegreeCombination::Out,
    ];

    /// Neighbor direction used for the first endpoint `i`.
    pub const fn source_side(self) -> Direction {
        match self {
            DegreeCombination::Sym => Direction::Both,
            DegreeCombination::Asym | DegreeCombination::Out => Direction::Out,
            DegreeCombination::In => Direction::In,
        }
    }

    /// Neighbor direction used for the second endpoint `j`.
    pub const fn target_side(self) -> Direction {
        match self {
            DegreeCombination::Sym => Direction::Both,
            DegreeCombination::Asym | DegreeCombination::In => Direction::In,
            DegreeCombination::Out => Direction::Out,
        }
    }

    /// Degree used to weight an intermediate node `k` (Adamic–Adar).
    /// `asym` has no single direction for `k`, so it falls back to the
    /// undirected view like `sym`.
    pub const fn weight_side(self) -> Direction {
        match self {
            DegreeCombination::Sym | DegreeCombination::Asym => Direction::Both,
            DegreeCombination::In => Direction::In,
            DegreeCombination::Out => Direction::Out,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            DegreeCombination::Sym => "sym",
            DegreeCombination::Asym => "asym",
            DegreeCombination::In => "in",
            DegreeCombination::Out => "out",
        }
    }
}

impl fmt::Display for DegreeCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DegreeCombination {
    type Err = LinkDecayError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sym" => Ok(DegreeCombination::Sym),
            "asym" => Ok(DegreeCombination::Asym),
            "in" => Ok(DegreeCombination::In),
            "out" => Ok(DegreeCombination::Out),
            other => Err(LinkDecayError::InvalidConfig(format!(
                "unknown degree combination `{other}` (expected sym|asym|in|out)"
            ))),
        }
    }
}

/// Sorted neighbor lists in compressed form.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Adjacency {
    /// `lists` must already be sorted and deduplicated per node.
    fn from_lists(lists: &[Vec<NodeId>]) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        offsets.push(0);
        for list in lists {
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Self { offsets, targets }
    }

    #[inline]
    fn row(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// Immutable directed snapshot of a network over a fixed node set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    out_adj: Adjacency,
    in_adj: Adjacency,
    both_adj: Adjacency,
}

impl Graph {
    /// Builds a graph on `n` nodes. Duplicate edges are collapsed; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Edge>,
    {
        let mut out_lists: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut in_lists: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for edge in edges {
            let Edge { src, dst } = edge.into();
            for v in [src, dst] {
                if v as usize >= n {
                    return Err(LinkDecayError::UnknownNode { node: v, n });
                }
            }
            if src == dst {
                return Err(LinkDecayError::SamePair(src));
            }
            out_lists[src as usize].push(dst);
            in_lists[dst as usize].push(src);
        }
        for list in out_lists.iter_mut().chain(in_lists.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        let both_lists: Vec<Vec<NodeId>> = out_lists
            .iter()
            .zip(&in_lists)
            .map(|(o, i)| merge_union(o, i))
            .collect();

        Ok(Self {
            n,
            out_adj: Adjacency::from_lists(&out_lists),
            in_adj: Adjacency::from_lists(&in_lists),
            both_adj: Adjacency::from_lists(&both_lists),
        })
    }

    /// Graph with no edges on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, std::iter::empty::<Edge>()).expect("empty edge set is valid")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.targets.len()
    }

    /// All edges in `(src, dst)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n as NodeId).flat_map(move |src| {
            self.out_adj
                .row(src)
                .iter()
                .map(move |&dst| Edge::new(src, dst))
        })
    }

    pub fn has_edge(&self, src: NodeId, dst: NodeId) -> bool {
        (src as usize) < self.n && self.out_adj.row(src).binary_search(&dst).is_ok()
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        (v as usize) < self.n
    }

    fn check_node(&self, v: NodeId) -> Result<()> {
        if self.contains_node(v) {
            Ok(())
        } else {
            Err(LinkDecayError::UnknownNode { node: v, n: self.n })
        }
    }

    pub(crate) fn check_pair(&self, i: NodeId, j: NodeId) -> Result<()> {
        self.check_node(i)?;
        self.check_node(j)?;
        if i == j {
            return Err(LinkDecayError::SamePair(i));
        }
        Ok(())
    }

    pub fn degree(&self, v: NodeId, mode: DegreeMode) -> Result<usize> {
        self.check_node(v)?;
        Ok(match mode {
            DegreeMode::Out => self.out_adj.row(v).len(),
            DegreeMode::In => self.in_adj.row(v).len(),
            DegreeMode::Total => self.out_adj.row(v).len() + self.in_adj.row(v).len(),
        })
    }

    pub fn neighbors(&self, v: NodeId, direction: Direction) -> Result<&[NodeId]> {
        self.check_node(v)?;
        Ok(self.view(v, direction))
    }

    /// Unchecked neighbor lookup for callers that validated `v`.
    #[inline]
    pub(crate) fn view(&self, v: NodeId, direction: Direction) -> &[NodeId] {
        match direction {
            Direction::Out => self.out_adj.row(v),
            Direction::In => self.in_adj.row(v),
            Direction::Both => self.both_adj.row(v),
        }
    }

    /// The two neighbor sets a combo selects for the pair `(i, j)`.
    #[inline]
    pub(crate) fn pair_views(
        &self,
        i: NodeId,
        j: NodeId,
        combo: DegreeCombination,
    ) -> (&[NodeId], &[NodeId]) {
        (
            self.view(i, combo.source_side()),
            self.view(j, combo.target_side()),
        )
    }

    /// Degrees `(δ₁(i), δ₂(j))` selected by `combo`.
    pub fn combo_degrees(
        &self,
        i: NodeId,
        j: NodeId,
        combo: DegreeCombination,
    ) -> Result<(usize, usize)> {
        self.check_node(i)?;
        self.check_node(j)?;
        let (a, b) = self.pair_views(i, j, combo);
        Ok((a.len(), b.len()))
    }

    /// `|X ∩ Y|` for the neighbor sets selected by `combo`. For `asym` this is
    /// the number of directed two-paths `i -> k -> j`.
    pub fn common_neighbor_count(
        &self,
        i: NodeId,
        j: NodeId,
        combo: DegreeCombination,
    ) -> Result<usize> {
        self.check_pair(i, j)?;
        let (a, b) = self.pair_views(i, j, combo);
        Ok(intersection_count(a, b))
    }

    /// `|X ∪ Y|` for the neighbor sets selected by `combo`.
    pub fn union_neighborhood_size(
        &self,
        i: NodeId,
        j: NodeId,
        combo: DegreeCombination,
    ) -> Result<usize> {
        self.check_pair(i, j)?;
        let (a, b) = self.pair_views(i, j, combo);
        Ok(a.len() + b.len() - intersection_count(a, b))
    }

    /// Undirected view: `(i, j)` and `(j, i)` are both present whenever either is.
    pub fn symmetrized(&self) -> Graph {
        let lists: Vec<Vec<NodeId>> = (0..self.n as NodeId)
            .map(|v| self.both_adj.row(v).to_vec())
            .collect();
        let adj = Adjacency::from_lists(&lists);
        Graph {
            n: self.n,
            out_adj: adj.clone(),
            in_adj: adj.clone(),
            both_adj: adj,
        }
    }

    /// Same graph with node `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[NodeId]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(LinkDecayError::InvalidConfig(format!(
                "permutation has {} entries for {} nodes",
                perm.len(),
                self.n
            )));
        }
        Graph::from_edges(
            self.n,
            self.edges()
                .map(|e| Edge::new(perm[e.src as usize], perm[e.dst as usize])),
        )
    }
}

/// Number of shared elements of two sorted, deduplicated slices.
pub fn intersection_count(a: &[NodeId], b: &[NodeId]) -> usize {
    let mut count = 0;
    for_each_common(a, b, |_| count += 1);
    count
}

/// Calls `f` on every shared element of two sorted slices, in ascending order.
pub fn for_each_common(a: &[NodeId], b: &[NodeId], mut f: impl FnMut(NodeId)) {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.is_empty() {
        return;
    }
    // Galloping pays off once one side is much longer than the other.
    if large.len() / small.len() >= 16 {
        let mut rest = large;
        for &x in small {
            match rest.binary_search(&x) {
                Ok(pos) => {
                    f(x);
                    rest = &rest[pos + 1..];
                }
                Err(pos) => rest = &rest[pos..],
            }
        }
        return;
    }
    let (mut p, mut q) = (0, 0);
    while p < small.len() && q < large.len() {
        match small[p].cmp(&large[q]) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                f(small[p]);
                p += 1;
                q += 1;
            }
        }
    }
}

fn merge_union(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut p, mut q) = (0, 0);
    while p < a.len() && q < b.len() {
        match a[p].cmp(&b[q]) {
            std::cmp::Ordering::Less => {
                out.push(a[p]);
                p += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[q]);
                q += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[p]);
                p += 1;
                q += 1;
            }
        }
    }
    out.extend_from_slice(&a[p..]);
    out.extend_from_slice(&b[q..]);
    out
}
