//! The `swim-surf` example network: two article triangles
//! `{water, swim, beach}` and `{surf, SEO, PageRank}` joined by the single
//! link `swim – surf`, each link stored in both directions.

use crate::events::{ingest_str, IngestOptions, TemporalEdgeList};
use crate::graph::{Edge, Graph, NodeId};

/// Event file shipped with the crate.
pub const SWIM_SURF_EVENTS: &str = include_str!("../fixtures/swim-surf.tsv");

/// Node ids assigned to the fixture on ingestion.
pub struct SwimSurf;

impl SwimSurf {
    pub const WATER: NodeId = 0;
    pub const SWIM: NodeId = 1;
    pub const BEACH: NodeId = 2;
    pub const SURF: NodeId = 3;
    pub const SEO: NodeId = 4;
    pub const PAGERANK: NodeId = 5;

    /// The seven links, one direction each, in file order.
    pub const LINKS: [Edge; 7] = [
        Edge::new(Self::WATER, Self::SWIM),
        Edge::new(Self::WATER, Self::BEACH),
        Edge::new(Self::SWIM, Self::BEACH),
        Edge::new(Self::SURF, Self::SEO),
        Edge::new(Self::SURF, Self::PAGERANK),
        Edge::new(Self::SEO, Self::PAGERANK),
        Edge::new(Self::SWIM, Self::SURF),
    ];

    pub const BRIDGE: Edge = Edge::new(Self::SWIM, Self::SURF);
}

pub fn swim_surf_events() -> TemporalEdgeList {
    ingest_str(SWIM_SURF_EVENTS, &IngestOptions::default())
        .expect("fixture parses")
        .0
}

pub fn swim_surf() -> Graph {
    let tel = swim_surf_events();
    tel.snapshot_at(tel.last_time().unwrap_or(0))
}
