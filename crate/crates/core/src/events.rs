//! Timestamped edge events and their replay into graph snapshots.
//!
//! Event file format, one event per line:
//!
//! ```text
//! src<TAB>dst<TAB>sign<TAB>time
//! ```
//!
//! `sign` is `+1` (add) or `-1` (delete); `src`/`dst` are arbitrary tokens;
//! `time` is a non-negative integer. Any run of whitespace separates fields,
//! so KONECT-style space-separated files load as well. Lines starting with
//! `#` or `%` are comments.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::error::{LinkDecayError, Result};
use crate::graph::{Edge, Graph, NodeId};

pub type Timestamp = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeOp {
    Add,
    Delete,
}

impl EdgeOp {
    pub const fn sign(self) -> &'static str {
        match self {
            EdgeOp::Add => "+1",
            EdgeOp::Delete => "-1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeEvent {
    pub src: NodeId,
    pub dst: NodeId,
    pub op: EdgeOp,
    pub time: Timestamp,
}

impl EdgeEvent {
    pub const fn add(src: NodeId, dst: NodeId, time: Timestamp) -> Self {
        Self {
            src,
            dst,
            op: EdgeOp::Add,
            time,
        }
    }

    pub const fn delete(src: NodeId, dst: NodeId, time: Timestamp) -> Self {
        Self {
            src,
            dst,
            op: EdgeOp::Delete,
            time,
        }
    }

    pub const fn edge(&self) -> Edge {
        Edge::new(self.src, self.dst)
    }
}

/// What to do with a record whose endpoints coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelfLoopPolicy {
    #[default]
    Skip,
    Fail,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IngestOptions {
    pub self_loops: SelfLoopPolicy,
    /// Fail on a delete of an edge that is not present instead of ignoring it.
    pub strict_deletes: bool,
}

/// Records dropped during ingestion, by 1-based source line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub skipped_self_loops: Vec<usize>,
    pub ignored_deletes: Vec<usize>,
    /// Adds of an edge that was already present.
    pub redundant_adds: Vec<usize>,
}

impl IngestReport {
    pub fn is_clean(&self) -> bool {
        self.skipped_self_loops.is_empty()
            && self.ignored_deletes.is_empty()
            && self.redundant_adds.is_empty()
    }
}

/// Bidirectional map between external node tokens and compact ids `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl IdMap {
    /// Ids named by their decimal value.
    pub fn numeric(n: usize) -> Self {
        let mut map = IdMap::default();
        for v in 0..n {
            map.intern(&v.to_string());
        }
        map
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn intern(&mut self, token: &str) -> NodeId {
        if let Some(&id) = self.index.get(token) {
            return id;
        }
        let id = self.names.len() as NodeId;
        self.names.push(token.to_owned());
        self.index.insert(token.to_owned(), id);
        id
    }

    pub fn id(&self, token: &str) -> Option<NodeId> {
        self.index.get(token).copied()
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id as usize]
    }

    /// Writes `node<TAB>index` lines.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (i, name) in self.names.iter().enumerate() {
            writeln!(w, "{name}\t{i}")?;
        }
        Ok(())
    }
}

/// Time-ordered, normalized event stream over a fixed node set.
///
/// After construction, every delete removes an edge that is present and
/// every add inserts an edge that is absent, so per pair the events strictly
/// alternate starting with an add.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalEdgeList {
    events: Vec<EdgeEvent>,
    ids: IdMap,
}

struct Pending {
    event: EdgeEvent,
    line: usize,
}

impl TemporalEdgeList {
    /// Builds a stream over nodes `0..n` named by their decimal ids.
    pub fn from_events(
        n: usize,
        events: impl IntoIterator<Item = EdgeEvent>,
        options: &IngestOptions,
    ) -> Result<(Self, IngestReport)> {
        let mut pending = Vec::new();
        let mut report = IngestReport::default();
        for (k, event) in events.into_iter().enumerate() {
            let line = k + 1;
            for v in [event.src, event.dst] {
                if v as usize >= n {
                    return Err(LinkDecayError::UnknownNode { node: v, n });
                }
            }
            if event.src == event.dst {
                match options.self_loops {
                    SelfLoopPolicy::Skip => {
                        report.skipped_self_loops.push(line);
                        continue;
                    }
                    SelfLoopPolicy::Fail => {
                        return Err(LinkDecayError::SelfLoop {
                            line,
                            node: event.src.to_string(),
                        })
                    }
                }
            }
            pending.push(Pending { event, line });
        }
        Self::normalize(pending, IdMap::numeric(n), options, report)
    }

    fn normalize(
        mut pending: Vec<Pending>,
        ids: IdMap,
        options: &IngestOptions,
        mut report: IngestReport,
    ) -> Result<(Self, IngestReport)> {
        // Stable: equal timestamps keep input order.
        pending.sort_by_key(|p| p.event.time);
        let mut live: HashSet<Edge> = HashSet::new();
        let mut events = Vec::with_capacity(pending.len());
        for Pending { event, line } in pending {
            match event.op {
                EdgeOp::Add => {
                    if !live.insert(event.edge()) {
                        report.redundant_adds.push(line);
                        continue;
                    }
                }
                EdgeOp::Delete => {
                    if !live.remove(&event.edge()) {
                        if options.strict_deletes {
                            return Err(LinkDecayError::AbsentDelete {
                                line,
                                src: ids.name(event.src).to_owned(),
                                dst: ids.name(event.dst).to_owned(),
                            });
                        }
                        report.ignored_deletes.push(line);
                        continue;
                    }
                }
            }
            events.push(event);
        }
        Ok((Self { events, ids }, report))
    }

    pub fn events(&self) -> &[EdgeEvent] {
        &self.events
    }

    pub fn ids(&self) -> &IdMap {
        &self.ids
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn first_time(&self) -> Option<Timestamp> {
        self.events.first().map(|e| e.time)
    }

    pub fn last_time(&self) -> Option<Timestamp> {
        self.events.last().map(|e| e.time)
    }

    /// Edges present after replaying every event with `time <= t`.
    pub fn live_edges_at(&self, t: Timestamp) -> HashSet<Edge> {
        let mut live = HashSet::new();
        for event in self.events.iter().take_while(|e| e.time <= t) {
            match event.op {
                EdgeOp::Add => live.insert(event.edge()),
                EdgeOp::Delete => live.remove(&event.edge()),
            };
        }
        live
    }

    /// The network at time `t`. Nodes are the full node set regardless of
    /// whether they have appeared by `t`.
    pub fn snapshot_at(&self, t: Timestamp) -> Graph {
        Graph::from_edges(self.node_count(), self.live_edges_at(t))
            .expect("normalized events only reference known nodes without self-loops")
    }

    /// Writes the stream with compact ids in the event file format.
    pub fn write_events<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for e in &self.events {
            writeln!(w, "{}\t{}\t{}\t{}", e.src, e.dst, e.op.sign(), e.time)?;
        }
        Ok(())
    }

    /// Writes the stream using the original node tokens.
    pub fn write_named_events<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for e in &self.events {
            writeln!(
                w,
                "{}\t{}\t{}\t{}",
                self.ids.name(e.src),
                self.ids.name(e.dst),
                e.op.sign(),
                e.time
            )?;
        }
        Ok(())
    }
}

struct RawRecord {
    src: String,
    dst: String,
    op: EdgeOp,
    time: Timestamp,
    line: usize,
}

fn parse_line(line: &str, line_no: usize) -> Result<Option<RawRecord>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
        return Ok(None);
    }
    let err = |message: String| LinkDecayError::Parse {
        line: line_no,
        message,
    };
    let fields: Vec<&str> = trimmed.split_whitespace().collect();
    let [src, dst, sign, time] = fields[..] else {
        return Err(err(format!(
            "expected 4 fields (src dst sign time), found {}",
            fields.len()
        )));
    };
    let op = match sign {
        "+1" | "1" => EdgeOp::Add,
        "-1" => EdgeOp::Delete,
        other => return Err(err(format!("sign must be +1 or -1, found `{other}`"))),
    };
    if time.starts_with('-') {
        return Err(err(format!("time must be non-negative, found `{time}`")));
    }
    let time = time.parse::<Timestamp>().map_err(|_| {
        err(format!(
            "time must be a non-negative integer, found `{time}`"
        ))
    })?;
    Ok(Some(RawRecord {
        src: src.to_owned(),
        dst: dst.to_owned(),
        op,
        time,
        line: line_no,
    }))
}

/// Parses an event file. Node ids are assigned in order of first appearance
/// in the time-sorted stream, so re-ingesting a file written by
/// [`TemporalEdgeList::write_events`] reproduces the same ids.
pub fn ingest_events<R: BufRead>(
    reader: R,
    options: &IngestOptions,
) -> Result<(TemporalEdgeList, IngestReport)> {
    let mut records = Vec::new();
    let mut report = IngestReport::default();
    for (k, line) in reader.lines().enumerate() {
        let line_no = k + 1;
        let Some(record) = parse_line(&line?, line_no)? else {
            continue;
        };
        if record.src == record.dst {
            match options.self_loops {
                SelfLoopPolicy::Skip => {
                    report.skipped_self_loops.push(line_no);
                    continue;
                }
                SelfLoopPolicy::Fail => {
                    return Err(LinkDecayError::SelfLoop {
                        line: line_no,
                        node: record.src,
                    })
                }
            }
        }
        records.push(record);
    }
    records.sort_by_key(|r| r.time);

    let mut ids = IdMap::default();
    let pending = records
        .into_iter()
        .map(|r| Pending {
            event: EdgeEvent {
                src: ids.intern(&r.src),
                dst: ids.intern(&r.dst),
                op: r.op,
                time: r.time,
            },
            line: r.line,
        })
        .collect();
    TemporalEdgeList::normalize(pending, ids, options, report)
}

pub fn ingest_str(text: &str, options: &IngestOptions) -> Result<(TemporalEdgeList, IngestReport)> {
    ingest_events(text.as_bytes(), options)
}
