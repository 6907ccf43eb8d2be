//! Edge updates with BFS-state repair.
//!
//! Every update first mutates the raw graph and then runs the matching
//! layered sweep, so the graph and the state never disagree between calls.

mod decremental;
mod incremental;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{BfsError, Result};
use crate::graph::{DynamicDigraph, VertexId};
use crate::state::BfsState;

/// Work performed by one update.
///
/// `vertices_touched` counts distinct vertices that were scanned by a sweep,
/// emitted, releveled or reparented. `edges_examined` counts graph adjacency
/// entries read; child blocks skipped by the fast path are tallied in
/// `fast_path_skips` instead.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCounters {
    pub vertices_touched: u64,
    pub edges_examined: u64,
    pub emits: u64,
    pub fast_path_skips: u64,
}

impl std::ops::AddAssign for WorkCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.vertices_touched += rhs.vertices_touched;
        self.edges_examined += rhs.edges_examined;
        self.emits += rhs.emits;
        self.fast_path_skips += rhs.fast_path_skips;
    }
}

/// Result of a single edge update.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpdateOutcome {
    /// The raw graph gained or lost the edge.
    pub edge_applied: bool,
    /// The BFS state was repaired. `false` means it is bit-identical to the
    /// state before the call.
    pub changed: bool,
    pub newly_discovered: Vec<VertexId>,
    pub removed: Vec<VertexId>,
    pub counters: WorkCounters,
}

pub fn counters_of(outcome: &UpdateOutcome) -> WorkCounters {
    outcome.counters
}

#[derive(Debug, Default)]
pub(crate) struct WorkTally {
    touched: HashSet<VertexId>,
    counters: WorkCounters,
}

impl WorkTally {
    fn touch(&mut self, v: VertexId) {
        if self.touched.insert(v) {
            self.counters.vertices_touched += 1;
        }
    }

    fn examine(&mut self, edges: usize) {
        self.counters.edges_examined += edges as u64;
    }

    fn emit(&mut self, v: VertexId) {
        self.touch(v);
        self.counters.emits += 1;
    }

    fn fast_path(&mut self) {
        self.counters.fast_path_skips += 1;
    }

    fn finish(self) -> WorkCounters {
        self.counters
    }
}

/// Static BFS from `root`: FIFO queue, successors scanned in adjacency
/// insertion order, numbering in dequeue order.
pub fn build_initial(graph: &DynamicDigraph, root: VertexId) -> Result<BfsState> {
    graph.check_vertex(root)?;
    let mut state = BfsState::root_only(root, graph.vertex_count());
    let BfsState { tree, numbering } = &mut state;
    let mut head = 1u32;
    while head as usize <= numbering.len() {
        let u = numbering.vertex_at(head);
        let next_level = tree.level(u).expect("queued vertices have levels") + 1;
        for &w in graph.succ(u) {
            if tree.is_discovered(w) {
                continue;
            }
            tree.add_node(w)?;
            tree.add_edge(u, w)?;
            tree.set_level(w, next_level)?;
            numbering.assign(w, numbering.len() as u32 + 1)?;
        }
        head += 1;
    }
    let order = numbering.order().to_vec();
    numbering.truncate_levels(0);
    for (slot, w) in order.windows(2).enumerate() {
        if tree.level(w[0]) != tree.level(w[1]) {
            numbering.push_level_end(slot as u32 + 1);
        }
    }
    numbering.push_level_end(order.len() as u32);
    Ok(state)
}

/// Inserts `(x, y)` into the graph and repairs the BFS state.
pub fn insert_edge(
    state: &mut BfsState,
    graph: &mut DynamicDigraph,
    x: VertexId,
    y: VertexId,
) -> Result<UpdateOutcome> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    state.ensure_vertices(graph.vertex_count());
    let mut outcome = UpdateOutcome {
        edge_applied: graph.raw_insert_edge(x, y)?,
        ..UpdateOutcome::default()
    };
    if !outcome.edge_applied {
        return Ok(outcome);
    }
    let mut tally = WorkTally::default();
    if let Some(discovered) = incremental::repair(state, graph, x, y, &mut tally)? {
        outcome.changed = true;
        outcome.newly_discovered = discovered;
    }
    outcome.counters = tally.finish();
    Ok(outcome)
}

/// Deletes `(x, y)` from the graph and repairs the BFS state when it was a
/// tree edge.
pub fn delete_edge(
    state: &mut BfsState,
    graph: &mut DynamicDigraph,
    x: VertexId,
    y: VertexId,
) -> Result<UpdateOutcome> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    state.ensure_vertices(graph.vertex_count());
    let mut outcome = UpdateOutcome {
        edge_applied: graph.raw_delete_edge(x, y)?,
        ..UpdateOutcome::default()
    };
    if !outcome.edge_applied {
        return Ok(outcome);
    }
    let mut tally = WorkTally::default();
    if let Some(removed) = decremental::repair(state, graph, x, y, &mut tally)? {
        outcome.changed = true;
        outcome.removed = removed;
    }
    outcome.counters = tally.finish();
    Ok(outcome)
}

/// A graph and its maintained BFS state, updated together.
#[derive(Debug, Clone)]
pub struct DynamicBfs {
    graph: DynamicDigraph,
    state: BfsState,
}

impl DynamicBfs {
    pub fn new(graph: DynamicDigraph, root: VertexId) -> Result<Self> {
        let state = build_initial(&graph, root)?;
        Ok(DynamicBfs { graph, state })
    }

    pub fn graph(&self) -> &DynamicDigraph {
        &self.graph
    }

    pub fn state(&self) -> &BfsState {
        &self.state
    }

    /// Mutable access for fault injection; edits bypass the engine.
    pub fn state_mut(&mut self) -> &mut BfsState {
        &mut self.state
    }

    pub fn root(&self) -> VertexId {
        self.state.root()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = self.graph.add_vertex();
        self.state.ensure_vertices(self.graph.vertex_count());
        v
    }

    pub fn insert_edge(&mut self, x: VertexId, y: VertexId) -> Result<UpdateOutcome> {
        insert_edge(&mut self.state, &mut self.graph, x, y)
    }

    pub fn delete_edge(&mut self, x: VertexId, y: VertexId) -> Result<UpdateOutcome> {
        delete_edge(&mut self.state, &mut self.graph, x, y)
    }

    /// Replaces the state with a from-scratch BFS of the current graph.
    pub fn rebuild(&mut self) -> Result<()> {
        self.state = build_initial(&self.graph, self.root())?;
        Ok(())
    }
}

fn internal(msg: impl Into<String>) -> BfsError {
    BfsError::Internal(msg.into())
}
