//! Independent reference: static BFS distances and a full-state verdict.
//!
//! Nothing here shares code with the update engine. Tree shape is judged
//! structurally because a graph generally admits several valid BFS trees.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{DynamicDigraph, VertexId};
use crate::state::{
    check_bfs_ordering, check_bfs_ordering_linear, check_child_order, check_contiguous_levels,
    check_depth_parent_rule, check_stable_level_order, check_tree_validity, BfsState,
};

/// Above this many numbered vertices the ordering definition is checked
/// with the linear-time characterisation instead of the quadratic one.
pub const DIRECT_ORDERING_LIMIT: usize = 256;

/// Unit-weight distances from `root`; unreachable vertices are absent.
pub fn static_distances(graph: &DynamicDigraph, root: VertexId) -> BTreeMap<VertexId, u32> {
    let mut dist = vec![u32::MAX; graph.vertex_count()];
    let mut queue = VecDeque::new();
    if graph.contains_vertex(root) {
        dist[root.index()] = 0;
        queue.push_back(root);
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[u.index()] + 1;
        for &w in graph.succ(u) {
            if dist[w.index()] == u32::MAX {
                dist[w.index()] = d;
                queue.push_back(w);
            }
        }
    }
    dist.into_iter()
        .enumerate()
        .filter(|&(_, d)| d != u32::MAX)
        .map(|(v, d)| (VertexId(v as u32), d))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub levels_match: bool,
    pub reachable_match: bool,
    pub tree_valid: bool,
    pub ordering_valid: bool,
    pub boundaries_valid: bool,
    pub diffs: Vec<String>,
}

impl OracleVerdict {
    pub fn is_ok(&self) -> bool {
        self.levels_match
            && self.reachable_match
            && self.tree_valid
            && self.ordering_valid
            && self.boundaries_valid
    }
}

/// Compares `state` against a from-scratch BFS of `graph` and runs every
/// structural checker.
pub fn verify(state: &BfsState, graph: &DynamicDigraph, root: VertexId) -> OracleVerdict {
    let dist = static_distances(graph, root);
    let mut diffs = Vec::new();

    let mut reachable_match = state.root() == root;
    if !reachable_match {
        diffs.push(format!(
            "state rooted at {} instead of {root}",
            state.root()
        ));
    }
    let mut levels_match = true;
    for (&v, &d) in &dist {
        match state.level(v) {
            Some(l) if state.is_discovered(v) && l == d => {}
            Some(l) if state.is_discovered(v) => {
                levels_match = false;
                diffs.push(format!("vertex {v}: level {l}, distance {d}"));
            }
            _ => {
                reachable_match = false;
                diffs.push(format!(
                    "vertex {v} reachable at distance {d} but not discovered"
                ));
            }
        }
    }
    for v in state.tree.discovered() {
        if !dist.contains_key(&v) {
            reachable_match = false;
            diffs.push(format!("vertex {v} discovered but unreachable"));
        }
    }

    let mut tree_violations = check_depth_parent_rule(state);
    tree_violations.extend(check_tree_validity(state, graph));
    let tree_valid = tree_violations.is_empty();

    let mut ordering_violations = check_stable_level_order(state);
    ordering_violations.extend(check_child_order(state));
    if state.order().len() <= DIRECT_ORDERING_LIMIT {
        ordering_violations.extend(check_bfs_ordering(state, graph));
    } else {
        ordering_violations.extend(check_bfs_ordering_linear(state, graph));
    }
    let ordering_valid = ordering_violations.is_empty();

    let boundary_violations = check_contiguous_levels(state);
    let boundaries_valid = boundary_violations.is_empty();

    diffs.extend(
        tree_violations
            .iter()
            .chain(&ordering_violations)
            .chain(&boundary_violations)
            .map(ToString::to_string),
    );
    OracleVerdict {
        levels_match,
        reachable_match,
        tree_valid,
        ordering_valid,
        boundaries_valid,
        diffs,
    }
}
