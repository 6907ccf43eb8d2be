//! The maintained BFS objects: spanning tree, depths, global numbering and
//! level boundaries, plus read-only invariant checkers.

mod check;
mod numbering;
mod tree;

use std::fmt::Write as _;

pub use check::{
    check_bfs_ordering, check_bfs_ordering_linear, check_child_order, check_contiguous_levels,
    check_depth_parent_rule, check_stable_level_order, check_tree_validity, Violation,
};
pub use numbering::BfsNumbering;
pub use tree::BfsTree;

use crate::graph::VertexId;

/// Tree plus numbering for one fixed root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsState {
    pub tree: BfsTree,
    pub numbering: BfsNumbering,
}

impl BfsState {
    /// State containing only the root, at index 1 on level 0.
    pub fn root_only(root: VertexId, n: usize) -> Self {
        let mut numbering = BfsNumbering::with_capacity(n.max(root.index() + 1));
        numbering.assign(root, 1).expect("fresh numbering");
        numbering.push_level_end(1);
        BfsState {
            tree: BfsTree::new(root, n),
            numbering,
        }
    }

    pub fn root(&self) -> VertexId {
        self.tree.root()
    }

    pub fn level(&self, v: VertexId) -> Option<u32> {
        self.tree.level(v)
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.tree.parent(v)
    }

    pub fn index_of(&self, v: VertexId) -> Option<u32> {
        self.numbering.index_of(v)
    }

    pub fn is_discovered(&self, v: VertexId) -> bool {
        self.tree.is_discovered(v)
    }

    /// Vertices in BFS order.
    pub fn order(&self) -> &[VertexId] {
        self.numbering.order()
    }

    pub(crate) fn ensure_vertices(&mut self, n: usize) {
        self.tree.ensure_vertices(n);
        self.numbering.ensure_vertices(n);
    }

    /// Plain-text dump: one `v level parent bfs_int` line per vertex in BFS
    /// order (`-` for a missing parent), then `levels: e0 e1 ...`.
    pub fn snapshot(&self) -> String {
        let mut out = String::new();
        for &v in self.order() {
            let level = self
                .level(v)
                .map_or_else(|| "-".to_string(), |l| l.to_string());
            let parent = self
                .parent(v)
                .map_or_else(|| "-".to_string(), |p| p.to_string());
            let idx = self.index_of(v).unwrap_or(0);
            let _ = writeln!(out, "{v} {level} {parent} {idx}");
        }
        out.push_str("levels:");
        for e in self.numbering.level_ends() {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
        out
    }
}
