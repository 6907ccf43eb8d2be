//! Invariant checkers. Each returns the full list of violations it finds
//! instead of a boolean so that a failing property test shows what broke.

use thiserror::Error;

use super::BfsState;
use crate::graph::{DynamicDigraph, VertexId};

/// Cap on the number of triples reported by the ordering checks.
const MAX_ORDERING_REPORTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {vertex}: level {level:?} but parent level {parent_level:?}")]
    DepthParent {
        vertex: VertexId,
        level: Option<u32>,
        parent_level: Option<u32>,
    },
    #[error("vertex {0} is discovered but has no parent")]
    Detached(VertexId),
    #[error("root {root} must have level 0 and no parent")]
    Root { root: VertexId },
    #[error("index {index} holds {vertex} whose own index is {found:?}")]
    IndexMismatch {
        index: u32,
        vertex: VertexId,
        found: Option<u32>,
    },
    #[error("vertex {0} is discovered but unnumbered")]
    Unnumbered(VertexId),
    #[error("{numbered} numbered slots for {discovered} discovered vertices")]
    CountMismatch { discovered: usize, numbered: usize },
    #[error("level boundary problem at level {level}: {detail}")]
    Boundary { level: usize, detail: String },
    #[error("vertex {vertex} at index {index} has level {level:?}, outside that block")]
    OutsideBlock {
        vertex: VertexId,
        index: u32,
        level: Option<u32>,
    },
    #[error("level {level}: {later} follows {earlier} but its parent has a smaller index")]
    LevelOrder {
        level: u32,
        earlier: VertexId,
        later: VertexId,
    },
    #[error("children of {parent} are not sorted by index at {child}")]
    ChildOrder { parent: VertexId, child: VertexId },
    #[error("ordering broken by indices i={i}, j={j}, k={k}")]
    Ordering { i: u32, j: u32, k: u32 },
    #[error(
        "ordering broken at index {k}: first predecessor {first_pred} precedes an earlier vertex's"
    )]
    FirstPredecessor { k: u32, first_pred: u32 },
    #[error("tree edge ({parent},{child}) is not a graph edge")]
    TreeEdgeMissing { parent: VertexId, child: VertexId },
    #[error("{child} has parent {parent} but in-neighbour {better} is shallower")]
    ShallowerPredecessor {
        child: VertexId,
        parent: VertexId,
        better: VertexId,
    },
}

/// Every discovered non-root vertex sits exactly one level below its parent.
pub fn check_depth_parent_rule(state: &BfsState) -> Vec<Violation> {
    let tree = &state.tree;
    let root = tree.root();
    let mut out = Vec::new();
    if tree.level(root) != Some(0) || tree.parent(root).is_some() {
        out.push(Violation::Root { root });
    }
    for v in tree.discovered().filter(|&v| v != root) {
        let Some(p) = tree.parent(v) else {
            out.push(Violation::Detached(v));
            continue;
        };
        let (level, parent_level) = (tree.level(v), tree.level(p));
        match (level, parent_level) {
            (Some(l), Some(pl)) if l == pl + 1 => {}
            _ => out.push(Violation::DepthParent {
                vertex: v,
                level,
                parent_level,
            }),
        }
    }
    out
}

/// Numbering is a bijection onto `1..=k` and every level occupies the
/// contiguous block that ends at its recorded boundary.
pub fn check_contiguous_levels(state: &BfsState) -> Vec<Violation> {
    let (tree, num) = (&state.tree, &state.numbering);
    let mut out = Vec::new();

    if num.len() != tree.discovered_count() || num.assigned() != tree.discovered_count() {
        out.push(Violation::CountMismatch {
            discovered: tree.discovered_count(),
            numbered: num.len(),
        });
    }
    for (slot, &v) in num.order().iter().enumerate() {
        let index = slot as u32 + 1;
        if num.index_of(v) != Some(index) || !tree.is_discovered(v) {
            out.push(Violation::IndexMismatch {
                index,
                vertex: v,
                found: num.index_of(v),
            });
        }
    }
    for v in tree.discovered() {
        match num.index_of(v) {
            None => out.push(Violation::Unnumbered(v)),
            Some(i) if num.get(i) != Some(v) => out.push(Violation::IndexMismatch {
                index: i,
                vertex: v,
                found: num.get(i).and_then(|w| num.index_of(w)),
            }),
            Some(_) => {}
        }
    }
    if num.get(1) != Some(tree.root()) {
        out.push(Violation::Root { root: tree.root() });
    }

    let ends = num.level_ends();
    if ends.first() != Some(&1) {
        out.push(Violation::Boundary {
            level: 0,
            detail: format!("level 0 must end at index 1, found {:?}", ends.first()),
        });
    }
    for (l, w) in ends.windows(2).enumerate() {
        if w[1] <= w[0] {
            out.push(Violation::Boundary {
                level: l + 1,
                detail: format!("end {} does not exceed previous end {}", w[1], w[0]),
            });
        }
    }
    if ends.last().map(|&e| e as usize) != Some(num.len()) {
        out.push(Violation::Boundary {
            level: ends.len().saturating_sub(1),
            detail: format!("last end {:?} but {} slots", ends.last(), num.len()),
        });
    }

    let mut level = 0usize;
    for (slot, &v) in num.order().iter().enumerate() {
        let index = slot as u32 + 1;
        while level < ends.len() && ends[level] < index {
            level += 1;
        }
        if tree.level(v) != Some(level as u32) {
            out.push(Violation::OutsideBlock {
                vertex: v,
                index,
                level: tree.level(v),
            });
        }
    }
    out
}

/// Within each level, vertices appear in nondecreasing order of their
/// parents' indices.
pub fn check_stable_level_order(state: &BfsState) -> Vec<Violation> {
    let (tree, num) = (&state.tree, &state.numbering);
    let parent_index = |v: VertexId| tree.parent(v).and_then(|p| num.index_of(p));
    let mut out = Vec::new();
    for w in num.order().windows(2) {
        let (a, b) = (w[0], w[1]);
        if tree.level(a) != tree.level(b) || tree.level(a) == Some(0) {
            continue;
        }
        if let (Some(pa), Some(pb)) = (parent_index(a), parent_index(b)) {
            if pb < pa {
                out.push(Violation::LevelOrder {
                    level: tree.level(a).unwrap_or_default(),
                    earlier: a,
                    later: b,
                });
            }
        }
    }
    out
}

/// Every child list is strictly increasing in index.
pub fn check_child_order(state: &BfsState) -> Vec<Violation> {
    let (tree, num) = (&state.tree, &state.numbering);
    let mut out = Vec::new();
    for u in tree.discovered() {
        for w in tree.children(u).windows(2) {
            match (num.index_of(w[0]), num.index_of(w[1])) {
                (Some(a), Some(b)) if a < b => {}
                _ => out.push(Violation::ChildOrder {
                    parent: u,
                    child: w[1],
                }),
            }
        }
    }
    out
}

/// Smallest index among the numbered graph predecessors of each position.
fn first_predecessor_indices(state: &BfsState, graph: &DynamicDigraph) -> Vec<Option<u32>> {
    let num = &state.numbering;
    num.order()
        .iter()
        .map(|&v| {
            graph
                .pred(v)
                .iter()
                .filter_map(|&w| num.index_of(w).filter(|&i| num.get(i) == Some(w)))
                .min()
        })
        .collect()
}

/// Direct check of the BFS-ordering definition on `σ = bfs_revint`: for all
/// `i < j < k` with `v_i ∈ pred(v_k) \ pred(v_j)` some `q < i` has
/// `v_q ∈ pred(v_j)`.
///
/// The `q` quantifier is answered by the smallest predecessor index of `v_j`,
/// leaving `O(n² · deg)` work. Intended for small graphs.
pub fn check_bfs_ordering(state: &BfsState, graph: &DynamicDigraph) -> Vec<Violation> {
    let num = &state.numbering;
    let order = num.order();
    let first_pred = first_predecessor_indices(state, graph);
    let mut out = Vec::new();
    for k in 0..order.len() {
        let preds_k: Vec<u32> = graph
            .pred(order[k])
            .iter()
            .filter_map(|&w| num.index_of(w).filter(|&i| num.get(i) == Some(w)))
            .collect();
        for j in 0..k {
            let vj = order[j];
            for &i in &preds_k {
                let i0 = i as usize - 1;
                if i0 >= j || graph.has_edge(order[i0], vj) {
                    continue;
                }
                if !first_pred[j].is_some_and(|q| q < i) {
                    out.push(Violation::Ordering {
                        i,
                        j: j as u32 + 1,
                        k: k as u32 + 1,
                    });
                    if out.len() >= MAX_ORDERING_REPORTS {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Linear-time form of [`check_bfs_ordering`].
///
/// With `e(j)` the smallest predecessor index of `v_j`, a violating triple
/// exists iff some `j < k` has `e(k) < min(j, e(j))`; a running maximum of
/// `min(j, e(j))` over `j ≥ 2` finds it in one pass.
pub fn check_bfs_ordering_linear(state: &BfsState, graph: &DynamicDigraph) -> Vec<Violation> {
    let first_pred = first_predecessor_indices(state, graph);
    let mut out = Vec::new();
    let mut bound: Option<u32> = None;
    for (pos, e) in first_pred.iter().enumerate() {
        let k = pos as u32 + 1;
        if let (Some(ek), Some(b)) = (*e, bound) {
            if ek < b {
                out.push(Violation::FirstPredecessor { k, first_pred: ek });
                if out.len() >= MAX_ORDERING_REPORTS {
                    break;
                }
            }
        }
        if k >= 2 {
            let f = e.map_or(k, |e| e.min(k));
            bound = Some(bound.map_or(f, |b| b.max(f)));
        }
    }
    out
}

/// Tree edges are graph edges and no numbered in-neighbour of a vertex is
/// shallower than its parent.
pub fn check_tree_validity(state: &BfsState, graph: &DynamicDigraph) -> Vec<Violation> {
    let tree = &state.tree;
    let mut out = Vec::new();
    for v in tree.discovered() {
        let Some(p) = tree.parent(v) else { continue };
        if !graph.contains_vertex(v) || !graph.contains_vertex(p) || !graph.has_edge(p, v) {
            out.push(Violation::TreeEdgeMissing {
                parent: p,
                child: v,
            });
            continue;
        }
        let Some(pl) = tree.level(p) else { continue };
        for &w in graph.pred(v) {
            if tree.level(w).is_some_and(|wl| wl < pl) {
                out.push(Violation::ShallowerPredecessor {
                    child: v,
                    parent: p,
                    better: w,
                });
            }
        }
    }
    out
}
