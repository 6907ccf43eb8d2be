//! Repair after deleting the tree edge `(x, y)`.
//!
//! Stage one walks the old subtree of `y` level by level and records, for
//! every in-neighbour `z` of a subtree vertex `q`, that `q` may reattach
//! under `z` (`add_level`). Vertices with an in-neighbour outside the
//! subtree, or under a monitored one, are `monitor`ed; the rest are
//! provisionally `unreachable`. Stage two drops the tree edge and re-emits
//! the numbering from the level below `x`, releveling and reparenting
//! subtree vertices the first time the sweep reaches them. Stage three
//! deletes whatever stayed unreachable from the tail of the numbering.

use std::collections::HashSet;

use indexmap::IndexMap;

use super::{internal, WorkTally};
use crate::error::Result;
use crate::graph::{DynamicDigraph, VertexId};
use crate::state::BfsState;

/// Returns `None` when `(x, y)` was not a tree edge, otherwise the vertices
/// that left the tree. `graph` must already lack the edge.
pub(super) fn repair(
    state: &mut BfsState,
    graph: &DynamicDigraph,
    x: VertexId,
    y: VertexId,
    tally: &mut WorkTally,
) -> Result<Option<Vec<VertexId>>> {
    let BfsState {
        tree,
        numbering: num,
    } = state;
    tally.touch(x);
    tally.touch(y);
    if !tree.is_discovered(x) || !tree.is_discovered(y) {
        return Ok(None);
    }
    if tree.parent(y) != Some(x) {
        return Ok(None);
    }

    // stage 1: pre-scan of the old subtree in BFS order
    let mut this_level: Vec<(VertexId, Vec<VertexId>)> = vec![(x, vec![y])];
    let mut add_level: IndexMap<VertexId, Vec<VertexId>> = IndexMap::new();
    let mut unreachable = HashSet::new();
    let mut unreachord = Vec::new();
    let mut monitor = HashSet::new();
    while !this_level.is_empty() {
        let mut next_level = Vec::new();
        for (node, qs) in &this_level {
            for &q in qs {
                tally.touch(q);
                let preds = graph.pred(q);
                tally.examine(preds.len());
                for &z in preds {
                    if z == q || !tree.is_discovered(z) {
                        continue;
                    }
                    add_level.entry(z).or_default().push(q);
                    if !tree.is_ancestor(z, y)?
                        || (monitor.contains(&z) && !unreachable.contains(&z))
                    {
                        monitor.insert(q);
                    }
                }
                next_level.push((q, tree.children(q).to_vec()));
                if !monitor.contains(node) && !monitor.contains(&q) {
                    unreachord.push(q);
                    unreachable.insert(q);
                }
            }
        }
        this_level = next_level;
    }

    // stage 2: layered re-emission
    let level_x = tree
        .level(x)
        .ok_or_else(|| internal(format!("discovered vertex {x} has no level")))?;
    let mut lvl = level_x + 1;
    let mut start = num.level_start(level_x as usize);
    let mut end = num
        .level_end(level_x as usize)
        .ok_or_else(|| internal(format!("no boundary for level {level_x}")))?;
    let mut p = end + 1;
    let mut exclude = HashSet::new();
    tree.remove_edge(x, y)?;
    let depth_limit = tree.capacity() as u32 + 1;

    loop {
        if lvl > depth_limit {
            return Err(internal("deletion sweep ran past the deepest level"));
        }
        let nextstart = p;
        while start <= end {
            let node = num.vertex_at(start);
            tally.touch(node);
            for z in tree.children(node).to_vec() {
                if unreachable.contains(&z) || monitor.contains(&z) {
                    if tree.parent(z) != Some(node) {
                        continue;
                    }
                    tree.set_level(z, lvl)?;
                    exclude.insert(z);
                    unreachable.remove(&z);
                }
                num.assign(z, p)?;
                p += 1;
                tally.emit(z);
            }
            if let Some(candidates) = add_level.get(&node) {
                for &z in candidates {
                    if !exclude.insert(z) {
                        continue;
                    }
                    unreachable.remove(&z);
                    if tree.parent(z) != Some(node) {
                        if let Some(old) = tree.parent(z) {
                            tree.remove_edge(old, z)?;
                        }
                        tree.add_edge(node, z)?;
                    }
                    tree.set_level(z, lvl)?;
                    num.assign(z, p)?;
                    p += 1;
                    tally.emit(z);
                }
            }
            start += 1;
        }

        num.set_level_end(lvl as usize - 1, end)?;
        if p as usize > num.len() || p == start {
            num.truncate_levels(lvl as usize);
            break;
        }
        start = nextstart;
        end = p - 1;
        lvl += 1;
    }

    // stage 3: close the reachable prefix and drop the unreachable tail
    let reachable = (num.len() - unreachable.len()) as u32;
    if num.level_ends().last() != Some(&reachable) {
        num.push_level_end(reachable);
    }
    let mut removed = Vec::new();
    for &z in unreachord.iter().rev() {
        if !unreachable.contains(&z) {
            continue;
        }
        if let Some(parent) = tree.parent(z) {
            tree.remove_edge(parent, z)?;
        }
        tree.remove_node(z)?;
        num.clear_index(z);
        num.pop_slot();
        removed.push(z);
    }
    removed.reverse();
    Ok(Some(removed))
}
