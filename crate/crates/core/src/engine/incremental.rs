//! Repair after inserting `(x, y)`.
//!
//! The sweep rewrites the numbering one level at a time starting with the
//! level below `x`. `this_level[u]` lists vertices being promoted under `u`
//! on the level currently emitted, `next_level` collects promotions for the
//! following level, `monitor` holds vertices that keep their parent but need
//! a new depth, and `exclude` stops a vertex from being queued twice.

use std::collections::HashSet;

use indexmap::IndexMap;

use super::{internal, WorkTally};
use crate::error::Result;
use crate::graph::{DynamicDigraph, VertexId};
use crate::state::{BfsNumbering, BfsState, BfsTree};

type LevelQueue = IndexMap<VertexId, Vec<VertexId>>;

/// Returns `None` when the new edge cannot change the state, otherwise the
/// vertices discovered by the update.
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
    let Some(level_x) = tree.level(x) else {
        return Ok(None);
    };
    tally.touch(y);
    let newnode = !tree.is_discovered(y);
    if !newnode && !improves(tree, num, x, level_x, y)? {
        return Ok(None);
    }

    let mut lvl = level_x + 1;
    let mut start = num.level_start(level_x as usize);
    let mut end = num
        .level_end(level_x as usize)
        .ok_or_else(|| internal(format!("no boundary for level {level_x}")))?;
    let mut p = end + 1;
    let mut this_level = LevelQueue::from([(x, vec![y])]);
    let mut next_level = LevelQueue::new();
    let mut exclude = HashSet::from([y]);
    let mut monitor = HashSet::new();
    let mut discovered = Vec::new();
    let depth_limit = tree.capacity() as u32 + 1;

    loop {
        if lvl > depth_limit {
            return Err(internal("insertion sweep ran past the deepest level"));
        }
        let nextstart = p;
        while start <= end {
            let node = num.vertex_at(start);
            tally.touch(node);
            let block = tree.children(node);
            let queued = this_level.get(&node).cloned();
            if queued.is_none() && block.first().is_none_or(|&c| num.index_of(c) == Some(p)) {
                // fast path: the child block already sits at p
                p += block.len() as u32;
                start += 1;
                tally.fast_path();
                continue;
            }
            let mut iter = block.to_vec();
            iter.extend(queued.iter().flatten().copied());
            for q in iter {
                let changelvl = queued.as_ref().is_some_and(|qs| qs.contains(&q));
                if !tree.is_discovered(q) {
                    tree.add_node(q)?;
                    discovered.push(q);
                }
                let monitored = monitor.contains(&q);
                if !monitored && changelvl && tree.parent(q) != Some(node) {
                    if let Some(old) = tree.parent(q) {
                        tree.remove_edge(old, q)?;
                    }
                    tree.add_edge(node, q)?;
                    tree.set_level(q, lvl)?;
                } else if monitored {
                    tree.set_level(q, lvl)?;
                }
                num.assign(q, p)?;
                p += 1;
                tally.emit(q);

                if !(changelvl || monitored) {
                    continue;
                }
                let succ = graph.succ(q);
                tally.examine(succ.len());
                for &z in succ {
                    if z == q || exclude.contains(&z) {
                        continue;
                    }
                    if !should_reparent(tree, num, &queued, q, z, lvl) {
                        continue;
                    }
                    if tree.level(z) == Some(lvl) {
                        this_level.entry(q).or_default().push(z);
                    } else {
                        let entry = next_level.entry(q).or_default();
                        if tree.parent(z) == Some(q) {
                            monitor.insert(z);
                        } else {
                            entry.push(z);
                        }
                    }
                    exclude.insert(z);
                }
            }
            start += 1;
        }

        let written = p - 1;
        let l = lvl as usize;
        if l < num.level_count() {
            num.set_level_end(l, written)?;
        } else if newnode && l + 1 >= num.level_count() {
            num.push_level_end(written);
        }
        if !next_level.is_empty() || (newnode && written as usize != num.assigned()) {
            // another layer is pending
        } else if written as usize == num.len() {
            num.truncate_levels(l + 1);
            break;
        } else if Some(written) == num.level_end(l - 1) {
            num.truncate_levels(l);
            break;
        }
        start = nextstart;
        end = written;
        this_level = std::mem::take(&mut next_level);
        lvl += 1;
    }
    Ok(Some(discovered))
}

/// Guard for an already discovered `y`: the edge must shorten its path or
/// offer a parent with a smaller BFS index on the same level.
fn improves(
    tree: &BfsTree,
    num: &BfsNumbering,
    x: VertexId,
    level_x: u32,
    y: VertexId,
) -> Result<bool> {
    let level_y = tree
        .level(y)
        .ok_or_else(|| internal(format!("discovered vertex {y} has no level")))?;
    if level_y > level_x + 1 {
        return Ok(true);
    }
    Ok(level_y == level_x + 1
        && tree
            .parent(y)
            .is_some_and(|py| num.index_of(py) > num.index_of(x)))
}

/// Whether successor `z` of the just emitted `q` (now on level `lvl`) must be
/// moved under `q` or releveled with it.
///
/// A parent whose index slot no longer points back at it has not been
/// re-emitted yet, so it now comes after `q`.
fn should_reparent(
    tree: &BfsTree,
    num: &BfsNumbering,
    queued: &Option<Vec<VertexId>>,
    q: VertexId,
    z: VertexId,
    lvl: u32,
) -> bool {
    let Some(level_z) = tree.level(z) else {
        return true;
    };
    let parent = tree.parent(z);
    if parent == Some(q) || level_z > lvl + 1 {
        return true;
    }
    if level_z != lvl + 1 {
        return false;
    }
    let Some(pz) = parent else { return false };
    let pz_index = num.index_of(pz);
    let stale = pz_index.and_then(|i| num.get(i)) != Some(pz);
    stale || pz_index > num.index_of(q) || queued.as_ref().is_some_and(|qs| qs.contains(&pz))
}
