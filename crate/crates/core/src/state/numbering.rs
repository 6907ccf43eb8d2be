use crate::error::{BfsError, Result};
use crate::graph::VertexId;

/// Global BFS numbering with 1-based indices.
///
/// `bfs_int` maps a vertex to its index (0 means "no index"), `bfs_revint`
/// holds the inverse with index `i` stored at slot `i - 1`, and
/// `bfs_level[l]` is the last index belonging to level `l`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BfsNumbering {
    bfs_int: Vec<u32>,
    bfs_revint: Vec<VertexId>,
    bfs_level: Vec<u32>,
    assigned: usize,
}

impl BfsNumbering {
    pub(crate) fn with_capacity(n: usize) -> Self {
        BfsNumbering {
            bfs_int: vec![0; n],
            ..Self::default()
        }
    }

    pub(crate) fn ensure_vertices(&mut self, n: usize) {
        if self.bfs_int.len() < n {
            self.bfs_int.resize(n, 0);
        }
    }

    /// Number of occupied inverse slots, `|bfs_revint|`.
    pub fn len(&self) -> usize {
        self.bfs_revint.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bfs_revint.is_empty()
    }

    /// Number of vertices holding an index, `|bfs_int|`.
    pub fn assigned(&self) -> usize {
        self.assigned
    }

    pub fn index_of(&self, v: VertexId) -> Option<u32> {
        match self.bfs_int.get(v.index()) {
            Some(&i) if i > 0 => Some(i),
            _ => None,
        }
    }

    /// Vertex stored at 1-based index `i`. Panics when out of range.
    pub fn vertex_at(&self, i: u32) -> VertexId {
        self.bfs_revint[i as usize - 1]
    }

    pub fn get(&self, i: u32) -> Option<VertexId> {
        (i as usize)
            .checked_sub(1)
            .and_then(|s| self.bfs_revint.get(s))
            .copied()
    }

    /// The inverse array in index order.
    pub fn order(&self) -> &[VertexId] {
        &self.bfs_revint
    }

    pub fn level_ends(&self) -> &[u32] {
        &self.bfs_level
    }

    pub fn level_count(&self) -> usize {
        self.bfs_level.len()
    }

    /// Last index of level `l`.
    pub fn level_end(&self, l: usize) -> Option<u32> {
        self.bfs_level.get(l).copied()
    }

    /// First index of level `l`; index 1 for level 0.
    pub fn level_start(&self, l: usize) -> u32 {
        match l {
            0 => 1,
            _ => self.bfs_level[l - 1] + 1,
        }
    }

    /// Writes `v` at index `p`, updating both directions. `p` may be one past
    /// the current end, in which case the inverse array grows.
    pub fn assign(&mut self, v: VertexId, p: u32) -> Result<()> {
        let slot = (p as usize)
            .checked_sub(1)
            .ok_or_else(|| BfsError::Internal("BFS index 0".into()))?;
        match slot.cmp(&self.bfs_revint.len()) {
            std::cmp::Ordering::Less => self.bfs_revint[slot] = v,
            std::cmp::Ordering::Equal => self.bfs_revint.push(v),
            std::cmp::Ordering::Greater => {
                return Err(BfsError::Internal(format!(
                    "write at index {p} leaves a gap after {}",
                    self.bfs_revint.len()
                )))
            }
        }
        self.ensure_vertices(v.index() + 1);
        let cell = &mut self.bfs_int[v.index()];
        if *cell == 0 {
            self.assigned += 1;
        }
        *cell = p;
        Ok(())
    }

    /// Drops the index of `v` without touching the inverse array.
    pub fn clear_index(&mut self, v: VertexId) {
        if let Some(cell) = self.bfs_int.get_mut(v.index()) {
            if *cell != 0 {
                *cell = 0;
                self.assigned -= 1;
            }
        }
    }

    /// Pops the last inverse slot.
    pub fn pop_slot(&mut self) -> Option<VertexId> {
        self.bfs_revint.pop()
    }

    /// Sets the end index of level `l`, appending when `l` is one past the
    /// last level.
    pub fn set_level_end(&mut self, l: usize, end: u32) -> Result<()> {
        match l.cmp(&self.bfs_level.len()) {
            std::cmp::Ordering::Less => self.bfs_level[l] = end,
            std::cmp::Ordering::Equal => self.bfs_level.push(end),
            std::cmp::Ordering::Greater => {
                return Err(BfsError::Internal(format!(
                    "level {l} boundary leaves a gap"
                )))
            }
        }
        Ok(())
    }

    pub fn push_level_end(&mut self, end: u32) {
        self.bfs_level.push(end);
    }

    /// Keeps only the first `levels` boundaries.
    pub fn truncate_levels(&mut self, levels: usize) {
        self.bfs_level.truncate(levels);
    }

    /// Exchanges the vertices at indices `i` and `j`, keeping both maps in
    /// agreement.
    pub fn swap_indices(&mut self, i: u32, j: u32) {
        let (a, b) = (self.vertex_at(i), self.vertex_at(j));
        self.bfs_revint.swap(i as usize - 1, j as usize - 1);
        self.bfs_int[a.index()] = j;
        self.bfs_int[b.index()] = i;
    }
}
