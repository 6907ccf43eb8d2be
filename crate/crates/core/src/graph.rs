//! The raw directed graph, kept independently of any BFS state.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BfsError, Result};

/// Dense vertex identifier in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Directed graph with forward and backward adjacency.
///
/// Edges form a set: self-loops and parallel edges are rejected. Each
/// adjacency list keeps the insertion order of its surviving edges, which is
/// what makes static BFS (and therefore the oracle) deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DynamicDigraph {
    succ: Vec<Vec<VertexId>>,
    pred: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl DynamicDigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` isolated vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        DynamicDigraph {
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph on `n` vertices from an edge list, skipping duplicates
    /// and self-loops.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for (x, y) in edges {
            g.raw_insert_edge(VertexId(x), VertexId(y))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.succ.len() as u32);
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.succ.len()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(BfsError::UnknownVertex(v))
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.succ.len() as u32).map(VertexId)
    }

    /// Successors of `v` in insertion order. Panics on an unknown vertex.
    pub fn succ(&self, v: VertexId) -> &[VertexId] {
        &self.succ[v.index()]
    }

    /// Predecessors of `v` in insertion order. Panics on an unknown vertex.
    pub fn pred(&self, v: VertexId) -> &[VertexId] {
        &self.pred[v.index()]
    }

    pub fn has_edge(&self, x: VertexId, y: VertexId) -> bool {
        // scan the shorter of the two lists
        match (self.succ.get(x.index()), self.pred.get(y.index())) {
            (Some(s), Some(p)) if s.len() <= p.len() => s.contains(&y),
            (Some(_), Some(p)) => p.contains(&x),
            _ => false,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |x| self.succ(x).iter().map(move |&y| (x, y)))
    }

    /// Appends `(x, y)` to both adjacency directions. Returns `false` and
    /// leaves the graph untouched for self-loops and existing edges.
    pub fn raw_insert_edge(&mut self, x: VertexId, y: VertexId) -> Result<bool> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y || self.has_edge(x, y) {
            return Ok(false);
        }
        self.succ[x.index()].push(y);
        self.pred[y.index()].push(x);
        self.edge_count += 1;
        Ok(true)
    }

    /// Removes `(x, y)` from both adjacency directions, preserving the order
    /// of the remaining entries.
    pub fn raw_delete_edge(&mut self, x: VertexId, y: VertexId) -> Result<bool> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let Some(i) = self.succ[x.index()].iter().position(|&v| v == y) else {
            return Ok(false);
        };
        self.succ[x.index()].remove(i);
        let j = self.pred[y.index()]
            .iter()
            .position(|&v| v == x)
            .expect("successor and predecessor lists out of sync");
        self.pred[y.index()].remove(j);
        self.edge_count -= 1;
        Ok(true)
    }

    /// Full scan of the dual-consistency and counting invariants. Returns a
    /// description of the first problem found.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let mut total = 0;
        for x in self.vertices() {
            let succ = self.succ(x);
            total += succ.len();
            for (i, &y) in succ.iter().enumerate() {
                if y == x {
                    return Err(format!("self-loop at {x}"));
                }
                if succ[..i].contains(&y) {
                    return Err(format!("parallel edge ({x},{y})"));
                }
                if !self.pred(y).contains(&x) {
                    return Err(format!("({x},{y}) missing from pred[{y}]"));
                }
            }
            for &w in self.pred(x) {
                if !self.succ(w).contains(&x) {
                    return Err(format!("({w},{x}) missing from succ[{w}]"));
                }
            }
        }
        if total != self.edge_count {
            return Err(format!(
                "edge_count {} but {} successor entries",
                self.edge_count, total
            ));
        }
        Ok(())
    }
}
