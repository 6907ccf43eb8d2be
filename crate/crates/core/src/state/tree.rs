use crate::error::{BfsError, Result};
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct TreeNode {
    parent: Option<VertexId>,
    level: Option<u32>,
    children: Vec<VertexId>,
}

/// Breadth-first spanning tree: parent pointers, ordered child lists and
/// depths for every discovered vertex.
///
/// The root's children live in a dedicated `root_succ` list. A discovered
/// vertex with no parent is *detached*: the sentinel state between
/// `remove_edge` and `add_edge`, or right after `add_node`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsTree {
    root: VertexId,
    nodes: Vec<Option<TreeNode>>,
    root_succ: Vec<VertexId>,
    discovered: usize,
}

impl BfsTree {
    /// Tree containing only `root` at level 0, sized for `n` vertices.
    pub fn new(root: VertexId, n: usize) -> Self {
        let mut nodes = vec![None; n.max(root.index() + 1)];
        nodes[root.index()] = Some(TreeNode {
            parent: None,
            level: Some(0),
            children: Vec::new(),
        });
        BfsTree {
            root,
            nodes,
            root_succ: Vec::new(),
            discovered: 1,
        }
    }

    pub(crate) fn ensure_vertices(&mut self, n: usize) {
        if self.nodes.len() < n {
            self.nodes.resize(n, None);
        }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn capacity(&self) -> usize {
        self.nodes.len()
    }

    pub fn discovered_count(&self) -> usize {
        self.discovered
    }

    pub fn is_discovered(&self, v: VertexId) -> bool {
        matches!(self.nodes.get(v.index()), Some(Some(_)))
    }

    /// Discovered vertices in id order.
    pub fn discovered(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.is_some())
            .map(|(i, _)| VertexId(i as u32))
    }

    fn node(&self, v: VertexId) -> Option<&TreeNode> {
        self.nodes.get(v.index()).and_then(Option::as_ref)
    }

    fn node_mut(&mut self, v: VertexId) -> Result<&mut TreeNode> {
        self.nodes
            .get_mut(v.index())
            .and_then(Option::as_mut)
            .ok_or(BfsError::Undiscovered(v))
    }

    /// Depth of `v`; `None` when undiscovered or not yet assigned.
    pub fn level(&self, v: VertexId) -> Option<u32> {
        self.node(v).and_then(|n| n.level)
    }

    /// Tree parent of `v`; `None` for the root, detached and undiscovered
    /// vertices.
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.node(v).and_then(|n| n.parent)
    }

    /// Tree children of `v` in BFS-index order. The root answers with
    /// `root_succ`.
    pub fn children(&self, v: VertexId) -> &[VertexId] {
        if v == self.root {
            return &self.root_succ;
        }
        self.node(v).map_or(&[], |n| &n.children)
    }

    pub fn root_succ(&self) -> &[VertexId] {
        &self.root_succ
    }

    fn children_mut(&mut self, v: VertexId) -> Result<&mut Vec<VertexId>> {
        if v == self.root {
            return Ok(&mut self.root_succ);
        }
        Ok(&mut self.node_mut(v)?.children)
    }

    /// Overwrites the depth of a discovered vertex.
    pub fn set_level(&mut self, v: VertexId, level: u32) -> Result<()> {
        self.node_mut(v)?.level = Some(level);
        Ok(())
    }

    /// Discovers `q` as a detached vertex without a level.
    pub fn add_node(&mut self, q: VertexId) -> Result<()> {
        if self.is_discovered(q) {
            return Err(BfsError::AlreadyDiscovered(q));
        }
        self.ensure_vertices(q.index() + 1);
        self.nodes[q.index()] = Some(TreeNode::default());
        self.discovered += 1;
        Ok(())
    }

    /// Attaches the detached vertex `q` as the last child of `u`.
    pub fn add_edge(&mut self, u: VertexId, q: VertexId) -> Result<()> {
        if q == self.root {
            return Err(BfsError::RootMutation("given a parent"));
        }
        if !self.is_discovered(u) {
            return Err(BfsError::Undiscovered(u));
        }
        let node = self.node_mut(q)?;
        if let Some(parent) = node.parent {
            return Err(BfsError::ParentAlreadySet { child: q, parent });
        }
        node.parent = Some(u);
        self.children_mut(u)?.push(q);
        Ok(())
    }

    /// Detaches `q` from its parent `u`.
    pub fn remove_edge(&mut self, u: VertexId, q: VertexId) -> Result<()> {
        let node = self.node_mut(q)?;
        if node.parent != Some(u) {
            return Err(BfsError::NotParent {
                parent: u,
                child: q,
            });
        }
        node.parent = None;
        let children = self.children_mut(u)?;
        let pos = children
            .iter()
            .position(|&c| c == q)
            .ok_or_else(|| BfsError::Internal(format!("{q} missing from child list of {u}")))?;
        children.remove(pos);
        Ok(())
    }

    /// Forgets a detached, childless vertex.
    pub fn remove_node(&mut self, z: VertexId) -> Result<()> {
        if z == self.root {
            return Err(BfsError::RootMutation("removed"));
        }
        let node = self.node(z).ok_or(BfsError::Undiscovered(z))?;
        if node.parent.is_some() {
            return Err(BfsError::HasParent(z));
        }
        if !node.children.is_empty() {
            return Err(BfsError::HasChildren(z));
        }
        self.nodes[z.index()] = None;
        self.discovered -= 1;
        Ok(())
    }

    /// Whether `y` lies on the tree path from the root to `z`, with
    /// `is_ancestor(y, y) == true`.
    ///
    /// Walks parent pointers upward from `z` and stops as soon as the walker
    /// is no deeper than `y`, so the cost is `level(z) - level(y)` steps.
    pub fn is_ancestor(&self, z: VertexId, y: VertexId) -> Result<bool> {
        let target = self.level(y).ok_or(BfsError::Undiscovered(y))?;
        if !self.is_discovered(z) {
            return Err(BfsError::Undiscovered(z));
        }
        let mut walker = z;
        loop {
            if walker == y {
                return Ok(true);
            }
            match (self.level(walker), self.parent(walker)) {
                (Some(l), Some(p)) if l > target => walker = p,
                _ => return Ok(false),
            }
        }
    }
}
