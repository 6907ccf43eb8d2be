#![allow(dead_code)]

use std::collections::VecDeque;

use dynbfs::{DynamicDigraph, VertexId};

pub fn v(i: u32) -> VertexId {
    VertexId(i)
}

pub fn graph(n: usize, edges: &[(u32, u32)]) -> DynamicDigraph {
    DynamicDigraph::from_edges(n, edges.iter().copied()).unwrap()
}

/// Textbook queue BFS over an edge list, scanning out-edges in list order.
pub struct Reference {
    pub level: Vec<Option<u32>>,
    pub parent: Vec<Option<u32>>,
    pub order: Vec<u32>,
    pub boundaries: Vec<u32>,
}

pub fn reference_bfs(n: usize, edges: &[(u32, u32)], root: u32) -> Reference {
    let mut out = vec![Vec::new(); n];
    for &(x, y) in edges {
        out[x as usize].push(y);
    }
    let mut level = vec![None; n];
    let mut parent = vec![None; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([root]);
    level[root as usize] = Some(0);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in &out[u as usize] {
            if level[w as usize].is_none() {
                level[w as usize] = Some(level[u as usize].unwrap() + 1);
                parent[w as usize] = Some(u);
                queue.push_back(w);
            }
        }
    }
    let mut boundaries = Vec::new();
    for (i, &u) in order.iter().enumerate() {
        let l = level[u as usize].unwrap() as usize;
        if boundaries.len() <= l {
            boundaries.push(0);
        }
        boundaries[l] = i as u32 + 1;
    }
    Reference {
        level,
        parent,
        order,
        boundaries,
    }
}

/// All-pairs shortest paths, root row only.
pub fn floyd_warshall_row(g: &DynamicDigraph, root: VertexId) -> Vec<Option<u32>> {
    let n = g.vertex_count();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (x, y) in g.edges() {
        d[x.index()][y.index()] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d[root.index()]
        .iter()
        .map(|&x| (x < inf).then_some(x))
        .collect()
}

/// The ordering definition evaluated literally: for all i<j<k, if v_i is a
/// predecessor of v_k but not of v_j, then some q<i has v_q a predecessor of
/// v_j. Also requires the order to be a prefix-closed numbering.
pub fn brute_force_ordering(g: &DynamicDigraph, order: &[VertexId]) -> bool {
    let is_pred = |a: VertexId, b: VertexId| g.has_edge(a, b);
    let k = order.len();
    for i in 0..k {
        for j in i + 1..k {
            for kk in j + 1..k {
                let (vi, vj, vk) = (order[i], order[j], order[kk]);
                if is_pred(vi, vk) && !is_pred(vi, vj) && !(0..i).any(|q| is_pred(order[q], vj)) {
                    return false;
                }
            }
        }
    }
    true
}
