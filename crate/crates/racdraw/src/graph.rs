//! Undirected simple graphs over dense integer vertex ids.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Vertex id, always in `0..n`.
pub type VertexId = usize;

/// An unordered edge, stored with `a < b`.
pub type Edge = (VertexId, VertexId);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) has endpoint out of range (n = {2})")]
    OutOfRange(VertexId, VertexId, usize),
    #[error("duplicate edge ({0}, {1}) after normalization")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
}

/// A simple undirected graph. Edges are deduplicated, endpoint-sorted and
/// kept in lexicographic order, so equal graphs compare equal.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, {:?})", self.n, self.edges.len(), self.edges)
    }
}

/// Normalizes and validates an edge list into a [`Graph`].
///
/// Rejects self-loops, out-of-range endpoints and duplicate edges, naming the
/// offending edge.
pub fn build_graph(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
    let mut norm: Vec<Edge> = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if a >= n || b >= n {
            return Err(GraphError::OutOfRange(a, b, n));
        }
        norm.push((a.min(b), a.max(b)));
    }
    norm.sort_unstable();
    for w in norm.windows(2) {
        if w[0] == w[1] {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
    }
    Ok(Graph { n, edges: norm })
}

impl Graph {
    /// Graph with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }

    /// Adjacency lists, neighbors sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Connected component id per vertex, numbered `0..` by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.components().iter().all(|&c| c == 0)
    }

    /// True when the edge set is acyclic (a forest).
    pub fn is_forest(&self) -> bool {
        // union-find
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

/// Two (optionally four) graphs sharing one vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInstance {
    pub g1: Graph,
    pub g2: Graph,
    pub g3: Option<Graph>,
    pub g4: Option<Graph>,
}

impl PairInstance {
    pub fn pair(g1: Graph, g2: Graph) -> Result<PairInstance, GraphError> {
        if g1.vertex_count() != g2.vertex_count() {
            return Err(GraphError::VertexCountMismatch(g1.vertex_count(), g2.vertex_count()));
        }
        Ok(PairInstance { g1, g2, g3: None, g4: None })
    }

    pub fn quadruple(g1: Graph, g2: Graph, g3: Graph, g4: Graph) -> Result<PairInstance, GraphError> {
        let n = g1.vertex_count();
        for g in [&g2, &g3, &g4] {
            if g.vertex_count() != n {
                return Err(GraphError::VertexCountMismatch(n, g.vertex_count()));
            }
        }
        Ok(PairInstance { g1, g2, g3: Some(g3), g4: Some(g4) })
    }

    pub fn n(&self) -> usize {
        self.g1.vertex_count()
    }

    pub fn graphs(&self) -> Vec<&Graph> {
        let mut v = vec![&self.g1, &self.g2];
        if let Some(g) = &self.g3 {
            v.push(g);
        }
        if let Some(g) = &self.g4 {
            v.push(g);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_path_graph() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_self_loop() {
        assert_eq!(build_graph(3, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
    }

    #[test]
    fn rejects_duplicate_after_normalization() {
        assert_eq!(build_graph(4, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn rejects_out_of_range() {
        assert_eq!(build_graph(2, &[(0, 2)]), Err(GraphError::OutOfRange(0, 2, 2)));
    }

    #[test]
    fn forest_detection() {
        assert!(build_graph(4, &[(0, 1), (1, 2), (1, 3)]).unwrap().is_forest());
        assert!(!build_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap().is_forest());
    }
}
