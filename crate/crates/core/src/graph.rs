//! Immutable simple undirected graphs and rooted subgraphs over them.
//!
//! Vertices are dense `0..n` integers. A [`Graph`] is built once and never
//! mutated afterwards, so it can be shared freely between trial workers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type ColorId = u32;

/// An undirected edge stored with `0 <= lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    /// Normalizes the endpoint order. Does not reject self-loops.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> VertexId {
        self.0
    }

    pub fn hi(self) -> VertexId {
        self.1
    }

    pub fn touches(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite to `v`; `v` must be an endpoint.
    pub fn other(self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a simple graph. Duplicate edges are dropped; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edge_list: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if (w as usize) >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push(Edge::new(u, v));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted_edges(n, edges))
    }

    /// Builds from already validated, sorted and deduplicated edges.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut degree = alloc::vec![0usize; n];
        for e in &edges {
            degree[e.0 as usize] += 1;
            degree[e.1 as usize] += 1;
        }
        let mut adjacency: Vec<Vec<VertexId>> =
            degree.iter().map(|&d| Vec::with_capacity(d)).collect();
        for e in &edges {
            adjacency[e.0 as usize].push(e.1);
            adjacency[e.1 as usize].push(e.0);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adjacency,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(lo, hi)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Index of `e` in [`Graph::edges`], if present.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v as usize].len())
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.n
            && (v as usize) < self.n
            && self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = alloc::vec![false; self.n];
        let mut stack = alloc::vec![0 as VertexId];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

/// A rooted, optionally colored subgraph living in an ambient vertex id space.
///
/// This is the common currency for unions of explored discs, forbidden
/// patterns and stitched graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
    pub roots: BTreeSet<VertexId>,
    pub colors: BTreeMap<VertexId, ColorId>,
}

impl Subgraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// The whole graph with no marked roots.
    pub fn from_graph(g: &Graph) -> Self {
        Subgraph {
            vertices: (0..g.num_vertices() as VertexId).collect(),
            edges: g.edges().iter().copied().collect(),
            roots: BTreeSet::new(),
            colors: BTreeMap::new(),
        }
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_root(&mut self, v: VertexId) {
        self.vertices.insert(v);
        self.roots.insert(v);
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        debug_assert_ne!(u, v);
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert(Edge::new(u, v));
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&Edge::new(u, v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    /// Adjacency lists keyed by vertex, neighbors ascending.
    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            adj.entry(e.0).or_default().push(e.1);
            adj.entry(e.1).or_default().push(e.0);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// Vertex, edge and root set union. On a color conflict the color already
    /// present in `self` wins.
    pub fn union_with(&mut self, other: &Subgraph) {
        self.vertices.extend(other.vertices.iter().copied());
        self.edges.extend(other.edges.iter().copied());
        self.roots.extend(other.roots.iter().copied());
        for (&v, &c) in &other.colors {
            self.colors.entry(v).or_insert(c);
        }
    }

    /// True if every edge of `self` is an edge of `g`.
    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        self.vertices.iter().all(|&v| (v as usize) < g.num_vertices())
            && self.edges.iter().all(|e| g.has_edge(e.0, e.1))
    }
}

/// Union of two rooted subgraphs over the same ambient id space.
pub fn union(h1: &Subgraph, h2: &Subgraph) -> Subgraph {
    let mut out = h1.clone();
    out.union_with(h2);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn path_on_three_vertices() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn single_isolated_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(g.degrees(), vec![0]);
        assert_eq!(g.degree(0), Ok(0));
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(Graph::new(3, &[(0, 0)]), Err(Error::SelfLoop(0)));
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(g.degree(5).is_err());
    }

    #[test]
    fn duplicates_are_merged() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.edges(), &[Edge(0, 1), Edge(1, 2)]);
    }

    #[test]
    fn star_degrees() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.degree(0), Ok(3));
        assert_eq!(g.degree(2), Ok(1));
        let iso = Graph::new(5, &[(0, 1)]).unwrap();
        assert_eq!(iso.degree(4), Ok(0));
    }

    fn rooted_edge(u: VertexId, v: VertexId, root: VertexId) -> Subgraph {
        let mut s = Subgraph::new();
        s.add_edge(u, v);
        s.add_root(root);
        s
    }

    #[test]
    fn union_of_two_edges_is_path() {
        let h = union(&rooted_edge(0, 1, 0), &rooted_edge(1, 2, 2));
        assert_eq!(h.vertices.len(), 3);
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2));
        assert_eq!(h.roots.iter().copied().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn union_is_idempotent_and_merges_roots() {
        let a = rooted_edge(0, 1, 0);
        assert_eq!(union(&a, &a), a);
        let h = union(&a, &rooted_edge(0, 1, 1));
        assert_eq!(h.edges.len(), 1);
        assert_eq!(h.roots.len(), 2);
    }
}
