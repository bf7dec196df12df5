//! Random BFS exploration with bounded depth and breadth.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{ColorId, Edge, Subgraph, VertexId};
use crate::oracle::QueryOracle;

/// A connected rooted subgraph, as returned by a random BFS or a stream
/// collector, with optional vertex colors.
///
/// `depth` holds the BFS distance from the root inside the disc and doubles as
/// the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedDisc {
    root: VertexId,
    depth: BTreeMap<VertexId, u32>,
    edges: BTreeSet<Edge>,
    colors: BTreeMap<VertexId, ColorId>,
}

impl RootedDisc {
    pub fn singleton(root: VertexId) -> Self {
        let mut depth = BTreeMap::new();
        depth.insert(root, 0);
        RootedDisc {
            root,
            depth,
            edges: BTreeSet::new(),
            colors: BTreeMap::new(),
        }
    }

    /// Builds the disc spanned by `edges` around `root`. Every edge must lie
    /// in the connected component of `root`.
    pub fn from_edges(root: VertexId, edges: BTreeSet<Edge>) -> Self {
        let disc = Self::spanned(root, edges);
        debug_assert!(disc.is_some(), "disc edges must be connected to the root");
        disc.unwrap_or_else(|| RootedDisc::singleton(root))
    }

    /// Like [`RootedDisc::from_edges`], returning `None` when some edge is not
    /// connected to the root.
    pub fn spanned(root: VertexId, edges: BTreeSet<Edge>) -> Option<Self> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in &edges {
            adj.entry(e.0).or_default().push(e.1);
            adj.entry(e.1).or_default().push(e.0);
        }
        let mut depth = BTreeMap::new();
        depth.insert(root, 0u32);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = depth[&u];
            if let Some(nbrs) = adj.get(&u) {
                for &w in nbrs {
                    if let alloc::collections::btree_map::Entry::Vacant(slot) = depth.entry(w) {
                        slot.insert(du + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        edges.iter().all(|e| depth.contains_key(&e.0)).then_some(RootedDisc {
            root,
            depth,
            edges,
            colors: BTreeMap::new(),
        })
    }

    /// Attaches colors to disc vertices. Colors on vertices outside the disc
    /// are ignored; a color used twice is an error.
    pub fn with_colors(mut self, colors: &BTreeMap<VertexId, ColorId>) -> Result<Self> {
        let mut used = BTreeSet::new();
        let mut kept = BTreeMap::new();
        for (&v, &c) in colors {
            if self.depth.contains_key(&v) {
                if !used.insert(c) {
                    return Err(Error::ColorRepeatedWithinDisc { color: c });
                }
                kept.insert(v, c);
            }
        }
        self.colors = kept;
        Ok(self)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.depth.keys().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.depth.contains_key(&v)
    }

    pub fn depth_of(&self, v: VertexId) -> Option<u32> {
        self.depth.get(&v).copied()
    }

    pub fn depths(&self) -> &BTreeMap<VertexId, u32> {
        &self.depth
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn colors(&self) -> &BTreeMap<VertexId, ColorId> {
        &self.colors
    }

    pub fn num_vertices(&self) -> usize {
        self.depth.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn radius(&self) -> u32 {
        self.depth.values().copied().max().unwrap_or(0)
    }

    /// Number of vertices at each depth, index = depth.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = alloc::vec![0usize; self.radius() as usize + 1];
        for &d in self.depth.values() {
            sizes[d as usize] += 1;
        }
        sizes
    }

    /// Same root, and every vertex and edge of `other` is present here.
    pub fn contains(&self, other: &RootedDisc) -> bool {
        self.root == other.root
            && other.depth.keys().all(|v| self.depth.contains_key(v))
            && other.edges.is_subset(&self.edges)
    }

    pub fn to_subgraph(&self) -> Subgraph {
        let mut s = Subgraph::new();
        s.vertices.extend(self.depth.keys().copied());
        s.edges.extend(self.edges.iter().copied());
        s.roots.insert(self.root);
        s.colors = self.colors.clone();
        s
    }
}

/// Runs a q-random BFS from `v`.
///
/// Each popped vertex issues exactly `q` random-neighbor queries (with
/// replacement). A sampled vertex is enqueued only on first discovery and only
/// while the popped vertex sits at depth below `q - 1`, so the disc radius
/// never exceeds `q`.
pub fn random_bfs(oracle: &mut QueryOracle<'_>, v: VertexId, q: u32) -> Result<RootedDisc> {
    random_bfs_labeled(oracle, v, q).map(|(d, _)| d)
}

/// Like [`random_bfs`], also returning the discovery label of every enqueued
/// vertex. Labels can exceed the in-disc distance stored in the disc; at most
/// `q^i` vertices carry label `i`.
pub fn random_bfs_labeled(
    oracle: &mut QueryOracle<'_>,
    v: VertexId,
    q: u32,
) -> Result<(RootedDisc, BTreeMap<VertexId, u32>)> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1"));
    }
    oracle.graph().check_vertex(v)?;
    let mut label: BTreeMap<VertexId, u32> = BTreeMap::new();
    label.insert(v, 0);
    let mut queue = VecDeque::from([v]);
    let mut edges = BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        let lu = label[&u];
        for _ in 0..q {
            let Some(s) = oracle.random_neighbor(u)? else {
                continue;
            };
            edges.insert(Edge::new(u, s));
            if lu + 1 < q && !label.contains_key(&s) {
                label.insert(s, lu + 1);
                queue.push_back(s);
            }
        }
    }
    Ok((RootedDisc::from_edges(v, edges), label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn isolated_root_gives_singleton() {
        let g = Graph::new(3, &[(1, 2)]).unwrap();
        for q in 1..4 {
            let mut o = QueryOracle::new(&g, 5);
            let d = random_bfs(&mut o, 0, q).unwrap();
            assert_eq!(d, RootedDisc::singleton(0));
            assert_eq!(o.query_count(), q as u64);
        }
    }

    #[test]
    fn leaf_of_star_q1_collects_its_edge() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        for seed in 0..50 {
            let mut o = QueryOracle::new(&g, seed);
            let d = random_bfs(&mut o, 1, 1).unwrap();
            assert_eq!(d.edges().iter().copied().collect::<Vec<_>>(), [Edge(0, 1)]);
            assert_eq!(o.query_count(), 1);
        }
    }

    #[test]
    fn middle_of_path_q1_takes_one_side() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let mut left = 0;
        for seed in 0..400 {
            let mut o = QueryOracle::new(&g, seed);
            let d = random_bfs(&mut o, 1, 1).unwrap();
            assert_eq!(d.num_edges(), 1);
            if d.contains_vertex(0) {
                left += 1;
            }
        }
        assert!((150..250).contains(&left), "left = {left}");
    }

    #[test]
    fn zero_q_rejected() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let mut o = QueryOracle::new(&g, 0);
        assert!(random_bfs(&mut o, 0, 0).is_err());
        assert!(random_bfs(&mut o, 7, 1).is_err());
    }

    #[test]
    fn colors_must_be_unique_within_disc() {
        let d = RootedDisc::from_edges(0, [Edge(0, 1), Edge(0, 2)].into_iter().collect());
        let ok: BTreeMap<_, _> = [(1, 7), (5, 7)].into_iter().collect();
        assert_eq!(d.clone().with_colors(&ok).unwrap().colors().len(), 1);
        let bad: BTreeMap<_, _> = [(1, 7), (2, 7)].into_iter().collect();
        assert_eq!(
            d.with_colors(&bad),
            Err(Error::ColorRepeatedWithinDisc { color: 7 })
        );
    }
}
