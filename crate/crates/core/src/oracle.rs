//! Query access to a graph in the random neighbor and random neighbor/edge
//! models.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::seed::{rng_from_seed, Rng};

/// A seeded oracle over a fixed graph that counts every query it answers.
///
/// Single-threaded by construction; run one oracle per worker.
#[derive(Debug, Clone)]
pub struct QueryOracle<'g> {
    graph: &'g Graph,
    rng: Rng,
    query_count: u64,
}

impl<'g> QueryOracle<'g> {
    pub fn new(graph: &'g Graph, seed: u64) -> Self {
        QueryOracle {
            graph,
            rng: rng_from_seed(seed),
            query_count: 0,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    /// A vertex chosen uniformly from `[0, n)`.
    pub fn random_vertex(&mut self) -> Result<VertexId> {
        self.query_count += 1;
        let n = self.graph.num_vertices();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.rng.random_range(0..n) as VertexId)
    }

    /// A neighbor of `v` chosen uniformly, or `None` when `v` is isolated.
    pub fn random_neighbor(&mut self, v: VertexId) -> Result<Option<VertexId>> {
        self.graph.check_vertex(v)?;
        self.query_count += 1;
        let nbrs = self.graph.neighbors(v);
        if nbrs.is_empty() {
            return Ok(None);
        }
        Ok(Some(nbrs[self.rng.random_range(0..nbrs.len())]))
    }

    /// An edge chosen uniformly, returned with a uniformly random endpoint
    /// order.
    pub fn random_edge(&mut self) -> Result<(VertexId, VertexId)> {
        self.query_count += 1;
        let m = self.graph.num_edges();
        if m == 0 {
            return Err(Error::NoEdges);
        }
        let e = self.graph.edge(self.rng.random_range(0..m));
        if self.rng.random_bool(0.5) {
            Ok((e.lo(), e.hi()))
        } else {
            Ok((e.hi(), e.lo()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_always_returned() {
        let g = Graph::new(1, &[]).unwrap();
        let mut o = QueryOracle::new(&g, 1);
        for _ in 0..100 {
            assert_eq!(o.random_vertex(), Ok(0));
        }
        assert_eq!(o.query_count(), 100);
    }

    #[test]
    fn empty_graph_errors() {
        let g = Graph::new(0, &[]).unwrap();
        let mut o = QueryOracle::new(&g, 1);
        assert_eq!(o.random_vertex(), Err(Error::EmptyGraph));
        assert_eq!(o.random_edge(), Err(Error::NoEdges));
    }

    #[test]
    fn leaf_has_unique_neighbor_and_isolated_has_none() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut o = QueryOracle::new(&g, 9);
        for _ in 0..50 {
            assert_eq!(o.random_neighbor(2), Ok(Some(0)));
        }
        assert_eq!(o.random_neighbor(4), Ok(None));
        assert_eq!(o.query_count(), 51);
        assert!(o.random_neighbor(9).is_err());
    }

    #[test]
    fn single_edge_graph() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let mut o = QueryOracle::new(&g, 3);
        let mut flipped = 0;
        for _ in 0..200 {
            let (a, b) = o.random_edge().unwrap();
            assert_eq!(crate::graph::Edge::new(a, b), crate::graph::Edge(0, 1));
            if a == 1 {
                flipped += 1;
            }
        }
        assert!(flipped > 50 && flipped < 150);
    }

    #[test]
    fn equal_seeds_give_equal_transcripts() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 3)]).unwrap();
        let run = |seed| {
            let mut o = QueryOracle::new(&g, seed);
            let mut t = alloc::vec::Vec::new();
            for i in 0..30u32 {
                t.push(o.random_vertex().unwrap());
                t.push(o.random_neighbor(i % 6).unwrap().unwrap());
                let (a, b) = o.random_edge().unwrap();
                t.push(a);
                t.push(b);
            }
            t
        };
        assert_eq!(run(42), run(42));
        assert_ne!(run(42), run(43));
    }
}
