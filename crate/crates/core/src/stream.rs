//! Random-order edge streams and the bounded disc collector.

use alloc::vec::Vec;

use hashbrown::HashMap;
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::rbfs::RootedDisc;
use crate::seed::rng_from_seed;

/// A permutation of a graph's edges.
#[derive(Debug, Clone)]
pub struct StreamOrder<'g> {
    graph: &'g Graph,
    order: Vec<u32>,
    seed: Option<u64>,
}

impl<'g> StreamOrder<'g> {
    /// Uniformly random order, deterministic per seed.
    pub fn random(graph: &'g Graph, seed: u64) -> Self {
        let mut order: Vec<u32> = (0..graph.num_edges() as u32).collect();
        order.shuffle(&mut rng_from_seed(seed));
        StreamOrder {
            graph,
            order,
            seed: Some(seed),
        }
    }

    /// An explicit order given as edge indices of `graph`.
    pub fn from_indices(graph: &'g Graph, order: Vec<u32>) -> Result<Self> {
        let m = graph.num_edges();
        let mut seen = alloc::vec![false; m];
        if order.len() != m {
            return Err(Error::InvalidParameter("stream order must list every edge once"));
        }
        for &i in &order {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::InvalidParameter("stream order must list every edge once")),
            }
        }
        Ok(StreamOrder {
            graph,
            order,
            seed: None,
        })
    }

    /// An explicit order given as the edges themselves.
    pub fn from_edges(graph: &'g Graph, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let order = edges
            .iter()
            .map(|&(u, v)| {
                graph
                    .edge_index(Edge::new(u, v))
                    .map(|i| i as u32)
                    .ok_or(Error::InvalidParameter("stream edge not in graph"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(graph, order)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.order.iter().map(|&i| self.graph.edge(i as usize))
    }
}

/// Same as [`StreamOrder::random`].
pub fn random_order(graph: &Graph, seed: u64) -> StreamOrder<'_> {
    StreamOrder::random(graph, seed)
}

/// `q^(2q)`, saturating at `u64::MAX`.
pub fn degree_cap(q: u32) -> u64 {
    (q as u64).checked_pow(2 * q).unwrap_or(u64::MAX)
}

/// `sum_{i=0}^{q+1} q^(2qi)`, saturating at `u64::MAX`.
pub fn vertex_cap(q: u32) -> u64 {
    let step = degree_cap(q);
    let mut term = 1u64;
    let mut sum = 1u64;
    for _ in 0..=q {
        term = term.saturating_mul(step);
        sum = sum.saturating_add(term);
    }
    sum
}

/// Worst-case storage is reserved up front when it stays below this many
/// words, so that memory use does not depend on the input graph.
pub const RESERVE_LIMIT_WORDS: u64 = 1 << 22;

const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Slot {
    label: u32,
    degree: u64,
}

/// Collector state for one root: labels and collected-degree counters for
/// the collected vertices only, plus the collected edges.
#[derive(Debug, Clone)]
pub struct Collector {
    root: VertexId,
    q: u32,
    cap: u64,
    state: HashMap<VertexId, Slot>,
    edges: Vec<Edge>,
}

impl Collector {
    pub fn new(root: VertexId, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("q must be at least 1"));
        }
        let mut state = HashMap::new();
        state.insert(root, Slot { label: 0, degree: 0 });
        Ok(Collector {
            root,
            q,
            cap: degree_cap(q),
            state,
            edges: Vec::new(),
        })
    }

    /// Like [`Collector::new`] but reserves the worst-case vertex and edge
    /// storage when it is small enough (see [`RESERVE_LIMIT_WORDS`]).
    pub fn reserved(root: VertexId, q: u32) -> Result<Self> {
        let mut c = Self::new(root, q)?;
        let vertices = vertex_cap(q);
        let edges = vertices.saturating_mul(c.cap);
        let words = vertices.saturating_mul(3).saturating_add(edges.saturating_mul(2));
        if words <= RESERVE_LIMIT_WORDS {
            c.state.reserve(vertices as usize);
            c.edges.reserve_exact(edges as usize);
        }
        Ok(c)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    fn open(&self, x: VertexId) -> bool {
        self.state
            .get(&x)
            .is_some_and(|s| s.label < self.q && s.degree < self.cap)
    }

    /// Offers the next stream edge; returns whether it was collected.
    pub fn offer(&mut self, e: Edge) -> bool {
        let (u, w) = (e.0, e.1);
        if !self.open(u) && !self.open(w) {
            return false;
        }
        let fresh = Slot {
            label: UNREACHED,
            degree: 0,
        };
        let lu = {
            let s = self.state.entry(u).or_insert(fresh);
            s.degree += 1;
            s.label
        };
        let lw = {
            let s = self.state.entry(w).or_insert(fresh);
            s.degree += 1;
            s.label
        };
        let new_lu = lu.min(lw.saturating_add(1));
        let new_lw = lw.min(new_lu.saturating_add(1));
        self.state.get_mut(&u).expect("inserted").label = new_lu;
        self.state.get_mut(&w).expect("inserted").label = new_lw;
        self.edges.push(e);
        true
    }

    pub fn num_collected_vertices(&self) -> usize {
        self.state.len()
    }

    pub fn max_collected_degree(&self) -> u64 {
        self.state.values().map(|s| s.degree).max().unwrap_or(0)
    }

    /// Largest stream label among collected vertices.
    pub fn max_label(&self) -> u32 {
        self.state.values().map(|s| s.label).max().unwrap_or(0)
    }

    /// Storage held by this collector in machine words: three per vertex
    /// slot (id, label, counter), two per edge slot, four of bookkeeping.
    pub fn space_words(&self) -> u64 {
        3 * self.state.capacity() as u64 + 2 * self.edges.capacity() as u64 + 4
    }

    pub fn finish(self) -> RootedDisc {
        RootedDisc::from_edges(self.root, self.edges.into_iter().collect())
    }
}

/// Runs one collector per root over a single pass of the stream. Collectors
/// never interact; duplicate roots get separate collectors.
#[derive(Debug, Clone)]
pub struct MultiCollector {
    collectors: Vec<Collector>,
}

impl MultiCollector {
    pub fn new(roots: &[VertexId], q: u32) -> Result<Self> {
        Ok(MultiCollector {
            collectors: roots
                .iter()
                .map(|&r| Collector::new(r, q))
                .collect::<Result<_>>()?,
        })
    }

    /// Collectors with worst-case storage reserved up front.
    pub fn reserved(roots: &[VertexId], q: u32) -> Result<Self> {
        Ok(MultiCollector {
            collectors: roots
                .iter()
                .map(|&r| Collector::reserved(r, q))
                .collect::<Result<_>>()?,
        })
    }

    pub fn offer(&mut self, e: Edge) {
        for c in &mut self.collectors {
            c.offer(e);
        }
    }

    pub fn collectors(&self) -> &[Collector] {
        &self.collectors
    }

    pub fn space_words(&self) -> u64 {
        self.collectors.iter().map(Collector::space_words).sum::<u64>() + 2
    }

    pub fn finish(self) -> Vec<RootedDisc> {
        self.collectors.into_iter().map(Collector::finish).collect()
    }
}

/// Collects a q-bounded disc around `v` in one pass over `s`.
pub fn stream_collect(s: &StreamOrder<'_>, v: VertexId, q: u32) -> Result<RootedDisc> {
    s.graph().check_vertex(v)?;
    let mut c = Collector::new(v, q)?;
    for e in s.edges() {
        c.offer(e);
    }
    Ok(c.finish())
}

/// One disc per entry of `roots`, in the same order, from a single pass.
pub fn multi_collect(s: &StreamOrder<'_>, roots: &[VertexId], q: u32) -> Result<Vec<RootedDisc>> {
    for &r in roots {
        s.graph().check_vertex(r)?;
    }
    if roots.is_empty() {
        return Err(Error::InvalidParameter("at least one root is required"));
    }
    let mut mc = MultiCollector::new(roots, q)?;
    for e in s.edges() {
        mc.offer(e);
    }
    Ok(mc.finish())
}
