//! Canonical query testers and the single-pass streaming tester.

use alloc::vec::Vec;

use rand::Rng as _;

use crate::disc::forbidden::{contains_forbidden, ForbiddenFamily, Witness};
use crate::error::{Error, Result};
use crate::graph::{Subgraph, VertexId};
use crate::oracle::QueryOracle;
use crate::rbfs::random_bfs;
use crate::seed::rng_from_seed;
use crate::stream::{MultiCollector, StreamOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Random vertex and random neighbor queries.
    Neighbor,
    /// Additionally random edge queries.
    NeighborEdge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TesterParams {
    /// Base query complexity.
    pub q0: u32,
    /// Amplified exploration bound, used for both breadth and depth.
    pub q: u32,
    /// Number of uniformly sampled roots in the streaming tester.
    pub samples: usize,
    pub epsilon: f64,
    pub mode: Mode,
    /// Graphs with at most this many vertices are stored whole and decided
    /// exactly by the streaming tester. `None` always samples.
    pub store_whole_below: Option<u64>,
}

/// Default amplification factor between the base and the amplified bound.
pub const DEFAULT_AMPLIFICATION: u32 = 3;

impl TesterParams {
    /// Parameters with `q = amplification * q0`.
    pub fn amplified(q0: u32, amplification: u32, samples: usize, epsilon: f64, mode: Mode) -> Result<Self> {
        let q = q0
            .checked_mul(amplification)
            .ok_or(Error::InvalidParameter("amplified q overflows"))?;
        Self::with_q(q0, q, samples, epsilon, mode)
    }

    /// Parameters with an explicit amplified bound.
    pub fn with_q(q0: u32, q: u32, samples: usize, epsilon: f64, mode: Mode) -> Result<Self> {
        let p = TesterParams {
            q0,
            q,
            samples,
            epsilon,
            mode,
            store_whole_below: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q0 == 0 {
            return Err(Error::InvalidParameter("q0 must be at least 1"));
        }
        if self.q < self.q0 {
            return Err(Error::InvalidParameter("q must be at least q0"));
        }
        if self.samples == 0 {
            return Err(Error::InvalidParameter("sample size must be at least 1"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter("epsilon must lie in (0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    /// Oracle queries issued (query testers only).
    pub queries: u64,
    /// Words of working storage (streaming tester only).
    pub space_words: u64,
    /// Roots explored, in exploration order, repetitions included.
    pub roots: Vec<VertexId>,
    pub explored_vertices: usize,
    pub explored_edges: usize,
    /// The streaming tester stored the whole graph instead of sampling.
    pub whole_graph: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    /// Present exactly when the decision is `Reject`.
    pub witness: Option<Witness>,
    pub transcript: Transcript,
}

impl Verdict {
    fn decide(h: &Subgraph, fam: &ForbiddenFamily, mut transcript: Transcript) -> Result<Self> {
        transcript.explored_vertices = h.num_vertices();
        transcript.explored_edges = h.num_edges();
        let witness = contains_forbidden(h, fam)?;
        Ok(Verdict {
            decision: if witness.is_some() {
                Decision::Reject
            } else {
                Decision::Accept
            },
            witness,
            transcript,
        })
    }

    pub fn rejected(&self) -> bool {
        self.decision == Decision::Reject
    }
}

/// The canonical tester: explore from `q` uniform roots (plus the family's
/// anchors, each `q` times, and in edge mode the endpoints of `q` uniform
/// edges) with q-random BFS and reject iff the union of the explored discs
/// contains a member of `fam`.
pub fn canonical_test(oracle: &mut QueryOracle<'_>, p: &TesterParams, fam: &ForbiddenFamily) -> Result<Verdict> {
    p.validate()?;
    if matches!(fam, ForbiddenFamily::Degree { .. }) && p.mode == Mode::Neighbor {
        return Err(Error::InvalidParameter(
            "degree bounds need random edge queries in the query model",
        ));
    }
    let g = oracle.graph();
    let mut h = Subgraph::new();
    let mut roots = Vec::new();
    if g.num_vertices() > 0 {
        for _ in 0..p.q {
            roots.push(oracle.random_vertex()?);
        }
    }
    for a in fam.anchors() {
        if (a as usize) < g.num_vertices() {
            roots.extend(core::iter::repeat_n(a, p.q as usize));
        }
    }
    if p.mode == Mode::NeighborEdge && g.num_edges() > 0 {
        for _ in 0..p.q {
            let (a, b) = oracle.random_edge()?;
            h.add_edge(a, b);
            roots.push(a);
            roots.push(b);
        }
    }
    for &r in &roots {
        let disc = random_bfs(oracle, r, p.q)?;
        h.union_with(&disc.to_subgraph());
    }
    let transcript = Transcript {
        queries: oracle.query_count(),
        roots,
        ..Transcript::default()
    };
    Verdict::decide(&h, fam, transcript)
}

/// The streaming tester over one pass of `s`. Roots are sampled with
/// `root_seed`; the family's anchors get one collector each.
pub fn stream_test(
    s: &StreamOrder<'_>,
    p: &TesterParams,
    fam: &ForbiddenFamily,
    root_seed: u64,
) -> Result<Verdict> {
    p.validate()?;
    let g = s.graph();
    let n = g.num_vertices();
    if let Some(limit) = p.store_whole_below {
        if n as u64 <= limit {
            let mut h = Subgraph::new();
            for v in 0..n as VertexId {
                h.add_root(v);
            }
            for e in s.edges() {
                h.add_edge(e.0, e.1);
            }
            let transcript = Transcript {
                space_words: 2 * s.len() as u64 + n as u64 + 4,
                whole_graph: true,
                ..Transcript::default()
            };
            return Verdict::decide(&h, fam, transcript);
        }
    }
    if n == 0 {
        return Verdict::decide(&Subgraph::new(), fam, Transcript::default());
    }
    let mut rng = rng_from_seed(root_seed);
    let mut roots: Vec<VertexId> = (0..p.samples).map(|_| rng.random_range(0..n) as VertexId).collect();
    roots.extend(fam.anchors().into_iter().filter(|&a| (a as usize) < n));
    let mut mc = MultiCollector::reserved(&roots, p.q)?;
    for e in s.edges() {
        mc.offer(e);
    }
    let space_words = mc.space_words() + roots.len() as u64 + 4;
    let mut h = Subgraph::new();
    for disc in mc.finish() {
        h.union_with(&disc.to_subgraph());
    }
    let transcript = Transcript {
        space_words,
        roots,
        ..Transcript::default()
    };
    Verdict::decide(&h, fam, transcript)
}

/// Built-in property names accepted by [`builtin_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// s-t disconnectivity with an optional path length bound (default: q).
    StDisconnectivity { s: VertexId, t: VertexId, max_len: Option<u32> },
    PkFree { k: u32 },
    DBounded { d: u32 },
}

/// The forbidden family of a built-in property for exploration bound `q`.
pub fn builtin_family(b: Builtin, q: u32) -> Result<ForbiddenFamily> {
    match b {
        Builtin::StDisconnectivity { s, t, max_len } => {
            ForbiddenFamily::st_disconnectivity(s, t, max_len.unwrap_or(q))
        }
        Builtin::PkFree { k } => ForbiddenFamily::pk_free(k),
        Builtin::DBounded { d } => Ok(ForbiddenFamily::d_bounded(d)),
    }
}
