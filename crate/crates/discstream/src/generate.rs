//! Deterministic graph generators.
//!
//! Specs are colon-separated: `path:n`, `cycle:n`, `star:n`, `clique:n`,
//! `empty:n`, `er:n:p`, and `planted:BASE+PATTERN` where both halves are
//! specs themselves, e.g. `planted:star:10+path:6`.

use std::fmt;
use std::str::FromStr;

use discstream_core::seed::{derive_seed, rng_from_seed};
use discstream_core::{Graph, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown generator `{0}`")]
    UnknownKind(String),
    #[error("malformed generator spec `{0}`")]
    Malformed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Empty(usize),
    Path(usize),
    Cycle(usize),
    /// `n` vertices: center 0 and `n - 1` leaves.
    Star(usize),
    Clique(usize),
    Er(usize, f64),
    Planted(Box<GraphSpec>, Box<GraphSpec>),
}

impl FromStr for GraphSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let malformed = || GenError::Malformed(s.to_string());
        if let Some(rest) = s.strip_prefix("planted:") {
            let (base, pattern) = rest.split_once('+').ok_or_else(malformed)?;
            return Ok(GraphSpec::Planted(Box::new(base.parse()?), Box::new(pattern.parse()?)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let n = || -> Result<usize, GenError> { parts.get(1).and_then(|x| x.parse().ok()).ok_or_else(malformed) };
        let spec = match (parts[0], parts.len()) {
            ("empty", 2) => GraphSpec::Empty(n()?),
            ("path", 2) => GraphSpec::Path(n()?),
            ("cycle", 2) => GraphSpec::Cycle(n()?),
            ("star", 2) => GraphSpec::Star(n()?),
            ("clique", 2) => GraphSpec::Clique(n()?),
            ("er", 3) => GraphSpec::Er(n()?, parts[2].parse().map_err(|_| malformed())?),
            ("empty" | "path" | "cycle" | "star" | "clique" | "er", _) => return Err(malformed()),
            (other, _) => return Err(GenError::UnknownKind(other.to_string())),
        };
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Empty(n) => write!(f, "empty:{n}"),
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::Star(n) => write!(f, "star:{n}"),
            GraphSpec::Clique(n) => write!(f, "clique:{n}"),
            GraphSpec::Er(n, p) => write!(f, "er:{n}:{p}"),
            GraphSpec::Planted(b, p) => write!(f, "planted:{b}+{p}"),
        }
    }
}

fn build(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph, GenError> {
    if n > VertexId::MAX as usize {
        return Err(GenError::InvalidParameter(format!("{n} vertices exceed the id range")));
    }
    Graph::new(n, edges).map_err(|e| GenError::InvalidParameter(e.to_string()))
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as VertexId).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).expect("path edges are valid")
}

pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as VertexId).map(|i| (0, i)).collect();
    Graph::new(n, &edges).expect("star edges are valid")
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter("a cycle needs at least 3 vertices".into()));
    }
    let mut edges: Vec<_> = (1..n as VertexId).map(|i| (i - 1, i)).collect();
    edges.push((n as VertexId - 1, 0));
    build(n, &edges)
}

pub fn clique(n: usize) -> Graph {
    let edges: Vec<_> = (0..n as VertexId)
        .flat_map(|a| (a + 1..n as VertexId).map(move |b| (a, b)))
        .collect();
    Graph::new(n, &edges).expect("clique edges are valid")
}

/// G(n, p) with geometric skipping over the pair sequence, so the cost is
/// linear in `n + m` rather than quadratic.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidParameter(format!("p = {p} is not in [0, 1]")));
    }
    let mut edges = Vec::new();
    if p > 0.0 && n > 1 {
        let mut rng = rng_from_seed(seed);
        let log_q = (1.0 - p).ln();
        let (mut v, mut w): (i64, i64) = (1, -1);
        let n = n as i64;
        while v < n {
            let skip = if p >= 1.0 {
                0
            } else {
                let r: f64 = 1.0 - rng.random::<f64>();
                (r.ln() / log_q).floor() as i64
            };
            w += 1 + skip;
            while w >= v && v < n {
                w -= v;
                v += 1;
            }
            if v < n {
                edges.push((w as VertexId, v as VertexId));
            }
        }
    }
    build(n, &edges)
}

/// Copies `pattern` onto distinct random vertices of `base`. Errors if the
/// pattern is larger than the base.
pub fn plant(base: &Graph, pattern: &Graph, seed: u64) -> Result<Graph, GenError> {
    let n = base.num_vertices();
    let k = pattern.num_vertices();
    if k > n {
        return Err(GenError::InvalidParameter(format!(
            "pattern has {k} vertices, base only {n}"
        )));
    }
    let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
    let mut rng = rng_from_seed(seed);
    ids.partial_shuffle(&mut rng, k);
    let mut edges: Vec<_> = base.edges().iter().map(|e| (e.0, e.1)).collect();
    edges.extend(pattern.edges().iter().map(|e| (ids[e.0 as usize], ids[e.1 as usize])));
    build(n, &edges)
}

pub fn generate(spec: &GraphSpec, seed: u64) -> Result<Graph, GenError> {
    Ok(match spec {
        GraphSpec::Empty(n) => build(*n, &[])?,
        GraphSpec::Path(n) => path(*n),
        GraphSpec::Cycle(n) => cycle(*n)?,
        GraphSpec::Star(n) => star(*n),
        GraphSpec::Clique(n) => clique(*n),
        GraphSpec::Er(n, p) => erdos_renyi(*n, *p, seed)?,
        GraphSpec::Planted(b, p) => {
            let base = generate(b, derive_seed(seed, 0))?;
            let pattern = generate(p, derive_seed(seed, 1))?;
            plant(&base, &pattern, derive_seed(seed, 2))?
        }
    })
}
