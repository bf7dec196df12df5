//! Reach probabilities, heavy vertex sets and the stream-versus-BFS support
//! comparison.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::exact::{containment_probability, exact_rbfs_oracle, exact_stream_oracle};
use crate::disc::canon::{canonical_code, CanonicalCode};
use crate::disc::forbidden::find_embedding;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracle::QueryOracle;
use crate::rbfs::{random_bfs, RootedDisc};
use crate::seed::{derive_seed, rng_from_seed};
use crate::stream::{multi_collect, random_order};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    MonteCarlo,
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReachEstimate {
    pub value: f64,
    /// Set for exact estimates.
    pub exact: Option<BigRational>,
    pub trials: u64,
    pub stderr: f64,
    pub method: Method,
}

impl ReachEstimate {
    fn monte_carlo(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        ReachEstimate {
            value: p,
            exact: None,
            trials,
            stderr: libm::sqrt(p * (1.0 - p) / trials as f64),
            method: Method::MonteCarlo,
        }
    }

    fn exact(r: BigRational) -> Self {
        ReachEstimate {
            value: r.to_f64().unwrap_or(f64::NAN),
            exact: Some(r),
            trials: 0,
            stderr: 0.0,
            method: Method::Exact,
        }
    }
}

/// Monte Carlo reach probability of every vertex: the fraction of q-random
/// BFS runs from a uniform start whose disc contains the vertex.
pub fn estimate_reach_vertex(g: &Graph, q: u32, trials: u64, seed: u64) -> Result<BTreeMap<VertexId, ReachEstimate>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1"));
    }
    let mut hits = alloc::vec![0u64; g.num_vertices()];
    let mut o = QueryOracle::new(g, seed);
    for _ in 0..trials {
        let start = o.random_vertex()?;
        for v in random_bfs(&mut o, start, q)?.vertices() {
            hits[v as usize] += 1;
        }
    }
    Ok(hits
        .into_iter()
        .enumerate()
        .map(|(v, h)| (v as VertexId, ReachEstimate::monte_carlo(h, trials)))
        .collect())
}

/// Exact reach probability of every vertex.
pub fn exact_reach_vertex(g: &Graph, q: u32) -> Result<BTreeMap<VertexId, ReachEstimate>> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut r = alloc::vec![BigRational::zero(); n];
    let share = BigRational::new(BigInt::from(1), BigInt::from(n));
    for start in 0..n as VertexId {
        for (disc, p) in exact_rbfs_oracle(g, start, q)? {
            for v in disc.vertices() {
                r[v as usize] += &share * &p;
            }
        }
    }
    Ok(r.into_iter()
        .enumerate()
        .map(|(v, x)| (v as VertexId, ReachEstimate::exact(x)))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct VAlphaReport {
    pub alpha: f64,
    /// Members with their margin `r(v) - alpha`.
    pub members: Vec<(VertexId, f64)>,
    pub estimates: BTreeMap<VertexId, ReachEstimate>,
}

/// Vertices whose reach estimate is at least `alpha`.
pub fn v_alpha_from(estimates: BTreeMap<VertexId, ReachEstimate>, alpha: f64) -> VAlphaReport {
    let members = estimates
        .iter()
        .filter(|(_, e)| e.value >= alpha)
        .map(|(&v, e)| (v, e.value - alpha))
        .collect();
    VAlphaReport {
        alpha,
        members,
        estimates,
    }
}

/// Heavy vertices `{v : r(v) >= alpha}` from a Monte Carlo estimate.
pub fn extract_v_alpha(g: &Graph, q: u32, alpha: f64, trials: u64, seed: u64) -> Result<VAlphaReport> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter("alpha must be positive"));
    }
    Ok(v_alpha_from(estimate_reach_vertex(g, q, trials, seed)?, alpha))
}

/// Exact heavy vertex set for a rational threshold.
pub fn exact_v_alpha(g: &Graph, q: u32, alpha: &BigRational) -> Result<Vec<VertexId>> {
    Ok(exact_reach_vertex(g, q)?
        .into_iter()
        .filter(|(_, e)| e.exact.as_ref().is_some_and(|r| r >= alpha))
        .map(|(v, _)| v)
        .collect())
}

/// Exact reach of every disc type from `v`, summing the members of each
/// type.
pub fn exact_reach_types(g: &Graph, v: VertexId, q: u32) -> Result<BTreeMap<CanonicalCode, BigRational>> {
    super::exact::by_type(&exact_rbfs_oracle(g, v, q)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootRatio {
    pub root: VertexId,
    pub discs_checked: usize,
    /// Minimum of `Pr_stream[output contains D] / reach(v, D)`.
    pub min_ratio: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CstReport {
    pub q: u32,
    pub per_root: Vec<RootRatio>,
    pub min_ratio: Option<BigRational>,
    /// Every disc reached by the BFS is contained in a stream output with
    /// positive probability.
    pub support_contained: bool,
}

/// Exact comparison of the stream collector against the random BFS for
/// every root and every disc in the BFS support.
pub fn verify_stream_lower_bound(g: &Graph, q: u32) -> Result<CstReport> {
    let mut per_root = Vec::new();
    let mut min_ratio: Option<BigRational> = None;
    for v in 0..g.num_vertices() as VertexId {
        let bfs = exact_rbfs_oracle(g, v, q)?;
        let stream = exact_stream_oracle(g, v, q)?;
        let mut root_min: Option<BigRational> = None;
        for (disc, p) in &bfs {
            let r = containment_probability(&stream, disc) / p;
            if root_min.as_ref().is_none_or(|m| r < *m) {
                root_min = Some(r);
            }
        }
        let root_min = root_min.expect("support is never empty");
        if min_ratio.as_ref().is_none_or(|m| root_min < *m) {
            min_ratio = Some(root_min.clone());
        }
        per_root.push(RootRatio {
            root: v,
            discs_checked: bfs.len(),
            min_ratio: root_min,
        });
    }
    let support_contained = per_root.iter().all(|r| r.min_ratio > BigRational::zero());
    Ok(CstReport {
        q,
        per_root,
        min_ratio,
        support_contained,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeCheck {
    pub code: CanonicalCode,
    /// Monte Carlo estimate of `reach_G(type)`.
    pub reach: f64,
    /// Mean over repetitions of `X / (s * cst)`.
    pub mean_q: f64,
    /// Fraction of repetitions with `X / (s * cst) >= reach - delta`.
    pub success_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McCstReport {
    pub q: u32,
    pub samples: usize,
    pub delta: f64,
    pub cst: f64,
    pub repetitions: u64,
    pub types: Vec<TypeCheck>,
    /// Fraction of repetitions in which every type satisfied the bound.
    pub all_types_rate: f64,
}

/// Rooted containment up to isomorphism: the pattern root must land on the
/// host root, the only root of the host.
fn contains_type(host: &RootedDisc, pattern: &RootedDisc) -> Result<bool> {
    if pattern.num_edges() > host.num_edges() {
        return Ok(false);
    }
    Ok(find_embedding(&pattern.to_subgraph(), &host.to_subgraph())?.is_some())
}

/// Monte Carlo check of the sampled stream lower bound. Reach of each disc
/// type is estimated from `reach_trials` BFS runs; then, `repetitions`
/// times, `s` roots are sampled, one random order is collected and the
/// fraction of roots whose collected disc contains the type is compared with
/// `reach - delta`.
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_stream_lower_bound(
    g: &Graph,
    q: u32,
    samples: usize,
    delta: f64,
    cst: f64,
    reach_trials: u64,
    repetitions: u64,
    seed: u64,
) -> Result<McCstReport> {
    if samples == 0 || reach_trials == 0 || repetitions == 0 {
        return Err(Error::InvalidParameter("sample and trial counts must be positive"));
    }
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut reach: BTreeMap<CanonicalCode, (RootedDisc, u64)> = BTreeMap::new();
    let mut o = QueryOracle::new(g, derive_seed(seed, 0));
    for _ in 0..reach_trials {
        let start = o.random_vertex()?;
        let disc = random_bfs(&mut o, start, q)?;
        reach.entry(canonical_code(&disc)?).or_insert((disc, 0)).1 += 1;
    }
    let types: Vec<(CanonicalCode, RootedDisc, f64)> = reach
        .into_iter()
        .map(|(c, (d, k))| (c, d, k as f64 / reach_trials as f64))
        .collect();
    let mut successes = alloc::vec![0u64; types.len()];
    let mut q_sums = alloc::vec![0f64; types.len()];
    let mut all_ok = 0u64;
    for rep in 0..repetitions {
        let mut rng = rng_from_seed(derive_seed(seed, 2 * rep + 1));
        let roots: Vec<VertexId> = (0..samples)
            .map(|_| rand::Rng::random_range(&mut rng, 0..n) as VertexId)
            .collect();
        let order = random_order(g, derive_seed(seed, 2 * rep + 2));
        let discs = multi_collect(&order, &roots, q)?;
        let mut every = true;
        for (i, (_, pattern, r)) in types.iter().enumerate() {
            let mut x = 0usize;
            for d in &discs {
                if contains_type(d, pattern)? {
                    x += 1;
                }
            }
            let qd = x as f64 / (samples as f64 * cst);
            q_sums[i] += qd;
            if qd >= r - delta {
                successes[i] += 1;
            } else {
                every = false;
            }
        }
        if every {
            all_ok += 1;
        }
    }
    Ok(McCstReport {
        q,
        samples,
        delta,
        cst,
        repetitions,
        types: types
            .into_iter()
            .enumerate()
            .map(|(i, (code, _, r))| TypeCheck {
                code,
                reach: r,
                mean_q: q_sums[i] / repetitions as f64,
                success_rate: successes[i] as f64 / repetitions as f64,
            })
            .collect(),
        all_types_rate: all_ok as f64 / repetitions as f64,
    })
}
