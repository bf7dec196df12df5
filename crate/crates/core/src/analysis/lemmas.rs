//! Empirical and exact checks of the collision and edge-sharing bounds.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng as _;

use super::reach::{exact_reach_vertex, v_alpha_from, estimate_reach_vertex, VAlphaReport};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::oracle::QueryOracle;
use crate::rbfs::random_bfs;
use crate::seed::{derive_seed, rng_from_seed};
use crate::stream::{degree_cap, multi_collect, random_order, vertex_cap};

/// One inequality `value <= bound` (with a statistical allowance where the
/// value is an estimate).
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub value: f64,
    pub bound: f64,
    /// Statistical slack added to the bound (three standard errors).
    pub slack: f64,
    /// `bound + slack - value`; negative when violated.
    pub margin: f64,
    /// The size precondition of the bound holds for this graph.
    pub applicable: bool,
    pub holds: bool,
}

impl LemmaCheck {
    fn new(name: &'static str, statement: &'static str, value: f64, bound: f64, slack: f64, applicable: bool) -> Self {
        let margin = bound + slack - value;
        LemmaCheck {
            name,
            statement,
            value,
            bound,
            slack,
            margin,
            applicable,
            holds: margin >= 0.0,
        }
    }

    /// Violations only count where the bound applies.
    pub fn passed(&self) -> bool {
        self.holds || !self.applicable
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub q: u32,
    pub alpha: f64,
    pub n: usize,
    pub trials: u64,
    pub v_alpha: VAlphaReport,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(LemmaCheck::passed)
    }
}

/// Trials needed so that every estimate has standard error below `alpha/10`.
pub fn required_trials(alpha: f64) -> u64 {
    let x = 5.0 / alpha;
    libm::ceil(x * x) as u64
}

fn mean_stderr(sum: f64, sum_sq: f64, k: u64) -> (f64, f64) {
    let k = k as f64;
    let mean = sum / k;
    let var = (sum_sq / k - mean * mean).max(0.0);
    (mean, libm::sqrt(var / k))
}

/// Monte Carlo verification of the bounds at threshold `alpha`:
/// (a) heavy set size, (b) degree of heavy vertices, (c) edge sharing of two
/// random BFS runs, (d) expected explored vertices, (e) edge sharing of two
/// stream collectors.
pub fn verify_lemmas(g: &Graph, q: u32, alpha: f64, trials: u64, seed: u64) -> Result<LemmaReport> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1]"));
    }
    let required = required_trials(alpha);
    if trials < required {
        return Err(Error::InsufficientTrials { trials, required });
    }
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let nf = n as f64;
    let c_q: f64 = (0..=q).map(|i| libm::pow(q as f64, i as f64)).sum();
    let q_2q = degree_cap(q) as f64;
    let c_prime = vertex_cap(q) as f64;
    let mut checks = Vec::new();

    let v_alpha = v_alpha_from(estimate_reach_vertex(g, q, trials, derive_seed(seed, 0))?, alpha);
    checks.push(LemmaCheck::new(
        "a",
        "|V_alpha| <= c_q / alpha",
        v_alpha.members.len() as f64,
        c_q / alpha,
        0.0,
        true,
    ));

    // The degree bound concerns non-isolated vertices only.
    let min_deg = v_alpha
        .members
        .iter()
        .map(|&(v, _)| g.neighbors(v).len())
        .filter(|&d| d > 0)
        .min();
    let degree_floor = nf * alpha / c_q;
    checks.push(LemmaCheck::new(
        "b",
        "deg(v) >= n alpha / c_q for every non-isolated v in V_alpha",
        degree_floor,
        min_deg.map_or(f64::INFINITY, |d| d as f64),
        0.0,
        nf >= q as f64 * c_q / (alpha * alpha),
    ));

    // (c) and (d) share the BFS runs.
    let mut o = QueryOracle::new(g, derive_seed(seed, 1));
    let (mut shared, mut explored, mut explored_sq) = (0u64, 0f64, 0f64);
    for _ in 0..trials {
        let u = o.random_vertex()?;
        let v = o.random_vertex()?;
        let hu = random_bfs(&mut o, u, q)?;
        let hv = random_bfs(&mut o, v, q)?;
        if hu.edges().intersection(hv.edges()).next().is_some() {
            shared += 1;
        }
        let x = hu.num_vertices() as f64;
        explored += x;
        explored_sq += x * x;
    }
    let p_share = shared as f64 / trials as f64;
    let se_share = libm::sqrt(p_share * (1.0 - p_share) / trials as f64);
    checks.push(LemmaCheck::new(
        "c",
        "Pr[two random BFS runs share an edge] <= 2 q c_q alpha",
        p_share,
        2.0 * q as f64 * c_q * alpha,
        3.0 * se_share,
        nf >= q as f64 * c_q / (alpha * alpha),
    ));
    let (mean_x, se_x) = mean_stderr(explored, explored_sq, trials);
    checks.push(LemmaCheck::new(
        "d",
        "E[explored vertices] <= c_q",
        mean_x,
        c_q,
        3.0 * se_x,
        true,
    ));

    let mut rng = rng_from_seed(derive_seed(seed, 2));
    let mut stream_shared = 0u64;
    if n > 0 {
        for t in 0..trials {
            let roots = [rng.random_range(0..n) as VertexId, rng.random_range(0..n) as VertexId];
            let order = random_order(g, derive_seed(seed, 3 + t));
            let discs = multi_collect(&order, &roots, q)?;
            let a: BTreeSet<&Edge> = discs[0].edges().iter().collect();
            if discs[1].edges().iter().any(|e| a.contains(e)) {
                stream_shared += 1;
            }
        }
    }
    let alpha_0 = alpha * q_2q * c_prime;
    let p_stream = stream_shared as f64 / trials as f64;
    let se_stream = libm::sqrt(p_stream * (1.0 - p_stream) / trials as f64);
    checks.push(LemmaCheck::new(
        "e",
        "Pr[two stream collectors share an edge] <= 2 alpha_0, alpha_0 = alpha q^(2q) c'_q",
        p_stream,
        2.0 * alpha_0,
        3.0 * se_stream,
        nf >= q_2q * c_prime / (alpha * alpha),
    ));

    Ok(LemmaReport {
        q,
        alpha,
        n,
        trials,
        v_alpha,
        checks,
    })
}

/// Exact evaluation of the heavy-set size bound and the heavy-vertex degree
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactLemmaReport {
    pub q: u32,
    pub alpha: BigRational,
    pub v_alpha: Vec<VertexId>,
    /// `c_q / alpha`
    pub size_bound: BigRational,
    pub size_holds: bool,
    /// `n alpha / c_q`
    pub degree_floor: BigRational,
    /// Non-isolated heavy vertices whose degree is below the floor.
    pub degree_violations: Vec<VertexId>,
}

impl ExactLemmaReport {
    pub fn holds(&self) -> bool {
        self.size_holds && self.degree_violations.is_empty()
    }
}

pub fn verify_lemmas_exact(g: &Graph, q: u32, alpha: &BigRational) -> Result<ExactLemmaReport> {
    let reach = exact_reach_vertex(g, q)?;
    let v_alpha: Vec<VertexId> = reach
        .iter()
        .filter(|(_, e)| e.exact.as_ref().is_some_and(|r| r >= alpha))
        .map(|(&v, _)| v)
        .collect();
    let c_q = BigRational::from_integer(BigInt::from(super::params::c_q(q)));
    let size_bound = &c_q / alpha;
    let size_holds = BigRational::from_integer(BigInt::from(v_alpha.len())) <= size_bound;
    let degree_floor = BigRational::from_integer(BigInt::from(g.num_vertices())) * alpha / &c_q;
    let degree_violations = v_alpha
        .iter()
        .copied()
        .filter(|&v| {
            let d = g.neighbors(v).len();
            d > 0 && BigRational::from_integer(BigInt::from(d)) < degree_floor
        })
        .collect();
    Ok(ExactLemmaReport {
        q,
        alpha: alpha.clone(),
        v_alpha,
        size_bound,
        size_holds,
        degree_floor,
        degree_violations,
    })
}

/// Mean number of explored vertices over `trials` BFS runs from uniform
/// starts, with its standard error.
pub fn explored_vertices(g: &Graph, q: u32, trials: u64, seed: u64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1"));
    }
    let mut o = QueryOracle::new(g, seed);
    let (mut s, mut s2) = (0f64, 0f64);
    for _ in 0..trials {
        let v = o.random_vertex()?;
        let x = random_bfs(&mut o, v, q)?.num_vertices() as f64;
        s += x;
        s2 += x * x;
    }
    Ok(mean_stderr(s, s2, trials))
}

/// Exact expected number of explored vertices from a uniform start.
pub fn exact_explored_vertices(g: &Graph, q: u32) -> Result<BigRational> {
    let n = g.num_vertices();
    let mut total = BigRational::from_integer(BigInt::from(0));
    for v in 0..n as VertexId {
        for (disc, p) in super::exact::exact_rbfs_oracle(g, v, q)? {
            total += p * BigRational::from_integer(BigInt::from(disc.num_vertices()));
        }
    }
    Ok(total / BigRational::from_integer(BigInt::from(n.max(1))))
}

/// Converts a float threshold to the nearest rational with denominator
/// `10^6`, for exact checks driven by user input.
pub fn rational_threshold(x: f64) -> Option<BigRational> {
    let scaled = libm::round(x * 1e6);
    scaled
        .to_i64()
        .map(|k| BigRational::new(BigInt::from(k), BigInt::from(1_000_000)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_graph_passes_vacuously() {
        let g = Graph::new(5, &[]).unwrap();
        let rep = verify_lemmas(&g, 2, 0.5, 200, 1).unwrap();
        assert!(rep.v_alpha.members.is_empty());
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn star_exact_example() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let alpha = BigRational::new(9.into(), 10.into());
        let rep = verify_lemmas_exact(&g, 1, &alpha).unwrap();
        assert_eq!(rep.v_alpha, [0]);
        assert!(rep.holds());
        assert_eq!(rep.degree_floor, BigRational::new(9.into(), 5.into()));
    }

    #[test]
    fn isolated_heavy_vertex_is_exempt_from_degree_bound() {
        let g = Graph::new(1, &[]).unwrap();
        let rep = verify_lemmas_exact(&g, 1, &BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(rep.v_alpha, [0]);
        assert!(rep.holds());
    }

    #[test]
    fn too_few_trials() {
        let g = Graph::new(4, &[(0, 1)]).unwrap();
        assert!(matches!(
            verify_lemmas(&g, 1, 0.5, 10, 0),
            Err(Error::InsufficientTrials { required: 100, .. })
        ));
    }

    #[test]
    fn p3_expected_explored_is_two() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_explored_vertices(&g, 1).unwrap(), BigRational::from_integer(2.into()));
    }
}
