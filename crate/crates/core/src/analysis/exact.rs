//! Exact output distributions of the random BFS and the stream collector,
//! by exhaustive enumeration with rational arithmetic.
//!
//! Both enumerators are written independently of the sampling code they
//! check.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::disc::canon::{canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::rbfs::RootedDisc;

/// Exact probability of every disc in the support.
pub type Distribution = BTreeMap<RootedDisc, BigRational>;

/// Branch budget of [`exact_rbfs_oracle`].
pub const BRANCH_LIMIT: u64 = 1_000_000;

/// Largest edge count accepted by [`exact_stream_oracle`].
pub const STREAM_EDGE_LIMIT: usize = 8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct BfsState {
    queue: VecDeque<VertexId>,
    label: BTreeMap<VertexId, u32>,
    edges: BTreeSet<Edge>,
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Distribution of the q-random BFS output from `v`. Every popped vertex
/// branches over all `deg^q` ordered draw tuples; identical intermediate
/// states are merged. Fails once more than [`BRANCH_LIMIT`] tuples would be
/// enumerated.
pub fn exact_rbfs_oracle(g: &Graph, v: VertexId, q: u32) -> Result<Distribution> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1"));
    }
    g.check_vertex(v)?;
    let mut frontier: BTreeMap<BfsState, BigRational> = BTreeMap::new();
    frontier.insert(
        BfsState {
            queue: VecDeque::from([v]),
            label: BTreeMap::from([(v, 0)]),
            edges: BTreeSet::new(),
        },
        BigRational::one(),
    );
    let mut out = Distribution::new();
    let mut branches = 0u64;
    while let Some((mut state, p)) = frontier.pop_first() {
        let Some(u) = state.queue.pop_front() else {
            let disc = RootedDisc::from_edges(v, state.edges);
            *out.entry(disc).or_insert_with(BigRational::zero) += p;
            continue;
        };
        let nbrs = g.neighbors(u);
        if nbrs.is_empty() {
            *frontier.entry(state).or_insert_with(BigRational::zero) += p;
            continue;
        }
        let deg = nbrs.len() as u64;
        let tuples = deg
            .checked_pow(q)
            .filter(|&t| t <= BRANCH_LIMIT)
            .ok_or(Error::StateSpaceTooLarge { limit: BRANCH_LIMIT })?;
        branches += tuples;
        if branches > BRANCH_LIMIT {
            return Err(Error::StateSpaceTooLarge { limit: BRANCH_LIMIT });
        }
        let lu = state.label[&u];
        let mut outcomes: BTreeMap<BfsState, u64> = BTreeMap::new();
        for mut code in 0..tuples {
            let mut next = state.clone();
            for _ in 0..q {
                let s = nbrs[(code % deg) as usize];
                code /= deg;
                next.edges.insert(Edge::new(u, s));
                if lu < q - 1 && !next.label.contains_key(&s) {
                    next.label.insert(s, lu + 1);
                    next.queue.push_back(s);
                }
            }
            *outcomes.entry(next).or_default() += 1;
        }
        for (next, count) in outcomes {
            *frontier.entry(next).or_insert_with(BigRational::zero) += &p * ratio(count, tuples);
        }
    }
    Ok(out)
}

/// Array-based reference collector over one fixed order.
fn collect_reference(g: &Graph, order: &[usize], v: VertexId, q: u32) -> RootedDisc {
    let n = g.num_vertices();
    let cap = (q as u64).checked_pow(2 * q).unwrap_or(u64::MAX);
    let inf = u64::MAX;
    let mut in_u = alloc::vec![false; n];
    let mut level = alloc::vec![inf; n];
    let mut deg = alloc::vec![0u64; n];
    in_u[v as usize] = true;
    level[v as usize] = 0;
    let mut kept = BTreeSet::new();
    for &i in order {
        let e = g.edge(i);
        let (a, b) = (e.0 as usize, e.1 as usize);
        let open = |x: usize| in_u[x] && level[x] < q as u64 && deg[x] < cap;
        if !(open(a) || open(b)) {
            continue;
        }
        in_u[a] = true;
        in_u[b] = true;
        deg[a] += 1;
        deg[b] += 1;
        level[a] = level[a].min(level[b].saturating_add(1));
        level[b] = level[b].min(level[a].saturating_add(1));
        kept.insert(e);
    }
    RootedDisc::from_edges(v, kept)
}

/// Distribution of the stream collector output from `v` over all `m!`
/// edge orders.
pub fn exact_stream_oracle(g: &Graph, v: VertexId, q: u32) -> Result<Distribution> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1"));
    }
    g.check_vertex(v)?;
    let m = g.num_edges();
    if m > STREAM_EDGE_LIMIT {
        return Err(Error::TooManyEdges {
            m,
            max: STREAM_EDGE_LIMIT,
        });
    }
    let mut counts: BTreeMap<RootedDisc, u64> = BTreeMap::new();
    let mut total = 0u64;
    let mut order: Vec<usize> = (0..m).collect();
    loop {
        *counts.entry(collect_reference(g, &order, v, q)).or_default() += 1;
        total += 1;
        if !next_permutation(&mut order) {
            break;
        }
    }
    Ok(counts
        .into_iter()
        .map(|(d, c)| (d, ratio(c, total)))
        .collect())
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).expect("successor exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Sum of all probabilities; exactly one for a valid distribution.
pub fn total_mass(d: &Distribution) -> BigRational {
    d.values().fold(BigRational::zero(), |acc, p| acc + p)
}

/// Probability that the output contains `target` (same root, vertex and edge
/// superset).
pub fn containment_probability(d: &Distribution, target: &RootedDisc) -> BigRational {
    d.iter()
        .filter(|(disc, _)| disc.contains(target))
        .fold(BigRational::zero(), |acc, (_, p)| acc + p)
}

/// Groups a distribution by disc type.
pub fn by_type(d: &Distribution) -> Result<BTreeMap<CanonicalCode, BigRational>> {
    let mut out = BTreeMap::new();
    for (disc, p) in d {
        *out.entry(canonical_code(disc)?).or_insert_with(BigRational::zero) += p;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_disc(root: VertexId, a: VertexId, b: VertexId) -> RootedDisc {
        RootedDisc::from_edges(root, [Edge::new(a, b)].into_iter().collect())
    }

    #[test]
    fn rbfs_examples() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let d = exact_rbfs_oracle(&p3, 1, 1).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&edge_disc(1, 0, 1)], ratio(1, 2));
        assert_eq!(d[&edge_disc(1, 1, 2)], ratio(1, 2));

        let iso = Graph::new(1, &[]).unwrap();
        let d = exact_rbfs_oracle(&iso, 0, 3).unwrap();
        assert_eq!(d[&RootedDisc::singleton(0)], BigRational::one());

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let d = exact_rbfs_oracle(&star, 0, 1).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.values().all(|p| *p == ratio(1, 3)));
    }

    #[test]
    fn stream_examples() {
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(exact_stream_oracle(&e, 0, 1).unwrap()[&edge_disc(0, 0, 1)], BigRational::one());

        let tri = Graph::new(4, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let d = exact_stream_oracle(&tri, 1, 1).unwrap();
        assert_eq!(d[&edge_disc(1, 1, 2)], ratio(1, 2));
        assert_eq!(d[&edge_disc(1, 1, 3)], ratio(1, 2));

        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = exact_stream_oracle(&p4, 0, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&edge_disc(0, 0, 1)], BigRational::one());
    }

    #[test]
    fn guards() {
        let k5: Vec<_> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let g = Graph::new(5, &k5).unwrap();
        assert!(matches!(exact_stream_oracle(&g, 0, 1), Err(Error::TooManyEdges { .. })));
        let big: Vec<_> = (1..40).map(|i| (0, i)).collect();
        let g = Graph::new(40, &big).unwrap();
        assert!(matches!(exact_rbfs_oracle(&g, 0, 4), Err(Error::StateSpaceTooLarge { .. })));
    }

    #[test]
    fn permutations_enumerated() {
        let mut a = [0, 1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut a) {
            n += 1;
        }
        assert_eq!(n, 24);
    }
}
