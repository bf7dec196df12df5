//! Forbidden families and witness search inside explored subgraphs.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Subgraph, VertexId};

/// Vertex cap for explicit patterns.
pub const PATTERN_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForbiddenFamily {
    /// Rooted, optionally colored patterns. A pattern root may only map to a
    /// root of the explored subgraph and a colored pattern vertex only to a
    /// vertex of the same color.
    Explicit(Vec<Subgraph>),
    /// Any path from `s` to `t` with at most `max_len` edges.
    StConnected { s: VertexId, t: VertexId, max_len: u32 },
    /// Any simple path with `k` edges.
    Path { k: u32 },
    /// Any vertex with at least `d + 1` incident edges.
    Degree { d: u32 },
}

impl ForbiddenFamily {
    /// Witnesses for (s,t)-disconnectivity: s-t paths of length `<= max_len`.
    pub fn st_disconnectivity(s: VertexId, t: VertexId, max_len: u32) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::InvalidParameter("path length bound must be at least 1"));
        }
        if s == t {
            return Err(Error::InvalidParameter("s and t must differ"));
        }
        Ok(ForbiddenFamily::StConnected { s, t, max_len })
    }

    /// Witnesses for P_k-freeness: simple paths with `k` edges.
    pub fn pk_free(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1"));
        }
        Ok(ForbiddenFamily::Path { k })
    }

    /// Witnesses for d-boundedness: vertices of degree above `d`.
    pub fn d_bounded(d: u32) -> Self {
        ForbiddenFamily::Degree { d }
    }

    pub fn explicit(patterns: Vec<Subgraph>) -> Result<Self> {
        for p in &patterns {
            if p.num_vertices() > PATTERN_CAP {
                return Err(Error::PatternTooLarge {
                    size: p.num_vertices(),
                    cap: PATTERN_CAP,
                });
            }
        }
        Ok(ForbiddenFamily::Explicit(patterns))
    }

    /// Vertices a tester should always explore from, with the family's
    /// own repetition count left to the caller.
    pub fn anchors(&self) -> Vec<VertexId> {
        match self {
            ForbiddenFamily::StConnected { s, .. } => alloc::vec![*s],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A path given as its vertex sequence.
    Path(Vec<VertexId>),
    /// A center together with the incident edges that exceed the bound.
    Star { center: VertexId, edges: Vec<Edge> },
    /// Pattern index and the image of every pattern vertex.
    Embedding {
        pattern: usize,
        map: BTreeMap<VertexId, VertexId>,
    },
}

impl Witness {
    /// Checks the witness against the original graph, independently of how
    /// it was found.
    pub fn validate(&self, g: &Graph, fam: &ForbiddenFamily) -> bool {
        match (self, fam) {
            (Witness::Path(p), ForbiddenFamily::StConnected { s, t, max_len }) => {
                p.first() == Some(s)
                    && p.last() == Some(t)
                    && p.len() >= 2
                    && p.len() - 1 <= *max_len as usize
                    && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
            }
            (Witness::Path(p), ForbiddenFamily::Path { k }) => {
                let distinct: BTreeSet<_> = p.iter().collect();
                p.len() == *k as usize + 1
                    && distinct.len() == p.len()
                    && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
            }
            (Witness::Star { center, edges }, ForbiddenFamily::Degree { d }) => {
                let distinct: BTreeSet<_> = edges.iter().collect();
                distinct.len() == edges.len()
                    && edges.len() > *d as usize
                    && edges
                        .iter()
                        .all(|e| e.touches(*center) && g.has_edge(e.0, e.1))
            }
            (Witness::Embedding { pattern, map }, ForbiddenFamily::Explicit(patterns)) => {
                let Some(p) = patterns.get(*pattern) else {
                    return false;
                };
                let images: BTreeSet<_> = map.values().collect();
                images.len() == map.len()
                    && p.vertices.iter().all(|v| map.contains_key(v))
                    && p.edges
                        .iter()
                        .all(|e| g.has_edge(map[&e.0], map[&e.1]))
            }
            _ => false,
        }
    }

    /// Vertices used by the witness, in witness order.
    pub fn vertices(&self) -> Vec<VertexId> {
        match self {
            Witness::Path(p) => p.clone(),
            Witness::Star { center, edges } => {
                let mut v = alloc::vec![*center];
                v.extend(edges.iter().map(|e| e.other(*center)));
                v
            }
            Witness::Embedding { map, .. } => map.values().copied().collect(),
        }
    }
}

/// Searches `h` for a member of `fam` and returns a witness if one exists.
pub fn contains_forbidden(h: &Subgraph, fam: &ForbiddenFamily) -> Result<Option<Witness>> {
    match fam {
        ForbiddenFamily::StConnected { s, t, max_len } => Ok(st_path(h, *s, *t, *max_len)),
        ForbiddenFamily::Path { k } => Ok(simple_path(h, *k as usize)),
        ForbiddenFamily::Degree { d } => Ok(high_degree(h, *d as usize)),
        ForbiddenFamily::Explicit(patterns) => {
            for (i, p) in patterns.iter().enumerate() {
                if let Some(map) = find_embedding(p, h)? {
                    return Ok(Some(Witness::Embedding { pattern: i, map }));
                }
            }
            Ok(None)
        }
    }
}

fn st_path(h: &Subgraph, s: VertexId, t: VertexId, max_len: u32) -> Option<Witness> {
    if !h.vertices.contains(&s) || !h.vertices.contains(&t) {
        return None;
    }
    let adj = h.adjacency();
    let mut parent: BTreeMap<VertexId, (VertexId, u32)> = BTreeMap::new();
    parent.insert(s, (s, 0));
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = parent[&u].1;
        if u == t {
            let mut path = alloc::vec![t];
            let mut x = t;
            while x != s {
                x = parent[&x].0;
                path.push(x);
            }
            path.reverse();
            return Some(Witness::Path(path));
        }
        if du == max_len {
            continue;
        }
        for &w in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if let alloc::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert((u, du + 1));
                queue.push_back(w);
            }
        }
    }
    None
}

fn simple_path(h: &Subgraph, k: usize) -> Option<Witness> {
    fn extend(
        adj: &BTreeMap<VertexId, Vec<VertexId>>,
        path: &mut Vec<VertexId>,
        on_path: &mut BTreeSet<VertexId>,
        k: usize,
    ) -> bool {
        if path.len() == k + 1 {
            return true;
        }
        let last = *path.last().expect("non-empty path");
        for &w in adj.get(&last).map(Vec::as_slice).unwrap_or(&[]) {
            if on_path.insert(w) {
                path.push(w);
                if extend(adj, path, on_path, k) {
                    return true;
                }
                path.pop();
                on_path.remove(&w);
            }
        }
        false
    }
    let adj = h.adjacency();
    for &v in &h.vertices {
        let mut path = alloc::vec![v];
        let mut on_path = BTreeSet::from([v]);
        if extend(&adj, &mut path, &mut on_path, k) {
            return Some(Witness::Path(path));
        }
    }
    None
}

fn high_degree(h: &Subgraph, d: usize) -> Option<Witness> {
    let adj = h.adjacency();
    adj.iter().find(|(_, n)| n.len() > d).map(|(&c, n)| Witness::Star {
        center: c,
        edges: n.iter().take(d + 1).map(|&w| Edge::new(c, w)).collect(),
    })
}

/// Finds an injective, root- and color-respecting map of the pattern into
/// `host` that sends every pattern edge to a host edge.
pub fn find_embedding(
    pattern: &Subgraph,
    host: &Subgraph,
) -> Result<Option<BTreeMap<VertexId, VertexId>>> {
    if pattern.num_vertices() > PATTERN_CAP {
        return Err(Error::PatternTooLarge {
            size: pattern.num_vertices(),
            cap: PATTERN_CAP,
        });
    }
    let p_adj = pattern.adjacency();
    let h_adj = host.adjacency();

    // Visit pattern vertices so that each one after the first of its
    // component has an already placed neighbor.
    let mut order: Vec<VertexId> = Vec::new();
    let mut placed = BTreeSet::new();
    let mut by_degree: Vec<VertexId> = pattern.vertices.iter().copied().collect();
    by_degree.sort_by_key(|v| core::cmp::Reverse(pattern.degree(*v)));
    for start in by_degree {
        if !placed.insert(start) {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in p_adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                if placed.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }

    let host_vertices: Vec<VertexId> = host.vertices.iter().copied().collect();
    let compatible = |pv: VertexId, hv: VertexId| -> bool {
        if pattern.roots.contains(&pv) && !host.roots.contains(&hv) {
            return false;
        }
        if let Some(c) = pattern.colors.get(&pv) {
            if host.colors.get(&hv) != Some(c) {
                return false;
            }
        }
        let need = p_adj.get(&pv).map_or(0, Vec::len);
        h_adj.get(&hv).map_or(0, Vec::len) >= need
    };

    fn search(
        i: usize,
        order: &[VertexId],
        p_adj: &BTreeMap<VertexId, Vec<VertexId>>,
        host: &Subgraph,
        h_adj: &BTreeMap<VertexId, Vec<VertexId>>,
        host_vertices: &[VertexId],
        compatible: &dyn Fn(VertexId, VertexId) -> bool,
        map: &mut BTreeMap<VertexId, VertexId>,
        used: &mut BTreeSet<VertexId>,
    ) -> bool {
        let Some(&pv) = order.get(i) else {
            return true;
        };
        let pn = p_adj.get(&pv).map(Vec::as_slice).unwrap_or(&[]);
        let anchor = pn.iter().find_map(|w| map.get(w).copied());
        let candidates: &[VertexId] = match anchor {
            Some(a) => h_adj.get(&a).map(Vec::as_slice).unwrap_or(&[]),
            None => host_vertices,
        };
        for &hv in candidates {
            if used.contains(&hv) || !compatible(pv, hv) {
                continue;
            }
            if pn
                .iter()
                .any(|w| map.get(w).is_some_and(|&hw| !host.has_edge(hv, hw)))
            {
                continue;
            }
            map.insert(pv, hv);
            used.insert(hv);
            if search(i + 1, order, p_adj, host, h_adj, host_vertices, compatible, map, used) {
                return true;
            }
            map.remove(&pv);
            used.remove(&hv);
        }
        false
    }

    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    Ok(
        search(0, &order, &p_adj, host, &h_adj, &host_vertices, &compatible, &mut map, &mut used)
            .then_some(map),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(edges: &[(VertexId, VertexId)]) -> Subgraph {
        let mut s = Subgraph::new();
        for &(a, b) in edges {
            s.add_edge(a, b);
        }
        s
    }

    fn path_pattern(k: u32) -> Subgraph {
        sub(&(0..k).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn triangle_contains_edge() {
        let fam = ForbiddenFamily::explicit(alloc::vec![sub(&[(0, 1)])]).unwrap();
        let h = sub(&[(0, 1), (1, 2), (0, 2)]);
        assert!(contains_forbidden(&h, &fam).unwrap().is_some());
    }

    #[test]
    fn star_has_no_three_edge_path() {
        let star = sub(&[(0, 1), (0, 2), (0, 3)]);
        let fam = ForbiddenFamily::explicit(alloc::vec![path_pattern(3)]).unwrap();
        assert_eq!(contains_forbidden(&star, &fam).unwrap(), None);
        assert_eq!(
            contains_forbidden(&star, &ForbiddenFamily::pk_free(3).unwrap()).unwrap(),
            None
        );
    }

    #[test]
    fn long_path_contains_subpath() {
        let p5 = path_pattern(5);
        let fam = ForbiddenFamily::explicit(alloc::vec![path_pattern(3)]).unwrap();
        assert!(contains_forbidden(&p5, &fam).unwrap().is_some());
        let w = contains_forbidden(&p5, &ForbiddenFamily::pk_free(3).unwrap())
            .unwrap()
            .unwrap();
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert!(w.validate(&g, &ForbiddenFamily::pk_free(3).unwrap()));
    }

    #[test]
    fn builtin_examples() {
        let edge = sub(&[(0, 1)]);
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let w = contains_forbidden(&edge, &ForbiddenFamily::pk_free(1).unwrap())
            .unwrap()
            .unwrap();
        assert!(w.validate(&g, &ForbiddenFamily::pk_free(1).unwrap()));
        let fam = ForbiddenFamily::d_bounded(0);
        let w = contains_forbidden(&edge, &fam).unwrap().unwrap();
        assert!(w.validate(&g, &fam));
        let mut split = sub(&[(0, 1), (2, 3)]);
        split.add_root(0);
        let fam = ForbiddenFamily::st_disconnectivity(0, 3, 4).unwrap();
        assert_eq!(contains_forbidden(&split, &fam).unwrap(), None);
        assert!(ForbiddenFamily::pk_free(0).is_err());
        assert!(ForbiddenFamily::st_disconnectivity(0, 1, 0).is_err());
    }

    #[test]
    fn st_path_respects_length() {
        let p = path_pattern(4);
        assert!(contains_forbidden(&p, &ForbiddenFamily::st_disconnectivity(0, 4, 3).unwrap())
            .unwrap()
            .is_none());
        let w = contains_forbidden(&p, &ForbiddenFamily::st_disconnectivity(0, 4, 4).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(w, Witness::Path(alloc::vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn roots_and_colors_constrain_embeddings() {
        let mut pattern = sub(&[(0, 1), (1, 2)]);
        pattern.add_root(0);
        let mut host = sub(&[(5, 6), (6, 7)]);
        host.add_root(6);
        assert!(find_embedding(&pattern, &host).unwrap().is_none());
        host.add_root(7);
        let map = find_embedding(&pattern, &host).unwrap().unwrap();
        assert_eq!(map[&0], 7);
        pattern.colors.insert(1, 4);
        assert!(find_embedding(&pattern, &host).unwrap().is_none());
        host.colors.insert(6, 4);
        assert!(find_embedding(&pattern, &host).unwrap().is_some());
    }

    #[test]
    fn oversized_pattern_rejected() {
        let big = path_pattern(12);
        assert!(matches!(
            ForbiddenFamily::explicit(alloc::vec![big]),
            Err(Error::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn forged_witness_rejected() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let fam = ForbiddenFamily::pk_free(3).unwrap();
        assert!(!Witness::Path(alloc::vec![1, 0, 2, 0]).validate(&g, &fam));
        assert!(!Witness::Path(alloc::vec![1, 0, 2, 3]).validate(&g, &fam));
        let deg = ForbiddenFamily::d_bounded(2);
        let star = Witness::Star {
            center: 0,
            edges: alloc::vec![Edge(0, 1), Edge(0, 2), Edge(0, 3)],
        };
        assert!(star.validate(&g, &deg));
        assert!(!star.validate(&g, &ForbiddenFamily::d_bounded(3)));
    }
}
