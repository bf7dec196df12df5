//! Canonical codes for rooted, partially colored graphs.
//!
//! Two graphs get the same code iff there is a bijection between them that
//! preserves adjacency, maps roots to roots and keeps every color. The code is
//! the lexicographically smallest adjacency encoding over the leaves of an
//! individualization-refinement search: cells start as label classes, are
//! refined by neighbor counts until equitable, and the first non-singleton
//! cell is branched on. Twin vertices (same label, same neighborhood) are
//! branched on only once since swapping them is an automorphism.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ColorId, Subgraph, VertexId};
use crate::rbfs::RootedDisc;

/// Default vertex cap for canonicalization.
pub const CANON_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel {
    pub root: bool,
    pub color: Option<ColorId>,
}

/// Dense local view of a small rooted colored graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub labels: Vec<VertexLabel>,
    /// Bitmask adjacency, bit `j` of `adj[i]` set iff `i ~ j`.
    pub adj: Vec<u32>,
    /// Ambient id of each local vertex.
    pub ids: Vec<VertexId>,
}

impl LabeledGraph {
    pub fn from_subgraph(s: &Subgraph) -> Result<Self> {
        let n = s.vertices.len();
        if n > 32 {
            return Err(Error::DiscTooLarge { size: n, cap: 32 });
        }
        let ids: Vec<VertexId> = s.vertices.iter().copied().collect();
        let local = |v: VertexId| ids.binary_search(&v).expect("edge endpoint in vertex set");
        let mut adj = alloc::vec![0u32; n];
        for e in &s.edges {
            let (a, b) = (local(e.0), local(e.1));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        let labels = ids
            .iter()
            .map(|v| VertexLabel {
                root: s.roots.contains(v),
                color: s.colors.get(v).copied(),
            })
            .collect();
        Ok(LabeledGraph { labels, adj, ids })
    }

    pub fn from_disc(d: &RootedDisc) -> Result<Self> {
        Self::from_subgraph(&d.to_subgraph())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
            && (self.adj[a] & !(1 << b)) == (self.adj[b] & !(1 << a))
    }

    /// Code of the graph under the given vertex order.
    pub fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut out = Vec::with_capacity(1 + 5 * n + n * n / 16 + 1);
        out.push(n as u8);
        for &v in order {
            let l = self.labels[v];
            out.push(u8::from(l.root) | (u8::from(l.color.is_some()) << 1));
            if let Some(c) = l.color {
                out.extend_from_slice(&c.to_be_bytes());
            }
        }
        let mut byte = 0u8;
        let mut filled = 0;
        for i in 0..n {
            for j in i + 1..n {
                byte = (byte << 1) | u8::from(self.adj[order[i]] >> order[j] & 1 == 1);
                filled += 1;
                if filled == 8 {
                    out.push(byte);
                    byte = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(byte << (8 - filled));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

type Cells = Vec<Vec<usize>>;

fn refine(g: &LabeledGraph, cells: &mut Cells) {
    let n = g.len();
    let mut cell_of = alloc::vec![0usize; n];
    loop {
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let k = cells.len();
        let mut changed = false;
        let mut next: Cells = Vec::with_capacity(n);
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = alloc::vec![0u8; k];
                    let mut nb = g.adj[v];
                    while nb != 0 {
                        let w = nb.trailing_zeros() as usize;
                        nb &= nb - 1;
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
            if next.last().map(Vec::len) != Some(cell.len()) {
                changed = true;
            }
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn search(g: &LabeledGraph, mut cells: Cells, best: &mut Option<Vec<u8>>) {
    refine(g, &mut cells);
    let Some(t) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = g.encode(&order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[t] {
        if tried.iter().any(|&w| g.twins(v, w)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..t]);
        next.push(alloc::vec![v]);
        next.push(cells[t].iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[t + 1..]);
        search(g, next, best);
    }
}

/// Canonical code of a labeled graph with at most `cap` vertices.
pub fn code_of(g: &LabeledGraph, cap: usize) -> Result<CanonicalCode> {
    if g.len() > cap {
        return Err(Error::DiscTooLarge {
            size: g.len(),
            cap,
        });
    }
    if g.is_empty() {
        return Ok(CanonicalCode(alloc::vec![0]));
    }
    let mut by_label: Vec<usize> = (0..g.len()).collect();
    by_label.sort_by_key(|&v| g.labels[v]);
    let mut cells: Cells = Vec::new();
    for v in by_label {
        match cells.last_mut() {
            Some(cell) if g.labels[cell[0]] == g.labels[v] => cell.push(v),
            _ => cells.push(alloc::vec![v]),
        }
    }
    let mut best = None;
    search(g, cells, &mut best);
    Ok(CanonicalCode(best.expect("search visits at least one leaf")))
}

pub fn canonical_code(d: &RootedDisc) -> Result<CanonicalCode> {
    if d.num_vertices() > CANON_CAP {
        return Err(Error::DiscTooLarge {
            size: d.num_vertices(),
            cap: CANON_CAP,
        });
    }
    code_of(&LabeledGraph::from_disc(d)?, CANON_CAP)
}

/// Code of a multi-rooted subgraph (every marked root carries the root flag).
pub fn subgraph_code(s: &Subgraph) -> Result<CanonicalCode> {
    if s.num_vertices() > CANON_CAP {
        return Err(Error::DiscTooLarge {
            size: s.num_vertices(),
            cap: CANON_CAP,
        });
    }
    code_of(&LabeledGraph::from_subgraph(s)?, CANON_CAP)
}

pub fn is_isomorphic(d1: &RootedDisc, d2: &RootedDisc) -> Result<bool> {
    Ok(canonical_code(d1)? == canonical_code(d2)?)
}

pub fn subgraphs_isomorphic(a: &Subgraph, b: &Subgraph) -> Result<bool> {
    Ok(subgraph_code(a)? == subgraph_code(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use alloc::collections::{BTreeMap, BTreeSet};

    fn disc(root: VertexId, edges: &[(VertexId, VertexId)]) -> RootedDisc {
        RootedDisc::from_edges(root, edges.iter().map(|&(a, b)| Edge::new(a, b)).collect())
    }

    #[test]
    fn rooted_edges_match_regardless_of_labels() {
        assert!(is_isomorphic(&disc(0, &[(0, 1)]), &disc(1, &[(0, 1)])).unwrap());
        assert!(is_isomorphic(&disc(5, &[(5, 9)]), &disc(1, &[(0, 1)])).unwrap());
    }

    #[test]
    fn root_placement_distinguishes_paths() {
        let end = disc(0, &[(0, 1), (1, 2)]);
        let mid = disc(1, &[(0, 1), (1, 2)]);
        assert!(!is_isomorphic(&end, &mid).unwrap());
    }

    #[test]
    fn color_distinguishes() {
        let plain = disc(0, &[(0, 1)]);
        let colors: BTreeMap<_, _> = [(1, 1)].into_iter().collect();
        let colored = plain.clone().with_colors(&colors).unwrap();
        assert!(!is_isomorphic(&plain, &colored).unwrap());
        let other: BTreeMap<_, _> = [(1, 2)].into_iter().collect();
        let colored2 = plain.clone().with_colors(&other).unwrap();
        assert!(!is_isomorphic(&colored, &colored2).unwrap());
    }

    #[test]
    fn triangle_is_vertex_transitive() {
        let t = [(0, 1), (1, 2), (0, 2)];
        for r in 0..3 {
            assert!(is_isomorphic(&disc(0, &t), &disc(r, &t)).unwrap());
        }
    }

    #[test]
    fn star_center_differs_from_leaf() {
        let s = [(0, 1), (0, 2), (0, 3)];
        assert!(!is_isomorphic(&disc(0, &s), &disc(1, &s)).unwrap());
        assert!(is_isomorphic(&disc(2, &s), &disc(2, &s)).unwrap());
    }

    #[test]
    fn too_large_is_rejected() {
        let edges: Vec<_> = (1..20).map(|i| (0, i)).collect();
        assert_eq!(
            canonical_code(&disc(0, &edges)),
            Err(Error::DiscTooLarge { size: 20, cap: 16 })
        );
    }

    #[test]
    fn cycle_rotations_agree() {
        // C6 rooted anywhere is one type; C6 plus chord is not.
        let c6: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let base = canonical_code(&disc(0, &c6)).unwrap();
        for r in 1..6 {
            assert_eq!(canonical_code(&disc(r, &c6)).unwrap(), base);
        }
        let mut chord = c6.clone();
        chord.push((0, 3));
        assert_ne!(canonical_code(&disc(0, &chord)).unwrap(), base);
    }

    #[test]
    fn multi_root_subgraph_codes() {
        let mut a = Subgraph::new();
        a.add_edge(0, 1);
        a.add_edge(1, 2);
        a.add_root(0);
        a.add_root(2);
        let mut b = Subgraph::new();
        b.add_edge(7, 8);
        b.add_edge(8, 9);
        b.add_root(9);
        b.add_root(7);
        assert!(subgraphs_isomorphic(&a, &b).unwrap());
        b.roots = BTreeSet::from([8]);
        assert!(!subgraphs_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn hex_is_lowercase() {
        let c = canonical_code(&disc(0, &[(0, 1)])).unwrap();
        let h = c.to_hex();
        assert_eq!(h.len(), 2 * c.as_bytes().len());
        assert!(h.chars().all(|ch| ch.is_ascii_digit() || ('a'..='f').contains(&ch)));
    }
}
