//! Colored disc multisets: stitching by color identification and the inverse
//! decomposition of a rooted graph into edge-disjoint bounded discs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::canon::{canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{ColorId, Edge, Subgraph, VertexId};
use crate::rbfs::RootedDisc;

/// Vertex cap for [`decompose`].
pub const DECOMPOSE_CAP: usize = 16;

/// A multiset of colored rooted discs, one per root of the graph it
/// describes. Discs only meet in colored vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDiscMultiset {
    discs: Vec<RootedDisc>,
    palette: BTreeSet<ColorId>,
}

impl ColoredDiscMultiset {
    /// Validates the multiset. `palette_bound` caps the number of distinct
    /// colors (pass `None` to lift the cap for experiments).
    pub fn new(discs: Vec<RootedDisc>, palette_bound: Option<usize>) -> Result<Self> {
        let mut palette = BTreeSet::new();
        let mut colored_edges: BTreeSet<(ColorId, ColorId)> = BTreeSet::new();
        for d in &discs {
            let mut seen = BTreeSet::new();
            for &c in d.colors().values() {
                if !seen.insert(c) {
                    return Err(Error::ColorRepeatedWithinDisc { color: c });
                }
            }
            palette.extend(seen);
            for e in d.edges() {
                if let (Some(&a), Some(&b)) = (d.colors().get(&e.0), d.colors().get(&e.1)) {
                    let key = (a.min(b), a.max(b));
                    if !colored_edges.insert(key) {
                        return Err(Error::InvalidParameter(
                            "discs share an edge after color identification",
                        ));
                    }
                }
            }
        }
        if let Some(bound) = palette_bound {
            if palette.len() > bound {
                return Err(Error::InvalidParameter("palette exceeds its bound"));
            }
        }
        Ok(ColoredDiscMultiset { discs, palette })
    }

    pub fn discs(&self) -> &[RootedDisc] {
        &self.discs
    }

    pub fn palette(&self) -> &BTreeSet<ColorId> {
        &self.palette
    }

    /// Sorted canonical codes of the member discs; equal keys mean equal
    /// multisets of disc types.
    pub fn type_key(&self) -> Result<Vec<CanonicalCode>> {
        let mut codes = self
            .discs
            .iter()
            .map(canonical_code)
            .collect::<Result<Vec<_>>>()?;
        codes.sort();
        Ok(codes)
    }
}

/// Glues the discs together by identifying equally colored vertices.
///
/// Output ids: colors first in ascending color order, then the uncolored
/// vertices of each disc in BFS order (depth, then original id), disc by
/// disc. All disc roots are marked and colors are kept.
pub fn stitch(s: &ColoredDiscMultiset) -> Result<Subgraph> {
    let mut out = Subgraph::new();
    let mut color_slot: BTreeMap<ColorId, VertexId> = BTreeMap::new();
    for (i, &c) in s.palette.iter().enumerate() {
        color_slot.insert(c, i as VertexId);
        out.add_vertex(i as VertexId);
        out.colors.insert(i as VertexId, c);
    }
    let mut next = s.palette.len() as VertexId;
    for d in &s.discs {
        let mut seen = BTreeSet::new();
        for &c in d.colors().values() {
            if !seen.insert(c) {
                return Err(Error::ColorRepeatedWithinDisc { color: c });
            }
        }
        let mut order: Vec<(u32, VertexId)> = d.depths().iter().map(|(&v, &l)| (l, v)).collect();
        order.sort_unstable();
        let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (_, v) in order {
            let id = match d.colors().get(&v) {
                Some(c) => color_slot[c],
                None => {
                    let id = next;
                    next += 1;
                    id
                }
            };
            rename.insert(v, id);
            out.add_vertex(id);
        }
        out.add_root(rename[&d.root()]);
        for e in d.edges() {
            out.add_edge(rename[&e.0], rename[&e.1]);
        }
    }
    Ok(out)
}

struct Local {
    adj: Vec<u32>,
    ambient_degree: Vec<usize>,
}

fn realizable_search(
    g: &Local,
    q: u32,
    queue: &mut Vec<usize>,
    head: usize,
    level: &mut Vec<Option<u32>>,
    covered: &mut Vec<u32>,
    reached: u32,
) -> bool {
    let n = g.adj.len();
    if head == queue.len() {
        return reached.count_ones() as usize == n && (0..n).all(|v| covered[v] == g.adj[v]);
    }
    // Dead vertices never pop again: already popped, or reached too deep to
    // be queued. An uncovered edge between two of them is a dead end.
    let mut dead = 0u32;
    for &v in &queue[..head] {
        dead |= 1 << v;
    }
    for v in 0..n {
        if reached >> v & 1 == 1 && level[v].is_none() {
            dead |= 1 << v;
        }
    }
    let mut uncovered = 0u32;
    for v in 0..n {
        let open = g.adj[v] & !covered[v];
        if dead >> v & 1 == 1 && open & dead != 0 {
            return false;
        }
        uncovered += open.count_ones();
    }
    let live = (queue.len() - head) as u32 + (0..n).filter(|&v| reached >> v & 1 == 0).count() as u32;
    if uncovered / 2 > q * live {
        return false;
    }

    let u = queue[head];
    let lu = level[u].expect("queued vertices are labeled");
    let nbrs: Vec<usize> = (0..n).filter(|&w| g.adj[u] >> w & 1 == 1).collect();
    if nbrs.is_empty() {
        if g.ambient_degree[u] > 0 {
            return false;
        }
        return realizable_search(g, q, queue, head + 1, level, covered, reached);
    }
    // Open edges to dead neighbors can only be drawn now.
    let required: u32 = nbrs
        .iter()
        .enumerate()
        .filter(|&(_, &w)| dead >> w & 1 == 1 && covered[u] >> w & 1 == 0)
        .fold(0, |acc, (i, _)| acc | 1 << i);
    if required.count_ones() > q {
        return false;
    }
    let k = nbrs.len();
    for mask in 1u32..(1 << k) {
        if mask.count_ones() > q || mask & required != required {
            continue;
        }
        let saved_cov = covered.clone();
        let saved_len = queue.len();
        let saved_level = level.clone();
        let mut r = reached;
        for (i, &w) in nbrs.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            covered[u] |= 1 << w;
            covered[w] |= 1 << u;
            r |= 1 << w;
            if lu + 1 < q && level[w].is_none() {
                level[w] = Some(lu + 1);
                queue.push(w);
            }
        }
        if realizable_search(g, q, queue, head + 1, level, covered, r) {
            return true;
        }
        *covered = saved_cov;
        queue.truncate(saved_len);
        *level = saved_level;
    }
    false
}

/// True iff some run of a q-random BFS from the disc root returns exactly
/// this disc. With `ambient`, a popped vertex that has neighbors in the
/// ambient graph must draw at least one of them.
pub fn is_q_bounded(disc: &RootedDisc, q: u32, ambient: Option<&Subgraph>) -> bool {
    if q == 0 || disc.num_vertices() > 32 {
        return false;
    }
    let ids: Vec<VertexId> = disc.vertices().collect();
    let local = |v: VertexId| ids.binary_search(&v).expect("vertex in disc");
    let n = ids.len();
    let mut adj = alloc::vec![0u32; n];
    for e in disc.edges() {
        let (a, b) = (local(e.0), local(e.1));
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let ambient_degree = ids
        .iter()
        .enumerate()
        .map(|(i, &v)| match ambient {
            Some(s) => s.degree(v),
            None => adj[i].count_ones() as usize,
        })
        .collect();
    let g = Local {
        adj,
        ambient_degree,
    };
    let root = local(disc.root());
    let mut level = alloc::vec![None; n];
    level[root] = Some(0);
    let mut queue = alloc::vec![root];
    let mut covered = alloc::vec![0u32; n];
    realizable_search(&g, q, &mut queue, 0, &mut level, &mut covered, 1 << root)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Upper bound on block assignments tried by [`decompose`].
const MAX_ASSIGNMENTS: u64 = 1 << 22;

/// All ways of writing `f` as edge-disjoint colored q-bounded discs, one per
/// root of `f`, that only share colored vertices. Results are distinct as
/// multisets of disc types and ordered by their type key; each carries one
/// concrete labeled representative.
pub fn decompose(f: &Subgraph, q: u32) -> Result<Vec<ColoredDiscMultiset>> {
    if f.num_vertices() > DECOMPOSE_CAP {
        return Err(Error::DiscTooLarge {
            size: f.num_vertices(),
            cap: DECOMPOSE_CAP,
        });
    }
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1"));
    }
    let roots: Vec<VertexId> = f.roots.iter().copied().collect();
    if roots.is_empty() {
        return Err(Error::NotDecomposable);
    }
    for &v in &f.vertices {
        if !f.roots.contains(&v) && f.degree(v) == 0 {
            return Err(Error::NotDecomposable);
        }
    }
    let edges: Vec<Edge> = f.edges.iter().copied().collect();
    let m = edges.len();

    // Edges meeting at an uncolored vertex must land in the same disc.
    let mut uf = UnionFind((0..m).collect());
    let mut first_edge_at: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for v in [e.0, e.1] {
            if f.colors.contains_key(&v) {
                continue;
            }
            match first_edge_at.get(&v) {
                Some(&j) => uf.union(i, j),
                None => {
                    first_edge_at.insert(v, i);
                }
            }
        }
    }
    let mut block_of_rep: BTreeMap<usize, usize> = BTreeMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        let rep = uf.find(i);
        let b = *block_of_rep.entry(rep).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(i);
    }

    // Blocks touching an uncolored root belong to that root's disc.
    let mut forced: Vec<Option<usize>> = alloc::vec![None; blocks.len()];
    for (b, block) in blocks.iter().enumerate() {
        for (ri, &r) in roots.iter().enumerate() {
            if f.colors.contains_key(&r) {
                continue;
            }
            if block.iter().any(|&i| edges[i].touches(r)) {
                match forced[b] {
                    Some(prev) if prev != ri => return Err(Error::NotDecomposable),
                    _ => forced[b] = Some(ri),
                }
            }
        }
    }
    let free: Vec<usize> = (0..blocks.len()).filter(|&b| forced[b].is_none()).collect();
    let k = roots.len() as u64;
    let total = k
        .checked_pow(free.len() as u32)
        .filter(|&t| t <= MAX_ASSIGNMENTS)
        .ok_or(Error::StateSpaceTooLarge {
            limit: MAX_ASSIGNMENTS,
        })?;

    let mut found: BTreeMap<Vec<CanonicalCode>, ColoredDiscMultiset> = BTreeMap::new();
    // A root's disc only depends on the blocks it owns, so cache per block set.
    let mut cache: BTreeMap<(usize, Vec<usize>), Option<(RootedDisc, CanonicalCode)>> = BTreeMap::new();
    let mut owner: Vec<usize> = forced.iter().map(|o| o.unwrap_or(0)).collect();
    'assign: for mut code in 0..total {
        for &b in &free {
            owner[b] = (code % k) as usize;
            code /= k;
        }
        let mut discs = Vec::with_capacity(roots.len());
        let mut key = Vec::with_capacity(roots.len());
        for (ri, &r) in roots.iter().enumerate() {
            let owned: Vec<usize> = (0..blocks.len()).filter(|&b| owner[b] == ri).collect();
            let entry = match cache.get(&(ri, owned.clone())) {
                Some(e) => e.clone(),
                None => {
                    let disc_edges: BTreeSet<Edge> =
                        owned.iter().flat_map(|&b| blocks[b].iter().map(|&i| edges[i])).collect();
                    let e = match RootedDisc::spanned(r, disc_edges) {
                        Some(d) if is_q_bounded(&d, q, Some(f)) => {
                            let d = d.with_colors(&f.colors)?;
                            let c = canonical_code(&d)?;
                            Some((d, c))
                        }
                        _ => None,
                    };
                    cache.insert((ri, owned), e.clone());
                    e
                }
            };
            let Some((d, c)) = entry else {
                continue 'assign;
            };
            discs.push(d);
            key.push(c);
        }
        key.sort();
        if found.contains_key(&key) {
            continue;
        }
        let ms = ColoredDiscMultiset::new(discs, None)?;
        found.insert(key, ms);
    }
    if found.is_empty() {
        return Err(Error::NotDecomposable);
    }
    Ok(found.into_values().collect())
}
