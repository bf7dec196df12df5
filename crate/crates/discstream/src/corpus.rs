//! Exhaustive corpora of small graphs, one representative per isomorphism
//! class.

use std::collections::BTreeSet;

use discstream_core::disc::subgraph_code;
use discstream_core::{Graph, Subgraph, VertexId};

/// All connected graphs on `1..=max_n` vertices with at most `max_m` edges,
/// up to isomorphism. Ordered by vertex count, then by enumeration order.
pub fn connected_graphs(max_n: usize, max_m: Option<usize>) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(VertexId, VertexId)> = (0..n as VertexId)
            .flat_map(|a| (a + 1..n as VertexId).map(move |b| (a, b)))
            .collect();
        let mut seen = BTreeSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let m = mask.count_ones() as usize;
            if m + 1 < n || max_m.is_some_and(|cap| m > cap) {
                continue;
            }
            let edges: Vec<_> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = Graph::new(n, &edges).expect("pairs are valid");
            if !g.is_connected() {
                continue;
            }
            let code = subgraph_code(&Subgraph::from_graph(&g)).expect("small graphs canonicalize");
            if seen.insert(code) {
                out.push(g);
            }
        }
    }
    out
}
