use discstream::core::{Builtin, Graph, Subgraph};
use discstream::generate::GraphSpec;
use discstream::io::{parse_graph, parse_pattern, write_graph, write_pattern};
use discstream::property::PropertySpec;
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..20).prop_flat_map(|n| {
        let v = 0..n as u32;
        proptest::collection::vec((v.clone(), v), 0..40).prop_map(move |pairs| {
            let edges: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            let mut seen = std::collections::BTreeSet::new();
            let edges: Vec<_> = edges.into_iter().filter(|&(a, b)| seen.insert((a.min(b), a.max(b)))).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn spec() -> impl Strategy<Value = GraphSpec> {
    let leaf = prop_oneof![
        (0usize..50).prop_map(GraphSpec::Empty),
        (0usize..50).prop_map(GraphSpec::Path),
        (3usize..50).prop_map(GraphSpec::Cycle),
        (1usize..50).prop_map(GraphSpec::Star),
        (0usize..50).prop_map(GraphSpec::Clique),
        (0usize..50, 0.0f64..=1.0).prop_map(|(n, p)| GraphSpec::Er(n, p)),
    ];
    prop_oneof![
        3 => leaf.clone(),
        1 => (leaf.clone(), leaf).prop_map(|(a, b)| GraphSpec::Planted(Box::new(a), Box::new(b))),
    ]
}

proptest! {
    #[test]
    fn edge_lists_round_trip(g in graph()) {
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(write_graph(&back), text);
        prop_assert_eq!(back.num_vertices(), g.num_vertices());
    }

    #[test]
    fn patterns_round_trip(g in graph(), root_pick in 0usize..20, colors in proptest::collection::vec((0u32..20, 1u32..4), 0..5)) {
        let mut s = Subgraph::new();
        for e in g.edges() {
            s.add_edge(e.0, e.1);
        }
        for v in 0..g.num_vertices() as u32 {
            s.add_vertex(v);
        }
        s.add_root((root_pick % g.num_vertices()) as u32);
        for (v, c) in colors {
            if (v as usize) < g.num_vertices() {
                s.colors.insert(v, c);
            }
        }
        let text = write_pattern(&s);
        let back = parse_pattern(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(write_pattern(&back), text);
    }

    #[test]
    fn generator_specs_round_trip(s in spec()) {
        let text = s.to_string();
        prop_assert_eq!(text.parse::<GraphSpec>().unwrap(), s);
    }

    #[test]
    fn property_specs_round_trip(k in 0u32..100, s in 0u32..100, t in 0u32..100, l in proptest::option::of(0u32..100)) {
        for b in [
            Builtin::PkFree { k },
            Builtin::DBounded { d: k },
            Builtin::StDisconnectivity { s, t, max_len: l },
        ] {
            let text = PropertySpec(b).to_string();
            prop_assert_eq!(text.parse::<PropertySpec>().unwrap(), PropertySpec(b));
        }
    }
}
