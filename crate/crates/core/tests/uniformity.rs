use discstream_core::{random_order, Edge, Graph, QueryOracle};

// Upper 1% points of the chi-square distribution.
const CHI2_01: [f64; 6] = [0.0, 6.635, 9.210, 11.345, 13.277, 15.086];

fn chi_square(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

#[test]
fn random_vertex_is_uniform() {
    let g = Graph::new(4, &[(0, 1)]).unwrap();
    let mut o = QueryOracle::new(&g, 11);
    let mut counts = [0u64; 4];
    for _ in 0..100_000 {
        counts[o.random_vertex().unwrap() as usize] += 1;
    }
    for c in counts {
        assert!((c as f64 / 1e5 - 0.25).abs() < 0.01);
    }
    assert!(chi_square(&counts) < CHI2_01[3]);
}

#[test]
fn random_neighbor_of_star_center_is_uniform() {
    let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let mut o = QueryOracle::new(&g, 12);
    let mut counts = [0u64; 3];
    for _ in 0..30_000 {
        counts[o.random_neighbor(0).unwrap().unwrap() as usize - 1] += 1;
    }
    for c in counts {
        assert!((c as f64 / 3e4 - 1.0 / 3.0).abs() < 0.02);
    }
    assert!(chi_square(&counts) < CHI2_01[2]);
}

#[test]
fn random_edge_of_triangle_is_uniform() {
    let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let mut o = QueryOracle::new(&g, 13);
    let mut counts = [0u64; 3];
    let mut flips = [0u64; 2];
    for _ in 0..30_000 {
        let (a, b) = o.random_edge().unwrap();
        counts[g.edge_index(Edge::new(a, b)).unwrap()] += 1;
        flips[(a > b) as usize] += 1;
    }
    for c in counts {
        assert!((c as f64 / 3e4 - 1.0 / 3.0).abs() < 0.02);
    }
    assert!(chi_square(&counts) < CHI2_01[2]);
    assert!(chi_square(&flips) < CHI2_01[1]);
}

#[test]
fn uniformity_on_small_graphs_of_every_size() {
    for n in 2..=8u32 {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).chain((2..n).map(|i| (i - 1, i))).collect();
        let g = Graph::new(n as usize, &edges).unwrap();
        let mut o = QueryOracle::new(&g, n as u64);
        let mut by_vertex = vec![0u64; n as usize];
        let mut by_edge = vec![0u64; g.num_edges()];
        let deg = g.neighbors(0).len();
        let mut by_neighbor = vec![0u64; deg];
        for _ in 0..20_000 {
            by_vertex[o.random_vertex().unwrap() as usize] += 1;
            let (a, b) = o.random_edge().unwrap();
            by_edge[g.edge_index(Edge::new(a, b)).unwrap()] += 1;
            let w = o.random_neighbor(0).unwrap().unwrap();
            by_neighbor[g.neighbors(0).binary_search(&w).unwrap()] += 1;
        }
        // Loose bound for the larger degrees of freedom: mean + 5 sd.
        let fits = |counts: &[u64]| {
            let k = counts.len();
            let df = (k - 1) as f64;
            k == 1 || chi_square(counts) < CHI2_01.get(k - 1).copied().unwrap_or(df + 5.0 * (2.0 * df).sqrt())
        };
        assert!(fits(&by_vertex), "vertices n={n}");
        assert!(fits(&by_edge), "edges n={n}");
        assert!(fits(&by_neighbor), "neighbors n={n}");
    }
}

#[test]
fn triangle_orders_are_uniform() {
    let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let perms: [[u32; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut counts = [0u64; 6];
    for seed in 0..60_000 {
        let s = random_order(&g, seed);
        counts[perms.iter().position(|p| p == s.order()).unwrap()] += 1;
    }
    for c in counts {
        assert!((c as f64 / 6e4 - 1.0 / 6.0).abs() < 0.01);
    }
    assert!(chi_square(&counts) < CHI2_01[5]);
    assert_eq!(random_order(&g, 5).order(), random_order(&g, 5).order());
}
