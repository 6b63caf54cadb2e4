//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use homcompat::{complete_graph, cycle_graph, kneser_graph, mycielskian, path_graph, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    assert!(g.vertex_count() <= 64);
    (0..g.vertex_count())
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, v| m | 1 << v))
        .collect()
}

/// Counts ordered pairs `(A, B)` of non-empty disjoint vertex sets with every
/// vertex of `A` adjacent to every vertex of `B`, over all `3^n` assignments.
pub fn count_k2_multihoms(g: &Graph) -> usize {
    let n = g.vertex_count();
    let adj = adjacency_masks(g);
    let mut digits = vec![0u8; n];
    let mut count = 0;
    loop {
        let (mut a, mut b) = (0u64, 0u64);
        for (v, &d) in digits.iter().enumerate() {
            match d {
                1 => a |= 1 << v,
                2 => b |= 1 << v,
                _ => {}
            }
        }
        if a != 0 && b != 0 && (0..n).filter(|&v| a >> v & 1 == 1).all(|v| b & !adj[v] == 0) {
            count += 1;
        }
        let mut i = 0;
        while i < n && digits[i] == 2 {
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
        digits[i] += 1;
    }
}

/// Largest clique by enumerating every vertex subset.
pub fn brute_clique_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20);
    let adj = adjacency_masks(g);
    (0u64..1 << n)
        .filter(|&s| (0..n).filter(|&v| s >> v & 1 == 1).all(|v| s & !(adj[v] | 1 << v) == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Fewest blocks over all partitions of the vertex set into independent sets.
/// Partitions are enumerated as restricted-growth strings; a branch is cut only
/// when the block just extended stops being independent.
pub fn brute_chromatic_number(g: &Graph) -> usize {
    fn go(v: usize, n: usize, adj: &[u64], blocks: &mut Vec<u64>, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        if v == n {
            *best = blocks.len();
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b] & adj[v] == 0 {
                blocks[b] |= 1 << v;
                go(v + 1, n, adj, blocks, best);
                blocks[b] &= !(1 << v);
            }
        }
        blocks.push(1 << v);
        go(v + 1, n, adj, blocks, best);
        blocks.pop();
    }
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let adj = adjacency_masks(g);
    let mut best = n + 1;
    go(0, n, &adj, &mut Vec::new(), &mut best);
    best
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..rim).map(|i| (i, (i + 1) % rim)).collect();
    edges.extend((0..rim).map(|i| (i, rim)));
    Graph::from_edges(rim + 1, &edges).unwrap()
}

fn complete_multipartite(sizes: &[usize]) -> Graph {
    let part: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
    Graph::from_fn(part.len(), |u, v| part[u] != part[v])
}

/// Fixed corpus of 25 graphs on at most 12 vertices.
pub fn small_corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("K1".into(), complete_graph(1).unwrap()),
        ("K2".into(), complete_graph(2).unwrap()),
        ("K4".into(), complete_graph(4).unwrap()),
        ("K7".into(), complete_graph(7).unwrap()),
        ("empty6".into(), Graph::empty(6)),
        ("C5".into(), cycle_graph(5).unwrap()),
        ("C8".into(), cycle_graph(8).unwrap()),
        ("C11".into(), cycle_graph(11).unwrap()),
        ("P7".into(), path_graph(7)),
        ("petersen".into(), kneser_graph(5, 2).unwrap()),
        ("grotzsch".into(), mycielskian(&mycielskian(&complete_graph(2).unwrap()))),
        ("mycielski(C5)".into(), mycielskian(&cycle_graph(5).unwrap())),
        ("wheel5".into(), wheel(5)),
        ("wheel6".into(), wheel(6)),
        ("K3,3".into(), complete_multipartite(&[3, 3])),
        ("K2,2,2".into(), complete_multipartite(&[2, 2, 2])),
        ("K1,2,3,4".into(), complete_multipartite(&[1, 2, 3, 4])),
    ];
    let randoms = [(8, 0.3), (9, 0.5), (10, 0.4), (10, 0.7), (11, 0.5), (12, 0.3), (12, 0.5), (12, 0.8)];
    for (i, &(n, p)) in randoms.iter().enumerate() {
        out.push((format!("gnp({n},{p},seed={i})"), random_graph(n, p, i as u64)));
    }
    assert_eq!(out.len(), 25);
    out
}
