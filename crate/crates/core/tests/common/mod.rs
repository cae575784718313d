//! Reference computations that only use raw edge lists, never the library's
//! graph methods, so they can be used to check it.

#![allow(dead_code)]

use rmc_core::Graph;

/// Ring edges (1-based) and the lift, rebuilt from scratch.
#[rustfmt::skip]
pub const RING_EDGES: [(usize, usize); 36] = [
    (1, 2), (1, 6), (1, 7), (1, 8), (1, 9),
    (2, 9), (2, 10), (2, 11), (2, 3),
    (3, 11), (3, 12), (3, 13), (3, 4),
    (4, 13), (4, 14), (4, 15), (4, 5),
    (5, 15), (5, 16), (5, 17), (5, 6),
    (6, 17), (6, 18), (6, 7), (7, 8),
    (7, 18), (8, 9), (9, 10), (10, 11),
    (11, 12), (12, 13), (13, 14), (14, 15),
    (15, 16), (16, 17), (17, 18),
];

/// 0-based edges of the lifted torus: two copies plus 18 vertical edges.
pub fn lifted_torus_edges() -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for &(a, b) in &RING_EDGES {
        edges.push((a - 1, b - 1));
        edges.push((a - 1 + 18, b - 1 + 18));
    }
    for v in 0..18 {
        edges.push((v, v + 18));
    }
    edges
}

pub fn raw_degrees(n: usize, edges: &[(usize, usize)]) -> Vec<i64> {
    let mut d = vec![0i64; n];
    for &(a, b) in edges {
        d[a] += 1;
        d[b] += 1;
    }
    d
}

/// Node curvature by summing `2 - deg(a) - deg(b)` into both endpoints.
pub fn raw_node_curvatures(n: usize, edges: &[(usize, usize)]) -> Vec<i64> {
    let d = raw_degrees(n, edges);
    let mut ric = vec![0i64; n];
    for &(a, b) in edges {
        let c = 2 - d[a] - d[b];
        ric[a] += c;
        ric[b] += c;
    }
    ric
}

pub fn raw_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.u(), e.v())).collect()
}

/// `Ric(v_i) - (L s)_i` from a freshly assembled dense Laplacian and
/// signature vector.
pub fn raw_residuals(n: usize, edges: &[(usize, usize)]) -> Vec<i64> {
    let d = raw_degrees(n, edges);
    let ric = raw_node_curvatures(n, edges);
    let mut adj = vec![vec![0i64; n]; n];
    for &(a, b) in edges {
        adj[a][b] = 1;
        adj[b][a] = 1;
    }
    (0..n)
        .map(|i| {
            let s: Vec<i64> = (0..n)
                .map(|l| if adj[i][l] == 1 { d[l] } else { d[i] })
                .collect();
            let ls: i64 = (0..n)
                .map(|l| {
                    let lap = if l == i { d[i] } else { -adj[i][l] };
                    lap * s[l]
                })
                .sum();
            ric[i] - ls
        })
        .collect()
}

/// Minimum assignment cost over all permutations, by Heap's algorithm.
pub fn brute_force_min(cost: &[Vec<f64>]) -> f64 {
    let n = cost.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let eval = |p: &[usize]| p.iter().enumerate().map(|(i, &j)| cost[i][j]).sum::<f64>();
    let mut best = eval(&perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(eval(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Adjacent-edge pairs counted by comparing every pair of edges.
pub fn brute_force_line_edges(edges: &[(usize, usize)]) -> usize {
    let mut count = 0;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                count += 1;
            }
        }
    }
    count
}

/// Is there a bijection between the node sets preserving adjacency?
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.node_count();
    if n != h.node_count() || g.edge_count() != h.edge_count() || n > 8 {
        return n == h.node_count() && g.edge_count() == h.edge_count() && n == 0;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let check = |p: &[usize]| g.edges().iter().all(|e| h.has_edge(p[e.u()], p[e.v()]));
    if check(&perm) {
        return true;
    }
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if check(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// A graph matching every number in the worked RMC row example: origin O
/// with neighbors A (degree 1), B (degree 4) and C (degree 5).
/// Ids: O=0, A=1, B=2, C=3, X=4, Y=5, Z=6.
pub fn worked_example() -> Graph {
    Graph::from_edge_list(
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
            (3, 6),
        ],
        None,
    )
    .unwrap()
}
