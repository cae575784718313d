mod common;

use common::*;
use proptest::prelude::*;
use rmc_core::alignment::{are_nodes_equivalent, neighborhood_signature, signature_matrix};
use rmc_core::curvature::{node_curvatures_exact, CurvatureMap};
use rmc_core::experiments::random_connected_graph;
use rmc_core::io::{parse_graphml, write_graphml};
use rmc_core::linegraph::edge_pair_count;
use rmc_core::sampling::{delete_edges_randomly, random_walk_sample, RngHandle};
use rmc_core::spectral::{curvature_laplacian_residuals, labeled_signature_vector, laplacian};
use rmc_core::tessellation::lift_to_3d;
use rmc_core::{align, cost_matrix, hungarian, line_graph, CostMatrix, Graph, SignatureMode};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..(n * 3)).prop_map(move |pairs| {
            let pairs: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            Graph::from_edge_list(&pairs, Some(n)).unwrap()
        })
    })
}

fn connected_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..0.4f64, any::<u64>()).prop_map(|(n, density, seed)| {
        random_connected_graph(n, density, &mut RngHandle::new(seed))
    })
}

proptest! {
    #[test]
    fn degree_sum_is_twice_edge_count(g in graph_strategy(25)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn full_induced_subgraph_keeps_degrees(g in graph_strategy(25)) {
        let all: Vec<usize> = g.nodes().collect();
        let sub = g.induced_subgraph(&all).unwrap();
        prop_assert_eq!(sub.degrees(), g.degrees());
        prop_assert_eq!(sub.edges(), g.edges());
    }

    #[test]
    fn graphml_round_trip_preserves_counts(g in graph_strategy(20)) {
        let mut buf = Vec::new();
        write_graphml(&g, &mut buf).unwrap();
        let back = parse_graphml(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back.node_count(), g.node_count());
        prop_assert_eq!(back.edge_count(), g.edge_count());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn node_curvature_sums_incident_edges(g in graph_strategy(25)) {
        let map = CurvatureMap::compute(&g);
        let exact = node_curvatures_exact(&g).unwrap();
        prop_assert_eq!(&exact, &raw_node_curvatures(g.node_count(), &raw_edges(&g)));
        let node_total: f64 = map.node.iter().sum();
        let edge_total: f64 = map.edge.iter().sum();
        prop_assert_eq!(node_total, 2.0 * edge_total);
    }

    #[test]
    fn edges_of_connected_graphs_are_negative(g in connected_strategy(25)) {
        prop_assume!(g.node_count() >= 3);
        let map = CurvatureMap::compute(&g);
        prop_assert!(map.edge.iter().all(|&c| c <= -1.0));
    }

    #[test]
    fn curvature_laplacian_identity(g in graph_strategy(30)) {
        let residuals = curvature_laplacian_residuals(&g).unwrap();
        prop_assert_eq!(&residuals, &raw_residuals(g.node_count(), &raw_edges(&g)));
        for v in g.nodes() {
            let d = g.degree(v).unwrap() as i64;
            prop_assert_eq!(residuals[v], 2 * d * (1 - d));
        }
    }

    #[test]
    fn laplacian_of_signature_is_degree_difference_sum(g in graph_strategy(20)) {
        let lap = laplacian(&g);
        for i in g.nodes() {
            let s = labeled_signature_vector(&g, i).unwrap();
            let di = g.degree(i).unwrap() as i64;
            let expected: i64 = g.neighbors(i).unwrap().iter()
                .map(|&l| di - g.degree(l).unwrap() as i64)
                .sum();
            prop_assert_eq!(lap.apply_row(i, &s.values), expected);
        }
    }

    #[test]
    fn laplacian_rows_sum_to_zero_and_form_is_nonnegative(
        g in graph_strategy(20),
        xs in prop::collection::vec(-50i64..50, 20),
    ) {
        let lap = laplacian(&g);
        for i in g.nodes() {
            prop_assert_eq!(lap.row(i).iter().sum::<i64>(), 0);
            for j in g.nodes() {
                prop_assert_eq!(lap.get(i, j), lap.get(j, i));
            }
        }
        prop_assert!(lap.quadratic_form(&xs[..g.node_count()]) >= 0);
    }

    #[test]
    fn line_graph_sizes(g in graph_strategy(20)) {
        prop_assume!(g.edge_count() > 0);
        let lg = line_graph(&g).unwrap();
        prop_assert_eq!(lg.graph.node_count(), g.edge_count());
        prop_assert_eq!(lg.graph.edge_count(), edge_pair_count(&g));
        prop_assert_eq!(lg.graph.edge_count(), brute_force_line_edges(&raw_edges(&g)));
    }

    #[test]
    fn line_graph_is_locally_complete_and_connected(g in connected_strategy(15)) {
        prop_assume!(g.edge_count() > 0);
        let lg = line_graph(&g).unwrap();
        prop_assert!(lg.graph.is_connected().unwrap());
        for v in g.nodes() {
            let star: Vec<usize> = lg.origin.iter().enumerate()
                .filter(|(_, e)| e.u() == v || e.v() == v)
                .map(|(k, _)| k)
                .collect();
            for (i, &a) in star.iter().enumerate() {
                for &b in &star[i + 1..] {
                    prop_assert!(lg.graph.has_edge(a, b));
                }
            }
        }
    }

    #[test]
    fn hungarian_matches_permutation_oracle(
        n in 1usize..=7,
        raw in prop::collection::vec(0u32..20, 49),
    ) {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| raw[i * 7 + j] as f64).collect())
            .collect();
        let a = hungarian(&CostMatrix::from_rows(&rows).unwrap()).unwrap();
        prop_assert_eq!(a.total_cost, brute_force_min(&rows));
        let mut seen = a.mapping.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        let recomputed: f64 = a.mapping.iter().enumerate().map(|(i, &j)| rows[i][j]).sum();
        prop_assert_eq!(a.total_cost, recomputed);
    }

    #[test]
    fn cost_matrix_is_symmetric_under_swap(g in graph_strategy(12), h in graph_strategy(12)) {
        let width = g.max_degree().max(h.max_degree());
        let m1 = signature_matrix(&g, width, SignatureMode::Degree).unwrap();
        let m2 = signature_matrix(&h, width, SignatureMode::Degree).unwrap();
        let c12 = cost_matrix(&m1, &m2).unwrap();
        let c21 = cost_matrix(&m2, &m1).unwrap();
        prop_assert_eq!(c12.transpose(), c21);
        for i in 0..c12.rows() {
            for j in 0..c12.cols() {
                let same = m1.row(i) == m2.row(j);
                prop_assert!(c12.get(i, j) >= 0.0);
                prop_assert_eq!(c12.get(i, j) == 0.0, same);
            }
        }
    }

    #[test]
    fn self_alignment_costs_nothing(g in graph_strategy(25)) {
        for mode in [SignatureMode::Degree, SignatureMode::Ricci] {
            prop_assert_eq!(align(&g, &g, mode).unwrap().total_cost, 0.0);
        }
    }

    #[test]
    fn ricci_rows_have_degree_many_nonzeros(g in connected_strategy(20)) {
        prop_assume!(g.node_count() >= 3);
        let m = signature_matrix(&g, g.max_degree(), SignatureMode::Ricci).unwrap();
        for v in g.nodes() {
            let nonzero = m.row(v).iter().filter(|&&x| x != 0.0).count();
            prop_assert_eq!(nonzero, g.degree(v).unwrap());
            prop_assert!(m.row(v).windows(2).take(g.degree(v).unwrap().saturating_sub(1))
                .all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn disjoint_extra_component_keeps_row_costs(
        g in connected_strategy(10),
        h in connected_strategy(10),
        extra in connected_strategy(6),
    ) {
        let union = |a: &Graph, b: &Graph| {
            let mut pairs = raw_edges(a);
            let n = a.node_count();
            pairs.extend(raw_edges(b).into_iter().map(|(x, y)| (x + n, y + n)));
            Graph::from_edge_list(&pairs, Some(n + b.node_count())).unwrap()
        };
        let (gx, hx) = (union(&g, &extra), union(&h, &extra));
        let width = g.max_degree().max(h.max_degree()).max(extra.max_degree());
        for mode in [SignatureMode::Degree, SignatureMode::Ricci] {
            let before = cost_matrix(
                &signature_matrix(&g, width, mode).unwrap(),
                &signature_matrix(&h, width, mode).unwrap(),
            ).unwrap();
            let after = cost_matrix(
                &signature_matrix(&gx, width, mode).unwrap(),
                &signature_matrix(&hx, width, mode).unwrap(),
            ).unwrap();
            for i in 0..g.node_count() {
                for j in 0..h.node_count() {
                    prop_assert_eq!(before.get(i, j), after.get(i, j));
                }
            }
        }
    }

    #[test]
    fn random_walk_output_is_induced(g in graph_strategy(30), seed in any::<u64>(), frac in 0.0..1.0f64) {
        let size = 1 + ((g.node_count() - 1) as f64 * frac) as usize;
        let s = random_walk_sample(&g, size, 100, &mut RngHandle::new(seed)).unwrap();
        prop_assert_eq!(s.node_count(), size);
        let parent: Vec<usize> = s.labels().unwrap().iter().map(|l| l.parse().unwrap()).collect();
        prop_assert!(parent.windows(2).all(|w| w[0] < w[1]));
        for a in 0..size {
            for b in a + 1..size {
                prop_assert_eq!(s.has_edge(a, b), g.has_edge(parent[a], parent[b]));
            }
        }
        let again = random_walk_sample(&g, size, 100, &mut RngHandle::new(seed)).unwrap();
        prop_assert_eq!(again, s);
    }

    #[test]
    fn deletion_only_removes_edges(g in graph_strategy(25), seed in any::<u64>(), p in 0.0..=1.0f64) {
        let d = delete_edges_randomly(&g, p, &mut RngHandle::new(seed)).unwrap();
        prop_assert_eq!(d.node_count(), g.node_count());
        prop_assert!(d.edges().iter().all(|e| g.has_edge(e.u(), e.v())));
    }

    #[test]
    fn lift_preserves_connectivity(g in connected_strategy(15)) {
        let lifted = lift_to_3d(&g);
        prop_assert!(lifted.is_connected().unwrap());
        prop_assert_eq!(lifted.edge_count(), 2 * g.edge_count() + g.node_count());
    }

    #[test]
    fn equivalence_matches_permutation_search(g in graph_strategy(12)) {
        for a in g.nodes() {
            for b in g.nodes() {
                let low = |v: usize| (1..=3).contains(&g.degree(v).unwrap());
                let expected = low(a) && low(b) && {
                    let sa = neighborhood_signature(&g, a).unwrap();
                    let sb = neighborhood_signature(&g, b).unwrap();
                    permutations(&sa).contains(&sb)
                };
                prop_assert_eq!(are_nodes_equivalent(&g, a, b).unwrap(), expected);
            }
        }
    }
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

#[test]
fn whitney_exception_pair() {
    let k3 = Graph::from_edge_list(&[(0, 1), (1, 2), (0, 2)], None).unwrap();
    let claw = Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3)], None).unwrap();
    let l1 = line_graph(&k3).unwrap().graph;
    let l2 = line_graph(&claw).unwrap().graph;
    assert!(isomorphic(&l1, &k3));
    assert!(isomorphic(&l2, &k3));
    assert!(isomorphic(&l1, &l2));
    assert!(!isomorphic(&k3, &claw));
}

#[test]
fn k4_line_graph_edges_by_brute_force() {
    let k4 =
        Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], None).unwrap();
    assert_eq!(brute_force_line_edges(&raw_edges(&k4)), 12);
    assert_eq!(line_graph(&k4).unwrap().graph.edge_count(), 12);
}

#[test]
fn hungarian_exhaustive_size_eight() {
    let mut rng = RngHandle::new(8);
    let g = random_connected_graph(30, 0.0, &mut rng);
    // Costs derived from a random tree's degrees give plenty of ties.
    let d = g.degrees();
    let rows: Vec<Vec<f64>> = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| ((d[i] * 7 + d[j + 8] * 3 + i * j) % 11) as f64)
                .collect()
        })
        .collect();
    let a = hungarian(&CostMatrix::from_rows(&rows).unwrap()).unwrap();
    assert_eq!(a.total_cost, brute_force_min(&rows));
}
