//! Forman-Ricci curvature on edges and nodes.
//!
//! For an edge `e = {v1, v2}` with weights,
//!
//! ```text
//! Ric(e) = w_e * ( w_v1/w_e + w_v2/w_e
//!                  - sum_{el ~ v1} w_v1 / sqrt(w_e * w_el)
//!                  - sum_{el ~ v2} w_v2 / sqrt(w_e * w_el) )
//! ```
//!
//! where both sums run over every edge incident to the endpoint, `e`
//! included. With unit weights this is exactly `2 - deg(v1) - deg(v2)`.
//! Node curvature is the sum of the curvatures of the incident edges.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodePair};

/// `2 - deg(u) - deg(v)` for an edge of an unweighted graph.
pub fn edge_curvature_unweighted(g: &Graph, e: NodePair) -> Result<i64> {
    if g.is_weighted() {
        return Err(Error::Weighted);
    }
    if g.edge_index(e).is_none() {
        return Err(Error::MissingEdge(e.u(), e.v()));
    }
    Ok(2 - g.degree(e.u())? as i64 - g.degree(e.v())? as i64)
}

pub fn edge_curvature_weighted(g: &Graph, e: NodePair) -> Result<f64> {
    let idx = g.edge_index(e).ok_or(Error::MissingEdge(e.u(), e.v()))?;
    Ok(weighted_edge(g, e, idx))
}

fn weighted_edge(g: &Graph, e: NodePair, idx: usize) -> f64 {
    let w_e = g.edge_weight(idx);
    let endpoint_term = |v: usize| -> f64 {
        let w_v = g.node_weight(v);
        let incident: f64 = g
            .neighbors(v)
            .expect("endpoint of an edge")
            .iter()
            .map(|&x| {
                let el = NodePair::new(v, x).expect("simple graph");
                let w_el = g.edge_weight(g.edge_index(el).expect("adjacent edge"));
                w_v / (w_e * w_el).sqrt()
            })
            .sum();
        w_v / w_e - incident
    };
    w_e * (endpoint_term(e.u()) + endpoint_term(e.v()))
}

/// Sum of incident edge curvatures. Isolated nodes get 0.
pub fn node_curvature(g: &Graph, v: usize) -> Result<f64> {
    let neighbors = g.neighbors(v)?;
    if g.is_weighted() {
        Ok(neighbors
            .iter()
            .map(|&x| {
                let e = NodePair::new(v, x).expect("simple graph");
                weighted_edge(g, e, g.edge_index(e).expect("adjacent edge"))
            })
            .sum())
    } else {
        Ok(unweighted_node(g, v) as f64)
    }
}

fn unweighted_node(g: &Graph, v: usize) -> i64 {
    let adj = g.neighbors(v).expect("valid node");
    let d = adj.len() as i64;
    adj.iter()
        .map(|&x| 2 - d - g.degree(x).expect("valid node") as i64)
        .sum()
}

/// Exact node curvatures of an unweighted graph, indexed by node id.
pub fn node_curvatures_exact(g: &Graph) -> Result<Vec<i64>> {
    if g.is_weighted() {
        return Err(Error::Weighted);
    }
    Ok(g.nodes()
        .into_par_iter()
        .map(|v| unweighted_node(g, v))
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureMap {
    /// Aligned with [`Graph::edges`].
    pub edge: Vec<f64>,
    /// Indexed by node id.
    pub node: Vec<f64>,
}

impl CurvatureMap {
    pub fn compute(g: &Graph) -> Self {
        let edge: Vec<f64> = g
            .edges()
            .par_iter()
            .enumerate()
            .map(|(idx, &e)| weighted_edge(g, e, idx))
            .collect();
        let mut node = vec![0.0; g.node_count()];
        for (e, c) in g.edges().iter().zip(&edge) {
            node[e.u()] += c;
            node[e.v()] += c;
        }
        CurvatureMap { edge, node }
    }

    pub fn edge_curvature(&self, g: &Graph, e: NodePair) -> Option<f64> {
        g.edge_index(e).map(|i| self.edge[i])
    }
}

/// Node-curvature histogram of an unweighted graph, ascending by value.
pub fn curvature_distribution(g: &Graph) -> Result<Vec<(i64, usize)>> {
    let mut counts = BTreeMap::new();
    for c in node_curvatures_exact(g)? {
        *counts.entry(c).or_insert(0) += 1;
    }
    Ok(counts.into_iter().collect())
}

pub fn write_histogram_csv<W: Write>(hist: &[(i64, usize)], mut out: W) -> std::io::Result<()> {
    writeln!(out, "value,count")?;
    for (value, count) in hist {
        writeln!(out, "{value},{count}")?;
    }
    Ok(())
}
