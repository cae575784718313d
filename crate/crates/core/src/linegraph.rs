//! Line graphs: one node per original edge, adjacent when the original edges
//! share an endpoint.

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodePair};

#[derive(Clone, Debug)]
pub struct LineGraphResult {
    pub graph: Graph,
    /// Original edge behind each new node.
    pub origin: Vec<NodePair>,
}

/// New node `k` is `g.edges()[k]`, so ids follow the lexicographic order of
/// the original edges. Each new node is labeled `"u-v"`.
pub fn line_graph(g: &Graph) -> Result<LineGraphResult> {
    if g.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    for (k, e) in g.edges().iter().enumerate() {
        incident[e.u()].push(k);
        incident[e.v()].push(k);
    }
    let mut pairs = Vec::with_capacity(edge_pair_count(g));
    for star in &incident {
        for (i, &a) in star.iter().enumerate() {
            for &b in &star[i + 1..] {
                pairs.push((a, b));
            }
        }
    }
    let origin = g.edges().to_vec();
    let labels = origin
        .iter()
        .map(|e| format!("{}-{}", e.u(), e.v()))
        .collect();
    let graph = Graph::from_edge_list(&pairs, Some(origin.len()))?.with_labels(labels)?;
    Ok(LineGraphResult { graph, origin })
}

/// `sum_v C(deg v, 2)`, the edge count of the line graph.
pub fn edge_pair_count(g: &Graph) -> usize {
    g.degrees()
        .iter()
        .map(|&d| d * d.saturating_sub(1) / 2)
        .sum()
}

impl LineGraphResult {
    pub fn write_origin_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "new_id,orig_u,orig_v")?;
        for (k, e) in self.origin.iter().enumerate() {
            writeln!(out, "{k},{},{}", e.u(), e.v())?;
        }
        Ok(())
    }
}
