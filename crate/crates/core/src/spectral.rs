//! Graph Laplacian and the curvature identity it satisfies.
//!
//! For an unweighted graph with Laplacian `L = D - A` and the labeled
//! signature vector `s` of node `i`,
//!
//! ```text
//! Ric(v_i) - (L s)_i = 2 deg(v_i) (1 - deg(v_i))
//! ```
//!
//! Everything here is integer-valued so the identity is checked exactly.

use crate::curvature::node_curvatures_exact;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense `N x N` Laplacian in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl LaplacianMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn apply_row(&self, i: usize, x: &[i64]) -> i64 {
        self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| self.apply_row(i, x)).collect()
    }

    /// `x^T L x`.
    pub fn quadratic_form(&self, x: &[i64]) -> i64 {
        self.apply(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }
}

/// `D - A` with the degree diagonal and the 0/1 adjacency matrix.
pub fn laplacian(g: &Graph) -> LaplacianMatrix {
    let n = g.node_count();
    let mut entries = vec![0i64; n * n];
    for v in g.nodes() {
        entries[v * n + v] = g.degree(v).expect("valid node") as i64;
    }
    for e in g.edges() {
        entries[e.u() * n + e.v()] = -1;
        entries[e.v() * n + e.u()] = -1;
    }
    LaplacianMatrix { n, entries }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSignatureVector {
    pub owner: usize,
    pub values: Vec<i64>,
}

/// `s_l = deg(v_l)` when `v_l` is adjacent to the owner, else `deg(owner)`.
/// The owner's own slot takes the second branch.
pub fn labeled_signature_vector(g: &Graph, owner: usize) -> Result<LabeledSignatureVector> {
    let own = g.degree(owner)? as i64;
    let mut values = vec![own; g.node_count()];
    for &l in g.neighbors(owner)? {
        values[l] = g.degree(l)? as i64;
    }
    Ok(LabeledSignatureVector { owner, values })
}

/// `Ric(v_i) - (L s)_i` for the labeled signature vector of `i`.
pub fn curvature_laplacian_residual(g: &Graph, i: usize) -> Result<i64> {
    let ric = node_curvatures_exact(g)?;
    let lap = laplacian(g);
    residual_with(g, &lap, &ric, i)
}

/// All residuals, reusing one Laplacian and one curvature pass.
pub fn curvature_laplacian_residuals(g: &Graph) -> Result<Vec<i64>> {
    let ric = node_curvatures_exact(g)?;
    let lap = laplacian(g);
    g.nodes().map(|i| residual_with(g, &lap, &ric, i)).collect()
}

fn residual_with(g: &Graph, lap: &LaplacianMatrix, ric: &[i64], i: usize) -> Result<i64> {
    if g.is_weighted() {
        return Err(Error::Weighted);
    }
    let s = labeled_signature_vector(g, i)?;
    Ok(ric[i] - lap.apply_row(i, &s.values))
}
