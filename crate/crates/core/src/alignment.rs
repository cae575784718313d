//! Degree and Ricci matrix comparison.
//!
//! Each node gets a signature row: its neighbors' degrees (DMC) or its
//! neighbors' node curvatures (RMC), sorted ascending and zero-padded on the
//! right to the common maximum degree of the two graphs. Rows are compared
//! by Euclidean distance and matched with an exact assignment solver.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::node_curvatures_exact;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignatureMode {
    /// Neighbor degrees (DMC).
    Degree,
    /// Neighbor Forman-Ricci node curvatures (RMC).
    Ricci,
}

impl SignatureMode {
    pub fn short_name(&self) -> &'static str {
        match self {
            SignatureMode::Degree => "dmc",
            SignatureMode::Ricci => "rmc",
        }
    }
}

impl fmt::Display for SignatureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for SignatureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dmc" | "degree" => Ok(SignatureMode::Degree),
            "rmc" | "ricci" => Ok(SignatureMode::Ricci),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignatureMatrix {
    width: usize,
    rows: Vec<f64>,
    node_order: Vec<usize>,
    mode: SignatureMode,
}

impl SignatureMatrix {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.node_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_order.is_empty()
    }

    pub fn mode(&self) -> SignatureMode {
        self.mode
    }

    pub fn node_order(&self) -> &[usize] {
        &self.node_order
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.width..(i + 1) * self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.len()).map(move |i| self.row(i))
    }
}

fn build_signature(
    g: &Graph,
    width: usize,
    mode: SignatureMode,
    feature: impl Fn(usize) -> f64,
) -> Result<SignatureMatrix> {
    let max_degree = g.max_degree();
    if width < max_degree {
        return Err(Error::WidthTooSmall { width, max_degree });
    }
    let mut rows = vec![0.0; g.node_count() * width];
    for v in g.nodes() {
        let mut values: Vec<f64> = g.neighbors(v)?.iter().map(|&x| feature(x)).collect();
        values.sort_by(f64::total_cmp);
        rows[v * width..v * width + values.len()].copy_from_slice(&values);
    }
    Ok(SignatureMatrix {
        width,
        rows,
        node_order: g.nodes().collect(),
        mode,
    })
}

pub fn degree_matrix(g: &Graph, width: usize) -> Result<SignatureMatrix> {
    let degrees = g.degrees();
    build_signature(g, width, SignatureMode::Degree, |x| degrees[x] as f64)
}

pub fn ricci_matrix(g: &Graph, width: usize) -> Result<SignatureMatrix> {
    let curvature = node_curvatures_exact(g)?;
    build_signature(g, width, SignatureMode::Ricci, |x| curvature[x] as f64)
}

pub fn signature_matrix(g: &Graph, width: usize, mode: SignatureMode) -> Result<SignatureMatrix> {
    match mode {
        SignatureMode::Degree => degree_matrix(g, width),
        SignatureMode::Ricci => ricci_matrix(g, width),
    }
}

pub fn common_max_degree(g1: &Graph, g2: &Graph) -> usize {
    g1.max_degree().max(g2.max_degree())
}

/// Dense row-major cost matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Config(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CostMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::NotSquare {
                rows: rows.len(),
                cols: bad.len(),
            });
        }
        CostMatrix::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> CostMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        CostMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

/// Euclidean distance between every row of `a` and every row of `b`.
pub fn cost_matrix(a: &SignatureMatrix, b: &SignatureMatrix) -> Result<CostMatrix> {
    if a.width != b.width {
        return Err(Error::SignatureMismatch(format!(
            "widths {} and {}",
            a.width, b.width
        )));
    }
    if a.mode != b.mode {
        return Err(Error::SignatureMismatch(format!(
            "modes {} and {}",
            a.mode, b.mode
        )));
    }
    let data: Vec<f64> = (0..a.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let ra = a.row(i);
            b.rows().map(move |rb| {
                ra.iter()
                    .zip(rb)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt()
            })
        })
        .collect();
    CostMatrix::new(a.len(), b.len(), data)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    /// `mapping[i]` is the node of the second graph matched to node `i`.
    pub mapping: Vec<usize>,
    /// Cost of each matched pair, indexed like `mapping`.
    pub costs: Vec<f64>,
    pub total_cost: f64,
}

impl Assignment {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "g1_node,g2_node,row_cost")?;
        for (i, (&j, c)) in self.mapping.iter().zip(&self.costs).enumerate() {
            writeln!(out, "{i},{j},{c}")?;
        }
        Ok(())
    }
}

const FREE: usize = usize::MAX;

/// Minimum-cost perfect assignment on a square matrix.
///
/// Shortest augmenting paths with dual potentials, one row at a time in
/// ascending order; O(n^3). Columns are scanned in ascending order and a
/// tie in path length goes to the lowest column, except that an unassigned
/// column beats an assigned one. The result is a pure function of the
/// matrix.
pub fn hungarian(c: &CostMatrix) -> Result<Assignment> {
    if c.rows != c.cols {
        return Err(Error::NotSquare {
            rows: c.rows,
            cols: c.cols,
        });
    }
    for (k, &value) in c.data.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::InvalidCost {
                row: k / c.cols,
                col: k % c.cols,
                value,
            });
        }
    }

    let n = c.rows;
    let mut u = vec![0.0f64; n];
    let mut v = vec![0.0f64; n];
    let mut col_for_row = vec![FREE; n];
    let mut row_for_col = vec![FREE; n];

    let mut path_len = vec![0.0f64; n];
    let mut prev_row = vec![FREE; n];
    let mut row_seen = vec![false; n];
    let mut col_seen = vec![false; n];
    let mut remaining: Vec<usize> = Vec::with_capacity(n);

    for start in 0..n {
        path_len.fill(f64::INFINITY);
        prev_row.fill(FREE);
        row_seen.fill(false);
        col_seen.fill(false);
        remaining.clear();
        remaining.extend(0..n);

        let mut min_len = 0.0;
        let mut row = start;
        let sink = loop {
            row_seen[row] = true;
            let mut lowest = f64::INFINITY;
            let mut pick = FREE;
            for (slot, &j) in remaining.iter().enumerate() {
                let reduced = min_len + c.get(row, j) - u[row] - v[j];
                if reduced < path_len[j] {
                    prev_row[j] = row;
                    path_len[j] = reduced;
                }
                if path_len[j] < lowest
                    || (path_len[j] == lowest
                        && row_for_col[j] == FREE
                        && pick != FREE
                        && row_for_col[remaining[pick]] != FREE)
                {
                    lowest = path_len[j];
                    pick = slot;
                }
            }
            min_len = lowest;
            let j = remaining.remove(pick);
            col_seen[j] = true;
            if row_for_col[j] == FREE {
                break j;
            }
            row = row_for_col[j];
        };

        u[start] += min_len;
        for i in 0..n {
            if row_seen[i] && i != start {
                u[i] += min_len - path_len[col_for_row[i]];
            }
        }
        for j in 0..n {
            if col_seen[j] {
                v[j] -= min_len - path_len[j];
            }
        }

        let mut j = sink;
        loop {
            let i = prev_row[j];
            row_for_col[j] = i;
            let displaced = std::mem::replace(&mut col_for_row[i], j);
            if i == start {
                break;
            }
            j = displaced;
        }
    }

    let costs: Vec<f64> = col_for_row
        .iter()
        .enumerate()
        .map(|(i, &j)| c.get(i, j))
        .collect();
    let total_cost = costs.iter().sum();
    Ok(Assignment {
        mapping: col_for_row,
        costs,
        total_cost,
    })
}

/// Builds both signature matrices at the common maximum degree and matches
/// their rows.
pub fn align(g1: &Graph, g2: &Graph, mode: SignatureMode) -> Result<Assignment> {
    if g1.node_count() != g2.node_count() {
        return Err(Error::SizeMismatch(g1.node_count(), g2.node_count()));
    }
    let width = common_max_degree(g1, g2);
    let m1 = signature_matrix(g1, width, mode)?;
    let m2 = signature_matrix(g2, width, mode)?;
    let mut a = hungarian(&cost_matrix(&m1, &m2)?)?;
    // Rows are in node order for both graphs; translate columns explicitly.
    a.mapping = a.mapping.iter().map(|&j| m2.node_order()[j]).collect();
    Ok(a)
}

/// Number of nodes mapped to the node with the same id, and that count as a
/// percentage of all nodes.
pub fn score_alignment(a: &Assignment) -> (usize, f64) {
    let correct = a
        .mapping
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i == j)
        .count();
    (correct, percentage(correct, a.mapping.len()))
}

/// Like [`score_alignment`], but a mismatch still counts when the two nodes
/// are structurally equivalent in `g` (see [`are_nodes_equivalent`]).
pub fn score_alignment_geometric(a: &Assignment, g: &Graph) -> Result<(usize, f64)> {
    let mut correct = 0;
    for (i, &j) in a.mapping.iter().enumerate() {
        if i == j || are_nodes_equivalent(g, i, j)? {
            correct += 1;
        }
    }
    Ok((correct, percentage(correct, a.mapping.len())))
}

pub(crate) fn percentage(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * count as f64 / total as f64
    }
}

/// For each neighbor of `v`, the sorted degrees of that neighbor's
/// neighbors.
pub fn neighborhood_signature(g: &Graph, v: usize) -> Result<Vec<Vec<usize>>> {
    g.neighbors(v)?
        .iter()
        .map(|&x| {
            let mut d: Vec<usize> = g
                .neighbors(x)?
                .iter()
                .map(|&y| g.degree(y))
                .collect::<Result<_>>()?;
            d.sort_unstable();
            Ok(d)
        })
        .collect()
}

/// Two low-degree nodes (degree 1 to 3) are equivalent when some ordering of
/// one node's neighborhood signature equals the other's.
pub fn are_nodes_equivalent(g: &Graph, a: usize, b: usize) -> Result<bool> {
    let low = |d: usize| (1..=3).contains(&d);
    if !(low(g.degree(a)?) && low(g.degree(b)?)) {
        return Ok(false);
    }
    // Some permutation of one list equals the other iff the multisets agree.
    let mut sa = neighborhood_signature(g, a)?;
    let mut sb = neighborhood_signature(g, b)?;
    sa.sort();
    sb.sort();
    Ok(sa == sb)
}
