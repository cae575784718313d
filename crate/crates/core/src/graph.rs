//! Undirected simple graphs with dense integer node ids.
//!
//! A [`Graph`] is immutable once built. Adjacency lists are kept sorted so
//! that every traversal, and every matrix built from one, is reproducible.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

/// An unordered node pair stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePair {
    u: usize,
    v: usize,
}

impl NodePair {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(NodePair { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(NodePair { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// The endpoint that is not `x`, if `x` is an endpoint at all.
    pub fn other(&self, x: usize) -> Option<usize> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn shares_endpoint(&self, other: &NodePair) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }
}

impl fmt::Display for NodePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<NodePair>,
    node_weights: Option<Vec<f64>>,
    edge_weights: Option<Vec<f64>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// A graph with `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: Vec::new(),
            node_weights: None,
            edge_weights: None,
            labels: None,
        }
    }

    /// Builds a graph from id pairs. Duplicate pairs (in either orientation)
    /// collapse to one edge. The node count is `max(n, max id + 1)`.
    pub fn from_edge_list(pairs: &[(usize, usize)], n: Option<usize>) -> Result<Self> {
        let mut edges = pairs
            .iter()
            .map(|&(a, b)| NodePair::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        edges.sort_unstable();
        edges.dedup();

        let referenced = edges.iter().map(|e| e.v + 1).max().unwrap_or(0);
        let len = n.unwrap_or(0).max(referenced);

        let mut adjacency = vec![Vec::new(); len];
        for e in &edges {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(Graph {
            adjacency,
            edges,
            node_weights: None,
            edge_weights: None,
            labels: None,
        })
    }

    pub fn with_node_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.node_count() {
            return Err(Error::WeightCount {
                expected: self.node_count(),
                got: weights.len(),
            });
        }
        check_positive(&weights)?;
        self.node_weights = Some(weights);
        Ok(self)
    }

    /// Edge weights aligned with [`Graph::edges`].
    pub fn with_edge_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.edge_count() {
            return Err(Error::WeightCount {
                expected: self.edge_count(),
                got: weights.len(),
            });
        }
        check_positive(&weights)?;
        self.edge_weights = Some(weights);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count() {
            return Err(Error::WeightCount {
                expected: self.node_count(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> Range<usize> {
        0..self.node_count()
    }

    /// Edges in ascending canonical order.
    pub fn edges(&self) -> &[NodePair] {
        &self.edges
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::UnknownNode {
                node: v,
                len: self.node_count(),
            })
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.adjacency[v].len())
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check_node(v)?;
        Ok(&self.adjacency[v])
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.node_count() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: NodePair) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn is_weighted(&self) -> bool {
        self.node_weights.is_some() || self.edge_weights.is_some()
    }

    /// Weight of node `v`; 1 when the graph carries no node weights.
    pub fn node_weight(&self, v: usize) -> f64 {
        self.node_weights.as_ref().map_or(1.0, |w| w[v])
    }

    /// Weight of the edge at `index` in [`Graph::edges`]; 1 when unweighted.
    pub fn edge_weight(&self, index: usize) -> f64 {
        self.edge_weights.as_ref().map_or(1.0, |w| w[index])
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.node_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(reached == self.node_count())
    }

    /// Subgraph induced by `keep`, relabeled densely in ascending parent-id
    /// order. Each node's label is its parent id. Weights carry over.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        for &v in &kept {
            self.check_node(v)?;
        }

        let mut new_id = vec![usize::MAX; self.node_count()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }

        let mut pairs = Vec::new();
        let mut weights = Vec::new();
        for (idx, e) in self.edges.iter().enumerate() {
            let (a, b) = (new_id[e.u], new_id[e.v]);
            if a != usize::MAX && b != usize::MAX {
                pairs.push((a, b));
                weights.push(self.edge_weight(idx));
            }
        }

        // Parent edges are sorted and relabeling is monotone, so `pairs`
        // is already in canonical order and aligned with `weights`.
        let mut sub = Graph::from_edge_list(&pairs, Some(kept.len()))?;
        if self.edge_weights.is_some() {
            sub = sub.with_edge_weights(weights)?;
        }
        if let Some(nw) = &self.node_weights {
            sub = sub.with_node_weights(kept.iter().map(|&v| nw[v]).collect())?;
        }
        sub.with_labels(kept.iter().map(|v| v.to_string()).collect())
    }

    /// Copy of this graph without the edges at the given indices.
    pub fn without_edges(&self, removed: &[bool]) -> Graph {
        let mut pairs = Vec::with_capacity(self.edge_count());
        let mut weights = Vec::with_capacity(self.edge_count());
        for (idx, e) in self.edges.iter().enumerate() {
            if !removed.get(idx).copied().unwrap_or(false) {
                pairs.push((e.u, e.v));
                weights.push(self.edge_weight(idx));
            }
        }
        let mut g =
            Graph::from_edge_list(&pairs, Some(self.node_count())).expect("edges of a valid graph");
        g.node_weights = self.node_weights.clone();
        g.labels = self.labels.clone();
        if self.edge_weights.is_some() {
            g.edge_weights = Some(weights);
        }
        g
    }
}

fn check_positive(weights: &[f64]) -> Result<()> {
    match weights.iter().find(|w| !w.is_finite() || **w <= 0.0) {
        Some(&w) => Err(Error::NonPositiveWeight(w)),
        None => Ok(()),
    }
}
