//! Regular tilings of a ring and the tori obtained by lifting them.
//!
//! The triangular ring is one fixed instance: a hexagon of six triangles
//! surrounded by a band of twelve more, eighteen nodes in all. Lifting makes
//! a second copy and joins each node to its twin, which yields a 3D torus.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodePair};

/// Planar positions of the triangular ring, node `i` at index `i`.
pub const TRIANGULAR_RING_POSITIONS: [(f64, f64); 18] = [
    (1.0, 1.0),
    (2.0, 0.0),
    (1.0, -1.0),
    (-1.0, -1.0),
    (-2.0, 0.0),
    (-1.0, 1.0),
    (0.0, 2.0),
    (2.0, 2.0),
    (3.0, 1.0),
    (4.0, 0.0),
    (3.0, -1.0),
    (2.0, -2.0),
    (0.0, -2.0),
    (-2.0, -2.0),
    (-3.0, -1.0),
    (-4.0, 0.0),
    (-3.0, 1.0),
    (-2.0, 2.0),
];

// 1-based, as the ring is usually drawn.
const TRIANGULAR_RING_EDGES: [(usize, usize); 36] = [
    (1, 2),
    (1, 6),
    (1, 7),
    (1, 8),
    (1, 9),
    (2, 9),
    (2, 10),
    (2, 11),
    (2, 3),
    (3, 11),
    (3, 12),
    (3, 13),
    (3, 4),
    (4, 13),
    (4, 14),
    (4, 15),
    (4, 5),
    (5, 15),
    (5, 16),
    (5, 17),
    (5, 6),
    (6, 17),
    (6, 18),
    (6, 7),
    (7, 8),
    (7, 18),
    (8, 9),
    (9, 10),
    (10, 11),
    (11, 12),
    (12, 13),
    (13, 14),
    (14, 15),
    (15, 16),
    (16, 17),
    (17, 18),
];

/// Layer offset used for the lifted copy in the 3D drawing.
const LIFT_OFFSET: (f64, f64) = (10.0, 3.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tiling {
    Triangular,
    Square,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusSpec {
    pub tiling: Tiling,
    pub lifted: bool,
    pub prism_triangulated: bool,
    /// Only used by the square frame.
    pub side: usize,
}

impl TorusSpec {
    pub fn new(tiling: Tiling, lifted: bool, prism_triangulated: bool) -> Result<Self> {
        if prism_triangulated && !(tiling == Tiling::Triangular && lifted) {
            return Err(Error::MalformedPrism(
                "prism triangulation needs a lifted triangular tiling".into(),
            ));
        }
        Ok(TorusSpec {
            tiling,
            lifted,
            prism_triangulated,
            side: 3,
        })
    }

    pub fn with_side(mut self, side: usize) -> Self {
        self.side = side;
        self
    }

    pub fn build(&self) -> Result<Embedded> {
        let flat = match self.tiling {
            Tiling::Triangular => Embedded::triangular_ring(),
            Tiling::Square => Embedded::square_frame(self.side)?,
            Tiling::Mixed => Embedded::mixed_tiling(),
        };
        if !self.lifted {
            return Ok(flat);
        }
        let lifted = flat.lift();
        if self.prism_triangulated {
            let prisms = lifted_prisms(&flat.graph);
            let graph = triangulate_prisms(&lifted.graph, &prisms)?;
            return Ok(Embedded {
                graph,
                positions: lifted.positions,
            });
        }
        Ok(lifted)
    }
}

/// A graph together with drawing coordinates. Coordinates are for plotting
/// only.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub graph: Graph,
    pub positions: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct CoordinateDump {
    nodes: Vec<NodeCoord>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct NodeCoord {
    id: usize,
    x: f64,
    y: f64,
}

impl Embedded {
    pub fn triangular_ring() -> Self {
        Embedded {
            graph: triangular_ring_2d(),
            positions: TRIANGULAR_RING_POSITIONS.to_vec(),
        }
    }

    pub fn square_frame(side: usize) -> Result<Self> {
        let graph = square_frame_2d(side)?;
        let positions = frame_cells(side)
            .into_iter()
            .map(|(r, c)| (c as f64, -(r as f64)))
            .collect();
        Ok(Embedded { graph, positions })
    }

    pub fn mixed_tiling() -> Self {
        let (graph, positions) = build_mixed_tiling();
        Embedded { graph, positions }
    }

    pub fn lift(&self) -> Self {
        let positions = self
            .positions
            .iter()
            .copied()
            .chain(
                self.positions
                    .iter()
                    .map(|&(x, y)| (x + LIFT_OFFSET.0, y + LIFT_OFFSET.1)),
            )
            .collect();
        Embedded {
            graph: lift_to_3d(&self.graph),
            positions,
        }
    }

    /// `{"nodes": [{"id", "x", "y"}...], "edges": [[u, v]...]}`
    pub fn to_json(&self) -> Result<String> {
        let dump = CoordinateDump {
            nodes: self
                .positions
                .iter()
                .enumerate()
                .map(|(id, &(x, y))| NodeCoord { id, x, y })
                .collect(),
            edges: self.graph.edges().iter().map(|e| (e.u(), e.v())).collect(),
        };
        Ok(serde_json::to_string_pretty(&dump)?)
    }
}

/// The 18-node, 36-edge triangulated hexagonal ring, relabeled to `0..18`.
/// Nodes 0..6 form the inner hexagon around the hole.
pub fn triangular_ring_2d() -> Graph {
    let pairs: Vec<_> = TRIANGULAR_RING_EDGES
        .iter()
        .map(|&(a, b)| (a - 1, b - 1))
        .collect();
    Graph::from_edge_list(&pairs, Some(18)).expect("static edge list")
}

/// Node coordinates `(row, col)` of the boundary of a `side x side` grid,
/// in id order.
fn frame_cells(side: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if r == 0 || c == 0 || r == side - 1 || c == side - 1 {
                cells.push((r, c));
            }
        }
    }
    cells
}

/// The boundary of a `side x side` grid graph: a one-cell-thick square
/// frame around a single hole.
pub fn square_frame_2d(side: usize) -> Result<Graph> {
    if side < 3 {
        return Err(Error::FrameTooSmall(side));
    }
    let cells = frame_cells(side);
    let id: HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(i, &rc)| (rc, i)).collect();
    let mut pairs = Vec::new();
    for &(r, c) in &cells {
        for next in [(r, c + 1), (r + 1, c)] {
            if let Some(&j) = id.get(&next) {
                pairs.push((id[&(r, c)], j));
            }
        }
    }
    Graph::from_edge_list(&pairs, Some(cells.len()))
}

/// Corners are identified by their coordinates rounded to this grid.
const GLUE_RESOLUTION: f64 = 1e-6;

#[derive(Default)]
struct CornerPool {
    index: HashMap<(i64, i64), usize>,
    positions: Vec<(f64, f64)>,
    pairs: Vec<(usize, usize)>,
}

impl CornerPool {
    fn corner(&mut self, p: (f64, f64)) -> usize {
        let key = (
            (p.0 / GLUE_RESOLUTION).round() as i64,
            (p.1 / GLUE_RESOLUTION).round() as i64,
        );
        let next = self.positions.len();
        *self.index.entry(key).or_insert_with(|| {
            self.positions.push(p);
            next
        })
    }

    fn polygon(&mut self, corners: &[(f64, f64)]) {
        let ids: Vec<usize> = corners.iter().map(|&p| self.corner(p)).collect();
        for i in 0..ids.len() {
            self.pairs.push((ids[i], ids[(i + 1) % ids.len()]));
        }
    }
}

fn build_mixed_tiling() -> (Graph, Vec<(f64, f64)>) {
    use std::f64::consts::PI;

    let hex: Vec<(f64, f64)> = (0..6)
        .map(|k| {
            let a = PI / 3.0 * k as f64;
            (a.cos(), a.sin())
        })
        .collect();
    let mut pool = CornerPool::default();
    for &p in &hex {
        pool.corner(p);
    }
    pool.polygon(&hex);

    // A unit square standing outward on each hexagon edge.
    let mut outer = Vec::new();
    for k in 0..6 {
        let (a, b) = (hex[k], hex[(k + 1) % 6]);
        let mid_angle = PI / 3.0 * k as f64 + PI / 6.0;
        let normal = (mid_angle.cos(), mid_angle.sin());
        let a_out = (a.0 + normal.0, a.1 + normal.1);
        let b_out = (b.0 + normal.0, b.1 + normal.1);
        pool.polygon(&[a, b, b_out, a_out]);
        outer.push((a_out, b_out));
    }

    // The 60 degree gap at each hexagon corner takes one equilateral triangle.
    for k in 0..6 {
        let corner = hex[(k + 1) % 6];
        let left = outer[k].1;
        let right = outer[(k + 1) % 6].0;
        pool.polygon(&[corner, left, right]);
    }

    let graph = Graph::from_edge_list(&pool.pairs, Some(pool.positions.len()))
        .expect("polygon edges are simple");
    (graph, pool.positions)
}

/// Central hexagon, a square on each of its edges, and a triangle in each
/// gap between neighboring squares. 18 nodes, 30 edges.
pub fn mixed_tiling_2d() -> Graph {
    build_mixed_tiling().0
}

/// Two copies of `g` (node `v` and `v + N`) joined by the edges `{v, v + N}`.
pub fn lift_to_3d(g: &Graph) -> Graph {
    let n = g.node_count();
    let mut pairs = Vec::with_capacity(2 * g.edge_count() + n);
    for e in g.edges() {
        pairs.push((e.u(), e.v()));
        pairs.push((e.u() + n, e.v() + n));
    }
    pairs.extend((0..n).map(|v| (v, v + n)));
    Graph::from_edge_list(&pairs, Some(2 * n)).expect("lift of a simple graph")
}

/// A triangular prism: `bottom[i]` is joined to `top[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prism {
    pub bottom: [usize; 3],
    pub top: [usize; 3],
}

/// Splits each prism into tetrahedra by adding `bottom[i] -> top[(i+1) % 3]`
/// for each `i`. Diagonals that coincide on a shared face are added once.
pub fn triangulate_prisms(g: &Graph, prisms: &[Prism]) -> Result<Graph> {
    let mut pairs: BTreeSet<NodePair> = g.edges().iter().copied().collect();
    for p in prisms {
        validate_prism(g, p)?;
        for i in 0..3 {
            pairs.insert(NodePair::new(p.bottom[i], p.top[(i + 1) % 3])?);
        }
    }
    let pairs: Vec<_> = pairs.into_iter().map(|e| (e.u(), e.v())).collect();
    Graph::from_edge_list(&pairs, Some(g.node_count()))
}

fn validate_prism(g: &Graph, p: &Prism) -> Result<()> {
    let all: BTreeSet<usize> = p.bottom.iter().chain(&p.top).copied().collect();
    if all.len() != 6 {
        return Err(Error::MalformedPrism(format!("{p:?} repeats a node")));
    }
    if let Some(&v) = all.iter().find(|&&v| v >= g.node_count()) {
        return Err(Error::UnknownNode {
            node: v,
            len: g.node_count(),
        });
    }
    for tri in [&p.bottom, &p.top] {
        for i in 0..3 {
            if !g.has_edge(tri[i], tri[(i + 1) % 3]) {
                return Err(Error::MalformedPrism(format!("{tri:?} is not a triangle")));
            }
        }
    }
    for i in 0..3 {
        if !g.has_edge(p.bottom[i], p.top[i]) {
            return Err(Error::MalformedPrism(format!(
                "{} and {} are not joined",
                p.bottom[i], p.top[i]
            )));
        }
    }
    Ok(())
}

/// Triangles of a planar graph, each as an ascending id triple.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for e in g.edges() {
        for &w in g.neighbors(e.v()).expect("valid node") {
            if w > e.v() && g.has_edge(e.u(), w) {
                out.push([e.u(), e.v(), w]);
            }
        }
    }
    out
}

/// Prisms of `lift_to_3d(flat)`, one per triangle of `flat`.
pub fn lifted_prisms(flat: &Graph) -> Vec<Prism> {
    let n = flat.node_count();
    triangles(flat)
        .into_iter()
        .map(|t| Prism {
            bottom: t,
            top: [t[0] + n, t[1] + n, t[2] + n],
        })
        .collect()
}
