//! End-to-end runs: hole identification on the triangular torus, the
//! line-graph PPI alignment rounds, and the curvature-Laplacian check suite.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alignment::{align, percentage, ricci_matrix, score_alignment, SignatureMode};
use crate::curvature::{curvature_distribution, node_curvatures_exact};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::load_graphml;
use crate::linegraph::line_graph;
use crate::sampling::{delete_edges_randomly, random_walk_sample, RngHandle, DEFAULT_MAX_ITER};
use crate::spectral::curvature_laplacian_residuals;
use crate::tessellation::{lift_to_3d, triangular_ring_2d};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub input_path: PathBuf,
    pub intermediate_sample_size: usize,
    pub subgraph_size: usize,
    pub deletion_probability: f64,
    pub rounds: usize,
    pub seed: u64,
    pub mode: SignatureMode,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            input_path: PathBuf::from("combined_ppi.graphml"),
            intermediate_sample_size: 1000,
            subgraph_size: 500,
            deletion_probability: 0.01,
            rounds: 10,
            seed: 0,
            mode: SignatureMode::Ricci,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.subgraph_size == 0 {
            return Err(Error::Config("subgraph size must be positive".into()));
        }
        if self.subgraph_size > self.intermediate_sample_size {
            return Err(Error::Config(format!(
                "subgraph size {} exceeds intermediate sample size {}",
                self.subgraph_size, self.intermediate_sample_size
            )));
        }
        if !(0.0..=1.0).contains(&self.deletion_probability) {
            return Err(Error::Probability(self.deletion_probability));
        }
        if self.rounds == 0 {
            return Err(Error::Config("at least one round is required".into()));
        }
        Ok(())
    }

    /// Applies `key=value` lines (`#` comments allowed). Keys match the
    /// command-line flags: `input`, `rounds`, `p`, `size`, `intermediate`,
    /// `seed`, `mode`.
    pub fn apply_key_values(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", i + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
        where
            T::Err: std::fmt::Display,
        {
            value
                .parse()
                .map_err(|e| Error::Config(format!("{key}: {e}")))
        }
        match key {
            "input" | "input_path" => self.input_path = PathBuf::from(value),
            "rounds" => self.rounds = parse(key, value)?,
            "p" | "deletion_probability" => self.deletion_probability = parse(key, value)?,
            "size" | "subgraph_size" => self.subgraph_size = parse(key, value)?,
            "intermediate" | "intermediate_sample_size" => {
                self.intermediate_sample_size = parse(key, value)?
            }
            "seed" => self.seed = parse(key, value)?,
            "mode" => self.mode = value.parse()?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = ExperimentConfig::default();
        cfg.apply_key_values(&text)?;
        Ok(cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundResult {
    pub round: usize,
    pub correct: usize,
    pub percentage: f64,
    pub g1_edges: usize,
    pub g2_edges: usize,
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub library_version: String,
    pub intermediate_nodes: usize,
    pub intermediate_edges: usize,
    pub line_graph_nodes: usize,
    pub line_graph_edges: usize,
    pub setup_wall_time_s: f64,
    pub per_round: Vec<RoundResult>,
    pub mean_percentage: f64,
}

impl ExperimentReport {
    /// Copy with every wall-time field zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.setup_wall_time_s = 0.0;
        for round in &mut r.per_round {
            round.wall_time_s = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// `round,count,percentage`, one line per round.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("round,count,percentage\n");
        for r in &self.per_round {
            let _ = writeln!(out, "{},{},{:.1}", r.round, r.correct, r.percentage);
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("Round | Absolute Node Count | Percentage\n--- | --- | ---\n");
        for r in &self.per_round {
            let _ = writeln!(out, "{} | {} | {:.1}%", r.round, r.correct, r.percentage);
        }
        let _ = writeln!(out, "\nMean percentage: {:.1}%", self.mean_percentage);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl ReportFormat {
    /// Guesses from the extension; JSON when unknown.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => ReportFormat::Csv,
            Some("md") | Some("markdown") => ReportFormat::Markdown,
            _ => ReportFormat::Json,
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::Config(format!("unknown report format {other:?}"))),
        }
    }
}

pub fn emit_report(
    r: &ExperimentReport,
    path: impl AsRef<Path>,
    format: ReportFormat,
) -> Result<()> {
    let body = match format {
        ReportFormat::Json => r.to_json()?,
        ReportFormat::Csv => r.to_csv(),
        ReportFormat::Markdown => r.to_markdown(),
    };
    let path = path.as_ref();
    fs::write(path, body).map_err(|e| Error::io(path, e))
}

pub fn run_ppi_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let graph = load_graphml(&cfg.input_path)?;
    run_ppi_on_graph(&graph, cfg)
}

/// The PPI pipeline on an already loaded graph.
///
/// One random-walk sample of `intermediate_sample_size` nodes is taken from
/// `graph` and turned into its line graph. Every round then walks the line
/// graph for `subgraph_size` nodes (G1), deletes edges of G1 with
/// probability `deletion_probability` (G2), aligns G1 to G2 and counts nodes
/// mapped to themselves. The setup uses `seed`; round `r` (1-based) uses
/// `seed + r`.
pub fn run_ppi_on_graph(graph: &Graph, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let setup_start = Instant::now();
    let mut rng = RngHandle::new(cfg.seed);
    let sample = random_walk_sample(
        graph,
        cfg.intermediate_sample_size,
        DEFAULT_MAX_ITER,
        &mut rng,
    )
    .map_err(|e| match e {
        Error::SampleSize { size, len } => Error::SamplingExhausted {
            round: 0,
            got: len,
            want: size,
        },
        other => other,
    })?;
    let universe = line_graph(&sample)?.graph;
    let setup_wall_time_s = setup_start.elapsed().as_secs_f64();

    let per_round = (1..=cfg.rounds)
        .into_par_iter()
        .map(|round| run_round(&universe, cfg, round))
        .collect::<Result<Vec<_>>>()?;

    let mean_percentage =
        per_round.iter().map(|r| r.percentage).sum::<f64>() / per_round.len() as f64;
    Ok(ExperimentReport {
        config: cfg.clone(),
        library_version: VERSION.to_string(),
        intermediate_nodes: sample.node_count(),
        intermediate_edges: sample.edge_count(),
        line_graph_nodes: universe.node_count(),
        line_graph_edges: universe.edge_count(),
        setup_wall_time_s,
        per_round,
        mean_percentage,
    })
}

fn run_round(universe: &Graph, cfg: &ExperimentConfig, round: usize) -> Result<RoundResult> {
    let start = Instant::now();
    let mut rng = RngHandle::new(cfg.seed.wrapping_add(round as u64));
    let g1 = random_walk_sample(universe, cfg.subgraph_size, DEFAULT_MAX_ITER, &mut rng).map_err(
        |e| match e {
            Error::SampleSize { size, len } => Error::SamplingExhausted {
                round,
                got: len,
                want: size,
            },
            other => other,
        },
    )?;
    if g1.node_count() < cfg.subgraph_size {
        return Err(Error::SamplingExhausted {
            round,
            got: g1.node_count(),
            want: cfg.subgraph_size,
        });
    }
    let g2 = delete_edges_randomly(&g1, cfg.deletion_probability, &mut rng)?;
    let assignment = align(&g1, &g2, cfg.mode)?;
    let (correct, _) = score_alignment(&assignment);
    Ok(RoundResult {
        round,
        correct,
        percentage: percentage(correct, cfg.subgraph_size),
        g1_edges: g1.edge_count(),
        g2_edges: g2.edge_count(),
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Curvature class of a torus node, from most to least negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CurvatureClass {
    A,
    B,
    C,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusReport {
    pub nodes: usize,
    pub edges: usize,
    /// `(curvature, count)` ascending.
    pub histogram: Vec<(i64, usize)>,
    /// Curvature of classes A, B and C.
    pub class_values: Vec<i64>,
    pub class_sizes: Vec<usize>,
    pub classes: Vec<CurvatureClass>,
    /// Distinct Ricci rows, ascending, with the classes that produce them.
    pub row_forms: Vec<(Vec<i64>, Vec<CurvatureClass>)>,
    pub mapping: Vec<usize>,
    pub total_cost: f64,
    pub a_nodes_to_a: usize,
    pub a_to_a_rate: f64,
    pub class_preserved_rate: f64,
}

/// Aligns two copies of the lifted triangular torus with RMC and checks that
/// the hole (class A, the most negative curvature) maps onto itself.
pub fn run_torus_experiment() -> Result<TorusReport> {
    let torus = lift_to_3d(&triangular_ring_2d());
    let histogram = curvature_distribution(&torus)?;
    let curvature = node_curvatures_exact(&torus)?;

    let class_values: Vec<i64> = histogram.iter().map(|&(v, _)| v).collect();
    let class_of = |c: i64| -> CurvatureClass {
        match class_values.iter().position(|&v| v == c) {
            Some(0) => CurvatureClass::A,
            Some(1) => CurvatureClass::B,
            _ => CurvatureClass::C,
        }
    };
    let classes: Vec<CurvatureClass> = curvature.iter().map(|&c| class_of(c)).collect();

    let width = torus.max_degree();
    let m = ricci_matrix(&torus, width)?;
    let mut row_forms: Vec<(Vec<i64>, Vec<CurvatureClass>)> = Vec::new();
    for v in torus.nodes() {
        let row: Vec<i64> = m.row(v).iter().map(|&x| x as i64).collect();
        match row_forms.iter_mut().find(|(r, _)| *r == row) {
            Some((_, cs)) if cs.contains(&classes[v]) => {}
            Some((_, cs)) => cs.push(classes[v]),
            None => row_forms.push((row, vec![classes[v]])),
        }
    }
    row_forms.sort();

    let copy = torus.clone();
    let assignment = align(&torus, &copy, SignatureMode::Ricci)?;
    let a_nodes: Vec<usize> = torus
        .nodes()
        .filter(|&v| classes[v] == CurvatureClass::A)
        .collect();
    let a_nodes_to_a = a_nodes
        .iter()
        .filter(|&&v| classes[assignment.mapping[v]] == CurvatureClass::A)
        .count();
    let preserved = torus
        .nodes()
        .filter(|&v| classes[assignment.mapping[v]] == classes[v])
        .count();

    Ok(TorusReport {
        nodes: torus.node_count(),
        edges: torus.edge_count(),
        class_sizes: histogram.iter().map(|&(_, n)| n).collect(),
        histogram,
        class_values,
        classes,
        row_forms,
        total_cost: assignment.total_cost,
        mapping: assignment.mapping,
        a_nodes_to_a,
        a_to_a_rate: percentage(a_nodes_to_a, a_nodes.len()),
        class_preserved_rate: percentage(preserved, torus.node_count()),
    })
}

impl TorusReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "torus: {} nodes, {} edges", self.nodes, self.edges);
        let _ = writeln!(out, "curvature histogram (value,count):");
        for (v, n) in &self.histogram {
            let _ = writeln!(out, "  {v},{n}");
        }
        for (name, (v, n)) in ["A", "B", "C"]
            .iter()
            .zip(self.class_values.iter().zip(&self.class_sizes))
        {
            let _ = writeln!(out, "class {name}: Ric = {v}, {n} nodes");
        }
        let _ = writeln!(out, "Ricci row forms:");
        for (row, cs) in &self.row_forms {
            let _ = writeln!(out, "  {cs:?}: {row:?}");
        }
        let _ = writeln!(out, "RMC total cost: {}", self.total_cost);
        let _ = writeln!(
            out,
            "A nodes mapped to A nodes: {} ({:.1}%)",
            self.a_nodes_to_a, self.a_to_a_rate
        );
        let _ = writeln!(out, "class preserved: {:.1}%", self.class_preserved_rate);
        out
    }
}

/// Connected graph on `n` nodes: a random recursive tree plus each remaining
/// pair independently with probability `density`.
pub fn random_connected_graph(n: usize, density: f64, rng: &mut RngHandle) -> Graph {
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((rng.index(v), v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.unit() < density {
                pairs.push((a, b));
            }
        }
    }
    Graph::from_edge_list(&pairs, Some(n)).expect("no self-loops")
}

#[derive(Clone, Debug, Serialize)]
pub struct CleCheck {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    /// Nodes where the residual differs from `2 deg (1 - deg)`.
    pub failures: usize,
}

impl CleCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn check_cle(name: impl Into<String>, g: &Graph) -> Result<CleCheck> {
    let residuals = curvature_laplacian_residuals(g)?;
    let failures = g
        .nodes()
        .filter(|&v| {
            let d = g.degree(v).expect("valid node") as i64;
            residuals[v] != 2 * d * (1 - d)
        })
        .count();
    Ok(CleCheck {
        name: name.into(),
        nodes: g.node_count(),
        edges: g.edge_count(),
        failures,
    })
}

/// The identity on the lifted torus, `L(K3)`, `L(K1,3)` and `count` seeded
/// random connected graphs with 2 to `max_n` nodes.
pub fn verify_cle(count: usize, max_n: usize, seed: u64) -> Result<Vec<CleCheck>> {
    if max_n < 2 {
        return Err(Error::Config("max-n must be at least 2".into()));
    }
    let mut checks = vec![
        check_cle(
            "lifted triangular torus",
            &lift_to_3d(&triangular_ring_2d()),
        )?,
        check_cle(
            "L(K3)",
            &line_graph(&Graph::from_edge_list(&[(0, 1), (1, 2), (0, 2)], None)?)?.graph,
        )?,
        check_cle(
            "L(K1,3)",
            &line_graph(&Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3)], None)?)?.graph,
        )?,
    ];
    let mut rng = RngHandle::new(seed);
    for k in 0..count {
        let n = 2 + rng.index(max_n - 1);
        let density = rng.unit() * 0.5;
        let g = random_connected_graph(n, density, &mut rng);
        checks.push(check_cle(format!("random #{k}"), &g)?);
    }
    Ok(checks)
}
