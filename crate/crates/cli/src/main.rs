use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rmc_core::curvature::{curvature_distribution, write_histogram_csv};
use rmc_core::experiments::{emit_report, run_ppi_experiment, run_torus_experiment, verify_cle};
use rmc_core::io::{load_graph, save_edge_list};
use rmc_core::tessellation::{Tiling, TorusSpec};
use rmc_core::{align, line_graph, score_alignment, ExperimentConfig, ReportFormat, SignatureMode};

#[derive(Parser)]
#[command(name = "rmc", version, about = "Curvature-based network alignment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sampled line-graph alignment experiment on a GraphML network.
    Ppi(PpiArgs),
    /// Align two copies of the lifted triangular torus.
    Torus {
        /// Write the report as JSON here instead of printing text.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the curvature histogram as `value,count` CSV.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Check the curvature-Laplacian identity on fixed and random graphs.
    VerifyCle {
        #[arg(long, default_value_t = 100)]
        random_graphs: usize,
        #[arg(long, default_value_t = 30)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Align two graphs and write `g1_node,g2_node,row_cost` CSV.
    Align {
        #[arg(long, value_parser = parse_mode)]
        mode: SignatureMode,
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a tessellation; writes an edge list and coordinate JSON.
    Tessellate {
        #[arg(long, value_enum, default_value_t = TilingArg::Triangular)]
        tiling: TilingArg,
        /// Frame side length for the square tiling.
        #[arg(long, default_value_t = 3)]
        side: usize,
        #[arg(long)]
        lift: bool,
        /// Split each lifted triangular prism with diagonals.
        #[arg(long)]
        triangulate: bool,
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        coords: Option<PathBuf>,
    },
    /// Node curvature histogram of a graph as `value,count` CSV.
    Curvature {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Line graph of a graph: edge list plus `new_id,orig_u,orig_v` CSV.
    LineGraph {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        origin: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct PpiArgs {
    /// `key=value` file; flags given on the command line win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    rounds: Option<usize>,
    /// Edge deletion probability.
    #[arg(long)]
    p: Option<f64>,
    /// Nodes per round subgraph.
    #[arg(long)]
    size: Option<usize>,
    /// Nodes in the intermediate sample.
    #[arg(long)]
    intermediate: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<SignatureMode>,
    /// Report file; format follows the extension unless `--format` is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<ReportFormat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TilingArg {
    Triangular,
    Square,
    Mixed,
}

fn parse_mode(s: &str) -> Result<SignatureMode, String> {
    s.parse().map_err(|e: rmc_core::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: rmc_core::Error| e.to_string())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn ppi_config(args: &PpiArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = &args.input {
        cfg.input_path = v.clone();
    }
    if let Some(v) = args.rounds {
        cfg.rounds = v;
    }
    if let Some(v) = args.p {
        cfg.deletion_probability = v;
    }
    if let Some(v) = args.size {
        cfg.subgraph_size = v;
    }
    if let Some(v) = args.intermediate {
        cfg.intermediate_sample_size = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.mode {
        cfg.mode = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Ppi(args) => {
            let cfg = ppi_config(&args)?;
            let report = run_ppi_experiment(&cfg)?;
            print!("{}", report.to_markdown());
            if let Some(out) = &args.out {
                let format = args.format.unwrap_or_else(|| ReportFormat::from_path(out));
                emit_report(&report, out, format)?;
            }
        }
        Command::Torus { out, histogram } => {
            let report = run_torus_experiment()?;
            match out {
                Some(path) => fs::write(&path, report.to_json()?)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{}", report.to_text()),
            }
            if let Some(path) = histogram {
                let mut w = create(&path)?;
                write_histogram_csv(&report.histogram, &mut w)?;
                w.flush()?;
            }
        }
        Command::VerifyCle {
            random_graphs,
            max_n,
            seed,
        } => {
            let checks = verify_cle(random_graphs, max_n, seed)?;
            let mut failed = 0;
            for c in &checks {
                let status = if c.passed() { "pass" } else { "FAIL" };
                println!(
                    "{status} {} (n={}, m={}, bad nodes={})",
                    c.name, c.nodes, c.edges, c.failures
                );
                failed += usize::from(!c.passed());
            }
            println!("{} graphs, {failed} failed", checks.len());
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Align { mode, g1, g2, out } => {
            let a = load_graph(&g1)?;
            let b = load_graph(&g2)?;
            let assignment = align(&a, &b, mode)?;
            let mut w = create(&out)?;
            assignment.write_csv(&mut w)?;
            w.flush()?;
            let (correct, pct) = score_alignment(&assignment);
            println!(
                "{mode}: total cost {}, {correct} nodes mapped to the same id ({pct:.1}%)",
                assignment.total_cost
            );
        }
        Command::Tessellate {
            tiling,
            side,
            lift,
            triangulate,
            edges,
            coords,
        } => {
            let tiling = match tiling {
                TilingArg::Triangular => Tiling::Triangular,
                TilingArg::Square => Tiling::Square,
                TilingArg::Mixed => Tiling::Mixed,
            };
            let embedded = TorusSpec::new(tiling, lift, triangulate)?
                .with_side(side)
                .build()?;
            save_edge_list(&embedded.graph, &edges)?;
            if let Some(path) = coords {
                fs::write(&path, embedded.to_json()?)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            println!(
                "{} nodes, {} edges",
                embedded.graph.node_count(),
                embedded.graph.edge_count()
            );
        }
        Command::Curvature { input, out } => {
            let g = load_graph(&input)?;
            let hist = curvature_distribution(&g)?;
            match out {
                Some(path) => {
                    let mut w = create(&path)?;
                    write_histogram_csv(&hist, &mut w)?;
                    w.flush()?;
                }
                None => write_histogram_csv(&hist, std::io::stdout().lock())?,
            }
        }
        Command::LineGraph { input, out, origin } => {
            let g = load_graph(&input)?;
            let lg = line_graph(&g)?;
            save_edge_list(&lg.graph, &out)?;
            if let Some(path) = origin {
                let mut w = create(&path)?;
                lg.write_origin_csv(&mut w)?;
                w.flush()?;
            }
            println!(
                "{} nodes, {} edges",
                lg.graph.node_count(),
                lg.graph.edge_count()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            // Library errors already embed their cause in the message.
            let mut msg = String::new();
            for cause in e.chain().map(|c| c.to_string()) {
                if !msg.contains(&cause) {
                    if !msg.is_empty() {
                        msg.push_str(": ");
                    }
                    msg.push_str(&cause);
                }
            }
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
