//! Command-line driver for the vertex- and edge-balanced ordering toolkit.
//!
//! Subcommands: `generate` (synthetic Zipf graphs), `reorder` (the balanced
//! reordering), `partition` (baseline chunking report), `stats` (ordering
//! comparison), and `run` (analytics kernels with per-partition work
//! reports). Graph inputs auto-detect between the adjacency format and plain
//! edge lists; every output is byte-deterministic for fixed arguments.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use vebo_core::engine::{
    bfs, connected_components, pagerank, spmv, ExecMode, WorkStats, UNREACHABLE,
};
use vebo_core::generate::{generate_zipf_graph, ZipfParams};
use vebo_core::graph::Graph;
use vebo_core::io::{
    parse_adjacency, parse_edge_list, render_comparison, render_imbalance_report,
    render_work_stats, write_adjacency, write_permutation,
};
use vebo_core::metrics::{compare_orderings, report};
use vebo_core::order::{vebo_reorder, VeboMode};
use vebo_core::partition::partition_by_destination;

/// PageRank damping factor; fixed, matching the usual power-method setup.
const DAMPING: f64 = 0.85;

#[derive(Parser)]
#[command(
    name = "vebo",
    version,
    about = "Vertex- and edge-balanced graph ordering toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Vertex-by-vertex greedy placement.
    Strict,
    /// Same partition counts, original-ID-consecutive blocks per degree.
    Block,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    /// PageRank, power method.
    Pr,
    /// Breadth-first search.
    Bfs,
    /// Connected components (undirected label propagation).
    Cc,
    /// Sparse matrix-vector multiplication against an all-ones vector.
    Spmv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph with Zipf-distributed in-degrees and uniform sources.
    Generate {
        /// Number of vertices.
        #[arg(long)]
        n: u32,
        /// Number of degree ranks; the largest in-degree is one less.
        #[arg(long = "N")]
        ranks: u32,
        /// Zipf skew exponent (0 = uniform).
        #[arg(long)]
        s: f64,
        /// RNG seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output adjacency file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Reorder vertices so every partition gets equal edges and vertices.
    Reorder {
        /// Partition count.
        #[arg(long)]
        parts: u32,
        /// Placement flavor.
        #[arg(long, value_enum, default_value_t = ModeArg::Block)]
        mode: ModeArg,
        /// Input graph (adjacency or edge-list format).
        #[arg(long = "in")]
        input: PathBuf,
        /// Output adjacency file with the new vertex IDs.
        #[arg(long)]
        out: PathBuf,
        /// Also write the old-ID → new-ID permutation, one entry per line.
        #[arg(long)]
        emit_permutation: Option<PathBuf>,
        /// Also write the assignment's imbalance report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Mirror every arc on input (for undirected datasets).
        #[arg(long)]
        undirected: bool,
    },
    /// Report the balance of the baseline contiguous chunking partitioner.
    Partition {
        /// Partition count.
        #[arg(long)]
        parts: u32,
        /// Input graph (adjacency or edge-list format).
        #[arg(long = "in")]
        input: PathBuf,
        /// Where to write the imbalance report.
        #[arg(long)]
        report: PathBuf,
        /// Mirror every arc on input (for undirected datasets).
        #[arg(long)]
        undirected: bool,
    },
    /// Compare chunking of the original, a random relabeling, and the
    /// balanced reordering.
    Stats {
        /// Input graph (adjacency or edge-list format).
        #[arg(long = "in")]
        input: PathBuf,
        /// Partition count.
        #[arg(long)]
        parts: u32,
        /// Mirror every arc on input (for undirected datasets).
        #[arg(long)]
        undirected: bool,
    },
    /// Run an analytics kernel and record per-partition work stats.
    Run {
        /// Kernel to run.
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// Partition count (vertices are chunked in ID order).
        #[arg(long)]
        parts: u32,
        /// Input graph (adjacency or edge-list format).
        #[arg(long = "in")]
        input: PathBuf,
        /// PageRank iterations.
        #[arg(long, default_value_t = 10)]
        iters: u32,
        /// BFS source vertex.
        #[arg(long, default_value_t = 0)]
        source: u32,
        /// Where to write the per-iteration work stats.
        #[arg(long)]
        work_stats: PathBuf,
        /// Mirror every arc on input (for undirected datasets).
        #[arg(long)]
        undirected: bool,
    },
}

/// Loads a graph, auto-detecting the format from the first line.
fn load_graph(path: &Path, undirected: bool) -> Result<Graph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("failed to read {}", path.display()))?;
    let adjacency = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .is_some_and(|first| first == "AdjacencyGraph");
    let g = if adjacency {
        parse_adjacency(&text)
    } else {
        parse_edge_list(&text, None)
    }
    .with_context(|| format!("failed to parse {}", path.display()))?;
    Ok(if undirected {
        g.with_mirrored_arcs()
    } else {
        g
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("failed to write {}", path.display()))
}

fn write_stats_file(path: &Path, stats: &[WorkStats]) -> Result<()> {
    write_text(path, &render_work_stats(stats))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Generate {
            n,
            ranks,
            s,
            seed,
            out,
        } => {
            let params = ZipfParams::new(n, ranks, s, seed)?;
            let g = generate_zipf_graph(&params);
            write_adjacency(&g, &out)
                .with_context(|| format!("failed to write {}", out.display()))?;
            println!("vertices={} edges={}", g.num_vertices(), g.num_edges());
        }
        Command::Reorder {
            parts,
            mode,
            input,
            out,
            emit_permutation,
            report: report_path,
            undirected,
        } => {
            let g = load_graph(&input, undirected)?;
            let mode = match mode {
                ModeArg::Strict => VeboMode::Strict,
                ModeArg::Block => VeboMode::BlockLocality,
            };
            let (perm, assignment) = vebo_reorder(&g, parts, mode)?;
            let reordered = g
                .apply_permutation(&perm)
                .expect("reordering permutation covers the graph");
            write_adjacency(&reordered, &out)
                .with_context(|| format!("failed to write {}", out.display()))?;
            if let Some(path) = emit_permutation {
                write_permutation(&perm, &path)
                    .with_context(|| format!("failed to write {}", path.display()))?;
            }
            let r = report(&reordered, &assignment, None);
            if let Some(path) = report_path {
                write_text(&path, &render_imbalance_report(&r))?;
            }
            println!(
                "delta_edges={} delta_vertices={}",
                r.delta_edges, r.delta_vertices
            );
        }
        Command::Partition {
            parts,
            input,
            report: report_path,
            undirected,
        } => {
            let g = load_graph(&input, undirected)?;
            let assignment = partition_by_destination(&g, parts)?;
            let r = report(&g, &assignment, None);
            write_text(&report_path, &render_imbalance_report(&r))?;
            println!(
                "delta_edges={} delta_vertices={}",
                r.delta_edges, r.delta_vertices
            );
        }
        Command::Stats {
            input,
            parts,
            undirected,
        } => {
            let g = load_graph(&input, undirected)?;
            let comparison = compare_orderings(&g, parts)?;
            print!("{}", render_comparison(&comparison));
        }
        Command::Run {
            algo,
            parts,
            input,
            iters,
            source,
            work_stats,
            undirected,
        } => {
            let g = load_graph(&input, undirected)?;
            let assignment = partition_by_destination(&g, parts)?;
            match algo {
                AlgoArg::Pr => {
                    let (scores, stats) =
                        pagerank(&g, &assignment, iters, DAMPING, ExecMode::Parallel)?;
                    write_stats_file(&work_stats, &stats)?;
                    println!("score_sum={:.6}", scores.iter().sum::<f64>());
                }
                AlgoArg::Bfs => {
                    let (result, stats) = bfs(&g, &assignment, source, ExecMode::Parallel)?;
                    write_stats_file(&work_stats, &stats)?;
                    let reached = result.levels.iter().filter(|&&l| l != UNREACHABLE).count();
                    println!("reached={reached}");
                }
                AlgoArg::Cc => {
                    let (labels, stats) = connected_components(&g, &assignment, ExecMode::Parallel);
                    write_stats_file(&work_stats, &stats)?;
                    let components = labels
                        .iter()
                        .collect::<std::collections::BTreeSet<_>>()
                        .len();
                    println!("components={components}");
                }
                AlgoArg::Spmv => {
                    let x = vec![1.0f64; g.num_vertices() as usize];
                    let (y, stats) = spmv(&g, &assignment, &x, ExecMode::Parallel)?;
                    write_stats_file(&work_stats, &[stats])?;
                    println!("y_sum={:.6}", y.iter().sum::<f64>());
                }
            }
        }
    }
    Ok(())
}
