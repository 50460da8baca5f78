//! Balance reporting: partition spreads, distribution summaries, and
//! side-by-side comparisons of vertex orderings.
//!
//! The two headline numbers are the edge spread `Δ(n) = max w − min w` and
//! the vertex spread `δ(n) = max u − min u` of a partition assignment; the
//! reordering in [`crate::order`] exists to drive both to at most one. A
//! report carries the raw per-partition counts, their min/median/stddev/max
//! summaries, max/min ratios, and — when the generator skew is known — the
//! precondition check telling whether the balance guarantees apply.
//!
//! [`compare_orderings`] reproduces the standard experiment: chunk the
//! original graph, a seeded random relabeling of it, and the balanced
//! reordering, then report each together with the work spread a dense
//! iteration would see.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{dense_work_stats, ExecMode};
use crate::generate::{check_theorem_preconditions, PreconditionReport};
use crate::graph::{Graph, Permutation};
use crate::order::{vebo_reorder, VeboMode};
use crate::partition::{partition_by_destination, PartitionAssignment, PartitionError};

/// Fixed seed for the random-relabeling comparison row, so reports are
/// reproducible across runs.
const RANDOM_ORDER_SEED: u64 = 42;

/// Distribution summary of per-partition counts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummaryStats {
    /// Smallest count.
    pub min: u64,
    /// Largest count.
    pub max: u64,
    /// Median (midpoint of the two central values for even lengths).
    pub median: f64,
    /// Population standard deviation.
    pub stddev: f64,
}

/// Computes min/max/median/population-stddev of `values`; all zero when
/// empty.
pub fn summarize(values: &[u64]) -> SummaryStats {
    if values.is_empty() {
        return SummaryStats {
            min: 0,
            max: 0,
            median: 0.0,
            stddev: 0.0,
        };
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid] as f64
    } else {
        (sorted[mid - 1] as f64 + sorted[mid] as f64) / 2.0
    };
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / values.len() as f64;
    let variance = values
        .iter()
        .map(|&v| {
            let d = v as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / values.len() as f64;
    SummaryStats {
        min: sorted[0],
        max: *sorted.last().unwrap(),
        median,
        stddev: variance.sqrt(),
    }
}

/// max/min of per-partition counts: 1 when everything is zero (perfectly
/// balanced at nothing), infinity when only the minimum is zero.
fn spread_ratio(summary: &SummaryStats) -> f64 {
    if summary.max == 0 {
        1.0
    } else if summary.min == 0 {
        f64::INFINITY
    } else {
        summary.max as f64 / summary.min as f64
    }
}

/// Everything there is to say about the balance of one partition assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct ImbalanceReport {
    /// Partition count.
    pub parts: u32,
    /// Per-partition edge counts `w[p]`.
    pub edge_counts: Vec<u64>,
    /// Per-partition vertex counts `u[p]`.
    pub vertex_counts: Vec<u64>,
    /// Edge spread `Δ(n) = max w − min w`.
    pub delta_edges: u64,
    /// Vertex spread `δ(n) = max u − min u`.
    pub delta_vertices: u64,
    /// Distribution summary of `w`.
    pub edge_summary: SummaryStats,
    /// Distribution summary of `u`.
    pub vertex_summary: SummaryStats,
    /// max/min of `w` (1 at all-zero, ∞ when only min is 0).
    pub edge_spread_ratio: f64,
    /// max/min of `u` (same sentinel rules).
    pub vertex_spread_ratio: f64,
    /// Balance-guarantee precondition check, when the skew is known.
    pub preconditions: Option<PreconditionReport>,
}

/// Builds the [`ImbalanceReport`] for `a` over `g`; `s_hint` is the generator
/// skew, enabling the precondition flags.
pub fn report(g: &Graph, a: &PartitionAssignment, s_hint: Option<f64>) -> ImbalanceReport {
    debug_assert_eq!(a.labels.len(), g.num_vertices() as usize);
    let edge_summary = summarize(&a.edge_counts);
    let vertex_summary = summarize(&a.vertex_counts);
    ImbalanceReport {
        parts: a.parts,
        edge_counts: a.edge_counts.clone(),
        vertex_counts: a.vertex_counts.clone(),
        delta_edges: edge_summary.max - edge_summary.min,
        delta_vertices: vertex_summary.max - vertex_summary.min,
        edge_spread_ratio: spread_ratio(&edge_summary),
        vertex_spread_ratio: spread_ratio(&vertex_summary),
        edge_summary,
        vertex_summary,
        preconditions: s_hint.map(|s| check_theorem_preconditions(g, a.parts, s)),
    }
}

/// One row of an ordering comparison: the assignment's imbalance report plus
/// the work spread of one dense iteration under it.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderingRow {
    /// Row label: `original`, `random`, or `vebo`.
    pub name: &'static str,
    /// Balance of the row's assignment.
    pub report: ImbalanceReport,
    /// max − min of per-partition active edges on a dense frontier.
    pub dense_active_edge_spread: u64,
    /// max − min of per-partition touched destinations on a dense frontier.
    pub dense_unique_destination_spread: u64,
}

/// Chunked-original vs chunked-random-relabeling vs balanced reordering.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderingComparison {
    /// Chunking of the graph as given.
    pub original: OrderingRow,
    /// Chunking of a seeded random relabeling.
    pub random: OrderingRow,
    /// The vertex- and edge-balanced reordering's own assignment.
    pub vebo: OrderingRow,
}

impl OrderingComparison {
    /// The rows in display order.
    pub fn rows(&self) -> [&OrderingRow; 3] {
        [&self.original, &self.random, &self.vebo]
    }
}

fn ordering_row(name: &'static str, g: &Graph, a: &PartitionAssignment) -> OrderingRow {
    let ws = dense_work_stats(g, a, ExecMode::Sequential);
    OrderingRow {
        name,
        report: report(g, a, None),
        dense_active_edge_spread: ws.active_edge_spread(),
        dense_unique_destination_spread: ws.unique_destination_spread(),
    }
}

/// Runs the chunking partitioner on the original graph and on a seeded
/// random relabeling of it, runs the balanced reordering, and reports all
/// three assignments side by side.
pub fn compare_orderings(g: &Graph, parts: u32) -> Result<OrderingComparison, PartitionError> {
    let n = g.num_vertices();
    let chunked = partition_by_destination(g, parts)?;
    let original = ordering_row("original", g, &chunked);

    let mut ids: Vec<u32> = (0..n).collect();
    ids.shuffle(&mut ChaCha8Rng::seed_from_u64(RANDOM_ORDER_SEED));
    let relabeling = Permutation::new(ids).expect("shuffled identity is a bijection");
    let shuffled = g
        .apply_permutation(&relabeling)
        .expect("permutation sized to the graph");
    let random_chunked =
        partition_by_destination(&shuffled, parts).expect("validated by the first chunking");
    let random = ordering_row("random", &shuffled, &random_chunked);

    let (perm, balanced) =
        vebo_reorder(g, parts, VeboMode::Strict).expect("validated by the first chunking");
    // Express the assignment on the original IDs: work-count spreads don't
    // depend on labels, and this avoids materializing the reordered graph.
    let labels: Vec<u32> = (0..n)
        .map(|v| balanced.labels[perm.map(v) as usize])
        .collect();
    let on_original =
        PartitionAssignment::from_labels(g, parts, labels).expect("labels are within range");
    debug_assert_eq!(on_original.edge_counts, balanced.edge_counts);
    let vebo = ordering_row("vebo", g, &on_original);

    Ok(OrderingComparison {
        original,
        random,
        vebo,
    })
}
