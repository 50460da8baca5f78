//! Deterministic frontier-based analytics over a destination-partitioned
//! graph.
//!
//! The execution model is edgemap/vertexmap: an iteration applies an update
//! along every in-edge whose source is active, and each partition processes
//! only the destinations it owns. Because a vertex's state is written solely
//! by the partition owning it, partitions never race, and results are
//! bit-identical whether they run sequentially or in parallel.
//!
//! Alongside the new frontier, every edgemap reports [`WorkStats`]: the
//! per-partition count of active edges, touched destinations, and distinct
//! active sources. Edge and unique-destination counts are the
//! hardware-independent proxy for per-partition running time, which is the
//! quantity the reordering in [`crate::order`] is built to balance.
//!
//! Four reference kernels are provided: PageRank (power method), BFS,
//! connected components (synchronous min-label propagation over mirrored
//! arcs), and sparse matrix–vector multiplication. Each matches a naive
//! oracle exactly — including floating-point results, which accumulate in
//! ascending-source order per destination regardless of execution mode.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::metrics::{summarize, SummaryStats};
use crate::partition::PartitionAssignment;

/// Level/parent marker for vertices BFS never reaches.
pub const UNREACHABLE: u32 = u32::MAX;

/// Errors from engine entry points.
#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    /// A frontier ID does not fit the vertex range.
    #[error("frontier vertex {vertex} out of range for {vertices} vertices")]
    FrontierVertexOutOfRange { vertex: u32, vertices: u32 },
    /// The same vertex appears twice in a frontier.
    #[error("frontier lists vertex {vertex} twice")]
    FrontierDuplicate { vertex: u32 },
    /// PageRank damping must lie strictly between 0 and 1.
    #[error("damping factor {damping} outside (0, 1)")]
    InvalidDamping { damping: f64 },
    /// BFS source must be a vertex of the graph.
    #[error("source vertex {vertex} out of range for {vertices} vertices")]
    SourceOutOfRange { vertex: u32, vertices: u32 },
    /// Input vector length must equal the vertex count.
    #[error("vector has {got} entries, graph has {expected} vertices")]
    VectorLengthMismatch { got: usize, expected: u32 },
}

/// How an edgemap schedules its partitions. Results are bit-identical either
/// way; `Parallel` additionally requires the assignment to own contiguous
/// vertex ranges (the reordering always produces them) and quietly degrades
/// to sequential execution otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    /// One partition at a time, ascending index.
    Sequential,
    /// Partitions fan out to worker threads over disjoint state slices.
    Parallel,
}

/// The set of active vertices driving one edgemap iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier {
    /// Sorted, duplicate-free vertex IDs.
    active: Vec<u32>,
}

impl Frontier {
    /// Validates and sorts `ids` into a frontier over `n` vertices.
    pub fn new(mut ids: Vec<u32>, n: u32) -> Result<Self, EngineError> {
        ids.sort_unstable();
        for pair in ids.windows(2) {
            if pair[0] == pair[1] {
                return Err(EngineError::FrontierDuplicate { vertex: pair[0] });
            }
        }
        if let Some(&last) = ids.last() {
            if last >= n {
                return Err(EngineError::FrontierVertexOutOfRange {
                    vertex: last,
                    vertices: n,
                });
            }
        }
        Ok(Frontier { active: ids })
    }

    /// The frontier containing every vertex.
    pub fn all(n: u32) -> Self {
        Frontier {
            active: (0..n).collect(),
        }
    }

    /// The empty frontier.
    pub fn empty() -> Self {
        Frontier { active: Vec::new() }
    }

    /// Internal constructor for IDs known to be sorted and unique.
    fn from_sorted(active: Vec<u32>) -> Self {
        debug_assert!(active.windows(2).all(|p| p[0] < p[1]));
        Frontier { active }
    }

    /// Active IDs, ascending.
    pub fn as_slice(&self) -> &[u32] {
        &self.active
    }

    /// Number of active vertices.
    pub fn len(&self) -> usize {
        self.active.len()
    }

    /// Whether no vertex is active.
    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    /// (active vertices + active out-edges) / |E|; 0 for an edgeless graph.
    /// Values above 1 mean a dense iteration that touches most of the graph.
    pub fn density(&self, g: &Graph) -> f64 {
        if g.num_edges() == 0 {
            return 0.0;
        }
        let active_out: u64 = self.active.iter().map(|&v| g.out_degree(v)).sum();
        (self.active.len() as u64 + active_out) as f64 / g.num_edges() as f64
    }
}

/// Work performed by one partition during one edgemap.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionWork {
    /// In-edges processed: destination owned by the partition, source active.
    pub active_edges: u64,
    /// Owned destinations with at least one active in-edge.
    pub unique_destinations: u64,
    /// Distinct active sources read by the partition.
    pub unique_sources: u64,
}

/// Per-partition work profile of one edgemap — the deterministic stand-in
/// for per-partition running time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkStats {
    /// One entry per partition, in partition order.
    pub per_partition: Vec<PartitionWork>,
}

impl WorkStats {
    fn field(&self, f: impl Fn(&PartitionWork) -> u64) -> Vec<u64> {
        self.per_partition.iter().map(f).collect()
    }

    /// Active-edge counts per partition.
    pub fn active_edges(&self) -> Vec<u64> {
        self.field(|w| w.active_edges)
    }

    /// Touched-destination counts per partition.
    pub fn unique_destinations(&self) -> Vec<u64> {
        self.field(|w| w.unique_destinations)
    }

    /// Distinct-active-source counts per partition.
    pub fn unique_sources(&self) -> Vec<u64> {
        self.field(|w| w.unique_sources)
    }

    /// Total edges processed across partitions.
    pub fn total_active_edges(&self) -> u64 {
        self.per_partition.iter().map(|w| w.active_edges).sum()
    }

    /// max − min of per-partition active edges.
    pub fn active_edge_spread(&self) -> u64 {
        spread(&self.active_edges())
    }

    /// max − min of per-partition touched destinations.
    pub fn unique_destination_spread(&self) -> u64 {
        spread(&self.unique_destinations())
    }

    /// min/median/stddev/max of per-partition active edges.
    pub fn active_edge_summary(&self) -> SummaryStats {
        summarize(&self.active_edges())
    }

    /// min/median/stddev/max of per-partition touched destinations.
    pub fn unique_destination_summary(&self) -> SummaryStats {
        summarize(&self.unique_destinations())
    }

    /// min/median/stddev/max of per-partition distinct sources.
    pub fn unique_source_summary(&self) -> SummaryStats {
        summarize(&self.unique_sources())
    }
}

fn spread(values: &[u64]) -> u64 {
    match (values.iter().max(), values.iter().min()) {
        (Some(max), Some(min)) => max - min,
        _ => 0,
    }
}

/// Fixed-capacity bitset for frontier membership and source cardinality.
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: u32) -> Self {
        BitSet {
            words: vec![0; (n as usize).div_ceil(64)],
        }
    }

    fn set(&mut self, i: u32) {
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    fn get(&self, i: u32) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

/// Scans the in-edges of one owned destination, applying `update` for each
/// active source in ascending order. Returns whether the destination was
/// newly activated.
fn scan_destination<S, U>(
    g: &Graph,
    active: &BitSet,
    v: u32,
    slot: &mut S,
    update: &U,
    work: &mut PartitionWork,
    sources: &mut BitSet,
) -> bool
where
    U: Fn(&mut S, u32, u32) -> bool,
{
    let mut touched = false;
    let mut activated = false;
    for &u in g.in_neighbors(v) {
        if active.get(u) {
            touched = true;
            work.active_edges += 1;
            sources.set(u);
            if update(slot, u, v) {
                activated = true;
            }
        }
    }
    if touched {
        work.unique_destinations += 1;
    }
    activated
}

/// Applies `update` along every in-edge whose source lies in `frontier`,
/// partition by partition, and reports the work each partition performed.
///
/// `state` holds one slot per vertex; `update(slot, src, dst)` may mutate the
/// destination's slot and returns whether the destination just became active.
/// Each destination's active sources arrive in ascending order, and every
/// destination is owned by exactly one partition, so the result — including
/// floating-point accumulation — does not depend on how partitions are
/// scheduled.
pub fn edgemap<S, U>(
    g: &Graph,
    a: &PartitionAssignment,
    frontier: &Frontier,
    state: &mut [S],
    update: U,
    mode: ExecMode,
) -> (Frontier, WorkStats)
where
    S: Send,
    U: Fn(&mut S, u32, u32) -> bool + Sync,
{
    let n = g.num_vertices();
    assert_eq!(state.len(), n as usize, "one state slot per vertex");
    assert_eq!(a.labels.len(), n as usize, "assignment covers the graph");
    let parts = a.parts as usize;
    let mut active = BitSet::new(n);
    for &v in frontier.as_slice() {
        active.set(v);
    }

    let per_partition: Vec<(PartitionWork, Vec<u32>)> = match (&a.boundaries, mode) {
        (Some(bounds), ExecMode::Parallel) => {
            let mut slices: Vec<(u32, &mut [S])> = Vec::with_capacity(parts);
            let mut rest = state;
            for p in 0..parts {
                let len = (bounds[p + 1] - bounds[p]) as usize;
                let (head, tail) = rest.split_at_mut(len);
                slices.push((bounds[p], head));
                rest = tail;
            }
            slices
                .into_par_iter()
                .map(|(base, slice)| {
                    let mut work = PartitionWork::default();
                    let mut sources = BitSet::new(n);
                    let mut activated = Vec::new();
                    for (local, slot) in slice.iter_mut().enumerate() {
                        let v = base + local as u32;
                        if scan_destination(g, &active, v, slot, &update, &mut work, &mut sources) {
                            activated.push(v);
                        }
                    }
                    work.unique_sources = sources.count();
                    (work, activated)
                })
                .collect()
        }
        _ => {
            // Group owned vertices per partition once (ascending within each
            // group), then process partitions in index order.
            let mut owned: Vec<Vec<u32>> = vec![Vec::new(); parts];
            for (v, &label) in a.labels.iter().enumerate() {
                owned[label as usize].push(v as u32);
            }
            owned
                .iter()
                .map(|vertices| {
                    let mut work = PartitionWork::default();
                    let mut sources = BitSet::new(n);
                    let mut activated = Vec::new();
                    for &v in vertices {
                        let slot = &mut state[v as usize];
                        if scan_destination(g, &active, v, slot, &update, &mut work, &mut sources) {
                            activated.push(v);
                        }
                    }
                    work.unique_sources = sources.count();
                    (work, activated)
                })
                .collect()
        }
    };

    let mut next = Vec::new();
    let mut stats = Vec::with_capacity(parts);
    for (work, activated) in per_partition {
        stats.push(work);
        next.extend(activated);
    }
    next.sort_unstable();
    (
        Frontier::from_sorted(next),
        WorkStats {
            per_partition: stats,
        },
    )
}

/// Applies `f` to every active vertex and keeps those for which it returns
/// true.
pub fn vertexmap<F>(frontier: &Frontier, mut f: F) -> Frontier
where
    F: FnMut(u32) -> bool,
{
    Frontier::from_sorted(
        frontier
            .as_slice()
            .iter()
            .copied()
            .filter(|&v| f(v))
            .collect(),
    )
}

/// The work profile of one dense-frontier edgemap with a no-op update: every
/// in-edge counts, so per-partition `active_edges` equals the partition's
/// edge count and `unique_destinations` its count of vertices with in-edges.
pub fn dense_work_stats(g: &Graph, a: &PartitionAssignment, mode: ExecMode) -> WorkStats {
    let mut state = vec![(); g.num_vertices() as usize];
    let frontier = Frontier::all(g.num_vertices());
    edgemap(g, a, &frontier, &mut state, |_, _, _| false, mode).1
}

/// Power-method PageRank pulled along in-edges, with dangling mass spread
/// uniformly; scores always sum to 1 (within accumulation error). Returns the
/// score vector and one [`WorkStats`] per iteration (all dense).
pub fn pagerank(
    g: &Graph,
    a: &PartitionAssignment,
    iterations: u32,
    damping: f64,
    mode: ExecMode,
) -> Result<(Vec<f64>, Vec<WorkStats>), EngineError> {
    if !damping.is_finite() || damping <= 0.0 || damping >= 1.0 {
        return Err(EngineError::InvalidDamping { damping });
    }
    let n = g.num_vertices();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let nu = n as usize;
    let nf = n as f64;
    let mut scores = vec![1.0 / nf; nu];
    let mut contrib = vec![0.0f64; nu];
    let mut accum = vec![0.0f64; nu];
    let frontier = Frontier::all(n);
    let mut stats = Vec::with_capacity(iterations as usize);
    for _ in 0..iterations {
        let mut dangling = 0.0f64;
        for v in 0..nu {
            let out = g.out_degree(v as u32);
            if out == 0 {
                dangling += scores[v];
                contrib[v] = 0.0;
            } else {
                contrib[v] = scores[v] / out as f64;
            }
        }
        accum.fill(0.0);
        let (_, ws) = edgemap(
            g,
            a,
            &frontier,
            &mut accum,
            |slot: &mut f64, src, _| {
                *slot += contrib[src as usize];
                false
            },
            mode,
        );
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        for v in 0..nu {
            scores[v] = base + damping * accum[v];
        }
        stats.push(ws);
    }
    Ok((scores, stats))
}

/// Hop levels and BFS tree of a traversal from `source` over out-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsResult {
    /// Shortest hop distance from the source; [`UNREACHABLE`] if none.
    pub levels: Vec<u32>,
    /// The smallest previous-level in-neighbor; the source parents itself,
    /// unreached vertices carry [`UNREACHABLE`].
    pub parents: Vec<u32>,
}

#[derive(Clone, Copy)]
struct BfsSlot {
    level: u32,
    parent: u32,
}

/// Breadth-first search from `source`, one edgemap per level. The sparse
/// early frontiers make the per-iteration [`WorkStats`] the interesting
/// output: they show how partition balance behaves away from the dense case.
pub fn bfs(
    g: &Graph,
    a: &PartitionAssignment,
    source: u32,
    mode: ExecMode,
) -> Result<(BfsResult, Vec<WorkStats>), EngineError> {
    let n = g.num_vertices();
    if source >= n {
        return Err(EngineError::SourceOutOfRange {
            vertex: source,
            vertices: n,
        });
    }
    let mut slots = vec![
        BfsSlot {
            level: UNREACHABLE,
            parent: UNREACHABLE,
        };
        n as usize
    ];
    slots[source as usize] = BfsSlot {
        level: 0,
        parent: source,
    };
    let mut frontier = Frontier::from_sorted(vec![source]);
    let mut stats = Vec::new();
    let mut depth = 1u32;
    while !frontier.is_empty() {
        // The first active (hence smallest) in-neighbor claims an unvisited
        // destination; later sources in the same sweep leave it alone.
        let (next, ws) = edgemap(
            g,
            a,
            &frontier,
            &mut slots,
            |slot: &mut BfsSlot, src, _| {
                if slot.level == UNREACHABLE {
                    slot.level = depth;
                    slot.parent = src;
                    true
                } else {
                    false
                }
            },
            mode,
        );
        stats.push(ws);
        frontier = next;
        depth += 1;
    }
    let levels = slots.iter().map(|s| s.level).collect();
    let parents = slots.iter().map(|s| s.parent).collect();
    Ok((BfsResult { levels, parents }, stats))
}

/// Synchronous min-label propagation treating every edge as undirected
/// (arcs are mirrored internally). Converges to the smallest vertex ID of
/// each weakly connected component; one [`WorkStats`] per round.
pub fn connected_components(
    g: &Graph,
    a: &PartitionAssignment,
    mode: ExecMode,
) -> (Vec<u32>, Vec<WorkStats>) {
    let n = g.num_vertices();
    let mirrored = g.with_mirrored_arcs();
    let mut labels: Vec<u32> = (0..n).collect();
    let mut frontier = Frontier::all(n);
    let mut stats = Vec::new();
    while !frontier.is_empty() {
        let previous = labels.clone();
        let (next, ws) = edgemap(
            &mirrored,
            a,
            &frontier,
            &mut labels,
            |slot: &mut u32, src, _| {
                let candidate = previous[src as usize];
                if candidate < *slot {
                    *slot = candidate;
                    true
                } else {
                    false
                }
            },
            mode,
        );
        stats.push(ws);
        frontier = next;
    }
    (labels, stats)
}

/// One pull along the unweighted adjacency matrix: `y[v] = Σ x[u]` over in-
/// edges `(u, v)`, parallel edges contributing once each. Accumulation order
/// is ascending source per destination, so results are reproducible exactly.
pub fn spmv(
    g: &Graph,
    a: &PartitionAssignment,
    x: &[f64],
    mode: ExecMode,
) -> Result<(Vec<f64>, WorkStats), EngineError> {
    let n = g.num_vertices();
    if x.len() != n as usize {
        return Err(EngineError::VectorLengthMismatch {
            got: x.len(),
            expected: n,
        });
    }
    let mut y = vec![0.0f64; n as usize];
    let frontier = Frontier::all(n);
    let (_, ws) = edgemap(
        g,
        a,
        &frontier,
        &mut y,
        |slot: &mut f64, src, _| {
            *slot += x[src as usize];
            false
        },
        mode,
    );
    Ok((y, ws))
}
