//! Deterministic synthetic graphs whose in-degree distribution follows a
//! Zipf model, plus evaluation of the balance theorems' preconditions.
//!
//! The model: rank `k ∈ 1..=N` carries in-degree `k − 1` with probability
//! `p_k = k^{−s} / H_{N,s}`, so degree 0 is the most frequent and `s`
//! controls the skew (the equivalent power-law exponent is `α = 1 + 1/s`).
//! Vertex counts per rank come from largest-remainder quantization of
//! `n·p_k`, which keeps every rank's deviation below one vertex; edge sources
//! are drawn uniformly with replacement from all vertices. Everything is a
//! pure function of [`ZipfParams`], seed included.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

/// Errors from generator parameter validation.
#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    /// The model needs at least one degree rank.
    #[error("rank count must be at least 1")]
    NoRanks,
    /// Every rank must be representable by at least one vertex.
    #[error("vertex count {n} is less than rank count {ranks}")]
    TooFewVertices { n: u32, ranks: u32 },
    /// The skew exponent must be finite and non-negative.
    #[error("skew exponent must be finite and >= 0, got {s}")]
    InvalidSkew { s: f64 },
    /// Rank argument outside the model's support.
    #[error("rank {k} outside 1..={ranks}")]
    RankOutOfRange { k: u32, ranks: u32 },
}

/// Parameters of the Zipf in-degree model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZipfParams {
    n: u32,
    ranks: u32,
    s: f64,
    seed: u64,
}

impl ZipfParams {
    /// Validates `n ≥ ranks ≥ 1` and a finite skew `s ≥ 0`.
    pub fn new(n: u32, ranks: u32, s: f64, seed: u64) -> Result<Self, GenerateError> {
        if ranks == 0 {
            return Err(GenerateError::NoRanks);
        }
        if n < ranks {
            return Err(GenerateError::TooFewVertices { n, ranks });
        }
        if !s.is_finite() || s < 0.0 {
            return Err(GenerateError::InvalidSkew { s });
        }
        Ok(ZipfParams { n, ranks, s, seed })
    }

    /// Vertex count `n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Rank count `N`; the highest modeled in-degree is `N − 1`.
    pub fn ranks(&self) -> u32 {
        self.ranks
    }

    /// Skew exponent `s`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// RNG seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Generalized harmonic number `H_{N,s} = Σ_{i=1..N} i^{−s}`, by direct
/// summation in ascending `i`.
pub fn harmonic_number(n: u64, s: f64) -> f64 {
    (1..=n).map(|i| (i as f64).powf(-s)).sum()
}

/// Probability that a vertex has rank `k` (in-degree `k − 1`):
/// `k^{−s} / H_{N,s}`.
pub fn zipf_pmf(k: u32, params: &ZipfParams) -> Result<f64, GenerateError> {
    if k == 0 || k > params.ranks {
        return Err(GenerateError::RankOutOfRange {
            k,
            ranks: params.ranks,
        });
    }
    let h = harmonic_number(params.ranks as u64, params.s);
    Ok((k as f64).powf(-params.s) / h)
}

/// Largest-remainder (Hamilton) apportionment of `n` vertices to the ranks'
/// real-valued targets `n·p_k`. Ties in the fractional parts are broken
/// toward the smaller rank, i.e. the smaller degree.
fn quantize_rank_counts(params: &ZipfParams) -> Vec<u64> {
    let ranks = params.ranks as usize;
    let h = harmonic_number(params.ranks as u64, params.s);
    let scale = params.n as f64 / h;
    let targets: Vec<f64> = (1..=params.ranks)
        .map(|k| scale * (k as f64).powf(-params.s))
        .collect();
    let mut counts: Vec<u64> = targets.iter().map(|t| t.floor() as u64).collect();
    let assigned: u64 = counts.iter().sum();
    let mut order: Vec<usize> = (0..ranks).collect();
    if params.n as u64 >= assigned {
        let mut remainder = params.n as u64 - assigned;
        // Largest fractional part first; ties toward the smaller rank.
        order.sort_by(|&a, &b| {
            let fa = targets[a] - targets[a].floor();
            let fb = targets[b] - targets[b].floor();
            fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
        });
        for &i in &order {
            if remainder == 0 {
                break;
            }
            counts[i] += 1;
            remainder -= 1;
        }
    } else {
        // Floating-point drift pushed a floor past its real target; shave the
        // smallest fractional parts back. Unreachable in practice but keeps
        // the function total and deterministic.
        let mut excess = assigned - params.n as u64;
        order.sort_by(|&a, &b| {
            let fa = targets[a] - targets[a].floor();
            let fb = targets[b] - targets[b].floor();
            fa.partial_cmp(&fb).unwrap().then(b.cmp(&a))
        });
        for &i in &order {
            if excess == 0 {
                break;
            }
            if counts[i] > 0 {
                counts[i] -= 1;
                excess -= 1;
            }
        }
    }
    debug_assert_eq!(counts.iter().sum::<u64>(), params.n as u64);
    counts
}

/// Generates the Zipf graph for `params`.
///
/// The quantized degree sequence is dealt to vertex IDs by a seeded shuffle
/// (so the "original" vertex order carries no degree structure), then each
/// in-edge's source is drawn uniformly from all vertices. Identical
/// parameters produce bit-identical graphs.
pub fn generate_zipf_graph(params: &ZipfParams) -> Graph {
    let counts = quantize_rank_counts(params);
    let n = params.n as usize;
    let mut degrees: Vec<u32> = Vec::with_capacity(n);
    for (rank_index, &count) in counts.iter().enumerate() {
        for _ in 0..count {
            degrees.push(rank_index as u32);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    degrees.shuffle(&mut rng);

    let mut in_offsets = vec![0usize; n + 1];
    for v in 0..n {
        in_offsets[v + 1] = in_offsets[v] + degrees[v] as usize;
    }
    let num_edges = in_offsets[n];
    let mut in_sources = vec![0u32; num_edges];
    for slot in in_sources.iter_mut() {
        *slot = rng.gen_range(0..params.n);
    }
    Graph::from_in_view(params.n, in_offsets, in_sources)
}

/// Outcome of evaluating the balance theorems' preconditions for a concrete
/// graph and partition count.
///
/// The rank count is taken from the graph itself (`max in-degree + 1`).
/// Edge balance is guaranteed when the edge-count and partition-count
/// conditions hold; vertex balance additionally needs the vertex-count
/// condition. The flags are advisory: every algorithm here runs fine outside
/// the guaranteed regime, the bounds just stop being promises.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreconditionReport {
    /// Partition count the check was run for.
    pub partitions: u32,
    /// Skew exponent the vertex-count condition was evaluated with.
    pub s: f64,
    /// Realized rank count `N` = max in-degree + 1.
    pub num_ranks: u64,
    /// `|E|` of the graph.
    pub num_edges: u64,
    /// Required edge count `N·(P−1)`.
    pub edge_requirement: u64,
    /// `|E| ≥ N·(P−1)`.
    pub edge_count_ok: bool,
    /// `P < N`.
    pub partition_count_ok: bool,
    /// `n` of the graph.
    pub num_vertices: u64,
    /// Required vertex count `N·H_{N,s}`.
    pub vertex_requirement: f64,
    /// `n ≥ N·H_{N,s}`.
    pub vertex_count_ok: bool,
}

impl PreconditionReport {
    /// True when the edge-balance bound (spread ≤ 1) is guaranteed.
    pub fn edge_balance_guaranteed(&self) -> bool {
        self.edge_count_ok && self.partition_count_ok
    }

    /// True when the vertex-balance bound is guaranteed as well.
    pub fn vertex_balance_guaranteed(&self) -> bool {
        self.edge_balance_guaranteed() && self.vertex_count_ok
    }
}

/// Evaluates both theorems' preconditions for partitioning `g` into `p`
/// parts, using the graph's realized rank count and the supplied skew.
pub fn check_theorem_preconditions(g: &Graph, p: u32, s: f64) -> PreconditionReport {
    let hist = g.degree_histogram();
    let num_ranks = hist.num_ranks();
    let h = harmonic_number(num_ranks, s);
    let edge_requirement = num_ranks * (p as u64).saturating_sub(1);
    let vertex_requirement = num_ranks as f64 * h;
    PreconditionReport {
        partitions: p,
        s,
        num_ranks,
        num_edges: g.num_edges(),
        edge_requirement,
        edge_count_ok: g.num_edges() >= edge_requirement,
        partition_count_ok: (p as u64) < num_ranks,
        num_vertices: g.num_vertices() as u64,
        vertex_requirement,
        vertex_count_ok: g.num_vertices() as f64 >= vertex_requirement,
    }
}
