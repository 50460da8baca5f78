//! Vertex- and edge-balanced graph ordering toolkit.
//!
//! The crate bundles everything needed to study load balance of
//! destination-partitioned graph workloads:
//!
//! * [`graph`] — immutable CSR/CSC graph storage, permutations, degree
//!   histograms;
//! * [`generate`] — deterministic synthetic graphs with Zipf-distributed
//!   in-degrees, plus balance-theorem precondition checks;
//! * [`partition`] — the baseline locality-preserving, edge-balanced chunking
//!   partitioner;
//! * [`order`] — the vertex- and edge-balanced greedy reordering (strict and
//!   block-locality modes) with its placement trace;
//! * [`engine`] — a deterministic frontier-based analytics engine (PageRank,
//!   BFS, connected components, SpMV) reporting per-partition work counts;
//! * [`metrics`] — imbalance reports and ordering comparisons;
//! * [`io`] — byte-stable text serialization for graphs, permutations, and
//!   reports.
//!
//! ```
//! use vebo_core::generate::{generate_zipf_graph, ZipfParams};
//! use vebo_core::order::{vebo_reorder, VeboMode};
//!
//! let params = ZipfParams::new(1000, 50, 1.0, 7).unwrap();
//! let g = generate_zipf_graph(&params);
//! let (perm, parts) = vebo_reorder(&g, 8, VeboMode::BlockLocality).unwrap();
//! assert_eq!(perm.len(), 1000);
//! let spread = parts.edge_counts.iter().max().unwrap() - parts.edge_counts.iter().min().unwrap();
//! assert!(spread <= 1);
//! ```

pub mod engine;
pub mod generate;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod order;
pub mod partition;

pub use graph::{DegreeHistogram, Graph, GraphError, Permutation};
