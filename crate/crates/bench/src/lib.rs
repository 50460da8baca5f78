//! Shared fixtures for the criterion benchmarks in `benches/`.

use vebo_core::generate::{generate_zipf_graph, ZipfParams};
use vebo_core::Graph;

/// Standard benchmark input: `n` vertices whose in-degrees follow a
/// Zipf(s = 1) distribution over 200 ranks, so a handful of hubs carry most
/// of the edges (average in-degree ≈ 33).
pub fn skewed_graph(n: u32) -> Graph {
    let params = ZipfParams::new(n, 200, 1.0, 7).expect("fixture parameters are valid");
    generate_zipf_graph(&params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_skewed_and_reproducible() {
        let g = skewed_graph(10_000);
        assert_eq!(g.num_vertices(), 10_000);
        let max_degree = (0..g.num_vertices()).map(|v| g.in_degree(v)).max().unwrap();
        assert!(max_degree >= 100, "expected hub vertices, max {max_degree}");
        assert_eq!(g, skewed_graph(10_000));
    }
}
