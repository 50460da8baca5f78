//! Immutable directed graph storage shared by every algorithm in this crate.
//!
//! The graph keeps both compressed sparse views: in-edges grouped by
//! destination (the primary view — placement and the analytics engine pull
//! along in-edges) and out-edges grouped by source. Both views are kept in
//! canonical form, with each neighbor group sorted ascending, so equal graphs
//! compare equal and serialized output is byte-stable. Parallel edges and
//! self-loops are retained: balance accounting must see the raw edge multiset.

use std::collections::BTreeMap;

use thiserror::Error;

/// Errors from graph construction and permutation handling.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    /// An edge endpoint does not fit the declared vertex count.
    #[error("edge {index}: endpoint {endpoint} out of range for {vertices} vertices")]
    EndpointOutOfRange {
        index: usize,
        endpoint: u32,
        vertices: u32,
    },
    /// Permutation length differs from the graph's vertex count.
    #[error("permutation has {got} entries, graph has {expected} vertices")]
    PermutationLengthMismatch { got: usize, expected: u32 },
    /// A permutation entry falls outside the vertex range.
    #[error("permutation entry {index} is {value}, outside 0..{len}")]
    PermutationValueOutOfRange {
        index: usize,
        value: u32,
        len: usize,
    },
    /// Two permutation entries map to the same new ID.
    #[error("permutation maps two vertices to {value}")]
    PermutationDuplicate { value: u32 },
}

/// Immutable directed graph with dense 0-based vertex IDs and both CSR views.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: u32,
    /// Cumulative in-degree prefix sums; `in_offsets[n]` is the edge count.
    in_offsets: Vec<usize>,
    /// Source of each in-edge, grouped by destination, ascending per group.
    in_sources: Vec<u32>,
    /// Cumulative out-degree prefix sums.
    out_offsets: Vec<usize>,
    /// Target of each out-edge, grouped by source, ascending per group.
    out_targets: Vec<u32>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("num_vertices", &self.num_vertices)
            .field("num_edges", &self.num_edges())
            .field("in_offsets", &self.in_offsets)
            .field("in_sources", &self.in_sources)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from `(src, dst)` pairs over `n` vertices.
    ///
    /// The edge multiset is preserved exactly (duplicates included) and both
    /// views come out canonicalized.
    pub fn from_edge_list(edges: &[(u32, u32)], n: u32) -> Result<Self, GraphError> {
        for (index, &(src, dst)) in edges.iter().enumerate() {
            let endpoint = if src >= n { src } else { dst };
            if src >= n || dst >= n {
                return Err(GraphError::EndpointOutOfRange {
                    index,
                    endpoint,
                    vertices: n,
                });
            }
        }
        let nu = n as usize;
        let mut in_offsets = vec![0usize; nu + 1];
        for &(_, dst) in edges {
            in_offsets[dst as usize + 1] += 1;
        }
        for v in 0..nu {
            in_offsets[v + 1] += in_offsets[v];
        }
        let mut cursor: Vec<usize> = in_offsets[..nu].to_vec();
        let mut in_sources = vec![0u32; edges.len()];
        for &(src, dst) in edges {
            let c = &mut cursor[dst as usize];
            in_sources[*c] = src;
            *c += 1;
        }
        Ok(Self::from_in_view(n, in_offsets, in_sources))
    }

    /// Builds a graph from a complete (possibly group-unsorted) in-edge view.
    ///
    /// Canonicalizes each group and derives the out-edge view. Callers must
    /// supply monotone offsets covering every source ID; this is the fast
    /// path used by the generator and the deserializers, which construct the
    /// view directly instead of materializing an edge list.
    pub(crate) fn from_in_view(n: u32, in_offsets: Vec<usize>, mut in_sources: Vec<u32>) -> Self {
        let nu = n as usize;
        debug_assert_eq!(in_offsets.len(), nu + 1);
        debug_assert_eq!(in_offsets[0], 0);
        debug_assert_eq!(*in_offsets.last().unwrap(), in_sources.len());
        for v in 0..nu {
            in_sources[in_offsets[v]..in_offsets[v + 1]].sort_unstable();
        }
        let (out_offsets, out_targets) = derive_out_view(nu, &in_offsets, &in_sources);
        Graph {
            num_vertices: n,
            in_offsets,
            in_sources,
            out_offsets,
            out_targets,
        }
    }

    /// Number of vertices (the `n` every per-vertex array is sized by).
    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    /// Number of directed edges, counting parallel edges individually.
    pub fn num_edges(&self) -> u64 {
        self.in_sources.len() as u64
    }

    /// In-degree of `v`. Panics if `v` is out of range.
    pub fn in_degree(&self, v: u32) -> u64 {
        let v = v as usize;
        (self.in_offsets[v + 1] - self.in_offsets[v]) as u64
    }

    /// Out-degree of `v`. Panics if `v` is out of range.
    pub fn out_degree(&self, v: u32) -> u64 {
        let v = v as usize;
        (self.out_offsets[v + 1] - self.out_offsets[v]) as u64
    }

    /// Sources of `v`'s in-edges, ascending (parallel edges repeat).
    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    /// Targets of `v`'s out-edges, ascending (parallel edges repeat).
    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    /// In-edge offset array (length `n + 1`, monotone, ends at `|E|`).
    pub fn in_offsets(&self) -> &[usize] {
        &self.in_offsets
    }

    /// Out-edge offset array (length `n + 1`, monotone, ends at `|E|`).
    pub fn out_offsets(&self) -> &[usize] {
        &self.out_offsets
    }

    /// Full in-source array, grouped by destination.
    pub fn in_sources(&self) -> &[u32] {
        &self.in_sources
    }

    /// Full out-target array, grouped by source.
    pub fn out_targets(&self) -> &[u32] {
        &self.out_targets
    }

    /// The canonical edge list: `(src, dst)` ordered by destination, then
    /// source. `from_edge_list` of this list reproduces the graph exactly.
    pub fn to_edge_list(&self) -> Vec<(u32, u32)> {
        let mut edges = Vec::with_capacity(self.in_sources.len());
        for v in 0..self.num_vertices {
            for &u in self.in_neighbors(v) {
                edges.push((u, v));
            }
        }
        edges
    }

    /// Relabels every vertex `v` to `p.map(v)`; the result is isomorphic to
    /// `self` and is returned in canonical form.
    pub fn apply_permutation(&self, p: &Permutation) -> Result<Graph, GraphError> {
        if p.len() != self.num_vertices as usize {
            return Err(GraphError::PermutationLengthMismatch {
                got: p.len(),
                expected: self.num_vertices,
            });
        }
        let nu = self.num_vertices as usize;
        let mut in_offsets = vec![0usize; nu + 1];
        for v in 0..self.num_vertices {
            in_offsets[p.map(v) as usize + 1] = self.in_degree(v) as usize;
        }
        for v in 0..nu {
            in_offsets[v + 1] += in_offsets[v];
        }
        let mut cursor: Vec<usize> = in_offsets[..nu].to_vec();
        let mut in_sources = vec![0u32; self.in_sources.len()];
        for v in 0..self.num_vertices {
            let c = &mut cursor[p.map(v) as usize];
            for &u in self.in_neighbors(v) {
                in_sources[*c] = p.map(u);
                *c += 1;
            }
        }
        Ok(Graph::from_in_view(
            self.num_vertices,
            in_offsets,
            in_sources,
        ))
    }

    /// Builds a graph from a complete (possibly group-unsorted) out-edge
    /// view; the in-edge view is derived by transposition. Same offset
    /// contract as [`Graph::from_in_view`]; used by the adjacency-file
    /// reader, whose on-disk orientation is source-major.
    pub(crate) fn from_out_view(
        n: u32,
        out_offsets: Vec<usize>,
        mut out_targets: Vec<u32>,
    ) -> Self {
        let nu = n as usize;
        debug_assert_eq!(out_offsets.len(), nu + 1);
        debug_assert_eq!(out_offsets[0], 0);
        debug_assert_eq!(*out_offsets.last().unwrap(), out_targets.len());
        for v in 0..nu {
            out_targets[out_offsets[v]..out_offsets[v + 1]].sort_unstable();
        }
        let (in_offsets, in_sources) = derive_out_view(nu, &out_offsets, &out_targets);
        Graph {
            num_vertices: n,
            in_offsets,
            in_sources,
            out_offsets,
            out_targets,
        }
    }

    /// Returns the graph with every arc mirrored: each edge `(u, v)` yields
    /// both `(u, v)` and `(v, u)` in the result (self-loops double up). This
    /// is how undirected inputs are represented and how undirected traversal
    /// over a directed graph is realized.
    pub fn with_mirrored_arcs(&self) -> Graph {
        let nu = self.num_vertices as usize;
        let mut in_offsets = vec![0usize; nu + 1];
        for v in 0..nu {
            in_offsets[v + 1] =
                in_offsets[v] + (self.in_degree(v as u32) + self.out_degree(v as u32)) as usize;
        }
        let mut in_sources = Vec::with_capacity(self.in_sources.len() * 2);
        for v in 0..self.num_vertices {
            in_sources.extend_from_slice(self.in_neighbors(v));
            in_sources.extend_from_slice(self.out_neighbors(v));
        }
        Graph::from_in_view(self.num_vertices, in_offsets, in_sources)
    }

    /// Per-in-degree vertex counts plus the derived scalars every balance
    /// argument runs on.
    pub fn degree_histogram(&self) -> DegreeHistogram {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        let mut max_degree = 0u64;
        let mut nonzero = 0u64;
        for v in 0..self.num_vertices {
            let d = self.in_degree(v);
            *counts.entry(d).or_insert(0) += 1;
            max_degree = max_degree.max(d);
            if d > 0 {
                nonzero += 1;
            }
        }
        DegreeHistogram {
            counts,
            max_degree,
            nonzero_vertex_count: nonzero,
        }
    }
}

/// Transposes a canonical CSR view (in → out or out → in). Iterating groups
/// in ascending order leaves each transposed group already sorted, so no
/// per-group sort is needed.
fn derive_out_view(n: usize, in_offsets: &[usize], in_sources: &[u32]) -> (Vec<usize>, Vec<u32>) {
    let mut out_offsets = vec![0usize; n + 1];
    for &u in in_sources {
        out_offsets[u as usize + 1] += 1;
    }
    for v in 0..n {
        out_offsets[v + 1] += out_offsets[v];
    }
    let mut cursor: Vec<usize> = out_offsets[..n].to_vec();
    let mut out_targets = vec![0u32; in_sources.len()];
    for v in 0..n {
        for &u in &in_sources[in_offsets[v]..in_offsets[v + 1]] {
            let c = &mut cursor[u as usize];
            out_targets[*c] = v as u32;
            *c += 1;
        }
    }
    (out_offsets, out_targets)
}

/// Bijective old-ID → new-ID vertex relabeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    seq: Vec<u32>,
}

impl Permutation {
    /// Validates that `seq` is a bijection on `{0, …, len−1}`.
    pub fn new(seq: Vec<u32>) -> Result<Self, GraphError> {
        let n = seq.len();
        let mut seen = vec![false; n];
        for (index, &value) in seq.iter().enumerate() {
            if value as usize >= n {
                return Err(GraphError::PermutationValueOutOfRange {
                    index,
                    value,
                    len: n,
                });
            }
            if seen[value as usize] {
                return Err(GraphError::PermutationDuplicate { value });
            }
            seen[value as usize] = true;
        }
        Ok(Permutation { seq })
    }

    /// The identity relabeling on `n` vertices.
    pub fn identity(n: u32) -> Self {
        Permutation {
            seq: (0..n).collect(),
        }
    }

    /// New ID of old vertex `v`. Panics if `v` is out of range.
    pub fn map(&self, v: u32) -> u32 {
        self.seq[v as usize]
    }

    /// Number of vertices covered.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    /// True only for the empty permutation.
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The underlying new-ID array, indexed by old ID.
    pub fn as_slice(&self) -> &[u32] {
        &self.seq
    }
}

/// In-degree histogram with the scalars the balance theorems are stated in:
/// the rank count is `max_degree + 1` and `nonzero_vertex_count` is the
/// number of vertices the greedy edge-placement phase touches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    /// Map from in-degree to the number of vertices with that degree.
    pub counts: BTreeMap<u64, u64>,
    /// Highest in-degree present (0 for edgeless graphs).
    pub max_degree: u64,
    /// Number of vertices with at least one in-edge.
    pub nonzero_vertex_count: u64,
}

impl DegreeHistogram {
    /// One more than the maximum in-degree: the number of distinct degree
    /// ranks a Zipf model would need to cover this graph.
    pub fn num_ranks(&self) -> u64 {
        self.max_degree + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_cycle() -> Graph {
        Graph::from_edge_list(&[(0, 1), (1, 0)], 2).unwrap()
    }

    #[test]
    fn from_edge_list_two_cycle() {
        let g = two_cycle();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.in_degree(0), 1);
        assert_eq!(g.in_degree(1), 1);
    }

    #[test]
    fn from_edge_list_empty_graph() {
        let g = Graph::from_edge_list(&[], 3).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 0);
        assert_eq!(g.in_offsets(), &[0, 0, 0, 0]);
        assert_eq!(g.out_offsets(), &[0, 0, 0, 0]);
    }

    #[test]
    fn from_edge_list_keeps_parallel_edges() {
        let g = Graph::from_edge_list(&[(0, 2), (1, 2), (0, 2)], 3).unwrap();
        assert_eq!(g.in_degree(2), 3);
        assert_eq!(g.in_neighbors(2), &[0, 0, 1]);
        assert_eq!(g.out_degree(0), 2);
    }

    #[test]
    fn from_edge_list_rejects_out_of_range_endpoint() {
        let err = Graph::from_edge_list(&[(0, 1), (3, 1)], 2).unwrap_err();
        assert_eq!(
            err,
            GraphError::EndpointOutOfRange {
                index: 1,
                endpoint: 3,
                vertices: 2
            }
        );
    }

    #[test]
    fn in_degree_examples() {
        assert_eq!(two_cycle().in_degree(0), 1);
        let empty = Graph::from_edge_list(&[], 1).unwrap();
        assert_eq!(empty.in_degree(0), 0);
    }

    #[test]
    fn views_are_consistent_and_sorted() {
        let g = Graph::from_edge_list(&[(2, 0), (1, 0), (0, 1), (2, 1), (0, 1)], 3).unwrap();
        assert_eq!(g.in_neighbors(0), &[1, 2]);
        assert_eq!(g.in_neighbors(1), &[0, 0, 2]);
        assert_eq!(g.out_neighbors(0), &[1, 1]);
        assert_eq!(g.out_neighbors(2), &[0, 1]);
        // Both views describe the same multiset.
        let mut from_out: Vec<(u32, u32)> = Vec::new();
        for v in 0..g.num_vertices() {
            for &t in g.out_neighbors(v) {
                from_out.push((v, t));
            }
        }
        let mut from_in = g.to_edge_list();
        from_in.sort_unstable();
        from_out.sort_unstable();
        assert_eq!(from_in, from_out);
    }

    #[test]
    fn to_edge_list_round_trip_is_fixed_point() {
        let g = Graph::from_edge_list(&[(2, 0), (0, 2), (0, 2), (1, 1)], 3).unwrap();
        let again = Graph::from_edge_list(&g.to_edge_list(), 3).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn apply_identity_permutation_is_noop() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2), (0, 2)], 3).unwrap();
        let p = Permutation::identity(3);
        assert_eq!(g.apply_permutation(&p).unwrap(), g);
    }

    #[test]
    fn apply_swap_on_symmetric_instance() {
        let g = two_cycle();
        let p = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(g.apply_permutation(&p).unwrap(), g);
    }

    #[test]
    fn apply_permutation_relabels_path() {
        // Path 0→1→2 under p = [2,0,1] becomes {(2,0), (0,1)}.
        let g = Graph::from_edge_list(&[(0, 1), (1, 2)], 3).unwrap();
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let relabeled = g.apply_permutation(&p).unwrap();
        assert_eq!(relabeled.to_edge_list(), vec![(2, 0), (0, 1)]);
    }

    #[test]
    fn apply_permutation_rejects_length_mismatch() {
        let g = two_cycle();
        let p = Permutation::new(vec![0, 2, 1]).unwrap();
        assert_eq!(
            g.apply_permutation(&p).unwrap_err(),
            GraphError::PermutationLengthMismatch {
                got: 3,
                expected: 2
            }
        );
    }

    #[test]
    fn permutation_rejects_duplicates_and_range() {
        assert_eq!(
            Permutation::new(vec![0, 0]).unwrap_err(),
            GraphError::PermutationDuplicate { value: 0 }
        );
        assert_eq!(
            Permutation::new(vec![0, 5]).unwrap_err(),
            GraphError::PermutationValueOutOfRange {
                index: 1,
                value: 5,
                len: 2
            }
        );
    }

    #[test]
    fn degree_histogram_empty_graph() {
        let g = Graph::from_edge_list(&[], 3).unwrap();
        let h = g.degree_histogram();
        assert_eq!(h.counts.get(&0), Some(&3));
        assert_eq!(h.max_degree, 0);
        assert_eq!(h.nonzero_vertex_count, 0);
    }

    #[test]
    fn degree_histogram_star() {
        // Four leaves pointing into vertex 0.
        let g = Graph::from_edge_list(&[(1, 0), (2, 0), (3, 0), (4, 0)], 5).unwrap();
        let h = g.degree_histogram();
        assert_eq!(h.counts.get(&0), Some(&4));
        assert_eq!(h.counts.get(&4), Some(&1));
        assert_eq!(h.max_degree, 4);
        assert_eq!(h.num_ranks(), 5);
        assert_eq!(h.nonzero_vertex_count, 1);
    }

    #[test]
    fn degree_histogram_two_cycle() {
        let h = two_cycle().degree_histogram();
        assert_eq!(h.counts.get(&1), Some(&2));
        assert_eq!(h.nonzero_vertex_count, 2);
    }

    #[test]
    fn out_view_constructor_canonicalizes_and_transposes() {
        let g = Graph::from_out_view(3, vec![0, 2, 2, 3], vec![2, 1, 0]);
        assert_eq!(g.out_neighbors(0), &[1, 2]);
        assert_eq!(g.out_neighbors(1), &[] as &[u32]);
        assert_eq!(g.in_neighbors(0), &[2]);
        assert_eq!(g.in_neighbors(1), &[0]);
        assert_eq!(g.in_neighbors(2), &[0]);
        assert_eq!(
            g,
            Graph::from_edge_list(&[(0, 2), (0, 1), (2, 0)], 3).unwrap()
        );
    }

    #[test]
    fn mirroring_adds_every_reverse_arc() {
        let g = Graph::from_edge_list(&[(0, 1), (2, 1), (3, 3)], 4).unwrap();
        let m = g.with_mirrored_arcs();
        assert_eq!(
            m.to_edge_list(),
            vec![(1, 0), (0, 1), (2, 1), (1, 2), (3, 3), (3, 3)]
        );
        // Mirroring a symmetric graph doubles every edge in place.
        let cycle = Graph::from_edge_list(&[(0, 1), (1, 0)], 2).unwrap();
        let mc = cycle.with_mirrored_arcs();
        assert_eq!(mc.num_edges(), 4);
        assert_eq!(mc.in_neighbors(0), &[1, 1]);
    }

    /// Strategy: a small random edge list over `n` vertices plus a random
    /// permutation of the same range.
    fn graph_and_permutation() -> impl Strategy<Value = (Vec<(u32, u32)>, Vec<u32>)> {
        (2u32..12).prop_flat_map(|n| {
            let edges = proptest::collection::vec((0..n, 0..n), 0..40);
            let perm = Just((0..n).collect::<Vec<u32>>()).prop_shuffle();
            (edges, perm)
        })
    }

    proptest! {
        #[test]
        fn permutation_preserves_degree_multiset((edges, perm) in graph_and_permutation()) {
            let n = perm.len() as u32;
            let g = Graph::from_edge_list(&edges, n).unwrap();
            let p = Permutation::new(perm).unwrap();
            let h = g.apply_permutation(&p).unwrap();
            prop_assert_eq!(h.num_edges(), g.num_edges());
            prop_assert_eq!(h.num_vertices(), g.num_vertices());
            prop_assert_eq!(h.degree_histogram(), g.degree_histogram());
        }

        #[test]
        fn permutation_round_trips_edges((edges, perm) in graph_and_permutation()) {
            let n = perm.len() as u32;
            let g = Graph::from_edge_list(&edges, n).unwrap();
            let p = Permutation::new(perm.clone()).unwrap();
            let h = g.apply_permutation(&p).unwrap();
            // Applying the inverse gets the original back.
            let mut inv = vec![0u32; perm.len()];
            for (old, &new) in perm.iter().enumerate() {
                inv[new as usize] = old as u32;
            }
            let back = h.apply_permutation(&Permutation::new(inv).unwrap()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn edge_list_round_trip(edges in proptest::collection::vec((0u32..9, 0u32..9), 0..30)) {
            let g = Graph::from_edge_list(&edges, 9).unwrap();
            let again = Graph::from_edge_list(&g.to_edge_list(), 9).unwrap();
            prop_assert_eq!(g, again);
        }
    }
}
