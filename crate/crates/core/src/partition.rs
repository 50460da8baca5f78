//! Baseline partitioner: locality-preserving, destination-side, edge-balanced
//! chunking — plus the shared [`PartitionAssignment`] record every placement
//! algorithm in this crate produces.
//!
//! The baseline walks vertices in ID order and pours each vertex's in-edges
//! into the current partition, advancing (at most once per vertex, and never
//! past the last partition) when the current partition has reached the target
//! `avg = |E| / P` (integer division). Division remainder therefore drifts
//! into the last partition, and a single high-degree vertex near a boundary
//! overloads its partition — exactly the imbalance the reorderer exists to
//! remove.

use thiserror::Error;

use crate::graph::Graph;

/// Errors from partitioning entry points.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    /// At least one partition is required.
    #[error("partition count must be at least 1")]
    ZeroParts,
    /// More partitions than vertices cannot all be nonempty.
    #[error("{parts} partitions exceed {vertices} vertices")]
    TooManyParts { parts: u32, vertices: u32 },
    /// A label lies outside `[0, parts)`.
    #[error("vertex {vertex} carries label {label}, outside 0..{parts}")]
    LabelOutOfRange { vertex: u32, label: u32, parts: u32 },
    /// Label array length differs from the vertex count.
    #[error("label array has {got} entries, graph has {expected} vertices")]
    LabelLengthMismatch { got: usize, expected: u32 },
}

/// Destination-side partition of a graph's vertices (and thereby its edges:
/// an in-edge belongs to the partition owning its destination).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionAssignment {
    /// Partition count `P`.
    pub parts: u32,
    /// Home partition `a[v]` of every vertex.
    pub labels: Vec<u32>,
    /// Vertices per partition, `u[p]`.
    pub vertex_counts: Vec<u64>,
    /// In-edges per partition, `w[p] = Σ_{a[v]=p} deg_in(v)`.
    pub edge_counts: Vec<u64>,
    /// When partitions are contiguous vertex-ID ranges: `P + 1` offsets with
    /// `a[v] = p` iff `boundaries[p] ≤ v < boundaries[p+1]`.
    pub boundaries: Option<Vec<u32>>,
}

impl PartitionAssignment {
    /// Builds an assignment from raw labels, computing counts and detecting
    /// contiguous boundaries.
    pub fn from_labels(g: &Graph, parts: u32, labels: Vec<u32>) -> Result<Self, PartitionError> {
        if parts == 0 {
            return Err(PartitionError::ZeroParts);
        }
        if labels.len() != g.num_vertices() as usize {
            return Err(PartitionError::LabelLengthMismatch {
                got: labels.len(),
                expected: g.num_vertices(),
            });
        }
        let mut vertex_counts = vec![0u64; parts as usize];
        let mut edge_counts = vec![0u64; parts as usize];
        for (v, &label) in labels.iter().enumerate() {
            if label >= parts {
                return Err(PartitionError::LabelOutOfRange {
                    vertex: v as u32,
                    label,
                    parts,
                });
            }
            vertex_counts[label as usize] += 1;
            edge_counts[label as usize] += g.in_degree(v as u32);
        }
        let boundaries = contiguous_boundaries(parts, &labels);
        Ok(PartitionAssignment {
            parts,
            labels,
            vertex_counts,
            edge_counts,
            boundaries,
        })
    }

    /// The vertices of partition `p`, as a boundary range when contiguous.
    pub fn vertices_of(&self, p: u32) -> impl Iterator<Item = u32> + '_ {
        let (range, labels) = match &self.boundaries {
            Some(b) => (b[p as usize]..b[p as usize + 1], None),
            None => (0..self.labels.len() as u32, Some(p)),
        };
        range.filter(move |&v| match labels {
            None => true,
            Some(p) => self.labels[v as usize] == p,
        })
    }
}

/// Returns the boundary array when `labels` is nondecreasing and therefore
/// describes contiguous ranges.
fn contiguous_boundaries(parts: u32, labels: &[u32]) -> Option<Vec<u32>> {
    let mut boundaries = vec![0u32; parts as usize + 1];
    let mut prev = 0u32;
    for (v, &label) in labels.iter().enumerate() {
        if label < prev {
            return None;
        }
        // Open every partition in (prev, label] at this vertex.
        for p in prev..label {
            boundaries[p as usize + 1] = v as u32;
        }
        prev = label;
    }
    for p in prev..parts {
        boundaries[p as usize + 1] = labels.len() as u32;
    }
    Some(boundaries)
}

/// Chunks vertices in ID order into `parts` contiguous destination-side
/// partitions holding roughly `|E| / parts` in-edges each.
///
/// Faithful to the baseline pseudocode: the advance check runs before each
/// vertex is assigned, at most one advance per vertex, remainder edges land
/// in the last partition, and partitions may come out vertex-empty when the
/// edge target is met trivially (e.g. `avg = 0`).
pub fn partition_by_destination(
    g: &Graph,
    parts: u32,
) -> Result<PartitionAssignment, PartitionError> {
    if parts == 0 {
        return Err(PartitionError::ZeroParts);
    }
    if parts > g.num_vertices() {
        return Err(PartitionError::TooManyParts {
            parts,
            vertices: g.num_vertices(),
        });
    }
    let avg = g.num_edges() / parts as u64;
    let n = g.num_vertices();
    let mut labels = vec![0u32; n as usize];
    let mut vertex_counts = vec![0u64; parts as usize];
    let mut edge_counts = vec![0u64; parts as usize];
    let mut boundaries = vec![0u32; parts as usize + 1];
    let mut current = 0u32;
    for v in 0..n {
        if edge_counts[current as usize] >= avg && current < parts - 1 {
            current += 1;
            boundaries[current as usize] = v;
        }
        labels[v as usize] = current;
        vertex_counts[current as usize] += 1;
        edge_counts[current as usize] += g.in_degree(v);
    }
    for p in current..parts {
        boundaries[p as usize + 1] = n;
    }
    Ok(PartitionAssignment {
        parts,
        labels,
        vertex_counts,
        edge_counts,
        boundaries: Some(boundaries),
    })
}

/// Per-partition view over the in-edges induced by an assignment.
pub struct EdgePartition<'a> {
    graph: &'a Graph,
    assignment: &'a PartitionAssignment,
    part: u32,
}

impl<'a> EdgePartition<'a> {
    /// The partition this view covers.
    pub fn part(&self) -> u32 {
        self.part
    }

    /// Number of in-edges in the view (equals the assignment's `w[p]`).
    pub fn edge_count(&self) -> u64 {
        self.assignment.edge_counts[self.part as usize]
    }

    /// Iterates the view's `(src, dst)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + 'a {
        let graph = self.graph;
        self.assignment
            .vertices_of(self.part)
            .flat_map(move |v| graph.in_neighbors(v).iter().map(move |&u| (u, v)))
    }
}

/// Splits the graph's in-edge multiset by destination partition. The views
/// are disjoint and their union is exactly the edge multiset.
pub fn induce_edge_partitions<'a>(
    g: &'a Graph,
    a: &'a PartitionAssignment,
) -> Vec<EdgePartition<'a>> {
    (0..a.parts)
        .map(|part| EdgePartition {
            graph: g,
            assignment: a,
            part,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Ring over n vertices: every in-degree is exactly 1.
    fn ring(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edge_list(&edges, n).unwrap()
    }

    /// A graph whose in-degree sequence matches `degrees`, sources chosen
    /// round-robin (source identity is irrelevant to partitioning).
    fn graph_with_in_degrees(degrees: &[u32]) -> Graph {
        let n = degrees.len() as u32;
        let mut edges = Vec::new();
        for (v, &d) in degrees.iter().enumerate() {
            for i in 0..d {
                edges.push(((v as u32 + i + 1) % n, v as u32));
            }
        }
        Graph::from_edge_list(&edges, n).unwrap()
    }

    #[test]
    fn uniform_degrees_chunk_evenly() {
        let a = partition_by_destination(&ring(8), 4).unwrap();
        assert_eq!(a.boundaries, Some(vec![0, 2, 4, 6, 8]));
        assert_eq!(a.edge_counts, vec![2, 2, 2, 2]);
        assert_eq!(a.vertex_counts, vec![2, 2, 2, 2]);
    }

    #[test]
    fn boundary_hub_overloads_first_partition() {
        // Degrees [5,1,1,1], P=2, avg=4: the hub fills partition 0 alone.
        let g = graph_with_in_degrees(&[5, 1, 1, 1]);
        let a = partition_by_destination(&g, 2).unwrap();
        assert_eq!(a.labels, vec![0, 1, 1, 1]);
        assert_eq!(a.edge_counts, vec![5, 3]);
        assert_eq!(a.vertex_counts, vec![1, 3]);
        assert_eq!(a.boundaries, Some(vec![0, 1, 4]));
    }

    #[test]
    fn single_partition_takes_everything() {
        let g = graph_with_in_degrees(&[3, 0, 2]);
        let a = partition_by_destination(&g, 1).unwrap();
        assert_eq!(a.labels, vec![0, 0, 0]);
        assert_eq!(a.edge_counts, vec![5]);
        assert_eq!(a.vertex_counts, vec![3]);
    }

    #[test]
    fn rejects_bad_partition_counts() {
        let g = ring(8);
        assert_eq!(
            partition_by_destination(&g, 0).unwrap_err(),
            PartitionError::ZeroParts
        );
        assert_eq!(
            partition_by_destination(&g, 9).unwrap_err(),
            PartitionError::TooManyParts {
                parts: 9,
                vertices: 8
            }
        );
    }

    #[test]
    fn edgeless_graph_produces_empty_leading_partition() {
        // avg = 0 advances immediately, so partition 0 stays vertex-empty —
        // the pseudocode's behavior, kept deliberately.
        let g = Graph::from_edge_list(&[], 3).unwrap();
        let a = partition_by_destination(&g, 3).unwrap();
        assert_eq!(a.labels, vec![1, 2, 2]);
        assert_eq!(a.vertex_counts, vec![0, 1, 2]);
        assert_eq!(a.boundaries, Some(vec![0, 0, 1, 3]));
    }

    #[test]
    fn from_labels_detects_contiguity() {
        let g = graph_with_in_degrees(&[1, 2, 1, 1]);
        let contiguous = PartitionAssignment::from_labels(&g, 2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(contiguous.boundaries, Some(vec![0, 2, 4]));
        assert_eq!(contiguous.edge_counts, vec![3, 2]);
        let scattered = PartitionAssignment::from_labels(&g, 2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(scattered.boundaries, None);
        assert_eq!(scattered.vertex_counts, vec![2, 2]);
    }

    #[test]
    fn from_labels_validates() {
        let g = ring(3);
        assert_eq!(
            PartitionAssignment::from_labels(&g, 2, vec![0, 2, 0]).unwrap_err(),
            PartitionError::LabelOutOfRange {
                vertex: 1,
                label: 2,
                parts: 2
            }
        );
        assert_eq!(
            PartitionAssignment::from_labels(&g, 2, vec![0, 1]).unwrap_err(),
            PartitionError::LabelLengthMismatch {
                got: 2,
                expected: 3
            }
        );
    }

    #[test]
    fn induced_views_cover_the_edge_multiset() {
        let g = graph_with_in_degrees(&[5, 1, 1, 1]);
        let a = partition_by_destination(&g, 2).unwrap();
        let views = induce_edge_partitions(&g, &a);
        assert_eq!(views.len(), 2);
        assert_eq!(views[0].edge_count(), 5);
        assert_eq!(views[1].edge_count(), 3);
        let mut union: Vec<(u32, u32)> = views.iter().flat_map(|v| v.iter()).collect();
        union.sort_unstable();
        let mut all = g.to_edge_list();
        all.sort_unstable();
        assert_eq!(union, all);
    }

    #[test]
    fn induced_view_on_two_cycle() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 0)], 2).unwrap();
        let a = PartitionAssignment::from_labels(&g, 2, vec![0, 1]).unwrap();
        let views = induce_edge_partitions(&g, &a);
        assert_eq!(views[0].iter().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(views[1].iter().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    proptest! {
        #[test]
        fn chunking_conserves_counts_and_respects_target(
            edges in proptest::collection::vec((0u32..20, 0u32..20), 0..120),
            parts in 1u32..8,
        ) {
            let g = Graph::from_edge_list(&edges, 20).unwrap();
            let a = partition_by_destination(&g, parts).unwrap();
            prop_assert_eq!(a.edge_counts.iter().sum::<u64>(), g.num_edges());
            prop_assert_eq!(a.vertex_counts.iter().sum::<u64>(), 20);
            let b = a.boundaries.clone().unwrap();
            prop_assert_eq!(b[0], 0);
            prop_assert_eq!(b[parts as usize], 20);
            for p in 0..parts as usize {
                prop_assert!(b[p] <= b[p + 1]);
                // Labels match boundary ranges.
                for v in b[p]..b[p + 1] {
                    prop_assert_eq!(a.labels[v as usize], p as u32);
                }
            }
            // Every partition closed before the end met the edge target.
            let avg = g.num_edges() / parts as u64;
            for p in 0..parts as usize {
                if b[p + 1] < 20 {
                    prop_assert!(a.edge_counts[p] >= avg);
                }
            }
        }
    }
}
