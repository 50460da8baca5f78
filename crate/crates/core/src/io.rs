//! Byte-stable text serialization for graphs, permutations, and reports.
//!
//! Graphs persist in the adjacency text format used by the usual graph-
//! processing datasets: a header token, vertex and edge counts, then one
//! out-edge offset per vertex followed by one target per edge. The format is
//! source-major even though the balance machinery works on in-degrees; the
//! reader derives the in-edge view on load. A whitespace-separated edge-list
//! reader (with `#` comments) covers ad-hoc inputs, and an `--undirected`
//! style ingestion is available by mirroring arcs after reading.
//!
//! All writers emit `\n` newlines, no trailing whitespace, and fully
//! determined bytes: writing the same value twice produces identical files.
//! All readers report the 1-based line number of the first offending line.
//!
//! Reports serialize as line-oriented `key=value` text (several pairs per
//! line for tabular records); floats use six decimal places, and unbounded
//! ratios print as `inf`. The exact schema is documented in the repository
//! README and is part of the output contract.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::engine::WorkStats;
use crate::graph::{Graph, GraphError, Permutation};
use crate::metrics::{ImbalanceReport, OrderingComparison, SummaryStats};

/// Errors from reading or writing the text formats.
#[derive(Debug, Error)]
pub enum IoError {
    /// Underlying filesystem failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// The adjacency header token is wrong.
    #[error("line {line}: header must be 'AdjacencyGraph', found '{found}'")]
    BadHeader { line: usize, found: String },
    /// A line that should hold one number holds something else.
    #[error("line {line}: expected {expected}, found '{found}'")]
    BadNumber {
        line: usize,
        expected: &'static str,
        found: String,
    },
    /// An edge-list line does not have exactly two fields.
    #[error("line {line}: expected 'src dst', found {found} fields")]
    BadFieldCount { line: usize, found: usize },
    /// Offsets must start at 0 and never decrease.
    #[error("line {line}: offset {offset} out of order (previous {previous})")]
    NonMonotonicOffset {
        line: usize,
        offset: u64,
        previous: u64,
    },
    /// An offset points past the declared edge count.
    #[error("line {line}: offset {offset} exceeds edge count {edges}")]
    OffsetTooLarge {
        line: usize,
        offset: u64,
        edges: u64,
    },
    /// A vertex ID does not fit the declared vertex count.
    #[error("line {line}: vertex {vertex} out of range for {vertices} vertices")]
    VertexOutOfRange {
        line: usize,
        vertex: u64,
        vertices: u32,
    },
    /// The file ends before all declared records appear.
    #[error("expected {expected} data lines, found {found}")]
    Truncated { expected: usize, found: usize },
    /// Content remains after the last declared record.
    #[error("line {line}: unexpected trailing content '{found}'")]
    TrailingContent { line: usize, found: String },
    /// A permutation file does not describe a bijection.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(#[from] GraphError),
}

/// Line cursor over a loaded file: hands out trimmed lines with their
/// 1-based numbers and skips nothing (blank lines are the caller's call).
struct Lines<'a> {
    iter: std::str::Lines<'a>,
    number: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines(),
            number: 0,
        }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        self.iter.next().map(|raw| {
            self.number += 1;
            (self.number, raw.trim())
        })
    }

    /// Next line, or a truncation error computed from the caller's tally.
    fn expect(&mut self, expected: usize, found: usize) -> Result<(usize, &'a str), IoError> {
        self.next().ok_or(IoError::Truncated { expected, found })
    }

    /// Errors if any non-blank line remains.
    fn expect_end(&mut self) -> Result<(), IoError> {
        while let Some((line, text)) = self.next() {
            if !text.is_empty() {
                return Err(IoError::TrailingContent {
                    line,
                    found: text.to_string(),
                });
            }
        }
        Ok(())
    }
}

fn parse_number(line: usize, expected: &'static str, text: &str) -> Result<u64, IoError> {
    text.parse::<u64>().map_err(|_| IoError::BadNumber {
        line,
        expected,
        found: text.to_string(),
    })
}

fn parse_vertex(line: usize, expected: &'static str, text: &str, n: u32) -> Result<u32, IoError> {
    let value = parse_number(line, expected, text)?;
    if value >= n as u64 {
        return Err(IoError::VertexOutOfRange {
            line,
            vertex: value,
            vertices: n,
        });
    }
    Ok(value as u32)
}

/// Parses the adjacency text format from a string.
pub fn parse_adjacency(text: &str) -> Result<Graph, IoError> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect(1, 0)?;
    if header != "AdjacencyGraph" {
        return Err(IoError::BadHeader {
            line,
            found: header.to_string(),
        });
    }
    let (line, text_n) = lines.expect(3, 1)?;
    let n_raw = parse_number(line, "vertex count", text_n)?;
    let n = u32::try_from(n_raw).map_err(|_| IoError::BadNumber {
        line,
        expected: "vertex count fitting 32 bits",
        found: text_n.to_string(),
    })?;
    let (line, text_m) = lines.expect(3, 2)?;
    let m = parse_number(line, "edge count", text_m)? as usize;

    let declared = 3 + n as usize + m;
    let mut consumed = 3;
    let mut out_offsets = Vec::with_capacity(n as usize + 1);
    let mut previous = 0u64;
    for _ in 0..n {
        let (line, text) = lines.expect(declared, consumed)?;
        consumed += 1;
        let offset = parse_number(line, "offset", text)?;
        if out_offsets.is_empty() && offset != 0 {
            return Err(IoError::NonMonotonicOffset {
                line,
                offset,
                previous: 0,
            });
        }
        if offset < previous {
            return Err(IoError::NonMonotonicOffset {
                line,
                offset,
                previous,
            });
        }
        if offset > m as u64 {
            return Err(IoError::OffsetTooLarge {
                line,
                offset,
                edges: m as u64,
            });
        }
        previous = offset;
        out_offsets.push(offset as usize);
    }
    out_offsets.push(m);
    if n == 0 {
        // A zero-vertex graph can declare no edges.
        out_offsets = vec![0];
        if m != 0 {
            return Err(IoError::Truncated {
                expected: declared,
                found: consumed,
            });
        }
    }
    let mut out_targets = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.expect(declared, consumed)?;
        consumed += 1;
        out_targets.push(parse_vertex(line, "target vertex", text, n)?);
    }
    lines.expect_end()?;
    Ok(Graph::from_out_view(n, out_offsets, out_targets))
}

/// Reads a graph from an adjacency-format file.
pub fn read_adjacency(path: impl AsRef<Path>) -> Result<Graph, IoError> {
    parse_adjacency(&fs::read_to_string(path)?)
}

/// Renders the adjacency text format to a string.
pub fn render_adjacency(g: &Graph) -> String {
    let n = g.num_vertices() as usize;
    let mut out = String::new();
    out.push_str("AdjacencyGraph\n");
    let _ = writeln!(out, "{}", g.num_vertices());
    let _ = writeln!(out, "{}", g.num_edges());
    for &offset in &g.out_offsets()[..n] {
        let _ = writeln!(out, "{offset}");
    }
    for &target in g.out_targets() {
        let _ = writeln!(out, "{target}");
    }
    out
}

/// Writes `g` to `path` in the adjacency format; reading it back yields a
/// graph equal to `g` (both are canonical), and the bytes are deterministic.
pub fn write_adjacency(g: &Graph, path: impl AsRef<Path>) -> Result<(), IoError> {
    fs::write(path, render_adjacency(g))?;
    Ok(())
}

/// Parses a whitespace-separated `src dst` edge list; `#` starts a comment,
/// blank lines are skipped. With `n` absent, the vertex count is inferred as
/// one past the largest ID mentioned.
pub fn parse_edge_list(text: &str, n: Option<u32>) -> Result<Graph, IoError> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut lines = Lines::new(text);
    let bound = n.unwrap_or(u32::MAX);
    while let Some((line, raw)) = lines.next() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(IoError::BadFieldCount {
                line,
                found: fields.len(),
            });
        }
        let src = parse_vertex(line, "source vertex", fields[0], bound)?;
        let dst = parse_vertex(line, "destination vertex", fields[1], bound)?;
        edges.push((src, dst));
    }
    let vertices = n.unwrap_or_else(|| edges.iter().map(|&(s, d)| s.max(d) + 1).max().unwrap_or(0));
    Ok(Graph::from_edge_list(&edges, vertices).expect("endpoints validated during parsing"))
}

/// Reads an edge-list file; see [`parse_edge_list`].
pub fn read_edge_list(path: impl AsRef<Path>, n: Option<u32>) -> Result<Graph, IoError> {
    parse_edge_list(&fs::read_to_string(path)?, n)
}

/// Writes a permutation as one new ID per line.
pub fn write_permutation(p: &Permutation, path: impl AsRef<Path>) -> Result<(), IoError> {
    let mut out = String::new();
    for &id in p.as_slice() {
        let _ = writeln!(out, "{id}");
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a permutation file (one new ID per line, length defines `n`) and
/// validates that it is a bijection.
pub fn read_permutation(path: impl AsRef<Path>) -> Result<Permutation, IoError> {
    let text = fs::read_to_string(path)?;
    let mut seq = Vec::new();
    let mut lines = Lines::new(&text);
    while let Some((line, raw)) = lines.next() {
        if raw.is_empty() {
            continue;
        }
        let value = parse_number(line, "new vertex ID", raw)?;
        let id = u32::try_from(value).map_err(|_| IoError::BadNumber {
            line,
            expected: "new vertex ID fitting 32 bits",
            found: raw.to_string(),
        })?;
        seq.push(id);
    }
    Ok(Permutation::new(seq)?)
}

fn push_summary(out: &mut String, prefix: &str, s: &SummaryStats) {
    let _ = writeln!(out, "{prefix}_min={}", s.min);
    let _ = writeln!(out, "{prefix}_max={}", s.max);
    let _ = writeln!(out, "{prefix}_median={:.6}", s.median);
    let _ = writeln!(out, "{prefix}_stddev={:.6}", s.stddev);
}

fn join_counts(counts: &[u64]) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders an imbalance report as `key=value` lines (schema in the README).
pub fn render_imbalance_report(r: &ImbalanceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "parts={}", r.parts);
    let _ = writeln!(out, "edges={}", r.edge_counts.iter().sum::<u64>());
    let _ = writeln!(out, "vertices={}", r.vertex_counts.iter().sum::<u64>());
    let _ = writeln!(out, "delta_edges={}", r.delta_edges);
    let _ = writeln!(out, "delta_vertices={}", r.delta_vertices);
    push_summary(&mut out, "edge", &r.edge_summary);
    push_summary(&mut out, "vertex", &r.vertex_summary);
    let _ = writeln!(out, "edge_spread_ratio={:.6}", r.edge_spread_ratio);
    let _ = writeln!(out, "vertex_spread_ratio={:.6}", r.vertex_spread_ratio);
    let _ = writeln!(out, "edge_counts={}", join_counts(&r.edge_counts));
    let _ = writeln!(out, "vertex_counts={}", join_counts(&r.vertex_counts));
    if let Some(pre) = &r.preconditions {
        let _ = writeln!(out, "precondition_s={:.6}", pre.s);
        let _ = writeln!(out, "precondition_num_ranks={}", pre.num_ranks);
        let _ = writeln!(
            out,
            "precondition_edge_requirement={}",
            pre.edge_requirement
        );
        let _ = writeln!(out, "precondition_edge_count_ok={}", pre.edge_count_ok);
        let _ = writeln!(
            out,
            "precondition_partition_count_ok={}",
            pre.partition_count_ok
        );
        let _ = writeln!(
            out,
            "precondition_vertex_requirement={:.6}",
            pre.vertex_requirement
        );
        let _ = writeln!(out, "precondition_vertex_count_ok={}", pre.vertex_count_ok);
        let _ = writeln!(
            out,
            "edge_balance_guaranteed={}",
            pre.edge_balance_guaranteed()
        );
        let _ = writeln!(
            out,
            "vertex_balance_guaranteed={}",
            pre.vertex_balance_guaranteed()
        );
    }
    out
}

/// Renders per-iteration work stats as one tabular `key=value` line per
/// partition plus a spread line per iteration.
pub fn render_work_stats(stats: &[WorkStats]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "iterations={}", stats.len());
    for (iteration, ws) in stats.iter().enumerate() {
        for (part, work) in ws.per_partition.iter().enumerate() {
            let _ = writeln!(
                out,
                "iter={iteration} part={part} active_edges={} unique_destinations={} unique_sources={}",
                work.active_edges, work.unique_destinations, work.unique_sources
            );
        }
        let _ = writeln!(
            out,
            "iter={iteration} total_active_edges={} active_edge_spread={} unique_destination_spread={}",
            ws.total_active_edges(),
            ws.active_edge_spread(),
            ws.unique_destination_spread()
        );
    }
    out
}

/// Renders an ordering comparison as one summary line per ordering.
pub fn render_comparison(c: &OrderingComparison) -> String {
    let mut out = String::new();
    for row in c.rows() {
        let _ = writeln!(
            out,
            "ordering={} delta_edges={} delta_vertices={} edge_spread_ratio={:.6} \
             dense_active_edge_spread={} dense_unique_destination_spread={}",
            row.name,
            row.report.delta_edges,
            row.report.delta_vertices,
            row.report.edge_spread_ratio,
            row.dense_active_edge_spread,
            row.dense_unique_destination_spread
        );
    }
    out
}
