//! Text formats: edge lists, partition files and Graphviz export.
//!
//! Edge list: a header `n m`, then `m` lines `u v` with `0 ≤ u, v < n`.
//! Blank lines and lines starting with `#` are ignored. Serialisation is
//! canonical (edges sorted, smaller endpoint first, trailing newline), so
//! equal graphs produce identical bytes.
//!
//! Partition file: one part per line, vertices separated by whitespace.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{edge, EdgeSet, UGraph, VertexSet};
use crate::partition::{PartSet, VertexPartition};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_fields<const K: usize>(line_no: usize, line: &str) -> Result<[usize; K]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != K {
        return Err(Error::Parse { line: line_no, msg: format!("expected {K} fields, found {}", fields.len()) });
    }
    let mut out = [0usize; K];
    for (slot, field) in out.iter_mut().zip(fields) {
        *slot = field
            .parse()
            .map_err(|_| Error::Parse { line: line_no, msg: format!("{field:?} is not a natural number") })?;
    }
    Ok(out)
}

pub fn parse_edge_list(text: &str) -> Result<UGraph> {
    let mut lines = content_lines(text);
    let Some((header_line, header)) = lines.next() else {
        return Err(Error::Parse { line: 1, msg: "missing `n m` header".into() });
    };
    let [n, m] = parse_fields::<2>(header_line, header)?;
    let mut edges = EdgeSet::new();
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        let [u, v] = parse_fields::<2>(line_no, line)?;
        if u == v {
            return Err(Error::Parse { line: line_no, msg: format!("self-loop at {u}") });
        }
        if u >= n || v >= n {
            return Err(Error::Parse { line: line_no, msg: format!("vertex out of range 0..{n}") });
        }
        if !edges.insert(edge(u, v)) {
            return Err(Error::Parse { line: line_no, msg: format!("duplicate edge {{{u}, {v}}}") });
        }
    }
    if edges.len() != m {
        return Err(Error::Parse { line: last_line, msg: format!("header promises {m} edges, found {}", edges.len()) });
    }
    UGraph::on_range(n, edges)
}

/// Requires vertices `0..n`.
pub fn write_edge_list(g: &UGraph) -> Result<String> {
    if !g.is_contiguous() {
        return Err(Error::Parse { line: 0, msg: "edge lists need vertices 0..n".into() });
    }
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    Ok(out)
}

pub fn parse_partition(text: &str, ground: &VertexSet) -> Result<VertexPartition> {
    let mut parts = PartSet::new();
    for (line_no, line) in content_lines(text) {
        let mut part = VertexSet::new();
        for field in line.split_whitespace() {
            let v: usize = field
                .parse()
                .map_err(|_| Error::Parse { line: line_no, msg: format!("{field:?} is not a natural number") })?;
            if !part.insert(v) {
                return Err(Error::Parse { line: line_no, msg: format!("vertex {v} repeated") });
            }
        }
        if !parts.insert(part) {
            return Err(Error::Parse { line: line_no, msg: "part repeated".into() });
        }
    }
    VertexPartition::new(ground.clone(), parts)
}

pub fn write_partition(p: &VertexPartition) -> String {
    let mut out = String::new();
    for part in p.iter() {
        let line: Vec<String> = part.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a String");
    }
    out
}

/// Graphviz source; with a partition, each part becomes a cluster.
pub fn to_dot(g: &UGraph, partition: Option<&VertexPartition>, highlight: &EdgeSet) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    match partition {
        Some(p) => {
            for (i, part) in p.iter().enumerate() {
                writeln!(out, "  subgraph cluster_{i} {{\n    label=\"part {i}\";").unwrap();
                for v in part {
                    writeln!(out, "    {v};").unwrap();
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for v in g.vertices() {
                writeln!(out, "  {v};").unwrap();
            }
        }
    }
    let drawn: BTreeSet<_> = g.edges().iter().chain(highlight).collect();
    for &(u, v) in drawn {
        if highlight.contains(&(u, v)) {
            writeln!(out, "  {u} -- {v} [style=dashed, color=red];").unwrap();
        } else {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::complete;

    #[test]
    fn edge_list_round_trip() {
        let g = complete(4).unwrap();
        let text = write_edge_list(&g).unwrap();
        assert_eq!(text, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        let shuffled = "# K3\n3 3\n2 1\n\n0 2\n1 0\n";
        assert_eq!(parse_edge_list(shuffled).unwrap(), complete(3).unwrap());
    }

    #[test]
    fn edge_list_errors() {
        for bad in ["", "3\n", "3 1\n0 0\n", "3 1\n0 3\n", "3 2\n0 1\n1 0\n", "3 2\n0 1\n", "3 1\n0 x\n"] {
            assert!(matches!(parse_edge_list(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
        let gap = UGraph::edgeless([0, 2].into_iter().collect());
        assert!(write_edge_list(&gap).is_err());
    }

    #[test]
    fn partition_round_trip() {
        let ground: VertexSet = (0..5).collect();
        let p = parse_partition("0 3\n# comment\n1 2 4\n", &ground).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(write_partition(&p), "0 3\n1 2 4\n");
        assert!(parse_partition("0 1\n", &ground).is_err());
        assert!(parse_partition("0 1 1\n2 3 4\n", &ground).is_err());
    }

    #[test]
    fn dot_output() {
        let g = complete(3).unwrap();
        let p = VertexPartition::discrete(g.vertices().clone());
        let removed: EdgeSet = [(0, 1)].into_iter().collect();
        let dot = to_dot(&g.without_edges(&removed), Some(&p), &removed);
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("subgraph cluster_2"));
        assert!(dot.contains("0 -- 1 [style=dashed, color=red];"));
        assert!(dot.contains("1 -- 2;"));
    }
}
