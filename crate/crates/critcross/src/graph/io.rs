//! Graph import and export.
//!
//! Edge-list text: a header line `# vertices=N edges=M` followed by one
//! `u v` pair per line. DOT export for visualization; import is edge-list
//! only.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Multigraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line '# vertices=N edges=M'")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("line {0}: expected 'u v'")]
    BadLine(usize),
    #[error("line {0}: loops are not allowed")]
    Loop(usize),
    #[error("header claims {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

/// Serializes to edge-list text. Edges are written in canonical sorted order
/// so identical graphs produce byte-identical output.
pub fn to_edge_list(g: &Multigraph) -> String {
    let mut out = format!("# vertices={} edges={}\n", g.vertex_count(), g.edge_count());
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    edges.sort_unstable();
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Serializes to DOT (undirected).
pub fn to_dot(g: &Multigraph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    let mut isolated: BTreeSet<VertexId> = g.vertices().collect();
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    edges.sort_unstable();
    for (u, v) in &edges {
        isolated.remove(u);
        isolated.remove(v);
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    for v in isolated {
        out.push_str(&format!("  {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Parses edge-list text produced by [`to_edge_list`].
pub fn from_edge_list(text: &str) -> Result<Multigraph, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(ParseError::MissingHeader)?;
    let header = header.trim();
    if !header.starts_with('#') {
        return Err(ParseError::MissingHeader);
    }
    let mut expected_vertices = None;
    let mut expected_edges = None;
    for token in header.trim_start_matches('#').split_whitespace() {
        if let Some(v) = token.strip_prefix("vertices=") {
            expected_vertices =
                Some(v.parse::<usize>().map_err(|e| ParseError::BadHeader(e.to_string()))?);
        } else if let Some(v) = token.strip_prefix("edges=") {
            expected_edges =
                Some(v.parse::<usize>().map_err(|e| ParseError::BadHeader(e.to_string()))?);
        }
    }
    let (Some(nv), Some(ne)) = (expected_vertices, expected_edges) else {
        return Err(ParseError::BadHeader(header.to_string()));
    };

    let mut g = Multigraph::new();
    for (no, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(ParseError::BadLine(no + 1));
        };
        let u: VertexId = a.parse().map_err(|_| ParseError::BadLine(no + 1))?;
        let v: VertexId = b.parse().map_err(|_| ParseError::BadLine(no + 1))?;
        if u == v {
            return Err(ParseError::Loop(no + 1));
        }
        g.add_edge(u, v, None).expect("loop already excluded");
    }
    if g.edge_count() != ne {
        return Err(ParseError::CountMismatch {
            what: "edges",
            expected: ne,
            found: g.edge_count(),
        });
    }
    if g.vertex_count() != nv {
        return Err(ParseError::CountMismatch {
            what: "vertices",
            expected: nv,
            found: g.vertex_count(),
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_bipartite;

    #[test]
    fn edge_list_roundtrip() {
        let g = complete_bipartite(3, 3).unwrap();
        let text = to_edge_list(&g);
        assert!(text.starts_with("# vertices=6 edges=9\n"));
        let back = from_edge_list(&text).unwrap();
        assert_eq!(back.vertex_count(), 6);
        assert_eq!(back.edge_count(), 9);
        assert_eq!(to_edge_list(&back), text);
    }

    #[test]
    fn dot_output_shape() {
        let g = complete_bipartite(1, 1).unwrap();
        let dot = to_dot(&g, "g");
        assert_eq!(dot, "graph g {\n  0 -- 1;\n}\n");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(from_edge_list(""), Err(ParseError::MissingHeader)));
        assert!(from_edge_list("# vertices=2 edges=1\n0 0\n").is_err());
        assert!(matches!(
            from_edge_list("# vertices=2 edges=2\n0 1\n"),
            Err(ParseError::CountMismatch { .. })
        ));
    }
}
