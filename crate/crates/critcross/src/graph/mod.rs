//! Explicit multigraph representation and the structural operations the
//! constructions need: complete bipartite builders, edge deletion and
//! contraction, the zip product, planarity testing and census extraction.
//!
//! Graphs are immutable values; every operation returns a new graph. Vertex
//! ids are stable under edge deletion. Contraction mints a fresh id for the
//! merged vertex and records the pair it came from.

mod io;
mod planarity;

pub use io::{from_edge_list, to_dot, to_edge_list, ParseError};
pub use planarity::is_planar;
pub(crate) use planarity::simple_graph_is_planar;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use thiserror::Error;

use crate::census::DegreeCensus3456;

/// Stable vertex identifier.
pub type VertexId = u64;

/// Optional per-edge annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// A designated contractible edge of a staircase tile.
    Thick,
}

/// One edge instance. Endpoints are stored normalized (`u <= v`); parallel
/// edges are separate instances with identical endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub label: Option<EdgeLabel>,
}

impl Edge {
    fn new(a: VertexId, b: VertexId, label: Option<EdgeLabel>) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, label }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("part sizes of a complete bipartite graph must be positive")]
    EmptyPart,
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(VertexId, VertexId),
    #[error("vertex {0} not present")]
    MissingVertex(VertexId),
    #[error("operation would create a loop at vertex {0}")]
    LoopRejected(VertexId),
    #[error("contraction endpoints must be distinct")]
    ContractSelfLoop,
    #[error("vertex degrees outside 3..=6: {0:?}")]
    OutOfRangeDegrees(Vec<(VertexId, usize)>),
    #[error("zip product requires degree-3 vertices; {0} has degree {1}")]
    ZipDegree(VertexId, usize),
    #[error("zip vertex {0} must have three distinct neighbors")]
    ZipNeighbors(VertexId),
    #[error("zip matching is not a bijection between the two neighborhoods")]
    ZipMatching,
}

/// An undirected multigraph with labeled edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: Vec<Edge>,
    /// Fresh ids minted by contraction, with the pair they merged.
    merged: BTreeMap<VertexId, (VertexId, VertexId)>,
}

impl Default for Multigraph {
    fn default() -> Self {
        Self::new()
    }
}

impl Multigraph {
    pub fn new() -> Self {
        Multigraph {
            vertices: BTreeSet::new(),
            edges: Vec::new(),
            merged: BTreeMap::new(),
        }
    }

    /// Builds a graph from explicit vertices and edges. Loops are rejected.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Multigraph::new();
        for v in vertices {
            g.vertices.insert(v);
        }
        for (a, b) in edges {
            g.add_edge(a, b, None)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(
        &mut self,
        a: VertexId,
        b: VertexId,
        label: Option<EdgeLabel>,
    ) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::LoopRejected(a));
        }
        self.vertices.insert(a);
        self.vertices.insert(b);
        self.edges.push(Edge::new(a, b, label));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        let probe = Edge::new(a, b, None);
        self.edges
            .iter()
            .any(|e| e.u == probe.u && e.v == probe.v)
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    /// Provenance of contraction-minted vertices: merged id -> original pair.
    pub fn merged_provenance(&self) -> &BTreeMap<VertexId, (VertexId, VertexId)> {
        &self.merged
    }

    pub(crate) fn insert_provenance(&mut self, mid: VertexId, pair: (VertexId, VertexId)) {
        self.merged.insert(mid, pair);
    }

    /// Degree of every vertex (loops would count twice, but loops never occur).
    pub fn degrees(&self) -> BTreeMap<VertexId, usize> {
        let mut deg: BTreeMap<VertexId, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            *deg.get_mut(&e.u).unwrap() += 1;
            *deg.get_mut(&e.v).unwrap() += 1;
        }
        deg
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .count()
    }

    /// Neighbors of `v`, deduplicated and sorted.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if e.u == v {
                out.insert(e.v);
            } else if e.v == v {
                out.insert(e.u);
            }
        }
        out.into_iter().collect()
    }

    /// True when there is at most one edge between any vertex pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert((e.u, e.v)))
    }

    /// Edges carrying the [`EdgeLabel::Thick`] label, in canonical order.
    pub fn thick_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .filter(|e| e.label == Some(EdgeLabel::Thick))
            .map(|e| (e.u, e.v))
            .collect();
        out.sort_unstable();
        out
    }

    /// Adjacency as index-compacted lists; used by the planarity test and the
    /// oracle. Returns (sorted vertex ids, adjacency by compact index).
    pub(crate) fn compact_adjacency(&self) -> (Vec<VertexId>, Vec<Vec<usize>>) {
        let ids: Vec<VertexId> = self.vertices.iter().copied().collect();
        let index: HashMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for e in &self.edges {
            let iu = index[&e.u];
            let iv = index[&e.v];
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        (ids, adj)
    }
}

/// The complete bipartite graph K_{a,b} on vertices 0..a (one part) and
/// a..a+b (the other part).
pub fn complete_bipartite(a: u64, b: u64) -> Result<Multigraph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::EmptyPart);
    }
    let mut g = Multigraph::new();
    for u in 0..a {
        for v in 0..b {
            g.add_edge(u, a + v, None)?;
        }
    }
    Ok(g)
}

/// Extracts the degree census. Every vertex must have degree in 3..=6;
/// offenders are listed in the error.
pub fn degree_census(g: &Multigraph) -> Result<DegreeCensus3456, GraphError> {
    let mut counts = [0u64; 4];
    let mut offending = Vec::new();
    for (v, d) in g.degrees() {
        match d {
            3..=6 => counts[d - 3] += 1,
            _ => offending.push((v, d)),
        }
    }
    if !offending.is_empty() {
        return Err(GraphError::OutOfRangeDegrees(offending));
    }
    Ok(DegreeCensus3456 {
        n3: BigInt::from(counts[0]),
        n4: BigInt::from(counts[1]),
        n5: BigInt::from(counts[2]),
        n6: BigInt::from(counts[3]),
    })
}

/// Removes one instance of the edge (a, b). Vertex ids are untouched, so an
/// endpoint left with degree 0 stays in the graph.
pub fn delete_edge(g: &Multigraph, a: VertexId, b: VertexId) -> Result<Multigraph, GraphError> {
    let probe = Edge::new(a, b, None);
    let mut out = g.clone();
    match out
        .edges
        .iter()
        .position(|e| e.u == probe.u && e.v == probe.v)
    {
        Some(i) => {
            out.edges.remove(i);
            Ok(out)
        }
        None => Err(GraphError::MissingEdge(a, b)),
    }
}

/// Contracts one instance of the edge (a, b): both endpoints are replaced by
/// a fresh merged vertex adjacent to everything they were adjacent to.
/// Parallel edges arising from common neighbors are kept. A second edge
/// between a and b would become a loop and is rejected.
pub fn contract_edge(g: &Multigraph, a: VertexId, b: VertexId) -> Result<Multigraph, GraphError> {
    if a == b {
        return Err(GraphError::ContractSelfLoop);
    }
    let probe = Edge::new(a, b, None);
    let pos = g
        .edges
        .iter()
        .position(|e| e.u == probe.u && e.v == probe.v)
        .ok_or(GraphError::MissingEdge(a, b))?;

    let merged_id = g.max_vertex_id().unwrap_or(0) + 1;
    let mut out = Multigraph::new();
    out.merged = g.merged.clone();
    out.merged.insert(merged_id, (probe.u, probe.v));
    for v in g.vertices() {
        if v != a && v != b {
            out.add_vertex(v);
        }
    }
    out.add_vertex(merged_id);

    let remap = |v: VertexId| if v == a || v == b { merged_id } else { v };
    for (i, e) in g.edges.iter().enumerate() {
        if i == pos {
            continue;
        }
        let (nu, nv) = (remap(e.u), remap(e.v));
        if nu == nv {
            // Another (a, b) edge instance would collapse to a loop.
            return Err(GraphError::LoopRejected(nu));
        }
        out.edges.push(Edge::new(nu, nv, e.label));
    }
    Ok(out)
}

/// Zip product of `g1` and `g2` at degree-3 vertices `v1` and `v2`: both
/// vertices are deleted and their neighborhoods joined by the given
/// bijection. Pass `None` to use the canonical matching (both neighborhoods
/// sorted by vertex id, matched in order).
///
/// Vertex ids of `g2` are shifted above the ids of `g1`; the matching refers
/// to the original ids on both sides. Returns the graph together with the id
/// shift applied to `g2`.
pub fn zip_product(
    g1: &Multigraph,
    v1: VertexId,
    g2: &Multigraph,
    v2: VertexId,
    matching: Option<&[(VertexId, VertexId)]>,
) -> Result<Multigraph, GraphError> {
    if !g1.has_vertex(v1) {
        return Err(GraphError::MissingVertex(v1));
    }
    if !g2.has_vertex(v2) {
        return Err(GraphError::MissingVertex(v2));
    }
    let d1 = g1.degree(v1);
    let d2 = g2.degree(v2);
    if d1 != 3 {
        return Err(GraphError::ZipDegree(v1, d1));
    }
    if d2 != 3 {
        return Err(GraphError::ZipDegree(v2, d2));
    }
    let n1 = g1.neighbors(v1);
    let n2 = g2.neighbors(v2);
    if n1.len() != 3 {
        return Err(GraphError::ZipNeighbors(v1));
    }
    if n2.len() != 3 {
        return Err(GraphError::ZipNeighbors(v2));
    }

    let pairs: Vec<(VertexId, VertexId)> = match matching {
        None => n1.iter().copied().zip(n2.iter().copied()).collect(),
        Some(m) => {
            let left: BTreeSet<_> = m.iter().map(|&(x, _)| x).collect();
            let right: BTreeSet<_> = m.iter().map(|&(_, y)| y).collect();
            if m.len() != 3
                || left != n1.iter().copied().collect()
                || right != n2.iter().copied().collect()
            {
                return Err(GraphError::ZipMatching);
            }
            m.to_vec()
        }
    };

    let shift = g1.max_vertex_id().unwrap_or(0) + 1;
    let mut out = Multigraph::new();
    for v in g1.vertices() {
        if v != v1 {
            out.add_vertex(v);
        }
    }
    for v in g2.vertices() {
        if v != v2 {
            out.add_vertex(v + shift);
        }
    }
    for e in g1.edges() {
        if e.u != v1 && e.v != v1 {
            out.edges.push(*e);
        }
    }
    for e in g2.edges() {
        if e.u != v2 && e.v != v2 {
            out.edges.push(Edge::new(e.u + shift, e.v + shift, e.label));
        }
    }
    for (x, y) in pairs {
        out.add_edge(x, y + shift, None)?;
    }
    Ok(out)
}
