//! Tiles: graphs with two ordered walls, joined cyclically by identifying
//! consecutive walls position-wise.
//!
//! Two tile shapes are provided. The *staircase* tile of parameter n is a
//! band of n−3 diamonds chained by doubled connector edges (the thick,
//! contractible edges); under cyclic joining each tile contributes 4(n−2)
//! vertices of degree 3 and one of degree 4, and carries 2(n−3) thick edges.
//! The *band* tile of parameter w is a dense wall-to-wall weave; each tile
//! contributes 4 vertices of degree 3, 2 of degree 4 and 4w+3 of degree 6,
//! and carries 7 + 4(2w+1) labeled traversing paths.
//!
//! The internal wiring of both tiles is a census-faithful realization: wall
//! sizes, per-tile census contributions, thick-edge counts, planarity of the
//! single tile and traversing-path counts are all pinned by tests, while the
//! concrete edge routing inside the tile is this crate's own. Crossing-number
//! claims are never attached to tile internals; the exact oracle works on the
//! adapting graphs instead.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::graph::{EdgeLabel, GraphError, Multigraph, VertexId};
use crate::pairs::{labels, PathLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("staircase tiles need n >= 3, got {0}")]
    StaircaseRange(u64),
    #[error("cannot join an empty tile sequence")]
    EmptySequence,
    #[error("wall length mismatch at junction {junction}: {right} vs {left}")]
    WallMismatch {
        junction: usize,
        right: usize,
        left: usize,
    },
    #[error("joining would identify the endpoints of an edge (loop)")]
    LoopCreated,
    #[error("edge ({0}, {1}) is not a thick edge")]
    NotThick(VertexId, VertexId),
    #[error("thick edge ({0}, {1}) selected twice")]
    DuplicateSelection(VertexId, VertexId),
    #[error("selected thick edges share the endpoint {0}")]
    SharedEndpoint(VertexId),
    #[error("thick edge ({0}, {1}) has an endpoint of degree != 3")]
    EndpointDegree(VertexId, VertexId),
    #[error("contracting ({0}, {1}) would create a parallel edge")]
    ParallelCreated(VertexId, VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Tile shapes. Inverted and twisted variants are wall reorderings of the
/// base tiles; the graphs are identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TileKind {
    Staircase(u64),
    StaircaseInverted(u64),
    StaircaseTwisted(u64),
    HTile(u64),
    HTileTwisted(u64),
}

/// A graph with two ordered, disjoint, duplicate-free walls, plus thick-edge
/// labels and (for band tiles) named traversing paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    graph: Multigraph,
    left_wall: Vec<VertexId>,
    right_wall: Vec<VertexId>,
    path_labels: Option<BTreeMap<PathLabel, Vec<(VertexId, VertexId)>>>,
}

impl Tile {
    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn left_wall(&self) -> &[VertexId] {
        &self.left_wall
    }

    pub fn right_wall(&self) -> &[VertexId] {
        &self.right_wall
    }

    /// Thick edges of the tile, in canonical order.
    pub fn thick_edges(&self) -> Vec<(VertexId, VertexId)> {
        self.graph.thick_edges()
    }

    /// Named traversing paths (band tiles only), each an edge sequence from
    /// the left wall to the right wall.
    pub fn path_labels(&self) -> Option<&BTreeMap<PathLabel, Vec<(VertexId, VertexId)>>> {
        self.path_labels.as_ref()
    }
}

/// Builds a tile of the given kind.
pub fn make_tile(kind: TileKind) -> Result<Tile, TileError> {
    match kind {
        TileKind::Staircase(n) => staircase(n),
        TileKind::StaircaseInverted(n) => Ok(invert(&staircase(n)?)),
        TileKind::StaircaseTwisted(n) => Ok(twist(&staircase(n)?)),
        TileKind::HTile(w) => Ok(band_tile(w)),
        TileKind::HTileTwisted(w) => Ok(twist(&band_tile(w))),
    }
}

/// Reflects the tile vertically: both wall orders reverse, sides stay put.
/// The graph is unchanged. Involution.
pub fn invert(t: &Tile) -> Tile {
    let mut out = t.clone();
    out.left_wall.reverse();
    out.right_wall.reverse();
    out
}

/// Reverses the order of exactly one wall (the right one). The graph is
/// unchanged. Involution.
pub fn twist(t: &Tile) -> Tile {
    let mut out = t.clone();
    out.right_wall.reverse();
    out
}

/// The staircase tile: a left wall of two vertices with tile-degrees (1, 2),
/// a right wall with tile-degrees (2, 2), a three-vertex hook, and a chain of
/// n−3 diamonds whose connector edges are the thick edges.
fn staircase(n: u64) -> Result<Tile, TileError> {
    if n < 3 {
        return Err(TileError::StaircaseRange(n));
    }
    // Local ids: walls 0..4, hook 4..7, then 4 ids per diamond.
    let (l_top, l_bot, r_top, r_bot) = (0u64, 1u64, 2u64, 3u64);
    let (hook_a, hook_b, hook_c) = (4u64, 5u64, 6u64);
    let diamond = |i: u64| {
        let base = 7 + 4 * i;
        (base, base + 1, base + 2, base + 3)
    };

    let mut g = Multigraph::new();
    g.add_edge(hook_a, hook_b, None).unwrap();
    g.add_edge(hook_b, hook_c, None).unwrap();
    g.add_edge(l_top, hook_a, None).unwrap();
    g.add_edge(l_bot, hook_a, None).unwrap();
    g.add_edge(l_bot, hook_c, None).unwrap();
    if n == 3 {
        g.add_edge(hook_b, r_top, None).unwrap();
        g.add_edge(hook_c, r_bot, None).unwrap();
    } else {
        let steps = n - 3;
        let (a0, _, c0, _) = diamond(0);
        g.add_edge(hook_c, a0, Some(EdgeLabel::Thick)).unwrap();
        g.add_edge(hook_b, c0, Some(EdgeLabel::Thick)).unwrap();
        for i in 0..steps {
            let (a, b, c, d) = diamond(i);
            g.add_edge(a, b, None).unwrap();
            g.add_edge(b, c, None).unwrap();
            g.add_edge(c, d, None).unwrap();
            g.add_edge(d, a, None).unwrap();
            if i + 1 < steps {
                let (a2, _, c2, _) = diamond(i + 1);
                g.add_edge(b, a2, Some(EdgeLabel::Thick)).unwrap();
                g.add_edge(d, c2, Some(EdgeLabel::Thick)).unwrap();
            } else {
                g.add_edge(b, r_top, None).unwrap();
                g.add_edge(d, r_bot, None).unwrap();
            }
        }
    }
    g.add_edge(r_top, r_bot, None).unwrap();

    Ok(Tile {
        graph: g,
        left_wall: vec![l_top, l_bot],
        right_wall: vec![r_top, r_bot],
        path_labels: None,
    })
}

/// The band tile: walls of 4w+9 vertices, connected by rungs along the left
/// wall, rails through the middle band, and one diagonal per gap (both
/// diagonals in the two outermost gaps). Wall degree splits are palindromic,
/// so any mix of twisted and untwisted junctions yields the same census.
fn band_tile(w: u64) -> Tile {
    let p_count = 4 * w + 9;
    let x = |p: u64| p - 1; // left wall, positions 1-based
    let y = |p: u64| p_count + p - 1; // right wall

    let center = 2 * w + 5;
    let has_diag = |p: u64| p == 1 || p == p_count - 1 || (3..center).contains(&p);
    let has_rdiag = |p: u64| p == 1 || p == p_count - 1 || (center..=4 * w + 6).contains(&p);
    let has_rail = |p: u64| (4..=4 * w + 6).contains(&p);

    let mut g = Multigraph::new();
    for p in 1..p_count {
        g.add_edge(x(p), x(p + 1), None).unwrap();
    }
    // Gather the traversing paths in positional order while wiring.
    let mut traversing: Vec<(u64, u64)> = Vec::new();
    for p in 1..=p_count {
        if has_rail(p) {
            g.add_edge(x(p), y(p), None).unwrap();
            traversing.push((x(p), y(p)));
        }
        if p < p_count && has_diag(p) {
            g.add_edge(x(p), y(p + 1), None).unwrap();
            traversing.push((x(p), y(p + 1)));
        }
        if p < p_count && has_rdiag(p) {
            g.add_edge(x(p + 1), y(p), None).unwrap();
            traversing.push((x(p + 1), y(p)));
        }
    }
    // Right-wall vertices with no in-tile edges still belong to the tile.
    for p in 1..=p_count {
        g.add_vertex(y(p));
    }

    let names = labels(w as u32);
    debug_assert_eq!(names.len(), traversing.len());
    let path_labels = names
        .into_iter()
        .zip(traversing)
        .map(|(name, e)| (name, vec![e]))
        .collect();

    Tile {
        graph: g,
        left_wall: (1..=p_count).map(x).collect(),
        right_wall: (1..=p_count).map(y).collect(),
        path_labels: Some(path_labels),
    }
}

/// Joins a tile sequence cyclically: tile i's right wall is identified with
/// tile i+1's left wall position-wise, and the last right wall with the first
/// left wall. Thick-edge labels are preserved. Identifications that would
/// turn an edge into a loop are rejected.
///
/// Junction vertex ids are assigned junction-major, then tile internals in
/// tile order; the result is a pure function of the input sequence.
pub fn join_cyclic(tiles: &[Tile]) -> Result<Multigraph, TileError> {
    let m = tiles.len();
    if m == 0 {
        return Err(TileError::EmptySequence);
    }
    // Junction j identifies right(j) with left((j + 1) % m).
    let mut widths = Vec::with_capacity(m);
    for (j, t) in tiles.iter().enumerate() {
        let left_next = tiles[(j + 1) % m].left_wall.len();
        if t.right_wall.len() != left_next {
            return Err(TileError::WallMismatch {
                junction: j,
                right: t.right_wall.len(),
                left: left_next,
            });
        }
        widths.push(t.right_wall.len() as u64);
    }
    let mut junction_offset = Vec::with_capacity(m);
    let mut acc = 0u64;
    for wd in &widths {
        junction_offset.push(acc);
        acc += wd;
    }
    let mut internal_offset = acc;

    let mut out = Multigraph::new();
    for (i, t) in tiles.iter().enumerate() {
        let prev_junction = (i + m - 1) % m;
        let mut map: HashMap<VertexId, VertexId> = HashMap::new();
        for (p, &v) in t.left_wall.iter().enumerate() {
            map.insert(v, junction_offset[prev_junction] + p as u64);
        }
        for (p, &v) in t.right_wall.iter().enumerate() {
            map.insert(v, junction_offset[i] + p as u64);
        }
        let walls: BTreeSet<VertexId> = t
            .left_wall
            .iter()
            .chain(t.right_wall.iter())
            .copied()
            .collect();
        for v in t.graph.vertices() {
            if !walls.contains(&v) {
                map.insert(v, internal_offset);
                internal_offset += 1;
            }
        }
        for v in map.values() {
            out.add_vertex(*v);
        }
        for e in t.graph.edges() {
            let (u, v) = (map[&e.u], map[&e.v]);
            if u == v {
                return Err(TileError::LoopCreated);
            }
            out.add_edge(u, v, e.label).expect("loop checked above");
        }
    }
    Ok(out)
}

/// Contracts a selection of thick edges. Every selected edge must carry the
/// thick label, join two degree-3 vertices, share no endpoint with another
/// selected edge, and create no parallel edge when contracted. Contractions
/// are applied in ascending canonical edge order; each merges two degree-3
/// vertices into one fresh degree-4 vertex.
pub fn contract_thick(
    g: &Multigraph,
    selection: &[(VertexId, VertexId)],
) -> Result<Multigraph, TileError> {
    let thick: BTreeSet<(VertexId, VertexId)> = g.thick_edges().into_iter().collect();
    let mut sel: Vec<(VertexId, VertexId)> = selection
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    sel.sort_unstable();
    for pair in sel.windows(2) {
        if pair[0] == pair[1] {
            return Err(TileError::DuplicateSelection(pair[0].0, pair[0].1));
        }
    }

    let degrees = g.degrees();
    let mut selected_endpoints: HashSet<VertexId> = HashSet::new();
    for &(a, b) in &sel {
        if !thick.contains(&(a, b)) {
            return Err(TileError::NotThick(a, b));
        }
        if degrees.get(&a) != Some(&3) || degrees.get(&b) != Some(&3) {
            return Err(TileError::EndpointDegree(a, b));
        }
        for v in [a, b] {
            if !selected_endpoints.insert(v) {
                return Err(TileError::SharedEndpoint(v));
            }
        }
    }

    // Fresh merged ids in ascending edge order.
    let mut next_id = g.max_vertex_id().unwrap_or(0) + 1;
    let mut remap: HashMap<VertexId, VertexId> = HashMap::new();
    let mut merged_pairs = Vec::with_capacity(sel.len());
    for &(a, b) in &sel {
        remap.insert(a, next_id);
        remap.insert(b, next_id);
        merged_pairs.push((next_id, (a, b)));
        next_id += 1;
    }

    let mut out = Multigraph::new();
    for v in g.vertices() {
        if !remap.contains_key(&v) {
            out.add_vertex(v);
        }
    }
    for (mid, pair) in &merged_pairs {
        out.add_vertex(*mid);
        out.insert_provenance(*mid, *pair);
    }

    let mut consumed: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut incident_seen: HashSet<(VertexId, VertexId)> = HashSet::new();
    for e in g.edges() {
        let key = (e.u, e.v);
        if sel.binary_search(&key).is_ok() && consumed.insert(key) {
            continue; // the contracted instance disappears
        }
        let nu = *remap.get(&e.u).unwrap_or(&e.u);
        let nv = *remap.get(&e.v).unwrap_or(&e.v);
        if nu == nv {
            return Err(TileError::LoopCreated);
        }
        let nkey = (nu.min(nv), nu.max(nv));
        let touches_merged = remap.contains_key(&e.u) || remap.contains_key(&e.v);
        if touches_merged && !incident_seen.insert(nkey) {
            return Err(TileError::ParallelCreated(e.u, e.v));
        }
        out.add_edge(nu, nv, e.label).expect("loop checked above");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::DegreeCensus3456;
    use crate::graph::{degree_census, is_planar};

    fn staircase_sequence(n: u64, m: u64, twist_pos: u64) -> Vec<Tile> {
        (0..m)
            .map(|i| {
                let kind = if i == twist_pos {
                    TileKind::StaircaseTwisted(n)
                } else if i % 2 == 1 {
                    TileKind::StaircaseInverted(n)
                } else {
                    TileKind::Staircase(n)
                };
                make_tile(kind).unwrap()
            })
            .collect()
    }

    #[test]
    fn staircase_tile_shape() {
        for n in 3..=8u64 {
            let t = make_tile(TileKind::Staircase(n)).unwrap();
            assert_eq!(t.graph().vertex_count() as u64, 4 * n - 5, "n={n}");
            assert_eq!(t.graph().edge_count() as u64, 6 * n - 10, "n={n}");
            assert_eq!(t.thick_edges().len() as u64, 2 * (n - 3), "n={n}");
            assert!(is_planar(t.graph()), "staircase tile n={n} must be planar");
            assert!(t.graph().is_simple());
            // Walls: duplicate-free, disjoint, drawn from the vertex set.
            let l: BTreeSet<_> = t.left_wall().iter().collect();
            let r: BTreeSet<_> = t.right_wall().iter().collect();
            assert_eq!(l.len(), t.left_wall().len());
            assert_eq!(r.len(), t.right_wall().len());
            assert!(l.is_disjoint(&r));
        }
    }

    #[test]
    fn staircase_range_error() {
        assert!(matches!(
            make_tile(TileKind::Staircase(2)),
            Err(TileError::StaircaseRange(2))
        ));
    }

    #[test]
    fn band_tile_shape() {
        for w in 0..=4u64 {
            let t = make_tile(TileKind::HTile(w)).unwrap();
            let p = 4 * w + 9;
            assert_eq!(t.left_wall().len() as u64, p);
            assert_eq!(t.right_wall().len() as u64, p);
            assert_eq!(t.graph().edge_count() as u64, 12 * w + 19, "w={w}");
            assert!(is_planar(t.graph()), "band tile w={w} must be planar");
            assert!(t.graph().is_simple());
            let labels = t.path_labels().expect("band tiles carry path labels");
            assert_eq!(labels.len() as u64, 7 + 4 * (2 * w + 1), "w={w}");
            // Each labeled path traverses from the left wall to the right.
            let l: BTreeSet<_> = t.left_wall().iter().copied().collect();
            let r: BTreeSet<_> = t.right_wall().iter().copied().collect();
            for (name, path) in labels {
                assert!(!path.is_empty(), "{name}");
                let (start, end) = (path[0].0, path.last().unwrap().1);
                assert!(l.contains(&start), "{name} starts on the left wall");
                assert!(r.contains(&end), "{name} ends on the right wall");
                for pair in path.windows(2) {
                    assert_eq!(pair[0].1, pair[1].0, "{name} is connected");
                }
            }
        }
    }

    #[test]
    fn invert_and_twist_are_involutions() {
        let t = make_tile(TileKind::Staircase(5)).unwrap();
        assert_eq!(invert(&invert(&t)), t);
        assert_eq!(twist(&twist(&t)), t);
        assert_eq!(twist(&t).graph(), t.graph());
        assert_eq!(invert(&t).graph(), t.graph());
        assert_ne!(twist(&t).right_wall(), t.right_wall());
        assert_eq!(twist(&t).left_wall(), t.left_wall());
    }

    #[test]
    fn staircase_join_census() {
        for n in 3..=6u64 {
            for m in [2u64, 5, 9] {
                let tiles = staircase_sequence(n, m, m / 2);
                let g = join_cyclic(&tiles).unwrap();
                assert_eq!(
                    degree_census(&g).unwrap(),
                    DegreeCensus3456::of(4 * m * (n - 2), m, 0, 0),
                    "n={n} m={m}"
                );
                assert!(g.is_simple(), "n={n} m={m}");
                assert_eq!(g.thick_edges().len() as u64, 2 * m * (n - 3));
            }
        }
    }

    #[test]
    fn staircase_join_census_is_pattern_independent() {
        let n = 4;
        let m = 7;
        let reference = degree_census(&join_cyclic(&staircase_sequence(n, m, 3)).unwrap()).unwrap();
        for twist_pos in 0..m {
            let g = join_cyclic(&staircase_sequence(n, m, twist_pos)).unwrap();
            assert_eq!(degree_census(&g).unwrap(), reference, "twist at {twist_pos}");
        }
        // All-normal and all-inverted sequences give the same census too.
        let all_normal: Vec<Tile> = (0..m)
            .map(|_| make_tile(TileKind::Staircase(n)).unwrap())
            .collect();
        assert_eq!(
            degree_census(&join_cyclic(&all_normal).unwrap()).unwrap(),
            reference
        );
    }

    #[test]
    fn band_join_census() {
        for w in 0..=2u64 {
            for s in [3u64, 5, 10] {
                let mut tiles: Vec<Tile> = (0..s.saturating_sub(2))
                    .map(|_| make_tile(TileKind::HTile(w)).unwrap())
                    .collect();
                tiles.push(make_tile(TileKind::HTileTwisted(w)).unwrap());
                tiles.push(make_tile(TileKind::HTileTwisted(w)).unwrap());
                let g = join_cyclic(&tiles).unwrap();
                assert_eq!(
                    degree_census(&g).unwrap(),
                    DegreeCensus3456::of(4 * s, 2 * s, 0, (4 * w + 3) * s),
                    "w={w} s={s}"
                );
                assert!(g.is_simple(), "w={w} s={s}");
            }
        }
    }

    #[test]
    fn band_join_census_invariant_under_twisting_any_tile() {
        let (w, s) = (1u64, 6u64);
        let reference = {
            let tiles: Vec<Tile> = (0..s)
                .map(|_| make_tile(TileKind::HTile(w)).unwrap())
                .collect();
            degree_census(&join_cyclic(&tiles).unwrap()).unwrap()
        };
        for t_pos in 0..s {
            let tiles: Vec<Tile> = (0..s)
                .map(|i| {
                    if i == t_pos {
                        make_tile(TileKind::HTileTwisted(w)).unwrap()
                    } else {
                        make_tile(TileKind::HTile(w)).unwrap()
                    }
                })
                .collect();
            let g = join_cyclic(&tiles).unwrap();
            assert_eq!(degree_census(&g).unwrap(), reference, "twist at {t_pos}");
        }
    }

    #[test]
    fn join_single_staircase_tile_is_permitted() {
        // Degenerate cyclic join of one tile: walls are disjoint, so the
        // identification is allowed; the result is a multigraph.
        let t = make_tile(TileKind::Staircase(3)).unwrap();
        let g = join_cyclic(&[t]).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(degree_census(&g).unwrap(), DegreeCensus3456::of(4, 1, 0, 0));
        assert!(!g.is_simple());
    }

    #[test]
    fn join_single_band_tile_rejects_loops() {
        let t = make_tile(TileKind::HTile(0)).unwrap();
        assert!(matches!(join_cyclic(&[t]), Err(TileError::LoopCreated)));
    }

    #[test]
    fn join_rejects_wall_mismatch() {
        let s = make_tile(TileKind::Staircase(3)).unwrap();
        let h = make_tile(TileKind::HTile(0)).unwrap();
        assert!(matches!(
            join_cyclic(&[s, h]),
            Err(TileError::WallMismatch { .. })
        ));
    }

    #[test]
    fn thick_endpoints_have_degree_3_after_joining() {
        let g = join_cyclic(&staircase_sequence(5, 5, 2)).unwrap();
        let degrees = g.degrees();
        for (a, b) in g.thick_edges() {
            assert_eq!(degrees[&a], 3);
            assert_eq!(degrees[&b], 3);
        }
    }

    #[test]
    fn contract_thick_census_transform() {
        let n = 5u64;
        let m = 5u64;
        let g = join_cyclic(&staircase_sequence(n, m, 2)).unwrap();
        let thick = g.thick_edges();
        assert_eq!(thick.len() as u64, 2 * m * (n - 3));
        for c in [0usize, 3, thick.len()] {
            let contracted = contract_thick(&g, &thick[..c]).unwrap();
            assert_eq!(
                degree_census(&contracted).unwrap(),
                DegreeCensus3456::of(4 * m * (n - 2) - 2 * c as u64, m + c as u64, 0, 0),
                "c={c}"
            );
            assert!(contracted.is_simple(), "c={c}");
        }
    }

    #[test]
    fn contract_thick_rejects_non_thick_edges() {
        let g = join_cyclic(&staircase_sequence(4, 5, 2)).unwrap();
        let plain = g
            .edges()
            .iter()
            .find(|e| e.label.is_none())
            .map(|e| (e.u, e.v))
            .unwrap();
        assert!(matches!(
            contract_thick(&g, &[plain]),
            Err(TileError::NotThick(_, _))
        ));
    }

    #[test]
    fn contract_thick_rejects_duplicates() {
        let g = join_cyclic(&staircase_sequence(4, 5, 2)).unwrap();
        let e = g.thick_edges()[0];
        assert!(matches!(
            contract_thick(&g, &[e, e]),
            Err(TileError::DuplicateSelection(_, _))
        ));
    }

    #[test]
    fn contracted_vertices_carry_provenance() {
        let g = join_cyclic(&staircase_sequence(4, 5, 2)).unwrap();
        let e = g.thick_edges()[0];
        let c = contract_thick(&g, &[e]).unwrap();
        let (&mid, &pair) = c.merged_provenance().iter().next().unwrap();
        assert_eq!(pair, e);
        assert_eq!(c.degree(mid), 4);
    }
}
