//! Exact crossing-number computation for small simple graphs, with
//! certificates, plus edge-criticality checking.
//!
//! The search runs iterative deepening over the number of crossings k. A
//! candidate crossing set is a k-subset of non-adjacent edge pairs (in some
//! optimal drawing every pair of edges crosses at most once and adjacent
//! edges never cross, so restricting to such sets is sound). Each candidate
//! is planarized — every chosen crossing becomes a degree-4 dummy vertex, and
//! an edge crossed several times is subdivided in every possible order of its
//! crossing points — and tested for planarity. The first k admitting a planar
//! planarization is the crossing number, and the search certifies that every
//! smaller level was exhausted (searched, or excluded by the Euler lower
//! bound).
//!
//! With the `parallel` feature the subsets of one level are scanned by rayon
//! workers; the returned value is identical to the sequential search (the
//! witness may differ, the value may not).

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{delete_edge, simple_graph_is_planar, Multigraph, VertexId};

/// Default time limit per oracle call.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the crossing oracle requires a simple graph")]
    NotSimple,
    #[error("witness refers to the edge ({0}, {1}) which is not in the graph")]
    UnknownEdge(VertexId, VertexId),
}

/// One crossing of the witness: an unordered pair of non-adjacent edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingPair {
    pub e1: (VertexId, VertexId),
    pub e2: (VertexId, VertexId),
}

/// Proof object for a computed crossing number.
#[derive(Debug, Clone)]
pub struct CrossingCertificate {
    /// The crossing number.
    pub value: u32,
    /// Crossing pairs realizing a drawing with `value` crossings.
    pub witness: Vec<CrossingPair>,
    /// For every edge crossed more than once: the order of its crossings
    /// along the edge, as indices into `witness`.
    pub edge_orders: Vec<((VertexId, VertexId), Vec<usize>)>,
    /// Levels below `search_floor` were excluded by the Euler lower bound;
    /// levels from there up to `value` − 1 were searched exhaustively.
    pub search_floor: u32,
}

impl CrossingCertificate {
    /// Key/value serialization: k, witness pairs as edge-id quadruples, and
    /// the exhausted level.
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.value,
            "witness": self.witness.iter()
                .map(|p| json!([p.e1.0, p.e1.1, p.e2.0, p.e2.1]))
                .collect::<Vec<_>>(),
            "edge_orders": self.edge_orders.iter()
                .map(|(e, ord)| json!({"edge": [e.0, e.1], "order": ord}))
                .collect::<Vec<_>>(),
            "exhausted_level": self.value as i64 - 1,
            "search_floor": self.search_floor,
        })
    }
}

/// Result of a bounded search.
#[derive(Debug, Clone)]
pub enum OracleOutcome {
    /// The crossing number, with certificate.
    Exact(CrossingCertificate),
    /// Search stopped (budget or `max_k`); `exhausted` is the highest level
    /// fully ruled out, so the crossing number is strictly larger.
    Exceeded { exhausted: Option<u32> },
}

impl OracleOutcome {
    pub fn value(&self) -> Option<u32> {
        match self {
            OracleOutcome::Exact(c) => Some(c.value),
            OracleOutcome::Exceeded { .. } => None,
        }
    }
}

/// Euler-formula lower bound on the crossing number: max(0, |E| − 3|V| + 6)
/// for simple graphs with at least 3 vertices, 0 otherwise. Levels below it
/// need not be searched.
pub fn euler_lower_bound(g: &Multigraph) -> u32 {
    let v = g.vertex_count() as i64;
    let e = g.edge_count() as i64;
    if v < 3 {
        return 0;
    }
    (e - 3 * v + 6).max(0) as u32
}

/// Sharper bound for bipartite simple graphs (girth at least 4):
/// max(0, |E| − 2|V| + 4). Returns None when the graph is not bipartite.
/// Documented but not used to skip search levels; exhaustion claims rest on
/// the plain Euler bound and explicit search only.
pub fn bipartite_lower_bound(g: &Multigraph) -> Option<u32> {
    let (_, adj) = g.compact_adjacency();
    let n = adj.len();
    let mut color = vec![-1i8; n];
    for start in 0..n {
        if color[start] != -1 {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if color[v] == -1 {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
    }
    let v = g.vertex_count() as i64;
    let e = g.edge_count() as i64;
    if v < 3 {
        return Some(0);
    }
    Some((e - 2 * v + 4).max(0) as u32)
}

/// Exact crossing number with iterative deepening up to `max_k`, within the
/// time budget. Parallel when the `parallel` feature is enabled.
pub fn crossing_number_exact(
    g: &Multigraph,
    max_k: u32,
    budget: Duration,
) -> Result<OracleOutcome, OracleError> {
    search(g, max_k, budget, cfg!(feature = "parallel"))
}

/// Single-threaded reference search; same values as
/// [`crossing_number_exact`] in all cases.
pub fn crossing_number_exact_seq(
    g: &Multigraph,
    max_k: u32,
    budget: Duration,
) -> Result<OracleOutcome, OracleError> {
    search(g, max_k, budget, false)
}

struct LevelWitness {
    /// Chosen crossing pairs as candidate-pair indices resolved to edge
    /// index pairs.
    pairs: Vec<(usize, usize)>,
    /// Edge index -> order of its crossings (indices into `pairs`).
    orders: Vec<(usize, Vec<usize>)>,
}

fn search(
    g: &Multigraph,
    max_k: u32,
    budget: Duration,
    parallel: bool,
) -> Result<OracleOutcome, OracleError> {
    if !g.is_simple() {
        return Err(OracleError::NotSimple);
    }
    let deadline = Instant::now() + budget;
    let (ids, _) = g.compact_adjacency();
    let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = ids.len();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (index[&e.u], index[&e.v]))
        .collect();

    // Candidate crossings: unordered pairs of non-adjacent edges.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a != c && a != d && b != c && b != d {
                pairs.push((i, j));
            }
        }
    }

    let floor = euler_lower_bound(g);
    let mut exhausted: Option<u32> = if floor > 0 { Some(floor - 1) } else { None };

    for k in floor..=max_k {
        if k == 0 {
            if simple_graph_is_planar(n, &edges) {
                return Ok(OracleOutcome::Exact(CrossingCertificate {
                    value: 0,
                    witness: Vec::new(),
                    edge_orders: Vec::new(),
                    search_floor: 0,
                }));
            }
            exhausted = Some(0);
            continue;
        }
        match level_search(n, &edges, &pairs, k as usize, deadline, parallel) {
            LevelResult::Found(witness) => {
                let to_edge = |idx: usize| (ids[edges[idx].0].min(ids[edges[idx].1]), ids[edges[idx].0].max(ids[edges[idx].1]));
                let witness_pairs: Vec<CrossingPair> = witness
                    .pairs
                    .iter()
                    .map(|&(i, j)| CrossingPair {
                        e1: to_edge(i),
                        e2: to_edge(j),
                    })
                    .collect();
                let edge_orders = witness
                    .orders
                    .iter()
                    .map(|(e, ord)| (to_edge(*e), ord.clone()))
                    .collect();
                return Ok(OracleOutcome::Exact(CrossingCertificate {
                    value: k,
                    witness: witness_pairs,
                    edge_orders,
                    search_floor: floor,
                }));
            }
            LevelResult::Exhausted => {
                exhausted = Some(k);
            }
            LevelResult::TimedOut => {
                return Ok(OracleOutcome::Exceeded { exhausted });
            }
        }
    }
    Ok(OracleOutcome::Exceeded { exhausted })
}

enum LevelResult {
    Found(LevelWitness),
    Exhausted,
    TimedOut,
}

fn level_search(
    n: usize,
    edges: &[(usize, usize)],
    pairs: &[(usize, usize)],
    k: usize,
    deadline: Instant,
    parallel: bool,
) -> LevelResult {
    if pairs.len() < k {
        return LevelResult::Exhausted;
    }
    if Instant::now() >= deadline {
        return LevelResult::TimedOut;
    }
    let timed_out = AtomicBool::new(false);
    let run_prefix = |first: usize| -> Option<LevelWitness> {
        scan_with_prefix(n, edges, pairs, k, first, deadline, &timed_out)
    };

    let found = if parallel {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..=pairs.len() - k)
                .into_par_iter()
                .find_map_any(run_prefix)
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..=pairs.len() - k).find_map(run_prefix)
        }
    } else {
        (0..=pairs.len() - k).find_map(run_prefix)
    };

    match found {
        Some(w) => LevelResult::Found(w),
        None if timed_out.load(Ordering::Relaxed) => LevelResult::TimedOut,
        None => LevelResult::Exhausted,
    }
}

/// Scans all k-subsets whose first element is `first`, lexicographically.
fn scan_with_prefix(
    n: usize,
    edges: &[(usize, usize)],
    pairs: &[(usize, usize)],
    k: usize,
    first: usize,
    deadline: Instant,
    timed_out: &AtomicBool,
) -> Option<LevelWitness> {
    let mut combo: Vec<usize> = (0..k).map(|i| first + i).collect();
    let mut chosen = Vec::with_capacity(k);
    let mut counter = 0u32;
    loop {
        if timed_out.load(Ordering::Relaxed) {
            return None;
        }
        counter += 1;
        if counter % 1024 == 0 && Instant::now() >= deadline {
            timed_out.store(true, Ordering::Relaxed);
            return None;
        }

        chosen.clear();
        chosen.extend(combo.iter().map(|&i| pairs[i]));
        if let Some(orders) = planarizes(n, edges, &chosen) {
            return Some(LevelWitness {
                pairs: chosen.clone(),
                orders,
            });
        }

        // Next combination with combo[0] fixed.
        let mut pos = k;
        loop {
            if pos == 1 {
                return None; // prefix finished
            }
            pos -= 1;
            if combo[pos] < pairs.len() - (k - pos) {
                combo[pos] += 1;
                for i in (pos + 1)..k {
                    combo[i] = combo[i - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Tries every crossing-point ordering for the chosen pair set; returns the
/// per-edge orders of the first planar planarization.
fn planarizes(
    n: usize,
    edges: &[(usize, usize)],
    chosen: &[(usize, usize)],
) -> Option<Vec<(usize, Vec<usize>)>> {
    // Crossings per edge (pair indices in `chosen`).
    let mut per_edge: HashMap<usize, Vec<usize>> = HashMap::new();
    for (slot, &(i, j)) in chosen.iter().enumerate() {
        per_edge.entry(i).or_default().push(slot);
        per_edge.entry(j).or_default().push(slot);
    }
    let multi: Vec<(usize, &Vec<usize>)> = per_edge
        .iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|(&e, v)| (e, v))
        .collect();

    // Odometer over the per-edge permutations of crossing orders.
    let perms: Vec<Vec<Vec<usize>>> = multi
        .iter()
        .map(|(_, slots)| permutations(slots))
        .collect();
    let mut pick = vec![0usize; multi.len()];
    loop {
        let mut order: HashMap<usize, &[usize]> = HashMap::new();
        for (mi, (e, slots)) in multi.iter().enumerate() {
            let _ = slots;
            order.insert(*e, &perms[mi][pick[mi]]);
        }
        if planar_with_orders(n, edges, chosen, &per_edge, &order) {
            let orders = multi
                .iter()
                .enumerate()
                .map(|(mi, (e, _))| (*e, perms[mi][pick[mi]].clone()))
                .collect();
            return Some(orders);
        }
        // Advance the odometer.
        let mut i = 0;
        loop {
            if i == pick.len() {
                return None;
            }
            pick[i] += 1;
            if pick[i] < perms[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn planar_with_orders(
    n: usize,
    edges: &[(usize, usize)],
    chosen: &[(usize, usize)],
    per_edge: &HashMap<usize, Vec<usize>>,
    order: &HashMap<usize, &[usize]>,
) -> bool {
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(edges.len() + 2 * chosen.len());
    for (idx, &(u, v)) in edges.iter().enumerate() {
        match per_edge.get(&idx) {
            None => out.push((u, v)),
            Some(slots) => {
                let seq: &[usize] = order.get(&idx).copied().unwrap_or(&slots[..]);
                let mut prev = u;
                for &slot in seq {
                    let dummy = n + slot;
                    out.push((prev, dummy));
                    prev = dummy;
                }
                out.push((prev, v));
            }
        }
    }
    simple_graph_is_planar(n + chosen.len(), &out)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            let mut perm = vec![x];
            perm.append(&mut tail);
            out.push(perm);
        }
    }
    out
}

/// Rebuilds the planarized graph of a certificate witness on the original
/// vertex ids: every crossing pair becomes a fresh degree-4 dummy vertex.
/// Feeding the result to the planarity test checks certificate soundness.
pub fn planarize_witness(
    g: &Multigraph,
    witness: &[CrossingPair],
    edge_orders: &[((VertexId, VertexId), Vec<usize>)],
) -> Result<Multigraph, OracleError> {
    let norm = |(a, b): (VertexId, VertexId)| (a.min(b), a.max(b));
    for pair in witness {
        for e in [pair.e1, pair.e2] {
            if !g.has_edge(e.0, e.1) {
                return Err(OracleError::UnknownEdge(e.0, e.1));
            }
        }
    }
    let explicit: HashMap<(VertexId, VertexId), &Vec<usize>> = edge_orders
        .iter()
        .map(|(e, ord)| (norm(*e), ord))
        .collect();
    let mut per_edge: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    for (slot, pair) in witness.iter().enumerate() {
        per_edge.entry(norm(pair.e1)).or_default().push(slot);
        per_edge.entry(norm(pair.e2)).or_default().push(slot);
    }
    let base = g.max_vertex_id().unwrap_or(0) + 1;
    let mut out = Multigraph::new();
    for v in g.vertices() {
        out.add_vertex(v);
    }
    for e in g.edges() {
        let key = (e.u, e.v);
        match per_edge.get(&key) {
            None => out.add_edge(e.u, e.v, None).expect("no loops in input"),
            Some(slots) => {
                let seq: &[usize] = explicit.get(&key).map(|v| &v[..]).unwrap_or(&slots[..]);
                let mut prev = e.u;
                for &slot in seq {
                    let dummy = base + slot as VertexId;
                    out.add_edge(prev, dummy, None).expect("distinct");
                    prev = dummy;
                }
                out.add_edge(prev, e.v, None).expect("distinct");
            }
        }
    }
    Ok(out)
}

/// Per-edge outcome of a criticality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeOutcome {
    /// Deleting the edge lowers the crossing number to the given value or
    /// below.
    Decreased(u32),
    /// Deleting the edge provably keeps the crossing number at k or above.
    NotDecreased,
    /// The budget ran out before this edge was settled.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct CriticalityReport {
    /// Some(true): every deletion decreases. Some(false): a deletion does
    /// not. None: budget exhausted before a verdict.
    pub verdict: Option<bool>,
    pub edges: Vec<((VertexId, VertexId), EdgeOutcome)>,
}

/// Checks edge-deletion criticality: the graph (with crossing number k) is
/// critical iff removing any edge strictly decreases the crossing number.
pub fn is_edge_critical(
    g: &Multigraph,
    k: u32,
    budget: Duration,
) -> Result<CriticalityReport, OracleError> {
    if !g.is_simple() {
        return Err(OracleError::NotSimple);
    }
    let deadline = Instant::now() + budget;
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    edges.sort_unstable();

    if k == 0 {
        // Nothing can drop below zero crossings.
        let verdict = Some(edges.is_empty());
        return Ok(CriticalityReport {
            verdict,
            edges: edges
                .into_iter()
                .map(|e| (e, EdgeOutcome::NotDecreased))
                .collect(),
        });
    }

    let mut outcomes = Vec::with_capacity(edges.len());
    let mut saw_not_decreased = false;
    let mut saw_inconclusive = false;
    for &(u, v) in &edges {
        let remaining = deadline.saturating_duration_since(Instant::now());
        if remaining.is_zero() {
            outcomes.push(((u, v), EdgeOutcome::Inconclusive));
            saw_inconclusive = true;
            continue;
        }
        let reduced = delete_edge(g, u, v).expect("edge from the edge list");
        let outcome = match crossing_number_exact(&reduced, k - 1, remaining)? {
            OracleOutcome::Exact(cert) => EdgeOutcome::Decreased(cert.value),
            OracleOutcome::Exceeded { exhausted } if exhausted == Some(k - 1) => {
                saw_not_decreased = true;
                EdgeOutcome::NotDecreased
            }
            OracleOutcome::Exceeded { .. } => {
                saw_inconclusive = true;
                EdgeOutcome::Inconclusive
            }
        };
        outcomes.push(((u, v), outcome));
    }
    let verdict = if saw_not_decreased {
        Some(false)
    } else if saw_inconclusive {
        None
    } else {
        Some(true)
    };
    Ok(CriticalityReport {
        verdict,
        edges: outcomes,
    })
}
