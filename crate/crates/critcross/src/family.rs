//! The four graph families: censuses, crossing-number formulas, constraint
//! predicates, and explicit builders.
//!
//! * S(n, m, c): a cyclic sequence of m staircase tiles of parameter n with c
//!   thick edges contracted. Census (4m(n−2)−2c, m+c, 0, 0); claimed
//!   crossing number C(n,2) − 1 once m is odd and exceeds 4(C(n,2)−1).
//! * H(w, s): a cyclic sequence of s band tiles. Census
//!   (4s, 2s, 0, (4w+3)s); claimed crossing number 31 + 8w(7+4w) once
//!   s exceeds four times that.
//! * R(p, q): adapting graphs built from K33 by p−1 zips with K33 and q zips
//!   with K35. Census (4p+3q+2, 0, 3q, 0); crossing number p + 4q by
//!   zip-product additivity.
//! * Γ(n, m, c, w, s, p, q): the zip of one graph from each family,
//!   S with H first, then with R.
//!
//! Census and crossing-number functions are exact integer formulas; builders
//! produce explicit graphs whose extracted census must equal the formula
//! value (the primary correctness gate, enforced in tests).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::census::{zip3_census, CensusError, DegreeCensus3456};
use crate::graph::{complete_bipartite, zip_product, GraphError, Multigraph, VertexId};
use crate::tile::{contract_thick, join_cyclic, make_tile, Tile, TileError, TileKind};

/// Default cap on explicit build sizes (vertices).
pub const DEFAULT_SIZE_CAP: u64 = 5_000_000;

/// Parameters of the combined family Γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaParams {
    pub n: BigInt,
    pub m: BigInt,
    pub c: BigInt,
    pub w: BigInt,
    pub s: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

/// One evaluated constraint clause with both sides rendered exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub clause: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl CheckItem {
    pub(crate) fn cmp(clause: &str, pass: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        CheckItem {
            clause: clause.to_string(),
            pass,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Itemized pass/fail record of a constraint set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.pass)
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for item in &self.items {
            writeln!(
                f,
                "{} {} ({} vs {})",
                if item.pass { "PASS" } else { "FAIL" },
                item.clause,
                item.lhs,
                item.rhs
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("constraint violation:\n{0}")]
    Constraint(CheckReport),
    #[error("size cap exceeded: {vertices} vertices > cap {cap}; census {census}")]
    SizeCapExceeded {
        vertices: BigInt,
        cap: u64,
        census: DegreeCensus3456,
    },
    #[error("parameter {0} too large for an explicit build")]
    ParamTooLarge(&'static str),
    #[error(transparent)]
    Tile(#[from] TileError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Census(#[from] CensusError),
}

/// Number of thick (contractible) edges of the uncontracted S(n, m, ·) graph.
pub fn thick_count(n: &BigInt, m: &BigInt) -> BigInt {
    2 * m * (n - 3)
}

/// Claimed crossing number of S(n, m, c): C(n, 2) − 1.
pub fn crn_s(n: &BigInt) -> BigInt {
    n * (n - 1) / 2 - 1
}

/// Claimed crossing number of H(w, s): 31 + 8w(7 + 4w).
pub fn crn_h(w: &BigInt) -> BigInt {
    31 + 8 * w * (7 + 4 * w)
}

/// Crossing number of R(p, q): p + 4q.
pub fn crn_r(p: &BigInt, q: &BigInt) -> BigInt {
    p + 4 * q
}

/// Crossing number of Γ: the zip product is additive.
pub fn crn_gamma(params: &GammaParams) -> BigInt {
    crn_s(&params.n) + crn_h(&params.w) + crn_r(&params.p, &params.q)
}

fn ensure(report: CheckReport) -> Result<(), FamilyError> {
    if report.all_pass() {
        Ok(())
    } else {
        Err(FamilyError::Constraint(report))
    }
}

/// Structural domain of the S census formula: enough for the counts to be a
/// census. The full family constraints are [`constraint_s`].
fn census_domain_s(n: &BigInt, m: &BigInt, c: &BigInt) -> CheckReport {
    let thick = thick_count(n, m);
    CheckReport {
        items: vec![
            CheckItem::cmp("n >= 3", n >= &BigInt::from(3), n, 3),
            CheckItem::cmp("m >= 1", m >= &BigInt::one(), m, 1),
            CheckItem::cmp("c >= 0", !c.is_negative(), c, 0),
            CheckItem::cmp("c <= 2m(n-3)", c <= &thick, c, &thick),
        ],
    }
}

/// Census of S(n, m, c): (4m(n−2) − 2c, m + c, 0, 0).
pub fn census_s(n: &BigInt, m: &BigInt, c: &BigInt) -> Result<DegreeCensus3456, FamilyError> {
    ensure(census_domain_s(n, m, c))?;
    Ok(DegreeCensus3456::new(
        4 * m * (n - 2) - 2 * c,
        m + c,
        BigInt::zero(),
        BigInt::zero(),
    )?)
}

/// Census of H(w, s): (4s, 2s, 0, (4w+3)s).
pub fn census_h(w: &BigInt, s: &BigInt) -> Result<DegreeCensus3456, FamilyError> {
    ensure(CheckReport {
        items: vec![
            CheckItem::cmp("w >= 0", !w.is_negative(), w, 0),
            CheckItem::cmp("s >= 1", s >= &BigInt::one(), s, 1),
        ],
    })?;
    Ok(DegreeCensus3456::new(
        4 * s,
        2 * s,
        BigInt::zero(),
        (4 * w + 3) * s,
    )?)
}

/// Census of R(p, q): (4p + 3q + 2, 0, 3q, 0). R(p, 0) is meaningful on its
/// own, so q >= 0 here; the Γ constraints require q >= 1.
pub fn census_r(p: &BigInt, q: &BigInt) -> Result<DegreeCensus3456, FamilyError> {
    ensure(CheckReport {
        items: vec![
            CheckItem::cmp("p >= 1", p >= &BigInt::one(), p, 1),
            CheckItem::cmp("q >= 0", !q.is_negative(), q, 0),
        ],
    })?;
    Ok(DegreeCensus3456::new(
        4 * p + 3 * q + 2,
        BigInt::zero(),
        3 * q,
        BigInt::zero(),
    )?)
}

/// Census of Γ: the census combinator applied twice, S with H, then with R.
pub fn census_gamma(params: &GammaParams) -> Result<DegreeCensus3456, FamilyError> {
    let s = census_s(&params.n, &params.m, &params.c)?;
    let h = census_h(&params.w, &params.s)?;
    let r = census_r(&params.p, &params.q)?;
    Ok(zip3_census(&zip3_census(&s, &h)?, &r)?)
}

/// Full constraint set of S(n, m, c): n >= 3, m odd, m > 4(C(n,2)−1),
/// 0 <= c <= 2m(n−3).
pub fn constraint_s(n: &BigInt, m: &BigInt, c: &BigInt) -> CheckReport {
    let bound = 4 * crn_s(n);
    let thick = thick_count(n, m);
    CheckReport {
        items: vec![
            CheckItem::cmp("n >= 3", n >= &BigInt::from(3), n, 3),
            CheckItem::cmp(
                "m mod 2 == 1",
                m.is_odd(),
                m.mod_floor(&BigInt::from(2)),
                1,
            ),
            CheckItem::cmp("m > 4(C(n,2)-1)", m > &bound, m, &bound),
            CheckItem::cmp("c >= 0", !c.is_negative(), c, 0),
            CheckItem::cmp("c <= 2m(n-3)", c <= &thick, c, &thick),
        ],
    }
}

/// Full constraint set of H(w, s): w >= 0, s > 4(31 + 8w(7+4w)).
pub fn constraint_h(w: &BigInt, s: &BigInt) -> CheckReport {
    let bound = 4 * crn_h(w);
    CheckReport {
        items: vec![
            CheckItem::cmp("w >= 0", !w.is_negative(), w, 0),
            CheckItem::cmp("s > 4(31+8w(7+4w))", s > &bound, s, &bound),
        ],
    }
}

/// Constraint set of R(p, q) as used in Γ: p >= 1, q >= 1.
pub fn constraint_r(p: &BigInt, q: &BigInt) -> CheckReport {
    CheckReport {
        items: vec![
            CheckItem::cmp("p >= 1", p >= &BigInt::one(), p, 1),
            CheckItem::cmp("q >= 1", q >= &BigInt::one(), q, 1),
        ],
    }
}

/// Union of the S, H and R constraint sets.
pub fn constraint_gamma(params: &GammaParams) -> CheckReport {
    let mut items = constraint_s(&params.n, &params.m, &params.c).items;
    items.extend(constraint_h(&params.w, &params.s).items);
    items.extend(constraint_r(&params.p, &params.q).items);
    CheckReport { items }
}

/// How build_s picks the c thick edges to contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThickSelection {
    /// The first c thick edges in canonical edge order.
    Canonical,
    /// A seeded pseudorandom c-subset; identical seeds give identical graphs.
    Seeded(u64),
}

fn to_u64(x: &BigInt, what: &'static str) -> Result<u64, FamilyError> {
    x.to_u64().ok_or(FamilyError::ParamTooLarge(what))
}

/// The alternating staircase sequence with one twisted tile.
fn staircase_sequence(n: u64, m: u64, twist_index: u64) -> Result<Vec<Tile>, TileError> {
    let base = make_tile(TileKind::Staircase(n))?;
    let inverted = make_tile(TileKind::StaircaseInverted(n))?;
    let twisted = make_tile(TileKind::StaircaseTwisted(n))?;
    Ok((0..m)
        .map(|i| {
            if i == twist_index {
                twisted.clone()
            } else if i % 2 == 1 {
                inverted.clone()
            } else {
                base.clone()
            }
        })
        .collect())
}

/// Builds S(n, m, c) with the twisted tile at the default position ⌈m/2⌉.
pub fn build_s(
    n: &BigInt,
    m: &BigInt,
    c: &BigInt,
    selection: ThickSelection,
) -> Result<Multigraph, FamilyError> {
    let half_up: BigInt = m + 1;
    let twist_index = half_up.div_floor(&BigInt::from(2)) - 1;
    build_s_at(n, m, c, selection, &twist_index)
}

/// Builds S(n, m, c) with the twisted tile at an explicit 0-based position.
/// The census is position-independent.
pub fn build_s_at(
    n: &BigInt,
    m: &BigInt,
    c: &BigInt,
    selection: ThickSelection,
    twist_index: &BigInt,
) -> Result<Multigraph, FamilyError> {
    ensure(constraint_s(n, m, c))?;
    let n64 = to_u64(n, "n")?;
    let m64 = to_u64(m, "m")?;
    let c64 = to_u64(c, "c")?;
    let twist = to_u64(twist_index, "twist position")?;
    let tiles = staircase_sequence(n64, m64, twist.min(m64 - 1))?;
    let joined = join_cyclic(&tiles)?;
    let thick = joined.thick_edges();
    let chosen: Vec<(VertexId, VertexId)> = match selection {
        ThickSelection::Canonical => thick[..c64 as usize].to_vec(),
        ThickSelection::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut all = thick.clone();
            all.shuffle(&mut rng);
            let mut picked = all[..c64 as usize].to_vec();
            picked.sort_unstable();
            picked
        }
    };
    let out = contract_thick(&joined, &chosen)?;
    debug_assert!(out.is_simple());
    Ok(out)
}

/// Builds H(w, s): s − 2 band tiles followed by two twisted ones.
pub fn build_h(w: &BigInt, s: &BigInt) -> Result<Multigraph, FamilyError> {
    ensure(constraint_h(w, s))?;
    let w64 = to_u64(w, "w")?;
    let s64 = to_u64(s, "s")?;
    let base = make_tile(TileKind::HTile(w64))?;
    let twisted = make_tile(TileKind::HTileTwisted(w64))?;
    let tiles: Vec<Tile> = (0..s64)
        .map(|i| {
            if i >= s64 - 2 {
                twisted.clone()
            } else {
                base.clone()
            }
        })
        .collect();
    let out = join_cyclic(&tiles)?;
    debug_assert!(out.is_simple());
    Ok(out)
}

/// Builds R(p, q) from K33 by p − 1 zips with K33, then q zips with K35,
/// each at the lowest-id degree-3 vertices with the canonical matching.
pub fn build_r(p: &BigInt, q: &BigInt) -> Result<Multigraph, FamilyError> {
    ensure(CheckReport {
        items: vec![
            CheckItem::cmp("p >= 1", p >= &BigInt::one(), p, 1),
            CheckItem::cmp("q >= 0", !q.is_negative(), q, 0),
        ],
    })?;
    let p64 = to_u64(p, "p")?;
    let q64 = to_u64(q, "q")?;
    let k33 = complete_bipartite(3, 3)?;
    let k35 = complete_bipartite(3, 5)?;
    let mut g = k33.clone();
    for _ in 1..p64 {
        g = zip_lowest(&g, &k33)?;
    }
    for _ in 0..q64 {
        g = zip_lowest(&g, &k35)?;
    }
    Ok(g)
}

/// Zip at the lowest-id degree-3 vertex of each operand.
fn zip_lowest(g1: &Multigraph, g2: &Multigraph) -> Result<Multigraph, FamilyError> {
    let v1 = lowest_degree3(g1)?;
    let v2 = lowest_degree3(g2)?;
    Ok(zip_product(g1, v1, g2, v2, None)?)
}

fn lowest_degree3(g: &Multigraph) -> Result<VertexId, FamilyError> {
    let degrees = g.degrees();
    degrees
        .iter()
        .find(|&(_, &d)| d == 3)
        .map(|(&v, _)| v)
        .ok_or(FamilyError::Graph(GraphError::MissingVertex(0)))
}

/// Builds Γ explicitly: zips S with H, then with R. The estimated vertex
/// count (from the census) must stay at or below `size_cap`; otherwise the
/// error carries the census-level result.
pub fn build_gamma(
    params: &GammaParams,
    size_cap: u64,
    selection: ThickSelection,
) -> Result<Multigraph, FamilyError> {
    ensure(constraint_gamma(params))?;
    let census = census_gamma(params)?;
    let vertices = census.total();
    if vertices > BigInt::from(size_cap) {
        return Err(FamilyError::SizeCapExceeded {
            vertices,
            cap: size_cap,
            census,
        });
    }
    let s = build_s(&params.n, &params.m, &params.c, selection)?;
    let h = build_h(&params.w, &params.s)?;
    let r = build_r(&params.p, &params.q)?;
    let sh = zip_lowest(&s, &h)?;
    let out = zip_lowest(&sh, &r)?;
    debug_assert!(out.is_simple());
    Ok(out)
}
