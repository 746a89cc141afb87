//! Construction kit and verifier for infinite families of crossing-critical
//! graphs with prescribed rational average degree r in (3, 6) and crossing
//! number k.
//!
//! The crate is organized around the pipeline that takes a target degree
//! r = 3 + a/b and a target crossing number k, derives integer construction
//! parameters, builds the graphs explicitly, and checks every constraint with
//! exact rational arithmetic:
//!
//! * [`census`] — exact arithmetic on partial degree sequences (degrees 3–6)
//!   and the degree-census combinator of the zip product.
//! * [`graph`] — explicit multigraphs: complete bipartite builders, edge
//!   deletion/contraction, zip product, planarity testing, import/export.
//! * [`tile`] — tiles (graphs with two ordered walls), inversion and twist,
//!   cyclic joining, thick-edge contraction.
//! * [`family`] — the four graph families (staircase bands, dense bands,
//!   adapting graphs, and their combination): censuses, crossing-number
//!   formulas, constraint predicates, explicit builders.
//! * [`pairs`] — the twisted-pair counting for dense band tiles: the validity
//!   relation, its enumeration, and the closed-form counts.
//! * [`solver`] — the integer-division parameter derivation, the threshold N,
//!   the bound function f, and interval thresholds.
//! * [`oracle`] — exact crossing-number search for small graphs with
//!   certificates, plus edge-criticality checking.
//!
//! Everything arithmetic is exact: counts are arbitrary-precision integers
//! and averages are arbitrary-precision rationals. No floating point is used
//! anywhere in the pipeline.
//!
//! With the `parallel` feature (default) the crossing-number search and the
//! large family builders fan out over rayon; results are identical to the
//! sequential fallback.

pub mod census;
pub mod family;
pub mod graph;
pub mod oracle;
pub mod pairs;
pub mod solver;
pub mod tile;

pub use census::{average_degree, zip3_census, DegreeCensus3456, Rational};
pub use graph::Multigraph;
