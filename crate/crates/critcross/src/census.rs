//! Exact arithmetic on partial degree sequences.
//!
//! A [`DegreeCensus3456`] records how many vertices of degree 3, 4, 5 and 6 a
//! graph has. The two operations here are the average degree (an exact
//! rational) and the census combinator of the zip product at degree-3
//! vertices. All counts are arbitrary-precision; the family parameters this
//! crate manipulates grow without bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact arbitrary-precision fraction, always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    /// An average was requested for a census with no vertices.
    #[error("empty census")]
    EmptyCensus,
    /// A zip product needs a degree-3 vertex on both sides.
    #[error("no zip vertex: both censuses must have n3 >= 1")]
    NoZipVertex,
    /// Counts must be nonnegative.
    #[error("negative count in census: ({0}, {1}, {2}, {3})")]
    NegativeCount(BigInt, BigInt, BigInt, BigInt),
}

/// Counts of vertices with degrees 3, 4, 5 and 6, in that order.
///
/// The census is closed over degrees 3–6; graphs containing other degrees are
/// rejected at the census-extraction boundary in [`crate::graph`], not here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeCensus3456 {
    pub n3: BigInt,
    pub n4: BigInt,
    pub n5: BigInt,
    pub n6: BigInt,
}

impl DegreeCensus3456 {
    /// Builds a census, rejecting negative counts.
    pub fn new(n3: BigInt, n4: BigInt, n5: BigInt, n6: BigInt) -> Result<Self, CensusError> {
        if n3.is_negative() || n4.is_negative() || n5.is_negative() || n6.is_negative() {
            return Err(CensusError::NegativeCount(n3, n4, n5, n6));
        }
        Ok(Self { n3, n4, n5, n6 })
    }

    /// Convenience constructor from machine integers.
    pub fn of(n3: u64, n4: u64, n5: u64, n6: u64) -> Self {
        Self {
            n3: n3.into(),
            n4: n4.into(),
            n5: n5.into(),
            n6: n6.into(),
        }
    }

    /// Total number of vertices.
    pub fn total(&self) -> BigInt {
        &self.n3 + &self.n4 + &self.n5 + &self.n6
    }

    /// Sum of all vertex degrees (twice the edge count).
    pub fn degree_sum(&self) -> BigInt {
        3 * &self.n3 + 4 * &self.n4 + 5 * &self.n5 + 6 * &self.n6
    }
}

impl std::fmt::Display for DegreeCensus3456 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n3, self.n4, self.n5, self.n6)
    }
}

/// Average degree of a census: (3·n3 + 4·n4 + 5·n5 + 6·n6) / (n3+n4+n5+n6),
/// exact and in lowest terms.
pub fn average_degree(c: &DegreeCensus3456) -> Result<Rational, CensusError> {
    let total = c.total();
    if total.is_zero() {
        return Err(CensusError::EmptyCensus);
    }
    Ok(Rational::new(c.degree_sum(), total))
}

/// Census of the zip product of two graphs at degree-3 vertices: the two zip
/// vertices disappear, every other degree survives unchanged.
pub fn zip3_census(
    c1: &DegreeCensus3456,
    c2: &DegreeCensus3456,
) -> Result<DegreeCensus3456, CensusError> {
    if c1.n3 < BigInt::one() || c2.n3 < BigInt::one() {
        return Err(CensusError::NoZipVertex);
    }
    DegreeCensus3456::new(
        &c1.n3 + &c2.n3 - 2,
        &c1.n4 + &c2.n4,
        &c1.n5 + &c2.n5,
        &c1.n6 + &c2.n6,
    )
}
