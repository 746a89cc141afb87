//! The arithmetic pipeline from a target degree r = 3 + a/b and a target
//! crossing number k to family parameters.
//!
//! Four Euclidean divisions drive everything:
//!
//! ```text
//! b  = b′·a + b_r            0 <= b_r  < a
//! b′ = 4·b″ + b_r′           0 <= b_r′ <= 3
//! 4b = b̄·(3b − a) + b̄_r     0 <= b̄_r < 3b − a
//! k − b″(b″+5)/2 − 8b̄(4b̄+7) − 34 = k′(2b″+5) + k_r,   0 <= k_r < 2b″+5
//! ```
//!
//! The threshold N = 8b̄(4b̄+7) + 5(b″+4)(5b″+12) guarantees the last
//! dividend is positive for every k > N, and the derived parameters
//! (n, m, c, w, s, p, q) then satisfy every family constraint, give crossing
//! number exactly k and average degree exactly 3 + a/b. The bound function
//! f(x) dominates N over the whole degree range, so a single ceiling of f at
//! the endpoints of a degree interval bounds N for every rational inside it
//! (f is convex on (3, 6)).
//!
//! All divisions use floor semantics with nonnegative remainders; every
//! quantity is an exact big integer or big rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::census::{average_degree, Rational};
use crate::family::{census_gamma, constraint_gamma, crn_gamma, CheckItem, CheckReport};
use crate::family::GammaParams;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("parity: a + b must be odd")]
    Parity,
    #[error("range: need 0 < a < b")]
    Range,
    #[error("domain: need a >= 1")]
    NonPositiveA,
    #[error("domain: 3b > a violated (degree must stay below 6)")]
    DegreeTooHigh,
    #[error("t below n^2: t must be at least {0}")]
    TBelowSquare(BigInt),
    #[error("k below threshold: need k > {0}")]
    KBelowThreshold(BigInt),
    #[error("t too small: need t > k")]
    TTooSmall,
    #[error("bound function domain: need 3 < x < 6, got {0}")]
    OutsideInterval(Rational),
    #[error("interval order: need 3 < r1 <= r2 < 6")]
    IntervalOrder,
}

/// Ceiling of an exact rational.
fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Selects (n, m, c) so that S(n, m, c) has average degree exactly 3 + a/b:
/// n is the smallest integer satisfying n >= (5b−a)/(2(b−a)),
/// n >= (7a+b)/(4a) and n >= 4, then m = (2t+1)(a+b) and
/// c = (2t+1)((4n−7)a − b).
///
/// Requires 0 < a < b, a + b odd and t >= n².
pub fn s_params_for_degree(
    a: &BigInt,
    b: &BigInt,
    t: &BigInt,
) -> Result<(BigInt, BigInt, BigInt), SolverError> {
    if a <= &BigInt::zero() || a >= b {
        return Err(SolverError::Range);
    }
    if (a + b).is_even() {
        return Err(SolverError::Parity);
    }
    let n1 = ceil(&BigRational::new(5 * b - a, 2 * (b - a)));
    let n2 = ceil(&BigRational::new(7 * a + b, 4 * a));
    let n = n1.max(n2).max(BigInt::from(4));
    let n_sq = &n * &n;
    if t < &n_sq {
        return Err(SolverError::TBelowSquare(n_sq));
    }
    let factor: BigInt = 2 * t + 1;
    let m = &factor * (a + b);
    let c = &factor * ((4 * &n - 7) * a - b);
    Ok((n, m, c))
}

/// Intermediate values of the four-division chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionChain {
    pub bp: BigInt,
    pub br: BigInt,
    pub bpp: BigInt,
    pub bpr: BigInt,
    pub bb: BigInt,
    pub bbr: BigInt,
    pub threshold: BigInt,
}

fn division_chain(a: &BigInt, b: &BigInt) -> Result<DivisionChain, SolverError> {
    if a < &BigInt::one() {
        return Err(SolverError::NonPositiveA);
    }
    if 3 * b <= a.clone() {
        return Err(SolverError::DegreeTooHigh);
    }
    let (bp, br) = b.div_mod_floor(a);
    let (bpp, bpr) = bp.div_mod_floor(&BigInt::from(4));
    let divisor: BigInt = 3 * b - a;
    let four_b: BigInt = 4 * b;
    let (bb, bbr) = four_b.div_mod_floor(&divisor);
    let threshold = 8 * &bb * (4 * &bb + 7) + 5 * (&bpp + 4) * (5 * &bpp + 12);
    Ok(DivisionChain {
        bp,
        br,
        bpp,
        bpr,
        bb,
        bbr,
        threshold,
    })
}

/// The threshold N for a degree 3 + a/b: every k > N admits a derivation.
pub fn bound_n(a: &BigInt, b: &BigInt) -> Result<BigInt, SolverError> {
    Ok(division_chain(a, b)?.threshold)
}

/// Full record of one parameter derivation.
#[derive(Debug, Clone)]
pub struct DerivationReport {
    pub a: BigInt,
    pub b: BigInt,
    pub k: BigInt,
    pub t: BigInt,
    pub chain: DivisionChain,
    pub kp: BigInt,
    pub kr: BigInt,
    pub params: GammaParams,
    pub crossing_number: BigInt,
    pub average_degree: Rational,
    pub checks: CheckReport,
}

impl DerivationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.all_pass()
    }

    /// Key/value serialization: inputs, intermediates, outputs, checks.
    pub fn to_json(&self) -> Value {
        let s = |x: &BigInt| x.to_string();
        json!({
            "inputs": {
                "a": s(&self.a), "b": s(&self.b), "k": s(&self.k), "t": s(&self.t),
            },
            "intermediates": {
                "bp": s(&self.chain.bp), "br": s(&self.chain.br),
                "bpp": s(&self.chain.bpp), "bpr": s(&self.chain.bpr),
                "bb": s(&self.chain.bb), "bbr": s(&self.chain.bbr),
                "N": s(&self.chain.threshold),
                "kp": s(&self.kp), "kr": s(&self.kr),
            },
            "outputs": {
                "n": s(&self.params.n), "m": s(&self.params.m), "c": s(&self.params.c),
                "w": s(&self.params.w), "s": s(&self.params.s),
                "p": s(&self.params.p), "q": s(&self.params.q),
                "crossing_number": s(&self.crossing_number),
                "average_degree": self.average_degree.to_string(),
            },
            "checks": self.checks.items.iter().map(|i| json!({
                "clause": i.clause, "pass": i.pass, "lhs": i.lhs, "rhs": i.rhs,
            })).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for DerivationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "inputs: a={} b={} k={} t={}",
            self.a, self.b, self.k, self.t
        )?;
        writeln!(
            f,
            "intermediates: bp={} br={} bpp={} bpr={} bb={} bbr={} N={} kp={} kr={}",
            self.chain.bp,
            self.chain.br,
            self.chain.bpp,
            self.chain.bpr,
            self.chain.bb,
            self.chain.bbr,
            self.chain.threshold,
            self.kp,
            self.kr
        )?;
        writeln!(
            f,
            "outputs: n={} m={} c={} w={} s={} p={} q={}",
            self.params.n,
            self.params.m,
            self.params.c,
            self.params.w,
            self.params.s,
            self.params.p,
            self.params.q
        )?;
        writeln!(
            f,
            "crossing number = {}, average degree = {}",
            self.crossing_number, self.average_degree
        )?;
        write!(f, "{}", self.checks)
    }
}

/// Derives Γ parameters for crossing number k and average degree 3 + a/b.
/// Requires a >= 1, 3b > a, k > N(a, b) and t > k.
pub fn derive_params(
    a: &BigInt,
    b: &BigInt,
    k: &BigInt,
    t: &BigInt,
) -> Result<DerivationReport, SolverError> {
    let chain = division_chain(a, b)?;
    if k <= &chain.threshold {
        return Err(SolverError::KBelowThreshold(chain.threshold));
    }
    if t <= k {
        return Err(SolverError::TTooSmall);
    }
    let bpp = &chain.bpp;
    let bb = &chain.bb;
    let bbr = &chain.bbr;

    let dividend: BigInt = k - bpp * (bpp + 5) / 2 - 8 * bb * (4 * bb + 7) - 34;
    let divisor: BigInt = 2 * bpp + 5;
    let (kp, kr) = dividend.div_mod_floor(&divisor);

    let n: BigInt = 4 + bpp;
    let m: BigInt = 2 * t * (27 * b - 9 * a - 4 * bbr) - 2 * &kp + 3;
    let c: BigInt = 2 * &kp - 12 * bpp - 6 * &kr - 33;
    let w: BigInt = bb.clone();
    let s: BigInt = 2 * t * (a * (4 * bpp + 9) - b);
    let p: BigInt = k - (bpp * (bpp + 23) / 2 + 8 * bb * (4 * bb + 7) + 4 * &kr + 56);
    let q: BigInt = 2 * bpp + &kr + 5;

    let params = GammaParams { n, m, c, w, s, p, q };
    let crossing_number = crn_gamma(&params);
    let avg = average_degree(&census_gamma(&params).map_err(|_| SolverError::Range)?)
        .expect("gamma census is never empty");
    let target = BigRational::new(3 * b + a, b.clone());

    let mut checks = CheckReport {
        items: vec![
            CheckItem::cmp(
                "b == bp*a + br",
                chain.bp.clone() * a + &chain.br == *b,
                format!("{}*{}+{}", chain.bp, a, chain.br),
                b,
            ),
            CheckItem::cmp(
                "0 <= br < a",
                !chain.br.is_negative() && &chain.br < a,
                &chain.br,
                a,
            ),
            CheckItem::cmp(
                "bp == 4*bpp + bpr",
                4 * chain.bpp.clone() + &chain.bpr == chain.bp,
                format!("4*{}+{}", chain.bpp, chain.bpr),
                &chain.bp,
            ),
            CheckItem::cmp(
                "0 <= bpr <= 3",
                !chain.bpr.is_negative() && chain.bpr <= BigInt::from(3),
                &chain.bpr,
                3,
            ),
            CheckItem::cmp(
                "4b == bb*(3b-a) + bbr",
                chain.bb.clone() * (3 * b - a) + &chain.bbr == 4 * b,
                format!("{}*(3*{}-{})+{}", chain.bb, b, a, chain.bbr),
                4 * b,
            ),
            CheckItem::cmp(
                "0 <= bbr < 3b-a",
                !chain.bbr.is_negative() && chain.bbr < 3 * b - a,
                &chain.bbr,
                3 * b - a,
            ),
            CheckItem::cmp(
                "dividend == kp*(2bpp+5) + kr",
                kp.clone() * &divisor + &kr == dividend,
                format!("{}*{}+{}", kp, divisor, kr),
                &dividend,
            ),
            CheckItem::cmp(
                "0 <= kr < 2bpp+5",
                !kr.is_negative() && kr < divisor,
                &kr,
                &divisor,
            ),
        ],
    };
    checks.items.extend(constraint_gamma(&params).items);
    checks.items.push(CheckItem::cmp(
        "crossing number == k",
        &crossing_number == k,
        &crossing_number,
        k,
    ));
    checks.items.push(CheckItem::cmp(
        "average degree == 3 + a/b",
        avg == target,
        &avg,
        &target,
    ));

    Ok(DerivationReport {
        a: a.clone(),
        b: b.clone(),
        k: k.clone(),
        t: t.clone(),
        chain,
        kp,
        kr,
        params,
        crossing_number,
        average_degree: avg,
    checks,
    })
}

/// The bound function
/// f(x) = 240 + 512/(6−x)² + 224/(6−x) + 25/(16(x−3)²) + 40/(x−3),
/// exact on rationals, defined for 3 < x < 6.
pub fn bound_f(x: &Rational) -> Result<Rational, SolverError> {
    let three = BigRational::from_integer(3.into());
    let six = BigRational::from_integer(6.into());
    if x <= &three || x >= &six {
        return Err(SolverError::OutsideInterval(x.clone()));
    }
    let hi = six - x; // 6 - x
    let lo = x - three; // x - 3
    let term = |num: i64, den: Rational| BigRational::from_integer(num.into()) / den;
    Ok(BigRational::from_integer(240.into())
        + term(512, &hi * &hi)
        + term(224, hi)
        + term(25, BigRational::from_integer(16.into()) * &lo * &lo)
        + term(40, lo))
}

/// The crossing-number threshold for a whole degree interval [r1, r2]:
/// the ceiling of max(f(r1), f(r2)). Since f is convex on (3, 6), its
/// supremum over the interval sits at an endpoint, so no interior sampling
/// is needed.
pub fn interval_threshold(r1: &Rational, r2: &Rational) -> Result<BigInt, SolverError> {
    if r1 > r2 {
        return Err(SolverError::IntervalOrder);
    }
    let f1 = bound_f(r1)?;
    let f2 = bound_f(r2)?;
    Ok(ceil(&f1.max(f2)))
}

/// Emits CSV rows "x,f(x)" over [from, to] at the given step, for plotting.
pub fn sample_bound_csv(from: &Rational, to: &Rational, step: &Rational) -> Result<String, SolverError> {
    if step <= &BigRational::zero() || from > to {
        return Err(SolverError::IntervalOrder);
    }
    let mut out = String::from("x,f(x)\n");
    let mut x = from.clone();
    while &x <= to {
        let fx = bound_f(&x)?;
        out.push_str(&format!("{},{}\n", rational_to_decimal(&x), rational_to_decimal(&fx)));
        x += step;
    }
    Ok(out)
}

/// Decimal rendering with enough digits for plot data (the exact value lives
/// in the rational API; this is presentation only).
fn rational_to_decimal(x: &Rational) -> String {
    let (int, frac) = (x.trunc(), x.fract());
    if frac.is_zero() {
        return int.to_integer().to_string();
    }
    let mut digits = String::new();
    let mut rest = frac.abs();
    let ten = BigRational::from_integer(10.into());
    for _ in 0..12 {
        rest *= &ten;
        let d = rest.trunc();
        digits.push_str(&d.to_integer().to_string());
        rest -= d;
        if rest.is_zero() {
            break;
        }
    }
    let sign = if x.is_negative() && int.is_zero() { "-" } else { "" };
    format!("{}{}.{}", sign, int.to_integer(), digits)
}
