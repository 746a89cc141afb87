//! Twisted-pair counting for the dense band tiles.
//!
//! A band tile of parameter w carries 7 + 4(2w+1) named traversing paths:
//! the letters A–G plus indexed families P_i, Q_i, R_i, S_i for
//! i in 1..=2w+1. Certain unordered pairs of these paths are *valid* (they
//! can be simultaneously twisted in the twisted tile); the number of valid
//! pairs lower-bounds the tile crossing number. This module builds the
//! validity relation explicitly, counts it, and exposes the closed forms the
//! enumeration must reproduce: the total is 32w² + 56w + 31.
//!
//! Pairs are accounted at their lexicographically first member, ordering
//! letters A < B < ... < G before the indexed families, and indexed labels by
//! index first, then P < Q < R < S.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

/// Name of one traversing path of a band tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    P(u32),
    Q(u32),
    R(u32),
    S(u32),
}

impl PathLabel {
    /// Sort key: letters first, then indexed labels index-major.
    fn key(&self) -> (u8, u32, u8) {
        match *self {
            PathLabel::A => (0, 0, 0),
            PathLabel::B => (0, 0, 1),
            PathLabel::C => (0, 0, 2),
            PathLabel::D => (0, 0, 3),
            PathLabel::E => (0, 0, 4),
            PathLabel::F => (0, 0, 5),
            PathLabel::G => (0, 0, 6),
            PathLabel::P(i) => (1, i, 0),
            PathLabel::Q(i) => (1, i, 1),
            PathLabel::R(i) => (1, i, 2),
            PathLabel::S(i) => (1, i, 3),
        }
    }

    /// The letter family, for aggregated counts.
    pub fn letter(&self) -> char {
        match self {
            PathLabel::A => 'A',
            PathLabel::B => 'B',
            PathLabel::C => 'C',
            PathLabel::D => 'D',
            PathLabel::E => 'E',
            PathLabel::F => 'F',
            PathLabel::G => 'G',
            PathLabel::P(_) => 'P',
            PathLabel::Q(_) => 'Q',
            PathLabel::R(_) => 'R',
            PathLabel::S(_) => 'S',
        }
    }
}

impl PartialOrd for PathLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PathLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::fmt::Display for PathLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PathLabel::P(i) => write!(f, "P{i}"),
            PathLabel::Q(i) => write!(f, "Q{i}"),
            PathLabel::R(i) => write!(f, "R{i}"),
            PathLabel::S(i) => write!(f, "S{i}"),
            other => write!(f, "{}", other.letter()),
        }
    }
}

/// All labels for a given w, in lexicographic order.
pub fn labels(w: u32) -> Vec<PathLabel> {
    let mut out = vec![
        PathLabel::A,
        PathLabel::B,
        PathLabel::C,
        PathLabel::D,
        PathLabel::E,
        PathLabel::F,
        PathLabel::G,
    ];
    for i in 1..=(2 * w + 1) {
        out.extend([
            PathLabel::P(i),
            PathLabel::Q(i),
            PathLabel::R(i),
            PathLabel::S(i),
        ]);
    }
    out
}

/// The validity relation on unordered label pairs for a given w.
#[derive(Debug, Clone)]
pub struct PairFamily {
    w: u32,
    pairs: BTreeSet<(PathLabel, PathLabel)>,
}

impl PairFamily {
    pub fn w(&self) -> u32 {
        self.w
    }

    /// Symmetric validity query.
    pub fn is_valid(&self, a: PathLabel, b: PathLabel) -> bool {
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        self.pairs.contains(&(x, y))
    }

    /// Valid pairs, normalized so the lexicographically smaller label comes
    /// first, in sorted order.
    pub fn pairs(&self) -> impl Iterator<Item = (PathLabel, PathLabel)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn total(&self) -> u64 {
        self.pairs.len() as u64
    }

    /// Number of pairs initiated by each letter family (accounted at the
    /// lexicographically first member of the pair).
    pub fn counts_by_letter(&self) -> BTreeMap<char, u64> {
        let mut out: BTreeMap<char, u64> = "ABCDEFGPQRS".chars().map(|c| (c, 0)).collect();
        for (first, _) in &self.pairs {
            *out.get_mut(&first.letter()).unwrap() += 1;
        }
        out
    }
}

/// Builds the validity relation with the default exclusions: the one S index
/// that D and E each do not pair with is S_1.
pub fn pair_validity(w: u32) -> PairFamily {
    pair_validity_with_exclusions(w, 1, 1)
}

/// Builds the validity relation with configurable excluded S indices for D
/// and E. Only the count of exclusions is contract-bearing; which index is
/// excluded does not change any cardinality.
pub fn pair_validity_with_exclusions(w: u32, excl_d: u32, excl_e: u32) -> PairFamily {
    let width = 2 * w + 1;
    assert!(
        (1..=width).contains(&excl_d) && (1..=width).contains(&excl_e),
        "excluded S index out of range 1..={width}"
    );
    let mut pairs = BTreeSet::new();
    let mut put = |a: PathLabel, b: PathLabel| {
        debug_assert!(a < b, "rules must generate lex-increasing pairs");
        pairs.insert((a, b));
    };
    let indexed = |i: u32| {
        [
            PathLabel::P(i),
            PathLabel::Q(i),
            PathLabel::R(i),
            PathLabel::S(i),
        ]
    };

    // A pairs with C, D, E, G and every indexed path.
    for x in [PathLabel::C, PathLabel::D, PathLabel::E, PathLabel::G] {
        put(PathLabel::A, x);
    }
    for i in 1..=width {
        for x in indexed(i) {
            put(PathLabel::A, x);
        }
    }
    // B pairs with D, E, G and every indexed path.
    for x in [PathLabel::D, PathLabel::E, PathLabel::G] {
        put(PathLabel::B, x);
    }
    for i in 1..=width {
        for x in indexed(i) {
            put(PathLabel::B, x);
        }
    }
    // C initiates nothing: its only pair (A, C) is accounted at A.
    // D pairs with F, G, all P_i, Q_i, R_i, and all S_i but one.
    put(PathLabel::D, PathLabel::F);
    put(PathLabel::D, PathLabel::G);
    for i in 1..=width {
        put(PathLabel::D, PathLabel::P(i));
        put(PathLabel::D, PathLabel::Q(i));
        put(PathLabel::D, PathLabel::R(i));
        if i != excl_d {
            put(PathLabel::D, PathLabel::S(i));
        }
    }
    // E pairs with G, all P_i, Q_i, R_i, and all S_i but one.
    put(PathLabel::E, PathLabel::G);
    for i in 1..=width {
        put(PathLabel::E, PathLabel::P(i));
        put(PathLabel::E, PathLabel::Q(i));
        put(PathLabel::E, PathLabel::R(i));
        if i != excl_e {
            put(PathLabel::E, PathLabel::S(i));
        }
    }
    // F pairs only with the last S.
    put(PathLabel::F, PathLabel::S(width));
    // G pairs with every indexed path.
    for i in 1..=width {
        for x in indexed(i) {
            put(PathLabel::G, x);
        }
    }
    // P_i pairs with R_j, S_j for j >= i and with P_j, Q_j for j > i.
    for i in 1..=width {
        for j in i..=width {
            put(PathLabel::P(i), PathLabel::R(j));
            put(PathLabel::P(i), PathLabel::S(j));
        }
        for j in (i + 1)..=width {
            put(PathLabel::P(i), PathLabel::P(j));
            put(PathLabel::P(i), PathLabel::Q(j));
        }
    }
    // Q_i and R_i pair with all four families at strictly later indices.
    for i in 1..=width {
        for j in (i + 1)..=width {
            for x in indexed(j) {
                put(PathLabel::Q(i), x);
                put(PathLabel::R(i), x);
            }
        }
    }
    // S_i for i <= 2w pairs with R_j, S_j for j > i and with P_j, Q_j for
    // j > i + 1. The last S initiates nothing.
    for i in 1..width {
        for j in (i + 1)..=width {
            put(PathLabel::S(i), PathLabel::R(j));
            put(PathLabel::S(i), PathLabel::S(j));
        }
        for j in (i + 2)..=width {
            put(PathLabel::S(i), PathLabel::P(j));
            put(PathLabel::S(i), PathLabel::Q(j));
        }
    }

    PairFamily { w, pairs }
}

/// Closed-form per-letter pair counts and the total 32w² + 56w + 31.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCounts {
    pub by_letter: BTreeMap<char, BigInt>,
    pub total: BigInt,
}

pub fn pair_counts(w: &BigInt) -> PairCounts {
    let a = 8 * (1 + w);
    let b = 7 + 8 * w;
    let c = BigInt::from(0);
    let d = 5 + 8 * w;
    let e = 4 + 8 * w;
    let f = BigInt::from(1);
    let g = 4 * (1 + 2 * w);
    let p = 2 * (1 + 2 * w) * (1 + 2 * w);
    let q: BigInt = 4 * w * (1 + 2 * w);
    let r = q.clone();
    let s = 8 * w * w;
    let total = &a + &b + &c + &d + &e + &f + &g + &p + &q + &r + &s;
    let by_letter = [
        ('A', a),
        ('B', b),
        ('C', c),
        ('D', d),
        ('E', e),
        ('F', f),
        ('G', g),
        ('P', p),
        ('Q', q),
        ('R', r),
        ('S', s),
    ]
    .into_iter()
    .collect();
    PairCounts { by_letter, total }
}
