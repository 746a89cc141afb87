//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and asserting its runtime bound.
//!
//! 1. End-to-end instance: a=1 b=1 k=481 t=482 derives the exact parameter
//!    set, crossing number 481 and average degree exactly 4, in under 1 s.
//! 2. 500 random (a, b, k, t) derivations pass every clause with crossing
//!    number k and average degree 3 + a/b, in under 30 s.
//! 3. 200 random degree-only parameter selections satisfy the S constraints
//!    with average degree exactly 3 + a/b, in under 10 s.
//! 4. Pair enumeration equals every closed form for w in 0..=20, totalling
//!    32w² + 56w + 31 (31 at w = 0), in under 5 s.
//! 5. Oracle ground truth: cr(K33) = 1 (< 1 s), cr(K35) = 4 with level-3
//!    exhaustion (< 10 min), cr(R(2,0)) = 2 (< 1 min), K33 edge-criticality
//!    (< 1 s). Exact integers, no tolerance.
//! 6. Explicit builds reproduce the census formulas across the pinned
//!    parameter grid, in under 30 s.
//! 7. Bound function: f(4) = 8345/16 exactly, interval threshold
//!    [7/2, 4] -> 522, positive second differences on the 1/100 grid over
//!    (3.01, 5.99), and N(a, b) <= f(3 + a/b) on 500 random inputs, in under
//!    10 s.
//! 8. Full-scale crossing numbers of the band families are out of desk
//!    range by design; the size cap reports census-level results instead.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use critcross::census::{average_degree, Rational};
use critcross::family::{
    build_h, build_r, build_s, census_gamma, census_h, census_r, census_s, constraint_s,
    crn_gamma, thick_count, GammaParams, ThickSelection,
};
use critcross::graph::{complete_bipartite, degree_census, is_planar};
use critcross::oracle::{
    crossing_number_exact, is_edge_critical, planarize_witness, OracleOutcome, DEFAULT_BUDGET,
};
use critcross::pairs::{pair_counts, pair_validity};
use critcross::solver::{bound_f, bound_n, derive_params, interval_threshold, s_params_for_degree};

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn report(criterion: u32, elapsed: Duration, limit: Duration, detail: &str) {
    println!(
        "acceptance criterion {criterion}: PASS ({elapsed:.2?} < {limit:?}) — {detail}"
    );
    assert!(
        elapsed < limit,
        "criterion {criterion} exceeded its runtime bound: {elapsed:?} >= {limit:?}"
    );
}

#[test]
fn criterion_1_end_to_end_instance() {
    let start = Instant::now();
    let report_1 = derive_params(&big(1), &big(1), &big(481), &big(482)).unwrap();
    let p = &report_1.params;
    assert_eq!(p.n, big(4));
    assert_eq!(p.m, big(17273));
    assert_eq!(p.c, big(37));
    assert_eq!(p.w, big(2));
    assert_eq!(p.s, big(7712));
    assert_eq!(p.p, big(177));
    assert_eq!(p.q, big(7));
    assert_eq!(report_1.kp, big(41));
    assert_eq!(report_1.kr, big(2));
    assert_eq!(report_1.chain.threshold, big(480));
    assert_eq!(report_1.crossing_number, big(481));
    assert_eq!(crn_gamma(p), big(481));
    assert_eq!(report_1.average_degree, rat(4, 1));
    assert_eq!(
        average_degree(&census_gamma(p).unwrap()).unwrap(),
        rat(4, 1)
    );
    assert!(report_1.all_pass(), "failures:\n{}", report_1.checks);
    report(
        1,
        start.elapsed(),
        Duration::from_secs(1),
        "a=1 b=1 k=481 t=482 -> n=4 m=17273 c=37 w=2 s=7712 p=177 q=7, cr=481, degree=4",
    );
}

#[test]
fn criterion_2_randomized_pipeline() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let runs = 500;
    for i in 0..runs {
        let b = rng.random_range(1i64..=60);
        let a = rng.random_range(1i64..3 * b);
        let n = bound_n(&big(a), &big(b)).unwrap();
        let k = &n + 1 + rng.random_range(0i64..=100);
        let t = &k + 1 + rng.random_range(0i64..=100);
        let rep = derive_params(&big(a), &big(b), &k, &t)
            .unwrap_or_else(|e| panic!("run {i}: a={a} b={b} failed: {e}"));
        assert!(
            rep.all_pass(),
            "run {i}: a={a} b={b} k={k} t={t} failed clauses:\n{}",
            rep.checks
        );
        assert_eq!(rep.crossing_number, k, "run {i}");
        assert_eq!(
            rep.average_degree,
            Rational::new(big(3 * b + a), big(b)),
            "run {i}"
        );
    }
    report(
        2,
        start.elapsed(),
        Duration::from_secs(30),
        "500 random derivations: all clauses pass, cr = k, degree = 3 + a/b exactly",
    );
}

#[test]
fn criterion_3_degree_parameter_selection() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 200 {
        let b = rng.random_range(2i64..=60);
        let a = rng.random_range(1i64..b);
        if (a + b) % 2 == 0 {
            continue;
        }
        // Discover n first, then pick t >= n^2.
        let n_probe = match s_params_for_degree(&big(a), &big(b), &big(i64::MAX / 4)) {
            Ok((n, _, _)) => n,
            Err(e) => panic!("probe failed for a={a} b={b}: {e}"),
        };
        let t = &n_probe * &n_probe + rng.random_range(0i64..=50);
        let (n, m, c) = s_params_for_degree(&big(a), &big(b), &t).unwrap();
        let checks = constraint_s(&n, &m, &c);
        assert!(checks.all_pass(), "a={a} b={b} t={t}:\n{checks}");
        assert!(c >= big(0) && c <= thick_count(&n, &m));
        let avg = average_degree(&census_s(&n, &m, &c).unwrap()).unwrap();
        assert_eq!(avg, Rational::new(big(3 * b + a), big(b)), "a={a} b={b}");
        done += 1;
    }
    report(
        3,
        start.elapsed(),
        Duration::from_secs(10),
        "200 random (a, b): S constraints hold and degree = 3 + a/b exactly",
    );
}

#[test]
fn criterion_4_pair_count_equivalence() {
    let start = Instant::now();
    for w in 0..=20u32 {
        let fam = pair_validity(w);
        let closed = pair_counts(&BigInt::from(w));
        assert_eq!(BigInt::from(fam.total()), closed.total, "total at w={w}");
        let expected_total = 32 * big(w as i64) * big(w as i64) + 56 * big(w as i64) + 31;
        assert_eq!(closed.total, expected_total, "polynomial at w={w}");
        let enumerated = fam.counts_by_letter();
        for (letter, count) in &closed.by_letter {
            assert_eq!(
                BigInt::from(enumerated[letter]),
                count.clone(),
                "letter {letter} at w={w}"
            );
        }
    }
    assert_eq!(pair_validity(0).total(), 31);
    report(
        4,
        start.elapsed(),
        Duration::from_secs(5),
        "w in 0..=20: enumeration matches every closed form; total 31 at w=0",
    );
}

#[test]
fn criterion_5_oracle_ground_truth() {
    // cr(K33) = 1 in under a second.
    let start = Instant::now();
    let k33 = complete_bipartite(3, 3).unwrap();
    let cert = match crossing_number_exact(&k33, 2, DEFAULT_BUDGET).unwrap() {
        OracleOutcome::Exact(c) => c,
        other => panic!("{other:?}"),
    };
    assert_eq!(cert.value, 1);
    let planarized = planarize_witness(&k33, &cert.witness, &cert.edge_orders).unwrap();
    assert!(is_planar(&planarized));
    report(5, start.elapsed(), Duration::from_secs(1), "cr(K33) = 1");

    // Edge-criticality of K33: all 9 deletions planar, in under a second.
    let start = Instant::now();
    let crit = is_edge_critical(&k33, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(crit.verdict, Some(true));
    assert_eq!(crit.edges.len(), 9);
    report(
        5,
        start.elapsed(),
        Duration::from_secs(1),
        "K33 is edge-critical (9 deletions planar)",
    );

    // cr(R(2,0)) = 2 in under a minute.
    let start = Instant::now();
    let r20 = build_r(&big(2), &big(0)).unwrap();
    let out = crossing_number_exact(&r20, 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(out.value(), Some(2));
    report(5, start.elapsed(), Duration::from_secs(60), "cr(R(2,0)) = 2");

    // cr(K35) = 4 with level-3 exhaustion, in under ten minutes.
    let start = Instant::now();
    let k35 = complete_bipartite(3, 5).unwrap();
    let cert = match crossing_number_exact(&k35, 4, DEFAULT_BUDGET).unwrap() {
        OracleOutcome::Exact(c) => c,
        other => panic!("{other:?}"),
    };
    assert_eq!(cert.value, 4);
    assert_eq!(cert.search_floor, 0, "levels 0..=3 searched exhaustively");
    let planarized = planarize_witness(&k35, &cert.witness, &cert.edge_orders).unwrap();
    assert!(is_planar(&planarized));
    report(
        5,
        start.elapsed(),
        Duration::from_secs(600),
        "cr(K35) = 4 (levels <= 3 exhausted)",
    );
}

#[test]
fn criterion_6_census_build_consistency() {
    let start = Instant::now();
    // S: n in {3, 4, 5}, smallest valid odd m, c in {0, max}.
    for n in [3i64, 4, 5] {
        let bound = 4 * (n * (n - 1) / 2 - 1);
        let mut m = bound + 1;
        if m % 2 == 0 {
            m += 1;
        }
        let maxc = 2 * m * (n - 3);
        for c in [0, maxc] {
            let g = build_s(&big(n), &big(m), &big(c), ThickSelection::Canonical).unwrap();
            assert_eq!(
                degree_census(&g).unwrap(),
                census_s(&big(n), &big(m), &big(c)).unwrap(),
                "S({n}, {m}, {c})"
            );
            assert!(g.is_simple());
        }
    }
    // H: w in {0, 1}, smallest valid s.
    for w in [0i64, 1] {
        let s = 4 * (31 + 8 * w * (7 + 4 * w)) + 1;
        let g = build_h(&big(w), &big(s)).unwrap();
        assert_eq!(
            degree_census(&g).unwrap(),
            census_h(&big(w), &big(s)).unwrap(),
            "H({w}, {s})"
        );
        assert!(g.is_simple());
    }
    // R: p <= 4, q <= 3.
    for p in 1i64..=4 {
        for q in 0i64..=3 {
            let g = build_r(&big(p), &big(q)).unwrap();
            assert_eq!(
                degree_census(&g).unwrap(),
                census_r(&big(p), &big(q)).unwrap(),
                "R({p}, {q})"
            );
            assert!(g.is_simple());
        }
    }
    report(
        6,
        start.elapsed(),
        Duration::from_secs(30),
        "explicit S, H, R builds reproduce the census formulas",
    );
}

#[test]
fn criterion_7_bound_function() {
    let start = Instant::now();
    assert_eq!(bound_f(&rat(4, 1)).unwrap(), rat(8345, 16));
    assert_eq!(interval_threshold(&rat(7, 2), &rat(4, 1)).unwrap(), big(522));

    // Positive second differences on the grid step 1/100 over (3.01, 5.99).
    let f_at = |i: i64| bound_f(&rat(i, 100)).unwrap();
    let mut prev = f_at(301);
    let mut here = f_at(302);
    for i in 303..=599 {
        let next = f_at(i);
        let second = &next - rat(2, 1) * &here + &prev;
        assert!(
            second > rat(0, 1),
            "second difference not positive at x = {}/100",
            i - 1
        );
        prev = here;
        here = next;
    }

    // N(a, b) never exceeds f(3 + a/b).
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let b = rng.random_range(1i64..=60);
        let a = rng.random_range(1i64..3 * b);
        let n = bound_n(&big(a), &big(b)).unwrap();
        let f = bound_f(&rat(3 * b + a, b)).unwrap();
        assert!(
            Rational::from_integer(n.clone()) <= f,
            "N({a},{b}) = {n} exceeds f"
        );
    }
    report(
        7,
        start.elapsed(),
        Duration::from_secs(10),
        "f(4) = 8345/16, threshold(7/2, 4) = 522, convex grid, N <= f on 500 samples",
    );
}

#[test]
fn criterion_8_desk_scale_boundary() {
    let start = Instant::now();
    // Full-scale crossing numbers of the band families are not reproducible
    // at desk scale; the pipeline substitutes the formula-level checks above
    // and the oracle validates zip-product additivity on small instances
    // only. What the artifact guarantees here: over-cap builds still report
    // the full census-level result.
    let params = GammaParams {
        n: big(4),
        m: big(17273),
        c: big(37),
        w: big(2),
        s: big(7712),
        p: big(177),
        q: big(7),
    };
    match critcross::family::build_gamma(&params, 1000, ThickSelection::Canonical) {
        Err(critcross::family::FamilyError::SizeCapExceeded {
            vertices, census, ..
        }) => {
            assert_eq!(vertices, big(287272));
            assert_eq!(census, census_gamma(&params).unwrap());
        }
        other => panic!("expected census-level fallback, got {other:?}"),
    }
    report(
        8,
        start.elapsed(),
        Duration::from_secs(5),
        "full-scale crossing numbers out of scope; census-level results stand in",
    );
}
