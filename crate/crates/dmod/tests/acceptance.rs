//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! All randomized parts are seeded and deterministic.

use std::time::Instant;

use dmod::decomp::{count_factors, normal_crossings_count};
use dmod::scalar::Scalar;
use dmod::verify::{run_suite, standard_arrangement};

const SEED: u64 = 0;

fn check_suite(criterion: usize, label: &str, suite: &str) {
    let start = Instant::now();
    let outcome = run_suite(suite, SEED, false).expect("known suite");
    let elapsed = start.elapsed();
    if outcome.passed() {
        println!(
            "criterion {criterion}: pass — {label} ({} cases, {:.2?})",
            outcome.cases, elapsed
        );
    } else {
        println!("criterion {criterion}: FAIL — {label}");
        for w in &outcome.failures {
            println!("    {w}");
        }
        panic!("criterion {criterion} failed");
    }
}

#[test]
fn criterion_1_count_table() {
    let start = Instant::now();
    // the named rows first
    let rows: [(usize, &[(i64, i64)], usize); 4] = [
        (5, &[(0, 1), (1, 1), (0, 1), (1, 1), (0, 1)], 10),
        (3, &[(1, 2), (1, 2), (1, 1)], 3),
        (3, &[(1, 3), (1, 3), (1, 3)], 2),
        (3, &[(1, 2), (1, 2), (1, 2)], 1),
    ];
    for (m, beta, expect) in rows {
        let beta: Vec<Scalar> = beta.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect();
        let report = count_factors(&standard_arrangement(m, beta)).unwrap();
        assert_eq!(report.count, expect, "named row m = {m}");
    }
    // then the full grid over {0, 1, 1/2, 1/3, -5/2}, m <= 6
    let outcome = run_suite("counts", SEED, false).unwrap();
    let elapsed = start.elapsed();
    if !outcome.passed() {
        println!("criterion 1: FAIL — count table");
        for w in &outcome.failures {
            println!("    {w}");
        }
        panic!("criterion 1 failed");
    }
    println!(
        "criterion 1: pass — closed-formula count table, m <= 6 ({} cases, {:.2?})",
        outcome.cases, elapsed
    );
}

#[test]
fn criterion_2_normal_crossings() {
    let values = [Scalar::zero(), Scalar::ratio(1, 2)];
    let mut cases = 0;
    for m in 1..=2usize {
        let mut patterns: Vec<Vec<Scalar>> = vec![vec![]];
        for _ in 0..m {
            patterns = patterns
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        for beta in patterns {
            let arr = standard_arrangement(m, beta);
            let (k, _) = arr.integer_count();
            let report = count_factors(&arr).unwrap();
            let expect = normal_crossings_count(k, m, 2).unwrap();
            assert_eq!(report.count, expect, "m = {m}, k = {k}");
            assert_eq!(expect, 1 << k);
            cases += 1;
        }
    }
    println!("criterion 2: pass — normal-crossings count 2^k, m <= 2 ({cases} cases)");
}

#[test]
fn criterion_3_annihilator_vanishing() {
    check_suite(3, "P and Q annihilate alpha^beta on 50 random arrangements", "annihilators");
}

#[test]
fn criterion_4_division_soundness() {
    check_suite(
        4,
        "division reconstructs, remainder in shape, weight-0 remainders in span",
        "division",
    );
}

#[test]
fn criterion_5_reduction_chains() {
    check_suite(
        5,
        "one-variable ideal chains match the dichotomy and re-verify",
        "chains",
    );
}

#[test]
fn criterion_6_origin_classifier() {
    check_suite(
        6,
        "origin quotient classifier agrees with the composed certificate path",
        "classifier",
    );
}

#[test]
fn criterion_7_span_nonvanishing() {
    check_suite(
        7,
        "nonzero span operators act nonzero on alpha^beta (m = 4)",
        "nonvanishing",
    );
}

#[test]
fn criterion_8_invariance() {
    check_suite(
        8,
        "count and supports invariant under coordinate changes and permutations",
        "invariance",
    );
}

#[test]
fn criterion_9_structural_identities() {
    check_suite(
        9,
        "associativity, action compatibility, one-variable reduction",
        "structure",
    );
}
