//! Acceptance suite: one test per criterion, each ending in a single
//! printed pass line (a failed criterion fails its test, which is the fail
//! line). Everything is exact arithmetic — tolerances are zero.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use flagsections::classify::{classify_section, good_reduction_primes};
use flagsections::exactalg::FiniteField;
use flagsections::flagcount::{
    count_hyperplane_section, enumerate_flags, evaluate_section_at_flag, sweep_verify, SplitMix64,
    SweepMode, SweepSummary,
};
use flagsections::multipoly::oracle::{oracle_classify, oracle_classify_bounded, OracleOutcome};
use flagsections::multipoly::{minors_ideal, Exps, HomPoly};
use flagsections::sections::{hyperplane_to_section, parse_section, section_to_hyperplane};
use flagsections::{Field, SectionMatrix};

fn pass(n: usize, detail: &str) {
    println!("[criterion {n}] PASS — {detail}");
}

struct TimedSweep {
    summary: SweepSummary,
    elapsed: Duration,
}

/// The exhaustive F_5 sweep, shared by criteria 2, 3, and 4.
fn f5_exhaustive() -> &'static TimedSweep {
    static CELL: OnceLock<TimedSweep> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = FiniteField::prime_field(5).unwrap();
        let start = Instant::now();
        let summary = sweep_verify(&f, SweepMode::Exhaustive, 0).unwrap();
        TimedSweep { summary, elapsed: start.elapsed() }
    })
}

/// 10,000 seeded random section classes over F_7, shared by criteria 3 and 4.
fn f7_sample() -> &'static SweepSummary {
    static CELL: OnceLock<SweepSummary> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = FiniteField::prime_field(7).unwrap();
        sweep_verify(&f, SweepMode::Sample { count: 10_000 }, 42).unwrap()
    })
}

fn random_rows(rng: &mut SplitMix64, spread: u64, offset: i64) -> [[i64; 3]; 3] {
    let mut rows = [[0i64; 3]; 3];
    for row in &mut rows {
        for entry in row {
            *entry = rng.below(spread) as i64 + offset;
        }
    }
    rows
}

fn random_section(rng: &mut SplitMix64, field: Field, spread: u64, offset: i64) -> SectionMatrix {
    loop {
        let a = SectionMatrix::from_i64(field, random_rows(rng, spread, offset));
        if !a.is_scalar() {
            return a;
        }
    }
}

#[test]
fn criterion_1_worked_examples() {
    let q = Field::Rational;

    let mut timings = Vec::new();
    let mut timed = |a: &SectionMatrix| {
        let mut best = Duration::MAX;
        let mut report = None;
        for _ in 0..5 {
            let t0 = Instant::now();
            report = Some(classify_section(a).unwrap());
            best = best.min(t0.elapsed());
        }
        timings.push(best);
        report.unwrap()
    };

    let r = timed(&parse_section("X, 2Y, 3Z", &q).unwrap());
    assert_eq!(r.scheme_type.letter(), 'a');
    let mut pts: Vec<String> = r.points.iter().map(|(p, _)| p.to_string()).collect();
    pts.sort();
    assert_eq!(pts, ["(0 : 0 : 1)", "(0 : 1 : 0)", "(1 : 0 : 0)"]);
    assert!(r.points.iter().all(|(_, m)| *m == 1));

    let r = timed(&parse_section("X, 0, Z", &q).unwrap());
    assert_eq!(r.scheme_type.letter(), 'd');
    assert_eq!(r.line.as_ref().unwrap().to_string(), "Y");
    assert_eq!(r.points[0].0.to_string(), "(0 : 1 : 0)");

    let r = timed(&parse_section("Y, 0, 0", &q).unwrap());
    assert_eq!(r.scheme_type.letter(), 'e');
    assert_eq!(r.line.as_ref().unwrap().to_string(), "Y");
    assert_eq!(r.embedded_point.as_ref().unwrap().to_string(), "(1 : 0 : 0)");

    let slowest = timings.iter().max().unwrap();
    assert!(
        *slowest < Duration::from_millis(1),
        "a worked example took {slowest:?}, over the 1 ms budget"
    );
    pass(
        1,
        &format!(
            "(X,2Y,3Z) is type a at the coordinate points, (X,0,Z) is type d with line Y, \
             (Y,0,0) is type e with line Y; slowest run {slowest:?}"
        ),
    );
}

#[test]
fn criterion_2_exhaustive_partition_over_f5() {
    let sweep = f5_exhaustive();
    let s = &sweep.summary;
    assert_eq!(s.classes, 97_656, "class count must be (5^8 - 1)/4");
    assert!(s.failures.is_empty(), "sweep failures: {:?}", s.failures);
    let expected = [('a', 74_375), ('b', 18_600), ('c', 3_720), ('d', 775), ('e', 186)];
    for (letter, count) in expected {
        assert_eq!(s.tallies.get(&letter), Some(&count), "tally for type {letter}");
    }
    assert_eq!(s.tallies.values().sum::<u64>(), s.classes);
    assert!(
        sweep.elapsed <= Duration::from_secs(60),
        "exhaustive sweep took {:?}",
        sweep.elapsed
    );
    pass(
        2,
        &format!(
            "all 97656 section classes over F_5 classified into the five types \
             (74375/18600/3720/775/186) with zero failures in {:?}",
            sweep.elapsed
        ),
    );
}

#[test]
fn criterion_3_classifier_oracle_equivalence() {
    let f5 = &f5_exhaustive().summary;
    assert_eq!(f5.oracle_agreements, f5.classes, "oracle disagreement over F_5");

    let f7 = f7_sample();
    assert_eq!(f7.classes, 10_000);
    assert_eq!(f7.oracle_agreements, 10_000, "oracle disagreement over F_7");

    let mut rng = SplitMix64::new(42);
    for _ in 0..1_000 {
        let a = random_section(&mut rng, Field::Rational, 13, -6);
        let over_q = classify_section(&a).unwrap().scheme_type.letter();
        let reductions = good_reduction_primes(&a, 3).unwrap();
        assert_eq!(reductions.len(), 3, "fewer than 3 good primes for [{}]", a.render());
        for (p, reduced) in reductions {
            let oracle = oracle_classify_bounded(&reduced, 2).unwrap();
            assert_eq!(
                oracle.outcome.type_letter(),
                Some(over_q),
                "oracle at p={p} disagrees with the rational classification of [{}]",
                a.render()
            );
        }
    }
    pass(
        3,
        "classifier = oracle on 97656 F_5 classes, 10000 seeded F_7 classes, \
         and 1000 rational sections at 3 good-reduction primes each",
    );
}

#[test]
fn criterion_4_count_identity() {
    let f5 = &f5_exhaustive().summary;
    assert_eq!(f5.count_matches, f5.classes, "count identity failed over F_5");

    let f7 = f7_sample();
    assert_eq!(f7.count_matches, 10_000, "count identity failed over F_7");

    let field = Field::prime(7).unwrap();
    let split = SectionMatrix::from_i64(field, [[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
    let r = count_hyperplane_section(&split).unwrap();
    assert_eq!(r.on_hyperplane, 78);
    assert_eq!(r.on_hyperplane, 49 + 4 * 7 + 1, "split type a is q^2+4q+1");
    assert!(r.matches());

    let line = SectionMatrix::from_i64(field, [[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
    let r = count_hyperplane_section(&line).unwrap();
    assert_eq!(r.on_hyperplane, 120);
    assert_eq!(r.on_hyperplane, (7 + 1) * (2 * 7 + 1), "the type-d witness is (q+1)(2q+1)");
    assert!(r.matches());

    pass(
        4,
        "enumerated |H ∩ F| = q^2+q+1+qN on 97656 F_5 classes and 10000 F_7 classes; \
         witnesses give 78 = q^2+4q+1 and 120 = (q+1)(2q+1) at q = 7",
    );
}

#[test]
fn criterion_5_minor_algebra_invariants() {
    let mut rng = SplitMix64::new(42);
    let f7 = Field::prime(7).unwrap();
    for i in 0..10_000 {
        let (a, shift) = if i % 2 == 0 {
            let a = random_section(&mut rng, f7, 7, 0);
            let shift = f7.from_i64(rng.below(7) as i64);
            (a, shift)
        } else {
            let a = random_section(&mut rng, Field::Rational, 13, -6);
            let shift = Field::Rational
                .from_ratio(rng.below(13) as i64 - 6, 3)
                .unwrap();
            (a, shift)
        };
        let minors = minors_ideal(&a).unwrap();
        assert!(minors.syzygy_residual().is_zero(), "syzygy failed for [{}]", a.render());
        assert!(minors.span_rank() >= 2, "span rank < 2 for [{}]", a.render());
        let shifted = minors_ideal(&a.shift_identity(&shift)).unwrap();
        assert_eq!(minors, shifted, "identity shift moved the minors of [{}]", a.render());
    }
    pass(
        5,
        "X·q23 − Y·q13 + Z·q12 = 0, span rank ≥ 2, and shift-invariant minors \
         on 10000 random sections over F_7 and Q",
    );
}

#[test]
fn criterion_6_hilbert_function_dichotomy() {
    let field = Field::prime(7).unwrap();
    let witnesses: [([[i64; 3]; 3], char); 5] = [
        ([[1, 0, 0], [0, 2, 0], [0, 0, 3]], 'a'),
        ([[0, 1, 0], [0, 0, 0], [0, 0, 1]], 'b'),
        ([[0, 1, 0], [0, 0, 1], [0, 0, 0]], 'c'),
        ([[1, 0, 0], [0, 0, 0], [0, 0, 1]], 'd'),
        ([[0, 1, 0], [0, 0, 0], [0, 0, 0]], 'e'),
    ];
    for (rows, letter) in witnesses {
        let a = SectionMatrix::from_i64(field, rows);
        assert_eq!(classify_section(&a).unwrap().scheme_type.letter(), letter);
        let oracle = oracle_classify(&a).unwrap();
        let expected: Vec<usize> = if matches!(letter, 'a' | 'b' | 'c') {
            vec![1, 3, 3, 3, 3, 3]
        } else {
            vec![1, 3, 4, 5, 6, 7]
        };
        assert_eq!(
            oracle.hilbert, expected,
            "hilbert function of the type-{letter} witness"
        );
    }
    pass(
        6,
        "hilbert function is (1,3,3,3,3,3) for the finite types a/b/c and \
         (1,3,4,5,6,7) for the line types d/e on all five canonical witnesses",
    );
}

#[test]
fn criterion_7_correspondence_round_trip() {
    let mut rng = SplitMix64::new(42);
    for field in [Field::Rational, Field::prime(7).unwrap()] {
        for _ in 0..10_000 {
            let a = match field.order() {
                None => random_section(&mut rng, field, 13, -6),
                Some(q) => random_section(&mut rng, field, q, 0),
            };
            let h = section_to_hyperplane(&a).unwrap();
            let b = hyperplane_to_section(&h);
            let again = section_to_hyperplane(&b).unwrap();
            assert_eq!(
                again.normalized().coords(),
                h.normalized().coords(),
                "round trip moved the hyperplane of [{}]",
                a.render()
            );
        }
    }

    let f5 = Field::prime(5).unwrap();
    let flags = enumerate_flags(&f5.finite_field().unwrap()).unwrap();
    assert_eq!(flags.len(), 186);
    for _ in 0..25 {
        let a = random_section(&mut rng, f5, 5, 0);
        for c in 0..5 {
            let shifted = a.shift_identity(&f5.from_i64(c));
            for flag in &flags {
                assert_eq!(
                    evaluate_section_at_flag(&a, flag).unwrap(),
                    evaluate_section_at_flag(&shifted, flag).unwrap(),
                    "identity shift changed a flag pairing of [{}]",
                    a.render()
                );
            }
        }
    }
    pass(
        7,
        "section ↔ hyperplane round-trips exactly on 10000 sections over Q and \
         10000 over F_7; flag pairings are identity-shift invariant at all 186 \
         flags of F_5 for 25 sections × 5 shifts",
    );
}

#[test]
fn criterion_8_adjudicated_examples() {
    // Two sections whose printed classifications circulate with other labels:
    // the artifact derives the minors from the defining formula, classifies
    // both as type c, and confirms through the full-depth oracle.
    let nilpotent_rows: [[i64; 3]; 3] = [[0, 1, 0], [0, 0, 1], [0, 0, 0]];
    let shifted_rows: [[i64; 3]; 3] = [[0, 0, 1], [1, 0, 1], [0, 0, 0]];

    // Minors by formula for (Z, Z+X, 0): q12 = X^2 + XZ - YZ, q13 = -Z^2,
    // q23 = -Z^2 - XZ.
    let q = Field::Rational;
    let term = |c: i64, e: Exps| (q.from_i64(c), e);
    let minors = minors_ideal(&SectionMatrix::from_i64(q, shifted_rows)).unwrap();
    assert_eq!(
        minors.q12,
        HomPoly::from_terms(q, 2, &[term(1, (2, 0, 0)), term(1, (1, 0, 1)), term(-1, (0, 1, 1))])
    );
    assert_eq!(minors.q13, HomPoly::from_terms(q, 2, &[term(-1, (0, 0, 2))]));
    assert_eq!(
        minors.q23,
        HomPoly::from_terms(q, 2, &[term(-1, (0, 0, 2)), term(-1, (1, 0, 1))])
    );

    for rows in [nilpotent_rows, shifted_rows] {
        for field in [Field::Rational, Field::prime(5).unwrap(), Field::prime(7).unwrap()] {
            let a = SectionMatrix::from_i64(field, rows);
            let r = classify_section(&a).unwrap();
            assert_eq!(r.scheme_type.letter(), 'c', "[{}] over {field:?}", a.render());
            assert_eq!(r.points.len(), 1);
            assert_eq!(r.points[0].1, 3, "triple point multiplicity");

            if let Some(p) = field.order() {
                let oracle = oracle_classify(&a).unwrap();
                assert!(
                    matches!(&oracle.outcome, OracleOutcome::Type(t) if t.letter() == 'c'),
                    "oracle over F_{p} returned {}",
                    oracle.outcome
                );
                assert_eq!(oracle.hilbert, vec![1, 3, 3, 3, 3, 3]);
                // Extension-field point counts stabilize at the single
                // triple point.
                for k in 1..=3u8 {
                    assert_eq!(oracle.point_counts.get(&k), Some(&1), "count at depth {k}");
                }
            }
        }
    }
    pass(
        8,
        "(Y,Z,0) and (Z,Z+X,0) both classify as type c (one triple point) with \
         formula-derived minors, hilbert (1,3,3,3,3,3), and point counts pinned \
         at 1 over F_5 and F_7 through depth 3",
    );
}
