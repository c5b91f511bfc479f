//! Brute-force point counts on the flag threefold and verification sweeps.
//!
//! The flag threefold sits in `P^2 x P^2` as the pairs (point, line) with
//! the point on the line, so it has `(q^2 + q + 1)(q + 1)` points over
//! `F_q`. A section pairs with a flag through `sum A_ij a_i b_j`, which is
//! insensitive to shifting `A` by a multiple of the identity because the
//! incidence relation kills `sum a_i b_i`. The hyperplane section it cuts
//! satisfies the count identity
//!
//! ```text
//! |H ∩ F|(F_q) = q^2 + q + 1 + q * N
//! ```
//!
//! where `N` is the number of rational points of the reduced zero locus of
//! the section. [`sweep_verify`] grinds this identity, the eigenstructure
//! classifier, and the ideal oracle against each other over entire fields
//! (exhaustively over all `(q^8 - 1)/(q - 1)` section classes, or on seeded
//! random samples) and reports any divergence.

use std::collections::BTreeMap;

use crate::classify::{classify_section, verdict};
use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, FiniteElem, FiniteField, ENUM_CAP};
use crate::multipoly::oracle::{oracle_classify_bounded, OracleOutcome};
use crate::multipoly::points::{count_vanishing_points, proj_points};
use crate::multipoly::minors_ideal;
use crate::sections::{hyperplane_to_section, HyperplaneP7, SectionMatrix};

/// A point of the flag threefold: a point of `P^2` on a line of the dual
/// plane, both in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagPoint {
    pub point: [FiniteElem; 3],
    pub line: [FiniteElem; 3],
}

fn incidence(a: &[FiniteElem; 3], b: &[FiniteElem; 3]) -> FiniteElem {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

/// `(q^2 + q + 1)(q + 1)` without overflow.
pub fn flag_count(f: &FiniteField) -> u128 {
    let q = f.order() as u128;
    (q * q + q + 1) * (q + 1)
}

/// Every point of the flag threefold over `F_q`, point-major.
pub fn enumerate_flags(f: &FiniteField) -> Result<Vec<FlagPoint>> {
    let n = flag_count(f);
    if n > ENUM_CAP as u128 {
        return Err(Error::EnumerationTooLarge(n));
    }
    let pts = proj_points(f)?;
    let mut flags = Vec::with_capacity(n as usize);
    for a in &pts {
        for b in &pts {
            if incidence(a, b).is_zero() {
                flags.push(FlagPoint { point: *a, line: *b });
            }
        }
    }
    debug_assert_eq!(flags.len() as u128, n);
    Ok(flags)
}

/// Pair a section with a flag: `sum A_ij a_i b_j`. The flag must satisfy
/// the incidence relation and live over the section's field.
pub fn evaluate_section_at_flag(a: &SectionMatrix, flag: &FlagPoint) -> Result<FieldElem> {
    let Field::Finite(f) = a.field() else {
        return Err(Error::EnumerationNeedsFiniteField);
    };
    if flag.point[0].field() != f {
        return Err(Error::InvalidInput("flag is over a different field".into()));
    }
    if !incidence(&flag.point, &flag.line).is_zero() {
        return Err(Error::IncidenceViolated);
    }
    let m = a.matrix();
    let mut acc = f.zero();
    for i in 0..3 {
        for j in 0..3 {
            let entry = m.get(i, j).as_finite().expect("finite entry");
            acc = acc.add(&entry.mul(&flag.point[i].mul(&flag.line[j])));
        }
    }
    Ok(FieldElem::Finite(acc))
}

/// The two sides of the count identity for one section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub q: u64,
    pub flags_total: u64,
    /// Flags where the section pairing vanishes, found by enumeration.
    pub on_hyperplane: u64,
    /// Rational points of the reduced zero locus, found by enumeration.
    pub reduced_points: u64,
    /// `q^2 + q + 1 + q * reduced_points`.
    pub predicted: u64,
}

impl CountReport {
    pub fn matches(&self) -> bool {
        self.on_hyperplane == self.predicted
    }
}

/// Count the hyperplane section of the flag threefold cut out by a section,
/// and compare with the prediction from the zero locus.
pub fn count_hyperplane_section(a: &SectionMatrix) -> Result<CountReport> {
    let Field::Finite(f) = a.field() else {
        return Err(Error::EnumerationNeedsFiniteField);
    };
    let gens = minors_ideal(a)?.nonzero_gens();
    let flags = enumerate_flags(&f)?;
    let mut on = 0u64;
    for flag in &flags {
        if evaluate_section_at_flag(a, flag)?.is_zero() {
            on += 1;
        }
    }
    let n = count_vanishing_points(&gens, &f)? as u64;
    let q = f.order();
    Ok(CountReport {
        q,
        flags_total: flags.len() as u64,
        on_hyperplane: on,
        reduced_points: n,
        predicted: q * q + q + 1 + q * n,
    })
}

/// SplitMix64: a tiny, well-studied generator. Deterministic across
/// platforms, which is all the sweeps need.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// How a sweep picks its sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Every section class, i.e. every point of the dual `P^7`.
    Exhaustive,
    /// A seeded uniform sample of section classes.
    Sample { count: u64 },
}

/// Result of a verification sweep.
#[derive(Clone, Debug)]
pub struct SweepSummary {
    pub q: u64,
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub classes: u64,
    /// Type letter -> number of classes of that type.
    pub tallies: BTreeMap<char, u64>,
    /// Classes where the ideal oracle agreed with the classifier.
    pub oracle_agreements: u64,
    /// Classes where the enumerated hyperplane-section size matched the
    /// count identity.
    pub count_matches: u64,
    /// Human-readable divergence records (capped at [`MAX_FAILURES`]).
    pub failures: Vec<String>,
}

/// Cap on stored failure records so a systematic divergence cannot eat the
/// heap; the counters above stay exact regardless.
pub const MAX_FAILURES: usize = 32;

struct FlagTable {
    p: u64,
    products: Vec<[u64; 9]>,
}

impl FlagTable {
    fn build(f: &FiniteField) -> Result<FlagTable> {
        let flags = enumerate_flags(f)?;
        let products = flags
            .iter()
            .map(|fl| {
                std::array::from_fn(|n| {
                    fl.point[n / 3].mul(&fl.line[n % 3]).coeffs()[0]
                })
            })
            .collect();
        Ok(FlagTable { p: f.p(), products })
    }

    fn section_raw(a: &SectionMatrix) -> [u64; 9] {
        let m = a.matrix();
        std::array::from_fn(|n| m.get(n / 3, n % 3).as_finite().expect("finite entry").coeffs()[0])
    }

    /// Number of flags where the pairing vanishes. Entries stay below
    /// `2^21`, so nine products of two of them fit a `u64` sum.
    fn count_zero(&self, raw: &[u64; 9]) -> u64 {
        let mut on = 0;
        for prod in &self.products {
            let mut acc = 0u64;
            for k in 0..9 {
                acc += raw[k] * prod[k];
            }
            if acc % self.p == 0 {
                on += 1;
            }
        }
        on
    }
}

fn class_section(f: &FiniteField, coords: &[u64; 8]) -> SectionMatrix {
    let h = HyperplaneP7::new(std::array::from_fn(|i| {
        FieldElem::Finite(f.from_u64(coords[i]))
    }))
    .expect("class coordinates are nonzero");
    hyperplane_to_section(&h)
}

fn check_class(
    sec: &SectionMatrix,
    table: &FlagTable,
    q: u64,
    summary: &mut SweepSummary,
) -> Result<()> {
    let report = classify_section(sec)?;
    let letter = report.scheme_type.letter();
    *summary.tallies.entry(letter).or_insert(0) += 1;
    summary.classes += 1;

    let fail = |summary: &mut SweepSummary, msg: String| {
        if summary.failures.len() < MAX_FAILURES {
            summary.failures.push(msg);
        }
    };

    let oracle = oracle_classify_bounded(sec, 2)?;
    match &oracle.outcome {
        OracleOutcome::Type(t) if t.letter() == letter => summary.oracle_agreements += 1,
        other => fail(
            summary,
            format!(
                "section [{}]: classifier found type {letter}, oracle said {other}",
                sec.render()
            ),
        ),
    }

    let n1 = *oracle.point_counts.get(&1).expect("depth-one count always present");
    let v = verdict(&report);
    if v.reduced_points != Some(n1 as u128) {
        fail(
            summary,
            format!(
                "section [{}]: verdict predicts {:?} reduced points, enumeration found {n1}",
                sec.render(),
                v.reduced_points
            ),
        );
    }

    let on_h = table.count_zero(&FlagTable::section_raw(sec));
    let predicted = q * q + q + 1 + q * n1;
    if on_h == predicted {
        summary.count_matches += 1;
    } else {
        fail(
            summary,
            format!(
                "section [{}]: {on_h} flags on the hyperplane, identity predicts {predicted}",
                sec.render()
            ),
        );
    }
    Ok(())
}

/// Run the classifier, the ideal oracle, and the count identity against
/// each other over a prime field. `seed` matters only for sampling.
pub fn sweep_verify(f: &FiniteField, mode: SweepMode, seed: u64) -> Result<SweepSummary> {
    if f.k() != 1 {
        return Err(Error::InvalidInput("sweeps run over prime fields".into()));
    }
    let q = f.order();
    let table = FlagTable::build(f)?;
    let mut summary = SweepSummary {
        q,
        exhaustive: mode == SweepMode::Exhaustive,
        seed: match mode {
            SweepMode::Exhaustive => None,
            SweepMode::Sample { .. } => Some(seed),
        },
        classes: 0,
        tallies: BTreeMap::new(),
        oracle_agreements: 0,
        count_matches: 0,
        failures: Vec::new(),
    };

    match mode {
        SweepMode::Exhaustive => {
            let total = ((q as u128).pow(8) - 1) / (q as u128 - 1);
            if total > ENUM_CAP as u128 {
                return Err(Error::EnumerationTooLarge(total));
            }
            for lead in 0..8usize {
                let tail = 7 - lead;
                let span = (q as u128).pow(tail as u32) as u64;
                for n in 0..span {
                    let mut coords = [0u64; 8];
                    coords[lead] = 1;
                    let mut rest = n;
                    for slot in coords.iter_mut().skip(lead + 1) {
                        *slot = rest % q;
                        rest /= q;
                    }
                    let sec = class_section(f, &coords);
                    check_class(&sec, &table, q, &mut summary)?;
                }
            }
        }
        SweepMode::Sample { count } => {
            let mut rng = SplitMix64::new(seed);
            for _ in 0..count {
                let coords = loop {
                    let c: [u64; 8] = std::array::from_fn(|_| rng.below(q));
                    if c.iter().any(|&v| v != 0) {
                        break c;
                    }
                };
                let sec = class_section(f, &coords);
                check_class(&sec, &table, q, &mut summary)?;
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> FiniteField {
        FiniteField::prime_field(p).unwrap()
    }

    fn field(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn flag_cardinalities() {
        assert_eq!(enumerate_flags(&prime(5)).unwrap().len(), 186);
        assert_eq!(enumerate_flags(&prime(7)).unwrap().len(), 456);
        assert_eq!(enumerate_flags(&prime(11)).unwrap().len(), 1596);
        for flag in enumerate_flags(&prime(5)).unwrap() {
            assert!(incidence(&flag.point, &flag.line).is_zero());
        }
    }

    #[test]
    fn pairing_ignores_identity_shifts() {
        let f = prime(5);
        let a = SectionMatrix::from_i64(field(5), [[1, 2, 0], [0, 3, 1], [4, 0, 2]]);
        let shifted = a.shift_identity(&field(5).from_i64(3));
        for flag in enumerate_flags(&f).unwrap() {
            assert_eq!(
                evaluate_section_at_flag(&a, &flag).unwrap(),
                evaluate_section_at_flag(&shifted, &flag).unwrap()
            );
        }
    }

    #[test]
    fn non_incident_pairs_are_rejected() {
        let f = prime(5);
        let bogus = FlagPoint {
            point: [f.one(), f.zero(), f.zero()],
            line: [f.one(), f.zero(), f.zero()],
        };
        let a = SectionMatrix::from_i64(field(5), [[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        assert!(matches!(
            evaluate_section_at_flag(&a, &bogus),
            Err(Error::IncidenceViolated)
        ));
    }

    #[test]
    fn count_identity_worked_examples_over_f7() {
        // Type a, split: N = 3, so 57 + 7 * 3 = 78.
        let a = SectionMatrix::from_i64(field(7), [[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        let r = count_hyperplane_section(&a).unwrap();
        assert_eq!((r.on_hyperplane, r.predicted, r.reduced_points), (78, 78, 3));
        assert!(r.matches());

        // Type d: N = q + 2 = 9, so 57 + 63 = 120.
        let a = SectionMatrix::from_i64(field(7), [[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        let r = count_hyperplane_section(&a).unwrap();
        assert_eq!((r.on_hyperplane, r.predicted, r.reduced_points), (120, 120, 9));

        // Type e: N = q + 1 = 8, so 57 + 56 = 113.
        let a = SectionMatrix::from_i64(field(7), [[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        let r = count_hyperplane_section(&a).unwrap();
        assert_eq!((r.on_hyperplane, r.predicted, r.reduced_points), (113, 113, 8));

        // Conjugate pair: only one rational zero, 57 + 7 = 64.
        let a = SectionMatrix::from_i64(field(7), [[0, -1, 0], [1, 0, 0], [0, 0, 1]]);
        let r = count_hyperplane_section(&a).unwrap();
        assert_eq!((r.on_hyperplane, r.predicted, r.reduced_points), (64, 64, 1));
    }

    #[test]
    fn splitmix_reference_vectors() {
        let mut g = SplitMix64::new(42);
        assert_eq!(g.next_u64(), 0xbdd732262feb6e95);
        assert_eq!(g.next_u64(), 0x28efe333b266f103);
        assert_eq!(g.next_u64(), 0x47526757130f9f52);
        assert_eq!(g.next_u64(), 0x581ce1ff0e4ae394);
        let mut g = SplitMix64::new(0);
        assert_eq!(g.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(g.next_u64(), 0x6e789e6aa1b965f4);

        let mut g = SplitMix64::new(7);
        for _ in 0..100 {
            assert!(g.below(31) < 31);
        }
    }

    #[test]
    fn sampled_sweep_is_clean_and_deterministic() {
        let f = prime(5);
        let s1 = sweep_verify(&f, SweepMode::Sample { count: 150 }, 1).unwrap();
        assert_eq!(s1.classes, 150);
        assert_eq!(s1.oracle_agreements, 150);
        assert_eq!(s1.count_matches, 150);
        assert!(s1.failures.is_empty());
        assert_eq!(s1.tallies.values().sum::<u64>(), 150);

        let s2 = sweep_verify(&f, SweepMode::Sample { count: 150 }, 1).unwrap();
        assert_eq!(s1.tallies, s2.tallies);
        assert_eq!(s1.seed, Some(1));
    }

    #[test]
    fn sampled_sweep_over_f7() {
        let f = prime(7);
        let s = sweep_verify(&f, SweepMode::Sample { count: 80 }, 42).unwrap();
        assert_eq!(s.classes, 80);
        assert_eq!(s.oracle_agreements, 80);
        assert_eq!(s.count_matches, 80);
        assert!(s.failures.is_empty());
    }
}
