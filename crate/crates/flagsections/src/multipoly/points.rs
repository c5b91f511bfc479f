//! Projective point enumeration and vanishing-locus counting over finite
//! fields.
//!
//! Points of `P^2(F_q)` are listed by canonical representatives whose first
//! nonzero coordinate is 1, in the three shapes `(1 : a : b)`, `(0 : 1 : c)`,
//! `(0 : 0 : 1)`. Enumeration refuses fields with more than
//! [`ENUM_CAP`](crate::exactalg::ENUM_CAP) points.

use super::{HomPoly, ProjPoint};
use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, FiniteElem, FiniteField, ENUM_CAP};

/// `q^2 + q + 1` without overflow.
pub fn proj_point_count(f: &FiniteField) -> u128 {
    let q = f.order() as u128;
    q * q + q + 1
}

/// Canonical coordinate triples of every point of `P^2(F_q)`.
pub fn proj_points(f: &FiniteField) -> Result<Vec<[FiniteElem; 3]>> {
    let n = proj_point_count(f);
    if n > ENUM_CAP as u128 {
        return Err(Error::EnumerationTooLarge(n));
    }
    let (zero, one) = (f.zero(), f.one());
    let mut out = Vec::with_capacity(n as usize);
    for a in f.elements() {
        for b in f.elements() {
            out.push([one, a, b]);
        }
    }
    for c in f.elements() {
        out.push([zero, one, c]);
    }
    out.push([zero, zero, one]);
    Ok(out)
}

/// A polynomial flattened to sparse terms for fast repeated evaluation.
struct CompiledPoly {
    terms: Vec<(FiniteElem, [usize; 3])>,
}

impl CompiledPoly {
    fn compile(p: &HomPoly, f: &FiniteField) -> Result<CompiledPoly> {
        match p.field() {
            Field::Rational => Err(Error::EnumerationNeedsFiniteField),
            Field::Finite(g) if g != *f => Err(Error::InvalidInput(
                "polynomial is not over the requested field".into(),
            )),
            Field::Finite(_) => Ok(CompiledPoly {
                terms: p
                    .terms()
                    .map(|(e, c)| {
                        (c.as_finite().expect("finite coefficient"), [e.0, e.1, e.2])
                    })
                    .collect(),
            }),
        }
    }

    fn eval_at(&self, pows: &[Vec<FiniteElem>; 3]) -> FiniteElem {
        let mut acc = pows[0][0].field().zero();
        for (c, e) in &self.terms {
            let t = c.mul(&pows[0][e[0]]).mul(&pows[1][e[1]]).mul(&pows[2][e[2]]);
            acc = acc.add(&t);
        }
        acc
    }
}

fn common_zeros(
    gens: &[HomPoly],
    f: &FiniteField,
) -> Result<impl Iterator<Item = [FiniteElem; 3]>> {
    let compiled: Vec<CompiledPoly> = gens
        .iter()
        .map(|g| CompiledPoly::compile(g, f))
        .collect::<Result<_>>()?;
    let max_deg = gens.iter().map(HomPoly::degree).max().unwrap_or(0);
    let points = proj_points(f)?;
    Ok(points.into_iter().filter(move |p| {
        let pows: [Vec<FiniteElem>; 3] = std::array::from_fn(|i| {
            let mut t = Vec::with_capacity(max_deg + 1);
            t.push(p[i].field().one());
            for n in 0..max_deg {
                t.push(t[n].mul(&p[i]));
            }
            t
        });
        compiled.iter().all(|c| c.eval_at(&pows).is_zero())
    }))
}

/// All points of `P^2(F_q)` where every generator vanishes, sorted
/// canonically.
pub fn vanishing_points(gens: &[HomPoly], f: &FiniteField) -> Result<Vec<ProjPoint>> {
    let mut out: Vec<ProjPoint> = common_zeros(gens, f)?
        .map(|p| {
            ProjPoint::new(std::array::from_fn(|i| FieldElem::Finite(p[i])))
                .expect("enumerated points are nonzero")
        })
        .collect();
    out.sort_by(ProjPoint::cmp_canonical);
    Ok(out)
}

/// Number of points of `P^2(F_q)` where every generator vanishes.
pub fn count_vanishing_points(gens: &[HomPoly], f: &FiniteField) -> Result<usize> {
    Ok(common_zeros(gens, f)?.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::minors_ideal;
    use crate::sections::SectionMatrix;

    fn prime(p: u64) -> FiniteField {
        FiniteField::prime_field(p).unwrap()
    }

    fn ext(p: u64, k: u8) -> FiniteField {
        FiniteField::extension(p, k).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(proj_points(&prime(5)).unwrap().len(), 31);
        assert_eq!(proj_points(&prime(7)).unwrap().len(), 57);
        assert_eq!(proj_points(&ext(5, 2)).unwrap().len(), 651);
        assert_eq!(proj_points(&ext(7, 2)).unwrap().len(), 2451);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let f = prime(4099);
        match proj_points(&f) {
            Err(Error::EnumerationTooLarge(n)) => assert_eq!(n, 4099 * 4099 + 4099 + 1),
            other => panic!("expected enumeration cap error, got {:?}", other.map(|v| v.len())),
        }
    }

    #[test]
    fn points_are_distinct_and_normalized() {
        let f = ext(5, 2);
        let pts = proj_points(&f).unwrap();
        assert_eq!(pts.len(), 651);
        let as_proj: Vec<ProjPoint> = pts
            .iter()
            .map(|p| ProjPoint::new(std::array::from_fn(|i| FieldElem::Finite(p[i]))).unwrap())
            .collect();
        for (raw, normalized) in pts.iter().zip(&as_proj) {
            for i in 0..3 {
                assert_eq!(FieldElem::Finite(raw[i]), normalized.coords()[i]);
            }
        }
        let mut sorted = as_proj.clone();
        sorted.sort_by(ProjPoint::cmp_canonical);
        sorted.dedup();
        assert_eq!(sorted.len(), 651);
    }

    #[test]
    fn vanishing_loci_of_minor_ideals() {
        // diag(1, 2, 3): exactly the three coordinate points.
        let f7 = prime(7);
        let a = SectionMatrix::from_i64(Field::Finite(f7), [[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        let gens = minors_ideal(&a).unwrap().nonzero_gens();
        let pts = vanishing_points(&gens, &f7).unwrap();
        let strings: Vec<String> = pts.iter().map(ProjPoint::to_string).collect();
        assert_eq!(strings, ["(0 : 0 : 1)", "(0 : 1 : 0)", "(1 : 0 : 0)"]);

        // (Y, Z, 0): the single point (1 : 0 : 0) over every field.
        for f in [prime(5), prime(7), ext(5, 2), ext(5, 3)] {
            let a = SectionMatrix::from_i64(Field::Finite(f), [[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
            let gens = minors_ideal(&a).unwrap().nonzero_gens();
            let pts = vanishing_points(&gens, &f).unwrap();
            assert_eq!(pts.len(), 1, "over order {}", f.order());
            assert_eq!(pts[0].to_string(), "(1 : 0 : 0)");
        }
    }

    #[test]
    fn line_plus_point_counts_grow_with_the_field() {
        // Minors of (X, 0, Z) cut out {Y = 0} union {(0 : 1 : 0)}:
        // q + 2 points over F_q.
        let base = prime(5);
        let a = SectionMatrix::from_i64(Field::Finite(base), [[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        let gens_base = minors_ideal(&a).unwrap().nonzero_gens();
        assert_eq!(count_vanishing_points(&gens_base, &base).unwrap(), 7);
        for k in [2u8, 3] {
            let e = ext(5, k);
            let lifted: Vec<HomPoly> = gens_base
                .iter()
                .map(|g| g.lift_to_ext(&e).unwrap())
                .collect();
            let expected = 5u64.pow(k as u32) as usize + 2;
            assert_eq!(count_vanishing_points(&lifted, &e).unwrap(), expected);
        }

        // Minors of (Y, 0, 0) cut out {Y = 0} with an embedded point:
        // q + 1 rational points.
        let a = SectionMatrix::from_i64(Field::Finite(base), [[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        let gens = minors_ideal(&a).unwrap().nonzero_gens();
        assert_eq!(count_vanishing_points(&gens, &base).unwrap(), 6);
        let lifted: Vec<HomPoly> = gens
            .iter()
            .map(|g| g.lift_to_ext(&ext(5, 2)).unwrap())
            .collect();
        assert_eq!(count_vanishing_points(&lifted, &ext(5, 2)).unwrap(), 26);
    }

    #[test]
    fn degenerate_conic_pair_count() {
        // XY = YZ = 0 is the line Y = 0 plus the point (0 : 1 : 0).
        let f = ext(5, 2);
        let field = Field::Finite(f);
        let one = field.one();
        let xy = HomPoly::from_terms(field, 2, &[(one.clone(), (1, 1, 0))]);
        let yz = HomPoly::from_terms(field, 2, &[(one.clone(), (0, 1, 1))]);
        assert_eq!(count_vanishing_points(&[xy, yz], &f).unwrap(), 27);
    }
}
