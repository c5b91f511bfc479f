//! Buchberger's algorithm for homogeneous ideals in `X, Y, Z`.
//!
//! Everything runs under the crate-wide grevlex order with `X > Y > Z`. The
//! basis returned by [`groebner_basis`] is the reduced basis: minimal,
//! interreduced, monic, and sorted by (degree, leading monomial), which makes
//! it a canonical invariant of the ideal. S-polynomial degrees are capped at
//! [`MAX_DEGREE`](super::MAX_DEGREE); for the quadric ideals produced in this
//! crate the computation stays far below the cap, so hitting it signals bad
//! input rather than a deep computation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{
    divides, exp_add, exp_lcm, exp_sub, exponents_in_order, Exps, HomPoly, MAX_DEGREE,
};
use crate::error::{Error, Result};

fn coprime(a: Exps, b: Exps) -> bool {
    a.0.min(b.0) == 0 && a.1.min(b.1) == 0 && a.2.min(b.2) == 0
}

fn lcm_degree(a: Exps, b: Exps) -> usize {
    let l = exp_lcm(a, b);
    l.0 + l.1 + l.2
}

/// Fully reduce `p` modulo the nonzero elements of `basis`: the result has
/// no term divisible by any leading monomial of the basis. When `basis` is a
/// Groebner basis this is the canonical normal form, and `p` lies in the
/// ideal iff the result is zero.
pub fn normal_form(p: &HomPoly, basis: &[HomPoly]) -> HomPoly {
    let reducers: Vec<(Exps, crate::exactalg::FieldElem, &HomPoly)> = basis
        .iter()
        .filter_map(|g| {
            g.leading()
                .map(|(_, e, lc)| (e, lc.inv().expect("nonzero leading coefficient"), g))
        })
        .collect();
    let mut out = p.clone();
    let exps = exponents_in_order(p.degree());
    let mut i = 0;
    'scan: while i < out.coeffs.len() {
        if out.coeffs[i].is_zero() {
            i += 1;
            continue;
        }
        for (le, lc_inv, g) in &reducers {
            if divides(*le, exps[i]) {
                let m = exp_sub(exps[i], *le);
                let c = &out.coeffs[i] * lc_inv;
                for (ge, gc) in g.terms() {
                    let idx = super::monomial_index(exp_add(ge, m));
                    out.coeffs[idx] = &out.coeffs[idx] - &(&c * gc);
                }
                debug_assert!(out.coeffs[i].is_zero());
                // Reduction only disturbs strictly smaller monomials, so the
                // scan never needs to back up.
                continue 'scan;
            }
        }
        i += 1;
    }
    out
}

/// The S-polynomial of two nonzero polynomials.
pub fn spoly(f: &HomPoly, g: &HomPoly) -> Result<HomPoly> {
    let (_, ef, lcf) = f.leading().ok_or(Error::EmptyGenerators)?;
    let (_, eg, lcg) = g.leading().ok_or(Error::EmptyGenerators)?;
    let l = exp_lcm(ef, eg);
    let deg = l.0 + l.1 + l.2;
    if deg > MAX_DEGREE {
        return Err(Error::DegreeCapExceeded(deg));
    }
    let a = f.mul_monomial(exp_sub(l, ef), &lcf.inv()?);
    let b = g.mul_monomial(exp_sub(l, eg), &lcg.inv()?);
    Ok(a.sub(&b))
}

/// The reduced Groebner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[HomPoly]) -> Result<Vec<HomPoly>> {
    let mut basis: Vec<HomPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let lead = |g: &HomPoly| g.leading().expect("basis elements nonzero").1;

    let mut pairs: BinaryHeap<Reverse<(usize, usize, usize)>> = BinaryHeap::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Reverse((lcm_degree(lead(&basis[i]), lead(&basis[j])), i, j)));
        }
    }
    while let Some(Reverse((_, i, j))) = pairs.pop() {
        if coprime(lead(&basis[i]), lead(&basis[j])) {
            continue;
        }
        let s = spoly(&basis[i], &basis[j])?;
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let new = basis.len();
            for i in 0..new {
                pairs.push(Reverse((lcm_degree(lead(&basis[i]), lead(&r)), i, new)));
            }
            basis.push(r);
        }
    }

    // Minimal generators: drop anything whose lead another lead divides.
    basis.sort_by_key(|g| {
        let (idx, _, _) = g.leading().expect("nonzero");
        (g.degree(), idx)
    });
    let mut minimal: Vec<HomPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(lead(h), lead(&g))) {
            minimal.push(g);
        }
    }

    // Interreduce tails and normalize.
    let reduced: Vec<HomPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<HomPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&minimal[i], &others)
                .monic()
                .expect("lead survives interreduction")
        })
        .collect();
    Ok(reduced)
}

/// Check the Buchberger criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[HomPoly]) -> Result<bool> {
    let els: Vec<&HomPoly> = basis.iter().filter(|g| !g.is_zero()).collect();
    for i in 0..els.len() {
        for j in (i + 1)..els.len() {
            let s = spoly(els[i], els[j])?;
            if !normal_form(&s, basis).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Values of the Hilbert function of the quotient ring in degrees
/// `0..=d_max`, computed by counting standard monomials (monomials outside
/// the leading-term ideal). Correct when `basis` is a Groebner basis.
pub fn hilbert_function(basis: &[HomPoly], d_max: usize) -> Vec<usize> {
    let leads: Vec<Exps> = basis
        .iter()
        .filter_map(|g| g.leading().map(|(_, e, _)| e))
        .collect();
    (0..=d_max)
        .map(|d| {
            exponents_in_order(d)
                .into_iter()
                .filter(|e| !leads.iter().any(|l| divides(*l, *e)))
                .count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::minors_ideal;
    use super::*;
    use crate::exactalg::Field;
    use crate::sections::SectionMatrix;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn gb_strings(gens: &[HomPoly]) -> Vec<String> {
        groebner_basis(gens)
            .unwrap()
            .iter()
            .map(HomPoly::to_string)
            .collect()
    }

    fn minor_gens(field: Field, rows: [[i64; 3]; 3]) -> Vec<HomPoly> {
        minors_ideal(&SectionMatrix::from_i64(field, rows))
            .unwrap()
            .gens()
            .map(Clone::clone)
            .to_vec()
    }

    #[test]
    fn reduced_basis_of_single_point_scheme() {
        // Minors of (Y, Z, 0).
        for (field, first) in [(q(), "Y^2 - X*Z"), (f7(), "Y^2 + 6*X*Z")] {
            let gens = minor_gens(field, [[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
            let gb = groebner_basis(&gens).unwrap();
            assert_eq!(
                gb.iter().map(HomPoly::to_string).collect::<Vec<_>>(),
                [first, "Y*Z", "Z^2"]
            );
            assert!(is_groebner_basis(&gb).unwrap());
            assert_eq!(hilbert_function(&gb, 5), [1, 3, 3, 3, 3, 3]);

            // Ideal membership through the normal form.
            for g in &gens {
                assert!(normal_form(g, &gb).is_zero());
            }
            let y3 = HomPoly::from_terms(field, 3, &[(field.one(), (0, 3, 0))]);
            assert!(normal_form(&y3, &gb).is_zero());
            let x3 = HomPoly::from_terms(field, 3, &[(field.one(), (3, 0, 0))]);
            assert!(!normal_form(&x3, &gb).is_zero());
        }
    }

    #[test]
    fn monomial_ideals_are_their_own_basis() {
        // Minors of diag(1, 2, 3) span (XY, XZ, YZ).
        let gens = minor_gens(q(), [[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        assert_eq!(gb_strings(&gens), ["X*Y", "X*Z", "Y*Z"]);
        let gb = groebner_basis(&gens).unwrap();
        assert_eq!(hilbert_function(&gb, 5), [1, 3, 3, 3, 3, 3]);

        // Minors of (X, 0, Z) span (XY, YZ): a conic of solutions.
        let gens = minor_gens(q(), [[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        assert_eq!(gb_strings(&gens), ["X*Y", "Y*Z"]);
        let gb = groebner_basis(&gens).unwrap();
        assert_eq!(hilbert_function(&gb, 5), [1, 3, 4, 5, 6, 7]);

        // Minors of (Y, 0, 0) span (Y^2, YZ).
        let gens = minor_gens(q(), [[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        assert_eq!(gb_strings(&gens), ["Y^2", "Y*Z"]);
        let gb = groebner_basis(&gens).unwrap();
        assert_eq!(hilbert_function(&gb, 5), [1, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn buchberger_finds_the_missing_element() {
        // (Y^2 - XZ, YZ) needs XZ^2; the pair (Y^2 - XZ, XZ^2) is skipped by
        // the product criterion and the basis still closes.
        let field = q();
        let one = field.one();
        let g1 = HomPoly::from_terms(field, 2, &[(one.clone(), (0, 2, 0)), (field.from_i64(-1), (1, 0, 1))]);
        let g2 = HomPoly::from_terms(field, 2, &[(one.clone(), (0, 1, 1))]);
        assert!(!is_groebner_basis(&[g1.clone(), g2.clone()]).unwrap());
        let gb = groebner_basis(&[g1, g2]).unwrap();
        assert_eq!(
            gb.iter().map(HomPoly::to_string).collect::<Vec<_>>(),
            ["Y^2 - X*Z", "Y*Z", "X*Z^2"]
        );
        assert!(is_groebner_basis(&gb).unwrap());
        // Conic meets a degenerate conic in a length-4 scheme.
        assert_eq!(hilbert_function(&gb, 5), [1, 3, 4, 4, 4, 4]);
    }

    #[test]
    fn degree_cap_is_reported() {
        let field = q();
        let one = field.one();
        let f = HomPoly::from_terms(field, 8, &[(one.clone(), (7, 1, 0))]);
        let g = HomPoly::from_terms(field, 8, &[(one.clone(), (1, 7, 0))]);
        match groebner_basis(&[f, g]) {
            Err(Error::DegreeCapExceeded(d)) => assert_eq!(d, 14),
            other => panic!("expected degree cap error, got {other:?}"),
        }
    }

    #[test]
    fn normal_form_with_empty_basis_is_identity() {
        let field = f7();
        let p = HomPoly::from_terms(field, 2, &[(field.from_i64(3), (1, 1, 0))]);
        assert_eq!(normal_form(&p, &[]), p);
        assert_eq!(hilbert_function(&[], 4), [1, 3, 6, 10, 15]);
        assert!(groebner_basis(&[]).is_err());
    }

    fn random_quadric(field: Field) -> impl Strategy<Value = HomPoly> {
        proptest::collection::vec(-6i64..=6, 6).prop_map(move |v| {
            HomPoly::new(field, 2, v.into_iter().map(|c| field.from_i64(c)).collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// The reduced basis is canonical: generator order cannot matter.
        #[test]
        fn basis_is_order_independent(
            a in random_quadric(f7()),
            b in random_quadric(f7()),
            c in random_quadric(f7()),
        ) {
            prop_assume!(!a.is_zero() || !b.is_zero() || !c.is_zero());
            let forward = groebner_basis(&[a.clone(), b.clone(), c.clone()]).unwrap();
            let backward = groebner_basis(&[c, b, a]).unwrap();
            prop_assert_eq!(forward, backward);
        }

        /// Outputs satisfy the Buchberger criterion and contain the input.
        #[test]
        fn basis_is_groebner_and_contains_gens(
            a in random_quadric(f7()),
            b in random_quadric(f7()),
        ) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let gb = groebner_basis(&[a.clone(), b.clone()]).unwrap();
            prop_assert!(is_groebner_basis(&gb).unwrap());
            prop_assert!(normal_form(&a, &gb).is_zero());
            prop_assert!(normal_form(&b, &gb).is_zero());
        }

        /// Normal forms modulo a Groebner basis are linear.
        #[test]
        fn normal_form_is_linear(
            a in random_quadric(f7()),
            b in random_quadric(f7()),
        ) {
            let gens = minor_gens(f7(), [[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
            let gb = groebner_basis(&gens).unwrap();
            let lhs = normal_form(&a.add(&b), &gb);
            let rhs = normal_form(&a, &gb).add(&normal_form(&b, &gb));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
