//! Dense univariate polynomials over a [`Field`], low-degree-first.
//!
//! Carries exactly the operations the eigenvalue analysis needs: ring
//! arithmetic, Euclidean division, monic gcd, derivative, evaluation, and
//! exact root extraction for degrees up to three.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, FiniteElem, FiniteField, ENUM_CAP};

/// Bounded divisor scan limit for cubic root extraction over `Q`.
const ROOT_SCAN_CAP: u64 = 1 << 22;

/// A univariate polynomial; `coeffs[i]` multiplies `x^i` and the top
/// coefficient is nonzero (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn from_coeffs(field: Field, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64_coeffs(field: Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElem::is_one)
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.field, rhs.field, "mixed fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        UniPoly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.field, rhs.field, "mixed fields");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        UniPoly::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::from_coeffs(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.field, rhs.field, "mixed fields");
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(self.field, coeffs)
    }

    pub fn mul_scalar(&self, c: &FieldElem) -> UniPoly {
        UniPoly::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: `self = q * den + r` with `deg r < deg den`.
    pub fn divmod(&self, den: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        assert_eq!(self.field, den.field, "mixed fields");
        let dd = den.degree().ok_or_else(|| {
            Error::InvalidInput("division by the zero polynomial".into())
        })?;
        let lead_inv = den.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let c = &rem.last().unwrap().clone() * &lead_inv;
            let shift = rem.len() - 1 - dd;
            if !c.is_zero() {
                quot[shift] = c.clone();
                for i in 0..=dd {
                    rem[i + shift] = &rem[i + shift] - &(&c * &den.coeffs[i]);
                }
            }
            rem.pop();
            while rem.last().is_some_and(FieldElem::is_zero) {
                rem.pop();
            }
        }
        Ok((
            UniPoly::from_coeffs(self.field, quot),
            UniPoly::from_coeffs(self.field, rem),
        ))
    }

    /// Scale so the leading coefficient is 1; fails on the zero polynomial.
    pub fn monic(&self) -> Result<UniPoly> {
        let lead = self.leading().ok_or(Error::GcdOfZero)?;
        Ok(self.mul_scalar(&lead.inv()?))
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.field.from_i64(i as i64) * c)
            .collect();
        UniPoly::from_coeffs(self.field, coeffs)
    }

    /// Monic greatest common divisor; `gcd(0, 0)` is an error.
    pub fn gcd_monic(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZero);
        }
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Roots in the coefficient field with multiplicities, sorted by the
    /// field's canonical order. Exact and complete for `deg <= 3`; cubic
    /// extraction over `Q` can fail with [`Error::RootSearchOverflow`] when
    /// coefficients exceed the bounded divisor scan.
    pub fn roots_with_multiplicity(&self) -> Result<Vec<(FieldElem, usize)>> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::InvalidInput("roots of the zero polynomial".into()))?;
        if deg == 0 {
            return Ok(Vec::new());
        }
        let distinct = match self.field {
            Field::Rational => self.monic()?.rational_roots()?,
            Field::Finite(f) => {
                if f.order() > ENUM_CAP {
                    return Err(Error::EnumerationTooLarge(f.order() as u128));
                }
                f.elements()
                    .filter(|x| self.eval(&FieldElem::Finite(*x)).is_zero())
                    .map(FieldElem::Finite)
                    .collect()
            }
        };
        let mut out = Vec::new();
        for r in distinct {
            let lin = UniPoly::from_coeffs(self.field, vec![-&r, self.field.one()]);
            let mut mult = 0;
            let mut rest = self.clone();
            loop {
                let (q, rem) = rest.divmod(&lin)?;
                if !rem.is_zero() {
                    break;
                }
                mult += 1;
                rest = q;
            }
            debug_assert!(mult >= 1);
            out.push((r, mult));
        }
        out.sort_by(|a, b| a.0.cmp_same_field(&b.0));
        Ok(out)
    }

    /// Distinct rational roots of a monic polynomial of degree 1..=3.
    ///
    /// Degree 1 is immediate and degree 2 goes through the discriminant, so
    /// only cubics need the integer divisor scan (and only until the first
    /// root is found, after which the quadratic cofactor takes over).
    fn rational_roots(&self) -> Result<Vec<FieldElem>> {
        debug_assert!(self.is_monic());
        let deg = self.degree().unwrap();
        assert!(deg <= 3, "root extraction implemented for degree <= 3");
        match deg {
            1 => Ok(vec![-&self.coeff(0)]),
            2 => {
                let b = self.coeff(1).as_rational().unwrap().clone();
                let c = self.coeff(0).as_rational().unwrap().clone();
                let disc = &b * &b - BigRational::from(BigInt::from(4)) * &c;
                Ok(match rational_sqrt(&disc) {
                    None => Vec::new(),
                    Some(s) if s.is_zero() => {
                        vec![FieldElem::Rational(-&b / BigRational::from(BigInt::from(2)))]
                    }
                    Some(s) => {
                        let two = BigRational::from(BigInt::from(2));
                        let r1 = (-&b - &s) / &two;
                        let r2 = (-&b + &s) / &two;
                        vec![FieldElem::Rational(r1), FieldElem::Rational(r2)]
                    }
                })
            }
            3 => {
                match self.first_integerized_cubic_root()? {
                    None => Ok(Vec::new()),
                    Some(r) => {
                        let root = FieldElem::Rational(r);
                        let lin = UniPoly::from_coeffs(self.field, vec![-&root, self.field.one()]);
                        let (quot, rem) = self.divmod(&lin)?;
                        debug_assert!(rem.is_zero());
                        let mut roots = quot.rational_roots()?;
                        if !roots.contains(&root) {
                            roots.push(root);
                        }
                        Ok(roots)
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    /// One rational root of a monic cubic, if any: substitute `x = s/D`
    /// (D = lcm of coefficient denominators) to get a monic integer cubic
    /// whose rational roots are integers dividing its constant term and
    /// bounded by the Cauchy bound.
    fn first_integerized_cubic_root(&self) -> Result<Option<BigRational>> {
        let dens: Vec<&BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.as_rational().unwrap().denom())
            .collect();
        let mut d = BigInt::one();
        for den in dens {
            d = d.lcm(den);
        }
        // q(s) = D^3 p(s/D): coefficient of s^i is p_i * D^(3-i), an integer.
        let q: Vec<BigInt> = (0..=3)
            .map(|i| {
                let scaled = self.coeff(i).as_rational().unwrap()
                    * BigRational::from(d.pow(3 - i as u32));
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            })
            .collect();
        if q[0].is_zero() {
            return Ok(Some(BigRational::zero()));
        }
        let q0 = q[0].abs();
        let cauchy = BigInt::one() + q.iter().map(|c| c.abs()).max().unwrap();
        let eval = |s: &BigInt| -> BigInt {
            let mut acc = BigInt::zero();
            for c in q.iter().rev() {
                acc = acc * s + c;
            }
            acc
        };
        for c in bounded_divisors(&q0)? {
            if c > cauchy {
                break;
            }
            if eval(&c).is_zero() {
                return Ok(Some(BigRational::new(c, d)));
            }
            let neg = -&c;
            if eval(&neg).is_zero() {
                return Ok(Some(BigRational::new(neg, d)));
            }
        }
        Ok(None)
    }

    /// Roots in an extension of the (prime) coefficient field, by exhaustive
    /// scan. Sorted by canonical index.
    pub fn roots_in_ext(&self, ext: &FiniteField) -> Result<Vec<FiniteElem>> {
        let base = match self.field {
            Field::Finite(f) if f.k() == 1 => f,
            _ => return Err(Error::EnumerationNeedsFiniteField),
        };
        if base.p() != ext.p() {
            return Err(Error::InvalidInput("extension of a different prime field".into()));
        }
        if ext.order() > ENUM_CAP {
            return Err(Error::EnumerationTooLarge(ext.order() as u128));
        }
        let lifted: Vec<FiniteElem> = self
            .coeffs
            .iter()
            .map(|c| ext.from_u64(c.as_finite().unwrap().coeffs()[0]))
            .collect();
        let mut roots = Vec::new();
        for x in ext.elements() {
            let mut acc = ext.zero();
            for c in lifted.iter().rev() {
                acc = acc.mul(&x).add(c);
            }
            if acc.is_zero() {
                roots.push(x);
            }
        }
        Ok(roots)
    }

    /// Factorization of a monic polynomial of degree <= 3 into monic
    /// irreducibles with multiplicities, sorted by (degree, coefficients).
    /// Over both `Q` and `F_q` a quadratic or cubic without roots is
    /// irreducible, so root extraction decides everything.
    pub fn factor_monic_upto_cubic(&self) -> Result<Vec<(UniPoly, usize)>> {
        assert!(self.is_monic(), "factorization requires a monic input");
        assert!(self.degree().unwrap() <= 3);
        let mut factors: Vec<(UniPoly, usize)> = Vec::new();
        let mut rest = self.clone();
        for (root, mult) in self.roots_with_multiplicity()? {
            let lin = UniPoly::from_coeffs(self.field, vec![-&root, self.field.one()]);
            for _ in 0..mult {
                let (q, rem) = rest.divmod(&lin)?;
                debug_assert!(rem.is_zero());
                rest = q;
            }
            factors.push((lin, mult));
        }
        match rest.degree().unwrap() {
            0 => {}
            1 => unreachable!("linear factors are roots"),
            _ => factors.push((rest, 1)),
        }
        factors.sort_by(|(f, _), (g, _)| {
            f.coeffs
                .len()
                .cmp(&g.coeffs.len())
                .then_with(|| {
                    for (a, b) in f.coeffs.iter().zip(&g.coeffs) {
                        let ord = a.cmp_same_field(b);
                        if ord != std::cmp::Ordering::Equal {
                            return ord;
                        }
                    }
                    std::cmp::Ordering::Equal
                })
        });
        Ok(factors)
    }
}

/// All positive divisors of a nonzero integer, ascending.
///
/// The integer is factored by trial division with divisors capped at
/// [`ROOT_SCAN_CAP`]; if the unfactored part cannot be certified prime
/// within the cap this errs with [`Error::RootSearchOverflow`] rather than
/// return an incomplete list.
fn bounded_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut rest = u128::try_from(n.abs()).map_err(|_| Error::RootSearchOverflow)?;
    debug_assert!(rest > 0);
    let mut primes: Vec<(u128, u32)> = Vec::new();
    let mut d: u128 = 2;
    while d * d <= rest && d <= ROOT_SCAN_CAP as u128 {
        if rest % d == 0 {
            let mut e = 0u32;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if rest >= d * d {
            // Trial division stopped at the cap with a part that may still
            // split into two large primes: the divisor list would be
            // incomplete.
            return Err(Error::RootSearchOverflow);
        }
        primes.push((rest, 1));
    }
    let mut divs: Vec<u128> = vec![1];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for v in &divs {
            let mut pv = *v;
            for _ in 0..=e {
                next.push(pv);
                pv = pv.saturating_mul(p);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs.into_iter().map(BigInt::from).collect())
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

impl fmt::Display for UniPoly {
    /// Renders in the variable `x`; composite coefficients (fractions,
    /// extension-field elements) are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = match c {
                FieldElem::Rational(r) if r.is_negative() => ("-", FieldElem::Rational(-r)),
                _ => ("+", c.clone()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let ms = mag.to_string();
            let wrapped = if ms.contains(['+', '-', '/', '*', '^']) {
                format!("({ms})")
            } else {
                ms
            };
            match i {
                0 => write!(f, "{wrapped}")?,
                _ => {
                    if mag.is_one() {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{wrapped}*x")?;
                    }
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn display_examples() {
        let p = UniPoly::from_i64_coeffs(q(), &[-6, 11, -6, 1]);
        assert_eq!(p.to_string(), "x^3 - 6*x^2 + 11*x - 6");
        let half = UniPoly::from_coeffs(q(), vec![q().from_ratio(1, 2).unwrap(), q().one()]);
        assert_eq!(half.to_string(), "x + (1/2)");
        assert_eq!(UniPoly::zero(q()).to_string(), "0");
        assert_eq!(UniPoly::from_i64_coeffs(q(), &[0, 0, 1]).to_string(), "x^2");
    }

    #[test]
    fn divmod_example() {
        // (x^3 - 6x^2 + 11x - 6) / (x - 1) = x^2 - 5x + 6, rem 0.
        let p = UniPoly::from_i64_coeffs(q(), &[-6, 11, -6, 1]);
        let d = UniPoly::from_i64_coeffs(q(), &[-1, 1]);
        let (quot, rem) = p.divmod(&d).unwrap();
        assert_eq!(quot, UniPoly::from_i64_coeffs(q(), &[6, -5, 1]));
        assert!(rem.is_zero());
        // Division by zero fails.
        assert!(p.divmod(&UniPoly::zero(q())).is_err());
    }

    #[test]
    fn gcd_detects_multiplicity_structure() {
        // Charpoly-style squarefree detection: gcd(p, p').
        let distinct = UniPoly::from_i64_coeffs(q(), &[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let g = UniPoly::gcd_monic(&distinct, &distinct.derivative()).unwrap();
        assert_eq!(g.degree(), Some(0));

        let double = UniPoly::from_i64_coeffs(q(), &[-2, 5, -4, 1]); // (x-1)^2 (x-2)
        let g = UniPoly::gcd_monic(&double, &double.derivative()).unwrap();
        assert_eq!(g, UniPoly::from_i64_coeffs(q(), &[-1, 1]));

        let triple = UniPoly::from_i64_coeffs(q(), &[-8, 12, -6, 1]); // (x-2)^3
        let g = UniPoly::gcd_monic(&triple, &triple.derivative()).unwrap();
        assert_eq!(g, UniPoly::from_i64_coeffs(q(), &[4, -4, 1])); // (x-2)^2

        assert!(matches!(
            UniPoly::gcd_monic(&UniPoly::zero(q()), &UniPoly::zero(q())),
            Err(Error::GcdOfZero)
        ));
    }

    #[test]
    fn rational_roots_examples() {
        let p = UniPoly::from_i64_coeffs(q(), &[-6, 11, -6, 1]);
        let roots = p.roots_with_multiplicity().unwrap();
        let expect: Vec<(FieldElem, usize)> =
            [1, 2, 3].iter().map(|&r| (q().from_i64(r), 1)).collect();
        assert_eq!(roots, expect);

        // (x - 1/2)(x - 2)(x + 3) = x^3 + (1/2)x^2 - (13/2)x + 3.
        let p = UniPoly::from_coeffs(
            q(),
            vec![
                q().from_i64(3),
                q().from_ratio(-13, 2).unwrap(),
                q().from_ratio(1, 2).unwrap(),
                q().one(),
            ],
        );
        let roots = p.roots_with_multiplicity().unwrap();
        assert_eq!(
            roots,
            vec![
                (q().from_i64(-3), 1),
                (q().from_ratio(1, 2).unwrap(), 1),
                (q().from_i64(2), 1)
            ]
        );

        // x^2 + 1 has no rational roots; x^3 - 2 has none either.
        assert!(UniPoly::from_i64_coeffs(q(), &[1, 0, 1])
            .roots_with_multiplicity()
            .unwrap()
            .is_empty());
        assert!(UniPoly::from_i64_coeffs(q(), &[-2, 0, 0, 1])
            .roots_with_multiplicity()
            .unwrap()
            .is_empty());

        // (x-1)^2 (x-2): multiplicities.
        let p = UniPoly::from_i64_coeffs(q(), &[-2, 5, -4, 1]);
        assert_eq!(
            p.roots_with_multiplicity().unwrap(),
            vec![(q().from_i64(1), 2), (q().from_i64(2), 1)]
        );
    }

    #[test]
    fn cubic_root_scan_cap_is_honest() {
        // x^3 + x - (2^61 - 1): the constant term is a Mersenne prime, so the
        // divisor scan cannot finish under the cap and must say so rather
        // than return "no roots".
        let big = (1i64 << 61) - 1;
        let p = UniPoly::from_coeffs(
            q(),
            vec![q().from_i64(-big), q().one(), q().zero(), q().one()],
        );
        assert!(matches!(
            p.roots_with_multiplicity(),
            Err(Error::RootSearchOverflow)
        ));
    }

    #[test]
    fn finite_field_roots() {
        let p = UniPoly::from_i64_coeffs(f7(), &[-2, 0, 1]); // x^2 - 2
        let roots = p.roots_with_multiplicity().unwrap();
        assert_eq!(
            roots,
            vec![(f7().from_i64(3), 1), (f7().from_i64(4), 1)]
        );
        // x^2 + 1 has no roots mod 7.
        assert!(UniPoly::from_i64_coeffs(f7(), &[1, 0, 1])
            .roots_with_multiplicity()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn factorization_examples() {
        // x^3 + 1 over Q: (x + 1)(x^2 - x + 1).
        let p = UniPoly::from_i64_coeffs(q(), &[1, 0, 0, 1]);
        let factors = p.factor_monic_upto_cubic().unwrap();
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, UniPoly::from_i64_coeffs(q(), &[1, 1]));
        assert_eq!(factors[0].1, 1);
        assert_eq!(factors[1].0, UniPoly::from_i64_coeffs(q(), &[1, -1, 1]));

        // Same poly over F_7 splits: roots 3, 5, 6; factors sort by constant
        // coefficient -r, i.e. 1, 2, 4.
        let p = UniPoly::from_i64_coeffs(f7(), &[1, 0, 0, 1]);
        let factors = p.factor_monic_upto_cubic().unwrap();
        assert_eq!(factors.len(), 3);
        let roots: Vec<_> = factors
            .iter()
            .map(|(f, _)| (-&f.coeff(0)).as_finite().unwrap().index())
            .collect();
        assert_eq!(roots, vec![6, 5, 3]);

        // Product of all factors with multiplicity recovers the input.
        let p = UniPoly::from_i64_coeffs(q(), &[-2, 5, -4, 1]);
        let mut prod = UniPoly::from_i64_coeffs(q(), &[1]);
        for (f, m) in p.factor_monic_upto_cubic().unwrap() {
            for _ in 0..m {
                prod = prod.mul(&f);
            }
        }
        assert_eq!(prod, p);
    }

    #[test]
    fn roots_in_extension() {
        // x^2 + 2 over F_5 is the modulus of F_25, so its roots there are
        // exactly +-t.
        let f5 = Field::prime(5).unwrap();
        let ext = FiniteField::extension(5, 2).unwrap();
        let p = UniPoly::from_i64_coeffs(f5, &[2, 0, 1]);
        let roots = p.roots_in_ext(&ext).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], ext.from_coeffs([0, 1, 0]));
        assert_eq!(roots[1], ext.from_coeffs([0, 4, 0]));
        // No roots in the base field itself.
        let base_as_ext = FiniteField::prime_field(5).unwrap();
        assert!(p.roots_in_ext(&base_as_ext).unwrap().is_empty());
    }

    #[test]
    fn rational_sqrt_examples() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(rational_sqrt(&r(9, 4)), Some(r(3, 2)));
        assert_eq!(rational_sqrt(&r(2, 1)), None);
        assert_eq!(rational_sqrt(&r(-4, 1)), None);
        assert_eq!(rational_sqrt(&r(0, 1)), Some(r(0, 1)));
    }

    fn small_poly(field: Field, max_deg: usize) -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-9i64..=9, 0..=max_deg + 1)
            .prop_map(move |cs| UniPoly::from_i64_coeffs(field, &cs))
    }

    proptest! {
        #[test]
        fn divmod_roundtrip_f7(a in small_poly(f7(), 5), b in small_poly(f7(), 3)) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.divmod(&b).unwrap();
            prop_assert_eq!(quot.mul(&b).add(&rem), a);
            if let Some(rd) = rem.degree() {
                prop_assert!(rd < b.degree().unwrap());
            }
        }

        #[test]
        fn gcd_divides_both_q(a in small_poly(q(), 3), b in small_poly(q(), 3)) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = UniPoly::gcd_monic(&a, &b).unwrap();
            prop_assert!(g.is_monic());
            if !a.is_zero() {
                let (_, r) = a.divmod(&g).unwrap();
                prop_assert!(r.is_zero());
            }
            if !b.is_zero() {
                let (_, r) = b.divmod(&g).unwrap();
                prop_assert!(r.is_zero());
            }
        }

        #[test]
        fn gcd_sees_common_factor_f7(a in small_poly(f7(), 2), b in small_poly(f7(), 2), c in small_poly(f7(), 2)) {
            prop_assume!(!c.is_zero() && c.degree().unwrap() >= 1);
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = UniPoly::gcd_monic(&a.mul(&c), &b.mul(&c)).unwrap();
            let (_, r) = g.divmod(&c.monic().unwrap()).unwrap();
            prop_assert!(r.is_zero(), "c must divide gcd(ac, bc)");
        }

        #[test]
        fn derivative_product_rule(a in small_poly(q(), 3), b in small_poly(q(), 3)) {
            let lhs = a.mul(&b).derivative();
            let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_is_ring_hom(a in small_poly(f7(), 4), b in small_poly(f7(), 4), x in -9i64..=9) {
            let x = f7().from_i64(x);
            prop_assert_eq!(a.mul(&b).eval(&x), &a.eval(&x) * &b.eval(&x));
            prop_assert_eq!(a.add(&b).eval(&x), &a.eval(&x) + &b.eval(&x));
        }
    }
}
