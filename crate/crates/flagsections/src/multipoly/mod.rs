//! Dense homogeneous polynomials in `X, Y, Z` under graded reverse
//! lexicographic order with `X > Y > Z`, together with the 2x2-minor ideals
//! of section matrices, projective points, and common-linear-factor
//! extraction.
//!
//! Coefficients of degree `d` are stored in grevlex-descending monomial
//! order; for `d = 2` that is `X^2, XY, Y^2, XZ, YZ, Z^2`. The leading term
//! of a nonzero polynomial is its first nonzero coefficient.

pub mod groebner;
pub mod oracle;
pub mod points;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, FiniteField, Matrix3, ENUM_CAP};
use crate::sections::SectionMatrix;

/// Highest total degree handled by the polynomial layer.
pub const MAX_DEGREE: usize = 8;

/// Exponents `(a, b, c)` of `X^a Y^b Z^c`.
pub type Exps = (usize, usize, usize);

/// Number of degree-`d` monomials.
pub fn monomial_count(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// All degree-`d` exponent triples in grevlex-descending order.
pub fn exponents_in_order(d: usize) -> Vec<Exps> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for c in 0..=d {
        for b in 0..=(d - c) {
            out.push((d - b - c, b, c));
        }
    }
    out
}

/// Index of `(a, b, c)` within the degree-`a+b+c` coefficient vector.
pub fn monomial_index(e: Exps) -> usize {
    let d = e.0 + e.1 + e.2;
    let c = e.2;
    c * (d + 1) - c * c.saturating_sub(1) / 2 + e.1
}

fn divides(a: Exps, b: Exps) -> bool {
    a.0 <= b.0 && a.1 <= b.1 && a.2 <= b.2
}

fn exp_sub(b: Exps, a: Exps) -> Exps {
    (b.0 - a.0, b.1 - a.1, b.2 - a.2)
}

fn exp_add(a: Exps, b: Exps) -> Exps {
    (a.0 + b.0, a.1 + b.1, a.2 + b.2)
}

fn exp_lcm(a: Exps, b: Exps) -> Exps {
    (a.0.max(b.0), a.1.max(b.1), a.2.max(b.2))
}

fn binomial_u64(n: usize, k: usize) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// A homogeneous polynomial of a fixed degree (a zero polynomial still
/// carries its degree slot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    field: Field,
    degree: usize,
    coeffs: Vec<FieldElem>,
}

impl HomPoly {
    pub fn new(field: Field, degree: usize, coeffs: Vec<FieldElem>) -> Self {
        assert!(degree <= MAX_DEGREE, "degree above MAX_DEGREE");
        assert_eq!(coeffs.len(), monomial_count(degree), "wrong coefficient count");
        HomPoly { field, degree, coeffs }
    }

    pub fn zero(field: Field, degree: usize) -> Self {
        HomPoly::new(field, degree, vec![field.zero(); monomial_count(degree)])
    }

    pub fn from_terms(field: Field, degree: usize, terms: &[(FieldElem, Exps)]) -> Self {
        let mut p = HomPoly::zero(field, degree);
        for (c, e) in terms {
            assert_eq!(e.0 + e.1 + e.2, degree, "term degree mismatch");
            let i = monomial_index(*e);
            p.coeffs[i] = &p.coeffs[i] + c;
        }
        p
    }

    /// The linear form `c0 X + c1 Y + c2 Z`.
    pub fn linear(field: Field, coeffs: [FieldElem; 3]) -> Self {
        HomPoly { field, degree: 1, coeffs: coeffs.to_vec() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff_at(&self, e: Exps) -> &FieldElem {
        &self.coeffs[monomial_index(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    /// Leading (grevlex-largest) term: `(index, exponents, coefficient)`.
    pub fn leading(&self) -> Option<(usize, Exps, &FieldElem)> {
        let i = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some((i, exponents_in_order(self.degree)[i], &self.coeffs[i]))
    }

    /// Nonzero terms in grevlex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (Exps, &FieldElem)> + '_ {
        let exps = exponents_in_order(self.degree);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (exps[i], c))
    }

    pub fn add(&self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.degree, rhs.degree, "mixed degrees");
        assert_eq!(self.field, rhs.field, "mixed fields");
        HomPoly {
            field: self.field,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.degree, rhs.degree, "mixed degrees");
        assert_eq!(self.field, rhs.field, "mixed fields");
        HomPoly {
            field: self.field,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> HomPoly {
        HomPoly {
            field: self.field,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &FieldElem) -> HomPoly {
        HomPoly {
            field: self.field,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by the monomial `c * X^m0 Y^m1 Z^m2`.
    pub fn mul_monomial(&self, m: Exps, c: &FieldElem) -> HomPoly {
        let deg = self.degree + m.0 + m.1 + m.2;
        assert!(deg <= MAX_DEGREE, "degree above MAX_DEGREE");
        let mut out = HomPoly::zero(self.field, deg);
        for (e, a) in self.terms() {
            out.coeffs[monomial_index(exp_add(e, m))] = a * c;
        }
        out
    }

    pub fn mul(&self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(self.field, rhs.field, "mixed fields");
        let deg = self.degree + rhs.degree;
        assert!(deg <= MAX_DEGREE, "degree above MAX_DEGREE");
        let mut out = HomPoly::zero(self.field, deg);
        for (e, a) in self.terms() {
            for (f, b) in rhs.terms() {
                let i = monomial_index(exp_add(e, f));
                out.coeffs[i] = &out.coeffs[i] + &(a * b);
            }
        }
        out
    }

    /// Scale so the leading coefficient is 1; `None` for zero.
    pub fn monic(&self) -> Option<HomPoly> {
        let (_, _, lc) = self.leading()?;
        Some(self.mul_scalar(&lc.inv().expect("leading coefficient nonzero")))
    }

    pub fn eval(&self, x: &[FieldElem; 3]) -> FieldElem {
        let d = self.degree;
        let pow_table = |v: &FieldElem| -> Vec<FieldElem> {
            let mut t = Vec::with_capacity(d + 1);
            t.push(self.field.one());
            for i in 0..d {
                let next = &t[i] * v;
                t.push(next);
            }
            t
        };
        let (xp, yp, zp) = (pow_table(&x[0]), pow_table(&x[1]), pow_table(&x[2]));
        let mut acc = self.field.zero();
        for (e, c) in self.terms() {
            acc = &acc + &(&(c * &xp[e.0]) * &(&yp[e.1] * &zp[e.2]));
        }
        acc
    }

    /// Lift a polynomial with prime-field coefficients into an extension of
    /// the same characteristic.
    pub fn lift_to_ext(&self, ext: &FiniteField) -> Result<HomPoly> {
        let base = self
            .field
            .finite_field()
            .ok_or(Error::EnumerationNeedsFiniteField)?;
        if base.p() != ext.p() || base.k() != 1 {
            return Err(Error::InvalidInput(
                "lift requires prime-field coefficients of the same characteristic".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| FieldElem::Finite(ext.from_u64(c.as_finite().unwrap().coeffs()[0])))
            .collect();
        Ok(HomPoly { field: Field::Finite(*ext), degree: self.degree, coeffs })
    }

    /// Substitute variable `pivot` by `r0 * x_u + r1 * x_v` (the other two
    /// variables in increasing index order); returns the binary form in
    /// `(x_u, x_v)` as coefficients of `x_u^j x_v^(d-j)`, `j = 0..=d`.
    pub fn substitute_var(&self, pivot: usize, repl: [FieldElem; 2]) -> Vec<FieldElem> {
        let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        let u = others[0];
        let d = self.degree;
        let mut bin = vec![self.field.zero(); d + 1];
        for (e, c) in self.terms() {
            let ea = [e.0, e.1, e.2];
            let pe = ea[pivot];
            let eu = ea[u];
            for i in 0..=pe {
                let coef = &(c * &self.field.from_i64(binomial_u64(pe, i) as i64))
                    * &(&repl[0].pow(i as u64) * &repl[1].pow((pe - i) as u64));
                bin[eu + i] = &bin[eu + i] + &coef;
            }
        }
        bin
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mono = |e: Exps| -> String {
            let mut parts = Vec::new();
            for (v, n) in [("X", e.0), ("Y", e.1), ("Z", e.2)] {
                match n {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{n}")),
                }
            }
            parts.join("*")
        };
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = match c {
                FieldElem::Rational(r) if num_traits::Signed::is_negative(r) => {
                    ("-", FieldElem::Rational(-r))
                }
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
            let ms = mono(e);
            if ms.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{ms}")?;
            } else {
                let cs = mag.to_string();
                if cs.contains(['+', '-', '/', '*', '^']) {
                    write!(f, "({cs})*{ms}")?;
                } else {
                    write!(f, "{cs}*{ms}")?;
                }
            }
        }
        Ok(())
    }
}

/// A point of `P^2`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: [FieldElem; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElem; 3]) -> Result<Self> {
        let i = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidInput("projective point needs a nonzero coordinate".into()))?;
        let inv = coords[i].inv().expect("nonzero");
        Ok(ProjPoint { coords: std::array::from_fn(|n| &coords[n] * &inv) })
    }

    pub fn from_i64(field: Field, coords: [i64; 3]) -> Result<Self> {
        ProjPoint::new(std::array::from_fn(|i| field.from_i64(coords[i])))
    }

    pub fn coords(&self) -> &[FieldElem; 3] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// Lexicographic comparison of normalized coordinates.
    pub fn cmp_canonical(&self, other: &ProjPoint) -> Ordering {
        for i in 0..3 {
            let ord = self.coords[i].cmp_same_field(&other.coords[i]);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }

    /// Whether the point lies on the projective line cut out by a linear form.
    pub fn on_line(&self, line: &HomPoly) -> bool {
        assert_eq!(line.degree(), 1);
        line.eval(&self.coords).is_zero()
    }

    /// Coordinatewise Frobenius (finite fields), renormalized.
    pub fn frobenius(&self) -> ProjPoint {
        let mapped: [FieldElem; 3] = std::array::from_fn(|i| match &self.coords[i] {
            FieldElem::Finite(e) => FieldElem::Finite(e.frobenius()),
            FieldElem::Rational(r) => FieldElem::Rational(r.clone()),
        });
        ProjPoint::new(mapped).expect("Frobenius preserves nonzeroness")
    }

    /// All coordinates in the prime subfield?
    pub fn is_prime_rational(&self) -> bool {
        self.coords.iter().all(|c| match c {
            FieldElem::Finite(e) => e.in_prime_field(),
            FieldElem::Rational(_) => true,
        })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// The three 2x2 minors cutting out a section's zero scheme:
/// `q12 = X f2 - Y f1`, `q13 = X f3 - Z f1`, `q23 = Y f3 - Z f2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorTriple {
    pub q12: HomPoly,
    pub q13: HomPoly,
    pub q23: HomPoly,
}

impl MinorTriple {
    pub fn gens(&self) -> [&HomPoly; 3] {
        [&self.q12, &self.q13, &self.q23]
    }

    pub fn nonzero_gens(&self) -> Vec<HomPoly> {
        self.gens().into_iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    /// Dimension of the span of the three minors inside the quadrics.
    pub fn span_rank(&self) -> usize {
        rank_of_rows(self.gens().map(|g| g.coeffs().to_vec()))
    }

    /// `X q23 - Y q13 + Z q12`, identically zero for every section.
    pub fn syzygy_residual(&self) -> HomPoly {
        let field = self.q12.field();
        let one = field.one();
        self.q23
            .mul_monomial((1, 0, 0), &one)
            .sub(&self.q13.mul_monomial((0, 1, 0), &one))
            .add(&self.q12.mul_monomial((0, 0, 1), &one))
    }
}

/// Row rank by Gaussian elimination (rows may have any equal length).
fn rank_of_rows<const N: usize>(rows: [Vec<FieldElem>; N]) -> usize {
    let mut rows: Vec<Vec<FieldElem>> = rows.into_iter().collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot nonzero");
        for j in col..width {
            rows[rank][j] = &rows[rank][j] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let c = rows[r][col].clone();
                for j in col..width {
                    rows[r][j] = &rows[r][j] - &(&c * &rows[rank][j]);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// The minor ideal of a non-scalar section.
pub fn minors_ideal(a: &SectionMatrix) -> Result<MinorTriple> {
    if a.is_scalar() {
        return Err(Error::ScalarSection);
    }
    let field = a.field();
    let f: Vec<HomPoly> = (0..3).map(|i| HomPoly::linear(field, a.form(i))).collect();
    let one = field.one();
    let x = |p: &HomPoly| p.mul_monomial((1, 0, 0), &one);
    let y = |p: &HomPoly| p.mul_monomial((0, 1, 0), &one);
    let z = |p: &HomPoly| p.mul_monomial((0, 0, 1), &one);
    Ok(MinorTriple {
        q12: x(&f[1]).sub(&y(&f[0])),
        q13: x(&f[2]).sub(&z(&f[0])),
        q23: y(&f[2]).sub(&z(&f[1])),
    })
}

/// Whether the linear form divides the polynomial: substitute the pivot
/// variable of the line into `q` and check the restriction vanishes.
pub fn vanishes_on_line(q: &HomPoly, line: &HomPoly) -> bool {
    assert_eq!(line.degree(), 1);
    assert_eq!(q.field(), line.field());
    let l = line.coeffs();
    let pivot = l.iter().position(|c| !c.is_zero()).expect("nonzero line");
    let alpha_inv = l[pivot].inv().expect("nonzero");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let repl = [
        -&(&l[others[0]] * &alpha_inv),
        -&(&l[others[1]] * &alpha_inv),
    ];
    q.substitute_var(pivot, repl).iter().all(FieldElem::is_zero)
}

/// The common linear factor of the three minors, if one exists. At most one
/// can exist (the minor span has dimension >= 2), so finding two is an
/// internal inconsistency.
pub fn common_linear_factor(m: &MinorTriple) -> Result<Option<HomPoly>> {
    let gens = m.nonzero_gens();
    let Some(first) = gens.first() else {
        return Err(Error::EmptyGenerators);
    };
    let candidates = match first.field() {
        Field::Finite(f) => {
            let n = f.order() as u128 * f.order() as u128 + f.order() as u128 + 1;
            if n > ENUM_CAP as u128 {
                return Err(Error::EnumerationTooLarge(n));
            }
            let field = Field::Finite(f);
            points::proj_points(&f)?
                .into_iter()
                .map(|p| {
                    HomPoly::linear(field, std::array::from_fn(|i| FieldElem::Finite(p[i])))
                })
                .collect()
        }
        Field::Rational => gram_linear_candidates(first),
    };
    let mut found: Vec<HomPoly> = Vec::new();
    for cand in candidates {
        if gens.iter().all(|g| vanishes_on_line(g, &cand)) {
            let norm = cand.monic().expect("candidate nonzero");
            if !found.contains(&norm) {
                found.push(norm);
            }
        }
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(found.pop().map(Some).unwrap()),
        n => Err(Error::Inconsistency(format!(
            "{n} distinct common linear factors in a minor span of rank >= 2"
        ))),
    }
}

/// Candidate linear factors of a single rational quadric via its Gram
/// matrix: rank 3 means irreducible, rank 1 means a doubled line (read off a
/// nonzero row), rank 2 means a pair of lines through the kernel point
/// (recovered from the roots of the restriction to a complementary line,
/// when that binary quadric splits rationally).
fn gram_linear_candidates(q: &HomPoly) -> Vec<HomPoly> {
    assert_eq!(q.degree(), 2);
    let field = q.field();
    let half = field.from_i64(2).inv().expect("characteristic != 2");
    let entry = |i: usize, j: usize| -> FieldElem {
        if i == j {
            let mut e = [0usize; 3];
            e[i] = 2;
            q.coeff_at((e[0], e[1], e[2])).clone()
        } else {
            let mut e = [0usize; 3];
            e[i] += 1;
            e[j] += 1;
            &*q.coeff_at((e[0], e[1], e[2])) * &half
        }
    };
    let g = Matrix3::new(field, std::array::from_fn(|n| entry(n / 3, n % 3)));
    match g.rank() {
        3 => Vec::new(),
        1 => {
            let row = (0..3)
                .map(|i| g.row(i))
                .find(|r| r.iter().any(|c| !c.is_zero()))
                .expect("rank 1 has a nonzero row");
            vec![HomPoly::linear(field, row)]
        }
        2 => {
            let kernel = g.kernel_basis();
            debug_assert_eq!(kernel.len(), 1);
            let s = &kernel[0];
            let pivot = s.iter().position(|c| !c.is_zero()).expect("kernel vector nonzero");
            let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
            let (u, v) = (others[0], others[1]);
            // Restrict q to the line {x_pivot = 0}, which misses the vertex s.
            let coeff = |eu: usize, ev: usize| -> FieldElem {
                let mut e = [0usize; 3];
                e[u] = eu;
                e[v] = ev;
                q.coeff_at((e[0], e[1], e[2])).clone()
            };
            let (b0, b1, b2) = (coeff(2, 0), coeff(1, 1), coeff(0, 2));
            let mut roots: Vec<[FieldElem; 3]> = Vec::new();
            let mut push_root = |ru: FieldElem, rv: FieldElem| {
                let mut p: [FieldElem; 3] = std::array::from_fn(|_| field.zero());
                p[u] = ru;
                p[v] = rv;
                roots.push(p);
            };
            if b0.is_zero() {
                if b1.is_zero() && b2.is_zero() {
                    // The restriction vanished entirely: impossible for a
                    // rank-2 conic with vertex off the line.
                    return Vec::new();
                }
                push_root(field.one(), field.zero());
                if !b1.is_zero() {
                    push_root(-&b2, b1.clone());
                }
            } else {
                let four = field.from_i64(4);
                let disc = &(&b1 * &b1) - &(&four * &(&b0 * &b2));
                let disc_r = disc.as_rational().expect("rational field").clone();
                match crate::exactalg::unipoly::rational_sqrt(&disc_r) {
                    None => return Vec::new(),
                    Some(sq) => {
                        let sq = FieldElem::Rational(sq);
                        let two_b0 = &field.from_i64(2) * &b0;
                        push_root(&(-&b1) - &sq, two_b0.clone());
                        push_root(&(-&b1) + &sq, two_b0);
                    }
                }
            }
            roots
                .into_iter()
                .filter_map(|p| {
                    if p.iter().all(FieldElem::is_zero) {
                        return None;
                    }
                    // Line through s and p: coefficients are the cross product.
                    let cross = [
                        &(&s[1] * &p[2]) - &(&s[2] * &p[1]),
                        &(&s[2] * &p[0]) - &(&s[0] * &p[2]),
                        &(&s[0] * &p[1]) - &(&s[1] * &p[0]),
                    ];
                    if cross.iter().all(FieldElem::is_zero) {
                        None
                    } else {
                        Some(HomPoly::linear(field, cross))
                    }
                })
                .collect()
        }
        _ => Vec::new(),
    }
}
