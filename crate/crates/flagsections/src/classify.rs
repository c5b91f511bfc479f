//! Classification of the zero scheme of a section by the eigenstructure of
//! its matrix.
//!
//! For a non-scalar matrix `A`, let `p` be its characteristic polynomial and
//! `g = gcd(p, p')`. The degree of `g` splits the classification:
//!
//! * `deg g = 0`: `p` is squarefree and the scheme is three simple points,
//!   permuted by Galois when `p` does not split.
//! * `deg g = 1`: `p = (x - l)^2 (x - m)` with `l != m`. Write
//!   `N = A - l I`. If `rank N = 2` the scheme is a double point plus a
//!   simple point; if `rank N = 1` the eigenplane of `l` contributes a whole
//!   line and the scheme is that line plus the isolated eigenpoint of `m`.
//! * `deg g = 2`: `p = (x - l)^3` with `l = tr(A) / 3`. If `rank N = 2` the
//!   scheme is a single point of multiplicity three; if `rank N = 1` it is a
//!   line with an embedded point, the embedded point spanning the image of
//!   `N` (which lies on the line because `N^2 = 0`).
//!
//! Every structure the classifier reports is double-checked here against the
//! minor ideal: reported points must satisfy all three minors and reported
//! lines must divide them.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, FiniteField, Matrix3, UniPoly, ENUM_CAP};
use crate::multipoly::{minors_ideal, vanishes_on_line, HomPoly, ProjPoint};
use crate::sections::SectionMatrix;

/// The five possible shapes of the zero scheme of a non-scalar section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZeroSchemeType {
    /// Three distinct simple points (possibly conjugate over an extension).
    ThreeSimplePoints,
    /// One double point and one simple point.
    DoubleAndSimplePoint,
    /// A single point of multiplicity three.
    TriplePoint,
    /// A line plus an isolated point off the line.
    LineAndIsolatedPoint,
    /// A line carrying an embedded point.
    LineWithEmbeddedPoint,
}

impl ZeroSchemeType {
    pub const ALL: [ZeroSchemeType; 5] = [
        ZeroSchemeType::ThreeSimplePoints,
        ZeroSchemeType::DoubleAndSimplePoint,
        ZeroSchemeType::TriplePoint,
        ZeroSchemeType::LineAndIsolatedPoint,
        ZeroSchemeType::LineWithEmbeddedPoint,
    ];

    pub fn letter(self) -> char {
        match self {
            ZeroSchemeType::ThreeSimplePoints => 'a',
            ZeroSchemeType::DoubleAndSimplePoint => 'b',
            ZeroSchemeType::TriplePoint => 'c',
            ZeroSchemeType::LineAndIsolatedPoint => 'd',
            ZeroSchemeType::LineWithEmbeddedPoint => 'e',
        }
    }

    pub fn from_letter(c: char) -> Option<ZeroSchemeType> {
        ZeroSchemeType::ALL.into_iter().find(|t| t.letter() == c)
    }

    pub fn describe(self) -> &'static str {
        match self {
            ZeroSchemeType::ThreeSimplePoints => "three distinct simple points",
            ZeroSchemeType::DoubleAndSimplePoint => "a double point and a simple point",
            ZeroSchemeType::TriplePoint => "a single point of multiplicity three",
            ZeroSchemeType::LineAndIsolatedPoint => "a line and an isolated point",
            ZeroSchemeType::LineWithEmbeddedPoint => "a line with an embedded point",
        }
    }

    /// Does the zero scheme contain a line?
    pub fn has_line(self) -> bool {
        matches!(
            self,
            ZeroSchemeType::LineAndIsolatedPoint | ZeroSchemeType::LineWithEmbeddedPoint
        )
    }
}

impl fmt::Display for ZeroSchemeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One irreducible factor of the characteristic polynomial together with the
/// zero-dimensional piece of the scheme it is responsible for.
///
/// `points` holds concrete coordinates when they are computable: always for
/// degree-one factors, and for higher-degree factors over a prime field
/// whose splitting field stays below the enumeration cap. A `None` for a
/// factor of a line type means the factor accounts for the line, not for
/// isolated points.
#[derive(Clone, Debug)]
pub struct GaloisOrbit {
    pub factor: UniPoly,
    pub degree: usize,
    pub multiplicity: usize,
    pub points: Option<Vec<ProjPoint>>,
}

/// Everything the classifier can say about one section.
#[derive(Clone, Debug)]
pub struct ZeroSchemeReport {
    pub section: SectionMatrix,
    pub scheme_type: ZeroSchemeType,
    pub charpoly: UniPoly,
    pub gcd: UniPoly,
    pub orbits: Vec<GaloisOrbit>,
    /// Isolated rational points over the base field with their scheme
    /// multiplicities, sorted canonically.
    pub points: Vec<(ProjPoint, usize)>,
    /// The linear form cutting out the line, monic, for the two line types.
    pub line: Option<HomPoly>,
    /// The embedded point for [`ZeroSchemeType::LineWithEmbeddedPoint`].
    pub embedded_point: Option<ProjPoint>,
}

impl ZeroSchemeReport {
    /// The multiset of (multiplicity, field-of-definition degree) pairs over
    /// the irreducible factors of the characteristic polynomial, sorted.
    pub fn charpoly_pattern(&self) -> Vec<(usize, usize)> {
        let mut pattern: Vec<(usize, usize)> = self
            .orbits
            .iter()
            .map(|o| (o.multiplicity, o.degree))
            .collect();
        pattern.sort_unstable();
        pattern
    }
}

/// Singularity bookkeeping for an irreducible hyperplane section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceSingularity {
    /// Smooth everywhere: a non-singular Del Pezzo surface.
    SmoothDelPezzo,
    /// Singular at exactly one point, with multiplicity two.
    OnePointMultTwo,
    /// Singular at exactly one point, with multiplicity three.
    OnePointMultThree,
}

/// Global shape of the hyperplane section of the flag threefold cut out by
/// a section: an irreducible sextic surface when the zero scheme is finite,
/// a union of two cubic surfaces when it contains a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Irreducible(SurfaceSingularity),
    UnionOfTwoCubics,
}

impl SurfaceKind {
    pub fn from_type(t: ZeroSchemeType) -> SurfaceKind {
        match t {
            ZeroSchemeType::ThreeSimplePoints => {
                SurfaceKind::Irreducible(SurfaceSingularity::SmoothDelPezzo)
            }
            ZeroSchemeType::DoubleAndSimplePoint => {
                SurfaceKind::Irreducible(SurfaceSingularity::OnePointMultTwo)
            }
            ZeroSchemeType::TriplePoint => {
                SurfaceKind::Irreducible(SurfaceSingularity::OnePointMultThree)
            }
            ZeroSchemeType::LineAndIsolatedPoint | ZeroSchemeType::LineWithEmbeddedPoint => {
                SurfaceKind::UnionOfTwoCubics
            }
        }
    }

    /// Degrees of the irreducible components; they always sum to six.
    pub fn degrees(self) -> Vec<u32> {
        match self {
            SurfaceKind::Irreducible(_) => vec![6],
            SurfaceKind::UnionOfTwoCubics => vec![3, 3],
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Irreducible(SurfaceSingularity::SmoothDelPezzo) => {
                write!(f, "an irreducible sextic surface: a non-singular Del Pezzo surface")
            }
            SurfaceKind::Irreducible(SurfaceSingularity::OnePointMultTwo) => write!(
                f,
                "an irreducible sextic surface, singular at one point with multiplicity two"
            ),
            SurfaceKind::Irreducible(SurfaceSingularity::OnePointMultThree) => write!(
                f,
                "an irreducible sextic surface, singular at one point with multiplicity three"
            ),
            SurfaceKind::UnionOfTwoCubics => {
                write!(f, "a union of two surfaces of degree three")
            }
        }
    }
}

/// Summary of what the corresponding hyperplane section of the flag
/// threefold looks like, including the point-count prediction
/// `q^2 + q + 1 + q * N` over a finite base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneVerdict {
    pub type_letter: char,
    pub kind: SurfaceKind,
    pub description: String,
    /// One entry per irreducible component: the blow-up of the plane along
    /// the finite part of the zero scheme, plus the ruled surface over the
    /// line for the two line types.
    pub components: Vec<String>,
    /// Rational points of the reduced zero locus over the base field
    /// (`None` over the rationals when a line makes the locus infinite).
    pub reduced_points: Option<u128>,
    /// Predicted size of the hyperplane section of the flag threefold over a
    /// finite base field of order `q`: `q^2 + q + 1 + q * reduced_points`.
    pub hyperplane_points: Option<u128>,
}

fn one_dim_kernel(m: &Matrix3, what: &str) -> Result<ProjPoint> {
    let basis = m.kernel_basis();
    if basis.len() != 1 {
        return Err(Error::Inconsistency(format!(
            "{what}: expected a one-dimensional kernel, found dimension {}",
            basis.len()
        )));
    }
    ProjPoint::new(basis.into_iter().next().unwrap())
}

fn nonzero_row_form(m: &Matrix3) -> Result<HomPoly> {
    let row = (0..3)
        .map(|i| m.row(i))
        .find(|r| r.iter().any(|c| !c.is_zero()))
        .ok_or_else(|| Error::Inconsistency("rank-one matrix with no nonzero row".into()))?;
    Ok(HomPoly::linear(m.field(), row).monic().expect("nonzero row"))
}

fn nonzero_col_point(m: &Matrix3) -> Result<ProjPoint> {
    let col = (0..3)
        .map(|j| m.col(j))
        .find(|c| c.iter().any(|e| !e.is_zero()))
        .ok_or_else(|| Error::Inconsistency("rank-one matrix with no nonzero column".into()))?;
    ProjPoint::new(col)
}

fn shifted(m: &Matrix3, lambda: &FieldElem) -> Matrix3 {
    m.sub(&Matrix3::identity(m.field()).mul_scalar(lambda))
}

fn lift_matrix(m: &Matrix3, ext: &FiniteField) -> Result<Matrix3> {
    let entries: [FieldElem; 9] = std::array::from_fn(|n| {
        let e = m
            .get(n / 3, n % 3)
            .as_finite()
            .expect("prime-field entry");
        FieldElem::Finite(ext.from_u64(e.coeffs()[0]))
    });
    Ok(Matrix3::new(Field::Finite(*ext), entries))
}

/// Eigenpoints of a higher-degree irreducible factor, computed in its
/// splitting field when that field is reachable: prime base, degree 2 or 3,
/// splitting field below the enumeration cap.
fn orbit_points_in_ext(m: &Matrix3, factor: &UniPoly) -> Result<Option<Vec<ProjPoint>>> {
    let deg = factor.degree().expect("nonzero factor");
    let Field::Finite(base) = m.field() else {
        return Ok(None);
    };
    if base.k() != 1 || !(2..=3).contains(&deg) {
        return Ok(None);
    }
    let order = (base.p() as u128).pow(deg as u32);
    if order > ENUM_CAP as u128 {
        return Ok(None);
    }
    let ext = FiniteField::extension(base.p(), deg as u8)?;
    let lifted = lift_matrix(m, &ext)?;
    let roots = factor.roots_in_ext(&ext)?;
    if roots.len() != deg {
        return Err(Error::Inconsistency(format!(
            "irreducible factor of degree {deg} found {} roots in its splitting field",
            roots.len()
        )));
    }
    let mut pts = Vec::with_capacity(deg);
    for r in roots {
        let shifted = shifted(&lifted, &FieldElem::Finite(r));
        pts.push(one_dim_kernel(&shifted, "conjugate eigenpoint")?);
    }
    pts.sort_by(ProjPoint::cmp_canonical);
    Ok(Some(pts))
}

/// Classify the zero scheme of a section.
pub fn classify_section(a: &SectionMatrix) -> Result<ZeroSchemeReport> {
    if a.is_scalar() {
        return Err(Error::ScalarSection);
    }
    let m = a.matrix();
    let field = a.field();
    let p = m.charpoly();
    let g = UniPoly::gcd_monic(&p, &p.derivative())?;
    let mut report = ZeroSchemeReport {
        section: a.clone(),
        scheme_type: ZeroSchemeType::ThreeSimplePoints,
        charpoly: p.clone(),
        gcd: g.clone(),
        orbits: Vec::new(),
        points: Vec::new(),
        line: None,
        embedded_point: None,
    };

    match g.degree().expect("gcd of nonzero polynomials is nonzero") {
        0 => {
            report.scheme_type = ZeroSchemeType::ThreeSimplePoints;
            for (factor, mult) in p.factor_monic_upto_cubic()? {
                if mult != 1 {
                    return Err(Error::Inconsistency(
                        "squarefree characteristic polynomial with a repeated factor".into(),
                    ));
                }
                let deg = factor.degree().expect("nonzero factor");
                let points = if deg == 1 {
                    let lambda = -&factor.coeff(0);
                    let pt = one_dim_kernel(&shifted(m, &lambda), "simple eigenpoint")?;
                    report.points.push((pt.clone(), 1));
                    Some(vec![pt])
                } else {
                    orbit_points_in_ext(m, &factor)?
                };
                report.orbits.push(GaloisOrbit { factor, degree: deg, multiplicity: 1, points });
            }
        }
        1 => {
            let lambda = -&g.coeff(0);
            let mu = &m.trace() - &(&field.from_i64(2) * &lambda);
            let n = shifted(m, &lambda);
            let x_minus = |r: &FieldElem| {
                UniPoly::from_coeffs(field, vec![-r, field.one()])
            };
            match n.rank() {
                2 => {
                    report.scheme_type = ZeroSchemeType::DoubleAndSimplePoint;
                    let double = one_dim_kernel(&n, "double point")?;
                    let simple = one_dim_kernel(&shifted(m, &mu), "simple point")?;
                    report.points.push((double.clone(), 2));
                    report.points.push((simple.clone(), 1));
                    report.orbits.push(GaloisOrbit {
                        factor: x_minus(&lambda),
                        degree: 1,
                        multiplicity: 2,
                        points: Some(vec![double]),
                    });
                    report.orbits.push(GaloisOrbit {
                        factor: x_minus(&mu),
                        degree: 1,
                        multiplicity: 1,
                        points: Some(vec![simple]),
                    });
                }
                1 => {
                    report.scheme_type = ZeroSchemeType::LineAndIsolatedPoint;
                    let line = nonzero_row_form(&n)?;
                    let isolated = one_dim_kernel(&shifted(m, &mu), "isolated point")?;
                    if isolated.on_line(&line) {
                        return Err(Error::Inconsistency(
                            "isolated point landed on the line of the double eigenvalue".into(),
                        ));
                    }
                    report.points.push((isolated.clone(), 1));
                    report.orbits.push(GaloisOrbit {
                        factor: x_minus(&lambda),
                        degree: 1,
                        multiplicity: 2,
                        points: None,
                    });
                    report.orbits.push(GaloisOrbit {
                        factor: x_minus(&mu),
                        degree: 1,
                        multiplicity: 1,
                        points: Some(vec![isolated]),
                    });
                    report.line = Some(line);
                }
                r => {
                    return Err(Error::Inconsistency(format!(
                        "rank {r} at a double eigenvalue of a non-scalar matrix"
                    )));
                }
            }
        }
        2 => {
            let lambda = &m.trace() * &field.from_i64(3).inv()?;
            // The only cubic sharing a quadratic with its derivative in
            // characteristic 0 or >= 5 is a perfect cube.
            let x_minus_l = UniPoly::from_coeffs(field, vec![-&lambda, field.one()]);
            let cube = x_minus_l.mul(&x_minus_l).mul(&x_minus_l);
            if cube != p {
                return Err(Error::Inconsistency(
                    "gcd of degree two but the characteristic polynomial is not a cube".into(),
                ));
            }
            let n = shifted(m, &lambda);
            match n.rank() {
                2 => {
                    report.scheme_type = ZeroSchemeType::TriplePoint;
                    let pt = one_dim_kernel(&n, "triple point")?;
                    report.points.push((pt.clone(), 3));
                    report.orbits.push(GaloisOrbit {
                        factor: x_minus_l,
                        degree: 1,
                        multiplicity: 3,
                        points: Some(vec![pt]),
                    });
                }
                1 => {
                    report.scheme_type = ZeroSchemeType::LineWithEmbeddedPoint;
                    let line = nonzero_row_form(&n)?;
                    let embedded = nonzero_col_point(&n)?;
                    if !embedded.on_line(&line) {
                        return Err(Error::Inconsistency(
                            "embedded point fell off its line".into(),
                        ));
                    }
                    report.orbits.push(GaloisOrbit {
                        factor: x_minus_l,
                        degree: 1,
                        multiplicity: 3,
                        points: None,
                    });
                    report.line = Some(line);
                    report.embedded_point = Some(embedded);
                }
                r => {
                    return Err(Error::Inconsistency(format!(
                        "rank {r} at a triple eigenvalue of a non-scalar matrix"
                    )));
                }
            }
        }
        d => {
            return Err(Error::Inconsistency(format!(
                "gcd of a cubic and its derivative has degree {d}"
            )));
        }
    }

    report.points.sort_by(|x, y| x.0.cmp_canonical(&y.0));
    Ok(report)
}

/// The invariants that steer the decision tree: the degree of
/// `gcd(p, p')` and, when an eigenvalue repeats, the rank of `A - l I`.
fn branch_invariants(m: &Matrix3) -> Result<(usize, Option<usize>)> {
    let p = m.charpoly();
    let g = UniPoly::gcd_monic(&p, &p.derivative())?;
    let field = m.field();
    match g.degree().expect("nonzero gcd") {
        0 => Ok((0, None)),
        1 => {
            let lambda = -&g.coeff(0);
            Ok((1, Some(shifted(m, &lambda).rank())))
        }
        2 => {
            let lambda = &m.trace() * &field.from_i64(3).inv()?;
            Ok((2, Some(shifted(m, &lambda).rank())))
        }
        d => Err(Error::Inconsistency(format!(
            "gcd of a cubic and its derivative has degree {d}"
        ))),
    }
}

/// Reduce a rational section modulo a prime when the reduction is *good*:
/// the branch invariants survive, so the decision tree takes the same path
/// over `F_p` and the type letter is preserved. Returns `None` for a bad
/// prime (the reduction degenerates or switches branches).
pub fn good_reduction(a: &SectionMatrix, prime: u64) -> Result<Option<SectionMatrix>> {
    if a.field() != Field::Rational {
        return Err(Error::InvalidInput(
            "good-reduction search starts from a rational section".into(),
        ));
    }
    let f = FiniteField::prime_field(prime)?;
    let Ok(reduced) = a.reduce_mod(&f) else {
        return Ok(None);
    };
    if branch_invariants(a.matrix())? == branch_invariants(reduced.matrix())? {
        Ok(Some(reduced))
    } else {
        Ok(None)
    }
}

/// Primes small enough that the ideal oracle can count points at depth two.
pub const ORACLE_PRIMES: [u64; 16] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];

/// Up to `want` good-reduction primes from [`ORACLE_PRIMES`], with the
/// reduced sections.
pub fn good_reduction_primes(
    a: &SectionMatrix,
    want: usize,
) -> Result<Vec<(u64, SectionMatrix)>> {
    let mut out = Vec::new();
    for &p in ORACLE_PRIMES.iter() {
        if out.len() == want {
            break;
        }
        if let Some(reduced) = good_reduction(a, p)? {
            out.push((p, reduced));
        }
    }
    Ok(out)
}

/// Independent sanity pass over a report: every reported point must kill all
/// three minors (conjugate points after lifting), lines must divide the
/// minors, and conjugate orbits must be permuted freely by Frobenius.
pub fn witness_check(report: &ZeroSchemeReport) -> Result<()> {
    let minors = minors_ideal(&report.section)?;
    let gens = minors.nonzero_gens();
    let fail = |msg: String| Err(Error::Inconsistency(msg));

    for (pt, _) in &report.points {
        for g in &gens {
            if !g.eval(pt.coords()).is_zero() {
                return fail(format!("reported point {pt} does not satisfy a minor"));
            }
        }
    }
    if let Some(line) = &report.line {
        for g in &gens {
            if !vanishes_on_line(g, line) {
                return fail(format!("reported line {line} does not divide a minor"));
            }
        }
    }
    if let Some(pt) = &report.embedded_point {
        let line = report.line.as_ref().expect("embedded point comes with a line");
        if !pt.on_line(line) {
            return fail(format!("embedded point {pt} is off its line"));
        }
        for g in &gens {
            if !g.eval(pt.coords()).is_zero() {
                return fail(format!("embedded point {pt} does not satisfy a minor"));
            }
        }
    }

    for orbit in &report.orbits {
        let Some(points) = &orbit.points else { continue };
        if orbit.degree >= 2 {
            if points.len() != orbit.degree {
                return fail(format!(
                    "orbit of degree {} lists {} points",
                    orbit.degree,
                    points.len()
                ));
            }
            // The points live in an extension; check the lifted minors and
            // the free Frobenius action (base field is prime here).
            let ext = match points[0].field() {
                Field::Finite(f) => f,
                Field::Rational => {
                    return fail("conjugate points reported over the rationals".into())
                }
            };
            for g in &gens {
                let lifted = g.lift_to_ext(&ext)?;
                for pt in points {
                    if !lifted.eval(pt.coords()).is_zero() {
                        return fail(format!("conjugate point {pt} does not satisfy a minor"));
                    }
                }
            }
            for pt in points {
                let image = pt.frobenius();
                if image == *pt {
                    return fail(format!("conjugate point {pt} is Frobenius-fixed"));
                }
                if !points.contains(&image) {
                    return fail(format!("Frobenius carries {pt} out of its orbit"));
                }
            }
        }
    }
    Ok(())
}

/// Coordinate-change equivariance: classifying `P A P^{-1}` must give the
/// same type as `A`, with every witness transported — points by `P`, line
/// coefficient rows by `P^{-1}` acting on the right.
///
/// Returns `Ok(false)` when either the types differ or some witness fails to
/// transport; errors only on singular `P` or a classification failure.
pub fn conjugate_check(a: &SectionMatrix, p: &Matrix3) -> Result<bool> {
    let p_inv = p.inverse()?;
    let b = SectionMatrix::new(p.mul(a.matrix()).mul(&p_inv));
    let ra = classify_section(a)?;
    let rb = classify_section(&b)?;
    if ra.scheme_type != rb.scheme_type {
        return Ok(false);
    }

    let transport = |pt: &ProjPoint| ProjPoint::new(p.apply(pt.coords()));
    let mut moved: Vec<(ProjPoint, usize)> = Vec::with_capacity(ra.points.len());
    for (pt, mult) in &ra.points {
        moved.push((transport(pt)?, *mult));
    }
    moved.sort_by(|(x, _), (y, _)| x.cmp_canonical(y));
    if moved.len() != rb.points.len()
        || moved
            .iter()
            .zip(rb.points.iter())
            .any(|((x, mx), (y, my))| x != y || mx != my)
    {
        return Ok(false);
    }

    match (&ra.line, &rb.line) {
        (None, None) => {}
        (Some(la), Some(lb)) => {
            let c: [FieldElem; 3] = std::array::from_fn(|i| la.coeffs()[i].clone());
            let row = p_inv.transpose().apply(&c);
            let moved_line = HomPoly::linear(a.field(), row)
                .monic()
                .expect("an invertible change of coordinates keeps the line form nonzero");
            if &moved_line != lb {
                return Ok(false);
            }
        }
        _ => return Ok(false),
    }

    match (&ra.embedded_point, &rb.embedded_point) {
        (None, None) => {}
        (Some(ea), Some(eb)) => {
            if &transport(ea)? != eb {
                return Ok(false);
            }
        }
        _ => return Ok(false),
    }
    Ok(true)
}

/// Interpret a report as a statement about the hyperplane section of the
/// flag threefold.
pub fn verdict(report: &ZeroSchemeReport) -> HyperplaneVerdict {
    let t = report.scheme_type;
    let base_order = report.section.field().order();
    let reduced: Option<u128> = if t.has_line() {
        base_order.map(|q| {
            let extra = u128::from(t == ZeroSchemeType::LineAndIsolatedPoint);
            q as u128 + 1 + extra
        })
    } else {
        Some(report.points.len() as u128)
    };
    let hyperplane = match (base_order, reduced) {
        (Some(q), Some(n)) => {
            let q = q as u128;
            Some(q * q + q + 1 + q * n)
        }
        _ => None,
    };

    let mut pieces: Vec<String> = Vec::new();
    match t {
        ZeroSchemeType::ThreeSimplePoints => {
            for orbit in &report.orbits {
                if orbit.degree == 1 {
                    let pt = orbit.points.as_ref().and_then(|p| p.first());
                    pieces.push(match pt {
                        Some(pt) => format!("a simple point at {pt}"),
                        None => "a simple rational point".into(),
                    });
                } else {
                    pieces.push(format!(
                        "a conjugate orbit of {} simple points with eigenvalues from {}",
                        orbit.degree, orbit.factor
                    ));
                }
            }
        }
        ZeroSchemeType::DoubleAndSimplePoint => {
            for (pt, mult) in &report.points {
                pieces.push(match mult {
                    2 => format!("a double point at {pt}"),
                    _ => format!("a simple point at {pt}"),
                });
            }
        }
        ZeroSchemeType::TriplePoint => {
            let (pt, _) = &report.points[0];
            pieces.push(format!("a point of multiplicity three at {pt}"));
        }
        ZeroSchemeType::LineAndIsolatedPoint => {
            let line = report.line.as_ref().expect("line type");
            let (pt, _) = &report.points[0];
            pieces.push(format!("the line {{{line} = 0}}"));
            pieces.push(format!("an isolated point at {pt}"));
        }
        ZeroSchemeType::LineWithEmbeddedPoint => {
            let line = report.line.as_ref().expect("line type");
            let pt = report.embedded_point.as_ref().expect("embedded point");
            pieces.push(format!(
                "the line {{{line} = 0}} with an embedded point at {pt}"
            ));
        }
    }
    let description = format!("type {}: {}", t.letter(), pieces.join(" and "));

    let components = match t {
        ZeroSchemeType::ThreeSimplePoints
        | ZeroSchemeType::DoubleAndSimplePoint
        | ZeroSchemeType::TriplePoint => vec![format!(
            "the blow-up of the plane along the zero scheme (a center of length three: {}); \
             an irreducible surface of degree six",
            t.describe()
        )],
        ZeroSchemeType::LineAndIsolatedPoint => {
            let line = report.line.as_ref().expect("line type");
            let (pt, _) = &report.points[0];
            vec![
                format!(
                    "the blow-up of the plane at the isolated zero {pt}; a surface of degree three"
                ),
                format!(
                    "the fibers of the bundle over the line {{{line} = 0}}; \
                     a ruled surface of degree three"
                ),
            ]
        }
        ZeroSchemeType::LineWithEmbeddedPoint => {
            let line = report.line.as_ref().expect("line type");
            let pt = report.embedded_point.as_ref().expect("embedded point");
            vec![
                format!(
                    "the blow-up of the plane at the embedded zero {pt}; a surface of degree three"
                ),
                format!(
                    "the fibers of the bundle over the line {{{line} = 0}}; \
                     a ruled surface of degree three"
                ),
            ]
        }
    };

    HyperplaneVerdict {
        type_letter: t.letter(),
        kind: SurfaceKind::from_type(t),
        description,
        components,
        reduced_points: reduced,
        hyperplane_points: hyperplane,
    }
}
