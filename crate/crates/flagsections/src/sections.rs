//! Section matrices, their textual form, and the hyperplane correspondence.
//!
//! A 3x3 matrix `A` defines the twisted vector field `(f1, f2, f3)` with
//! `f_i = sum_j A[i][j] * (X, Y, Z)[j]`; scalar multiples of the identity act
//! trivially, so sections are matrices modulo `c*I`. The trace-zero
//! representative picks out unique coordinates on the eight-dimensional space
//! of sections, which is exactly the dual space of hyperplanes in `P^7`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, FiniteField, Matrix3};

/// A section of the twisted tangent bundle, stored as its matrix.
///
/// Any matrix is representable (including scalar multiples of the identity,
/// which individual operations reject where they are meaningless).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionMatrix {
    mat: Matrix3,
}

impl SectionMatrix {
    pub fn new(mat: Matrix3) -> Self {
        SectionMatrix { mat }
    }

    pub fn from_i64(field: Field, rows: [[i64; 3]; 3]) -> Self {
        SectionMatrix::new(Matrix3::from_i64(field, rows))
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.mat
    }

    pub fn field(&self) -> Field {
        self.mat.field()
    }

    /// Scalar multiples of the identity define the zero vector field.
    pub fn is_scalar(&self) -> bool {
        self.mat.is_scalar_multiple_of_identity()
    }

    /// The linear form `f_{i+1}` as coefficients of `(X, Y, Z)`.
    pub fn form(&self, i: usize) -> [FieldElem; 3] {
        self.mat.row(i)
    }

    /// `A + c*I`: the same section.
    pub fn shift_identity(&self, c: &FieldElem) -> SectionMatrix {
        let shift = Matrix3::identity(self.field()).mul_scalar(c);
        SectionMatrix::new(self.mat.add(&shift))
    }

    /// `u*A` for `u != 0`: the same zero scheme.
    pub fn scale(&self, u: &FieldElem) -> Result<SectionMatrix> {
        if u.is_zero() {
            return Err(Error::InvalidInput("scaling a section by zero".into()));
        }
        Ok(SectionMatrix::new(self.mat.mul_scalar(u)))
    }

    /// The unique trace-zero representative `A - (tr A / 3) I`
    /// (characteristic is never 3 here).
    pub fn trace_zero_rep(&self) -> SectionMatrix {
        let third = self
            .field()
            .from_i64(3)
            .inv()
            .expect("3 is invertible away from characteristic 3");
        let c = &self.mat.trace() * &third;
        let shift = Matrix3::identity(self.field()).mul_scalar(&c);
        SectionMatrix::new(self.mat.sub(&shift))
    }

    /// Whether two matrices define the same section up to scalar: their
    /// trace-zero representatives must be proportional.
    pub fn projectively_equivalent(&self, other: &SectionMatrix) -> bool {
        if self.field() != other.field() {
            return false;
        }
        let a = self.trace_zero_rep();
        let b = other.trace_zero_rep();
        let (ea, eb) = (a.mat.entries(), b.mat.entries());
        let Some(i) = ea.iter().position(|x| !x.is_zero()) else {
            return eb.iter().all(FieldElem::is_zero);
        };
        if eb[i].is_zero() {
            return false;
        }
        let ratio = &eb[i] * &ea[i].inv().expect("nonzero");
        (0..9).all(|n| &ea[n] * &ratio == eb[n])
    }

    /// Reduce a rational section modulo `p`: clear denominators, divide out
    /// the integer content, reduce entries. Fails if the reduction collapses
    /// to a scalar multiple of the identity.
    pub fn reduce_mod(&self, f: &FiniteField) -> Result<SectionMatrix> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::Zero;

        let entries = self.mat.entries();
        let rats: Vec<_> = entries
            .iter()
            .map(|e| {
                e.as_rational()
                    .ok_or_else(|| Error::InvalidInput("reduce_mod needs a rational section".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut den = BigInt::from(1);
        for r in &rats {
            den = den.lcm(r.denom());
        }
        let ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (*r * num_rational::BigRational::from(den.clone())).to_integer())
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if content.is_zero() {
            // Zero matrix: reduces fine but is scalar; fall through to check.
            content = BigInt::from(1);
        }
        let field = Field::Finite(*f);
        let p = BigInt::from(f.p());
        let reduced: Vec<FieldElem> = ints
            .iter()
            .map(|v| {
                let m = (v / &content).mod_floor(&p);
                let (_, digits) = m.to_u64_digits();
                field.from_i64(*digits.first().unwrap_or(&0) as i64)
            })
            .collect();
        let m = Matrix3::new(field, reduced.try_into().expect("nine entries"));
        let out = SectionMatrix::new(m);
        if out.is_scalar() {
            return Err(Error::BadReduction(f.p()));
        }
        Ok(out)
    }

    /// Textual form `(f1, f2, f3)` that [`parse_section`] accepts back.
    pub fn render(&self) -> String {
        format!(
            "{}, {}, {}",
            render_linear(&self.form(0)),
            render_linear(&self.form(1)),
            render_linear(&self.form(2))
        )
    }
}

impl fmt::Display for SectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render())
    }
}

/// Render a linear form in `X, Y, Z`; `0` for the zero form.
pub fn render_linear(coeffs: &[FieldElem; 3]) -> String {
    let vars = ["X", "Y", "Z"];
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = match c {
            FieldElem::Rational(r) if num_traits::Signed::is_negative(r) => {
                ("-", FieldElem::Rational(-r))
            }
            _ => ("+", c.clone()),
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(vars[i]);
        } else {
            out.push_str(&format!("{}*{}", mag, vars[i]));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A hyperplane in `P^7`, as coordinates against the trace-zero matrix basis
/// `(E11-E33, E22-E33, E12, E13, E21, E23, E31, E32)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneP7 {
    coords: [FieldElem; 8],
}

impl HyperplaneP7 {
    /// At least one coordinate must be nonzero.
    pub fn new(coords: [FieldElem; 8]) -> Result<Self> {
        if coords.iter().all(FieldElem::is_zero) {
            return Err(Error::InvalidInput("hyperplane needs a nonzero coordinate".into()));
        }
        Ok(HyperplaneP7 { coords })
    }

    pub fn coords(&self) -> &[FieldElem; 8] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// Scale so the first nonzero coordinate is 1.
    pub fn normalized(&self) -> HyperplaneP7 {
        let i = self
            .coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero by construction");
        let inv = self.coords[i].inv().expect("nonzero");
        HyperplaneP7 {
            coords: std::array::from_fn(|n| &self.coords[n] * &inv),
        }
    }
}

impl fmt::Display for HyperplaneP7 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// Coordinates of the hyperplane in `P^7` cut out by a (non-scalar) section:
/// the trace-zero representative expanded in the matrix basis.
pub fn section_to_hyperplane(a: &SectionMatrix) -> Result<HyperplaneP7> {
    if a.is_scalar() {
        return Err(Error::ScalarSection);
    }
    let t = a.trace_zero_rep();
    let m = t.matrix();
    HyperplaneP7::new([
        m.get(0, 0).clone(),
        m.get(1, 1).clone(),
        m.get(0, 1).clone(),
        m.get(0, 2).clone(),
        m.get(1, 0).clone(),
        m.get(1, 2).clone(),
        m.get(2, 0).clone(),
        m.get(2, 1).clone(),
    ])
}

/// Rebuild the trace-zero section matrix from hyperplane coordinates.
pub fn hyperplane_to_section(h: &HyperplaneP7) -> SectionMatrix {
    let c = h.coords();
    let field = h.field();
    let d33 = &(-&c[0]) - &c[1];
    SectionMatrix::new(Matrix3::from_rows(
        field,
        [
            [c[0].clone(), c[2].clone(), c[3].clone()],
            [c[4].clone(), c[1].clone(), c[5].clone()],
            [c[6].clone(), c[7].clone(), d33],
        ],
    ))
}

/// Parse `"f1, f2, f3"` where each `f` is a linear form in `X, Y, Z` with
/// integer or fractional coefficients (e.g. `"X + 2*Y - 1/3*Z, 0, Z"`).
/// Constant terms must cancel; errors carry the byte offset in the input.
pub fn parse_section(text: &str, field: &Field) -> Result<SectionMatrix> {
    let mut rows: Vec<[FieldElem; 3]> = Vec::new();
    for (chunk, offset) in split_top_level(text) {
        rows.push(parse_linear_form(chunk, offset, field)?);
    }
    if rows.len() != 3 {
        return Err(Error::Parse {
            position: text.len(),
            message: format!("expected 3 comma-separated linear forms, found {}", rows.len()),
        });
    }
    Ok(SectionMatrix::new(Matrix3::from_rows(
        *field,
        rows.try_into().expect("three rows"),
    )))
}

/// Parse eight comma-separated field scalars as hyperplane coordinates.
pub fn parse_hyperplane(text: &str, field: &Field) -> Result<HyperplaneP7> {
    let parts = split_top_level(text);
    if parts.len() != 8 {
        return Err(Error::Parse {
            position: text.len(),
            message: format!("expected 8 comma-separated coordinates, found {}", parts.len()),
        });
    }
    let mut coords = Vec::with_capacity(8);
    for (chunk, offset) in parts {
        coords.push(parse_scalar(chunk, offset, field)?);
    }
    HyperplaneP7::new(coords.try_into().expect("eight coordinates"))
}

/// Split on commas, keeping each chunk's byte offset in the original text.
fn split_top_level(text: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == ',' {
            out.push((&text[start..i], start));
            start = i + 1;
        }
    }
    out.push((&text[start..], start));
    out
}

struct Lexer<'a> {
    text: &'a str,
    /// Byte offset of this chunk in the full input (for error positions).
    base: usize,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Var(usize),
    /// Integer literal (digits only; signs are separate tokens).
    Int(i64),
    Slash,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, base: usize) -> Self {
        Lexer { text, base, pos: 0 }
    }

    fn err(&self, at: usize, message: impl Into<String>) -> Error {
        Error::Parse { position: self.base + at, message: message.into() }
    }

    /// Next token with its chunk-relative offset; `None` at end.
    fn next(&mut self) -> Result<Option<(Tok, usize)>> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= bytes.len() {
            return Ok(None);
        }
        let at = self.pos;
        let tok = match bytes[self.pos] {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'X' | b'x' => {
                self.pos += 1;
                Tok::Var(0)
            }
            b'Y' | b'y' => {
                self.pos += 1;
                Tok::Var(1)
            }
            b'Z' | b'z' => {
                self.pos += 1;
                Tok::Var(2)
            }
            b'0'..=b'9' => {
                let s = self.pos;
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let lit: i64 = self.text[s..self.pos]
                    .parse()
                    .map_err(|_| self.err(s, "integer literal too large"))?;
                Tok::Int(lit)
            }
            c => return Err(self.err(at, format!("unexpected character '{}'", c as char))),
        };
        Ok(Some((tok, at)))
    }
}

/// Parse one linear form into `(X, Y, Z)` coefficients.
fn parse_linear_form(text: &str, base: usize, field: &Field) -> Result<[FieldElem; 3]> {
    let mut lex = Lexer::new(text, base);
    let mut coeffs: [FieldElem; 3] = std::array::from_fn(|_| field.zero());
    let mut constant = field.zero();
    let mut constant_at = 0usize;

    let mut pending = lex.next()?;
    if pending.is_none() {
        return Err(Error::Parse { position: base, message: "empty linear form".into() });
    }
    let mut first_term = true;
    while let Some((tok, at)) = pending.take() {
        if !first_term && !matches!(tok, Tok::Plus | Tok::Minus) {
            return Err(Error::Parse {
                position: base + at,
                message: "expected '+' or '-' between terms".into(),
            });
        }
        // Sign prefix.
        let mut sign_negative = false;
        let mut cur = (tok, at);
        loop {
            match cur.0 {
                Tok::Plus => {}
                Tok::Minus => sign_negative = !sign_negative,
                _ => break,
            }
            cur = lex
                .next()?
                .ok_or_else(|| lex.err(cur.1, "dangling sign"))?;
        }
        if !first_term && !matches!(cur.0, Tok::Int(_) | Tok::Var(_)) {
            return Err(lex.err(cur.1, "expected a term"));
        }
        first_term = false;

        // Coefficient (optional), then optional '*', then optional variable.
        let mut coef = field.one();
        let mut have_coef = false;
        if let Tok::Int(n) = cur.0 {
            have_coef = true;
            let mut value = field.from_i64(n);
            // Optional fraction.
            let after = lex.next()?;
            match after {
                Some((Tok::Slash, sat)) => {
                    let Some((Tok::Int(d), dat)) = lex.next()? else {
                        return Err(lex.err(sat, "expected denominator after '/'"));
                    };
                    if field.from_i64(d).is_zero() {
                        return Err(lex.err(dat, "denominator is zero in this field"));
                    }
                    value = &value * &field.from_i64(d).inv().expect("nonzero");
                    cur = match lex.next()? {
                        Some(t) => t,
                        None => {
                            // Pure constant term.
                            let v = if sign_negative { -&value } else { value };
                            constant = &constant + &v;
                            constant_at = cur.1;
                            break;
                        }
                    };
                }
                Some(t) => cur = t,
                None => {
                    let v = if sign_negative { -&value } else { value };
                    constant = &constant + &v;
                    constant_at = cur.1;
                    break;
                }
            }
            coef = value;
            // Optional explicit '*'.
            if matches!(cur.0, Tok::Star) {
                cur = lex
                    .next()?
                    .ok_or_else(|| lex.err(cur.1, "expected a variable after '*'"))?;
                if !matches!(cur.0, Tok::Var(_)) {
                    return Err(lex.err(cur.1, "expected a variable after '*'"));
                }
            }
        }

        match cur.0 {
            Tok::Var(v) => {
                let signed = if sign_negative { -&coef } else { coef.clone() };
                coeffs[v] = &coeffs[v] + &signed;
                pending = lex.next()?;
            }
            Tok::Plus | Tok::Minus if have_coef => {
                // Constant term followed by the next term.
                let v = if sign_negative { -&coef } else { coef.clone() };
                constant = &constant + &v;
                constant_at = cur.1;
                pending = Some(cur);
            }
            _ => {
                return Err(lex.err(cur.1, "expected a variable or operator"));
            }
        }
    }

    if !constant.is_zero() {
        return Err(Error::Parse {
            position: base + constant_at,
            message: "linear form has a nonzero constant term".into(),
        });
    }
    Ok(coeffs)
}

/// Parse a standalone scalar: `[sign] int [ '/' int ]`.
fn parse_scalar(text: &str, base: usize, field: &Field) -> Result<FieldElem> {
    let mut lex = Lexer::new(text, base);
    let mut negative = false;
    let mut cur = lex
        .next()?
        .ok_or(Error::Parse { position: base, message: "empty coordinate".into() })?;
    loop {
        match cur.0 {
            Tok::Plus => {}
            Tok::Minus => negative = !negative,
            _ => break,
        }
        cur = lex.next()?.ok_or_else(|| lex.err(cur.1, "dangling sign"))?;
    }
    let Tok::Int(n) = cur.0 else {
        return Err(lex.err(cur.1, "expected an integer"));
    };
    let mut value = field.from_i64(n);
    match lex.next()? {
        None => {}
        Some((Tok::Slash, sat)) => {
            let Some((Tok::Int(d), dat)) = lex.next()? else {
                return Err(lex.err(sat, "expected denominator after '/'"));
            };
            let den = field.from_i64(d);
            if den.is_zero() {
                return Err(lex.err(dat, "denominator is zero in this field"));
            }
            value = &value * &den.inv().expect("nonzero");
            if let Some((_, at)) = lex.next()? {
                return Err(lex.err(at, "trailing input after coordinate"));
            }
        }
        Some((_, at)) => return Err(lex.err(at, "trailing input after coordinate")),
    }
    Ok(if negative { -&value } else { value })
}
