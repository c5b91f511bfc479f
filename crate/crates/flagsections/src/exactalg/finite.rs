//! Finite fields `F_{p^k}` for prime `p >= 5` and `1 <= k <= 3`.
//!
//! Elements are `Copy` with coefficients packed in a fixed `[u64; 3]`, so the
//! exhaustive enumeration loops never touch the heap. The prime is capped at
//! `2^21`, which keeps every intermediate product comfortably inside `u64`:
//! schoolbook accumulators are bounded by `3 * (p-1)^2 + 2 * (p-1)^2 < 2^45`.
//!
//! Extension fields use the first irreducible monic modulus in the
//! deterministic order where candidate `i` has non-leading coefficients equal
//! to the little-endian base-`p` digits of `i`; for instance `F_25` is
//! `F_5[t]/(t^2 + 2)` and `F_343` is `F_7[t]/(t^3 + 2)`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported prime (exclusive bound `2^21`).
pub const MAX_PRIME: u64 = 1 << 21;

/// Deterministic primality test by trial division; inputs are below `2^21`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Modular inverse in `Z/p` by extended Euclid. `None` iff `a == 0 mod p`.
pub fn inv_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "p must be prime and a nonzero");
    Some(t0.rem_euclid(p as i64) as u64)
}

/// A finite field `F_{p^k}`, `k <= 3`.
///
/// For `k >= 2` the field is `F_p[t]` modulo the monic irreducible
/// `t^k + m[k-1] t^{k-1} + ... + m[0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    k: u8,
    m: [u64; 3],
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime_field(p: u64) -> Result<Self> {
        Self::extension(p, 1)
    }

    /// The extension `F_{p^k}` with the canonical modulus.
    pub fn extension(p: u64, k: u8) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::SmallCharacteristic(p));
        }
        if !(1..=3).contains(&k) {
            return Err(Error::BadExtensionDegree(k));
        }
        let m = if k == 1 {
            [0; 3]
        } else {
            Self::search_modulus(p, k)
        };
        Ok(FiniteField { p, k, m })
    }

    /// First irreducible monic modulus: candidate `i` has non-leading
    /// coefficients `m[j] = (i / p^j) mod p`.
    fn search_modulus(p: u64, k: u8) -> [u64; 3] {
        let bound = (p as u128).pow(k as u32);
        let mut i: u128 = 0;
        while i < bound {
            let mut m = [0u64; 3];
            let mut rest = i;
            for slot in m.iter_mut().take(k as usize) {
                *slot = (rest % p as u128) as u64;
                rest /= p as u128;
            }
            if Self::is_irreducible(p, k, &m) {
                return m;
            }
            i += 1;
        }
        unreachable!("irreducible polynomials of degree {k} exist over F_{p}")
    }

    /// Irreducibility of `t^k + m[k-1] t^{k-1} + ... + m[0]` for `k` in
    /// `{2, 3}`: any proper factorization contains a linear factor, so it
    /// suffices to scan for roots in `F_p`.
    fn is_irreducible(p: u64, k: u8, m: &[u64; 3]) -> bool {
        for x in 0..p {
            let mut v: u64 = 1;
            for j in (0..k as usize).rev() {
                v = (v * x + m[j]) % p;
            }
            if v == 0 {
                return false;
            }
        }
        true
    }

    /// Characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn k(&self) -> u8 {
        self.k
    }

    /// Field order `p^k` (fits in `u64` since `p < 2^21`, `k <= 3`).
    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    /// Non-leading modulus coefficients, low degree first (`k` entries;
    /// meaningless for `k == 1`).
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.m[..self.k as usize]
    }

    /// The additive identity.
    pub fn zero(&self) -> FiniteElem {
        FiniteElem { f: *self, c: [0; 3] }
    }

    /// The multiplicative identity.
    pub fn one(&self) -> FiniteElem {
        self.from_u64(1)
    }

    /// Embed a non-negative integer (reduced mod `p`).
    pub fn from_u64(&self, n: u64) -> FiniteElem {
        FiniteElem { f: *self, c: [n % self.p, 0, 0] }
    }

    /// Embed a signed integer (reduced mod `p`).
    pub fn from_i64(&self, n: i64) -> FiniteElem {
        self.from_u64(n.rem_euclid(self.p as i64) as u64)
    }

    /// Element with the given coefficients in the basis `1, t, t^2`
    /// (entries reduced mod `p`; entries at indices `>= k` must vanish
    /// after reduction).
    pub fn from_coeffs(&self, c: [u64; 3]) -> FiniteElem {
        let mut r = [0u64; 3];
        for (i, v) in c.iter().enumerate() {
            r[i] = v % self.p;
        }
        for v in &r[self.k as usize..] {
            assert_eq!(*v, 0, "coefficient beyond extension degree");
        }
        FiniteElem { f: *self, c: r }
    }

    /// The element whose index is `n` (base-`p` digits of `n`, little
    /// endian); inverse of [`FiniteElem::index`].
    pub fn from_index(&self, n: u64) -> FiniteElem {
        debug_assert!(n < self.order());
        let mut c = [0u64; 3];
        let mut rest = n;
        for slot in c.iter_mut().take(self.k as usize) {
            *slot = rest % self.p;
            rest /= self.p;
        }
        FiniteElem { f: *self, c }
    }

    /// All field elements in index order (`0, 1, ..., p-1, t, 1+t, ...`).
    pub fn elements(&self) -> impl Iterator<Item = FiniteElem> + '_ {
        (0..self.order()).map(move |n| self.from_index(n))
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

/// An element of a [`FiniteField`], as coefficients of `1, t, t^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteElem {
    f: FiniteField,
    c: [u64; 3],
}

impl FiniteElem {
    /// The field this element lives in.
    pub fn field(&self) -> FiniteField {
        self.f
    }

    /// Coefficients in the basis `1, t, t^2` (zero-padded).
    pub fn coeffs(&self) -> [u64; 3] {
        self.c
    }

    /// Canonical index `c0 + c1 p + c2 p^2 < p^k`.
    pub fn index(&self) -> u64 {
        self.c[0] + self.c[1] * self.f.p + self.c[2] * self.f.p * self.f.p
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 3]
    }

    pub fn is_one(&self) -> bool {
        self.c == [1, 0, 0]
    }

    pub fn add(&self, rhs: &FiniteElem) -> FiniteElem {
        debug_assert_eq!(self.f, rhs.f);
        let p = self.f.p;
        let mut c = [0u64; 3];
        for i in 0..3 {
            c[i] = (self.c[i] + rhs.c[i]) % p;
        }
        FiniteElem { f: self.f, c }
    }

    pub fn sub(&self, rhs: &FiniteElem) -> FiniteElem {
        debug_assert_eq!(self.f, rhs.f);
        let p = self.f.p;
        let mut c = [0u64; 3];
        for i in 0..3 {
            c[i] = (self.c[i] + p - rhs.c[i]) % p;
        }
        FiniteElem { f: self.f, c }
    }

    pub fn neg(&self) -> FiniteElem {
        let p = self.f.p;
        let mut c = [0u64; 3];
        for i in 0..3 {
            c[i] = (p - self.c[i]) % p;
        }
        FiniteElem { f: self.f, c }
    }

    pub fn mul(&self, rhs: &FiniteElem) -> FiniteElem {
        debug_assert_eq!(self.f, rhs.f);
        let p = self.f.p;
        let k = self.f.k as usize;
        if k == 1 {
            return FiniteElem { f: self.f, c: [(self.c[0] * rhs.c[0]) % p, 0, 0] };
        }
        // Schoolbook product, then fold t^k = -(m0 + m1 t + m2 t^2) from the
        // top degree down. All accumulators stay below 2^45 since p < 2^21.
        let mut acc = [0u64; 5];
        for i in 0..k {
            for j in 0..k {
                acc[i + j] += self.c[i] * rhs.c[j];
            }
        }
        let mut nm = [0u64; 3];
        for j in 0..k {
            nm[j] = (p - self.f.m[j] % p) % p;
        }
        for d in (k..=2 * k - 2).rev() {
            let x = acc[d] % p;
            acc[d] = 0;
            for j in 0..k {
                acc[d - k + j] += x * nm[j];
            }
        }
        let mut c = [0u64; 3];
        for i in 0..k {
            c[i] = acc[i] % p;
        }
        FiniteElem { f: self.f, c }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<FiniteElem> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let p = self.f.p;
        let k = self.f.k as usize;
        if k == 1 {
            let v = inv_mod_p(self.c[0], p).ok_or(Error::NotInvertible)?;
            return Ok(FiniteElem { f: self.f, c: [v, 0, 0] });
        }
        // Extended Euclid in F_p[t] against the (irreducible) modulus; the
        // running Bezout cofactors keep degree < k.
        let mut r0 = [self.f.m[0], self.f.m[1], self.f.m[2], 0];
        r0[k] = 1;
        let mut r1 = [self.c[0], self.c[1], self.c[2], 0];
        let mut t0 = [0u64; 4];
        let mut t1 = [1u64, 0, 0, 0];
        while let Some(d1) = poly_deg(&r1) {
            if d1 == 0 {
                break;
            }
            let q = poly_divmod(&mut r0, &r1, p);
            std::mem::swap(&mut r0, &mut r1);
            // t2 = t0 - q * t1, then shift.
            let qt = poly_mul_small(&q, &t1, p);
            for i in 0..4 {
                t0[i] = (t0[i] + p - qt[i]) % p;
            }
            std::mem::swap(&mut t0, &mut t1);
        }
        // r1 is the nonzero constant gcd (modulus irreducible, self nonzero).
        let s = inv_mod_p(r1[0], p).ok_or(Error::NotInvertible)?;
        let mut c = [0u64; 3];
        for i in 0..k {
            c[i] = (t1[i] * s) % p;
        }
        Ok(FiniteElem { f: self.f, c })
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut e: u64) -> FiniteElem {
        let mut base = *self;
        let mut acc = self.f.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius `x -> x^p`, a generator of the Galois group over `F_p`.
    pub fn frobenius(&self) -> FiniteElem {
        self.pow(self.f.p)
    }

    /// Whether the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        self.c[1] == 0 && self.c[2] == 0
    }
}

/// Degree of a little-endian coefficient slice; `None` for zero.
fn poly_deg(c: &[u64; 4]) -> Option<usize> {
    c.iter().rposition(|&v| v != 0)
}

/// In-place remainder `num %= den` over `F_p`, returning the quotient.
/// `den` is nonzero; degrees stay `<= 3`.
fn poly_divmod(num: &mut [u64; 4], den: &[u64; 4], p: u64) -> [u64; 4] {
    let dd = poly_deg(den).expect("division by zero polynomial");
    let lead_inv = inv_mod_p(den[dd], p).expect("leading coefficient invertible");
    let mut q = [0u64; 4];
    while let Some(dn) = poly_deg(num) {
        if dn < dd {
            break;
        }
        let c = (num[dn] * lead_inv) % p;
        let shift = dn - dd;
        q[shift] = c;
        for i in 0..=dd {
            num[i + shift] = (num[i + shift] + p - (c * den[i]) % p) % p;
        }
    }
    q
}

/// Product of two polynomials whose result degree stays `< 4` (guaranteed by
/// the Euclid invariants above).
fn poly_mul_small(a: &[u64; 4], b: &[u64; 4], p: u64) -> [u64; 4] {
    let mut r = [0u64; 4];
    for i in 0..4 {
        if a[i] == 0 {
            continue;
        }
        for j in 0..4 {
            if b[j] == 0 {
                continue;
            }
            debug_assert!(i + j < 4, "euclid cofactor degree overflow");
            r[i + j] = (r[i + j] + (a[i] % p) * (b[j] % p)) % p;
        }
    }
    r
}

impl fmt::Display for FiniteElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.in_prime_field() {
            return write!(f, "{}", self.c[0]);
        }
        let mut parts = Vec::new();
        for (i, &v) in self.c.iter().enumerate().rev() {
            if v == 0 {
                continue;
            }
            let part = match (i, v) {
                (0, v) => format!("{v}"),
                (1, 1) => "t".to_string(),
                (1, v) => format!("{v}*t"),
                (2, 1) => "t^2".to_string(),
                (2, v) => format!("{v}*t^2"),
                _ => unreachable!(),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn field_construction_guards() {
        assert!(matches!(FiniteField::prime_field(4), Err(Error::NotPrime(4))));
        assert!(matches!(FiniteField::prime_field(2), Err(Error::SmallCharacteristic(2))));
        assert!(matches!(FiniteField::prime_field(3), Err(Error::SmallCharacteristic(3))));
        assert!(matches!(FiniteField::extension(5, 0), Err(Error::BadExtensionDegree(0))));
        assert!(matches!(FiniteField::extension(5, 4), Err(Error::BadExtensionDegree(4))));
        assert!(matches!(FiniteField::prime_field(1 << 21), Err(Error::PrimeTooLarge(_))));
    }

    /// Brute-force check that the canonical modulus is the first irreducible
    /// in the documented candidate order.
    fn first_irreducible_brute(p: u64, k: u8) -> Vec<u64> {
        'cand: for i in 0..p.pow(k as u32) {
            let mut m = vec![0u64; k as usize];
            let mut rest = i;
            for slot in m.iter_mut() {
                *slot = rest % p;
                rest /= p;
            }
            for x in 0..p {
                let mut v: u64 = 1;
                for j in (0..k as usize).rev() {
                    v = (v * x + m[j]) % p;
                }
                if v == 0 {
                    continue 'cand;
                }
            }
            return m;
        }
        panic!("no irreducible found");
    }

    #[test]
    fn canonical_moduli() {
        // F_25 = F_5[t]/(t^2 + 2), F_343 = F_7[t]/(t^3 + 2).
        let f25 = FiniteField::extension(5, 2).unwrap();
        assert_eq!(f25.modulus_coeffs(), &[2, 0]);
        let f343 = FiniteField::extension(7, 3).unwrap();
        assert_eq!(f343.modulus_coeffs(), &[2, 0, 0]);
        // F_125: cubing is a bijection mod 5, so no pure cube term works;
        // the scan lands on t^3 + t + 1.
        let f125 = FiniteField::extension(5, 3).unwrap();
        assert_eq!(f125.modulus_coeffs(), &[1, 1, 0]);

        for (p, k) in [(5, 2), (5, 3), (7, 2), (7, 3), (11, 2), (13, 3)] {
            let f = FiniteField::extension(p, k).unwrap();
            assert_eq!(f.modulus_coeffs(), &first_irreducible_brute(p, k)[..]);
        }
    }

    #[test]
    fn element_roundtrip_index() {
        let f = FiniteField::extension(7, 3).unwrap();
        assert_eq!(f.order(), 343);
        for n in 0..f.order() {
            assert_eq!(f.from_index(n).index(), n);
        }
        assert_eq!(f.elements().count(), 343);
    }

    #[test]
    fn arithmetic_axioms_exhaustive_f25() {
        let f = FiniteField::extension(5, 2).unwrap();
        let elems: Vec<_> = f.elements().collect();
        for a in &elems {
            assert_eq!(a.add(&f.zero()), *a);
            assert_eq!(a.mul(&f.one()), *a);
            assert_eq!(a.add(&a.neg()), f.zero());
            if !a.is_zero() {
                assert_eq!(a.mul(&a.inv().unwrap()), f.one());
            }
            for b in &elems {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                assert_eq!(a.sub(b), a.add(&b.neg()));
                for c in &elems[..6] {
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
                }
            }
        }
    }

    #[test]
    fn inverses_f343() {
        let f = FiniteField::extension(7, 3).unwrap();
        for a in f.elements().skip(1) {
            let i = a.inv().unwrap();
            assert_eq!(a.mul(&i), f.one());
            // Inverse agrees with a^(q-2).
            assert_eq!(i, a.pow(f.order() - 2));
        }
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn frobenius_fixes_prime_field_and_has_order_k() {
        let f = FiniteField::extension(5, 3).unwrap();
        for a in f.elements() {
            let fr = a.frobenius();
            if a.in_prime_field() {
                assert_eq!(fr, a);
            }
            assert_eq!(fr.frobenius().frobenius(), a);
        }
    }

    #[test]
    fn modulus_vanishes_on_generator() {
        // t satisfies the modulus: t^k = -(m0 + m1 t + m2 t^2).
        for (p, k) in [(5u64, 2u8), (5, 3), (7, 2), (7, 3), (11, 3)] {
            let f = FiniteField::extension(p, k).unwrap();
            let t = f.from_coeffs([0, 1, 0]);
            let mut lhs = t.pow(k as u64);
            for (j, &m) in f.modulus_coeffs().iter().enumerate() {
                let mut term = f.from_u64(m);
                for _ in 0..j {
                    term = term.mul(&t);
                }
                lhs = lhs.add(&term);
            }
            assert!(lhs.is_zero(), "modulus must annihilate t over F_{p}^{k}");
        }
    }

    #[test]
    fn display_forms() {
        let f = FiniteField::extension(5, 2).unwrap();
        assert_eq!(f.from_u64(3).to_string(), "3");
        assert_eq!(f.from_coeffs([4, 2, 0]).to_string(), "2*t+4");
        assert_eq!(f.from_coeffs([0, 1, 0]).to_string(), "t");
        assert_eq!(f.zero().to_string(), "0");
    }

    #[test]
    fn large_prime_products_stay_exact() {
        // Near the 2^21 cap, products must not overflow.
        let p = 2_097_143; // largest prime below 2^21
        let f = FiniteField::prime_field(p).unwrap();
        let a = f.from_u64(p - 1);
        assert_eq!(a.mul(&a), f.one()); // (-1)^2 = 1
        let b = f.from_u64(p - 2);
        assert_eq!(b.mul(&b), f.from_u64(4)); // (-2)^2 = 4
        assert_eq!(b.mul(&b.inv().unwrap()), f.one());
    }
}
