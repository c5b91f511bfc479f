//! Exact 3x3 matrices over a [`Field`].
//!
//! Small enough that the characteristic polynomial and determinant are
//! written out directly; rank and kernel go through Gaussian elimination
//! with exact divisions.

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, UniPoly};

/// A 3x3 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix3 {
    field: Field,
    e: [FieldElem; 9],
}

impl Matrix3 {
    pub fn new(field: Field, e: [FieldElem; 9]) -> Self {
        debug_assert!(e.iter().all(|x| x.field() == field));
        Matrix3 { field, e }
    }

    pub fn from_rows(field: Field, rows: [[FieldElem; 3]; 3]) -> Self {
        let [r0, r1, r2] = rows;
        let e: Vec<FieldElem> = r0.into_iter().chain(r1).chain(r2).collect();
        Matrix3::new(field, e.try_into().expect("nine entries"))
    }

    pub fn from_i64(field: Field, rows: [[i64; 3]; 3]) -> Self {
        let e: Vec<FieldElem> = rows
            .iter()
            .flatten()
            .map(|&v| field.from_i64(v))
            .collect();
        Matrix3::new(field, e.try_into().expect("nine entries"))
    }

    pub fn zero(field: Field) -> Self {
        Matrix3::new(field, std::array::from_fn(|_| field.zero()))
    }

    pub fn identity(field: Field) -> Self {
        let mut m = Matrix3::zero(field);
        for i in 0..3 {
            *m.get_mut(i, i) = field.one();
        }
        m
    }

    pub fn diag(field: Field, d: [FieldElem; 3]) -> Self {
        let mut m = Matrix3::zero(field);
        for (i, v) in d.into_iter().enumerate() {
            *m.get_mut(i, i) = v;
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.e[3 * i + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut FieldElem {
        &mut self.e[3 * i + j]
    }

    pub fn entries(&self) -> &[FieldElem; 9] {
        &self.e
    }

    pub fn row(&self, i: usize) -> [FieldElem; 3] {
        std::array::from_fn(|j| self.get(i, j).clone())
    }

    pub fn col(&self, j: usize) -> [FieldElem; 3] {
        std::array::from_fn(|i| self.get(i, j).clone())
    }

    pub fn transpose(&self) -> Matrix3 {
        Matrix3::new(self.field, std::array::from_fn(|n| self.e[3 * (n % 3) + n / 3].clone()))
    }

    pub fn add(&self, rhs: &Matrix3) -> Matrix3 {
        assert_eq!(self.field, rhs.field, "mixed fields");
        Matrix3::new(self.field, std::array::from_fn(|n| &self.e[n] + &rhs.e[n]))
    }

    pub fn sub(&self, rhs: &Matrix3) -> Matrix3 {
        assert_eq!(self.field, rhs.field, "mixed fields");
        Matrix3::new(self.field, std::array::from_fn(|n| &self.e[n] - &rhs.e[n]))
    }

    pub fn neg(&self) -> Matrix3 {
        Matrix3::new(self.field, std::array::from_fn(|n| -&self.e[n]))
    }

    pub fn mul_scalar(&self, c: &FieldElem) -> Matrix3 {
        Matrix3::new(self.field, std::array::from_fn(|n| &self.e[n] * c))
    }

    pub fn mul(&self, rhs: &Matrix3) -> Matrix3 {
        assert_eq!(self.field, rhs.field, "mixed fields");
        let mut m = Matrix3::zero(self.field);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = self.field.zero();
                for l in 0..3 {
                    acc = &acc + &(self.get(i, l) * rhs.get(l, j));
                }
                *m.get_mut(i, j) = acc;
            }
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[FieldElem; 3]) -> [FieldElem; 3] {
        std::array::from_fn(|i| {
            let mut acc = self.field.zero();
            for j in 0..3 {
                acc = &acc + &(self.get(i, j) * &v[j]);
            }
            acc
        })
    }

    pub fn trace(&self) -> FieldElem {
        &(&self.e[0] + &self.e[4]) + &self.e[8]
    }

    pub fn det(&self) -> FieldElem {
        let m = |i: usize, j: usize| &self.e[3 * i + j];
        let c0 = &(m(1, 1) * m(2, 2)) - &(m(1, 2) * m(2, 1));
        let c1 = &(m(1, 0) * m(2, 2)) - &(m(1, 2) * m(2, 0));
        let c2 = &(m(1, 0) * m(2, 1)) - &(m(1, 1) * m(2, 0));
        &(&(m(0, 0) * &c0) - &(m(0, 1) * &c1)) + &(m(0, 2) * &c2)
    }

    /// Sum of the three principal 2x2 minors (the second elementary symmetric
    /// function of the eigenvalues).
    pub fn second_symmetric(&self) -> FieldElem {
        let m = |i: usize, j: usize| &self.e[3 * i + j];
        let m00 = &(m(1, 1) * m(2, 2)) - &(m(1, 2) * m(2, 1));
        let m11 = &(m(0, 0) * m(2, 2)) - &(m(0, 2) * m(2, 0));
        let m22 = &(m(0, 0) * m(1, 1)) - &(m(0, 1) * m(1, 0));
        &(&m00 + &m11) + &m22
    }

    /// Characteristic polynomial `det(x I - A) = x^3 - tr x^2 + s2 x - det`.
    pub fn charpoly(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.field,
            vec![
                -&self.det(),
                self.second_symmetric(),
                -&self.trace(),
                self.field.one(),
            ],
        )
    }

    /// Evaluate a polynomial at the matrix: `sum c_i A^i`.
    pub fn apply_poly(&self, p: &UniPoly) -> Matrix3 {
        let mut acc = Matrix3::zero(self.field);
        let mut pow = Matrix3::identity(self.field);
        for (i, c) in p.coeffs().iter().enumerate() {
            if i > 0 {
                pow = pow.mul(self);
            }
            acc = acc.add(&pow.mul_scalar(c));
        }
        acc
    }

    /// Reduced row echelon form; returns (rref rows, pivot columns).
    fn rref(&self) -> ([[FieldElem; 3]; 3], Vec<usize>) {
        let mut rows: [[FieldElem; 3]; 3] = [self.row(0), self.row(1), self.row(2)];
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..3 {
            let Some(pr) = (r..3).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = rows[r][col].inv().expect("pivot nonzero");
            for j in 0..3 {
                rows[r][j] = &rows[r][j] * &inv;
            }
            for i in 0..3 {
                if i != r && !rows[i][col].is_zero() {
                    let c = rows[i][col].clone();
                    for j in 0..3 {
                        rows[i][j] = &rows[i][j] - &(&c * &rows[r][j]);
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == 3 {
                break;
            }
        }
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn kernel_basis(&self) -> Vec<[FieldElem; 3]> {
        let (rows, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..3 {
            if pivots.contains(&free) {
                continue;
            }
            let mut v: [FieldElem; 3] = std::array::from_fn(|_| self.field.zero());
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[r][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse via Gauss-Jordan; fails when singular.
    pub fn inverse(&self) -> Result<Matrix3> {
        let mut a: Vec<Vec<FieldElem>> = (0..3)
            .map(|i| {
                let mut row: Vec<FieldElem> = self.row(i).to_vec();
                for j in 0..3 {
                    row.push(if i == j { self.field.one() } else { self.field.zero() });
                }
                row
            })
            .collect();
        for col in 0..3 {
            let Some(pr) = (col..3).find(|&i| !a[i][col].is_zero()) else {
                return Err(Error::NotInvertible);
            };
            a.swap(col, pr);
            let inv = a[col][col].inv()?;
            for j in 0..6 {
                a[col][j] = &a[col][j] * &inv;
            }
            for i in 0..3 {
                if i != col && !a[i][col].is_zero() {
                    let c = a[i][col].clone();
                    for j in 0..6 {
                        a[i][j] = &a[i][j] - &(&c * &a[col][j]);
                    }
                }
            }
        }
        let e: Vec<FieldElem> = a
            .into_iter()
            .flat_map(|row| row.into_iter().skip(3))
            .collect();
        Ok(Matrix3::new(self.field, e.try_into().expect("nine entries")))
    }

    /// Whether `A = c I` for some scalar `c` (including zero).
    pub fn is_scalar_multiple_of_identity(&self) -> bool {
        let c = self.get(0, 0);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { c.clone() } else { self.field.zero() };
                if *self.get(i, j) != want {
                    return false;
                }
            }
        }
        true
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
    fn charpoly_diag() {
        // diag(1, 2, 3): (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6.
        let a = Matrix3::from_i64(q(), [[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        assert_eq!(a.charpoly(), UniPoly::from_i64_coeffs(q(), &[-6, 11, -6, 1]));
        assert_eq!(a.trace(), q().from_i64(6));
        assert_eq!(a.det(), q().from_i64(6));
        assert_eq!(a.second_symmetric(), q().from_i64(11));
    }

    #[test]
    fn charpoly_companion() {
        // Companion matrix of x^3 - 2x + 5.
        let a = Matrix3::from_i64(q(), [[0, 0, -5], [1, 0, 2], [0, 1, 0]]);
        assert_eq!(a.charpoly(), UniPoly::from_i64_coeffs(q(), &[5, -2, 0, 1]));
    }

    #[test]
    fn rank_and_kernel_examples() {
        let full = Matrix3::from_i64(q(), [[1, 2, 3], [0, 1, 4], [5, 6, 0]]);
        assert_eq!(full.rank(), 3);
        assert!(full.kernel_basis().is_empty());

        let rank2 = Matrix3::from_i64(q(), [[1, 2, 3], [2, 4, 6], [0, 1, 1]]);
        assert_eq!(rank2.rank(), 2);
        let ker = rank2.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert_eq!(rank2.apply(&ker[0]).map(|x| x.is_zero()), [true, true, true]);

        let rank1 = Matrix3::from_i64(f7(), [[1, 2, 3], [2, 4, 6], [3, 6, 9]]);
        assert_eq!(rank1.rank(), 1);
        assert_eq!(rank1.kernel_basis().len(), 2);

        assert_eq!(Matrix3::zero(q()).rank(), 0);
        assert_eq!(Matrix3::zero(q()).kernel_basis().len(), 3);
    }

    #[test]
    fn inverse_example() {
        let a = Matrix3::from_i64(q(), [[2, 0, 0], [1, 1, 0], [0, 3, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix3::identity(q()));
        assert_eq!(inv.mul(&a), Matrix3::identity(q()));
        let sing = Matrix3::from_i64(q(), [[1, 2, 3], [2, 4, 6], [0, 1, 1]]);
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn scalar_identity_detection() {
        assert!(Matrix3::identity(q()).is_scalar_multiple_of_identity());
        assert!(Matrix3::zero(q()).is_scalar_multiple_of_identity());
        assert!(Matrix3::identity(q())
            .mul_scalar(&q().from_i64(-4))
            .is_scalar_multiple_of_identity());
        assert!(!Matrix3::from_i64(q(), [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
            .is_scalar_multiple_of_identity());
        assert!(!Matrix3::from_i64(q(), [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
            .is_scalar_multiple_of_identity());
    }

    fn small_matrix(field: Field) -> impl Strategy<Value = Matrix3> {
        proptest::array::uniform9(-9i64..=9).prop_map(move |v| {
            Matrix3::from_i64(
                field,
                [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]],
            )
        })
    }

    proptest! {
        /// The matrix satisfies its own characteristic polynomial.
        #[test]
        fn cayley_hamilton_q(a in small_matrix(q())) {
            prop_assert_eq!(a.apply_poly(&a.charpoly()), Matrix3::zero(q()));
        }

        #[test]
        fn cayley_hamilton_f7(a in small_matrix(f7())) {
            prop_assert_eq!(a.apply_poly(&a.charpoly()), Matrix3::zero(f7()));
        }

        /// rank + dim ker = 3.
        #[test]
        fn rank_nullity(a in small_matrix(q())) {
            prop_assert_eq!(a.rank() + a.kernel_basis().len(), 3);
            for v in a.kernel_basis() {
                prop_assert!(a.apply(&v).iter().all(FieldElem::is_zero));
            }
        }

        /// Characteristic polynomial is a conjugation invariant.
        #[test]
        fn charpoly_conjugation_invariant(a in small_matrix(f7()), g in small_matrix(f7())) {
            prop_assume!(!g.det().is_zero());
            let conj = g.mul(&a).mul(&g.inverse().unwrap());
            prop_assert_eq!(conj.charpoly(), a.charpoly());
        }

        /// charpoly(A^T) = charpoly(A).
        #[test]
        fn charpoly_transpose(a in small_matrix(q())) {
            prop_assert_eq!(a.transpose().charpoly(), a.charpoly());
        }

        /// det multiplicativity and trace linearity.
        #[test]
        fn det_trace_algebra(a in small_matrix(f7()), b in small_matrix(f7())) {
            prop_assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
            prop_assert_eq!(a.add(&b).trace(), &a.trace() + &b.trace());
        }
    }
}
