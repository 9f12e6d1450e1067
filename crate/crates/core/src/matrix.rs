//! Dense square matrices over a commutative ring and the Berkowitz
//! characteristic polynomial.
//!
//! Everything here is division-free: the base rings of interest (for example
//! `ℂ^m` under componentwise product) have zero divisors, so elimination
//! with pivoting is not an option.

use num_traits::{Float, Zero};

use crate::algebra::BanachAlgebra;
use crate::ring::Ring;
use crate::scalar::lit;

#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<R> {
    size: usize,
    entries: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    /// Row-major construction. Panics if `entries.len() != size * size`.
    pub fn from_row_major(size: usize, entries: Vec<R>) -> Self {
        assert_eq!(entries.len(), size * size, "matrix entry count");
        SquareMatrix { size, entries }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            assert_eq!(row.len(), size, "matrix must be square");
            entries.extend(row);
        }
        SquareMatrix { size, entries }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.entries[i * self.size + j] = value;
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.size.max(1))
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> SquareMatrix<S> {
        SquareMatrix {
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.size);
        (0..self.size)
            .map(|i| dot(&self.entries[i * self.size..(i + 1) * self.size], v))
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        SquareMatrix::from_fn(n, |i, j| {
            let mut acc = self.get(i, 0).mul_ref(rhs.get(0, j));
            for k in 1..n {
                acc = acc.add_ref(&self.get(i, k).mul_ref(rhs.get(k, j)));
            }
            acc
        })
    }

    /// Coefficients `[1, c_1, ..., c_n]` of `det(λI − M) = λ^n + c_1 λ^{n−1} + … + c_n`.
    ///
    /// Berkowitz: the characteristic polynomial of the leading `(k+1)×(k+1)`
    /// block is a lower-triangular Toeplitz matrix applied to that of the
    /// leading `k×k` block. Uses O(n⁴) ring multiplications and no division.
    /// `one` supplies the unit for the empty matrix.
    pub fn char_poly(&self, one: &R) -> Vec<R> {
        let n = self.size;
        let mut poly = vec![one.clone()];
        for k in 0..n {
            let a_kk = self.get(k, k);
            // Toeplitz column: [1, −a_kk, −R C, −R M C, …, −R M^{k−1} C]
            let mut column = Vec::with_capacity(k + 2);
            column.push(one.clone());
            column.push(a_kk.neg_ref());
            let row: Vec<R> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let mut v: Vec<R> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for step in 0..k {
                column.push(dot(&row, &v).neg_ref());
                if step + 1 < k {
                    v = self.leading_block_mul(k, &v);
                }
            }
            let mut next = Vec::with_capacity(k + 2);
            for i in 0..k + 2 {
                let mut acc: Option<R> = None;
                for (j, p) in poly.iter().enumerate().take(i.min(k) + 1) {
                    let term = column[i - j].mul_ref(p);
                    acc = Some(match acc {
                        None => term,
                        Some(s) => s.add_ref(&term),
                    });
                }
                next.push(acc.expect("non-empty Toeplitz row"));
            }
            poly = next;
        }
        poly
    }

    /// Division-free determinant.
    pub fn determinant(&self, one: &R) -> R {
        let poly = self.char_poly(one);
        let c_n = poly[self.size].clone();
        if self.size % 2 == 0 {
            c_n
        } else {
            c_n.neg_ref()
        }
    }

    /// `(det M, adj(M) · v)` from one Berkowitz pass, using Cayley–Hamilton:
    /// `adj(M) = (−1)^{n−1} (M^{n−1} + c_1 M^{n−2} + … + c_{n−1} I)`.
    pub fn det_and_adjugate_apply(&self, v: &[R], one: &R) -> (R, Vec<R>) {
        let n = self.size;
        assert_eq!(v.len(), n);
        let poly = self.char_poly(one);
        let det = if n % 2 == 0 {
            poly[n].clone()
        } else {
            poly[n].neg_ref()
        };
        if n == 0 {
            return (det, Vec::new());
        }
        let mut y = v.to_vec();
        for c in poly.iter().take(n).skip(1) {
            y = self.mul_vec(&y);
            for (yi, vi) in y.iter_mut().zip(v) {
                *yi = yi.add_ref(&c.mul_ref(vi));
            }
        }
        if n % 2 == 0 {
            y = y.iter().map(Ring::neg_ref).collect();
        }
        (det, y)
    }

    /// Full adjugate, column by column.
    pub fn adjugate(&self, one: &R) -> Self {
        let n = self.size;
        let zero = one.zero_like();
        let mut out = SquareMatrix::from_fn(n, |_, _| zero.clone());
        for j in 0..n {
            let e: Vec<R> = (0..n)
                .map(|i| if i == j { one.clone() } else { zero.clone() })
                .collect();
            let (_, col) = self.det_and_adjugate_apply(&e, one);
            for (i, x) in col.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }

    fn leading_block_mul(&self, k: usize, v: &[R]) -> Vec<R> {
        (0..k)
            .map(|i| dot(&self.entries[i * self.size..i * self.size + k], v))
            .collect()
    }
}

impl<A: BanachAlgebra> SquareMatrix<A> {
    /// Running rounding-error bound for [`SquareMatrix::determinant`]: the
    /// same Berkowitz program, charging each operation the norm of its
    /// result plus the propagated error of its operands, times `16 ε_mach`.
    /// Exact zeros stay zero, so structurally sparse inputs get small bounds.
    pub fn determinant_error_bound(&self) -> A::Real {
        let Some(first) = self.entries.first() else {
            return A::Real::zero();
        };
        let tracked = self.map(|e| Tracked { norm: e.norm(), value: e.clone(), error: e.norm() });
        let units = tracked.determinant(&Tracked::exact(first.one_like())).error;
        units * A::Real::epsilon() * lit(ROUNDING_SAFETY)
    }
}

/// Slack over the first-order bound for complex products and convolutions.
const ROUNDING_SAFETY: f64 = 16.0;

/// A value with the norm and first-order error (over `ε_mach`) it carries.
#[derive(Clone, Debug)]
struct Tracked<A: BanachAlgebra> {
    value: A,
    norm: A::Real,
    error: A::Real,
}

impl<A: BanachAlgebra> Tracked<A> {
    fn exact(value: A) -> Self {
        Tracked { norm: value.norm(), value, error: A::Real::zero() }
    }

    fn with_error(value: A, error: A::Real) -> Self {
        let norm = value.norm();
        Tracked { error: error + norm, norm, value }
    }
}

impl<A: BanachAlgebra> Ring for Tracked<A> {
    fn zero_like(&self) -> Self {
        Tracked::exact(self.value.zero_like())
    }
    fn one_like(&self) -> Self {
        Tracked::exact(self.value.one_like())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Tracked::with_error(self.value.add_ref(&rhs.value), self.error + rhs.error)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Tracked::with_error(self.value.sub_ref(&rhs.value), self.error + rhs.error)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        // The product's own rounding is charged at ‖a‖‖b‖, which bounds ‖ab‖.
        let propagated = self.error * rhs.norm + self.norm * rhs.error + self.norm * rhs.norm;
        let value = self.value.mul_ref(&rhs.value);
        Tracked { norm: value.norm(), value, error: propagated }
    }
    fn neg_ref(&self) -> Self {
        Tracked { value: self.value.neg_ref(), norm: self.norm, error: self.error }
    }
}

fn dot<R: Ring>(a: &[R], b: &[R]) -> R {
    debug_assert_eq!(a.len(), b.len());
    let mut it = a.iter().zip(b);
    let (x0, y0) = it.next().expect("dot product of empty vectors");
    it.fold(x0.mul_ref(y0), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)))
}
