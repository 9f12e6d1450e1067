//! Minimal commutative ring contract used by the division-free kernels.
//!
//! Elements carry whatever context they need (dimension, weight, extension
//! data), so `zero_like`/`one_like` build constants from an existing value.
//! Operations assume compatible operands; checked variants live on
//! [`crate::BanachAlgebra`].

use std::fmt::Debug;

use num_complex::Complex;

use crate::scalar::Real;

pub trait Ring: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;

    fn neg_ref(&self) -> Self {
        self.zero_like().sub_ref(self)
    }

    /// `k · self` by double-and-add.
    fn mul_int(&self, k: i64) -> Self {
        let mut acc = self.zero_like();
        let mut base = if k < 0 { self.neg_ref() } else { self.clone() };
        let mut m = k.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.add_ref(&base);
            }
            base = base.add_ref(&base);
            m >>= 1;
        }
        acc
    }
}

macro_rules! int_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn zero_like(&self) -> Self { 0 }
            fn one_like(&self) -> Self { 1 }
            fn add_ref(&self, rhs: &Self) -> Self { self + rhs }
            fn sub_ref(&self, rhs: &Self) -> Self { self - rhs }
            fn mul_ref(&self, rhs: &Self) -> Self { self * rhs }
            fn neg_ref(&self) -> Self { -self }
        }
    )*};
}

int_ring!(i32, i64, i128);

impl<T: Real> Ring for Complex<T> {
    fn zero_like(&self) -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn one_like(&self) -> Self {
        Complex::new(T::one(), T::zero())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}
