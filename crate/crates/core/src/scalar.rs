//! Real scalar abstraction. Every algebra in this crate is a complex algebra
//! whose coefficients are `Complex<T>` for some `T: Real` (`f32` or `f64`).

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use rand::Rng;

/// Floating point type used for norms, radii and complex coefficients.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in the target float type")
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Draws a point uniformly from the open complex disc of the given radius.
pub fn sample_disc<T: Real, R: Rng + ?Sized>(radius: T, rng: &mut R) -> Complex<T> {
    let u: f64 = rng.gen();
    let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    let r = radius * lit::<T>(u.sqrt());
    Complex::from_polar(r, lit(theta))
}

/// Draws a point uniformly on the circle of the given radius.
pub fn sample_circle<T: Real, R: Rng + ?Sized>(radius: T, rng: &mut R) -> Complex<T> {
    let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    Complex::from_polar(radius, lit(theta))
}

/// Factorial as a real number; exact for the small degrees used here.
pub fn factorial<T: Real>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, j| acc * lit::<T>(j as f64))
}
