//! Commutative unital Banach algebras over `ℂ`, their Arens–Hoffman
//! extensions `A[x]/(α)`, resultant-based invertibility, and constructive
//! perturbation into the invertible group.
//!
//! Everything is generic over the real type (`f32` or `f64`) through
//! [`Real`]; the aliases at the crate root fix `f64`.
//!
//! Concrete algebras:
//! - [`FiniteElement`]: `C(X)` for a finite set, i.e. `ℂ^m` with the sup norm.
//! - [`LaurentElement`]: finitely supported elements of a Beurling algebra `ℓ¹(ℤ, ω)`.
//! - [`AhElement`]: the extension `A_α` of any of these, recursively.
//! - [`AnyElement`]: a closed sum of the above for towers built at run time.

pub mod algebra;
pub mod any;
pub mod beurling;
pub mod extension;
pub mod finite;
pub mod fullness;
pub mod json;
pub mod matrix;
pub mod perturb;
pub mod poly;
pub mod resultant;
pub mod ring;
pub mod roots;
pub mod scalar;

pub use algebra::{
    inverse_residual, AlgebraError, BanachAlgebra, InvertCertificate, InvertError, InvertResult, Tolerances,
};
pub use any::{tower, AnyDescriptor, AnyElement, AnyWitness};
pub use beurling::{
    boundary_min_modulus, disc_closure_membership, gelfand_roots, obstruction_verdict, radii, winding_pair,
    AnnulusSpectrum, DiscClosure, GelfandRoots, LaurentElement, Obstruction, SpectrumWitness, WeightSequence,
};
pub use extension::{make_extension, minimal_norm_parameter, AhDescriptor, AhElement, AhWitness};
pub use finite::{FiniteElement, FiniteSpace, ZeroCoordinate};
pub use fullness::{is_full_subalgebra_witness, FullnessReport, FullnessVerdict};
pub use matrix::SquareMatrix;
pub use perturb::{
    fitted_loglog_slope, matrix_perturb, nth_power_approximants, perturb_in_base, perturb_to_invertible,
    power_envelope, stream_rng, MatrixPerturbation, PerturbConfig, PerturbError, PerturbTrace,
};
pub use poly::{divide_by_monic, AlgebraPoly, MonicPoly};
pub use resultant::{
    formal_derivatives, multiplication_matrix, resultant, resultant_poly_in_c, resultant_via_multiplication_matrix,
    sylvester_matrix, PolyMap, ResultantPolynomial,
};
pub use ring::Ring;
pub use roots::polynomial_roots;
pub use scalar::Real;

/// `ℂ^m` with double-precision coordinates.
pub type FiniteSpaceElement = FiniteElement<f64>;
/// Laurent element of a Beurling algebra, double precision.
pub type Laurent = LaurentElement<f64>;
pub type Weight = WeightSequence<f64>;
pub type Annulus = AnnulusSpectrum<f64>;
/// Element of a run-time tower, double precision.
pub type Element = AnyElement<f64>;
pub type Descriptor = AnyDescriptor<f64>;
pub type Tol = Tolerances<f64>;
pub type Complex64 = num_complex::Complex<f64>;
