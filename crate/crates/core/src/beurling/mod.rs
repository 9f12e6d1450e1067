//! The Beurling algebras `ℓ¹(ℤ, ω)`: weights, Laurent elements, annulus
//! spectra and winding-number obstructions.

pub mod laurent;
pub mod spectrum;
pub mod weight;

pub use laurent::{LaurentElement, SpectrumWitness};
pub use spectrum::{
    boundary_min_modulus, disc_closure_membership, gelfand_roots, obstruction_verdict, radii, winding_pair,
    AnnulusSpectrum, DiscClosure, GelfandRoots, Obstruction,
};
pub use weight::WeightSequence;
