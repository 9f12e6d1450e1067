//! Command-line front end for `arens-core`: single-shot JSON operations,
//! worked demos, and seeded batch experiments with CSV output.

pub mod demo;
pub mod experiment;
pub mod instances;
pub mod ops;
