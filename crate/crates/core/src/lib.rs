//! Gauss diagram formulas for low-degree Vassiliev knot invariants.
//!
//! The crate is organised bottom-up:
//!
//! * [`knotcodes`] parses PD, Gauss and DT codes and knot tables.
//! * [`gaussdiag`] holds the signed arrow diagrams, their canonical forms,
//!   singular diagrams and chord diagrams.
//! * [`chordalg`] enumerates chord diagrams and solves for weight systems.
//! * [`arrowmatch`] counts arrow subdiagrams of a given type.
//! * [`invariants`] assembles the degree-4 formula, the degree-2 reference
//!   invariant and the Conway skein oracle.
//! * [`moves`] implements Reidemeister moves, random walks, the singular
//!   extension and the verification suites.

pub mod arrowmatch;
pub mod chordalg;
mod error;
pub mod gaussdiag;
pub mod invariants;
pub mod knotcodes;
pub mod linalg;
pub mod moves;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
