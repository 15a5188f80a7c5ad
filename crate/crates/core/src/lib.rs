//! Exact Clifford-algebra operator calculus for almost Hermitian models.
//!
//! Everything here acts on the `4^n`-dimensional blade space of a
//! `2n`-dimensional oriented inner product space with an orthogonal complex
//! structure. The same coefficient table is read either as an element of
//! the complexified Clifford algebra or as a complex exterior form, so every
//! "through the isomorphism" statement becomes a literal matrix equality.
//!
//! Entries live in the exact field ℚ(i, √2) ([`scalar::Exact`]) or, for
//! cross-checks, in floating complex numbers ([`scalar::Float`]).

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod clifford;
pub mod connection;
pub mod context;
pub mod dirac;
pub mod harmonics;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod sl2;
pub mod suites;
#[cfg(test)]
mod test_models;

pub use clifford::{ComplexStructure, Multivector};
pub use linalg::Matrix;
pub use scalar::{root_of_unity_8, Exact, Float, Scalar};

#[cfg(feature = "std")]
mod errors {
    impl std::error::Error for crate::lie::ModelError {}
    impl std::error::Error for crate::sl2::Sl2Error {}
    impl std::error::Error for crate::suites::SuiteError {}
}
