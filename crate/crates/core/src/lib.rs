//! Quantum algorithms modelled in the category of sets and relations, next
//! to the finite abelian group Fourier analysis they borrow from.
//!
//! The relational side starts at [`relcore::Rel`]; observables are
//! [`groupoid::AbelianGroupoid`]s, complementary pairs come from
//! [`comp::build_pair`], and [`qcalg`] runs Deutsch-Jozsa, single-shot Grover
//! and group homomorphism identification as relation composites. The complex
//! side lives in [`fourier`].

pub mod classrel;
pub mod cli;
pub mod comp;
pub mod error;
pub mod fourier;
pub mod group;
pub mod groupoid;
pub mod qcalg;
pub mod relcore;
pub mod text;
pub mod verify;

pub use error::{QcrelError, Result};
pub use group::{FiniteAbelianGroup, GroupHomTable};
pub use groupoid::AbelianGroupoid;
pub use relcore::{Rel, Scalar, Subset};
