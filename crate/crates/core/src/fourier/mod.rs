//! Finite abelian groups over the complex numbers: characters, the Fourier
//! transform, homomorphism counting and the quantum homomorphism
//! identification algorithm.

mod complex;
mod homid;
mod homs;
mod transform;

pub use complex::{ComplexMatrix, ComplexVector, TOL};
pub use homid::{classical_query_count, grouphomid_identify, HomOracle, Identification, SeparationRow, separation_table};
pub use homs::{count_homs_formula, count_homs_enumerated, enumerate_homs, homs_iter, HomIter};
pub use transform::{
    character_orthogonality_check, character_value, convolution_theorem_error, convolve, dj_amplitude,
    fourier_matrix, fourier_transform, inverse_fourier, pointwise, GroupFunction,
};
