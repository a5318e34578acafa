//! Floating-point oracle for `A(p,q)`: Hermitian eigenvalues by cyclic Jacobi rotations,
//! singular values of the off-diagonal block, Monte Carlo sampling of `(λ(X), s(π(X)))` and a
//! heuristic search for a matrix realizing a given pair.

mod eigen;
mod matrix;
mod realize;
pub mod rng;
mod sampling;

pub use eigen::{
    eigen_decomposition, eigenvalues_desc, singular_values_desc, svd, EigenDecomposition, Svd,
};
pub use matrix::{block_of, seed_matrix, CMatrix, HermitianMatrix};
pub use realize::{realize, realize_with_seed, FloatPair, RealizeOutcome};
pub use sampling::{
    sample_hermitian, sample_spectrum_pair, soundness_scan, SampleReport, SampleViolation,
};

pub use num_complex::Complex64;
