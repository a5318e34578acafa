//! Exact computations on the Horn cone `Horn(n)` and on the cone `A(p,q)` of
//! (eigenvalues, off-diagonal singular values) pairs of Hermitian matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinat`]: index subsets of `[n]`, the partition map `mu` and the reflection `J ↦ J°`.
//! * [`horncone`]: recursive enumeration of the triples `LR^n_r` and exact `Horn(n)` membership.
//! * [`apqcone`]: the three competing inequality systems for `A(p,q)`, membership and the audit
//!   of the disputed `A(3,3)` point.
//! * [`polyhedra`]: exact rational simplex, Farkas implication, redundancy pruning, cone equality.
//! * [`numerics`]: floating-point oracle: Jacobi eigensolver, sampling, alternating projections.
//! * [`cli`]: the `horn-cone` command-line front end.
//!
//! Data-parallel loops go through [`par`]; with the default `parallel` feature they run on rayon,
//! without it they run sequentially and produce identical results.

pub mod apqcone;
pub mod cli;
pub mod combinat;
mod error;
pub mod horncone;
pub mod json;
pub mod numerics;
pub mod par;
pub mod polyhedra;

pub use error::{Error, Result};
pub use polyhedra::rational::Rational;
