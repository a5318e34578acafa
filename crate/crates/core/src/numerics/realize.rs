//! Alternating projections between the orbit `{X : λ(X) = λ}` and the set of matrices whose
//! off-diagonal block has singular values `s`. A hit is a witness for `(λ, s) ∈ A(p,q)`; a miss
//! proves nothing.
//!
//! On the boundary of the cone the two sets meet tangentially and the plain iteration only
//! converges like `1/k`. Every few iterations a step is extrapolated along the last move and
//! kept only if it lowers the residual. Since each step then shrinks the distance by roughly
//! its square, residuals much below `1e-8` are out of reach in double precision there.

use num_complex::Complex64;

use super::eigen::{eigen_decomposition, eigenvalues_desc, singular_values_desc, svd};
use super::matrix::{block_of, seed_matrix, CMatrix, HermitianMatrix};
use super::rng::XorShift64Star;
use crate::apqcone::SpectrumPair;
use crate::polyhedra::rational::to_f64;
use crate::{Error, Result};

const DEFAULT_SEED: u64 = 0x0005_EED0_FA99;
const EXTRAPOLATE_EVERY: usize = 3;
const EXTRAPOLATION_GAIN: f64 = 2.0;

/// A target pair with floating-point coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPair {
    pub p: usize,
    pub q: usize,
    pub lambda: Vec<f64>,
    pub s: Vec<f64>,
}

impl FloatPair {
    pub fn new(p: usize, q: usize, lambda: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        if q == 0 || p < q {
            return Err(Error::arg(format!("need p >= q >= 1, got p={p}, q={q}")));
        }
        Error::check_dim(p + q, lambda.len())?;
        Error::check_dim(q, s.len())?;
        if lambda.iter().chain(&s).any(|v| !v.is_finite()) {
            return Err(Error::arg("coordinates must be finite"));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) || s.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::arg("λ and s must be weakly decreasing"));
        }
        if s[q - 1] < 0.0 {
            return Err(Error::arg("singular values must be nonnegative"));
        }
        Ok(Self { p, q, lambda, s })
    }

    pub fn from_exact(sp: &SpectrumPair) -> Self {
        Self {
            p: sp.p(),
            q: sp.q(),
            lambda: sp.lambda().entries().iter().map(to_f64).collect(),
            s: sp.s().entries().iter().map(to_f64).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum RealizeOutcome {
    Witness {
        matrix: HermitianMatrix,
        iterations: usize,
        residual: f64,
    },
    /// The heuristic ran out of iterations; membership is undecided.
    Unknown { iterations: usize, residual: f64 },
}

impl RealizeOutcome {
    pub fn witness(&self) -> Option<&HermitianMatrix> {
        match self {
            RealizeOutcome::Witness { matrix, .. } => Some(matrix),
            RealizeOutcome::Unknown { .. } => None,
        }
    }

    pub fn iterations(&self) -> usize {
        match self {
            RealizeOutcome::Witness { iterations, .. }
            | RealizeOutcome::Unknown { iterations, .. } => *iterations,
        }
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `max(|λ(X) - λ|, |s(π(X)) - s|)` in the sup norm.
fn residual(x: &HermitianMatrix, target: &FloatPair) -> Result<f64> {
    let lambda = eigenvalues_desc(x)?;
    let s = singular_values_desc(&block_of(x, target.p, target.q)?)?;
    Ok(max_abs_diff(&lambda, &target.lambda).max(max_abs_diff(&s, &target.s)))
}

/// Replaces the spectrum of `x` by `lambda`, keeping its eigenvectors.
fn project_spectrum(x: &HermitianMatrix, lambda: &[f64]) -> Result<HermitianMatrix> {
    let eig = eigen_decomposition(x)?;
    HermitianMatrix::diagonal(lambda).conjugated_by(&eig.vectors)
}

/// Replaces the singular values of the off-diagonal block by `s`, keeping its singular vectors
/// and both diagonal blocks.
fn project_block(x: &HermitianMatrix, target: &FloatPair) -> Result<HermitianMatrix> {
    let (p, q) = (target.p, target.q);
    let d = svd(&block_of(x, p, q)?)?;
    let scaled = CMatrix::from_fn(p, q, |i, j| d.u[(i, j)] * target.s[j]);
    let block = scaled.mul(&d.v.adjoint())?;
    let mut m = x.matrix().clone();
    for i in 0..p {
        for j in 0..q {
            m[(i, p + j)] = block[(i, j)];
            m[(p + j, i)] = block[(i, j)].conj();
        }
    }
    Ok(HermitianMatrix::hermitize(&m))
}

fn distance(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    let (a, b) = (a.matrix(), b.matrix());
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += (a[(i, j)] - b[(i, j)]).norm_sqr();
        }
    }
    sum.sqrt()
}

/// `to + t·(to - from)`.
fn step_past(from: &HermitianMatrix, to: &HermitianMatrix, t: f64) -> HermitianMatrix {
    let (a, b) = (from.matrix(), to.matrix());
    let n = a.rows();
    HermitianMatrix::hermitize(&CMatrix::from_fn(n, n, |i, j| {
        b[(i, j)] + (b[(i, j)] - a[(i, j)]) * t
    }))
}

fn project(x: &HermitianMatrix, target: &FloatPair) -> Result<HermitianMatrix> {
    project_block(&project_spectrum(x, &target.lambda)?, target)
}

/// Random Hermitian diagonal blocks around `Y(s)`, centred on the mean eigenvalue.
fn initial_completion(target: &FloatPair, rng: &mut XorShift64Star) -> Result<HermitianMatrix> {
    let n = target.p + target.q;
    let seed = seed_matrix(&target.s, target.p, target.q)?;
    let scale = target
        .lambda
        .iter()
        .chain(&target.s)
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1e-12);
    let mean = target.lambda.iter().sum::<f64>() / n as f64;
    let noise = super::sample_hermitian(n, rng);
    let mut m = seed.matrix().clone();
    for i in 0..n {
        for j in 0..n {
            let same_block = (i < target.p) == (j < target.p);
            if same_block {
                m[(i, j)] = noise.matrix()[(i, j)] * (0.5 * scale);
                if i == j {
                    m[(i, j)] += Complex64::new(mean, 0.0);
                }
            }
        }
    }
    Ok(HermitianMatrix::hermitize(&m))
}

/// [`realize_with_seed`] with a fixed default seed.
pub fn realize(target: &FloatPair, max_iters: usize, tol: f64) -> Result<RealizeOutcome> {
    realize_with_seed(target, max_iters, tol, DEFAULT_SEED)
}

/// Searches for `X` with `λ(X) ≈ λ` and `s(π(X)) ≈ s` (sup-norm residual below `tol`).
///
/// Iteration 0 tests `Y(s)` itself. Each later iteration projects onto the spectrum, then onto
/// the block singular values, with a safeguarded extrapolation every third iteration.
pub fn realize_with_seed(
    target: &FloatPair,
    max_iters: usize,
    tol: f64,
    seed: u64,
) -> Result<RealizeOutcome> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::arg("tolerance must be positive"));
    }
    let start = seed_matrix(&target.s, target.p, target.q)?;
    let res = residual(&start, target)?;
    if res < tol {
        return Ok(RealizeOutcome::Witness {
            matrix: start,
            iterations: 0,
            residual: res,
        });
    }
    let mut rng = XorShift64Star::new(seed);
    let mut x = initial_completion(target, &mut rng)?;
    let mut previous: Option<HermitianMatrix> = None;
    let mut last = res;
    for it in 1..=max_iters {
        let mut next = project(&x, target)?;
        last = residual(&next, target)?;
        if let (0, Some(prev)) = (it % EXTRAPOLATE_EVERY, &previous) {
            // Moves shrink like d_{k+1} ≈ d_k - c·d_k², so the remaining distance is about
            // `step / (shrinkage of the step)`.
            let (before, now) = (distance(prev, &x), distance(&x, &next));
            if before > now {
                let t = EXTRAPOLATION_GAIN * now / (before - now);
                let candidate = project(&step_past(&x, &next, t), target)?;
                let r = residual(&candidate, target)?;
                if r < last {
                    next = candidate;
                    last = r;
                }
            }
        }
        if last < tol {
            return Ok(RealizeOutcome::Witness {
                matrix: next,
                iterations: it,
                residual: last,
            });
        }
        previous = Some(std::mem::replace(&mut x, next));
    }
    Ok(RealizeOutcome::Unknown {
        iterations: max_iters,
        residual: last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_pair_needs_no_iterations() {
        let t = FloatPair::new(3, 2, vec![2.0, 0.5, 0.0, -0.5, -2.0], vec![2.0, 0.5]).unwrap();
        let out = realize(&t, 10, 1e-10).unwrap();
        assert_eq!(out.iterations(), 0);
        assert!(out.witness().is_some());
    }

    #[test]
    fn invalid_targets() {
        assert!(FloatPair::new(2, 2, vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0]).is_err());
        assert!(FloatPair::new(2, 2, vec![0.0; 4], vec![0.0, -1.0]).is_err());
        assert!(FloatPair::new(2, 2, vec![0.0; 3], vec![0.0, 0.0]).is_err());
        let t = FloatPair::new(1, 1, vec![1.0, -1.0], vec![0.5]).unwrap();
        assert!(realize(&t, 1, 0.0).is_err());
    }

    #[test]
    fn boundary_point_converges() {
        // λ0 = (1,1,1,1,-1,-1), s0 = (1,0,0) lies on the boundary of A(3,3).
        let t = FloatPair::new(
            3,
            3,
            vec![1.0, 1.0, 1.0, 1.0, -1.0, -1.0],
            vec![1.0, 0.0, 0.0],
        )
        .unwrap();
        let out = realize(&t, 10_000, 1e-6).unwrap();
        assert!(
            out.witness().is_some(),
            "stopped after {} iterations",
            out.iterations()
        );
    }

    #[test]
    fn simple_interior_point() {
        // λ = (2, 0), s = 0.5: [[1, .5], [.5, 1]] shifted has these data, so a witness exists.
        let t = FloatPair::new(1, 1, vec![2.0, 0.0], vec![0.5]).unwrap();
        let out = realize(&t, 2000, 1e-9).unwrap();
        let x = out.witness().expect("witness");
        assert!(residual(x, &t).unwrap() < 1e-8);
    }
}
