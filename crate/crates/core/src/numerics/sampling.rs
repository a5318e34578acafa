use num_complex::Complex64;

use super::eigen::{eigenvalues_desc, singular_values_desc};
use super::matrix::{block_of, CMatrix, HermitianMatrix};
use super::rng::XorShift64Star;
use crate::polyhedra::ConeSystem;
use crate::{par, Error, Result};

/// Slacks below `-SLACK_TOLERANCE` count as violations.
pub const SLACK_TOLERANCE: f64 = 1e-8;

/// GUE-style draw: real `N(0,1)` diagonal, off-diagonal entries with independent `N(0,1/2)`
/// real and imaginary parts.
pub fn sample_hermitian(n: usize, rng: &mut XorShift64Star) -> HermitianMatrix {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.normal(), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(rng.normal() * half, rng.normal() * half);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::hermitize(&m)
}

/// One Monte Carlo point `(λ(X), s(π(X)))` of `A(p,q)`.
pub fn sample_spectrum_pair(
    p: usize,
    q: usize,
    rng: &mut XorShift64Star,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if q == 0 || p < q {
        return Err(Error::arg(format!("need p >= q >= 1, got p={p}, q={q}")));
    }
    let x = sample_hermitian(p + q, rng);
    let lambda = eigenvalues_desc(&x)?;
    let s = singular_values_desc(&block_of(&x, p, q)?)?;
    Ok((lambda, s))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleViolation {
    pub sample: usize,
    pub label: String,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub count: usize,
    pub seed: u64,
    /// `+∞` when no sample was drawn or the system has no forms.
    pub min_slack: f64,
    pub violations: Vec<SampleViolation>,
}

/// Evaluates every form of `system` (over the `(λ, s)` layout) on `count` samples drawn from
/// independent streams of `seed`.
pub fn soundness_scan(
    p: usize,
    q: usize,
    count: usize,
    seed: u64,
    system: &ConeSystem,
) -> Result<SampleReport> {
    if q == 0 || p < q {
        return Err(Error::arg(format!("need p >= q >= 1, got p={p}, q={q}")));
    }
    Error::check_dim(p + q + q, system.dim())?;
    let per_sample = par::map_range(count, |i| -> Result<(f64, Vec<SampleViolation>)> {
        let mut rng = XorShift64Star::stream(seed, i as u64);
        let (lambda, s) = sample_spectrum_pair(p, q, &mut rng)?;
        let point: Vec<f64> = lambda.into_iter().chain(s).collect();
        let mut min = f64::INFINITY;
        let mut bad = Vec::new();
        for f in &system.forms {
            let slack = f.eval_f64(&point);
            min = min.min(slack);
            if slack < -SLACK_TOLERANCE {
                bad.push(SampleViolation {
                    sample: i,
                    label: f.label.clone(),
                    slack,
                });
            }
        }
        Ok((min, bad))
    });
    let mut min_slack = f64::INFINITY;
    let mut violations = Vec::new();
    for r in per_sample {
        let (min, bad) = r?;
        min_slack = min_slack.min(min);
        violations.extend(bad);
    }
    Ok(SampleReport {
        count,
        seed,
        min_slack,
        violations,
    })
}
