use num_complex::Complex64;

use super::matrix::{CMatrix, HermitianMatrix};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 60;
const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// `X = V diag(values) V†` with `values` weakly decreasing and the eigenvectors as the
/// columns of `vectors`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Row-cyclic complex Jacobi with rotation threshold 0. Stops once the off-diagonal Frobenius
/// norm falls below `1e-13·‖X‖_F`; fails after 60 sweeps.
pub fn eigen_decomposition(x: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = x.n();
    let mut a = x.matrix().clone();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius();
    let mut sweeps = 0;
    loop {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition {
        values,
        vectors,
        sweeps,
    })
}

/// Zeroes `a[p][q]` with the unitary `G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]` acting on the
/// `(p, q)` plane, where `a[p][q] = β e^{iφ}`. Updates `a ← G† a G` and `v ← v G`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let beta = apq.norm();
    if beta == 0.0 {
        return;
    }
    let phase = apq / beta; // e^{iφ}
    let alpha = a[(p, p)].re;
    let delta = a[(q, q)].re;
    let tau = (delta - alpha) / (2.0 * beta);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let conj_phase = phase.conj();
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = conj_phase * (-s);
    let g_qq = conj_phase * c;

    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Eigenvalues sorted in decreasing order.
pub fn eigenvalues_desc(x: &HermitianMatrix) -> Result<Vec<f64>> {
    Ok(eigen_decomposition(x)?.values)
}

/// Thin SVD of a `p×q` matrix with `p ≥ q`: `Y = U diag(sigma) V†`, `U` is `p×q` with
/// orthonormal columns and `V` is `q×q` unitary.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

/// Singular values from the Hermitian eigenproblem of `Y†Y`; left vectors are `Y v_k / σ_k`,
/// completed by Gram–Schmidt where `σ_k` vanishes.
pub fn svd(y: &CMatrix) -> Result<Svd> {
    let (p, q) = (y.rows(), y.cols());
    if p < q {
        return Err(Error::arg(format!("need p >= q, got a {p}x{q} block")));
    }
    let gram = HermitianMatrix::hermitize(&y.adjoint().mul(y)?);
    let eig = eigen_decomposition(&gram)?;
    let sigma: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let v = eig.vectors;
    let yv = y.mul(&v)?;
    let cutoff = 1e-10 * sigma.first().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(q);
    let mut pending = Vec::new();
    for (k, &sk) in sigma.iter().enumerate() {
        if sk > cutoff {
            cols.push(yv.column(k).iter().map(|z| z / sk).collect());
        } else {
            cols.push(Vec::new());
            pending.push(k);
        }
    }
    let mut basis = 0;
    for k in pending {
        loop {
            let mut cand = vec![Complex64::new(0.0, 0.0); p];
            cand[basis] = Complex64::new(1.0, 0.0);
            basis += 1;
            for other in cols.iter().filter(|c| !c.is_empty()) {
                let proj: Complex64 = other.iter().zip(&cand).map(|(o, c)| o.conj() * c).sum();
                for (c, o) in cand.iter_mut().zip(other) {
                    *c -= proj * o;
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                cols[k] = cand.into_iter().map(|z| z / norm).collect();
                break;
            }
        }
    }
    let u = CMatrix::from_fn(p, q, |i, j| cols[j][i]);
    Ok(Svd { u, sigma, v })
}

/// Singular values sorted in decreasing order.
pub fn singular_values_desc(y: &CMatrix) -> Result<Vec<f64>> {
    Ok(svd(y)?.sigma)
}
