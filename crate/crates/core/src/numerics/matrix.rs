use num_complex::Complex64;
use serde_json::{json, Value};

use crate::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Error::check_dim(rows * cols, values.len())?;
        Ok(Self {
            rows,
            cols,
            data: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| {
                Value::Array(
                    (0..self.cols)
                        .map(|j| json!([self[(i, j)].re, self[(i, j)].im]))
                        .collect(),
                )
            })
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": rows })
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// A square complex matrix equal to its conjugate transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Accepts `m` when `|m_ij - conj(m_ji)| ≤ 1e-12·max(1, ‖m‖_F)` and stores the exact
    /// Hermitian part `(m + m†)/2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::arg(format!(
                "matrix is {}x{}, not square",
                m.rows, m.cols
            )));
        }
        let tol = 1e-12 * m.frobenius().max(1.0);
        let n = m.rows;
        for i in 0..n {
            for j in i..n {
                if (m[(i, j)] - m[(j, i)].conj()).norm() > tol {
                    return Err(Error::arg(format!("matrix is not Hermitian at ({i},{j})")));
                }
            }
        }
        Ok(Self::hermitize(&m))
    }

    pub(crate) fn hermitize(m: &CMatrix) -> Self {
        let n = m.rows;
        Self(CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(m[(i, i)].re, 0.0)
            } else {
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            }
        }))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(CMatrix::from_real(n, n, &flat)?)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self(CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.0[(i, i)].re).sum()
    }

    /// `U X U†` for a square `u` of the same size.
    pub fn conjugated_by(&self, u: &CMatrix) -> Result<Self> {
        let m = u.mul(&self.0)?.mul(&u.adjoint())?;
        Ok(Self::hermitize(&m))
    }

    pub fn to_json(&self) -> Value {
        self.0.to_json()
    }
}

/// The upper-right `p×q` block `π(X)`: rows `1..=p`, columns `p+1..=n`.
pub fn block_of(x: &HermitianMatrix, p: usize, q: usize) -> Result<CMatrix> {
    Error::check_dim(p + q, x.n())?;
    Ok(CMatrix::from_fn(p, q, |i, j| x.0[(i, p + j)]))
}

/// The canonical matrix `Y(s)` whose off-diagonal block carries the antidiagonal `q×q` matrix
/// `M(s)` in its top rows, so that `λ(Y(s)) = ν(s)`.
pub fn seed_matrix(s: &[f64], p: usize, q: usize) -> Result<HermitianMatrix> {
    if q == 0 || p < q {
        return Err(Error::arg(format!("need p >= q >= 1, got p={p}, q={q}")));
    }
    Error::check_dim(q, s.len())?;
    let n = p + q;
    let mut m = CMatrix::zeros(n, n);
    for (k, &sk) in s.iter().enumerate() {
        let col = p + (q - 1 - k);
        m[(k, col)] = Complex64::new(sk, 0.0);
        m[(col, k)] = Complex64::new(sk, 0.0);
    }
    Ok(HermitianMatrix(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_validation() {
        assert!(HermitianMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 3.0]]).is_ok());
        assert!(HermitianMatrix::from_real_rows(&[&[1.0, 2.0], &[2.5, 3.0]]).is_err());
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        assert!(HermitianMatrix::new(m.clone()).is_err());
        m[(1, 0)] = Complex64::new(0.0, -1.0);
        assert!(HermitianMatrix::new(m).is_ok());
        assert!(HermitianMatrix::new(CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn block_of_seed_is_antidiagonal() {
        let y = seed_matrix(&[3.0, 2.0, 1.0], 3, 3).unwrap();
        let b = block_of(&y, 3, 3).unwrap();
        let expected =
            CMatrix::from_real(3, 3, &[0.0, 0.0, 3.0, 0.0, 2.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn block_of_trivial_cases() {
        let zero = HermitianMatrix::diagonal(&[0.0; 5]);
        assert_eq!(block_of(&zero, 3, 2).unwrap(), CMatrix::zeros(3, 2));
        let bd = HermitianMatrix::from_real_rows(&[
            &[1.0, 2.0, 0.0, 0.0],
            &[2.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 5.0, 7.0],
            &[0.0, 0.0, 7.0, 1.0],
        ])
        .unwrap();
        assert_eq!(block_of(&bd, 2, 2).unwrap(), CMatrix::zeros(2, 2));
        assert!(block_of(&bd, 2, 1).is_err());
    }

    #[test]
    fn seed_with_middle_block() {
        let y = seed_matrix(&[2.0], 2, 1).unwrap();
        assert_eq!(y.matrix()[(0, 2)], Complex64::new(2.0, 0.0));
        assert_eq!(
            block_of(&y, 2, 1).unwrap().column(0)[1],
            Complex64::new(0.0, 0.0)
        );
        assert!(seed_matrix(&[1.0, 1.0], 1, 2).is_err());
    }
}
