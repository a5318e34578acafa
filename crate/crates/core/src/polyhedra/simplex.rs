//! Exact phase-one revised simplex for the Farkas problem
//!
//! ```text
//!     find μ ≥ 0  with  Σ_j μ_j a_j = b
//! ```
//!
//! over integer columns `a_j` and an integer target `b`. Pivoting follows Bland's rule (smallest
//! improving index enters, smallest basic index leaves among ratio ties), so the method always
//! terminates. When the target is not a nonnegative combination, the final simplex multipliers
//! give a vector `x` with `a_j·x ≥ 0` for every column and `b·x < 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// An integer column, with an `i64` copy when every entry fits.
#[derive(Clone, Debug)]
pub(crate) struct IntColumn {
    pub big: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl IntColumn {
    pub fn new(big: Vec<BigInt>) -> Self {
        let small = big.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>();
        Self { big, small }
    }

    pub fn is_zero(&self) -> bool {
        self.big.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug)]
pub(crate) enum LpOutcome {
    /// Nonnegative multipliers, one per input column, with `Σ μ_j a_j = b`.
    Feasible(Vec<Rational>),
    /// `x` with `a_j·x ≥ 0` for all `j` and `b·x < 0`.
    Infeasible(Vec<Rational>),
}

/// Simplex multipliers scaled to integers, for fast pricing.
enum Pricing {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl Pricing {
    fn from_rationals(y: &[Rational]) -> Self {
        let lcm = y.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = y.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
        match ints.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>() {
            Some(small) => Pricing::Small(small),
            None => Pricing::Big(ints),
        }
    }

    /// Sign of `y·a` (the common positive denominator does not change it).
    fn sign_dot(&self, col: &IntColumn) -> i32 {
        if let (Pricing::Small(y), Some(a)) = (self, &col.small) {
            let s: i128 = y.iter().zip(a).map(|(&u, &v)| u as i128 * v as i128).sum();
            return s.signum() as i32;
        }
        let s: BigInt = match self {
            Pricing::Small(y) => y.iter().zip(&col.big).map(|(&u, v)| v * u).sum(),
            Pricing::Big(y) => y.iter().zip(&col.big).map(|(u, v)| u * v).sum(),
        };
        if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Decides whether `target` lies in the cone generated by `cols`.
pub(crate) fn nonnegative_combination(cols: &[&IntColumn], target: &[BigInt]) -> LpOutcome {
    let m = target.len();
    let ncols = cols.len();
    if target.iter().all(Zero::is_zero) {
        return LpOutcome::Feasible(vec![Rational::zero(); ncols]);
    }
    // Rows with a negative target are negated so the artificial basis starts feasible.
    let flip: Vec<bool> = target.iter().map(|b| b.is_negative()).collect();
    let entry = |j: usize, i: usize| -> Rational {
        let v = Rational::from_integer(cols[j].big[i].clone());
        if flip[i] {
            -v
        } else {
            v
        }
    };

    let mut basis: Vec<usize> = (ncols..ncols + m).collect();
    let mut binv: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|k| {
                    if i == k {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut xb: Vec<Rational> = target
        .iter()
        .map(|b| Rational::from_integer(b.abs()))
        .collect();

    loop {
        // y = c_B B⁻¹ with unit costs on artificials.
        let mut y = vec![Rational::zero(); m];
        for (i, &var) in basis.iter().enumerate() {
            if var >= ncols {
                for (yk, bk) in y.iter_mut().zip(&binv[i]) {
                    *yk += bk;
                }
            }
        }
        // Structural reduced cost is -(y∘flip)·a_j, so a_j enters when (y∘flip)·a_j > 0.
        let y_flipped: Vec<Rational> = y
            .iter()
            .zip(&flip)
            .map(|(v, &f)| if f { -v.clone() } else { v.clone() })
            .collect();
        let pricing = Pricing::from_rationals(&y_flipped);
        let in_basis = |j: usize| basis.contains(&j);
        let mut entering = None;
        for (j, col) in cols.iter().enumerate() {
            if pricing.sign_dot(col) > 0 && !in_basis(j) {
                entering = Some(j);
                break;
            }
        }
        if entering.is_none() {
            // Artificial k has reduced cost 1 - y_k.
            entering = (0..m)
                .find(|&k| y[k] > Rational::one() && !in_basis(ncols + k))
                .map(|k| ncols + k);
        }

        let Some(enter) = entering else {
            let objective: Rational = basis
                .iter()
                .zip(&xb)
                .filter(|(&var, _)| var >= ncols)
                .map(|(_, v)| v.clone())
                .sum();
            if objective.is_zero() {
                let mut mu = vec![Rational::zero(); ncols];
                for (&var, v) in basis.iter().zip(&xb) {
                    if var < ncols {
                        mu[var] = v.clone();
                    }
                }
                return LpOutcome::Feasible(mu);
            }
            return LpOutcome::Infeasible(y_flipped.into_iter().map(|v| -v).collect());
        };

        // alpha = B⁻¹ a'_enter
        let alpha: Vec<Rational> = (0..m)
            .map(|i| {
                if enter >= ncols {
                    binv[i][enter - ncols].clone()
                } else {
                    (0..m)
                        .filter(|&k| !cols[enter].big[k].is_zero())
                        .map(|k| &binv[i][k] * entry(enter, k))
                        .sum()
                }
            })
            .collect();

        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !alpha[i].is_positive() {
                continue;
            }
            let ratio = &xb[i] / &alpha[i];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always blocks.
        let (row, _) = leave.expect("phase-one simplex cannot be unbounded");

        let pivot = alpha[row].clone();
        for v in binv[row].iter_mut() {
            *v /= &pivot;
        }
        xb[row] /= &pivot;
        let pivot_row = binv[row].clone();
        let pivot_x = xb[row].clone();
        for i in 0..m {
            if i == row || alpha[i].is_zero() {
                continue;
            }
            let factor = alpha[i].clone();
            for (v, p) in binv[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            xb[i] -= &factor * &pivot_x;
        }
        basis[row] = enter;
    }
}
