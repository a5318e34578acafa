//! Index-set combinatorics on `[n] = {1, …, n}` (1-based throughout).

use std::fmt;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::{Error, Result};

/// A nonempty subset of `[n]`, stored as a strictly increasing list of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubset {
    n: usize,
    elems: Vec<usize>,
}

impl IndexSubset {
    pub fn new(n: usize, elems: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("ambient size must be positive"));
        }
        if elems.is_empty() {
            return Err(Error::arg("index subsets must be nonempty"));
        }
        if elems.len() > n {
            return Err(Error::arg(format!(
                "{} elements do not fit in [{n}]",
                elems.len()
            )));
        }
        if elems.iter().any(|&e| e == 0 || e > n) {
            return Err(Error::arg(format!(
                "elements of {elems:?} must lie in 1..={n}"
            )));
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::arg(format!(
                "elements of {elems:?} must be strictly increasing"
            )));
        }
        Ok(Self { n, elems })
    }

    /// Builds the subset from elements in any order.
    pub fn from_unsorted(n: usize, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        Self::new(n, elems)
    }

    /// `{1, …, r}`.
    pub fn initial(n: usize, r: usize) -> Result<Self> {
        Self::new(n, (1..=r).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn sum(&self) -> usize {
        self.elems.iter().sum()
    }

    pub fn to_json(&self) -> Value {
        json!(self.elems)
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.elems.iter().join(","))
    }
}

/// A weakly decreasing sequence of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::arg(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// All `r`-subsets of `[n]` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Result<Vec<IndexSubset>> {
    if r == 0 || r > n {
        return Err(Error::arg(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    Ok((1..=n)
        .combinations(r)
        .map(|elems| IndexSubset { n, elems })
        .collect())
}

/// `mu(I) = (i_r - r, …, i_1 - 1)`, reported in decreasing order.
pub fn mu(subset: &IndexSubset) -> Partition {
    Partition(
        subset
            .elems
            .iter()
            .enumerate()
            .rev()
            .map(|(a, &i)| (i - (a + 1)) as u64)
            .collect(),
    )
}

/// `J° = {n + 1 - l : l ∈ J}` inside the same ambient `[n]`.
pub fn reflect(subset: &IndexSubset) -> IndexSubset {
    let n = subset.n;
    IndexSubset {
        n,
        elems: subset.elems.iter().rev().map(|&l| n + 1 - l).collect(),
    }
}

/// The two halves `K ∩ [q]` and `K° ∩ [q]` that carry the singular-value coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSplit {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

pub fn split_k(k: &IndexSubset, q: usize) -> Result<KSplit> {
    if q > k.n {
        return Err(Error::arg(format!("q={q} exceeds ambient size {}", k.n)));
    }
    let positive = k.elems.iter().copied().filter(|&e| e <= q).collect();
    let negative = reflect(k).elems.into_iter().filter(|&e| e <= q).collect();
    Ok(KSplit { positive, negative })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, e: &[usize]) -> IndexSubset {
        IndexSubset::new(n, e.to_vec()).unwrap()
    }

    fn binomial(n: usize, r: usize) -> usize {
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn subsets_examples() {
        assert_eq!(subsets(3, 3).unwrap(), vec![set(3, &[1, 2, 3])]);
        let singles: Vec<_> = (1..=4).map(|i| set(4, &[i])).collect();
        assert_eq!(subsets(4, 1).unwrap(), singles);
        assert_eq!(subsets(6, 3).unwrap().len(), 20);
    }

    #[test]
    fn subsets_rejects_bad_r() {
        assert!(subsets(3, 0).is_err());
        assert!(subsets(3, 4).is_err());
    }

    #[test]
    fn subsets_are_lexicographic_and_complete() {
        for n in 1..=12 {
            for r in 1..=n {
                let all = subsets(n, r).unwrap();
                assert_eq!(all.len(), binomial(n, r), "n={n} r={r}");
                assert!(all.windows(2).all(|w| w[0].elems < w[1].elems));
            }
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&set(6, &[1, 2, 3])).parts(), &[0, 0, 0]);
        assert_eq!(mu(&set(6, &[1, 3, 4])).parts(), &[1, 1, 0]);
        assert_eq!(mu(&set(4, &[2, 4])).parts(), &[2, 1]);
    }

    #[test]
    fn mu_is_bounded_partition() {
        for n in 1..=8 {
            for r in 1..=n {
                for s in subsets(n, r).unwrap() {
                    let m = mu(&s);
                    assert_eq!(m.len(), r);
                    assert!(Partition::new(m.parts().to_vec()).is_ok());
                    assert!(m.parts().iter().all(|&p| p <= (n - r) as u64));
                }
                let first = set(n, &(1..=r).collect::<Vec<_>>());
                assert!(mu(&first).parts().iter().all(|&p| p == 0));
                let last = set(n, &(n - r + 1..=n).collect::<Vec<_>>());
                assert!(mu(&last).parts().iter().all(|&p| p == (n - r) as u64));
            }
        }
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(reflect(&set(4, &[1, 2])), set(4, &[3, 4]));
        assert_eq!(reflect(&set(6, &[2, 3, 4])), set(6, &[3, 4, 5]));
    }

    #[test]
    fn reflect_is_involution() {
        for n in 1..=8 {
            for r in 1..=n {
                for s in subsets(n, r).unwrap() {
                    let once = reflect(&s);
                    assert!(IndexSubset::new(n, once.elems().to_vec()).is_ok());
                    assert_eq!(reflect(&once), s);
                }
            }
        }
    }

    #[test]
    fn split_k_examples() {
        let s = split_k(&set(6, &[1, 4, 5]), 3).unwrap();
        assert_eq!((s.positive, s.negative), (vec![1], vec![2, 3]));
        let s = split_k(&set(6, &[1, 2, 3]), 3).unwrap();
        assert_eq!((s.positive, s.negative), (vec![1, 2, 3], vec![]));
        let s = split_k(&set(5, &[1, 2, 3, 4, 5]), 5).unwrap();
        assert_eq!(
            (s.positive, s.negative),
            (vec![1, 2, 3, 4, 5], vec![1, 2, 3, 4, 5])
        );
        assert!(split_k(&set(3, &[1]), 4).is_err());
    }

    #[test]
    fn invalid_subsets_rejected() {
        assert!(IndexSubset::new(3, vec![]).is_err());
        assert!(IndexSubset::new(3, vec![0, 1]).is_err());
        assert!(IndexSubset::new(3, vec![2, 2]).is_err());
        assert!(IndexSubset::new(3, vec![3, 1]).is_err());
        assert!(IndexSubset::new(3, vec![4]).is_err());
        assert_eq!(
            IndexSubset::from_unsorted(3, vec![3, 1]).unwrap(),
            set(3, &[1, 3])
        );
    }
}
