//! The triples `LR^n_r` and exact membership in the Horn cone `Horn(n)`.
//!
//! `LR^n_r` is the set of triples `(I, J, K)` of `r`-subsets of `[n]` whose partitions
//! `(mu(I), mu(J), mu(K))` lie in `Horn(r)`, and `(x, y, z)` lies in `Horn(n)` iff
//! `|x| + |y| = |z|` and `|x|_I + |y|_J ≥ |z|_K` for every triple of `LR^n_r`, `r < n`.
//! The two definitions feed each other, so enumeration recurses on `r` until `Horn(1)`, where
//! only the trace equality remains.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::combinat::{mu, subsets, IndexSubset, Partition};
use crate::polyhedra::rational::{int, Rational};
use crate::polyhedra::{ConeSystem, Layout, LinearForm, Source};
use crate::{par, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HornTriple {
    i: IndexSubset,
    j: IndexSubset,
    k: IndexSubset,
}

impl HornTriple {
    /// Checks that the three subsets share `n` and `r` and satisfy the trace condition
    /// `sum(I) + sum(J) = sum(K) + r(r+1)/2`. Membership in `LR^n_r` is a separate question.
    pub fn new(i: IndexSubset, j: IndexSubset, k: IndexSubset) -> Result<Self> {
        if i.n() != j.n() || i.n() != k.n() {
            return Err(Error::arg(
                "triple components live in different ambient sets",
            ));
        }
        if i.r() != j.r() || i.r() != k.r() {
            return Err(Error::arg("triple components have different cardinalities"));
        }
        let r = i.r();
        if i.sum() + j.sum() != k.sum() + r * (r + 1) / 2 {
            return Err(Error::arg(format!(
                "({i};{j};{k}) violates the trace condition"
            )));
        }
        Ok(Self { i, j, k })
    }

    pub fn from_elems(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> Result<Self> {
        Self::new(
            IndexSubset::new(n, i.to_vec())?,
            IndexSubset::new(n, j.to_vec())?,
            IndexSubset::new(n, k.to_vec())?,
        )
    }

    pub fn n(&self) -> usize {
        self.i.n()
    }

    pub fn r(&self) -> usize {
        self.i.r()
    }

    pub fn i(&self) -> &IndexSubset {
        &self.i
    }

    pub fn j(&self) -> &IndexSubset {
        &self.j
    }

    pub fn k(&self) -> &IndexSubset {
        &self.k
    }

    /// `(J, I, K)`.
    pub fn swapped(&self) -> Self {
        Self {
            i: self.j.clone(),
            j: self.i.clone(),
            k: self.k.clone(),
        }
    }

    pub fn partitions(&self) -> (Partition, Partition, Partition) {
        (mu(&self.i), mu(&self.j), mu(&self.k))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "r": self.r(),
            "I": self.i.to_json(),
            "J": self.j.to_json(),
            "K": self.k.to_json(),
        })
    }
}

impl fmt::Display for HornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.i, self.j, self.k)
    }
}

/// A weakly decreasing tuple of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatTuple(Vec<Rational>);

impl RatTuple {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if let Some(w) = entries.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::arg(format!(
                "tuple is not weakly decreasing: {} < {}",
                w[0], w[1]
            )));
        }
        Ok(Self(entries))
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&v| int(v)).collect())
    }

    pub fn from_partition(p: &Partition) -> Self {
        Self(p.parts().iter().map(|&v| int(v as i64)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![Rational::zero(); len])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `|x|_I`.
    pub fn sum_over(&self, subset: &[usize]) -> Rational {
        subset.iter().map(|&i| &self.0[i - 1]).sum()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        // A negative factor would break the ordering; callers only scale by c ≥ 0.
        debug_assert!(!c.is_negative());
        Self(self.0.iter().map(|v| v * c).collect())
    }
}

impl fmt::Display for RatTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Member,
    /// `|x| + |y| ≠ |z|`.
    EqualityFailure {
        lhs: Rational,
        rhs: Rational,
    },
    /// `lhs < rhs` for the inequality indexed by `triple`.
    Violation {
        triple: HornTriple,
        lhs: Rational,
        rhs: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub member: bool,
    pub certificate: Certificate,
}

impl MembershipVerdict {
    fn member() -> Self {
        Self {
            member: true,
            certificate: Certificate::Member,
        }
    }

    fn violation(triple: HornTriple, lhs: Rational, rhs: Rational) -> Self {
        Self {
            member: false,
            certificate: Certificate::Violation { triple, lhs, rhs },
        }
    }

    /// Re-evaluates a negative certificate against `(x, y, z)`.
    pub fn confirms_violation(&self, x: &RatTuple, y: &RatTuple, z: &RatTuple) -> bool {
        match &self.certificate {
            Certificate::Member => false,
            Certificate::EqualityFailure { .. } => x.total() + y.total() != z.total(),
            Certificate::Violation { triple, .. } => {
                x.sum_over(triple.i().elems()) + y.sum_over(triple.j().elems())
                    < z.sum_over(triple.k().elems())
            }
        }
    }
}

type Memo = Mutex<HashMap<(usize, usize), Arc<Vec<HornTriple>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All triples of `LR^n_r` in lexicographic order of `(I, J, K)`, for `1 ≤ r ≤ n`.
///
/// `r = n` yields the single triple `([n], [n], [n])`. Results are cached per `(n, r)` for the
/// life of the process; the first stored value wins if two threads race on a key.
pub fn lr_triples(n: usize, r: usize) -> Result<Arc<Vec<HornTriple>>> {
    if r == 0 || r > n {
        return Err(Error::arg(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    if let Some(hit) = memo().lock().unwrap().get(&(n, r)) {
        return Ok(Arc::clone(hit));
    }
    let computed = Arc::new(enumerate(n, r)?);
    let mut table = memo().lock().unwrap();
    Ok(Arc::clone(table.entry((n, r)).or_insert(computed)))
}

/// [`lr_triples`] without the cache for the `(n, r)` level itself; the `Horn(r)` levels it
/// consults are still cached.
pub fn lr_triples_uncached(n: usize, r: usize) -> Result<Vec<HornTriple>> {
    if r == 0 || r > n {
        return Err(Error::arg(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    enumerate(n, r)
}

fn enumerate(n: usize, r: usize) -> Result<Vec<HornTriple>> {
    // Fill the cache for Horn(r) before fanning out, so workers only read it.
    for sub in 1..r {
        lr_triples(r, sub)?;
    }
    let sets = subsets(n, r)?;
    let partitions: Vec<RatTuple> = sets
        .iter()
        .map(|s| RatTuple::from_partition(&mu(s)))
        .collect();
    let offset = r * (r + 1) / 2;
    let mut candidates = Vec::new();
    for (a, i) in sets.iter().enumerate() {
        for (b, j) in sets.iter().enumerate() {
            for (c, k) in sets.iter().enumerate() {
                if i.sum() + j.sum() == k.sum() + offset {
                    candidates.push((a, b, c));
                }
            }
        }
    }
    let kept = par::filter_vec(candidates, |&(a, b, c)| {
        horn_membership(&partitions[a], &partitions[b], &partitions[c])
            .map(|v| v.member)
            .unwrap_or(false)
    });
    Ok(kept
        .into_iter()
        .map(|(a, b, c)| HornTriple {
            i: sets[a].clone(),
            j: sets[b].clone(),
            k: sets[c].clone(),
        })
        .collect())
}

/// `∪_{r<n} LR^n_r`, ordered by `r` and then lexicographically.
pub fn horn_triples(n: usize) -> Result<Vec<HornTriple>> {
    let mut all = Vec::new();
    for r in 1..n {
        all.extend(lr_triples(n, r)?.iter().cloned());
    }
    Ok(all)
}

/// Exact membership of `(x, y, z)` in `Horn(n)`. A negative verdict carries the first failed
/// condition: the trace equality, then the inequalities in `r`-then-lexicographic order.
pub fn horn_membership(x: &RatTuple, y: &RatTuple, z: &RatTuple) -> Result<MembershipVerdict> {
    let n = x.len();
    if n == 0 {
        return Err(Error::arg("tuples must be nonempty"));
    }
    Error::check_dim(n, y.len())?;
    Error::check_dim(n, z.len())?;
    let lhs = x.total() + y.total();
    let rhs = z.total();
    if lhs != rhs {
        return Ok(MembershipVerdict {
            member: false,
            certificate: Certificate::EqualityFailure { lhs, rhs },
        });
    }
    for r in 1..n {
        for t in lr_triples(n, r)?.iter() {
            let lhs = x.sum_over(t.i().elems()) + y.sum_over(t.j().elems());
            let rhs = z.sum_over(t.k().elems());
            if lhs < rhs {
                return Ok(MembershipVerdict::violation(t.clone(), lhs, rhs));
            }
        }
    }
    Ok(MembershipVerdict::member())
}

/// `λ_i - λ_{i+1} ≥ 0` for consecutive entries of one block of a layout, as background forms.
pub(crate) fn chamber_forms(dim: usize, offset: usize, len: usize, name: &str) -> Vec<LinearForm> {
    (0..len.saturating_sub(1))
        .map(|i| {
            let mut coeffs = vec![Rational::zero(); dim];
            coeffs[offset + i] = int(1);
            coeffs[offset + i + 1] = int(-1);
            LinearForm::new(coeffs, format!("{name}{} >= {name}{}", i + 1, i + 2))
                .with_source(Source::Background)
        })
        .collect()
}

/// The Horn inequalities of `Horn(n)` over `(x, y, z)`: one form per triple of
/// `∪_{r<n} LR^n_r`, followed by the weak-decrease background forms of each block. The trace
/// condition is the single equality of the system.
pub fn horn_inequality_forms(n: usize) -> Result<ConeSystem> {
    if n < 2 {
        return Err(Error::arg("Horn inequalities need n >= 2"));
    }
    let dim = 3 * n;
    let mut system = ConeSystem::new(Layout::Xyz { n });
    for t in horn_triples(n)? {
        let mut coeffs = vec![Rational::zero(); dim];
        for &i in t.i().elems() {
            coeffs[i - 1] += int(1);
        }
        for &j in t.j().elems() {
            coeffs[n + j - 1] += int(1);
        }
        for &k in t.k().elems() {
            coeffs[2 * n + k - 1] -= int(1);
        }
        let label = format!("horn r={} {t}", t.r());
        system.push_form(
            LinearForm::new(coeffs, label)
                .with_source(Source::Horn)
                .with_triple(t),
        )?;
    }
    for (offset, name) in [(0, "x"), (n, "y"), (2 * n, "z")] {
        for f in chamber_forms(dim, offset, n, name) {
            system.push_form(f)?;
        }
    }
    let trace: Vec<Rational> = (0..dim)
        .map(|v| if v < 2 * n { int(1) } else { int(-1) })
        .collect();
    system.push_equality(LinearForm::new(trace, "trace").with_source(Source::Background))?;
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::rational::frac;

    fn t(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> HornTriple {
        HornTriple::from_elems(n, i, j, k).unwrap()
    }

    fn tuple(v: &[i64]) -> RatTuple {
        RatTuple::from_ints(v).unwrap()
    }

    #[test]
    fn lr_2_1() {
        let got: Vec<String> = lr_triples(2, 1)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(got, ["1;1;1", "1;2;2", "2;1;2"]);
    }

    #[test]
    fn lr_6_1_count() {
        assert_eq!(lr_triples(6, 1).unwrap().len(), 21);
    }

    #[test]
    fn excluded_and_included_pairs_in_lr_6_2() {
        let lr = lr_triples(6, 2).unwrap();
        assert!(!lr.contains(&t(6, &[1, 4], &[1, 2], &[2, 3])));
        assert!(lr.contains(&t(6, &[1, 2], &[1, 2], &[1, 2])));
    }

    #[test]
    fn full_cardinality_is_single_triple() {
        for n in 1..=5 {
            let all: Vec<usize> = (1..=n).collect();
            assert_eq!(*lr_triples(n, n).unwrap(), vec![t(n, &all, &all, &all)]);
        }
        assert!(lr_triples(3, 4).is_err());
        assert!(lr_triples(3, 0).is_err());
    }

    #[test]
    fn triple_constructor_checks_trace() {
        assert!(HornTriple::from_elems(4, &[1], &[2], &[3]).is_err());
        assert!(HornTriple::from_elems(4, &[1, 2], &[1], &[1, 2]).is_err());
    }

    #[test]
    fn swap_symmetry() {
        for n in 2..=6 {
            for r in 1..n {
                let lr = lr_triples(n, r).unwrap();
                for tr in lr.iter() {
                    assert!(
                        lr.binary_search(&tr.swapped()).is_ok(),
                        "{tr} in LR^{n}_{r}"
                    );
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let z0 = tuple(&[0, 0]);
        assert!(horn_membership(&z0, &z0, &z0).unwrap().member);

        let v = horn_membership(&tuple(&[1, 0]), &tuple(&[1, 0]), &tuple(&[2, 1])).unwrap();
        assert!(!v.member);
        assert_eq!(
            v.certificate,
            Certificate::EqualityFailure {
                lhs: int(2),
                rhs: int(3)
            }
        );

        assert!(
            horn_membership(&tuple(&[1, 0]), &tuple(&[1, 0]), &tuple(&[1, 1]))
                .unwrap()
                .member
        );

        let (x, y, z) = (tuple(&[1, 1, 0]), tuple(&[2, 0, 0]), tuple(&[2, 2, 0]));
        let v = horn_membership(&x, &y, &z).unwrap();
        assert_eq!(
            v,
            MembershipVerdict::violation(t(3, &[1], &[2], &[2]), int(1), int(2))
        );
        assert!(v.confirms_violation(&x, &y, &z));
    }

    #[test]
    fn membership_length_mismatch() {
        assert!(horn_membership(&tuple(&[1]), &tuple(&[1, 0]), &tuple(&[1, 0])).is_err());
    }

    #[test]
    fn single_entry_checks_only_the_trace() {
        let a = RatTuple::new(vec![frac(1, 2)]).unwrap();
        assert!(horn_membership(&a, &a, &tuple(&[1])).unwrap().member);
        assert!(!horn_membership(&a, &a, &tuple(&[2])).unwrap().member);
    }

    #[test]
    fn inequality_forms_layout() {
        let s = horn_inequality_forms(2).unwrap();
        assert_eq!(s.nontrivial_forms().count(), 3);
        assert_eq!(s.background_indices().len(), 3);
        assert_eq!(s.equalities.len(), 1);
        let s4 = horn_inequality_forms(4).unwrap();
        let target = t(4, &[1, 2], &[1, 2], &[1, 2]);
        assert!(s4.forms.iter().any(|f| f.triple.as_ref() == Some(&target)));
        assert!(horn_inequality_forms(1).is_err());
    }

    #[test]
    fn not_decreasing_rejected() {
        assert!(RatTuple::from_ints(&[0, 1]).is_err());
    }
}
