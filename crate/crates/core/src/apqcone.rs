//! The cone `A(p,q)` of pairs `(λ(X), s(π(X)))`, where `X` is a Hermitian `(p+q)×(p+q)` matrix and
//! `π(X)` its upper-right `p×q` block.
//!
//! `(λ, s) ∈ A(p,q)` iff `(λ, λ*, 2ν(s)) ∈ Horn(n)`. Expanding the Horn inequalities through
//! that substitution gives, for every `(I, J, K) ∈ LR^n_r` with `r < n`,
//!
//! ```text
//!     |λ|_I - |λ|_{J°} ≥ 2|s|_{K∩[q]} - 2|s|_{K°∩[q]}
//! ```
//!
//! All inequalities are stored moved to one side, `lambda_coeffs·λ + s_coeffs·s ≥ 0`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::combinat::{reflect, split_k, Partition};
use crate::horncone::{
    chamber_forms, horn_membership, horn_triples, lr_triples, Certificate, HornTriple,
    MembershipVerdict, RatTuple,
};
use crate::polyhedra::rational::{format_rational, int, Rational};
use crate::polyhedra::{ConeSystem, Layout, LinearForm, Source};
use crate::{Error, Result};

/// A point `(λ, s)` with `λ ∈ ℝ^n` and `s ∈ ℝ^q`, both weakly decreasing, `s_q ≥ 0`, `n = p + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumPair {
    p: usize,
    q: usize,
    lambda: RatTuple,
    s: RatTuple,
}

impl SpectrumPair {
    pub fn new(p: usize, q: usize, lambda: RatTuple, s: RatTuple) -> Result<Self> {
        check_shape(p, q)?;
        Error::check_dim(p + q, lambda.len())?;
        Error::check_dim(q, s.len())?;
        if s.entries()[q - 1].is_negative() {
            return Err(Error::arg("singular values must be nonnegative"));
        }
        Ok(Self { p, q, lambda, s })
    }

    pub fn from_ints(p: usize, q: usize, lambda: &[i64], s: &[i64]) -> Result<Self> {
        Self::new(p, q, RatTuple::from_ints(lambda)?, RatTuple::from_ints(s)?)
    }

    pub fn zero(p: usize, q: usize) -> Result<Self> {
        Self::new(p, q, RatTuple::zeros(p + q), RatTuple::zeros(q))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn lambda(&self) -> &RatTuple {
        &self.lambda
    }

    pub fn s(&self) -> &RatTuple {
        &self.s
    }

    /// Coordinates in the `(λ, s)` layout.
    pub fn coordinates(&self) -> Vec<Rational> {
        self.lambda
            .entries()
            .iter()
            .chain(self.s.entries())
            .cloned()
            .collect()
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::arg("scale factor must be positive"));
        }
        Self::new(self.p, self.q, self.lambda.scaled(c), self.s.scaled(c))
    }

    pub fn to_json(&self) -> Value {
        let list =
            |t: &RatTuple| -> Vec<String> { t.entries().iter().map(format_rational).collect() };
        json!({ "p": self.p, "q": self.q, "lambda": list(&self.lambda), "s": list(&self.s) })
    }
}

fn check_shape(p: usize, q: usize) -> Result<()> {
    if q == 0 || p < q {
        return Err(Error::arg(format!("need p >= q >= 1, got p={p}, q={q}")));
    }
    Ok(())
}

/// `ν(s) = (s_1, …, s_q, 0, …, 0, -s_q, …, -s_1)` with `p - q` central zeros.
pub fn nu(s: &RatTuple, p: usize, q: usize) -> Result<RatTuple> {
    check_shape(p, q)?;
    Error::check_dim(q, s.len())?;
    if s.entries()[q - 1].is_negative() {
        return Err(Error::arg("ν(s) needs nonnegative s"));
    }
    let mut out: Vec<Rational> = s.entries().to_vec();
    out.extend(std::iter::repeat_n(Rational::zero(), p - q));
    out.extend(s.entries().iter().rev().map(|v| -v));
    RatTuple::new(out)
}

/// `λ* = (-λ_n, …, -λ_1)`, the spectrum of `-X`.
pub fn lambda_star(lambda: &RatTuple) -> RatTuple {
    RatTuple::new(lambda.entries().iter().rev().map(|v| -v).collect())
        .expect("negated reversal of a decreasing tuple is decreasing")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Every triple of `∪_{r<n} LR^n_r`.
    Full,
    /// The triples of `Full` with `r ≤ q`, `I ∩ J° = ∅` and `K = K₊ ∪ (K₋)°` for disjoint
    /// `K₊, K₋ ⊂ [q]`.
    Restricted,
    /// Triples of `∪_{r≤q} LR^q_r`, with `J°` reflected inside `[n]` and `s` indexed by `K`.
    Fflp,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "restricted" => Ok(Variant::Restricted),
            "fflp" => Ok(Variant::Fflp),
            other => Err(Error::arg(format!("unknown variant {other:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::Restricted => "restricted",
            Variant::Fflp => "fflp",
        })
    }
}

/// One inequality over `(λ, s)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApqInequality {
    pub source: Source,
    pub triple: Option<HornTriple>,
    pub lambda_coeffs: Vec<i64>,
    pub s_coeffs: Vec<i64>,
    pub label: String,
}

impl ApqInequality {
    pub fn to_linear_form(&self) -> LinearForm {
        let coeffs = self
            .lambda_coeffs
            .iter()
            .chain(&self.s_coeffs)
            .map(|&c| int(c))
            .collect();
        let form = LinearForm::new(coeffs, self.label.clone()).with_source(self.source);
        match &self.triple {
            Some(t) => form.with_triple(t.clone()),
            None => form,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.lambda_coeffs
            .iter()
            .chain(&self.s_coeffs)
            .all(|&c| c == 0)
    }

    /// Two-sided rendering, e.g. `λ1 - λ4 >= 2(s1)`.
    pub fn describe(&self) -> String {
        let side = |coeffs: &[i64], name: &str, scale: i64| -> String {
            let mut out = String::new();
            for (i, &c) in coeffs.iter().enumerate() {
                let c = c / scale;
                if c == 0 {
                    continue;
                }
                let term = format!("{name}{}", i + 1);
                match (out.is_empty(), c > 0) {
                    (true, true) => out.push_str(&term),
                    (true, false) => out.push_str(&format!("-{term}")),
                    (false, true) => out.push_str(&format!(" + {term}")),
                    (false, false) => out.push_str(&format!(" - {term}")),
                }
            }
            if out.is_empty() {
                "0".into()
            } else {
                out
            }
        };
        let rhs: Vec<i64> = self.s_coeffs.iter().map(|c| -c).collect();
        format!(
            "{} >= 2({})",
            side(&self.lambda_coeffs, "λ", 1),
            side(&rhs, "s", 2)
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.as_str(),
            "label": self.label,
            "r": self.triple.as_ref().map(|t| t.r()),
            "I": self.triple.as_ref().map(|t| t.i().to_json()),
            "J": self.triple.as_ref().map(|t| t.j().to_json()),
            "K": self.triple.as_ref().map(|t| t.k().to_json()),
            "lambda_coeffs": self.lambda_coeffs,
            "s_coeffs": self.s_coeffs,
        })
    }
}

fn triple_label(source: Source, t: &HornTriple) -> String {
    format!("{source} r={} {t}", t.r())
}

/// The inequality attached to a triple of `LR^n_r`, `n = p + q`.
pub fn apq_inequality(t: &HornTriple, q: usize) -> Result<ApqInequality> {
    let n = t.n();
    if q == 0 || 2 * q > n {
        return Err(Error::arg(format!(
            "q={q} incompatible with n={n} (need p >= q >= 1)"
        )));
    }
    let mut lambda_coeffs = vec![0i64; n];
    for &i in t.i().elems() {
        lambda_coeffs[i - 1] += 1;
    }
    for &j in reflect(t.j()).elems() {
        lambda_coeffs[j - 1] -= 1;
    }
    let split = split_k(t.k(), q)?;
    let mut s_coeffs = vec![0i64; q];
    for &k in &split.positive {
        s_coeffs[k - 1] -= 2;
    }
    for &k in &split.negative {
        s_coeffs[k - 1] += 2;
    }
    Ok(ApqInequality {
        source: Source::OsheaSjamaar,
        triple: Some(t.clone()),
        lambda_coeffs,
        s_coeffs,
        label: triple_label(Source::OsheaSjamaar, t),
    })
}

/// The inequality attached to a triple of `LR^q_r`: `|λ|_I - |λ|_{J°} ≥ 2|s|_K` with `J°`
/// reflected inside `[p + q]`.
pub fn fflp_inequality(t: &HornTriple, p: usize, q: usize) -> Result<ApqInequality> {
    check_shape(p, q)?;
    Error::check_dim(q, t.n())?;
    let n = p + q;
    let mut lambda_coeffs = vec![0i64; n];
    for &i in t.i().elems() {
        lambda_coeffs[i - 1] += 1;
    }
    for &j in t.j().elems() {
        lambda_coeffs[n - j] -= 1;
    }
    let mut s_coeffs = vec![0i64; q];
    for &k in t.k().elems() {
        s_coeffs[k - 1] -= 2;
    }
    Ok(ApqInequality {
        source: Source::Fflp,
        triple: Some(t.clone()),
        lambda_coeffs,
        s_coeffs,
        label: triple_label(Source::Fflp, t),
    })
}

/// Whether a triple of `LR^n_r` survives the three filters of the restricted system.
pub fn is_restricted(t: &HornTriple, q: usize) -> bool {
    let n = t.n();
    if t.r() > q {
        return false;
    }
    let j_ref = reflect(t.j());
    if t.i().elems().iter().any(|&i| j_ref.contains(i)) {
        return false;
    }
    let Ok(split) = split_k(t.k(), q) else {
        return false;
    };
    let inside = t.k().elems().iter().all(|&k| k <= q || k > n - q);
    let disjoint = split.positive.iter().all(|k| !split.negative.contains(k));
    inside && disjoint
}

/// Background forms over `(λ, s)`: `λ_i ≥ λ_{i+1}`, `s_k ≥ s_{k+1}` and `s_q ≥ 0`.
pub fn background_inequalities(p: usize, q: usize) -> Vec<ApqInequality> {
    let n = p + q;
    let dim = n + q;
    let mut out: Vec<ApqInequality> = chamber_forms(dim, 0, n, "λ")
        .into_iter()
        .chain(chamber_forms(dim, n, q, "s"))
        .map(|f| ApqInequality {
            source: Source::Background,
            triple: None,
            lambda_coeffs: f.coeffs[..n].iter().map(rational_to_i64).collect(),
            s_coeffs: f.coeffs[n..].iter().map(rational_to_i64).collect(),
            label: f.label,
        })
        .collect();
    let mut s_last = vec![0i64; q];
    s_last[q - 1] = 1;
    out.push(ApqInequality {
        source: Source::Background,
        triple: None,
        lambda_coeffs: vec![0; n],
        s_coeffs: s_last,
        label: format!("s{q} >= 0"),
    });
    out
}

fn rational_to_i64(r: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    r.to_integer()
        .to_i64()
        .expect("background coefficients are small integers")
}

/// The inequalities of one system for `A(p,q)`, background last.
pub fn apq_inequalities(p: usize, q: usize, variant: Variant) -> Result<Vec<ApqInequality>> {
    check_shape(p, q)?;
    let n = p + q;
    let mut out = Vec::new();
    match variant {
        Variant::Full => {
            for t in horn_triples(n)? {
                out.push(apq_inequality(&t, q)?);
            }
        }
        Variant::Restricted => {
            for r in 1..=q.min(n - 1) {
                for t in lr_triples(n, r)?.iter().filter(|t| is_restricted(t, q)) {
                    let mut ineq = apq_inequality(t, q)?;
                    ineq.source = Source::Restricted;
                    ineq.label = triple_label(Source::Restricted, t);
                    out.push(ineq);
                }
            }
        }
        Variant::Fflp => {
            for r in 1..=q {
                for t in lr_triples(q, r)?.iter() {
                    out.push(fflp_inequality(t, p, q)?);
                }
            }
        }
    }
    out.extend(background_inequalities(p, q));
    Ok(out)
}

pub fn apq_system(p: usize, q: usize, variant: Variant) -> Result<ConeSystem> {
    let mut system = ConeSystem::new(Layout::LambdaS { n: p + q, q });
    for ineq in apq_inequalities(p, q, variant)? {
        system.push_form(ineq.to_linear_form())?;
    }
    Ok(system)
}

/// `lambda_coeffs·λ + s_coeffs·s`; nonnegative iff the inequality holds at `sp`.
pub fn evaluate_slack(f: &ApqInequality, sp: &SpectrumPair) -> Result<Rational> {
    Error::check_dim(sp.n(), f.lambda_coeffs.len())?;
    Error::check_dim(sp.q(), f.s_coeffs.len())?;
    let dot = |coeffs: &[i64], t: &RatTuple| -> Rational {
        coeffs
            .iter()
            .zip(t.entries())
            .filter(|(c, _)| **c != 0)
            .map(|(&c, v)| int(c) * v)
            .sum()
    };
    Ok(dot(&f.lambda_coeffs, sp.lambda()) + dot(&f.s_coeffs, sp.s()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Evaluate every inequality of the full system.
    Direct,
    /// Test `(λ, λ*, 2ν(s)) ∈ Horn(n)`.
    Reduction,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "reduction" => Ok(Method::Reduction),
            other => Err(Error::arg(format!("unknown method {other:?}"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Reduction => "reduction",
        }
    }
}

/// Exact membership in `A(p,q)`. Both methods scan triples in the same order, so they return
/// the same certificate: the first violated triple with `|λ|_I - |λ|_{J°}` and the `s` side.
pub fn apq_membership(sp: &SpectrumPair, method: Method) -> Result<MembershipVerdict> {
    match method {
        Method::Reduction => {
            let two_nu = nu(sp.s(), sp.p(), sp.q())?.scaled(&int(2));
            horn_membership(sp.lambda(), &lambda_star(sp.lambda()), &two_nu)
        }
        Method::Direct => {
            for t in horn_triples(sp.n())? {
                let ineq = apq_inequality(&t, sp.q())?;
                let slack = evaluate_slack(&ineq, sp)?;
                if slack.is_negative() {
                    let lhs = sp.lambda().sum_over(t.i().elems())
                        - sp.lambda().sum_over(reflect(t.j()).elems());
                    let rhs = &lhs - slack;
                    return Ok(MembershipVerdict {
                        member: false,
                        certificate: Certificate::Violation {
                            triple: t,
                            lhs,
                            rhs,
                        },
                    });
                }
            }
            Ok(MembershipVerdict {
                member: true,
                certificate: Certificate::Member,
            })
        }
    }
}

/// The two disputed `A(3,3)` inequalities, as the triples that would produce them.
pub fn disputed_triples() -> Vec<HornTriple> {
    vec![
        HornTriple::from_elems(6, &[1, 3, 4], &[1, 2, 5], &[1, 4, 5]).expect("valid triple"),
        HornTriple::from_elems(6, &[1, 2, 5], &[1, 3, 4], &[1, 4, 5]).expect("valid triple"),
    ]
}

/// The disputed point `λ0 = (1,1,1,1,-1,-1)`, `s0 = (1,0,0)` in `A(3,3)`.
pub fn disputed_point() -> SpectrumPair {
    SpectrumPair::from_ints(3, 3, &[1, 1, 1, 1, -1, -1], &[1, 0, 0]).expect("valid pair")
}

#[derive(Clone, Debug)]
pub struct DisputedTriple {
    pub triple: HornTriple,
    pub partitions: (Partition, Partition, Partition),
    /// `Horn(r)` verdict on the partitions; decides membership in `LR^6_3`.
    pub horn_verdict: MembershipVerdict,
    pub in_lr: bool,
    pub inequality: ApqInequality,
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditConclusion {
    /// Whether each disputed triple belongs to `LR^6_3`.
    pub disputed_triples_in_lr: Vec<bool>,
    /// Whether the point satisfies each disputed inequality.
    pub disputed_inequalities_satisfied: Vec<bool>,
    /// The point violates at least one disputed inequality.
    pub point_violates_a_disputed_inequality: bool,
    /// The point satisfies every inequality of the `fflp(3,3)` system.
    pub point_satisfies_all_fflp: bool,
    /// Exact verdict on the point from the full system.
    pub point_in_cone: bool,
    /// A violated disputed inequality only refutes membership if its triple is genuine.
    pub violation_refutes_membership: bool,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub point: SpectrumPair,
    pub disputed: Vec<DisputedTriple>,
    /// `(label, slack)` for the disputed inequalities followed by every `fflp(3,3)` form.
    pub counterexample_slacks: Vec<(String, Rational)>,
    /// The inequalities behind `counterexample_slacks`, in the same order.
    pub inequalities: Vec<ApqInequality>,
    pub point_verdict: MembershipVerdict,
    pub conclusion: AuditConclusion,
}

/// Re-derives the disputed `A(3,3)` example from first principles: membership of the two
/// triples in `LR^6_3`, exact slacks at `(λ0, s0)` and the resulting verdict.
pub fn audit_withdrawal() -> Result<AuditReport> {
    let point = disputed_point();
    let lr63 = lr_triples(6, 3)?;
    let mut disputed = Vec::new();
    let mut inequalities = Vec::new();
    let mut slacks = Vec::new();
    for (line, t) in disputed_triples().into_iter().enumerate() {
        let partitions = t.partitions();
        let horn_verdict = horn_membership(
            &RatTuple::from_partition(&partitions.0),
            &RatTuple::from_partition(&partitions.1),
            &RatTuple::from_partition(&partitions.2),
        )?;
        let in_lr = lr63.binary_search(&t).is_ok();
        debug_assert_eq!(in_lr, horn_verdict.member);
        let mut inequality = apq_inequality(&t, 3)?;
        inequality.label = format!("disputed line {} {t}", line + 1);
        let slack = evaluate_slack(&inequality, &point)?;
        slacks.push((inequality.label.clone(), slack.clone()));
        inequalities.push(inequality.clone());
        disputed.push(DisputedTriple {
            triple: t,
            partitions,
            horn_verdict,
            in_lr,
            inequality,
            slack,
        });
    }
    let mut fflp_ok = true;
    for ineq in apq_inequalities(3, 3, Variant::Fflp)? {
        let slack = evaluate_slack(&ineq, &point)?;
        fflp_ok &= !slack.is_negative();
        slacks.push((ineq.label.clone(), slack));
        inequalities.push(ineq);
    }
    let point_verdict = apq_membership(&point, Method::Direct)?;
    let satisfied: Vec<bool> = disputed.iter().map(|d| !d.slack.is_negative()).collect();
    let violates = satisfied.iter().any(|s| !s);
    let conclusion = AuditConclusion {
        disputed_triples_in_lr: disputed.iter().map(|d| d.in_lr).collect(),
        point_violates_a_disputed_inequality: violates,
        violation_refutes_membership: disputed.iter().any(|d| d.in_lr && d.slack.is_negative()),
        disputed_inequalities_satisfied: satisfied,
        point_satisfies_all_fflp: fflp_ok,
        point_in_cone: point_verdict.member,
    };
    Ok(AuditReport {
        point,
        disputed,
        counterexample_slacks: slacks,
        inequalities,
        point_verdict,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::rational::frac;

    fn tuple(v: &[i64]) -> RatTuple {
        RatTuple::from_ints(v).unwrap()
    }

    fn triple(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> HornTriple {
        HornTriple::from_elems(n, i, j, k).unwrap()
    }

    #[test]
    fn nu_examples() {
        assert_eq!(
            nu(&tuple(&[1, 0, 0]), 3, 3).unwrap(),
            tuple(&[1, 0, 0, 0, 0, -1])
        );
        assert_eq!(nu(&tuple(&[2, 1]), 2, 2).unwrap(), tuple(&[2, 1, -1, -2]));
        assert_eq!(nu(&tuple(&[0, 0]), 4, 2).unwrap(), RatTuple::zeros(6));
        assert_eq!(nu(&tuple(&[1]), 2, 1).unwrap(), tuple(&[1, 0, -1]));
        assert!(nu(&tuple(&[1, -1]), 2, 2).is_err());
        assert!(nu(&tuple(&[1]), 1, 2).is_err());
    }

    #[test]
    fn lambda_star_examples() {
        let l = tuple(&[1, 1, 1, 1, -1, -1]);
        assert_eq!(lambda_star(&l), tuple(&[1, 1, -1, -1, -1, -1]));
        assert_eq!(lambda_star(&lambda_star(&l)), l);
        let sym = RatTuple::new(vec![frac(3, 2), int(0), frac(-3, 2)]).unwrap();
        assert_eq!(lambda_star(&sym), sym);
    }

    #[test]
    fn apq_inequality_examples() {
        let f = apq_inequality(&triple(4, &[1], &[1], &[1]), 2).unwrap();
        assert_eq!(
            (f.lambda_coeffs.as_slice(), f.s_coeffs.as_slice()),
            (&[1, 0, 0, -1][..], &[-2, 0][..])
        );
        let f = apq_inequality(&triple(6, &[1, 2], &[1, 2], &[1, 2]), 3).unwrap();
        assert_eq!(f.lambda_coeffs, vec![1, 1, 0, 0, -1, -1]);
        assert_eq!(f.s_coeffs, vec![-2, -2, 0]);
        let f = apq_inequality(&triple(6, &[1, 3, 4], &[1, 2, 5], &[1, 4, 5]), 3).unwrap();
        assert_eq!(f.s_coeffs, vec![-2, 2, 2]);
    }

    #[test]
    fn overlapping_k_halves_cancel() {
        // K = {1, 4} in [4], q = 2: s_1 enters with -2 (from 1) and +2 (from 4° = 1).
        let f = apq_inequality(&triple(4, &[1, 4], &[1, 2], &[1, 4]), 2).unwrap();
        assert_eq!(f.s_coeffs, vec![0, 0]);
    }

    #[test]
    fn fflp_matches_six_linear_forms_at_3_3() {
        let got: Vec<String> = apq_inequalities(3, 3, Variant::Fflp)
            .unwrap()
            .iter()
            .filter(|f| f.triple.as_ref().map(|t| t.r()) == Some(1))
            .map(|f| f.describe())
            .collect();
        assert_eq!(
            got,
            [
                "λ1 - λ6 >= 2(s1)",
                "λ1 - λ5 >= 2(s2)",
                "λ1 - λ4 >= 2(s3)",
                "λ2 - λ6 >= 2(s2)",
                "λ2 - λ5 >= 2(s3)",
                "λ3 - λ6 >= 2(s3)",
            ]
        );
    }

    #[test]
    fn full_3_3_contains_total_form() {
        let sys = apq_inequalities(3, 3, Variant::Full).unwrap();
        assert!(sys
            .iter()
            .any(|f| f.lambda_coeffs == [1, 1, 1, -1, -1, -1] && f.s_coeffs == [-2, -2, -2]));
    }

    #[test]
    fn background_layout() {
        let bg = background_inequalities(3, 3);
        assert_eq!(bg.len(), 5 + 2 + 1);
        assert_eq!(bg.last().unwrap().s_coeffs, vec![0, 0, 1]);
        assert!(bg.iter().all(|f| f.source == Source::Background));
    }

    #[test]
    fn restricted_is_subset_of_full() {
        let full = apq_inequalities(3, 2, Variant::Full).unwrap();
        let restricted = apq_inequalities(3, 2, Variant::Restricted).unwrap();
        for f in restricted.iter().filter(|f| f.source == Source::Restricted) {
            let t = f.triple.as_ref().unwrap();
            assert!(is_restricted(t, 2));
            assert!(full.iter().any(|g| g.triple.as_ref() == Some(t)
                && g.lambda_coeffs == f.lambda_coeffs
                && g.s_coeffs == f.s_coeffs));
        }
        assert!(apq_system(1, 2, Variant::Full).is_err());
    }

    #[test]
    fn slack_examples() {
        let sp = SpectrumPair::from_ints(2, 2, &[2, 1, -1, -2], &[1, 1]).unwrap();
        let f = apq_inequality(&triple(4, &[1], &[1], &[1]), 2).unwrap();
        assert_eq!(evaluate_slack(&f, &sp).unwrap(), int(2));
        let zero = SpectrumPair::zero(3, 3).unwrap();
        for g in apq_inequalities(3, 3, Variant::Full).unwrap() {
            assert_eq!(evaluate_slack(&g, &zero).unwrap(), int(0));
        }
        let wrong = SpectrumPair::zero(3, 2).unwrap();
        assert!(evaluate_slack(&f, &wrong).is_err());
    }

    #[test]
    fn membership_examples() {
        for (p, q) in [(2, 1), (3, 3)] {
            let zero = SpectrumPair::zero(p, q).unwrap();
            assert!(apq_membership(&zero, Method::Direct).unwrap().member);
            assert!(apq_membership(&zero, Method::Reduction).unwrap().member);
        }
        let sp = SpectrumPair::from_ints(2, 2, &[1, 0, 0, -1], &[1, 1]).unwrap();
        let direct = apq_membership(&sp, Method::Direct).unwrap();
        let reduction = apq_membership(&sp, Method::Reduction).unwrap();
        assert!(!direct.member);
        assert_eq!(direct, reduction);
        let total = apq_inequality(&triple(4, &[1, 2], &[1, 2], &[1, 2]), 2).unwrap();
        assert_eq!(evaluate_slack(&total, &sp).unwrap(), int(2 - 4));
    }

    #[test]
    fn disputed_point_is_member() {
        let sp = disputed_point();
        let direct = apq_membership(&sp, Method::Direct).unwrap();
        assert!(direct.member);
        assert_eq!(direct, apq_membership(&sp, Method::Reduction).unwrap());
    }

    #[test]
    fn audit_report() {
        let report = audit_withdrawal().unwrap();
        assert_eq!(report.counterexample_slacks[0].1, int(2));
        assert_eq!(report.counterexample_slacks[1].1, int(-2));
        let d = &report.disputed[0];
        assert_eq!(d.partitions.0.parts(), &[1, 1, 0]);
        assert_eq!(d.partitions.1.parts(), &[2, 0, 0]);
        assert_eq!(d.partitions.2.parts(), &[2, 2, 0]);
        assert_eq!(
            d.horn_verdict.certificate,
            Certificate::Violation {
                triple: triple(3, &[1], &[2], &[2]),
                lhs: int(1),
                rhs: int(2)
            }
        );
        assert_eq!(report.conclusion.disputed_triples_in_lr, vec![false, false]);
        assert!(report.conclusion.point_satisfies_all_fflp);
        assert!(report.conclusion.point_in_cone);
        assert!(!report.conclusion.violation_refutes_membership);
        for ((label, slack), ineq) in report
            .counterexample_slacks
            .iter()
            .zip(&report.inequalities)
        {
            assert_eq!(label, &ineq.label);
            assert_eq!(&evaluate_slack(ineq, &report.point).unwrap(), slack);
        }
    }

    #[test]
    fn scaling_keeps_verdict() {
        let sp = SpectrumPair::from_ints(2, 2, &[1, 0, 0, -1], &[1, 1]).unwrap();
        let scaled = sp.scaled(&frac(7, 3)).unwrap();
        assert_eq!(
            apq_membership(&sp, Method::Direct).unwrap().member,
            apq_membership(&scaled, Method::Direct).unwrap().member
        );
        assert!(sp.scaled(&int(0)).is_err());
    }
}
