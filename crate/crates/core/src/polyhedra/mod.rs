//! Homogeneous inequality systems over exact rationals: Farkas implication, greedy redundancy
//! pruning and cone equality.
//!
//! A [`ConeSystem`] describes the cone `{x : g·x ≥ 0 for every form g, e·x = 0 for every
//! equality e}`. A form `f` is implied by the system iff `f = Σ μ_i g_i + Σ ν_k e_k` with
//! `μ ≥ 0`; the multipliers are found by an exact phase-one simplex and returned as a
//! certificate, and a failed search yields a ray of the cone on which `f` is negative.

pub mod rational;
mod simplex;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::horncone::HornTriple;
use crate::{par, Error, Result};
use rational::{primitive_integer_vector, to_f64, Rational};
use simplex::{nonnegative_combination, IntColumn, LpOutcome};

/// Where a form came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Horn,
    OsheaSjamaar,
    Restricted,
    Fflp,
    Background,
    Custom,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Horn => "horn",
            Source::OsheaSjamaar => "oshea-sjamaar",
            Source::Restricted => "restricted",
            Source::Fflp => "fflp",
            Source::Background => "background",
            Source::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "horn" => Source::Horn,
            "oshea-sjamaar" => Source::OsheaSjamaar,
            "restricted" => Source::Restricted,
            "fflp" => Source::Fflp,
            "background" => Source::Background,
            "custom" => Source::Custom,
            other => return Err(Error::Parse(format!("unknown form source {other:?}"))),
        })
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The homogeneous inequality `coeffs · x ≥ 0` (or `= 0` when stored as an equality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Rational>,
    pub label: String,
    pub source: Source,
    pub triple: Option<HornTriple>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>, label: impl Into<String>) -> Self {
        Self {
            coeffs,
            label: label.into(),
            source: Source::Custom,
            triple: None,
        }
    }

    pub fn from_ints(coeffs: &[i64], label: impl Into<String>) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect(), label)
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn with_triple(mut self, triple: HornTriple) -> Self {
        self.triple = Some(triple);
        self
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// The zero form `0 ≥ 0`, satisfied everywhere.
    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        Error::check_dim(self.dim(), x.len())?;
        Ok(self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, b)| to_f64(a) * b).sum()
    }

    /// Integer coefficients with gcd 1 along the same ray. Two forms with equal keys are
    /// positive multiples of each other; the direction of the inequality is never flipped.
    pub fn direction_key(&self) -> Vec<BigInt> {
        primitive_integer_vector(&self.coeffs).0
    }
}

/// Variable layout of a system, used for labelling and JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// `(λ_1..λ_n, s_1..s_q)`.
    LambdaS {
        n: usize,
        q: usize,
    },
    /// `(x_1..x_n, y_1..y_n, z_1..z_n)`.
    Xyz {
        n: usize,
    },
    Plain {
        dim: usize,
    },
}

impl Layout {
    pub fn dim(self) -> usize {
        match self {
            Layout::LambdaS { n, q } => n + q,
            Layout::Xyz { n } => 3 * n,
            Layout::Plain { dim } => dim,
        }
    }

    pub fn variable_name(self, index: usize) -> String {
        match self {
            Layout::LambdaS { n, .. } if index < n => format!("λ{}", index + 1),
            Layout::LambdaS { n, .. } => format!("s{}", index - n + 1),
            Layout::Xyz { n } => {
                let block = ["x", "y", "z"][index / n];
                format!("{block}{}", index % n + 1)
            }
            Layout::Plain { .. } => format!("v{}", index + 1),
        }
    }
}

/// A finite homogeneous system over a fixed variable layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSystem {
    pub layout: Layout,
    pub forms: Vec<LinearForm>,
    pub equalities: Vec<LinearForm>,
}

impl ConeSystem {
    pub fn new(layout: Layout) -> Self {
        Self {
            layout,
            forms: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn push_form(&mut self, form: LinearForm) -> Result<()> {
        Error::check_dim(self.dim(), form.dim())?;
        self.forms.push(form);
        Ok(())
    }

    pub fn push_equality(&mut self, form: LinearForm) -> Result<()> {
        Error::check_dim(self.dim(), form.dim())?;
        self.equalities.push(form);
        Ok(())
    }

    pub fn background_indices(&self) -> Vec<usize> {
        self.forms
            .iter()
            .enumerate()
            .filter(|(_, f)| f.source == Source::Background)
            .map(|(i, _)| i)
            .collect()
    }

    /// Forms that are neither background nor the zero form.
    pub fn nontrivial_forms(&self) -> impl Iterator<Item = &LinearForm> {
        self.forms
            .iter()
            .filter(|f| f.source != Source::Background && !f.is_trivial())
    }

    /// Whether `x` satisfies every form and equality exactly.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        for f in &self.forms {
            if f.eval(x)?.is_negative() {
                return Ok(false);
            }
        }
        for e in &self.equalities {
            if !e.eval(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Renders a form as `a·v + … ≥ 0` using the layout's variable names.
    pub fn describe(&self, form: &LinearForm) -> String {
        let mut out = String::new();
        for (i, c) in form.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let coef = if mag == rational::int(1) {
                String::new()
            } else if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("({}/{})", mag.numer(), mag.denom())
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&coef);
            out.push_str(&self.layout.variable_name(i));
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(" >= 0");
        out
    }
}

/// Multipliers proving `f = Σ μ_i g_i + Σ ν_k e_k` with `μ ≥ 0`. Indices refer to the system the
/// certificate was produced against; zero multipliers are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub form_multipliers: Vec<(usize, Rational)>,
    pub equality_multipliers: Vec<(usize, Rational)>,
}

impl FarkasCertificate {
    /// Re-derives `f` from the multipliers with exact arithmetic.
    pub fn verify(&self, system: &ConeSystem, f: &LinearForm) -> bool {
        if f.dim() != system.dim() {
            return false;
        }
        let mut acc = vec![Rational::zero(); system.dim()];
        for (i, mu) in &self.form_multipliers {
            let Some(g) = system.forms.get(*i) else {
                return false;
            };
            if mu.is_negative() {
                return false;
            }
            for (a, c) in acc.iter_mut().zip(&g.coeffs) {
                *a += mu * c;
            }
        }
        for (k, nu) in &self.equality_multipliers {
            let Some(e) = system.equalities.get(*k) else {
                return false;
            };
            for (a, c) in acc.iter_mut().zip(&e.coeffs) {
                *a += nu * c;
            }
        }
        acc == f.coeffs
    }
}

/// A point of the cone on which the tested form is strictly negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRay(pub Vec<Rational>);

impl WitnessRay {
    pub fn verify(&self, system: &ConeSystem, f: &LinearForm) -> bool {
        matches!(system.contains(&self.0), Ok(true))
            && matches!(f.eval(&self.0), Ok(v) if v.is_negative())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Implication {
    Implied(FarkasCertificate),
    NotImplied(WitnessRay),
}

impl Implication {
    pub fn is_implied(&self) -> bool {
        matches!(self, Implication::Implied(_))
    }

    pub fn verify(&self, system: &ConeSystem, f: &LinearForm) -> bool {
        match self {
            Implication::Implied(c) => c.verify(system, f),
            Implication::NotImplied(w) => w.verify(system, f),
        }
    }
}

/// Integer columns for every form and equality of a system, computed once and shared by all
/// implication queries against (subsets of) that system.
struct Prepared {
    dim: usize,
    forms: Vec<IntColumn>,
    form_scales: Vec<Rational>,
    form_keys: Vec<Vec<BigInt>>,
    eq_pos: Vec<IntColumn>,
    eq_neg: Vec<IntColumn>,
    eq_scales: Vec<Rational>,
}

impl Prepared {
    fn new(system: &ConeSystem) -> Self {
        let mut forms = Vec::with_capacity(system.forms.len());
        let mut form_scales = Vec::with_capacity(system.forms.len());
        let mut form_keys = Vec::with_capacity(system.forms.len());
        for f in &system.forms {
            let (ints, scale) = primitive_integer_vector(&f.coeffs);
            form_keys.push(ints.clone());
            forms.push(IntColumn::new(ints));
            form_scales.push(scale);
        }
        let mut eq_pos = Vec::new();
        let mut eq_neg = Vec::new();
        let mut eq_scales = Vec::new();
        for e in &system.equalities {
            let (ints, scale) = primitive_integer_vector(&e.coeffs);
            eq_neg.push(IntColumn::new(ints.iter().map(|x| -x).collect()));
            eq_pos.push(IntColumn::new(ints));
            eq_scales.push(scale);
        }
        Self {
            dim: system.dim(),
            forms,
            form_scales,
            form_keys,
            eq_pos,
            eq_neg,
            eq_scales,
        }
    }

    /// Implication of `f` by the forms listed in `active` together with all equalities.
    fn implies(&self, active: &[usize], f: &[Rational]) -> Implication {
        let (target, target_scale) = primitive_integer_vector(f);
        if target.iter().all(Zero::is_zero) {
            return Implication::Implied(FarkasCertificate {
                form_multipliers: Vec::new(),
                equality_multipliers: Vec::new(),
            });
        }
        // Exact duplicate along the same ray: unit-style certificate without an LP.
        if let Some(&i) = active.iter().find(|&&i| self.form_keys[i] == target) {
            return Implication::Implied(FarkasCertificate {
                form_multipliers: vec![(i, &self.form_scales[i] / &target_scale)],
                equality_multipliers: Vec::new(),
            });
        }
        let mut cols: Vec<&IntColumn> = active
            .iter()
            .map(|&i| &self.forms[i])
            .filter(|c| !c.is_zero())
            .collect();
        let used: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&i| !self.forms[i].is_zero())
            .collect();
        for (p, n) in self.eq_pos.iter().zip(&self.eq_neg) {
            cols.push(p);
            cols.push(n);
        }
        match nonnegative_combination(&cols, &target) {
            LpOutcome::Feasible(mu) => {
                let k = used.len();
                let form_multipliers = used
                    .iter()
                    .zip(&mu[..k])
                    .filter(|(_, m)| !m.is_zero())
                    .map(|(&i, m)| (i, m * &self.form_scales[i] / &target_scale))
                    .collect();
                let equality_multipliers = (0..self.eq_scales.len())
                    .map(|e| {
                        let nu = &mu[k + 2 * e] - &mu[k + 2 * e + 1];
                        (e, nu * &self.eq_scales[e] / &target_scale)
                    })
                    .filter(|(_, nu)| !nu.is_zero())
                    .collect();
                Implication::Implied(FarkasCertificate {
                    form_multipliers,
                    equality_multipliers,
                })
            }
            LpOutcome::Infeasible(x) => {
                let (ints, _) = primitive_integer_vector(&x);
                debug_assert_eq!(ints.len(), self.dim);
                Implication::NotImplied(WitnessRay(
                    ints.into_iter().map(Rational::from_integer).collect(),
                ))
            }
        }
    }
}

/// Decides whether `f ≥ 0` holds on the whole cone of `system`.
pub fn implies(system: &ConeSystem, f: &LinearForm) -> Result<Implication> {
    Error::check_dim(system.dim(), f.dim())?;
    let prepared = Prepared::new(system);
    let all: Vec<usize> = (0..system.forms.len()).collect();
    Ok(prepared.implies(&all, &f.coeffs))
}

/// Outcome of [`prune`]: the reduced system plus a certificate for every removed form.
#[derive(Clone, Debug)]
pub struct PruneReport {
    pub system: ConeSystem,
    /// Indices (into the input system) of the surviving forms, in input order.
    pub kept: Vec<usize>,
    /// Removed input indices with multipliers over the input system.
    pub removed: Vec<(usize, FarkasCertificate)>,
}

impl PruneReport {
    pub fn kept_nontrivial(&self) -> usize {
        self.system.nontrivial_forms().count()
    }

    pub fn kept_background(&self) -> usize {
        self.system.background_indices().len()
    }
}

fn certificate(imp: Implication) -> FarkasCertificate {
    match imp {
        Implication::Implied(c) => c,
        Implication::NotImplied(_) => unreachable!("only implied forms are removed"),
    }
}

/// Greedy single-pass redundancy removal in input order: a form is dropped iff the forms still
/// present (other than itself) imply it. Forms listed in `protected` always stay.
///
/// The pass is evaluated in three stages with identical results to the serial loop. Forms not
/// implied by all the others can never be dropped; forms implied by those survivors plus the
/// protected set are always dropped and never change the cone seen later; only the remainder
/// needs the order-dependent serial sweep.
pub fn prune(system: &ConeSystem, protected: &[usize]) -> Result<PruneReport> {
    let total = system.forms.len();
    if let Some(&bad) = protected.iter().find(|&&i| i >= total) {
        return Err(Error::arg(format!("protected index {bad} out of range")));
    }
    let prepared = Prepared::new(system);
    let mut is_protected = vec![false; total];
    for &i in protected {
        is_protected[i] = true;
    }
    let candidates: Vec<usize> = (0..total).filter(|&i| !is_protected[i]).collect();

    let others = |skip: usize| -> Vec<usize> { (0..total).filter(|&j| j != skip).collect() };
    let stage1 = par::map_slice(&candidates, |&i| {
        prepared.implies(&others(i), &system.forms[i].coeffs)
    });
    let mut essential = vec![false; total];
    let mut ambiguous = Vec::new();
    for (&i, imp) in candidates.iter().zip(stage1) {
        if imp.is_implied() {
            ambiguous.push(i);
        } else {
            essential[i] = true;
        }
    }

    let core: Vec<usize> = (0..total)
        .filter(|&j| essential[j] || is_protected[j])
        .collect();
    let stage2 = par::map_slice(&ambiguous, |&i| {
        prepared.implies(&core, &system.forms[i].coeffs)
    });
    let mut removed = Vec::new();
    let mut leftovers = Vec::new();
    for (&i, imp) in ambiguous.iter().zip(stage2) {
        match imp {
            Implication::Implied(c) => removed.push((i, c)),
            Implication::NotImplied(_) => leftovers.push(i),
        }
    }

    let mut present: Vec<bool> = vec![false; total];
    for &i in core.iter().chain(&leftovers) {
        present[i] = true;
    }
    for &i in &leftovers {
        let active: Vec<usize> = (0..total).filter(|&j| j != i && present[j]).collect();
        let imp = prepared.implies(&active, &system.forms[i].coeffs);
        if imp.is_implied() {
            present[i] = false;
            removed.push((i, certificate(imp)));
        }
    }
    removed.sort_by_key(|(i, _)| *i);

    let kept: Vec<usize> = (0..total).filter(|&j| present[j]).collect();
    let mut out = ConeSystem::new(system.layout);
    out.forms = kept.iter().map(|&j| system.forms[j].clone()).collect();
    out.equalities = system.equalities.clone();
    Ok(PruneReport {
        system: out,
        kept,
        removed,
    })
}

/// [`prune`] with every background form protected.
pub fn prune_background(system: &ConeSystem) -> Result<PruneReport> {
    prune(system, &system.background_indices())
}

/// The literal serial greedy loop; slower, kept as the reference for [`prune`].
pub fn prune_serial(system: &ConeSystem, protected: &[usize]) -> Result<PruneReport> {
    let total = system.forms.len();
    let prepared = Prepared::new(system);
    let mut present = vec![true; total];
    let mut removed = Vec::new();
    for i in 0..total {
        if protected.contains(&i) {
            continue;
        }
        let active: Vec<usize> = (0..total).filter(|&j| j != i && present[j]).collect();
        let imp = prepared.implies(&active, &system.forms[i].coeffs);
        if imp.is_implied() {
            present[i] = false;
            removed.push((i, certificate(imp)));
        }
    }
    let kept: Vec<usize> = (0..total).filter(|&j| present[j]).collect();
    let mut out = ConeSystem::new(system.layout);
    out.forms = kept.iter().map(|&j| system.forms[j].clone()).collect();
    out.equalities = system.equalities.clone();
    Ok(PruneReport {
        system: out,
        kept,
        removed,
    })
}

/// Which side of a comparison a constraint was taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// One constraint of one system checked against the other system.
#[derive(Clone, Debug)]
pub struct Containment {
    pub side: Side,
    /// Form index, or equality index when `equality` is set.
    pub index: usize,
    pub equality: bool,
    /// For equalities `e = 0` the two halves `e ≥ 0` and `-e ≥ 0` are checked.
    pub outcome: Vec<Implication>,
}

#[derive(Clone, Debug)]
pub struct ConeComparison {
    pub equal: bool,
    pub checks: Vec<Containment>,
}

impl ConeComparison {
    /// First constraint that the other system fails to imply, with its separating ray.
    pub fn witness(&self) -> Option<(&Containment, &WitnessRay)> {
        self.checks.iter().find_map(|c| {
            c.outcome.iter().find_map(|o| match o {
                Implication::NotImplied(w) => Some((c, w)),
                Implication::Implied(_) => None,
            })
        })
    }
}

fn containments(side: Side, of: &ConeSystem, by: &ConeSystem) -> Vec<Containment> {
    let prepared = Prepared::new(by);
    let all: Vec<usize> = (0..by.forms.len()).collect();
    let mut jobs: Vec<(usize, bool)> = (0..of.forms.len()).map(|i| (i, false)).collect();
    jobs.extend((0..of.equalities.len()).map(|k| (k, true)));
    par::map_slice(&jobs, |&(index, equality)| {
        let outcome = if equality {
            let e = &of.equalities[index].coeffs;
            let neg: Vec<Rational> = e.iter().map(|c| -c).collect();
            vec![prepared.implies(&all, e), prepared.implies(&all, &neg)]
        } else {
            vec![prepared.implies(&all, &of.forms[index].coeffs)]
        };
        Containment {
            side,
            index,
            equality,
            outcome,
        }
    })
}

/// Two systems define the same cone iff each implies every constraint of the other.
pub fn cone_equal(a: &ConeSystem, b: &ConeSystem) -> Result<ConeComparison> {
    Error::check_dim(a.dim(), b.dim())?;
    let mut checks = containments(Side::A, a, b);
    checks.extend(containments(Side::B, b, a));
    let equal = checks
        .iter()
        .all(|c| c.outcome.iter().all(Implication::is_implied));
    Ok(ConeComparison { equal, checks })
}
