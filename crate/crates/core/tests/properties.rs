//! Structural properties of LR^n_r, Horn(n) membership and A(p,q) membership.

use std::collections::BTreeSet;

use horn_cone::apqcone::{apq_membership, nu, Method, SpectrumPair};
use horn_cone::combinat::{mu, reflect, subsets};
use horn_cone::horncone::{
    horn_membership, horn_triples, lr_triples, lr_triples_uncached, Certificate, HornTriple,
    RatTuple,
};
use horn_cone::polyhedra::rational::{frac, int};
use horn_cone::Rational;
use proptest::prelude::*;

fn key(t: &HornTriple) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    (
        t.i().elems().to_vec(),
        t.j().elems().to_vec(),
        t.k().elems().to_vec(),
    )
}

#[test]
fn level_sizes() {
    // Counts of LR^n_r for r = 1..n-1.
    let expected: [(usize, &[usize]); 5] = [
        (2, &[3]),
        (3, &[6, 6]),
        (4, &[10, 21, 10]),
        (5, &[15, 56, 56, 15]),
        (6, &[21, 126, 228, 126, 21]),
    ];
    for (n, sizes) in expected {
        let got: Vec<usize> = (1..n).map(|r| lr_triples(n, r).unwrap().len()).collect();
        assert_eq!(got, sizes, "n={n}");
    }
    assert_eq!(horn_triples(7).unwrap().len(), 2062);
}

#[test]
fn top_level_is_the_full_set() {
    for n in 1..=5 {
        let top = lr_triples(n, n).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].i().elems(), (1..=n).collect::<Vec<_>>());
    }
}

#[test]
fn cache_matches_fresh_enumeration() {
    for n in 2..=6 {
        for r in 1..n {
            assert_eq!(
                *lr_triples(n, r).unwrap(),
                lr_triples_uncached(n, r).unwrap()
            );
        }
    }
}

#[test]
fn sorted_and_trace_consistent() {
    for n in 2..=7 {
        for r in 1..n {
            let list = lr_triples(n, r).unwrap();
            assert!(list.windows(2).all(|w| w[0] < w[1]));
            for t in list.iter() {
                assert_eq!(t.i().sum() + t.j().sum(), t.k().sum() + r * (r + 1) / 2);
            }
        }
    }
}

#[test]
fn swap_symmetry() {
    for n in 2..=7 {
        for r in 1..n {
            let set: BTreeSet<_> = lr_triples(n, r).unwrap().iter().map(key).collect();
            for t in lr_triples(n, r).unwrap().iter() {
                assert!(set.contains(&key(&t.swapped())), "{t} without its swap");
            }
        }
    }
}

/// Exhaustive check of the defining property: a triple is listed iff its partitions lie in
/// Horn(r).
#[test]
fn listed_iff_partitions_in_horn() {
    for (n, r) in [(5, 2), (6, 2), (6, 3)] {
        let listed: BTreeSet<_> = lr_triples(n, r).unwrap().iter().map(key).collect();
        let sets = subsets(n, r).unwrap();
        for i in &sets {
            for j in &sets {
                for k in &sets {
                    let (x, y, z) = (
                        RatTuple::from_partition(&mu(i)),
                        RatTuple::from_partition(&mu(j)),
                        RatTuple::from_partition(&mu(k)),
                    );
                    let member = horn_membership(&x, &y, &z).unwrap().member;
                    let k3 = (i.elems().to_vec(), j.elems().to_vec(), k.elems().to_vec());
                    assert_eq!(member, listed.contains(&k3));
                }
            }
        }
    }
}

#[test]
fn disputed_triples_fail_at_level_one() {
    let t = HornTriple::from_elems(6, &[1, 3, 4], &[1, 2, 5], &[1, 4, 5]).unwrap();
    let (a, b, c) = t.partitions();
    assert_eq!(
        (a.parts(), b.parts(), c.parts()),
        (&[1, 1, 0][..], &[2, 0, 0][..], &[2, 2, 0][..])
    );
    let (x, y, z) = (
        RatTuple::from_partition(&a),
        RatTuple::from_partition(&b),
        RatTuple::from_partition(&c),
    );
    let v = horn_membership(&x, &y, &z).unwrap();
    assert!(!v.member && v.confirms_violation(&x, &y, &z));
    match v.certificate {
        Certificate::Violation { triple, lhs, rhs } => {
            assert_eq!(triple.to_string(), "1;2;2");
            assert_eq!((lhs, rhs), (int(1), int(2)));
        }
        other => panic!("unexpected certificate {other:?}"),
    }
}

fn decreasing(len: usize, lo: i64, hi: i64, den: i64) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(lo..=hi, len).prop_map(move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.into_iter().map(|k| frac(k, den)).collect()
    })
}

fn sorted_desc(mut v: Vec<Rational>) -> RatTuple {
    v.sort_by(|a, b| b.cmp(a));
    RatTuple::new(v).unwrap()
}

fn pair_strategy() -> impl Strategy<Value = SpectrumPair> {
    prop_oneof![
        Just((2usize, 1usize)),
        Just((2, 2)),
        Just((3, 2)),
        Just((3, 3))
    ]
    .prop_flat_map(|(p, q)| {
        (decreasing(p + q, -9, 9, 3), decreasing(q, 0, 6, 2)).prop_map(move |(l, s)| {
            SpectrumPair::new(p, q, RatTuple::new(l).unwrap(), RatTuple::new(s).unwrap()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// diag(x) + diag(σ y) has spectrum sort(x + σ y), so that triple lies in Horn(n).
    #[test]
    fn commuting_sums_are_members(
        x in decreasing(5, -20, 20, 3),
        y in decreasing(5, -20, 20, 4),
        shift in 0usize..5,
    ) {
        let z: Vec<Rational> = (0..5).map(|i| &x[i] + &y[(i + shift) % 5]).collect();
        let v = horn_membership(
            &RatTuple::new(x).unwrap(),
            &RatTuple::new(y).unwrap(),
            &sorted_desc(z),
        ).unwrap();
        prop_assert!(v.member, "{:?}", v.certificate);
    }

    #[test]
    fn negative_verdicts_are_certified(
        x in decreasing(4, -6, 6, 1),
        y in decreasing(4, -6, 6, 1),
        z in decreasing(4, -6, 6, 1),
    ) {
        let (x, y, z) = (RatTuple::new(x).unwrap(), RatTuple::new(y).unwrap(), RatTuple::new(z).unwrap());
        let v = horn_membership(&x, &y, &z).unwrap();
        prop_assert_eq!(v.member, matches!(v.certificate, Certificate::Member));
        if !v.member {
            prop_assert!(v.confirms_violation(&x, &y, &z));
        }
    }

    #[test]
    fn methods_agree(sp in pair_strategy()) {
        let a = apq_membership(&sp, Method::Direct).unwrap();
        let b = apq_membership(&sp, Method::Reduction).unwrap();
        prop_assert_eq!(a.member, b.member);
    }

    #[test]
    fn positive_scaling_preserves_membership(sp in pair_strategy(), num in 1i64..7, den in 1i64..7) {
        let scaled = sp.scaled(&frac(num, den)).unwrap();
        prop_assert_eq!(
            apq_membership(&sp, Method::Direct).unwrap().member,
            apq_membership(&scaled, Method::Direct).unwrap().member
        );
    }

    /// Block-diagonal X has a zero off-diagonal block, so (λ, 0) is always realised; the seed
    /// matrix Y(s) realises (ν(s), s).
    #[test]
    fn realised_points_are_members(sp in pair_strategy()) {
        let (p, q) = (sp.p(), sp.q());
        let zero = SpectrumPair::new(p, q, sp.lambda().clone(), RatTuple::zeros(q)).unwrap();
        prop_assert!(apq_membership(&zero, Method::Direct).unwrap().member);
        let seed = SpectrumPair::new(p, q, nu(sp.s(), p, q).unwrap(), sp.s().clone()).unwrap();
        prop_assert!(apq_membership(&seed, Method::Reduction).unwrap().member);
    }

    /// Enlarging the top singular value far beyond the eigenvalue spread always leaves the cone:
    /// the r = 1 form λ1 - λn ≥ 2 s1 must fail.
    #[test]
    fn large_singular_values_leave_the_cone(sp in pair_strategy()) {
        let (p, q) = (sp.p(), sp.q());
        let spread = &sp.lambda().entries()[0] - &sp.lambda().entries()[p + q - 1];
        let mut s = sp.s().entries().to_vec();
        s[0] = spread + int(1);
        let out = SpectrumPair::new(p, q, sp.lambda().clone(), sorted_desc(s)).unwrap();
        prop_assert!(!apq_membership(&out, Method::Direct).unwrap().member);
    }

    #[test]
    fn reflection_is_an_involution(n in 1usize..9, r in 1usize..9) {
        prop_assume!(r <= n);
        for s in subsets(n, r).unwrap() {
            prop_assert_eq!(reflect(&reflect(&s)), s);
        }
    }
}
