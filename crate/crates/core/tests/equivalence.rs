use proptest::prelude::*;

use stabletype::equivalence::{
    normal_sylow_equivalent, perm_marks_equal, pointwise_conjugate, pointwise_conjugate_symmetric,
    reduced_cyclic_equivalent, stably_equivalent, stably_equivalent_with, EquivalenceOptions,
    Verdict,
};
use stabletype::hom::inj_classes;
use stabletype::lattice::{all_subgroups, is_cyclic_mod_p};
use stabletype::out::{automorphism_group, out_action};
use stabletype::{is_isomorphic, parse_descriptor, FiniteGroup, Permutation};

fn g(desc: &str) -> FiniteGroup {
    parse_descriptor(desc).unwrap()
}

const PAIRS: &[(&str, &str, u64)] = &[
    ("Q12 x C2", "D6 x C4", 2),
    ("Q12 x C2", "D6 x C4", 3),
    ("A4", "E2^2", 2),
    ("A4", "A4", 2),
    ("S3", "C6", 3),
    ("S3", "C2", 2),
    ("S4", "D8", 2),
    ("S4", "S3", 3),
    ("C12", "C3", 3),
    ("D8 x C3", "D8", 2),
    ("Q8", "Q8 x C3", 2),
    ("A4", "C3", 3),
];

#[test]
fn inj_rep_and_k_decisions_agree() {
    let opts = EquivalenceOptions { cross_check: true };
    for &(a, b, p) in PAIRS {
        let v = stably_equivalent_with(&g(a), &g(b), p, opts).unwrap();
        if v.result == Verdict::SylowMismatch {
            continue;
        }
        let inj = v.per_q.iter().all(|q| q.matched);
        let rep = v.per_q.iter().all(|q| q.rep_matched == Some(true));
        let k = v.per_q.iter().all(|q| q.k_matched == Some(true));
        assert_eq!((inj, inj), (rep, k), "({a}, {b}, {p})");
    }
}

#[test]
fn equivalent_verdicts_have_isomorphic_sylows() {
    for &(a, b, p) in PAIRS {
        let (x, y) = (g(a), g(b));
        let v = stably_equivalent(&x, &y, p).unwrap();
        if v.result == Verdict::Equivalent {
            let px = x.subgroup_as_group(&x.sylow(p));
            let py = y.subgroup_as_group(&y.sylow(p));
            assert!(is_isomorphic(&px, &py).is_some(), "({a}, {b}, {p})");
        } else if v.result == Verdict::NotEquivalent {
            assert!(v.witness.is_some());
        }
    }
}

#[test]
fn s4_and_d8_differ_at_two() {
    // same Sylow subgroup, different fusion of involutions
    let v = stably_equivalent(&g("S4"), &g("D8"), 2).unwrap();
    assert_eq!(v.result, Verdict::NotEquivalent);
}

#[test]
fn other_faithful_a4_is_equivalent() {
    let other = g("perm{(1 2)(3 4),(1 3 2)}");
    assert_eq!(other.order(), 12);
    let v = normal_sylow_equivalent(&g("A4"), &other, 2).unwrap();
    assert_eq!(v.result, Verdict::Equivalent);
}

#[test]
fn methods_agree_where_defined() {
    let groups = [
        "C2",
        "C3",
        "C4",
        "C6",
        "E2^2",
        "S3",
        "D8",
        "Q8",
        "A4",
        "C12",
        "D10",
        "Q12",
        "D8 x C3",
        "perm{(1 2 3 4 5),(2 3 5 4)}",
    ];
    for p in [2, 3, 5] {
        for a in groups {
            for b in groups {
                let (x, y) = (g(a), g(b));
                let general = stably_equivalent(&x, &y, p).unwrap().result;
                let normal = |h: &FiniteGroup| h.is_normal(&h.sylow(p));
                if normal(&x) && normal(&y) {
                    let ns = normal_sylow_equivalent(&x, &y, p).unwrap().result;
                    assert_eq!(ns, general, "normal-sylow ({a}, {b}, {p})");
                }
                let rc = |h: &FiniteGroup| is_cyclic_mod_p(h, p) && h.is_reduced(p);
                if rc(&x) && rc(&y) {
                    let r = reduced_cyclic_equivalent(&x, &y, p).unwrap().result;
                    assert_eq!(r, general, "reduced-cyclic ({a}, {b}, {p})");
                }
            }
        }
    }
}

#[test]
fn symmetric_criterion_matches_ambient_criterion() {
    for n in 3..=5 {
        let sn = g(&format!("S{n}"));
        let subs = all_subgroups(&sn).unwrap();
        let as_group = |s| sn.subgroup_as_group(s);
        for (i, h) in subs.iter().enumerate() {
            for k in subs.iter().skip(i).filter(|k| k.order() == h.order()) {
                let ambient = pointwise_conjugate(&sn, h, k).equal;
                let symmetric = pointwise_conjugate_symmetric(&as_group(h), &as_group(k));
                assert_eq!(ambient, symmetric, "n = {n}");
            }
        }
    }
}

#[test]
fn marks_comparison_is_an_equivalence_relation() {
    let q = g("E2^2");
    let out = automorphism_group(&q).unwrap();
    let actions: Vec<_> = ["A4", "S4", "E2^2", "D8", "E2^3"]
        .iter()
        .map(|d| out_action(&inj_classes(&q, &g(d), 2).unwrap(), &out).unwrap())
        .collect();
    let eq = |i: usize, j: usize| {
        perm_marks_equal(&actions[i], &actions[j], &out, 2)
            .unwrap()
            .equal
    };
    for i in 0..actions.len() {
        assert!(eq(i, i));
        for j in 0..actions.len() {
            assert_eq!(eq(i, j), eq(j, i));
            for k in 0..actions.len() {
                if eq(i, j) && eq(j, k) {
                    assert!(eq(i, k));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pointwise_is_conjugation_invariant(
        h_gen in 0usize..24, k_gen in 0usize..24, t in 0usize..24
    ) {
        let s4 = g("S4");
        let h = s4.subgroup(&[h_gen]);
        let k = s4.subgroup(&[k_gen]);
        let base = pointwise_conjugate(&s4, &h, &k).equal;
        let ht = s4.conjugate_subgroup(t, &h);
        prop_assert_eq!(pointwise_conjugate(&s4, &ht, &k).equal, base);
        let kt = s4.conjugate_subgroup(t, &k);
        prop_assert_eq!(pointwise_conjugate(&s4, &h, &kt).equal, base);
    }

    #[test]
    fn cycle_profile_ignores_relabelling(images in Just((0u32..6).collect::<Vec<_>>()).prop_shuffle()) {
        let s = Permutation::new(images).unwrap();
        let h = g("perm{(1 2 3),(4 5 6)}");
        let si = s.inverse();
        let gens: Vec<Permutation> =
            h.generator_perms().iter().map(|x| s.compose(x).compose(&si)).collect();
        let k = FiniteGroup::close_generators(&gens, 6).unwrap();
        prop_assert!(pointwise_conjugate_symmetric(&h, &k));
    }
}
