use proptest::prelude::*;

use stabletype::decomposition::{formal_sum_equal, mw_decompose, psi_rank};
use stabletype::equivalence::{perm_marks_equal, stably_equivalent, Verdict};
use stabletype::hom::{enumerate_homs, inj_classes, k_flag};
use stabletype::lattice::{is_cyclic_mod_p, p_subgroup_iso_classes};
use stabletype::out::{automorphism_group, out_action, w_bar_nonzero};
use stabletype::{is_isomorphic, make_named, FiniteGroup, GroupKind, Permutation};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn group() -> impl Strategy<Value = FiniteGroup> {
    (3usize..=5)
        .prop_flat_map(|d| prop::collection::vec(perm(d), 1..=2).prop_map(move |g| (g, d)))
        .prop_map(|(gens, d)| FiniteGroup::close_generators(&gens, d).unwrap())
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3])
}

/// The same group relabelled by conjugating every generator by `s`.
fn relabel(g: &FiniteGroup, s: &Permutation) -> FiniteGroup {
    let si = s.inverse();
    let gens: Vec<Permutation> = g
        .generator_perms()
        .iter()
        .map(|x| s.compose(x).compose(&si))
        .collect();
    FiniteGroup::close_generators(&gens, g.degree()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_is_a_group(g in group()) {
        let n = g.order();
        let mut fact = 1;
        for k in 2..=g.degree() { fact *= k; }
        prop_assert_eq!(fact % n, 0);
        for a in 0..n {
            prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
            prop_assert_eq!(g.element(g.mul(a, 1 % n)), &g.element(a).compose(g.element(1 % n)));
        }
        let classes = g.conjugacy_classes();
        prop_assert_eq!(classes.class_sizes.iter().sum::<usize>(), n);
    }

    #[test]
    fn iso_finds_relabelling(g in group(), s in perm(5)) {
        let s = if g.degree() == 5 { s } else { Permutation::identity(g.degree()) };
        let h = relabel(&g, &s);
        let phi = is_isomorphic(&g, &h);
        prop_assert!(phi.is_some());
        prop_assert!(phi.unwrap().is_homomorphism(&g, &h));
        prop_assert!(is_isomorphic(&h, &g).is_some());
    }

    #[test]
    fn hom_count_matches_roots(g in group(), n in 2usize..=6) {
        let cn = make_named(GroupKind::Cyclic(n)).unwrap();
        let homs = enumerate_homs(&cn, &g).unwrap();
        let roots = (0..g.order()).filter(|&x| g.pow(x, n) == g.identity()).count();
        prop_assert_eq!(homs.len(), roots);
        for h in &homs {
            prop_assert!(h.is_homomorphism(&cn, &g));
        }
    }

    #[test]
    fn equivalence_is_reflexive_symmetric_and_reduction_invariant(
        a in group(), b in group(), p in prime()
    ) {
        prop_assert_eq!(stably_equivalent(&a, &a, p).unwrap().result, Verdict::Equivalent);
        let ab = stably_equivalent(&a, &b, p).unwrap().result;
        let ba = stably_equivalent(&b, &a, p).unwrap().result;
        prop_assert_eq!(ab, ba);
        let ra = a.reduce_mod_p(p).unwrap();
        prop_assert_eq!(stably_equivalent(&ra, &b, p).unwrap().result, ab);
        if ab == Verdict::Equivalent {
            let da = mw_decompose(&a, p).unwrap();
            let db = mw_decompose(&b, p).unwrap();
            prop_assert!(formal_sum_equal(&da.sum, &db.sum));
        }
    }

    #[test]
    fn decomposition_collapses_on_reduced_cyclic(g in group(), p in prime()) {
        let d = mw_decompose(&g, p).unwrap();
        if is_cyclic_mod_p(&g, p) && g.is_reduced(p) && g.order() % p as usize == 0 {
            prop_assert_eq!(d.sum.len(), 1);
            prop_assert_eq!(d.sum.coefficient_of(&g), num_rational::BigRational::from_integer(1.into()));
        }
        for t in d.sum.terms() {
            prop_assert!(is_cyclic_mod_p(&t.group, p) && t.group.is_reduced(p));
        }
    }

    #[test]
    fn psi_rank_counts_cyclic_pprime_classes(g in group(), p in prime()) {
        let r = psi_rank(&g, p).unwrap();
        prop_assert_eq!(r.rank, r.cyclic_class_count);
        for (row, &order) in r.matrix.entries.iter().zip(&r.matrix.row_orders) {
            prop_assert_eq!(row[0], g.order() / order);
        }
    }

    #[test]
    fn weyl_fibers_agree_with_k_flag(g in group(), p in prime()) {
        for q in p_subgroup_iso_classes(&g, p).unwrap() {
            let out = automorphism_group(&q).unwrap();
            prop_assert_eq!(out.aut_group().order(), out.inn().order() * out.order());
            let inj = inj_classes(&q, &g, p).unwrap();
            for c in &inj.classes {
                let alpha = &c.representative;
                prop_assert_eq!(
                    w_bar_nonzero(&q, &g, &out, alpha, p, true).unwrap(),
                    k_flag(&g, alpha, p)
                );
            }
            let action = out_action(&inj, &out).unwrap();
            prop_assert!(action.action.is_action_of(out.out_group()));
            prop_assert!(perm_marks_equal(&action, &action, &out, p).unwrap().equal);
        }
    }
}
