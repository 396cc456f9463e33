//! Subgroup enumeration, conjugacy classes of subgroups, and the poset of
//! cyclic mod p subgroups.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::{p_part, FiniteGroup, Subgroup};
use crate::iso::is_isomorphic;

/// Every subgroup of `g` exactly once, sorted by (order, member set).
///
/// Starts from the trivial subgroup and repeatedly joins one more cyclic
/// subgroup; every subgroup is reached because it is generated by finitely
/// many of its cyclic subgroups.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let cap = g.caps().subgroup_order;
    if g.order() > cap {
        return Err(Error::cap("subgroup enumeration order", g.order(), cap));
    }
    let cyclic = cyclic_generators(g);
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let trivial = g.trivial_subgroup();
    seen.insert(trivial.clone());
    let mut queue = VecDeque::from([trivial]);
    while let Some(h) = queue.pop_front() {
        for &x in &cyclic {
            if h.contains(x) {
                continue;
            }
            let k = g.join_element(&h, x);
            if !seen.contains(&k) {
                seen.insert(k.clone());
                queue.push_back(k);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// One generator per cyclic subgroup (the least element index generating it).
fn cyclic_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut gens = Vec::new();
    for x in 1..g.order() {
        let c = g.subgroup(&[x]);
        if seen.insert(c.members().to_vec()) {
            gens.push(x);
        }
    }
    gens
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Index into `SubgroupClassTable::subgroups` of the canonical representative.
    pub representative: usize,
    pub members: Vec<usize>,
    /// `witnesses[k]` conjugates the representative onto `members[k]`.
    pub witnesses: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SubgroupClassTable {
    pub subgroups: Vec<Subgroup>,
    pub classes: Vec<SubgroupClass>,
    /// Subgroup index to class index.
    pub fusion: Vec<usize>,
}

impl SubgroupClassTable {
    pub fn representative(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.classes[class].representative]
    }

    pub fn class_reps(&self) -> Vec<&Subgroup> {
        (0..self.classes.len())
            .map(|c| self.representative(c))
            .collect()
    }
}

pub fn subgroup_conjugacy_classes(g: &FiniteGroup) -> Result<SubgroupClassTable> {
    let subgroups = all_subgroups(g)?;
    Ok(classify(g, subgroups))
}

fn classify(g: &FiniteGroup, subgroups: Vec<Subgroup>) -> SubgroupClassTable {
    let index: HashMap<&Subgroup, usize> =
        subgroups.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut fusion = vec![usize::MAX; subgroups.len()];
    let mut classes = Vec::new();
    for i in 0..subgroups.len() {
        if fusion[i] != usize::MAX {
            continue;
        }
        let cls = classes.len();
        let mut members = Vec::new();
        let mut witnesses = Vec::new();
        for t in 0..g.order() {
            let conj = g.conjugate_subgroup(t, &subgroups[i]);
            let j = index[&conj];
            if fusion[j] == usize::MAX {
                fusion[j] = cls;
                members.push(j);
                witnesses.push(t);
            }
        }
        let mut paired: Vec<(usize, usize)> = members.into_iter().zip(witnesses).collect();
        paired.sort_unstable();
        classes.push(SubgroupClass {
            representative: i,
            members: paired.iter().map(|p| p.0).collect(),
            witnesses: paired.iter().map(|p| p.1).collect(),
        });
    }
    drop(index);
    SubgroupClassTable {
        subgroups,
        classes,
        fusion,
    }
}

/// Isomorphism types of all subgroups of a Sylow `p`-subgroup, smallest first.
/// Each representative is realized inside the same permutation degree as `g`.
pub fn p_subgroup_iso_classes(g: &FiniteGroup, p: u64) -> Result<Vec<FiniteGroup>> {
    let sylow = g.sylow(p);
    let pg = g.subgroup_as_group(&sylow);
    let mut reps: Vec<FiniteGroup> = Vec::new();
    for s in all_subgroups(&pg)? {
        let h = pg.subgroup_as_group(&s);
        if !reps.iter().any(|r| is_isomorphic(r, &h).is_some()) {
            reps.push(h);
        }
    }
    Ok(reps)
}

/// A Sylow `p`-subgroup is normal with cyclic quotient.
pub fn is_cyclic_mod_p(h: &FiniteGroup, p: u64) -> bool {
    cyclic_mod_p_by_orders((0..h.order()).map(|x| h.element_order(x)), h.order(), p)
}

/// [`is_cyclic_mod_p`] for a subgroup, computed inside the parent.
pub fn subgroup_is_cyclic_mod_p(g: &FiniteGroup, s: &Subgroup, p: u64) -> bool {
    cyclic_mod_p_by_orders(
        s.members().iter().map(|&x| g.element_order(x)),
        s.order(),
        p,
    )
}

// The Sylow subgroup is normal iff the p-elements number exactly |P|; the
// quotient is then cyclic iff some element has p'-part of its order equal to [H:P].
fn cyclic_mod_p_by_orders(orders: impl Iterator<Item = usize>, n: usize, p: u64) -> bool {
    let sylow = p_part(n, p);
    let index = n / sylow;
    let mut p_elements = 0;
    let mut has_generator = false;
    for o in orders {
        let pp = p_part(o, p);
        if pp == o {
            p_elements += 1;
        }
        if o / pp == index {
            has_generator = true;
        }
    }
    p_elements == sylow && has_generator
}

/// Conjugacy classes of cyclic mod p subgroups with containment up to conjugacy.
#[derive(Clone, Debug)]
pub struct CyclicModPPoset {
    pub prime: u64,
    pub class_reps: Vec<Subgroup>,
    pub class_members: Vec<Vec<Subgroup>>,
    /// `leq[i][j]`: some member of class `i` lies in the representative of class `j`.
    pub leq: Vec<Vec<bool>>,
    /// `[N_G(H) : H]` for each representative.
    pub index_in_normalizer: Vec<usize>,
    pub subgroup_counts: Vec<usize>,
}

impl CyclicModPPoset {
    pub fn len(&self) -> usize {
        self.class_reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_reps.is_empty()
    }

    /// Class index of a cyclic mod p subgroup.
    pub fn class_of(&self, s: &Subgroup) -> Option<usize> {
        self.class_members.iter().position(|m| m.contains(s))
    }
}

pub fn cyclic_mod_p_poset(g: &FiniteGroup, p: u64) -> Result<CyclicModPPoset> {
    let table = subgroup_conjugacy_classes(g)?;
    let kept: Vec<usize> = (0..table.classes.len())
        .filter(|&c| subgroup_is_cyclic_mod_p(g, table.representative(c), p))
        .collect();
    let class_reps: Vec<Subgroup> = kept
        .iter()
        .map(|&c| table.representative(c).clone())
        .collect();
    let class_members: Vec<Vec<Subgroup>> = kept
        .iter()
        .map(|&c| {
            table.classes[c]
                .members
                .iter()
                .map(|&i| table.subgroups[i].clone())
                .collect()
        })
        .collect();
    let leq = (0..kept.len())
        .map(|i| {
            (0..kept.len())
                .map(|j| {
                    class_reps[i].order() <= class_reps[j].order()
                        && class_reps[j].order().is_multiple_of(class_reps[i].order())
                        && class_members[i]
                            .iter()
                            .any(|m| m.is_subset_of(&class_reps[j]))
                })
                .collect()
        })
        .collect();
    let index_in_normalizer = class_reps
        .iter()
        .map(|h| g.normalizer(h).order() / h.order())
        .collect();
    let subgroup_counts = class_members.iter().map(Vec::len).collect();
    Ok(CyclicModPPoset {
        prime: p,
        class_reps,
        class_members,
        leq,
        index_in_normalizer,
        subgroup_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{make_named, GroupKind};

    fn named(kind: GroupKind) -> FiniteGroup {
        make_named(kind).unwrap()
    }

    /// Powerset closure: every subset closed under multiplication is a subgroup.
    fn brute_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 12);
        (0u32..1 << n)
            .filter(|&mask| {
                mask & 1 == 1
                    && (0..n).all(|a| {
                        mask >> a & 1 == 0
                            || (0..n).all(|b| mask >> b & 1 == 0 || mask >> g.mul(a, b) & 1 == 1)
                    })
            })
            .count()
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for kind in [
            GroupKind::Symmetric(3),
            GroupKind::Quaternion(8),
            GroupKind::Dihedral(8),
            GroupKind::Cyclic(7),
            GroupKind::Alternating(4),
        ] {
            let g = named(kind);
            assert_eq!(
                all_subgroups(&g).unwrap().len(),
                brute_subgroup_count(&g),
                "{kind:?}"
            );
        }
        assert_eq!(
            all_subgroups(&named(GroupKind::Symmetric(3)))
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            all_subgroups(&named(GroupKind::Quaternion(8)))
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn class_tables() {
        let t = subgroup_conjugacy_classes(&named(GroupKind::Symmetric(3))).unwrap();
        let sizes: Vec<usize> = t.classes.iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes, vec![1, 3, 1, 1]);

        let t = subgroup_conjugacy_classes(&named(GroupKind::Cyclic(12))).unwrap();
        assert!(t.classes.iter().all(|c| c.members.len() == 1));

        let a4 = named(GroupKind::Alternating(4));
        let t = subgroup_conjugacy_classes(&a4).unwrap();
        let order2: Vec<&SubgroupClass> = t
            .classes
            .iter()
            .filter(|c| t.subgroups[c.representative].order() == 2)
            .collect();
        assert_eq!(order2.len(), 1);
        assert_eq!(order2[0].members.len(), 3);
        for c in &t.classes {
            for (&m, &w) in c.members.iter().zip(&c.witnesses) {
                assert_eq!(
                    a4.conjugate_subgroup(w, &t.subgroups[c.representative]),
                    t.subgroups[m]
                );
            }
        }
    }

    #[test]
    fn subgroup_enumeration_cap() {
        let s6 = named(GroupKind::Symmetric(6));
        assert_eq!(all_subgroups(&s6).unwrap_err().kind(), "CapExceeded");
    }

    #[test]
    fn iso_classes_of_p_subgroups() {
        let s4 = named(GroupKind::Symmetric(4));
        let orders: Vec<usize> = p_subgroup_iso_classes(&s4, 2)
            .unwrap()
            .iter()
            .map(FiniteGroup::order)
            .collect();
        // 1, C2, C4, C2xC2, D8
        assert_eq!(orders, vec![1, 2, 4, 4, 8]);
        let s3 = named(GroupKind::Symmetric(3));
        assert_eq!(p_subgroup_iso_classes(&s3, 3).unwrap().len(), 2);
        assert_eq!(p_subgroup_iso_classes(&s3, 5).unwrap().len(), 1);
    }

    #[test]
    fn cyclic_mod_p_predicate() {
        let s3 = named(GroupKind::Symmetric(3));
        assert!(is_cyclic_mod_p(&s3, 3));
        assert!(!is_cyclic_mod_p(&s3, 2));
        assert!(is_cyclic_mod_p(&FiniteGroup::trivial(1), 2));
        let a4 = named(GroupKind::Alternating(4));
        assert!(is_cyclic_mod_p(&a4, 2));
        assert!(!is_cyclic_mod_p(&a4, 3));
        // C2 x C2 is not cyclic mod 3: trivial Sylow, non-cyclic quotient
        let v4 = named(GroupKind::ElementaryAbelian { p: 2, rank: 2 });
        assert!(!is_cyclic_mod_p(&v4, 3));
    }

    #[test]
    fn poset_of_s3() {
        let s3 = named(GroupKind::Symmetric(3));
        let at2 = cyclic_mod_p_poset(&s3, 2).unwrap();
        let orders: Vec<usize> = at2.class_reps.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3]);
        let at3 = cyclic_mod_p_poset(&s3, 3).unwrap();
        let orders: Vec<usize> = at3.class_reps.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(at3.index_in_normalizer, vec![6, 1, 2, 1]);
        assert_eq!(at3.subgroup_counts, vec![1, 3, 1, 1]);
        for i in 0..at3.len() {
            assert!(at3.leq[0][i]);
            assert!(at3.leq[i][i]);
        }
        assert!(!at3.leq[1][2]);
    }
}
