//! Homomorphism sets `Hom(Q, G)` and their conjugacy classes `Rep(Q, G)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::iso::is_isomorphic;
use crate::lattice::all_subgroups;
use crate::out::{automorphism_group, OutGroup};

/// A homomorphism stored as a total map on element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Homomorphism {
    pub image_of: Vec<usize>,
}

impl Homomorphism {
    pub fn is_injective(&self) -> bool {
        // a homomorphism is injective iff only the identity maps to the identity
        self.image_of.iter().skip(1).all(|&y| y != 0)
    }

    pub fn image(&self, codomain: &FiniteGroup) -> Subgroup {
        codomain.subgroup_from_members(self.image_of.clone())
    }

    pub fn is_surjective(&self, codomain: &FiniteGroup) -> bool {
        let mut seen = vec![false; codomain.order()];
        for &y in &self.image_of {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Exhaustive check of `f(xy) = f(x) f(y)`.
    pub fn is_homomorphism(&self, domain: &FiniteGroup, codomain: &FiniteGroup) -> bool {
        let n = domain.order();
        self.image_of.len() == n
            && self.image_of[0] == 0
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    self.image_of[domain.mul(x, y)]
                        == codomain.mul(self.image_of[x], self.image_of[y])
                })
            })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Homomorphism) -> Homomorphism {
        Homomorphism {
            image_of: first.image_of.iter().map(|&x| self.image_of[x]).collect(),
        }
    }
}

/// Backtracking over images of a generating set of the domain.
///
/// Elements of the domain are reached level by level: level `k` holds the
/// elements of `⟨s_0..s_k⟩` not already in `⟨s_0..s_{k-1}⟩`, each written as a
/// known element times one generator. After choosing the image of `s_k` every
/// Cayley-graph edge inside `⟨s_0..s_k⟩` that was not checked earlier is tested.
pub(crate) struct HomSearch<'a> {
    domain: &'a FiniteGroup,
    codomain: &'a FiniteGroup,
    gens: Vec<usize>,
    levels: Vec<Level>,
}

struct Level {
    /// (element, parent, generator slot) with element = parent · s_slot.
    new: Vec<(usize, usize, usize)>,
    /// (element, generator slot) edges to verify.
    edges: Vec<(usize, usize)>,
}

impl<'a> HomSearch<'a> {
    pub(crate) fn new(
        domain: &'a FiniteGroup,
        codomain: &'a FiniteGroup,
        generator_limit: Option<usize>,
    ) -> Result<Self> {
        let gens = domain.small_generating_set();
        if let Some(limit) = generator_limit {
            if gens.len() > limit {
                return Err(Error::GeneratingSetTooLarge {
                    size: gens.len(),
                    limit,
                });
            }
        }
        let n = domain.order();
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut inside: Vec<usize> = vec![0];
        let mut levels = Vec::with_capacity(gens.len());
        for k in 0..gens.len() {
            let mut new = Vec::new();
            let mut queue: VecDeque<usize> = inside.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for (j, &s) in gens[..=k].iter().enumerate() {
                    let y = domain.mul(x, s);
                    if !reached[y] {
                        reached[y] = true;
                        new.push((y, x, j));
                        queue.push_back(y);
                    }
                }
            }
            let old: HashSet<usize> = inside.iter().copied().collect();
            inside.extend(new.iter().map(|&(y, _, _)| y));
            let mut edges = Vec::new();
            for &x in &inside {
                for j in 0..=k {
                    if j == k || !old.contains(&x) {
                        edges.push((x, j));
                    }
                }
            }
            levels.push(Level { new, edges });
        }
        debug_assert_eq!(inside.len(), n);
        Ok(HomSearch {
            domain,
            codomain,
            gens,
            levels,
        })
    }

    pub(crate) fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Calls `visit` on every homomorphism whose generator images pass `candidate`.
    /// With `injective`, only injective maps are produced.
    pub(crate) fn run<F, C>(&self, injective: bool, candidate: C, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
        C: Fn(usize, usize) -> bool,
    {
        let mut images = vec![usize::MAX; self.domain.order()];
        images[0] = 0;
        let mut gen_images = vec![0usize; self.gens.len()];
        let _ = self.step(
            0,
            injective,
            &candidate,
            &mut images,
            &mut gen_images,
            &mut visit,
        );
    }

    fn step<F, C>(
        &self,
        k: usize,
        injective: bool,
        candidate: &C,
        images: &mut [usize],
        gen_images: &mut [usize],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
        C: Fn(usize, usize) -> bool,
    {
        if k == self.gens.len() {
            return visit(images);
        }
        let (q, g) = (self.domain, self.codomain);
        let s_order = q.element_order(self.gens[k]);
        let level = &self.levels[k];
        'cand: for y in 0..g.order() {
            let y_order = g.element_order(y);
            if s_order % y_order != 0 || (injective && y_order != s_order) || !candidate(k, y) {
                continue;
            }
            gen_images[k] = y;
            for &(x, parent, j) in &level.new {
                let img = g.mul(images[parent], gen_images[j]);
                if injective && img == 0 {
                    continue 'cand;
                }
                images[x] = img;
            }
            for &(x, j) in &level.edges {
                if images[q.mul(x, self.gens[j])] != g.mul(images[x], gen_images[j]) {
                    continue 'cand;
                }
            }
            self.step(k + 1, injective, candidate, images, gen_images, visit)?;
        }
        ControlFlow::Continue(())
    }
}

/// All homomorphisms `Q → G`, in lexicographic order of generator images.
pub fn enumerate_homs(q: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<Homomorphism>> {
    collect_homs(q, g, false)
}

pub fn enumerate_injective_homs(q: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<Homomorphism>> {
    if q.order() > g.order() || !g.order().is_multiple_of(q.order()) {
        return Ok(Vec::new());
    }
    collect_homs(q, g, true)
}

fn collect_homs(q: &FiniteGroup, g: &FiniteGroup, injective: bool) -> Result<Vec<Homomorphism>> {
    let search = HomSearch::new(q, g, Some(q.caps().generators))?;
    let mut out = Vec::new();
    search.run(
        injective,
        |_, _| true,
        |img| {
            out.push(Homomorphism {
                image_of: img.to_vec(),
            });
            ControlFlow::Continue(())
        },
    );
    Ok(out)
}

/// One `G`-conjugacy class of homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepClass {
    /// Lexicographically least map in the class.
    pub representative: Homomorphism,
    pub orbit_size: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Injective and `|C_G(Im α)| / |Z(Im α)|` prime to `p`.
    pub in_k: bool,
}

/// `Hom(Q, G)/G` or a union of its classes.
#[derive(Clone, Debug)]
pub struct RepSet {
    pub prime: u64,
    pub domain_order: usize,
    pub codomain_order: usize,
    /// `|Hom(Q,G)|` (all maps, even when only some classes are kept).
    pub hom_count: usize,
    pub classes: Vec<RepClass>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl RepSet {
    fn build(
        q: &FiniteGroup,
        g: &FiniteGroup,
        p: u64,
        homs: Vec<Homomorphism>,
        hom_count: usize,
    ) -> Self {
        let mut assigned: HashSet<Vec<usize>> = HashSet::with_capacity(homs.len());
        let mut orbits: Vec<Vec<Vec<usize>>> = Vec::new();
        for phi in homs {
            if assigned.contains(&phi.image_of) {
                continue;
            }
            // orbit under post-conjugation by the generators of G
            let mut orbit = vec![phi.image_of.clone()];
            assigned.insert(phi.image_of);
            let mut head = 0;
            while head < orbit.len() {
                for &t in g.generators() {
                    let next: Vec<usize> = orbit[head].iter().map(|&y| g.conj(t, y)).collect();
                    if assigned.insert(next.clone()) {
                        orbit.push(next);
                    }
                }
                head += 1;
            }
            orbits.push(orbit);
        }
        let mut classes: Vec<(Homomorphism, Vec<Vec<usize>>)> = orbits
            .into_iter()
            .map(|orbit| {
                let rep = orbit.iter().min().expect("orbit is non-empty").clone();
                (Homomorphism { image_of: rep }, orbit)
            })
            .collect();
        classes.sort_by(|a, b| a.0.cmp(&b.0));
        let mut lookup = HashMap::new();
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(idx, (rep, orbit))| {
                let orbit_size = orbit.len();
                for m in orbit {
                    lookup.insert(m, idx);
                }
                let injective = rep.is_injective();
                let surjective = rep.is_surjective(g);
                let in_k = injective && k_flag(g, &rep, p);
                RepClass {
                    representative: rep,
                    orbit_size,
                    injective,
                    surjective,
                    in_k,
                }
            })
            .collect();
        RepSet {
            prime: p,
            domain_order: q.order(),
            codomain_order: g.order(),
            hom_count,
            classes,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of an arbitrary map, if it lies in one of the kept classes.
    pub fn class_of(&self, image_of: &[usize]) -> Option<usize> {
        self.lookup.get(image_of).copied()
    }

    /// Keeps only the classes satisfying `keep`, renumbering them in order.
    pub fn restrict(&self, keep: impl Fn(&RepClass) -> bool) -> RepSet {
        let mut renum = vec![None; self.classes.len()];
        let mut classes = Vec::new();
        for (i, c) in self.classes.iter().enumerate() {
            if keep(c) {
                renum[i] = Some(classes.len());
                classes.push(c.clone());
            }
        }
        let lookup = self
            .lookup
            .iter()
            .filter_map(|(k, &v)| renum[v].map(|n| (k.clone(), n)))
            .collect();
        RepSet {
            prime: self.prime,
            domain_order: self.domain_order,
            codomain_order: self.codomain_order,
            hom_count: self.hom_count,
            classes,
            lookup,
        }
    }

    pub fn injective_count(&self) -> usize {
        self.classes.iter().filter(|c| c.injective).count()
    }
}

/// `Rep(Q, G)` with injective, surjective and `K` flags at `p`.
pub fn rep_classes(q: &FiniteGroup, g: &FiniteGroup, p: u64) -> Result<RepSet> {
    let homs = enumerate_homs(q, g)?;
    let count = homs.len();
    Ok(RepSet::build(q, g, p, homs, count))
}

/// `Inj(Q, G)`: the injective classes only. Enumerates injective maps directly.
pub fn inj_classes(q: &FiniteGroup, g: &FiniteGroup, p: u64) -> Result<RepSet> {
    let homs = enumerate_injective_homs(q, g)?;
    let count = homs.len();
    Ok(RepSet::build(q, g, p, homs, count))
}

/// `K(Q, G)`: injective classes with `C_G(Im α)/Z(Im α)` a `p'`-group.
pub fn k_classes(q: &FiniteGroup, g: &FiniteGroup, p: u64) -> Result<RepSet> {
    Ok(inj_classes(q, g, p)?.restrict(|c| c.in_k))
}

/// `Surj(Q, R)`.
pub fn surj_classes(q: &FiniteGroup, r: &FiniteGroup) -> Result<RepSet> {
    if r.order() > q.order() || !q.order().is_multiple_of(r.order()) {
        return Ok(RepSet::build(q, r, 2, Vec::new(), 0));
    }
    Ok(rep_classes(q, r, 2)?.restrict(|c| c.surjective))
}

/// Whether `|C_G(Im α)| / |Z(Im α)|` is prime to `p`; false for non-injective maps.
pub fn k_flag(g: &FiniteGroup, alpha: &Homomorphism, p: u64) -> bool {
    if !alpha.is_injective() {
        return false;
    }
    let image = alpha.image(g);
    let c = g.centralizer(&image);
    let z = image.intersect(&c).len();
    !(c.order() / z).is_multiple_of(p as usize)
}

/// Per-quotient term in the set-level factorization of `Rep(Q, G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorTerm {
    pub quotient_order: usize,
    pub surj_classes: usize,
    pub inj_classes: usize,
    pub out_order: usize,
    /// Orbits of `Out(R)` on `Surj(Q,R) × Inj(R,G)`.
    pub orbits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub rep_count: usize,
    pub terms: Vec<FactorTerm>,
    pub total: usize,
}

impl FactorizationReport {
    pub fn holds(&self) -> bool {
        self.rep_count == self.total
    }
}

/// Counts both sides of `|Rep(Q,G)| = Σ_R |(Surj(Q,R) × Inj(R,G)) / Out(R)|`,
/// `R` over isomorphism classes of quotients of `Q`. `Out(R)` acts by
/// post-composition on `Surj` and by pre-composition with the inverse on `Inj`.
pub fn factorization_check(q: &FiniteGroup, g: &FiniteGroup) -> Result<FactorizationReport> {
    let rep = rep_classes(q, g, 2)?;
    let mut quotients: Vec<FiniteGroup> = Vec::new();
    for n in all_subgroups(q)? {
        if !q.is_normal(&n) {
            continue;
        }
        let r = q.quotient(&n)?.group;
        if !quotients.iter().any(|s| is_isomorphic(s, &r).is_some()) {
            quotients.push(r);
        }
    }
    quotients.sort_by_key(FiniteGroup::order);

    let mut terms = Vec::new();
    for r in &quotients {
        let out = automorphism_group(r)?;
        let surj = surj_classes(q, r)?;
        let inj = inj_classes(r, g, 2)?;
        let orbits = pair_orbits(&out, &surj, &inj);
        terms.push(FactorTerm {
            quotient_order: r.order(),
            surj_classes: surj.len(),
            inj_classes: inj.len(),
            out_order: out.order(),
            orbits,
        });
    }
    let total = terms.iter().map(|t| t.orbits).sum();
    Ok(FactorizationReport {
        rep_count: rep.len(),
        terms,
        total,
    })
}

fn pair_orbits(out: &OutGroup, surj: &RepSet, inj: &RepSet) -> usize {
    let (ns, ni) = (surj.len(), inj.len());
    if ns == 0 || ni == 0 {
        return 0;
    }
    // Inner automorphisms act trivially on both sides, so the section images
    // of generators of Out(R) suffice.
    let acting: Vec<usize> = out
        .out_group()
        .generators()
        .iter()
        .map(|&o| out.section(o))
        .collect();
    let moves: Vec<(Vec<usize>, Vec<usize>)> = acting
        .iter()
        .map(|&a| {
            let alpha = out.automorphism(a);
            let alpha_inv = out.automorphism(out.aut_group().inv(a));
            let on_surj = surj
                .classes
                .iter()
                .map(|c| {
                    let m = alpha.after(&c.representative);
                    surj.class_of(&m.image_of)
                        .expect("Surj is closed under Aut(R)")
                })
                .collect();
            let on_inj = inj
                .classes
                .iter()
                .map(|c| {
                    let m = c.representative.after(&alpha_inv);
                    inj.class_of(&m.image_of)
                        .expect("Inj is closed under Aut(R)")
                })
                .collect();
            (on_surj, on_inj)
        })
        .collect();
    let mut seen = vec![false; ns * ni];
    let mut orbits = 0;
    for start in 0..ns * ni {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let (s, i) = (x / ni, x % ni);
            for (ms, mi) in &moves {
                let y = ms[s] * ni + mi[i];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{make_named, GroupKind};

    fn c(n: usize) -> FiniteGroup {
        make_named(GroupKind::Cyclic(n)).unwrap()
    }

    fn s(n: usize) -> FiniteGroup {
        make_named(GroupKind::Symmetric(n)).unwrap()
    }

    fn power_count(g: &FiniteGroup, n: usize) -> usize {
        (0..g.order()).filter(|&x| g.pow(x, n) == 0).count()
    }

    #[test]
    fn cyclic_domain_counts() {
        let s3 = s(3);
        assert_eq!(enumerate_homs(&c(2), &s3).unwrap().len(), 4);
        assert_eq!(enumerate_homs(&c(4), &s3).unwrap().len(), 4);
        for n in [1, 2, 3, 4, 6] {
            assert_eq!(
                enumerate_homs(&c(n), &s3).unwrap().len(),
                power_count(&s3, n)
            );
        }
    }

    #[test]
    fn every_enumerated_map_is_a_homomorphism() {
        let q8 = make_named(GroupKind::Quaternion(8)).unwrap();
        let s4 = s(4);
        let homs = enumerate_homs(&q8, &s4).unwrap();
        assert!(!homs.is_empty());
        for h in &homs {
            assert!(h.is_homomorphism(&q8, &s4));
        }
        let inj = enumerate_injective_homs(&q8, &s4).unwrap();
        assert!(inj.is_empty(), "Q8 does not embed in S4");
    }

    #[test]
    fn rep_c2_s3() {
        let r = rep_classes(&c(2), &s(3), 2).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.injective_count(), 1);
        assert_eq!(
            r.classes.iter().map(|c| c.orbit_size).sum::<usize>(),
            r.hom_count
        );
    }

    #[test]
    fn rep_into_trivial_and_abelian() {
        let r = rep_classes(&s(3), &FiniteGroup::trivial(1), 3).unwrap();
        assert_eq!(r.len(), 1);
        let r = rep_classes(&c(2), &c(4), 2).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.classes.iter().all(|c| c.orbit_size == 1));
    }

    #[test]
    fn surjections() {
        assert_eq!(surj_classes(&c(4), &c(2)).unwrap().len(), 1);
        assert_eq!(surj_classes(&c(4), &c(4)).unwrap().len(), 2);
        assert_eq!(surj_classes(&c(2), &c(4)).unwrap().len(), 0);
    }

    #[test]
    fn k_flag_examples() {
        let s3 = s(3);
        let inj = inj_classes(&c(3), &s3, 3).unwrap();
        assert_eq!(inj.len(), 1);
        assert!(inj.classes[0].in_k);

        let c3 = c(3);
        let c3c3 = c3.direct_product(&c3).unwrap();
        // diagonal embedding
        let a = c3c3.generators()[0];
        let b = c3c3.generators()[1];
        let diag = c3c3.mul(a, b);
        let q = c3.generators()[0];
        let mut image_of = vec![0; 3];
        image_of[q] = diag;
        image_of[c3.mul(q, q)] = c3c3.mul(diag, diag);
        let alpha = Homomorphism { image_of };
        assert!(alpha.is_homomorphism(&c3, &c3c3));
        assert!(!k_flag(&c3c3, &alpha, 3));
    }

    #[test]
    fn generating_set_limit() {
        let e = make_named(GroupKind::ElementaryAbelian { p: 2, rank: 5 }).unwrap();
        let err = enumerate_homs(&e, &c(2)).unwrap_err();
        assert_eq!(err.kind(), "GeneratingSetTooLarge");
    }

    #[test]
    fn factorization_small_cases() {
        let r = factorization_check(&c(4), &s(3)).unwrap();
        assert_eq!(r.rep_count, 2);
        let per: Vec<(usize, usize)> = r
            .terms
            .iter()
            .map(|t| (t.quotient_order, t.orbits))
            .collect();
        assert_eq!(per, vec![(1, 1), (2, 1), (4, 0)]);
        assert!(r.holds());

        let r = factorization_check(&c(2), &c(2)).unwrap();
        assert_eq!(r.rep_count, 2);
        assert!(r.holds());

        let r = factorization_check(&c(2), &s(3)).unwrap();
        assert_eq!(r.rep_count, 2);
        assert!(r.holds());
    }
}
