//! Fully enumerated permutation groups.
//!
//! A [`FiniteGroup`] keeps every element, sorted lexicographically by image list,
//! together with its multiplication table. Elements are referred to by their
//! index in that sorted list; the identity is always index 0.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Size limits for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order that will be enumerated.
    pub order: usize,
    /// Largest group order for which all subgroups are enumerated.
    pub subgroup_order: usize,
    /// Largest generating set used when enumerating homomorphisms.
    pub generators: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 2000,
            subgroup_order: 200,
            generators: 4,
        }
    }
}

impl Caps {
    /// Defaults overridden by the `ORDER_CAP` and `SUBGROUP_CAP` environment variables.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = env_usize("ORDER_CAP") {
            caps.order = v;
        }
        if let Some(v) = env_usize("SUBGROUP_CAP") {
            caps.subgroup_order = v;
        }
        caps
    }
}

fn env_usize(key: &str) -> Option<usize> {
    std::env::var(key).ok()?.trim().parse().ok()
}

/// A finite permutation group with all of its elements listed.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    caps: Caps,
}

/// A subgroup of some [`FiniteGroup`], stored as a sorted set of element indices
/// of the parent. Equality, hashing and ordering only look at the member set.
#[derive(Clone)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: FixedBitSet,
    generators: Vec<usize>,
}

/// Conjugacy classes of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassTable {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
}

impl ConjClassTable {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len())
            .filter(|&x| self.class_of[x] == class)
            .collect()
    }
}

/// A quotient group together with the projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Element index in the parent to element index in `group`.
    pub projection: Vec<usize>,
}

impl FiniteGroup {
    /// The group generated by `gens`, with the default caps.
    pub fn close_generators(gens: &[Permutation], degree: usize) -> Result<Self> {
        Self::close_generators_with(gens, degree, Caps::default())
    }

    pub fn close_generators_with(gens: &[Permutation], degree: usize, caps: Caps) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
            Permutation::new(g.images().to_vec())?;
        }
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        let id = Permutation::identity(degree);
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id, ());
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.compose(g);
                if !seen.contains_key(&y) {
                    if seen.len() >= caps.order {
                        return Err(Error::cap("group order", seen.len() + 1, caps.order));
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Permutation> = seen.into_keys().collect();
        let mut group = Self::from_element_list(degree, elements, caps)?;
        let mut gen_idx: Vec<usize> = gens.iter().map(|g| group.index[g] as usize).collect();
        gen_idx.retain(|&g| g != 0);
        gen_idx.dedup();
        group.generators = gen_idx;
        Ok(group)
    }

    /// Builds a group from a complete element list that is already closed under
    /// composition. Generators are chosen greedily.
    pub(crate) fn from_element_list(
        degree: usize,
        mut elements: Vec<Permutation>,
        caps: Caps,
    ) -> Result<Self> {
        if elements.len() > caps.order {
            return Err(Error::cap("group order", elements.len(), caps.order));
        }
        elements.sort_unstable();
        elements.dedup();
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        if elements.first().is_none_or(|e| !e.is_identity()) {
            return Err(Error::InvalidPermutation(
                "element list does not contain the identity".into(),
            ));
        }

        // Generators for filling the table by breadth-first search.
        let mut span = vec![false; n];
        span[0] = true;
        let mut spanned = 1;
        let mut gens: Vec<usize> = Vec::new();
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut parent: Vec<(u32, u32)> = vec![(0, 0); n];
        let mut bfs_order: Vec<usize> = vec![0];
        for cand in 1..n {
            if spanned == n {
                break;
            }
            if span[cand] {
                continue;
            }
            let s = &elements[cand];
            let col: Vec<u32> = elements
                .iter()
                .map(|x| {
                    index.get(&x.compose(s)).copied().ok_or_else(|| {
                        Error::InvalidPermutation("element list is not closed".into())
                    })
                })
                .collect::<Result<_>>()?;
            gens.push(cand);
            right.push(col);
            // Re-run the search with the enlarged generating set.
            span.iter_mut().for_each(|b| *b = false);
            span[0] = true;
            bfs_order.clear();
            bfs_order.push(0);
            let mut head = 0;
            while head < bfs_order.len() {
                let x = bfs_order[head];
                head += 1;
                for (k, col) in right.iter().enumerate() {
                    let y = col[x] as usize;
                    if !span[y] {
                        span[y] = true;
                        parent[y] = (x as u32, k as u32);
                        bfs_order.push(y);
                    }
                }
            }
            spanned = bfs_order.len();
        }
        if spanned != n {
            return Err(Error::InvalidPermutation(
                "element list is not closed".into(),
            ));
        }

        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u32;
            for &b in &bfs_order[1..] {
                let (pb, k) = parent[b];
                row[b] = right[k as usize][row[pb as usize] as usize];
            }
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverses[a] = b as u32;
                    break;
                }
            }
        }
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        Ok(FiniteGroup {
            degree,
            generators: gens,
            elements,
            index,
            table,
            inverses,
            orders,
            caps,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::close_generators(&[], degree).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Replaces the caps carried by this group (and inherited by derived groups).
    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Generator indices; never contains the identity.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .map(|&g| self.elements[g].clone())
            .collect()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Multiset of element orders, sorted.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// A small generating set chosen greedily: each step adds the element that
    /// enlarges the generated subgroup the most (first such element on ties).
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.trivial_subgroup();
        while current.order() < self.order() {
            let mut best: Option<(usize, Subgroup)> = None;
            for x in 0..self.order() {
                if current.contains(x) {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(x);
                let s = self.subgroup(&trial);
                if best.as_ref().is_none_or(|(_, b)| s.order() > b.order()) {
                    let full = s.order() == self.order();
                    best = Some((x, s));
                    if full {
                        break;
                    }
                }
            }
            let (x, s) = best.expect("proper subgroup has an element outside it");
            gens.push(x);
            current = s;
        }
        gens
    }

    /// Left regular representation, of degree `|G|`.
    pub fn regular_representation(&self) -> Result<FiniteGroup> {
        let n = self.order();
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|&g| {
                Permutation::from_images_unchecked((0..n).map(|x| self.mul(g, x) as u32).collect())
            })
            .collect();
        FiniteGroup::close_generators_with(&gens, n, self.caps)
    }

    // ---- subgroups -------------------------------------------------------

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order(), vec![0], vec![])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(
            self.order(),
            (0..self.order()).collect(),
            self.generators.clone(),
        )
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut mask = FixedBitSet::with_capacity(n);
        mask.insert(0);
        let mut members = vec![0usize];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !mask.contains(y) {
                    mask.insert(y);
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            generators: gens,
        }
    }

    /// Subgroup from a member set that is known to be closed. Generators are
    /// picked greedily from the members.
    pub fn subgroup_from_members(&self, mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.trivial_subgroup();
        for &m in &members {
            if !span.contains(m) {
                gens.push(m);
                span = self.subgroup(&gens);
            }
        }
        debug_assert_eq!(span.members, members, "member set is not a subgroup");
        span
    }

    pub fn join_element(&self, s: &Subgroup, g: usize) -> Subgroup {
        if s.contains(g) {
            return s.clone();
        }
        let mut gens = s.generators.clone();
        gens.push(g);
        self.subgroup(&gens)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.generators.clone();
        gens.extend(b.generators.iter().copied().filter(|&g| !a.contains(g)));
        self.subgroup(&gens)
    }

    /// `g S g⁻¹`.
    pub fn conjugate_subgroup(&self, g: usize, s: &Subgroup) -> Subgroup {
        let members: Vec<usize> = s.members.iter().map(|&x| self.conj(g, x)).collect();
        let gens: Vec<usize> = s.generators.iter().map(|&x| self.conj(g, x)).collect();
        let mut members = members;
        members.sort_unstable();
        Subgroup::from_sorted(self.order(), members, gens)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&g| s.generators.iter().all(|&x| s.contains(self.conj(g, x))))
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let members = (0..self.order())
            .filter(|&g| {
                s.generators
                    .iter()
                    .all(|&x| self.mul(g, x) == self.mul(x, g))
            })
            .collect();
        self.subgroup_from_members(members)
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let members = (0..self.order())
            .filter(|&g| s.generators.iter().all(|&x| s.contains(self.conj(g, x))))
            .collect();
        self.subgroup_from_members(members)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// The subgroup as a group in its own right. Because both element lists are
    /// sorted the same way, element `i` of the result is `s.members()[i]`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> FiniteGroup {
        let elements = s
            .members
            .iter()
            .map(|&m| self.elements[m].clone())
            .collect();
        FiniteGroup::from_element_list(self.degree, elements, self.caps)
            .expect("subgroup of an enumerated group")
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, gens: &[usize]) -> Subgroup {
        let mut s = self.subgroup(gens);
        'grow: loop {
            for &t in &self.generators {
                for &x in &s.generators {
                    let y = self.conj(t, x);
                    if !s.contains(y) {
                        s = self.join_element(&s, y);
                        continue 'grow;
                    }
                }
            }
            return s;
        }
    }

    // ---- classes, quotients, Sylow -----------------------------------------

    /// Conjugacy classes, ordered by (element order, class size, representative).
    /// Each representative is the least element index in its class.
    pub fn conjugacy_classes(&self) -> ConjClassTable {
        let n = self.order();
        let mut raw_class = vec![usize::MAX; n];
        let mut raw: Vec<(usize, usize)> = Vec::new(); // (rep, size)
        for x in 0..n {
            if raw_class[x] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut size = 0;
            for g in 0..n {
                let y = self.conj(g, x);
                if raw_class[y] == usize::MAX {
                    raw_class[y] = id;
                    size += 1;
                }
            }
            raw.push((x, size));
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&c| (self.element_order(raw[c].0), raw[c].1, raw[c].0));
        let mut renum = vec![0; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            renum[old] = new;
        }
        ConjClassTable {
            class_of: raw_class.iter().map(|&c| renum[c]).collect(),
            representatives: order.iter().map(|&c| raw[c].0).collect(),
            class_sizes: order.iter().map(|&c| raw[c].1).collect(),
        }
    }

    /// `G/N`, realized as the action of `G` on left cosets of `N`.
    pub fn quotient(&self, normal: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &m in &normal.members {
                coset_of[self.mul(g, m)] = reps.len();
            }
            reps.push(g);
        }
        let k = reps.len();
        let act = |g: usize| -> Permutation {
            Permutation::from_images_unchecked(
                reps.iter()
                    .map(|&r| coset_of[self.mul(g, r)] as u32)
                    .collect(),
            )
        };
        let gens: Vec<Permutation> = self.generators.iter().map(|&g| act(g)).collect();
        let group = FiniteGroup::close_generators_with(&gens, k, self.caps)?;
        // Elements in the same coset act identically; compute once per coset.
        let per_coset: Vec<usize> = reps
            .iter()
            .map(|&r| {
                group
                    .index_of(&act(r))
                    .expect("coset action lies in the quotient")
            })
            .collect();
        let projection = (0..n).map(|g| per_coset[coset_of[g]]).collect();
        Ok(Quotient { group, projection })
    }

    /// A Sylow `p`-subgroup, grown one step of index `p` at a time inside
    /// normalizers. Deterministic given the element order.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = p_part(self.order(), p);
        let p = p as usize;
        let mut s = self.trivial_subgroup();
        while s.order() < target {
            let nz = self.normalizer(&s);
            let g = nz
                .members
                .iter()
                .copied()
                .find(|&g| !s.contains(g) && s.contains(self.pow(g, p)))
                .expect("a non-Sylow p-subgroup has p dividing its normalizer index");
            s = self.join_element(&s, g);
        }
        s
    }

    /// The largest normal subgroup of order prime to `p`.
    pub fn o_p_prime(&self, p: u64) -> Subgroup {
        let p = p as usize;
        let mut acc = self.trivial_subgroup();
        for g in 0..self.order() {
            if acc.contains(g) || self.element_order(g).is_multiple_of(p) {
                continue;
            }
            let mut gens = acc.generators.clone();
            gens.push(g);
            let m = self.normal_closure(&gens);
            if !m.order().is_multiple_of(p) {
                acc = m;
            }
        }
        acc
    }

    /// `G / O_{p'}(G)`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<FiniteGroup> {
        let o = self.o_p_prime(p);
        if o.order() == 1 {
            return Ok(self.clone());
        }
        Ok(self.quotient(&o)?.group)
    }

    pub fn is_reduced(&self, p: u64) -> bool {
        self.o_p_prime(p).order() == 1
    }

    /// Direct product on disjoint point sets.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let size = self.order().saturating_mul(other.order());
        let cap = self.caps.order.min(other.caps.order);
        if size > cap {
            return Err(Error::cap("direct product order", size, cap));
        }
        let degree = self.degree + other.degree;
        let mut gens: Vec<Permutation> = self
            .generator_perms()
            .iter()
            .map(|g| g.embed(degree, 0))
            .collect();
        gens.extend(
            other
                .generator_perms()
                .iter()
                .map(|g| g.embed(degree, self.degree)),
        );
        FiniteGroup::close_generators_with(&gens, degree, self.caps)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generator_perms())
            .finish()
    }
}

impl Subgroup {
    fn from_sorted(parent_order: usize, members: Vec<usize>, generators: Vec<usize>) -> Self {
        let mut mask = FixedBitSet::with_capacity(parent_order);
        for &m in &members {
            mask.insert(m);
        }
        Subgroup {
            members,
            mask,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn intersection_count(&self, elems: &[usize]) -> usize {
        elems.iter().filter(|&&x| self.contains(x)).count()
    }

    pub fn intersect(&self, other: &Subgroup) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.members)
    }
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut acc = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        acc *= p;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
