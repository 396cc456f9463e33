//! Automorphism and outer automorphism groups, their actions on `Rep`/`Inj`
//! sets, Weyl groups, and mark vectors.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ConjClassTable, FiniteGroup, Subgroup};
use crate::hom::{HomSearch, Homomorphism, RepSet};
use crate::lattice::cyclic_mod_p_poset;
use crate::perm::Permutation;

/// `Aut(Q)`, `Inn(Q)` and `Out(Q) = Aut(Q)/Inn(Q)`.
///
/// Automorphisms are permutations of the element indices of `Q`.
#[derive(Clone, Debug)]
pub struct OutGroup {
    aut: FiniteGroup,
    inn: Subgroup,
    out: FiniteGroup,
    projection: Vec<usize>,
    section: Vec<usize>,
    out_classes: ConjClassTable,
}

impl OutGroup {
    pub fn aut_group(&self) -> &FiniteGroup {
        &self.aut
    }

    pub fn inn(&self) -> &Subgroup {
        &self.inn
    }

    pub fn out_group(&self) -> &FiniteGroup {
        &self.out
    }

    pub fn out_classes(&self) -> &ConjClassTable {
        &self.out_classes
    }

    /// `|Out(Q)|`.
    pub fn order(&self) -> usize {
        self.out.order()
    }

    /// Out element of an automorphism index.
    pub fn project(&self, aut_index: usize) -> usize {
        self.projection[aut_index]
    }

    /// The chosen automorphism (least index in its coset) for an out element.
    pub fn section(&self, out_index: usize) -> usize {
        self.section[out_index]
    }

    /// Automorphism as an element map of `Q`.
    pub fn automorphism(&self, aut_index: usize) -> Homomorphism {
        Homomorphism {
            image_of: self
                .aut
                .element(aut_index)
                .images()
                .iter()
                .map(|&x| x as usize)
                .collect(),
        }
    }

    /// Index of an element map of `Q` in `Aut(Q)`.
    pub fn aut_index(&self, map: &[usize]) -> Option<usize> {
        let p = Permutation::new(map.iter().map(|&x| x as u32).collect()).ok()?;
        self.aut.index_of(&p)
    }

    /// Section taking the largest automorphism index in each coset; used to
    /// check that results do not depend on the section.
    fn alternate_section(&self) -> Vec<usize> {
        let mut alt = vec![0; self.out.order()];
        for a in 0..self.aut.order() {
            alt[self.projection[a]] = a;
        }
        alt
    }
}

/// `Aut(Q)` by bijective self-maps found by the homomorphism search.
pub fn automorphism_group(q: &FiniteGroup) -> Result<OutGroup> {
    let n = q.order();
    let search = HomSearch::new(q, q, None)?;
    let mut auts: Vec<Permutation> = Vec::new();
    let cap = q.caps().order;
    let mut over = false;
    search.run(
        true,
        |_, _| true,
        |img| {
            if auts.len() >= cap {
                over = true;
                return ControlFlow::Break(());
            }
            auts.push(Permutation::from_images_unchecked(
                img.iter().map(|&x| x as u32).collect(),
            ));
            ControlFlow::Continue(())
        },
    );
    if over {
        return Err(Error::cap("automorphism group order", cap + 1, cap));
    }
    let aut = FiniteGroup::from_element_list(n.max(1), auts, q.caps())?;
    let inner: Vec<usize> = (0..n)
        .map(|g| {
            let p =
                Permutation::from_images_unchecked((0..n).map(|x| q.conj(g, x) as u32).collect());
            aut.index_of(&p).expect("conjugation is an automorphism")
        })
        .collect();
    let inn = aut.subgroup_from_members(inner);
    let quotient = aut.quotient(&inn)?;
    let out = quotient.group;
    let mut section = vec![usize::MAX; out.order()];
    for a in 0..aut.order() {
        let o = quotient.projection[a];
        if section[o] == usize::MAX {
            section[o] = a;
        }
    }
    let out_classes = out.conjugacy_classes();
    Ok(OutGroup {
        aut,
        inn,
        out,
        projection: quotient.projection,
        section,
        out_classes,
    })
}

/// A finite left action given by one point permutation per element of the
/// acting group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAction {
    pub points: usize,
    /// `table[g][x]` is the image of point `x` under group element `g`.
    pub table: Vec<Vec<usize>>,
}

impl PermAction {
    /// Checks identity and compatibility with the group multiplication.
    pub fn is_action_of(&self, group: &FiniteGroup) -> bool {
        if self.table.len() != group.order() {
            return false;
        }
        let id_ok = (0..self.points).all(|x| self.table[0][x] == x);
        id_ok
            && (0..group.order()).all(|a| {
                (0..group.order()).all(|b| {
                    let ab = group.mul(a, b);
                    (0..self.points).all(|x| self.table[ab][x] == self.table[a][self.table[b][x]])
                })
            })
    }

    /// Left multiplication on cosets `gS` of a subgroup.
    pub fn on_cosets(group: &FiniteGroup, s: &Subgroup) -> PermAction {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &m in s.members() {
                coset_of[group.mul(g, m)] = reps.len();
            }
            reps.push(g);
        }
        let table = (0..n)
            .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect())
            .collect();
        PermAction {
            points: reps.len(),
            table,
        }
    }

    pub fn fixed_points(&self, elements: &[usize]) -> usize {
        (0..self.points)
            .filter(|&x| elements.iter().all(|&g| self.table[g][x] == x))
            .count()
    }
}

/// `Out(Q)` acting on the classes of a `RepSet` by `[φ] ↦ [φ ∘ α⁻¹]`.
#[derive(Clone, Debug)]
pub struct OutAction {
    pub action: PermAction,
}

pub fn out_action(reps: &RepSet, out: &OutGroup) -> Result<OutAction> {
    let table = action_table(reps, out, &out.section)?;
    if cfg!(debug_assertions) {
        let alt = action_table(reps, out, &out.alternate_section())?;
        if alt != table {
            return Err(Error::ActionInconsistent(
                "action depends on the chosen section".into(),
            ));
        }
    }
    // inner automorphisms must fix every class
    let aut = out.aut_group();
    for &i in out.inn().generators() {
        let inv = aut.inv(i);
        let alpha_inv = out.automorphism(inv);
        for (k, c) in reps.classes.iter().enumerate() {
            let m = c.representative.after(&alpha_inv);
            if reps.class_of(&m.image_of) != Some(k) {
                return Err(Error::ActionInconsistent(format!(
                    "inner automorphism moves class {k}"
                )));
            }
        }
    }
    Ok(OutAction {
        action: PermAction {
            points: reps.len(),
            table,
        },
    })
}

fn action_table(reps: &RepSet, out: &OutGroup, section: &[usize]) -> Result<Vec<Vec<usize>>> {
    let aut = out.aut_group();
    section
        .iter()
        .map(|&a| {
            let alpha_inv = out.automorphism(aut.inv(a));
            reps.classes
                .iter()
                .map(|c| {
                    let m = c.representative.after(&alpha_inv);
                    reps.class_of(&m.image_of).ok_or_else(|| {
                        Error::ActionInconsistent("class set not closed under Out(Q)".into())
                    })
                })
                .collect()
        })
        .collect()
}

/// The Weyl group `N_G(H) / H·C_G(H)` as a subgroup of `Out(H)`.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    /// `H` as a group in its own right; element `i` is `h.members()[i]`.
    pub group: FiniteGroup,
    pub out: OutGroup,
    pub subgroup: Subgroup,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.subgroup.order()
    }
}

pub fn weyl_group(g: &FiniteGroup, h: &Subgroup) -> Result<WeylGroup> {
    let hg = g.subgroup_as_group(h);
    let out = automorphism_group(&hg)?;
    let nz = g.normalizer(h);
    let pos: BTreeMap<usize, usize> = h
        .members()
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let images: Vec<usize> = nz
        .members()
        .iter()
        .map(|&t| {
            let map: Vec<usize> = h.members().iter().map(|&x| pos[&g.conj(t, x)]).collect();
            out.project(
                out.aut_index(&map)
                    .expect("conjugation by a normalizing element"),
            )
        })
        .collect();
    let subgroup = out.out_group().subgroup_from_members(images);
    Ok(WeylGroup {
        group: hg,
        out,
        subgroup,
    })
}

/// Multiplicities of `W̄ = Σ_{w ∈ N_G(Im α)/Im α} w̄` in the group algebra of `Out(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WBar {
    /// Out element index to multiplicity; only nonzero entries.
    pub multiplicities: BTreeMap<usize, usize>,
}

impl WBar {
    pub fn is_nonzero_mod(&self, p: u64) -> bool {
        self.multiplicities.values().any(|&m| m % p as usize != 0)
    }
}

/// Literal summation of `W̄` for an injective `α: Q → G`.
pub fn w_bar(q: &FiniteGroup, g: &FiniteGroup, out: &OutGroup, alpha: &Homomorphism) -> WBar {
    let image = alpha.image(g);
    let mut preimage = vec![usize::MAX; g.order()];
    for (x, &y) in alpha.image_of.iter().enumerate() {
        preimage[y] = x;
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &t in g.normalizer(&image).members() {
        let map: Vec<usize> = (0..q.order())
            .map(|x| preimage[g.conj(t, alpha.image_of[x])])
            .collect();
        let a = out
            .aut_index(&map)
            .expect("normalizer induces automorphisms");
        *counts.entry(out.project(a)).or_default() += 1;
    }
    // each coset of Im α contributes |Im α| elements with the same out image
    let multiplicities = counts
        .into_iter()
        .map(|(o, c)| (o, c / image.order()))
        .collect();
    WBar { multiplicities }
}

/// `W̄ ≠ 0 mod p`, via the common fiber size `|W| / |image of W in Out(Q)|`.
/// With `literal`, also sums `W̄` element by element and checks that every
/// fiber has that size.
pub fn w_bar_nonzero(
    q: &FiniteGroup,
    g: &FiniteGroup,
    out: &OutGroup,
    alpha: &Homomorphism,
    p: u64,
    literal: bool,
) -> Result<bool> {
    if !alpha.is_injective() {
        return Ok(false);
    }
    let image = alpha.image(g);
    let w_order = g.normalizer(&image).order() / image.order();
    let summed = w_bar(q, g, out, alpha);
    let fiber = w_order / summed.multiplicities.len();
    if literal && summed.multiplicities.values().any(|&m| m != fiber) {
        return Err(Error::ActionInconsistent(format!(
            "W̄ fibers are not uniform: {:?}",
            summed.multiplicities
        )));
    }
    Ok(!fiber.is_multiple_of(p as usize))
}

/// Labelled subgroup classes of an acting group at which marks are taken.
#[derive(Clone, Debug)]
pub struct Family {
    pub labels: Vec<String>,
    pub subgroups: Vec<Subgroup>,
}

impl Family {
    /// Conjugacy classes of cyclic mod p subgroups, labelled `"<order>#<k>"`.
    pub fn cyclic_mod_p(group: &FiniteGroup, p: u64) -> Result<Family> {
        let poset = cyclic_mod_p_poset(group, p)?;
        let mut labels = Vec::with_capacity(poset.len());
        let mut per_order: BTreeMap<usize, usize> = BTreeMap::new();
        for s in &poset.class_reps {
            let k = per_order.entry(s.order()).or_default();
            *k += 1;
            labels.push(format!("{}#{}", s.order(), k));
        }
        Ok(Family {
            labels,
            subgroups: poset.class_reps,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Fixed-point counts of an action at each subgroup of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkVector {
    pub family: Vec<String>,
    pub counts: Vec<usize>,
}

impl MarkVector {
    pub fn get(&self, label: &str) -> Result<usize> {
        self.family
            .iter()
            .position(|l| l == label)
            .map(|i| self.counts[i])
            .ok_or_else(|| Error::UnknownFamilyLabel(label.to_string()))
    }
}

pub fn marks(action: &PermAction, family: &Family) -> MarkVector {
    MarkVector {
        family: family.labels.clone(),
        counts: family
            .subgroups
            .iter()
            .map(|s| action.fixed_points(s.generators()))
            .collect(),
    }
}
