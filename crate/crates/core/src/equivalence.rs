//! Decision procedures for p-local stable equivalence of classifying spaces.
//!
//! * [`stably_equivalent`]: for every p-subgroup type `Q` of the Sylow subgroup,
//!   the permutation modules `F_p Inj(Q, G_1)` and `F_p Inj(Q, G_2)` over
//!   `Out(Q)` are compared through their marks at cyclic mod p subgroups of
//!   `Out(Q)`.
//! * [`normal_sylow_equivalent`]: Sylow subgroups isomorphic and the Weyl
//!   groups pointwise conjugate in `Out(P)`.
//! * [`reduced_cyclic_equivalent`]: for reduced cyclic mod p groups, plain
//!   isomorphism.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::desc::identify;
use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, Subgroup};
use crate::hom::{inj_classes, rep_classes, Homomorphism};
use crate::iso::is_isomorphic;
use crate::lattice::{is_cyclic_mod_p, p_subgroup_iso_classes};
use crate::out::{automorphism_group, marks, out_action, Family, MarkVector, OutAction, OutGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    SylowMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    General,
    NormalSylow,
    ReducedCyclic,
}

/// Marks of both sides for one p-group `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QReport {
    pub q: String,
    pub q_order: usize,
    pub out_order: usize,
    pub family: Vec<String>,
    pub marks1: Vec<usize>,
    pub marks2: Vec<usize>,
    pub matched: bool,
    /// Same comparison on all of `Rep(Q, G_i)`, when cross-checking.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep_matched: Option<bool>,
    /// Same comparison on `K(Q, G_i)`, when cross-checking.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_matched: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub q: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub result: Verdict,
    pub prime: u64,
    pub method: Method,
    pub per_q: Vec<QReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointwise: Option<PointwiseReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl EquivalenceVerdict {
    fn new(result: Verdict, prime: u64, method: Method) -> Self {
        EquivalenceVerdict {
            result,
            prime,
            method,
            per_q: Vec::new(),
            pointwise: None,
            witness: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EquivalenceOptions {
    /// Also compare marks on `Rep(Q, G_i)` and `K(Q, G_i)`.
    pub cross_check: bool,
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadPrime(p))
    }
}

// ---- pointwise conjugacy -----------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointwiseRow {
    /// Conjugacy class representative (element index of the ambient group).
    pub representative: usize,
    pub class_size: usize,
    pub count1: usize,
    pub count2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointwiseReport {
    pub equal: bool,
    pub rows: Vec<PointwiseRow>,
}

/// `|H ∩ (g)| = |K ∩ (g)|` for every conjugacy class `(g)` of `G`.
pub fn pointwise_conjugate(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> PointwiseReport {
    let classes = g.conjugacy_classes();
    let mut c1 = vec![0; classes.len()];
    let mut c2 = vec![0; classes.len()];
    for &x in h.members() {
        c1[classes.class_of[x]] += 1;
    }
    for &x in k.members() {
        c2[classes.class_of[x]] += 1;
    }
    let rows: Vec<PointwiseRow> = (0..classes.len())
        .map(|c| PointwiseRow {
            representative: classes.representatives[c],
            class_size: classes.class_sizes[c],
            count1: c1[c],
            count2: c2[c],
        })
        .collect();
    PointwiseReport {
        equal: c1 == c2,
        rows,
    }
}

/// Multiset of cycle types of the elements.
pub fn cycle_type_profile(g: &FiniteGroup) -> BTreeMap<Vec<usize>, usize> {
    let mut m = BTreeMap::new();
    for p in g.elements() {
        *m.entry(p.cycle_type()).or_insert(0) += 1;
    }
    m
}

/// Pointwise conjugacy in the full symmetric group of the common degree,
/// decided by cycle types; the symmetric group itself is never built.
pub fn pointwise_conjugate_symmetric(h: &FiniteGroup, k: &FiniteGroup) -> bool {
    h.degree() == k.degree() && cycle_type_profile(h) == cycle_type_profile(k)
}

// ---- permutation module comparison ------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarksComparison {
    pub equal: bool,
    pub marks1: MarkVector,
    pub marks2: MarkVector,
    pub differing: Vec<String>,
}

/// Compares two `Out(Q)`-sets by their marks at the cyclic mod p subgroups
/// of `Out(Q)`.
pub fn perm_marks_equal(
    x: &OutAction,
    y: &OutAction,
    out: &OutGroup,
    p: u64,
) -> Result<MarksComparison> {
    let family = Family::cyclic_mod_p(out.out_group(), p)?;
    compare_marks(x, y, out, &family)
}

fn compare_marks(
    x: &OutAction,
    y: &OutAction,
    out: &OutGroup,
    family: &Family,
) -> Result<MarksComparison> {
    for a in [x, y] {
        if a.action.table.len() != out.order() {
            return Err(Error::OutMismatch(format!(
                "action of a group of order {} compared over Out of order {}",
                a.action.table.len(),
                out.order()
            )));
        }
    }
    let m1 = marks(&x.action, family);
    let m2 = marks(&y.action, family);
    let differing = family
        .labels
        .iter()
        .zip(m1.counts.iter().zip(&m2.counts))
        .filter(|(_, (a, b))| a != b)
        .map(|(l, _)| l.clone())
        .collect::<Vec<_>>();
    Ok(MarksComparison {
        equal: differing.is_empty(),
        marks1: m1,
        marks2: m2,
        differing,
    })
}

// ---- deciders ----------------------------------------------------------------

pub fn stably_equivalent(g1: &FiniteGroup, g2: &FiniteGroup, p: u64) -> Result<EquivalenceVerdict> {
    stably_equivalent_with(g1, g2, p, EquivalenceOptions::default())
}

/// The general criterion: reduce both groups modulo `O_{p'}`, compare Sylow
/// subgroups, then compare `Inj(Q, -)` as `Out(Q)`-sets for every isomorphism
/// type `Q` of subgroup of the Sylow subgroup. The same `Q` object is used on
/// both sides, so both actions are by the same `Out(Q)`.
pub fn stably_equivalent_with(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    p: u64,
    opts: EquivalenceOptions,
) -> Result<EquivalenceVerdict> {
    check_prime(p)?;
    let r1 = g1.reduce_mod_p(p).map_err(|e| e.in_stage("reducing G1"))?;
    let r2 = g2.reduce_mod_p(p).map_err(|e| e.in_stage("reducing G2"))?;
    let p1 = r1.subgroup_as_group(&r1.sylow(p));
    let p2 = r2.subgroup_as_group(&r2.sylow(p));
    if is_isomorphic(&p1, &p2).is_none() {
        return Ok(EquivalenceVerdict::new(
            Verdict::SylowMismatch,
            p,
            Method::General,
        ));
    }
    let qs = p_subgroup_iso_classes(&r1, p).map_err(|e| e.in_stage("p-subgroup types"))?;
    let mut verdict = EquivalenceVerdict::new(Verdict::Equivalent, p, Method::General);
    for q in &qs {
        let name = identify(q);
        let report = compare_at(q, &name, &r1, &r2, p, opts)
            .map_err(|e| e.in_stage(format!("Q = {name}")))?;
        if !report.matched && verdict.witness.is_none() {
            let label = report
                .family
                .iter()
                .zip(report.marks1.iter().zip(&report.marks2))
                .find(|(_, (a, b))| a != b)
                .map(|(l, _)| l.clone())
                .expect("unmatched marks differ somewhere");
            verdict.result = Verdict::NotEquivalent;
            verdict.witness = Some(Witness {
                q: name.clone(),
                label,
            });
        }
        verdict.per_q.push(report);
    }
    Ok(verdict)
}

fn compare_at(
    q: &FiniteGroup,
    name: &str,
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    p: u64,
    opts: EquivalenceOptions,
) -> Result<QReport> {
    let out = automorphism_group(q)?;
    let family = Family::cyclic_mod_p(out.out_group(), p)?;
    let inj1 = inj_classes(q, g1, p)?;
    let inj2 = inj_classes(q, g2, p)?;
    let cmp = compare_marks(
        &out_action(&inj1, &out)?,
        &out_action(&inj2, &out)?,
        &out,
        &family,
    )?;
    let (mut rep_matched, mut k_matched) = (None, None);
    if opts.cross_check {
        let rep1 = rep_classes(q, g1, p)?;
        let rep2 = rep_classes(q, g2, p)?;
        let rep_cmp = compare_marks(
            &out_action(&rep1, &out)?,
            &out_action(&rep2, &out)?,
            &out,
            &family,
        )?;
        rep_matched = Some(rep_cmp.equal);
        let k1 = inj1.restrict(|c| c.in_k);
        let k2 = inj2.restrict(|c| c.in_k);
        let k_cmp = compare_marks(
            &out_action(&k1, &out)?,
            &out_action(&k2, &out)?,
            &out,
            &family,
        )?;
        k_matched = Some(k_cmp.equal);
    }
    Ok(QReport {
        q: name.to_string(),
        q_order: q.order(),
        out_order: out.order(),
        family: family.labels,
        marks1: cmp.marks1.counts,
        marks2: cmp.marks2.counts,
        matched: cmp.equal,
        rep_matched,
        k_matched,
    })
}

fn normal_sylow(g: &FiniteGroup, p: u64, which: &str) -> Result<Subgroup> {
    let s = g.sylow(p);
    if g.is_normal(&s) {
        Ok(s)
    } else {
        Err(Error::NotNormalSylow {
            p,
            which: which.to_string(),
        })
    }
}

/// For groups with normal Sylow subgroups: `P_1 ≅ P_2` and `W_{G_1}(P)` is
/// pointwise conjugate to `W_{G_2}(P)` in `Out(P)`, the latter transported
/// along one isomorphism `P_1 → P_2`.
pub fn normal_sylow_equivalent(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    p: u64,
) -> Result<EquivalenceVerdict> {
    check_prime(p)?;
    let s1 = normal_sylow(g1, p, "G1")?;
    let s2 = normal_sylow(g2, p, "G2")?;
    let p1 = g1.subgroup_as_group(&s1);
    let p2 = g2.subgroup_as_group(&s2);
    let Some(phi) = is_isomorphic(&p1, &p2) else {
        return Ok(EquivalenceVerdict::new(
            Verdict::SylowMismatch,
            p,
            Method::NormalSylow,
        ));
    };
    let out = automorphism_group(&p1).map_err(|e| e.in_stage("Out(P)"))?;
    let w1 = weyl_image(g1, &s1, &identity_map(p1.order()), &out);
    let w2 = weyl_image(g2, &s2, &phi, &out);
    let classes = out.out_classes();
    let mut c1 = vec![0; classes.len()];
    let mut c2 = vec![0; classes.len()];
    for &x in w1.members() {
        c1[classes.class_of[x]] += 1;
    }
    for &x in w2.members() {
        c2[classes.class_of[x]] += 1;
    }
    let rows: Vec<PointwiseRow> = (0..classes.len())
        .map(|c| PointwiseRow {
            representative: classes.representatives[c],
            class_size: classes.class_sizes[c],
            count1: c1[c],
            count2: c2[c],
        })
        .collect();
    let equal = c1 == c2;
    let mut verdict = EquivalenceVerdict::new(
        if equal {
            Verdict::Equivalent
        } else {
            Verdict::NotEquivalent
        },
        p,
        Method::NormalSylow,
    );
    if !equal {
        let row = rows
            .iter()
            .find(|r| r.count1 != r.count2)
            .expect("counts differ");
        verdict.witness = Some(Witness {
            q: identify(&p1),
            label: format!(
                "Out(P) class of element {} (order {})",
                row.representative,
                out.out_group().element_order(row.representative)
            ),
        });
    }
    verdict.pointwise = Some(PointwiseReport { equal, rows });
    Ok(verdict)
}

fn identity_map(n: usize) -> Homomorphism {
    Homomorphism {
        image_of: (0..n).collect(),
    }
}

/// Image of `N_G(P)` in `Out(P_ref)`, where `phi: P_ref → P` identifies the
/// reference group with `P` (element indices of `P` as a group).
fn weyl_image(g: &FiniteGroup, s: &Subgroup, phi: &Homomorphism, out: &OutGroup) -> Subgroup {
    let members = s.members();
    let pos: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut phi_inv = vec![0; phi.image_of.len()];
    for (x, &y) in phi.image_of.iter().enumerate() {
        phi_inv[y] = x;
    }
    let images: Vec<usize> = g
        .normalizer(s)
        .members()
        .iter()
        .map(|&t| {
            let map: Vec<usize> = (0..members.len())
                .map(|x| phi_inv[pos[&g.conj(t, members[phi.image_of[x]])]])
                .collect();
            out.project(
                out.aut_index(&map)
                    .expect("conjugation induces an automorphism"),
            )
        })
        .collect();
    out.out_group().subgroup_from_members(images)
}

/// For reduced cyclic mod p groups the stable type determines the group.
/// Sylow subgroups are compared first, as in the other deciders.
pub fn reduced_cyclic_equivalent(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    p: u64,
) -> Result<EquivalenceVerdict> {
    check_prime(p)?;
    for (g, which) in [(g1, "G1"), (g2, "G2")] {
        if !is_cyclic_mod_p(g, p) || !g.is_reduced(p) {
            return Err(Error::NotReducedCyclicModP {
                p,
                which: which.to_string(),
            });
        }
    }
    if is_isomorphic(
        &g1.subgroup_as_group(&g1.sylow(p)),
        &g2.subgroup_as_group(&g2.sylow(p)),
    )
    .is_none()
    {
        return Ok(EquivalenceVerdict::new(
            Verdict::SylowMismatch,
            p,
            Method::ReducedCyclic,
        ));
    }
    let iso = is_isomorphic(g1, g2).is_some();
    let mut verdict = EquivalenceVerdict::new(
        if iso {
            Verdict::Equivalent
        } else {
            Verdict::NotEquivalent
        },
        p,
        Method::ReducedCyclic,
    );
    if !iso {
        verdict.witness = Some(Witness {
            q: identify(g1),
            label: format!("not isomorphic to {}", identify(g2)),
        });
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Fixed(Method),
}

/// Runs the requested method. `Auto` picks the most specific applicable one:
/// reduced-cyclic when both groups are reduced cyclic mod p, normal-sylow when
/// both have normal Sylow subgroups, general otherwise.
pub fn decide(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    p: u64,
    choice: MethodChoice,
) -> Result<EquivalenceVerdict> {
    check_prime(p)?;
    let method = match choice {
        MethodChoice::Fixed(m) => m,
        MethodChoice::Auto => {
            let rc = |g: &FiniteGroup| is_cyclic_mod_p(g, p) && g.is_reduced(p);
            let ns = |g: &FiniteGroup| g.is_normal(&g.sylow(p));
            if rc(g1) && rc(g2) {
                Method::ReducedCyclic
            } else if ns(g1) && ns(g2) {
                Method::NormalSylow
            } else {
                Method::General
            }
        }
    };
    match method {
        Method::General => stably_equivalent(g1, g2, p),
        Method::NormalSylow => normal_sylow_equivalent(g1, g2, p),
        Method::ReducedCyclic => reduced_cyclic_equivalent(g1, g2, p),
    }
}
