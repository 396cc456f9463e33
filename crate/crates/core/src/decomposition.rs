//! Splitting of `BG` at `p` into classifying spaces of reduced cyclic mod p
//! groups, with Möbius coefficients on the poset of cyclic mod p subgroups,
//! and the rank of the map from the p'-Burnside ring to Brauer characters.
//!
//! All coefficients are exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::desc::identify;
use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, Subgroup};
use crate::iso::is_isomorphic;
use crate::lattice::{
    cyclic_mod_p_poset, is_cyclic_mod_p, subgroup_conjugacy_classes, CyclicModPPoset,
};

fn prime_to(n: usize, p: u64) -> bool {
    !(n as u64).is_multiple_of(p)
}

/// Möbius values on the classes of a [`CyclicModPPoset`].
#[derive(Clone, Debug)]
pub struct MobiusTable {
    pub poset: CyclicModPPoset,
    /// One value per class, in poset order.
    pub f: Vec<BigRational>,
}

/// Number of subgroups in class `k` containing `j`.
fn containing(poset: &CyclicModPPoset, k: usize, j: &Subgroup) -> usize {
    poset.class_members[k]
        .iter()
        .filter(|m| j.is_subset_of(m))
        .count()
}

/// Solves `Σ_{K ⊇ J} f(K) = 1` (K ranging over subgroups, `K = J` included)
/// from the largest classes down, then checks the relation at every subgroup.
pub fn mobius_f(poset: CyclicModPPoset) -> Result<MobiusTable> {
    let n = poset.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(poset.class_reps[c].order()));
    let mut f = vec![BigRational::zero(); n];
    for (pos, &j) in order.iter().enumerate() {
        let rep = &poset.class_reps[j];
        let mut value = BigRational::one();
        for &k in &order[..pos] {
            if poset.class_reps[k].order() > rep.order() {
                value -= &f[k] * BigRational::from_integer(containing(&poset, k, rep).into());
            }
        }
        f[j] = value;
    }
    for (j, members) in poset.class_members.iter().enumerate() {
        for m in members {
            let total: BigRational = (0..n)
                .map(|k| &f[k] * BigRational::from_integer(containing(&poset, k, m).into()))
                .sum();
            if !total.is_one() {
                return Err(Error::PosetInconsistent(format!(
                    "sum over overgroups of a subgroup in class {j} is {total}"
                )));
            }
        }
    }
    Ok(MobiusTable { poset, f })
}

#[derive(Clone, Debug)]
pub struct FormalTerm {
    pub group: FiniteGroup,
    pub name: String,
    pub coefficient: BigRational,
}

/// Rational combination of isomorphism classes of reduced cyclic mod p groups.
/// Keys are numbered in order of first insertion.
#[derive(Clone, Debug)]
pub struct FormalSum {
    pub prime: u64,
    terms: Vec<FormalTerm>,
}

impl FormalSum {
    pub fn new(prime: u64) -> Self {
        FormalSum {
            prime,
            terms: Vec::new(),
        }
    }

    pub fn terms(&self) -> &[FormalTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Adds `coefficient · [group]`, merging with an isomorphic key.
    pub fn add(&mut self, group: &FiniteGroup, coefficient: BigRational) -> Result<()> {
        let p = self.prime;
        if !is_cyclic_mod_p(group, p) || !group.is_reduced(p) {
            return Err(Error::NotReducedCyclicModP {
                p,
                which: identify(group),
            });
        }
        if coefficient.is_zero() {
            return Ok(());
        }
        match self
            .terms
            .iter()
            .position(|t| is_isomorphic(&t.group, group).is_some())
        {
            Some(i) => {
                self.terms[i].coefficient += coefficient;
                if self.terms[i].coefficient.is_zero() {
                    self.terms.remove(i);
                }
            }
            None => self.terms.push(FormalTerm {
                group: group.clone(),
                name: identify(group),
                coefficient,
            }),
        }
        Ok(())
    }

    /// Coefficient of the class of `group`, zero when absent.
    pub fn coefficient_of(&self, group: &FiniteGroup) -> BigRational {
        self.terms
            .iter()
            .find(|t| is_isomorphic(&t.group, group).is_some())
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·[{}]", t.coefficient, t.name)?;
        }
        Ok(())
    }
}

/// Keys matched by isomorphism; equal iff every matched coefficient agrees.
pub fn formal_sum_equal(a: &FormalSum, b: &FormalSum) -> bool {
    a.len() == b.len()
        && a.terms
            .iter()
            .all(|t| b.coefficient_of(&t.group) == t.coefficient)
}

/// One class of the poset before reduction and aggregation.
#[derive(Clone, Debug, Serialize)]
pub struct RawTerm {
    pub subgroup_order: usize,
    pub name: String,
    #[serde(serialize_with = "ser_ratio")]
    pub f: BigRational,
    pub normalizer_index: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub coefficient: BigRational,
    /// Name of `H / O_{p'}(H)`.
    pub reduced: String,
    /// Reduced form has order prime to `p`.
    pub dropped: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug)]
pub struct MwDecomposition {
    pub raw: Vec<RawTerm>,
    pub sum: FormalSum,
}

impl MwDecomposition {
    /// Raw terms with a nonzero coefficient that were discarded as p-locally trivial.
    pub fn dropped(&self) -> impl Iterator<Item = &RawTerm> {
        self.raw
            .iter()
            .filter(|t| t.dropped && !t.coefficient.is_zero())
    }
}

/// `BG ≃ ⋁_{(H)} f(H)/[N_G(H):H] · BH` over classes of cyclic mod p
/// subgroups, each `H` replaced by `H / O_{p'}(H)`.
pub fn mw_decompose(g: &FiniteGroup, p: u64) -> Result<MwDecomposition> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let table = mobius_f(cyclic_mod_p_poset(g, p)?)?;
    let poset = &table.poset;
    let mut raw = Vec::with_capacity(poset.len());
    let mut sum = FormalSum::new(p);
    for (c, h) in poset.class_reps.iter().enumerate() {
        let index = poset.index_in_normalizer[c];
        let coefficient = &table.f[c] / BigRational::from_integer(index.into());
        let hg = g.subgroup_as_group(h);
        let reduced = hg.reduce_mod_p(p)?;
        let dropped = prime_to(reduced.order(), p);
        if !dropped {
            sum.add(&reduced, coefficient.clone())?;
        }
        raw.push(RawTerm {
            subgroup_order: h.order(),
            name: identify(&hg),
            f: table.f[c].clone(),
            normalizer_index: index,
            coefficient,
            reduced: identify(&reduced),
            dropped,
        });
    }
    Ok(MwDecomposition { raw, sum })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralForm {
    pub denominator: String,
    pub positive: Vec<(String, String)>,
    pub negative: Vec<(String, String)>,
}

/// `S = (positive − negative) / denominator` with integer coefficients.
pub fn integral_form(s: &FormalSum) -> IntegralForm {
    let mut d = BigInt::one();
    for t in &s.terms {
        let den = t.coefficient.denom();
        d = d.lcm(den);
    }
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for t in &s.terms {
        let scaled = (&t.coefficient * BigRational::from_integer(d.clone())).to_integer();
        if scaled.is_positive() {
            positive.push((t.name.clone(), scaled.to_string()));
        } else {
            negative.push((t.name.clone(), (-scaled).to_string()));
        }
    }
    IntegralForm {
        denominator: d.to_string(),
        positive,
        negative,
    }
}

/// Conjugacy classes of cyclic subgroups of order prime to `p`, as representatives.
pub fn cyclic_pprime_classes(g: &FiniteGroup, p: u64) -> Result<Vec<Subgroup>> {
    let table = subgroup_conjugacy_classes(g)?;
    Ok(table
        .class_reps()
        .into_iter()
        .filter(|h| {
            prime_to(h.order(), p) && h.members().iter().any(|&x| g.element_order(x) == h.order())
        })
        .cloned()
        .collect())
}

/// Fixed-point counts `|(G/H)^g|` for p'-subgroups `H` (rows) and
/// p'-element classes `g` (columns).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiMatrix {
    pub row_orders: Vec<usize>,
    /// Representative element index of each column class.
    pub columns: Vec<usize>,
    pub entries: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub rank: usize,
    pub cyclic_class_count: usize,
    pub matrix: PsiMatrix,
}

impl PsiReport {
    pub fn holds(&self) -> bool {
        self.rank == self.cyclic_class_count
    }
}

pub fn psi_rank(g: &FiniteGroup, p: u64) -> Result<PsiReport> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let table = subgroup_conjugacy_classes(g)?;
    let rows: Vec<&Subgroup> = table
        .class_reps()
        .into_iter()
        .filter(|h| prime_to(h.order(), p))
        .collect();
    let classes = g.conjugacy_classes();
    let columns: Vec<usize> = (0..classes.len())
        .filter(|&c| prime_to(g.element_order(classes.representatives[c]), p))
        .collect();
    // |(G/H)^x| = |C_G(x)| · |(x) ∩ H| / |H|
    let entries: Vec<Vec<usize>> = rows
        .iter()
        .map(|h| {
            let mut in_h = vec![0usize; classes.len()];
            for &x in h.members() {
                in_h[classes.class_of[x]] += 1;
            }
            columns
                .iter()
                .map(|&c| g.order() / classes.class_sizes[c] * in_h[c] / h.order())
                .collect()
        })
        .collect();
    let rank = rational_rank(&entries);
    Ok(PsiReport {
        rank,
        cyclic_class_count: cyclic_pprime_classes(g, p)?.len(),
        matrix: PsiMatrix {
            row_orders: rows.iter().map(|h| h.order()).collect(),
            columns: columns
                .iter()
                .map(|&c| classes.representatives[c])
                .collect(),
            entries,
        },
    })
}

fn rational_rank(m: &[Vec<usize>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = &row[c] / &pivot_row[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}
