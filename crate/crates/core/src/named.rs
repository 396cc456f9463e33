//! Named groups in fixed permutation realizations.
//!
//! | kind                 | realization                                                   |
//! |----------------------|---------------------------------------------------------------|
//! | `Cyclic(n)`          | the n-cycle `(0 1 .. n-1)` on n points                        |
//! | `Dihedral(n)`        | order n = 2m; natural action on m points for m ≥ 3, regular for m ≤ 2 |
//! | `Quaternion(n)`      | order n = 4m, m ≥ 2; regular action on `a^i b^j`, index `i + 2m·j` |
//! | `Symmetric(n)`       | natural action on n points, generated by `(0 .. n-1)` and `(0 1)` |
//! | `Alternating(n)`     | natural action, generated by the 3-cycles `(0 1 i)`           |
//! | `ElementaryAbelian`  | p^k as k disjoint p-cycles on p·k points                      |
//! | `Heisenberg(p)`      | unitriangular 3×3 over F_p, regular on `(a, b, c)`, index `a + p·b + p²·c` |

use crate::error::{Error, Result};
use crate::group::{is_prime, Caps, FiniteGroup};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    /// Generalized quaternion group of the given order.
    Quaternion(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian {
        p: u64,
        rank: u32,
    },
    Heisenberg(u64),
}

pub fn make_named(kind: GroupKind) -> Result<FiniteGroup> {
    make_named_with(kind, Caps::default())
}

pub fn make_named_with(kind: GroupKind, caps: Caps) -> Result<FiniteGroup> {
    let (gens, degree) = match kind {
        GroupKind::Cyclic(n) => {
            if n == 0 {
                return Err(Error::BadParameter("cyclic group of order 0".into()));
            }
            (vec![cycle_on(n, n)], n)
        }
        GroupKind::Dihedral(n) => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::BadParameter(format!(
                    "dihedral order must be even and at least 2, got {n}"
                )));
            }
            let m = n / 2;
            if m >= 3 {
                let reflection: Vec<u32> = (0..m).map(|i| ((m - i) % m) as u32).collect();
                (vec![cycle_on(m, m), Permutation::new(reflection)?], m)
            } else {
                metacyclic_regular(m, false)
            }
        }
        GroupKind::Quaternion(n) => {
            if n < 8 || n % 4 != 0 {
                return Err(Error::BadParameter(format!(
                    "generalized quaternion order must be a multiple of 4 and at least 8, got {n}"
                )));
            }
            metacyclic_regular(n / 4, true)
        }
        GroupKind::Symmetric(n) => {
            if n == 0 {
                return Err(Error::BadParameter("symmetric group on 0 points".into()));
            }
            if n == 1 {
                (vec![], 1)
            } else {
                (
                    vec![cycle_on(n, n), Permutation::from_cycles(n, &[vec![0, 1]])?],
                    n,
                )
            }
        }
        GroupKind::Alternating(n) => {
            if n == 0 {
                return Err(Error::BadParameter("alternating group on 0 points".into()));
            }
            let gens = (2..n)
                .map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]))
                .collect::<Result<Vec<_>>>()?;
            (gens, n)
        }
        GroupKind::ElementaryAbelian { p, rank } => {
            if !is_prime(p) {
                return Err(Error::BadParameter(format!("{p} is not a prime")));
            }
            let p = p as usize;
            let rank = rank as usize;
            let degree = (p * rank).max(1);
            let gens = (0..rank)
                .map(|k| Permutation::from_cycles(degree, &[(k * p..(k + 1) * p).collect()]))
                .collect::<Result<Vec<_>>>()?;
            (gens, degree)
        }
        GroupKind::Heisenberg(p) => {
            if !is_prime(p) || p == 2 {
                return Err(Error::BadParameter(format!(
                    "Heisenberg group needs an odd prime, got {p}"
                )));
            }
            heisenberg_regular(p as usize)
        }
    };
    FiniteGroup::close_generators_with(&gens, degree, caps)
}

fn cycle_on(len: usize, degree: usize) -> Permutation {
    Permutation::from_images_unchecked((0..degree).map(|i| ((i + 1) % len) as u32).collect())
}

/// Left regular action on the elements `a^i b^j` of a group with
/// `b a b⁻¹ = a⁻¹`. Twisted: `a` has order `2m` and `b² = a^m` (generalized
/// quaternion of order `4m`). Untwisted: `a` has order `m` and `b² = 1`.
fn metacyclic_regular(m: usize, twisted: bool) -> (Vec<Permutation>, usize) {
    let a_order = if twisted { 2 * m } else { m };
    let degree = 2 * a_order;
    let idx = |i: usize, j: usize| (i % a_order) + a_order * j;
    // (a^i b^j)(a^k b^l)
    let mul = |i: usize, j: usize, k: usize, l: usize| -> usize {
        let mut e = if j == 1 {
            i + a_order - k % a_order
        } else {
            i + k
        };
        let b = j + l;
        if b == 2 {
            if twisted {
                e += m;
            }
            idx(e, 0)
        } else {
            idx(e, b)
        }
    };
    let left = |i: usize, j: usize| -> Permutation {
        let images = (0..degree)
            .map(|x| mul(i, j, x % a_order, x / a_order) as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    };
    (vec![left(1, 0), left(0, 1)], degree)
}

fn heisenberg_regular(p: usize) -> (Vec<Permutation>, usize) {
    let degree = p * p * p;
    let idx = |a: usize, b: usize, c: usize| a % p + p * (b % p) + p * p * (c % p);
    // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a·b')
    let left = |a: usize, b: usize, c: usize| -> Permutation {
        let images = (0..degree)
            .map(|x| {
                let (a2, b2, c2) = (x % p, (x / p) % p, x / (p * p));
                idx(a + a2, b + b2, c + c2 + a * b2) as u32
            })
            .collect();
        Permutation::from_images_unchecked(images)
    };
    (vec![left(1, 0, 0), left(0, 1, 0)], degree)
}
