//! Isomorphism testing by backtracking over generator images.

use std::ops::ControlFlow;

use crate::group::FiniteGroup;
use crate::hom::{HomSearch, Homomorphism};

/// Sorted multiset of (element order, conjugacy class size).
pub fn fingerprint(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let t = g.conjugacy_classes();
    let mut v: Vec<(usize, usize)> = (0..g.order())
        .map(|x| (g.element_order(x), t.class_sizes[t.class_of[x]]))
        .collect();
    v.sort_unstable();
    v
}

/// An isomorphism `G → H` as an element map, or `None`.
///
/// Generator images are restricted to elements with the same order and the same
/// conjugacy class size.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Homomorphism> {
    if g.order() != h.order() {
        return None;
    }
    if g.order() == 1 {
        return Some(Homomorphism { image_of: vec![0] });
    }
    if g.order_profile() != h.order_profile() {
        return None;
    }
    let (tg, th) = (g.conjugacy_classes(), h.conjugacy_classes());
    let size_g = |x: usize| tg.class_sizes[tg.class_of[x]];
    let size_h = |y: usize| th.class_sizes[th.class_of[y]];
    if fingerprint(g) != fingerprint(h) {
        return None;
    }
    let search = HomSearch::new(g, h, None).expect("no generator limit");
    let gens = search.generators().to_vec();
    let mut found = None;
    search.run(
        true,
        |slot, y| size_g(gens[slot]) == size_h(y),
        |img| {
            found = Some(Homomorphism {
                image_of: img.to_vec(),
            });
            ControlFlow::Break(())
        },
    );
    found
}
