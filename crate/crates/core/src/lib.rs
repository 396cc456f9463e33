//! Algebraic invariants deciding when the classifying spaces of two finite
//! groups have the same stable homotopy type after localizing at a prime `p`,
//! and the decomposition of `BG` into classifying spaces of reduced cyclic
//! mod `p` groups.
//!
//! Groups are explicit permutation groups with every element enumerated; see
//! [`FiniteGroup`]. The main entry points are
//! [`equivalence::stably_equivalent`] and [`decomposition::mw_decompose`].

pub mod decomposition;
pub mod desc;
pub mod equivalence;
pub mod error;
pub mod group;
pub mod hom;
pub mod iso;
pub mod lattice;
pub mod named;
pub mod out;
pub mod perm;

pub use desc::{identify, parse_descriptor, parse_descriptor_with};
pub use error::{Error, Result};
pub use group::{Caps, ConjClassTable, FiniteGroup, Quotient, Subgroup};
pub use hom::{Homomorphism, RepClass, RepSet};
pub use iso::is_isomorphic;
pub use named::{make_named, GroupKind};
pub use perm::Permutation;
