//! Exact lattice-ordered groups.
//!
//! The catalog is closed: the trivial group `O`, the integers `Z`, the
//! rationals `Q`, the affine group `Aff` of increasing maps `t ↦ a·t + β`
//! (the non-Abelian linear exemplar), and lexicographic products
//! `lex(H, G)` with `H` linearly ordered.  Every element is stored exactly,
//! so all comparisons are decidable.

mod elem;
mod hom;
mod ops;
mod spec;

pub use elem::GroupElem;
pub use hom::{GroupHom, HomPresentation, HOM_VALIDATION_SAMPLES};
pub use ops::{GroupOrdering, LatticeOp};
pub use spec::{GroupSpec, UnitalGroup};
