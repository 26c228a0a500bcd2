//! String modules, minimal projective presentations and rigidity of 2-term
//! complexes of projectives.
//!
//! The Auslander–Reiten translate is never computed. Compatibility of two
//! indecomposable τ-rigid pairs is decided on the corresponding 2-term
//! complexes: `X ⊕ Y` is rigid iff `Hom_K(X, Y[1])` and `Hom_K(Y, X[1])`
//! vanish (together with the self-terms), since Hom is additive in both
//! arguments.

mod complex;
mod module;
mod silting;
mod strings;

pub use complex::{hom_shift, min_presentation, PathCombo, TwoTermComplex};
pub use module::{hom_dim, projective_module, string_module, Representation};
pub use silting::{
    induced_subcomplex_j, silting_complex, silting_vertices, verify_idempotent_reduction,
    verify_idempotent_reduction_with, SiltingData, SiltingKind, SiltingVertex,
};
pub use strings::{enumerate_strings, Letter, StringWord};
