//! Accordion complexes of polygon dissections and 2-term silting complexes
//! of gentle algebras, with exact checks that the two agree.
//!
//! The pipeline has two independent sides:
//!
//! * the combinatorial side ([`geometry`], [`accordion`]) works purely with
//!   cyclic orders of points on a circle and never touches linear algebra;
//! * the algebraic side ([`quiver`], [`rigidity`]) builds the gentle algebra of
//!   a dissection, enumerates string modules, computes minimal projective
//!   presentations and decides rigidity in the homotopy category over exact
//!   rationals.
//!
//! Both sides produce a [`complexes::LabeledComplex`] whose vertices carry
//! g-vectors; [`complexes::iso_by_gvectors`] matches them. The [`verify`]
//! module drives the exhaustive checks.

pub mod accordion;
pub mod complexes;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod par;
pub mod quiver;
pub mod rigidity;
pub mod verify;

pub use error::{Error, Result};
