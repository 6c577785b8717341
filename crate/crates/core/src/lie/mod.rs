//! Lie algebras as structure constants and their structural invariants.

pub mod algebra;
pub mod structure;
pub mod subspace;

pub use algebra::{numbered, LieAlgebra, ValidationReport};
pub use structure::{
    bracket_span, cartan_subalgebra, center, characteristic_series, complete_solvability_check,
    invariant_profile, is_ideal, is_nilpotent, is_solvable, is_unimodular, killing_form, nilradical,
    restrict, series_dims, verify_declared_nilradical, InvariantProfile, SeriesKind,
};
pub use subspace::{BilinearForm, Signature, Subspace};
