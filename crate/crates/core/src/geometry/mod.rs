//! Curvature of left-invariant metrics, solitons and Einstein extensions.

pub mod einstein;
pub mod metric;
pub mod ricci;
pub mod soliton;

pub use einstein::{
    einstein_extension, heber_properties, nilradical_split, pre_einstein, EinsteinExtension,
    HeberReport, NilradicalSplit, PreEinsteinDerivation,
};
pub use metric::InnerProduct;
pub use ricci::{is_flat, ricci_operator, ricci_oracle_koszul};
pub use soliton::{einstein_check, soliton_solve, EinsteinReport, SolitonCertificate};
