//! Differential forms, vector fields, vector-valued forms and derivations.

mod derivation;
mod form;
mod vector;

pub use derivation::{Derivation, DerivationPart};
pub use form::{mask_indices, wedge_sign, Form, WedgeMask};
pub use vector::{VectorField, VectorValuedForm};
