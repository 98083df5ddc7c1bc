//! Finite groups with operations: structures, morphisms, subobjects and
//! user-declared identities.

mod group;
mod morphism;
mod signature;
mod subobject;
pub mod term;

pub use group::{check_omega_group, BinaryFn, OmegaGroup, UnaryFn};
pub use morphism::{check_isomorphism, check_morphism, OmegaMorphism};
pub use signature::Signature;
pub use subobject::{closure, enumerate_subobjects, is_subobject, kernel_image, Subobject};
pub use term::{check_identity, eval_term, Identity, Term};
