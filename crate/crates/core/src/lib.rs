//! Exact computation with finite monoids and their finite right acts.
//!
//! Everything is decided by exhaustive search over explicit tables, so every
//! negative answer comes with a concrete witness.

pub mod act;
pub mod bicyclic;
pub mod colimit;
pub mod congruence;
pub mod corpus;
pub mod cover;
pub mod error;
pub mod flatness;
pub mod hom;
pub mod json;
pub mod monoid;
pub mod purity;
pub mod suite;
mod union_find;

pub use act::{ActMap, FiniteAct};
pub use bicyclic::BicyclicElement;
pub use congruence::Congruence;
pub use error::{Error, Result};
pub use flatness::{ClassId, Verdict};
pub use monoid::{Builder, FiniteMonoid};
