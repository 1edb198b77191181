//! Finite rings, their right coprime pairs, and ring-class predicates decided
//! by exhaustive table scans.

pub mod analysis;
pub mod chains;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod rcp;
pub mod ring;
pub mod verify;

pub use analysis::Analysis;
pub use error::{Error, Result};
pub use ring::{Element, ElementSet, FiniteRing, IdealSet, RingSpec, Side, SizeCaps};
