//! Resilient Boolean functions built from splittings of the Boolean hypercube
//! into faces.
//!
//! The crate provides truth tables over `Q_2^n` and `Q_4^n`, two independent
//! correlation-immunity checkers (face counting and Walsh spectrum), exact
//! enumeration of face splittings and perfect matchings of small cubes, the
//! splitting -> quaternary -> Boolean construction chain, the direction-word
//! encoding of splittings, and census reports tying the counts together.

pub mod census;
pub mod ci;
pub mod codec;
pub mod constructions;
mod error;
pub mod exact_cover;
pub mod face;
pub mod point;
pub mod splitting;
pub mod table;
pub mod walsh;

pub use crate::codec::{DirectionCode, InjectivityAudit};
pub use crate::constructions::Phi;
pub use crate::error::{Error, Result};
pub use crate::face::Face;
pub use crate::point::{Alphabet, Point};
pub use crate::splitting::Splitting;
pub use crate::table::TruthTable;
pub use crate::walsh::WalshSpectrum;

/// Largest arity for which splittings and matchings are fully enumerated.
pub const MAX_ENUM_N: usize = 4;
