//! Reconstruction of Sperner systems and Boolean functions from their
//! identification minors.

pub mod enumerate;
pub mod error;
pub mod families;
pub mod format;
pub mod functions;
pub mod iso;
pub mod minors;
pub mod system;

pub use enumerate::{
    deck_table, enumerate_sperner, find_nonreconstructible, is_reconstructible, DeckTable, SpernerClass,
};
pub use error::{Error, Result};
pub use functions::FiniteFunction;
pub use iso::{canonical_form, find_isomorphism, CanonicalForm};
pub use minors::{card, sperner_deck, Deck, IdentPair};
pub use system::{Block, GroundSet, Multiset, Permutation, SetSystem, SpernerSystem};
