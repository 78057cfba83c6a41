//! Semigroups generated by partial deterministic letter-to-letter transducers.
//!
//! An [`Automaton`] is a finite set of states over an alphabet; each state induces a
//! partial, length-preserving, prefix-compatible function on words, and products of
//! states (right to left) generate a semigroup. The crate decides equality of such
//! functions exactly, enumerates the generated semigroup, and implements the standard
//! constructions on automata.

pub mod automaton;
pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod explorer;
pub mod format;
pub mod inverse;
pub mod report;
pub mod semantics;

pub use automaton::{Automaton, Edge, RawAutomaton, Transition};
pub use error::{Error, Result};
pub use semantics::{act, canonicalize, equivalent, CanonicalTransducer, StateWord};
