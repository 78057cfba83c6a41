//! The two actions of an automaton (`∘` on input words, `·` on state words), equality of
//! induced partial functions, canonical forms and cross diagrams.
//!
//! Products of states act right to left: in `q p`, `p` reads the input first.

mod canonical;
mod consistency;
mod cross;
mod equivalence;
mod sampling;
mod word;

pub use canonical::{canonicalize, minimize, reachable_tuples, CanonicalTransducer, Cell, TUPLE_CAP};
pub use consistency::{
    all_words, check_equiv_consistency, product_depth, truncated_table, ConsistencyReport, Mismatch,
    CONSISTENCY_WORD_BUDGET,
};
pub(crate) use cross::escape;
pub use cross::{render_cross_diagram, CrossCell, CrossDiagram};
pub use equivalence::{equivalent, equivalent_across, equivalent_on, Equivalence};
pub use sampling::{check_sampled_laws, SampleReport};
pub(crate) use word::step_tuple;
pub use word::{act, format_letters, parse_input, EvalResult, StateWord};
