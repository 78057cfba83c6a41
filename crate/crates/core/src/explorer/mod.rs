//! Enumeration of the generated semigroup and the data read off it: growth, Cayley
//! tables, special elements, torsion, orbits, bounded freeness checks, state closures and
//! their dual automata.

mod ball;
mod closure;
mod elements;
mod table;

pub use ball::{enumerate_ball, Element, SemigroupBall, DEFAULT_CAP, DEFAULT_MAX_LEN, STATE_BUDGET};
pub use closure::{
    certificate_bound, dual_automaton, state_closure, torsion_certificate, CertificateOutcome, ClosureMember,
    DualAutomaton, TorsionCertificate,
};
pub use elements::{
    check_bound, check_free_up_to, check_zero_word, find_special_elements, find_zero, growth_series, orbit,
    torsion_order, FreeCheck, Orbit, SpecialElements, Torsion,
};
pub use table::{multiplication_table, MultiplicationTable, ASSOCIATIVITY_CHECK_LIMIT};
