//! Built-in example automata.

use crate::automaton::Automaton;
use crate::format;

/// Name, description and source text of every shipped automaton. The first six are the
/// classic examples; the rest are small fixtures.
pub const ENTRIES: &[(&str, &str, &str)] = &[
    ("adding", "binary adding machine", include_str!("../corpus/adding.aut")),
    ("free3", "free semigroup of rank 3", include_str!("../corpus/free3.aut")),
    (
        "b2_partial",
        "partial automaton for B2",
        include_str!("../corpus/b2_partial.aut"),
    ),
    (
        "b2_complete",
        "complete automaton for B2 (left multiplication)",
        include_str!("../corpus/b2_complete.aut"),
    ),
    (
        "adding_inverse",
        "inverse of the adding machine",
        include_str!("../corpus/adding_inverse.aut"),
    ),
    (
        "adding_modified",
        "adding machine with hatted letters",
        include_str!("../corpus/adding_modified.aut"),
    ),
    (
        "single_ab",
        "one invertible state a/b",
        include_str!("../corpus/single_ab.aut"),
    ),
    (
        "left_zero",
        "two-element left-zero band",
        include_str!("../corpus/left_zero.aut"),
    ),
    ("identity1", "one-state copier", include_str!("../corpus/identity1.aut")),
    (
        "sink",
        "one state without transitions",
        include_str!("../corpus/sink.aut"),
    ),
    (
        "zero_hazard",
        "two states feeding a zero state",
        include_str!("../corpus/zero_hazard.aut"),
    ),
];

/// Number of leading entries that are classic examples rather than fixtures.
pub const CLASSIC: usize = 6;

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.0)
}

pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|e| e.0 == name).map(|e| e.2)
}

/// Parses a corpus automaton. Panics only if a shipped file is malformed.
pub fn get(name: &str) -> Option<Automaton> {
    source(name).map(|text| format::parse(text).unwrap_or_else(|e| panic!("corpus {name}: {e}")))
}

pub fn all() -> Vec<Automaton> {
    names().map(|n| get(n).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates_and_round_trips() {
        for a in all() {
            assert_eq!(format::parse(&format::print(&a)).unwrap(), a, "{}", a.name());
        }
        assert_eq!(ENTRIES.len(), 11);
    }

    #[test]
    fn b2_complete_shape() {
        let a = get("b2_complete").unwrap();
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.letter_count(), 5);
        assert_eq!(a.transition_count(), 10);
        assert!(a.is_complete());
        assert!(!a.is_invertible());
    }

    #[test]
    fn names_match_headers() {
        for (name, _, _) in ENTRIES {
            assert_eq!(get(name).unwrap().name(), *name);
        }
    }
}
