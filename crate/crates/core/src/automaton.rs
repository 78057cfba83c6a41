//! Partial deterministic letter-to-letter transducers.
//!
//! States and letters are addressed by their position in declaration order. That order
//! is significant: it drives shortlex witnesses, canonical numbering and printing.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Suffix used to build end-marker letters (`a` becomes `a$`).
pub const END_MARKER_SUFFIX: &str = "$";
/// Letter emitted by undefined transitions after zero-completion.
pub const BOTTOM: &str = "_BOT_";
/// Letter looped at every state by [`crate::constructions::adjoin_zero`].
pub const TOP: &str = "_TOP_";
/// Name of the state adjoined by [`crate::constructions::adjoin_zero`].
pub const ADJOINED_ZERO: &str = "_Z0_";

/// Target of a transition: emitted letter and successor state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub output: usize,
    pub target: usize,
}

/// A transition written with names, `from --input/output--> to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: String,
    pub input: String,
    pub output: String,
    pub to: String,
}

impl Transition {
    pub fn new(from: &str, input: &str, output: &str, to: &str) -> Self {
        Transition {
            from: from.to_string(),
            input: input.to_string(),
            output: output.to_string(),
            to: to.to_string(),
        }
    }
}

/// An unchecked automaton description, as produced by the parser or by hand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawAutomaton {
    pub name: String,
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<Transition>,
}

impl RawAutomaton {
    pub fn new(name: &str, states: &[&str], alphabet: &[&str]) -> Self {
        RawAutomaton {
            name: name.to_string(),
            states: states.iter().map(|s| s.to_string()).collect(),
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            transitions: Vec::new(),
        }
    }

    pub fn transition(mut self, from: &str, input: &str, output: &str, to: &str) -> Self {
        self.transitions.push(Transition::new(from, input, output, to));
        self
    }

    /// Checks every invariant and produces an [`Automaton`].
    pub fn validate(&self) -> Result<Automaton> {
        check_token(&self.name)?;
        let mut state_index = HashMap::new();
        for (i, s) in self.states.iter().enumerate() {
            check_token(s)?;
            if state_index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateState(s.clone()));
            }
        }
        let mut letter_index = HashMap::new();
        for (i, a) in self.alphabet.iter().enumerate() {
            check_token(a)?;
            if letter_index.insert(a.clone(), i).is_some() {
                return Err(Error::DuplicateLetter(a.clone()));
            }
        }
        let lookup = |map: &HashMap<String, usize>, key: &str| {
            map.get(key)
                .copied()
                .ok_or_else(|| Error::UnknownSymbol(key.to_string()))
        };
        let mut delta = vec![vec![None; self.alphabet.len()]; self.states.len()];
        for t in &self.transitions {
            let from = lookup(&state_index, &t.from)?;
            let input = lookup(&letter_index, &t.input)?;
            let output = lookup(&letter_index, &t.output)?;
            let target = lookup(&state_index, &t.to)?;
            if delta[from][input].is_some() {
                return Err(Error::NondeterministicTransition {
                    state: t.from.clone(),
                    letter: t.input.clone(),
                });
            }
            delta[from][input] = Some(Edge { output, target });
        }
        Ok(Automaton {
            name: self.name.clone(),
            states: self.states.clone(),
            letters: self.alphabet.clone(),
            delta,
            state_index,
            letter_index,
        })
    }
}

/// Tokens are nonempty and contain no whitespace, `/`, `#` or `:`.
pub fn check_token(token: &str) -> Result<()> {
    let bad = token.is_empty() || token.chars().any(|c| c.is_whitespace() || matches!(c, '/' | '#' | ':'));
    if bad {
        Err(Error::InvalidToken(token.to_string()))
    } else {
        Ok(())
    }
}

/// A validated automaton `(Q, Σ, δ)` with at most one transition per state and input letter.
#[derive(Debug, Clone)]
pub struct Automaton {
    name: String,
    states: Vec<String>,
    letters: Vec<String>,
    delta: Vec<Vec<Option<Edge>>>,
    state_index: HashMap<String, usize>,
    letter_index: HashMap<String, usize>,
}

impl PartialEq for Automaton {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.states == other.states
            && self.letters == other.letters
            && self.delta == other.delta
    }
}

impl Eq for Automaton {}

impl Automaton {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.letters
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.states[state]
    }

    pub fn letter_name(&self, letter: usize) -> &str {
        &self.letters[letter]
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn letter(&self, name: &str) -> Result<usize> {
        self.letter_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// The transition of `state` reading `letter`, if any.
    #[inline]
    pub fn step(&self, state: usize, letter: usize) -> Option<Edge> {
        self.delta[state][letter]
    }

    /// All transitions in state-then-letter declaration order, as index quadruples
    /// `(from, input, output, to)`.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(a, e)| e.map(|e| (q, a, e.output, e.target)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.transitions().count()
    }

    /// The transitions with names, suitable for rebuilding a [`RawAutomaton`].
    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            name: self.name.clone(),
            states: self.states.clone(),
            alphabet: self.letters.clone(),
            transitions: self
                .transitions()
                .map(|(q, a, b, p)| {
                    Transition::new(&self.states[q], &self.letters[a], &self.letters[b], &self.states[p])
                })
                .collect(),
        }
    }

    /// Every (state, input letter) pair has a transition.
    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// No state emits the same letter on two different inputs, so swapping inputs and
    /// outputs yields a deterministic automaton.
    pub fn is_invertible(&self) -> bool {
        self.invertibility_witness().is_none()
    }

    /// A state, output letter and the two inputs producing it, if invertibility fails.
    pub fn invertibility_witness(&self) -> Option<(usize, usize, usize, usize)> {
        for (q, row) in self.delta.iter().enumerate() {
            let mut seen: Vec<Option<usize>> = vec![None; self.letters.len()];
            for (a, e) in row.iter().enumerate() {
                if let Some(e) = e {
                    if let Some(first) = seen[e.output] {
                        return Some((q, e.output, first, a));
                    }
                    seen[e.output] = Some(a);
                }
            }
        }
        None
    }

    /// Letters of the other automaton re-indexed into this alphabet; fails unless both
    /// alphabets contain the same names.
    pub fn letter_map_from(&self, other: &Automaton) -> Result<Vec<usize>> {
        if self.letters.len() != other.letters.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{} has {} letters, {} has {}",
                self.name,
                self.letters.len(),
                other.name,
                other.letters.len()
            )));
        }
        other
            .letters
            .iter()
            .map(|a| {
                self.letter_index
                    .get(a)
                    .copied()
                    .ok_or_else(|| Error::AlphabetMismatch(format!("letter {a:?} missing from {}", self.name)))
            })
            .collect()
    }

    /// A state bijection `f` carrying every transition `q -a/b-> p` of `self` to
    /// `f(q) -a/b-> f(p)` of `other` and back. Letters are matched by name; state names
    /// are ignored.
    pub fn isomorphism_to(&self, other: &Automaton) -> Option<Vec<usize>> {
        let letters = other.letter_map_from(self).ok()?;
        if self.state_count() != other.state_count() {
            return None;
        }
        let n = self.state_count();
        let mut map: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        self.extend_isomorphism(other, &letters, &mut map, &mut used)
            .then(|| map.into_iter().map(Option::unwrap).collect())
    }

    fn extend_isomorphism(
        &self,
        other: &Automaton,
        letters: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(q) = map.iter().position(Option::is_none) else {
            return true;
        };
        for c in 0..other.state_count() {
            if used[c] {
                continue;
            }
            let saved = (map.clone(), used.clone());
            if self.force(other, letters, map, used, q, c) && self.extend_isomorphism(other, letters, map, used) {
                return true;
            }
            (*map, *used) = saved;
        }
        false
    }

    /// Maps `q ↦ c` and follows transitions, which determine the images of successors.
    fn force(
        &self,
        other: &Automaton,
        letters: &[usize],
        map: &mut [Option<usize>],
        used: &mut [bool],
        q: usize,
        c: usize,
    ) -> bool {
        let mut pending = vec![(q, c)];
        while let Some((x, y)) = pending.pop() {
            match map[x] {
                Some(z) if z == y => continue,
                Some(_) => return false,
                None if used[y] => return false,
                None => {}
            }
            map[x] = Some(y);
            used[y] = true;
            for (a, &a2) in letters.iter().enumerate() {
                match (self.step(x, a), other.step(y, a2)) {
                    (None, None) => {}
                    (Some(e), Some(f)) if letters[e.output] == f.output => pending.push((e.target, f.target)),
                    _ => return false,
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adding() -> RawAutomaton {
        RawAutomaton::new("adding", &["+1", "+0"], &["0", "1"])
            .transition("+1", "1", "0", "+1")
            .transition("+1", "0", "1", "+0")
            .transition("+0", "0", "0", "+0")
            .transition("+0", "1", "1", "+0")
    }

    #[test]
    fn validates_adding_machine() {
        let a = adding().validate().unwrap();
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.transition_count(), 4);
        assert!(a.is_complete());
        assert!(a.is_invertible());
    }

    #[test]
    fn rejects_nondeterminism() {
        let raw = RawAutomaton::new("bad", &["p", "q"], &["a", "x", "y"])
            .transition("p", "a", "x", "p")
            .transition("p", "a", "y", "q");
        assert_eq!(
            raw.validate().unwrap_err(),
            Error::NondeterministicTransition {
                state: "p".into(),
                letter: "a".into()
            }
        );
    }

    #[test]
    fn rejects_unknown_and_duplicate_symbols() {
        let raw = RawAutomaton::new("bad", &["p"], &["a", "b"]).transition("p", "c", "a", "p");
        assert_eq!(raw.validate().unwrap_err(), Error::UnknownSymbol("c".into()));
        let raw = RawAutomaton::new("bad", &["p", "p"], &["a"]);
        assert_eq!(raw.validate().unwrap_err(), Error::DuplicateState("p".into()));
        let raw = RawAutomaton::new("bad", &["p"], &["a", "a"]);
        assert_eq!(raw.validate().unwrap_err(), Error::DuplicateLetter("a".into()));
        let raw = RawAutomaton::new("bad", &["p:"], &["a"]);
        assert_eq!(raw.validate().unwrap_err(), Error::InvalidToken("p:".into()));
    }

    #[test]
    fn completeness_and_invertibility_edge_cases() {
        let b2 = RawAutomaton::new("b2", &["p", "q"], &["a", "b"])
            .transition("p", "b", "a", "p")
            .transition("q", "a", "b", "q")
            .validate()
            .unwrap();
        assert!(!b2.is_complete());
        assert!(b2.is_invertible());

        let empty = RawAutomaton::new("empty", &["s"], &["a"]).validate().unwrap();
        assert!(!empty.is_complete());
        assert!(empty.is_invertible());

        let collapsing = RawAutomaton::new("qa", &["qa"], &["a", "b", "c"])
            .transition("qa", "a", "a", "qa")
            .transition("qa", "b", "a", "qa")
            .transition("qa", "c", "a", "qa")
            .validate()
            .unwrap();
        assert!(!collapsing.is_invertible());
        assert_eq!(collapsing.invertibility_witness(), Some((0, 0, 0, 1)));
    }

    #[test]
    fn isomorphism_ignores_names_and_order() {
        let a = adding().validate().unwrap();
        let b = RawAutomaton::new("other", &["z", "s"], &["1", "0"])
            .transition("s", "1", "0", "s")
            .transition("s", "0", "1", "z")
            .transition("z", "0", "0", "z")
            .transition("z", "1", "1", "z")
            .validate()
            .unwrap();
        assert_eq!(a.isomorphism_to(&b), Some(vec![1, 0]));
        let c = RawAutomaton::new("c", &["z", "s"], &["0", "1"])
            .transition("s", "1", "0", "s")
            .transition("z", "0", "0", "z")
            .transition("z", "1", "1", "z")
            .validate()
            .unwrap();
        assert_eq!(a.isomorphism_to(&c), None);
    }
}
