use std::cmp::Ordering;

use crate::automaton::{Automaton, Edge};
use crate::error::{Error, Result};

/// A nonempty product of states `q_n … q_1`, stored in display order: index 0 holds
/// `q_n`, and the last entry `q_1` is the first to read the input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateWord(Vec<usize>);

impl StateWord {
    pub fn new(states: Vec<usize>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(StateWord(states))
    }

    pub fn single(state: usize) -> Self {
        StateWord(vec![state])
    }

    /// Parses whitespace-separated state names, written in display order.
    pub fn parse(automaton: &Automaton, text: &str) -> Result<Self> {
        let states = text
            .split_whitespace()
            .map(|name| automaton.state(name))
            .collect::<Result<Vec<_>>>()?;
        StateWord::new(states)
    }

    pub fn states(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `self · other` in display order; `other` acts first.
    pub fn concat(&self, other: &StateWord) -> StateWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        StateWord(v)
    }

    pub fn pow(&self, k: usize) -> StateWord {
        assert!(k >= 1, "powers of state words start at 1");
        StateWord(self.0.repeat(k))
    }

    /// Same states, rewritten through an index map (e.g. into a constructed automaton).
    pub fn map_states(&self, f: impl Fn(usize) -> usize) -> StateWord {
        StateWord(self.0.iter().map(|&q| f(q)).collect())
    }

    pub fn display(&self, automaton: &Automaton) -> String {
        self.0
            .iter()
            .map(|&q| automaton.state_name(q))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Shortlex order by state declaration order.
    pub fn shortlex_cmp(&self, other: &StateWord) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Runs one letter through a tuple of states, rightmost first. Returns the emitted letter
/// and the successor tuple.
pub(crate) fn step_tuple(automaton: &Automaton, tuple: &[usize], letter: usize) -> Option<(usize, Vec<usize>)> {
    let mut next = tuple.to_vec();
    let mut current = letter;
    for i in (0..tuple.len()).rev() {
        let Edge { output, target } = automaton.step(tuple[i], current)?;
        next[i] = target;
        current = output;
    }
    Some((current, next))
}

/// Outcome of [`act`]. Both fields are present exactly when the run is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub output: Option<Vec<usize>>,
    pub residual: Option<StateWord>,
}

impl EvalResult {
    pub fn is_defined(&self) -> bool {
        self.output.is_some()
    }
}

/// Computes `w ∘ u` and `w · u`. Each state consumes the output of the state to its right.
pub fn act(automaton: &Automaton, word: &StateWord, input: &[usize]) -> EvalResult {
    let mut current = input.to_vec();
    let mut residual = word.0.clone();
    for i in (0..word.len()).rev() {
        let mut state = word.0[i];
        for letter in current.iter_mut() {
            match automaton.step(state, *letter) {
                Some(e) => {
                    *letter = e.output;
                    state = e.target;
                }
                None => {
                    return EvalResult {
                        output: None,
                        residual: None,
                    };
                }
            }
        }
        residual[i] = state;
    }
    EvalResult {
        output: Some(current),
        residual: Some(StateWord(residual)),
    }
}

/// Parses an input word. Whitespace-separated letters are taken literally; otherwise the
/// text is split greedily into the longest matching letter names.
pub fn parse_input(automaton: &Automaton, text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() || text == "ε" {
        return Ok(Vec::new());
    }
    if text.contains(char::is_whitespace) {
        return text.split_whitespace().map(|t| automaton.letter(t)).collect();
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let best = automaton
            .alphabet()
            .iter()
            .enumerate()
            .filter(|(_, name)| rest.starts_with(name.as_str()))
            .max_by_key(|(_, name)| name.len());
        match best {
            Some((i, name)) => {
                out.push(i);
                rest = &rest[name.len()..];
            }
            None => return Err(Error::UnknownSymbol(rest.to_string())),
        }
    }
    Ok(out)
}

/// Formats letters; concatenated when every letter is a single character, else spaced.
pub fn format_letters(automaton: &Automaton, letters: &[usize]) -> String {
    let compact = automaton.alphabet().iter().all(|a| a.chars().count() == 1);
    let names: Vec<&str> = letters.iter().map(|&a| automaton.letter_name(a)).collect();
    if compact {
        names.concat()
    } else {
        names.join(" ")
    }
}
