use std::collections::HashMap;

use serde::Serialize;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::explorer::ball::{enumerate_ball, BallBuilder, Element, SemigroupBall};
use crate::semantics::{all_words, canonicalize, equivalent, format_letters, CanonicalTransducer, StateWord};

/// Zero, identity and idempotents of a ball.
///
/// Zero and identity are tested against the generators only. That is exact: a two-sided
/// law holding for every generator extends to all products of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialElements {
    pub zero: Option<usize>,
    pub identity: Option<usize>,
    pub idempotents: Vec<usize>,
    /// Set when the ball is not closed: the lists cover only the ball.
    pub bounded: bool,
}

fn is_zero_key(key: &CanonicalTransducer, generators: &[CanonicalTransducer]) -> bool {
    generators
        .iter()
        .all(|g| &CanonicalTransducer::compose(key, g) == key && &CanonicalTransducer::compose(g, key) == key)
}

fn is_identity_key(key: &CanonicalTransducer, generators: &[CanonicalTransducer]) -> bool {
    generators
        .iter()
        .all(|g| &CanonicalTransducer::compose(key, g) == g && &CanonicalTransducer::compose(g, key) == g)
}

pub fn find_special_elements(ball: &SemigroupBall) -> SpecialElements {
    let gens = ball.generators();
    let find = |law: fn(&CanonicalTransducer, &[CanonicalTransducer]) -> bool| {
        ball.elements.iter().position(|e| law(&e.key, gens))
    };
    SpecialElements {
        zero: find(is_zero_key),
        identity: find(is_identity_key),
        idempotents: (0..ball.len())
            .filter(|&i| {
                let k = &ball.elements[i].key;
                &CanonicalTransducer::compose(k, k) == k
            })
            .collect(),
        bounded: !ball.closed,
    }
}

/// Checks the zero law `w g = w = g w` for every state `g` by pair-BFS. On failure the
/// message names the offending generator and a distinguishing input.
pub fn check_zero_word(automaton: &Automaton, w: &StateWord) -> std::result::Result<(), String> {
    for g in 0..automaton.state_count() {
        let gw = StateWord::single(g);
        for (side, product) in [("right", w.concat(&gw)), ("left", gw.concat(w))] {
            let eq = equivalent(automaton, &product, w);
            if !eq.equal {
                let input = eq.witness.map(|u| format_letters(automaton, &u)).unwrap_or_default();
                return Err(format!(
                    "{side} product with {} differs on input {input:?}",
                    automaton.state_name(g)
                ));
            }
        }
    }
    Ok(())
}

/// The zero of the generated semigroup, if one is realized by a word of length at most
/// `max_len`. Grows the ball level by level and stops at the first hit.
pub fn find_zero(automaton: &Automaton, max_len: usize, cap: usize) -> Result<Option<Element>> {
    let mut builder = BallBuilder::new(automaton, cap);
    let mut checked = 0;
    for _ in 0..max_len {
        if builder.ball.closed {
            break;
        }
        builder.grow()?;
        let ball = &builder.ball;
        if let Some(e) = ball.elements[checked..]
            .iter()
            .find(|e| is_zero_key(&e.key, ball.generators()))
        {
            debug_assert!(check_zero_word(automaton, &e.witness).is_ok());
            return Ok(Some(e.clone()));
        }
        checked = ball.len();
    }
    Ok(None)
}

/// `s^i = s^(i+period)` with `i` minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Torsion {
    pub index: usize,
    pub period: usize,
}

/// Smallest `i < j <= bound` with `w^i = w^j`, reported as `(i, j - i)`.
pub fn torsion_order(automaton: &Automaton, w: &StateWord, bound: usize) -> Option<Torsion> {
    let base = canonicalize(automaton, w);
    let mut seen: HashMap<CanonicalTransducer, usize> = HashMap::new();
    let mut current = base.clone();
    for j in 1..=bound {
        if let Some(&i) = seen.get(&current) {
            return Some(Torsion {
                index: i,
                period: j - i,
            });
        }
        seen.insert(current.clone(), j);
        current = CanonicalTransducer::compose(&current, &base);
    }
    None
}

/// Images of `u` under the elements of the ball, together with `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted lexicographically.
    pub words: Vec<Vec<usize>>,
    pub closed: bool,
}

pub fn orbit(automaton: &Automaton, u: &[usize], max_len: usize, cap: usize) -> Result<Orbit> {
    let ball = enumerate_ball(automaton, max_len, cap)?;
    let mut words: Vec<Vec<usize>> = ball.elements.iter().filter_map(|e| e.key.eval(u)).collect();
    words.push(u.to_vec());
    words.sort();
    words.dedup();
    Ok(Orbit {
        words,
        closed: ball.closed,
    })
}

/// Cumulative element counts `|B(1)|, …, |B(max_len)|`.
pub fn growth_series(automaton: &Automaton, max_len: usize, cap: usize) -> Result<Vec<usize>> {
    Ok(enumerate_ball(automaton, max_len, cap)?.growth())
}

/// Outcome of [`check_free_up_to`]. Freeness up to a bound is evidence, not proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeCheck {
    pub free: bool,
    pub words: usize,
    /// The first coincidence in shortlex order: an earlier word and a later one.
    pub counterexample: Option<(StateWord, StateWord)>,
}

pub fn check_free_up_to(automaton: &Automaton, max_len: usize, budget: usize) -> Result<FreeCheck> {
    let words = all_words(automaton, max_len, budget)?;
    let mut seen: HashMap<CanonicalTransducer, usize> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        if let Some(&j) = seen.get(&canonicalize(automaton, w)) {
            return Ok(FreeCheck {
                free: false,
                words: words.len(),
                counterexample: Some((words[j].clone(), w.clone())),
            });
        }
        seen.insert(canonicalize(automaton, w), i);
    }
    Ok(FreeCheck {
        free: true,
        words: words.len(),
        counterexample: None,
    })
}

/// Rejects a torsion bound below 2.
pub fn check_bound(bound: usize) -> Result<()> {
    if bound < 2 {
        return Err(Error::InvalidArgument("torsion bound must be at least 2".into()));
    }
    Ok(())
}
