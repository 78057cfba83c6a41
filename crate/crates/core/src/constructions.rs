//! Automaton-to-automaton constructions: union, composition and powers, inversion,
//! end-marker extension, adjoining a zero, completion through a zero, and zero removal.
//!
//! Copies of states are named deterministically: `q^` for hatted copies, `q̄` (combining
//! macron) for inverse copies, `(q2∘q1)` for composed states.

use std::collections::{HashMap, HashSet};

use crate::automaton::{Automaton, RawAutomaton, Transition, ADJOINED_ZERO, BOTTOM, END_MARKER_SUFFIX, TOP};
use crate::error::{Error, Result};
use crate::explorer;
use crate::semantics::{canonicalize, step_tuple, StateWord};

/// Suffix appended to state names by [`invert`].
pub const INVERSE_SUFFIX: &str = "\u{0304}";
/// Suffix appended to copied states by the hatted constructions.
pub const HAT_SUFFIX: &str = "^";
/// Largest state count [`power`] will build by default.
pub const POWER_STATE_CAP: usize = 1 << 16;

fn hat(name: &str) -> String {
    format!("{name}{HAT_SUFFIX}")
}

/// `(Q1 ∪ Q2, Σ1 ∪ Σ2, δ1 ∪ δ2)`. Letters are identified by name. Clashing state names
/// are prefixed with `L.` / `R.` when `auto_prefix` is set, otherwise rejected.
pub fn union(a1: &Automaton, a2: &Automaton, auto_prefix: bool) -> Result<Automaton> {
    let left: HashSet<&str> = a1.states().iter().map(String::as_str).collect();
    let clashes: HashSet<&str> = a2
        .states()
        .iter()
        .map(String::as_str)
        .filter(|s| left.contains(s))
        .collect();
    if let Some(first) = a2.states().iter().find(|s| clashes.contains(s.as_str())) {
        if !auto_prefix {
            return Err(Error::StateClash(first.clone()));
        }
    }
    let rename = |prefix: &str, name: &str| {
        if clashes.contains(name) {
            format!("{prefix}{name}")
        } else {
            name.to_string()
        }
    };
    let mut raw = RawAutomaton {
        name: format!("{}∪{}", a1.name(), a2.name()),
        ..RawAutomaton::default()
    };
    raw.states.extend(a1.states().iter().map(|s| rename("L.", s)));
    raw.states.extend(a2.states().iter().map(|s| rename("R.", s)));
    raw.alphabet = a1.alphabet().to_vec();
    for a in a2.alphabet() {
        if !raw.alphabet.contains(a) {
            raw.alphabet.push(a.clone());
        }
    }
    for (a, prefix) in [(a1, "L."), (a2, "R.")] {
        for (q, x, y, p) in a.transitions() {
            raw.transitions.push(Transition::new(
                &rename(prefix, a.state_name(q)),
                a.letter_name(x),
                a.letter_name(y),
                &rename(prefix, a.state_name(p)),
            ));
        }
    }
    raw.validate()
}

/// Composition `A2 ∘ A1`: `A1` reads the input, `A2` reads what `A1` wrote.
pub fn compose(a2: &Automaton, a1: &Automaton) -> Result<Automaton> {
    let map = a1.letter_map_from(a2)?; // letter of a2 -> letter of a1
    let mut back = vec![0usize; map.len()];
    for (i, &j) in map.iter().enumerate() {
        back[j] = i;
    }
    let n1 = a1.state_count();
    let name = |q2: usize, q1: usize| format!("({}∘{})", a2.state_name(q2), a1.state_name(q1));
    let mut raw = RawAutomaton {
        name: format!("{}∘{}", a2.name(), a1.name()),
        alphabet: a1.alphabet().to_vec(),
        ..RawAutomaton::default()
    };
    for q2 in 0..a2.state_count() {
        for q1 in 0..n1 {
            raw.states.push(name(q2, q1));
        }
    }
    for q2 in 0..a2.state_count() {
        for q1 in 0..n1 {
            for x in 0..a1.letter_count() {
                let Some(e1) = a1.step(q1, x) else { continue };
                let Some(e2) = a2.step(q2, back[e1.output]) else {
                    continue;
                };
                raw.transitions.push(Transition::new(
                    &name(q2, q1),
                    a1.letter_name(x),
                    a1.letter_name(map[e2.output]),
                    &name(e2.target, e1.target),
                ));
            }
        }
    }
    raw.validate()
}

/// `A^k`, with states `(q_k∘…∘q_1)` ordered lexicographically. `power(A, 1)` is `A`.
pub fn power(automaton: &Automaton, k: usize, state_cap: usize) -> Result<Automaton> {
    if k == 0 {
        return Err(Error::InvalidArgument("power exponent must be at least 1".into()));
    }
    if k == 1 {
        return Ok(automaton.clone());
    }
    let n = automaton.state_count();
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > state_cap as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{n}^{k} states exceed the cap of {state_cap}"
        )));
    }
    let tuples: Vec<Vec<usize>> = (0..total as usize)
        .map(|mut i| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = i % n;
                i /= n;
            }
            t
        })
        .collect();
    let name = |t: &[usize]| {
        let inner: Vec<&str> = t.iter().map(|&q| automaton.state_name(q)).collect();
        format!("({})", inner.join("∘"))
    };
    let mut raw = RawAutomaton {
        name: format!("{}^{k}", automaton.name()),
        states: tuples.iter().map(|t| name(t)).collect(),
        alphabet: automaton.alphabet().to_vec(),
        transitions: Vec::new(),
    };
    for t in &tuples {
        for a in 0..automaton.letter_count() {
            if let Some((b, next)) = step_tuple(automaton, t, a) {
                raw.transitions.push(Transition::new(
                    &name(t),
                    automaton.letter_name(a),
                    automaton.letter_name(b),
                    &name(&next),
                ));
            }
        }
    }
    raw.validate()
}

/// The inverse automaton: a copy `q̄` of every state with inputs and outputs swapped.
pub fn invert(automaton: &Automaton) -> Result<Automaton> {
    if let Some((q, b, a1, a2)) = automaton.invertibility_witness() {
        return Err(Error::NotInvertible {
            state: automaton.state_name(q).to_string(),
            output: automaton.letter_name(b).to_string(),
            first: automaton.letter_name(a1).to_string(),
            second: automaton.letter_name(a2).to_string(),
        });
    }
    let bar = |q: usize| format!("{}{INVERSE_SUFFIX}", automaton.state_name(q));
    let raw = RawAutomaton {
        name: format!("{}_inverse", automaton.name()),
        states: (0..automaton.state_count()).map(bar).collect(),
        alphabet: automaton.alphabet().to_vec(),
        transitions: automaton
            .transitions()
            .map(|(q, a, b, p)| Transition::new(&bar(q), automaton.letter_name(b), automaton.letter_name(a), &bar(p)))
            .collect(),
    };
    raw.validate()
}

/// Doubles the alphabet with end-marker letters `a$` that only label self-loops: every
/// `q -a/b-> p` also yields `q^ -a$/b$-> q^`.
pub fn end_marker_extension(automaton: &Automaton) -> Result<Automaton> {
    if let Some(a) = automaton.alphabet().iter().find(|a| a.ends_with(END_MARKER_SUFFIX)) {
        return Err(Error::ReservedSuffixInUse(a.clone()));
    }
    let marked = |a: usize| format!("{}{END_MARKER_SUFFIX}", automaton.letter_name(a));
    let mut raw = RawAutomaton {
        name: format!("{}_end", automaton.name()),
        states: automaton.states().iter().map(|s| hat(s)).collect(),
        alphabet: automaton.alphabet().to_vec(),
        transitions: Vec::new(),
    };
    raw.alphabet.extend((0..automaton.letter_count()).map(marked));
    for (q, a, b, p) in automaton.transitions() {
        let from = hat(automaton.state_name(q));
        raw.transitions.push(Transition::new(
            &from,
            automaton.letter_name(a),
            automaton.letter_name(b),
            &hat(automaton.state_name(p)),
        ));
        raw.transitions
            .push(Transition::new(&from, &marked(a), &marked(b), &from));
    }
    raw.validate()
}

/// Adds a state `_Z0_` without transitions and a letter `_TOP_` looping at every other
/// state. The generated semigroup is the original one with a zero adjoined.
pub fn adjoin_zero(automaton: &Automaton) -> Result<Automaton> {
    if automaton.alphabet().iter().any(|a| a == TOP) {
        return Err(Error::ReservedSuffixInUse(TOP.into()));
    }
    let mut raw = copy_hatted(automaton, &format!("{}_zero", automaton.name()));
    raw.alphabet.push(TOP.into());
    for q in automaton.states() {
        raw.transitions.push(Transition::new(&hat(q), TOP, TOP, &hat(q)));
    }
    raw.states.push(ADJOINED_ZERO.into());
    raw.validate()
}

fn copy_hatted(automaton: &Automaton, name: &str) -> RawAutomaton {
    RawAutomaton {
        name: name.to_string(),
        states: automaton.states().iter().map(|s| hat(s)).collect(),
        alphabet: automaton.alphabet().to_vec(),
        transitions: automaton
            .transitions()
            .map(|(q, a, b, p)| {
                Transition::new(
                    &hat(automaton.state_name(q)),
                    automaton.letter_name(a),
                    automaton.letter_name(b),
                    &hat(automaton.state_name(p)),
                )
            })
            .collect(),
    }
}

/// Completes an automaton whose state `zero` acts as the zero of the generated semigroup.
/// Undefined transitions emit `_BOT_` and move to the zero copy; every state maps `_BOT_`
/// to `_BOT_` into the zero copy.
///
/// The zero law is checked exactly against the generators (`z g = z = g z` for every state
/// `g`), which suffices because the states generate the semigroup.
pub fn complete_via_zero(automaton: &Automaton, zero: usize) -> Result<Automaton> {
    if automaton.alphabet().iter().any(|a| a == BOTTOM) {
        return Err(Error::ReservedSuffixInUse(BOTTOM.into()));
    }
    if let Err(reason) = explorer::check_zero_word(automaton, &StateWord::single(zero)) {
        return Err(Error::NotAZeroState {
            state: automaton.state_name(zero).to_string(),
            reason,
        });
    }
    let mut raw = copy_hatted(automaton, &format!("{}_complete", automaton.name()));
    raw.alphabet.push(BOTTOM.into());
    let zero_copy = hat(automaton.state_name(zero));
    for q in 0..automaton.state_count() {
        let from = hat(automaton.state_name(q));
        for a in 0..automaton.letter_count() {
            if automaton.step(q, a).is_none() {
                raw.transitions
                    .push(Transition::new(&from, automaton.letter_name(a), BOTTOM, &zero_copy));
            }
        }
        raw.transitions.push(Transition::new(&from, BOTTOM, BOTTOM, &zero_copy));
    }
    raw.validate()
}

/// An automaton generating the same semigroup in which the zero is realized by a single
/// state.
#[derive(Debug, Clone)]
pub struct ZeroState {
    pub automaton: Automaton,
    pub state: usize,
    /// Length of the shortest state word acting as the zero in the input automaton.
    pub length: usize,
}

/// Looks for a zero among elements with witnesses of length at most `max_power`; if found
/// at length `n`, returns `A ∪ A² ∪ … ∪ Aⁿ` and the state of `Aⁿ` realizing it.
pub fn ensure_zero_state(automaton: &Automaton, max_power: usize, cap: usize) -> Result<Option<ZeroState>> {
    if max_power == 0 {
        return Err(Error::InvalidArgument("max_power must be at least 1".into()));
    }
    let Some(zero) = explorer::find_zero(automaton, max_power, cap)? else {
        return Ok(None);
    };
    let n = zero.witness.len();
    if n == 1 {
        return Ok(Some(ZeroState {
            automaton: automaton.clone(),
            state: zero.witness.states()[0],
            length: 1,
        }));
    }
    let mut result = automaton.clone();
    for k in 2..=n {
        result = union(&result, &power(automaton, k, POWER_STATE_CAP)?, false)?;
    }
    let inner: Vec<&str> = zero.witness.states().iter().map(|&q| automaton.state_name(q)).collect();
    let state = result.state(&format!("({})", inner.join("∘")))?;
    let name = format!("{}_powers{n}", automaton.name());
    Ok(Some(ZeroState {
        automaton: result.with_name(&name),
        state,
        length: n,
    }))
}

/// Result of [`remove_zero_states`].
#[derive(Debug, Clone)]
pub struct ZeroRemoval {
    pub automaton: Automaton,
    /// For every remaining state, its index in the input automaton.
    pub kept: Vec<usize>,
    pub removed: Vec<String>,
}

/// Takes the end-marker extension and deletes every state acting as the zero. Transitions
/// into deleted states disappear; end-marker loops keep the last letter observable.
///
/// The zero is searched among elements with witnesses up to length `depth`.
pub fn remove_zero_states(automaton: &Automaton, depth: usize, cap: usize) -> Result<ZeroRemoval> {
    let zero = explorer::find_zero(automaton, depth, cap)?.ok_or(Error::NoZeroFound(depth))?;
    let extended = end_marker_extension(automaton)?;
    let zero_states: Vec<usize> = (0..automaton.state_count())
        .filter(|&q| canonicalize(automaton, &StateWord::single(q)) == zero.key)
        .collect();
    let kept: Vec<usize> = (0..automaton.state_count())
        .filter(|q| !zero_states.contains(q))
        .collect();
    let keep: HashMap<usize, ()> = kept.iter().map(|&q| (q, ())).collect();
    let raw = RawAutomaton {
        name: format!("{}_nozero", automaton.name()),
        states: kept.iter().map(|&q| extended.state_name(q).to_string()).collect(),
        alphabet: extended.alphabet().to_vec(),
        transitions: extended
            .transitions()
            .filter(|(q, _, _, p)| keep.contains_key(q) && keep.contains_key(p))
            .map(|(q, a, b, p)| {
                Transition::new(
                    extended.state_name(q),
                    extended.letter_name(a),
                    extended.letter_name(b),
                    extended.state_name(p),
                )
            })
            .collect(),
    };
    Ok(ZeroRemoval {
        automaton: raw.validate()?,
        kept,
        removed: zero_states
            .iter()
            .map(|&q| automaton.state_name(q).to_string())
            .collect(),
    })
}
