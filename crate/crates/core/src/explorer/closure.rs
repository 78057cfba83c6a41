//! State closures `w · Σ*`, the finite automata they induce, and the torsion certificate
//! for elements whose closure is a single class.
//!
//! The general argument behind the certificate maps the dual automata `T_i` through a
//! nearly injective homomorphism γ into a finite set, so two of them share an image and a
//! power of `w` repeats. Here γ is the identity on the closure, which only applies when
//! every residual of `w` is equivalent to `w` itself; searching for other γ is out of scope.

use std::collections::HashMap;

use crate::automaton::{Automaton, RawAutomaton, Transition};
use crate::error::{Error, Result};
use crate::explorer::elements::{torsion_order, Torsion};
use crate::semantics::{canonicalize, reachable_tuples, CanonicalTransducer, StateWord};

/// One class of a state closure with the first residual (in breadth-first order) in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureMember {
    pub key: CanonicalTransducer,
    pub representative: StateWord,
}

/// Classes of `{ w·u : u ∈ Σ*, defined }`, in breadth-first order of their residuals.
pub fn state_closure(automaton: &Automaton, w: &StateWord, cap: usize) -> Result<Vec<ClosureMember>> {
    let (tuples, _) = reachable_tuples(automaton, w, cap)?;
    let mut members: Vec<ClosureMember> = Vec::new();
    for t in tuples {
        let word = StateWord::new(t)?;
        let key = canonicalize(automaton, &word);
        if !members.iter().any(|m| m.key == key) {
            members.push(ClosureMember {
                key,
                representative: word,
            });
        }
    }
    Ok(members)
}

/// The finite automaton on the classes of a state closure, with `r -a/(r∘a)-> r·a`.
#[derive(Debug, Clone)]
pub struct DualAutomaton {
    pub automaton: Automaton,
    pub members: Vec<ClosureMember>,
}

/// Builds the automaton on `state_closure(w^i)`. States are named by their representative
/// residuals with factors joined by `·`.
pub fn dual_automaton(automaton: &Automaton, w: &StateWord, i: usize, cap: usize) -> Result<DualAutomaton> {
    if i == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let members = state_closure(automaton, &w.pow(i), cap)?;
    let index: HashMap<&CanonicalTransducer, usize> = members.iter().enumerate().map(|(k, m)| (&m.key, k)).collect();
    let names: Vec<String> = members
        .iter()
        .map(|m| {
            let parts: Vec<&str> = m
                .representative
                .states()
                .iter()
                .map(|&q| automaton.state_name(q))
                .collect();
            parts.join("·")
        })
        .collect();
    let mut raw = RawAutomaton {
        name: format!("dual{i}"),
        states: names.clone(),
        alphabet: automaton.alphabet().to_vec(),
        transitions: Vec::new(),
    };
    for (k, m) in members.iter().enumerate() {
        for a in 0..automaton.letter_count() {
            if let Some((b, next)) = m.key.residual(a) {
                let target = index[&next];
                raw.transitions.push(Transition::new(
                    &names[k],
                    automaton.letter_name(a),
                    automaton.letter_name(b),
                    &names[target],
                ));
            }
        }
    }
    Ok(DualAutomaton {
        automaton: raw.validate()?,
        members,
    })
}

/// Proof that `w` has torsion: its closure is the single class of `w`, so every dual
/// automaton has one state, there are at most `(|Σ|+1)^|Σ|` of them, and two powers of
/// `w` coincide within `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionCertificate {
    pub bound: usize,
    pub torsion: Torsion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateOutcome {
    Certified(TorsionCertificate),
    /// The closure holds a class other than that of `w`; `other` represents it.
    Inapplicable {
        closure_size: usize,
        other: StateWord,
    },
}

/// Number of one-state machines over `letters` letters plus one, saturated at `cap`.
pub fn certificate_bound(letters: usize, cap: usize) -> usize {
    let machines = (letters as u64 + 1).checked_pow(letters as u32).unwrap_or(u64::MAX);
    machines.saturating_add(1).min(cap as u64).max(2) as usize
}

pub fn torsion_certificate(automaton: &Automaton, w: &StateWord, cap: usize) -> Result<CertificateOutcome> {
    let closure = state_closure(automaton, w, cap)?;
    let own = canonicalize(automaton, w);
    if let Some(m) = closure.iter().find(|m| m.key != own) {
        return Ok(CertificateOutcome::Inapplicable {
            closure_size: closure.len(),
            other: m.representative.clone(),
        });
    }
    let bound = certificate_bound(automaton.letter_count(), cap);
    let torsion = torsion_order(automaton, w, bound)
        .ok_or_else(|| Error::BudgetExceeded(format!("no repeated power within {bound}; raise the cap")))?;
    Ok(CertificateOutcome::Certified(TorsionCertificate { bound, torsion }))
}
