//! Inverse elements and inverse semigroups: the semigroup generated by an invertible
//! automaton together with its inverse, uniqueness of inverses, the Preston–Vagner style
//! restriction turning an automaton whose semigroup is inverse into an invertible one, and
//! the distinctness check for the free inverse monoid on one generator.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::automaton::{Automaton, RawAutomaton, Transition};
use crate::constructions::{invert, union, INVERSE_SUFFIX};
use crate::error::{Error, Result};
use crate::explorer::{enumerate_ball, multiplication_table, SemigroupBall};
use crate::semantics::{act, all_words, canonicalize, equivalent, format_letters, CanonicalTransducer, StateWord};

/// Suffix of the copied states built by [`preston_vagner_restrict`].
pub const RESTRICTED_SUFFIX: &str = "'";

/// `A ∪ Ā`: the automaton whose semigroup is the inverse semigroup generated by `A`.
pub fn with_inverse(automaton: &Automaton) -> Result<Automaton> {
    union(automaton, &invert(automaton)?, false)
}

/// Ball of the semigroup generated by `A ∪ Ā`, together with that automaton (the ball's
/// witnesses refer to its states).
pub fn inverse_semigroup_ball(automaton: &Automaton, max_len: usize, cap: usize) -> Result<(Automaton, SemigroupBall)> {
    let both = with_inverse(automaton)?;
    let ball = enumerate_ball(&both, max_len, cap)?;
    Ok((both, ball))
}

/// `v` with `w v w = w` and `v w v = v`, both checked by pair-BFS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversePair {
    pub element: StateWord,
    pub inverse: StateWord,
    pub verified_exact: bool,
}

pub fn is_inverse_of(automaton: &Automaton, w: &StateWord, v: &StateWord) -> bool {
    equivalent(automaton, &w.concat(v).concat(w), w).equal && equivalent(automaton, &v.concat(w).concat(v), v).equal
}

/// Searches state words up to `max_len` in shortlex order for an inverse of `w`.
pub fn find_inverse(
    automaton: &Automaton,
    w: &StateWord,
    max_len: usize,
    budget: usize,
) -> Result<Option<InversePair>> {
    Ok(all_words(automaton, max_len, budget)?
        .into_iter()
        .find(|v| is_inverse_of(automaton, w, v))
        .map(|v| InversePair {
            element: w.clone(),
            inverse: v,
            verified_exact: true,
        }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Outcome of [`is_inverse_semigroup`]. `element` and `inverses` locate the violation
/// (or, for an unknown verdict, an element without an inverse inside the ball).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseCheck {
    pub verdict: Verdict,
    pub element: Option<usize>,
    pub inverses: Vec<usize>,
    pub detail: String,
}

/// Ball indices `y` with `x y x = x` and `y x y = y`.
pub fn inverses_in_ball(ball: &SemigroupBall, x: usize) -> Vec<usize> {
    let kx = &ball.elements[x].key;
    (0..ball.len())
        .filter(|&y| {
            let ky = &ball.elements[y].key;
            let xy = CanonicalTransducer::compose(kx, ky);
            let yx = CanonicalTransducer::compose(ky, kx);
            &CanonicalTransducer::compose(&xy, kx) == kx && &CanonicalTransducer::compose(&yx, ky) == ky
        })
        .collect()
}

/// Every element has exactly one inverse. Exact on closed balls; on open balls only a
/// second inverse is conclusive.
pub fn is_inverse_semigroup(ball: &SemigroupBall) -> InverseCheck {
    let all: Vec<Vec<usize>> = (0..ball.len()).map(|x| inverses_in_ball(ball, x)).collect();
    if let Some(x) = all.iter().position(|v| v.len() > 1) {
        return InverseCheck {
            verdict: Verdict::No,
            element: Some(x),
            inverses: all[x].clone(),
            detail: format!("element {x} has {} inverses", all[x].len()),
        };
    }
    match all.iter().position(Vec::is_empty) {
        Some(x) if ball.closed => InverseCheck {
            verdict: Verdict::No,
            element: Some(x),
            inverses: Vec::new(),
            detail: format!("element {x} has no inverse"),
        },
        Some(x) => InverseCheck {
            verdict: Verdict::Unknown,
            element: Some(x),
            inverses: Vec::new(),
            detail: format!("no inverse of element {x} within the ball"),
        },
        None if ball.closed => InverseCheck {
            verdict: Verdict::Yes,
            element: None,
            inverses: Vec::new(),
            detail: "every element has exactly one inverse".into(),
        },
        None => InverseCheck {
            verdict: Verdict::Unknown,
            element: None,
            inverses: Vec::new(),
            detail: "inverses are unique within the ball, which is not closed".into(),
        },
    }
}

/// Letters in `q̄ ∘ Σ`.
fn first_letters(automaton: &Automaton, inverse: &StateWord) -> HashSet<usize> {
    (0..automaton.letter_count())
        .filter_map(|c| act(automaton, inverse, &[c]).output.map(|o| o[0]))
        .collect()
}

/// Keeps `q' -a/b-> p'` for each `q -a/b-> p` with `a ∈ q̄ ∘ Σ`, where `q̄` is the given
/// inverse of `q`. Fails unless the result is invertible.
pub fn preston_vagner_restrict(automaton: &Automaton, inverses: &HashMap<usize, StateWord>) -> Result<Automaton> {
    let allowed = (0..automaton.state_count())
        .map(|q| {
            inverses
                .get(&q)
                .map(|v| first_letters(automaton, v))
                .ok_or_else(|| Error::MissingInverse(automaton.state_name(q).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let prime = |q: usize| format!("{}{RESTRICTED_SUFFIX}", automaton.state_name(q));
    let raw = RawAutomaton {
        name: format!("{}_pv", automaton.name()),
        states: (0..automaton.state_count()).map(prime).collect(),
        alphabet: automaton.alphabet().to_vec(),
        transitions: automaton
            .transitions()
            .filter(|&(q, a, _, _)| allowed[q].contains(&a))
            .map(|(q, a, b, p)| {
                Transition::new(&prime(q), automaton.letter_name(a), automaton.letter_name(b), &prime(p))
            })
            .collect(),
    };
    let restricted = raw.validate()?;
    if let Some((q, b, a1, a2)) = restricted.invertibility_witness() {
        return Err(Error::RestrictionNotInvertible {
            state: restricted.state_name(q).to_string(),
            output: restricted.letter_name(b).to_string(),
            first: restricted.letter_name(a1).to_string(),
            second: restricted.letter_name(a2).to_string(),
        });
    }
    Ok(restricted)
}

/// Parses `q=WORD,q=WORD` into inverse witnesses.
pub fn parse_inverses(automaton: &Automaton, text: &str) -> Result<HashMap<usize, StateWord>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (q, w) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected q=WORD, got {pair:?}")))?;
            Ok((automaton.state(q.trim())?, StateWord::parse(automaton, w)?))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn passed(detail: impl Into<String>) -> Self {
        Check {
            status: Status::Passed,
            detail: detail.into(),
        }
    }

    fn failed(detail: impl Into<String>) -> Self {
        Check {
            status: Status::Failed,
            detail: detail.into(),
        }
    }
}

/// Checks on a restricted automaton `A'` against the original `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PvReport {
    /// `A'` is invertible.
    pub invertible: Check,
    /// `dom(q'∘) = q̄∘Σ*` on words up to `depth`, and `q'` agrees with `q` there.
    pub domains: Check,
    /// The inverse semigroup of `A'` has the same Cayley table as the semigroup of `A`.
    pub isomorphism: Check,
    /// For every kept `q' -a/b-> p'`: `q̄·b` acts as `p̄`.
    pub residual_inverses: Option<Check>,
    pub depth: usize,
}

impl PvReport {
    pub fn passed(&self) -> bool {
        let checks = [&self.invertible, &self.domains, &self.isomorphism];
        checks.iter().all(|c| c.status == Status::Passed)
            && self
                .residual_inverses
                .as_ref()
                .is_none_or(|c| c.status == Status::Passed)
    }
}

/// Options for [`verify_preston_vagner`].
#[derive(Debug, Clone, Copy)]
pub struct PvOptions {
    pub max_len: usize,
    pub depth: usize,
    pub cap: usize,
    pub deep: bool,
}

impl Default for PvOptions {
    fn default() -> Self {
        PvOptions {
            max_len: 8,
            depth: 6,
            cap: 10_000,
            deep: false,
        }
    }
}

fn words_of_length(letters: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = letters.checked_pow(len as u32).unwrap_or(0);
    (0..total).map(move |mut i| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = i % letters;
            i /= letters;
        }
        w
    })
}

fn check_domains(
    automaton: &Automaton,
    restricted: &Automaton,
    inverses: &HashMap<usize, StateWord>,
    depth: usize,
) -> Result<Check> {
    let letter_map = restricted.letter_map_from(automaton)?;
    for q in 0..automaton.state_count() {
        let name = format!("{}{RESTRICTED_SUFFIX}", automaton.state_name(q));
        let Ok(q2) = restricted.state(&name) else {
            return Ok(Check::failed(format!("{name} missing from the restricted automaton")));
        };
        let inv = inverses
            .get(&q)
            .ok_or_else(|| Error::MissingInverse(automaton.state_name(q).to_string()))?;
        let q_word = StateWord::single(q);
        let q2_word = StateWord::single(q2);
        for len in 1..=depth {
            let image: HashSet<Vec<usize>> = words_of_length(automaton.letter_count(), len)
                .filter_map(|v| act(automaton, inv, &v).output)
                .collect();
            for u in words_of_length(automaton.letter_count(), len) {
                let mapped: Vec<usize> = u.iter().map(|&a| letter_map[a]).collect();
                let restricted_out = act(restricted, &q2_word, &mapped).output;
                let text = format_letters(automaton, &u);
                match (restricted_out, image.contains(&u)) {
                    (Some(_), false) => {
                        return Ok(Check::failed(format!(
                            "{name} is defined on {text:?} outside the image of the inverse"
                        )))
                    }
                    (None, true) => {
                        return Ok(Check::failed(format!(
                            "{name} is undefined on {text:?} in the image of the inverse"
                        )))
                    }
                    (Some(out), true) => {
                        let original = act(automaton, &q_word, &u).output;
                        let original: Option<Vec<usize>> = original.map(|o| o.iter().map(|&b| letter_map[b]).collect());
                        if original.as_ref() != Some(&out) {
                            return Ok(Check::failed(format!("{name} and its original differ on {text:?}")));
                        }
                    }
                    (None, false) => {}
                }
            }
        }
    }
    Ok(Check::passed(format!(
        "domains agree on all words up to length {depth}"
    )))
}

fn check_isomorphism(automaton: &Automaton, restricted: &Automaton, options: &PvOptions) -> Result<Check> {
    let original = enumerate_ball(automaton, options.max_len, options.cap)?;
    let (_, inverse_ball) = inverse_semigroup_ball(restricted, options.max_len, options.cap)?;
    if !original.closed || !inverse_ball.closed {
        return Ok(Check {
            status: Status::Inconclusive,
            detail: format!(
                "balls of radius {} are not both closed ({} and {} elements)",
                options.max_len,
                original.len(),
                inverse_ball.len()
            ),
        });
    }
    let t1 = multiplication_table(&original)?;
    let t2 = multiplication_table(&inverse_ball)?;
    Ok(match t1.isomorphism_to(&t2) {
        Some(_) => Check::passed(format!("isomorphic tables of order {}", t1.order)),
        None => Check::failed(format!(
            "tables of orders {} and {} are not isomorphic",
            t1.order, t2.order
        )),
    })
}

fn check_residual_inverses(
    automaton: &Automaton,
    restricted: &Automaton,
    inverses: &HashMap<usize, StateWord>,
) -> Result<Check> {
    for (q2, a, b, p2) in restricted.transitions() {
        let q = automaton.state(restricted.state_name(q2).trim_end_matches(RESTRICTED_SUFFIX))?;
        let p = automaton.state(restricted.state_name(p2).trim_end_matches(RESTRICTED_SUFFIX))?;
        let b_orig = automaton.letter(restricted.letter_name(b))?;
        let inv_q = inverses
            .get(&q)
            .ok_or_else(|| Error::MissingInverse(automaton.state_name(q).into()))?;
        let inv_p = inverses
            .get(&p)
            .ok_or_else(|| Error::MissingInverse(automaton.state_name(p).into()))?;
        let label = format!(
            "{} -{}/{}->",
            restricted.state_name(q2),
            restricted.letter_name(a),
            restricted.letter_name(b)
        );
        match act(automaton, inv_q, &[b_orig]).residual {
            None => {
                return Ok(Check::failed(format!(
                    "{label}: the inverse of the source is undefined on the output"
                )))
            }
            Some(r) if !equivalent(automaton, &r, inv_p).equal => {
                return Ok(Check::failed(format!(
                    "{label}: residual {} is not the inverse of the target",
                    r.display(automaton)
                )))
            }
            Some(_) => {}
        }
    }
    Ok(Check::passed("every kept transition maps inverses to inverses"))
}

pub fn verify_preston_vagner(
    automaton: &Automaton,
    restricted: &Automaton,
    inverses: &HashMap<usize, StateWord>,
    options: &PvOptions,
) -> Result<PvReport> {
    let invertible = match restricted.invertibility_witness() {
        None => Check::passed("invertible"),
        Some((q, b, a1, a2)) => Check::failed(format!(
            "{} writes {} on both {} and {}",
            restricted.state_name(q),
            restricted.letter_name(b),
            restricted.letter_name(a1),
            restricted.letter_name(a2)
        )),
    };
    let domains = check_domains(automaton, restricted, inverses, options.depth)?;
    let isomorphism = if invertible.status == Status::Passed {
        check_isomorphism(automaton, restricted, options)?
    } else {
        Check {
            status: Status::Inconclusive,
            detail: "restricted automaton is not invertible".into(),
        }
    };
    let residual_inverses = if options.deep {
        Some(check_residual_inverses(automaton, restricted, inverses)?)
    } else {
        None
    };
    Ok(PvReport {
        invertible,
        domains,
        isomorphism,
        residual_inverses,
        depth: options.depth,
    })
}

/// `(m, n, k)` with `0 <= m, n` and `-m <= k <= n`.
pub type Triple = (usize, usize, i64);

/// Outcome of [`check_free_inverse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeInverseReport {
    pub triples: Vec<Triple>,
    /// Pairs of distinct triples whose words act identically.
    pub collisions: Vec<(Triple, Triple)>,
}

/// Admissible triples with `m, n <= bound`, in lexicographic order.
pub fn admissible_triples(bound: usize) -> Vec<Triple> {
    let mut v = Vec::new();
    for m in 0..=bound {
        for n in 0..=bound {
            for k in -(m as i64)..=n as i64 {
                v.push((m, n, k));
            }
        }
    }
    v
}

/// The word `g^(n-k) ḡ^(m+n) g^m` in the automaton `A ∪ Ā` (rightmost factor acts first);
/// `None` for the empty word.
pub fn triple_word(g: usize, g_bar: usize, (m, n, k): Triple) -> Option<StateWord> {
    let mut states = vec![g; (n as i64 - k) as usize];
    states.extend(std::iter::repeat_n(g_bar, m + n));
    states.extend(std::iter::repeat_n(g, m));
    StateWord::new(states).ok()
}

/// Checks that distinct admissible triples give distinct elements of the inverse monoid
/// generated by `generator`. The empty word is the identity.
pub fn check_free_inverse(automaton: &Automaton, generator: usize, bound: usize) -> Result<FreeInverseReport> {
    let both = with_inverse(automaton)?;
    let g = both.state(automaton.state_name(generator))?;
    let g_bar = both.state(&format!("{}{INVERSE_SUFFIX}", automaton.state_name(generator)))?;
    let triples = admissible_triples(bound);
    let mut classes: BTreeMap<CanonicalTransducer, Vec<Triple>> = BTreeMap::new();
    for &t in &triples {
        let key = match triple_word(g, g_bar, t) {
            Some(w) => canonicalize(&both, &w),
            None => CanonicalTransducer::identity(both.letter_count()),
        };
        classes.entry(key).or_default().push(t);
    }
    let mut collisions: Vec<(Triple, Triple)> = classes
        .values()
        .flat_map(|ts| {
            ts.iter()
                .enumerate()
                .flat_map(move |(i, &a)| ts[i + 1..].iter().map(move |&b| (a, b)))
        })
        .collect();
    collisions.sort();
    Ok(FreeInverseReport { triples, collisions })
}
