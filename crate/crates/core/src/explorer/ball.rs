use std::collections::{HashMap, HashSet};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::semantics::{canonicalize, CanonicalTransducer, StateWord};

/// Default length bound for ball enumeration.
pub const DEFAULT_MAX_LEN: usize = 8;
/// Default bound on the number of elements.
pub const DEFAULT_CAP: usize = 10_000;
/// Bound on the total number of states over the canonical machines of a ball. Elements
/// of free semigroups need machines exponential in their length, so the element cap alone
/// does not bound memory.
pub const STATE_BUDGET: usize = 1 << 20;

/// A semigroup element: its canonical machine and the shortlex-least state word realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub key: CanonicalTransducer,
    pub witness: StateWord,
}

/// Distinct elements realized by state words of length at most `max_len`, in order of
/// their shortlex witnesses.
#[derive(Debug, Clone)]
pub struct SemigroupBall {
    pub max_len: usize,
    pub elements: Vec<Element>,
    /// `true` when the ball is the whole semigroup.
    pub closed: bool,
    /// Number of elements whose shortest witness has length `k + 1`.
    pub counts_by_length: Vec<usize>,
    generators: Vec<CanonicalTransducer>,
    index: HashMap<CanonicalTransducer, usize>,
}

impl SemigroupBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, key: &CanonicalTransducer) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Canonical machines of the single states, in state order.
    pub fn generators(&self) -> &[CanonicalTransducer] {
        &self.generators
    }

    /// `|B(k)|` for `k = 1..=max_len`.
    pub fn growth(&self) -> Vec<usize> {
        self.counts_by_length
            .iter()
            .scan(0, |total, n| {
                *total += n;
                Some(*total)
            })
            .collect()
    }

    /// The element of `w`, if it lies in the ball.
    pub fn find(&self, automaton: &Automaton, w: &StateWord) -> Option<usize> {
        self.position(&canonicalize(automaton, w))
    }
}

/// Grows a ball one length at a time.
///
/// `frontier` holds every element realized by a word of the current length, each with
/// its lex-least word of that length, sorted by that word. Appending generators on the
/// right in this order meets every element first through its shortlex-least witness.
pub(crate) struct BallBuilder {
    pub ball: SemigroupBall,
    frontier: Vec<(CanonicalTransducer, StateWord)>,
    cap: usize,
    level: usize,
    states: usize,
}

impl BallBuilder {
    pub fn new(automaton: &Automaton, cap: usize) -> Self {
        let generators: Vec<CanonicalTransducer> = (0..automaton.state_count())
            .map(|q| canonicalize(automaton, &StateWord::single(q)))
            .collect();
        BallBuilder {
            ball: SemigroupBall {
                max_len: 0,
                elements: Vec::new(),
                closed: automaton.state_count() == 0,
                counts_by_length: Vec::new(),
                generators,
                index: HashMap::new(),
            },
            frontier: Vec::new(),
            cap,
            level: 0,
            states: 0,
        }
    }

    fn insert(&mut self, key: &CanonicalTransducer, witness: &StateWord) -> Result<bool> {
        if self.ball.index.contains_key(key) {
            return Ok(false);
        }
        if self.ball.elements.len() >= self.cap {
            return Err(Error::BudgetExceeded(format!(
                "more than {} elements within length {}",
                self.cap, self.level
            )));
        }
        self.states += key.size();
        if self.states > STATE_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "canonical machines of the elements within length {} exceed {STATE_BUDGET} states",
                self.level
            )));
        }
        self.ball.index.insert(key.clone(), self.ball.elements.len());
        self.ball.elements.push(Element {
            key: key.clone(),
            witness: witness.clone(),
        });
        Ok(true)
    }

    /// Adds the elements of the next length; returns how many were new.
    pub fn grow(&mut self) -> Result<usize> {
        self.level += 1;
        let before = self.ball.elements.len();
        let frontier = std::mem::take(&mut self.frontier);
        let generators = self.ball.generators.clone();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        let mut visit = |this: &mut Self, k: CanonicalTransducer, w: StateWord| -> Result<()> {
            if seen.insert(k.clone()) {
                this.insert(&k, &w)?;
                next.push((k, w));
            }
            Ok(())
        };
        if self.level == 1 {
            for (q, k) in generators.into_iter().enumerate() {
                visit(self, k, StateWord::single(q))?;
            }
        } else {
            for (k, w) in &frontier {
                for (g, gk) in generators.iter().enumerate() {
                    visit(
                        self,
                        CanonicalTransducer::compose(k, gk),
                        w.concat(&StateWord::single(g)),
                    )?;
                }
            }
        }
        self.frontier = next;
        let new = self.ball.elements.len() - before;
        self.ball.max_len = self.level;
        self.ball.counts_by_length.push(new);
        if new == 0 {
            self.ball.closed = true;
        }
        Ok(new)
    }

    /// Whether right multiplication by generators stays inside the ball. A ball that
    /// contains the generators and passes this test is the whole semigroup.
    pub fn check_closed(&mut self) -> bool {
        if !self.ball.closed {
            let ball = &self.ball;
            let closed = ball.elements.iter().all(|e| {
                ball.generators
                    .iter()
                    .all(|g| ball.index.contains_key(&CanonicalTransducer::compose(&e.key, g)))
            });
            self.ball.closed = closed;
        }
        self.ball.closed
    }
}

/// Enumerates the ball of radius `max_len` in the semigroup generated by the states.
pub fn enumerate_ball(automaton: &Automaton, max_len: usize, cap: usize) -> Result<SemigroupBall> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    let mut builder = BallBuilder::new(automaton, cap);
    while builder.level < max_len && !builder.ball.closed {
        builder.grow()?;
    }
    builder.check_closed();
    let mut ball = builder.ball;
    ball.counts_by_length.resize(max_len, 0);
    ball.max_len = max_len;
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semantics::{all_words, equivalent};

    #[test]
    fn b2_has_five_elements() {
        let b = corpus::get("b2_partial").unwrap();
        let ball = enumerate_ball(&b, 8, 100).unwrap();
        assert!(ball.closed);
        let witnesses: Vec<String> = ball.elements.iter().map(|e| e.witness.display(&b)).collect();
        assert_eq!(witnesses, ["p", "q", "p p", "p q", "q p"]);
        assert_eq!(ball.growth()[..3], [2, 5, 5]);
    }

    #[test]
    fn adding_machine_is_infinite() {
        let a = corpus::get("adding").unwrap();
        let ball = enumerate_ball(&a, 5, 1000).unwrap();
        assert!(!ball.closed);
        // +0 is the identity, so +1^k +0^j realizes +1^k: the ball holds +0, +1, ..., +1^5
        assert_eq!(ball.len(), 6);
        assert_eq!(ball.growth(), [2, 3, 4, 5, 6]);
    }

    #[test]
    fn free_semigroup_counts() {
        let f = corpus::get("free3").unwrap();
        let ball = enumerate_ball(&f, 3, 1000).unwrap();
        assert_eq!(ball.growth(), [3, 12, 39]);
        assert!(matches!(enumerate_ball(&f, 5, 50), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn witnesses_are_shortlex_least() {
        for name in ["b2_partial", "adding", "left_zero", "b2_complete"] {
            let a = corpus::get(name).unwrap();
            let ball = enumerate_ball(&a, 4, 1000).unwrap();
            let words = all_words(&a, 4, 1000).unwrap();
            for e in &ball.elements {
                let first = words.iter().find(|w| equivalent(&a, w, &e.witness).equal).unwrap();
                assert_eq!(first, &e.witness, "{name}");
            }
        }
    }
}
