use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::semantics::canonical::canonicalize;
use crate::semantics::equivalence::equivalent;
use crate::semantics::word::{act, step_tuple, StateWord};

/// Largest number of state words [`check_equiv_consistency`] will compare pairwise.
pub const CONSISTENCY_WORD_BUDGET: usize = 4096;
/// Largest number of input words in one truncated function table.
pub const TABLE_BUDGET: usize = 1 << 18;

/// All state words of length `1..=max_len` in shortlex order.
pub fn all_words(automaton: &Automaton, max_len: usize, budget: usize) -> Result<Vec<StateWord>> {
    let n = automaton.state_count();
    let mut out = Vec::new();
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for q in 0..n {
                let mut v = w.clone();
                v.push(q);
                next.push(v);
            }
        }
        if out.len() + next.len() > budget {
            return Err(Error::BudgetExceeded(format!(
                "more than {budget} state words up to length {max_len}"
            )));
        }
        out.extend(next.iter().map(|v| StateWord::new(v.clone()).unwrap()));
        level = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub left: String,
    pub right: String,
    pub pair_bfs: bool,
    pub canonical: bool,
    pub tables: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub max_len: usize,
    pub words: usize,
    pub pairs: usize,
    pub classes: usize,
    pub max_table_depth: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Cross-checks three routes to element equality on every pair of state words up to
/// `max_len`: pair BFS, canonical machines, and brute-force function tables truncated at a
/// depth past which no disagreement can first appear.
pub fn check_equiv_consistency(automaton: &Automaton, max_len: usize) -> Result<ConsistencyReport> {
    let words = all_words(automaton, max_len, CONSISTENCY_WORD_BUDGET)?;
    let keys: Vec<_> = words.iter().map(|w| canonicalize(automaton, w)).collect();
    let classes = keys.iter().collect::<HashSet<_>>().len();
    let mut tables: HashMap<(usize, usize), Vec<Option<Vec<usize>>>> = HashMap::new();
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    let mut max_table_depth = 0;
    for i in 0..words.len() {
        for j in (i + 1)..words.len() {
            pairs += 1;
            let by_bfs = equivalent(automaton, &words[i], &words[j]).equal;
            let by_key = keys[i] == keys[j];
            let depth = product_depth(automaton, &words[i], &words[j]) + 1;
            max_table_depth = max_table_depth.max(depth);
            for k in [i, j] {
                if let std::collections::hash_map::Entry::Vacant(e) = tables.entry((k, depth)) {
                    e.insert(truncated_table(automaton, &words[k], depth)?);
                }
            }
            let by_table = tables[&(i, depth)] == tables[&(j, depth)];
            if by_bfs != by_key || by_key != by_table {
                mismatches.push(Mismatch {
                    left: words[i].display(automaton),
                    right: words[j].display(automaton),
                    pair_bfs: by_bfs,
                    canonical: by_key,
                    tables: by_table,
                });
            }
        }
    }
    Ok(ConsistencyReport {
        max_len,
        words: words.len(),
        pairs,
        classes,
        max_table_depth,
        mismatches,
    })
}

/// Eccentricity of the start pair in the synchronous product, following only letters on
/// which both sides are defined. Any disagreement shows up on a word at most one longer.
pub fn product_depth(automaton: &Automaton, w1: &StateWord, w2: &StateWord) -> usize {
    let start = (w1.states().to_vec(), w2.states().to_vec());
    let mut depth: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    let mut max = 0;
    while let Some(node) = queue.pop_front() {
        let d = depth[&node];
        max = max.max(d);
        for a in 0..automaton.letter_count() {
            if let (Some((_, n1)), Some((_, n2))) =
                (step_tuple(automaton, &node.0, a), step_tuple(automaton, &node.1, a))
            {
                let next = (n1, n2);
                if !depth.contains_key(&next) {
                    depth.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    max
}

/// `w ∘ u` for every input `u` of length `1..=depth`, in shortlex order of `u`.
pub fn truncated_table(automaton: &Automaton, word: &StateWord, depth: usize) -> Result<Vec<Option<Vec<usize>>>> {
    let k = automaton.letter_count();
    let mut total = 0usize;
    let mut level = 1usize;
    for _ in 0..depth {
        level = level.saturating_mul(k);
        total = total.saturating_add(level);
    }
    if total > TABLE_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "truncated table of depth {depth} over {k} letters"
        )));
    }
    let mut out = Vec::with_capacity(total);
    let mut inputs: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(inputs.len() * k);
        for u in &inputs {
            for a in 0..k {
                let mut v = u.clone();
                v.push(a);
                out.push(act(automaton, word, &v).output);
                next.push(v);
            }
        }
        inputs = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn class_counts() {
        let a = corpus::get("adding").unwrap();
        let r = check_equiv_consistency(&a, 3).unwrap();
        assert!(r.consistent());
        assert_eq!(r.classes, 4);
        assert_eq!(r.words, 14);

        let b = corpus::get("b2_partial").unwrap();
        let r = check_equiv_consistency(&b, 3).unwrap();
        assert!(r.consistent());
        assert_eq!(r.classes, 5);

        let f = corpus::get("free3").unwrap();
        let r = check_equiv_consistency(&f, 2).unwrap();
        assert!(r.consistent());
        assert_eq!(r.classes, 12);
    }

    #[test]
    fn word_budget() {
        let f = corpus::get("free3").unwrap();
        assert!(matches!(all_words(&f, 9, 100), Err(Error::BudgetExceeded(_))));
    }
}
