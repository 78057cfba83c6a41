use std::collections::{HashMap, VecDeque};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::semantics::word::{step_tuple, StateWord};

/// Entry of a transition table: emitted letter and successor index, or undefined.
pub type Cell = Option<(u32, u32)>;

/// Minimal machine for a partial function `Σ* → Σ*`, numbered by breadth-first discovery
/// from the initial state (index 0), letters in alphabet order.
///
/// Two machines are equal exactly when they induce the same partial function, so this
/// type doubles as the dedup key for semigroup elements. The everywhere-undefined
/// function is the single state with an empty row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalTransducer {
    table: Vec<Vec<Cell>>,
}

impl CanonicalTransducer {
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn letter_count(&self) -> usize {
        self.table[0].len()
    }

    pub fn row(&self, state: usize) -> &[Cell] {
        &self.table[state]
    }

    pub fn table(&self) -> &[Vec<Cell>] {
        &self.table
    }

    /// One state copying every letter.
    pub fn identity(letters: usize) -> Self {
        CanonicalTransducer {
            table: vec![(0..letters as u32).map(|a| Some((a, 0))).collect()],
        }
    }

    /// The function undefined on every nonempty word.
    pub fn bottom(letters: usize) -> Self {
        CanonicalTransducer {
            table: vec![vec![None; letters]],
        }
    }

    pub fn is_bottom(&self) -> bool {
        self.table.len() == 1 && self.table[0].iter().all(Option::is_none)
    }

    pub fn eval(&self, input: &[usize]) -> Option<Vec<usize>> {
        let mut state = 0usize;
        let mut out = Vec::with_capacity(input.len());
        for &a in input {
            let (b, next) = self.table[state][a]?;
            out.push(b as usize);
            state = next as usize;
        }
        Some(out)
    }

    /// Output on a single letter and the canonical machine of the residual function.
    pub fn residual(&self, letter: usize) -> Option<(usize, CanonicalTransducer)> {
        let (b, next) = self.table[0][letter]?;
        Some((b as usize, self.rerooted(next as usize)))
    }

    fn rerooted(&self, root: usize) -> CanonicalTransducer {
        let raw: Vec<Vec<Option<(usize, usize)>>> = self
            .table
            .iter()
            .map(|row| row.iter().map(|c| c.map(|(b, p)| (b as usize, p as usize))).collect())
            .collect();
        renumber(&raw, &(0..raw.len()).collect::<Vec<_>>(), root)
    }

    /// The function `after ∘ first`: `first` reads the input, `after` reads its output.
    pub fn compose(after: &CanonicalTransducer, first: &CanonicalTransducer) -> CanonicalTransducer {
        let letters = first.letter_count();
        let mut index: HashMap<(u32, u32), usize> = HashMap::new();
        let mut pairs = vec![(0u32, 0u32)];
        index.insert((0, 0), 0);
        let mut raw: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (s2, s1) = pairs[i];
            let mut row = vec![None; letters];
            for (a, cell) in row.iter_mut().enumerate() {
                let Some((b, n1)) = first.table[s1 as usize][a] else {
                    continue;
                };
                let Some((c, n2)) = after.table[s2 as usize][b as usize] else {
                    continue;
                };
                let key = (n2, n1);
                let id = *index.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    pairs.len() - 1
                });
                *cell = Some((c as usize, id));
            }
            raw.push(row);
            i += 1;
        }
        minimize(&raw)
    }
}

/// One row of an unminimized table: `(output, target)` per letter.
pub type RawRow = Vec<Option<(usize, usize)>>;

/// Minimizes a machine whose initial state is 0 by Moore partition refinement. An
/// undefined entry is part of the state signature.
pub fn minimize(raw: &[RawRow]) -> CanonicalTransducer {
    let n = raw.len();
    let mut block: Vec<usize> = vec![0; n];
    let mut count = 0usize;
    loop {
        let mut ids: HashMap<(usize, RawRow), usize> = HashMap::new();
        let mut next = vec![0usize; n];
        for s in 0..n {
            let sig: Vec<Option<(usize, usize)>> = raw[s].iter().map(|c| c.map(|(b, p)| (b, block[p]))).collect();
            let len = ids.len();
            next[s] = *ids.entry((block[s], sig)).or_insert(len);
        }
        let new_count = ids.len();
        block = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    renumber(raw, &block, 0)
}

/// Collapses states by `block` and numbers the quotient by BFS from `root`'s block.
fn renumber(raw: &[Vec<Option<(usize, usize)>>], block: &[usize], root: usize) -> CanonicalTransducer {
    let blocks = block.iter().copied().max().map_or(0, |m| m + 1);
    let mut representative = vec![usize::MAX; blocks];
    for (s, &b) in block.iter().enumerate() {
        if representative[b] == usize::MAX {
            representative[b] = s;
        }
    }
    let mut number = vec![u32::MAX; blocks];
    let mut order = vec![block[root]];
    number[block[root]] = 0;
    let mut queue = VecDeque::from([block[root]]);
    let mut table = Vec::new();
    while let Some(b) = queue.pop_front() {
        let rep = representative[b];
        let row: Vec<Cell> = raw[rep]
            .iter()
            .map(|c| {
                c.map(|(out, p)| {
                    let pb = block[p];
                    if number[pb] == u32::MAX {
                        number[pb] = order.len() as u32;
                        order.push(pb);
                        queue.push_back(pb);
                    }
                    (out as u32, number[pb])
                })
            })
            .collect();
        table.push(row);
    }
    CanonicalTransducer { table }
}

/// Reachable tuple-states of the power automaton from `word`, in BFS order, with the raw
/// transition table over them. Fails once more than `cap` tuples are discovered.
pub fn reachable_tuples(automaton: &Automaton, word: &StateWord, cap: usize) -> Result<(Vec<Vec<usize>>, Vec<RawRow>)> {
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut tuples = vec![word.states().to_vec()];
    index.insert(tuples[0].clone(), 0);
    let mut raw = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        let t = tuples[i].clone();
        let mut row = vec![None; automaton.letter_count()];
        for (a, cell) in row.iter_mut().enumerate() {
            if let Some((b, next)) = step_tuple(automaton, &t, a) {
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if tuples.len() >= cap {
                            return Err(Error::BudgetExceeded(format!(
                                "more than {cap} reachable tuples from {}",
                                word.display(automaton)
                            )));
                        }
                        index.insert(next.clone(), tuples.len());
                        tuples.push(next);
                        tuples.len() - 1
                    }
                };
                *cell = Some((b, id));
            }
        }
        raw.push(row);
        i += 1;
    }
    Ok((tuples, raw))
}

/// Default bound on reachable tuples explored by [`canonicalize`].
pub const TUPLE_CAP: usize = 1 << 20;

/// Canonical machine of `w ∘`, built on the reachable part of the power automaton.
pub fn canonicalize(automaton: &Automaton, word: &StateWord) -> CanonicalTransducer {
    let (_, raw) = reachable_tuples(automaton, word, TUPLE_CAP).expect("tuple budget");
    minimize(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn w(a: &Automaton, s: &str) -> StateWord {
        StateWord::parse(a, s).unwrap()
    }

    #[test]
    fn identity_and_bottom() {
        let a = corpus::get("adding").unwrap();
        assert_eq!(canonicalize(&a, &w(&a, "+0")), CanonicalTransducer::identity(2));
        let b = corpus::get("b2_partial").unwrap();
        let pp = canonicalize(&b, &w(&b, "p p"));
        assert!(pp.is_bottom());
        assert_eq!(pp.size(), 1);
    }

    #[test]
    fn canonical_forms_match_relations() {
        let b = corpus::get("b2_partial").unwrap();
        assert_eq!(canonicalize(&b, &w(&b, "p q p")), canonicalize(&b, &w(&b, "p")));
        assert_ne!(canonicalize(&b, &w(&b, "q p")), canonicalize(&b, &w(&b, "p q")));
        let a = corpus::get("adding").unwrap();
        // +1 needs two states: carrying and copying.
        assert_eq!(canonicalize(&a, &w(&a, "+1")).size(), 2);
    }

    #[test]
    fn compose_agrees_with_tuple_route() {
        let a = corpus::get("adding").unwrap();
        let one = canonicalize(&a, &w(&a, "+1"));
        let two = CanonicalTransducer::compose(&one, &one);
        assert_eq!(two, canonicalize(&a, &w(&a, "+1 +1")));
        let b = corpus::get("b2_partial").unwrap();
        let p = canonicalize(&b, &w(&b, "p"));
        let q = canonicalize(&b, &w(&b, "q"));
        assert_eq!(CanonicalTransducer::compose(&q, &p), canonicalize(&b, &w(&b, "q p")));
    }

    #[test]
    fn residuals() {
        let a = corpus::get("adding").unwrap();
        let one = canonicalize(&a, &w(&a, "+1"));
        let (out, rest) = one.residual(a.letter("1").unwrap()).unwrap();
        assert_eq!(out, a.letter("0").unwrap());
        assert_eq!(rest, one);
        let (_, rest) = one.residual(a.letter("0").unwrap()).unwrap();
        assert_eq!(rest, CanonicalTransducer::identity(2));
    }
}
