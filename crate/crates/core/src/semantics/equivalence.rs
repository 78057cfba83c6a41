use std::collections::{HashMap, VecDeque};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::semantics::word::{step_tuple, StateWord};

/// Verdict of [`equivalent`]. When the functions differ, `witness` is the shortlex-least
/// input word (letters of the left automaton) on which they disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equal: bool,
    pub witness: Option<Vec<usize>>,
}

/// Decides `w1 ∘ = w2 ∘` in one automaton.
pub fn equivalent(automaton: &Automaton, w1: &StateWord, w2: &StateWord) -> Equivalence {
    let letters: Vec<(usize, usize)> = (0..automaton.letter_count()).map(|a| (a, a)).collect();
    let same: Vec<Option<usize>> = (0..automaton.letter_count()).map(Some).collect();
    pair_bfs(automaton, w1, automaton, w2, &letters, &same)
}

/// Decides equality of induced functions across two automata whose alphabets hold the
/// same letter names (in any order).
pub fn equivalent_across(a1: &Automaton, w1: &StateWord, a2: &Automaton, w2: &StateWord) -> Result<Equivalence> {
    let map = a2.letter_map_from(a1)?;
    let letters: Vec<(usize, usize)> = map.iter().enumerate().map(|(i, &j)| (i, j)).collect();
    Ok(pair_bfs(a1, w1, a2, w2, &letters, &output_map(a1, a2)))
}

/// Compares the two functions on inputs drawn from `letters` only (names present in both
/// alphabets). Useful when one automaton extends the alphabet of the other.
pub fn equivalent_on(
    a1: &Automaton,
    w1: &StateWord,
    a2: &Automaton,
    w2: &StateWord,
    letters: &[String],
) -> Result<Equivalence> {
    let pairs = letters
        .iter()
        .map(|name| Ok((a1.letter(name)?, a2.letter(name)?)))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::AlphabetMismatch(e.to_string()))?;
    Ok(pair_bfs(a1, w1, a2, w2, &pairs, &output_map(a1, a2)))
}

/// For every letter of `a2`, the index of the same name in `a1`.
fn output_map(a1: &Automaton, a2: &Automaton) -> Vec<Option<usize>> {
    a2.alphabet().iter().map(|name| a1.letter(name).ok()).collect()
}

type Pair = (Vec<usize>, Vec<usize>);

fn pair_bfs(
    a1: &Automaton,
    w1: &StateWord,
    a2: &Automaton,
    w2: &StateWord,
    letters: &[(usize, usize)],
    out2_in_1: &[Option<usize>],
) -> Equivalence {
    // parent[i] = (parent node, letter index in a1)
    let mut nodes: Vec<Pair> = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = Vec::new();
    let mut seen: HashMap<Pair, usize> = HashMap::new();
    let start = (w1.states().to_vec(), w2.states().to_vec());
    seen.insert(start.clone(), 0);
    nodes.push(start);
    parent.push(None);
    let mut queue = VecDeque::from([0usize]);

    let witness = |node: usize, last: usize, parent: &[Option<(usize, usize)>]| {
        let mut word = vec![last];
        let mut cur = node;
        while let Some((p, a)) = parent[cur] {
            word.push(a);
            cur = p;
        }
        word.reverse();
        word
    };

    while let Some(id) = queue.pop_front() {
        let (t1, t2) = nodes[id].clone();
        for &(l1, l2) in letters {
            let s1 = step_tuple(a1, &t1, l1);
            let s2 = step_tuple(a2, &t2, l2);
            match (s1, s2) {
                (None, None) => {}
                (Some((o1, n1)), Some((o2, n2))) => {
                    if out2_in_1[o2] != Some(o1) {
                        return Equivalence {
                            equal: false,
                            witness: Some(witness(id, l1, &parent)),
                        };
                    }
                    let next = (n1, n2);
                    if !seen.contains_key(&next) {
                        seen.insert(next.clone(), nodes.len());
                        nodes.push(next);
                        parent.push(Some((id, l1)));
                        queue.push_back(nodes.len() - 1);
                    }
                }
                _ => {
                    return Equivalence {
                        equal: false,
                        witness: Some(witness(id, l1, &parent)),
                    };
                }
            }
        }
    }
    Equivalence {
        equal: true,
        witness: None,
    }
}
