use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::automaton::Automaton;
use crate::semantics::word::{act, format_letters, StateWord};

/// Outcome of [`check_sampled_laws`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub seed: u64,
    pub samples: usize,
    pub violations: Vec<String>,
}

/// Checks length preservation, prefix compatibility and the residual law
/// `w∘(uv) = (w∘u)((w·u)∘v)` on random state words and inputs drawn from `seed`.
pub fn check_sampled_laws(automaton: &Automaton, seed: u64, samples: usize) -> SampleReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let (n, k) = (automaton.state_count(), automaton.letter_count());
    if n == 0 || k == 0 {
        return SampleReport {
            seed,
            samples: 0,
            violations,
        };
    }
    for _ in 0..samples {
        let len = rng.gen_range(1..=4);
        let w = StateWord::new((0..len).map(|_| rng.gen_range(0..n)).collect()).expect("nonempty");
        let input: Vec<usize> = (0..rng.gen_range(0..=8)).map(|_| rng.gen_range(0..k)).collect();
        let split = rng.gen_range(0..=input.len());
        let (u, v) = input.split_at(split);
        let describe = || format!("{} on {:?}", w.display(automaton), format_letters(automaton, &input));

        let whole = act(automaton, &w, &input);
        let head = act(automaton, &w, u);
        if let Some(out) = &whole.output {
            if out.len() != input.len() {
                violations.push(format!("length not preserved: {}", describe()));
            }
            if head.output.as_deref() != Some(&out[..split]) {
                violations.push(format!("prefix incompatible: {}", describe()));
            }
        }
        let composed = head.output.zip(head.residual).and_then(|(mut out, r)| {
            let tail = act(automaton, &r, v).output?;
            out.extend(tail);
            Some(out)
        });
        if composed != whole.output {
            violations.push(format!("residual law fails at split {split}: {}", describe()));
        }
    }
    SampleReport {
        seed,
        samples,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn corpus_satisfies_the_laws() {
        for a in corpus::all() {
            let r = check_sampled_laws(&a, 7, 300);
            assert!(r.violations.is_empty(), "{}: {:?}", a.name(), r.violations);
        }
        let sink = corpus::get("sink").unwrap();
        assert_eq!(check_sampled_laws(&sink, 1, 10).samples, 10);
    }

    #[test]
    fn same_seed_same_report() {
        let a = corpus::get("b2_partial").unwrap();
        assert_eq!(check_sampled_laws(&a, 42, 50), check_sampled_laws(&a, 42, 50));
    }
}
