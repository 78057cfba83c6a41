//! Line-based text format for automata.
//!
//! ```text
//! # the adding machine
//! automaton adding
//! alphabet: 0 1
//! state +1:
//!   1 / 0 -> +1
//!   0 / 1 -> +0
//! state +0:
//!   0 / 0 -> +0
//!   1 / 1 -> +0
//! ```
//!
//! `#` starts a comment, blank lines are ignored, and declaration order of states and
//! letters is preserved.

use crate::automaton::{Automaton, RawAutomaton, Transition};
use crate::error::{Error, Result};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses a document without validating it.
pub fn parse_document(text: &str) -> Result<RawAutomaton> {
    let mut raw = RawAutomaton::default();
    let mut have_name = false;
    let mut have_alphabet = false;
    let mut current: Option<String> = None;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("automaton") {
            if !rest.starts_with(char::is_whitespace) {
                return Err(syntax(n, format!("unrecognized line {line:?}")));
            }
            if have_name {
                return Err(syntax(n, "second `automaton` header"));
            }
            let name: Vec<&str> = rest.split_whitespace().collect();
            if name.len() != 1 {
                return Err(syntax(n, "expected `automaton NAME`"));
            }
            raw.name = name[0].to_string();
            have_name = true;
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            if !have_name {
                return Err(syntax(n, "`alphabet:` before `automaton NAME`"));
            }
            if have_alphabet {
                return Err(syntax(n, "second `alphabet:` declaration"));
            }
            raw.alphabet = rest.split_whitespace().map(str::to_string).collect();
            have_alphabet = true;
        } else if let Some(rest) = line.strip_prefix("state ") {
            if !have_alphabet {
                return Err(syntax(n, "state block before `alphabet:`"));
            }
            let name = rest
                .trim()
                .strip_suffix(':')
                .ok_or_else(|| syntax(n, "expected `state NAME:`"))?
                .trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(syntax(n, "expected `state NAME:`"));
            }
            raw.states.push(name.to_string());
            current = Some(name.to_string());
        } else if line.contains("->") {
            let from = current
                .clone()
                .ok_or_else(|| syntax(n, "transition outside a state block"))?;
            let (lhs, to) = line
                .split_once("->")
                .ok_or_else(|| syntax(n, "expected `IN / OUT -> NEXT`"))?;
            let (input, output) = lhs
                .split_once('/')
                .ok_or_else(|| syntax(n, "expected `IN / OUT -> NEXT`"))?;
            let parts = [input.trim(), output.trim(), to.trim()];
            if parts.iter().any(|p| p.is_empty() || p.contains(char::is_whitespace)) {
                return Err(syntax(n, "expected `IN / OUT -> NEXT`"));
            }
            raw.transitions
                .push(Transition::new(&from, parts[0], parts[1], parts[2]));
        } else {
            return Err(syntax(n, format!("unrecognized line {line:?}")));
        }
    }
    if !have_name {
        return Err(syntax(0, "missing `automaton NAME` header"));
    }
    if !have_alphabet {
        return Err(syntax(0, "missing `alphabet:` declaration"));
    }
    Ok(raw)
}

/// Parses and validates.
pub fn parse(text: &str) -> Result<Automaton> {
    parse_document(text)?.validate()
}

/// Prints in the format accepted by [`parse`]; transitions in alphabet order per state.
pub fn print(automaton: &Automaton) -> String {
    let mut s = format!(
        "automaton {}\nalphabet: {}\n",
        automaton.name(),
        automaton.alphabet().join(" ")
    );
    for (q, name) in automaton.states().iter().enumerate() {
        s.push_str(&format!("state {name}:\n"));
        for a in 0..automaton.letter_count() {
            if let Some(e) = automaton.step(q, a) {
                s.push_str(&format!(
                    "  {} / {} -> {}\n",
                    automaton.letter_name(a),
                    automaton.letter_name(e.output),
                    automaton.state_name(e.target)
                ));
            }
        }
    }
    s
}

/// Graphviz description of the automaton.
pub fn to_dot(automaton: &Automaton) -> String {
    use crate::semantics::escape;
    let mut s = format!("digraph \"{}\" {{\n  node [shape=circle];\n", escape(automaton.name()));
    for (q, name) in automaton.states().iter().enumerate() {
        s.push_str(&format!("  s{q} [label=\"{}\"];\n", escape(name)));
    }
    for (q, a, b, p) in automaton.transitions() {
        s.push_str(&format!(
            "  s{q} -> s{p} [label=\"{}/{}\"];\n",
            escape(automaton.letter_name(a)),
            escape(automaton.letter_name(b))
        ));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const ADDING: &str = "\
# adding machine
automaton adding
alphabet: 0 1

state +1:
  1 / 0 -> +1   # carry
  0 / 1 -> +0
state +0:
  0 / 0 -> +0
  1 / 1 -> +0
";

    #[test]
    fn parses_adding_machine() {
        let a = parse(ADDING).unwrap();
        assert_eq!(a.name(), "adding");
        assert_eq!(a.states(), ["+1", "+0"]);
        assert_eq!(a.transition_count(), 4);
        assert_eq!(parse(&print(&a)).unwrap(), a);
    }

    #[test]
    fn missing_alphabet_is_a_syntax_error() {
        let err = parse("automaton x\nstate p:\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
        let err = parse("automaton x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse("automaton x\nalphabet: a\nstate p:\n  a a -> p\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 4,
                message: "expected `IN / OUT -> NEXT`".into()
            }
        );
        let err = parse("automaton x\nalphabet: a\n  a / a -> p\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
        let err = parse("automaton x\nalphabet: a\nbogus\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
    }

    #[test]
    fn validation_errors_pass_through() {
        let err = parse("automaton x\nalphabet: a\nstate p:\n  a / c -> p\n").unwrap_err();
        assert_eq!(err, Error::UnknownSymbol("c".into()));
        let err = parse("automaton x\nalphabet: a b\nstate p:\n  a / a -> p\n  a / b -> p\n").unwrap_err();
        assert!(matches!(err, Error::NondeterministicTransition { .. }));
    }

    #[test]
    fn partial_b2_document() {
        let a = parse("automaton b2\nalphabet: a b\nstate p:\n  b / a -> p\nstate q:\n  a / b -> q\n").unwrap();
        assert!(!a.is_complete());
        assert_eq!(a.transition_count(), 2);
    }
}
