//! The `asg` command line.
//!
//! State words are written with whitespace-separated state names in display order: in
//! `"q p"` the state `p` reads the input first.

use std::ffi::OsString;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::automaton::Automaton;
use crate::constructions::{self, POWER_STATE_CAP};
use crate::error::{Error, Result};
use crate::explorer::{self, CertificateOutcome, SemigroupBall, DEFAULT_CAP, DEFAULT_MAX_LEN};
use crate::inverse::{self, PvOptions, Status, Verdict};
use crate::report::{Budget, Report};
use crate::semantics::{
    act, check_equiv_consistency, check_sampled_laws, equivalent, format_letters, parse_input, render_cross_diagram,
    StateWord, TUPLE_CAP,
};
use crate::{corpus, format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "asg",
    version,
    about = "Explore semigroups generated by letter-to-letter automata"
)]
pub struct Cli {
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Length bound on state words
    #[arg(long, global = true, value_name = "N")]
    max_len: Option<usize>,
    /// Length bound on input words (bounded checks) or zero search
    #[arg(long, global = true, value_name = "N")]
    depth: Option<usize>,
    /// Element budget
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Seed for sampled property checks
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// File path, or the name of a built-in example (optionally prefixed with `examples/`)
    #[arg(long, short = 'a')]
    automaton: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate; optionally run semantic self-checks
    Validate {
        #[command(flatten)]
        src: Source,
        /// Cross-check the three equality routes on all words up to --max-len (default 3)
        #[arg(long)]
        consistency: bool,
        /// Number of random samples when --seed is given
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Sizes and basic properties
    Info {
        #[command(flatten)]
        src: Source,
    },
    /// Apply a state word to an input word
    Eval {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: String,
        #[arg(long)]
        input: String,
    },
    /// Decide whether two state words act identically (exit 1 if not)
    Equal {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Enumerate elements up to --max-len
    Ball {
        #[command(flatten)]
        src: Source,
    },
    /// Cayley table of a finite semigroup
    Table {
        #[command(flatten)]
        src: Source,
    },
    /// Cumulative element counts per length
    Growth {
        #[command(flatten)]
        src: Source,
    },
    /// Zero, identity and idempotents
    Special {
        #[command(flatten)]
        src: Source,
    },
    /// Index and period of a state word
    Torsion {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
    /// Images of an input word under the ball
    Orbit {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        input: String,
    },
    /// Check that distinct state words up to --max-len (default 4) act differently
    FreeCheck {
        #[command(flatten)]
        src: Source,
    },
    /// Classes of the residuals of a state word
    Closure {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: String,
    },
    /// Automaton on the state closure of a power of a word
    Dual {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Torsion certificate for a word whose closure is a single class
    CertifyTorsion {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: String,
    },
    /// Union with another automaton
    Union {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        other: String,
        /// Prefix clashing state names with L. and R.
        #[arg(long)]
        prefix: bool,
    },
    /// Composition: --first reads the input, --automaton reads its output
    Compose {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        first: String,
    },
    /// k-th power
    Power {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        k: usize,
    },
    /// Inverse automaton
    Invert {
        #[command(flatten)]
        src: Source,
    },
    /// End-marker extension
    Endmark {
        #[command(flatten)]
        src: Source,
    },
    /// Adjoin a zero
    AdjoinZero {
        #[command(flatten)]
        src: Source,
    },
    /// Make the zero a single state (searches up to --max-len, default 4)
    EnsureZero {
        #[command(flatten)]
        src: Source,
    },
    /// Complete through a zero state
    Complete {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        zero: String,
    },
    /// Remove states acting as the zero (searches up to --depth, default 8)
    RemoveZero {
        #[command(flatten)]
        src: Source,
    },
    /// Shortlex-least inverse of a word (searches up to --max-len, default 4)
    InverseOf {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: String,
    },
    /// Decide whether every element has a unique inverse
    CheckInverse {
        #[command(flatten)]
        src: Source,
        /// Use the semigroup generated together with the inverse automaton
        #[arg(long)]
        with_inverse: bool,
    },
    /// Restrict to an invertible automaton using inverse witnesses
    PvRestrict {
        #[command(flatten)]
        src: Source,
        /// Inverse witnesses, e.g. `p=q,q=p`
        #[arg(long)]
        inverses: String,
    },
    /// Verify a restriction (built from --inverses unless --restricted is given)
    PvVerify {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        inverses: String,
        #[arg(long)]
        restricted: Option<String>,
        /// Also check that residuals of inverses are inverses of the targets
        #[arg(long)]
        deep: bool,
    },
    /// Distinctness of the free inverse monoid normal forms
    FreeInverseCheck {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        generator: String,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// List the built-in examples or print one
    Examples { name: Option<String> },
    /// Draw the cross diagram of state words on an input
    Crossdiagram {
        #[command(flatten)]
        src: Source,
        /// One row group per occurrence; the first acts first
        #[arg(long, required = true)]
        word: Vec<String>,
        #[arg(long)]
        input: String,
        #[arg(long)]
        dot: bool,
    },
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    report: Report,
    text: String,
    code: i32,
}

impl Output {
    fn ok(report: Report, text: String) -> Self {
        Output {
            report,
            text,
            code: EXIT_OK,
        }
    }

    fn check(report: Report, text: String, passed: bool) -> Self {
        Output {
            report,
            text,
            code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
        }
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::Syntax { .. }
        | Error::InvalidToken(_)
        | Error::DuplicateState(_)
        | Error::DuplicateLetter(_)
        | Error::NondeterministicTransition { .. }
        | Error::UnknownSymbol(_)
        | Error::AlphabetMismatch(_)
        | Error::StateClash(_)
        | Error::ReservedSuffixInUse(_)
        | Error::MissingInverse(_)
        | Error::EmptyWord
        | Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

/// Loads a file, or a built-in example by name.
pub fn load_automaton(spec: &str) -> Result<Automaton> {
    let path = Path::new(spec);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {spec}: {e}")))?;
        return format::parse(&text);
    }
    let name = spec.strip_prefix("examples/").unwrap_or(spec);
    let name = name.strip_suffix(".aut").unwrap_or(name);
    corpus::get(name).ok_or_else(|| Error::InvalidArgument(format!("no file or built-in example named {spec:?}")))
}

/// Parses arguments and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => Outcome {
            code: out.code,
            stdout: if cli.json { out.report.to_json() } else { out.text },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn words(automaton: &Automaton, ball: &SemigroupBall) -> Vec<String> {
    ball.elements.iter().map(|e| e.witness.display(automaton)).collect()
}

fn automaton_output(command: &str, inputs: &[&Automaton], result: &Automaton) -> Output {
    let mut report = Report::new(command);
    for a in inputs {
        report = report.automaton(a);
    }
    report.result = json!({
        "name": result.name(),
        "states": result.states(),
        "alphabet": result.alphabet(),
        "transitions": result.transition_count(),
        "complete": result.is_complete(),
        "invertible": result.is_invertible(),
        "text": format::print(result),
    });
    Output::ok(report, format::print(result))
}

fn execute(cli: &Cli) -> Result<Output> {
    let max_len = |default: usize| cli.max_len.unwrap_or(default);
    let cap = cli.cap.unwrap_or(DEFAULT_CAP);
    match &cli.command {
        Command::Validate {
            src,
            consistency,
            samples,
        } => {
            let a = load_automaton(&src.automaton)?;
            let mut report = Report::new("validate").automaton(&a);
            let mut text = format!(
                "{}: valid, {} states, {} letters, {} transitions\n",
                a.name(),
                a.state_count(),
                a.letter_count(),
                a.transition_count()
            );
            let mut passed = true;
            let mut result = serde_json::Map::new();
            result.insert("valid".into(), json!(true));
            if let Some(seed) = cli.seed {
                let r = check_sampled_laws(&a, seed, *samples);
                text.push_str(&format!(
                    "sampled laws: {} samples, {} violations\n",
                    r.samples,
                    r.violations.len()
                ));
                for v in &r.violations {
                    text.push_str(&format!("  {v}\n"));
                }
                passed &= r.violations.is_empty();
                report = report.param("seed", seed).param("samples", samples);
                result.insert("sampled".into(), serde_json::to_value(&r).unwrap_or(Value::Null));
            }
            if *consistency {
                let len = max_len(3);
                let r = check_equiv_consistency(&a, len)?;
                text.push_str(&format!(
                    "consistency up to length {len}: {} words, {} classes, {} mismatches\n",
                    r.words,
                    r.classes,
                    r.mismatches.len()
                ));
                passed &= r.consistent();
                report = report.param("max_len", len);
                result.insert("consistency".into(), serde_json::to_value(&r).unwrap_or(Value::Null));
            }
            report.result = Value::Object(result);
            Ok(Output::check(report, text, passed))
        }
        Command::Info { src } => {
            let a = load_automaton(&src.automaton)?;
            let mut report = Report::new("info").automaton(&a);
            report.result = json!({
                "name": a.name(),
                "states": a.states(),
                "alphabet": a.alphabet(),
                "transitions": a.transition_count(),
                "complete": a.is_complete(),
                "invertible": a.is_invertible(),
            });
            let text = format!(
                "name: {}\nstates: {}\nalphabet: {}\ntransitions: {}\ncomplete: {}\ninvertible: {}\n",
                a.name(),
                a.states().join(" "),
                a.alphabet().join(" "),
                a.transition_count(),
                a.is_complete(),
                a.is_invertible()
            );
            Ok(Output::ok(report, text))
        }
        Command::Eval { src, word, input } => {
            let a = load_automaton(&src.automaton)?;
            let w = StateWord::parse(&a, word)?;
            let u = parse_input(&a, input)?;
            let r = act(&a, &w, &u);
            let output = r.output.as_ref().map(|o| format_letters(&a, o));
            let residual = r.residual.as_ref().map(|s| s.display(&a));
            let mut report = Report::new("eval")
                .automaton(&a)
                .param("word", word)
                .param("input", input);
            report.result = json!({"defined": r.is_defined(), "output": output, "residual": residual});
            let text = match (&output, &residual) {
                (Some(o), Some(s)) => format!("{o}\nresidual: {s}\n"),
                _ => "undefined\n".to_string(),
            };
            Ok(Output::check(report, text, r.is_defined()))
        }
        Command::Equal { src, left, right } => {
            let a = load_automaton(&src.automaton)?;
            let (l, r) = (StateWord::parse(&a, left)?, StateWord::parse(&a, right)?);
            let eq = equivalent(&a, &l, &r);
            let witness = eq.witness.as_ref().map(|u| format_letters(&a, u));
            let mut report = Report::new("equal")
                .automaton(&a)
                .param("left", left)
                .param("right", right);
            report.result = json!({"equal": eq.equal, "witness": witness});
            let text = match &witness {
                None => "equal\n".to_string(),
                Some(u) => format!("different, first on input {u:?}\n"),
            };
            Ok(Output::check(report, text, eq.equal))
        }
        Command::Ball { src } => {
            let a = load_automaton(&src.automaton)?;
            let len = max_len(DEFAULT_MAX_LEN);
            let ball = explorer::enumerate_ball(&a, len, cap)?;
            Ok(ball_output("ball", &a, &ball, len, cap))
        }
        Command::Table { src } => {
            let a = load_automaton(&src.automaton)?;
            let len = max_len(DEFAULT_MAX_LEN);
            let ball = explorer::enumerate_ball(&a, len, cap)?;
            let t = explorer::multiplication_table(&ball)?;
            let names = words(&a, &ball);
            let mut report = Report::new("table")
                .automaton(&a)
                .param("max_len", len)
                .param("cap", cap);
            report.budget.closed = Some(true);
            report.result = json!({
                "order": t.order,
                "elements": names,
                "table": t.table,
                "associative": t.is_associative(),
            });
            let width = t.order.saturating_sub(1).to_string().len();
            let mut text: String = names
                .iter()
                .enumerate()
                .map(|(i, n)| format!("{i:>width$}: {n}\n"))
                .collect();
            text.push('\n');
            text.push_str(&format!("{:width$} |", ""));
            for j in 0..t.order {
                text.push_str(&format!(" {j:>width$}"));
            }
            text.push('\n');
            for i in 0..t.order {
                text.push_str(&format!("{i:>width$} |"));
                for j in 0..t.order {
                    text.push_str(&format!(" {:>width$}", t.product(i, j)));
                }
                text.push('\n');
            }
            Ok(Output::ok(report, text))
        }
        Command::Growth { src } => {
            let a = load_automaton(&src.automaton)?;
            let len = max_len(DEFAULT_MAX_LEN);
            let ball = explorer::enumerate_ball(&a, len, cap)?;
            let growth = ball.growth();
            let mut report = Report::new("growth")
                .automaton(&a)
                .param("max_len", len)
                .param("cap", cap);
            report.budget = budget(&ball);
            report.result = json!({"growth": growth, "counts_by_length": ball.counts_by_length});
            let text = growth.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n";
            Ok(Output::ok(report, text))
        }
        Command::Special { src } => {
            let a = load_automaton(&src.automaton)?;
            let len = max_len(DEFAULT_MAX_LEN);
            let ball = explorer::enumerate_ball(&a, len, cap)?;
            let s = explorer::find_special_elements(&ball);
            let name = |i: usize| ball.elements[i].witness.display(&a);
            let mut report = Report::new("special")
                .automaton(&a)
                .param("max_len", len)
                .param("cap", cap);
            report.budget = budget(&ball);
            let idempotents: Vec<String> = s.idempotents.iter().map(|&i| name(i)).collect();
            report.result = json!({
                "zero": s.zero.map(name),
                "identity": s.identity.map(name),
                "idempotents": idempotents,
                "bounded": s.bounded,
            });
            let text = format!(
                "zero: {}\nidentity: {}\nidempotents: {}\n{}",
                s.zero.map(name).unwrap_or_else(|| "none".into()),
                s.identity.map(name).unwrap_or_else(|| "none".into()),
                idempotents.join(", "),
                if s.bounded {
                    "(ball not closed; results cover the ball only)\n"
                } else {
                    ""
                }
            );
            Ok(Output::ok(report, text))
        }
        Command::Torsion { src, word, bound } => {
            let a = load_automaton(&src.automaton)?;
            explorer::check_bound(*bound)?;
            let w = StateWord::parse(&a, word)?;
            let t = explorer::torsion_order(&a, &w, *bound);
            let mut report = Report::new("torsion")
                .automaton(&a)
                .param("word", word)
                .param("bound", bound);
            report.budget.bounded = t.is_none();
            report.result = json!({"found": t.is_some(), "index": t.map(|t| t.index), "period": t.map(|t| t.period)});
            let text = match t {
                Some(t) => format!("index {} period {}\n", t.index, t.period),
                None => format!("no repetition among the first {bound} powers\n"),
            };
            Ok(Output::check(report, text, t.is_some()))
        }
        Command::Orbit { src, input } => {
            let a = load_automaton(&src.automaton)?;
            let len = max_len(DEFAULT_MAX_LEN);
            let u = parse_input(&a, input)?;
            let o = explorer::orbit(&a, &u, len, cap)?;
            let list: Vec<String> = o.words.iter().map(|w| display_input(&a, w)).collect();
            let mut report = Report::new("orbit")
                .automaton(&a)
                .param("input", input)
                .param("max_len", len);
            report.budget = Budget {
                closed: Some(o.closed),
                bounded: !o.closed,
            };
            report.result = json!({"size": list.len(), "words": list});
            Ok(Output::ok(report, list.join("\n") + "\n"))
        }
        Command::FreeCheck { src } => {
            let a = load_automaton(&src.automaton)?;
            let len = max_len(4);
            let r = explorer::check_free_up_to(&a, len, cap)?;
            let pair = r
                .counterexample
                .as_ref()
                .map(|(x, y)| vec![x.display(&a), y.display(&a)]);
            let mut report = Report::new("free-check").automaton(&a).param("max_len", len);
            report.budget.bounded = true;
            report.result = json!({"free": r.free, "words": r.words, "counterexample": pair});
            let text = match &pair {
                None => format!("no coincidences among {} words up to length {len}\n", r.words),
                Some(p) => format!("not free: {:?} = {:?}\n", p[0], p[1]),
            };
            Ok(Output::check(report, text, r.free))
        }
        Command::Closure { src, word } => {
            let a = load_automaton(&src.automaton)?;
            let w = StateWord::parse(&a, word)?;
            let members = explorer::state_closure(&a, &w, cap.max(TUPLE_CAP))?;
            let list: Vec<String> = members.iter().map(|m| m.representative.display(&a)).collect();
            let mut report = Report::new("closure").automaton(&a).param("word", word);
            report.budget.closed = Some(true);
            report.result = json!({"size": list.len(), "members": list});
            Ok(Output::ok(report, list.join("\n") + "\n"))
        }
        Command::Dual { src, word, power, dot } => {
            let a = load_automaton(&src.automaton)?;
            let w = StateWord::parse(&a, word)?;
            let d = explorer::dual_automaton(&a, &w, *power, cap.max(TUPLE_CAP))?;
            let mut out = automaton_output("dual", &[&a], &d.automaton);
            out.report = out.report.param("word", word).param("power", power);
            if *dot {
                out.text = format::to_dot(&d.automaton);
                if let Value::Object(m) = &mut out.report.result {
                    m.insert("dot".into(), json!(out.text));
                }
            }
            Ok(out)
        }
        Command::CertifyTorsion { src, word } => {
            let a = load_automaton(&src.automaton)?;
            let w = StateWord::parse(&a, word)?;
            let outcome = explorer::torsion_certificate(&a, &w, cap.max(TUPLE_CAP))?;
            let mut report = Report::new("certify-torsion").automaton(&a).param("word", word);
            let (text, passed) = match &outcome {
                CertificateOutcome::Certified(c) => {
                    report.result = json!({
                        "certified": true,
                        "bound": c.bound,
                        "index": c.torsion.index,
                        "period": c.torsion.period,
                    });
                    (
                        format!(
                            "certified: closure is the class of {word}; index {} period {} (bound {})\n",
                            c.torsion.index, c.torsion.period, c.bound
                        ),
                        true,
                    )
                }
                CertificateOutcome::Inapplicable { closure_size, other } => {
                    report.result = json!({
                        "certified": false,
                        "closure_size": closure_size,
                        "other": other.display(&a),
                    });
                    (
                        format!(
                            "inapplicable: closure has {closure_size} classes, including {}\n",
                            other.display(&a)
                        ),
                        false,
                    )
                }
            };
            Ok(Output::check(report, text, passed))
        }
        Command::Union { src, other, prefix } => {
            let (a, b) = (load_automaton(&src.automaton)?, load_automaton(other)?);
            Ok(automaton_output(
                "union",
                &[&a, &b],
                &constructions::union(&a, &b, *prefix)?,
            ))
        }
        Command::Compose { src, first } => {
            let (a2, a1) = (load_automaton(&src.automaton)?, load_automaton(first)?);
            Ok(automaton_output(
                "compose",
                &[&a2, &a1],
                &constructions::compose(&a2, &a1)?,
            ))
        }
        Command::Power { src, k } => {
            let a = load_automaton(&src.automaton)?;
            let mut out = automaton_output("power", &[&a], &constructions::power(&a, *k, POWER_STATE_CAP)?);
            out.report = out.report.param("k", k);
            Ok(out)
        }
        Command::Invert { src } => {
            let a = load_automaton(&src.automaton)?;
            Ok(automaton_output("invert", &[&a], &constructions::invert(&a)?))
        }
        Command::Endmark { src } => {
            let a = load_automaton(&src.automaton)?;
            Ok(automaton_output(
                "endmark",
                &[&a],
                &constructions::end_marker_extension(&a)?,
            ))
        }
        Command::AdjoinZero { src } => {
            let a = load_automaton(&src.automaton)?;
            Ok(automaton_output("adjoin-zero", &[&a], &constructions::adjoin_zero(&a)?))
        }
        Command::EnsureZero { src } => {
            let a = load_automaton(&src.automaton)?;
            let len = max_len(4);
            match constructions::ensure_zero_state(&a, len, cap)? {
                Some(z) => {
                    let mut out = automaton_output("ensure-zero", &[&a], &z.automaton);
                    out.report = out.report.param("max_len", len);
                    if let Value::Object(m) = &mut out.report.result {
                        m.insert("zero_state".into(), json!(z.automaton.state_name(z.state)));
                        m.insert("zero_length".into(), json!(z.length));
                    }
                    out.text = format!("# zero state: {}\n{}", z.automaton.state_name(z.state), out.text);
                    Ok(out)
                }
                None => {
                    let mut report = Report::new("ensure-zero").automaton(&a).param("max_len", len);
                    report.budget.bounded = true;
                    report.result = json!({"zero_state": null});
                    Ok(Output::check(
                        report,
                        format!("no zero realized by words up to length {len}\n"),
                        false,
                    ))
                }
            }
        }
        Command::Complete { src, zero } => {
            let a = load_automaton(&src.automaton)?;
            let z = a.state(zero)?;
            let mut out = automaton_output("complete", &[&a], &constructions::complete_via_zero(&a, z)?);
            out.report = out.report.param("zero", zero);
            Ok(out)
        }
        Command::RemoveZero { src } => {
            let a = load_automaton(&src.automaton)?;
            let depth = cli.depth.unwrap_or(DEFAULT_MAX_LEN);
            let r = constructions::remove_zero_states(&a, depth, cap)?;
            let mut out = automaton_output("remove-zero", &[&a], &r.automaton);
            out.report = out.report.param("depth", depth);
            if let Value::Object(m) = &mut out.report.result {
                m.insert("removed".into(), json!(r.removed));
            }
            Ok(out)
        }
        Command::InverseOf { src, word } => {
            let a = load_automaton(&src.automaton)?;
            let w = StateWord::parse(&a, word)?;
            let len = max_len(4);
            let found = inverse::find_inverse(&a, &w, len, cap)?;
            let inv = found.as_ref().map(|p| p.inverse.display(&a));
            let mut report = Report::new("inverse-of")
                .automaton(&a)
                .param("word", word)
                .param("max_len", len);
            report.budget.bounded = found.is_none();
            report.result = json!({"found": found.is_some(), "inverse": inv, "verified_exact": found.is_some()});
            let text = match &inv {
                Some(v) => format!("{v}\n"),
                None => format!("no inverse among words up to length {len}\n"),
            };
            Ok(Output::check(report, text, found.is_some()))
        }
        Command::CheckInverse { src, with_inverse } => {
            let a = load_automaton(&src.automaton)?;
            let len = max_len(DEFAULT_MAX_LEN);
            let (gen, ball) = if *with_inverse {
                inverse::inverse_semigroup_ball(&a, len, cap)?
            } else {
                (a.clone(), explorer::enumerate_ball(&a, len, cap)?)
            };
            let r = inverse::is_inverse_semigroup(&ball);
            let name = |i: usize| ball.elements[i].witness.display(&gen);
            let inverses: Vec<String> = r.inverses.iter().map(|&i| name(i)).collect();
            let mut report = Report::new("check-inverse")
                .automaton(&a)
                .param("max_len", len)
                .param("with_inverse", with_inverse);
            report.budget = budget(&ball);
            report.result = json!({
                "verdict": r.verdict,
                "element": r.element.map(name),
                "inverses": inverses,
                "detail": r.detail,
                "element_count": ball.len(),
            });
            let verdict = match r.verdict {
                Verdict::Yes => "yes",
                Verdict::No => "no",
                Verdict::Unknown => "unknown",
            };
            let mut text = format!("{verdict}: {}\n", r.detail);
            if let Some(x) = r.element {
                text.push_str(&format!("element: {}\n", name(x)));
            }
            if !inverses.is_empty() {
                text.push_str(&format!("inverses: {}\n", inverses.join(", ")));
            }
            Ok(Output::check(report, text, r.verdict == Verdict::Yes))
        }
        Command::PvRestrict { src, inverses } => {
            let a = load_automaton(&src.automaton)?;
            let inv = inverse::parse_inverses(&a, inverses)?;
            let mut out = automaton_output("pv-restrict", &[&a], &inverse::preston_vagner_restrict(&a, &inv)?);
            out.report = out.report.param("inverses", inverses);
            Ok(out)
        }
        Command::PvVerify {
            src,
            inverses,
            restricted,
            deep,
        } => {
            let a = load_automaton(&src.automaton)?;
            let inv = inverse::parse_inverses(&a, inverses)?;
            let r = match restricted {
                Some(spec) => load_automaton(spec)?,
                None => inverse::preston_vagner_restrict(&a, &inv)?,
            };
            let options = PvOptions {
                max_len: max_len(DEFAULT_MAX_LEN),
                depth: cli.depth.unwrap_or(6),
                cap,
                deep: *deep,
            };
            let v = inverse::verify_preston_vagner(&a, &r, &inv, &options)?;
            let mut report = Report::new("pv-verify")
                .automaton(&a)
                .automaton(&r)
                .param("inverses", inverses)
                .param("max_len", options.max_len)
                .param("depth", options.depth)
                .param("deep", deep);
            report.budget.bounded = true;
            report.result = serde_json::to_value(&v).unwrap_or(Value::Null);
            let line = |name: &str, c: &inverse::Check| {
                let s = match c.status {
                    Status::Passed => "passed",
                    Status::Failed => "FAILED",
                    Status::Inconclusive => "inconclusive",
                };
                format!("{name}: {s} ({})\n", c.detail)
            };
            let mut text =
                line("invertible", &v.invertible) + &line("domains", &v.domains) + &line("isomorphism", &v.isomorphism);
            if let Some(c) = &v.residual_inverses {
                text.push_str(&line("residual inverses", c));
            }
            Ok(Output::check(report, text, v.passed()))
        }
        Command::FreeInverseCheck { src, generator, bound } => {
            let a = load_automaton(&src.automaton)?;
            let g = a.state(generator)?;
            let r = inverse::check_free_inverse(&a, g, *bound)?;
            let mut report = Report::new("free-inverse-check")
                .automaton(&a)
                .param("generator", generator)
                .param("bound", bound);
            report.budget.bounded = true;
            report.result = json!({"triples": r.triples.len(), "collisions": r.collisions});
            let mut text = format!("{} triples, {} collisions\n", r.triples.len(), r.collisions.len());
            for (x, y) in &r.collisions {
                text.push_str(&format!("  {x:?} = {y:?}\n"));
            }
            Ok(Output::check(report, text, r.collisions.is_empty()))
        }
        Command::Examples { name } => match name {
            None => {
                let mut report = Report::new("examples");
                let list: Vec<Value> = corpus::ENTRIES
                    .iter()
                    .map(|(n, d, _)| json!({"name": n, "description": d}))
                    .collect();
                report.result = json!(list);
                let text: String = corpus::ENTRIES
                    .iter()
                    .map(|(n, d, _)| format!("{n:16} {d}\n"))
                    .collect();
                Ok(Output::ok(report, text))
            }
            Some(n) => {
                let a = load_automaton(n)?;
                Ok(automaton_output("examples", &[], &a))
            }
        },
        Command::Crossdiagram { src, word, input, dot } => {
            let a = load_automaton(&src.automaton)?;
            let rows = word
                .iter()
                .map(|w| StateWord::parse(&a, w))
                .collect::<Result<Vec<_>>>()?;
            let u = parse_input(&a, input)?;
            let d = render_cross_diagram(&a, &rows, &u)?;
            let text = if *dot { d.to_dot(&a) } else { d.render(&a) };
            let mut report = Report::new("crossdiagram")
                .automaton(&a)
                .param("words", word)
                .param("input", input);
            let residual: Vec<&str> = d.final_states().iter().map(|&q| a.state_name(q)).collect();
            report.result = json!({
                "output": display_input(&a, &d.output()),
                "rows": d.rows.iter().map(|&q| a.state_name(q)).collect::<Vec<_>>(),
                "final_states": residual,
                "diagram": text,
            });
            Ok(Output::ok(report, text))
        }
    }
}

fn budget(ball: &SemigroupBall) -> Budget {
    Budget {
        closed: Some(ball.closed),
        bounded: !ball.closed,
    }
}

fn display_input(a: &Automaton, w: &[usize]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        format_letters(a, w)
    }
}

fn ball_output(command: &str, a: &Automaton, ball: &SemigroupBall, len: usize, cap: usize) -> Output {
    let names = words(a, ball);
    let mut report = Report::new(command)
        .automaton(a)
        .param("max_len", len)
        .param("cap", cap);
    report.budget = budget(ball);
    report.result = json!({
        "element_count": ball.len(),
        "closed": ball.closed,
        "elements": names,
        "counts_by_length": ball.counts_by_length,
    });
    let mut text = format!(
        "{} elements{}\n",
        ball.len(),
        if ball.closed { " (closed)" } else { " (not closed)" }
    );
    for n in &names {
        text.push_str(n);
        text.push('\n');
    }
    Output::ok(report, text)
}
