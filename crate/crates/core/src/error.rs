use thiserror::Error;

/// Errors produced by the library. Undefinedness of a partial function is never an error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("duplicate state {0:?}")]
    DuplicateState(String),
    #[error("duplicate letter {0:?}")]
    DuplicateLetter(String),
    #[error("nondeterministic transition: state {state:?} has two transitions reading {letter:?}")]
    NondeterministicTransition { state: String, letter: String },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("state name {0:?} occurs in both automata")]
    StateClash(String),
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not invertible: state {state:?} outputs {output:?} on both {first:?} and {second:?}")]
    NotInvertible {
        state: String,
        output: String,
        first: String,
        second: String,
    },
    #[error("reserved name {0:?} already in use")]
    ReservedSuffixInUse(String),
    #[error("state {state:?} does not act as a zero: {reason}")]
    NotAZeroState { state: String, reason: String },
    #[error("no zero element found within length {0}")]
    NoZeroFound(usize),
    #[error("ball is not closed")]
    NotClosed,
    #[error("no inverse supplied for state {0:?}")]
    MissingInverse(String),
    #[error("restricted automaton is not invertible: state {state:?} outputs {output:?} on {first:?} and {second:?}")]
    RestrictionNotInvertible {
        state: String,
        output: String,
        first: String,
        second: String,
    },
    #[error("undefined cell at row {row}, column {column}")]
    UndefinedCell { row: usize, column: usize },
    #[error("state words must be nonempty")]
    EmptyWord,
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
