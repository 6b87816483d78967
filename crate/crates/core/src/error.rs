use thiserror::Error;

/// Errors raised by automaton construction, queries and file parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("automaton must have at least one letter")]
    NoLetters,
    #[error("invalid letter name {name:?}: {reason}")]
    InvalidLetterName { name: String, reason: &'static str },
    #[error("duplicate letter name {0:?}")]
    DuplicateLetter(String),
    #[error("row for letter {letter} has {found} entries, expected {expected}")]
    RowLength {
        letter: usize,
        found: usize,
        expected: usize,
    },
    #[error("state {state} out of range for an automaton with {n} states")]
    StateOutOfRange { state: usize, n: usize },
    #[error("letter index {letter} out of range for an alphabet of {k} letters")]
    LetterOutOfRange { letter: usize, k: usize },
    #[error("unknown letter name {0:?}")]
    UnknownLetter(String),
    #[error("state set has capacity {found}, expected {expected}")]
    CapacityMismatch { found: usize, expected: usize },
    #[error("state set must be nonempty")]
    EmptyStateSet,
    #[error("state set is not closed: state {state} leaves it under letter {letter}")]
    NotClosed { state: usize, letter: usize },
    #[error("partition has {found} entries, expected {expected}")]
    PartitionLength { found: usize, expected: usize },
    #[error("not a congruence: states {p} and {q} share a class but their images under letter {letter} do not")]
    NotCongruence { p: usize, q: usize, letter: usize },
    #[error("{n} states exceed the subset-search capacity of {max}; only the pair test is available")]
    CapacityExceeded { n: usize, max: usize },
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("no predecessor-free state outside the sink among {remaining} remaining states")]
    NoPredecessorFree { remaining: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
