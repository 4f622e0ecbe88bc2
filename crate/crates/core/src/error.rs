use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("negation on non-atom at {pos}")]
    NegationOnNonAtom { pos: usize },

    #[error("unknown atom `{name}` at {pos}")]
    UnknownAtom { name: String, pos: usize },

    #[error("invalid vocabulary: {0}")]
    Vocabulary(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: &'static str, limit: usize },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("transition function is not total at state `{state}`")]
    NonTotal { state: String },

    #[error("nondeterministic transition from `{state}` on `{event}`")]
    Nondeterministic { state: String, event: String },

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown event `{0}`")]
    UnknownEvent(String),

    #[error("undefined transition from `{state}` on `{event}`")]
    UndefinedTransition { state: String, event: String },

    #[error("event `{event}` is controllable in one operand and uncontrollable in the other")]
    ControllabilityConflict { event: String },

    #[error("vocabulary mismatch: {0}")]
    VocabularyMismatch(String),

    #[error("invalid permissiveness schedule: {0}")]
    InvalidSchedule(String),

    #[error("specification cannot be enforced from the initial state (rank {rank} = alpha)")]
    Unenforceable { rank: u32 },

    #[error("event `{event}` observed at step {k} is not in the issued control pattern")]
    IllegalObservation { event: String, k: u64 },

    #[error("supervisor already stopped")]
    Stopped,

    #[error("supervisor issued an empty control pattern at step {k} before acceptance")]
    EmptyPattern { k: u64 },

    #[error("run with seed {seed} did not reach an accepting state within {max_steps} steps")]
    MaxStepsExceeded { seed: u64, max_steps: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
