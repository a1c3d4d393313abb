use thiserror::Error;

/// Errors across the whole pipeline. Checks that *fail* (an inequality that
/// does not hold, a verdict that is not "verified") are not errors; they are
/// ordinary results. Errors are structural: bad input, missing data,
/// divergence, or a budget stop.
#[derive(Debug, Error)]
pub enum Error {
    #[error("letter index {letter} out of range for alphabet with {letters} letters")]
    MalformedWord { letter: usize, letters: usize },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("relator {index} is not freely and cyclically reduced")]
    BadRelator { index: usize },

    #[error("presentation fails the C'(1/6) small-cancellation test: piece \"{piece}\" has length {piece_len} >= |r|/6 = {bound} for a relator of length {relator_len}")]
    SmallCancellationFailed {
        piece: String,
        piece_len: usize,
        relator_len: usize,
        bound: String,
    },

    #[error("completion diverged: exceeded {what} cap ({cap}) after {rules} rules")]
    CompletionDiverged {
        what: &'static str,
        cap: usize,
        rules: usize,
    },

    #[error("no oracle applies: completion diverged and the presentation is not C'(1/6)")]
    OracleUnresolved,

    #[error("operation needs an enumerated table of radius >= {required}, have {have}")]
    RadiusExceeded { required: usize, have: usize },

    #[error("operation needs stored element representatives; re-run enumeration with store_elements")]
    MissingElementStore,

    #[error("memory budget of {budget_mb} MiB exceeded at radius {attempted}; last complete radius is {completed}")]
    MemoryBudget {
        budget_mb: u64,
        attempted: usize,
        completed: usize,
    },

    #[error("series is malformed: {0}")]
    MalformedSeries(String),

    #[error("not enough coefficients: need {need}, have {have} ({context})")]
    InsufficientData {
        need: usize,
        have: usize,
        context: &'static str,
    },

    #[error("no linear recurrence of order <= {max_order} fits the training window (minimal consistent order {found})")]
    NoFit { max_order: usize, found: usize },

    #[error("fit fails held-out verification at n={index}: predicted {predicted}, actual {actual}")]
    Overfit {
        index: usize,
        predicted: String,
        actual: String,
    },

    #[error("denominator has no positive real root; no exponential growth rate to extract")]
    NoPositiveRoot,

    #[error("unknown catalog group \"{0}\"")]
    UnknownGroup(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
