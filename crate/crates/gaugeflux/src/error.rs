use std::fmt;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while evaluating fields, integrating or
/// validating a decomposition.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An evaluator could not produce a value at the given event.
    #[error("{quantity} cannot be evaluated at {at}: {reason}")]
    Evaluation {
        quantity: &'static str,
        at: Event,
        reason: String,
    },
    /// A model is singular at the requested point (e.g. the axis of a flux line).
    #[error("singular point at {at}: {reason}")]
    SingularPoint { at: Event, reason: String },
    /// Adaptive integration ran out of refinement budget.
    #[error("tolerance not met: best estimate {estimate} with error {error:.3e} (target {target:.3e})")]
    ToleranceNotMet {
        estimate: f64,
        error: f64,
        target: f64,
    },
    /// The field difference does not vanish at the observation event.
    #[error("field at observation point: {field} = {value:.3e} at {at}")]
    FieldAtObservation {
        field: &'static str,
        value: f64,
        at: Event,
    },
    /// A gauge-fixing function cannot be constructed or fails its independence check.
    #[error("decomposition unsupported: {0}")]
    DecompositionUnsupported(String),
    /// Malformed inputs (non-finite coordinates, bad parameters, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Tabulated grid problems (parse errors, out-of-range lookups).
    #[error("grid: {0}")]
    Grid(String),
}

/// A spacetime event, used in diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event(pub [f64; 3]);

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, t] = self.0;
        write!(f, "(x={x}, y={y}, t={t})")
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::DecompositionUnsupported(msg.into())
    }
}
