//! Error types shared across the library.

use std::fmt;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by geometry transforms, eigensolvers, and placement
/// strategies.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An angle left the open admissible range around boresight. Carries
    /// the offending angle in radians.
    AngleOutOfRange(f64),
    /// Normalization requested over an interval that has collapsed.
    DegenerateRange,
    /// An iterative kernel hit its sweep cap before converging.
    ConvergenceFailure(&'static str),
    /// Eigenvalues of the recursion matrix came back with imaginary parts
    /// beyond tolerance; the scenario is outside the regime where the
    /// spectrum is known to be real.
    NonRealSpectrum { max_imag: f64 },
    /// Two or more positions coincide, collapsing the log-gap objective.
    CoincidentPoints,
    /// The weighting function vanished at an admissible-looking position.
    ZeroWeight,
    /// The external-charge Taylor expansion is undefined (the linear
    /// coefficient b vanished); the placement degenerates to the pure
    /// equilibrium handled by the asymptotic path.
    DegenerateExternalCharge,
    /// No eigenvector candidate produced the expected number of real roots
    /// inside the open unit interval.
    NoValidRootSet,
    /// Polynomial roots carried imaginary parts beyond tolerance.
    ComplexRoots { max_imag: f64 },
    /// The Gram matrix is numerically singular; the high-SNR objective is
    /// undefined.
    SingularGram,
    /// Strategy name not in the dispatch table.
    UnknownStrategy(String),
    /// Scenario parameters violate a structural invariant.
    InvalidConfig(String),
    /// A config file line failed to parse.
    ConfigParse { line: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AngleOutOfRange(a) => {
                write!(f, "angle {a} rad outside the open admissible range (±π/2)")
            }
            Error::DegenerateRange => write!(f, "angular range collapsed (s_max − s_min too small)"),
            Error::ConvergenceFailure(what) => write!(f, "iteration failed to converge: {what}"),
            Error::NonRealSpectrum { max_imag } => {
                write!(f, "recursion matrix has non-real spectrum (max |Im| = {max_imag:e})")
            }
            Error::CoincidentPoints => write!(f, "positions are not strictly increasing"),
            Error::ZeroWeight => write!(f, "weighting function vanished at a position"),
            Error::DegenerateExternalCharge => {
                write!(f, "external charge at infinity (b = 0); use the asymptotic solver")
            }
            Error::NoValidRootSet => {
                write!(f, "no eigenvector yields the required real roots in (0, 1)")
            }
            Error::ComplexRoots { max_imag } => {
                write!(f, "polynomial roots not real (max |Im| = {max_imag:e})")
            }
            Error::SingularGram => write!(f, "Gram matrix singular; high-SNR objective undefined"),
            Error::UnknownStrategy(name) => write!(f, "unknown strategy `{name}`"),
            Error::InvalidConfig(msg) => write!(f, "invalid scenario: {msg}"),
            Error::ConfigParse { line, message } => {
                write!(f, "config parse error at line {line}: {message}")
            }
        }
    }
}

impl std::error::Error for Error {}
