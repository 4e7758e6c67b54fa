use core::fmt;

/// Errors reported by the numeric pipeline.
///
/// Every variant corresponds to a violated precondition of a specific
/// operation, not to an internal fault; callers can match on them to decide
/// whether an input is simply outside an operation's domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `normalize_scale` needs a nonzero second Tschirnhausen coefficient.
    DegenerateScale,
    /// The square-free decomposition is numerically ambiguous at the
    /// requested tolerance; multiplicity structure cannot be trusted.
    IllConditioned,
    /// The polynomial does not have all roots real.
    NotHyperbolic,
    /// A curve failed hyperbolicity certification at some parameter value.
    NotHyperbolicOnDomain { t: f64 },
    /// The two blocks of a requested split share a root value.
    CommonRoot,
    /// Newton refinement did not reach the requested residual within the
    /// iteration cap; carries the last relative residual seen.
    NoConvergence { residual: f64 },
    /// Curve evaluated outside its domain.
    OutOfDomain { t: f64 },
    /// Interval pair violates the required nesting `I0 strictly inside I1`
    /// (or an interval is malformed / outside the curve domain).
    BadIntervals,
    /// The assumption check needs a base point with nonzero second
    /// Tschirnhausen coefficient.
    ZeroA2 { t0: f64 },
    /// `min |a2~|` vanishes on the inner interval: the lower-multiplicity
    /// bound is unavailable.
    DegenerateM2,
    /// A lemma calculator was invoked on inputs violating its hypotheses.
    HypothesisFailed { condition: &'static str },
    /// A grid needs at least one subdivision step.
    InvalidN,
    /// Multiplicity order `p` outside `2 <= p <= n`.
    InvalidOrder { p: usize, n: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateScale => {
                write!(f, "second Tschirnhausen coefficient is zero: scale normalization undefined")
            }
            Error::IllConditioned => {
                write!(f, "square-free decomposition numerically ambiguous at the given tolerance")
            }
            Error::NotHyperbolic => write!(f, "not hyperbolic: some roots are not real"),
            Error::NotHyperbolicOnDomain { t } => {
                write!(f, "curve is not hyperbolic at t = {t}")
            }
            Error::CommonRoot => write!(f, "split blocks share a root value"),
            Error::NoConvergence { residual } => {
                write!(f, "Newton refinement stalled at relative residual {residual:e}")
            }
            Error::OutOfDomain { t } => write!(f, "t = {t} outside the curve domain"),
            Error::BadIntervals => write!(f, "intervals must satisfy I0 strictly inside I1 inside the domain"),
            Error::ZeroA2 { t0 } => {
                write!(f, "a2~({t0}) = 0: admissible-interval radius undefined")
            }
            Error::DegenerateM2 => {
                write!(f, "m2 = 0: lower-multiplicity bound unavailable (roots fully coalesce on I0)")
            }
            Error::HypothesisFailed { condition } => {
                write!(f, "hypothesis violated: {condition}")
            }
            Error::InvalidN => write!(f, "grid needs at least one subdivision step"),
            Error::InvalidOrder { p, n } => {
                write!(f, "multiplicity order p = {p} outside 2..={n}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
