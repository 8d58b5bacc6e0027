use alloc::string::String;
use core::fmt;

/// Errors raised by the core library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed expression text at the given byte offset.
    Parse { pos: usize, msg: String },
    /// Inversion of zero.
    DivisionByZero,
    /// A conductor above the configured cap was requested.
    ConductorCap { conductor: u64, cap: u32 },
    /// `lift` to a conductor that is not a multiple of the source conductor.
    NotMultiple { from: u32, to: u32 },
    /// Polynomial terms of different total degree.
    NotHomogeneous,
    /// Map components of different degrees, or of degree zero.
    DegreeMismatch,
    /// Substitution produced the zero triple, or all components were zero.
    ZeroMap,
    /// The point has three zero coordinates.
    ZeroPoint,
    /// Group closure did not terminate within the element cap.
    CapExceeded { cap: usize },
    /// Divisor classes or matrices of incompatible rank.
    RankMismatch { left: usize, right: usize },
    /// `C·(C+K)` is odd, so no arithmetic genus exists.
    OddAdjunction,
    /// Requested lattice rank is outside the supported range.
    UnsupportedRank(usize),
    /// The blow-up configuration violates a model invariant.
    InvalidModel(String),
    /// A class or curve label could not be resolved.
    UnknownLabel(String),
    /// The source classes do not span the lattice over the rationals.
    NonSpanning,
    /// The requested images are not compatible with any linear map.
    NotLinear,
    /// The unique linear extension has non-integer entries.
    NonIntegral,
    /// The matrix does not preserve the intersection form.
    FormViolation,
    /// The matrix does not fix the canonical class.
    CanonicalViolation,
    /// The isometry does not permute the negative curves.
    NotCurvePermutation,
    /// Element of infinite (or too large) order.
    InfiniteOrder,
    /// The conic bundle is not valid for this model.
    InvalidBundle(String),
    /// Generic precondition failure.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at offset {pos}: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ConductorCap { conductor, cap } => {
                write!(f, "conductor {conductor} exceeds the cap {cap}")
            }
            Error::NotMultiple { from, to } => {
                write!(f, "cannot lift from conductor {from} to {to}")
            }
            Error::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            Error::DegreeMismatch => write!(f, "map components must share a positive degree"),
            Error::ZeroMap => write!(f, "map is identically zero"),
            Error::ZeroPoint => write!(f, "all point coordinates are zero"),
            Error::CapExceeded { cap } => {
                write!(f, "closure exceeded {cap} elements: possibly infinite or cap too small")
            }
            Error::RankMismatch { left, right } => write!(f, "rank mismatch: {left} vs {right}"),
            Error::OddAdjunction => write!(f, "C.(C+K) is odd: invalid class"),
            Error::UnsupportedRank(r) => write!(f, "unsupported rank {r}"),
            Error::InvalidModel(m) => write!(f, "invalid surface model: {m}"),
            Error::UnknownLabel(l) => write!(f, "unknown label {l:?}"),
            Error::NonSpanning => write!(f, "source classes do not span the lattice"),
            Error::NotLinear => write!(f, "images are not induced by a linear map"),
            Error::NonIntegral => write!(f, "extension is not integral: image not in the lattice"),
            Error::FormViolation => write!(f, "matrix does not preserve the intersection form"),
            Error::CanonicalViolation => write!(f, "matrix does not fix the canonical class"),
            Error::NotCurvePermutation => write!(f, "matrix does not permute the negative curves"),
            Error::InfiniteOrder => write!(f, "element has infinite order"),
            Error::InvalidBundle(m) => write!(f, "invalid conic bundle: {m}"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
