use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Structural validation of a map failed; carries the first diagnostic.
    Invalid(String),
    /// A vertex triple that was expected to bound a face does not.
    FaceNotFound([usize; 3]),
    /// Vertex expected on the outer cycle is not there.
    NotOnOuter(usize),
    /// A vertex sequence that should be a simple cycle of the map is not.
    BadCycle(String),
    /// Triangle argument is not filled (strict interior is empty).
    NotFilled([usize; 3]),
    /// The map has a separating triangle where none is allowed.
    SeparatingTriangle([usize; 3]),
    /// Marked boundary vertices do not satisfy the coloring preconditions.
    NotWhitney(String),
    /// Assignment does not satisfy its level bounds.
    BadAssignment(String),
    /// No edge avoids every separating triangle.
    NoFreeEdge,
    /// Generator or builder parameter out of range.
    Param(String),
    /// An invariant the construction relies on failed; carries context
    /// sufficient to reproduce.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(s) => write!(f, "invalid map: {s}"),
            Error::FaceNotFound(t) => {
                write!(f, "no face on vertices {} {} {}", t[0], t[1], t[2])
            }
            Error::NotOnOuter(v) => write!(f, "vertex {v} is not on the outer cycle"),
            Error::BadCycle(s) => write!(f, "bad cycle: {s}"),
            Error::NotFilled(t) => {
                write!(f, "triangle {} {} {} is not filled", t[0], t[1], t[2])
            }
            Error::SeparatingTriangle(t) => {
                write!(f, "separating triangle {} {} {}", t[0], t[1], t[2])
            }
            Error::NotWhitney(s) => write!(f, "not a Whitney instance: {s}"),
            Error::BadAssignment(s) => write!(f, "bad assignment: {s}"),
            Error::NoFreeEdge => write!(f, "every edge lies in a separating triangle"),
            Error::Param(s) => write!(f, "bad parameter: {s}"),
            Error::Internal(s) => write!(f, "internal invariant failed: {s}"),
        }
    }
}
