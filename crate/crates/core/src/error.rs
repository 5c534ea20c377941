use std::fmt;

/// Why a Cayley table failed to describe a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDefect {
    /// The table is not square or has an entry outside `0..n`.
    Malformed(String),
    /// A row or column repeats an entry.
    NotLatin { row: Option<usize>, column: Option<usize>, entry: usize },
    /// No element acts as a two-sided identity.
    NoIdentity,
    /// `element` has no two-sided inverse.
    MissingInverse { element: usize },
    /// `(a·b)·c != a·(b·c)`.
    NonAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDefect::Malformed(msg) => write!(f, "malformed table: {msg}"),
            GroupDefect::NotLatin { row: Some(r), entry, .. } => {
                write!(f, "row {r} repeats entry {entry}")
            }
            GroupDefect::NotLatin { column: Some(c), entry, .. } => {
                write!(f, "column {c} repeats entry {entry}")
            }
            GroupDefect::NotLatin { entry, .. } => write!(f, "repeated entry {entry}"),
            GroupDefect::NoIdentity => write!(f, "no two-sided identity"),
            GroupDefect::MissingInverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
            GroupDefect::NonAssociative { a, b, c } => {
                write!(f, "associativity fails on ({a}, {b}, {c})")
            }
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(GroupDefect),
    #[error("order cap exceeded: {what} exceeds {cap}")]
    OrderCapExceeded { what: String, cap: usize },
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a partition of the group: {0}")]
    NotAPartition(String),
    #[error("character lifting failed: {0}")]
    LiftFailure(String),
    #[error("part count mismatch: {characters} character parts vs {classes} superclasses")]
    SizeMismatch { characters: usize, classes: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("independent constructions disagree: {0}")]
    MismatchBug(String),
    #[error("invalid star-product factors: {0}")]
    InvalidFactors(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
