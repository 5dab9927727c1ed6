use thiserror::Error;

use crate::quiver::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("not gentle: {}", fmt_violations(.0))]
    NotGentle(Vec<Violation>),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("algebra is infinite dimensional (nonzero path `{0}` repeats an arrow)")]
    InfiniteDimensional(String),
    #[error("invalid letter `{0}`: {1}")]
    InvalidLetter(String, String),
    #[error("invalid junction between letters {index} and {}: {reason}", .index + 1)]
    InvalidJunction { index: usize, reason: String },
    #[error("cancelling pair at letters {0} and {next}", next = .0 + 1)]
    CancellingPair(usize),
    #[error("band is not a closed walk")]
    NotClosed,
    #[error("band is a proper power")]
    NotPrimitive,
    #[error("band has {direct} direct and {inverse} inverse letters")]
    UnbalancedDirections { direct: usize, inverse: usize },
    #[error("bad cyclic junction: {0}")]
    BadCyclicJunction(String),
    #[error("scalar position {0} is not a direct letter")]
    ScalarOnInverseLetter(usize),
    #[error("band scalar is zero")]
    ZeroScalar,
    #[error("scalar {0} does not exist in the chosen field")]
    ScalarNotInField(String),
    #[error("unsupported field `{0}`")]
    UnsupportedField(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("differential squares to a nonzero map: {0}")]
    NotAComplex(String),
    #[error("not a string or band shape: {0}")]
    NotAStringOrBandShape(String),
    #[error("no representative: {0}")]
    NoRepresentative(String),
    #[error("not compatibly oriented: {0}")]
    NotCompatiblyOriented(String),
    #[error("overlap is infinite")]
    InfiniteOverlap,
    #[error("no letter can carry the band scalar")]
    UnplaceableScalar,
    #[error("band complex of multiplicity 2 is out of scope: {0}")]
    HigherMultiplicity(String),
    #[error("cone word has inconsistent degrees: {0}")]
    DegreeClash(String),
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
