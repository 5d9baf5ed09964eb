use thiserror::Error;

/// Everything that can go wrong while building or querying the algebra.
///
/// Variants carry the offending elements so callers can report a concrete
/// witness instead of a bare "invalid" flag.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {identity} is not an identity: fails against {witness}")]
    NotIdentity { identity: usize, witness: usize },
    #[error("unknown monoid builder `{0}`")]
    UnknownBuilder(String),
    #[error("bad parameters for builder `{builder}`: {reason}")]
    BadParams { builder: String, reason: String },
    #[error("parameter too large for builder `{builder}`: {value} > {max}")]
    ParamTooLarge { builder: String, value: usize, max: usize },
    #[error("monoid is not inverse: element {0} has {1} inverses")]
    NotInverse(usize, usize),
    #[error("search bound {bound} too small, need at least {needed}")]
    BoundTooSmall { bound: u64, needed: u64 },
    #[error("divisor found outside the proven bound: ({p},{q})")]
    DivisorOutsideBound { p: String, q: String },

    #[error("acts must be non-empty")]
    EmptyAct,
    #[error("identity axiom fails at element {0}")]
    IdentityAxiomFails(usize),
    #[error("action not associative: ({a}.{s}).{t} != {a}.({s}{t})")]
    AssociativityAxiomFails { a: usize, s: usize, t: usize },
    #[error("objects live over different monoids")]
    MixedMonoids,
    #[error("map is not equivariant: f({a}.{s}) != f({a}).{s}")]
    NotEquivariant { a: usize, s: usize },
    #[error("maps cannot be composed or compared: domain/codomain mismatch")]
    MapMismatch,
    #[error("element set is not closed under the action: {a}.{s} escapes")]
    NotASubact { a: usize, s: usize },
    #[error("map is not a monoid embedding: {0}")]
    NotAnEmbedding(String),

    #[error("act of size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("congruences do not form an ascending chain at position {0}")]
    NotAChain(usize),
    #[error("relation is not a congruence on this act")]
    NotACongruence,

    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),

    #[error("map is not injective: {0} and {1} collide")]
    NotMono(usize, usize),
    #[error("map is not surjective: {0} not hit")]
    NotEpi(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid direct system: {0}")]
    InvalidSystem(String),
    #[error("index set is not directed: {0} and {1} have no upper bound")]
    NotDirected(usize, usize),
    #[error("squares do not commute at ({0},{1})")]
    SquaresDoNotCommute(usize, usize),
    #[error("colimit constructions disagree")]
    ColimitMismatch,

    #[error("class {0} has no finite skeleton construction")]
    UnsupportedClass(String),
    #[error("domain of the map is not in class {0}")]
    DomainNotInClass(String),
    #[error("domain of the map is not projective")]
    DomainNotProjective,
    #[error("no member of the skeleton maps into the target")]
    EmptyPrecover,
    #[error("no cover found: {0}")]
    CoverNotFound(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("independent computations disagree: {0}")]
    Inconsistent(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
