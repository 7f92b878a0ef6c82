use thiserror::Error;

/// Errors raised by the exact group-theoretic machinery.
///
/// Variants carry the witnessing data (element indices, failing pairs) so
/// that callers can print a concrete counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is not square or has out-of-range entries: {0}")]
    MalformedTable(String),
    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("size limit exceeded: {what} = {value} > {limit}")]
    SizeLimit {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("element set is not a subgroup (fails closure at {a}*{b})")]
    NotASubgroup { a: usize, b: usize },
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("action is not a homomorphism into the automorphism group (acting element {acting}, element {element})")]
    NotAnAction { acting: usize, element: usize },
    #[error("no suitable prime below {bound} (exponent {exponent}, order {order})")]
    PrimeSearchFailure { exponent: u64, order: u64, bound: u64 },
    #[error("embedding is not injective")]
    NotInjective,
    #[error("embedding is not normal")]
    NotNormal,
    #[error("embedding is not proper: subgroup equals the whole group")]
    NotProper,
    #[error("family members do not share a common source group")]
    SourceMismatch,
    #[error("characters have different degrees ({left} vs {right})")]
    DegreeMismatch { left: u64, right: u64 },
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: i64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("factor {index} generates an infinite matrix group")]
    FactorNotFinite { index: usize },
    #[error("letter {position} references an invalid factor or element")]
    InvalidLetter { position: usize },
    #[error("factor homomorphisms disagree on the amalgamated subgroup (element {element}, factor {factor})")]
    DisagreeOnAmalgam { element: usize, factor: usize },
    #[error("amalgamated subgroup is not trivial")]
    AmalgamNotTrivial,
    #[error("length function is not symmetric at element {0}")]
    NotSymmetric(usize),
    #[error("length function is not subadditive at ({0}, {1})")]
    NotSubadditive(usize, usize),
    #[error("length function is not a class function: l({0}) != l({1})")]
    NotClassFunction(usize, usize),
    #[error("length function is nonzero at the identity")]
    NonzeroAtIdentity,
    #[error("invalid finite central subgroup data: {0}")]
    InvalidDelta(String),
    #[error("matrices do not commute: {0}")]
    DoesNotCommute(String),
    #[error("matrix has order {found}, expected {expected}")]
    WrongOrder { expected: usize, found: String },
    #[error("matrix is not a member of the ambient group")]
    NotMember,
    #[error("unsupported central torus dimension {0} (only 0, 1, 2 are decided)")]
    UnsupportedRank(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
