use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("not a bijection: value {0} appears more than once")]
    NotABijection(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("induced action leaves the domain: generator {generator} maps object {object} outside the listed objects")]
    ActionLeavesDomain { generator: usize, object: String },

    #[error("induced map of generator {0} is not bijective on the domain")]
    InducedNotBijective(usize),

    #[error("group is intransitive")]
    Intransitive,

    #[error("generator {0} of the claimed subgroup is not a member of the ambient group")]
    NotASubgroup(usize),

    #[error("coset index {index} exceeds the configured bound {bound}")]
    IndexBound { index: u128, bound: u128 },

    #[error("search budget of {budget} nodes exhausted; best known interval [{lower}, {upper}]")]
    BudgetExhausted { budget: u64, lower: usize, upper: usize },

    #[error("group is not IBIS (min {min}, max witness {max}); no matroid")]
    NotIbis { min: usize, max: usize },

    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("sequence is not a base: residual stabilizer has order {0}")]
    NotABase(u128),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),

    #[error("division by zero in GF({p}^{f})")]
    DivisionByZero { p: u64, f: u32 },

    #[error("field size {0} exceeds 2^32")]
    FieldTooLarge(u128),

    #[error("randomized search exhausted after {tries} tries: {what}")]
    SearchExhausted { what: String, tries: u64 },

    #[error("bundled data corrupt: {0}")]
    DataCorrupt(String),

    #[error("unknown case id: {0}")]
    UnknownCase(String),

    #[error("unsupported parameter: {0}")]
    BadParameter(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
