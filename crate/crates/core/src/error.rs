use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("zero has no inverse in F_{0}")]
    ZeroInverse(u32),

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { line: usize, index: usize, dim: usize },
    #[error("line {line}: bracket [{i},{j}] defined twice")]
    DuplicateBracket { line: usize, i: usize, j: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("unknown catalog ring `{0}`")]
    UnknownRing(String),
    #[error("bad parameter for `{ring}`: {msg}")]
    BadParam { ring: String, msg: String },

    #[error("dimension {0} exceeds the enumeration cap of {cap}", cap = crate::enumerate::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("graded-ideal counting needs a grading on `{0}`")]
    NotGraded(String),
    #[error("node budget of {budget} exhausted; the count is incomplete")]
    BudgetExhausted { budget: u64 },
    #[error("method `{method}` cannot count {flavor}s")]
    MethodUnsupported { method: String, flavor: String },
    #[error("ring has nilpotency class {found} over F_{p}, class 2 required")]
    NotClass2 { found: String, p: u32 },

    #[error("closed form `{name}` is not valid at p = {p}: {msg}")]
    OutOfDomain { name: String, p: u32, msg: String },
    #[error("unknown closed form `{0}`")]
    UnknownOracle(String),
    #[error("need at least {needed} samples, got {got}{}", class.map(|c| format!(" in residue class {c}")).unwrap_or_default())]
    InsufficientSamples { needed: usize, got: usize, class: Option<u64> },
    #[error("duplicate sample prime {0}")]
    DuplicateSample(u64),
}
