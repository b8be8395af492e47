use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every rejection the library can produce.
///
/// Subset witnesses are rendered as label lists such as `{e,f}` so that the
/// message is meaningful without the ground set at hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // --- table construction and validation
    #[error("rank table has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("rank of the empty set is {value}, expected 0")]
    NotNormalized { value: i64 },
    #[error("not monotone: rank {a} = {rank_a} exceeds rank {b} = {rank_b}")]
    NotMonotone {
        a: String,
        b: String,
        rank_a: i64,
        rank_b: i64,
    },
    #[error("not submodular on {a} and {b}")]
    NotSubmodular { a: String, b: String },
    #[error("element {element} has rank {rank} > k = {k}")]
    ExceedsK { element: String, rank: i64, k: i64 },
    #[error("k must be nonnegative, got {0}")]
    NegativeK(i64),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("invalid label {0:?}: labels must be nonempty and must not contain ','")]
    InvalidLabel(String),
    #[error("ground set of {got} elements exceeds the limit of {limit}")]
    TooManyElements { got: usize, limit: usize },
    #[error("k = {got} exceeds the limit of {limit}")]
    KTooLarge { got: i64, limit: i64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    // --- minors and sums
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("label {0:?} occurs in both ground sets")]
    LabelCollision(String),
    #[error("mixed k: {0} vs {1}")]
    MixedK(i64, i64),
    #[error("ground sets differ")]
    GroundMismatch,

    // --- natural matroid
    #[error("count vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("count vector leaves the grid [0,{k}]^E")]
    OutOfGrid { k: i64 },
    #[error("explicit expansion on {elements} clone elements exceeds the limit of {limit}")]
    TooLarge { elements: usize, limit: usize },

    // --- compression
    #[error("compression level {level} outside [0,{k}]")]
    LevelOutOfRange { level: i64, k: i64 },
    #[error("polymatroid is not an excluded minor for the class")]
    NotExcludedMinor,

    // --- corner decompositions
    #[error("no {n}-corner decomposition: {reason}")]
    NotDecomposable { n: i64, reason: String },
    #[error("uniqueness regime requires 2n+1 <= k, got n = {n}, k = {k}")]
    UniquenessRegimeViolated { n: i64, k: i64 },
    #[error("decompositions are at different levels")]
    LevelMismatch,
    #[error("regime violated: {0}")]
    RegimeViolated(String),
    #[error("gluing failed: {0}")]
    ReconstructionFailure(String),
    #[error("minor {minor} has no {m}-corner decomposition")]
    MinorNotDecomposable { minor: String, m: i64 },
    #[error("compression hypothesis violated: need {lo} <= l <= {hi}, got l = {level}")]
    HypothesisViolated { level: i64, lo: i64, hi: i64 },
    #[error("compression by {element} at level {level} is neither the deletion nor the contraction")]
    CollapseFailed { element: String, level: i64 },
    #[error("doubleton ({rho_e},{rho_f}) with total rank {m} is not covered by the corner table")]
    NotInTable { rho_e: i64, rho_f: i64, m: i64 },

    // --- classes and search
    #[error("polymatroid has k = {table}, class has k = {class}")]
    KMismatch { table: i64, class: i64 },
    #[error("closed form is not an integer for a = {a}, k = {k}")]
    NonIntegerResult { a: i64, k: i64 },
    #[error("search exceeded its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },
    #[error("classification disagrees with direct detection: {0}")]
    ClassificationMismatch(String),

    // --- polytopes
    #[error("contract and delete sets overlap")]
    OverlappingSets,

    // --- I/O and formats
    #[error("format error: {0}")]
    Format(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        use Error::*;
        match self {
            WrongLength { .. } => "WrongLength",
            NotNormalized { .. } => "NotNormalized",
            NotMonotone { .. } => "NotMonotone",
            NotSubmodular { .. } => "NotSubmodular",
            ExceedsK { .. } => "ExceedsK",
            NegativeK(_) => "NegativeK",
            DuplicateLabel(_) => "DuplicateLabel",
            InvalidLabel(_) => "InvalidLabel",
            TooManyElements { .. } => "TooManyElements",
            KTooLarge { .. } => "KTooLarge",
            InvalidParams(_) => "InvalidParams",
            Overflow(_) => "Overflow",
            UnknownElement(_) => "UnknownElement",
            LabelCollision(_) => "LabelCollision",
            MixedK(..) => "MixedK",
            GroundMismatch => "GroundMismatch",
            DimensionMismatch { .. } => "DimensionMismatch",
            OutOfGrid { .. } => "OutOfGrid",
            TooLarge { .. } => "TooLarge",
            LevelOutOfRange { .. } => "LevelOutOfRange",
            NotExcludedMinor => "NotExcludedMinor",
            NotDecomposable { .. } => "NotDecomposable",
            UniquenessRegimeViolated { .. } => "UniquenessRegimeViolated",
            LevelMismatch => "LevelMismatch",
            RegimeViolated(_) => "RegimeViolated",
            ReconstructionFailure(_) => "ReconstructionFailure",
            MinorNotDecomposable { .. } => "MinorNotDecomposable",
            HypothesisViolated { .. } => "HypothesisViolated",
            CollapseFailed { .. } => "CollapseFailed",
            NotInTable { .. } => "NotInTable",
            KMismatch { .. } => "KMismatch",
            NonIntegerResult { .. } => "NonIntegerResult",
            SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            ClassificationMismatch(_) => "ClassificationMismatch",
            OverlappingSets => "OverlappingSets",
            Format(_) => "Format",
            UnknownSuite(_) => "UnknownSuite",
        }
    }
}
