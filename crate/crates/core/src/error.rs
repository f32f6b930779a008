use thiserror::Error;

/// Law violations found while validating raw composition tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("composition is not associative on ({h}, {g}, {f}): ({h}∘{g})∘{f} = {left} but {h}∘({g}∘{f}) = {right}")]
    NotAssociative {
        h: String,
        g: String,
        f: String,
        left: String,
        right: String,
    },
    #[error("identity law broken at object {object}: {detail}")]
    IdentityLawBroken { object: String, detail: String },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("graph has a directed cycle through edges [{}]", .0.join(", "))]
    CyclicGraph(Vec<String>),
    #[error("enumeration budget of {limit} exceeded while {context}")]
    BudgetExceeded { context: String, limit: u64 },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural transformation: {0}")]
    InvalidTransformation(String),
    #[error("invalid Cat-valued functor: {0}")]
    InvalidDiagram(String),
    #[error("unknown weight name: {0}")]
    UnknownWeightName(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("certificate does not match weight: {0}")]
    CertificateMismatch(String),
    #[error("map does not satisfy the pointwise hypothesis for mode {mode}: {detail}")]
    ModeMismatch { mode: String, detail: String },
    #[error("weight is not pie")]
    NotPie,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("non-composable transformations: {0}")]
    NonComposable(String),
    #[error("algebra does not match the presentation: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
