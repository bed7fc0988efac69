use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor overflow: lcm({left}, {right}) = {lcm} exceeds the cap {cap}")]
    ConductorOverflow { left: u32, right: u32, lcm: u64, cap: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("generator {index} is not unitary")]
    NonUnitary { index: usize },

    #[error("generators must be square matrices of equal size: {0}")]
    ShapeMismatch(String),

    #[error("closure exceeded the cap of {cap} elements (reached {reached}); raise the cap or supply a smaller generating set")]
    ClosureCap { cap: usize, reached: usize },

    #[error("group of order {order} exceeds the normal-subgroup enumeration cap {cap}; supply subgroup generators explicitly")]
    EnumerationCap { order: usize, cap: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("characters live on different domains")]
    DomainMismatch,

    #[error("character is not a constituent of the restricted representation")]
    NotConstituent,

    #[error("component index {index} out of range ({count} components)")]
    ComponentOutOfRange { index: usize, count: usize },

    #[error("subgroup is not abelian")]
    NotAbelian,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("isotypic decomposition failed after {attempts} attempts: {detail}")]
    Decomposition { attempts: usize, detail: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("unknown group spec `{0}` (expected pauli:n, weyl:d:n or file:PATH)")]
    UnknownGroupSpec(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
