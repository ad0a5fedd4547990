use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("source and sink must be distinct vertices of the graph")]
    MissingTerminal,
    #[error("minimum cut is infinite: no finite minimizer")]
    InfiniteCut,
    #[error("lattice closure violated")]
    LatticeClosureViolated,
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("member enumeration exceeds cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::MissingTerminal => "missing_terminal",
            Error::InfiniteCut => "infinite_cut",
            Error::LatticeClosureViolated => "lattice_closure_violated",
            Error::InvalidLattice(_) => "invalid_lattice",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Precondition(_) => "precondition",
            Error::Refused(_) => "refused",
            Error::InvalidInstance(_) => "invalid_instance",
            Error::Internal(_) => "internal",
        }
    }
}
