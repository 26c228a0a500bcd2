use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygon needs at least 3 white vertices, got {0}")]
    PolygonTooSmall(usize),
    #[error("vertex {vertex} out of range for a {m}-gon")]
    InvalidVertex { vertex: usize, m: usize },
    #[error("({0}, {1}) is a boundary edge or a degenerate pair, not a diagonal")]
    AdjacentVertices(usize, usize),
    #[error("diagonals ({0}, {1}) and ({2}, {3}) cross")]
    CrossingPair(usize, usize, usize, usize),
    #[error("diagonal ({0}, {1}) listed twice")]
    DuplicateDiagonal(usize, usize),
    #[error("point {0} is an endpoint of the directed chord")]
    PointOnChord(usize),
    #[error("the dissection has no diagonals")]
    EmptyDissection,
    #[error("{0} is not a black diagonal")]
    NotBlackDiagonal(String),
    #[error("black diagonal {black} is not an accordion diagonal: cell {cell} has crossed sides {sides:?}")]
    NotAccordion {
        black: String,
        cell: usize,
        sides: Vec<String>,
    },
    #[error("diagonal {0} is not crossed")]
    NotCrossed(String),
    #[error("dissections are not nested: {0} is missing from the larger dissection")]
    NotNested(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("quiver is not gentle: {0}")]
    NotGentle(String),
    #[error("relation-free path of length > {bound}: the algebra is infinite-dimensional")]
    InfiniteDimensional { bound: usize },
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("string of length > {bound} found: a band exists, unsupported algebra")]
    BandDetected { bound: usize },
    #[error("complex is not pure: maximal face of size {found}, expected {expected}")]
    NonPureComplex { expected: usize, found: usize },
    #[error("complexes are defined over different algebras")]
    AlgebraMismatch,
    #[error("g-vector labels have lengths {0} and {1}")]
    LabelLengthMismatch(usize, usize),
    #[error("{what} {size} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
