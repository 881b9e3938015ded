use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field `{0}` (expected `q` or `f<p>` with p prime, p < 2^31)")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid vertex name `{0}` (names must be non-empty, must not start with `@` and must not contain `-` or `,`)")]
    InvalidVertexName(String),

    #[error("facet with {size} vertices exceeds the supported maximum of {max}")]
    FacetTooLarge { size: usize, max: usize },

    #[error("complex would have {count} cells, more than the supported {max}")]
    TooManyCells { count: usize, max: usize },

    #[error("duplicate cell id `{0}`")]
    DuplicateCell(String),

    #[error("unknown cell id `{0}`")]
    UnknownCell(String),

    #[error("`@empty` is synthesized and must not be listed as a cell")]
    ReservedCell,

    #[error("order relation has a cycle through `{0}`")]
    Cyclic(String),

    #[error("grading violation between `{lower}` and `{upper}`: {detail}")]
    Grading {
        lower: String,
        upper: String,
        detail: String,
    },

    #[error("diamond violation: interval [`{lower}`, `{upper}`] has middle cells {middle:?}, expected exactly two")]
    Diamond {
        lower: String,
        upper: String,
        middle: Vec<String>,
    },

    #[error("incidence function violation: {0}")]
    Epsilon(String),

    #[error("no incidence function exists; input is not a regular complex")]
    NoIncidenceFunction,

    #[error(
        "boundary of `{cell}` does not have the homology of a {expected}-sphere (found {found})"
    )]
    SphereHomology {
        cell: String,
        expected: i32,
        found: String,
    },

    #[error("operation requires a simplicial complex: {0}")]
    NotSimplicial(String),

    #[error(
        "cell set is not an order filter: `{member}` is in the set but `{missing}` >= it is not"
    )]
    NotFilter { member: String, missing: String },

    #[error(
        "cell set is not a subcomplex: `{member}` is in the set but its face `{missing}` is not"
    )]
    NotSubcomplex { member: String, missing: String },

    #[error("filter must not contain `@empty`")]
    EmptyCellInFilter,

    #[error("open regions only support compactly supported cohomology here")]
    OpenRegionNeedsCompact,

    #[error("`{0}` and `{1}` are not comparable")]
    Incomparable(String, String),

    #[error("`{a}` and `{b}` have several minimal upper bounds {candidates:?}")]
    AmbiguousJoin {
        a: String,
        b: String,
        candidates: Vec<String>,
    },

    #[error("poset is not a meet-semilattice: `{0}` and `{1}` have no least upper bound")]
    NotSemilattice(String, String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("differential squares to a nonzero map at degree {0}")]
    NotNilpotent(i32),

    #[error("module actions are not path independent on the interval [`{lower}`, `{upper}`]")]
    PathDependence { lower: String, upper: String },

    #[error("not a module map: fails to commute on the cover `{lower}` < `{upper}`")]
    NotModuleMap { lower: String, upper: String },

    #[error("objects live over different posets")]
    PosetMismatch,

    #[error("module is zero")]
    ZeroModule,

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}
