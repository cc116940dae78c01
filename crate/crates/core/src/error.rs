use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("dimension list is empty")]
    EmptyDims,
    #[error("k_{index} = {value}, every dimension must be at least 2")]
    DimTooSmall { index: usize, value: usize },
    #[error("grid order overflows")]
    TooLarge,
    #[error("expected {expected} coordinates, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("coordinate {value} at position {position} is outside [0, {bound})")]
    CoordOutOfRange {
        position: usize,
        value: usize,
        bound: usize,
    },
    #[error("position {position} is outside [0, {n})")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("shift at position {position} leaves the grid")]
    OffGrid { position: usize },
    #[error("shift direction must be +1 or -1, got {0}")]
    BadDirection(i8),
    #[error("a 1-grid has no sub-grid layers")]
    NoSubgrid,
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("`{0}` does not name an edge of the grid")]
    NotAdjacent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("edges share an endpoint")]
    NotAMatching,
    #[error("cycle is not alternating with respect to the matching")]
    NotAlternating,
    #[error("cycle is malformed: {0}")]
    MalformedCycle(String),
    #[error("cycle {index} is not an (F,M)-nice cycle")]
    NotNice { index: usize },
    #[error("cycle {index} shares an edge with an earlier cycle")]
    Overlapping { index: usize },
    #[error("fault edge {edge} of the matching is not covered by any cycle")]
    Uncovered { edge: usize },
    #[error("edge {0} is not in F ∩ M")]
    NotFaultMatchingEdge(usize),
    #[error("4-cycles need at least two dimensions")]
    NoFourCycles,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("k_{position} = {value} is odd")]
    OddDimension { position: usize, value: usize },
    #[error("grid order must be odd")]
    EvenOrder,
    #[error("vertex {0} is not all-even")]
    NotAllEven(String),
    #[error("vertex {0} has odd coordinate sum")]
    OddParity(String),
    #[error("fault set has {size} edges, at most {max} allowed")]
    TooManyFaults { size: usize, max: usize },
    #[error("fault edge {0} is incident with the deleted vertex")]
    FaultAtDeletedVertex(String),
    #[error("no fault-free transversal path exists")]
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreclusionError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("search at size {size} needs {needed} subset tests, budget is {budget}; mp >= {lower_bound}")]
    BudgetExceeded {
        size: usize,
        needed: u128,
        budget: u128,
        lower_bound: usize,
    },
    #[error("no preclusion set of size at most {limit}; mp >= {}", .limit + 1)]
    LimitReached { limit: usize },
    #[error("set is not an optimal matching preclusion set")]
    NotOptimal,
}
