use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} out of supported range {1}..={2}")]
    DimensionRange(usize, usize, usize),
    #[error("invalid radii: r1={r1}, r2={r2} (need 0 < r1 < r2)")]
    InvalidRadii { r1: f64, r2: f64 },
    #[error("exponent p={p} outside required range ({lo}, {hi})")]
    ExponentRange { p: f64, lo: f64, hi: f64 },
    #[error("empty point list")]
    EmptyPointList,
    #[error("empty curve: fewer than two vertices or zero length")]
    DegenerateCurve,
    #[error("curve leaves the density grid box at ({0:?})")]
    CurveOutsideGrid(Vec<f64>),
    #[error("interval bounds out of order: lo={0}, hi={1}")]
    IntervalOrder(f64, f64),
    #[error("epsilon list must be strictly decreasing and positive")]
    EpsilonList,
    #[error("nonpositive argument: {name}={value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),
    #[error("grid field is restricted to n <= 3 (got n={0})")]
    GridDimension(usize),
    #[error("unknown field spec {0:?}")]
    UnknownField(String),
    #[error("unknown mapping spec {0:?}")]
    UnknownMapping(String),
    #[error("unknown eta/psi spec {0:?}")]
    UnknownPsi(String),
    #[error("mapping undefined at {0:?}: {1}")]
    MappingDomain(Vec<f64>, String),
    #[error("eta is not admissible: integral over the ring is {0} < 1")]
    EtaNotAdmissible(f64),
    #[error("{0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
