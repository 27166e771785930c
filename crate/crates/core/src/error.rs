use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("contour needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("non-finite coordinate at point {0}")]
    NonFinite(usize),

    #[error("zero-length edge between points {0} and {1}")]
    ZeroLengthEdge(usize, usize),

    #[error("contour is not simple: edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),

    #[error("degenerate contour: enclosed area is zero")]
    DegenerateArea,

    #[error("ambiguous ellipse: second moments are isotropic")]
    AmbiguousEllipse,

    #[error("point lies on the contour boundary")]
    BoundaryPoint,

    #[error("reference point is not inside the contour")]
    ExteriorReference,

    #[error("curvature-only weight is undefined on a flat curve")]
    UndefinedWeight,

    #[error("invalid parameter family: {0}")]
    InvalidFamily(String),

    #[error("no interior reference point found for this contour")]
    NoInteriorReference,

    #[error("tip coincides with the area centroid")]
    CoincidentTip,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("class {0} has no members")]
    EmptyClass(usize),

    #[error("class {0} has fewer than 2 members")]
    TooFewMembers(usize),

    #[error("at least 2 classes are required, got {0}")]
    TooFewClasses(usize),

    #[error("degenerate clustering: maximal intra-class diameter is zero")]
    DegenerateClustering,

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("non-finite loss during training (step too large)")]
    NonFiniteLoss,

    #[error("binarized image has no foreground")]
    EmptyForeground,

    #[error("binarized image is entirely foreground")]
    FullForeground,

    #[error("traced boundary is degenerate")]
    DegenerateBoundary,

    #[error("invalid image: {0}")]
    Image(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{id}: {source}")]
    Sample {
        id: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{step} step failed: {source}")]
    Step {
        step: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }

    /// True for failures caused by the data's geometry or numerics, as
    /// opposed to I/O and input validation problems.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Step { source, .. } | Error::Sample { source, .. } => source.is_numerical(),
            Error::DegenerateArea
            | Error::AmbiguousEllipse
            | Error::BoundaryPoint
            | Error::ExteriorReference
            | Error::UndefinedWeight
            | Error::NoInteriorReference
            | Error::CoincidentTip
            | Error::DegenerateClustering
            | Error::NonFiniteLoss
            | Error::SelfIntersecting(..)
            | Error::DegenerateBoundary
            | Error::EmptyForeground
            | Error::FullForeground => true,
            _ => false,
        }
    }
}
