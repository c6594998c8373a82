use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operands have incompatible shapes.
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    /// Operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Ranks of two Lie-theoretic objects disagree.
    RankMismatch { left: usize, right: usize },
    /// Rank `n` must be at least one.
    InvalidRank(usize),
    /// A complex matrix is not the image of a quaternionic one.
    NotQuaternionic { defect: f64 },
    /// Matrix is not in `Sp(n)`.
    NotUnitary { residual: f64 },
    /// Matrix is not in `sp(n)`.
    NotSkewHermitian { residual: f64 },
    /// A vector that must have unit norm does not.
    NotUnit { norm: f64 },
    /// Torus coordinates outside the closed alcove.
    OutsideAlcove,
    /// The face is not one of `σ0`, `σ01`, `σ1`.
    UnsupportedFace,
    /// The stratum point lives on a different face than required.
    WrongFace,
    /// Stratum tangent is not orthogonal to `[g_σ, g_σ]`.
    NotOrthogonalToCommutator { residual: f64 },
    /// Stratum tangent torus part leaves the face direction.
    NotInFaceDirection { residual: f64 },
    /// The zero vector does not define a point of projective space.
    ZeroVector,
    /// Tangent fails the horizontality or chart constraint.
    NotHorizontal { residual: f64 },
    /// Point lies on (or numerically at) the boundary of the open stratum.
    BoundaryPoint,
    /// Fusion needs two group factors of equal rank in front.
    NothingToFuse,
    /// Invalid sampling/verification configuration.
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { op, left, right } => {
                write!(f, "{op}: shape mismatch {}x{} vs {}x{}", left.0, left.1, right.0, right.1)
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, expected square"),
            Error::RankMismatch { left, right } => write!(f, "rank mismatch: {left} vs {right}"),
            Error::InvalidRank(n) => write!(f, "invalid rank {n}"),
            Error::NotQuaternionic { defect } => {
                write!(f, "complex matrix violates the quaternionic block symmetry by {defect:e}")
            }
            Error::NotUnitary { residual } => write!(f, "not in Sp(n): residual {residual:e}"),
            Error::NotSkewHermitian { residual } => write!(f, "not in sp(n): residual {residual:e}"),
            Error::NotUnit { norm } => write!(f, "expected a unit vector, norm is {norm}"),
            Error::OutsideAlcove => f.write_str("torus coordinates outside the closed alcove"),
            Error::UnsupportedFace => f.write_str("face is not one of sigma_0, sigma_01, sigma_1"),
            Error::WrongFace => f.write_str("stratum point lies on the wrong face"),
            Error::NotOrthogonalToCommutator { residual } => {
                write!(f, "tangent not orthogonal to the commutator algebra: {residual:e}")
            }
            Error::NotInFaceDirection { residual } => {
                write!(f, "torus tangent leaves the face direction: {residual:e}")
            }
            Error::ZeroVector => f.write_str("zero vector has no projective class"),
            Error::NotHorizontal { residual } => write!(f, "tangent constraint violated by {residual:e}"),
            Error::BoundaryPoint => f.write_str("point lies on the boundary of the open chart"),
            Error::NothingToFuse => f.write_str("moment codomain lacks two equal group factors to fuse"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
