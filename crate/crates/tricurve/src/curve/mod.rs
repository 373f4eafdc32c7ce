mod implicit;
mod json;
mod param;

pub use implicit::*;
pub use json::*;
pub use param::*;

use crate::exactnum::QOmega;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("all three coordinates vanish at t = {0}")]
    BasePoint(Box<QOmega>),
    #[error("projective point with all coordinates zero")]
    ZeroPoint,
    #[error("coordinates share a common factor")]
    NotPrimitive,
    #[error("image is a point")]
    DegenerateImage,
    #[error("branch at t = {0} is not immersed to any available order")]
    NotImmersed(Box<QOmega>),
    #[error("polynomial vanishes identically on the curve")]
    IdenticallyZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no primitive {0}-th root of unity in Q(w)")]
    UnsupportedRoot(u32),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("implicitization failed: {0}")]
    ImplicitizationFailed(String),
    #[error("polynomial error: {0}")]
    Poly(String),
}
