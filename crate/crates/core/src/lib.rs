//! Elliptic functions, Baxter's eight-vertex R-matrix, its fusions, the fused
//! SOS face weights and the intertwining vectors relating the two pictures.

pub mod elliptic;
pub mod error;
pub mod face;
pub mod fusion;
pub mod intertwiner;
pub mod tensor;
pub mod vertex;

pub use elliptic::{EllipticContext, JacobiKind, Theta, Truncation};
pub use error::{Error, Result};
pub use face::{FaceModel, Height};
pub use fusion::Method;
pub use num_complex::Complex64;
pub use tensor::ComplexMatrix;
