//! Exact exterior algebra and left-invariant torsion geometry for G₂ and
//! Spin(7) structures on Lie algebras.

pub mod error;
pub mod exterior;
pub mod families;
pub mod g2;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod spin7;
pub mod torsion;

pub use error::{Error, Result};
pub use exterior::{DenseTensor, KForm, MultiIndex};
pub use g2::{G2Characteristic, G2Structure};
pub use lie::{ConnectionCoeffs, LieAlgebra};
pub use report::{Check, Status, Verdict, VerificationReport};
pub use scalar::{Rational, Residual, Scalar, Tolerance};
pub use spin7::{Spin7Characteristic, Spin7Structure};
pub use torsion::{CurvatureTensor, TorsionData, TorsionGeometry};
