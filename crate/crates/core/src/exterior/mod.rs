//! Multilinear algebra on `ℝⁿ`, `n ≤ 8`, with the identity metric and
//! orientation `e_1 ∧ … ∧ e_n`. Vectors and 1-forms are identified.

mod form;
mod multi_index;
mod tensor;

pub use form::KForm;
pub use multi_index::{basis, binomial, position, sort_sign, wedge_sign, MultiIndex, MAX_DIM};
pub use tensor::DenseTensor;
