//! Exact scalar fields, univariate polynomial and rational-function
//! arithmetic, homogeneous multivariate forms, and Macaulay-style degree
//! matrices with exact rank.

mod form;
mod macaulay;
mod multiindex;
mod scalar;
mod unipoly;
mod unirational;

pub use form::{Coefficient, FixedForm, HomogeneousForm, MovingForm, TargetForm};
pub use macaulay::{macaulay_matrix, MacaulayMatrix};
pub use multiindex::{monomial_basis, monomial_count, MultiIndex};
pub use scalar::{BigFloat, ExactC, FloatC, Rat, Scalar, MIN_PRECISION};
pub use unipoly::UniPoly;
pub use unirational::UniRational;


use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("evaluation at a pole")]
    PoleAtPoint,
    #[error("some coefficient has a pole at the sample point")]
    PoleAtSample,
    #[error("all coefficients vanish at the sample point")]
    ZeroAtSample,
}

#[cfg(test)]
mod tests {
    use super::macaulay;

    #[test]
    fn zero_matrix_has_rank_zero() {
        let rows = vec![macaulay::clear_denominators(&[
            super::ExactC::zero(),
            super::ExactC::zero(),
        ])];
        assert_eq!(macaulay::gaussian_integer_rank(rows), 0);
    }
}
