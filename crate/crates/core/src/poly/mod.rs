//! Exact polynomial algebra over finite fields.

mod absolute;
mod bifactor;
mod bivar;
mod factor;
mod hensel;
mod resultant;
mod uni;

use thiserror::Error;

pub use absolute::{absolute_irreducibility, absolutely_irreducible, AbsoluteIrreducibility};
pub(crate) use bifactor::random_elem;
pub use bifactor::{bi_factor, bi_factor_with, BiFactorOptions};
pub use bivar::BiPoly;
pub use factor::{
    distinct_degree, equal_degree, roots_in_field, splitting_degree, squarefree_decomposition,
    uni_factor, FactorList,
};
pub(crate) use resultant::field_with_points;
pub use resultant::{resultant_formal, resultant_y, sylvester_det, uni_resultant};
pub use uni::{interpolate, UniPoly};

use crate::ff::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation needs a nonconstant polynomial")]
    Constant,
    #[error("operation needs a nonzero polynomial")]
    Zero,
    #[error("polynomials live over different fields")]
    FieldMismatch,
    #[error("recombination needs subsets of size {needed}, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("no good specialization point found up to extension degree {0}")]
    NoSpecialization(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Monic gcd with a field check.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, PolyError> {
    if !a.field().same_field(b.field()) {
        return Err(PolyError::FieldMismatch);
    }
    Ok(a.gcd(b))
}

/// Squarefree check; errors on the zero polynomial.
pub fn is_separable(h: &UniPoly) -> Result<bool, PolyError> {
    h.is_separable()
}
