//! Finite fields: GF(p), GF(p²) = GF(p)(√c) and GF(p^m), plus the Exp_B map
//! from vectors over an extension to matrices over its base field.

mod ext;
mod prime;
mod quad;

pub use ext::ExtField;
pub use prime::{is_prime, PrimeField};
pub use quad::{Gf2, Quad, QuadExtField};

use crate::field::FrobeniusField;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("{0} is not an odd prime below 2^62")]
    NotPrime(u64),
    #[error("{0} is not a square")]
    NotASquare(u64),
    #[error("the chosen non-residue is a square")]
    IsASquare,
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field order does not fit in 128 bits")]
    TooLarge,
    #[error("modulus is not monic irreducible")]
    ReducibleModulus,
    #[error("basis is not linearly independent over the base field")]
    SingularBasis,
    #[error("division by zero")]
    DivisionByZero,
}

/// Exp_B: column j holds the coordinates of v_j in `basis` (an m-element
/// base-field basis of the extension).
pub fn expand_to_base<E: FrobeniusField>(
    field: &E,
    v: &[E::Elem],
    basis: &[E::Elem],
) -> Result<Matrix<E::Base>, GfError> {
    let m = field.degree();
    if basis.len() != m {
        return Err(GfError::SingularBasis);
    }
    let change = basis_matrix(field, basis).inverse().ok_or(GfError::SingularBasis)?;
    Ok(change.mul(&expand_canonical(field, v)))
}

/// Exp_B in the field's own coordinate basis.
pub fn expand_canonical<E: FrobeniusField>(field: &E, v: &[E::Elem]) -> Matrix<E::Base> {
    let cols: Vec<_> = v.iter().map(|x| field.coordinates(x)).collect();
    Matrix::from_fn(&field.base_field(), field.degree(), v.len(), |i, j| cols[j][i].clone())
}

/// Inverse of [`expand_to_base`]: v_j = Σ_i M_ij · basis_i.
pub fn compose_from_base<E: FrobeniusField>(field: &E, m: &Matrix<E::Base>, basis: &[E::Elem]) -> Vec<E::Elem> {
    assert_eq!(m.rows(), basis.len(), "one row per basis element");
    (0..m.cols())
        .map(|j| {
            let mut acc = field.zero();
            for (i, b) in basis.iter().enumerate() {
                acc = field.add(&acc, &field.mul(&field.embed(m.get(i, j)), b));
            }
            acc
        })
        .collect()
}

/// Inverse of [`expand_canonical`].
pub fn compose_canonical<E: FrobeniusField>(field: &E, m: &Matrix<E::Base>) -> Vec<E::Elem> {
    (0..m.cols()).map(|j| field.from_coordinates(&m.col(j))).collect()
}

/// Dimension of the base-field span of `v`.
pub fn rank_over_base<E: FrobeniusField>(field: &E, v: &[E::Elem]) -> usize {
    expand_canonical(field, v).rank()
}

fn basis_matrix<E: FrobeniusField>(field: &E, basis: &[E::Elem]) -> Matrix<E::Base> {
    expand_canonical(field, basis)
}
