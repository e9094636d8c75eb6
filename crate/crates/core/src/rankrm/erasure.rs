//! Rank erasure decoding: the error's row space is known.

use crate::error::DecodeError;
use crate::exactfield::{MQElement, MultiquadraticField};
use crate::field::Field;
use crate::linalg::Matrix;

use super::structure::fast_syndrome;

/// Decodes y = c + x·R in L^{2^m} for RM(r, m), given R over K = L.suffix(m)
/// whose rows span a space containing the error's row space.
///
/// Solves (H·Rᵀ)·xᵀ = H·yᵀ with both sides computed by [`fast_syndrome`] and
/// returns y − x·R. The solution is unique while dim V < d = 2^{m−r}.
pub fn erasure_decode(
    l: &MultiquadraticField,
    r: i32,
    m: usize,
    y: &[MQElement],
    v: &Matrix<MultiquadraticField>,
) -> Result<Vec<MQElement>, DecodeError> {
    let n = 1usize << m;
    if y.len() != n || v.cols() != n {
        return Err(DecodeError::Shape { expected: (1, n), found: (v.rows(), v.cols()) });
    }
    let rows = v.row_space_basis();
    let t = rows.rows();
    let s = fast_syndrome(l, r, m, y);
    if t == 0 {
        return if s.iter().all(|x| x.is_zero()) { Ok(y.to_vec()) } else { Err(DecodeError::NotACodeword) };
    }
    let embedded: Vec<Vec<MQElement>> =
        (0..t).map(|i| rows.row(i).iter().map(|e| l.lift_from_suffix(e, m)).collect()).collect();
    let cols: Vec<Vec<MQElement>> = embedded.iter().map(|row| fast_syndrome(l, r, m, row)).collect();
    let system = Matrix::from_fn(l, s.len(), t, |i, j| cols[j][i].clone());
    let x = system.solve(&s)?;
    let mut out = y.to_vec();
    for (xk, row) in x.iter().zip(&embedded) {
        for (o, rj) in out.iter_mut().zip(row) {
            *o = l.sub(o, &l.mul(xk, rj));
        }
    }
    Ok(out)
}
