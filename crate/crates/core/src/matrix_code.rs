//! Matrix codes over a finite field: the interface the Plotkin construction
//! needs from its components, and a generic linear implementation.

use std::sync::OnceLock;

use rand::{Rng, RngCore};

use crate::error::DecodeError;
use crate::field::{Field, FiniteField};
use crate::linalg::Matrix;

/// An F-linear code of m×n matrices with rank-metric decoders.
pub trait MatrixCode<F: FiniteField>: Send + Sync {
    fn field(&self) -> &F;
    /// (m, n).
    fn shape(&self) -> (usize, usize);
    /// Dimension over F.
    fn dimension(&self) -> usize;
    /// F-basis of the code.
    fn basis(&self) -> Vec<Matrix<F>>;
    /// Largest error rank `decode_errors` handles.
    fn error_radius(&self) -> usize;
    /// Largest erasure dimension `decode_erasures` handles.
    fn erasure_radius(&self) -> usize;
    /// Nearest codeword within [`Self::error_radius`].
    fn decode_errors(&self, y: &Matrix<F>) -> Result<Matrix<F>, DecodeError>;
    /// Codeword c with rowspace(y − c) ⊆ rowspace(v).
    fn decode_erasures(&self, y: &Matrix<F>, v: &Matrix<F>) -> Result<Matrix<F>, DecodeError>;
    fn contains(&self, y: &Matrix<F>) -> bool;

    /// Uniform codeword.
    fn random_codeword(&self, rng: &mut dyn RngCore) -> Matrix<F> {
        let f = self.field();
        let (m, n) = self.shape();
        self.basis()
            .iter()
            .fold(Matrix::zeros(f, m, n), |acc, b| acc.add(&b.scale(&f.random(rng))))
    }
}

/// Uniform rows×cols matrix of rank exactly `t`, as X·Z with X and Z drawn
/// uniformly among full-rank factors.
pub fn random_rank_matrix<F: FiniteField, R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, t: usize, rng: &mut R) -> Matrix<F> {
    assert!(t <= rows.min(cols), "rank {t} does not fit a {rows}×{cols} matrix");
    let x = random_full_rank(field, rows, t, rng);
    let z = random_full_rank(field, t, cols, rng);
    x.mul(&z)
}

/// Uniform matrix of rank min(rows, cols), by rejection.
pub fn random_full_rank<F: FiniteField, R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let a = Matrix::from_fn(field, rows, cols, |_, _| field.random(rng));
        if a.rank() == rows.min(cols) {
            return a;
        }
    }
}

pub(crate) fn check_shape<F: Field>(y: &Matrix<F>, expected: (usize, usize)) -> Result<(), DecodeError> {
    if y.shape() != expected {
        return Err(DecodeError::Shape { expected, found: y.shape() });
    }
    Ok(())
}

/// Row-major flattening of an m×n matrix.
pub fn flatten<F: Field>(a: &Matrix<F>) -> Vec<F::Elem> {
    a.entries().to_vec()
}

pub fn unflatten<F: Field>(field: &F, m: usize, n: usize, v: Vec<F::Elem>) -> Matrix<F> {
    Matrix::new(field.clone(), m, n, v).expect("length m·n")
}

/// Code spanned by explicit matrices. Decoding is by linear algebra
/// (erasures) or exhaustive search (errors), so only small codes should use
/// [`MatrixCode::decode_errors`].
#[derive(Clone, Debug)]
pub struct LinearMatrixCode<F: FiniteField> {
    field: F,
    m: usize,
    n: usize,
    /// Echelon basis, one flattened codeword per row.
    generator: Matrix<F>,
    /// Rows span the dual under Tr(A·Bᵀ).
    parity: Matrix<F>,
    error_radius: Option<usize>,
    min_distance: OnceLock<Option<usize>>,
}

/// Codeword count limit for exhaustive searches.
const ENUMERATION_LIMIT: u128 = 1 << 20;

impl<F: FiniteField> LinearMatrixCode<F> {
    pub fn new(field: &F, m: usize, n: usize, spanning: &[Matrix<F>]) -> Self {
        let rows = spanning
            .iter()
            .map(|a| {
                assert_eq!(a.shape(), (m, n), "spanning matrices must be m×n");
                flatten(a)
            })
            .collect();
        let generator = Matrix::from_rows(field, m * n, rows).expect("uniform width").row_space_basis();
        let parity = generator.kernel();
        LinearMatrixCode { field: field.clone(), m, n, generator, parity, error_radius: None, min_distance: OnceLock::new() }
    }

    pub fn zero(field: &F, m: usize, n: usize) -> Self {
        Self::new(field, m, n, &[])
    }

    pub fn full(field: &F, m: usize, n: usize) -> Self {
        let basis: Vec<_> = (0..m * n)
            .map(|idx| Matrix::from_fn(field, m, n, |i, j| if i * n + j == idx { field.one() } else { field.zero() }))
            .collect();
        Self::new(field, m, n, &basis)
    }

    /// Overrides the error radius used by exhaustive decoding, which
    /// otherwise is ⌊(d − 1)/2⌋ from the enumerated minimum distance.
    pub fn with_error_radius(mut self, radius: usize) -> Self {
        self.error_radius = Some(radius);
        self
    }

    pub fn generator(&self) -> &Matrix<F> {
        &self.generator
    }

    /// Dual code under the trace form ⟨A, B⟩ = Tr(A·Bᵀ).
    pub fn dual(&self) -> Self {
        let basis: Vec<_> = (0..self.parity.rows())
            .map(|i| unflatten(&self.field, self.m, self.n, self.parity.row(i).to_vec()))
            .collect();
        Self::new(&self.field, self.m, self.n, &basis)
    }

    pub fn same_code(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.generator.same_row_space(&other.generator)
    }

    fn codeword_count(&self) -> Option<u128> {
        self.field.order().checked_pow(self.generator.rows() as u32)
    }

    /// All codewords, in index order; `None` when there are too many.
    pub fn codewords(&self) -> Option<Vec<Matrix<F>>> {
        let count = self.codeword_count().filter(|&c| c <= ENUMERATION_LIMIT)?;
        let q = self.field.order();
        let k = self.generator.rows();
        Some(
            (0..count)
                .map(|mut idx| {
                    let coeffs: Vec<F::Elem> = (0..k)
                        .map(|_| {
                            let c = self.field.element(idx % q);
                            idx /= q;
                            c
                        })
                        .collect();
                    unflatten(&self.field, self.m, self.n, self.generator.vec_mul(&coeffs))
                })
                .collect(),
        )
    }

    /// Minimum rank distance by enumeration, computed once; `None` for the
    /// zero code or a code too large to enumerate.
    pub fn min_distance(&self) -> Option<usize> {
        *self.min_distance.get_or_init(|| {
            if self.generator.rows() == 0 {
                return None;
            }
            self.codewords()?.iter().filter(|c| !c.is_zero()).map(Matrix::rank).min()
        })
    }

    /// The same spanning set viewed over a larger field.
    pub fn extend_scalars<G: FiniteField>(&self, target: &G, embed: impl Fn(&F::Elem) -> G::Elem) -> LinearMatrixCode<G> {
        let basis: Vec<_> = self.basis().iter().map(|b| b.map_entries(target, &embed)).collect();
        LinearMatrixCode::new(target, self.m, self.n, &basis).with_error_radius(self.error_radius())
    }
}

impl<F: FiniteField> MatrixCode<F> for LinearMatrixCode<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    fn dimension(&self) -> usize {
        self.generator.rows()
    }

    fn basis(&self) -> Vec<Matrix<F>> {
        (0..self.generator.rows()).map(|i| unflatten(&self.field, self.m, self.n, self.generator.row(i).to_vec())).collect()
    }

    fn error_radius(&self) -> usize {
        self.error_radius.unwrap_or_else(|| self.min_distance().map_or(0, |d| (d - 1) / 2))
    }

    /// Erasure decoding is unique exactly when dim V < d, so the radius is d − 1.
    fn erasure_radius(&self) -> usize {
        self.min_distance().map_or(self.m.min(self.n), |d| d - 1)
    }

    fn decode_errors(&self, y: &Matrix<F>) -> Result<Matrix<F>, DecodeError> {
        check_shape(y, (self.m, self.n))?;
        let words = self
            .codewords()
            .ok_or_else(|| DecodeError::Unsupported("code too large for exhaustive decoding".into()))?;
        let mut best: Option<(usize, Matrix<F>)> = None;
        for c in words {
            let r = y.sub(&c).rank();
            if best.as_ref().map_or(true, |(br, _)| r < *br) {
                best = Some((r, c));
            }
        }
        let (rank, c) = best.expect("code contains zero");
        let radius = self.error_radius();
        if rank > radius {
            return Err(DecodeError::RankExceeded { rank, radius });
        }
        Ok(c)
    }

    /// Solves y = Σ λ_i·C_i + X·R for λ ∈ F^k and X ∈ F^{m×t}.
    fn decode_erasures(&self, y: &Matrix<F>, v: &Matrix<F>) -> Result<Matrix<F>, DecodeError> {
        check_shape(y, (self.m, self.n))?;
        let f = &self.field;
        let r = v.row_space_basis();
        let (m, n, k, t) = (self.m, self.n, self.generator.rows(), r.rows());
        // Unknowns: λ_0..λ_{k−1}, then X row-major.
        let system = Matrix::from_fn(f, m * n, k + m * t, |eq, u| {
            let (i, j) = (eq / n, eq % n);
            if u < k {
                self.generator.get(u, eq).clone()
            } else {
                let (xi, xs) = ((u - k) / t, (u - k) % t);
                if xi == i { r.get(xs, j).clone() } else { f.zero() }
            }
        });
        let sol = system.solve(&flatten(y))?;
        Ok(unflatten(f, m, n, self.generator.vec_mul(&sol[..k])))
    }

    fn contains(&self, y: &Matrix<F>) -> bool {
        y.shape() == (self.m, self.n) && self.parity.mul_vec(&flatten(y)).iter().all(|x| self.field.is_zero(x))
    }
}
