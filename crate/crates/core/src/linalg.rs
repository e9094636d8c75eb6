//! Dense matrices over any [`Field`] with exact Gaussian elimination.
//!
//! Elimination is naive (pivot on the first nonzero entry, normalize, clear).
//! Over the rationals entries are reduced fractions at every step; at the
//! sizes used here (N ≤ 64) coefficient growth is harmless. A fraction-free
//! Bareiss pass is the upgrade path if larger rational systems are needed.

use std::fmt;

use serde_json::{json, Value};

use crate::field::{Field, FormatError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
}

/// Failure of [`Matrix::solve`].
#[derive(Clone, PartialEq, thiserror::Error)]
pub enum SolveError<E> {
    #[error("linear system has no solution")]
    NoSolution,
    /// The solution set is an affine space of positive dimension; `witness`
    /// is a nonzero kernel vector.
    #[error("linear system has {kernel_dim}-dimensional solution space")]
    NotUnique { kernel_dim: usize, witness: Vec<E> },
}

impl<E> fmt::Debug for SolveError<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::NoSolution => write!(f, "NoSolution"),
            SolveError::NotUnique { kernel_dim, .. } => write!(f, "NotUnique {{ kernel_dim: {kernel_dim} }}"),
        }
    }
}

/// Row-major dense matrix.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { op: "new", left: (rows, cols), right: (data.len(), 1) });
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    /// Scalar multiple of the identity.
    pub fn diagonal(field: &F, n: usize, c: &F::Elem) -> Self {
        Self::from_fn(field, n, n, |i, j| if i == j { c.clone() } else { field.zero() })
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds from rows; `cols` is needed to type an empty row list.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { op: "from_rows", left: (n, cols), right: (1, r.len()) });
            }
            data.extend(r);
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, cols, rows).expect("ragged integer rows")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_entries(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in {op}");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// # Panics
    /// If the shapes differ.
    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, "add", |a, b| self.field.add(a, b))
    }

    /// # Panics
    /// If the shapes differ.
    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, "sub", |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| self.field.neg(x))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|x| self.field.mul(c, x))
    }

    /// Entry-wise map within the same field.
    pub fn map(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entry-wise map into another field (e.g. an embedding).
    pub fn map_entries<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Rank after embedding the entries into `target`.
    pub fn rank_over<G: Field>(&self, target: &G, embed: impl Fn(&F::Elem) -> G::Elem) -> usize {
        self.map_entries(target, embed).rank()
    }

    /// # Panics
    /// If the inner dimensions differ.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = &self.field;
        let mut data = vec![f.zero(); self.rows * other.cols];
        for i in 0..self.rows {
            let out = &mut data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(other.row(k)) {
                    if !f.is_zero(b) {
                        *o = f.mul_add(o, a, b);
                    }
                }
            }
        }
        Matrix { field: f.clone(), rows: self.rows, cols: other.cols, data }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        Ok(self.mul(other))
    }

    /// A·x for a column vector x.
    pub fn mul_vec(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, x.len(), "shape mismatch in mul_vec");
        let f = &self.field;
        (0..self.rows)
            .map(|i| dot(f, self.row(i), x))
            .collect()
    }

    /// x·A for a row vector x.
    pub fn vec_mul(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.rows, x.len(), "shape mismatch in vec_mul");
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(k)) {
                *o = f.mul_add(o, a, b);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let pivots = a.eliminate(true);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    /// In-place elimination. With `reduce` the result is fully reduced;
    /// without it only rows below each pivot are cleared and pivot rows are
    /// left unnormalized.
    fn eliminate(&mut self, reduce: bool) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            if reduce {
                for j in c..cols {
                    let v = f.mul(&inv, self.get(r, j));
                    self.set(r, j, v);
                }
            }
            let start = if reduce { 0 } else { r + 1 };
            for i in start..rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = if reduce {
                    f.neg(self.get(i, c))
                } else {
                    f.neg(&f.mul(self.get(i, c), &inv))
                };
                for j in c..cols {
                    let pr = &self.data[r * cols + j];
                    if f.is_zero(pr) {
                        continue;
                    }
                    let v = f.mul_add(&self.data[i * cols + j], &factor, pr);
                    self.data[i * cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of {x : A·x = 0}, one vector per row.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Self::from_rows(f, self.cols, basis).expect("kernel rows have matching length")
    }

    /// Echelon basis of the row space (full row rank).
    pub fn row_space_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        r.submatrix(0, 0, pivots.len(), self.cols)
    }

    /// Whether both matrices have the same row space.
    pub fn same_row_space(&self, other: &Self) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let r = self.rank();
        r == other.rank() && r == self.vstack(other).expect("same width").rank()
    }

    /// Unique x with A·x = b.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Vec<F::Elem>, SolveError<F::Elem>> {
        assert_eq!(b.len(), self.rows, "shape mismatch in solve");
        let f = &self.field;
        let aug = Self::from_fn(f, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(SolveError::NoSolution);
        }
        if pivots.len() < self.cols {
            let k = self.kernel();
            return Err(SolveError::NotUnique { kernel_dim: k.rows(), witness: k.row(0).to_vec() });
        }
        Ok((0..self.cols).map(|i| r.get(i, self.cols).clone()).collect())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n)).expect("same height");
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix out of range");
        Self::from_fn(&self.field, nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch { op: "hstack", left: self.shape(), right: other.shape() });
        }
        Ok(Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch { op: "vstack", left: self.shape(), right: other.shape() });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// [[a, b], [c, d]].
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, LinalgError> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    /// Inverse of [`Matrix::block`], cutting after `r` rows and `c` columns.
    pub fn split_blocks(&self, r: usize, c: usize) -> (Self, Self, Self, Self) {
        let (nr, nc) = (self.rows - r, self.cols - c);
        (
            self.submatrix(0, 0, r, c),
            self.submatrix(0, c, r, nc),
            self.submatrix(r, 0, nr, c),
            self.submatrix(r, c, nr, nc),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "field": self.field.descriptor(),
            "entries": self.data.iter().map(|x| self.field.elem_to_json(x)).collect::<Vec<_>>(),
        })
    }

    /// Parses a matrix over `field`; a `"field"` key, if present, must match.
    pub fn from_json(field: &F, v: &Value) -> Result<Self, FormatError> {
        let dim = |k: &str| {
            v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| FormatError::new(format!("missing \"{k}\"")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        if let Some(d) = v.get("field") {
            if *d != field.descriptor() {
                return Err(FormatError::new("matrix field does not match"));
            }
        }
        let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| FormatError::new("missing \"entries\""))?;
        let data = entries.iter().map(|e| field.elem_from_json(e)).collect::<Result<Vec<_>, _>>()?;
        Self::new(field.clone(), rows, cols, data).map_err(|e| FormatError::new(e.to_string()))
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.mul_add(&acc, x, y);
        }
    }
    acc
}
