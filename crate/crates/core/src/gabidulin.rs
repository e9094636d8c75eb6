//! Gabidulin codes: evaluations of q-polynomials of q-degree < k at
//! base-field independent points of an extension E with Frobenius σ.

use std::fmt;

use rand::RngCore;
use serde_json::{json, Value};

use crate::error::DecodeError;
use crate::field::{Field, FormatError, FrobeniusField};
use crate::gf::{compose_canonical, expand_canonical, rank_over_base, ExtField};
use crate::linalg::Matrix;
use crate::matrix_code::{check_shape, MatrixCode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GabidulinError {
    #[error("code length {n} exceeds the extension degree {m}")]
    TooLong { n: usize, m: usize },
    #[error("evaluation points are dependent over the base field")]
    DependentPoints,
    #[error("dimension {k} must lie in 0..={n}")]
    InvalidDimension { k: usize, n: usize },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
}

/// L(x) = Σ a_i x^{q^i}, with σ standing in for x ↦ x^q.
#[derive(Clone)]
pub struct LinearizedPoly<E: FrobeniusField> {
    field: E,
    coeffs: Vec<E::Elem>,
}

impl<E: FrobeniusField> fmt::Debug for LinearizedPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<E: FrobeniusField> PartialEq for LinearizedPoly<E> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<E: FrobeniusField> LinearizedPoly<E> {
    /// Coefficient i multiplies x^{q^i}; trailing zeros are dropped.
    pub fn new(field: &E, mut coeffs: Vec<E::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        LinearizedPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &E) -> Self {
        Self::new(field, Vec::new())
    }

    /// The identity map x.
    pub fn x(field: &E) -> Self {
        Self::new(field, vec![field.one()])
    }

    pub fn coeffs(&self) -> &[E::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> E::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// q-degree; `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &E::Elem) -> E::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .enumerate()
            .fold(f.zero(), |acc, (i, a)| f.mul_add(&acc, a, &f.frobenius(x, i)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..len).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..len).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    /// x ↦ c·L(x).
    pub fn scale(&self, c: &E::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(c, a)).collect())
    }

    /// x ↦ σ(L(x)).
    pub fn frobenius_twist(&self) -> Self {
        let f = &self.field;
        let mut coeffs = vec![f.zero()];
        coeffs.extend(self.coeffs.iter().map(|a| f.frobenius(a, 1)));
        Self::new(f, coeffs)
    }

    /// self ∘ other: Σ_{i,s} a_i σ^i(b_s) x^{q^{i+s}}.
    pub fn compose(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (s, b) in other.coeffs.iter().enumerate() {
                out[i + s] = f.mul_add(&out[i + s], a, &f.frobenius(b, i));
            }
        }
        Self::new(f, out)
    }

    /// The f with v ∘ f = self, or `InexactDivision`.
    pub fn left_divide(&self, v: &Self) -> Result<Self, DecodeError> {
        let f = &self.field;
        let dv = v.q_degree().ok_or(DecodeError::InexactDivision)?;
        let Some(dn) = self.q_degree() else {
            return Ok(Self::zero(f));
        };
        if dn < dv {
            return Err(DecodeError::InexactDivision);
        }
        let m = f.degree();
        let undo = (m - dv % m) % m;
        let lead_inv = f.inv(&v.coeffs[dv]).expect("leading coefficient is nonzero");
        let len = dn - dv + 1;
        let mut quotient = vec![f.zero(); len];
        for s in (0..len).rev() {
            // Coefficient of x^{q^{dv+s}} in v ∘ f.
            let mut c = self.coeff(dv + s);
            for i in 0..dv {
                let idx = dv + s - i;
                if idx < len {
                    c = f.sub(&c, &f.mul(&v.coeffs[i], &f.frobenius(&quotient[idx], i)));
                }
            }
            quotient[s] = f.frobenius(&f.mul(&c, &lead_inv), undo);
        }
        let q = Self::new(f, quotient);
        if v.compose(&q) != *self {
            return Err(DecodeError::InexactDivision);
        }
        Ok(q)
    }

    /// Monic q-polynomial of least q-degree vanishing on the base-field span
    /// of `points`; its q-degree is the rank of the span.
    pub fn subspace(field: &E, points: &[E::Elem]) -> Self {
        let mut p = Self::x(field);
        for pt in points {
            let c = p.eval(pt);
            if field.is_zero(&c) {
                continue;
            }
            // P'(x) = P(x)^q − c^{q−1} P(x) kills pt and keeps the old roots.
            let ratio = field.div(&field.frobenius(&c, 1), &c).expect("c is nonzero");
            p = p.frobenius_twist().sub(&p.scale(&ratio));
        }
        p
    }
}

/// Codewords of the q-polynomials with q-degree < k evaluated at g.
#[derive(Clone, Debug)]
pub struct GabidulinCode<E: FrobeniusField> {
    field: E,
    g: Vec<E::Elem>,
    k: usize,
    parity: Matrix<E>,
}

/// Outcome of a successful error decode.
#[derive(Clone, Debug)]
pub struct GabidulinDecoding<E: FrobeniusField> {
    pub codeword: Vec<E::Elem>,
    pub message: Vec<E::Elem>,
    pub error: Vec<E::Elem>,
}

impl<E: FrobeniusField> GabidulinCode<E> {
    pub fn new(field: &E, g: Vec<E::Elem>, k: usize) -> Result<Self, GabidulinError> {
        let (n, m) = (g.len(), field.degree());
        if n > m {
            return Err(GabidulinError::TooLong { n, m });
        }
        if k > n {
            return Err(GabidulinError::InvalidDimension { k, n });
        }
        if rank_over_base(field, &g) != n {
            return Err(GabidulinError::DependentPoints);
        }
        let parity = moore_matrix(field, &g, k).kernel();
        Ok(GabidulinCode { field: field.clone(), g, k, parity })
    }

    /// n = m with g the field's canonical base-field basis.
    pub fn standard(field: &E, k: usize) -> Result<Self, GabidulinError> {
        Self::new(field, canonical_basis(field), k)
    }

    pub fn field(&self) -> &E {
        &self.field
    }

    pub fn g(&self) -> &[E::Elem] {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Extension degree m.
    pub fn m(&self) -> usize {
        self.field.degree()
    }

    /// n − k + 1.
    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn error_radius(&self) -> usize {
        (self.n() - self.k) / 2
    }

    pub fn erasure_radius(&self) -> usize {
        self.n() - self.k
    }

    /// Moore matrix σ^i(g_j), i < k.
    pub fn generator_matrix(&self) -> Matrix<E> {
        moore_matrix(&self.field, &self.g, self.k)
    }

    /// (n − k) × n, rows spanning the kernel of the generator matrix.
    pub fn parity_check_matrix(&self) -> &Matrix<E> {
        &self.parity
    }

    pub fn encode(&self, message: &[E::Elem]) -> Result<Vec<E::Elem>, GabidulinError> {
        if message.len() != self.k {
            return Err(GabidulinError::LengthMismatch { expected: self.k, found: message.len() });
        }
        Ok(self.evaluate(&LinearizedPoly::new(&self.field, message.to_vec())))
    }

    pub fn evaluate(&self, p: &LinearizedPoly<E>) -> Vec<E::Elem> {
        self.g.iter().map(|x| p.eval(x)).collect()
    }

    pub fn syndrome(&self, y: &[E::Elem]) -> Vec<E::Elem> {
        self.parity.mul_vec(y)
    }

    pub fn contains(&self, y: &[E::Elem]) -> bool {
        y.len() == self.n() && self.syndrome(y).iter().all(|s| self.field.is_zero(s))
    }

    /// Rank of a vector over the base field.
    pub fn rank(&self, v: &[E::Elem]) -> usize {
        rank_over_base(&self.field, v)
    }

    pub fn decode_errors(&self, y: &[E::Elem]) -> Result<GabidulinDecoding<E>, DecodeError> {
        self.decode_errors_with_radius(y, self.error_radius())
    }

    /// Reconstruction: nonzero V of q-degree ≤ t and N of q-degree < t + k
    /// with V(y_j) = N(g_j), then f = N left-divided by V.
    pub fn decode_errors_with_radius(&self, y: &[E::Elem], t: usize) -> Result<GabidulinDecoding<E>, DecodeError> {
        let f = &self.field;
        let (n, k) = (self.n(), self.k);
        if y.len() != n {
            return Err(DecodeError::Shape { expected: (1, n), found: (1, y.len()) });
        }
        if t > self.error_radius() {
            return Err(DecodeError::RadiusExceeded { requested: t, max: self.error_radius() });
        }
        if k == 0 {
            return self.finish(y, t, LinearizedPoly::zero(f));
        }
        let (nv, nn) = (t + 1, t + k);
        let system = Matrix::from_fn(f, n, nv + nn, |j, u| {
            if u < nv {
                f.frobenius(&y[j], u)
            } else {
                f.neg(&f.frobenius(&self.g[j], u - nv))
            }
        });
        let kernel = system.kernel();
        let sol = (0..kernel.rows())
            .map(|i| kernel.row(i))
            .find(|row| row[..nv].iter().any(|c| !f.is_zero(c)))
            .ok_or(DecodeError::NoSolution)?;
        let v = LinearizedPoly::new(f, sol[..nv].to_vec());
        let num = LinearizedPoly::new(f, sol[nv..].to_vec());
        let msg = num.left_divide(&v)?;
        if msg.coeffs.len() > k {
            return Err(DecodeError::InexactDivision);
        }
        self.finish(y, t, msg)
    }

    fn finish(&self, y: &[E::Elem], t: usize, msg: LinearizedPoly<E>) -> Result<GabidulinDecoding<E>, DecodeError> {
        let f = &self.field;
        let codeword = self.evaluate(&msg);
        let error: Vec<_> = y.iter().zip(&codeword).map(|(a, b)| f.sub(a, b)).collect();
        let rank = self.rank(&error);
        if rank > t {
            return Err(DecodeError::RankExceeded { rank, radius: t });
        }
        let message = (0..self.k).map(|i| msg.coeff(i)).collect();
        Ok(GabidulinDecoding { codeword, message, error })
    }

    /// Codeword c with y − c = x·R for some x ∈ E^t, where the rows of `r`
    /// (over the base field) span the error's row space in the Exp_B view.
    /// Solves (H·Rᵀ)·x = H·y.
    pub fn decode_erasures(&self, y: &[E::Elem], r: &Matrix<E::Base>) -> Result<Vec<E::Elem>, DecodeError> {
        let f = &self.field;
        let n = self.n();
        if y.len() != n || r.cols() != n {
            return Err(DecodeError::Shape { expected: (1, n), found: (r.rows(), r.cols().max(y.len())) });
        }
        let r = r.row_space_basis();
        if r.rows() == 0 {
            return if self.contains(y) { Ok(y.to_vec()) } else { Err(DecodeError::NotACodeword) };
        }
        let r_ext = r.map_entries(f, |b| f.embed(b));
        let system = self.parity.mul(&r_ext.transpose());
        let x = system.solve(&self.syndrome(y))?;
        let e = r_ext.vec_mul(&x);
        Ok(y.iter().zip(&e).map(|(a, b)| f.sub(a, b)).collect())
    }

    /// Codeword of rank exactly n − k + 1: the subspace polynomial of
    /// g_0..g_{k−2}, which has q-degree k − 1.
    pub fn min_rank_witness(&self) -> Vec<E::Elem> {
        assert!(self.k > 0, "the zero code has no nonzero codeword");
        self.evaluate(&LinearizedPoly::subspace(&self.field, &self.g[..self.k - 1]))
    }

    /// Exp_B view of a vector in the canonical base-field basis.
    pub fn to_matrix(&self, v: &[E::Elem]) -> Matrix<E::Base> {
        expand_canonical(&self.field, v)
    }

    pub fn from_matrix(&self, a: &Matrix<E::Base>) -> Vec<E::Elem> {
        compose_canonical(&self.field, a)
    }

    /// The same evaluation points over a field containing E, given by `lift`.
    pub fn extend<F2: FrobeniusField>(&self, target: &F2, lift: impl Fn(&E::Elem) -> F2::Elem) -> Result<GabidulinCode<F2>, GabidulinError> {
        GabidulinCode::new(target, self.g.iter().map(lift).collect(), self.k)
    }
}

impl GabidulinCode<ExtField> {
    /// `{"q", "m", "k", "modulus", "g"}`.
    pub fn to_json(&self) -> Value {
        let f = &self.field;
        json!({
            "q": f.p(),
            "m": f.m(),
            "k": self.k,
            "modulus": f.modulus(),
            "g": self.g.iter().map(|x| f.elem_to_json(x)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, FormatError> {
        let field_json = json!({ "p": v.get("q"), "m": v.get("m"), "modulus": v.get("modulus") });
        let field = ExtField::from_json(&field_json)?;
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(|| FormatError::new("missing \"k\""))? as usize;
        let g = v
            .get("g")
            .and_then(Value::as_array)
            .ok_or_else(|| FormatError::new("missing \"g\""))?
            .iter()
            .map(|x| field.elem_from_json(x))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&field, g, k).map_err(|e| FormatError::new(e.to_string()))
    }
}

fn moore_matrix<E: FrobeniusField>(field: &E, g: &[E::Elem], rows: usize) -> Matrix<E> {
    Matrix::from_fn(field, rows, g.len(), |i, j| field.frobenius(&g[j], i))
}

/// Canonical base-field basis of E: the unit coordinate vectors.
pub fn canonical_basis<E: FrobeniusField>(field: &E) -> Vec<E::Elem> {
    let base = field.base_field();
    let m = field.degree();
    (0..m)
        .map(|i| {
            let c: Vec<_> = (0..m).map(|j| if i == j { base.one() } else { base.zero() }).collect();
            field.from_coordinates(&c)
        })
        .collect()
}

/// A Gabidulin code viewed as a base-field code of m×n matrices.
#[derive(Clone, Debug)]
pub struct GabidulinMatrixCode<E: FrobeniusField> {
    code: GabidulinCode<E>,
    base: E::Base,
}

impl<E: FrobeniusField> GabidulinMatrixCode<E> {
    pub fn new(code: GabidulinCode<E>) -> Self {
        let base = code.field.base_field();
        GabidulinMatrixCode { code, base }
    }

    pub fn code(&self) -> &GabidulinCode<E> {
        &self.code
    }
}

impl<E: FrobeniusField> MatrixCode<E::Base> for GabidulinMatrixCode<E> {
    fn field(&self) -> &E::Base {
        &self.base
    }

    fn shape(&self) -> (usize, usize) {
        (self.code.m(), self.code.n())
    }

    fn dimension(&self) -> usize {
        self.code.m() * self.code.k
    }

    /// Images of b_i·x^{q^s} for the canonical basis b and s < k.
    fn basis(&self) -> Vec<Matrix<E::Base>> {
        let f = &self.code.field;
        let basis = canonical_basis(f);
        let mut out = Vec::with_capacity(self.dimension());
        for s in 0..self.code.k {
            for b in &basis {
                let mut msg = vec![f.zero(); self.code.k];
                msg[s] = b.clone();
                out.push(self.code.to_matrix(&self.code.encode(&msg).expect("length k")));
            }
        }
        out
    }

    fn error_radius(&self) -> usize {
        self.code.error_radius()
    }

    fn erasure_radius(&self) -> usize {
        self.code.erasure_radius()
    }

    fn decode_errors(&self, y: &Matrix<E::Base>) -> Result<Matrix<E::Base>, DecodeError> {
        check_shape(y, self.shape())?;
        let d = self.code.decode_errors(&self.code.from_matrix(y))?;
        Ok(self.code.to_matrix(&d.codeword))
    }

    fn decode_erasures(&self, y: &Matrix<E::Base>, v: &Matrix<E::Base>) -> Result<Matrix<E::Base>, DecodeError> {
        check_shape(y, self.shape())?;
        let c = self.code.decode_erasures(&self.code.from_matrix(y), v)?;
        Ok(self.code.to_matrix(&c))
    }

    fn contains(&self, y: &Matrix<E::Base>) -> bool {
        y.shape() == self.shape() && self.code.contains(&self.code.from_matrix(y))
    }

    fn random_codeword(&self, rng: &mut dyn RngCore) -> Matrix<E::Base> {
        let f = &self.code.field;
        let msg: Vec<_> = (0..self.code.k).map(|_| f.random(rng)).collect();
        self.code.to_matrix(&self.code.encode(&msg).expect("length k"))
    }
}
