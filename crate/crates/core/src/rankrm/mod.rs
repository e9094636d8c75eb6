//! Binary rank-metric Reed–Muller codes RM(r, m) over a multiquadratic tower
//! L/Q, with the recursive half-distance decoder.
//!
//! A codeword is the N×N rational matrix (N = 2^m) of a Θ-polynomial of
//! Θ-degree ≤ r in the recursive basis of L.

mod erasure;
mod sampler;
mod structure;
mod theta;

pub use erasure::erasure_decode;
pub use sampler::{random_message, sample_error, SamplerExhausted};
pub use structure::{
    devectorize, dimension, fast_syndrome, fold, generator_matrix, iterated_fold_ranks, lift_one_level,
    message_exponents, naive_syndrome, parity_check_matrix, parity_exponents, vectorize,
};
pub use theta::ThetaPolynomial;

use serde_json::{json, Value};

use crate::error::DecodeError;
use crate::exactfield::{MQElement, MultiquadraticField, Rational, Rationals};
use crate::field::{Field, FormatError};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RmError {
    #[error("order r = {r} outside -1..={m}")]
    InvalidOrder { r: i32, m: usize },
    #[error("expected {expected} message coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coefficient is not in the code's field")]
    FieldMismatch,
    #[error("expected a {n}x{n} matrix")]
    Shape { n: usize },
}

/// RM(r, m) with m the height of `field`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMCode {
    field: MultiquadraticField,
    r: i32,
}

/// Fold rank observed at one level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldTrace {
    pub m: usize,
    pub r: i32,
    pub fold_rank: usize,
}

#[derive(Clone, Debug)]
pub struct DecodeReport {
    pub codeword: Result<Matrix<Rationals>, DecodeError>,
    /// Y − codeword on success.
    pub error: Option<Matrix<Rationals>>,
    /// Innermost level first.
    pub trace: Vec<FoldTrace>,
}

impl DecodeReport {
    pub fn is_success(&self) -> bool {
        self.codeword.is_ok()
    }
}

/// 2^{m−r−1} − 1, or 0 when r ≥ m − 1.
pub fn decoding_radius(r: i32, m: usize) -> usize {
    if r + 1 >= m as i32 {
        0
    } else {
        (1usize << (m as i32 - r - 1)) - 1
    }
}

impl RMCode {
    pub fn new(field: MultiquadraticField, r: i32) -> Result<Self, RmError> {
        if r < -1 || r > field.m() as i32 {
            return Err(RmError::InvalidOrder { r, m: field.m() });
        }
        Ok(RMCode { field, r })
    }

    pub fn field(&self) -> &MultiquadraticField {
        &self.field
    }
    pub fn r(&self) -> i32 {
        self.r
    }
    pub fn m(&self) -> usize {
        self.field.m()
    }
    pub fn n(&self) -> usize {
        self.field.degree()
    }

    /// Dimension over L.
    pub fn dimension(&self) -> usize {
        dimension(self.r, self.m())
    }

    /// 2^{m−r} for 0 ≤ r ≤ m; `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        (self.r >= 0).then(|| 1 << (self.m() as i32 - self.r))
    }

    pub fn radius(&self) -> usize {
        decoding_radius(self.r, self.m())
    }

    /// (1+θ₁)…(1+θ_r), a codeword of rank exactly 2^{m−r}.
    pub fn min_rank_codeword(&self) -> Option<Matrix<Rationals>> {
        if self.r < 0 {
            return None;
        }
        let l = &self.field;
        let mut p = ThetaPolynomial::monomial(l, 0, l.one());
        for i in 0..self.r as usize {
            let mut q = ThetaPolynomial::zero(l);
            for (g, c) in p.terms() {
                for h in [g, g | 1 << i] {
                    q.set(h, l.add(&q.coeff(h), c));
                }
            }
            p = q;
        }
        Some(p.to_matrix())
    }

    pub fn message_exponents(&self) -> Vec<usize> {
        message_exponents(self.r, self.m())
    }

    pub fn generator_matrix(&self) -> Matrix<MultiquadraticField> {
        generator_matrix(&self.field, self.r, self.m())
    }

    pub fn parity_check_matrix(&self) -> Matrix<MultiquadraticField> {
        parity_check_matrix(&self.field, self.r, self.m())
    }

    /// Θ-polynomial with the message coefficients on [`Self::message_exponents`].
    pub fn theta_polynomial(&self, message: &[MQElement]) -> Result<ThetaPolynomial, RmError> {
        let exps = self.message_exponents();
        if message.len() != exps.len() {
            return Err(RmError::LengthMismatch { expected: exps.len(), got: message.len() });
        }
        if message.iter().any(|c| c.field() != &self.field) {
            return Err(RmError::FieldMismatch);
        }
        Ok(ThetaPolynomial::from_terms(&self.field, exps.into_iter().zip(message.iter().cloned())))
    }

    pub fn encode(&self, message: &[MQElement]) -> Result<Matrix<Rationals>, RmError> {
        Ok(self.theta_polynomial(message)?.to_matrix())
    }

    /// message·G as a vector in L^N.
    pub fn encode_vector(&self, message: &[MQElement]) -> Result<Vec<MQElement>, RmError> {
        self.theta_polynomial(message)?;
        Ok(self.generator_matrix().vec_mul(message))
    }

    fn check_shape(&self, y: &Matrix<Rationals>) -> Result<(), DecodeError> {
        let n = self.n();
        if y.shape() != (n, n) {
            return Err(DecodeError::Shape { expected: (n, n), found: y.shape() });
        }
        Ok(())
    }

    /// Embeds a rational matrix as a matrix over the tower's base field.
    pub fn to_base(&self, y: &Matrix<Rationals>) -> Matrix<MultiquadraticField> {
        let k = self.field.suffix(self.m());
        y.map_entries(&k, |x| k.from_rational(x.clone()))
    }

    pub fn from_base(&self, y: &Matrix<MultiquadraticField>) -> Matrix<Rationals> {
        y.map_entries(&Rationals, |x| x.coords()[0].clone())
    }

    pub fn vectorize(&self, y: &Matrix<Rationals>) -> Vec<MQElement> {
        vectorize(&self.field, self.m(), &self.to_base(y))
    }

    pub fn syndrome(&self, y: &Matrix<Rationals>) -> Vec<MQElement> {
        fast_syndrome(&self.field, self.r, self.m(), &self.vectorize(y))
    }

    pub fn contains(&self, y: &Matrix<Rationals>) -> bool {
        y.shape() == (self.n(), self.n()) && self.syndrome(y).iter().all(|s| s.is_zero())
    }

    /// Erasure decoding with the error's row space contained in rowspace(`v`).
    pub fn erasure_decode(&self, y: &Matrix<Rationals>, v: &Matrix<Rationals>) -> Result<Matrix<Rationals>, DecodeError> {
        self.check_shape(y)?;
        let m = self.m();
        let c = erasure_decode(&self.field, self.r, m, &self.vectorize(y), &self.to_base(v))?;
        Ok(self.from_base(&devectorize(&self.field, m, &c)))
    }

    /// Recursive decoding of Y = C + E with Rk(E) ≤ [`Self::radius`].
    pub fn decode(&self, y: &Matrix<Rationals>) -> DecodeReport {
        let mut trace = Vec::new();
        let codeword = self
            .check_shape(y)
            .and_then(|_| decode_rec(&self.field, self.r, self.m(), &self.to_base(y), &mut trace))
            .map(|c| self.from_base(&c));
        let error = codeword.as_ref().ok().map(|c| y.sub(c));
        DecodeReport { codeword, error, trace }
    }

    pub fn to_json(&self) -> Value {
        json!({ "field": self.field.to_json(), "r": self.r, "m": self.m() })
    }

    pub fn from_json(v: &Value) -> Result<Self, FormatError> {
        let field = MultiquadraticField::from_json(v.get("field").ok_or_else(|| FormatError::new("missing \"field\""))?)?;
        let r = v.get("r").and_then(Value::as_i64).ok_or_else(|| FormatError::new("missing \"r\""))?;
        Self::new(field, r as i32).map_err(|e| FormatError::new(e.to_string()))
    }
}

/// Decodes Y over K = L.suffix(m) for RM(r, m).
fn decode_rec(
    l: &MultiquadraticField,
    r: i32,
    m: usize,
    y: &Matrix<MultiquadraticField>,
    trace: &mut Vec<FoldTrace>,
) -> Result<Matrix<MultiquadraticField>, DecodeError> {
    let k = l.suffix(m);
    let n = 1usize << m;
    if r < 0 {
        return Ok(Matrix::zeros(&k, n, n));
    }
    if r >= m as i32 {
        return Ok(y.clone());
    }
    let t = decoding_radius(r, m);
    if t == 0 {
        let s = fast_syndrome(l, r, m, &vectorize(l, m, y));
        return if s.iter().all(|x| x.is_zero()) { Ok(y.clone()) } else { Err(DecodeError::NotACodeword) };
    }

    let h = n / 2;
    let k1 = l.suffix(m - 1);
    let a: &Rational = l.generator(m);
    let half = Rational::new(1.into(), 2.into());

    // Fold away A₀, A₁ and recover (2/α_m)B₀ + 2B₁ from RM(r−1, m−1) over K(α_m).
    let folded = fold(l, m, y);
    let inner = decode_rec(l, r - 1, m - 1, &folded, trace)?;
    let e_fold = folded.sub(&inner);
    let fold_rank = e_fold.rank();
    trace.push(FoldTrace { m, r, fold_rank });
    if fold_rank > t {
        return Err(DecodeError::RankExceeded { rank: fold_rank, radius: t });
    }

    // Over K(α_m): x = x⁰ + x¹α_m with x⁰, x¹ ∈ K. (2/α_m)B₀ = (2B₀/a)·α_m.
    let split = |x: &Matrix<MultiquadraticField>| {
        let parts: Vec<_> = x.entries().iter().map(|e| k1.split_at(e, 1).expect("K(α_m) has a generator")).collect();
        let p0 = Matrix::from_fn(&k, x.rows(), x.cols(), |i, j| parts[i * x.cols() + j].0.clone());
        let p1 = Matrix::from_fn(&k, x.rows(), x.cols(), |i, j| parts[i * x.cols() + j].1.clone());
        (p0, p1)
    };
    let scale = |x: &Matrix<MultiquadraticField>, c: &Rational| x.map(|e| e.scale(c));
    let (p0, p1) = split(&inner);
    let b1 = scale(&p0, &half);
    let b0 = scale(&p1, &(a * &half));

    // Ỹ = Y − [[B₀, −aB₁], [B₁, −B₀]]; its bottom squeeze is A₁ − α_m⁻¹A₀ + F₁.
    let b_part = Matrix::block(&b0, &scale(&b1, &-a), &b1, &b0.neg()).expect("conformable blocks");
    let y_tilde = lift_one_level(l, m, &y.sub(&b_part));
    let (_, _, yt10, yt11) = y_tilde.split_blocks(h, h);
    let z = yt10.sub(&yt11.map(|e| k1.mul_by_alpha_inv(e, 1).expect("generator")));

    let v = e_fold.row_space_basis();
    let w = erasure_decode(l, r, m - 1, &vectorize(l, m - 1, &z), &v)?;
    let (q0, q1) = split(&devectorize(l, m - 1, &w));
    let a1 = q0;
    let a0 = scale(&q1, &-a);

    let c = Matrix::block(&a0.add(&b0), &scale(&a1.sub(&b1), a), &a1.add(&b1), &a0.sub(&b0)).expect("conformable blocks");
    let rank = y.sub(&c).rank();
    if rank > t {
        return Err(DecodeError::RankExceeded { rank, radius: t });
    }
    Ok(c)
}
