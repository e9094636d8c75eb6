//! Field abstraction shared by matrices and codes.
//!
//! A [`Field`] value is a descriptor (it may carry a modulus or a list of
//! generators); elements are plain data and every operation goes through the
//! descriptor. This lets [`crate::linalg::Matrix`] work unchanged over the
//! rationals, a multiquadratic tower, GF(p), GF(p²) and GF(p^m).

use std::fmt;

use rand::Rng;
use serde_json::Value;

/// Error raised when JSON does not describe a valid field or element.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed JSON: {0}")]
pub struct FormatError(pub String);

impl FormatError {
    pub fn new(msg: impl Into<String>) -> Self {
        FormatError(msg.into())
    }
}

/// Exact field arithmetic through a descriptor.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Whether two descriptors denote the same field.
    fn same_field(&self, other: &Self) -> bool;

    /// JSON descriptor of the field itself.
    fn descriptor(&self) -> Value;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, FormatError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `a + b·c`, the inner step of elimination.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Finite fields: enumeration and uniform sampling.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    /// Number of elements.
    fn order(&self) -> u128;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Bijection `0..order` onto the field; index 0 maps to zero.
    fn element(&self, index: u128) -> Self::Elem;

    /// Uniform nonzero element.
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Euler's criterion; zero counts as a square.
    fn is_square(&self, a: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        self.is_one(&self.pow(a, (self.order() - 1) / 2))
    }
}

/// A finite field E with a distinguished automorphism σ of order `degree()`
/// over a subfield B, and a fixed B-basis of E.
///
/// For GF(q^m) over GF(q), σ is x ↦ x^q. For GF(q^m)⊗GF(q²) with m odd it is
/// the same map applied to the GF(q^m) factor.
pub trait FrobeniusField: FiniteField {
    type Base: FiniteField;

    fn base_field(&self) -> Self::Base;
    /// Dimension of E over the base field (order of σ).
    fn degree(&self) -> usize;
    /// σ^i(x); `i` is taken modulo the degree.
    fn frobenius(&self, x: &Self::Elem, i: usize) -> Self::Elem;
    /// Coordinates of `x` in the canonical base-field basis.
    fn coordinates(&self, x: &Self::Elem) -> Vec<<Self::Base as Field>::Elem>;
    fn from_coordinates(&self, c: &[<Self::Base as Field>::Elem]) -> Self::Elem;
    fn embed(&self, b: &<Self::Base as Field>::Elem) -> Self::Elem;
}
