//! Quadratic extension F[s]/(s² − c) for a non-square c of a finite field F.
//!
//! Over GF(p) this is GF(p²), the field that holds √a when a is a non-square.
//! Over GF(q^m) with m odd and c ∈ GF(q) it is GF(q^m) ⊗ GF(q²), on which the
//! Frobenius of the first factor still acts with fixed field GF(q²).

use rand::Rng;
use serde_json::{json, Value};

use super::{ExtField, GfError, PrimeField};
use crate::field::{Field, FiniteField, FormatError, FrobeniusField};

/// u + v·s with s² equal to the field's non-residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad<E> {
    pub re: E,
    pub im: E,
}

#[derive(Clone, Debug)]
pub struct QuadExtField<F: FiniteField> {
    base: F,
    nonresidue: F::Elem,
}

/// GF(p²) with elements (u, v) meaning u + v√c.
pub type Gf2 = QuadExtField<PrimeField>;

impl<F: FiniteField> QuadExtField<F> {
    pub fn new(base: F, nonresidue: F::Elem) -> Result<Self, GfError> {
        if base.is_square(&nonresidue) {
            return Err(GfError::IsASquare);
        }
        Ok(QuadExtField { base, nonresidue })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn nonresidue(&self) -> &F::Elem {
        &self.nonresidue
    }

    /// The adjoined square root s.
    pub fn sqrt_nonresidue(&self) -> Quad<F::Elem> {
        Quad { re: self.base.zero(), im: self.base.one() }
    }

    pub fn embed_base(&self, x: &F::Elem) -> Quad<F::Elem> {
        Quad { re: x.clone(), im: self.base.zero() }
    }

    /// Conjugation s ↦ −s.
    pub fn conj(&self, x: &Quad<F::Elem>) -> Quad<F::Elem> {
        Quad { re: x.re.clone(), im: self.base.neg(&x.im) }
    }
}

impl Gf2 {
    /// GF(p²) built on the smallest non-residue.
    pub fn gfp2(p: u64) -> Result<Self, GfError> {
        let base = PrimeField::new(p)?;
        let c = base.smallest_nonresidue();
        Self::new(base, c)
    }
}

impl QuadExtField<ExtField> {
    /// GF(q^m) ⊗ GF(q²) for a non-square `c` of GF(q); needs m odd so that
    /// c stays a non-square and the result is a field.
    pub fn scalar_extension(ext: ExtField, c: u64) -> Result<Self, GfError> {
        let prime = ext.prime();
        if prime.legendre(c) != -1 {
            return Err(GfError::IsASquare);
        }
        let nr = ext.embed(&c);
        Self::new(ext, nr)
    }
}

impl<F: FiniteField> Field for QuadExtField<F> {
    type Elem = Quad<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Quad { re: self.base.zero(), im: self.base.zero() }
    }
    fn one(&self) -> Self::Elem {
        Quad { re: self.base.one(), im: self.base.zero() }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.re) && self.base.is_zero(&a.im)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Quad { re: self.base.add(&a.re, &b.re), im: self.base.add(&a.im, &b.im) }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Quad { re: self.base.sub(&a.re, &b.re), im: self.base.sub(&a.im, &b.im) }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Quad { re: self.base.neg(&a.re), im: self.base.neg(&a.im) }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let vv = f.mul(&a.im, &b.im);
        Quad {
            re: f.add(&f.mul(&a.re, &b.re), &f.mul(&self.nonresidue, &vv)),
            im: f.add(&f.mul(&a.re, &b.im), &f.mul(&a.im, &b.re)),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let f = &self.base;
        let norm = f.sub(&f.mul(&a.re, &a.re), &f.mul(&self.nonresidue, &f.mul(&a.im, &a.im)));
        let ni = f.inv(&norm)?;
        Some(Quad { re: f.mul(&a.re, &ni), im: f.neg(&f.mul(&a.im, &ni)) })
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed_base(&self.base.from_i64(n))
    }
    fn same_field(&self, other: &Self) -> bool {
        self.base.same_field(&other.base) && self.nonresidue == other.nonresidue
    }
    fn descriptor(&self) -> Value {
        json!({ "base": self.base.descriptor(), "nonresidue": self.base.elem_to_json(&self.nonresidue) })
    }
    fn elem_to_json(&self, a: &Self::Elem) -> Value {
        json!([self.base.elem_to_json(&a.re), self.base.elem_to_json(&a.im)])
    }
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, FormatError> {
        match v.as_array().map(Vec::as_slice) {
            Some([u, w]) => Ok(Quad { re: self.base.elem_from_json(u)?, im: self.base.elem_from_json(w)? }),
            _ => Err(FormatError::new("quadratic element must be a pair")),
        }
    }
}

impl<F: FiniteField> FiniteField for QuadExtField<F> {
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn order(&self) -> u128 {
        let q = self.base.order();
        q.checked_mul(q).expect("field order overflows u128")
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        Quad { re: self.base.random(rng), im: self.base.random(rng) }
    }
    fn element(&self, index: u128) -> Self::Elem {
        let q = self.base.order();
        Quad { re: self.base.element(index % q), im: self.base.element(index / q % q) }
    }
}

impl FrobeniusField for QuadExtField<ExtField> {
    type Base = Gf2;

    fn base_field(&self) -> Gf2 {
        let c = self.nonresidue[0];
        debug_assert!(self.nonresidue[1..].iter().all(|&x| x == 0));
        QuadExtField { base: self.base.prime(), nonresidue: c }
    }
    fn degree(&self) -> usize {
        self.base.m()
    }
    fn frobenius(&self, x: &Self::Elem, i: usize) -> Self::Elem {
        Quad { re: self.base.frobenius(&x.re, i), im: self.base.frobenius(&x.im, i) }
    }
    fn coordinates(&self, x: &Self::Elem) -> Vec<Quad<u64>> {
        x.re.iter().zip(&x.im).map(|(&u, &v)| Quad { re: u, im: v }).collect()
    }
    fn from_coordinates(&self, c: &[Quad<u64>]) -> Self::Elem {
        Quad { re: c.iter().map(|q| q.re).collect(), im: c.iter().map(|q| q.im).collect() }
    }
    fn embed(&self, b: &Quad<u64>) -> Self::Elem {
        Quad { re: self.base.embed(&b.re), im: self.base.embed(&b.im) }
    }
}
