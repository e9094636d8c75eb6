//! Exact rationals and the multiquadratic tower L = Q(α₁,…,α_m), αᵢ² = aᵢ.
//!
//! An element of L is stored as 2^m rational coordinates. Coordinate index
//! `S` (a bitmask) holds the coefficient of ∏_{i∈S} α_{i+1}; bit `i` of the
//! index stands for generator α_{i+1}. This is the recursive basis order
//! B_{i+1} = B_i ∪ B_i·α_{i+1}: for Q(√2, √3) the basis is (1, √2, √3, √6).
//!
//! Sub-towers appear constantly in the decoder: the prefix Q(α₁,…,α_k) is the
//! field L_k that a codeword block lives in, and the suffix
//! Q(α_{k+1},…,α_m) is the base field after m−k folds. Both keep the relative
//! generator order, so embeddings are bit shifts of the coordinate index.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::field::{Field, FormatError};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| FormatError::new(format!("bad rational {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| FormatError::new(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(FormatError::new(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Whether `r` is the square of a rational number.
pub fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let s = n.sqrt();
        &(&s * &s) == n
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("generator a{0} is zero")]
    ZeroGenerator(usize),
    #[error("generator a{0} is a square in the tower below it, the degree would collapse")]
    DegreeCollapse(usize),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs a tower of height at least one")]
    TowerHeightZero,
    #[error("generator index {index} outside 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Descriptor of L = Q(α₁,…,α_m). Cheap to clone.
#[derive(Clone)]
pub struct MultiquadraticField {
    gens: Arc<[Rational]>,
}

impl fmt::Debug for MultiquadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|a| a.to_string()).collect();
        write!(f, "Q(sqrt[{}])", g.join(", "))
    }
}

impl PartialEq for MultiquadraticField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens) || self.gens == other.gens
    }
}

impl Eq for MultiquadraticField {}

impl MultiquadraticField {
    /// Builds the tower, rejecting generators that would not double the degree.
    pub fn new(gens: Vec<Rational>) -> Result<Self, FieldError> {
        for (i, a) in gens.iter().enumerate() {
            if a.is_zero() {
                return Err(FieldError::ZeroGenerator(i + 1));
            }
            // Kummer theory: a rational is a square in Q(α₁,…,α_i) exactly
            // when it is a rational square times a product of the earlier aⱼ.
            for subset in 0u64..(1u64 << i) {
                let mut prod = a.clone();
                for (j, aj) in gens.iter().enumerate().take(i) {
                    if subset >> j & 1 == 1 {
                        prod *= aj;
                    }
                }
                if is_rational_square(&prod) {
                    return Err(FieldError::DegreeCollapse(i + 1));
                }
            }
        }
        Ok(Self::from_trusted(gens))
    }

    fn from_trusted(gens: Vec<Rational>) -> Self {
        assert!(gens.len() < 31, "tower too tall");
        MultiquadraticField { gens: gens.into() }
    }

    pub fn from_ints(gens: &[i64]) -> Result<Self, FieldError> {
        Self::new(gens.iter().map(|&a| rat(a)).collect())
    }

    /// The field Q (empty tower).
    pub fn rationals() -> Self {
        Self::from_trusted(Vec::new())
    }

    /// Q(√2, √3, √5, …) with the first `m` primes.
    pub fn first_primes(m: usize) -> Self {
        let mut primes = Vec::with_capacity(m);
        let mut c = 2i64;
        while primes.len() < m {
            if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
                primes.push(rat(c));
            }
            c += 1;
        }
        Self::from_trusted(primes)
    }

    /// Tower height m.
    pub fn m(&self) -> usize {
        self.gens.len()
    }

    /// [L:Q] = 2^m.
    pub fn degree(&self) -> usize {
        1 << self.gens.len()
    }

    pub fn generators(&self) -> &[Rational] {
        &self.gens
    }

    /// aᵢ for 1-based `i`.
    pub fn generator(&self, i: usize) -> &Rational {
        &self.gens[i - 1]
    }

    /// L_k = Q(α₁,…,α_k).
    pub fn prefix(&self, k: usize) -> Self {
        if k == self.m() {
            return self.clone();
        }
        Self::from_trusted(self.gens[..k].to_vec())
    }

    /// Q(α_{k+1},…,α_m).
    pub fn suffix(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self::from_trusted(self.gens[k..].to_vec())
    }

    /// The tower with generator `i` (1-based) removed.
    pub fn without(&self, i: usize) -> Self {
        let mut g = self.gens.to_vec();
        g.remove(i - 1);
        Self::from_trusted(g)
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<MQElement, FieldError> {
        if coords.len() != self.degree() {
            return Err(FieldError::LengthMismatch { expected: self.degree(), got: coords.len() });
        }
        Ok(self.wrap(coords))
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<MQElement, FieldError> {
        self.element(coords.iter().map(|&c| rat(c)).collect())
    }

    fn wrap(&self, coords: Vec<Rational>) -> MQElement {
        debug_assert_eq!(coords.len(), self.degree());
        MQElement { field: self.clone(), coords }
    }

    pub fn from_rational(&self, r: Rational) -> MQElement {
        let mut c = vec![Rational::zero(); self.degree()];
        c[0] = r;
        self.wrap(c)
    }

    /// The basis element ∏_{i∈S} α_{i+1} for bitmask `S`.
    pub fn basis_element(&self, mask: usize) -> MQElement {
        let mut c = vec![Rational::zero(); self.degree()];
        c[mask] = Rational::one();
        self.wrap(c)
    }

    /// αᵢ for 1-based `i`.
    pub fn alpha(&self, i: usize) -> Result<MQElement, FieldError> {
        self.check_index(i)?;
        Ok(self.basis_element(1 << (i - 1)))
    }

    fn check_index(&self, i: usize) -> Result<(), FieldError> {
        if i == 0 || i > self.m() {
            return Err(FieldError::IndexOutOfRange { index: i, m: self.m() });
        }
        Ok(())
    }

    /// Element with independent integer coordinates drawn from `[-bound, bound]`.
    pub fn random_integral<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> MQElement {
        let c = (0..self.degree()).map(|_| rat(rng.random_range(-bound..=bound))).collect();
        self.wrap(c)
    }

    /// Embeds an element of `self.prefix(k)`; the coordinate index is unchanged.
    pub fn lift_from_prefix(&self, x: &MQElement) -> MQElement {
        debug_assert_eq!(x.field.gens[..], self.gens[..x.field.m()]);
        let mut c = vec![Rational::zero(); self.degree()];
        c[..x.coords.len()].clone_from_slice(&x.coords);
        self.wrap(c)
    }

    /// Embeds an element of `self.suffix(k)`; index `T` moves to `T << k`.
    pub fn lift_from_suffix(&self, x: &MQElement, k: usize) -> MQElement {
        debug_assert_eq!(x.field.gens[..], self.gens[k..]);
        let mut c = vec![Rational::zero(); self.degree()];
        for (t, v) in x.coords.iter().enumerate() {
            c[t << k] = v.clone();
        }
        self.wrap(c)
    }

    /// αᵢ·x as a coordinate permutation plus 2^{m−1} scalings by aᵢ.
    pub fn mul_by_alpha(&self, x: &MQElement, i: usize) -> Result<MQElement, FieldError> {
        self.check_index(i)?;
        self.same(x)?;
        Ok(self.wrap(mul_alpha_coords(&x.coords, i - 1, &self.gens[i - 1])))
    }

    /// αᵢ⁻¹·x = αᵢ·x / aᵢ.
    pub fn mul_by_alpha_inv(&self, x: &MQElement, i: usize) -> Result<MQElement, FieldError> {
        let y = self.mul_by_alpha(x, i)?;
        let inv = self.gens[i - 1].recip();
        Ok(self.wrap(y.coords.iter().map(|c| c * &inv).collect()))
    }

    /// Applies ∏_{i∈mask} θᵢ, where θᵢ negates αᵢ and fixes the other generators.
    pub fn galois(&self, x: &MQElement, mask: usize) -> MQElement {
        let c = x
            .coords
            .iter()
            .enumerate()
            .map(|(s, v)| if (s & mask).count_ones() % 2 == 1 { -v } else { v.clone() })
            .collect();
        self.wrap(c)
    }

    /// x = x⁰ + x¹·α_m with x⁰, x¹ ∈ L_{m−1}.
    pub fn split(&self, x: &MQElement) -> Result<(MQElement, MQElement), FieldError> {
        if self.m() == 0 {
            return Err(FieldError::TowerHeightZero);
        }
        self.split_at(x, self.m())
    }

    pub fn join(&self, x0: &MQElement, x1: &MQElement) -> Result<MQElement, FieldError> {
        if self.m() == 0 {
            return Err(FieldError::TowerHeightZero);
        }
        self.join_at(x0, x1, self.m())
    }

    /// x = x⁰ + x¹·αᵢ with x⁰, x¹ in `self.without(i)`.
    pub fn split_at(&self, x: &MQElement, i: usize) -> Result<(MQElement, MQElement), FieldError> {
        self.check_index(i)?;
        self.same(x)?;
        let sub = self.without(i);
        let bit = i - 1;
        let low = (1usize << bit) - 1;
        let mut x0 = Vec::with_capacity(sub.degree());
        let mut x1 = Vec::with_capacity(sub.degree());
        for s in 0..sub.degree() {
            let idx = (s & low) | ((s & !low) << 1);
            x0.push(x.coords[idx].clone());
            x1.push(x.coords[idx | (1 << bit)].clone());
        }
        Ok((sub.wrap(x0), sub.wrap(x1)))
    }

    pub fn join_at(&self, x0: &MQElement, x1: &MQElement, i: usize) -> Result<MQElement, FieldError> {
        self.check_index(i)?;
        let sub = self.without(i);
        if x0.field != sub || x1.field != sub {
            return Err(FieldError::FieldMismatch);
        }
        let bit = i - 1;
        let low = (1usize << bit) - 1;
        let mut c = vec![Rational::zero(); self.degree()];
        for s in 0..sub.degree() {
            let idx = (s & low) | ((s & !low) << 1);
            c[idx] = x0.coords[s].clone();
            c[idx | (1 << bit)] = x1.coords[s].clone();
        }
        Ok(self.wrap(c))
    }

    fn same(&self, x: &MQElement) -> Result<(), FieldError> {
        if &x.field != self {
            return Err(FieldError::FieldMismatch);
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({ "generators": self.gens.iter().map(|a| a.to_string()).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self, FormatError> {
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| FormatError::new("field needs a \"generators\" array"))?;
        let gens = gens
            .iter()
            .map(|g| g.as_str().ok_or_else(|| FormatError::new("generator must be a string")).and_then(parse_rational))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(gens).map_err(|e| FormatError::new(e.to_string()))
    }
}

/// Element of a multiquadratic tower.
#[derive(Clone)]
pub struct MQElement {
    field: MultiquadraticField,
    coords: Vec<Rational>,
}

impl PartialEq for MQElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for MQElement {}

impl MQElement {
    pub fn field(&self) -> &MultiquadraticField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational part when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.same(other)?;
        Ok(self.field.wrap(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.same(other)?;
        Ok(self.field.wrap(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.same(other)?;
        Ok(self.field.wrap(mul_rec(&self.field.gens, &self.coords, &other.coords)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.field.wrap(inv_rec(&self.field.gens, &self.coords)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.field.wrap(self.coords.iter().map(|c| c * r).collect())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coords.iter().map(|c| Value::String(c.to_string())).collect())
    }
}

impl fmt::Debug for MQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints `3 + 2*s1 - 1/2*s1s2`, where `sI` stands for αᵢ.
impl fmt::Display for MQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let label: String = (0..self.field.m()).filter(|i| s >> i & 1 == 1).map(|i| format!("s{}", i + 1)).collect();
            match (label.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{label}")?,
                (false, false) => write!(f, "{mag}*{label}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &MQElement {
            type Output = MQElement;
            /// # Panics
            /// If the operands belong to different towers; use the `checked_*` form to handle that.
            fn $m(self, rhs: &MQElement) -> MQElement {
                self.$checked(rhs).expect("MQElement operands from different fields")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &MQElement {
    type Output = MQElement;
    fn neg(self) -> MQElement {
        self.field.wrap(self.coords.iter().map(|c| -c).collect())
    }
}

fn all_zero(x: &[Rational]) -> bool {
    x.iter().all(Zero::is_zero)
}

fn mul_alpha_coords(x: &[Rational], bit: usize, a: &Rational) -> Vec<Rational> {
    let b = 1usize << bit;
    (0..x.len())
        .map(|s| if s & b == 0 { &x[s | b] * a } else { x[s ^ b].clone() })
        .collect()
}

/// (x₀ + x₁α)(y₀ + y₁α) = (x₀y₀ + a·x₁y₁) + (x₀y₁ + x₁y₀)α, recursing on L_{k−1}.
fn mul_rec(gens: &[Rational], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    if n == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = n / 2;
    let sub = &gens[..gens.len() - 1];
    let a = &gens[gens.len() - 1];
    let (x0, x1) = x.split_at(h);
    let (y0, y1) = y.split_at(h);
    let (z0x, z1x, z0y, z1y) = (all_zero(x0), all_zero(x1), all_zero(y0), all_zero(y1));
    let mut out = vec![Rational::zero(); n];
    if !(z0x || z0y) {
        for (o, v) in out[..h].iter_mut().zip(mul_rec(sub, x0, y0)) {
            *o += v;
        }
    }
    if !(z1x || z1y) {
        for (o, v) in out[..h].iter_mut().zip(mul_rec(sub, x1, y1)) {
            *o += v * a;
        }
    }
    if !(z0x || z1y) {
        for (o, v) in out[h..].iter_mut().zip(mul_rec(sub, x0, y1)) {
            *o += v;
        }
    }
    if !(z1x || z0y) {
        for (o, v) in out[h..].iter_mut().zip(mul_rec(sub, x1, y0)) {
            *o += v;
        }
    }
    out
}

/// (x₀ + x₁α)⁻¹ = (x₀ − x₁α)/(x₀² − a·x₁²); the norm is inverted in L_{k−1}.
fn inv_rec(gens: &[Rational], x: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    if n == 1 {
        return vec![x[0].recip()];
    }
    let h = n / 2;
    let sub = &gens[..gens.len() - 1];
    let a = &gens[gens.len() - 1];
    let (x0, x1) = x.split_at(h);
    let mut norm = mul_rec(sub, x0, x0);
    if !all_zero(x1) {
        for (o, v) in norm.iter_mut().zip(mul_rec(sub, x1, x1)) {
            *o -= v * a;
        }
    }
    let ninv = inv_rec(sub, &norm);
    let mut out = mul_rec(sub, x0, &ninv);
    if all_zero(x1) {
        out.extend(std::iter::repeat_with(Rational::zero).take(h));
    } else {
        out.extend(mul_rec(sub, x1, &ninv).into_iter().map(|v| -v));
    }
    out
}

impl Field for MultiquadraticField {
    type Elem = MQElement;

    fn zero(&self) -> MQElement {
        self.wrap(vec![Rational::zero(); self.degree()])
    }

    fn one(&self) -> MQElement {
        self.from_rational(Rational::one())
    }

    fn is_zero(&self, a: &MQElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &MQElement, b: &MQElement) -> MQElement {
        debug_assert!(&a.field == self && &b.field == self);
        self.wrap(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    fn sub(&self, a: &MQElement, b: &MQElement) -> MQElement {
        debug_assert!(&a.field == self && &b.field == self);
        self.wrap(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    fn neg(&self, a: &MQElement) -> MQElement {
        -a
    }

    fn mul(&self, a: &MQElement, b: &MQElement) -> MQElement {
        debug_assert!(&a.field == self && &b.field == self);
        self.wrap(mul_rec(&self.gens, &a.coords, &b.coords))
    }

    fn inv(&self, a: &MQElement) -> Option<MQElement> {
        a.inv().ok()
    }

    fn from_i64(&self, n: i64) -> MQElement {
        self.from_rational(rat(n))
    }

    fn same_field(&self, other: &Self) -> bool {
        self == other
    }

    fn descriptor(&self) -> Value {
        self.to_json()
    }

    fn elem_to_json(&self, a: &MQElement) -> Value {
        a.to_json()
    }

    fn elem_from_json(&self, v: &Value) -> Result<MQElement, FormatError> {
        let arr = v.as_array().ok_or_else(|| FormatError::new("element must be an array"))?;
        let c = arr
            .iter()
            .map(|s| s.as_str().ok_or_else(|| FormatError::new("coordinate must be a string")).and_then(parse_rational))
            .collect::<Result<Vec<_>, _>>()?;
        self.element(c).map_err(|e| FormatError::new(e.to_string()))
    }
}

/// The field Q with [`Rational`] elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> Rational {
        rat(n)
    }
    fn same_field(&self, _: &Self) -> bool {
        true
    }
    fn descriptor(&self) -> Value {
        json!({ "generators": [] })
    }
    fn elem_to_json(&self, a: &Rational) -> Value {
        Value::String(a.to_string())
    }
    fn elem_from_json(&self, v: &Value) -> Result<Rational, FormatError> {
        v.as_str().ok_or_else(|| FormatError::new("rational must be a string")).and_then(parse_rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn q23() -> MultiquadraticField {
        MultiquadraticField::from_ints(&[2, 3]).unwrap()
    }

    /// Oracle product: sum over coordinate pairs of βS·βT = (∏_{S∩T} aᵢ) β_{S⊕T}.
    fn bilinear_mul(f: &MultiquadraticField, x: &MQElement, y: &MQElement) -> MQElement {
        let mut out = vec![Rational::zero(); f.degree()];
        for (s, xs) in x.coords().iter().enumerate() {
            for (t, yt) in y.coords().iter().enumerate() {
                let mut c = xs * yt;
                for i in 0..f.m() {
                    if (s & t) >> i & 1 == 1 {
                        c *= f.generator(i + 1);
                    }
                }
                out[s ^ t] += c;
            }
        }
        f.element(out).unwrap()
    }

    #[test]
    fn empty_tower_is_q() {
        let f = MultiquadraticField::new(vec![]).unwrap();
        assert_eq!(f.m(), 0);
        assert_eq!(f.degree(), 1);
        let x = f.from_rational(ratio(3, 4));
        assert_eq!(&x * &x.inv().unwrap(), f.one());
    }

    #[test]
    fn basis_order_is_recursive() {
        let f = q23();
        let s2 = f.alpha(1).unwrap();
        let s3 = f.alpha(2).unwrap();
        assert_eq!(s2.coords()[1], rat(1));
        assert_eq!(s3.coords()[2], rat(1));
        assert_eq!((&s2 * &s3).coords(), f.basis_element(3).coords());
    }

    #[test]
    fn degree_collapse_detected() {
        assert_eq!(MultiquadraticField::from_ints(&[2, 8]).unwrap_err(), FieldError::DegreeCollapse(2));
        assert_eq!(MultiquadraticField::from_ints(&[4]).unwrap_err(), FieldError::DegreeCollapse(1));
        assert_eq!(MultiquadraticField::from_ints(&[2, 3, 6]).unwrap_err(), FieldError::DegreeCollapse(3));
        assert_eq!(MultiquadraticField::from_ints(&[0]).unwrap_err(), FieldError::ZeroGenerator(1));
        assert!(MultiquadraticField::from_ints(&[-1, 2, 3]).is_ok());
        assert!(MultiquadraticField::new(vec![ratio(1, 2), ratio(2, 3)]).is_ok());
        assert_eq!(MultiquadraticField::new(vec![ratio(1, 2), rat(8)]).unwrap_err(), FieldError::DegreeCollapse(2));
    }

    #[test]
    fn brute_force_confirms_collapse_of_8_over_sqrt2() {
        // x = u + v√2 with small integer u, v; only v = ±2, u = 0 squares to 8.
        let f = MultiquadraticField::from_ints(&[2]).unwrap();
        let eight = f.from_i64(8);
        let mut roots = vec![];
        for u in -5..=5 {
            for v in -5..=5 {
                let x = f.element_from_ints(&[u, v]).unwrap();
                if &x * &x == eight {
                    roots.push((u, v));
                }
            }
        }
        assert_eq!(roots, vec![(0, -2), (0, 2)]);
    }

    #[test]
    fn addition_examples() {
        let f = q23();
        let a = f.element_from_ints(&[1, 1, 0, 0]).unwrap();
        let b = f.element_from_ints(&[0, 0, 1, 1]).unwrap();
        assert_eq!(&a + &b, f.element_from_ints(&[1, 1, 1, 1]).unwrap());
        let s = MultiquadraticField::from_ints(&[2]).unwrap();
        let p = s.element_from_ints(&[1, 1]).unwrap();
        let m = s.element_from_ints(&[1, -1]).unwrap();
        assert_eq!(&p + &m, s.from_i64(2));
        assert_eq!(&p + &s.zero(), p);
    }

    #[test]
    fn multiplication_examples() {
        let f = q23();
        let s2 = f.alpha(1).unwrap();
        let s3 = f.alpha(2).unwrap();
        assert_eq!((&s2 * &s3).coords(), &[rat(0), rat(0), rat(0), rat(1)]);
        let x = f.element_from_ints(&[1, 1, 0, 0]).unwrap();
        let sq = &x * &x;
        assert_eq!(sq, f.element_from_ints(&[3, 2, 0, 0]).unwrap());
        assert_eq!(sq, bilinear_mul(&f, &x, &x));
        assert_eq!(&x * &f.one(), x);
    }

    #[test]
    fn inverse_examples() {
        let f = q23();
        assert_eq!(f.one().inv().unwrap(), f.one());
        let s2 = f.alpha(1).unwrap();
        assert_eq!(s2.inv().unwrap(), f.element(vec![rat(0), ratio(1, 2), rat(0), rat(0)]).unwrap());
        let x = f.element_from_ints(&[1, 1, 1, 0]).unwrap();
        let xi = x.inv().unwrap();
        assert_eq!(&x * &xi, f.one());
        // (1+√2+√3)⁻¹ = (2 + √2 − √6)/4, from the regular representation.
        assert_eq!(xi, f.element(vec![ratio(1, 2), ratio(1, 4), rat(0), ratio(-1, 4)]).unwrap());
        assert_eq!(f.zero().inv().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn galois_examples() {
        let f = q23();
        let s2 = f.alpha(1).unwrap();
        let s3 = f.alpha(2).unwrap();
        assert_eq!(f.galois(&s2, 0b01), -&s2);
        assert_eq!(f.galois(&s3, 0b01), s3);
        let x = f.element_from_ints(&[1, 2, 3, 4]).unwrap();
        assert_eq!(f.galois(&f.galois(&x, 0b10), 0b10), x);
        assert_eq!(f.galois(&x, 0b11), f.element_from_ints(&[1, -2, -3, 4]).unwrap());
    }

    #[test]
    fn split_examples() {
        let f = q23();
        let x = f.element_from_ints(&[1, 1, 1, 1]).unwrap();
        let (x0, x1) = f.split(&x).unwrap();
        let l1 = f.prefix(1);
        assert_eq!(x0, l1.element_from_ints(&[1, 1]).unwrap());
        assert_eq!(x1, l1.element_from_ints(&[1, 1]).unwrap());
        assert_eq!(f.join(&x0, &x1).unwrap(), x);
        let (a0, a1) = f.split(&f.alpha(2).unwrap()).unwrap();
        assert!(a0.is_zero());
        assert_eq!(a1, l1.one());
        let low = f.lift_from_prefix(&l1.element_from_ints(&[5, 7]).unwrap());
        let (l0, l1v) = f.split(&low).unwrap();
        assert_eq!(l0, l1.element_from_ints(&[5, 7]).unwrap());
        assert!(l1v.is_zero());
        assert_eq!(MultiquadraticField::rationals().split(&MultiquadraticField::rationals().one()).unwrap_err(), FieldError::TowerHeightZero);
    }

    #[test]
    fn split_at_middle_generator() {
        let f = MultiquadraticField::first_primes(3);
        let x = f.element_from_ints(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        let (x0, x1) = f.split_at(&x, 2).unwrap();
        // Without α₂ the remaining basis is (1, α₁, α₃, α₁α₃).
        assert_eq!(x0.coords(), &[rat(1), rat(2), rat(5), rat(6)]);
        assert_eq!(x1.coords(), &[rat(3), rat(4), rat(7), rat(8)]);
        assert_eq!(f.join_at(&x0, &x1, 2).unwrap(), x);
    }

    #[test]
    fn suffix_lift_shifts_index() {
        let f = MultiquadraticField::first_primes(3);
        let k = f.suffix(1);
        let y = k.alpha(1).unwrap(); // √3 in Q(√3, √5)
        assert_eq!(f.lift_from_suffix(&y, 1), f.alpha(2).unwrap());
    }

    #[test]
    fn mismatch_is_reported() {
        let a = MultiquadraticField::from_ints(&[2]).unwrap();
        let b = MultiquadraticField::from_ints(&[3]).unwrap();
        assert_eq!(a.one().checked_add(&b.one()).unwrap_err(), FieldError::FieldMismatch);
        assert_eq!(a.mul_by_alpha(&b.one(), 1).unwrap_err(), FieldError::FieldMismatch);
        assert_eq!(a.alpha(2).unwrap_err(), FieldError::IndexOutOfRange { index: 2, m: 1 });
    }

    #[test]
    fn mul_by_alpha_matches_general_product() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(11);
        for m in 1..=4 {
            let f = MultiquadraticField::first_primes(m);
            for _ in 0..250 {
                let x = f.random_integral(&mut rng, 9);
                for i in 1..=m {
                    let direct = f.mul_by_alpha(&x, i).unwrap();
                    assert_eq!(direct, &x * &f.alpha(i).unwrap());
                    assert_eq!(&f.mul_by_alpha_inv(&direct, i).unwrap(), &x);
                }
            }
        }
        let f = MultiquadraticField::from_ints(&[2]).unwrap();
        assert_eq!(f.mul_by_alpha(&f.alpha(1).unwrap(), 1).unwrap(), f.from_i64(2));
    }

    #[test]
    fn recursive_product_matches_bilinear_oracle() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        for m in 0..=4 {
            let f = MultiquadraticField::first_primes(m);
            for _ in 0..100 {
                let x = f.random_integral(&mut rng, 6);
                let y = f.random_integral(&mut rng, 6);
                assert_eq!(&x * &y, bilinear_mul(&f, &x, &y));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = MultiquadraticField::new(vec![rat(2), ratio(3, 5)]).unwrap();
        let v = f.to_json();
        assert_eq!(v, json!({"generators": ["2", "3/5"]}));
        let g = MultiquadraticField::from_json(&v).unwrap();
        assert_eq!(f, g);
        let x = f.element(vec![ratio(1, 2), rat(0), rat(-3), ratio(7, 9)]).unwrap();
        assert_eq!(f.elem_from_json(&f.elem_to_json(&x)).unwrap(), x);
        assert!(MultiquadraticField::from_json(&json!({"generators": ["2", "8"]})).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f = q23();
        let x = f.element(vec![rat(3), rat(-1), rat(0), ratio(1, 2)]).unwrap();
        assert_eq!(x.to_string(), "3 - s1 + 1/2*s1s2");
        assert_eq!(f.zero().to_string(), "0");
    }
}
