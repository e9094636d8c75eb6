//! GF(p^m) = GF(p)[x]/(f) with elements as coefficient vectors of length m.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use super::{GfError, PrimeField};
use crate::field::{Field, FiniteField, FormatError, FrobeniusField};

struct ExtInner {
    prime: PrimeField,
    m: usize,
    /// Monic, low degree first, length m + 1.
    modulus: Vec<u64>,
    /// frob[i][j] = x^{j·p^i} mod f, so σ^i(Σ c_j x^j) = Σ c_j frob[i][j].
    frob: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.inner.prime.p(), self.inner.m, self.inner.modulus)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.prime == other.inner.prime && self.inner.modulus == other.inner.modulus)
    }
}

impl ExtField {
    /// GF(p^m) with the first monic irreducible modulus, ordering candidates by
    /// the base-p integer c_{m−1}…c₁c₀ of their non-leading coefficients.
    pub fn new(p: u64, m: usize) -> Result<Self, GfError> {
        let prime = PrimeField::new(p)?;
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let count = (p as u128).checked_pow(m as u32).ok_or(GfError::TooLarge)?;
        for v in 0..count {
            let mut f: Vec<u64> = digits(v, p, m);
            f.push(1);
            if is_irreducible(&prime, &f) {
                return Ok(Self::build(prime, f));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// GF(p^m) with a caller-chosen monic modulus (low degree first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, GfError> {
        let prime = PrimeField::new(p)?;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(GfError::ReducibleModulus);
        }
        if !is_irreducible(&prime, &modulus) {
            return Err(GfError::ReducibleModulus);
        }
        Ok(Self::build(prime, modulus))
    }

    fn build(prime: PrimeField, modulus: Vec<u64>) -> Self {
        let m = modulus.len() - 1;
        // Multiplication does not read the Frobenius tables, so a bare field computes them.
        let bare = ExtField { inner: Arc::new(ExtInner { prime, m, modulus: modulus.clone(), frob: Vec::new() }) };
        let mut xp = bare.x();
        let mut frob = Vec::with_capacity(m);
        for _ in 0..m {
            let mut row = Vec::with_capacity(m);
            let mut acc = bare.one();
            for _ in 0..m {
                row.push(acc.clone());
                acc = bare.mul(&acc, &xp);
            }
            frob.push(row);
            xp = bare.pow(&xp, prime.p() as u128);
        }
        ExtField { inner: Arc::new(ExtInner { prime, m, modulus, frob }) }
    }

    pub fn prime(&self) -> PrimeField {
        self.inner.prime
    }

    pub fn p(&self) -> u64 {
        self.inner.prime.p()
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// The class of x (a root of the modulus).
    pub fn x(&self) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        if self.m() == 1 {
            v[0] = self.inner.prime.neg(&self.inner.modulus[0]);
        } else {
            v[1] = 1;
        }
        v
    }

    /// The polynomial basis 1, x, …, x^{m−1}.
    pub fn polynomial_basis(&self) -> Vec<Vec<u64>> {
        (0..self.m())
            .map(|i| {
                let mut v = vec![0; self.m()];
                v[i] = 1;
                v
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[i64]) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        for (slot, &x) in v.iter_mut().zip(c) {
            *slot = self.inner.prime.elem(x);
        }
        v
    }

    pub fn to_json(&self) -> Value {
        json!({ "p": self.p(), "m": self.m(), "modulus": self.inner.modulus })
    }

    pub fn from_json(v: &Value) -> Result<Self, FormatError> {
        let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| FormatError::new("missing \"p\""))?;
        let modulus: Vec<u64> = v
            .get("modulus")
            .and_then(Value::as_array)
            .ok_or_else(|| FormatError::new("missing \"modulus\""))?
            .iter()
            .map(|c| c.as_u64().ok_or_else(|| FormatError::new("modulus coefficients must be integers")))
            .collect::<Result<_, _>>()?;
        if let Some(m) = v.get("m").and_then(Value::as_u64) {
            if m as usize + 1 != modulus.len() {
                return Err(FormatError::new("\"m\" disagrees with the modulus degree"));
            }
        }
        Self::with_modulus(p, modulus).map_err(|e| FormatError::new(e.to_string()))
    }
}

fn digits(mut v: u128, p: u64, m: usize) -> Vec<u64> {
    (0..m)
        .map(|_| {
            let d = (v % p as u128) as u64;
            v /= p as u128;
            d
        })
        .collect()
}

// Polynomials over GF(p), low degree first, without trailing zeros.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = f.inv(&b[db]).expect("nonzero divisor");
    while r.len() > db {
        let dr = r.len() - 1;
        let c = f.mul(&r[dr], &lead_inv);
        for i in 0..=db {
            let t = f.mul(&c, &b[i]);
            r[dr - db + i] = f.sub(&r[dr - db + i], &t);
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn poly_mulmod(f: &PrimeField, a: &[u64], b: &[u64], modulus: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    poly_rem(f, &out, modulus)
}

/// gcd(x^{p^i} − x, f) = 1 for 1 ≤ i < m and x^{p^m} ≡ x (mod f).
fn is_irreducible(f: &PrimeField, modulus: &[u64]) -> bool {
    let m = modulus.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for i in 1..=m {
        // h ← h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = f.p();
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(f, &acc, &base, modulus);
            }
            base = poly_mulmod(f, &base, &base, modulus);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = f.sub(&diff[1], &1);
        let diff = trim(diff);
        if i < m {
            if diff.is_empty() || poly_gcd(f, &diff, modulus).len() > 1 {
                return false;
            }
        } else if !diff.is_empty() {
            return false;
        }
    }
    true
}

impl Field for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.m()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        v[0] = 1;
        v
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.prime;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.prime;
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.prime;
        a.iter().map(|x| f.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.m();
        let p = self.p() as u128;
        let mut buf = vec![0u128; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                buf[i + j] = (buf[i + j] + x as u128 * y as u128) % p;
            }
        }
        let md = &self.inner.modulus;
        for d in (m..2 * m - 1).rev() {
            let c = buf[d] % p;
            if c == 0 {
                continue;
            }
            // x^d = −Σ f_i x^{d−m+i}
            for i in 0..m {
                let t = c * md[i] as u128 % p;
                buf[d - m + i] = (buf[d - m + i] + p - t) % p;
            }
        }
        buf[..m].iter().map(|&c| (c % p) as u64).collect()
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.embed(&self.inner.prime.elem(n))
    }
    fn same_field(&self, other: &Self) -> bool {
        self == other
    }
    fn descriptor(&self) -> Value {
        self.to_json()
    }
    fn elem_to_json(&self, a: &Vec<u64>) -> Value {
        json!(a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<Vec<u64>, FormatError> {
        let arr = v.as_array().ok_or_else(|| FormatError::new("GF(p^m) element must be an array"))?;
        if arr.len() != self.m() {
            return Err(FormatError::new(format!("expected {} coefficients", self.m())));
        }
        arr.iter().map(|c| self.inner.prime.elem_from_json(c)).collect()
    }
}

impl FiniteField for ExtField {
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn order(&self) -> u128 {
        (self.p() as u128).pow(self.m() as u32)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.m()).map(|_| rng.random_range(0..self.p())).collect()
    }
    fn element(&self, index: u128) -> Vec<u64> {
        digits(index, self.p(), self.m())
    }
}

impl FrobeniusField for ExtField {
    type Base = PrimeField;

    fn base_field(&self) -> PrimeField {
        self.inner.prime
    }
    fn degree(&self) -> usize {
        self.m()
    }
    fn frobenius(&self, x: &Vec<u64>, i: usize) -> Vec<u64> {
        let i = i % self.m();
        if i == 0 {
            return x.clone();
        }
        let f = &self.inner.prime;
        let table = &self.inner.frob[i];
        let mut out = vec![0u64; self.m()];
        for (c, row) in x.iter().zip(table) {
            if *c == 0 {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = f.add(o, &f.mul(c, r));
            }
        }
        out
    }
    fn coordinates(&self, x: &Vec<u64>) -> Vec<u64> {
        x.clone()
    }
    fn from_coordinates(&self, c: &[u64]) -> Vec<u64> {
        c.to_vec()
    }
    fn embed(&self, b: &u64) -> Vec<u64> {
        let mut v = vec![0; self.m()];
        v[0] = *b;
        v
    }
}
