//! GF(p) for odd word-size primes.

use rand::Rng;
use serde_json::{json, Value};

use super::GfError;
use crate::field::{Field, FiniteField, FormatError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Requires an odd prime below 2^62.
    pub fn new(p: u64) -> Result<Self, GfError> {
        if p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        if p >= 1 << 62 || !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Legendre symbol: 0, 1 or −1.
    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(&a, ((self.p - 1) / 2) as u128) == 1 {
            1
        } else {
            -1
        }
    }

    /// Tonelli–Shanks square root; returns the smaller of the two roots.
    pub fn sqrt(&self, a: u64) -> Result<u64, GfError> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Ok(0);
        }
        if self.legendre(a) != 1 {
            return Err(GfError::NotASquare(a));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = self.smallest_nonresidue();
        let mut m = s;
        let mut c = self.pow(&z, q as u128);
        let mut t = self.pow(&a, q as u128);
        let mut r = self.pow(&a, q.div_ceil(2) as u128);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let b = self.pow(&c, 1u128 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Ok(r.min(p - r))
    }

    pub fn smallest_nonresidue(&self) -> u64 {
        (2..self.p).find(|&a| self.legendre(a) == -1).expect("odd prime has a non-residue")
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Miller–Rabin with the first twelve prime bases, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        // Extended Euclid on signed 128-bit values.
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn same_field(&self, other: &Self) -> bool {
        self == other
    }
    fn descriptor(&self) -> Value {
        json!({ "p": self.p, "m": 1 })
    }
    fn elem_to_json(&self, a: &u64) -> Value {
        json!(a)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u64, FormatError> {
        let x = v.as_u64().ok_or_else(|| FormatError::new("GF(p) element must be an integer"))?;
        if x >= self.p {
            return Err(FormatError::new(format!("{x} is not reduced mod {}", self.p)));
        }
        Ok(x)
    }
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> u128 {
        self.p as u128
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
    fn element(&self, index: u128) -> u64 {
        (index % self.p as u128) as u64
    }
}
