//! Θ-polynomials: L-linear combinations of Galois automorphisms.

use std::collections::BTreeMap;

use crate::exactfield::{MQElement, MultiquadraticField, Rationals};
use crate::field::Field;
use crate::linalg::Matrix;

/// F = Σ_g f_g·g over G = ⟨θ₁,…,θ_m⟩, with g stored as the bitmask of the
/// θᵢ it contains. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaPolynomial {
    field: MultiquadraticField,
    coeffs: BTreeMap<usize, MQElement>,
}

impl ThetaPolynomial {
    pub fn zero(field: &MultiquadraticField) -> Self {
        ThetaPolynomial { field: field.clone(), coeffs: BTreeMap::new() }
    }

    /// c·g for the exponent mask `g`.
    pub fn monomial(field: &MultiquadraticField, g: usize, c: MQElement) -> Self {
        let mut p = Self::zero(field);
        p.set(g, c);
        p
    }

    pub fn from_terms(field: &MultiquadraticField, terms: impl IntoIterator<Item = (usize, MQElement)>) -> Self {
        let mut p = Self::zero(field);
        for (g, c) in terms {
            let sum = match p.coeffs.get(&g) {
                Some(old) => field.add(old, &c),
                None => c,
            };
            p.set(g, sum);
        }
        p
    }

    pub fn field(&self) -> &MultiquadraticField {
        &self.field
    }

    pub fn set(&mut self, g: usize, c: MQElement) {
        assert!(g < self.field.degree(), "exponent outside G");
        if c.is_zero() {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, c);
        }
    }

    pub fn coeff(&self, g: usize) -> MQElement {
        self.coeffs.get(&g).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &MQElement)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    /// Largest Hamming weight in the support; `None` for the zero polynomial.
    pub fn theta_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|g| g.count_ones()).max()
    }

    /// F(x) = Σ_g f_g·g(x).
    pub fn apply(&self, x: &MQElement) -> MQElement {
        let f = &self.field;
        self.coeffs.iter().fold(f.zero(), |acc, (g, c)| f.add(&acc, &f.mul(c, &f.galois(x, *g))))
    }

    /// The Q-matrix of F in the recursive basis: column j holds F(β_j).
    pub fn to_matrix(&self) -> Matrix<Rationals> {
        let f = &self.field;
        let n = f.degree();
        let cols: Vec<MQElement> = (0..n).map(|j| self.apply(&f.basis_element(j))).collect();
        Matrix::from_fn(&Rationals, n, n, |i, j| cols[j].coords()[i].clone())
    }
}
