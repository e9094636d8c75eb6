//! Generator and parity-check matrices of RM(r, m) as L-subspaces of L^N,
//! the fast syndrome, folding, and the matrix/vector correspondence.
//!
//! Everything lives in one global tower L = Q(α₁,…,α_M). A code of type
//! m ≤ M uses θ₁,…,θ_m and the basis B_m of α₁,…,α_m; its matrices have
//! entries in the base field K = Q(α_{m+1},…,α_M) = `L.suffix(m)`.

use crate::exactfield::{rat, MQElement, MultiquadraticField};
use crate::field::Field;
use crate::linalg::Matrix;

/// Exponent masks of the messages of RM(r, m) (weight ≤ r), in generator-row
/// order: the rows without θ_m first, then those with θ_m.
pub fn message_exponents(r: i32, m: usize) -> Vec<usize> {
    if m == 0 {
        return if r >= 0 { vec![0] } else { vec![] };
    }
    let mut out = message_exponents(r, m - 1);
    out.extend(message_exponents(r - 1, m - 1).into_iter().map(|g| g | 1 << (m - 1)));
    out
}

/// Row labels of the parity-check matrix H(r, m): the masks of weight ≥ r+1.
/// Row h of H is ((−1)^{|h∩j|} β_j⁻¹)_j.
pub fn parity_exponents(r: i32, m: usize) -> Vec<usize> {
    if m == 0 {
        return if r < 0 { vec![0] } else { vec![] };
    }
    let mut out = parity_exponents(r, m - 1);
    out.extend(parity_exponents(r - 1, m - 1).into_iter().map(|g| g | 1 << (m - 1)));
    out
}

/// Σ_{i=0}^{r} binom(m, i).
pub fn dimension(r: i32, m: usize) -> usize {
    let mut total = 0usize;
    let mut binom = 1usize;
    for i in 0..=m {
        if i as i32 > r {
            break;
        }
        total += binom;
        binom = binom * (m - i) / (i + 1);
    }
    total
}

fn recursive_matrix(l: &MultiquadraticField, r: i32, m: usize, dual: bool) -> Matrix<MultiquadraticField> {
    if m == 0 {
        let present = if dual { r < 0 } else { r >= 0 };
        return if present { Matrix::identity(l, 1) } else { Matrix::zeros(l, 0, 1) };
    }
    let top = recursive_matrix(l, r, m - 1, dual);
    let bottom = recursive_matrix(l, r - 1, m - 1, dual);
    let twist = |x: &MQElement| {
        if dual {
            l.mul_by_alpha_inv(x, m).expect("generator index in range")
        } else {
            l.mul_by_alpha(x, m).expect("generator index in range")
        }
    };
    let top_right = top.map(twist);
    let bottom_right = bottom.map(twist).neg();
    Matrix::block(&top, &top_right, &bottom, &bottom_right).expect("conformable blocks")
}

/// G(r, m) over L, rows ordered as [`message_exponents`].
pub fn generator_matrix(l: &MultiquadraticField, r: i32, m: usize) -> Matrix<MultiquadraticField> {
    assert!(m <= l.m(), "code type exceeds tower height");
    recursive_matrix(l, r, m, false)
}

/// H(r, m) over L, rows ordered as [`parity_exponents`]. H(r, m) is empty
/// for r ≥ m, which makes H(m, m−1) coincide with H(m−1, m−1).
pub fn parity_check_matrix(l: &MultiquadraticField, r: i32, m: usize) -> Matrix<MultiquadraticField> {
    assert!(m <= l.m(), "code type exceeds tower height");
    recursive_matrix(l, r, m, true)
}

/// H(r, m)·y by recursion on the halves of y: with u_b = H(r−1, m−1)·y_b,
/// H(r, m)·y = (sel(u₀ + α_m⁻¹u₁) ; u₀ − α_m⁻¹u₁), where `sel` keeps the
/// rows of H(r−1, m−1) whose label has weight ≥ r+1, i.e. H(r, m−1).
pub fn fast_syndrome(l: &MultiquadraticField, r: i32, m: usize, y: &[MQElement]) -> Vec<MQElement> {
    assert_eq!(y.len(), 1 << m, "vector length must be 2^m");
    assert!(m <= l.m(), "code type exceeds tower height");
    syndrome_rec(l, r, m, y)
}

fn syndrome_rec(l: &MultiquadraticField, r: i32, m: usize, y: &[MQElement]) -> Vec<MQElement> {
    if r >= m as i32 {
        return Vec::new();
    }
    if m == 0 {
        return vec![y[0].clone()];
    }
    let h = y.len() / 2;
    let u0 = syndrome_rec(l, r - 1, m - 1, &y[..h]);
    let u1 = syndrome_rec(l, r - 1, m - 1, &y[h..]);
    let v1: Vec<MQElement> = u1.iter().map(|u| l.mul_by_alpha_inv(u, m).expect("index in range")).collect();
    let labels = parity_exponents(r - 1, m - 1);
    let mut out: Vec<MQElement> = labels
        .iter()
        .zip(u0.iter().zip(&v1))
        .filter(|(g, _)| g.count_ones() as i32 > r)
        .map(|(_, (a, b))| l.add(a, b))
        .collect();
    out.extend(u0.iter().zip(&v1).map(|(a, b)| l.sub(a, b)));
    out
}

/// H(r, m)·y with H built explicitly.
pub fn naive_syndrome(l: &MultiquadraticField, r: i32, m: usize, y: &[MQElement]) -> Vec<MQElement> {
    parity_check_matrix(l, r, m).mul_vec(y)
}

/// Matrix over K = L.suffix(m) to its evaluation vector in L^{2^m}:
/// x_j = Σ_i X_ij·β_i. Coordinate i | T<<m of x_j is coordinate T of X_ij.
pub fn vectorize(l: &MultiquadraticField, m: usize, x: &Matrix<MultiquadraticField>) -> Vec<MQElement> {
    let n = 1usize << m;
    assert_eq!(x.shape(), (n, n), "matrix must be 2^m square");
    let kdeg = l.degree() >> m;
    (0..n)
        .map(|j| {
            let mut c = vec![rat(0); l.degree()];
            for i in 0..n {
                let e = x.get(i, j).coords();
                debug_assert_eq!(e.len(), kdeg);
                for (t, v) in e.iter().enumerate() {
                    c[i | t << m] = v.clone();
                }
            }
            l.element(c).expect("length matches")
        })
        .collect()
}

/// Inverse of [`vectorize`].
pub fn devectorize(l: &MultiquadraticField, m: usize, v: &[MQElement]) -> Matrix<MultiquadraticField> {
    let n = 1usize << m;
    assert_eq!(v.len(), n, "vector length must be 2^m");
    let k = l.suffix(m);
    Matrix::from_fn(&k, n, n, |i, j| {
        let c = (0..k.degree()).map(|t| v[j].coords()[i | t << m].clone()).collect();
        k.element(c).expect("length matches")
    })
}

/// Embeds a matrix over `l.suffix(m)` into one over `l.suffix(m - 1)`.
pub fn lift_one_level(l: &MultiquadraticField, m: usize, x: &Matrix<MultiquadraticField>) -> Matrix<MultiquadraticField> {
    let k1 = l.suffix(m - 1);
    x.map_entries(&k1, |e| k1.lift_from_suffix(e, 1))
}

/// (α_m⁻¹·I | I)·Y·(I ; −α_m⁻¹·I) for Y over K = L.suffix(m); the result is
/// over K(α_m) = L.suffix(m − 1), where α_m is the first generator.
pub fn fold(l: &MultiquadraticField, m: usize, y: &Matrix<MultiquadraticField>) -> Matrix<MultiquadraticField> {
    assert!(m >= 1, "cannot fold a 1x1 matrix");
    let h = 1usize << (m - 1);
    let k1 = l.suffix(m - 1);
    let ainv = |x: &Matrix<MultiquadraticField>| x.map(|e| k1.mul_by_alpha_inv(e, 1).expect("K(α_m) has a generator"));
    let (y00, y01, y10, y11) = lift_one_level(l, m, y).split_blocks(h, h);
    ainv(&y00.sub(&ainv(&y01))).add(&y10.sub(&ainv(&y11)))
}

/// Ranks of the iterated folds of E (over L.suffix(m)) down to `depth` levels.
pub fn iterated_fold_ranks(l: &MultiquadraticField, m: usize, e: &Matrix<MultiquadraticField>, depth: usize) -> Vec<usize> {
    let mut cur = e.clone();
    let mut out = Vec::with_capacity(depth);
    for level in (m + 1 - depth.min(m)..=m).rev() {
        cur = fold(l, level, &cur);
        out.push(cur.rank());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    /// G[g][j] = (−1)^{|g∩j|}·β_j.
    fn closed_form_g(l: &MultiquadraticField, r: i32, m: usize) -> Matrix<MultiquadraticField> {
        let labels = message_exponents(r, m);
        Matrix::from_fn(l, labels.len(), 1 << m, |i, j| {
            let b = l.basis_element(j);
            if (labels[i] & j).count_ones() % 2 == 1 { l.neg(&b) } else { b }
        })
    }

    /// H[h][j] = (−1)^{|h∩j|}·β_j⁻¹.
    fn closed_form_h(l: &MultiquadraticField, r: i32, m: usize) -> Matrix<MultiquadraticField> {
        let labels = parity_exponents(r, m);
        Matrix::from_fn(l, labels.len(), 1 << m, |i, j| {
            let b = l.inv(&l.basis_element(j)).unwrap();
            if (labels[i] & j).count_ones() % 2 == 1 { l.neg(&b) } else { b }
        })
    }

    #[test]
    fn exponent_orders() {
        assert_eq!(message_exponents(1, 2), vec![0, 1, 2]);
        assert_eq!(message_exponents(1, 3), vec![0, 1, 2, 4]);
        assert_eq!(message_exponents(2, 3), vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(parity_exponents(1, 3), vec![3, 5, 6, 7]);
        assert_eq!(parity_exponents(3, 3), Vec::<usize>::new());
        for m in 0..=5 {
            for r in -1..=m as i32 {
                let e = message_exponents(r, m);
                assert_eq!(e.len(), dimension(r, m));
                assert!(e.iter().all(|g| g.count_ones() as i32 <= r));
                assert_eq!(parity_exponents(r, m).len(), (1 << m) - dimension(r, m));
            }
        }
        assert_eq!(dimension(-1, 3), 0);
        assert_eq!(dimension(3, 3), 8);
        assert_eq!(dimension(0, 4), 1);
    }

    #[test]
    fn recursive_matrices_match_closed_forms() {
        let l = MultiquadraticField::first_primes(3);
        for m in 0..=3 {
            for r in -1..=m as i32 {
                assert_eq!(generator_matrix(&l, r, m), closed_form_g(&l, r, m), "G({r},{m})");
                assert_eq!(parity_check_matrix(&l, r, m), closed_form_h(&l, r, m), "H({r},{m})");
            }
        }
    }

    #[test]
    fn fast_syndrome_matches_naive() {
        let l = MultiquadraticField::first_primes(4);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(8);
        for m in 0..=4 {
            for r in -1..=m as i32 {
                for _ in 0..5 {
                    let y: Vec<_> = (0..1 << m).map(|_| l.random_integral(&mut rng, 4)).collect();
                    assert_eq!(fast_syndrome(&l, r, m, &y), naive_syndrome(&l, r, m, &y));
                }
                let zero = vec![l.zero(); 1 << m];
                assert!(fast_syndrome(&l, r, m, &zero).iter().all(|s| s.is_zero()));
                let g = generator_matrix(&l, r, m);
                for i in 0..g.rows() {
                    assert!(fast_syndrome(&l, r, m, g.row(i)).iter().all(|s| s.is_zero()));
                }
            }
        }
    }

    #[test]
    fn vectorize_round_trip() {
        let l = MultiquadraticField::first_primes(3);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(1);
        for m in 0..=3 {
            let k = l.suffix(m);
            let x = Matrix::from_fn(&k, 1 << m, 1 << m, |_, _| k.random_integral(&mut rng, 3));
            let v = vectorize(&l, m, &x);
            assert_eq!(devectorize(&l, m, &v), x);
        }
        // At full height, x_j = Σ_i X_ij β_i with rational X.
        let k = l.suffix(3);
        let x = Matrix::from_fn(&k, 8, 8, |i, j| k.from_i64((i * 8 + j) as i64));
        let v = vectorize(&l, 3, &x);
        let expect = (0..8).fold(l.zero(), |acc, i| l.add(&acc, &l.basis_element(i).scale(&rat((i * 8 + 5) as i64))));
        assert_eq!(v[5], expect);
    }

    #[test]
    fn fold_examples() {
        let l = MultiquadraticField::first_primes(2);
        let k = l.suffix(2);
        let k1 = l.suffix(1);
        let i2 = Matrix::identity(&k, 2);
        let z2 = Matrix::zeros(&k, 2, 2);
        // B₀ = I only: Y = [[I, 0], [0, −I]] folds to (2/α₂)·I.
        let y = Matrix::block(&i2, &z2, &z2, &i2.neg()).unwrap();
        let two_over_alpha = k1.mul_by_alpha_inv(&k1.from_i64(2), 1).unwrap();
        assert_eq!(fold(&l, 2, &y), Matrix::diagonal(&k1, 2, &two_over_alpha));
        // A-parts only: [[A₀, a A₁], [A₁, A₀]] folds to zero.
        let a0 = Matrix::from_i64_rows(&k, &[&[1, 2], &[3, 4]]);
        let a1 = Matrix::from_i64_rows(&k, &[&[0, -1], &[5, 2]]);
        let a = k.from_i64(3);
        let y = Matrix::block(&a0, &a1.scale(&a), &a1, &a0).unwrap();
        assert!(fold(&l, 2, &y).is_zero());
    }
}
