use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rankfold::error::DecodeError;
use rankfold::exactfield::{rat, MultiquadraticField, Rationals};
use rankfold::field::Field;
use rankfold::linalg::Matrix;
use rankfold::rankrm::{
    decoding_radius, generator_matrix, parity_check_matrix, random_message, sample_error, RMCode, ThetaPolynomial,
};

fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

#[test]
fn round_trip_each_parameter_point() {
    for (m, r) in [(3usize, 0i32), (3, 1), (4, 1), (4, 2)] {
        let l = MultiquadraticField::first_primes(m);
        let code = RMCode::new(l.clone(), r).unwrap();
        let t = decoding_radius(r, m);
        let mut g = rng(100 + m as u64 * 10 + r as u64);
        for _ in 0..8 {
            let c = code.encode(&random_message(&code, &mut g, 4)).unwrap();
            let e = sample_error(&l, t, (r + 1) as usize, 6, &mut g, 1000).unwrap();
            let rep = code.decode(&c.add(&e));
            assert_eq!(rep.codeword.as_ref().unwrap(), &c, "m={m} r={r}");
            assert_eq!(rep.trace.len(), (r + 1) as usize);
            assert!(rep.trace.iter().all(|f| f.fold_rank == t));
        }
    }
}

#[test]
fn generator_and_parity_are_orthogonal() {
    let l = MultiquadraticField::first_primes(4);
    for m in 0..=4 {
        for r in 0..=m as i32 {
            let g = generator_matrix(&l, r, m);
            let h = parity_check_matrix(&l, r, m);
            assert!(g.mul(&h.transpose()).is_zero());
            assert_eq!(h.rank(), (1 << m) - g.rows());
        }
    }
}

/// encode(F) equals [[A₀+B₀, a(A₁−B₁)], [A₁+B₁, A₀−B₀]] where
/// F = A₀ + α_m A₁ + (B₀ + α_m B₁)θ_m and each part is represented over L_{m−1}.
#[test]
fn codewords_have_plotkin_block_form() {
    let mut g = rng(5);
    for m in 1..=3usize {
        let l = MultiquadraticField::first_primes(m);
        let sub = l.prefix(m - 1);
        for r in 0..=m as i32 {
            let code = RMCode::new(l.clone(), r).unwrap();
            let f = code.theta_polynomial(&random_message(&code, &mut g, 3)).unwrap();
            let mut parts = vec![ThetaPolynomial::zero(&sub); 4];
            let top = 1 << (m - 1);
            for (e, c) in f.terms() {
                let (c0, c1) = l.split(c).unwrap();
                let (idx, low) = if e & top == 0 { (0, e) } else { (2, e ^ top) };
                let mut p0 = parts[idx].clone();
                p0.set(low, sub.add(&p0.coeff(low), &c0));
                parts[idx] = p0;
                let mut p1 = parts[idx + 1].clone();
                p1.set(low, sub.add(&p1.coeff(low), &c1));
                parts[idx + 1] = p1;
            }
            let [a0, a1, b0, b1] = [0, 1, 2, 3].map(|i| parts[i].to_matrix());
            let a = l.generator(m).clone();
            let expected = Matrix::block(
                &a0.add(&b0),
                &a1.sub(&b1).scale(&a),
                &a1.add(&b1),
                &a0.sub(&b0),
            )
            .unwrap();
            assert_eq!(f.to_matrix(), expected, "m={m} r={r}");
        }
    }
}

#[test]
fn sampled_codewords_respect_minimum_distance() {
    let mut g = rng(6);
    for m in 1..=3usize {
        let l = MultiquadraticField::first_primes(m);
        for r in 0..=m as i32 {
            let code = RMCode::new(l.clone(), r).unwrap();
            let d = code.min_distance().unwrap();
            for _ in 0..40 {
                let c = code.encode(&random_message(&code, &mut g, 2)).unwrap();
                if !c.is_zero() {
                    assert!(c.rank() >= d, "m={m} r={r}");
                }
            }
        }
    }
}

#[test]
fn full_code_is_every_matrix() {
    let l = MultiquadraticField::first_primes(2);
    let code = RMCode::new(l.clone(), 2).unwrap();
    // Encoding basis messages spans all 16 rational 4x4 matrices.
    let mut rows = Vec::new();
    for i in 0..code.dimension() {
        for b in 0..l.degree() {
            let mut msg = vec![l.zero(); code.dimension()];
            msg[i] = l.basis_element(b);
            rows.push(code.encode(&msg).unwrap().into_entries());
        }
    }
    assert_eq!(Matrix::from_rows(&Rationals, 16, rows).unwrap().rank(), 16);
    // A single monomial c·g is invertible.
    let mut g = rng(1);
    let msg: Vec<_> = (0..code.dimension()).map(|i| if i == 2 { l.random_integral(&mut g, 3) } else { l.zero() }).collect();
    assert_eq!(code.encode(&msg).unwrap().rank(), 4);
}

#[test]
fn erasure_recovers_within_radius() {
    let mut g = rng(9);
    let l = MultiquadraticField::first_primes(3);
    let code = RMCode::new(l.clone(), 1).unwrap();
    for t in 0..=1 {
        for _ in 0..10 {
            let c = code.encode(&random_message(&code, &mut g, 4)).unwrap();
            let e = sample_error(&l, t, 0, 6, &mut g, 100).unwrap();
            let got = code.erasure_decode(&c.add(&e), &e).unwrap();
            assert_eq!(got, c);
        }
    }
    // For RM(0,3) erasures up to d − 1 = 7 are recoverable.
    let code = RMCode::new(l.clone(), 0).unwrap();
    let c = code.encode(&random_message(&code, &mut g, 4)).unwrap();
    let e = sample_error(&l, 7, 0, 6, &mut g, 100).unwrap();
    assert_eq!(code.erasure_decode(&c.add(&e), &e).unwrap(), c);
}

#[test]
fn erasure_at_minimum_distance_is_not_unique() {
    let l = MultiquadraticField::first_primes(3);
    for r in 0..3 {
        let code = RMCode::new(l.clone(), r).unwrap();
        // (1+θ₁)…(1+θ_r) has Θ-degree r and rank 2^{m−r} = d.
        let mut p = ThetaPolynomial::monomial(&l, 0, l.one());
        for i in 0..r as usize {
            let mut q = ThetaPolynomial::zero(&l);
            for (g, c) in p.terms() {
                q.set(g, q.coeff(g).checked_add(c).unwrap());
                q.set(g | 1 << i, q.coeff(g | 1 << i).checked_add(c).unwrap());
            }
            p = q;
        }
        let low = p.to_matrix();
        assert_eq!(low.rank(), code.min_distance().unwrap());
        let c = code.encode(&vec![l.one(); code.dimension()]).unwrap();
        let got = code.erasure_decode(&c.add(&low), &low);
        assert!(matches!(got, Err(DecodeError::NotUnique(_))), "r={r}: {got:?}");
    }
}

#[test]
fn decoder_never_returns_far_codeword() {
    let mut g = rng(12);
    let l = MultiquadraticField::first_primes(3);
    let code = RMCode::new(l.clone(), 0).unwrap();
    let t = code.radius();
    for _ in 0..10 {
        let c = code.encode(&random_message(&code, &mut g, 3)).unwrap();
        // Rank-6 noise is far beyond the radius.
        let e = sample_error(&l, 6, 0, 4, &mut g, 100).unwrap();
        let rep = code.decode(&c.add(&e));
        if let Ok(found) = &rep.codeword {
            assert!(c.add(&e).sub(found).rank() <= t);
        }
    }
    let y = Matrix::from_fn(&Rationals, 8, 8, |i, j| rat(((i + 3 * j) % 5) as i64));
    if let Ok(found) = code.decode(&y).codeword {
        assert!(y.sub(&found).rank() <= t);
    }
}
