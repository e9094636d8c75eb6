//! Integer error model E = X·Z and random messages.

use rand::Rng;

use crate::exactfield::{rat, MQElement, MultiquadraticField, Rationals};
use crate::linalg::Matrix;

use super::structure::iterated_fold_ranks;
use super::RMCode;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no admissible error of rank {t} after {attempts} attempts")]
pub struct SamplerExhausted {
    pub t: usize,
    pub attempts: usize,
}

/// Samples E = X·Z (N×t times t×N, entries uniform in [0, bound]) with
/// Rk(E) = t and every iterated fold down to `depth` levels also of rank t.
pub fn sample_error<R: Rng + ?Sized>(
    l: &MultiquadraticField,
    t: usize,
    depth: usize,
    bound: i64,
    rng: &mut R,
    max_attempts: usize,
) -> Result<Matrix<Rationals>, SamplerExhausted> {
    let m = l.m();
    let n = l.degree();
    assert!(t <= n, "rank exceeds matrix size");
    let k = l.suffix(m);
    for _ in 0..max_attempts {
        let x = Matrix::from_fn(&Rationals, n, t, |_, _| rat(rng.random_range(0..=bound)));
        let z = Matrix::from_fn(&Rationals, t, n, |_, _| rat(rng.random_range(0..=bound)));
        let e = x.mul(&z);
        if e.rank() != t {
            continue;
        }
        let ek = e.map_entries(&k, |v| k.from_rational(v.clone()));
        if iterated_fold_ranks(l, m, &ek, depth.min(m)).iter().all(|&r| r == t) {
            return Ok(e);
        }
    }
    Err(SamplerExhausted { t, attempts: max_attempts })
}

/// Message with integral coordinates in [−bound, bound].
pub fn random_message<R: Rng + ?Sized>(code: &RMCode, rng: &mut R, bound: i64) -> Vec<MQElement> {
    (0..code.dimension()).map(|_| code.field().random_integral(rng, bound)).collect()
}
