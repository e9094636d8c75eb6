//! Quick structural checks behind `rankfold selftest`.

use rand::Rng;
use serde_json::{json, Value};

use crate::exactfield::MultiquadraticField;
use crate::field::{Field, FiniteField};
use crate::gf::{ExtField, Gf2, PrimeField};
use crate::linalg::Matrix;
use crate::matrix_code::LinearMatrixCode;
use crate::plotkin::{assemble, disassemble, plotkin_dual_check, GabidulinPlotkin};
use crate::rankrm::{fast_syndrome, generator_matrix, naive_syndrome, parity_check_matrix, random_message, RMCode};
use crate::rng::{trial_rng, TrialRng};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        json!({ "suite": self.name, "checks": self.checks, "failures": self.failures })
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
}

impl Tally {
    fn check(&mut self, ok: bool) {
        self.checks += 1;
        self.failures += usize::from(!ok);
    }

    fn finish(self, name: &'static str) -> SuiteResult {
        SuiteResult { name, checks: self.checks, failures: self.failures }
    }
}

/// Runs every suite. `inject_fault` perturbs one parity-check entry so the
/// structure suite must fail.
pub fn run(seed: u64, inject_fault: bool) -> Vec<SuiteResult> {
    let mut rng = trial_rng(seed, 0);
    vec![
        structure(inject_fault),
        syndrome(&mut rng),
        duality(&mut rng),
        field_axioms(&mut rng),
        encoder_structure(&mut rng),
    ]
}

fn structure(inject_fault: bool) -> SuiteResult {
    let mut t = Tally::default();
    for m in 0..=4 {
        let l = MultiquadraticField::first_primes(m);
        for r in 0..=m as i32 {
            let g = generator_matrix(&l, r, m);
            let mut h = parity_check_matrix(&l, r, m);
            if inject_fault && h.rows() > 0 {
                let bumped = l.add(h.get(0, 0), &l.one());
                h.set(0, 0, bumped);
            }
            t.check(g.mul(&h.transpose()).is_zero());
            t.check(g.rows() + h.rows() == 1 << m);
        }
    }
    t.finish("structure")
}

fn syndrome(rng: &mut TrialRng) -> SuiteResult {
    let mut t = Tally::default();
    for m in 0..=3 {
        let l = MultiquadraticField::first_primes(m);
        for r in 0..=m as i32 {
            for _ in 0..5 {
                let y: Vec<_> = (0..l.degree()).map(|_| l.random_integral(rng, 9)).collect();
                t.check(fast_syndrome(&l, r, m, &y) == naive_syndrome(&l, r, m, &y));
            }
        }
    }
    t.finish("fast_syndrome")
}

fn duality(rng: &mut TrialRng) -> SuiteResult {
    let mut t = Tally::default();
    for i in 0..10 {
        let f = PrimeField::new(if i % 2 == 0 { 5 } else { 7 }).expect("prime");
        let mut code = |k: usize| {
            let basis: Vec<_> = (0..k).map(|_| Matrix::from_fn(&f, 2, 2, |_, _| f.random(rng))).collect();
            LinearMatrixCode::new(&f, 2, 2, &basis)
        };
        let (c, d) = (code(i % 5), code((i * 3) % 5));
        let a = 1 + i as u64 % (f.p() - 1);
        t.check(plotkin_dual_check(&c, &d, &a));
    }
    t.finish("duality")
}

fn axioms<F: FiniteField>(f: &F, rng: &mut TrialRng, t: &mut Tally) {
    for _ in 0..25 {
        let (a, b, c) = (f.random(rng), f.random(rng), f.random(rng));
        t.check(f.mul(&a, &f.add(&b, &c)) == f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        t.check(f.mul(&f.mul(&a, &b), &c) == f.mul(&a, &f.mul(&b, &c)));
        t.check(f.add(&a, &f.neg(&a)) == f.zero());
        t.check(f.is_zero(&a) || f.is_one(&f.mul(&a, &f.inv(&a).expect("nonzero"))));
    }
}

fn field_axioms(rng: &mut TrialRng) -> SuiteResult {
    let mut t = Tally::default();
    axioms(&PrimeField::new(23).expect("prime"), rng, &mut t);
    axioms(&Gf2::gfp2(23).expect("prime"), rng, &mut t);
    axioms(&ExtField::new(5, 3).expect("small field"), rng, &mut t);
    let l = MultiquadraticField::first_primes(3);
    for _ in 0..10 {
        let (a, b, c) = (l.random_integral(rng, 5), l.random_integral(rng, 5), l.random_integral(rng, 5));
        t.check(l.mul(&a, &l.add(&b, &c)) == l.add(&l.mul(&a, &b), &l.mul(&a, &c)));
        t.check(l.mul(&l.mul(&a, &b), &c) == l.mul(&a, &l.mul(&b, &c)));
        t.check(l.is_zero(&a) || l.is_one(&l.mul(&a, &l.inv(&a).expect("nonzero"))));
    }
    t.finish("field_axioms")
}

fn encoder_structure(rng: &mut TrialRng) -> SuiteResult {
    let mut t = Tally::default();
    let l = MultiquadraticField::first_primes(3);
    for r in 0..=3 {
        let code = RMCode::new(l.clone(), r).expect("valid order");
        let c = code.encode(&random_message(&code, rng, 4)).expect("message length");
        t.check(code.contains(&c));
    }
    let f = PrimeField::new(7).expect("prime");
    for _ in 0..5 {
        let parts: Vec<_> = (0..4).map(|_| Matrix::from_fn(&f, 2, 3, |_, _| f.random(rng))).collect();
        let a = rng.random_range(1..7);
        let y = assemble(&a, &parts[0], &parts[1], &parts[2], &parts[3]).expect("same shape");
        let (a0, a1, b0, b1) = disassemble(&a, &y);
        t.check([a0, a1, b0, b1].as_slice() == parts.as_slice());
    }
    let g = GabidulinPlotkin::new(5, 3, 2, 1, 4).expect("valid parameters");
    for _ in 0..3 {
        let y = g.code.random_codeword(rng);
        t.check(g.code.contains(&y) && g.code.decode(&y).is_ok_and(|d| d.codeword == y));
    }
    t.check(g.code.dimension() == 2 * (g.code.c().dimension() + g.code.d().dimension()));
    t.finish("encoder_structure")
}
