//! Acceptance suite: eleven criteria, one PASS/FAIL line each. Runs without
//! the libtest harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rankfold::error::DecodeError;
use rankfold::exactfield::MultiquadraticField;
use rankfold::experiments::{plotkin_roundtrip, rm_roundtrip, syndrome_bench, syndrome_oracle};
use rankfold::field::{Field, FiniteField, FrobeniusField};
use rankfold::gabidulin::GabidulinCode;
use rankfold::gf::{ExtField, PrimeField};
use rankfold::linalg::Matrix;
use rankfold::matrix_code::{LinearMatrixCode, MatrixCode};
use rankfold::plotkin::{fold_probability_experiment, plotkin_dual_check, plotkin_span, GabidulinPlotkin};
use rankfold::rankrm::{dimension, generator_matrix, parity_check_matrix, random_message, sample_error, RMCode};
use rankfold::rng::{run_trials, trial_rng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c1_structure() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for m in 0..=5 {
        let l = MultiquadraticField::first_primes(m);
        for r in 0..=m as i32 {
            let g = generator_matrix(&l, r, m);
            let h = parity_check_matrix(&l, r, m);
            let expected: usize = (0..=r as usize).map(|i| binom(m, i)).sum();
            if !g.mul(&h.transpose()).is_zero() || g.rows() != expected || dimension(r, m) != expected {
                bad.push(format!("(r={r},m={m})"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(bad.is_empty() && secs < 60.0, format!("21 pairs, failures {bad:?}, {secs:.1}s"))
}

fn c2_fast_syndrome() -> Outcome {
    let mut mismatches = 0;
    let mut points = 0;
    for m in 0..=4usize {
        for r in 0..=m as i32 {
            mismatches += syndrome_oracle(m, r, 100, 200 + 10 * m as u64 + r as u64);
            points += 1;
        }
    }
    outcome(mismatches == 0, format!("{points} (r,m) points × 100 vectors, {mismatches} mismatches"))
}

fn c3_rm_round_trip() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (m, r) in [(3usize, 0i32), (3, 1), (4, 1), (4, 2)] {
        let rt = rm_roundtrip(m, r, 100, 9, 300 + m as u64 * 10 + r as u64).expect("valid parameters");
        pass &= rt.successes == 100 && rt.unsound == 0;
        parts.push(format!("(m={m},r={r},t={}) {}/100 unsound={}", rt.params["t"], rt.successes, rt.unsound));
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs <= 600.0;
    outcome(pass, format!("{}, {secs:.1}s", parts.join("; ")))
}

fn c4_erasures() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (m, r) in [(3usize, 0i32), (3, 1), (4, 1), (4, 2), (4, 0)] {
        let l = MultiquadraticField::first_primes(m);
        let code = RMCode::new(l.clone(), r).unwrap();
        let tmax = (1usize << (m as i32 - 1 - r)) - 1;
        let results = run_trials(100, 400 + m as u64 * 10 + r as u64, |i, rng| {
            let t = (i as usize) % (tmax + 1);
            let c = code.encode(&random_message(&code, rng, 5)).unwrap();
            let e = sample_error(&l, t, 0, 5, rng, 1000).unwrap();
            code.erasure_decode(&c.add(&e), &e).as_ref() == Ok(&c)
        });
        let ok = results.iter().filter(|&&b| b).count();
        // t = d: the minimum-rank codeword lies inside V.
        let low = code.min_rank_codeword().unwrap();
        let c = code.encode(&random_message(&code, &mut trial_rng(4, m as u64), 5)).unwrap();
        let at_d = code.erasure_decode(&c.add(&low), &low);
        let at_d_ok = matches!(at_d, Err(DecodeError::NotUnique(_)) | Err(DecodeError::NoSolution));
        pass &= ok == 100 && at_d_ok;
        parts.push(format!("(m={m},r={r},t≤{tmax}) {ok}/100, t=d→{}", if at_d_ok { "failure" } else { "SUCCESS" }));
    }
    outcome(pass, parts.join("; "))
}

fn c5_gabidulin() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let f = ExtField::new(23, 8).unwrap();
    for k in [4usize, 6] {
        let code = GabidulinCode::standard(&f, k).unwrap();
        let t = code.error_radius();
        let ok = run_trials(100, 500 + k as u64, |_, rng| {
            let msg: Vec<_> = (0..k).map(|_| f.random(rng)).collect();
            let c = code.encode(&msg).unwrap();
            let base = PrimeField::new(23).unwrap();
            let e = loop {
                let x: Vec<_> = (0..t).map(|_| f.random(rng)).collect();
                let r = Matrix::from_fn(&base, t, 8, |_, _| base.random(rng));
                let e = r.map_entries(&f, |b| f.embed(b)).vec_mul(&x);
                if code.rank(&e) == t {
                    break e;
                }
            };
            let y: Vec<_> = c.iter().zip(&e).map(|(a, b)| f.add(a, b)).collect();
            code.decode_errors(&y).map(|d| d.codeword == c && d.message == msg).unwrap_or(false)
        })
        .into_iter()
        .filter(|&b| b)
        .count();
        pass &= ok == 100;
        parts.push(format!("k={k} t={t}: {ok}/100"));
    }
    let small = ExtField::new(5, 3).unwrap();
    let mut rng = trial_rng(505, 0);
    for k in [1usize, 2] {
        let code = GabidulinCode::standard(&small, k).unwrap();
        let d = code.min_distance();
        let mut below = 0;
        let mut sampled = 0;
        while sampled < 10_000 {
            let msg: Vec<_> = (0..k).map(|_| small.random(&mut rng)).collect();
            let c = code.encode(&msg).unwrap();
            if c.iter().all(|x| small.is_zero(x)) {
                continue;
            }
            sampled += 1;
            if code.rank(&c) < d {
                below += 1;
            }
        }
        let w = code.min_rank_witness();
        let w_ok = code.contains(&w) && code.rank(&w) == d;
        pass &= below == 0 && w_ok;
        parts.push(format!("MRD n=m=3 q=5 k={k}: {below} below d={d} in 10^4, witness rank {}", code.rank(&w)));
    }
    outcome(pass, parts.join("; "))
}

fn c6_duality() -> Outcome {
    let mut pass = true;
    let mut rng = trial_rng(600, 0);
    for i in 0..20 {
        let f = PrimeField::new(if i % 2 == 0 { 5 } else { 7 }).unwrap();
        let (m, n) = (rng.random_range(1..=2usize), rng.random_range(1..=2usize));
        let mut code = |k: usize| {
            let basis: Vec<_> = (0..k).map(|_| Matrix::from_fn(&f, m, n, |_, _| f.random(&mut rng))).collect();
            LinearMatrixCode::new(&f, m, n, &basis)
        };
        let (kc, kd) = ((i * 7) % (m * n + 1), (i * 3) % (m * n + 1));
        let (c, d) = (code(kc), code(kd));
        let a = rng.random_range(1..f.p());
        let span = plotkin_span(&f, &c.basis(), &d.basis(), &a, m, n);
        pass &= plotkin_dual_check(&c, &d, &a) && span.dimension() == 2 * (c.dimension() + d.dimension());
    }
    outcome(pass, "20 instances over GF(5)/GF(7): duality and dim = 2(dim C + dim D)")
}

fn c7_plotkin_round_trip() -> Outcome {
    let big = plotkin_roundtrip(23, 8, 6, 4, 4, 100, 700).expect("valid parameters");
    let small = plotkin_roundtrip(5, 4, 3, 2, 4, 1000, 701).expect("valid parameters");
    let pass = big.successes >= 99 && big.unsound == 0 && small.success_rate() >= 0.95 && small.unsound == 0;
    outcome(
        pass,
        format!(
            "q=23 m=8: {}/100 ({:.1}s); q=5 m=4: {}/1000 = {:.3}",
            big.successes,
            big.elapsed.as_secs_f64(),
            small.successes,
            small.success_rate()
        ),
    )
}

fn c8_fold_monte_carlo() -> Outcome {
    let start = Instant::now();
    let short = fold_probability_experiment(23, 16, 4, 4, 10_000, 800).unwrap();
    let long = fold_probability_experiment(23, 16, 4, 4, 100_000, 801).unwrap();
    let secs = start.elapsed().as_secs_f64();
    outcome(
        short.drops <= 2 && long.drops <= 3 && secs <= 300.0,
        format!("10^4 trials: {} drops; 10^5 trials: {} drops; {secs:.1}s", short.drops, long.drops),
    )
}

fn c9_bound_check() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (q, m, t)) in [(5u64, 4usize, 1usize), (5, 4, 2), (7, 5, 2)].into_iter().enumerate() {
        let s = fold_probability_experiment(q, m, t, 4, 100_000, 900 + i as u64).unwrap();
        let ok = s.ci95.1 <= 10.0 * s.predicted_bound;
        pass &= ok;
        parts.push(format!("({q},{m},{t}) {} drops, upper95 {:.2e} vs 10·bound {:.2e}", s.drops, s.ci95.1, 10.0 * s.predicted_bound));
    }
    outcome(pass, parts.join("; "))
}

fn c10_complexity_trend() -> Outcome {
    let rows = syndrome_bench(5, 9, 1000).unwrap();
    let ratios: Vec<f64> = rows[2..].iter().map(|r| r.ratio()).collect();
    let agree = rows.iter().all(|r| r.agree);
    let increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    outcome(agree && increasing, format!("naive/fast at m=3,4,5: {ratios:.2?}"))
}

fn c11_non_mrd() -> Outcome {
    let g = GabidulinPlotkin::new(23, 8, 6, 4, 4).unwrap();
    let w = g.non_mrd_witness();
    let rank = w.rank();
    let bound = g.singleton_bound();
    outcome(g.code.contains(&w) && rank == 6 && rank < bound, format!("witness rank {rank} < Singleton {bound}"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("G·Hᵀ = 0 and dimensions, m ≤ 5", c1_structure),
        ("fast syndrome equals naive, m ≤ 4", c2_fast_syndrome),
        ("RM decode round trips", c3_rm_round_trip),
        ("RM erasure decoding", c4_erasures),
        ("Gabidulin decoding and MRD check", c5_gabidulin),
        ("Plotkin duality and dimension", c6_duality),
        ("Plotkin-Gabidulin round trips", c7_plotkin_round_trip),
        ("fold Monte Carlo q=23 m=16 t=4", c8_fold_monte_carlo),
        ("fold drop rate within 10× bound", c9_bound_check),
        ("syndrome speedup grows with m", c10_complexity_trend),
        ("non-MRD witness", c11_non_mrd),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let dt: Duration = start.elapsed();
        println!(
            "criterion {:>2} {} {name}: {} [{:.1}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            dt.as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", 11 - failed, total.elapsed().as_secs_f64());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
