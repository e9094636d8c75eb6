//! Seeded experiment campaigns shared by the CLI, the FFI and the
//! acceptance suite. Every reported success is re-verified here by an exact
//! rank computation.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::error::DecodeError;
use crate::exactfield::{MultiquadraticField, Rationals};
use crate::field::{Field, FormatError};
use crate::linalg::Matrix;
use crate::matrix_code::random_rank_matrix;
use crate::plotkin::{GabidulinPlotkin, PlotkinError};
use crate::rankrm::{decoding_radius, fast_syndrome, naive_syndrome, random_message, sample_error, RMCode, RmError};
use crate::rng::{run_trials, trial_rng};

/// Attempts the RM error sampler makes before giving up on a trial.
const SAMPLER_ATTEMPTS: usize = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error(transparent)]
    Rm(#[from] RmError),
    #[error(transparent)]
    Plotkin(#[from] PlotkinError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// Outcome of one decoding trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrialOutcome {
    /// Decoded to the transmitted codeword.
    Recovered,
    /// Decoder reported failure.
    Failed(String),
    /// Decoder returned a codeword within the radius that was not the
    /// transmitted one.
    Miscorrected,
    /// Decoder returned a word farther than the radius. Never expected.
    Unsound,
}

/// Aggregate of a round-trip campaign.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub kind: &'static str,
    pub params: Value,
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub miscorrections: u64,
    pub unsound: u64,
    pub failure_kinds: BTreeMap<String, u64>,
    pub elapsed: Duration,
}

impl RoundTrip {
    fn collect(kind: &'static str, params: Value, outcomes: Vec<TrialOutcome>, elapsed: Duration) -> Self {
        let mut rt = RoundTrip {
            kind,
            params,
            trials: outcomes.len() as u64,
            successes: 0,
            failures: 0,
            miscorrections: 0,
            unsound: 0,
            failure_kinds: BTreeMap::new(),
            elapsed,
        };
        for o in outcomes {
            match o {
                TrialOutcome::Recovered => rt.successes += 1,
                TrialOutcome::Failed(k) => {
                    rt.failures += 1;
                    *rt.failure_kinds.entry(k).or_default() += 1;
                }
                TrialOutcome::Miscorrected => rt.miscorrections += 1,
                TrialOutcome::Unsound => rt.unsound += 1,
            }
        }
        rt
    }

    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 { 1.0 } else { self.successes as f64 / self.trials as f64 }
    }

    /// Deterministic fields first; wall time lives under "timing".
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "kind": self.kind,
            "params": self.params,
            "trials": self.trials,
            "successes": self.successes,
            "failures": self.failures,
            "miscorrections": self.miscorrections,
            "unsound": self.unsound,
            "failure_kinds": self.failure_kinds,
            "success_rate": self.success_rate(),
            "timing": {
                "total_s": self.elapsed.as_secs_f64(),
                "mean_trial_s": self.elapsed.as_secs_f64() / self.trials.max(1) as f64,
            },
        })
    }
}

fn failure_kind(e: &DecodeError) -> String {
    match e {
        DecodeError::NoSolution => "no_solution",
        DecodeError::NotUnique(_) => "not_unique",
        DecodeError::RankExceeded { .. } => "rank_exceeded",
        DecodeError::RadiusExceeded { .. } => "radius_exceeded",
        DecodeError::InexactDivision => "inexact_division",
        DecodeError::Shape { .. } => "shape",
        DecodeError::NotACodeword => "not_a_codeword",
        DecodeError::Unsupported(_) => "unsupported",
    }
    .to_string()
}

/// RM(r, m) over the first-primes tower: encode a random message, add an
/// error that passes the fold-rank sampler, decode.
pub fn rm_roundtrip(m: usize, r: i32, trials: u64, bound: i64, seed: u64) -> Result<RoundTrip, ExperimentError> {
    if m > 5 || r < 0 || r > m as i32 {
        return Err(ExperimentError::Invalid(format!("need 0 ≤ r ≤ m ≤ 5, got m = {m}, r = {r}")));
    }
    if bound < 1 {
        return Err(ExperimentError::Invalid("bound must be positive".into()));
    }
    let l = MultiquadraticField::first_primes(m);
    let code = RMCode::new(l.clone(), r)?;
    let t = decoding_radius(r, m);
    let depth = ((r + 1) as usize).min(m);
    let start = Instant::now();
    let outcomes = run_trials(trials, seed, |_, rng| {
        let c = code.encode(&random_message(&code, rng, bound)).expect("message length matches");
        let e = match sample_error(&l, t, depth, bound, rng, SAMPLER_ATTEMPTS) {
            Ok(e) => e,
            Err(_) => return TrialOutcome::Failed("sampler_exhausted".into()),
        };
        let report = code.decode(&c.add(&e));
        classify(&report.codeword, &c, &c.add(&e), t)
    });
    let params = json!({ "m": m, "r": r, "t": t, "bound": bound, "seed": seed });
    Ok(RoundTrip::collect("rm-roundtrip", params, outcomes, start.elapsed()))
}

fn classify<F: Field>(decoded: &Result<Matrix<F>, DecodeError>, sent: &Matrix<F>, received: &Matrix<F>, t: usize) -> TrialOutcome {
    match decoded {
        Err(e) => TrialOutcome::Failed(failure_kind(e)),
        Ok(c) if received.sub(c).rank() > t => TrialOutcome::Unsound,
        Ok(c) if c == sent => TrialOutcome::Recovered,
        Ok(_) => TrialOutcome::Miscorrected,
    }
}

/// Gabidulin C ⋄ₐ D with uniform rank-t errors.
pub fn plotkin_roundtrip(q: u64, m: usize, k1: usize, k2: usize, a: u64, trials: u64, seed: u64) -> Result<RoundTrip, ExperimentError> {
    let g = GabidulinPlotkin::new(q, m, k1, k2, a)?;
    let t = g.radius();
    let f = *g.code.field();
    let start = Instant::now();
    let outcomes = run_trials(trials, seed, |_, rng| {
        let c = g.code.random_codeword(rng);
        let y = c.add(&random_rank_matrix(&f, 2 * m, 2 * m, t, rng));
        let decoded = g.code.decode(&y).map(|d| d.codeword);
        classify(&decoded, &c, &y, t)
    });
    let (qf, tf, mf) = (q as f64, t as f64, m as f64);
    let params = json!({
        "q": q, "m": m, "k1": k1, "k2": k2, "a": g.code.a(), "square": g.code.is_square(), "t": t, "seed": seed,
        "predicted_failure_scale": qf.powf(tf - mf - 1.0),
    });
    Ok(RoundTrip::collect("plotkin-roundtrip", params, outcomes, start.elapsed()))
}

/// Median timings of the fast and naive RM syndromes at one m.
#[derive(Clone, Debug)]
pub struct SyndromeTiming {
    pub m: usize,
    pub r: i32,
    pub n: usize,
    pub fast: Duration,
    pub naive: Duration,
    /// Both methods agreed on every repetition.
    pub agree: bool,
}

impl SyndromeTiming {
    pub fn ratio(&self) -> f64 {
        self.naive.as_secs_f64() / self.fast.as_secs_f64().max(1e-12)
    }

    pub const CSV_HEADER: &'static str = "m,r,n,fast_median_s,naive_median_s,ratio,agree";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.9},{:.9},{:.4},{}",
            self.m,
            self.r,
            self.n,
            self.fast.as_secs_f64(),
            self.naive.as_secs_f64(),
            self.ratio(),
            self.agree
        )
    }
}

/// Order used at each m: r = ⌊(m − 1)/2⌋, so the parity part stays large.
pub fn bench_order(m: usize) -> i32 {
    (m.saturating_sub(1) / 2) as i32
}

/// Times fast and naive syndromes for m = 1..=m_max on random integral
/// vectors. H is built once per m and excluded from the naive timing.
pub fn syndrome_bench(m_max: usize, reps: usize, seed: u64) -> Result<Vec<SyndromeTiming>, ExperimentError> {
    if m_max > 6 || reps == 0 {
        return Err(ExperimentError::Invalid(format!("need 1 ≤ m_max ≤ 6 and reps ≥ 1, got {m_max}, {reps}")));
    }
    let mut out = Vec::new();
    for m in 1..=m_max {
        let l = MultiquadraticField::first_primes(m);
        let r = bench_order(m);
        let h = crate::rankrm::parity_check_matrix(&l, r, m);
        let mut rng = trial_rng(seed, m as u64);
        let (mut fast, mut naive) = (Vec::with_capacity(reps), Vec::with_capacity(reps));
        let mut agree = true;
        for _ in 0..reps {
            let y: Vec<_> = (0..l.degree()).map(|_| l.random_integral(&mut rng, 5)).collect();
            let t0 = Instant::now();
            let s_fast = fast_syndrome(&l, r, m, &y);
            fast.push(t0.elapsed());
            let t0 = Instant::now();
            let s_naive = h.mul_vec(&y);
            naive.push(t0.elapsed());
            agree &= s_fast == s_naive;
        }
        out.push(SyndromeTiming { m, r, n: l.degree(), fast: median(fast), naive: median(naive), agree });
    }
    Ok(out)
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort_unstable();
    v[v.len() / 2]
}

/// A frozen RM decoding instance: code, message, error, received word and
/// expected codeword.
#[derive(Clone, Debug)]
pub struct RmFixture {
    pub code: RMCode,
    pub message: Vec<crate::exactfield::MQElement>,
    pub error: Matrix<Rationals>,
    pub received: Matrix<Rationals>,
    pub codeword: Matrix<Rationals>,
}

impl RmFixture {
    pub fn generate(m: usize, r: i32, bound: i64, seed: u64) -> Result<Self, ExperimentError> {
        let l = MultiquadraticField::first_primes(m);
        let code = RMCode::new(l.clone(), r)?;
        let mut rng = trial_rng(seed, 0);
        let message = random_message(&code, &mut rng, bound);
        let codeword = code.encode(&message)?;
        let t = decoding_radius(r, m);
        let error = sample_error(&l, t, ((r + 1) as usize).min(m), bound, &mut rng, SAMPLER_ATTEMPTS)
            .map_err(|e| ExperimentError::Invalid(e.to_string()))?;
        let received = codeword.add(&error);
        Ok(RmFixture { code, message, error, received, codeword })
    }

    pub fn to_json(&self) -> Value {
        let l = self.code.field();
        json!({
            "schema": 1,
            "code": self.code.to_json(),
            "message": self.message.iter().map(|x| l.elem_to_json(x)).collect::<Vec<_>>(),
            "error": self.error.to_json(),
            "received": self.received.to_json(),
            "codeword": self.codeword.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, FormatError> {
        let get = |k: &str| v.get(k).ok_or_else(|| FormatError::new(format!("missing \"{k}\"")));
        let code = RMCode::from_json(get("code")?)?;
        let l = code.field().clone();
        let message = get("message")?
            .as_array()
            .ok_or_else(|| FormatError::new("\"message\" must be an array"))?
            .iter()
            .map(|x| l.elem_from_json(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RmFixture {
            code,
            message,
            error: Matrix::from_json(&Rationals, get("error")?)?,
            received: Matrix::from_json(&Rationals, get("received")?)?,
            codeword: Matrix::from_json(&Rationals, get("codeword")?)?,
        })
    }

    /// Re-encodes and re-decodes; lists every mismatch.
    pub fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        match self.code.encode(&self.message) {
            Ok(c) if c == self.codeword => {}
            Ok(_) => problems.push("encoding differs from the stored codeword".into()),
            Err(e) => problems.push(format!("message does not encode: {e}")),
        }
        if self.codeword.add(&self.error) != self.received {
            problems.push("received ≠ codeword + error".into());
        }
        match self.code.decode(&self.received).codeword {
            Ok(c) if c == self.codeword => {}
            Ok(_) => problems.push("decoder returned a different codeword".into()),
            Err(e) => problems.push(format!("decoder failed: {e}")),
        }
        problems
    }
}

/// Checks fast_syndrome against the naive product on `count` random
/// vectors; returns the number of disagreements.
pub fn syndrome_oracle(m: usize, r: i32, count: u64, seed: u64) -> usize {
    let l = MultiquadraticField::first_primes(m);
    run_trials(count, seed, |_, rng| {
        let y: Vec<_> = (0..l.degree()).map(|_| l.random_integral(rng, 9)).collect();
        fast_syndrome(&l, r, m, &y) != naive_syndrome(&l, r, m, &y)
    })
    .into_iter()
    .filter(|&bad| bad)
    .count()
}
