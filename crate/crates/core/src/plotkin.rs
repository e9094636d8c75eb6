//! The Plotkin construction C ⋄ₐ D over GF(q), q odd: 2m×2n codewords
//! [[A0+B0, a(A1−B1)], [A1+B1, A0−B0]] with A_i ∈ C and B_i ∈ D.

use std::sync::Arc;

use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde_json::{json, Value};
use statrs::distribution::{Beta, ContinuousCDF};

use crate::error::DecodeError;
use crate::field::{Field, FiniteField};
use crate::gabidulin::{GabidulinCode, GabidulinError, GabidulinMatrixCode};
use crate::gf::{ExtField, Gf2, GfError, PrimeField, Quad, QuadExtField};
use crate::linalg::{LinalgError, Matrix};
use crate::matrix_code::{check_shape, random_full_rank, LinearMatrixCode, MatrixCode};
use crate::rng::trial_rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlotkinError {
    #[error(transparent)]
    Dimension(#[from] LinalgError),
    #[error("component codes have shapes {c:?} and {d:?}")]
    ShapeMismatch { c: (usize, usize), d: (usize, usize) },
    #[error("the scalar a must be nonzero")]
    ZeroScalar,
    #[error("m = {m} must equal 2·k1 − k2 = {expected}")]
    ParameterMismatch { m: usize, expected: i64 },
    #[error("need 0 < k2 ≤ k1 ≤ m, got k1 = {k1}, k2 = {k2}, m = {m}")]
    InvalidDimensions { m: usize, k1: usize, k2: usize },
    #[error("{0} block is not in its component code")]
    NotInComponent(&'static str),
    #[error("extended components are not over GF(q)[√a]")]
    ExtensionMismatch,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Gabidulin(#[from] GabidulinError),
}

/// Shared handle to a component code.
pub type CodeRef<F> = Arc<dyn MatrixCode<F>>;

/// [[A0+B0, a(A1−B1)], [A1+B1, A0−B0]].
pub fn assemble<F: Field>(
    a: &F::Elem,
    a0: &Matrix<F>,
    a1: &Matrix<F>,
    b0: &Matrix<F>,
    b1: &Matrix<F>,
) -> Result<Matrix<F>, LinalgError> {
    same_shape(&[a0, a1, b0, b1])?;
    Matrix::block(&a0.add(b0), &a1.sub(b1).scale(a), &a1.add(b1), &a0.sub(b0))
}

/// Characteristic-2 variant [[A0+B0, a(A1+B1)+B0], [A1+B1, A0+A1+B0]]. No
/// decoder is provided for it.
pub fn assemble_char2<F: Field>(
    a: &F::Elem,
    a0: &Matrix<F>,
    a1: &Matrix<F>,
    b0: &Matrix<F>,
    b1: &Matrix<F>,
) -> Result<Matrix<F>, LinalgError> {
    same_shape(&[a0, a1, b0, b1])?;
    let s1 = a1.add(b1);
    Matrix::block(&a0.add(b0), &s1.scale(a).add(b0), &s1, &a0.add(a1).add(b0))
}

fn same_shape<F: Field>(ms: &[&Matrix<F>]) -> Result<(), LinalgError> {
    for w in ms.windows(2) {
        if w[0].shape() != w[1].shape() {
            return Err(LinalgError::DimensionMismatch { op: "plotkin", left: w[0].shape(), right: w[1].shape() });
        }
    }
    Ok(())
}

/// Inverse of [`assemble`] on its image: (A0, A1, B0, B1).
pub fn disassemble<F: Field>(a: &F::Elem, y: &Matrix<F>) -> (Matrix<F>, Matrix<F>, Matrix<F>, Matrix<F>) {
    let f = y.field();
    let (y00, y01, y10, y11) = y.split_blocks(y.rows() / 2, y.cols() / 2);
    let half = f.inv(&f.from_i64(2)).expect("odd characteristic");
    let y01a = y01.scale(&f.inv(a).expect("a is nonzero"));
    (
        y00.add(&y11).scale(&half),
        y10.add(&y01a).scale(&half),
        y00.sub(&y11).scale(&half),
        y10.sub(&y01a).scale(&half),
    )
}

/// c·Y00 + Y10 − c²·Y01 − c·Y11 = (cI | I)·Y·(I ; −cI). On a codeword this
/// is 2c·B0 + 2·B1 when c² = 1/a; the A-blocks cancel.
pub fn fold<F: Field>(y: &Matrix<F>, c: &F::Elem) -> Matrix<F> {
    let f = y.field();
    let (y00, y01, y10, y11) = y.split_blocks(y.rows() / 2, y.cols() / 2);
    y00.sub(&y11).scale(c).add(&y10).sub(&y01.scale(&f.mul(c, c)))
}

/// Y10 − c·Y11, the bottom half of the fold once the B-blocks are removed:
/// A1 − c·A0 on a codeword.
pub fn partial_fold<F: Field>(y: &Matrix<F>, c: &F::Elem) -> Matrix<F> {
    let (_, _, y10, y11) = y.split_blocks(y.rows() / 2, y.cols() / 2);
    y10.sub(&y11.scale(c))
}

/// Span of C ⋄ₐ D from bases of C and D.
pub fn plotkin_span<F: FiniteField>(f: &F, c: &[Matrix<F>], d: &[Matrix<F>], a: &F::Elem, m: usize, n: usize) -> LinearMatrixCode<F> {
    let z = Matrix::zeros(f, m, n);
    let mut words = Vec::with_capacity(2 * (c.len() + d.len()));
    for x in c {
        words.push(assemble(a, x, &z, &z, &z).expect("m×n"));
        words.push(assemble(a, &z, x, &z, &z).expect("m×n"));
    }
    for x in d {
        words.push(assemble(a, &z, &z, x, &z).expect("m×n"));
        words.push(assemble(a, &z, &z, &z, x).expect("m×n"));
    }
    LinearMatrixCode::new(f, 2 * m, 2 * n, &words)
}

/// (C ⋄ₐ D)^⊥ = C^⊥ ⋄_{1/a} D^⊥ as subspaces under the trace form.
pub fn plotkin_dual_check<F: FiniteField>(c: &LinearMatrixCode<F>, d: &LinearMatrixCode<F>, a: &F::Elem) -> bool {
    let f = c.field();
    let (m, n) = c.shape();
    let lhs = plotkin_span(f, &c.basis(), &d.basis(), a, m, n).dual();
    let ai = f.inv(a).expect("a is nonzero");
    let rhs = plotkin_span(f, &c.dual().basis(), &d.dual().basis(), &ai, m, n);
    lhs.same_code(&rhs)
}

/// How the decoder reaches √a.
#[derive(Clone)]
enum Root {
    /// √a ∈ GF(q).
    Square { sqrt_a: u64 },
    /// √a = s generates GF(q²); the components over GF(q²) are supplied.
    NonSquare { ext: Gf2, c: CodeRef<Gf2>, d: CodeRef<Gf2> },
    /// Non-square a without extended components: decoding is unsupported.
    Missing,
}

/// C ⋄ₐ D with a t-error decoder.
#[derive(Clone)]
pub struct PlotkinCode {
    field: PrimeField,
    a: u64,
    c: CodeRef<PrimeField>,
    d: CodeRef<PrimeField>,
    t: usize,
    root: Root,
}

impl std::fmt::Debug for PlotkinCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PlotkinCode")
            .field("q", &self.field.p())
            .field("a", &self.a)
            .field("shape", &self.shape())
            .field("dimension", &self.dimension())
            .field("radius", &self.t)
            .finish()
    }
}

/// Successful decode: codeword, error and the four blocks.
#[derive(Clone, Debug)]
pub struct PlotkinDecoding {
    pub codeword: Matrix<PrimeField>,
    pub error: Matrix<PrimeField>,
    pub blocks: [Matrix<PrimeField>; 4],
}

impl PlotkinCode {
    /// Radius defaults to min(D's error radius, C's erasure radius).
    pub fn new(c: CodeRef<PrimeField>, d: CodeRef<PrimeField>, a: u64) -> Result<Self, PlotkinError> {
        if c.shape() != d.shape() {
            return Err(PlotkinError::ShapeMismatch { c: c.shape(), d: d.shape() });
        }
        let field = *c.field();
        let a = a % field.p();
        if a == 0 {
            return Err(PlotkinError::ZeroScalar);
        }
        let root = match field.sqrt(a) {
            Ok(sqrt_a) => Root::Square { sqrt_a },
            Err(_) => Root::Missing,
        };
        let t = d.error_radius().min(c.erasure_radius());
        Ok(PlotkinCode { field, a, c, d, t, root })
    }

    /// Supplies C ⊗ GF(q²) and D ⊗ GF(q²) for a non-square a. Both must be
    /// over GF(q)[s]/(s² − a).
    pub fn with_extension(mut self, c: CodeRef<Gf2>, d: CodeRef<Gf2>) -> Result<Self, PlotkinError> {
        let ext = QuadExtField::new(self.field, self.a)?;
        if !c.field().same_field(&ext) || !d.field().same_field(&ext) || c.shape() != self.c.shape() || d.shape() != self.d.shape() {
            return Err(PlotkinError::ExtensionMismatch);
        }
        self.root = Root::NonSquare { ext, c, d };
        Ok(self)
    }

    pub fn with_radius(mut self, t: usize) -> Self {
        self.t = t;
        self
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn is_square(&self) -> bool {
        self.field.legendre(self.a) == 1
    }

    pub fn radius(&self) -> usize {
        self.t
    }

    pub fn c(&self) -> &CodeRef<PrimeField> {
        &self.c
    }

    pub fn d(&self) -> &CodeRef<PrimeField> {
        &self.d
    }

    /// (2m, 2n).
    pub fn shape(&self) -> (usize, usize) {
        let (m, n) = self.c.shape();
        (2 * m, 2 * n)
    }

    /// 2(dim C + dim D).
    pub fn dimension(&self) -> usize {
        2 * (self.c.dimension() + self.d.dimension())
    }

    pub fn encode(
        &self,
        a0: &Matrix<PrimeField>,
        a1: &Matrix<PrimeField>,
        b0: &Matrix<PrimeField>,
        b1: &Matrix<PrimeField>,
    ) -> Result<Matrix<PrimeField>, PlotkinError> {
        let y = assemble(&self.a, a0, a1, b0, b1)?;
        for (x, code, name) in [(a0, &self.c, "A0"), (a1, &self.c, "A1"), (b0, &self.d, "B0"), (b1, &self.d, "B1")] {
            if !code.contains(x) {
                return Err(PlotkinError::NotInComponent(name));
            }
        }
        Ok(y)
    }

    /// Codeword from uniform component codewords.
    pub fn random_codeword(&self, rng: &mut dyn RngCore) -> Matrix<PrimeField> {
        let a0 = self.c.random_codeword(rng);
        let a1 = self.c.random_codeword(rng);
        let b0 = self.d.random_codeword(rng);
        let b1 = self.d.random_codeword(rng);
        assemble(&self.a, &a0, &a1, &b0, &b1).expect("components share a shape")
    }

    pub fn contains(&self, y: &Matrix<PrimeField>) -> bool {
        if y.shape() != self.shape() {
            return false;
        }
        let (a0, a1, b0, b1) = disassemble(&self.a, y);
        self.c.contains(&a0) && self.c.contains(&a1) && self.d.contains(&b0) && self.d.contains(&b1)
    }

    /// Encoded images of basis tuples, spanning the code.
    pub fn basis(&self) -> Vec<Matrix<PrimeField>> {
        let (m, n) = self.c.shape();
        plotkin_span(&self.field, &self.c.basis(), &self.d.basis(), &self.a, m, n).basis()
    }

    pub fn decode(&self, y: &Matrix<PrimeField>) -> Result<PlotkinDecoding, DecodeError> {
        check_shape(y, self.shape())?;
        let blocks = match &self.root {
            Root::Square { sqrt_a } => self.blocks_square(y, *sqrt_a)?,
            Root::NonSquare { ext, c, d } => self.blocks_nonsquare(y, ext, c.as_ref(), d.as_ref())?,
            Root::Missing => {
                return Err(DecodeError::Unsupported("non-square a needs components over GF(q²)".into()));
            }
        };
        let [a0, a1, b0, b1] = &blocks;
        let codeword = assemble(&self.a, a0, a1, b0, b1).expect("components share a shape");
        let error = y.sub(&codeword);
        let rank = error.rank();
        if rank > self.t {
            return Err(DecodeError::RankExceeded { rank, radius: self.t });
        }
        Ok(PlotkinDecoding { codeword, error, blocks })
    }

    /// Two folds at ±1/√a, two D-decodes, then two C-erasure-decodes.
    fn blocks_square(&self, y: &Matrix<PrimeField>, s: u64) -> Result<[Matrix<PrimeField>; 4], DecodeError> {
        let f = &self.field;
        let is = f.inv(&s).expect("s is nonzero");
        let signs = [is, f.neg(&is)];
        let mut folded = Vec::with_capacity(2);
        let mut spaces = Vec::with_capacity(2);
        for c in &signs {
            let w = fold(y, c);
            let dec = self.d.decode_errors(&w)?;
            spaces.push(w.sub(&dec).row_space_basis());
            folded.push(dec);
        }
        // F± = ±(2/s)·B0 + 2·B1.
        let quarter = f.inv(&4).expect("odd characteristic");
        let half = f.inv(&2).expect("odd characteristic");
        let b1 = folded[0].add(&folded[1]).scale(&quarter);
        let b0 = folded[0].sub(&folded[1]).scale(&f.mul(&s, &quarter));
        let z = Matrix::zeros(f, b0.rows(), b0.cols());
        let rest = y.sub(&assemble(&self.a, &z, &z, &b0, &b1).expect("same shape"));
        // G± = A1 ∓ A0/s.
        let mut g = Vec::with_capacity(2);
        for (c, v) in signs.iter().zip(&spaces) {
            g.push(self.c.decode_erasures(&partial_fold(&rest, c), v)?);
        }
        let a1 = g[0].add(&g[1]).scale(&half);
        let a0 = g[1].sub(&g[0]).scale(&f.mul(&s, &half));
        Ok([a0, a1, b0, b1])
    }

    /// One fold at 1/s over GF(q²), one D-decode, one C-erasure-decode;
    /// blocks come from the u + v·s coordinates.
    fn blocks_nonsquare(
        &self,
        y: &Matrix<PrimeField>,
        ext: &Gf2,
        c_ext: &dyn MatrixCode<Gf2>,
        d_ext: &dyn MatrixCode<Gf2>,
    ) -> Result<[Matrix<PrimeField>; 4], DecodeError> {
        let f = &self.field;
        let lift = |m: &Matrix<PrimeField>| m.map_entries(ext, |x| ext.embed_base(x));
        let re = |m: &Matrix<Gf2>| m.map_entries(f, |x: &Quad<u64>| x.re);
        let im = |m: &Matrix<Gf2>| m.map_entries(f, |x: &Quad<u64>| x.im);
        // 1/s = s/a.
        let ai = f.inv(&self.a).expect("a is nonzero");
        let c = Quad { re: 0, im: ai };
        let y2 = lift(y);
        let w = fold(&y2, &c);
        let dec = d_ext.decode_errors(&w)?;
        let v = w.sub(&dec).row_space_basis();
        // 2·B1 + (2s/a)·B0.
        let half = f.inv(&2).expect("odd characteristic");
        let b1 = re(&dec).scale(&half);
        let b0 = im(&dec).scale(&f.mul(&self.a, &half));
        let z = Matrix::zeros(f, b0.rows(), b0.cols());
        let rest = lift(&y.sub(&assemble(&self.a, &z, &z, &b0, &b1).expect("same shape")));
        // A1 − (s/a)·A0.
        let g = c_ext.decode_erasures(&partial_fold(&rest, &c), &v)?;
        let a1 = re(&g);
        let a0 = im(&g).scale(&f.neg(&self.a));
        Ok([a0, a1, b0, b1])
    }
}

/// C ⋄ₐ D for Gabidulin codes of dimensions k1 and k2 over GF(q^m), with
/// m = 2·k1 − k2 so that t = m − k1 = (m − k2)/2.
#[derive(Clone, Debug)]
pub struct GabidulinPlotkin {
    pub code: PlotkinCode,
    pub c: GabidulinCode<ExtField>,
    pub d: GabidulinCode<ExtField>,
}

impl GabidulinPlotkin {
    /// A non-square a is decodable only for odd m, where GF(q^m) ⊗ GF(q²)
    /// is a field; for even m decoding returns `Unsupported`.
    pub fn new(q: u64, m: usize, k1: usize, k2: usize, a: u64) -> Result<Self, PlotkinError> {
        if m as i64 != 2 * k1 as i64 - k2 as i64 {
            return Err(PlotkinError::ParameterMismatch { m, expected: 2 * k1 as i64 - k2 as i64 });
        }
        if k2 == 0 || k2 > k1 || k1 > m {
            return Err(PlotkinError::InvalidDimensions { m, k1, k2 });
        }
        PrimeField::new(q)?;
        let ext = ExtField::new(q, m)?;
        let c = GabidulinCode::standard(&ext, k1)?;
        let d = GabidulinCode::standard(&ext, k2)?;
        let mut code = PlotkinCode::new(
            Arc::new(GabidulinMatrixCode::new(c.clone())),
            Arc::new(GabidulinMatrixCode::new(d.clone())),
            a,
        )?
        .with_radius(m - k1);
        if !code.is_square() && m % 2 == 1 {
            let big = QuadExtField::scalar_extension(ext, code.a())?;
            let lift = |x: &Vec<u64>| big.embed_base(x);
            code = code.with_extension(
                Arc::new(GabidulinMatrixCode::new(c.extend(&big, lift)?)),
                Arc::new(GabidulinMatrixCode::new(d.extend(&big, lift)?)),
            )?;
        }
        Ok(GabidulinPlotkin { code, c, d })
    }

    pub fn m(&self) -> usize {
        self.c.m()
    }

    pub fn radius(&self) -> usize {
        self.code.radius()
    }

    /// 2m − k1 − k2 + 1, the Singleton bound for a 2m×2m code of this
    /// dimension.
    pub fn singleton_bound(&self) -> usize {
        2 * self.m() + 1 - self.c.k() - self.d.k()
    }

    /// [[A0, 0], [0, A0]] for a minimum-rank A0 ∈ C: rank 2(m − k1 + 1),
    /// below the Singleton bound whenever m − k2 > 2.
    pub fn non_mrd_witness(&self) -> Matrix<PrimeField> {
        let a0 = self.c.to_matrix(&self.c.min_rank_witness());
        let z = Matrix::zeros(self.code.field(), a0.rows(), a0.cols());
        self.code.encode(&a0, &z, &z, &z).expect("A0 ∈ C")
    }
}

/// Outcome of a folding Monte Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldStats {
    pub q: u64,
    pub m: usize,
    pub t: usize,
    pub a: u64,
    pub square: bool,
    pub trials: u64,
    pub drops: u64,
    /// Exact (Clopper–Pearson) two-sided 95% interval for the drop rate.
    pub ci95: (f64, f64),
    /// q^{t−m−1} for square a, q^{2t−2m−2} otherwise.
    pub predicted_bound: f64,
}

impl FoldStats {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 { 0.0 } else { self.drops as f64 / self.trials as f64 }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "m": self.m,
            "t": self.t,
            "a": self.a,
            "square": self.square,
            "trials": self.trials,
            "drops": self.drops,
            "rate": self.rate(),
            "ci95": [self.ci95.0, self.ci95.1],
            "predicted_bound": self.predicted_bound,
        })
    }
}

/// Clopper–Pearson interval for `x` successes in `n` trials at level 1 − α.
pub fn clopper_pearson(x: u64, n: u64, alpha: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let lo = if x == 0 {
        0.0
    } else {
        Beta::new(x as f64, (n - x + 1) as f64).expect("positive shape").inverse_cdf(alpha / 2.0)
    };
    let hi = if x == n {
        1.0
    } else {
        Beta::new((x + 1) as f64, (n - x) as f64).expect("positive shape").inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

/// Whether (I | bI)·E·(b′I ; I) keeps the rank of E.
fn fold_keeps_rank<F: FiniteField>(e: &Matrix<F>, b: &F::Elem, b2: &F::Elem, t: usize) -> bool {
    let (e00, e01, e10, e11) = e.split_blocks(e.rows() / 2, e.cols() / 2);
    let f = e.field();
    let folded = e00.scale(b2).add(&e01).add(&e10.scale(&f.mul(b, b2))).add(&e11.scale(b));
    folded.rank() == t
}

/// Samples `trials` uniform rank-t 2m×2m matrices over GF(q), folds each
/// with b = b′ = 1/√a (square a, over GF(q)) or b = b′ = √a (non-square a,
/// over GF(q²)), and counts rank drops. Trials run in parallel with seeds
/// derived from (seed, index).
pub fn fold_probability_experiment(q: u64, m: usize, t: usize, a: u64, trials: u64, seed: u64) -> Result<FoldStats, PlotkinError> {
    let f = PrimeField::new(q)?;
    let a = a % q;
    if a == 0 {
        return Err(PlotkinError::ZeroScalar);
    }
    assert!(t <= m, "rank {t} exceeds the fold size {m}");
    let square = f.legendre(a) == 1;
    let drops = if square {
        let b = f.inv(&f.sqrt(a)?).expect("nonzero root");
        count_drops(trials, seed, |rng| {
            let e = sample(&f, m, t, rng);
            !fold_keeps_rank(&e, &b, &b, t)
        })
    } else {
        let ext = QuadExtField::new(f, a)?;
        let s = ext.sqrt_nonresidue();
        count_drops(trials, seed, |rng| {
            let e = sample(&f, m, t, rng).map_entries(&ext, |x| ext.embed_base(x));
            !fold_keeps_rank(&e, &s, &s, t)
        })
    };
    let (qf, tf, mf) = (q as f64, t as f64, m as f64);
    let predicted_bound = if square { qf.powf(tf - mf - 1.0) } else { qf.powf(2.0 * tf - 2.0 * mf - 2.0) };
    Ok(FoldStats { q, m, t, a, square, trials, drops, ci95: clopper_pearson(drops, trials, 0.05), predicted_bound })
}

fn sample<R: Rng + ?Sized>(f: &PrimeField, m: usize, t: usize, rng: &mut R) -> Matrix<PrimeField> {
    let x = random_full_rank(f, 2 * m, t, rng);
    let z = random_full_rank(f, t, 2 * m, rng);
    x.mul(&z)
}

fn count_drops(trials: u64, seed: u64, trial: impl Fn(&mut rand_xoshiro::Xoshiro256PlusPlus) -> bool + Sync) -> u64 {
    (0..trials).into_par_iter().filter(|&i| trial(&mut trial_rng(seed, i))).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_code::random_rank_matrix;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn random_code(f: &PrimeField, m: usize, n: usize, k: usize, rng: &mut Xoshiro256PlusPlus) -> LinearMatrixCode<PrimeField> {
        let basis: Vec<_> = (0..k).map(|_| Matrix::from_fn(f, m, n, |_, _| f.random(rng))).collect();
        LinearMatrixCode::new(f, m, n, &basis)
    }

    #[test]
    fn encoder_examples() {
        let f = gf(5);
        let i = Matrix::identity(&f, 2);
        let z = Matrix::zeros(&f, 2, 2);
        let i4 = Matrix::identity(&f, 4);
        assert_eq!(assemble(&2, &i, &z, &z, &z).unwrap(), i4);
        let b0 = assemble(&2, &z, &z, &i, &z).unwrap();
        assert_eq!(b0, Matrix::block(&i, &z, &z, &i.neg()).unwrap());
        assert!(assemble(&2, &z, &z, &z, &z).unwrap().is_zero());
        assert!(assemble(&2, &i, &z, &z, &Matrix::zeros(&f, 2, 3)).is_err());
    }

    #[test]
    fn char2_encoder_examples() {
        // Over GF(3) the formula is only checked for block placement.
        let f = gf(3);
        let i = Matrix::identity(&f, 2);
        let z = Matrix::zeros(&f, 2, 2);
        assert!(assemble_char2(&1, &z, &z, &z, &z).unwrap().is_zero());
        assert_eq!(assemble_char2(&1, &i, &z, &z, &z).unwrap(), Matrix::identity(&f, 4));
        assert_eq!(assemble_char2(&1, &z, &z, &i, &z).unwrap(), Matrix::block(&i, &i, &z, &i).unwrap());
    }

    #[test]
    fn disassemble_inverts_assemble() {
        let f = gf(7);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(1);
        let parts: Vec<_> = (0..4).map(|_| Matrix::from_fn(&f, 2, 3, |_, _| f.random(&mut rng))).collect();
        let y = assemble(&3, &parts[0], &parts[1], &parts[2], &parts[3]).unwrap();
        let (a0, a1, b0, b1) = disassemble(&3, &y);
        assert_eq!([a0, a1, b0, b1].to_vec(), parts);
    }

    #[test]
    fn fold_examples() {
        let f = gf(23);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(2);
        let a = 4;
        let c = f.inv(&2).unwrap();
        let z = Matrix::zeros(&f, 3, 3);
        let r = |rng: &mut Xoshiro256PlusPlus| Matrix::from_fn(&f, 3, 3, |_, _| f.random(rng));
        let only_a = assemble(&a, &r(&mut rng), &r(&mut rng), &z, &z).unwrap();
        assert!(fold(&only_a, &c).is_zero());
        let i = Matrix::identity(&f, 3);
        // (2/√a)·I = I for a = 4.
        assert_eq!(fold(&assemble(&a, &z, &z, &i, &z).unwrap(), &c), i);
        for _ in 0..500 {
            let t = rng.random_range(0..=6);
            let e = random_rank_matrix(&f, 6, 6, t, &mut rng);
            assert!(fold(&e, &c).rank() <= t);
        }
    }

    #[test]
    fn dimension_formula() {
        let f = gf(5);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
        let zero: CodeRef<PrimeField> = Arc::new(LinearMatrixCode::zero(&f, 2, 2));
        assert_eq!(PlotkinCode::new(zero.clone(), zero, 2).unwrap().dimension(), 0);
        let c = random_code(&f, 3, 3, 3, &mut rng);
        let d = random_code(&f, 3, 3, 2, &mut rng);
        let p = PlotkinCode::new(Arc::new(c), Arc::new(d), 2).unwrap();
        assert_eq!(p.dimension(), 10);
        assert_eq!(p.basis().len(), 10);
    }

    #[test]
    fn duality_small_cases() {
        let f = gf(5);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(4);
        for _ in 0..3 {
            let c = random_code(&f, 2, 2, 2, &mut rng);
            let d = random_code(&f, 2, 2, 1, &mut rng);
            assert!(plotkin_dual_check(&c, &d, &2));
        }
        let full = LinearMatrixCode::full(&f, 2, 2);
        assert!(plotkin_dual_check(&full, &full, &3));
        let zero = LinearMatrixCode::zero(&f, 2, 2);
        assert!(plotkin_dual_check(&zero, &zero, &3));
    }

    #[test]
    fn membership_and_component_checks() {
        let f = gf(5);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        let c = Arc::new(random_code(&f, 2, 2, 1, &mut rng));
        let d = Arc::new(random_code(&f, 2, 2, 1, &mut rng));
        let p = PlotkinCode::new(c.clone(), d, 3).unwrap();
        let y = p.random_codeword(&mut rng);
        assert!(p.contains(&y));
        let i = Matrix::identity(&f, 2);
        let z = Matrix::zeros(&f, 2, 2);
        if !c.contains(&i) {
            assert_eq!(p.encode(&i, &z, &z, &z).unwrap_err(), PlotkinError::NotInComponent("A0"));
        }
        assert_eq!(PlotkinCode::new(c.clone(), c, 0).unwrap_err(), PlotkinError::ZeroScalar);
    }

    #[test]
    fn zero_error_recovers_blocks() {
        let g = GabidulinPlotkin::new(7, 5, 3, 1, 2).unwrap();
        assert!(g.code.is_square());
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(6);
        let y = g.code.random_codeword(&mut rng);
        let d = g.code.decode(&y).unwrap();
        assert_eq!(d.codeword, y);
        let (a0, a1, b0, b1) = disassemble(&2, &y);
        assert_eq!(d.blocks.to_vec(), vec![a0, a1, b0, b1]);
    }

    #[test]
    fn square_round_trip() {
        let g = GabidulinPlotkin::new(7, 5, 3, 1, 2).unwrap();
        let f = *g.code.field();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
        let mut ok = 0;
        for _ in 0..20 {
            let y = g.code.random_codeword(&mut rng);
            let e = random_rank_matrix(&f, 10, 10, 2, &mut rng);
            match g.code.decode(&y.add(&e)) {
                Ok(d) => {
                    assert_eq!(d.codeword, y);
                    ok += 1;
                }
                Err(err) => assert!(matches!(err, DecodeError::RankExceeded { .. } | DecodeError::NotUnique(_) | DecodeError::NoSolution)),
            }
        }
        assert!(ok >= 18, "{ok}/20");
    }

    #[test]
    fn nonsquare_round_trip() {
        // 3 is a non-residue mod 7 and m = 5 is odd.
        let g = GabidulinPlotkin::new(7, 5, 3, 1, 3).unwrap();
        assert!(!g.code.is_square());
        let f = *g.code.field();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(8);
        let mut ok = 0;
        for _ in 0..20 {
            let y = g.code.random_codeword(&mut rng);
            let e = random_rank_matrix(&f, 10, 10, 2, &mut rng);
            if let Ok(d) = g.code.decode(&y.add(&e)) {
                assert_eq!(d.codeword, y);
                ok += 1;
            }
        }
        assert!(ok >= 18, "{ok}/20");
    }

    #[test]
    fn nonsquare_even_degree_is_unsupported() {
        let g = GabidulinPlotkin::new(5, 4, 3, 2, 2).unwrap();
        let y = Matrix::zeros(g.code.field(), 8, 8);
        assert!(matches!(g.code.decode(&y), Err(DecodeError::Unsupported(_))));
    }

    #[test]
    fn adversarial_error_is_rejected() {
        // E = [[X, −√a·X], [0, 0]] is killed by the fold at 1/√a.
        let g = GabidulinPlotkin::new(7, 5, 3, 1, 2).unwrap();
        let f = *g.code.field();
        let s = f.sqrt(2).unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(9);
        let x = random_rank_matrix(&f, 5, 5, 1, &mut rng);
        let z = Matrix::zeros(&f, 5, 5);
        let e = Matrix::block(&x, &x.scale(&f.neg(&s)), &z, &z).unwrap();
        assert_eq!(e.rank(), 1);
        let y = g.code.random_codeword(&mut rng);
        if let Ok(d) = g.code.decode(&y.add(&e)) {
            assert!(d.error.rank() <= g.radius());
        }
    }

    #[test]
    fn gabidulin_parameters() {
        let g = GabidulinPlotkin::new(23, 8, 6, 4, 4).unwrap();
        assert_eq!(g.radius(), 2);
        assert_eq!(g.code.dimension(), 160);
        assert_eq!(g.singleton_bound(), 7);
        let w = g.non_mrd_witness();
        assert!(g.code.contains(&w));
        assert_eq!(w.rank(), 6);
        assert_eq!(GabidulinPlotkin::new(23, 8, 6, 3, 4).err(), Some(PlotkinError::ParameterMismatch { m: 8, expected: 9 }));
        let degenerate = GabidulinPlotkin::new(5, 3, 3, 3, 4).unwrap();
        assert_eq!(degenerate.radius(), 0);
    }

    #[test]
    fn clopper_pearson_zero_successes() {
        for n in [10u64, 1000, 100_000] {
            let (lo, hi) = clopper_pearson(0, n, 0.05);
            assert_eq!(lo, 0.0);
            let exact = 1.0 - 0.025f64.powf(1.0 / n as f64);
            assert!((hi - exact).abs() < 1e-9 * exact.max(1e-12), "n={n}: {hi} vs {exact}");
        }
        let (lo, hi) = clopper_pearson(5, 5, 0.05);
        assert!((lo - 0.025f64.powf(0.2)).abs() < 1e-9);
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn zero_rank_never_drops() {
        let s = fold_probability_experiment(5, 3, 0, 4, 50, 1).unwrap();
        assert_eq!(s.drops, 0);
        let s = fold_probability_experiment(5, 3, 0, 2, 50, 1).unwrap();
        assert!(!s.square);
        assert_eq!(s.drops, 0);
    }

    #[test]
    fn experiment_is_deterministic() {
        let a = fold_probability_experiment(3, 2, 2, 1, 300, 42).unwrap();
        let b = fold_probability_experiment(3, 2, 2, 1, 300, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.drops > 0);
        assert!(a.ci95.0 <= a.rate() && a.rate() <= a.ci95.1);
    }
}
