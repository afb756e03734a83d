use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::{residuals, CMatrix, ResidualReport, UnitaryAssignment};
use crate::error::{Error, Result};
use crate::presentation::FPGroup;

/// Restarts run in fixed-size batches so the chosen result never depends on
/// the thread count.
const BATCH: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveOptions {
    pub seed: u64,
    pub restarts: usize,
    pub tol: f64,
    pub descent_iters: usize,
    pub polish_iters: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 0, restarts: 20, tol: 1e-8, descent_iters: 400, polish_iters: 100 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOutcome {
    #[serde(skip)]
    pub assignment: UnitaryAssignment,
    pub report: ResidualReport,
    pub seed: u64,
    /// Index of the restart that produced the assignment.
    pub restart: usize,
    pub restarts_run: usize,
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// `diag(R)` folded back into `Q`.
pub fn haar_unitary<R: Rng>(k: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(k, k, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..k {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..k {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Nearest unitary in Frobenius norm.
pub(crate) fn polar(m: &CMatrix) -> CMatrix {
    let svd = m.clone().svd(true, true);
    svd.u.unwrap() * svd.v_t.unwrap()
}

fn skew(a: &CMatrix) -> CMatrix {
    (a - a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Letter matrices of a relator with prefix and suffix products, so that the
/// relator equals `prefix[j] * L_j * suffix[j]`.
struct Factored {
    letters: Vec<(usize, bool)>,
    prefix: Vec<CMatrix>,
    suffix: Vec<CMatrix>,
    value: CMatrix,
}

fn factor(r: &crate::word::Word<usize>, mats: &[CMatrix]) -> Factored {
    let k = mats[0].nrows();
    let letters: Vec<(usize, bool)> = r.iter().map(|l| (l.atom, l.inverse)).collect();
    let m: Vec<CMatrix> = letters
        .iter()
        .map(|&(g, inv)| if inv { mats[g].adjoint() } else { mats[g].clone() })
        .collect();
    let mut prefix = Vec::with_capacity(m.len());
    let mut acc = CMatrix::identity(k, k);
    for x in &m {
        prefix.push(acc.clone());
        acc *= x;
    }
    let value = acc;
    let mut suffix = vec![CMatrix::identity(k, k); m.len()];
    let mut acc = CMatrix::identity(k, k);
    for j in (0..m.len()).rev() {
        suffix[j] = acc.clone();
        acc = &m[j] * acc;
    }
    Factored { letters, prefix, suffix, value }
}

fn objective(p: &FPGroup, mats: &[CMatrix]) -> f64 {
    let k = mats[0].nrows();
    let id = CMatrix::identity(k, k);
    p.relators
        .iter()
        .map(|r| (super::eval_word(r, mats).expect("validated") - &id).norm_squared())
        .sum()
}

/// Euclidean gradient of the objective, one matrix per generator.
fn gradient(p: &FPGroup, mats: &[CMatrix]) -> Vec<CMatrix> {
    let k = mats[0].nrows();
    let id = CMatrix::identity(k, k);
    let two = Complex64::new(2.0, 0.0);
    let mut g = vec![CMatrix::zeros(k, k); mats.len()];
    for r in &p.relators {
        let f = factor(r, mats);
        let e = &f.value - &id;
        for (j, &(a, inv)) in f.letters.iter().enumerate() {
            let (pre, suf) = (&f.prefix[j], &f.suffix[j]);
            g[a] += if inv {
                suf * e.adjoint() * pre * two
            } else {
                pre.adjoint() * &e * suf.adjoint() * two
            };
        }
    }
    g
}

fn descend(p: &FPGroup, mats: &mut [CMatrix], iters: usize, stop: f64) {
    let mut f = objective(p, mats);
    let mut t = 0.5;
    for _ in 0..iters {
        if f <= stop {
            return;
        }
        let xi: Vec<CMatrix> = gradient(p, mats)
            .iter()
            .zip(mats.iter())
            .map(|(g, u)| u * skew(&(u.adjoint() * g)))
            .collect();
        let sq: f64 = xi.iter().map(|x| x.norm_squared()).sum();
        if sq < 1e-30 {
            return;
        }
        t = (t * 2.0_f64).min(4.0);
        loop {
            let trial: Vec<CMatrix> = mats
                .iter()
                .zip(&xi)
                .map(|(u, x)| polar(&(u - x * Complex64::new(t, 0.0))))
                .collect();
            let ft = objective(p, &trial);
            if ft <= f - 1e-4 * t * sq {
                mats.clone_from_slice(&trial);
                f = ft;
                break;
            }
            t *= 0.5;
            if t < 1e-12 {
                return;
            }
        }
    }
}

/// Hermitian basis used to parametrize `U exp(iH)`.
fn hermitian_basis(k: usize) -> Vec<CMatrix> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut out = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in a..k {
            let mut m = CMatrix::zeros(k, k);
            if a == b {
                m[(a, a)] = one;
                out.push(m);
            } else {
                m[(a, b)] = one;
                m[(b, a)] = one;
                out.push(m.clone());
                m[(a, b)] = i;
                m[(b, a)] = -i;
                out.push(m);
            }
        }
    }
    out
}

fn push_entries(out: &mut Vec<f64>, m: &CMatrix) {
    for x in m.iter() {
        out.push(x.re);
        out.push(x.im);
    }
}

/// Levenberg-Marquardt in the coordinates `U_g <- U_g (I + iH_g)`, each step
/// retracted back onto the unitary group.
fn polish(p: &FPGroup, mats: &mut [CMatrix], iters: usize, tol: f64) {
    let k = mats[0].nrows();
    let id = CMatrix::identity(k, k);
    let basis = hermitian_basis(k);
    let nb = basis.len();
    let i = Complex64::new(0.0, 1.0);
    let mut lambda = 1e-3;
    let mut f = objective(p, mats);
    for _ in 0..iters {
        let worst = residuals(p, mats, tol).map(|r| r.max_deviation).unwrap_or(f64::INFINITY);
        if worst <= tol * 1e-3 {
            return;
        }
        let mut r = Vec::new();
        let mut cols = vec![Vec::new(); mats.len() * nb];
        for rel in &p.relators {
            let fac = factor(rel, mats);
            push_entries(&mut r, &(&fac.value - &id));
            let mut d = vec![CMatrix::zeros(k, k); mats.len() * nb];
            for (j, &(a, inv)) in fac.letters.iter().enumerate() {
                for (b, h) in basis.iter().enumerate() {
                    let dl = if inv { -(h * mats[a].adjoint()) * i } else { &mats[a] * h * i };
                    d[a * nb + b] += &fac.prefix[j] * dl * &fac.suffix[j];
                }
            }
            for (c, m) in d.iter().enumerate() {
                push_entries(&mut cols[c], m);
            }
        }
        let jac = DMatrix::from_fn(r.len(), cols.len(), |row, c| cols[c][row]);
        let rv = nalgebra::DVector::from_vec(r);
        let jtj = jac.transpose() * &jac;
        let jtr = jac.transpose() * &rv;
        let mut accepted = false;
        for _ in 0..12 {
            let mut a = jtj.clone();
            for d in 0..a.nrows() {
                a[(d, d)] += lambda * (1.0 + jtj[(d, d)]);
            }
            let Some(delta) = a.lu().solve(&(-&jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let trial: Vec<CMatrix> = mats
                .iter()
                .enumerate()
                .map(|(g, u)| {
                    let mut h = CMatrix::zeros(k, k);
                    for (b, e) in basis.iter().enumerate() {
                        h += e * Complex64::new(delta[g * nb + b], 0.0);
                    }
                    polar(&(u * (&id + h * i)))
                })
                .collect();
            let ft = objective(p, &trial);
            if ft < f {
                mats.clone_from_slice(&trial);
                f = ft;
                lambda = (lambda / 3.0).max(1e-12);
                accepted = true;
                break;
            }
            lambda *= 4.0;
        }
        if !accepted {
            return;
        }
    }
}

fn run(p: &FPGroup, k: usize, opts: &SolveOptions, restart: usize) -> Vec<CMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(restart as u64);
    let mut mats: Vec<CMatrix> = (0..p.generators.len()).map(|_| haar_unitary(k, &mut rng)).collect();
    if !p.relators.is_empty() {
        descend(p, &mut mats, opts.descent_iters, 1e-10);
        polish(p, &mut mats, opts.polish_iters, opts.tol);
    }
    mats
}

/// Searches for a point of the representation variety. Failure only means
/// that no restart converged, not that no representation exists.
pub fn solve_representation(p: &FPGroup, k: usize, opts: &SolveOptions) -> Result<SolveOutcome> {
    if k == 0 {
        return Err(Error::Input("matrix dimension must be at least 1".into()));
    }
    p.validate()?;
    let restarts = opts.restarts.max(1);
    let mut best: Option<(f64, usize, Vec<CMatrix>)> = None;
    let mut ran = 0;
    if p.generators.is_empty() {
        best = Some((0.0, 0, Vec::new()));
        ran = 1;
    }
    for start in (0..restarts).step_by(BATCH) {
        if best.as_ref().is_some_and(|b| b.0 <= opts.tol) {
            break;
        }
        let end = (start + BATCH).min(restarts);
        let batch: Vec<(f64, usize, Vec<CMatrix>)> = (start..end)
            .into_par_iter()
            .map(|r| {
                let m = run(p, k, opts, r);
                let dev = residuals(p, &m, opts.tol).map(|x| x.max_deviation).unwrap_or(f64::INFINITY);
                (dev, r, m)
            })
            .collect();
        ran = end;
        for cand in batch {
            log::debug!("restart {} residual {:.3e}", cand.1, cand.0);
            if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                best = Some(cand);
            }
        }
    }
    let (_, restart, mats) = best.expect("at least one restart");
    let assignment = UnitaryAssignment::new(p.generators.clone(), mats)?;
    let report = super::verify_representation(p, &assignment, opts.tol)?;
    if !report.pass {
        return Err(Error::Representation(format!(
            "no representation found at this tolerance (best residual {:.3e} after {ran} restarts)",
            report.max_deviation
        )));
    }
    Ok(SolveOutcome { assignment, report, seed: opts.seed, restart, restarts_run: ran })
}
