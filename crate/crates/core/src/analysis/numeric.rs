//! Floating-point procedures: idempotent search, Peirce decomposition,
//! Jordan mutation and a nilpotent search.
//!
//! Everything runs in an orthonormal frame for `h`: with the Cholesky
//! factor `G = LLᵀ`, coordinates `y = Lᵀx` make `h` the dot product and
//! `L(c)` a symmetric matrix. Results handed back to callers are in the
//! algebra's own coordinates.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::AnalysisError;
use crate::algebra::Algebra;
use crate::linalg::{basis_vector, Vector};

/// Tolerance for accepting an idempotent.
pub const IDEMPOTENT_RESIDUAL: f64 = 1e-10;
/// Eigenvalue clustering tolerance.
pub const CLUSTER_TOL: f64 = 1e-6;
const DEDUP_TOL: f64 = 1e-6;

/// Per-item random stream derived from `(seed, index)`, so parallel and
/// serial runs agree.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Float image of a Euclidean algebra in an `h`-orthonormal frame.
#[derive(Clone, Debug)]
pub struct FloatAlgebra {
    n: usize,
    /// `c[(i * n + j) * n + k]`: component `k` of `eᵢ ⋄ eⱼ`.
    c: Vec<f64>,
    /// `x = to_original · y`.
    to_original: DMatrix<f64>,
    /// `y = to_frame · x`.
    to_frame: DMatrix<f64>,
}

impl FloatAlgebra {
    pub fn new(alg: &Algebra) -> Result<Self, AnalysisError> {
        let n = alg.dim();
        let g = DMatrix::from_row_slice(n, n, &alg.metric().to_f64());
        let chol = g.cholesky().ok_or(AnalysisError::NotEuclidean)?;
        let l = chol.l();
        let to_frame = l.transpose();
        let to_original = to_frame.clone().try_inverse().ok_or(AnalysisError::NotEuclidean)?;
        // Original-coordinate product of basis vectors, as floats.
        let mut orig = vec![0.0; n * n * n];
        for (i, j, k, v) in alg.structure_entries() {
            orig[(i * n + j) * n + k] = v.to_f64();
        }
        let mul_orig = |x: &DVector<f64>, y: &DVector<f64>| {
            let mut out = DVector::zeros(n);
            for i in 0..n {
                if x[i] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let s = x[i] * y[j];
                    if s == 0.0 {
                        continue;
                    }
                    for k in 0..n {
                        out[k] += s * orig[(i * n + j) * n + k];
                    }
                }
            }
            out
        };
        let mut c = vec![0.0; n * n * n];
        for i in 0..n {
            let xi = to_original.column(i).into_owned();
            for j in 0..n {
                let xj = to_original.column(j).into_owned();
                let p = &to_frame * mul_orig(&xi, &xj);
                for k in 0..n {
                    c[(i * n + j) * n + k] = p[k];
                }
            }
        }
        Ok(FloatAlgebra { n, c, to_original, to_frame })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let s = x[i] * y[j];
                if s == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] += s * self.c[base + k];
                }
            }
        }
        out
    }

    /// `L(x)` in the orthonormal frame.
    pub fn left(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let base = (i * n + j) * n;
                for k in 0..n {
                    m[(k, j)] += x[i] * self.c[base + k];
                }
            }
        }
        m
    }

    /// `u(y) = ⅙⟨y⋄y, y⟩`.
    pub fn cubic(&self, y: &DVector<f64>) -> f64 {
        self.mul(y, y).dot(y) / 6.0
    }

    pub fn to_original(&self, y: &DVector<f64>) -> Vec<f64> {
        (&self.to_original * y).iter().copied().collect()
    }

    pub fn to_frame(&self, x: &[f64]) -> DVector<f64> {
        &self.to_frame * DVector::from_column_slice(x)
    }

    fn scaled(&self, s: f64) -> FloatAlgebra {
        FloatAlgebra { c: self.c.iter().map(|v| v * s).collect(), ..self.clone() }
    }
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
        let norm = v.norm();
        if norm > 1e-3 {
            return v / norm;
        }
    }
}

fn pinv_step(j: &DMatrix<f64>, f: &DVector<f64>) -> Option<DVector<f64>> {
    let svd = j.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let tol = (smax * 1e-11).max(1e-300);
    svd.solve(f, tol).ok()
}

/// An idempotent found numerically, in the algebra's coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Idempotent {
    pub c: Vec<f64>,
    pub residual: f64,
}

/// Maximizes `u` on the unit sphere from a random start.
fn sphere_ascent(fa: &FloatAlgebra, rng: &mut ChaCha8Rng) -> Option<DVector<f64>> {
    let n = fa.dim();
    let mut y = random_unit(rng, n);
    if fa.cubic(&y) < 0.0 {
        y = -y;
    }
    let mut step = 1.0;
    for _ in 0..3000 {
        let g = fa.mul(&y, &y) * 0.5;
        let tangential = &g - &y * g.dot(&y);
        if tangential.norm() < 1e-13 {
            break;
        }
        let u0 = fa.cubic(&y);
        let mut accepted = false;
        while step > 1e-14 {
            let cand = &y + &tangential * step;
            let cand = &cand / cand.norm();
            if fa.cubic(&cand) > u0 {
                y = cand;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let u = fa.cubic(&y);
    (u > 1e-12).then_some(y)
}

/// Newton iteration on `F(c) = c⋄c − c` with a pseudo-inverse Jacobian.
fn newton_idempotent(fa: &FloatAlgebra, mut c: DVector<f64>) -> (DVector<f64>, f64) {
    let n = fa.dim();
    let id = DMatrix::<f64>::identity(n, n);
    let mut res = (fa.mul(&c, &c) - &c).norm();
    for _ in 0..60 {
        if res <= 1e-14 * c.norm().max(1.0) {
            break;
        }
        let f = fa.mul(&c, &c) - &c;
        let j = fa.left(&c) * 2.0 - &id;
        let Some(delta) = pinv_step(&j, &f) else { break };
        let next = &c - delta;
        let next_res = (fa.mul(&next, &next) - &next).norm();
        if next_res >= res && res <= IDEMPOTENT_RESIDUAL {
            break;
        }
        c = next;
        res = next_res;
    }
    (c, res)
}

/// Idempotents in a Euclidean algebra by sphere ascent of the cubic form
/// followed by Newton refinement; deduplicated, possibly empty.
pub fn find_idempotent(alg: &Algebra, restarts: usize, seed: u64) -> Result<Vec<Idempotent>, AnalysisError> {
    let fa = FloatAlgebra::new(alg)?;
    Ok(find_idempotent_float(&fa, restarts, seed))
}

pub fn find_idempotent_float(fa: &FloatAlgebra, restarts: usize, seed: u64) -> Vec<Idempotent> {
    let found: Vec<(DVector<f64>, f64)> = (0..restarts)
        .into_par_iter()
        .filter_map(|r| {
            let mut rng = stream_rng(seed, r as u64);
            let y = sphere_ascent(fa, &mut rng)?;
            // At a critical point y⋄y = 6u(y)·y, so y/(6u) is idempotent.
            let c = &y / (6.0 * fa.cubic(&y));
            let (c, res) = newton_idempotent(fa, c);
            (res <= IDEMPOTENT_RESIDUAL && c.norm() > 1e-9).then_some((c, res))
        })
        .collect();
    let mut unique: Vec<(DVector<f64>, f64)> = Vec::new();
    for (c, res) in found {
        if !unique.iter().any(|(d, _)| (d - &c).norm() <= DEDUP_TOL) {
            unique.push((c, res));
        }
    }
    unique.into_iter().map(|(c, residual)| Idempotent { c: fa.to_original(&c), residual }).collect()
}

/// How the clustered spectrum of `L(c)` compares with `{1, −1, −½, ½}`.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumMatch {
    Exact,
    /// Matches after dividing every eigenvalue by the factor.
    Scaled(f64),
    Mismatch,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeirceData {
    pub c: Vec<f64>,
    pub residual: f64,
    /// Clustered eigenvalues with multiplicities, ascending.
    pub eigenvalues: Vec<(f64, usize)>,
    pub spectrum: SpectrumMatch,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub d: Option<usize>,
    /// `mult(½) = 2n₁ + n₂ − 2` and `dim = 3n₁ + 2n₂ − 1`.
    pub relations_hold: bool,
    pub idempotent_norm: f64,
}

impl PeirceData {
    /// Multiplicities of `1, −1, −½, ½` when the spectrum matched.
    pub fn multiplicities(&self) -> Option<[usize; 4]> {
        let scale = match self.spectrum {
            SpectrumMatch::Exact => 1.0,
            SpectrumMatch::Scaled(s) => s,
            SpectrumMatch::Mismatch => return None,
        };
        let mut out = [0; 4];
        for (v, m) in &self.eigenvalues {
            let idx = nearest_target(v / scale)?;
            out[idx] += m;
        }
        Some(out)
    }
}

const TARGETS: [f64; 4] = [1.0, -1.0, -0.5, 0.5];

fn nearest_target(v: f64) -> Option<usize> {
    TARGETS.iter().position(|t| (v - t).abs() <= CLUSTER_TOL)
}

fn cluster(values: &[f64]) -> Vec<(f64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((_, m, last)) if (v - *last).abs() <= CLUSTER_TOL => {
                *m += 1;
                *last = v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    out.into_iter().map(|(first, m, last)| ((first + last) / 2.0, m)).collect()
}

fn symmetric_left(fa: &FloatAlgebra, y: &DVector<f64>) -> DMatrix<f64> {
    let l = fa.left(y);
    (&l + l.transpose()) * 0.5
}

/// Peirce data of an idempotent `c` (given in the algebra's coordinates).
pub fn peirce(alg: &Algebra, c: &[f64]) -> Result<PeirceData, AnalysisError> {
    let fa = FloatAlgebra::new(alg)?;
    peirce_float(&fa, c)
}

pub fn peirce_float(fa: &FloatAlgebra, c: &[f64]) -> Result<PeirceData, AnalysisError> {
    let n = fa.dim();
    if c.len() != n {
        return Err(AnalysisError::Precondition(format!("idempotent has length {}, expected {n}", c.len())));
    }
    let y = fa.to_frame(c);
    let residual = (fa.mul(&y, &y) - &y).norm();
    if residual > 1e-8 {
        return Err(AnalysisError::Precondition(format!("not an idempotent: residual {residual:.3e}")));
    }
    let eig = SymmetricEigen::new(symmetric_left(fa, &y));
    let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let eigenvalues = cluster(&values);
    let matches = |s: f64| eigenvalues.iter().all(|(v, _)| nearest_target(v / s).is_some());
    let spectrum = if matches(1.0) {
        SpectrumMatch::Exact
    } else {
        let smax = eigenvalues.iter().map(|(v, _)| v.abs()).fold(0.0, f64::max);
        if smax > 0.0 && matches(smax) {
            SpectrumMatch::Scaled(smax)
        } else {
            SpectrumMatch::Mismatch
        }
    };
    let mut data = PeirceData {
        c: c.to_vec(),
        residual,
        eigenvalues,
        spectrum,
        n1: None,
        n2: None,
        d: None,
        relations_hold: false,
        idempotent_norm: y.norm_squared(),
    };
    if let Some([_, m_neg1, m_neg_half, m_half]) = data.multiplicities() {
        let (n1, n2) = (m_neg1, m_neg_half);
        data.n1 = Some(n1);
        data.n2 = Some(n2);
        data.relations_hold = m_half + 2 == 2 * n1 + n2 && 3 * n1 + 2 * n2 == n + 1;
        data.d = (n2 >= 2 && (n2 - 2) % 3 == 0).then(|| (n2 - 2) / 3);
    }
    Ok(data)
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanReport {
    pub dim_b: usize,
    pub closure_error: f64,
    pub closes: bool,
    pub jordan_defect: f64,
    pub jordan_holds: bool,
    pub trace_form_rank: usize,
    /// Product scale used so that the idempotent has `h(c,c) = ¾`.
    pub rescale: f64,
}

impl JordanReport {
    pub fn pass(&self) -> bool {
        self.closes && self.jordan_holds
    }
}

/// Mutation of `B_c = 𝔸_c(1) ⊕ 𝔸_c(−½)` into a Jordan algebra.
///
/// Works with the product rescaled so that `h(c,c) = ¾`; this does not move
/// the eigenspaces of `L(c)`.
pub fn jordan_mutation(alg: &Algebra, c: &[f64], seed: u64) -> Result<JordanReport, AnalysisError> {
    let fa = FloatAlgebra::new(alg)?;
    let n = fa.dim();
    let y0 = fa.to_frame(c);
    let norm2 = y0.norm_squared();
    if norm2 <= 0.0 {
        return Err(AnalysisError::Precondition("zero idempotent".into()));
    }
    let mu = (4.0 * norm2 / 3.0).sqrt();
    let fa = fa.scaled(mu);
    let c = &y0 / mu;
    let eig = SymmetricEigen::new(symmetric_left(&fa, &c));
    let cols: Vec<DVector<f64>> = (0..n)
        .filter(|&i| {
            let v = eig.eigenvalues[i];
            (v - 1.0).abs() <= CLUSTER_TOL || (v + 0.5).abs() <= CLUSTER_TOL
        })
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    let m = cols.len();
    if m == 0 {
        return Err(AnalysisError::Precondition("L(c) has no eigenvalue 1; not an idempotent".into()));
    }
    let q = DMatrix::from_columns(&cols);
    let proj = &q * q.transpose();
    let mut closure_error: f64 = 0.0;
    for a in 0..m {
        for b in a..m {
            let p = fa.mul(&cols[a], &cols[b]);
            closure_error = closure_error.max((&p - &proj * &p).norm());
        }
    }
    let closes = closure_error <= 1e-8;
    // Mutated product in B-coordinates.
    let star = |x: &DVector<f64>, z: &DVector<f64>| {
        let xz = fa.mul(x, z);
        &xz * 0.5 + z * x.dot(&c) + x * z.dot(&c) - &c * (2.0 * xz.dot(&c))
    };
    let mut table = vec![DVector::<f64>::zeros(m); m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = q.transpose() * star(&cols[a], &cols[b]);
        }
    }
    let star_b = |x: &DVector<f64>, z: &DVector<f64>| {
        let mut out = DVector::zeros(m);
        for a in 0..m {
            for b in 0..m {
                let s = x[a] * z[b];
                if s != 0.0 {
                    out += &table[a * m + b] * s;
                }
            }
        }
        out
    };
    let left_b = |x: &DVector<f64>| {
        let mut l = DMatrix::zeros(m, m);
        for b in 0..m {
            let eb = DVector::from_fn(m, |i, _| if i == b { 1.0 } else { 0.0 });
            l.set_column(b, &star_b(x, &eb));
        }
        l
    };
    let mut rng = stream_rng(seed, 0);
    let mut jordan_defect: f64 = 0.0;
    for _ in 0..20 {
        let x = random_unit(&mut rng, m);
        let x2 = star_b(&x, &x);
        let (lx, lx2) = (left_b(&x), left_b(&x2));
        let comm = &lx * &lx2 - &lx2 * &lx;
        jordan_defect = jordan_defect.max(comm.norm());
    }
    let mut tau = DMatrix::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            let ea = DVector::from_fn(m, |i, _| if i == a { 1.0 } else { 0.0 });
            let eb = DVector::from_fn(m, |i, _| if i == b { 1.0 } else { 0.0 });
            tau[(a, b)] = left_b(&star_b(&ea, &eb)).trace();
        }
    }
    let sv = tau.singular_values();
    let smax = sv.max();
    let trace_form_rank = sv.iter().filter(|s| **s > smax * 1e-8).count();
    Ok(JordanReport {
        dim_b: m,
        closure_error,
        closes,
        jordan_defect,
        jordan_holds: jordan_defect <= 1e-7,
        trace_form_rank,
        rescale: mu,
    })
}

/// Unit vectors `x` (algebra coordinates normalized so `h(x,x) = 1`) with
/// `|x⋄x| ≤ 1e−8`, found by minimizing `|x⋄x|²` on the sphere.
pub fn nilpotent_search(alg: &Algebra, restarts: usize, seed: u64) -> Result<Vec<Vec<f64>>, AnalysisError> {
    let fa = FloatAlgebra::new(alg)?;
    let n = fa.dim();
    let found: Vec<DVector<f64>> = (0..restarts)
        .into_par_iter()
        .filter_map(|r| {
            let mut rng = stream_rng(seed, r as u64);
            let mut y = random_unit(&mut rng, n);
            let f = |y: &DVector<f64>| fa.mul(y, y).norm_squared();
            let mut step = 1.0;
            let mut checkpoint = f64::INFINITY;
            for it in 0..2000 {
                let sq = fa.mul(&y, &y);
                let g = fa.left(&y).transpose() * &sq * 4.0;
                let tangential = &g - &y * g.dot(&y);
                if tangential.norm() < 1e-14 {
                    break;
                }
                let f0 = sq.norm_squared();
                // Stalled at a positive minimum: no nilpotent direction here.
                if it % 100 == 0 {
                    if f0 > 1e-6 && checkpoint - f0 <= 1e-6 * f0 {
                        break;
                    }
                    checkpoint = f0;
                }
                let mut accepted = false;
                while step > 1e-16 {
                    let cand = &y - &tangential * step;
                    let cand = &cand / cand.norm();
                    if f(&cand) < f0 {
                        y = cand;
                        accepted = true;
                        step *= 2.0;
                        break;
                    }
                    step *= 0.5;
                }
                if !accepted || f0 < 1e-20 {
                    break;
                }
            }
            // Gauss–Newton polish on (y⋄y, |y|² − 1) = 0.
            for _ in 0..100 {
                let sq = fa.mul(&y, &y);
                if sq.norm() <= 1e-14 {
                    break;
                }
                let mut jac = DMatrix::zeros(n + 1, n);
                jac.view_mut((0, 0), (n, n)).copy_from(&(fa.left(&y) * 2.0));
                jac.set_row(n, &(y.transpose() * 2.0));
                let mut res = DVector::zeros(n + 1);
                res.rows_mut(0, n).copy_from(&sq);
                res[n] = y.norm_squared() - 1.0;
                let Some(delta) = pinv_step(&jac, &res) else { break };
                let next = &y - delta;
                if fa.mul(&next, &next).norm() >= sq.norm() {
                    break;
                }
                y = next;
            }
            y /= y.norm();
            (fa.mul(&y, &y).norm() <= 1e-8).then_some(y)
        })
        .collect();
    let mut unique: Vec<DVector<f64>> = Vec::new();
    for y in found {
        if !unique.iter().any(|u| (u - &y).norm() <= DEDUP_TOL || (u + &y).norm() <= DEDUP_TOL) {
            unique.push(y);
        }
    }
    Ok(unique.iter().map(|y| fa.to_original(y)).collect())
}

/// Exact vector as floats.
pub fn to_f64_vec(v: &Vector) -> Vec<f64> {
    v.iter().map(|s| s.to_f64()).collect()
}

/// `h(x, y)` for float vectors in the algebra's coordinates.
pub fn h_f64(alg: &Algebra, x: &[f64], y: &[f64]) -> f64 {
    let n = alg.dim();
    let g = alg.metric();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let gij = &g[(i, j)];
            if !gij.is_zero() {
                acc += x[i] * gij.to_f64() * y[j];
            }
        }
    }
    acc
}

/// The basis vector `eᵢ` as floats, handy for tests.
pub fn basis_f64(n: usize, i: usize) -> Vec<f64> {
    to_f64_vec(&basis_vector(n, i))
}
