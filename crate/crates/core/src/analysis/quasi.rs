//! Quasicomposition identity and the defect δ.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{format_tuple, random_point, AnalysisError, SweepOptions};
use crate::algebra::{multilinearize, Algebra};
use crate::cubic::{coordinate_polys, metric_polys, product_polys};
use crate::linalg::{basis_vector, vec_scale, vec_sub, Vector};
use crate::polynomial::Polynomial;
use crate::report::Report;
use crate::scalar::Scalar;

/// Largest dimension a quasicomposition algebra can have.
pub const MAX_QUASICOMPOSITION_DIM: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub is_quasicomposition: bool,
    pub defect: Option<usize>,
    pub witness: Option<String>,
    /// `dim ker L(xᶿ)L(x)` at the sampled points.
    pub kernel_dim_samples: Vec<usize>,
}

impl DefectReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("quasicomposition", self.is_quasicomposition);
        r.delta = self.defect;
        r.witness = self.witness.clone();
        if !self.kernel_dim_samples.is_empty() {
            r.note(format!("dim ker L(xᶿ)L(x) at sample points: {:?}", self.kernel_dim_samples));
        }
        r
    }
}

/// `x⋄(xᶿ⋄(x⋄y)) − h(x,x)(x⋄y)` at a point.
fn defect_map(alg: &Algebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    let xy = alg.mul(x, y);
    let inner = alg.mul(&alg.conj(x), &xy);
    vec_sub(&alg.mul(x, &inner), &vec_scale(&xy, &alg.h(x, x)))
}

/// Verifies `x⋄(xᶿ⋄(x⋄y)) = h(x,x)(x⋄y)` exactly and computes δ from
/// `trace L(x)L(xᶿ) = (dim − δ)h(x,x)`, cross-checked against
/// `dim ker L(xᶿ)L(x)` at three random points.
///
/// For each `y = e_l` the left side is expanded as a cubic polynomial
/// vector in `x`; its coefficients are the polarized values on basis
/// triples `i ≤ j ≤ k` up to multinomial weights.
pub fn quasicomposition_check(alg: &Algebra, opts: SweepOptions) -> Result<DefectReport, AnalysisError> {
    let m = alg.check_metrized();
    if !m.pass {
        return Err(AnalysisError::NotMetrized(m.witness.unwrap_or_default()));
    }
    let n = alg.dim();
    let x = coordinate_polys(n);
    let xs: Vec<Polynomial> = (0..n)
        .map(|r| {
            let row: Vec<Scalar> = (0..n).map(|c| alg.involution()[(r, c)].clone()).collect();
            Polynomial::linear(&row)
        })
        .collect();
    let norm2 = metric_polys(alg, &x, &x);
    for l in 0..n {
        let el: Vec<Polynomial> =
            (0..n).map(|k| if k == l { Polynomial::constant(n, Scalar::ONE) } else { Polynomial::zero(n) }).collect();
        let v1 = product_polys(alg, &x, &el);
        let v2 = product_polys(alg, &xs, &v1);
        let v3 = product_polys(alg, &x, &v2);
        for (k, (a, b)) in v3.iter().zip(&v1).enumerate() {
            let mut res = a.clone();
            res.add_product(&norm2, b, &-Scalar::ONE);
            if let Some((mono, _)) = res.leading_term() {
                let args: Vec<Vector> = mono.iter().map(|&v| basis_vector(n, v as usize)).collect();
                let y = basis_vector(n, l);
                let val = multilinearize(|p| defect_map(alg, p, &y), &args);
                return Ok(DefectReport {
                    is_quasicomposition: false,
                    defect: None,
                    witness: Some(format!(
                        "x = {}, y = e{}: polarized defect has component {} equal to {}",
                        format_tuple(mono),
                        l + 1,
                        k + 1,
                        val[k]
                    )),
                    kernel_dim_samples: Vec::new(),
                });
            }
        }
    }
    if n > MAX_QUASICOMPOSITION_DIM {
        return Err(AnalysisError::InternalInconsistency(format!(
            "identity holds in dimension {n} > {MAX_QUASICOMPOSITION_DIM}"
        )));
    }
    let tw = alg.trace_form_twisted();
    let g = alg.metric();
    let (pi, pj) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !g[(i, j)].is_zero())
        .expect("nondegenerate metric");
    let factor = &tw[(pi, pj)] / &g[(pi, pj)];
    if g.scale(&factor) != tw {
        return Err(AnalysisError::InternalInconsistency(
            "trace L(x)L(xᶿ) is not a multiple of h(x,x) on a quasicomposition algebra".into(),
        ));
    }
    let delta = factor
        .as_rational()
        .filter(|r| r.is_integer())
        .map(|r| Scalar::from_int(n as i64) - Scalar::from_rational(r.clone()))
        .and_then(|d| d.as_rational().and_then(|r| r.numer().try_into().ok()))
        .filter(|&d: &i64| (0..n as i64).contains(&d))
        .ok_or_else(|| {
            AnalysisError::InternalInconsistency(format!("trace factor {factor} gives no admissible defect"))
        })? as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut samples = Vec::with_capacity(3);
    while samples.len() < 3 {
        let p = random_point(&mut rng, n);
        if alg.h(&p, &p).is_zero() {
            continue;
        }
        let k = alg.left(&alg.conj(&p)).mul(&alg.left(&p));
        samples.push(n - k.rank());
    }
    if samples.iter().any(|&s| s != delta) {
        return Err(AnalysisError::InternalInconsistency(format!(
            "trace gives δ = {delta} but kernel dimensions are {samples:?}"
        )));
    }
    Ok(DefectReport { is_quasicomposition: true, defect: Some(delta), witness: None, kernel_dim_samples: samples })
}
