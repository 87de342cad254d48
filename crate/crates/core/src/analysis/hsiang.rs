//! Radial and nonradial Hsiang identities, degeneracy and θ-normalization.
//!
//! With `x² = x⋄x`, `x³ = x²⋄x` and `g(x) = h(x, x²)`, write
//! `P(x) = h(x², x³) − h(x², x²)·trace L(x)`. The algebra is a radial Hsiang
//! algebra when `P = θ·h(x,x)·g` and a nonradial one when `P = b(x,x)·g`
//! for a symmetric bilinear `b`.
//!
//! The exhaustive route expands `P` exactly as a polynomial in the
//! coordinates. A quintic vanishes identically exactly when its full
//! polarization vanishes on every ordered basis 5-tuple, and the
//! coefficient of `xᵢxⱼxₖxₗxₘ` is that polarized value times a multinomial
//! weight, so the expansion is the same certificate computed by sparse
//! products instead of 31 evaluations per tuple.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    format_tuple, random_point, require_commutative_metrized, require_euclidean, AnalysisError, SweepOptions,
    EXHAUSTIVE_DIM_LIMIT, RANDOM_POINTS,
};
use crate::algebra::Algebra;
use crate::cubic::{coordinate_polys, metric_polys, product_polys};
use crate::linalg::{Matrix, Vector};
use crate::polynomial::Polynomial;
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HsiangMethod {
    Exhaustive,
    Randomized { points: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsiangReport {
    /// θ with `P = θ·h(x,x)·g`, if the radial identity holds.
    pub radial: Option<Scalar>,
    /// Gram matrix of `b` with `P = b(x,x)·g`, if computed and consistent.
    pub nonradial_b: Option<Matrix>,
    pub exact: bool,
    /// Radial with `trace L ≢ 0`; then the cubic is the cube of a linear form.
    pub degenerate: bool,
    pub witness: Option<String>,
    pub method: HsiangMethod,
    pub notes: Vec<String>,
}

impl HsiangReport {
    pub fn to_report(&self, check: &str) -> Report {
        let pass = if check == "nonradial" { self.nonradial_b.is_some() } else { self.radial.is_some() };
        let mut r = Report::new(check, pass);
        r.theta = self.radial.clone();
        r.witness = self.witness.clone();
        match (&self.nonradial_b, &self.radial) {
            // With both present the radial constant is read off b = θ·h.
            (Some(_), Some(t)) => r.note(format!("b = {t}·h")),
            (Some(b), None) => {
                let rows: Vec<String> = b
                    .to_rows()
                    .iter()
                    .map(|row| format!("[{}]", row.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")))
                    .collect();
                r.note(format!("b = [{}]", rows.join(", ")));
            }
            _ => {}
        }
        r.note(format!("exact = {}", self.exact));
        if self.radial.is_some() {
            r.note(format!("degenerate = {}", self.degenerate));
        }
        if let HsiangMethod::Randomized { points, seed } = self.method {
            r.note(format!("identity checked at {points} random integer points (seed {seed})"));
        }
        r.notes.extend(self.notes.iter().cloned());
        r
    }
}

/// Exact polynomials `(P, h(x,x), g)`.
pub(crate) fn hsiang_polynomials(alg: &Algebra) -> (Polynomial, Polynomial, Polynomial) {
    let n = alg.dim();
    let x = coordinate_polys(n);
    let x2 = product_polys(alg, &x, &x);
    let x3 = product_polys(alg, &x2, &x);
    let mut p = metric_polys(alg, &x2, &x3);
    let traces: Vec<Scalar> = (0..n).map(|i| alg.trace_left_basis(i)).collect();
    if traces.iter().any(|t| !t.is_zero()) {
        let tr = Polynomial::linear(&traces);
        let hx2x2 = metric_polys(alg, &x2, &x2);
        p.add_product(&hx2x2, &tr, &-Scalar::ONE);
    }
    let norm2 = metric_polys(alg, &x, &x);
    let g = metric_polys(alg, &x, &x2);
    (p, norm2, g)
}

fn residual_witness(r: &Polynomial) -> String {
    let (m, c) = r.leading_term().expect("nonzero residual");
    format!("basis 5-tuple {} carries residual coefficient {c}", format_tuple(m))
}

/// Point values `(P(x), h(x,x)·g(x))`.
fn point_values(alg: &Algebra, x: &[Scalar]) -> (Scalar, Scalar) {
    let x2 = alg.mul(x, x);
    let x3 = alg.mul(&x2, x);
    let p = &alg.h(&x2, &x3) - &(&alg.h(&x2, &x2) * &alg.trace_left(x));
    let t = &alg.h(x, x) * &alg.h(x, &x2);
    (p, t)
}

/// Decides the radial Hsiang identity and reports θ.
pub fn radial_hsiang_check(alg: &Algebra, opts: SweepOptions) -> Result<HsiangReport, AnalysisError> {
    require_commutative_metrized(alg)?;
    require_euclidean(alg)?;
    let exact = alg.is_exact();
    let mut report = HsiangReport {
        radial: None,
        nonradial_b: None,
        exact,
        degenerate: false,
        witness: None,
        method: HsiangMethod::Exhaustive,
        notes: Vec::new(),
    };
    if alg.dim() > EXHAUSTIVE_DIM_LIMIT && !opts.exhaustive {
        report.method = HsiangMethod::Randomized { points: RANDOM_POINTS, seed: opts.seed };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let samples: Vec<(Vector, Scalar, Scalar)> = (0..RANDOM_POINTS)
            .map(|_| {
                let x = random_point(&mut rng, alg.dim());
                let (p, t) = point_values(alg, &x);
                (x, p, t)
            })
            .collect();
        let theta = samples.iter().find(|(_, _, t)| !t.is_zero()).map(|(_, p, t)| p / t).unwrap_or(Scalar::ZERO);
        let bad = samples.iter().find(|(_, p, t)| *p != &theta * t);
        match bad {
            None => report.radial = Some(theta),
            Some((x, p, t)) => {
                let xs: Vec<String> = x.iter().map(|s| s.to_string()).collect();
                report.witness = Some(format!(
                    "at x = ({}) the identity needs θ = {} but the probe gave θ = {theta}",
                    xs.join(", "),
                    if t.is_zero() { "∞".to_string() } else { (p / t).to_string() }
                ));
            }
        }
    } else {
        let (p, norm2, g) = hsiang_polynomials(alg);
        let target = &norm2 * &g;
        let theta = match target.leading_term() {
            Some((m, c)) => &p.coefficient(m) / c,
            None => {
                report.notes.push("cubic form vanishes identically; θ is undetermined and reported as 0".into());
                Scalar::ZERO
            }
        };
        let mut residual = p.clone();
        residual.add_assign_scaled(&target, &-&theta);
        if residual.is_zero() {
            report.radial = Some(theta);
        } else {
            report.witness = Some(residual_witness(&residual));
        }
    }
    report.degenerate = report.radial.is_some() && !exact;
    if report.degenerate {
        report.notes.push("degenerate: θ reported as found, the idempotent-length relation is not applied".into());
    }
    Ok(report)
}

/// Decides the nonradial Hsiang identity `P = b(x,x)·g` and returns `b`.
///
/// The unknown quadratic `b(x,x)` is the exact quotient of `P` by `g`, so
/// the linear system for the entries of `b` is solved by one sparse
/// division; a nonzero remainder is an inconsistent equation of that system.
pub fn nonradial_hsiang_check(alg: &Algebra, _opts: SweepOptions) -> Result<HsiangReport, AnalysisError> {
    require_commutative_metrized(alg)?;
    require_euclidean(alg)?;
    let n = alg.dim();
    let (p, _, g) = hsiang_polynomials(alg);
    let mut report = HsiangReport {
        radial: None,
        nonradial_b: None,
        exact: alg.is_exact(),
        degenerate: false,
        witness: None,
        method: HsiangMethod::Exhaustive,
        notes: Vec::new(),
    };
    if g.is_zero() {
        if p.is_zero() {
            report.nonradial_b = Some(Matrix::zeros(n, n));
            report.notes.push("cubic form vanishes identically; any b works, reporting b = 0".into());
        } else {
            report.witness = Some(residual_witness(&p));
        }
        return Ok(report);
    }
    let (q, r) = p.divide(&g);
    if !r.is_zero() {
        report.witness = Some(residual_witness(&r));
        return Ok(report);
    }
    if !q.is_homogeneous(2) {
        return Err(AnalysisError::InternalInconsistency("quotient P/g is not a quadratic form".into()));
    }
    let half = Scalar::frac(1, 2);
    let mut b = Matrix::zeros(n, n);
    for (m, c) in q.terms() {
        let (i, j) = (m[0] as usize, m[1] as usize);
        if i == j {
            b[(i, i)] = c.clone();
        } else {
            b[(i, j)] = c * &half;
            b[(j, i)] = c * &half;
        }
    }
    // Radial when b is proportional to the metric.
    let (mut pi, mut pj) = (0, 0);
    'find: for i in 0..n {
        for j in 0..n {
            if !alg.metric()[(i, j)].is_zero() {
                (pi, pj) = (i, j);
                break 'find;
            }
        }
    }
    let theta = &b[(pi, pj)] / &alg.metric()[(pi, pj)];
    if alg.metric().scale(&theta) == b {
        report.radial = Some(theta);
        report.degenerate = !report.exact;
    }
    report.nonradial_b = Some(b);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub radial: bool,
    pub not_exact: bool,
    pub rank_one_span: bool,
    /// `u(x) = a·(v·x)³` as `(a, v)` with `v` normalized to a unit pivot.
    pub cube_of_linear: Option<(Scalar, Vector)>,
}

impl DegeneracyReport {
    pub fn degenerate(&self) -> bool {
        self.not_exact
    }

    pub fn to_report(&self) -> Report {
        let agree = self.not_exact == self.rank_one_span && self.rank_one_span == self.cube_of_linear.is_some();
        let mut r = Report::new("degeneracy", agree);
        r.note(format!("not exact: {}", self.not_exact));
        r.note(format!("dim span{{eᵢ⋄eⱼ}} = 1: {}", self.rank_one_span));
        match &self.cube_of_linear {
            Some((a, v)) => {
                let vs: Vec<String> = v.iter().map(|s| s.to_string()).collect();
                r.note(format!("u = {a}·(ω·x)³ with ω = ({})", vs.join(", ")));
            }
            None => r.note("u is not the cube of a linear form"),
        }
        r.note(format!("degenerate: {}", self.degenerate()));
        r
    }
}

/// Evaluates the three degeneracy criteria independently; for radial
/// Hsiang algebras they must agree.
pub fn degeneracy_check(alg: &Algebra, opts: SweepOptions) -> Result<DegeneracyReport, AnalysisError> {
    let radial = radial_hsiang_check(alg, opts)?.radial.is_some();
    let n = alg.dim();
    let not_exact = !alg.is_exact();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut v = vec![Scalar::ZERO; n];
            for (k, c) in alg.basis_product(i, j) {
                v[*k] = c.clone();
            }
            rows.push(v);
        }
    }
    let rank_one_span = Matrix::from_rows(rows).rank() == 1;
    let t = alg.trilinear_table();
    let at = |i: usize, j: usize, k: usize| &t[(i * n + j) * n + k];
    let cube_of_linear = (0..n).find(|&i| !at(i, i, i).is_zero()).and_then(|i| {
        // u = ω³ gives T_jkl = 6ωⱼωₖωₗ, so T_jkl·T_iii² = T_iij·T_iik·T_iil.
        let tiii = at(i, i, i).clone();
        let t2 = &tiii * &tiii;
        for j in 0..n {
            for k in j..n {
                for l in k..n {
                    let lhs = at(j, k, l) * &t2;
                    let rhs = &(at(i, i, j) * at(i, i, k)) * at(i, i, l);
                    if lhs != rhs {
                        return None;
                    }
                }
            }
        }
        let v: Vector = (0..n).map(|j| at(i, i, j) / &tiii).collect();
        Some((&tiii * &Scalar::frac(1, 6), v))
    });
    let report = DegeneracyReport { radial, not_exact, rank_one_span, cube_of_linear };
    if radial && !(not_exact == rank_one_span && rank_one_span == report.cube_of_linear.is_some()) {
        return Err(AnalysisError::InternalInconsistency(format!(
            "degeneracy criteria disagree on a radial Hsiang algebra: not exact = {}, rank-one span = {}, cube = {}",
            not_exact,
            rank_one_span,
            report.cube_of_linear.is_some()
        )));
    }
    Ok(report)
}

/// Rescales the product by `λ` with `λ² = 4/(3θ)` so the radial constant
/// becomes `4/3`.
pub fn normalize_theta(alg: &Algebra, opts: SweepOptions) -> Result<Algebra, AnalysisError> {
    let rep = radial_hsiang_check(alg, opts)?;
    let theta = rep.radial.ok_or_else(|| AnalysisError::Precondition("not a radial Hsiang algebra".into()))?;
    if !theta.is_positive() {
        return Err(AnalysisError::Precondition(format!("θ = {theta} is not positive")));
    }
    let lambda2 = &Scalar::frac(4, 3) / &theta;
    let lambda = lambda2
        .sqrt()
        .ok_or_else(|| AnalysisError::UnrepresentableScale(format!("λ² = {lambda2} has no square root in Q(r3)")))?;
    Ok(alg.scaled(&lambda))
}
