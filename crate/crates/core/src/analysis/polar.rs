//! Verification of a supplied polar decomposition `𝔸 = 𝔸₀ ⊕ 𝔸₁`.

use super::{require_commutative_metrized, AnalysisError};
use crate::algebra::{multilinearize, Algebra};
use crate::linalg::{is_zero_vector, vec_scale, vec_sub, Subspace, Vector};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarReport {
    pub pass: bool,
    /// Label of the first failing axiom: "i", "ii", "iii" or "iv".
    pub failed_axiom: Option<&'static str>,
    pub witness: Option<String>,
    pub mutant: bool,
    pub dim_a0: usize,
    pub dim_a1: usize,
    /// `κ(x,x) = h(x₀,x₀)·dim 𝔸₁ + 2h(x₁,x₁)·dim 𝔸₀` on the adapted basis.
    pub killing_formula_holds: bool,
}

impl PolarReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("polar", self.pass);
        r.witness = self.witness.clone();
        if let Some(a) = self.failed_axiom {
            r.note(format!("axiom ({a}) fails"));
        }
        r.note(format!("dim A0 = {}, dim A1 = {}", self.dim_a0, self.dim_a1));
        if self.pass {
            r.note(if self.mutant { "mutant" } else { "regular" });
            r.note(format!("trace formula for κ holds: {}", self.killing_formula_holds));
        }
        r
    }
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Checks the four polar axioms for `A0` and its `h`-orthogonal complement.
pub fn verify_polar(alg: &Algebra, a0: &Subspace) -> Result<PolarReport, AnalysisError> {
    require_commutative_metrized(alg)?;
    let n = alg.dim();
    if a0.ambient_dim() != n {
        return Err(AnalysisError::Precondition(format!(
            "zero block lives in dimension {}, algebra has dimension {n}",
            a0.ambient_dim()
        )));
    }
    if a0.dim() == 0 || a0.dim() == n {
        return Err(AnalysisError::Precondition("zero block must be a proper nonzero subspace".into()));
    }
    let a1 = a0.orthogonal_complement(alg.metric());
    let b0 = a0.basis();
    let b1 = a1.basis();
    let mut report = PolarReport {
        pass: false,
        failed_axiom: None,
        witness: None,
        mutant: false,
        dim_a0: a0.dim(),
        dim_a1: a1.dim(),
        killing_formula_holds: false,
    };
    let fail = |mut r: PolarReport, axiom: &'static str, w: String| {
        r.failed_axiom = Some(axiom);
        r.witness = Some(w);
        Ok(r)
    };

    for (i, x) in b0.iter().enumerate() {
        for y in &b0[i..] {
            let p = alg.mul(x, y);
            if !is_zero_vector(&p) {
                return fail(report, "i", format!("{} ⋄ {} = {}", fmt_vec(x), fmt_vec(y), fmt_vec(&p)));
            }
        }
    }
    for (i, x) in b1.iter().enumerate() {
        for y in &b1[i..] {
            let p = alg.mul(x, y);
            if !a0.contains(&p) {
                return fail(report, "ii", format!("{} ⋄ {} = {} ∉ A0", fmt_vec(x), fmt_vec(y), fmt_vec(&p)));
            }
        }
    }
    // x ↦ x⋄(x⋄y) − h(x,x)y is quadratic in x; its polarization on pairs
    // of A0-basis vectors spans the identity on A0.
    for y in b1 {
        let f = |x: &[Scalar]| -> Vector { vec_sub(&alg.mul(x, &alg.mul(x, y)), &vec_scale(y, &alg.h(x, x))) };
        for (i, x) in b0.iter().enumerate() {
            for z in &b0[i..] {
                let v = multilinearize(f, &[x.clone(), z.clone()]);
                if !is_zero_vector(&v) {
                    return fail(
                        report,
                        "iii",
                        format!(
                            "x = {}, x' = {}, y = {}: polarized defect {}",
                            fmt_vec(x),
                            fmt_vec(z),
                            fmt_vec(y),
                            fmt_vec(&v)
                        ),
                    );
                }
            }
        }
    }
    if a0.dim() == 1 {
        let t = alg.trace_left(&b0[0]);
        if !t.is_zero() {
            return fail(report, "iv", format!("trace L({}) = {t}", fmt_vec(&b0[0])));
        }
    }
    report.pass = true;
    report.mutant = a1.dim() == 2 * a0.dim();

    let kappa = alg.killing_gram();
    let g = alg.metric();
    let c0 = Scalar::from_int(a1.dim() as i64);
    let c1 = Scalar::from_int(2 * a0.dim() as i64);
    let mut holds = true;
    let adapted: Vec<(&Vector, bool)> = b0.iter().map(|v| (v, false)).chain(b1.iter().map(|v| (v, true))).collect();
    'outer: for &(bi, in_a1) in &adapted {
        for &(bj, other_in_a1) in &adapted {
            let expected = match (in_a1, other_in_a1) {
                (false, false) => &c0 * &g.bilinear(bi, bj),
                (true, true) => &c1 * &g.bilinear(bi, bj),
                _ => Scalar::ZERO,
            };
            if kappa.bilinear(bi, bj) != expected {
                holds = false;
                break 'outer;
            }
        }
    }
    report.killing_formula_holds = holds;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Scalar;

    #[test]
    fn octonion_triple_is_mutant() {
        let t = catalog::triple(&catalog::hurwitz(8, false).unwrap());
        let r = verify_polar(&t, &Subspace::coordinate(24, &catalog::triple_block(8, 0))).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.mutant);
        assert!(r.killing_formula_holds);
    }

    #[test]
    fn clifford_is_regular() {
        let sys = catalog::clifford_system(1, 2).unwrap();
        let alg = catalog::polar_from_clifford(&sys);
        let r = verify_polar(&alg, &Subspace::coordinate(alg.dim(), &catalog::clifford_zero_block(&sys))).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(!r.mutant);
        assert_eq!((r.dim_a0, r.dim_a1), (2, 2));
        assert!(r.killing_formula_holds);
    }

    #[test]
    fn diagonal_line_fails_first_axiom() {
        let t = catalog::triple(&catalog::hurwitz(1, false).unwrap());
        let one = vec![Scalar::ONE; 3];
        let r = verify_polar(&t, &Subspace::span(3, &[one])).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failed_axiom, Some("i"));
        assert!(r.witness.unwrap().contains("(2, 2, 2)"));
    }
}
