//! Killing metrizability and the exceptional/mutant inference.

use super::numeric::{PeirceData, SpectrumMatch};
use crate::algebra::Algebra;
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct KillingReport {
    pub invariant: bool,
    pub nondegenerate: bool,
    pub metrized: bool,
    pub gram: Matrix,
    /// `λ` with `κ = λ·h`, when `κ` is a multiple of the metric.
    pub multiple_of_metric: Option<Scalar>,
    /// Structural reading of the verdict when Peirce data is available.
    pub inference: Option<String>,
}

impl KillingReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("killing", self.metrized);
        r.note(format!("invariant = {}, nondegenerate = {}", self.invariant, self.nondegenerate));
        if let Some(l) = &self.multiple_of_metric {
            r.note(format!("κ = {l}·h"));
        }
        if let Some(i) = &self.inference {
            r.note(i.clone());
        }
        if !self.invariant {
            r.witness = Some("κ(x⋄y, z) ≠ κ(x, z⋄y) on a basis triple".into());
        }
        r
    }
}

/// Combines invariance and nondegeneracy of `κ(x,y) = trace L(x)L(y)`.
///
/// With Peirce data of a Hsiang algebra the verdict is annotated: Killing
/// metrized with `n₂ ≠ 2` indicates an exceptional algebra, with `n₂ = 2`
/// a mutant one. This is an inference, not an isomorphism certificate.
pub fn killing_metrized_check(alg: &Algebra, peirce: Option<&PeirceData>) -> KillingReport {
    let kf = alg.killing_form();
    let metrized = kf.invariant && kf.nondegenerate;
    let g = alg.metric();
    let n = alg.dim();
    let multiple_of_metric = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !g[(i, j)].is_zero())
        .map(|(i, j)| &kf.gram[(i, j)] / &g[(i, j)])
        .filter(|l| g.scale(l) == kf.gram);
    let inference = peirce.filter(|p| p.spectrum != SpectrumMatch::Mismatch).and_then(|p| {
        let n2 = p.n2?;
        Some(match (metrized, n2 == 2) {
            (true, true) => "Killing metrized with n₂ = 2: mutant".to_string(),
            (true, false) => format!("Killing metrized with n₂ = {n2}: exceptional"),
            (false, _) => "not Killing metrized: neither exceptional nor mutant".to_string(),
        })
    });
    KillingReport {
        invariant: kf.invariant,
        nondegenerate: kf.nondegenerate,
        metrized,
        gram: kf.gram,
        multiple_of_metric,
        inference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn quaternion_triple() {
        let t = catalog::triple(&catalog::hurwitz(4, false).unwrap());
        let k = killing_metrized_check(&t, None);
        assert!(k.metrized);
        assert_eq!(k.multiple_of_metric, Some(Scalar::from_int(8)));
    }

    #[test]
    fn regular_polar_is_not_invariant() {
        let alg = catalog::polar_from_clifford(&catalog::clifford_system(1, 2).unwrap());
        let k = killing_metrized_check(&alg, None);
        assert!(!k.invariant);
        assert!(!k.metrized);
    }

    #[test]
    fn para_complex_gram() {
        let k = killing_metrized_check(&catalog::para_complex(), None);
        assert_eq!(k.gram, Matrix::scalar_identity(2, &Scalar::from_int(2)));
        assert!(k.metrized);
    }
}
