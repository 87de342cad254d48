//! Pseudocomposition (`x³ = b(x,x)·x`) and the eikonal case `b = θ′h`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{format_tuple, random_point, require_commutative_metrized, AnalysisError};
use crate::algebra::Algebra;
use crate::cubic::{coordinate_polys, product_polys};
use crate::linalg::{basis_vector, vec_add, Matrix};
use crate::polynomial::Polynomial;
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoReport {
    /// Gram matrix of `b`, when `x³ = b(x,x)·x` holds.
    pub b: Option<Matrix>,
    /// `θ′` when `b = θ′·h`.
    pub theta_prime: Option<Scalar>,
    pub eikonal: bool,
    pub witness: Option<String>,
}

impl PseudoReport {
    pub fn is_pseudocomposition(&self) -> bool {
        self.b.is_some()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("eikonal", self.eikonal);
        r.theta = self.theta_prime.clone();
        r.witness = self.witness.clone();
        r.note(format!("pseudocomposition: {}", self.is_pseudocomposition()));
        if let Some(t) = &self.theta_prime {
            r.note(format!("θ′ = {t}"));
        }
        r
    }
}

/// Finds `b` with `x³ = b(x,x)·x` from the probes `eᵢ` and `eᵢ + eⱼ`, then
/// verifies the cubic vector identity exactly.
pub fn pseudocomposition_check(alg: &Algebra) -> Result<PseudoReport, AnalysisError> {
    require_commutative_metrized(alg)?;
    let n = alg.dim();
    let cube = |x: &[Scalar]| alg.mul(&alg.mul(x, x), x);
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        b[(i, i)] = cube(&basis_vector(n, i))[i].clone();
    }
    let half = Scalar::frac(1, 2);
    for i in 0..n {
        for j in i + 1..n {
            // (eᵢ + eⱼ) has i-th coordinate 1, so b(x,x) is the i-th coordinate of x³.
            let x = vec_add(&basis_vector(n, i), &basis_vector(n, j));
            let bxx = cube(&x)[i].clone();
            let v = &(&(&bxx - &b[(i, i)]) - &b[(j, j)]) * &half;
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    let x = coordinate_polys(n);
    let x2 = product_polys(alg, &x, &x);
    let x3 = product_polys(alg, &x2, &x);
    let mut bq = Polynomial::zero(n);
    for i in 0..n {
        for j in 0..n {
            if !b[(i, j)].is_zero() {
                bq.add_product(&x[i], &x[j], &b[(i, j)]);
            }
        }
    }
    for (k, x3k) in x3.iter().enumerate() {
        let mut res = x3k.clone();
        res.add_product(&bq, &x[k], &-Scalar::ONE);
        if let Some((m, c)) = res.leading_term() {
            return Ok(PseudoReport {
                b: None,
                theta_prime: None,
                eikonal: false,
                witness: Some(format!(
                    "component {} of x³ − b(x,x)x has coefficient {c} at basis triple {}",
                    k + 1,
                    format_tuple(m)
                )),
            });
        }
    }
    let g = alg.metric();
    let (pi, pj) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !g[(i, j)].is_zero())
        .expect("nondegenerate metric");
    let t = &b[(pi, pj)] / &g[(pi, pj)];
    let theta_prime = (g.scale(&t) == b).then_some(t);
    let eikonal = theta_prime.is_some() && g.is_positive_definite();
    if let Some(tp) = &theta_prime {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..8 {
            let x = random_point(&mut rng, n);
            let x2 = alg.mul(&x, &x);
            let x3 = alg.mul(&x2, &x);
            if alg.h(&x3, &x2) != &(tp * &alg.h(&x, &x)) * &alg.h(&x, &x2) {
                return Err(AnalysisError::InternalInconsistency(
                    "x³ = θ′h(x,x)x holds but h(x³,x²) = θ′h(x,x)h(x,x²) fails".into(),
                ));
            }
        }
    }
    Ok(PseudoReport { b: Some(b), theta_prime, eikonal, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn eikonal_examples() {
        let pc = pseudocomposition_check(&catalog::para_complex()).unwrap();
        assert_eq!(pc.theta_prime, Some(Scalar::ONE));
        assert!(pc.eikonal);
        let c0 = pseudocomposition_check(&catalog::cartan_cubic(0).unwrap().1).unwrap();
        assert_eq!(c0.theta_prime, Some(Scalar::from_int(36)));
        assert!(c0.eikonal);
        let t = pseudocomposition_check(&catalog::triple(&catalog::hurwitz(1, false).unwrap())).unwrap();
        assert!(!t.is_pseudocomposition());
        assert!(t.witness.is_some());
    }
}
