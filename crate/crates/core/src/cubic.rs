//! The dictionary between cubic forms and metrized commutative algebras.
//!
//! For a metric `h` and a cubic `u`, the algebra is fixed by
//! `h(x⋄y, z) = D³u(x, y, z)`, so that `u(x) = ⅙ h(x⋄x, x)`, the gradient is
//! `½ x⋄x` and the Hessian is `L(x)`.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::linalg::{Matrix, Vector};
use crate::polynomial::{exponent_factorial, format_monomial, Polynomial};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error("polynomial is not a homogeneous cubic")]
    NotCubic,
    #[error("cubic has {got} variables but the metric has dimension {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A homogeneous cubic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm(Polynomial);

impl CubicForm {
    pub fn new(p: Polynomial) -> Result<Self, CubicError> {
        if !p.is_homogeneous(3) {
            return Err(CubicError::NotCubic);
        }
        Ok(CubicForm(p))
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_polynomial(self) -> Polynomial {
        self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.0.eval(x).expect("arity checked by caller")
    }
}

/// Third-derivative tensor `D³u[i][j][k]`, flattened.
pub fn third_derivative(u: &CubicForm) -> Vec<Scalar> {
    let n = u.nvars();
    let mut t = vec![Scalar::ZERO; n * n * n];
    for (m, c) in u.polynomial().terms() {
        let val = c * &Scalar::from_rational(exponent_factorial(m));
        let (a, b, d) = (m[0] as usize, m[1] as usize, m[2] as usize);
        for (i, j, k) in [(a, b, d), (a, d, b), (b, a, d), (b, d, a), (d, a, b), (d, b, a)] {
            t[(i * n + j) * n + k] = val.clone();
        }
    }
    t
}

/// The commutative algebra with `h(x⋄y, z) = D³u(x, y, z)`.
pub fn algebra_from_cubic(u: &CubicForm, metric: &Matrix, name: &str) -> Result<Algebra, CubicError> {
    let n = metric.rows();
    if u.nvars() != n {
        return Err(CubicError::ArityMismatch { expected: n, got: u.nvars() });
    }
    let ginv = metric.inverse().ok_or(AlgebraError::DegenerateMetric)?;
    let t = third_derivative(u);
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let row = &t[(i * n + j) * n..(i * n + j + 1) * n];
            if row.iter().all(Scalar::is_zero) {
                continue;
            }
            let c = ginv.mul_vec(row);
            for (k, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, k, v));
                }
            }
        }
    }
    Ok(Algebra::new(name, n, entries, metric.clone(), None)?)
}

/// `u(x) = ⅙ h(x⋄x, x)` as an explicit polynomial.
pub fn cubic_from_algebra(alg: &Algebra) -> Result<CubicForm, CubicError> {
    if !alg.is_commutative() {
        return Err(AlgebraError::RequiresCommutative.into());
    }
    alg.require_metrized()?;
    let n = alg.dim();
    let t = alg.trilinear_table();
    let sixth = Scalar::frac(1, 6);
    let mut p = Polynomial::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &t[(i * n + j) * n + k];
                if v.is_zero() {
                    continue;
                }
                let mut m: crate::polynomial::Monomial = smallvec::smallvec![i as u16, j as u16, k as u16];
                m.sort_unstable();
                p.add_term(m, v * &sixth);
            }
        }
    }
    CubicForm::new(p)
}

/// `(½ x⋄x, L(x))`: the gradient and Hessian of the cubic form.
pub fn gradient_hessian(alg: &Algebra, x: &[Scalar]) -> Result<(Vector, Matrix), AlgebraError> {
    let sq = alg.multiply(x, x)?;
    let half = Scalar::frac(1, 2);
    Ok((sq.iter().map(|v| v * &half).collect(), alg.left(x)))
}

/// `𝓜(u)(x) = ¼ [h(x², x²) trace L(x) − h(x², x³)]`.
pub fn hsiang_operator(alg: &Algebra, x: &[Scalar]) -> Result<Scalar, AlgebraError> {
    let x2 = alg.multiply(x, x)?;
    let x3 = alg.mul(&x2, x);
    let lhs = &alg.h(&x2, &x2) * &alg.trace_left(x);
    Ok(&(&lhs - &alg.h(&x2, &x3)) * &Scalar::frac(1, 4))
}

/// Exact check of `|Du(x)|² = c·|x|⁴` as a polynomial identity.
pub fn cartan_munzner_check(u: &CubicForm, c: &Scalar) -> Report {
    let n = u.nvars();
    let mut residual = Polynomial::zero(n);
    for d in u.polynomial().gradient() {
        residual.add_product(&d, &d, &Scalar::ONE);
    }
    let mut norm2 = Polynomial::zero(n);
    for i in 0..n {
        let v = Polynomial::var(n, i);
        norm2.add_product(&v, &v, &Scalar::ONE);
    }
    residual.add_product(&norm2, &norm2, &-c);
    let mut r = Report::new("cartan-munzner", residual.is_zero());
    if !residual.is_zero() {
        let (m, coeff) = residual.leading_term().expect("nonzero");
        r.witness = Some(format!("residual coefficient {coeff} at {}", format_monomial(m)));
        r.note(format!("residual |Du|² − {c}|x|⁴ = {residual}"));
    }
    r
}

/// Componentwise polynomial vector `X ⋄ Y` where `X`, `Y` are vectors of
/// polynomials in the algebra's coordinates.
pub fn product_polys(alg: &Algebra, x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
    let n = alg.dim();
    let nv = x.first().map_or(n, Polynomial::nvars);
    let mut out = vec![Polynomial::zero(nv); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let row = alg.basis_product(i, j);
            if row.is_empty() {
                continue;
            }
            let prod = xi * yj;
            for (k, c) in row {
                out[*k].add_assign_scaled(&prod, c);
            }
        }
    }
    out
}

/// `h(X, Y)` for polynomial vectors.
pub fn metric_polys(alg: &Algebra, x: &[Polynomial], y: &[Polynomial]) -> Polynomial {
    let g = alg.metric();
    let nv = x.first().map_or(alg.dim(), Polynomial::nvars);
    let mut out = Polynomial::zero(nv);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            let gij = &g[(i, j)];
            if !gij.is_zero() && !yj.is_zero() {
                out.add_product(xi, yj, gij);
            }
        }
    }
    out
}

/// The generic point `x = (x₁, …, xₙ)` as a polynomial vector.
pub fn coordinate_polys(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(n, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis_vector;

    fn cubic(s: &str, n: usize) -> CubicForm {
        CubicForm::new(Polynomial::parse_with_nvars(s, n).unwrap()).unwrap()
    }

    fn int(k: i64) -> Scalar {
        Scalar::from_int(k)
    }

    #[test]
    fn triple_of_reals_from_product_cubic() {
        let a = algebra_from_cubic(&cubic("x1*x2*x3", 3), &Matrix::identity(3), "t").unwrap();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (0, 2, 1)] {
            assert_eq!(a.basis_product(i, j), &[(k, Scalar::ONE)]);
        }
        for i in 0..3 {
            assert!(a.basis_product(i, i).is_empty());
        }
    }

    #[test]
    fn cube_and_cartan_zero_tables() {
        let a = algebra_from_cubic(&cubic("x1^3", 1), &Matrix::identity(1), "c").unwrap();
        assert_eq!(a.basis_product(0, 0), &[(0, int(6))]);
        let c = algebra_from_cubic(&cubic("x2^3-3*x1^2*x2", 2), &Matrix::identity(2), "c0").unwrap();
        assert_eq!(c.basis_product(0, 0), &[(1, int(-6))]);
        assert_eq!(c.basis_product(0, 1), &[(0, int(-6))]);
        assert_eq!(c.basis_product(1, 1), &[(1, int(6))]);
        assert_eq!(cubic_from_algebra(&c).unwrap(), cubic("x2^3-3*x1^2*x2", 2));
    }

    #[test]
    fn gradient_and_hessian_of_cartan_zero() {
        let c = algebra_from_cubic(&cubic("x2^3-3*x1^2*x2", 2), &Matrix::identity(2), "c0").unwrap();
        let (g, hess) = gradient_hessian(&c, &basis_vector(2, 1)).unwrap();
        assert_eq!(g, vec![int(0), int(3)]);
        assert_eq!(hess, Matrix::diagonal(&[int(-6), int(6)]));
    }

    #[test]
    fn hsiang_operator_examples() {
        let t = algebra_from_cubic(&cubic("x1*x2*x3", 3), &Matrix::identity(3), "t").unwrap();
        assert_eq!(hsiang_operator(&t, &[int(1), int(1), int(1)]).unwrap(), int(-6));
        assert!(hsiang_operator(&t, &[int(0), int(0), int(0)]).unwrap().is_zero());
        let c = algebra_from_cubic(&cubic("x1^3", 1), &Matrix::identity(1), "c").unwrap();
        assert!(hsiang_operator(&c, &[int(1)]).unwrap().is_zero());
    }

    #[test]
    fn cartan_munzner_examples() {
        assert!(cartan_munzner_check(&cubic("x2^3-3*x1^2*x2", 2), &int(9)).pass);
        let r = cartan_munzner_check(&cubic("x1*x2*x3", 3), &int(9));
        assert!(!r.pass);
        assert!(r.witness.is_some());
    }

    #[test]
    fn zero_algebra_has_zero_cubic() {
        let z = Algebra::new("0", 2, [], Matrix::identity(2), None).unwrap();
        assert!(cubic_from_algebra(&z).unwrap().polynomial().is_zero());
    }
}
