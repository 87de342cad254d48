//! Finite-dimensional algebras with metric and involution.

use std::fmt;

use thiserror::Error;

use crate::linalg::{basis_vector, zero_vector, Matrix, Vector};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure index ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("metric is not symmetric")]
    AsymmetricMetric,
    #[error("metric is degenerate (determinant 0)")]
    DegenerateMetric,
    #[error("involution does not square to the identity")]
    NotAnInvolution,
    #[error("structure constants marked commutative but c[{i}][{j}][{k}] != c[{j}][{i}][{k}]")]
    NotCommutative { i: usize, j: usize, k: usize },
    #[error("algebra is not metrized: {0}")]
    NotMetrized(String),
    #[error("metric is not positive definite")]
    NotEuclidean,
    #[error("algebra is not commutative")]
    RequiresCommutative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Which field the coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    Q,
    Qr3,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Q => "Q",
            FieldTag::Qr3 => "Qr3",
        })
    }
}

/// A bilinear product on `ℝⁿ` (coefficients in ℚ(√3)) with a
/// nondegenerate symmetric metric `h` and an involution `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    dim: usize,
    /// `table[i * dim + j]` lists the nonzero `(k, c[i][j][k])`, sorted by `k`.
    table: Vec<Vec<(usize, Scalar)>>,
    metric: Matrix,
    involution: Matrix,
    commutative: bool,
}

/// Killing form data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingForm {
    pub gram: Matrix,
    pub invariant: bool,
    pub nondegenerate: bool,
}

impl Algebra {
    /// Builds from `(i, j, k, c)` entries meaning `eᵢ ⋄ eⱼ ∋ c·eₖ`.
    /// Repeated indices are summed. The involution defaults to the identity.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        metric: Matrix,
        involution: Option<Matrix>,
    ) -> Result<Self, AlgebraError> {
        let mut dense = vec![zero_vector(dim); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange { i, j, k, dim });
            }
            dense[i * dim + j][k] += &c;
        }
        Self::from_dense(name.into(), dim, dense, metric, involution)
    }

    /// Builds from a function giving the product vector `eᵢ ⋄ eⱼ`.
    pub fn from_products(
        name: impl Into<String>,
        dim: usize,
        mut product: impl FnMut(usize, usize) -> Vector,
        metric: Matrix,
        involution: Option<Matrix>,
    ) -> Result<Self, AlgebraError> {
        let mut dense = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(AlgebraError::DimensionMismatch { expected: dim, got: v.len() });
                }
                dense.push(v);
            }
        }
        Self::from_dense(name.into(), dim, dense, metric, involution)
    }

    fn from_dense(
        name: String,
        dim: usize,
        dense: Vec<Vector>,
        metric: Matrix,
        involution: Option<Matrix>,
    ) -> Result<Self, AlgebraError> {
        if metric.rows() != dim || metric.cols() != dim {
            return Err(AlgebraError::DimensionMismatch { expected: dim, got: metric.rows() });
        }
        if !metric.is_symmetric() {
            return Err(AlgebraError::AsymmetricMetric);
        }
        if metric.determinant().is_zero() {
            return Err(AlgebraError::DegenerateMetric);
        }
        let involution = involution.unwrap_or_else(|| Matrix::identity(dim));
        if involution.rows() != dim || involution.cols() != dim {
            return Err(AlgebraError::DimensionMismatch { expected: dim, got: involution.rows() });
        }
        if !involution.mul(&involution).is_identity() {
            return Err(AlgebraError::NotAnInvolution);
        }
        let table: Vec<Vec<(usize, Scalar)>> =
            dense.into_iter().map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect();
        let commutative = (0..dim).all(|i| (i + 1..dim).all(|j| table[i * dim + j] == table[j * dim + i]));
        Ok(Algebra { name, dim, table, metric, involution, commutative })
    }

    /// Like [`Algebra::new`] for documents that declare commutativity and
    /// store only `i ≤ j`; the mirrored entries are filled in.
    pub fn new_commutative(
        name: impl Into<String>,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        metric: Matrix,
        involution: Option<Matrix>,
    ) -> Result<Self, AlgebraError> {
        let mut full = Vec::new();
        for (i, j, k, c) in entries {
            if i > j {
                return Err(AlgebraError::NotCommutative { i, j, k });
            }
            if i != j {
                full.push((j, i, k, c.clone()));
            }
            full.push((i, j, k, c));
        }
        Self::new(name, dim, full, metric, involution)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn involution(&self) -> &Matrix {
        &self.involution
    }

    pub fn has_identity_involution(&self) -> bool {
        self.involution.is_identity()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn field_tag(&self) -> FieldTag {
        let rational = self.table.iter().flatten().all(|(_, c)| c.is_rational())
            && self.metric.entries().all(Scalar::is_rational)
            && self.involution.entries().all(Scalar::is_rational);
        if rational {
            FieldTag::Q
        } else {
            FieldTag::Qr3
        }
    }

    /// Nonzero components of `eᵢ ⋄ eⱼ`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    /// All nonzero structure constants as `(i, j, k, c)`.
    pub fn structure_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let n = self.dim;
        self.table.iter().enumerate().flat_map(move |(ij, row)| row.iter().map(move |(k, c)| (ij / n, ij % n, *k, c)))
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product(i, j).iter().find(|(kk, _)| *kk == k).map_or(Scalar::ZERO, |(_, c)| c.clone())
    }

    fn check_len(&self, x: &[Scalar]) -> Result<(), AlgebraError> {
        if x.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    /// `x ⋄ y`; panics if lengths differ from `dim`.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert!(x.len() == self.dim && y.len() == self.dim, "vector length differs from dimension");
        let n = self.dim;
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let row = &self.table[i * n + j];
                if row.is_empty() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in row {
                    out[*k] += &(c * &s);
                }
            }
        }
        out
    }

    pub fn square(&self, x: &[Scalar]) -> Vector {
        self.mul(x, x)
    }

    /// `h(x, y)`.
    pub fn h(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.metric.bilinear(x, y)
    }

    /// `xᶿ`.
    pub fn conj(&self, x: &[Scalar]) -> Vector {
        self.involution.mul_vec(x)
    }

    pub fn mult_operator(&self, x: &[Scalar], side: Side) -> Result<Matrix, AlgebraError> {
        self.check_len(x)?;
        Ok(match side {
            Side::Left => self.left(x),
            Side::Right => self.right(x),
        })
    }

    /// `L(x)` as a matrix: column `b` is `x ⋄ e_b`.
    pub fn left(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for b in 0..n {
                for (a, c) in &self.table[i * n + b] {
                    m[(*a, b)] += &(c * xi);
                }
            }
        }
        m
    }

    /// `R(x)`: column `b` is `e_b ⋄ x`.
    pub fn right(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for b in 0..n {
                for (a, c) in &self.table[b * n + j] {
                    m[(*a, b)] += &(c * xj);
                }
            }
        }
        m
    }

    pub fn left_basis(&self, i: usize) -> Matrix {
        self.left(&basis_vector(self.dim, i))
    }

    /// Trilinear table `T[i][j][k] = h(eᵢ ⋄ eⱼ, eₖ)`, flattened.
    pub fn trilinear_table(&self) -> Vec<Scalar> {
        let n = self.dim;
        let mut t = vec![Scalar::ZERO; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for (m, c) in &self.table[i * n + j] {
                    for k in 0..n {
                        let g = &self.metric[(*m, k)];
                        if !g.is_zero() {
                            t[(i * n + j) * n + k] += &(c * g);
                        }
                    }
                }
            }
        }
        t
    }

    /// Exact check that `h` is σ-invariant and `h(x⋄y, z) = h(x, z⋄yᶿ)`.
    pub fn check_metrized(&self) -> Report {
        let n = self.dim;
        let s = &self.involution;
        if s.transpose().mul(&self.metric).mul(s) != self.metric {
            return Report::new("metrized", false)
                .with_witness("involution does not preserve the metric")
                .with_note("σᵀ G σ ≠ G");
        }
        let t = self.trilinear_table();
        let at = |i: usize, j: usize, k: usize| &t[(i * n + j) * n + k];
        if self.commutative && self.has_identity_involution() {
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        let v = at(i, j, k);
                        let perms = [at(i, k, j), at(j, i, k), at(j, k, i), at(k, i, j), at(k, j, i)];
                        if perms.iter().any(|p| *p != v) {
                            return Report::new("metrized", false).with_witness(format!(
                                "h(e{}⋄e{}, e{}) is not symmetric under permutation",
                                i + 1,
                                j + 1,
                                k + 1
                            ));
                        }
                    }
                }
            }
            return Report::new("metrized", true);
        }
        for i in 0..n {
            for j in 0..n {
                // h(eᵢ, eₖ ⋄ σeⱼ) = Σₗ σ[l][j] T[k][l][i]
                let sigma_col: Vec<(usize, &Scalar)> =
                    (0..n).map(|l| (l, &s[(l, j)])).filter(|(_, c)| !c.is_zero()).collect();
                for k in 0..n {
                    let mut rhs = Scalar::ZERO;
                    for (l, c) in &sigma_col {
                        let v = at(k, *l, i);
                        if !v.is_zero() {
                            rhs += &(*c * v);
                        }
                    }
                    if *at(i, j, k) != rhs {
                        return Report::new("metrized", false).with_witness(format!(
                            "h(e{a}⋄e{b}, e{c}) = {} but h(e{a}, e{c}⋄e{b}ᶿ) = {}",
                            at(i, j, k),
                            rhs,
                            a = i + 1,
                            b = j + 1,
                            c = k + 1
                        ));
                    }
                }
            }
        }
        Report::new("metrized", true)
    }

    pub fn require_metrized(&self) -> Result<(), AlgebraError> {
        let r = self.check_metrized();
        if r.pass {
            Ok(())
        } else {
            Err(AlgebraError::NotMetrized(r.witness.unwrap_or_default()))
        }
    }

    /// Gram matrix of `κ(x, y) = trace L(x)L(y)`.
    pub fn killing_gram(&self) -> Matrix {
        let n = self.dim;
        let ops: Vec<Matrix> = (0..n).map(|i| self.left_basis(i)).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = trace_of_product(&ops[i], &ops[j]);
                k[(i, j)] = v.clone();
                k[(j, i)] = v;
            }
        }
        k
    }

    pub fn killing_form(&self) -> KillingForm {
        let gram = self.killing_gram();
        let n = self.dim;
        // κ(eᵢ⋄eⱼ, eₖ) = κ(eᵢ, eₖ⋄eⱼ)
        let kt = |i: usize, j: usize, k: usize| -> Scalar {
            self.basis_product(i, j).iter().map(|(m, c)| c * &gram[(*m, k)]).sum()
        };
        let mut invariant = true;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.commutative && (i > j || j > k) {
                        continue;
                    }
                    let lhs = kt(i, j, k);
                    let rhs = kt(k, j, i);
                    if lhs != rhs {
                        invariant = false;
                        break 'outer;
                    }
                    if self.commutative {
                        // the remaining orbit representatives for full symmetry
                        if kt(i, k, j) != lhs || kt(j, k, i) != lhs {
                            invariant = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        let nondegenerate = !gram.determinant().is_zero();
        KillingForm { gram, invariant, nondegenerate }
    }

    /// Gram matrix of `x ↦ trace L(x)L(xᶿ)`.
    pub fn trace_form_twisted(&self) -> Matrix {
        let ks = self.killing_gram().mul(&self.involution);
        let n = self.dim;
        let half = Scalar::frac(1, 2);
        Matrix::from_fn(n, n, |i, j| &(&ks[(i, j)] + &ks[(j, i)]) * &half)
    }

    /// Unit element: solves `L(e) = R(e) = I` exactly.
    pub fn find_unit(&self) -> Option<Vector> {
        let n = self.dim;
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for a in 0..n {
            for b in 0..n {
                let target = if a == b { Scalar::ONE } else { Scalar::ZERO };
                rows.push((0..n).map(|i| self.structure_constant(i, b, a)).collect::<Vec<_>>());
                rhs.push(target.clone());
                rows.push((0..n).map(|i| self.structure_constant(b, i, a)).collect::<Vec<_>>());
                rhs.push(target);
            }
        }
        Matrix::from_rows(rows).solve(&rhs)
    }

    /// `trace L(eᵢ) = 0` for every `i`.
    pub fn is_exact(&self) -> bool {
        (0..self.dim).all(|i| self.trace_left_basis(i).is_zero())
    }

    pub fn trace_left_basis(&self, i: usize) -> Scalar {
        let n = self.dim;
        (0..n).map(|b| self.structure_constant(i, b, b)).sum()
    }

    /// `trace L(x)`.
    pub fn trace_left(&self, x: &[Scalar]) -> Scalar {
        x.iter().enumerate().filter(|(_, xi)| !xi.is_zero()).map(|(i, xi)| xi * &self.trace_left_basis(i)).sum()
    }

    /// Same metric and involution, product multiplied by `lambda`.
    pub fn scaled(&self, lambda: &Scalar) -> Algebra {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|(k, c)| (*k, c * lambda)).filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Algebra { table, ..self.clone() }
    }

    /// The same algebra in the reordered basis `e'ₐ = e_{perm[a]}`.
    pub fn permuted(&self, perm: &[usize]) -> Algebra {
        let n = self.dim;
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let entries: Vec<_> =
            self.structure_entries().map(|(i, j, k, c)| (inv[i], inv[j], inv[k], c.clone())).collect();
        let metric = Matrix::from_fn(n, n, |a, b| self.metric[(perm[a], perm[b])].clone());
        let inv_m = Matrix::from_fn(n, n, |a, b| self.involution[(perm[a], perm[b])].clone());
        Algebra::new(self.name.clone(), n, entries, metric, Some(inv_m)).expect("permutation preserves validity")
    }
}

pub(crate) fn trace_of_product(a: &Matrix, b: &Matrix) -> Scalar {
    let n = a.rows();
    let mut acc = Scalar::ZERO;
    for i in 0..n {
        for j in 0..n {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let y = &b[(j, i)];
            if !y.is_zero() {
                acc += &(x * y);
            }
        }
    }
    acc
}

/// Values that can be accumulated in a polarization sum.
pub trait Accumulate: Clone {
    fn add_scaled(&mut self, other: &Self, s: &Scalar);
    fn scaled(&self, s: &Scalar) -> Self;
}

impl Accumulate for Scalar {
    fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        *self += &(other * s);
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl Accumulate for Vector {
    fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        for (a, b) in self.iter_mut().zip(other) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self.iter().map(|a| a * s).collect()
    }
}

impl Accumulate for Matrix {
    fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        Matrix::add_scaled(self, other, s);
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

/// Full polarization of a degree-`m` homogeneous map `f`:
/// `T(x₁,…,xₘ) = (1/m!) Σ_{∅≠S} (−1)^{m−|S|} f(Σ_{i∈S} xᵢ)`.
pub fn multilinearize<V: Accumulate>(f: impl Fn(&[Scalar]) -> V, args: &[Vector]) -> V {
    let m = args.len();
    assert!(m >= 1, "polarization needs at least one argument");
    assert!(m < usize::BITS as usize);
    let n = args[0].len();
    let mut acc: Option<V> = None;
    for mask in 1usize..(1 << m) {
        let mut point = zero_vector(n);
        for (i, a) in args.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (p, v) in point.iter_mut().zip(a) {
                    *p += v;
                }
            }
        }
        let sign = if (m - mask.count_ones() as usize).is_multiple_of(2) { Scalar::ONE } else { -Scalar::ONE };
        let val = f(&point);
        match &mut acc {
            None => acc = Some(val.scaled(&sign)),
            Some(a) => a.add_scaled(&val, &sign),
        }
    }
    let fact: i64 = (1..=m as i64).product();
    acc.expect("nonempty").scaled(&Scalar::frac(1, fact))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn componentwise(gram: Matrix) -> Algebra {
        Algebra::new("diag", 2, [(0, 0, 0, int(1)), (1, 1, 1, int(1))], gram, None).unwrap()
    }

    #[test]
    fn rejects_degenerate_metric_and_bad_involution() {
        let g = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
        assert_eq!(Algebra::new("x", 2, [], g, None).unwrap_err(), AlgebraError::DegenerateMetric);
        let s = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        assert_eq!(Algebra::new("x", 2, [], Matrix::identity(2), Some(s)).unwrap_err(), AlgebraError::NotAnInvolution);
    }

    #[test]
    fn diagonal_gram_still_symmetric_trilinear_form() {
        // t(eᵢ,eⱼ,eₖ) is nonzero only for i = j = k, so any diagonal Gram keeps it symmetric.
        let g = Matrix::diagonal(&[int(1), int(2)]);
        assert!(componentwise(g).check_metrized().pass);
    }

    #[test]
    fn non_diagonal_gram_breaks_invariance() {
        let g = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(2)]]);
        let r = componentwise(g).check_metrized();
        assert!(!r.pass);
        assert!(r.witness.is_some());
    }

    #[test]
    fn multilinearize_small_cases() {
        let e = |n, i| basis_vector(n, i);
        let prod = |x: &[Scalar]| &(&x[0] * &x[1]) * &x[2];
        // T(x,x,x) = x₁x₂x₃ spreads the coefficient over six orderings.
        assert_eq!(multilinearize(prod, &[e(3, 0), e(3, 1), e(3, 2)]), Scalar::frac(1, 6));
        let norm = |x: &[Scalar]| &(&x[0] * &x[0]) + &(&x[1] * &x[1]);
        assert!(multilinearize(norm, &[e(2, 0), e(2, 1)]).is_zero());
        let quartic = |x: &[Scalar]| x[0].pow(4);
        let one = vec![Scalar::ONE];
        assert_eq!(multilinearize(quartic, &[one.clone(), one.clone(), one.clone(), one]), Scalar::ONE);
    }

    #[test]
    fn exactness_of_cube_algebra() {
        let a = Algebra::new("cube", 1, [(0, 0, 0, int(6))], Matrix::identity(1), None).unwrap();
        assert!(!a.is_exact());
        assert_eq!(a.trace_left_basis(0), int(6));
    }
}
