//! Constructors for the concrete algebras and cubic forms.
//!
//! Names understood by [`from_name`]:
//!
//! ```text
//! R  C  H  O  paraC  paraH(d)  cross3  cross7  color
//! clifford(p,q)  cartan(d)  triple(<name>)  diag(n)
//! ```

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::cubic::{algebra_from_cubic, CubicError, CubicForm};
use crate::linalg::{basis_vector, vec_add, vec_scale, zero_vector, Matrix, Vector};
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown algebra name: {0}")]
    UnknownName(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cubic(#[from] CubicError),
}

/// Hurwitz–Radon function: `ρ(2^{4a+b}·odd) = 8a + 2^b`.
pub fn rho(m: u64) -> u64 {
    assert!(m >= 1, "rho is defined for positive integers");
    let k = m.trailing_zeros() as u64;
    8 * (k / 4) + (1 << (k % 4))
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn cd_conj(x: &[Scalar]) -> Vector {
    let mut v: Vector = x.iter().map(|c| -c).collect();
    v[0] = x[0].clone();
    v
}

/// Cayley–Dickson product `(a,b)(c,d) = (ac − d̄b, da + bc̄)`.
fn cd_mul(x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = x.len();
    if n == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out: Vector = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

fn check_hurwitz_dim(d: usize) -> Result<(), CatalogError> {
    if matches!(d, 1 | 2 | 4 | 8) {
        Ok(())
    } else {
        Err(CatalogError::Inadmissible(format!("Hurwitz algebras have dimension 1, 2, 4 or 8, not {d}")))
    }
}

fn hurwitz_name(d: usize, para: bool) -> String {
    match (d, para) {
        (1, false) => "R".into(),
        (2, false) => "C".into(),
        (4, false) => "H".into(),
        (8, false) => "O".into(),
        (2, true) => "paraC".into(),
        (d, true) => format!("paraH({d})"),
        (d, false) => format!("hurwitz({d})"),
    }
}

/// Real Hurwitz algebra of dimension `d` (unit `e₁`), metric `h(x,x) = n(x)`,
/// involution the conjugation. The para variant has product `x̄ȳ` and the
/// identity involution.
pub fn hurwitz(d: usize, para: bool) -> Result<Algebra, CatalogError> {
    check_hurwitz_dim(d)?;
    let product = |i: usize, j: usize| {
        let (x, y) = (basis_vector(d, i), basis_vector(d, j));
        if para {
            cd_mul(&cd_conj(&x), &cd_conj(&y))
        } else {
            cd_mul(&x, &y)
        }
    };
    let involution = if para {
        None
    } else {
        let mut diag = vec![int(-1); d];
        diag[0] = int(1);
        Some(Matrix::diagonal(&diag))
    };
    Ok(Algebra::from_products(hurwitz_name(d, para), d, product, Matrix::identity(d), involution)?)
}

/// The paracomplex numbers: `e₁⋄e₁ = e₁`, `e₁⋄e₂ = −e₂`, `e₂⋄e₂ = −e₁`.
pub fn para_complex() -> Algebra {
    let entries = [(0, 0, 0, int(1)), (0, 1, 1, int(-1)), (1, 0, 1, int(-1)), (1, 1, 0, int(-1))];
    Algebra::new("paraC", 2, entries, Matrix::identity(2), None).expect("valid table")
}

fn cross3_vec(x: &[Scalar], y: &[Scalar]) -> Vector {
    vec![&(&x[1] * &y[2]) - &(&x[2] * &y[1]), &(&x[2] * &y[0]) - &(&x[0] * &y[2]), &(&x[0] * &y[1]) - &(&x[1] * &y[0])]
}

/// Cross product algebra on `ℝ³` or on the imaginary octonions, `σ = −I`.
pub fn cross_product(dim: usize) -> Result<Algebra, CatalogError> {
    let minus = Some(Matrix::scalar_identity(dim, &int(-1)));
    match dim {
        3 => Ok(Algebra::from_products(
            "cross3",
            3,
            |i, j| cross3_vec(&basis_vector(3, i), &basis_vector(3, j)),
            Matrix::identity(3),
            minus,
        )?),
        7 => {
            let half = Scalar::frac(1, 2);
            let product = |i: usize, j: usize| {
                let (x, y) = (basis_vector(8, i + 1), basis_vector(8, j + 1));
                let xy = cd_mul(&x, &y);
                let yx = cd_mul(&y, &x);
                let c: Vector = xy.iter().zip(&yx).map(|(a, b)| &(a - b) * &half).collect();
                debug_assert!(c[0].is_zero());
                c[1..].to_vec()
            };
            Ok(Algebra::from_products("cross7", 7, product, Matrix::identity(7), minus)?)
        }
        _ => Err(CatalogError::Inadmissible(format!("cross products exist only in dimensions 3 and 7, not {dim}"))),
    }
}

/// The vector color algebra on `ℝ³ × ℝ³`, `σ = −I`.
pub fn vector_color() -> Algebra {
    let product = |i: usize, j: usize| {
        let (x, y) = (basis_vector(6, i), basis_vector(6, j));
        let (x1, x2) = x.split_at(3);
        let (y1, y2) = y.split_at(3);
        let a = vec_add(&cross3_vec(x1, y1), &vec_scale(&cross3_vec(x2, y2), &int(-1)));
        let b = vec_scale(&vec_add(&cross3_vec(x1, y2), &cross3_vec(x2, y1)), &int(-1));
        let mut v = a;
        v.extend(b);
        v
    };
    Algebra::from_products("color", 6, product, Matrix::identity(6), Some(Matrix::scalar_identity(6, &int(-1))))
        .expect("valid table")
}

/// Componentwise product on `ℝⁿ`: `eᵢ⋄eᵢ = eᵢ`. Not quasicomposition for `n ≥ 2`.
pub fn diagonal(n: usize) -> Algebra {
    let entries: Vec<_> = (0..n).map(|i| (i, i, i, Scalar::ONE)).collect();
    Algebra::new(format!("diag({n})"), n, entries, Matrix::identity(n), None).expect("valid table")
}

/// A symmetric Clifford system `A₁,…,A_q` on `ℝ^{2p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordSystem {
    pub p: usize,
    pub q: usize,
    pub matrices: Vec<Matrix>,
}

impl CliffordSystem {
    /// `Aᵢᵀ = Aᵢ` and `AᵢAⱼ + AⱼAᵢ = 2δᵢⱼ I`, checked exactly.
    pub fn satisfies_relations(&self) -> bool {
        let n = 2 * self.p;
        let two_i = Matrix::scalar_identity(n, &int(2));
        let zero = Matrix::zeros(n, n);
        self.matrices.iter().all(Matrix::is_symmetric)
            && self.matrices.iter().enumerate().all(|(i, a)| {
                self.matrices.iter().enumerate().skip(i).all(|(j, b)| {
                    let s = a.mul(b).add(&b.mul(a));
                    s == if i == j { two_i.clone() } else { zero.clone() }
                })
            })
    }
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    Matrix::from_fn(ra * rb, ca * cb, |i, j| &a[(i / rb, j / cb)] * &b[(i % rb, j % cb)])
}

fn small(rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
}

/// Left multiplications by the imaginary units of the Hurwitz algebra of
/// dimension `d`, as matrices.
fn imaginary_left_mults(d: usize) -> Vec<Matrix> {
    (1..d)
        .map(|a| {
            let ea = basis_vector(d, a);
            let cols: Vec<Vector> = (0..d).map(|b| cd_mul(&ea, &basis_vector(d, b))).collect();
            Matrix::from_columns(&cols, d)
        })
        .collect()
}

/// `ρ(2^m) − 1` anticommuting skew complex structures on `ℝ^{2^m}`.
fn complex_structures_pow2(m: u32) -> Vec<Matrix> {
    match m {
        0 => Vec::new(),
        1 => imaginary_left_mults(2),
        2 => imaginary_left_mults(4),
        3 => imaginary_left_mults(8),
        _ => {
            let octo = imaginary_left_mults(8);
            let rest = complex_structures_pow2(m - 4);
            let inner = Matrix::identity(1 << (m - 4));
            let s = small(&[&[1, 0], &[0, -1]]);
            let t = small(&[&[0, 1], &[1, 0]]);
            let e = small(&[&[0, -1], &[1, 0]]);
            let i8 = Matrix::identity(8);
            let mut out: Vec<Matrix> = octo.iter().map(|p| kron(&kron(p, &s), &inner)).collect();
            out.push(kron(&kron(&i8, &e), &inner));
            out.extend(rest.iter().map(|j| kron(&kron(&i8, &t), j)));
            out
        }
    }
}

/// Anticommuting skew complex structures on `ℝᵖ`, `ρ(p) − 1` of them.
pub fn complex_structures(p: usize) -> Vec<Matrix> {
    let m = p.trailing_zeros();
    let odd = Matrix::identity(p >> m);
    complex_structures_pow2(m).iter().map(|j| kron(j, &odd)).collect()
}

/// Symmetric Clifford system with `q` matrices on `ℝ^{2p}`.
pub fn clifford_system(p: usize, q: usize) -> Result<CliffordSystem, CatalogError> {
    if p == 0 || q == 0 {
        return Err(CatalogError::Inadmissible("p and q must be positive".into()));
    }
    let r = rho(p as u64) as usize;
    if q - 1 > r {
        return Err(CatalogError::Inadmissible(format!("q−1 ≤ ρ(p) violated: ρ({p})={r}")));
    }
    let id = Matrix::identity(p);
    let zero = Matrix::zeros(p, p);
    let block = |a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix| {
        Matrix::from_fn(2 * p, 2 * p, |i, j| {
            let m = match (i < p, j < p) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            m[(i % p, j % p)].clone()
        })
    };
    let mut matrices = vec![block(&id, &zero, &zero, &id.scale(&int(-1)))];
    if q >= 2 {
        matrices.push(block(&zero, &id, &id, &zero));
    }
    for j in complex_structures(p).into_iter().take(q.saturating_sub(2)) {
        matrices.push(block(&zero, &j, &j.scale(&int(-1)), &zero));
    }
    let sys = CliffordSystem { p, q, matrices };
    assert!(sys.satisfies_relations(), "Clifford construction violated the relations for ({p},{q})");
    Ok(sys)
}

/// Polar algebra of `u = ½ Σₖ zₖ⟨Aₖy, y⟩` on `ℝ^{2p} × ℝ^q` (the `y` block
/// first), identity metric.
pub fn polar_from_clifford(sys: &CliffordSystem) -> Algebra {
    let m = 2 * sys.p;
    let n = m + sys.q;
    let mut entries = Vec::new();
    for (k, a) in sys.matrices.iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                let c = &a[(i, j)];
                if c.is_zero() {
                    continue;
                }
                entries.push((i, j, m + k, c.clone()));
                entries.push((i, m + k, j, c.clone()));
                entries.push((m + k, i, j, c.clone()));
            }
        }
    }
    Algebra::new(format!("clifford({},{})", sys.p, sys.q), n, entries, Matrix::identity(n), None).expect("valid table")
}

/// Index of the coordinate of the `z`-block (`ℝ^q`) of a polar algebra.
pub fn clifford_zero_block(sys: &CliffordSystem) -> Vec<usize> {
    (2 * sys.p..2 * sys.p + sys.q).collect()
}

/// The Cartan isoparametric cubic on `𝔽_d³ × ℝ²` and its algebra
/// (identity metric). The real part is the first Hurwitz coordinate.
pub fn cartan_cubic(d: usize) -> Result<(CubicForm, Algebra), CatalogError> {
    let n = 3 * d + 2;
    if d != 0 {
        check_hurwitz_dim(d)?;
    }
    let x1 = 3 * d;
    let x2 = 3 * d + 1;
    let var = |i| Polynomial::var(n, i);
    let sq = |i| {
        let v = var(i);
        &v * &v
    };
    let block_sq = |b: usize| {
        let mut p = Polynomial::zero(n);
        for i in 0..d {
            p = &p + &sq(b * d + i);
        }
        p
    };
    let r3 = Scalar::sqrt3();
    let mut u = &sq(x2) * &var(x2);
    let mut inner = &block_sq(0) + &block_sq(1);
    inner.add_assign_scaled(&block_sq(2), &int(-2));
    inner.add_assign_scaled(&sq(x1), &int(-2));
    u.add_product(&var(x2), &inner, &Scalar::frac(3, 2));
    let diff = &block_sq(1) - &block_sq(0);
    u.add_product(&var(x1), &diff, &(&Scalar::frac(3, 2) * &r3));
    if d > 0 {
        // Re((z₁z₂)z₃) = Σ z₁ₐ z₂ᵦ z₃꜀ Re((eₐeᵦ)e꜀)
        let mut re = Polynomial::zero(n);
        for a in 0..d {
            for b in 0..d {
                let ab = cd_mul(&basis_vector(d, a), &basis_vector(d, b));
                for c in 0..d {
                    let coeff = cd_mul(&ab, &basis_vector(d, c))[0].clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let t = &(&var(a) * &var(d + b)) * &var(2 * d + c);
                    re.add_assign_scaled(&t, &coeff);
                }
            }
        }
        u.add_assign_scaled(&re, &(&int(3) * &r3));
    }
    let u = CubicForm::new(u)?;
    let alg = algebra_from_cubic(&u, &Matrix::identity(n), &format!("cartan({d})"))?;
    Ok((u, alg))
}

/// The triple `T(A)` on `A × A × A` with the cyclic twisted product,
/// metric `blockdiag(h, h, h)` and identity involution.
pub fn triple(alg: &Algebra) -> Algebra {
    let n = alg.dim();
    let s = |v: &[Scalar]| alg.conj(v);
    let product = |i: usize, j: usize| {
        let (x, y) = (basis_vector(3 * n, i), basis_vector(3 * n, j));
        let xb: Vec<Vector> = (0..3).map(|b| s(&x[b * n..(b + 1) * n])).collect();
        let yb: Vec<Vector> = (0..3).map(|b| s(&y[b * n..(b + 1) * n])).collect();
        let mut out = Vec::with_capacity(3 * n);
        for (p, q) in [(2, 1), (0, 2), (1, 0)] {
            // component t: x_pᶿ ⋄ y_qᶿ + y_pᶿ ⋄ x_qᶿ
            let mut v = zero_vector(n);
            if !crate::linalg::is_zero_vector(&xb[p]) && !crate::linalg::is_zero_vector(&yb[q]) {
                v = vec_add(&v, &alg.mul(&xb[p], &yb[q]));
            }
            if !crate::linalg::is_zero_vector(&yb[p]) && !crate::linalg::is_zero_vector(&xb[q]) {
                v = vec_add(&v, &alg.mul(&yb[p], &xb[q]));
            }
            out.extend(v);
        }
        out
    };
    let g = alg.metric();
    let metric =
        Matrix::from_fn(3 * n, 3 * n, |i, j| if i / n == j / n { g[(i % n, j % n)].clone() } else { Scalar::ZERO });
    Algebra::from_products(format!("triple({})", alg.name()), 3 * n, product, metric, None)
        .expect("triple of a valid algebra is valid")
}

/// Coordinates of the `t`-th block (`0`, `1`, `2`) of a triple of an
/// `n`-dimensional algebra.
pub fn triple_block(n: usize, t: usize) -> Vec<usize> {
    (t * n..(t + 1) * n).collect()
}

/// Parsed catalog name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogName {
    Hurwitz(usize),
    ParaHurwitz(usize),
    ParaComplex,
    Cross(usize),
    Color,
    Clifford(usize, usize),
    Cartan(usize),
    Diagonal(usize),
    Triple(Box<CatalogName>),
}

impl CatalogName {
    pub fn parse(text: &str) -> Result<CatalogName, CatalogError> {
        let t = text.trim();
        let unknown = || CatalogError::UnknownName(text.trim().to_string());
        let (head, args) = match t.find('(') {
            Some(open) => {
                if !t.ends_with(')') {
                    return Err(unknown());
                }
                (&t[..open], Some(&t[open + 1..t.len() - 1]))
            }
            None => (t, None),
        };
        let ints = |a: &str| -> Result<Vec<usize>, CatalogError> {
            a.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| unknown())).collect()
        };
        Ok(match (head.trim(), args) {
            ("R", None) => CatalogName::Hurwitz(1),
            ("C", None) => CatalogName::Hurwitz(2),
            ("H", None) => CatalogName::Hurwitz(4),
            ("O", None) => CatalogName::Hurwitz(8),
            ("paraC", None) => CatalogName::ParaComplex,
            ("cross3", None) => CatalogName::Cross(3),
            ("cross7", None) => CatalogName::Cross(7),
            ("color", None) => CatalogName::Color,
            ("paraH", Some(a)) => match ints(a)?.as_slice() {
                [d] => CatalogName::ParaHurwitz(*d),
                _ => return Err(unknown()),
            },
            ("clifford", Some(a)) => match ints(a)?.as_slice() {
                [p, q] => CatalogName::Clifford(*p, *q),
                _ => return Err(unknown()),
            },
            ("cartan", Some(a)) => match ints(a)?.as_slice() {
                [d] => CatalogName::Cartan(*d),
                _ => return Err(unknown()),
            },
            ("diag", Some(a)) => match ints(a)?.as_slice() {
                [n] if *n >= 1 => CatalogName::Diagonal(*n),
                _ => return Err(unknown()),
            },
            ("triple", Some(a)) => CatalogName::Triple(Box::new(CatalogName::parse(a)?)),
            _ => return Err(unknown()),
        })
    }

    pub fn build(&self) -> Result<Algebra, CatalogError> {
        match self {
            CatalogName::Hurwitz(d) => hurwitz(*d, false),
            CatalogName::ParaHurwitz(d) => hurwitz(*d, true),
            CatalogName::ParaComplex => Ok(para_complex()),
            CatalogName::Cross(d) => cross_product(*d),
            CatalogName::Color => Ok(vector_color()),
            CatalogName::Clifford(p, q) => Ok(polar_from_clifford(&clifford_system(*p, *q)?)),
            CatalogName::Cartan(d) => Ok(cartan_cubic(*d)?.1),
            CatalogName::Diagonal(n) => Ok(diagonal(*n)),
            CatalogName::Triple(inner) => Ok(triple(&inner.build()?)),
        }
    }
}

/// Builds a catalog algebra from its name, e.g. `triple(cross7)`.
pub fn from_name(name: &str) -> Result<Algebra, CatalogError> {
    CatalogName::parse(name)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::cartan_munzner_check;

    #[test]
    fn rho_values() {
        assert_eq!(rho(1), 1);
        assert_eq!(rho(2), 2);
        assert_eq!(rho(4), 4);
        assert_eq!(rho(8), 8);
        assert_eq!(rho(16), 9);
        assert_eq!(rho(3), 1);
        assert_eq!(rho(32), 10);
    }

    #[test]
    fn quaternion_table() {
        let h = hurwitz(4, false).unwrap();
        assert_eq!(h.basis_product(1, 2), &[(3, Scalar::ONE)]);
        assert_eq!(h.basis_product(2, 1), &[(3, int(-1))]);
        assert_eq!(h.involution(), &Matrix::diagonal(&[int(1), int(-1), int(-1), int(-1)]));
        let r = hurwitz(1, false).unwrap();
        assert_eq!(r.basis_product(0, 0), &[(0, Scalar::ONE)]);
    }

    #[test]
    fn para_hurwitz_of_dim_two_is_paracomplex_table() {
        let p = hurwitz(2, true).unwrap();
        let q = para_complex();
        assert!(p.structure_entries().eq(q.structure_entries()));
    }

    #[test]
    fn cross_and_color_examples() {
        let c3 = cross_product(3).unwrap();
        assert_eq!(c3.basis_product(0, 1), &[(2, Scalar::ONE)]);
        let c7 = cross_product(7).unwrap();
        let e1 = basis_vector(7, 0);
        let e2 = basis_vector(7, 1);
        let lhs = c7.mul(&e1, &c7.mul(&e1, &e2));
        assert_eq!(lhs, vec_scale(&e2, &int(-1)));
        let col = vector_color();
        assert_eq!(col.basis_product(0, 1), &[(2, Scalar::ONE)]);
        assert_eq!(col.basis_product(3, 4), &[(2, int(-1))]);
        for i in 0..6 {
            for j in 0..6 {
                let a = col.mul(&basis_vector(6, i), &basis_vector(6, j));
                let b = col.mul(&basis_vector(6, j), &basis_vector(6, i));
                assert_eq!(a, vec_scale(&b, &int(-1)));
            }
        }
    }

    #[test]
    fn clifford_systems() {
        let s = clifford_system(1, 2).unwrap();
        assert_eq!(s.matrices[0], small(&[&[1, 0], &[0, -1]]));
        assert_eq!(s.matrices[1], small(&[&[0, 1], &[1, 0]]));
        for (p, q) in [(2, 3), (4, 5), (8, 9), (16, 10), (3, 2), (12, 5)] {
            assert!(clifford_system(p, q).unwrap().satisfies_relations());
        }
        match clifford_system(1, 3) {
            Err(CatalogError::Inadmissible(m)) => assert_eq!(m, "q−1 ≤ ρ(p) violated: ρ(1)=1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cartan_zero_and_one() {
        let (u, alg) = cartan_cubic(0).unwrap();
        assert_eq!(u.polynomial().to_string(), Polynomial::parse_with_nvars("x2^3-3*x1^2*x2", 2).unwrap().to_string());
        assert_eq!(alg.dim(), 2);
        let (u1, a1) = cartan_cubic(1).unwrap();
        assert_eq!(a1.dim(), 5);
        assert!(cartan_munzner_check(&u1, &int(9)).pass);
        assert_eq!(cartan_cubic(2).unwrap().1.field_tag(), crate::algebra::FieldTag::Qr3);
    }

    #[test]
    fn names_round_trip() {
        assert_eq!(from_name("triple(cross7)").unwrap().dim(), 21);
        assert_eq!(from_name("triple(color)").unwrap().dim(), 18);
        assert!(matches!(from_name("bogus"), Err(CatalogError::UnknownName(_))));
        assert!(matches!(from_name("clifford(1,3)"), Err(CatalogError::Inadmissible(_))));
        assert!(matches!(from_name("triple(O"), Err(CatalogError::UnknownName(_))));
    }
}
