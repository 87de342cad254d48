use coneforge::analysis::{
    find_idempotent, normalize_theta, peirce, quasicomposition_check, radial_hsiang_check, SweepOptions,
};
use coneforge::catalog::{self, triple};
use coneforge::cubic::{algebra_from_cubic, cubic_from_algebra, hsiang_operator};
use coneforge::{multilinearize, Algebra, CubicForm, Matrix, Polynomial, Scalar, Vector};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
        .prop_map(|(a, b, c, d)| &Scalar::frac(a, b) + &(&Scalar::frac(c, d) * &Scalar::sqrt3()))
}

fn int_vec(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec((-6i64..=6).prop_map(Scalar::from_int), n)
}

fn cubic3() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-5i64..=5, 10).prop_map(|cs| {
        let mut p = Polynomial::zero(3);
        let mut idx = 0;
        for a in 0..=3u32 {
            for b in 0..=(3 - a) {
                p.add_term_exponents(&[a, b, 3 - a - b], Scalar::from_int(cs[idx]));
                idx += 1;
            }
        }
        p
    })
}

fn hsiang_algebras() -> Vec<Algebra> {
    vec![
        triple(&catalog::hurwitz(2, false).unwrap()),
        triple(&catalog::cross_product(3).unwrap()),
        catalog::cartan_cubic(0).unwrap().1,
        catalog::cartan_cubic(1).unwrap().1,
        catalog::polar_from_clifford(&catalog::clifford_system(1, 2).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.checked_inv().unwrap(), Scalar::ONE);
        }
    }

    #[test]
    fn format_parse_round_trip(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn multilinearize_is_symmetric(x in int_vec(6), y in int_vec(6), z in int_vec(6)) {
        let alg = triple(&catalog::hurwitz(2, false).unwrap());
        let f = |v: &[Scalar]| alg.h(&alg.mul(v, v), v);
        let xyz = multilinearize(f, &[x.clone(), y.clone(), z.clone()]);
        prop_assert_eq!(&xyz, &multilinearize(f, &[z.clone(), x.clone(), y.clone()]));
        prop_assert_eq!(&xyz, &multilinearize(f, &[y, x, z]));
    }

    #[test]
    fn euler_identity(p in cubic3(), x in int_vec(3)) {
        let grad = p.gradient();
        let lhs: Scalar = grad.iter().zip(&x).map(|(g, xi)| &g.eval(&x).unwrap() * xi).sum();
        prop_assert_eq!(lhs, &Scalar::from_int(3) * &p.eval(&x).unwrap());
    }

    #[test]
    fn cubic_round_trip(p in cubic3()) {
        let u = CubicForm::new(p).unwrap();
        let alg = algebra_from_cubic(&u, &Matrix::identity(3), "u").unwrap();
        prop_assert_eq!(cubic_from_algebra(&alg).unwrap(), u);
    }

    #[test]
    fn hsiang_operator_is_quintic(x in int_vec(9), t in -4i64..=4) {
        let alg = triple(&catalog::cross_product(3).unwrap());
        let tx: Vector = x.iter().map(|v| v * &Scalar::from_int(t)).collect();
        prop_assert_eq!(
            hsiang_operator(&alg, &tx).unwrap(),
            &Scalar::from_int(t).pow(5) * &hsiang_operator(&alg, &x).unwrap()
        );
    }

    #[test]
    fn hsiang_operator_is_radial(which in 0usize..5, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let alg = &hsiang_algebras()[which];
        let theta = radial_hsiang_check(alg, SweepOptions::default()).unwrap().radial.unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x: Vector = (0..alg.dim()).map(|_| Scalar::from_int(rng.gen_range(-5..=5))).collect();
        let u = cubic_from_algebra(alg).unwrap().eval(&x);
        let m = hsiang_operator(alg, &x).unwrap();
        let correction = &(&(&Scalar::frac(3, 2) * &theta) * &alg.h(&x, &x)) * &u;
        prop_assert!((&m + &correction).is_zero());
    }

    #[test]
    fn verdicts_survive_basis_permutation(perm in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
        let t = triple(&catalog::cross_product(3).unwrap());
        let p = t.permuted(&perm);
        let o = SweepOptions::default();
        prop_assert_eq!(
            radial_hsiang_check(&p, o).unwrap().radial,
            radial_hsiang_check(&t, o).unwrap().radial
        );
        let d = triple(&catalog::diagonal(2));
        let perm6: Vec<usize> = perm.iter().copied().filter(|&i| i < 6).collect();
        prop_assert!(radial_hsiang_check(&d.permuted(&perm6), o).unwrap().radial.is_none());
        let c = catalog::cross_product(3).unwrap();
        let perm3: Vec<usize> = perm.iter().copied().filter(|&i| i < 3).collect();
        prop_assert_eq!(quasicomposition_check(&c.permuted(&perm3), o).unwrap().defect, Some(1));
    }
}

#[test]
fn theta_scales_with_square_of_factor() {
    let c0 = catalog::cartan_cubic(0).unwrap().1;
    let r = radial_hsiang_check(&c0.scaled(&Scalar::from_int(2)), SweepOptions::default()).unwrap();
    assert_eq!(r.radial, Some(Scalar::from_int(4 * 36)));
}

#[test]
fn peirce_spectrum_is_scale_invariant() {
    let c0 = catalog::cartan_cubic(0).unwrap().1;
    let normalized = normalize_theta(&c0, SweepOptions::default()).unwrap();
    let before = peirce(&c0, &find_idempotent(&c0, 8, 1).unwrap()[0].c).unwrap();
    let after = peirce(&normalized, &find_idempotent(&normalized, 8, 1).unwrap()[0].c).unwrap();
    assert_eq!(before.multiplicities(), after.multiplicities());
    assert_eq!((before.n1, before.n2), (after.n1, after.n2));
    for ((a, ma), (b, mb)) in before.eigenvalues.iter().zip(&after.eigenvalues) {
        assert!((a - b).abs() < 1e-9);
        assert_eq!(ma, mb);
    }
}
