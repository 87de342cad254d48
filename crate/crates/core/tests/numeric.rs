use coneforge::analysis::numeric::h_f64;
use coneforge::analysis::{
    find_idempotent, jordan_mutation, killing_metrized_check, nilpotent_search, peirce, SpectrumMatch,
};
use coneforge::catalog::{self, triple};
use coneforge::{Algebra, Matrix};

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn idempotent_of_real_triple() {
    let t = triple(&catalog::hurwitz(1, false).unwrap());
    let found = find_idempotent(&t, 20, 7).unwrap();
    assert!(!found.is_empty());
    // 2x₂x₃ = x₁ cyclically: (½, ½, ½) up to sign changes of two coordinates.
    for c in &found {
        assert!(c.residual <= 1e-10);
        assert!(c.c.iter().all(|v| (v.abs() - 0.5).abs() < 1e-9), "{:?}", c.c);
    }
}

#[test]
fn idempotent_of_cartan_zero() {
    let c0 = catalog::cartan_cubic(0).unwrap().1;
    let found = find_idempotent(&c0, 20, 3).unwrap();
    assert!(found.iter().any(|c| close(&c.c, &[0.0, 1.0 / 6.0], 1e-10)));
    for c in &found {
        assert!((h_f64(&c0, &c.c, &c.c) - 1.0 / 36.0).abs() < 1e-10);
    }
}

#[test]
fn zero_algebra_has_no_idempotent() {
    let z = Algebra::new("0", 3, [], Matrix::identity(3), None).unwrap();
    assert!(find_idempotent(&z, 10, 0).unwrap().is_empty());
}

#[test]
fn peirce_examples() {
    let cases = [("triple(O)", [1, 7, 2, 14], Some(0)), ("triple(cross7)", [1, 4, 5, 11], Some(1))];
    for (name, mult, d) in cases {
        let alg = catalog::from_name(name).unwrap();
        let c = &find_idempotent(&alg, 10, 1).unwrap()[0];
        let p = peirce(&alg, &c.c).unwrap();
        assert_eq!(p.multiplicities(), Some(mult), "{name}");
        assert_eq!(p.d, d, "{name}");
        assert!((p.idempotent_norm - 0.75).abs() < 1e-9);
    }
    let c0 = catalog::cartan_cubic(0).unwrap().1;
    let p = peirce(&c0, &[0.0, 1.0 / 6.0]).unwrap();
    assert_eq!(p.spectrum, SpectrumMatch::Exact);
    assert_eq!((p.n1, p.n2, p.d), (Some(1), Some(0), None));
}

#[test]
fn non_hsiang_spectrum_is_flagged() {
    let d = catalog::diagonal(3);
    let p = peirce(&d, &[1.0, 0.0, 0.0]).unwrap();
    // L(e₁) = diag(1, 0, 0) has an eigenvalue 0 outside the four-point spectrum.
    assert_eq!(p.spectrum, SpectrumMatch::Mismatch);
    assert_eq!(p.multiplicities(), None);
}

#[test]
fn jordan_examples() {
    let t = triple(&catalog::hurwitz(1, false).unwrap());
    let c = &find_idempotent(&t, 10, 2).unwrap()[0];
    let j = jordan_mutation(&t, &c.c, 0).unwrap();
    assert_eq!(j.dim_b, 3);
    assert!(j.pass());

    let c1 = catalog::cartan_cubic(1).unwrap().1;
    let c = &find_idempotent(&c1, 10, 2).unwrap()[0];
    let j = jordan_mutation(&c1, &c.c, 0).unwrap();
    assert_eq!(j.dim_b, 1);
    assert!(j.pass());

    let t7 = triple(&catalog::cross_product(7).unwrap());
    let c = &find_idempotent(&t7, 10, 2).unwrap()[0];
    let j = jordan_mutation(&t7, &c.c, 0).unwrap();
    assert_eq!((j.dim_b, j.trace_form_rank), (6, 6));
    assert!(j.pass());
}

#[test]
fn nilpotent_examples() {
    let t = triple(&catalog::hurwitz(1, false).unwrap());
    let found = nilpotent_search(&t, 20, 0).unwrap();
    assert!(found.iter().any(|v| (v[0].abs() - 1.0).abs() < 1e-8 && v[1].abs() < 1e-8 && v[2].abs() < 1e-8));
    assert!(nilpotent_search(&catalog::cartan_cubic(0).unwrap().1, 20, 0).unwrap().is_empty());

    let sys = catalog::clifford_system(1, 2).unwrap();
    let alg = catalog::polar_from_clifford(&sys);
    let zero_block = catalog::clifford_zero_block(&sys);
    let found = nilpotent_search(&alg, 30, 0).unwrap();
    assert!(found.iter().any(|v| (0..v.len()).filter(|i| !zero_block.contains(i)).all(|i| v[i].abs() < 1e-7)));
}

#[test]
fn killing_inference_from_peirce_data() {
    let t = triple(&catalog::cross_product(3).unwrap());
    let c = &find_idempotent(&t, 10, 4).unwrap()[0];
    let p = peirce(&t, &c.c).unwrap();
    assert_eq!(p.n2, Some(5));
    let k = killing_metrized_check(&t, Some(&p));
    assert!(k.metrized);
    assert!(k.inference.unwrap().contains("exceptional"));

    let t = triple(&catalog::hurwitz(8, false).unwrap());
    let c = &find_idempotent(&t, 10, 4).unwrap()[0];
    let p = peirce(&t, &c.c).unwrap();
    assert!(killing_metrized_check(&t, Some(&p)).inference.unwrap().contains("mutant"));
}
