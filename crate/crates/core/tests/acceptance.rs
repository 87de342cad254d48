//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use coneforge::algebra::Algebra;
use coneforge::analysis::numeric::h_f64;
use coneforge::analysis::{
    find_idempotent, jordan_mutation, killing_metrized_check, nilpotent_search, nonradial_hsiang_check,
    normalize_theta, peirce, pseudocomposition_check, quasicomposition_check, radial_hsiang_check, verify_polar,
    HsiangMethod, SweepOptions,
};
use coneforge::catalog::{self, clifford_system, clifford_zero_block, polar_from_clifford, triple};
use coneforge::cubic::cartan_munzner_check;
use coneforge::{Scalar, Subspace};

type Outcome = Result<String, String>;

const SEED: u64 = 2024;

fn opts() -> SweepOptions {
    SweepOptions { seed: SEED, exhaustive: false }
}

fn build(name: &str) -> Algebra {
    catalog::from_name(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Quasicomposition algebras of the catalog with their expected defects.
fn quasicomposition_catalog() -> Vec<(&'static str, usize)> {
    vec![
        ("R", 0),
        ("C", 0),
        ("H", 0),
        ("O", 0),
        ("paraC", 0),
        ("paraH(1)", 0),
        ("paraH(2)", 0),
        ("cross3", 1),
        ("cross7", 1),
        ("color", 2),
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_composition() -> Outcome {
    for d in [1usize, 2, 4, 8] {
        let a = catalog::hurwitz(d, false).map_err(|e| e.to_string())?;
        let r = quasicomposition_check(&a, opts()).map_err(|e| format!("hurwitz({d}): {e}"))?;
        ensure(r.defect == Some(0), || format!("hurwitz({d}): δ = {:?}", r.defect))?;
        let expected = a.metric().scale(&Scalar::from_int(d as i64));
        ensure(a.trace_form_twisted() == expected, || format!("hurwitz({d}): trace L(x)L(xᶿ) ≠ {d}·h(x,x)"))?;
    }
    Ok("δ = 0 and trace L(x)L(xᶿ) = d·h(x,x) for d = 1, 2, 4, 8".into())
}

fn c2_defects() -> Outcome {
    let mut parts = Vec::new();
    for (name, delta) in [("cross3", 1), ("cross7", 1), ("color", 2), ("paraC", 0), ("paraH(1)", 0), ("paraH(2)", 0)] {
        let r = quasicomposition_check(&build(name), opts()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.defect == Some(delta), || format!("{name}: δ = {:?}, expected {delta}", r.defect))?;
        ensure(r.kernel_dim_samples.len() == 3 && r.kernel_dim_samples.iter().all(|&k| k == delta), || {
            format!("{name}: kernel dimensions {:?}", r.kernel_dim_samples)
        })?;
        parts.push(format!("{name}={delta}"));
    }
    Ok(parts.join(", "))
}

/// paraH(4) and paraH(8) with the identity involution are not quasicomposition.
fn c2_para_quaternion_note() -> String {
    ["paraH(4)", "paraH(8)"]
        .iter()
        .map(|name| {
            let verdict = match quasicomposition_check(&build(name), opts()) {
                Ok(r) if r.is_quasicomposition => format!("δ = {:?}", r.defect),
                Ok(_) => "identity fails".to_string(),
                Err(e) => e.to_string(),
            };
            format!("{name}: {verdict}")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn c3_triples_radial() -> Outcome {
    let exhaustive = SweepOptions { seed: SEED, exhaustive: true };
    for (name, _) in quasicomposition_catalog() {
        let t = triple(&build(name));
        let r = radial_hsiang_check(&t, exhaustive).map_err(|e| format!("triple({name}): {e}"))?;
        ensure(r.method == HsiangMethod::Exhaustive, || format!("triple({name}): not exhaustive"))?;
        ensure(r.radial == Some(Scalar::frac(4, 3)), || format!("triple({name}): θ = {:?}", r.radial))?;
    }
    Ok(format!("θ = 4/3 exactly on {} triples", quasicomposition_catalog().len()))
}

fn c4_converse() -> Outcome {
    let t = triple(&catalog::diagonal(2));
    let r = radial_hsiang_check(&t, opts()).map_err(|e| e.to_string())?;
    ensure(r.radial.is_none() && r.witness.is_some(), || "radial identity unexpectedly holds".into())?;
    let nr = nonradial_hsiang_check(&t, opts()).map_err(|e| e.to_string())?;
    ensure(nr.nonradial_b.is_none() && nr.witness.is_some(), || "nonradial identity unexpectedly holds".into())?;
    Ok(format!("radial witness: {}; nonradial witness: {}", r.witness.unwrap(), nr.witness.unwrap()))
}

/// `(name, n, n₁, n₂)` rows of the Peirce table.
fn peirce_rows() -> Vec<(&'static str, usize, usize, usize)> {
    vec![
        ("triple(cross3)", 9, 0, 5),
        ("triple(cross7)", 21, 4, 5),
        ("triple(color)", 18, 1, 8),
        ("triple(R)", 3, 0, 2),
        ("triple(C)", 6, 1, 2),
        ("triple(H)", 12, 3, 2),
        ("triple(O)", 24, 7, 2),
        ("cartan(0)", 2, 1, 0),
        ("cartan(1)", 5, 2, 0),
        ("cartan(2)", 8, 3, 0),
        ("cartan(4)", 14, 5, 0),
        ("cartan(8)", 26, 9, 0),
    ]
}

fn c5_peirce_table() -> Outcome {
    for (name, n, n1, n2) in peirce_rows() {
        let alg = build(name);
        ensure(alg.dim() == n, || format!("{name}: dim {}", alg.dim()))?;
        let found = find_idempotent(&alg, 20, SEED).map_err(|e| format!("{name}: {e}"))?;
        ensure(!found.is_empty(), || format!("{name}: no idempotent"))?;
        for c in &found {
            ensure(c.residual <= 1e-10, || format!("{name}: residual {:.3e}", c.residual))?;
            let p = peirce(&alg, &c.c).map_err(|e| format!("{name}: {e}"))?;
            ensure(p.n1 == Some(n1) && p.n2 == Some(n2) && p.relations_hold, || {
                format!("{name}: (n₁, n₂) = ({:?}, {:?}), spectrum {:?}", p.n1, p.n2, p.eigenvalues)
            })?;
        }
    }
    Ok(format!("{} rows match, all idempotent residuals ≤ 1e-10", peirce_rows().len()))
}

fn c6_defect_equals_hurwitz_dimension() -> Outcome {
    let mut parts = Vec::new();
    for (name, _) in quasicomposition_catalog() {
        let a = build(name);
        let delta = quasicomposition_check(&a, opts()).map_err(|e| format!("{name}: {e}"))?.defect;
        let t = triple(&a);
        let found = find_idempotent(&t, 20, SEED).map_err(|e| format!("triple({name}): {e}"))?;
        let c = found.first().ok_or_else(|| format!("triple({name}): no idempotent"))?;
        let d = peirce(&t, &c.c).map_err(|e| format!("triple({name}): {e}"))?.d;
        ensure(delta.is_some() && delta == d, || format!("{name}: δ = {delta:?}, d(triple) = {d:?}"))?;
        parts.push(format!("{name}:{}", d.unwrap()));
    }
    Ok(format!("δ(A) = d(T(A)) for {}", parts.join(" ")))
}

fn c7_cartan_munzner() -> Outcome {
    for d in [0usize, 1, 2, 4, 8] {
        let (u, _) = catalog::cartan_cubic(d).map_err(|e| e.to_string())?;
        let r = cartan_munzner_check(&u, &Scalar::from_int(9));
        ensure(r.pass, || format!("cartan({d}): {}", r.witness.clone().unwrap_or_default()))?;
    }
    Ok("|Du|² = 9|x|⁴ with zero residual for d = 0, 1, 2, 4, 8".into())
}

fn hsiang_catalog() -> Vec<String> {
    let mut names: Vec<String> = quasicomposition_catalog().iter().map(|(n, _)| format!("triple({n})")).collect();
    names.extend([0, 1, 2, 4, 8].iter().map(|d| format!("cartan({d})")));
    names.extend(["clifford(1,2)", "clifford(2,3)", "clifford(4,5)", "clifford(8,9)"].map(String::from));
    names
}

fn c8_idempotent_length() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in hsiang_catalog() {
        let alg = build(&name);
        let theta = radial_hsiang_check(&alg, opts())
            .map_err(|e| format!("{name}: {e}"))?
            .radial
            .filter(|t| t.is_positive())
            .ok_or_else(|| format!("{name}: not radial with θ > 0"))?;
        for (label, a, target) in [
            ("", alg.clone(), 1.0 / theta.to_f64()),
            (" normalized", normalize_theta(&alg, opts()).map_err(|e| format!("{name}: {e}"))?, 0.75),
        ] {
            let found = find_idempotent(&a, 20, SEED).map_err(|e| format!("{name}: {e}"))?;
            ensure(!found.is_empty(), || format!("{name}{label}: no idempotent"))?;
            for c in &found {
                let err = (h_f64(&a, &c.c, &c.c) - target).abs();
                worst = worst.max(err);
                ensure(err <= 1e-8, || format!("{name}{label}: |h(c,c) − {target}| = {err:.3e}"))?;
            }
        }
    }
    Ok(format!("{} algebras, max deviation {worst:.2e}", hsiang_catalog().len()))
}

fn c9_killing() -> Outcome {
    for (p, q) in [(1, 2), (2, 3)] {
        let alg = polar_from_clifford(&clifford_system(p, q).map_err(|e| e.to_string())?);
        let k = killing_metrized_check(&alg, None);
        ensure(!k.invariant, || format!("clifford({p},{q}): κ unexpectedly invariant"))?;
    }
    for (name, delta) in quasicomposition_catalog() {
        let a = build(name);
        let k = killing_metrized_check(&triple(&a), None);
        let expected = Scalar::from_int(2 * (a.dim() - delta) as i64);
        ensure(k.metrized && k.multiple_of_metric.as_ref() == Some(&expected), || {
            format!("triple({name}): metrized = {}, κ/h = {:?}", k.metrized, k.multiple_of_metric)
        })?;
    }
    Ok("regular polar algebras fail invariance; κ = 2(dim A − δ)·H on every triple".into())
}

fn c10_clifford() -> Outcome {
    for (p, q) in [(1, 2), (2, 3), (4, 5), (8, 9)] {
        let sys = clifford_system(p, q).map_err(|e| e.to_string())?;
        ensure(sys.satisfies_relations(), || format!("({p},{q}): relations fail"))?;
        let alg = polar_from_clifford(&sys);
        let a0 = Subspace::coordinate(alg.dim(), &clifford_zero_block(&sys));
        let pr = verify_polar(&alg, &a0).map_err(|e| format!("({p},{q}): {e}"))?;
        ensure(pr.pass, || format!("({p},{q}): polar axiom {:?} fails: {:?}", pr.failed_axiom, pr.witness))?;
        let r = radial_hsiang_check(&alg, opts()).map_err(|e| format!("({p},{q}): {e}"))?;
        ensure(r.radial == Some(Scalar::frac(4, 3)), || format!("({p},{q}): θ = {:?}", r.radial))?;
    }
    Ok("relations, polar axioms and θ = 4/3 for (1,2), (2,3), (4,5), (8,9)".into())
}

fn c11_eikonal() -> Outcome {
    let pc = pseudocomposition_check(&catalog::para_complex()).map_err(|e| e.to_string())?;
    ensure(pc.eikonal && pc.theta_prime == Some(Scalar::ONE), || format!("paraC: θ′ = {:?}", pc.theta_prime))?;
    let c0 = pseudocomposition_check(&build("cartan(0)")).map_err(|e| e.to_string())?;
    ensure(c0.eikonal && c0.theta_prime == Some(Scalar::from_int(36)), || {
        format!("cartan(0): θ′ = {:?}", c0.theta_prime)
    })?;
    for d in [0, 1, 2, 4, 8] {
        let found = nilpotent_search(&build(&format!("cartan({d})")), 20, SEED).map_err(|e| e.to_string())?;
        ensure(found.is_empty(), || format!("cartan({d}): {} nilpotent directions", found.len()))?;
    }
    for (name, _) in quasicomposition_catalog() {
        let found = nilpotent_search(&triple(&build(name)), 20, SEED).map_err(|e| e.to_string())?;
        ensure(!found.is_empty(), || format!("triple({name}): no 2-nilpotent found"))?;
    }
    Ok("θ′ = 1 (paraC), 36 (cartan(0)); no 2-nilpotents on cartan(d); found on every triple".into())
}

fn c12_jordan() -> Outcome {
    let mut parts = Vec::new();
    for name in ["triple(cross7)", "triple(color)", "triple(O)"] {
        let alg = build(name);
        let found = find_idempotent(&alg, 20, SEED).map_err(|e| e.to_string())?;
        let c = found.first().ok_or_else(|| format!("{name}: no idempotent"))?;
        let p = peirce(&alg, &c.c).map_err(|e| e.to_string())?;
        let n2 = p.n2.ok_or_else(|| format!("{name}: no n₂"))?;
        let j = jordan_mutation(&alg, &c.c, SEED).map_err(|e| e.to_string())?;
        ensure(j.closes, || format!("{name}: closure error {:.3e}", j.closure_error))?;
        ensure(j.jordan_holds, || format!("{name}: Jordan defect {:.3e}", j.jordan_defect))?;
        ensure(j.dim_b == n2 + 1, || format!("{name}: dim B = {}, n₂ + 1 = {}", j.dim_b, n2 + 1))?;
        parts.push(format!("{name}: dim B = {}", j.dim_b));
    }
    Ok(parts.join(", "))
}

type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("C1", "composition identities", Duration::from_secs(1), c1_composition),
        ("C2", "defect table", Duration::from_secs(2), c2_defects),
        ("C3", "triples are radial with θ = 4/3", Duration::from_secs(90), c3_triples_radial),
        ("C4", "triple of diag(2) fails both Hsiang checks", Duration::from_secs(5), c4_converse),
        ("C5", "Peirce dimension table", Duration::from_secs(60), c5_peirce_table),
        ("C6", "defect equals Hurwitz dimension", Duration::from_secs(60), c6_defect_equals_hurwitz_dimension),
        ("C7", "Cartan–Münzner identity", Duration::from_secs(10), c7_cartan_munzner),
        ("C8", "idempotent length", Duration::from_secs(120), c8_idempotent_length),
        ("C9", "Killing dichotomy", Duration::from_secs(60), c9_killing),
        ("C10", "Clifford systems", Duration::from_secs(60), c10_clifford),
        ("C11", "eikonal suite", Duration::from_secs(60), c11_eikonal),
        ("C12", "Jordan mutation", Duration::from_secs(60), c12_jordan),
    ];
    let mut failures = 0;
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (tag, detail) = match &outcome {
            Ok(d) if elapsed <= budget => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; over budget {budget:?}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!("[{tag}] {id} {title} ({:.2} s): {detail}", elapsed.as_secs_f64());
        if id == "C2" {
            println!("       note: {}", c2_para_quaternion_note());
        }
    }
    if failures == 0 {
        println!("all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
