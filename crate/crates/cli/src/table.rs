//! Catalog sweep reproducing the Peirce dimensions of triples and of the
//! Cartan algebras.

use std::io::Write;

use coneforge::analysis::{
    find_idempotent, killing_metrized_check, peirce, quasicomposition_check, radial_hsiang_check, SweepOptions,
};
use coneforge::catalog::{self, triple};
use coneforge::{Algebra, Scalar};
use rayon::prelude::*;

use crate::{CliError, EXIT_FAIL, EXIT_PASS};

const RESTARTS: usize = 20;

/// `(name, dim, δ, n₁, n₂, d)` for triples of quasicomposition algebras.
const TRIPLE_ROWS: [(&str, usize, usize, usize, usize, usize); 8] = [
    ("R", 1, 0, 0, 2, 0),
    ("C", 2, 0, 1, 2, 0),
    ("H", 4, 0, 3, 2, 0),
    ("O", 8, 0, 7, 2, 0),
    ("paraC", 2, 0, 1, 2, 0),
    ("cross3", 3, 1, 0, 5, 1),
    ("cross7", 7, 1, 4, 5, 1),
    ("color", 6, 2, 1, 8, 2),
];

/// `(d, n, n₁, n₂)` for the Cartan algebras.
const CARTAN_ROWS: [(usize, usize, usize, usize); 5] =
    [(0, 2, 1, 0), (1, 5, 2, 0), (2, 8, 3, 0), (4, 14, 5, 0), (8, 26, 9, 0)];

type PeirceDims = (Option<usize>, Option<usize>, Option<usize>);

fn peirce_dims(alg: &Algebra, seed: u64) -> Result<PeirceDims, CliError> {
    let found = find_idempotent(alg, RESTARTS, seed).map_err(CliError::Analysis)?;
    let Some(c) = found.iter().min_by(|a, b| a.residual.total_cmp(&b.residual)) else {
        return Ok((None, None, None));
    };
    let p = peirce(alg, &c.c).map_err(CliError::Analysis)?;
    Ok((p.n1, p.n2, p.d))
}

fn show(v: Option<usize>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

struct Row {
    line: String,
    mismatch: Option<String>,
}

fn triple_row(
    (name, dim, delta, n1, n2, d): (&str, usize, usize, usize, usize, usize),
    seed: u64,
) -> Result<Row, CliError> {
    let opts = SweepOptions { seed, exhaustive: false };
    let a = catalog::from_name(name)?;
    let got_delta = quasicomposition_check(&a, opts).map_err(CliError::Analysis)?.defect;
    let t = triple(&a);
    let theta = radial_hsiang_check(&t, opts).map_err(CliError::Analysis)?.radial;
    let killing = killing_metrized_check(&t, None).metrized;
    let (g1, g2, gd) = peirce_dims(&t, seed)?;
    let kind = match g2 {
        Some(2) => "mutant",
        Some(_) => "exceptional",
        None => "?",
    };
    let agree = got_delta.is_some() && got_delta == gd;
    let line = format!(
        "{name:<7} {:>3} {:>3} | {:>3} {:>5} {:<7} ({:>2},{:>2}) {:>2} {:<11} {}",
        a.dim(),
        show(got_delta),
        t.dim(),
        theta.as_ref().map_or("-".into(), |s| s.to_string()),
        if killing { "yes" } else { "no" },
        show(g1),
        show(g2),
        show(gd),
        kind,
        if agree { "δ = d" } else { "δ ≠ d" },
    );
    let expected_ok = a.dim() == dim
        && got_delta == Some(delta)
        && t.dim() == 3 * dim
        && theta == Some(Scalar::frac(4, 3))
        && killing
        && (g1, g2, gd) == (Some(n1), Some(n2), Some(d))
        && agree;
    let mismatch = (!expected_ok).then(|| {
        format!(
            "row {name}: expected δ = {delta}, triple ({}, {n1}, {n2}), d = {d}, θ = 4/3, Killing metrized",
            3 * dim
        )
    });
    Ok(Row { line, mismatch })
}

fn cartan_row((d, n, n1, n2): (usize, usize, usize, usize), seed: u64) -> Result<Row, CliError> {
    let (_, alg) = catalog::cartan_cubic(d)?;
    let (g1, g2, _) = peirce_dims(&alg, seed)?;
    let line = format!("cartan({d}) ({:>2}, {}, {})", alg.dim(), show(g1), show(g2));
    let mismatch = (alg.dim() != n || (g1, g2) != (Some(n1), Some(n2)))
        .then(|| format!("row cartan({d}): expected ({n}, {n1}, {n2})"));
    Ok(Row { line, mismatch })
}

pub fn run(seed: u64, out: &mut dyn Write) -> Result<u8, CliError> {
    let triples: Vec<Row> = TRIPLE_ROWS.par_iter().map(|&r| triple_row(r, seed)).collect::<Result<_, _>>()?;
    let cartans: Vec<Row> = CARTAN_ROWS.par_iter().map(|&r| cartan_row(r, seed)).collect::<Result<_, _>>()?;
    writeln!(out, "algebra dim   δ | dim     θ killing (n1,n2)  d kind")?;
    for r in &triples {
        writeln!(out, "{}", r.line)?;
    }
    writeln!(out)?;
    writeln!(out, "cartan    (n, n1, n2)")?;
    for r in &cartans {
        writeln!(out, "{}", r.line)?;
    }
    let mismatches: Vec<&String> = triples.iter().chain(&cartans).filter_map(|r| r.mismatch.as_ref()).collect();
    for m in &mismatches {
        writeln!(out, "MISMATCH {m}")?;
    }
    Ok(if mismatches.is_empty() { EXIT_PASS } else { EXIT_FAIL })
}
