//! Consolidated report over all checks.

use super::hsiang::{degeneracy_check, nonradial_hsiang_check, radial_hsiang_check, DegeneracyReport, HsiangReport};
use super::killing::{killing_metrized_check, KillingReport};
use super::numeric::{find_idempotent, peirce, PeirceData};
use super::pseudo::{pseudocomposition_check, PseudoReport};
use super::quasi::{quasicomposition_check, DefectReport};
use super::{AnalysisError, SweepOptions};
use crate::algebra::Algebra;
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullOptions {
    pub seed: u64,
    pub exhaustive: bool,
    /// Run the idempotent search and Peirce pipeline.
    pub peirce: bool,
    pub restarts: usize,
}

impl Default for FullOptions {
    fn default() -> Self {
        FullOptions { seed: 0, exhaustive: false, peirce: false, restarts: 20 }
    }
}

impl FullOptions {
    fn sweep(&self) -> SweepOptions {
        SweepOptions { seed: self.seed, exhaustive: self.exhaustive }
    }
}

/// `δ(source)` against the Hurwitz dimension `d` of its triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectCrossCheck {
    pub source: String,
    pub source_defect: Option<usize>,
    pub hurwitz_dimension: Option<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FullReport {
    pub name: String,
    pub dim: usize,
    pub metrized: Report,
    pub commutative: bool,
    pub euclidean: bool,
    pub unit: Option<Vec<Scalar>>,
    pub exact: bool,
    pub quasicomposition: Option<DefectReport>,
    pub radial: Option<HsiangReport>,
    pub nonradial: Option<HsiangReport>,
    pub degeneracy: Option<DegeneracyReport>,
    pub pseudo: Option<PseudoReport>,
    pub killing: KillingReport,
    pub peirce: Option<PeirceData>,
    pub idempotents_found: usize,
    pub cross_check: Option<DefectCrossCheck>,
    pub notes: Vec<String>,
}

impl FullReport {
    /// One report per check that ran, in a stable order.
    pub fn to_reports(&self) -> Vec<Report> {
        let mut out = vec![self.metrized.clone()];
        let mut basics = Report::new("structure", true);
        basics.note(format!("dim = {}, commutative = {}, euclidean = {}", self.dim, self.commutative, self.euclidean));
        match &self.unit {
            Some(e) => {
                let parts: Vec<String> = e.iter().map(|s| s.to_string()).collect();
                basics.note(format!("unital, e = ({})", parts.join(", ")));
            }
            None => basics.note("no unit"),
        }
        basics.note(format!("exact (trace L ≡ 0) = {}", self.exact));
        basics.notes.extend(self.notes.iter().cloned());
        out.push(basics);
        if let Some(q) = &self.quasicomposition {
            out.push(q.to_report());
        }
        if let Some(r) = &self.radial {
            out.push(r.to_report("hsiang"));
        }
        if let Some(r) = &self.nonradial {
            out.push(r.to_report("nonradial"));
        }
        if let Some(d) = &self.degeneracy {
            out.push(d.to_report());
        }
        if let Some(p) = &self.pseudo {
            out.push(p.to_report());
        }
        out.push(self.killing.to_report());
        if let Some(p) = &self.peirce {
            let mut r = Report::new("peirce", p.multiplicities().is_some() && p.relations_hold);
            r.n1 = p.n1;
            r.n2 = p.n2;
            r.d = p.d;
            r.note(format!("idempotents found: {}", self.idempotents_found));
            r.note(format!("residual = {:.3e}", p.residual));
            r.note(format!("h(c,c) = {:.10}", p.idempotent_norm));
            if let Some(m) = p.multiplicities() {
                r.note(format!("multiplicities of (1, −1, −1/2, 1/2) = ({}, {}, {}, {})", m[0], m[1], m[2], m[3]));
            }
            r.note(format!("spectrum: {:?}", p.spectrum));
            out.push(r);
        } else if self.idempotents_found == 0 && self.euclidean {
            out.push(Report::new("peirce", false).with_note("no idempotent found"));
        }
        if let Some(c) = &self.cross_check {
            let mut r = Report::new("defect-vs-hurwitz-dimension", c.agree);
            r.delta = c.source_defect;
            r.d = c.hurwitz_dimension;
            r.note(format!("source {}", c.source));
            out.push(r);
        }
        out
    }
}

/// Runs every applicable check. When `source` is given, `alg` is taken to
/// be its triple and `δ(source) = d(alg)` is cross-checked.
pub fn full_report(alg: &Algebra, source: Option<&Algebra>, opts: FullOptions) -> Result<FullReport, AnalysisError> {
    let sweep = opts.sweep();
    let metrized = alg.check_metrized();
    let commutative = alg.is_commutative();
    let euclidean = alg.metric().is_positive_definite();
    let unit = alg.find_unit();
    let exact = alg.is_exact();
    let mut notes = Vec::new();
    if let Some(e) = &unit {
        notes.push(format!("trace L(e) = {}", alg.trace_left(e)));
    }

    let quasicomposition = if metrized.pass { Some(quasicomposition_check(alg, sweep)?) } else { None };

    let hsiang_ready = commutative && metrized.pass && euclidean;
    let (radial, nonradial, degeneracy, pseudo) = if hsiang_ready {
        let radial = radial_hsiang_check(alg, sweep)?;
        let nonradial = nonradial_hsiang_check(alg, sweep)?;
        let degeneracy = if radial.radial.is_some() { Some(degeneracy_check(alg, sweep)?) } else { None };
        let pseudo = pseudocomposition_check(alg)?;
        (Some(radial), Some(nonradial), degeneracy, Some(pseudo))
    } else {
        notes.push("Hsiang checks need a commutative metrized Euclidean algebra".into());
        (None, None, None, None)
    };

    let mut peirce_data = None;
    let mut idempotents_found = 0;
    if opts.peirce && euclidean && commutative {
        let found = find_idempotent(alg, opts.restarts, opts.seed)?;
        idempotents_found = found.len();
        if let Some(best) = found.iter().min_by(|a, b| a.residual.total_cmp(&b.residual)) {
            peirce_data = Some(peirce(alg, &best.c)?);
        }
        if let Some(theta) = radial.as_ref().and_then(|r| r.radial.as_ref()).filter(|t| t.is_positive()) {
            let target = 1.0 / theta.to_f64();
            let worst =
                found.iter().map(|c| (super::numeric::h_f64(alg, &c.c, &c.c) - target).abs()).fold(0.0, f64::max);
            notes.push(format!("max |h(c,c) − 1/θ| over idempotents = {worst:.3e}"));
        }
    }
    let killing = killing_metrized_check(alg, peirce_data.as_ref());

    let cross_check = match source {
        Some(src) => {
            let source_defect =
                if src.check_metrized().pass { quasicomposition_check(src, sweep)?.defect } else { None };
            let hurwitz_dimension = peirce_data.as_ref().and_then(|p| p.d);
            if peirce_data.is_none() {
                notes.push("defect cross-check needs Peirce data".into());
            }
            Some(DefectCrossCheck {
                source: src.name().to_string(),
                source_defect,
                hurwitz_dimension,
                agree: source_defect.is_some() && source_defect == hurwitz_dimension,
            })
        }
        None => None,
    };

    Ok(FullReport {
        name: alg.name().to_string(),
        dim: alg.dim(),
        metrized,
        commutative,
        euclidean,
        unit,
        exact,
        quasicomposition,
        radial,
        nonradial,
        degeneracy,
        pseudo,
        killing,
        peirce: peirce_data,
        idempotents_found,
        cross_check,
        notes,
    })
}
