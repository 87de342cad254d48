//! Verification and structure extraction: Hsiang identities, defect,
//! polar axioms, Killing metrizability, pseudocomposition and the numeric
//! Peirce pipeline.

mod full;
mod hsiang;
mod killing;
pub mod numeric;
mod polar;
mod pseudo;
mod quasi;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};

pub use full::{full_report, FullOptions, FullReport};
pub use hsiang::{
    degeneracy_check, nonradial_hsiang_check, normalize_theta, radial_hsiang_check, DegeneracyReport, HsiangMethod,
    HsiangReport,
};
pub use killing::{killing_metrized_check, KillingReport};
pub use numeric::{
    find_idempotent, jordan_mutation, nilpotent_search, peirce, Idempotent, JordanReport, PeirceData, SpectrumMatch,
};
pub use polar::{verify_polar, PolarReport};
pub use pseudo::{pseudocomposition_check, PseudoReport};
pub use quasi::{quasicomposition_check, DefectReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("metric is not positive definite")]
    NotEuclidean,
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("algebra is not metrized: {0}")]
    NotMetrized(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("scale is not representable in Q(r3): {0}")]
    UnrepresentableScale(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Randomization and sweep controls shared by the exact checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    pub seed: u64,
    /// Force the exhaustive identity check above the size threshold.
    pub exhaustive: bool,
}

/// Dimension above which the degree-5 identity is checked at random points
/// unless `exhaustive` is set.
pub const EXHAUSTIVE_DIM_LIMIT: usize = 32;
/// Number of random evaluation points used above the limit.
pub const RANDOM_POINTS: usize = 64;

fn require_commutative_metrized(alg: &Algebra) -> Result<(), AnalysisError> {
    if !alg.is_commutative() {
        return Err(AnalysisError::NotCommutative);
    }
    let r = alg.check_metrized();
    if !r.pass {
        return Err(AnalysisError::NotMetrized(r.witness.unwrap_or_default()));
    }
    Ok(())
}

fn require_euclidean(alg: &Algebra) -> Result<(), AnalysisError> {
    if alg.metric().is_positive_definite() {
        Ok(())
    } else {
        Err(AnalysisError::NotEuclidean)
    }
}

/// Random integer point in `[−7, 7]ⁿ`.
fn random_point(rng: &mut impl rand::Rng, n: usize) -> crate::linalg::Vector {
    (0..n).map(|_| crate::scalar::Scalar::from_int(rng.gen_range(-7..=7))).collect()
}

fn format_tuple(m: &[u16]) -> String {
    let parts: Vec<String> = m.iter().map(|v| format!("e{}", v + 1)).collect();
    format!("({})", parts.join(", "))
}
