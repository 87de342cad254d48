//! Uniform verification outcome shared by every check.

use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub theta: Option<Scalar>,
    pub delta: Option<usize>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>, pass: bool) -> Self {
        Report {
            check: check.into(),
            pass,
            witness: None,
            theta: None,
            delta: None,
            n1: None,
            n2: None,
            d: None,
            notes: Vec::new(),
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, if self.pass { "pass" } else { "FAIL" })?;
        if let Some(t) = &self.theta {
            write!(f, "  theta = {t}")?;
        }
        if let Some(d) = self.delta {
            write!(f, "  delta = {d}")?;
        }
        if let (Some(a), Some(b)) = (self.n1, self.n2) {
            write!(f, "  (n1, n2) = ({a}, {b})")?;
        }
        if let Some(d) = self.d {
            write!(f, "  d = {d}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n  - {n}")?;
        }
        Ok(())
    }
}
