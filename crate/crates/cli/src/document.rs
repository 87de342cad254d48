//! On-disk algebra format: structure constants and Gram matrices as exact
//! scalar strings.

use coneforge::{Algebra, FieldTag, Matrix, Scalar};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub field: String,
    pub commutative: bool,
    pub metric: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<Vec<String>>>,
    /// `eᵢ⋄eⱼ` has coefficient `c` on `eₖ`; commutative algebras store `i ≤ j` only.
    pub structure: Vec<StructureEntry>,
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn parse_scalar(text: &str, place: &str) -> Result<Scalar, CliError> {
    text.parse().map_err(|e| CliError::Document(format!("{place}: {e}")))
}

fn parse_matrix(rows: &[Vec<String>], dim: usize, what: &str) -> Result<Matrix, CliError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Document(format!("{what} must be {dim}×{dim}")));
    }
    let mut out = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| parse_scalar(s, &format!("{what}[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    Ok(Matrix::from_rows(out))
}

impl AlgebraDocument {
    pub fn from_algebra(alg: &Algebra) -> Self {
        let commutative = alg.is_commutative();
        let structure = alg
            .structure_entries()
            .filter(|(i, j, _, _)| !commutative || i <= j)
            .map(|(i, j, k, c)| StructureEntry { i, j, k, c: c.to_string() })
            .collect();
        AlgebraDocument {
            name: alg.name().to_string(),
            dim: alg.dim(),
            field: alg.field_tag().to_string(),
            commutative,
            metric: matrix_strings(alg.metric()),
            involution: (!alg.has_identity_involution()).then(|| matrix_strings(alg.involution())),
            structure,
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra, CliError> {
        let n = self.dim;
        if n == 0 {
            return Err(CliError::Document("dim must be positive".into()));
        }
        let declared = match self.field.as_str() {
            "Q" => FieldTag::Q,
            "Qr3" => FieldTag::Qr3,
            other => return Err(CliError::Document(format!("unknown field tag {other:?}"))),
        };
        let metric = parse_matrix(&self.metric, n, "metric")?;
        let involution = self.involution.as_ref().map(|m| parse_matrix(m, n, "involution")).transpose()?;
        let mut entries = Vec::with_capacity(self.structure.len());
        for (idx, e) in self.structure.iter().enumerate() {
            if e.i >= n || e.j >= n || e.k >= n {
                return Err(CliError::Document(format!(
                    "structure[{idx}]: index ({}, {}, {}) out of range for dim {n}",
                    e.i, e.j, e.k
                )));
            }
            if self.commutative && e.i > e.j {
                return Err(CliError::Document(format!("structure[{idx}]: commutative documents store only i ≤ j")));
            }
            entries.push((e.i, e.j, e.k, parse_scalar(&e.c, &format!("structure[{idx}].c"))?));
        }
        let alg = if self.commutative {
            Algebra::new_commutative(self.name.clone(), n, entries, metric, involution)
        } else {
            Algebra::new(self.name.clone(), n, entries, metric, involution)
        }
        .map_err(|e| CliError::Document(e.to_string()))?;
        if declared == FieldTag::Q && alg.field_tag() == FieldTag::Qr3 {
            return Err(CliError::Document("field is \"Q\" but entries involve r3".into()));
        }
        if self.commutative != alg.is_commutative() {
            return Err(CliError::Document("declared commutative flag does not match the table".into()));
        }
        Ok(alg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Document(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use coneforge::catalog;

    #[test]
    fn round_trip_is_bit_exact() {
        for name in ["H", "triple(color)", "cartan(2)", "clifford(1,2)", "paraC"] {
            let alg = catalog::from_name(name).unwrap();
            let doc = AlgebraDocument::from_algebra(&alg);
            let text = doc.to_json();
            let back = AlgebraDocument::from_json(&text).unwrap();
            assert_eq!(back.to_json(), text, "{name}");
            let alg2 = back.to_algebra().unwrap();
            assert_eq!(AlgebraDocument::from_algebra(&alg2), doc, "{name}");
        }
    }

    #[test]
    fn field_tag_of_cartan_two() {
        let doc = AlgebraDocument::from_algebra(&catalog::from_name("cartan(2)").unwrap());
        assert_eq!(doc.field, "Qr3");
        assert_eq!(doc.dim, 8);
    }

    #[test]
    fn bad_scalar_reports_location() {
        let mut doc = AlgebraDocument::from_algebra(&catalog::from_name("C").unwrap());
        doc.structure[0].c = "1/0".into();
        let err = doc.to_algebra().unwrap_err().to_string();
        assert!(err.contains("structure[0].c"), "{err}");
    }
}
