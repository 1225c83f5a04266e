//! JSON algebra specs.
//!
//! ```json
//! { "name": "dual_numbers", "dim": 2, "labels": ["1", "x"],
//!   "mu": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
//!   "alpha": [["1", "0"], ["0", "1"]], "unit": ["1", "0"] }
//! ```
//!
//! `mu` lists nonzero structure constants `[i, j, k, c]` meaning `e_i e_j`
//! has coefficient `c` at `e_k`; `alpha` and `theta` are row-major.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{HomAlgebra, SymmetricStructure};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Marks deliberately corrupted fixtures.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub mutant: bool,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub mu: Vec<(usize, usize, usize, Scalar)>,
    pub alpha: Vec<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Vec<Scalar>>>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    fn square(&self, rows: &[Vec<Scalar>], what: &str) -> Result<Matrix> {
        let n = self.dim;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("{what} must be a {n}x{n} matrix")));
        }
        Matrix::new(n, n, rows.iter().flatten().cloned().collect())
    }

    pub fn algebra(&self) -> Result<HomAlgebra> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let mut mu = vec![Scalar::zero(); n * n * n];
        for (i, j, k, c) in &self.mu {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Parse(format!("mu entry [{i}, {j}, {k}] out of range for dim {n}")));
            }
            mu[(i * n + j) * n + k] = c.clone();
        }
        let alpha = self.square(&self.alpha, "alpha")?;
        let unit = match &self.unit {
            Some(u) if u.len() != n => {
                return Err(Error::Parse(format!("unit must have {n} entries")));
            }
            Some(u) => Some(Vector(u.clone())),
            None => None,
        };
        let mut alg = HomAlgebra::new(n, mu, alpha, unit)?.with_name(self.name.clone());
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(Error::Parse(format!("labels must have {n} entries")));
            }
            alg = alg.with_labels(labels.clone())?;
        }
        Ok(alg)
    }

    pub fn symmetric_structure(&self) -> Result<Option<SymmetricStructure>> {
        self.theta
            .as_ref()
            .map(|t| Ok(SymmetricStructure::new(self.square(t, "theta")?)))
            .transpose()
    }

    pub fn from_algebra(alg: &HomAlgebra, theta: Option<&SymmetricStructure>) -> Self {
        let n = alg.dim();
        let rows = |m: &Matrix| (0..n).map(|i| m.row(i).0).collect::<Vec<_>>();
        let mut mu = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in alg.product(i, j) {
                    mu.push((i, j, *k, c.clone()));
                }
            }
        }
        AlgebraSpec {
            name: alg.name().to_string(),
            description: None,
            mutant: false,
            dim: n,
            labels: Some(alg.labels().to_vec()),
            mu,
            alpha: rows(alg.alpha()),
            unit: alg.unit().map(|u| u.0.clone()),
            theta: theta.map(|t| rows(&t.theta)),
        }
    }
}
