//! JSON documents for algebras and metrics. Rationals travel as strings.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::exactlin::{format_rational, parse_rational, Field, Matrix, Q};
use crate::geometry::InnerProduct;
use crate::lie::LieAlgebra;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub x: String,
    pub y: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_nilradical: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDocument {
    pub algebra: String,
    pub gram: Vec<Vec<String>>,
}

/// Candidate isomorphism: `columns[i]` is the image of the `i`-th basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub columns: Vec<Vec<String>>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn rational(s: &str) -> Result<Q> {
    parse_rational(s).map_err(parse_err)
}

fn to_json<T: Serialize>(v: &T, pretty: bool) -> String {
    let out = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    out.expect("documents serialize")
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
    }

    pub fn to_json(&self, pretty: bool) -> String {
        to_json(self, pretty)
    }

    /// Document listing the nonzero brackets `[b_i, b_j]`, `i < j`, in basis order.
    pub fn from_algebra(alg: &LieAlgebra<Q>) -> Self {
        let names = alg.basis_names();
        let brackets = alg
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| BracketEntry {
                x: names[i].clone(),
                y: names[j].clone(),
                value: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !Field::is_zero(*c))
                    .map(|(k, c)| (names[k].clone(), format_rational(c)))
                    .collect(),
            })
            .collect();
        Self {
            name: alg.name().to_string(),
            dim: alg.dim(),
            basis: names.to_vec(),
            brackets,
            declared_nilradical: None,
        }
    }

    fn index(&self) -> Result<HashMap<&str, usize>> {
        if self.basis.len() != self.dim {
            return Err(parse_err(format!(
                "dim is {} but {} basis names are listed",
                self.dim,
                self.basis.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            if index.insert(b.as_str(), i).is_some() {
                return Err(parse_err(format!("duplicate basis name `{b}`")));
            }
        }
        Ok(index)
    }

    /// Structure constants without the Jacobi check.
    fn brackets(&self) -> Result<Vec<(usize, usize, Vec<Q>)>> {
        let index = self.index()?;
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| parse_err(format!("unknown basis name `{name}`")))
        };
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for entry in &self.brackets {
            let (i, j) = (lookup(&entry.x)?, lookup(&entry.y)?);
            if i == j {
                return Err(parse_err(format!("bracket of `{}` with itself", entry.x)));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(parse_err(format!("bracket [{}, {}] listed twice", entry.x, entry.y)));
            }
            let mut v = vec![Q::zero(); self.dim];
            for (k, c) in &entry.value {
                v[lookup(k)?] = rational(c)?;
            }
            out.push((i, j, v));
        }
        Ok(out)
    }

    /// Validated algebra; basis order is the listed order.
    pub fn to_algebra(&self) -> Result<LieAlgebra<Q>> {
        LieAlgebra::from_brackets(self.name.clone(), self.basis.clone(), self.brackets()?)
    }

    pub fn declared_nilradical_vectors(&self) -> Result<Option<Vec<Vec<Q>>>> {
        let Some(rows) = &self.declared_nilradical else {
            return Ok(None);
        };
        rows.iter()
            .map(|row| {
                if row.len() != self.dim {
                    return Err(parse_err(format!(
                        "nilradical vector has {} coordinates, expected {}",
                        row.len(),
                        self.dim
                    )));
                }
                row.iter().map(|s| rational(s)).collect()
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}

impl MetricDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
    }

    pub fn to_json(&self, pretty: bool) -> String {
        to_json(self, pretty)
    }

    pub fn from_inner_product(algebra: &str, ip: &InnerProduct<Q>) -> Self {
        let g = ip.gram();
        Self {
            algebra: algebra.to_string(),
            gram: (0..g.rows())
                .map(|r| (0..g.cols()).map(|c| format_rational(&g[(r, c)])).collect())
                .collect(),
        }
    }

    pub fn gram_matrix(&self) -> Result<Matrix<Q>> {
        let n = self.gram.len();
        if let Some(row) = self.gram.iter().find(|r| r.len() != n) {
            return Err(parse_err(format!("gram is not square: row of length {} in {n} rows", row.len())));
        }
        let rows = self
            .gram
            .iter()
            .map(|row| row.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let g = Matrix::from_rows(rows);
        if g != g.transpose() {
            return Err(parse_err("gram is not symmetric"));
        }
        Ok(g)
    }

    /// Inner product for an algebra of dimension `dim`; positive definiteness is checked.
    pub fn to_inner_product(&self, dim: usize) -> Result<InnerProduct<Q>> {
        let g = self.gram_matrix()?;
        if g.rows() != dim {
            return Err(parse_err(format!("gram is {0}x{0}, algebra has dimension {dim}", g.rows())));
        }
        InnerProduct::new(g)
    }
}

impl CertificateDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
    }

    pub fn to_json(&self, pretty: bool) -> String {
        to_json(self, pretty)
    }

    pub fn from_matrix(m: &Matrix<Q>) -> Self {
        Self {
            columns: (0..m.cols())
                .map(|c| m.column(c).iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self, dim: usize) -> Result<Matrix<Q>> {
        if self.columns.len() != dim || self.columns.iter().any(|c| c.len() != dim) {
            return Err(parse_err(format!("certificate must be {dim}x{dim}")));
        }
        let cols = self
            .columns
            .iter()
            .map(|col| col.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(dim, &cols))
    }
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra<Q>> {
    AlgebraDocument::from_json(text)?.to_algebra()
}

pub fn serialize_algebra(alg: &LieAlgebra<Q>) -> String {
    AlgebraDocument::from_algebra(alg).to_json(false)
}

pub fn parse_metric(text: &str, dim: usize) -> Result<InnerProduct<Q>> {
    MetricDocument::from_json(text)?.to_inner_product(dim)
}
