use serde_json::{json, Map, Value};

use solvlie::exactlin::{format_rational, Matrix, Spectral, Q};
use solvlie::lie::{LieAlgebra, Subspace};

/// Scalars that can appear in a report.
pub trait Render: Spectral {
    fn render(&self) -> Value;

    /// Verdict threshold: exact zero, or `|x| <= tol·scale` on floats.
    fn within(&self, tol: f64, scale: f64) -> bool;
}

impl Render for Q {
    fn render(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn within(&self, _tol: f64, _scale: f64) -> bool {
        *self == Q::from_integer(0.into())
    }
}

impl Render for f64 {
    fn render(&self) -> Value {
        json!(self)
    }

    fn within(&self, tol: f64, scale: f64) -> bool {
        self.abs() <= tol * scale.max(1.0)
    }
}

pub fn vector<F: Render>(v: &[F]) -> Value {
    Value::Array(v.iter().map(Render::render).collect())
}

pub fn matrix<F: Render>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector(m.row(r))).collect())
}

pub fn subspace<F: Render>(s: &Subspace<F>) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis().iter().map(|v| vector(v)).collect::<Vec<_>>(),
    })
}

pub fn spectrum<F: Render>(eig: &[(F, usize)]) -> Value {
    Value::Array(
        eig.iter()
            .map(|(v, m)| json!({"value": v.render(), "multiplicity": m}))
            .collect(),
    )
}

/// Same layout as an algebra document; on the exact path it parses back.
pub fn algebra<F: Render>(alg: &LieAlgebra<F>) -> Value {
    let names = alg.basis_names();
    let brackets: Vec<Value> = alg
        .nonzero_brackets()
        .into_iter()
        .map(|(i, j, v)| {
            let value: Map<String, Value> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (names[k].clone(), c.render()))
                .collect();
            json!({"x": names[i], "y": names[j], "value": value})
        })
        .collect();
    json!({
        "name": alg.name(),
        "dim": alg.dim(),
        "basis": names,
        "brackets": brackets,
    })
}
