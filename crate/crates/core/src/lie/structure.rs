//! Structural invariants: series, center, Killing form, nilradical, profiles.

use serde::Serialize;

use super::algebra::LieAlgebra;
use super::subspace::{BilinearForm, Signature, Subspace};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{span_basis, unit};
use crate::exactlin::{Field, Matrix, Spectral};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

/// `span{[x, y] : x ∈ a, y ∈ b}`.
pub fn bracket_span<F: Field>(alg: &LieAlgebra<F>, a: &[Vec<F>], b: &[Vec<F>]) -> Subspace<F> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(alg.bracket(x, y));
        }
    }
    Subspace::span(alg.dim(), &out)
}

/// The derived or lower central series, starting with the whole algebra and
/// ending at the first repeated term.
pub fn characteristic_series<F: Field>(alg: &LieAlgebra<F>, kind: SeriesKind) -> Vec<Subspace<F>> {
    let n = alg.dim();
    let full = Subspace::full(n);
    let mut series = vec![full.clone()];
    loop {
        let last = series.last().unwrap();
        let next = match kind {
            SeriesKind::Derived => bracket_span(alg, last.basis(), last.basis()),
            SeriesKind::LowerCentral => bracket_span(alg, full.basis(), last.basis()),
        };
        if next.dim() == last.dim() {
            break;
        }
        let stop = next.dim() == 0;
        series.push(next);
        if stop {
            break;
        }
    }
    series
}

pub fn series_dims<F: Field>(alg: &LieAlgebra<F>, kind: SeriesKind) -> Vec<usize> {
    characteristic_series(alg, kind).iter().map(Subspace::dim).collect()
}

pub fn is_solvable<F: Field>(alg: &LieAlgebra<F>) -> bool {
    characteristic_series(alg, SeriesKind::Derived)
        .last()
        .is_some_and(|s| s.dim() == 0)
}

pub fn is_nilpotent<F: Field>(alg: &LieAlgebra<F>) -> bool {
    characteristic_series(alg, SeriesKind::LowerCentral)
        .last()
        .is_some_and(|s| s.dim() == 0)
}

pub fn center<F: Field>(alg: &LieAlgebra<F>) -> Subspace<F> {
    let n = alg.dim();
    // rows: coordinate c of [x, b_j] as a linear form in x
    let mut rows = Vec::new();
    for j in 0..n {
        let ad_j = alg.ad_basis(j);
        for c in 0..n {
            rows.push(ad_j.row(c).to_vec());
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Subspace::span(n, &Matrix::from_rows(rows).nullspace())
}

pub fn killing_form<F: Field>(alg: &LieAlgebra<F>) -> BilinearForm<F> {
    let ads = alg.ad_all();
    let n = alg.dim();
    let matrix = Matrix::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace());
    BilinearForm { matrix }
}

/// Is `sub` an ideal, i.e. `[alg, sub] ⊆ sub`?
pub fn is_ideal<F: Field>(alg: &LieAlgebra<F>, sub: &Subspace<F>) -> bool {
    let n = alg.dim();
    (0..n).all(|i| {
        sub.basis()
            .iter()
            .all(|v| sub.contains(&alg.bracket(&unit(n, i), v)))
    })
}

/// The subalgebra spanned by `sub` as an abstract algebra on its canonical basis.
pub fn restrict<F: Field>(alg: &LieAlgebra<F>, sub: &Subspace<F>, name: &str) -> Result<LieAlgebra<F>> {
    let names = super::algebra::numbered("n", sub.dim());
    alg.subalgebra(name, sub.basis(), names)
}

/// Associative algebra (without unit) generated by `gens`, as a basis of
/// matrices.
fn associative_closure<F: Field>(gens: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let (r, c) = (first.rows(), first.cols());
    let mut basis: Vec<Vec<F>> = span_basis(r * c, &gens.iter().map(|g| g.vectorize()).collect::<Vec<_>>());
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut added = Vec::new();
        for w in &frontier {
            let wm = Matrix::unvectorize(r, c, w);
            for g in gens {
                let p = (g * &wm).vectorize();
                let mut trial = basis.clone();
                trial.push(p.clone());
                if span_basis(r * c, &trial).len() > basis.len() {
                    basis.push(p.clone());
                    added.push(p);
                }
            }
        }
        frontier = added;
    }
    basis.iter().map(|v| Matrix::unvectorize(r, c, v)).collect()
}

/// Largest nilpotent ideal of a solvable algebra.
///
/// For a solvable algebra the nilradical is the preimage under `ad` of the
/// radical of the associative algebra generated by `ad(alg)`, and that
/// radical is the kernel of the trace form.
pub fn nilradical<F: Field>(alg: &LieAlgebra<F>) -> Result<Subspace<F>> {
    if !is_solvable(alg) {
        return Err(Error::NotSolvable);
    }
    let n = alg.dim();
    let ads = alg.ad_all();
    let assoc = associative_closure(&ads);
    if assoc.is_empty() {
        return Ok(Subspace::full(n));
    }
    let k = assoc.len();
    let gram = Matrix::from_fn(k, k, |i, j| (&assoc[i] * &assoc[j]).trace());
    let rad_coords = gram.nullspace();
    let rad: Vec<Vec<F>> = rad_coords
        .iter()
        .map(|c| {
            let mut acc = Matrix::zeros(n, n);
            for (ci, m) in c.iter().zip(&assoc) {
                acc = &acc + &m.scale(ci);
            }
            acc.vectorize()
        })
        .collect();
    // Solve Σ x_i vec(ad b_i) − Σ y_k rad_k = 0.
    let mut cols: Vec<Vec<F>> = ads.iter().map(|m| m.vectorize()).collect();
    cols.extend(rad.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let system = Matrix::from_columns(n * n, &cols);
    let sols: Vec<Vec<F>> = system
        .nullspace()
        .into_iter()
        .map(|v| v[..n].to_vec())
        .collect();
    Ok(Subspace::span(n, &sols))
}

/// Verifies a user-declared nilradical: it must be a nilpotent ideal and, for
/// solvable algebras, coincide with the computed nilradical.
pub fn verify_declared_nilradical<F: Field>(
    alg: &LieAlgebra<F>,
    vectors: &[Vec<F>],
) -> Result<Subspace<F>> {
    let sub = Subspace::span(alg.dim(), vectors);
    if sub.dim() != vectors.len() {
        return Err(Error::InvalidNilradical("vectors are linearly dependent".into()));
    }
    if !is_ideal(alg, &sub) {
        return Err(Error::InvalidNilradical("not an ideal".into()));
    }
    let restricted = restrict(alg, &sub, "declared")?;
    if !is_nilpotent(&restricted) {
        return Err(Error::InvalidNilradical("not nilpotent".into()));
    }
    if is_solvable(alg) && nilradical(alg)? != sub {
        return Err(Error::InvalidNilradical("not the maximal nilpotent ideal".into()));
    }
    Ok(sub)
}

/// Every `ad(x)` has only real eigenvalues. Checking a basis suffices because
/// the spectrum of `ad(x)` is the set of weight values at `x`.
pub fn complete_solvability_check<F: Spectral>(alg: &LieAlgebra<F>) -> Result<bool> {
    if !is_solvable(alg) {
        return Err(Error::NotSolvable);
    }
    Ok(alg.ad_all().iter().all(|m| F::has_real_spectrum(m)))
}

pub fn is_unimodular<F: Field>(alg: &LieAlgebra<F>) -> bool {
    let scale = alg.ad_all().iter().map(Matrix::max_magnitude).fold(1.0, f64::max);
    alg.ad_all().iter().all(|m| m.trace().is_negligible(scale))
}

/// Fitting null component `{y : ad(x)^n y = 0}`.
pub fn fitting_null_component<F: Field>(alg: &LieAlgebra<F>, x: &[F]) -> Subspace<F> {
    let n = alg.dim();
    let p = alg.ad(x).pow(n as u32);
    Subspace::span(n, &p.nullspace())
}

/// A Cartan subalgebra: the Fitting null component of a regular element.
///
/// Candidates are tried in a fixed order; the smallest nilpotent null
/// component wins.
pub fn cartan_subalgebra<F: Field>(alg: &LieAlgebra<F>) -> Subspace<F> {
    let n = alg.dim();
    if n == 0 {
        return Subspace::zero(0);
    }
    let mut candidates: Vec<Vec<F>> = (0..n).map(|i| unit(n, i)).collect();
    let primes = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for round in 0..4i64 {
        candidates.push(
            (0..n)
                .map(|i| F::from_i64(primes[(i + round as usize) % primes.len()] * (1 + round) - i as i64))
                .collect(),
        );
    }
    candidates.push(vec![F::one(); n]);
    let mut best: Option<Subspace<F>> = None;
    for x in &candidates {
        let h = fitting_null_component(alg, x);
        if best.as_ref().is_some_and(|b| b.dim() <= h.dim()) {
            continue;
        }
        let nilpotent = restrict(alg, &h, "h").map(|a| is_nilpotent(&a)).unwrap_or(false);
        if nilpotent {
            best = Some(h);
        }
    }
    best.unwrap_or_else(|| Subspace::full(n))
}

/// Isomorphism invariants collected for equivalence decisions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantProfile {
    pub dim: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub center_dim: usize,
    pub nilradical_dim: Option<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub unimodular: bool,
    pub completely_solvable: Option<bool>,
    pub killing_rank: usize,
    pub killing_signature: (usize, usize, usize),
    pub cartan_dim: usize,
    pub derivation_dim: usize,
}

impl InvariantProfile {
    /// Name of the first field on which two profiles differ.
    pub fn first_difference(&self, other: &Self) -> Option<&'static str> {
        let checks: [(&'static str, bool); 13] = [
            ("dim", self.dim == other.dim),
            ("derived_series", self.derived_series == other.derived_series),
            ("lower_central_series", self.lower_central_series == other.lower_central_series),
            ("center_dim", self.center_dim == other.center_dim),
            ("nilradical_dim", self.nilradical_dim == other.nilradical_dim),
            ("solvable", self.solvable == other.solvable),
            ("nilpotent", self.nilpotent == other.nilpotent),
            ("unimodular", self.unimodular == other.unimodular),
            ("completely_solvable", self.completely_solvable == other.completely_solvable),
            ("killing_rank", self.killing_rank == other.killing_rank),
            ("killing_signature", self.killing_signature == other.killing_signature),
            ("cartan_dim", self.cartan_dim == other.cartan_dim),
            ("derivation_dim", self.derivation_dim == other.derivation_dim),
        ];
        checks.iter().find(|(_, eq)| !eq).map(|(name, _)| *name)
    }
}

pub fn invariant_profile<F: Spectral>(alg: &LieAlgebra<F>) -> Result<InvariantProfile> {
    let solvable = is_solvable(alg);
    let killing = killing_form(alg);
    let Signature {
        positive,
        negative,
        zero,
    } = killing.signature();
    Ok(InvariantProfile {
        dim: alg.dim(),
        derived_series: series_dims(alg, SeriesKind::Derived),
        lower_central_series: series_dims(alg, SeriesKind::LowerCentral),
        center_dim: center(alg).dim(),
        nilradical_dim: if solvable { Some(nilradical(alg)?.dim()) } else { None },
        solvable,
        nilpotent: is_nilpotent(alg),
        unimodular: is_unimodular(alg),
        completely_solvable: if solvable {
            Some(complete_solvability_check(alg)?)
        } else {
            None
        },
        killing_rank: killing.rank(),
        killing_signature: (positive, negative, zero),
        cartan_dim: cartan_subalgebra(alg).dim(),
        derivation_dim: crate::derivations::derivation_algebra(alg).dim(),
    })
}
