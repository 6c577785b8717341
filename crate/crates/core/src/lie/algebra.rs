//! Lie algebras given by structure constants in a named basis.

use crate::error::{Error, Result};
use crate::exactlin::matrix::{coordinates, vec_is_zero};
use crate::exactlin::{Field, Matrix, Q};

/// A finite-dimensional real Lie algebra.
///
/// Only the brackets `[b_i, b_j]` with `i < j` are stored; antisymmetry is
/// definitional. Every constructor checks the Jacobi identity.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<F: Field> {
    name: String,
    basis_names: Vec<String>,
    // index(i, j) for i < j → coordinates of [b_i, b_j]
    structure: Vec<Vec<F>>,
}

/// Jacobi check outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub dim: usize,
    pub triples_checked: usize,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl<F: Field> LieAlgebra<F> {
    /// Builds an algebra from `(i, j, [b_i, b_j])` triples; unspecified
    /// brackets are zero. Entries with `i > j` are stored negated.
    pub fn from_brackets(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: Vec<(usize, usize, Vec<F>)>,
    ) -> Result<Self> {
        let alg = Self::from_brackets_unchecked(name, basis_names, brackets)?;
        alg.validate()?;
        Ok(alg)
    }

    pub(crate) fn from_brackets_unchecked(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: Vec<(usize, usize, Vec<F>)>,
    ) -> Result<Self> {
        let n = basis_names.len();
        let mut structure = vec![vec![F::zero(); n]; n * n.saturating_sub(1) / 2];
        for (i, j, v) in brackets {
            if i >= n || j >= n || v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i}, {j}) does not fit a {n}-dimensional algebra"
                )));
            }
            if i == j {
                return Err(Error::DimensionMismatch(format!(
                    "bracket of basis element {i} with itself"
                )));
            }
            let (a, b, v) = if i < j {
                (i, j, v)
            } else {
                (j, i, v.into_iter().map(|x| -x).collect())
            };
            structure[pair_index(n, a, b)] = v;
        }
        Ok(Self {
            name: name.into(),
            basis_names,
            structure,
        })
    }

    /// Algebra whose bracket is `ad`-given: `ads[i]` is the matrix of `ad(b_i)`.
    pub fn from_ad_matrices(
        name: impl Into<String>,
        basis_names: Vec<String>,
        ads: &[Matrix<F>],
    ) -> Result<Self> {
        let n = basis_names.len();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = ads[i].column(j);
                if !vec_is_zero(&v) {
                    brackets.push((i, j, v));
                }
            }
        }
        Self::from_brackets(name, basis_names, brackets)
    }

    pub fn abelian(name: impl Into<String>, n: usize) -> Self {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        Self::from_brackets_unchecked(name, names, Vec::new()).expect("abelian algebra")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    /// `[b_i, b_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<F> {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => vec![F::zero(); n],
            std::cmp::Ordering::Less => self.structure[pair_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => self.structure[pair_index(n, j, i)]
                .iter()
                .map(|x| -x.clone())
                .collect(),
        }
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || y[j].is_zero() {
                    continue;
                }
                let c = x[i].clone() * y[j].clone();
                let b = self.bracket_basis(i, j);
                for (o, v) in out.iter_mut().zip(b) {
                    *o = o.clone() + c.clone() * v;
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)`: column `j` holds `[x, b_j]`.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n)
            .map(|j| {
                let mut e = vec![F::zero(); n];
                e[j] = F::one();
                self.bracket(x, &e)
            })
            .collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.bracket_basis(i, j)).collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn ad_all(&self) -> Vec<Matrix<F>> {
        (0..self.dim()).map(|i| self.ad_basis(i)).collect()
    }

    /// Nonzero brackets `(i, j, [b_i, b_j])` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<F>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.structure[pair_index(n, i, j)];
                if !v.iter().all(|x| x.is_zero()) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|v| v.iter().all(|x| x.is_zero()))
    }

    /// Same structure constants, compared with the field's zero test.
    pub fn same_structure(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let scale = self
            .structure
            .iter()
            .chain(&other.structure)
            .flatten()
            .map(|x| x.to_f64().abs())
            .fold(1.0, f64::max);
        self.structure
            .iter()
            .zip(&other.structure)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).is_negligible(scale)))
    }

    /// Checks the Jacobi identity on all basis triples.
    pub fn validate(&self) -> Result<ValidationReport> {
        let n = self.dim();
        let mut count = 0;
        let scale = self
            .structure
            .iter()
            .flatten()
            .map(|x| x.to_f64().abs())
            .fold(1.0, f64::max);
        let basis = |i: usize| {
            let mut e = vec![F::zero(); n];
            e[i] = F::one();
            e
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    count += 1;
                    let t1 = self.bracket(&self.bracket_basis(i, j), &basis(k));
                    let t2 = self.bracket(&self.bracket_basis(j, k), &basis(i));
                    let t3 = self.bracket(&self.bracket_basis(k, i), &basis(j));
                    let defect: Vec<F> = (0..n)
                        .map(|c| t1[c].clone() + t2[c].clone() + t3[c].clone())
                        .collect();
                    if !defect.iter().all(|x| x.is_negligible(scale * scale)) {
                        return Err(Error::JacobiViolation {
                            triple: (i, j, k),
                            defect: defect.iter().map(|x| x.to_string()).collect(),
                        });
                    }
                }
            }
        }
        Ok(ValidationReport {
            dim: n,
            triples_checked: count,
        })
    }

    /// Same algebra in the basis `v_j = Σ_i p[i][j] b_i` (columns of `p`).
    pub fn change_basis(&self, p: &Matrix<F>, names: Vec<String>) -> Result<Self> {
        let n = self.dim();
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let cols: Vec<Vec<F>> = (0..n).map(|j| p.column(j)).collect();
        let mut brackets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let v = pinv.apply(&self.bracket(&cols[a], &cols[b]));
                brackets.push((a, b, v));
            }
        }
        Self::from_brackets(self.name.clone(), names, brackets)
    }

    /// Structure constants of the subalgebra spanned by `basis` (which must be
    /// closed under the bracket), in that basis.
    pub fn subalgebra(
        &self,
        name: impl Into<String>,
        basis: &[Vec<F>],
        names: Vec<String>,
    ) -> Result<Self> {
        let k = basis.len();
        let mut brackets = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let v = self.bracket(&basis[a], &basis[b]);
                let c = coordinates(basis, &v).ok_or(Error::NotClosed)?;
                brackets.push((a, b, c));
            }
        }
        Self::from_brackets(name, names, brackets)
    }

    /// `true` iff `map` (columns = images of basis vectors) is a bijective
    /// homomorphism `self → target`.
    pub fn is_isomorphism(&self, target: &Self, map: &Matrix<F>) -> bool {
        let n = self.dim();
        if target.dim() != n || map.rows() != n || map.cols() != n || map.rank() != n {
            return false;
        }
        let cols: Vec<Vec<F>> = (0..n).map(|j| map.column(j)).collect();
        let scale = 1.0 + map.max_magnitude();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = map.apply(&self.bracket_basis(i, j));
                let rhs = target.bracket(&cols[i], &cols[j]);
                let s = scale * scale * scale;
                if !lhs
                    .iter()
                    .zip(&rhs)
                    .all(|(a, b)| (a.clone() - b.clone()).is_negligible(s))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Converts every structure constant with `f`.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> LieAlgebra<G> {
        LieAlgebra {
            name: self.name.clone(),
            basis_names: self.basis_names.clone(),
            structure: self
                .structure
                .iter()
                .map(|v| v.iter().map(&f).collect())
                .collect(),
        }
    }

    /// `D[x, y] = [Dx, y] + [x, Dy]` on all basis pairs.
    pub fn is_derivation(&self, d: &Matrix<F>) -> bool {
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return false;
        }
        let scale = 1.0 + d.max_magnitude();
        let cols: Vec<Vec<F>> = (0..n).map(|j| d.column(j)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.apply(&self.bracket_basis(i, j));
                let mut e_i = vec![F::zero(); n];
                e_i[i] = F::one();
                let mut e_j = vec![F::zero(); n];
                e_j[j] = F::one();
                let r1 = self.bracket(&cols[i], &e_j);
                let r2 = self.bracket(&e_i, &cols[j]);
                if !(0..n).all(|c| {
                    (lhs[c].clone() - r1[c].clone() - r2[c].clone()).is_negligible(scale * scale)
                }) {
                    return false;
                }
            }
        }
        true
    }

    /// Semidirect product `span(actions) ⋉ self`; the new directions come
    /// first in the basis, named `action_names`.
    pub fn semidirect(
        &self,
        name: impl Into<String>,
        actions: &[Matrix<F>],
        action_names: Vec<String>,
    ) -> Result<Self> {
        let n = self.dim();
        let k = actions.len();
        for (i, d) in actions.iter().enumerate() {
            if !self.is_derivation(d) {
                return Err(Error::NotDerivation { index: i });
            }
        }
        let vecs: Vec<Vec<F>> = actions.iter().map(|d| d.vectorize()).collect();
        if k > 0 && Matrix::from_rows(vecs.clone()).rank() != k {
            return Err(Error::DimensionMismatch(
                "action operators are linearly dependent".into(),
            ));
        }
        let total = n + k;
        let mut brackets = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let comm = actions[a].commutator(&actions[b]).vectorize();
                let c = coordinates(&vecs, &comm).ok_or(Error::ActionNotClosed)?;
                let mut v = c;
                v.extend(std::iter::repeat_n(F::zero(), n));
                brackets.push((a, b, v));
            }
            for j in 0..n {
                let mut v = vec![F::zero(); k];
                v.extend(actions[a].column(j));
                brackets.push((a, k + j, v));
            }
        }
        for (i, j, v) in self.nonzero_brackets() {
            let mut w = vec![F::zero(); k];
            w.extend(v);
            brackets.push((k + i, k + j, w));
        }
        let mut names = action_names;
        names.extend(self.basis_names.iter().cloned());
        debug_assert_eq!(names.len(), total);
        Self::from_brackets(name, names, brackets)
    }
}

impl LieAlgebra<Q> {
    pub fn to_f64(&self) -> LieAlgebra<f64> {
        self.map_field(|x| x.to_f64())
    }
}

/// Default basis names `prefix1, prefix2, …`.
pub fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{qi, Q};

    fn h3() -> LieAlgebra<Q> {
        LieAlgebra::from_brackets(
            "h3",
            numbered("e", 3),
            vec![(0, 1, vec![qi(0), qi(0), qi(1)])],
        )
        .unwrap()
    }

    #[test]
    fn pair_indices_are_dense() {
        let n = 5;
        let mut seen = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                seen.push(pair_index(n, i, j));
            }
        }
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn heisenberg_brackets() {
        let h = h3();
        assert_eq!(h.bracket_basis(1, 0), vec![qi(0), qi(0), qi(-1)]);
        assert_eq!(h.validate().unwrap().triples_checked, 1);
        assert!(!h.is_abelian());
    }

    #[test]
    fn tampered_heisenberg_violates_jacobi() {
        // [e1,e2]=e3 plus [e2,e3]=e2: the Jacobi sum on (e1,e2,e3) is -e3
        let bad = LieAlgebra::<Q>::from_brackets(
            "bad",
            numbered("e", 3),
            vec![
                (0, 1, vec![qi(0), qi(0), qi(1)]),
                (1, 2, vec![qi(0), qi(1), qi(0)]),
            ],
        );
        match bad {
            Err(Error::JacobiViolation { triple, defect }) => {
                assert_eq!(triple, (0, 1, 2));
                assert_eq!(defect, vec!["0", "0", "-1"]);
            }
            other => panic!("expected Jacobi violation, got {other:?}"),
        }
    }

    #[test]
    fn heisenberg_with_extra_e1_e3_bracket_is_still_lie() {
        // [e1,e2]=e3, [e1,e3]=e2: ad(e1) acts on the abelian ideal span(e2,e3)
        let alg = LieAlgebra::<Q>::from_brackets(
            "r3",
            numbered("e", 3),
            vec![
                (0, 1, vec![qi(0), qi(0), qi(1)]),
                (0, 2, vec![qi(0), qi(1), qi(0)]),
            ],
        );
        assert!(alg.is_ok());
    }

    #[test]
    fn self_bracket_rejected() {
        let r = LieAlgebra::<Q>::from_brackets("x", numbered("e", 2), vec![(1, 1, vec![qi(1), qi(0)])]);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn change_of_basis_gives_isomorphic_algebra() {
        let h = h3();
        let p = Matrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[2, 0, 3]]);
        let h2 = h.change_basis(&p, numbered("f", 3)).unwrap();
        assert!(h2.is_isomorphism(&h, &p));
        assert!(!h2.is_isomorphism(&h, &Matrix::identity(3)));
    }

    #[test]
    fn semidirect_with_derivation() {
        let h = h3();
        let d = Matrix::diagonal(&[qi(1), qi(1), qi(2)]);
        let ext = h.semidirect("h3+", &[d], vec!["H".into()]).unwrap();
        assert_eq!(ext.dim(), 4);
        assert_eq!(ext.bracket_basis(0, 3), vec![qi(0), qi(0), qi(0), qi(2)]);
        let not_der = Matrix::diagonal(&[qi(1), qi(1), qi(1)]);
        assert!(matches!(
            h.semidirect("x", &[not_der], vec!["H".into()]),
            Err(Error::NotDerivation { index: 0 })
        ));
    }

    #[test]
    fn empty_semidirect_is_identity() {
        let a = LieAlgebra::<Q>::abelian("R2", 2);
        let s = a.semidirect("R2", &[], vec![]).unwrap();
        assert!(s.same_structure(&a));
    }

    #[test]
    fn non_closed_action_rejected() {
        let a = LieAlgebra::<Q>::abelian("R2", 2);
        let e12 = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_i64_rows(&[&[0, 0], &[1, 0]]);
        assert!(matches!(
            a.semidirect("x", &[e12, e21], vec!["X".into(), "Y".into()]),
            Err(Error::ActionNotClosed)
        ));
    }
}
