//! Derivation algebras, metric-skew derivations and imaginary-type spans.

use crate::error::Result;
use crate::exactlin::matrix::coordinates;
use crate::exactlin::{Field, Matrix, Spectral};
use crate::geometry::InnerProduct;
use crate::lie::LieAlgebra;

/// A space of derivations with a canonical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationSpace<F: Field> {
    pub n: usize,
    pub basis: Vec<Matrix<F>>,
}

impl<F: Field> DerivationSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, d: &Matrix<F>) -> Option<Vec<F>> {
        if self.basis.is_empty() {
            return d.is_zero().then(Vec::new);
        }
        let vecs: Vec<Vec<F>> = self.basis.iter().map(|m| m.vectorize()).collect();
        coordinates(&vecs, &d.vectorize())
    }

    pub fn contains(&self, d: &Matrix<F>) -> bool {
        self.coordinates(d).is_some()
    }

    pub fn combine(&self, coeffs: &[F]) -> Matrix<F> {
        let mut acc = Matrix::zeros(self.n, self.n);
        for (c, m) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        acc
    }

    /// `[D_a, D_b]` in basis coordinates for every `a < b`; `None` if the
    /// space is not closed under commutators.
    pub fn closure_table(&self) -> Option<Vec<(usize, usize, Vec<F>)>> {
        let mut out = Vec::new();
        for a in 0..self.dim() {
            for b in a + 1..self.dim() {
                let c = self.basis[a].commutator(&self.basis[b]);
                out.push((a, b, self.coordinates(&c)?));
            }
        }
        Some(out)
    }
}

/// Linear equations (in column-major `vec(D)`) expressing the Leibniz rule.
fn leibniz_rows<F: Field>(alg: &LieAlgebra<F>) -> Vec<Vec<F>> {
    let n = alg.dim();
    let idx = |row: usize, col: usize| col * n + row;
    let mut rows = Vec::new();
    let brackets: Vec<Vec<Vec<F>>> = (0..n)
        .map(|i| (0..n).map(|j| alg.bracket_basis(i, j)).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            for c in 0..n {
                let mut r = vec![F::zero(); n * n];
                for k in 0..n {
                    let s = &brackets[i][j][k];
                    if !s.is_zero() {
                        r[idx(c, k)] = r[idx(c, k)].clone() + s.clone();
                    }
                    let s = &brackets[k][j][c];
                    if !s.is_zero() {
                        r[idx(k, i)] = r[idx(k, i)].clone() - s.clone();
                    }
                    let s = &brackets[i][k][c];
                    if !s.is_zero() {
                        r[idx(k, j)] = r[idx(k, j)].clone() - s.clone();
                    }
                }
                if r.iter().any(|x| !x.is_zero()) {
                    rows.push(r);
                }
            }
        }
    }
    rows
}

/// Rows for `G·D + sign·Dᵀ·G = 0` (upper triangle).
fn gram_rows<F: Field>(gram: &Matrix<F>, sign: F) -> Vec<Vec<F>> {
    let n = gram.rows();
    let idx = |row: usize, col: usize| col * n + row;
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut r = vec![F::zero(); n * n];
            for k in 0..n {
                r[idx(k, b)] = r[idx(k, b)].clone() + gram[(a, k)].clone();
                r[idx(k, a)] = r[idx(k, a)].clone() + sign.clone() * gram[(k, b)].clone();
            }
            if r.iter().any(|x| !x.is_zero()) {
                rows.push(r);
            }
        }
    }
    rows
}

fn solve_space<F: Field>(n: usize, rows: Vec<Vec<F>>) -> DerivationSpace<F> {
    let vecs = if rows.is_empty() {
        (0..n * n).map(|i| crate::exactlin::matrix::unit(n * n, i)).collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    DerivationSpace {
        n,
        basis: vecs.iter().map(|v| Matrix::unvectorize(n, n, v)).collect(),
    }
}

pub fn derivation_algebra<F: Field>(alg: &LieAlgebra<F>) -> DerivationSpace<F> {
    solve_space(alg.dim(), leibniz_rows(alg))
}

/// Derivations `D` with `G·D + Dᵀ·G = 0`.
pub fn skew_derivations<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<DerivationSpace<F>> {
    ip.check_dim(alg.dim())?;
    let mut rows = leibniz_rows(alg);
    rows.extend(gram_rows(ip.gram(), F::one()));
    Ok(solve_space(alg.dim(), rows))
}

/// Derivations that are self-adjoint for `ip`: `G·D = Dᵀ·G`.
pub fn symmetric_derivations<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<DerivationSpace<F>> {
    ip.check_dim(alg.dim())?;
    let mut rows = leibniz_rows(alg);
    rows.extend(gram_rows(ip.gram(), -F::one()));
    Ok(solve_space(alg.dim(), rows))
}

/// Derivations that are diagonal in the given basis.
pub fn diagonal_derivations<F: Field>(alg: &LieAlgebra<F>) -> DerivationSpace<F> {
    let n = alg.dim();
    let mut rows = leibniz_rows(alg);
    for r in 0..n {
        for c in 0..n {
            if r != c {
                let mut v = vec![F::zero(); n * n];
                v[c * n + r] = F::one();
                rows.push(v);
            }
        }
    }
    solve_space(n, rows)
}

/// Sufficient certificate that `ops` spans a compactly embedded abelian
/// subalgebra: the operators commute and each is semisimple with purely
/// imaginary spectrum.
pub fn imaginary_type_check<F: Spectral>(ops: &[Matrix<F>]) -> bool {
    for (a, x) in ops.iter().enumerate() {
        if !x.is_square() {
            return false;
        }
        for y in &ops[a + 1..] {
            if !x.commutator(y).is_negligible(1.0 + x.max_magnitude() * y.max_magnitude()) {
                return false;
            }
        }
        let scale = 1.0 + x.max_magnitude();
        match F::jordan_chevalley(x) {
            Ok(split) => {
                if !split.nilpotent.is_negligible(scale) || !split.real_part.is_negligible(scale) {
                    return false;
                }
            }
            Err(_) => return false,
        }
    }
    true
}
