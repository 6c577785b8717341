use crate::exactlin::matrix::{coordinates, in_span, intersect, span_basis};
use crate::exactlin::{Field, Matrix};

/// A linear subspace of an algebra's coordinate space, stored in reduced
/// row-echelon form so equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn span(ambient_dim: usize, vectors: &[Vec<F>]) -> Self {
        let basis = span_basis(ambient_dim, vectors);
        if basis.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (r, pivots) = Matrix::from_rows(basis).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| crate::exactlin::matrix::unit(ambient_dim, i))
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        in_span(&self.basis, v)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        coordinates(&self.basis, v)
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.ambient_dim, &all)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::span(
            self.ambient_dim,
            &intersect(self.ambient_dim, &self.basis, &other.basis),
        )
    }
}

/// A symmetric bilinear form on a coordinate space.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm<F: Field> {
    pub matrix: Matrix<F>,
}

/// Signature counts of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl<F: Field> BilinearForm<F> {
    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        crate::exactlin::matrix::dot(x, &self.matrix.apply(y))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Signature from the characteristic polynomial: all roots are real, so
    /// Descartes' rule counts the positive ones exactly.
    pub fn signature(&self) -> Signature {
        let n = self.matrix.rows();
        let cp = self.matrix.charpoly();
        let scale = self.matrix.max_magnitude().max(1.0);
        let zero = cp
            .iter()
            .enumerate()
            .take_while(|(i, c)| c.is_negligible(scale.powi((n - *i) as i32)))
            .count();
        let count_changes = |coeffs: &[F]| {
            let mut changes = 0;
            let mut last: Option<bool> = None;
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_negligible(scale.powi((n - i) as i32)) {
                    continue;
                }
                let pos = c.to_f64() > 0.0;
                if let Some(l) = last {
                    if l != pos {
                        changes += 1;
                    }
                }
                last = Some(pos);
            }
            changes
        };
        let positive = count_changes(&cp);
        let mirrored: Vec<F> = cp
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        let negative = count_changes(&mirrored);
        Signature {
            positive,
            negative,
            zero,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{qi, Q};

    #[test]
    fn canonical_span() {
        let a = Subspace::<Q>::span(3, &[vec![qi(2), qi(2), qi(0)], vec![qi(0), qi(0), qi(5)]]);
        let b = Subspace::<Q>::span(3, &[vec![qi(1), qi(1), qi(1)], vec![qi(0), qi(0), qi(1)]]);
        assert_eq!(a, b);
        assert_eq!(a.basis()[0], vec![qi(1), qi(1), qi(0)]);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::<Q>::span(3, &[vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)]]);
        let b = Subspace::<Q>::span(3, &[vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)]]);
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn signature_of_diagonal_form() {
        let f = BilinearForm {
            matrix: Matrix::diagonal(&[qi(3), qi(-1), qi(0), qi(2)]),
        };
        assert_eq!(
            f.signature(),
            Signature {
                positive: 2,
                negative: 1,
                zero: 1
            }
        );
        assert_eq!(f.rank(), 3);
    }
}
