use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

/// A positive definite inner product given by its Gram matrix in the
/// algebra's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProduct<F: Field> {
    gram: Matrix<F>,
    inverse: Matrix<F>,
}

impl<F: Field> InnerProduct<F> {
    /// Checks symmetry and positivity of all leading principal minors.
    pub fn new(gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let n = gram.rows();
        let scale = 1.0 + gram.max_magnitude();
        for i in 0..n {
            for j in i + 1..n {
                if !(gram[(i, j)].clone() - gram[(j, i)].clone()).is_negligible(scale) {
                    return Err(Error::NotPositiveDefinite);
                }
            }
        }
        for k in 1..=n {
            let minor = gram.block(0, k, 0, k).determinant();
            if minor.is_negligible(scale.powi(k as i32)) || minor.to_f64() < 0.0 {
                return Err(Error::NotPositiveDefinite);
            }
        }
        let inverse = gram.inverse().ok_or(Error::NotPositiveDefinite)?;
        Ok(Self { gram, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            gram: Matrix::identity(n),
            inverse: Matrix::identity(n),
        }
    }

    pub fn diagonal(entries: &[F]) -> Result<Self> {
        Self::new(Matrix::diagonal(entries))
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix<F> {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "inner product has dimension {}, algebra has {n}",
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        crate::exactlin::matrix::dot(x, &self.gram.apply(y))
    }

    /// `k·ip` for `k > 0`.
    pub fn scaled(&self, k: &F) -> Result<Self> {
        Self::new(self.gram.scale(k))
    }

    /// Metric adjoint `X* = G⁻¹ Xᵀ G`.
    pub fn adjoint(&self, x: &Matrix<F>) -> Matrix<F> {
        &(&self.inverse * &x.transpose()) * &self.gram
    }

    /// `½(X + X*)`.
    pub fn symmetrize(&self, x: &Matrix<F>) -> Matrix<F> {
        (x + &self.adjoint(x)).scale(&F::half())
    }

    /// Squared Frobenius norm in an orthonormal frame: `tr(X* X)`.
    pub fn norm_sq(&self, x: &Matrix<F>) -> F {
        (&self.adjoint(x) * x).trace()
    }

    pub fn is_self_adjoint(&self, x: &Matrix<F>) -> bool {
        let d = &(&self.gram * x) - &(&x.transpose() * &self.gram);
        d.is_negligible(1.0 + self.gram.max_magnitude() * x.max_magnitude())
    }

    /// Orthogonal complement of `vectors` (basis of the solution space).
    pub fn orthogonal_complement(&self, vectors: &[Vec<F>]) -> Vec<Vec<F>> {
        let n = self.dim();
        if vectors.is_empty() {
            return (0..n).map(|i| crate::exactlin::matrix::unit(n, i)).collect();
        }
        let rows: Vec<Vec<F>> = vectors.iter().map(|v| self.gram.apply(v)).collect();
        Matrix::from_rows(rows).nullspace()
    }

    /// Block-diagonal extension `diag(t, G)` with the new direction first.
    pub fn extend_front(&self, t: F) -> Result<Self> {
        let n = self.dim();
        let g = Matrix::from_fn(n + 1, n + 1, |r, c| match (r, c) {
            (0, 0) => t.clone(),
            (0, _) | (_, 0) => F::zero(),
            _ => self.gram[(r - 1, c - 1)].clone(),
        });
        Self::new(g)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> InnerProduct<G> {
        InnerProduct {
            gram: self.gram.map(&f),
            inverse: self.inverse.map(&f),
        }
    }
}
