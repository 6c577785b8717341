//! Dense row-major matrices over a [`Field`] with canonical row reduction.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::field::{Field, Q};

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { F::zero() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, k: &F) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Largest entry magnitude; the scale for float tolerances.
    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Zero test relative to a reference scale (exact on the rational path).
    pub fn is_negligible(&self, scale: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(scale))
    }

    pub fn frobenius_sq(&self) -> F {
        self.data
            .iter()
            .fold(F::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (&self.transpose() - self).is_negligible(self.max_magnitude())
    }

    /// Column-major flattening, used to vectorize operators.
    pub fn vectorize(&self) -> Vec<F> {
        (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self[(r, c)].clone())
            .collect()
    }

    pub fn unvectorize(rows: usize, cols: usize, v: &[F]) -> Self {
        assert_eq!(v.len(), rows * cols);
        Self::from_fn(rows, cols, |r, c| v[c * rows + r].clone())
    }

    /// Copy of the block `rows[r0..r1] × cols[c0..c1]`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// On the exact path the first nonzero entry is the pivot; on floats the
    /// largest-magnitude entry is, with negligible entries relative to the
    /// matrix scale treated as zero. RREF is unique, so both choices agree on
    /// exact input.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let scale = self.max_magnitude();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut best: Option<(usize, f64)> = None;
            for r in row..m.rows {
                let v = &m[(r, col)];
                if v.is_negligible(scale) {
                    continue;
                }
                let mag = v.magnitude();
                match best {
                    Some((_, b)) if b >= mag => {}
                    _ => best = Some((r, mag)),
                }
                if F::MODE == super::field::Mode::Exact {
                    break;
                }
            }
            let Some((p, _)) = best else {
                for r in row..m.rows {
                    m[(r, col)] = F::zero();
                }
                continue;
            };
            m.swap_rows(row, p);
            let inv = F::one() / m[(row, col)].clone();
            for c in col..m.cols {
                let v = m[(row, c)].clone() * inv.clone();
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() && F::MODE == super::field::Mode::Exact {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = m[(r, c)].clone() - factor.clone() * m[(row, c)].clone();
                    m[(r, c)] = v;
                }
                m[(r, col)] = F::zero();
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column, in column order,
    /// with a 1 in that free slot.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self · x = b` (free variables set to zero), if consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(red.block(0, n, n, 2 * n))
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let scale = self.max_magnitude();
        let mut det = F::one();
        for col in 0..n {
            let mut best: Option<(usize, f64)> = None;
            for r in col..n {
                if m[(r, col)].is_negligible(scale) {
                    continue;
                }
                let mag = m[(r, col)].magnitude();
                if best.is_none_or(|(_, b)| mag > b) {
                    best = Some((r, mag));
                }
            }
            let Some((p, _)) = best else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                let factor = m[(r, col)].clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m[(r, c)].clone() - factor.clone() * m[(col, c)].clone();
                    m[(r, c)] = v;
                }
            }
        }
        det
    }

    /// Coefficients of `det(t·I − self)`, lowest degree first (monic).
    ///
    /// Faddeev–LeVerrier; exact over `Q`.
    pub fn charpoly(&self) -> Vec<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m_k = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k)/k
            let mut next = self * &m_k;
            for i in 0..n {
                next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            m_k = next;
            let am = self * &m_k;
            coeffs[n - k] = -am.trace() / F::from_i64(k as i64);
        }
        coeffs
    }

    /// Evaluates a polynomial (coefficients lowest degree first) at `self`.
    pub fn eval_poly(&self, coeffs: &[F]) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            out = &out * self;
            for i in 0..n {
                out[(i, i)] = out[(i, i)].clone() + c.clone();
            }
        }
        out
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }
}

impl Matrix<Q> {
    /// Least common multiple of all entry denominators.
    pub fn common_denominator(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.data
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()))
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() && F::MODE == super::field::Mode::Exact {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out[(r, c)].clone() + a.clone() * rhs[(k, c)].clone();
                    out[(r, c)] = v;
                }
            }
        }
        out
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn axpy<F: Field>(k: &F, x: &[F], y: &[F]) -> Vec<F> {
    x.iter()
        .zip(y)
        .map(|(a, b)| k.clone() * a.clone() + b.clone())
        .collect()
}

pub fn vec_add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale<F: Field>(k: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| k.clone() * x.clone()).collect()
}

pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()
}

pub fn vec_is_zero<F: Field>(v: &[F]) -> bool {
    let scale = v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    v.iter().all(|x| x.is_negligible(scale.max(1.0)))
}

/// Canonical basis (nonzero RREF rows) of the span of `vectors` in dimension `n`.
pub fn span_basis<F: Field>(n: usize, vectors: &[Vec<F>]) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), n);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Coordinates of `v` in the (independent) `basis`, if `v` lies in its span.
pub fn coordinates<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    if basis.is_empty() {
        return if vec_is_zero(v) { Some(Vec::new()) } else { None };
    }
    let m = Matrix::from_columns(v.len(), basis);
    let x = m.solve(v)?;
    // float path: confirm the residual is small relative to v
    if F::MODE == super::field::Mode::Float {
        let back = m.apply(&x);
        let scale = v.iter().chain(&back).map(|x| x.to_f64().abs()).fold(1.0, f64::max);
        if !vec_sub(&back, v).iter().all(|e| e.is_negligible(scale)) {
            return None;
        }
    }
    Some(x)
}

pub fn in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    coordinates(basis, v).is_some()
}

/// Extends an independent family to a basis of `F^n` with standard unit vectors,
/// returning only the added vectors.
pub fn complete_basis<F: Field>(n: usize, vectors: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut current = vectors.to_vec();
    let mut added = Vec::new();
    for i in 0..n {
        let e = unit::<F>(n, i);
        let mut trial = current.clone();
        trial.push(e.clone());
        if Matrix::from_rows(trial.clone()).rank() == trial.len() {
            current = trial;
            added.push(e);
        }
    }
    added
}

/// Intersection of two subspaces given by bases.
pub fn intersect<F: Field>(n: usize, a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i − Σ y_j b_j = 0.
    let mut cols: Vec<Vec<F>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Matrix::from_columns(n, &cols);
    let kernel = m.nullspace();
    let vecs: Vec<Vec<F>> = kernel
        .iter()
        .map(|k| {
            a.iter()
                .zip(k)
                .fold(vec![F::zero(); n], |acc, (v, c)| axpy(c, v, &acc))
        })
        .collect();
    span_basis(n, &vecs)
}
