use super::metric::InnerProduct;
use crate::error::Result;
use crate::exactlin::matrix::unit;
use crate::exactlin::{Field, Matrix};
use crate::lie::{killing_form, numbered, LieAlgebra};

/// Ricci operator of the left-invariant metric `ip`, in the algebra's basis.
///
/// `Ric = M − ½B̂ − S(ad_H)`, with all frame sums rewritten through `G⁻¹` so
/// that no square roots appear.
pub fn ricci_operator<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<Matrix<F>> {
    let n = alg.dim();
    ip.check_dim(n)?;
    let g = ip.gram();
    let gi = ip.gram_inverse();
    let ads = alg.ad_all();
    let t: Vec<Matrix<F>> = ads
        .iter()
        .map(|a| &(gi * &a.transpose()) * g)
        .collect();
    // W_x[a][c] = ⟨[b_a, b_c], b_x⟩
    let lowered: Vec<Vec<Vec<F>>> = (0..n)
        .map(|a| (0..n).map(|c| g.apply(&alg.bracket_basis(a, c))).collect())
        .collect();
    let w: Vec<Matrix<F>> = (0..n)
        .map(|x| Matrix::from_fn(n, n, |a, c| lowered[a][c][x].clone()))
        .collect();
    let u: Vec<Matrix<F>> = w.iter().map(|wy| &(gi * wy) * gi).collect();
    let killing = killing_form(alg).matrix;
    let half = F::half();
    let quarter = half.clone() * half.clone();
    let m = Matrix::from_fn(n, n, |x, y| {
        let first = (&t[x] * &ads[y]).trace();
        let mut second = F::zero();
        for a in 0..n {
            for c in 0..n {
                let wx = &w[x][(a, c)];
                if !wx.is_zero() {
                    second = second + wx.clone() * u[y][(a, c)].clone();
                }
            }
        }
        -(half.clone() * first) + quarter.clone() * second - half.clone() * killing[(x, y)].clone()
    });
    let tau: Vec<F> = ads.iter().map(Matrix::trace).collect();
    let h = gi.apply(&tau);
    let ad_h = alg.ad(&h);
    Ok(&(gi * &m) - &ip.symmetrize(&ad_h))
}

/// Orthogonal (unnormalized) Gram–Schmidt frame: columns of the returned
/// matrix, together with their squared lengths.
fn orthogonal_frame<F: Field>(ip: &InnerProduct<F>) -> (Matrix<F>, Vec<F>) {
    let n = ip.dim();
    let mut frame: Vec<Vec<F>> = Vec::new();
    let mut norms: Vec<F> = Vec::new();
    for i in 0..n {
        let mut v = unit(n, i);
        for (f, nf) in frame.iter().zip(&norms) {
            let k = ip.eval(&v, f) / nf.clone();
            v = v
                .iter()
                .zip(f)
                .map(|(a, b)| a.clone() - k.clone() * b.clone())
                .collect();
        }
        norms.push(ip.eval(&v, &v));
        frame.push(v);
    }
    (Matrix::from_columns(n, &frame), norms)
}

/// Levi-Civita data in an orthogonal frame: the connection operators
/// `L_i = ∇_{f_i}` and the structure constants in that frame.
struct FrameConnection<F: Field> {
    frame: Matrix<F>,
    norms: Vec<F>,
    alg: LieAlgebra<F>,
    nabla: Vec<Matrix<F>>,
}

fn frame_connection<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<FrameConnection<F>> {
    let n = alg.dim();
    ip.check_dim(n)?;
    let (frame, norms) = orthogonal_frame(ip);
    let fa = alg.change_basis(&frame, numbered("f", n))?;
    let inner = |u: &[F], v: &[F]| {
        (0..n).fold(F::zero(), |acc, l| acc + norms[l].clone() * u[l].clone() * v[l].clone())
    };
    let brackets: Vec<Vec<Vec<F>>> = (0..n)
        .map(|i| (0..n).map(|j| fa.bracket_basis(i, j)).collect())
        .collect();
    let e = |i: usize| unit::<F>(n, i);
    let nabla = (0..n)
        .map(|i| {
            Matrix::from_fn(n, n, |k, j| {
                // 2⟨∇_x y, z⟩ = ⟨[x,y],z⟩ − ⟨[y,z],x⟩ + ⟨[z,x],y⟩
                let koszul = inner(&brackets[i][j], &e(k)) - inner(&brackets[j][k], &e(i))
                    + inner(&brackets[k][i], &e(j));
                koszul * F::half() / norms[k].clone()
            })
        })
        .collect();
    Ok(FrameConnection {
        frame,
        norms,
        alg: fa,
        nabla,
    })
}

impl<F: Field> FrameConnection<F> {
    /// `R(f_i, f_j) = [∇_i, ∇_j] − ∇_{[f_i, f_j]}`.
    fn curvature(&self, i: usize, j: usize) -> Matrix<F> {
        let n = self.norms.len();
        let mut r = self.nabla[i].commutator(&self.nabla[j]);
        let c = self.alg.bracket_basis(i, j);
        for k in 0..n {
            if !c[k].is_zero() {
                r = &r - &self.nabla[k].scale(&c[k]);
            }
        }
        r
    }
}

/// Independent Ricci computation from the Koszul formula and the full
/// curvature tensor.
pub fn ricci_oracle_koszul<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<Matrix<F>> {
    let conn = frame_connection(alg, ip)?;
    let n = alg.dim();
    let curv: Vec<Vec<Matrix<F>>> = (0..n)
        .map(|i| (0..n).map(|j| conn.curvature(i, j)).collect())
        .collect();
    // ric(f_j, f_l) = Σ_i ⟨R(f_i, f_j) f_l, f_i⟩ / |f_i|²
    let ric = Matrix::from_fn(n, n, |j, l| {
        (0..n).fold(F::zero(), |acc, i| acc + curv[i][j][(i, l)].clone())
    });
    let ric_frame = Matrix::from_fn(n, n, |l, j| ric[(j, l)].clone() / conn.norms[l].clone());
    let pinv = conn
        .frame
        .inverse()
        .expect("Gram–Schmidt frame is invertible");
    Ok(&(&conn.frame * &ric_frame) * &pinv)
}

/// Whether the full curvature tensor vanishes.
pub fn is_flat<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<bool> {
    let conn = frame_connection(alg, ip)?;
    let n = alg.dim();
    let scale = conn
        .nabla
        .iter()
        .map(Matrix::max_magnitude)
        .fold(1.0, f64::max);
    Ok((0..n).all(|i| (i + 1..n).all(|j| conn.curvature(i, j).is_negligible(scale * scale))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, qi, Q};

    fn h3() -> LieAlgebra<Q> {
        LieAlgebra::from_brackets("h3", numbered("e", 3), vec![(0, 1, vec![qi(0), qi(0), qi(1)])]).unwrap()
    }

    fn aff() -> LieAlgebra<Q> {
        LieAlgebra::from_brackets("aff", vec!["x".into(), "y".into()], vec![(0, 1, vec![qi(0), qi(1)])]).unwrap()
    }

    #[test]
    fn heisenberg_ricci_both_paths() {
        let expected = Matrix::diagonal(&[q(-1, 2), q(-1, 2), q(1, 2)]);
        let ip = InnerProduct::identity(3);
        assert_eq!(ricci_operator(&h3(), &ip).unwrap(), expected);
        assert_eq!(ricci_oracle_koszul(&h3(), &ip).unwrap(), expected);
    }

    #[test]
    fn hyperbolic_plane() {
        let ip = InnerProduct::identity(2);
        let minus_id = Matrix::identity(2).scale(&qi(-1));
        assert_eq!(ricci_oracle_koszul(&aff(), &ip).unwrap(), minus_id);
        assert_eq!(ricci_operator(&aff(), &ip).unwrap(), minus_id);
        assert!(!is_flat(&aff(), &ip).unwrap());
    }

    #[test]
    fn abelian_is_flat() {
        let a = LieAlgebra::<Q>::abelian("R3", 3);
        let ip = InnerProduct::new(Matrix::from_i64_rows(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 5]])).unwrap();
        assert!(ricci_operator(&a, &ip).unwrap().is_zero());
        assert!(is_flat(&a, &ip).unwrap());
    }

    #[test]
    fn non_orthonormal_metric_agrees() {
        let ip = InnerProduct::new(Matrix::from_rows(vec![
            vec![qi(2), qi(1), qi(0)],
            vec![qi(1), qi(3), q(1, 2)],
            vec![qi(0), q(1, 2), qi(1)],
        ]))
        .unwrap();
        let r = ricci_operator(&h3(), &ip).unwrap();
        assert_eq!(r, ricci_oracle_koszul(&h3(), &ip).unwrap());
        assert!(ip.is_self_adjoint(&r));
    }
}
