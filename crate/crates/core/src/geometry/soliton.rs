use super::metric::InnerProduct;
use super::ricci::{is_flat, ricci_operator};
use crate::derivations::{derivation_algebra, symmetric_derivations};
use crate::error::Result;
use crate::exactlin::{Field, Matrix};
use crate::lie::LieAlgebra;

/// Witness for `Ric = c·Id + ½(D + D*)` (or its least-squares defect).
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonCertificate<F: Field> {
    pub c: F,
    pub d: Matrix<F>,
    /// `‖Ric − cI − ½(D + D*)‖²` in an orthonormal frame.
    pub residual_sq: F,
    /// `D` is self-adjoint and the residual vanishes.
    pub algebraic: bool,
    /// `c = 0`, residual zero and the curvature tensor vanishes.
    pub flat: bool,
}

impl<F: Field> SolitonCertificate<F> {
    pub fn is_soliton(&self) -> bool {
        let scale = 1.0 + self.d.max_magnitude() + self.c.magnitude();
        self.residual_sq.is_negligible(scale * scale)
    }
}

/// Solve `Ric = cI + ½(D + D*)` over `c` and `D ∈ Der(alg)`.
///
/// A self-adjoint derivation is tried first; otherwise the least-squares
/// minimizer over all derivations is returned with its residual.
pub fn soliton_solve<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<SolitonCertificate<F>> {
    let n = alg.dim();
    let ric = ricci_operator(alg, ip)?;
    let sym = symmetric_derivations(alg, ip)?;
    let flat_check = |c: &F, residual_zero: bool| -> Result<bool> {
        Ok(residual_zero && c.is_negligible(1.0) && is_flat(alg, ip)?)
    };

    // Σ a_k D_k + c·I = Ric, derivation unknowns first so that c is the
    // free variable when the identity is itself a derivation.
    let mut cols: Vec<Vec<F>> = sym.basis.iter().map(Matrix::vectorize).collect();
    cols.push(Matrix::<F>::identity(n).vectorize());
    let system = Matrix::from_columns(n * n, &cols);
    if let Some(sol) = system.solve(&ric.vectorize()) {
        let k = sym.dim();
        let d = sym.combine(&sol[..k]);
        let c = sol[k].clone();
        let scale = 1.0 + ric.max_magnitude();
        let check = &(&ric - &Matrix::identity(n).scale(&c)) - &d;
        if check.is_negligible(scale) {
            let flat = flat_check(&c, true)?;
            return Ok(SolitonCertificate {
                c,
                d,
                residual_sq: F::zero(),
                algebraic: true,
                flat,
            });
        }
    }

    let der = derivation_algebra(alg);
    let mut gens: Vec<Matrix<F>> = der.basis.iter().map(|d| ip.symmetrize(d)).collect();
    gens.push(Matrix::identity(n));
    let m = gens.len();
    // self-adjoint operators: ⟨X, Y⟩ = tr(XY)
    let gram = Matrix::from_fn(m, m, |i, j| (&gens[i] * &gens[j]).trace());
    let rhs: Vec<F> = gens.iter().map(|g| (g * &ric).trace()).collect();
    let sol = gram
        .solve(&rhs)
        .ok_or_else(|| crate::Error::Internal("normal equations are inconsistent".into()))?;
    let d = der.combine(&sol[..m - 1]);
    let c = sol[m - 1].clone();
    let resid = &(&ric - &Matrix::identity(n).scale(&c)) - &ip.symmetrize(&d);
    let residual_sq = ip.norm_sq(&resid);
    let scale = 1.0 + ric.max_magnitude();
    let zero = residual_sq.is_negligible(scale * scale);
    let flat = flat_check(&c, zero)?;
    Ok(SolitonCertificate {
        algebraic: zero && ip.is_self_adjoint(&d),
        c,
        d,
        residual_sq,
        flat,
    })
}

/// Outcome of the Einstein test `Ric = c·Id`.
#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinReport<F: Field> {
    pub is_einstein: bool,
    pub c: F,
    pub residual_sq: F,
}

pub fn einstein_check<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<EinsteinReport<F>> {
    let ric = ricci_operator(alg, ip)?;
    Ok(einstein_from_ricci(&ric, ip))
}

pub(crate) fn einstein_from_ricci<F: Field>(ric: &Matrix<F>, ip: &InnerProduct<F>) -> EinsteinReport<F> {
    let n = ric.rows();
    let c = if n == 0 {
        F::zero()
    } else {
        ric.trace() / F::from_i64(n as i64)
    };
    let e = ric - &Matrix::identity(n).scale(&c);
    let residual_sq = ip.norm_sq(&e);
    let scale = 1.0 + ric.max_magnitude();
    EinsteinReport {
        is_einstein: residual_sq.is_negligible(scale * scale),
        c,
        residual_sq,
    }
}
