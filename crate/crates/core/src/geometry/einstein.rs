use super::metric::InnerProduct;
use super::ricci::ricci_operator;
use super::soliton::{einstein_check, einstein_from_ricci, EinsteinReport, SolitonCertificate};
use crate::derivations::{derivation_algebra, diagonal_derivations, DerivationSpace};
use crate::error::{Error, Result};
use crate::exactlin::{rationalize, Field, Matrix, Spectral, Q};
use crate::lie::{is_nilpotent, nilradical, restrict, LieAlgebra, Subspace};

/// Pre-Einstein derivation of a nilpotent algebra with its spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct PreEinsteinDerivation<F: Field> {
    pub phi: Matrix<F>,
    pub eigenvalues: Vec<(F, usize)>,
}

/// Checks every defining property of a pre-Einstein derivation against `der`.
fn verify_pre_einstein<F: Spectral>(
    alg: &LieAlgebra<F>,
    der: &DerivationSpace<F>,
    phi: &Matrix<F>,
) -> Option<PreEinsteinDerivation<F>> {
    if !alg.is_derivation(phi) {
        return None;
    }
    let scale = 1.0 + phi.max_magnitude();
    for a in &der.basis {
        let lhs = (phi * a).trace();
        if !(lhs - a.trace()).is_negligible(scale * (1.0 + a.max_magnitude())) {
            return None;
        }
    }
    let split = F::jordan_chevalley(phi).ok()?;
    if !split.nilpotent.is_negligible(scale) || !split.imaginary_part.is_negligible(scale) {
        return None;
    }
    let eigenvalues = F::field_eigenvalues(phi)?;
    Some(PreEinsteinDerivation {
        phi: phi.clone(),
        eigenvalues,
    })
}

/// Solves `tr(φ A_j) = tr(A_j)` for `φ = Σ x_k T_k`; returns a particular
/// solution and the dimension of the solution set.
fn trace_system<F: Field>(
    unknowns: &[Matrix<F>],
    against: &[Matrix<F>],
) -> (Option<Matrix<F>>, usize) {
    let n = against.first().map_or(0, Matrix::rows);
    if unknowns.is_empty() {
        return (None, 0);
    }
    let rows: Vec<Vec<F>> = against
        .iter()
        .map(|a| unknowns.iter().map(|t| (t * a).trace()).collect())
        .collect();
    let rhs: Vec<F> = against.iter().map(Matrix::trace).collect();
    let system = Matrix::from_rows(rows);
    let nullity = unknowns.len() - system.rank();
    let phi = system.solve(&rhs).map(|x| {
        x.iter()
            .zip(unknowns)
            .fold(Matrix::zeros(n, n), |acc, (c, t)| &acc + &t.scale(c))
    });
    (phi, nullity)
}

/// Pre-Einstein derivation: first within the diagonal derivations of the
/// given basis, then via the real semisimple part of a solution of the full
/// trace system. Every candidate is verified against all of `Der(n)`.
pub fn pre_einstein<F: Spectral>(n: &LieAlgebra<F>) -> Result<PreEinsteinDerivation<F>> {
    pre_einstein_within(n, None)
}

/// As `pre_einstein`, restricted to derivations commuting with `commute`
/// when given.
fn pre_einstein_within<F: Spectral>(
    n: &LieAlgebra<F>,
    commute: Option<&[Matrix<F>]>,
) -> Result<PreEinsteinDerivation<F>> {
    if !is_nilpotent(n) {
        return Err(Error::NotNilpotent);
    }
    let dim = n.dim();
    if dim == 0 {
        return Ok(PreEinsteinDerivation {
            phi: Matrix::zeros(0, 0),
            eigenvalues: Vec::new(),
        });
    }
    let der = derivation_algebra(n);
    let commutes = |phi: &Matrix<F>| {
        commute.is_none_or(|ops| {
            ops.iter()
                .all(|o| phi.commutator(o).is_negligible(1.0 + phi.max_magnitude() * o.max_magnitude()))
        })
    };
    let restrict_to_centralizer = |space: Vec<Matrix<F>>| -> Vec<Matrix<F>> {
        match commute {
            None => space,
            Some(ops) => centralizer(&space, ops),
        }
    };

    let diag = restrict_to_centralizer(diagonal_derivations(n).basis);
    if let (Some(phi), _) = trace_system(&diag, &der.basis) {
        if let Some(v) = verify_pre_einstein(n, &der, &phi).filter(|v| commutes(&v.phi)) {
            return Ok(v);
        }
    }
    let full = restrict_to_centralizer(der.basis.clone());
    let (particular, nullity) = trace_system(&full, &der.basis);
    if let Some(phi) = &particular {
        if let Ok(split) = F::jordan_chevalley(phi) {
            if let Some(v) = verify_pre_einstein(n, &der, &split.real_part).filter(|v| commutes(&v.phi)) {
                return Ok(v);
            }
        }
    }
    Err(Error::TorusHeuristicFailed {
        affine_dim: nullity,
        particular: particular.map(|p| p.entries().iter().map(|x| x.to_string()).collect()),
    })
}

/// Elements of `span(space)` commuting with every operator in `ops`.
fn centralizer<F: Field>(space: &[Matrix<F>], ops: &[Matrix<F>]) -> Vec<Matrix<F>> {
    if space.is_empty() {
        return Vec::new();
    }
    let n = space[0].rows();
    let mut rows: Vec<Vec<F>> = Vec::new();
    for o in ops {
        let comms: Vec<Vec<F>> = space.iter().map(|s| s.commutator(o).vectorize()).collect();
        for e in 0..n * n {
            rows.push(comms.iter().map(|c| c[e].clone()).collect());
        }
    }
    if rows.is_empty() {
        return space.to_vec();
    }
    Matrix::from_rows(rows)
        .nullspace()
        .iter()
        .map(|coef| {
            coef.iter()
                .zip(space)
                .fold(Matrix::zeros(n, n), |acc, (c, s)| &acc + &s.scale(c))
        })
        .collect()
}

/// Decomposition `s = n ⊕ a` with `a` the metric complement of the nilradical.
pub struct NilradicalSplit<F: Field> {
    pub nilradical: Subspace<F>,
    pub complement: Vec<Vec<F>>,
}

pub fn nilradical_split<F: Field>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<NilradicalSplit<F>> {
    let nil = nilradical(alg)?;
    let complement = ip.orthogonal_complement(nil.basis());
    Ok(NilradicalSplit {
        nilradical: nil,
        complement,
    })
}

/// `op` restricted to the invariant subspace `sub`, in `sub`'s basis.
fn restrict_operator<F: Field>(op: &Matrix<F>, sub: &Subspace<F>) -> Result<Matrix<F>> {
    let cols = sub
        .basis()
        .iter()
        .map(|v| sub.coordinates(&op.apply(v)).ok_or(Error::NotClosed))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(sub.dim(), &cols))
}

/// Result of the rank-one Einstein extension.
#[derive(Debug, Clone)]
pub struct EinsteinExtension<F: Field> {
    pub algebra: LieAlgebra<F>,
    pub metric: InnerProduct<F>,
    /// Squared length of the new direction.
    pub t: F,
    pub derivation: Matrix<F>,
    pub pre_einstein: PreEinsteinDerivation<F>,
    pub check: EinsteinReport<F>,
}

/// Extends a solvsoliton `(s, ip)` by its pre-Einstein derivation to an
/// Einstein metric, solving for the length of the new direction.
pub fn einstein_extension<F: Spectral>(
    s: &LieAlgebra<F>,
    ip: &InnerProduct<F>,
    cert: &SolitonCertificate<F>,
) -> Result<EinsteinExtension<F>> {
    if !cert.is_soliton() || !cert.algebraic || !s.is_derivation(&cert.d) {
        return Err(Error::InvalidCertificate);
    }
    if einstein_check(s, ip)?.is_einstein {
        return Err(Error::AlreadyEinstein);
    }
    let split = nilradical_split(s, ip)?;
    let nil = &split.nilradical;
    let n_alg = restrict(s, nil, "n")?;
    let ad_a: Vec<Matrix<F>> = split
        .complement
        .iter()
        .map(|a| restrict_operator(&s.ad(a), nil))
        .collect::<Result<_>>()?;
    let mut pe = pre_einstein(&n_alg)?;
    let scale = |m: &Matrix<F>| 1.0 + m.max_magnitude() * pe.phi.max_magnitude();
    if !ad_a.iter().all(|o| pe.phi.commutator(o).is_negligible(scale(o))) {
        pe = pre_einstein_within(&n_alg, Some(&ad_a)).map_err(|_| Error::CommutationFailed)?;
    }

    // δ̂ = δ on n, 0 on a, expressed in the basis of s
    let dim = s.dim();
    let mut cols: Vec<Vec<F>> = nil.basis().to_vec();
    cols.extend(split.complement.iter().cloned());
    let p = Matrix::from_columns(dim, &cols);
    let k = nil.dim();
    let block = Matrix::from_fn(dim, dim, |r, c| {
        if r < k && c < k {
            pe.phi[(r, c)].clone()
        } else {
            F::zero()
        }
    });
    let pinv = p.inverse().ok_or(Error::DegenerateComplement)?;
    let delta = &(&p * &block) * &pinv;
    let ext = s.semidirect(format!("{}_E", s.name()), std::slice::from_ref(&delta), vec!["H".into()])?;

    let t = solve_scale(&ext, ip)?;
    let metric = ip.extend_front(t.clone())?;
    let check = einstein_check(&ext, &metric)?;
    if !check.is_einstein {
        return Err(Error::NoEinsteinScale);
    }
    Ok(EinsteinExtension {
        algebra: ext,
        metric,
        t,
        derivation: delta,
        pre_einstein: pe,
        check,
    })
}

/// Traceless part of the Ricci operator for the new direction of length² `t`.
fn traceless_ricci<F: Field>(ext: &LieAlgebra<F>, ip: &InnerProduct<F>, t: F) -> Result<Matrix<F>> {
    let metric = ip.extend_front(t)?;
    let ric = ricci_operator(ext, &metric)?;
    let c = ric.trace() / F::from_i64(ext.dim() as i64);
    Ok(&ric - &Matrix::identity(ext.dim()).scale(&c))
}

/// Finds `t > 0` with `Ric = c·Id`. The Ricci operator is affine in `1/t`,
/// so two samples determine it; the candidate is verified and a scalar
/// search is used if verification fails.
fn solve_scale<F: Field>(ext: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<F> {
    let e1 = traceless_ricci(ext, ip, F::one())?;
    let e2 = traceless_ricci(ext, ip, F::half())?;
    // E(u) = e1 + (u − 1)(e2 − e1), u = 1/t
    let delta = &e2 - &e1;
    let dd = crate::exactlin::matrix::dot(&delta.vectorize(), &delta.vectorize());
    if !dd.is_negligible(1.0) {
        let s = -(crate::exactlin::matrix::dot(&e1.vectorize(), &delta.vectorize()) / dd);
        let u = s + F::one();
        if u.to_f64() > 0.0 {
            let t = F::one() / u;
            let metric = ip.extend_front(t.clone())?;
            if einstein_from_ricci(&ricci_operator(ext, &metric)?, &metric).is_einstein {
                return Ok(t);
            }
        }
    }
    scalar_search(ext, ip)
}

fn scalar_search<F: Field>(ext: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<F> {
    let ext_f = ext.map_field(|x| x.to_f64());
    let ip_f = ip.map_field(|x| x.to_f64());
    let residual = |log_t: f64| -> f64 {
        let t = log_t.exp();
        match traceless_ricci(&ext_f, &ip_f, t) {
            Ok(e) => e.frobenius_sq(),
            Err(_) => f64::INFINITY,
        }
    };
    // golden-section search on log t over [1e-6, 1e6]
    let (mut lo, mut hi) = (1e-6f64.ln(), 1e6f64.ln());
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (residual(x1), residual(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = residual(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = residual(x2);
        }
    }
    let t = ((lo + hi) / 2.0).exp();
    if residual(t.ln()) >= 1e-20 {
        return Err(Error::NoEinsteinScale);
    }
    let candidate = match F::MODE {
        crate::exactlin::Mode::Float => F::from_q(&rationalize(t, i64::MAX / 4).ok_or(Error::NoEinsteinScale)?),
        crate::exactlin::Mode::Exact => F::from_q(&rationalize(t, 1_000_000).ok_or(Error::NoEinsteinScale)?),
    };
    let metric = ip.extend_front(candidate.clone())?;
    if einstein_check(ext, &metric)?.is_einstein {
        Ok(candidate)
    } else {
        Err(Error::NoEinsteinScale)
    }
}

/// Structure checks on an Einstein solvmanifold.
#[derive(Debug, Clone, PartialEq)]
pub struct HeberReport<F: Field> {
    pub complement_abelian: bool,
    pub complement_semisimple: bool,
    /// Spectrum of the real part of `ad(H)` on the nilradical.
    pub spectrum: Option<Vec<(F, usize)>>,
    /// Rational `λ > 0` making that spectrum positive coprime integers.
    pub scaling: Option<Q>,
}

impl<F: Field> HeberReport<F> {
    pub fn passes(&self) -> bool {
        self.complement_abelian && self.complement_semisimple && self.scaling.is_some()
    }
}

pub fn heber_properties<F: Spectral>(alg: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<HeberReport<F>> {
    let split = nilradical_split(alg, ip)?;
    let a = &split.complement;
    let scale = 1.0 + alg.ad_all().iter().map(Matrix::max_magnitude).fold(0.0, f64::max);
    let complement_abelian = a.iter().enumerate().all(|(i, x)| {
        a[i + 1..]
            .iter()
            .all(|y| alg.bracket(x, y).iter().all(|v| v.is_negligible(scale * scale)))
    });
    let complement_semisimple = a.iter().all(|x| {
        F::jordan_chevalley(&alg.ad(x)).is_ok_and(|j| j.nilpotent.is_negligible(scale))
    });
    let tau: Vec<F> = alg.ad_all().iter().map(Matrix::trace).collect();
    let h = ip.gram_inverse().apply(&tau);
    let ad_h = restrict_operator(&alg.ad(&h), &split.nilradical)?;
    let spectrum = F::jordan_chevalley(&ad_h)
        .ok()
        .and_then(|j| F::field_eigenvalues(&j.real_part));
    let scaling = spectrum.as_ref().and_then(|sp| {
        let values: Option<Vec<Q>> = sp.iter().map(|(v, _)| v.to_rational()).collect();
        crate::exactlin::jordan::integral_scaling(&values?)
    });
    Ok(HeberReport {
        complement_abelian,
        complement_semisimple,
        spectrum,
        scaling,
    })
}
