//! Jordan–Chevalley decomposition with the real/imaginary split of the
//! semisimple part.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;

use super::field::{Field, Q};
use super::matrix::Matrix;
use super::poly::Poly;
use super::LinAlgError;

/// `m = semisimple + nilpotent`, `semisimple = real_part + imaginary_part`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanSplit<F: Field> {
    pub semisimple: Matrix<F>,
    pub nilpotent: Matrix<F>,
    pub real_part: Matrix<F>,
    pub imaginary_part: Matrix<F>,
}

/// Spectral primitives that differ between the exact and floating paths.
pub trait Spectral: Field {
    fn jordan_chevalley(m: &Matrix<Self>) -> Result<JordanSplit<Self>, LinAlgError>;

    /// Every eigenvalue (over `C`) is real.
    fn has_real_spectrum(m: &Matrix<Self>) -> bool;

    /// Every eigenvalue is purely imaginary (zero included).
    fn has_imaginary_spectrum(m: &Matrix<Self>) -> bool;

    /// Distinct eigenvalues with algebraic multiplicity, provided all of them
    /// lie in the field (rational on the exact path, real on the float path).
    fn field_eigenvalues(m: &Matrix<Self>) -> Option<Vec<(Self, usize)>>;
}

impl Spectral for Q {
    fn jordan_chevalley(m: &Matrix<Q>) -> Result<JordanSplit<Q>, LinAlgError> {
        jordan_chevalley_exact(m)
    }

    fn has_real_spectrum(m: &Matrix<Q>) -> bool {
        if m.rows() == 0 {
            return true;
        }
        let p = Poly::new(m.charpoly()).squarefree();
        p.real_root_count().ok() == p.degree()
    }

    fn has_imaginary_spectrum(m: &Matrix<Q>) -> bool {
        if m.rows() == 0 {
            return true;
        }
        let p = Poly::new((m * m).charpoly()).squarefree();
        let d = p.degree();
        p.real_root_count().ok() == d && p.nonpositive_root_count().ok() == d
    }

    fn field_eigenvalues(m: &Matrix<Q>) -> Option<Vec<(Q, usize)>> {
        rational_eigenvalues(m).ok().flatten()
    }
}

impl Spectral for f64 {
    fn jordan_chevalley(m: &Matrix<f64>) -> Result<JordanSplit<f64>, LinAlgError> {
        jordan_chevalley_float(m)
    }

    fn has_real_spectrum(m: &Matrix<f64>) -> bool {
        let scale = 1.0 + m.max_magnitude();
        eigenvalues_f64(m)
            .iter()
            .all(|z| z.im.abs() <= EIG_TOL * scale)
    }

    fn has_imaginary_spectrum(m: &Matrix<f64>) -> bool {
        let scale = 1.0 + m.max_magnitude();
        eigenvalues_f64(m)
            .iter()
            .all(|z| z.re.abs() <= EIG_TOL * scale)
    }

    fn field_eigenvalues(m: &Matrix<f64>) -> Option<Vec<(f64, usize)>> {
        let scale = 1.0 + m.max_magnitude();
        let eig = eigenvalues_f64(m);
        if eig.iter().any(|z| z.im.abs() > EIG_TOL * scale) {
            return None;
        }
        let mut re: Vec<f64> = eig.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
        for x in re {
            match out.last_mut() {
                Some((_, group)) if (x - group[group.len() - 1]).abs() <= EIG_TOL * scale => {
                    group.push(x)
                }
                _ => out.push((x, vec![x])),
            }
        }
        Some(
            out.into_iter()
                .map(|(_, g)| (g.iter().sum::<f64>() / g.len() as f64, g.len()))
                .collect(),
        )
    }
}

/// Tolerance for classifying numerically computed eigenvalues.
const EIG_TOL: f64 = 1e-6;

pub(crate) fn eigenvalues_f64(m: &Matrix<f64>) -> Vec<Complex64> {
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let dm = DMatrix::from_row_slice(n, n, m.entries());
    // Unshifted-stall cases (permutation-like matrices) are retried after an
    // orthogonal change of basis.
    for attempt in 0..4u32 {
        let work = if attempt == 0 {
            dm.clone()
        } else {
            let mut seed = 0x9e37_79b9_7f4a_7c15_u64.wrapping_mul(attempt as u64 + 1);
            let r = DMatrix::from_fn(n, n, |_, _| {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                (seed % 2001) as f64 / 1000.0 - 1.0
            });
            let q = r.qr().q();
            q.transpose() * &dm * &q
        };
        if let Some(schur) = Schur::try_new(work, f64::EPSILON, 100 * n * n + 1000) {
            return schur.complex_eigenvalues().iter().copied().collect();
        }
    }
    panic!("eigenvalue iteration failed to converge");
}

fn poly_roots_f64(p: &Poly) -> Vec<Complex64> {
    let p = p.monic();
    let n = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return Vec::new(),
    };
    // companion matrix
    let comp = Matrix::<f64>::from_fn(n, n, |r, c| {
        if c == n - 1 {
            -Field::to_f64(&p.coeffs()[r])
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    eigenvalues_f64(&comp)
}

fn exact_semisimple_part(m: &Matrix<Q>) -> Result<Matrix<Q>, LinAlgError> {
    let n = m.rows();
    let mu = Poly::new(m.charpoly()).squarefree();
    let dmu = mu.derivative();
    let mut s = m.clone();
    // Newton iteration on mu; converges in O(log n) steps.
    for _ in 0..=n + 2 {
        let val = s.eval_poly(mu.coeffs());
        if val.is_zero() {
            return Ok(s);
        }
        let deriv = s.eval_poly(dmu.coeffs());
        let inv = deriv.inverse().ok_or_else(|| {
            LinAlgError::Internal("derivative of squarefree polynomial not invertible".into())
        })?;
        s = &s - &(&val * &inv);
    }
    Err(LinAlgError::Internal("semisimple Newton iteration did not converge".into()))
}

/// Exact decomposition over `Q`.
///
/// The semisimple part is a polynomial in `m` from Newton's method on the
/// squarefree part of the characteristic polynomial. The real part is a
/// polynomial in the semisimple part obtained by CRT over the factors of the
/// squarefree polynomial: `t` on the real-rooted factor, the constant `a` on
/// each factor whose roots are all non-real with real part `a ∈ Q`. Factors
/// are located numerically and then certified exactly.
pub fn jordan_chevalley_exact(m: &Matrix<Q>) -> Result<JordanSplit<Q>, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let semisimple = exact_semisimple_part(m)?;
    let nilpotent = m - &semisimple;

    let (real_part, imaginary_part) = if Q::has_real_spectrum(m) {
        (semisimple.clone(), Matrix::zeros(n, n))
    } else {
        let real = exact_real_part(&semisimple)?;
        let imag = &semisimple - &real;
        (real, imag)
    };

    let split = JordanSplit {
        semisimple,
        nilpotent,
        real_part,
        imaginary_part,
    };
    if !Q::has_real_spectrum(&split.real_part) || !Q::has_imaginary_spectrum(&split.imaginary_part)
    {
        return Err(LinAlgError::IrrationalSpectrum(
            "real/imaginary split failed certification".into(),
        ));
    }
    Ok(split)
}

fn exact_real_part(s: &Matrix<Q>) -> Result<Matrix<Q>, LinAlgError> {
    let den = s.common_denominator();
    let dq = Q::from_integer(den.clone());
    let scaled = s.scale(&dq);
    let mu = Poly::new(scaled.charpoly()).squarefree();
    let roots = poly_roots_f64(&mu);
    let rho = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-6 * rho;

    let mut upper: Vec<Complex64> = roots.iter().copied().filter(|z| z.im > tol).collect();
    upper.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for z in upper {
        match groups.last_mut() {
            Some(g) if (g[0].re - z.re).abs() <= tol => g.push(z),
            _ => groups.push(vec![z]),
        }
    }

    let mut residual = mu.clone();
    let mut pieces: Vec<(Poly, Poly)> = Vec::new();
    for g in &groups {
        let factor = integer_block_poly(g).ok_or_else(|| {
            LinAlgError::IrrationalSpectrum("complex eigenvalue block has no integral factor".into())
        })?;
        let (quot, rem) = residual.div_rem(&factor);
        if !rem.is_zero() {
            return Err(LinAlgError::IrrationalSpectrum(
                "complex eigenvalue block is not a rational factor".into(),
            ));
        }
        let k = factor.degree().unwrap();
        let a = -factor.coeffs()[k - 1].clone() / Q::from_integer(BigInt::from(k as i64));
        if !all_roots_have_real_part(&factor, &a) {
            return Err(LinAlgError::IrrationalSpectrum(
                "eigenvalue real parts are not rational".into(),
            ));
        }
        residual = quot;
        pieces.push((factor, Poly::constant(a)));
    }
    let rd = residual.degree().unwrap_or(0);
    if rd > 0 {
        if residual.real_root_count()? != rd {
            return Err(LinAlgError::IrrationalSpectrum(
                "eigenvalue real parts lie outside Q".into(),
            ));
        }
        pieces.push((residual, Poly::x()));
    }

    let g = crt(&pieces)?;
    Ok(scaled.eval_poly(g.coeffs()).scale(&(Q::one() / dq)))
}

/// Π (t − z)(t − z̄), rounded to integer coefficients when that is exact enough.
fn integer_block_poly(upper_roots: &[Complex64]) -> Option<Poly> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for z in upper_roots {
        for r in [*z, z.conj()] {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if c.re.abs() > 1e15 {
            return None;
        }
        let rounded = c.re.round();
        if (c.re - rounded).abs() > 1e-3 * (1.0 + c.re.abs()).sqrt() {
            return None;
        }
        out.push(Q::from_integer(BigInt::from(rounded as i64)));
    }
    Some(Poly::new(out))
}

/// Certifies that every root of `f` is non-real with real part exactly `a`:
/// `f(a + s) = h(s²)` with `h` having only negative real roots.
fn all_roots_have_real_part(f: &Poly, a: &Q) -> bool {
    let shifted = f.compose_affine(a, &Q::one());
    let c = shifted.coeffs();
    if c.iter().skip(1).step_by(2).any(|x| !x.is_zero()) {
        return false;
    }
    let h = Poly::new(c.iter().step_by(2).cloned().collect());
    let hs = h.squarefree();
    let d = hs.degree().unwrap_or(0);
    if h.eval(&Q::zero()).is_zero() {
        return false;
    }
    hs.real_root_count().ok() == Some(d) && hs.nonpositive_root_count().ok() == Some(d)
}

/// Chinese remaindering over pairwise coprime moduli.
fn crt(pieces: &[(Poly, Poly)]) -> Result<Poly, LinAlgError> {
    let mut acc = Poly::zero();
    let mut modulus = Poly::constant(Q::one());
    for (f, r) in pieces {
        let (g, s, _) = modulus.ext_gcd(f);
        if g.degree() != Some(0) {
            return Err(LinAlgError::Internal("CRT moduli not coprime".into()));
        }
        // acc + modulus · ((r − acc) · modulus⁻¹ mod f)
        let diff = r.sub(&acc);
        let k = diff.mul(&s).div_rem(f).1;
        acc = acc.add(&modulus.mul(&k));
        modulus = modulus.mul(f);
        acc = acc.div_rem(&modulus).1;
    }
    Ok(acc)
}

/// Floating decomposition by Hermite interpolation over clustered eigenvalues.
pub fn jordan_chevalley_float(m: &Matrix<f64>) -> Result<JordanSplit<f64>, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        let z = Matrix::zeros(0, 0);
        return Ok(JordanSplit {
            semisimple: z.clone(),
            nilpotent: z.clone(),
            real_part: z.clone(),
            imaginary_part: z,
        });
    }
    let eig = eigenvalues_f64(m);
    let rho = eig.iter().map(|z| z.norm()).fold(m.max_magnitude(), f64::max).max(1e-300);
    let tol = 1e-5 * rho;
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    let mut members: Vec<Vec<Complex64>> = Vec::new();
    for z in eig {
        match members
            .iter()
            .position(|g| g.iter().any(|w| (w - z).norm() <= tol))
        {
            Some(i) => members[i].push(z),
            None => members.push(vec![z]),
        }
    }
    for g in &members {
        let center = g.iter().sum::<Complex64>() / g.len() as f64;
        let center = if center.im.abs() <= tol {
            Complex64::new(center.re, 0.0)
        } else {
            center
        };
        clusters.push((center, g.len()));
    }
    if rho == 0.0 || clusters.iter().all(|(c, _)| c.norm() <= tol) {
        // nilpotent input
        let z = Matrix::zeros(n, n);
        return Ok(JordanSplit {
            semisimple: z.clone(),
            nilpotent: m.clone(),
            real_part: z.clone(),
            imaginary_part: z,
        });
    }
    let scaled = m.scale(&(1.0 / rho));
    let semisimple = hermite_eval(&scaled, &clusters, rho, |c| c);
    let real_part = hermite_eval(&scaled, &clusters, rho, |c| Complex64::new(c.re, 0.0));
    let nilpotent = m - &semisimple;
    let imaginary_part = &semisimple - &real_part;
    Ok(JordanSplit {
        semisimple,
        nilpotent,
        real_part,
        imaginary_part,
    })
}

/// Evaluates at `m_scaled` the polynomial `f` with `f(c/ρ) = target(c)` and
/// vanishing derivatives up to each cluster's multiplicity.
fn hermite_eval(
    m_scaled: &Matrix<f64>,
    clusters: &[(Complex64, usize)],
    rho: f64,
    target: impl Fn(Complex64) -> Complex64,
) -> Matrix<f64> {
    let n: usize = clusters.iter().map(|(_, k)| k).sum();
    let mut a = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
    let mut row = 0;
    for &(c, mult) in clusters {
        let x = c / rho;
        for deriv in 0..mult {
            for j in deriv..n {
                // d^deriv/dx^deriv x^j = j!/(j-deriv)! x^(j-deriv)
                let falling: f64 = ((j - deriv + 1)..=j).map(|v| v as f64).product();
                a[row][j] = x.powu((j - deriv) as u32) * falling;
            }
            a[row][n] = if deriv == 0 {
                target(c)
            } else {
                Complex64::new(0.0, 0.0)
            };
            row += 1;
        }
    }
    let coeffs = solve_complex(a);
    let size = m_scaled.rows();
    let mut re = Matrix::<f64>::zeros(size, size);
    let mut im = Matrix::<f64>::zeros(size, size);
    for c in coeffs.iter().rev() {
        re = &re * m_scaled;
        im = &im * m_scaled;
        for i in 0..size {
            re[(i, i)] += c.re;
            im[(i, i)] += c.im;
        }
    }
    re
}

fn solve_complex(mut a: Vec<Vec<Complex64>>) -> Vec<Complex64> {
    let n = a.len();
    for col in 0..n {
        let p = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        a.swap(col, p);
        let piv = a[col][col];
        if piv.norm() == 0.0 {
            continue;
        }
        for c in col..=n {
            a[col][c] /= piv;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f.norm() == 0.0 {
                    continue;
                }
                for c in col..=n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    a.iter().map(|row| row[n]).collect()
}

/// Eigenvalues with multiplicity, if all of them are rational.
pub fn rational_eigenvalues(m: &Matrix<Q>) -> Result<Option<Vec<(Q, usize)>>, LinAlgError> {
    let chi = Poly::new(m.charpoly());
    let roots = chi.rational_roots()?;
    let with_mult: Vec<(Q, usize)> = roots
        .into_iter()
        .map(|r| {
            let k = chi.multiplicity(&r);
            (r, k)
        })
        .collect();
    let total: usize = with_mult.iter().map(|(_, k)| k).sum();
    Ok((total == m.rows()).then_some(with_mult))
}

/// Smallest positive rational `λ` making every value of `values` (all
/// positive) an integer with gcd 1; `None` if any value is not positive.
pub fn integral_scaling(values: &[Q]) -> Option<Q> {
    use num_integer::Integer;
    if values.is_empty() || values.iter().any(|v| !v.is_positive()) {
        return None;
    }
    let den = values
        .iter()
        .fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Q::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::from(0), |acc, v| acc.gcd(v));
    Some(Q::new(den, g))
}
