//! Modifications of solvable algebras, the σ-map to the completely solvable
//! representative, the standard modification and equivalence decisions.

use crate::derivations::{imaginary_type_check, skew_derivations};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{coordinates, span_basis, vec_add};
use crate::exactlin::{Field, Matrix, Spectral};
use crate::geometry::InnerProduct;
use crate::lie::{
    cartan_subalgebra, complete_solvability_check, invariant_profile, is_solvable, killing_form,
    nilradical, InvariantProfile, LieAlgebra, Subspace,
};

/// A linear map `φ: r → g` together with the outcome of each condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ModificationMap<F: Field> {
    pub ambient: LieAlgebra<F>,
    /// Basis of `r` in ambient coordinates.
    pub source: Vec<Vec<F>>,
    /// Column `i` is `φ(source[i])` in ambient coordinates.
    pub phi: Matrix<F>,
    /// `source[i] + φ(source[i])`.
    pub modified: Vec<Vec<F>>,
    pub closed: bool,
    pub compact_imaginary: bool,
    pub preserves_source: bool,
    pub normal: bool,
}

impl<F: Field> ModificationMap<F> {
    pub fn is_valid(&self) -> bool {
        self.closed && self.compact_imaginary && self.preserves_source
    }
}

fn spans_contain<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    basis.is_empty() && v.iter().all(Field::is_zero) || coordinates(basis, v).is_some()
}

/// Replaces `r = span(source)` inside `ambient` by `r′ = {X + φ(X)}` and checks
/// the three modification conditions and normality.
pub fn apply_modification<F: Spectral>(
    ambient: &LieAlgebra<F>,
    source: &[Vec<F>],
    names: Vec<String>,
    phi: &Matrix<F>,
) -> Result<(LieAlgebra<F>, ModificationMap<F>)> {
    let n = ambient.dim();
    let k = source.len();
    if phi.rows() != n || phi.cols() != k || names.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "modification map is {}x{}, expected {n}x{k}",
            phi.rows(),
            phi.cols()
        )));
    }
    if span_basis(n, source).len() != k {
        return Err(Error::DimensionMismatch("source vectors are dependent".into()));
    }
    let r = ambient.subalgebra("r", source, names.clone())?;
    if !is_solvable(&r) {
        return Err(Error::NotSolvable);
    }
    let images: Vec<Vec<F>> = (0..k).map(|i| phi.column(i)).collect();
    let modified: Vec<Vec<F>> = source.iter().zip(&images).map(|(x, p)| vec_add(x, p)).collect();
    if span_basis(n, &modified).len() != k {
        return Err(Error::NotClosed);
    }
    let r_prime = ambient
        .subalgebra(ambient.name().to_string(), &modified, names)
        .map_err(|_| Error::NotClosed)?;

    let ads: Vec<Matrix<F>> = images.iter().map(|p| ambient.ad(p)).collect();
    if !imaginary_type_check(&ads) {
        return Err(Error::ConditionTwoFailed);
    }
    let preserves = images
        .iter()
        .all(|p| source.iter().all(|x| spans_contain(source, &ambient.bracket(p, x))));
    if !preserves {
        return Err(Error::ConditionThreeFailed);
    }
    let normal = images
        .iter()
        .all(|p| modified.iter().all(|x| spans_contain(&modified, &ambient.bracket(p, x))));
    let map = ModificationMap {
        ambient: ambient.clone(),
        source: source.to_vec(),
        phi: phi.clone(),
        modified,
        closed: true,
        compact_imaginary: true,
        preserves_source: true,
        normal,
    };
    Ok((r_prime, map))
}

/// Embeds `r` into `span(ops) ⋉ r` (new directions first) and returns the
/// ambient algebra with the coordinates of `r`'s basis.
fn extend_by<F: Field>(r: &LieAlgebra<F>, ops: &[Matrix<F>], prefix: &str) -> Result<(LieAlgebra<F>, Vec<Vec<F>>)> {
    let k = ops.len();
    let names = (1..=k).map(|i| format!("{prefix}{i}")).collect();
    let ambient = r.semidirect(format!("{}_ext", r.name()), ops, names)?;
    let n = r.dim();
    let source = (0..n)
        .map(|i| crate::exactlin::matrix::unit(n + k, k + i))
        .collect();
    Ok((ambient, source))
}

/// Expresses operators as combinations of a basis of their span.
fn operator_span<F: Field>(ops: &[Matrix<F>]) -> (Vec<Matrix<F>>, Vec<Vec<F>>) {
    let Some(first) = ops.first() else {
        return (Vec::new(), Vec::new());
    };
    let (r, c) = (first.rows(), first.cols());
    let vecs: Vec<Vec<F>> = ops.iter().map(Matrix::vectorize).collect();
    let basis = span_basis(r * c, &vecs);
    let coords = vecs
        .iter()
        .map(|v| {
            if basis.is_empty() {
                Vec::new()
            } else {
                coordinates(&basis, v).expect("vector lies in its own span")
            }
        })
        .collect();
    (basis.iter().map(|v| Matrix::unvectorize(r, c, v)).collect(), coords)
}

/// The σ-map: `X ↦ X − ad(X)_s^{iR}` made linear through a Cartan subalgebra
/// `h`. On `h` the imaginary semisimple part of `ad` is linear; on the
/// nilradical it vanishes. The result is completely solvable.
pub fn sigma<F: Spectral>(r: &LieAlgebra<F>) -> Result<(LieAlgebra<F>, ModificationMap<F>)> {
    if !is_solvable(r) {
        return Err(Error::NotSolvable);
    }
    let n = r.dim();
    let h = cartan_subalgebra(r);
    let nil = nilradical(r)?;
    let mut ops = Vec::new();
    for x in h.basis() {
        ops.push(-&F::jordan_chevalley(&r.ad(x))?.imaginary_part);
    }
    // spanning set: h basis, then nilradical vectors completing it
    let mut frame: Vec<Vec<F>> = h.basis().to_vec();
    for v in nil.basis() {
        let mut trial = frame.clone();
        trial.push(v.clone());
        if span_basis(n, &trial).len() > frame.len() {
            frame.push(v.clone());
        }
    }
    if frame.len() != n {
        return Err(Error::Internal("Cartan subalgebra and nilradical do not span".into()));
    }
    let (op_basis, op_coords) = operator_span(&ops);
    let k = op_basis.len();
    let (ambient, source) = extend_by(r, &op_basis, "D")?;
    let hk = h.dim();
    let phi_cols: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let c = coordinates(&frame, &crate::exactlin::matrix::unit(n, i)).expect("frame is a basis");
            let mut col = vec![F::zero(); n + k];
            for (a, ca) in c.iter().take(hk).enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (b, cb) in op_coords[a].iter().enumerate() {
                    col[b] = col[b].clone() + ca.clone() * cb.clone();
                }
            }
            col
        })
        .collect();
    let phi = Matrix::from_columns(n + k, &phi_cols);
    let (s, map) = apply_modification(&ambient, &source, r.basis_names().to_vec(), &phi)
        .map_err(|e| Error::Internal(format!("sigma modification failed: {e}")))?;
    if !complete_solvability_check(&s)? {
        return Err(Error::Internal("sigma image is not completely solvable".into()));
    }
    Ok((s.with_name(format!("sigma({})", r.name())), map))
}

/// One step of the standard modification inside `r ⋊ Der_skew(r, ip)`.
pub fn standard_modification<F: Spectral>(r: &LieAlgebra<F>, ip: &InnerProduct<F>) -> Result<LieAlgebra<F>> {
    Ok(standard_modification_map(r, ip)?.0)
}

fn standard_modification_map<F: Spectral>(
    r: &LieAlgebra<F>,
    ip: &InnerProduct<F>,
) -> Result<(LieAlgebra<F>, Option<ModificationMap<F>>)> {
    let skew = skew_derivations(r, ip)?;
    let k = skew.dim();
    if k == 0 {
        return Ok((r.clone(), None));
    }
    let n = r.dim();
    let (f, source) = extend_by(r, &skew.basis, "K")?;
    let b = killing_form(&f).matrix;
    let b_dd = b.block(0, k, 0, k);
    if b_dd.rank() != k {
        return Err(Error::DegenerateComplement);
    }
    let cols: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let rhs: Vec<F> = (0..k).map(|j| -b[(j, k + i)].clone()).collect();
            let c = b_dd.solve(&rhs).expect("nondegenerate block is solvable");
            let mut col = c;
            col.extend(std::iter::repeat_n(F::zero(), n));
            col
        })
        .collect();
    let phi = Matrix::from_columns(n + k, &cols);
    let (r_prime, map) = apply_modification(&f, &source, r.basis_names().to_vec(), &phi)?;
    Ok((r_prime.with_name(r.name().to_string()), Some(map)))
}

/// Iterates the standard modification until the structure constants stop
/// changing; the metric is carried over verbatim along `X ↦ X + φ(X)`.
pub fn standard_position_algebra<F: Spectral>(
    r: &LieAlgebra<F>,
    ip: &InnerProduct<F>,
) -> Result<(LieAlgebra<F>, usize)> {
    let mut current = r.clone();
    let mut steps = 0;
    loop {
        let next = standard_modification(&current, ip)?;
        if next.same_structure(&current) {
            return Ok((current, steps));
        }
        steps += 1;
        if steps > 2 {
            return Err(Error::NoStabilization);
        }
        current = next;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceStatus {
    Equivalent,
    NotEquivalent,
    Unknown,
}

impl EquivalenceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Equivalent => "Equivalent",
            Self::NotEquivalent => "NotEquivalent",
            Self::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EquivalenceWitness<F: Field> {
    /// Verified isomorphism `σ(r1) → σ(r2)` (columns are images).
    Isomorphism(Matrix<F>),
    /// An invariant on which the σ-images differ.
    Invariant {
        field: &'static str,
        left: Box<InvariantProfile>,
        right: Box<InvariantProfile>,
    },
    Reason(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict<F: Field> {
    pub status: EquivalenceStatus,
    pub witness: EquivalenceWitness<F>,
}

/// Decides whether two solvable algebras have isomorphic σ-images.
///
/// `certificate`, when given, is a candidate isomorphism `σ(r1) → σ(r2)` in
/// the σ-images' bases (which are the bases of `r1` and `r2`).
pub fn equivalence_check<F: Spectral>(
    r1: &LieAlgebra<F>,
    r2: &LieAlgebra<F>,
    certificate: Option<&Matrix<F>>,
) -> Result<EquivalenceVerdict<F>> {
    let (s1, _) = sigma(r1)?;
    let (s2, _) = sigma(r2)?;
    let p1 = invariant_profile(&s1)?;
    let p2 = invariant_profile(&s2)?;
    if let Some(field) = p1.first_difference(&p2) {
        return Ok(EquivalenceVerdict {
            status: EquivalenceStatus::NotEquivalent,
            witness: EquivalenceWitness::Invariant {
                field,
                left: Box::new(p1),
                right: Box::new(p2),
            },
        });
    }
    let equivalent = |m: Matrix<F>| EquivalenceVerdict {
        status: EquivalenceStatus::Equivalent,
        witness: EquivalenceWitness::Isomorphism(m),
    };
    let n = s1.dim();
    if s1.same_structure(&s2) {
        return Ok(equivalent(Matrix::identity(n)));
    }
    let mut rejected = false;
    if let Some(cert) = certificate {
        if s1.is_isomorphism(&s2, cert) {
            return Ok(equivalent(cert.clone()));
        }
        // a certificate for the opposite direction is accepted too
        if let Some(inv) = cert.inverse().filter(|inv| s1.is_isomorphism(&s2, inv)) {
            return Ok(equivalent(inv));
        }
        rejected = true;
    }
    if n <= 5 {
        if let Some(m) = signed_permutation_search(&s1, &s2) {
            return Ok(equivalent(m));
        }
    }
    let reason = match (rejected, n <= 5) {
        (true, _) => "supplied certificate is not an isomorphism of the sigma-images",
        (false, true) => "profiles agree but no signed permutation is an isomorphism",
        (false, false) => "profiles agree; dimension exceeds the search cutoff and no certificate was supplied",
    };
    Ok(EquivalenceVerdict {
        status: EquivalenceStatus::Unknown,
        witness: EquivalenceWitness::Reason(reason.into()),
    })
}

/// Tries every signed permutation of the basis as an isomorphism `a → b`.
fn signed_permutation_search<F: Field>(a: &LieAlgebra<F>, b: &LieAlgebra<F>) -> Option<Matrix<F>> {
    let n = a.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = None;
    permute(&mut perm, 0, &mut |p| {
        for signs in 0..(1u32 << n) {
            let m = Matrix::from_fn(n, n, |r, c| {
                if p[c] == r {
                    if signs >> c & 1 == 1 {
                        -F::one()
                    } else {
                        F::one()
                    }
                } else {
                    F::zero()
                }
            });
            if a.is_isomorphism(b, &m) {
                found = Some(m);
                return true;
            }
        }
        false
    });
    found
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return visit(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permute(p, k + 1, visit) {
            return true;
        }
        p.swap(k, i);
    }
    false
}

/// The witness map `X ↦ X + φ(X)` is injective.
pub fn witness_is_bijective<F: Field>(map: &ModificationMap<F>) -> bool {
    Subspace::span(map.ambient.dim(), &map.modified).dim() == map.source.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{qi, Q};
    use crate::lie::numbered;

    fn e2() -> LieAlgebra<Q> {
        LieAlgebra::from_brackets(
            "e2",
            vec!["A".into(), "X".into(), "Y".into()],
            vec![(0, 1, vec![qi(0), qi(0), qi(1)]), (0, 2, vec![qi(0), qi(-1), qi(0)])],
        )
        .unwrap()
    }

    fn h3() -> LieAlgebra<Q> {
        LieAlgebra::from_brackets("h3", numbered("e", 3), vec![(0, 1, vec![qi(0), qi(0), qi(1)])]).unwrap()
    }

    #[test]
    fn sigma_of_euclidean_motions_is_abelian() {
        let (s, map) = sigma(&e2()).unwrap();
        assert!(s.is_abelian());
        assert!(map.is_valid() && map.normal);
        assert!(witness_is_bijective(&map));
    }

    #[test]
    fn sigma_fixes_completely_solvable() {
        let (s, _) = sigma(&h3()).unwrap();
        assert!(s.same_structure(&h3()));
        let (again, _) = sigma(&s).unwrap();
        assert!(again.same_structure(&s));
    }

    #[test]
    fn zero_modification_is_trivial() {
        let r = e2();
        let src: Vec<Vec<Q>> = (0..3).map(|i| crate::exactlin::matrix::unit(3, i)).collect();
        let (rp, map) = apply_modification(&r, &src, r.basis_names().to_vec(), &Matrix::zeros(3, 3)).unwrap();
        assert!(rp.same_structure(&r));
        assert!(map.normal);
    }

    #[test]
    fn real_modification_fails_condition_two() {
        // r = span(X, Y) inside the affine algebra with φ(X) = A (real ad)
        let aff = LieAlgebra::<Q>::from_brackets(
            "g",
            vec!["A".into(), "X".into(), "Y".into()],
            vec![(0, 1, vec![qi(0), qi(1), qi(0)]), (0, 2, vec![qi(0), qi(0), qi(1)])],
        )
        .unwrap();
        let src = vec![vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)]];
        let phi = Matrix::from_i64_rows(&[&[1, 0], &[0, 0], &[0, 0]]);
        let res = apply_modification(&aff, &src, numbered("x", 2), &phi);
        assert!(matches!(res, Err(Error::ConditionTwoFailed)), "{res:?}");
    }

    #[test]
    fn standard_position_of_euclidean_motions() {
        let (alg, steps) = standard_position_algebra(&e2(), &InnerProduct::identity(3)).unwrap();
        assert!(alg.is_abelian());
        assert_eq!(steps, 1);
        let (alg, steps) = standard_position_algebra(&h3(), &InnerProduct::identity(3)).unwrap();
        assert!(alg.same_structure(&h3()));
        assert_eq!(steps, 0);
    }

    #[test]
    fn equivalence_verdicts() {
        let r3 = LieAlgebra::<Q>::abelian("R3", 3);
        let v = equivalence_check(&e2(), &r3, None).unwrap();
        assert_eq!(v.status, EquivalenceStatus::Equivalent);
        let v = equivalence_check(&h3(), &r3, None).unwrap();
        assert_eq!(v.status, EquivalenceStatus::NotEquivalent);
        let v = equivalence_check(&r3, &h3(), None).unwrap();
        assert_eq!(v.status, EquivalenceStatus::NotEquivalent);
    }
}
