//! Worked values for each operation, with hand-computed expectations.

use solvlie::derivations::{derivation_algebra, imaginary_type_check, skew_derivations};
use solvlie::exactlin::matrix::unit;
use solvlie::exactlin::{q, qi, Matrix, Poly, Spectral, Q};
use solvlie::fixtures::{
    abelian, euclidean_motions, heisenberg, hyperbolic_plane, metric_g0, r7, s7, s7_action, sigma_r_certificate,
    wedge,
};
use solvlie::geometry::{
    einstein_check, einstein_extension, pre_einstein, ricci_operator, ricci_oracle_koszul, soliton_solve,
    InnerProduct,
};
use solvlie::lie::{
    center, characteristic_series, complete_solvability_check, invariant_profile, killing_form, nilradical,
    series_dims, LieAlgebra, SeriesKind, Subspace,
};
use solvlie::modification::{
    apply_modification, equivalence_check, sigma, standard_modification, standard_position_algebra,
    EquivalenceStatus,
};
use solvlie::Error;

fn m(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_i64_rows(rows)
}

fn span_of(n: usize, idx: &[usize]) -> Subspace<Q> {
    Subspace::span(n, &idx.iter().map(|&i| unit(n, i)).collect::<Vec<_>>())
}

fn diag(v: &[Q]) -> Matrix<Q> {
    Matrix::diagonal(v)
}

#[test]
fn nullspace_examples() {
    assert!(Matrix::<Q>::identity(3).nullspace().is_empty());
    assert_eq!(Matrix::<Q>::zeros(2, 2).nullspace(), vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]]);
    assert_eq!(m(&[&[1, 2], &[2, 4]]).nullspace(), vec![vec![qi(-2), qi(1)]]);
}

#[test]
fn jordan_chevalley_examples() {
    let d = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
    let jc = Q::jordan_chevalley(&d).unwrap();
    assert_eq!(jc.semisimple, d);
    assert!(jc.nilpotent.is_zero() && jc.imaginary_part.is_zero());
    assert_eq!(jc.real_part, d);

    let rot = m(&[&[0, -1], &[1, 0]]);
    let jc = Q::jordan_chevalley(&rot).unwrap();
    assert_eq!(jc.semisimple, rot);
    assert!(jc.real_part.is_zero());
    assert_eq!(jc.imaginary_part, rot);

    let jc = Q::jordan_chevalley(&m(&[&[1, 1], &[0, 1]])).unwrap();
    assert_eq!(jc.semisimple, Matrix::identity(2));
    assert_eq!(jc.nilpotent, m(&[&[0, 1], &[0, 0]]));
}

#[test]
fn real_root_counts() {
    assert_eq!(Poly::from_i64(&[1, 0, 1]).real_root_count().unwrap(), 0);
    assert_eq!(Poly::from_i64(&[-2, 0, 1]).real_root_count().unwrap(), 2);
    assert_eq!(Poly::from_i64(&[0, -1, 0, 1]).real_root_count().unwrap(), 3);
}

#[test]
fn validation_examples() {
    assert!(heisenberg().validate().is_ok());
    assert!(abelian(3).validate().is_ok());
    let bad = LieAlgebra::from_brackets(
        "bad",
        vec!["e1".into(), "e2".into(), "e3".into()],
        vec![(0, 1, vec![qi(0), qi(0), qi(1)]), (1, 2, vec![qi(0), qi(1), qi(0)])],
    );
    assert!(matches!(bad, Err(Error::JacobiViolation { triple: (0, 1, 2), .. })));
}

#[test]
fn series_center_killing() {
    assert_eq!(series_dims(&heisenberg(), SeriesKind::LowerCentral), vec![3, 1, 0]);
    assert_eq!(series_dims(&abelian(5), SeriesKind::Derived), vec![5, 0]);
    assert_eq!(series_dims(&s7(), SeriesKind::Derived), vec![7, 4, 0]);
    assert_eq!(characteristic_series(&s7(), SeriesKind::Derived)[1], span_of(7, &[1, 2, 3, 4]));

    assert_eq!(center(&heisenberg()), span_of(3, &[2]));
    assert_eq!(center(&abelian(3)).dim(), 3);
    assert_eq!(center(&s7()), span_of(7, &[5, 6]));

    assert!(killing_form(&abelian(3)).matrix.is_zero());
    assert!(killing_form(&heisenberg()).matrix.is_zero());
    assert_eq!(killing_form(&hyperbolic_plane()).matrix, m(&[&[1, 0], &[0, 0]]));
}

#[test]
fn nilradicals_and_complete_solvability() {
    assert_eq!(nilradical(&heisenberg()).unwrap().dim(), 3);
    assert_eq!(nilradical(&s7()).unwrap(), span_of(7, &[1, 2, 3, 4, 5, 6]));
    assert_eq!(nilradical(&r7()).unwrap(), span_of(7, &[3, 4, 5, 6]));
    assert!(complete_solvability_check(&s7()).unwrap());
    assert!(!complete_solvability_check(&euclidean_motions()).unwrap());
    assert!(complete_solvability_check(&abelian(4)).unwrap());
}

#[test]
fn semidirect_examples() {
    let base = LieAlgebra::<Q>::abelian("R6", 6);
    let s = base.semidirect("s", &[s7_action()], vec!["A".into()]).unwrap();
    assert!(s.same_structure(&s7()));
    let h4 = heisenberg()
        .semidirect("h4", &[diag(&[qi(1), qi(1), qi(2)])], vec!["T".into()])
        .unwrap();
    assert_eq!(h4.dim(), 4);
    assert!(h4.validate().is_ok());
    let r2 = LieAlgebra::<Q>::abelian("R2", 2).semidirect("R2", &[], vec![]).unwrap();
    assert!(r2.is_abelian() && r2.dim() == 2);
}

#[test]
fn profiles() {
    let p = invariant_profile(&heisenberg()).unwrap();
    assert_eq!((p.dim, p.nilpotent, p.center_dim, p.unimodular), (3, true, 1, true));
    let p = invariant_profile(&s7()).unwrap();
    assert_eq!((p.unimodular, p.completely_solvable, p.nilradical_dim), (true, Some(true), Some(6)));
    let a = invariant_profile(&abelian(7)).unwrap();
    assert_eq!(a.first_difference(&p), Some("derived_series"));
    assert_ne!(a.nilradical_dim, p.nilradical_dim);
}

#[test]
fn derivation_examples() {
    let der = derivation_algebra(&heisenberg());
    assert_eq!(der.dim(), 6);
    // [[a,b,0],[c,d,0],[e,f,a+d]]
    let general = m(&[&[2, 3, 0], &[5, 7, 0], &[11, 13, 9]]);
    assert!(der.contains(&general));
    assert!(!der.contains(&m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]])));
    for d in &der.basis {
        assert_eq!(d[(2, 2)], d[(0, 0)].clone() + d[(1, 1)].clone());
        assert!(d[(0, 2)] == qi(0) && d[(1, 2)] == qi(0));
    }
    assert_eq!(derivation_algebra(&abelian(4)).dim(), 16);
    let der_s = derivation_algebra(&s7());
    for t in [1, -3] {
        let mut v = vec![qi(t); 7];
        v[0] = qi(0);
        assert!(der_s.contains(&diag(&v)));
    }
    for (x, y) in [(1, 2), (3, 4), (5, 6)] {
        assert!(der_s.contains(&wedge(7, x, y)));
    }
}

#[test]
fn skew_derivation_examples() {
    assert_eq!(skew_derivations(&abelian(3), &InnerProduct::identity(3)).unwrap().dim(), 3);
    let skew = skew_derivations(&s7(), &metric_g0()).unwrap();
    assert_eq!(skew.dim(), 3);
    for (x, y) in [(1, 2), (3, 4), (5, 6)] {
        assert!(skew.contains(&wedge(7, x, y)));
    }
    let h = skew_derivations(&heisenberg(), &InnerProduct::identity(3)).unwrap();
    assert_eq!(h.dim(), 1);
    assert!(h.contains(&wedge(3, 0, 1)));
}

#[test]
fn imaginary_type_examples() {
    assert!(imaginary_type_check(&[wedge(6, 0, 1), wedge(6, 2, 3)]));
    assert!(!imaginary_type_check(&[diag(&[qi(1), qi(-1)])]));
    assert!(imaginary_type_check(&[m(&[&[0, -1], &[1, 0]]), m(&[&[0, -2], &[2, 0]])]));
}

#[test]
fn modification_examples() {
    let s = s7();
    let (ambient, source, phi) = solvlie::fixtures::s7_modification();
    let (r, map) = apply_modification(&ambient, &source, s.basis_names().to_vec(), &phi).unwrap();
    assert!(map.is_valid() && map.normal);
    assert_eq!(nilradical(&r).unwrap().dim(), 4);

    let zero = Matrix::zeros(ambient.dim(), 7);
    let (same, map) = apply_modification(&ambient, &source, s.basis_names().to_vec(), &zero).unwrap();
    assert!(same.same_structure(&s) && map.is_valid() && map.normal);

    // E(2) inside E(2) ⋊ R·ad(A), φ(A) = −ad(A)
    let e = euclidean_motions();
    let ad_a = e.ad_basis(0);
    let amb = e.semidirect("amb", &[ad_a], vec!["K".into()]).unwrap();
    let source: Vec<Vec<Q>> = (1..4).map(|i| unit(4, i)).collect();
    let mut phi = Matrix::zeros(4, 3);
    phi[(0, 0)] = qi(-1);
    let (flat, map) = apply_modification(&amb, &source, e.basis_names().to_vec(), &phi).unwrap();
    assert!(flat.is_abelian() && map.is_valid());
}

#[test]
fn sigma_examples() {
    let (s, _) = sigma(&s7()).unwrap();
    assert!(s.same_structure(&s7()));
    let (e, _) = sigma(&euclidean_motions()).unwrap();
    assert!(e.is_abelian());
    let (sr, _) = sigma(&r7()).unwrap();
    assert!(sr.is_isomorphism(&s7(), &sigma_r_certificate()));
}

#[test]
fn standard_modification_examples() {
    let (s, steps) = standard_position_algebra(&s7(), &metric_g0()).unwrap();
    assert!(s.same_structure(&s7()) && steps == 0);
    for n in 3..6 {
        let a = abelian(n);
        assert!(standard_modification(&a, &InnerProduct::identity(n)).unwrap().is_abelian());
        assert_eq!(standard_position_algebra(&a, &InnerProduct::identity(n)).unwrap().1, 0);
    }
    let e = euclidean_motions();
    let std = standard_modification(&e, &InnerProduct::identity(3)).unwrap();
    assert!(std.is_abelian());
    assert_eq!(invariant_profile(&std).unwrap(), invariant_profile(&abelian(3)).unwrap());
    let (pos, steps) = standard_position_algebra(&e, &InnerProduct::identity(3)).unwrap();
    assert!(pos.is_abelian() && steps == 1);
}

#[test]
fn equivalence_examples() {
    let v = equivalence_check(&euclidean_motions(), &abelian(3), None).unwrap();
    assert_eq!(v.status, EquivalenceStatus::Equivalent);
    let v = equivalence_check(&heisenberg(), &abelian(3), None).unwrap();
    assert_eq!(v.status, EquivalenceStatus::NotEquivalent);
    let v = equivalence_check(&r7(), &s7(), Some(&sigma_r_certificate())).unwrap();
    assert_eq!(v.status, EquivalenceStatus::Equivalent);
}

#[test]
fn ricci_examples() {
    let a = abelian(4);
    assert!(ricci_operator(&a, &InnerProduct::identity(4)).unwrap().is_zero());
    let h = heisenberg();
    let ip = InnerProduct::identity(3);
    let expected = diag(&[q(-1, 2), q(-1, 2), q(1, 2)]);
    assert_eq!(ricci_operator(&h, &ip).unwrap(), expected);
    assert_eq!(ricci_oracle_koszul(&h, &ip).unwrap(), expected);
    let mut d = vec![qi(0); 7];
    d[0] = qi(-4);
    assert_eq!(ricci_operator(&s7(), &metric_g0()).unwrap(), diag(&d));
    assert_eq!(
        ricci_oracle_koszul(&hyperbolic_plane(), &InnerProduct::identity(2)).unwrap(),
        Matrix::identity(2).scale(&qi(-1))
    );
}

#[test]
fn soliton_examples() {
    let cert = soliton_solve(&s7(), &metric_g0()).unwrap();
    let mut d = vec![qi(4); 7];
    d[0] = qi(0);
    assert_eq!((cert.c.clone(), cert.d.clone()), (qi(-4), diag(&d)));
    assert!(cert.algebraic && cert.residual_sq == qi(0));
    let flat = soliton_solve(&abelian(3), &InnerProduct::identity(3)).unwrap();
    assert!(flat.c == qi(0) && flat.d.is_zero() && flat.flat);
}

#[test]
fn pre_einstein_examples() {
    assert_eq!(pre_einstein(&abelian(6)).unwrap().eigenvalues, vec![(qi(1), 6)]);
    assert_eq!(pre_einstein(&heisenberg()).unwrap().phi, diag(&[q(2, 3), q(2, 3), q(4, 3)]));
    assert!(matches!(pre_einstein(&hyperbolic_plane()), Err(Error::NotNilpotent)));
}

#[test]
fn einstein_examples() {
    let e = einstein_check(&hyperbolic_plane(), &InnerProduct::identity(2)).unwrap();
    assert!(e.is_einstein && e.c == qi(-1));
    assert!(!einstein_check(&heisenberg(), &InnerProduct::identity(3)).unwrap().is_einstein);
    let e = einstein_check(&abelian(3), &InnerProduct::identity(3)).unwrap();
    assert!(e.is_einstein && e.c == qi(0));

    let h = heisenberg();
    let ip = InnerProduct::identity(3);
    let ext = einstein_extension(&h, &ip, &soliton_solve(&h, &ip).unwrap()).unwrap();
    assert_eq!(ext.algebra.dim(), 4);
    assert_eq!(ext.pre_einstein.phi, diag(&[q(2, 3), q(2, 3), q(4, 3)]));
    assert!(ext.check.is_einstein && ext.check.c < qi(0));
    let koszul = ricci_oracle_koszul(&ext.algebra, &ext.metric).unwrap();
    assert_eq!(koszul, Matrix::identity(4).scale(&ext.check.c));

    let s = s7();
    let ext = einstein_extension(&s, &metric_g0(), &soliton_solve(&s, &metric_g0()).unwrap()).unwrap();
    assert_eq!(ext.algebra.dim(), 8);
    assert_eq!(ext.pre_einstein.phi, Matrix::identity(6));
    assert!(ext.check.is_einstein && ext.check.c < qi(0));

    let a = abelian(3);
    let ip = InnerProduct::identity(3);
    let cert = soliton_solve(&a, &ip).unwrap();
    assert!(matches!(einstein_extension(&a, &ip, &cert), Err(Error::AlreadyEinstein)));
}
