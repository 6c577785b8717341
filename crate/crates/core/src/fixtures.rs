//! Worked examples: Heisenberg, flat and hyperbolic models, the Euclidean
//! motion algebra, and the seven-dimensional solvsoliton with its
//! modification.

use crate::derivations::{derivation_algebra, skew_derivations};
use crate::error::Result;
use crate::exactlin::matrix::unit;
use crate::exactlin::{q, qi, Matrix, Q};
use crate::geometry::{
    einstein_check, einstein_extension, heber_properties, is_flat, ricci_operator, ricci_oracle_koszul,
    soliton_solve, InnerProduct,
};
use crate::lie::{
    center, complete_solvability_check, is_unimodular, nilradical, numbered, series_dims, LieAlgebra,
    SeriesKind, Subspace,
};
use crate::modification::{
    apply_modification, equivalence_check, sigma, standard_position_algebra, EquivalenceStatus,
};

pub fn heisenberg() -> LieAlgebra<Q> {
    LieAlgebra::from_brackets("h3", numbered("e", 3), vec![(0, 1, vec![qi(0), qi(0), qi(1)])])
        .expect("h3 satisfies Jacobi")
}

pub fn abelian(n: usize) -> LieAlgebra<Q> {
    LieAlgebra::abelian(format!("R{n}"), n)
}

/// `[x, y] = y`.
pub fn hyperbolic_plane() -> LieAlgebra<Q> {
    LieAlgebra::from_brackets("aff", vec!["x".into(), "y".into()], vec![(0, 1, vec![qi(0), qi(1)])])
        .expect("affine algebra satisfies Jacobi")
}

/// Euclidean motions: `[A, X] = Y`, `[A, Y] = −X`.
pub fn euclidean_motions() -> LieAlgebra<Q> {
    LieAlgebra::from_brackets(
        "e2",
        vec!["A".into(), "X".into(), "Y".into()],
        vec![
            (0, 1, vec![qi(0), qi(0), qi(1)]),
            (0, 2, vec![qi(0), qi(-1), qi(0)]),
        ],
    )
    .expect("e2 satisfies Jacobi")
}

/// `ad(A)` on `R⁶` for the seven-dimensional example.
pub fn s7_action() -> Matrix<Q> {
    Matrix::diagonal(&[qi(1), qi(1), qi(-1), qi(-1), qi(0), qi(0)])
}

/// `s = RA ⋉ R⁶` with basis `A, E1..E6`.
pub fn s7() -> LieAlgebra<Q> {
    let base = LieAlgebra::from_brackets("R6", numbered("E", 6), Vec::new()).expect("abelian");
    base.semidirect("s", &[s7_action()], vec!["A".into()])
        .expect("diagonal action is a derivation")
}

/// `g₀`: `{A, E1..E6}` orthonormal.
pub fn metric_g0() -> InnerProduct<Q> {
    InnerProduct::identity(7)
}

/// `g`: `{A, E1..E4, 2E5, E6}` orthonormal.
pub fn metric_g() -> InnerProduct<Q> {
    InnerProduct::diagonal(&[qi(1), qi(1), qi(1), qi(1), qi(1), q(1, 4), qi(1)]).expect("positive diagonal")
}

/// Rotation `x∧y` on a coordinate space: `x ↦ y`, `y ↦ −x`.
pub fn wedge(n: usize, x: usize, y: usize) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    m[(y, x)] = qi(1);
    m[(x, y)] = qi(-1);
    m
}

/// The modified algebra `r` with basis `A, B1, B2, E1..E4`, where
/// `B1 = E5 + E1∧E2` and `B2 = E6 + E3∧E4`.
pub fn r7() -> LieAlgebra<Q> {
    let e = |i: usize| unit::<Q>(7, i);
    let neg = |v: Vec<Q>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
    let names = ["A", "B1", "B2", "E1", "E2", "E3", "E4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    LieAlgebra::from_brackets(
        "r",
        names,
        vec![
            (0, 3, e(3)),
            (0, 4, e(4)),
            (0, 5, neg(e(5))),
            (0, 6, neg(e(6))),
            (1, 3, e(4)),
            (1, 4, neg(e(3))),
            (2, 5, e(6)),
            (2, 6, neg(e(5))),
        ],
    )
    .expect("r satisfies Jacobi")
}

/// `σ(r) → s`: `A ↦ A`, `B_i ↦ E_{4+i}`, `E_j ↦ E_j`.
pub fn sigma_r_certificate() -> Matrix<Q> {
    let images = [0usize, 5, 6, 1, 2, 3, 4];
    let cols: Vec<Vec<Q>> = images.iter().map(|&i| unit(7, i)).collect();
    Matrix::from_columns(7, &cols)
}

/// `r` as a modification of `s` inside `s ⋊ Der(s)`: returns the ambient,
/// the coordinates of `s` in it, and `φ` with `φ(E5) = E1∧E2`,
/// `φ(E6) = E3∧E4`.
pub fn s7_modification() -> (LieAlgebra<Q>, Vec<Vec<Q>>, Matrix<Q>) {
    let s = s7();
    let der = derivation_algebra(&s);
    let k = der.dim();
    let names = (1..=k).map(|i| format!("D{i}")).collect();
    let ambient = s
        .semidirect("s_x_Der", &der.basis, names)
        .expect("Der(s) is a subalgebra of derivations");
    let n = s.dim();
    let source: Vec<Vec<Q>> = (0..n).map(|i| unit(n + k, k + i)).collect();
    let mut phi = Matrix::zeros(n + k, n);
    for (col, rot) in [(5usize, wedge(7, 1, 2)), (6, wedge(7, 3, 4))] {
        let c = der.coordinates(&rot).expect("rotation is a derivation");
        for (row, v) in c.into_iter().enumerate() {
            phi[(row, col)] = v;
        }
    }
    (ambient, source, phi)
}

/// Outcome of one corpus check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, result: Result<(bool, String)>) -> FixtureCheck {
    match result {
        Ok((passed, detail)) => FixtureCheck {
            name: name.into(),
            passed,
            detail,
        },
        Err(e) => FixtureCheck {
            name: name.into(),
            passed: false,
            detail: format!("error {}: {e}", e.code()),
        },
    }
}

fn ricci_agrees(alg: &LieAlgebra<Q>, ip: &InnerProduct<Q>) -> Result<bool> {
    Ok(ricci_operator(alg, ip)? == ricci_oracle_koszul(alg, ip)?)
}

fn span_of(n: usize, idx: &[usize]) -> Subspace<Q> {
    Subspace::span(n, &idx.iter().map(|&i| unit(n, i)).collect::<Vec<_>>())
}

/// Runs every check of the corpus.
pub fn run_corpus() -> Vec<FixtureCheck> {
    vec![
        check("h3 nilsoliton", (|| {
            let h = heisenberg();
            let ip = InnerProduct::identity(3);
            let cert = soliton_solve(&h, &ip)?;
            let ok = cert.c == q(-3, 2)
                && cert.d == Matrix::diagonal(&[qi(1), qi(1), qi(2)])
                && cert.residual_sq == qi(0)
                && cert.algebraic
                && ricci_agrees(&h, &ip)?;
            Ok((ok, format!("c = {}, residual^2 = {}", cert.c, cert.residual_sq)))
        })()),
        check("abelian flat", (|| {
            let a = abelian(4);
            let ip = InnerProduct::new(Matrix::from_i64_rows(&[
                &[2, 1, 0, 0],
                &[1, 2, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 3],
            ]))?;
            let cert = soliton_solve(&a, &ip)?;
            let ok = ricci_operator(&a, &ip)?.is_zero() && is_flat(&a, &ip)? && cert.flat && cert.c == qi(0);
            Ok((ok, "Ric = 0, curvature tensor 0".into()))
        })()),
        check("hyperbolic plane", (|| {
            let a = hyperbolic_plane();
            let ip = InnerProduct::identity(2);
            let e = einstein_check(&a, &ip)?;
            let ok = e.is_einstein && e.c == qi(-1) && ricci_agrees(&a, &ip)?;
            Ok((ok, format!("Einstein constant {}", e.c)))
        })()),
        check("e2 sigma and standard position", (|| {
            let e = euclidean_motions();
            let (s, map) = sigma(&e)?;
            let (std, steps) = standard_position_algebra(&e, &InnerProduct::identity(3))?;
            let verdict = equivalence_check(&e, &abelian(3), None)?;
            let ok = s.is_abelian()
                && map.normal
                && std.is_abelian()
                && steps == 1
                && verdict.status == EquivalenceStatus::Equivalent;
            Ok((ok, format!("sigma abelian, standard position in {steps} step(s)")))
        })()),
        check("s structure", (|| {
            let s = s7();
            let ok = series_dims(&s, SeriesKind::Derived) == vec![7, 4, 0]
                && center(&s) == span_of(7, &[5, 6])
                && nilradical(&s)? == span_of(7, &[1, 2, 3, 4, 5, 6])
                && complete_solvability_check(&s)?
                && is_unimodular(&s);
            Ok((ok, "derived 7,4,0; center E5,E6; nilradical E1..E6".into()))
        })()),
        check("s skew derivations (g0)", (|| {
            let skew = skew_derivations(&s7(), &metric_g0())?;
            let expected = [wedge(7, 1, 2), wedge(7, 3, 4), wedge(7, 5, 6)];
            let ok = skew.dim() == 3 && expected.iter().all(|w| skew.contains(w));
            Ok((ok, format!("dimension {}", skew.dim())))
        })()),
        check("s solvsoliton (g0)", (|| {
            let s = s7();
            let ip = metric_g0();
            let cert = soliton_solve(&s, &ip)?;
            let mut d = vec![qi(4); 7];
            d[0] = qi(0);
            let ok = cert.c == qi(-4)
                && cert.d == Matrix::diagonal(&d)
                && cert.residual_sq == qi(0)
                && cert.algebraic
                && ricci_agrees(&s, &ip)?;
            Ok((ok, format!("c = {}", cert.c)))
        })()),
        check("s solvsoliton (g)", (|| {
            let s = s7();
            let ip = metric_g();
            let cert = soliton_solve(&s, &ip)?;
            let ok = cert.residual_sq == qi(0) && cert.algebraic && cert.c == qi(-4) && ricci_agrees(&s, &ip)?;
            Ok((ok, format!("c = {}", cert.c)))
        })()),
        check("modification r of s", (|| {
            let (ambient, source, phi) = s7_modification();
            let (r_prime, map) = apply_modification(&ambient, &source, s7().basis_names().to_vec(), &phi)?;
            // reorder A, E1..E6 (E5, E6 now B1, B2) to A, B1, B2, E1..E4
            let reorder = sigma_r_certificate();
            let as_fixture = r_prime.change_basis(&reorder, r7().basis_names().to_vec())?;
            let ok = map.is_valid()
                && map.normal
                && as_fixture.same_structure(&r7())
                && nilradical(&r7())? == span_of(7, &[3, 4, 5, 6]);
            Ok((ok, "conditions (1)-(3) and normality hold; nilradical E1..E4".into()))
        })()),
        check("sigma(r) isomorphic to s", (|| {
            let r = r7();
            let (sr, _) = sigma(&r)?;
            let cert = sigma_r_certificate();
            let iso = sr.is_isomorphism(&s7(), &cert);
            let verdict = equivalence_check(&r, &s7(), Some(&cert))?;
            let ok = iso && verdict.status == EquivalenceStatus::Equivalent;
            Ok((ok, "certificate A->A, B1->E5, B2->E6 verified".into()))
        })()),
        check("h3 Einstein extension", (|| {
            let h = heisenberg();
            let ip = InnerProduct::identity(3);
            let ext = einstein_extension(&h, &ip, &soliton_solve(&h, &ip)?)?;
            let heber = heber_properties(&ext.algebra, &ext.metric)?;
            let ok = ext.check.is_einstein
                && ext.check.residual_sq == qi(0)
                && ext.check.c < qi(0)
                && heber.passes()
                && ricci_agrees(&ext.algebra, &ext.metric)?;
            Ok((ok, format!("t = {}, c = {}", ext.t, ext.check.c)))
        })()),
        check("s Einstein extension", (|| {
            let s = s7();
            let ip = metric_g0();
            let ext = einstein_extension(&s, &ip, &soliton_solve(&s, &ip)?)?;
            let heber = heber_properties(&ext.algebra, &ext.metric)?;
            let ok = ext.check.is_einstein
                && ext.check.residual_sq == qi(0)
                && ext.check.c < qi(0)
                && heber.passes()
                && ricci_agrees(&ext.algebra, &ext.metric)?;
            Ok((ok, format!("t = {}, c = {}", ext.t, ext.check.c)))
        })()),
        check("standard position on corpus", (|| {
            let cases: Vec<(LieAlgebra<Q>, InnerProduct<Q>)> = vec![
                (heisenberg(), InnerProduct::identity(3)),
                (abelian(3), InnerProduct::identity(3)),
                (hyperbolic_plane(), InnerProduct::identity(2)),
                (euclidean_motions(), InnerProduct::identity(3)),
                (s7(), metric_g0()),
                (s7(), metric_g()),
                (r7(), metric_g0()),
            ];
            let mut steps = Vec::new();
            for (alg, ip) in &cases {
                steps.push(standard_position_algebra(alg, ip)?.1);
            }
            let ok = steps.iter().all(|&s| s <= 2) && steps[4] == 0;
            Ok((ok, format!("steps {steps:?}")))
        })()),
    ]
}
