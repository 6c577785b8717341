//! Seeded generators of small solvable algebras, metrics and modifications.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{q, qi, Matrix, Q};
use crate::geometry::InnerProduct;
use crate::lie::{numbered, LieAlgebra};

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut TestRng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

fn nonzero(rng: &mut TestRng, bound: i64) -> i64 {
    loop {
        let v = small(rng, -bound, bound);
        if v != 0 {
            return v;
        }
    }
}

/// Unipotent `L·U` with small integer entries; determinant one.
pub fn random_change_of_basis(rng: &mut TestRng, n: usize) -> Matrix<Q> {
    let l = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => qi(1),
        std::cmp::Ordering::Greater => qi(small(rng, -1, 1)),
        std::cmp::Ordering::Less => qi(0),
    });
    let u = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => qi(1),
        std::cmp::Ordering::Less => qi(small(rng, -1, 1)),
        std::cmp::Ordering::Greater => qi(0),
    });
    &l * &u
}

/// `MᵀM + d·I` with small rational entries.
pub fn random_metric(rng: &mut TestRng, n: usize) -> InnerProduct<Q> {
    let m = Matrix::from_fn(n, n, |_, _| q(small(rng, -2, 2), small(rng, 1, 2)));
    let d = q(small(rng, 1, 3), small(rng, 1, 2));
    let g = &(&m.transpose() * &m) + &Matrix::identity(n).scale(&d);
    InnerProduct::new(g).expect("MᵀM + dI is positive definite")
}

/// Block shapes of a commuting family acting on `R^m`: 1×1 blocks act by a
/// scalar, 2×2 blocks by `a·I + b·J`.
fn block_shape(rng: &mut TestRng, m: usize, allow_rotation: bool) -> Vec<usize> {
    let mut blocks = Vec::new();
    let mut left = m;
    while left > 0 {
        if left >= 2 && allow_rotation && rng.gen_bool(0.5) {
            blocks.push(2);
            left -= 2;
        } else {
            blocks.push(1);
            left -= 1;
        }
    }
    blocks
}

fn block_operator(rng: &mut TestRng, blocks: &[usize], m: usize) -> Matrix<Q> {
    let mut op = Matrix::zeros(m, m);
    let mut at = 0;
    for &b in blocks {
        let a = qi(small(rng, -2, 2));
        if b == 1 {
            op[(at, at)] = a;
        } else {
            let s = qi(small(rng, -2, 2));
            op[(at, at)] = a.clone();
            op[(at + 1, at + 1)] = a;
            op[(at, at + 1)] = -s.clone();
            op[(at + 1, at)] = s;
        }
        at += b;
    }
    op
}

/// `span(actions) ⋉ R^m` with a commuting block-structured family; dependent
/// or zero actions are dropped.
fn abelian_extension(rng: &mut TestRng, m: usize, k: usize, allow_rotation: bool) -> LieAlgebra<Q> {
    let blocks = block_shape(rng, m, allow_rotation);
    let base = LieAlgebra::from_brackets("R", numbered("E", m), Vec::new()).expect("abelian");
    let mut actions: Vec<Matrix<Q>> = Vec::new();
    for _ in 0..k {
        let op = block_operator(rng, &blocks, m);
        let mut trial = actions.clone();
        trial.push(op);
        let rows: Vec<Vec<Q>> = trial.iter().map(Matrix::vectorize).collect();
        if Matrix::from_rows(rows).rank() == trial.len() {
            actions = trial;
        }
    }
    let names = numbered("A", actions.len());
    base.semidirect("ext", &actions, names)
        .expect("block-structured family is commuting")
}

/// `span(actions) ⋉ h3` with actions `a·I + b·J` on `span(e1, e2)` and `2a` on `e3`.
fn heisenberg_extension(rng: &mut TestRng, k: usize, allow_rotation: bool) -> LieAlgebra<Q> {
    let h = crate::fixtures::heisenberg();
    let mut actions: Vec<Matrix<Q>> = Vec::new();
    for _ in 0..k {
        let a = small(rng, -2, 2);
        let b = if allow_rotation { small(rng, -2, 2) } else { 0 };
        let op = Matrix::from_i64_rows(&[&[a, -b, 0], &[b, a, 0], &[0, 0, 2 * a]]);
        let mut trial = actions.clone();
        trial.push(op);
        let rows: Vec<Vec<Q>> = trial.iter().map(Matrix::vectorize).collect();
        if Matrix::from_rows(rows).rank() == trial.len() {
            actions = trial;
        }
    }
    let names = numbered("A", actions.len());
    h.semidirect("h3ext", &actions, names).expect("commuting derivations of h3")
}

fn filiform4() -> LieAlgebra<Q> {
    LieAlgebra::from_brackets(
        "n4",
        numbered("e", 4),
        vec![
            (0, 1, vec![qi(0), qi(0), qi(1), qi(0)]),
            (0, 2, vec![qi(0), qi(0), qi(0), qi(1)]),
        ],
    )
    .expect("filiform algebra satisfies Jacobi")
}

fn random_shape(rng: &mut TestRng, max_dim: usize, allow_rotation: bool) -> LieAlgebra<Q> {
    let max_dim = max_dim.max(2);
    loop {
        let alg = match small(rng, 0, 3) {
            0 | 1 => {
                let dim = small(rng, 2, max_dim as i64) as usize;
                let m = small(rng, 1, dim as i64 - 1) as usize;
                abelian_extension(rng, m, dim - m, allow_rotation)
            }
            2 if max_dim >= 3 => {
                let k = small(rng, 0, (max_dim - 3).min(2) as i64) as usize;
                heisenberg_extension(rng, k, allow_rotation)
            }
            3 if max_dim >= 4 => filiform4(),
            _ => continue,
        };
        if alg.dim() >= 2 {
            return alg;
        }
    }
}

fn conjugate(rng: &mut TestRng, alg: &LieAlgebra<Q>) -> LieAlgebra<Q> {
    let p = random_change_of_basis(rng, alg.dim());
    alg.change_basis(&p, numbered("x", alg.dim()))
        .expect("change of basis is invertible")
}

/// A solvable algebra of dimension `2..=max_dim` in a scrambled basis.
pub fn random_solvable(rng: &mut TestRng, max_dim: usize) -> LieAlgebra<Q> {
    let alg = random_shape(rng, max_dim, true);
    conjugate(rng, &alg).with_name("random")
}

/// A completely solvable algebra of dimension `2..=max_dim`.
pub fn random_completely_solvable(rng: &mut TestRng, max_dim: usize) -> LieAlgebra<Q> {
    let alg = random_shape(rng, max_dim, false);
    conjugate(rng, &alg).with_name("random_cs")
}

/// Input for `apply_modification`: a completely solvable `r` inside
/// `r ⋊ span(K_j)` with `φ(X) = Σ ℓ_j(X)·K_j`, where the `K_j` are commuting
/// rotations and each `ℓ_j` vanishes on `[r, r] + Σ K_j(r)`.
#[derive(Debug, Clone)]
pub struct RandomModification {
    pub source_algebra: LieAlgebra<Q>,
    pub ambient: LieAlgebra<Q>,
    pub source: Vec<Vec<Q>>,
    pub names: Vec<String>,
    pub phi: Matrix<Q>,
}

/// A completely solvable algebra with a pair of equal-weight directions and
/// the rotation of that pair.
fn rotation_ready(rng: &mut TestRng, max_dim: usize) -> (LieAlgebra<Q>, Vec<Matrix<Q>>) {
    loop {
        let choice = small(rng, 0, 2);
        match choice {
            0 if max_dim >= 4 => {
                // h3 ⋊ diag(a, a, 2a), rotation of (e1, e2)
                let a = nonzero(rng, 2);
                let h = crate::fixtures::heisenberg();
                let d = Matrix::from_i64_rows(&[&[a, 0, 0], &[0, a, 0], &[0, 0, 2 * a]]);
                let alg = h.semidirect("h3ext", &[d], vec!["A".into()]).expect("derivation");
                let mut k = Matrix::zeros(4, 4);
                k[(2, 1)] = qi(1);
                k[(1, 2)] = qi(-1);
                return (alg, vec![k]);
            }
            1 => {
                // A acting on R^m with weights (a, a, b...), rotation of the first pair
                let m = small(rng, 2, (max_dim as i64 - 1).max(2)) as usize;
                if m + 1 > max_dim {
                    continue;
                }
                let a = qi(small(rng, -2, 2));
                let mut diag = vec![a.clone(), a];
                for _ in 2..m {
                    diag.push(qi(small(rng, -2, 2)));
                }
                let base = LieAlgebra::from_brackets("R", numbered("E", m), Vec::new()).expect("abelian");
                let op = Matrix::diagonal(&diag);
                let alg = if op.is_zero() {
                    LieAlgebra::abelian("R", m + 1)
                } else {
                    base.semidirect("ext", &[op], vec!["A".into()]).expect("diagonal derivation")
                };
                let mut k = Matrix::zeros(m + 1, m + 1);
                k[(2, 1)] = qi(1);
                k[(1, 2)] = qi(-1);
                return (alg, vec![k]);
            }
            _ => {
                // abelian R^n with one or two disjoint rotations
                let n = small(rng, 2, max_dim as i64) as usize;
                let alg = LieAlgebra::abelian("R", n);
                let mut idx: Vec<usize> = (0..n).collect();
                idx.shuffle(rng);
                let mut ks = Vec::new();
                for pair in idx.chunks_exact(2).take(1 + usize::from(n >= 4 && rng.gen_bool(0.5))) {
                    let mut k = Matrix::zeros(n, n);
                    k[(pair[1], pair[0])] = qi(1);
                    k[(pair[0], pair[1])] = qi(-1);
                    ks.push(k);
                }
                return (alg, ks);
            }
        }
    }
}

pub fn random_cs_modification(rng: &mut TestRng, max_dim: usize) -> RandomModification {
    let (alg0, ks0) = rotation_ready(rng, max_dim.max(2));
    let n = alg0.dim();
    let p = random_change_of_basis(rng, n);
    let pinv = p.inverse().expect("unimodular");
    let alg = alg0
        .change_basis(&p, numbered("x", n))
        .expect("change of basis is invertible");
    let ks: Vec<Matrix<Q>> = ks0.iter().map(|k| &(&pinv * k) * &p).collect();
    // functionals vanishing on [r, r] + Σ K(r)
    let mut image: Vec<Vec<Q>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            image.push(alg.bracket_basis(i, j));
        }
        for k in &ks {
            image.push(k.column(i));
        }
    }
    let annihilator: Vec<Vec<Q>> = if image.iter().all(|v| v.iter().all(|x| *x == qi(0))) {
        (0..n).map(|i| crate::exactlin::matrix::unit(n, i)).collect()
    } else {
        Matrix::from_rows(image).nullspace()
    };
    let m = ks.len();
    let ambient = alg
        .semidirect("ambient", &ks, numbered("K", m))
        .expect("commuting skew derivations");
    let mut phi = Matrix::zeros(n + m, n);
    for j in 0..m {
        let mut ell = vec![qi(0); n];
        for f in &annihilator {
            let c = qi(small(rng, -2, 2));
            for (e, v) in ell.iter_mut().zip(f) {
                *e = e.clone() + c.clone() * v.clone();
            }
        }
        for (i, v) in ell.into_iter().enumerate() {
            phi[(j, i)] = v;
        }
    }
    let source = (0..n).map(|i| crate::exactlin::matrix::unit(n + m, m + i)).collect();
    RandomModification {
        source_algebra: alg,
        ambient,
        source,
        names: numbered("x", n),
        phi,
    }
}
