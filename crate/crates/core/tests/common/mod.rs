#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use symcoh::ce::{Action, Cochain, Structure};
use symcoh::lie::{sl2, su2, CoefficientModule, LieAlgebra};
use symcoh::linalg::{int, kernel_basis, Field, Matrix, Scalar, SparseVec};

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn sv(pairs: &[(usize, i64)]) -> SparseVec<Scalar> {
    SparseVec::from_pairs(pairs.iter().map(|&(k, c)| (k, int(c))).collect())
}

/// `R ⋉_A R^k`: `[t, v_i] = Σ_j A_ji v_j`, the `v_i` commute.
fn semidirect(rng: &mut StdRng, k: usize) -> LieAlgebra {
    let mut entries = Vec::new();
    for i in 0..k {
        let col: Vec<(usize, i64)> = (0..k).map(|j| (j + 1, rng.gen_range(-2..=2))).collect();
        entries.push((0, i + 1, sv(&col)));
    }
    LieAlgebra::new(labels("s", k + 1), entries).unwrap()
}

fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(labels("n", 3), [(0, 1, sv(&[(2, 1)]))]).unwrap()
}

fn component(rng: &mut StdRng, room: usize) -> LieAlgebra {
    loop {
        let pick = rng.gen_range(0..5);
        let g = match pick {
            0 => LieAlgebra::abelian(rng.gen_range(1..=room.min(2))),
            1 if room >= 3 => sl2(),
            2 if room >= 3 => su2(),
            3 if room >= 3 => heisenberg(),
            4 if room >= 2 => {
                let k = rng.gen_range(1..room.min(4));
                semidirect(rng, k)
            }
            _ => continue,
        };
        return g;
    }
}

/// A random Lie algebra of dimension 1..=`max_dim`: a direct sum of small
/// pieces in a random integral basis, validated by Jacobi.
pub fn random_algebra(seed: u64, max_dim: usize) -> LieAlgebra {
    let mut rng = StdRng::seed_from_u64(seed);
    let target = rng.gen_range(1..=max_dim);
    let mut g = component(&mut rng, target);
    while g.dim() < target {
        let c = component(&mut rng, target - g.dim());
        g = g.direct_sum(&c);
    }
    let n = g.dim();
    // unipotent upper-triangular change of basis, then a permutation
    let mut rows = vec![vec![int(0); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = int(1);
        for c in row.iter_mut().skip(i + 1) {
            *c = int(rng.gen_range(-1..=1));
        }
    }
    for i in (1..n).rev() {
        rows.swap(i, rng.gen_range(0..=i));
    }
    let b = Matrix::from_dense(&rows);
    let out = g.change_basis(&b, labels("x", n)).unwrap();
    out.check_jacobi().unwrap();
    out
}

/// A 2-dimensional module `x ↦ λ(x) A` with `λ` vanishing on `[g, g]`,
/// or the trivial 2-dimensional module when `g` is perfect.
pub fn random_module(g: &LieAlgebra, seed: u64) -> CoefficientModule {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x9e37_79b9);
    let n = g.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = g.bracket_basis(i, j);
            if !b.is_zero() {
                brackets.push(b.clone());
            }
        }
    }
    let chars = if brackets.is_empty() {
        (0..n).map(SparseVec::unit).collect()
    } else {
        kernel_basis(&Matrix::from_rows(n, brackets))
    };
    if chars.is_empty() {
        return CoefficientModule::trivial(g, 2);
    }
    let mut lambda = SparseVec::new();
    for c in &chars {
        lambda = lambda.axpy(&int(rng.gen_range(-2..=2)), c);
    }
    let a: Vec<Vec<Scalar>> = (0..2).map(|_| (0..2).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
    let a = Matrix::from_dense(&a);
    let action = (0..n)
        .map(|i| {
            let l = lambda.get(i);
            Matrix::from_rows(2, a.row_vectors().iter().map(|r| r.scale(&l)).collect())
        })
        .collect();
    CoefficientModule::new(g, action).unwrap()
}

pub fn random_cochain(rng: &mut StdRng, dim: usize, module_dim: usize, degree: usize) -> Cochain<Scalar> {
    let size = Cochain::<Scalar>::space_dim(dim, module_dim, degree);
    let coords: Vec<Scalar> = (0..size).map(|_| int(rng.gen_range(-3..=3))).collect();
    Cochain::from_coords(dim, module_dim, degree, SparseVec::from_dense(&coords))
}

/// `d ∘ d = 0` on every basis cochain.
pub fn check_d_squared(g: &LieAlgebra, m: &CoefficientModule) -> Result<(), String> {
    let s = Structure::of(g);
    let act = Action::of(m);
    for n in 0..g.dim().saturating_sub(1) {
        for idx in 0..Cochain::<Scalar>::space_dim(g.dim(), m.dim(), n) {
            let w = Cochain::from_coords(g.dim(), m.dim(), n, SparseVec::unit(idx));
            let dd = w.differential(&s, &act).differential(&s, &act);
            if !dd.is_zero() {
                return Err(format!("d∘d ≠ 0 in degree {n} on basis cochain {idx}"));
            }
        }
    }
    Ok(())
}

/// `θ_y = i_y ∘ d + d ∘ i_y` on random cochains and elements.
pub fn check_cartan(g: &LieAlgebra, m: &CoefficientModule, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let s = Structure::of(g);
    let act = Action::of(m);
    for n in 0..=g.dim() {
        let w = random_cochain(&mut rng, g.dim(), m.dim(), n);
        let y: Vec<Scalar> = (0..g.dim()).map(|_| int(rng.gen_range(-2..=2))).collect();
        let y = SparseVec::from_dense(&y);
        let theta = w.lie_derivative(&s, &act, &y);
        let mut rhs = w.differential(&s, &act).insertion(&y).map_err(|e| e.to_string())?;
        if n > 0 {
            rhs = rhs.add(&w.insertion(&y).map_err(|e| e.to_string())?.differential(&s, &act));
        }
        if theta != rhs {
            return Err(format!("Cartan rule fails in degree {n}"));
        }
    }
    Ok(())
}

pub fn check_json(g: &LieAlgebra, m: &CoefficientModule) -> Result<(), String> {
    let back = LieAlgebra::from_json(&g.to_json()).map_err(|e| e.to_string())?;
    if &back != g {
        return Err("algebra JSON round trip changed the algebra".into());
    }
    let mb = CoefficientModule::from_json(g, &m.to_json()).map_err(|e| e.to_string())?;
    if mb.actions() != m.actions() {
        return Err("module JSON round trip changed the action".into());
    }
    Ok(())
}

/// The whole property suite on one seed, trivial and 2-dimensional modules.
pub fn check_seed(seed: u64) -> Result<(), String> {
    let g = random_algebra(seed, 6);
    for m in [CoefficientModule::trivial(&g, 1), random_module(&g, seed)] {
        check_d_squared(&g, &m)?;
        check_cartan(&g, &m, seed)?;
        check_json(&g, &m)?;
    }
    Ok(())
}

pub fn is_one(x: &Scalar) -> bool {
    *x == Scalar::one()
}
