//! Worked example systems used throughout the test suite and handy for
//! experimentation: the 3-dimensional Lie triple system `L3` with
//! `[e1,e2,e1] = -[e2,e1,e1] = e3`, its adjoint action, and the embedding
//! tensor `diag(2, 1/2, 1)`, plus a few small Lie algebras.

use crate::action::ActionTensor;
use crate::algebra::{unit, BiBracket, LieAlgebra, LieTripleSystem, TriBracket};
use crate::lie::LieActionTensor;
use crate::matrix::{vec_zero, Matrix};
use crate::net::NetContext;
use crate::rational::{rat, rat_int, Rat};

/// Structure constants of `L3`: `[e1,e2,e1] = e3`, `[e2,e1,e1] = -e3`.
pub fn l3_bracket() -> TriBracket {
    let mut b = TriBracket::zero(3);
    b.set(0, 1, 0, unit(3, 2)).unwrap();
    let mut neg = vec_zero(3);
    neg[2] = rat_int(-1);
    b.set(1, 0, 0, neg).unwrap();
    b
}

pub fn l3() -> LieTripleSystem {
    LieTripleSystem::new(
        Some(vec!["eps1".into(), "eps2".into(), "eps3".into()]),
        l3_bracket(),
    )
    .unwrap()
}

/// The adjoint maps `θ(x, y)z = [z, x, y]` of any Lie triple system.
pub fn theta_ad(l: &LieTripleSystem) -> ActionTensor {
    let d = l.dim();
    let mut act = ActionTensor::zero(d, d);
    for i in 0..d {
        for j in 0..d {
            let cols = (0..d).map(|z| l.bracket.basis(z, i, j)).collect();
            act.set(i, j, Matrix::from_cols(d, cols)).unwrap();
        }
    }
    act
}

pub fn l3_with_adjoint() -> (LieTripleSystem, ActionTensor) {
    let l = l3();
    let act = theta_ad(&l);
    (l, act)
}

/// The validated `(L3, L3, θ_ad)` context.
pub fn l3_context() -> NetContext {
    let (l, act) = l3_with_adjoint();
    NetContext::new(l.clone(), l, act).unwrap()
}

/// The embedding tensor `diag(2, 1/2, 1)` on the `L3` context.
pub fn t_star() -> Matrix {
    Matrix::from_rows(vec![
        vec![rat_int(2), rat_int(0), rat_int(0)],
        vec![rat_int(0), rat(1, 2), rat_int(0)],
        vec![rat_int(0), rat_int(0), rat_int(1)],
    ])
    .unwrap()
}

/// A general 3×3 matrix on the `L3` basis from the parameter columns
/// `(a, b, c)`.
pub fn l3_matrix(entries: [[Rat; 3]; 3]) -> Matrix {
    Matrix::from_rows(entries.into_iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// The 2-dimensional nonabelian Lie algebra `[e1, e2] = e2`.
pub fn lie_nonabelian_2d() -> LieAlgebra {
    let mut b = BiBracket::zero(2);
    b.set(0, 1, unit(2, 1)).unwrap();
    let mut neg = vec_zero(2);
    neg[1] = rat_int(-1);
    b.set(1, 0, neg).unwrap();
    LieAlgebra::new(None, b).unwrap()
}

/// The 3-dimensional Heisenberg Lie algebra `[e1, e2] = e3`, `e3` central.
pub fn lie_heisenberg() -> LieAlgebra {
    let mut b = BiBracket::zero(3);
    b.set(0, 1, unit(3, 2)).unwrap();
    let mut neg = vec_zero(3);
    neg[2] = rat_int(-1);
    b.set(1, 0, neg).unwrap();
    LieAlgebra::new(None, b).unwrap()
}

pub fn lie_abelian(dim: usize) -> LieAlgebra {
    LieAlgebra::new(None, BiBracket::zero(dim)).unwrap()
}

/// Coherent Lie action of the 2-dim nonabelian algebra on an abelian one:
/// `ρ(e1) = λ·id`, `ρ(e2) = 0`.
pub fn lie_scaling_action(lambda: Rat, acted_dim: usize) -> LieActionTensor {
    let mut rho = LieActionTensor::zero(2, acted_dim);
    rho.set(0, Matrix::identity(acted_dim).scale(&lambda)).unwrap();
    rho
}
