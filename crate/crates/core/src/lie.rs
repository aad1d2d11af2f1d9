//! The Lie-algebra side: coherent Lie actions (Eq. 6.1), Lie embedding
//! tensors (Eq. 6.2), the squaring construction to a Lie triple system,
//! the induced action θ_ρ (Eq. 6.3) and the transport theorem.

use crate::action::ActionTensor;
use crate::algebra::{LieAlgebra, LieTripleSystem, TriBracket};
use crate::matrix::{vec_add, Matrix};
use crate::rational::Rat;
use crate::report::{Checker, MultiVerdict, Verdict};
use crate::{Error, Result};

/// A linear map `ρ: g → gl(V)`, stored as one matrix per basis element of
/// the acting algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieActionTensor {
    acting_dim: usize,
    acted_dim: usize,
    rho: Vec<Matrix>,
}

impl LieActionTensor {
    pub fn zero(acting_dim: usize, acted_dim: usize) -> Self {
        LieActionTensor {
            acting_dim,
            acted_dim,
            rho: vec![Matrix::zero(acted_dim, acted_dim); acting_dim],
        }
    }

    pub fn acting_dim(&self) -> usize {
        self.acting_dim
    }

    pub fn acted_dim(&self) -> usize {
        self.acted_dim
    }

    pub fn set(&mut self, i: usize, m: Matrix) -> Result<()> {
        if i >= self.acting_dim {
            return Err(Error::IndexOutOfRange(format!(
                "rho index {i} out of range for acting dimension {}",
                self.acting_dim
            )));
        }
        if m.rows() != self.acted_dim || m.cols() != self.acted_dim {
            return Err(Error::DimensionMismatch(format!(
                "rho({i}) is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.acted_dim,
                self.acted_dim
            )));
        }
        self.rho[i] = m;
        Ok(())
    }

    pub fn rho_basis(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    pub fn rho_vec(&self, x: &[Rat]) -> Matrix {
        let mut out = Matrix::zero(self.acted_dim, self.acted_dim);
        for (i, c) in x.iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                out = out.add(&self.rho[i].scale(c));
            }
        }
        out
    }
}

fn check_action_shapes(g: &LieAlgebra, h: &LieAlgebra, rho: &LieActionTensor) -> Result<()> {
    if rho.acting_dim != g.dim() || rho.acted_dim != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "action is {}-on-{}, algebras are {}-on-{}",
            rho.acting_dim,
            rho.acted_dim,
            g.dim(),
            h.dim()
        )));
    }
    Ok(())
}

/// Coherent Lie action check: `ρ` is a Lie algebra homomorphism into
/// `gl(L')`, each `ρ(x)` is a derivation of `[.,.]'`, and Eq. 6.1
/// `[ρ(x)u, v]' = 0` holds.
pub fn lie_action_check(
    g: &LieAlgebra,
    h: &LieAlgebra,
    rho: &LieActionTensor,
) -> Result<MultiVerdict> {
    check_action_shapes(g, h, rho)?;
    let n = g.dim();
    let m = h.dim();

    let mut hom = Checker::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = rho.rho_vec(&g.bracket.basis(i, j));
            let a = rho.rho_basis(i);
            let b = rho.rho_basis(j);
            let rhs = a.mul(b).sub(&b.mul(a));
            for u in 0..m {
                hom.expect_eq("lie-hom", &[i, j, u], &lhs.col(u), &rhs.col(u));
            }
        }
    }

    let mut der = Checker::new();
    for i in 0..n {
        let r = rho.rho_basis(i);
        for u in 0..m {
            for v in 0..m {
                let lhs = r.mul_vec(&h.bracket.basis(u, v));
                let rhs = vec_add(
                    &h.bracket.eval(&r.col(u), &crate::algebra::unit(m, v)),
                    &h.bracket.eval(&crate::algebra::unit(m, u), &r.col(v)),
                );
                der.expect_eq("derivation", &[i, u, v], &lhs, &rhs);
            }
        }
    }

    let mut coh = Checker::new();
    for i in 0..n {
        let r = rho.rho_basis(i);
        for u in 0..m {
            for v in 0..m {
                let lhs = h.bracket.eval(&r.col(u), &crate::algebra::unit(m, v));
                coh.expect_eq("6.1", &[i, u, v], &lhs, &crate::matrix::vec_zero(m));
            }
        }
    }

    Ok(MultiVerdict::from_checks(vec![
        ("lie-hom".to_string(), hom.finish()),
        ("derivation".to_string(), der.finish()),
        ("6.1".to_string(), coh.finish()),
    ]))
}

/// Eq. 6.2 on all basis pairs: `[Tu, Tv] = T(ρ(Tu)v + [u,v]')`.
pub fn lie_net_check(
    g: &LieAlgebra,
    h: &LieAlgebra,
    rho: &LieActionTensor,
    t: &Matrix,
) -> Result<Verdict> {
    check_action_shapes(g, h, rho)?;
    if t.rows() != g.dim() || t.cols() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, expected {}x{}",
            t.rows(),
            t.cols(),
            g.dim(),
            h.dim()
        )));
    }
    let m = h.dim();
    let mut ck = Checker::new();
    for u in 0..m {
        let tu = t.col(u);
        let r = rho.rho_vec(&tu);
        for v in 0..m {
            let lhs = g.bracket.eval(&tu, &t.col(v));
            let inner = vec_add(&r.col(v), &h.bracket.basis(u, v));
            let rhs = t.mul_vec(&inner);
            ck.expect_eq("6.2", &[u, v], &lhs, &rhs);
        }
    }
    Ok(ck.finish())
}

/// The triple system `[x,y,z] = [[x,y],z]` induced by a Lie bracket.
/// Asserts the triple axioms, which always hold for this construction.
pub fn lts_from_lie(g: &LieAlgebra) -> Result<LieTripleSystem> {
    let n = g.dim();
    let mut b = TriBracket::zero(n);
    for i in 0..n {
        for j in 0..n {
            let xy = g.bracket.basis(i, j);
            for k in 0..n {
                b.set(i, j, k, g.bracket.eval(&xy, &crate::algebra::unit(n, k)))?;
            }
        }
    }
    LieTripleSystem::new(Some(g.labels.clone()), b)
        .map_err(|e| Error::Internal(format!("squared Lie bracket failed triple axioms: {e}")))
}

/// The induced triple-system action `θ_ρ(x, y) = ρ(y) ∘ ρ(x)` (Eq. 6.3;
/// note the composition order). Requires a coherent Lie action and asserts
/// coherence of the result.
pub fn theta_from_rho(
    g: &LieAlgebra,
    h: &LieAlgebra,
    rho: &LieActionTensor,
) -> Result<ActionTensor> {
    let v = lie_action_check(g, h, rho)?;
    if !v.pass {
        return Err(Error::Precondition(format!(
            "Lie action is not coherent: {:?}",
            v.checks.iter().find(|c| !c.verdict.pass).map(|c| &c.name)
        )));
    }
    let n = g.dim();
    let mut act = ActionTensor::zero(n, h.dim());
    for x in 0..n {
        for y in 0..n {
            act.set(x, y, rho.rho_basis(y).mul(rho.rho_basis(x)))?;
        }
    }
    let lts = lts_from_lie(g)?;
    let ltsp = lts_from_lie(h)?;
    let coh = crate::action::verify_coherent_action(&lts, &ltsp, &act)?;
    if !coh.pass {
        return Err(Error::Internal(format!(
            "induced action failed coherence: {:?}",
            coh.checks.iter().find(|c| !c.verdict.pass).map(|c| &c.name)
        )));
    }
    Ok(act)
}

/// Transport theorem: a Lie embedding tensor for `(g, h, ρ)` is an
/// embedding tensor for the squared triple systems with action `θ_ρ`.
/// Reports both verdicts; if the Lie side passes, the triple-system side
/// is required to pass.
pub fn transport_check(
    g: &LieAlgebra,
    h: &LieAlgebra,
    rho: &LieActionTensor,
    t: &Matrix,
) -> Result<MultiVerdict> {
    let lie = lie_net_check(g, h, rho, t)?;
    let act = theta_from_rho(g, h, rho)?;
    let ctx = crate::net::NetContext::new(lts_from_lie(g)?, lts_from_lie(h)?, act)?;
    let lts = crate::net::net_check(&ctx, t)?;
    if lie.pass && !lts.pass {
        return Err(Error::Internal(format!(
            "transport theorem violated: {:?}",
            lts.witness
        )));
    }
    Ok(MultiVerdict::from_checks(vec![
        ("6.2".to_string(), lie),
        ("2.14".to_string(), lts),
    ]))
}
