//! Representations, actions and coherent actions of one Lie triple system
//! on another, the derived map `D_θ`, and the nonabelian hemisemidirect
//! product.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{unit, LieTripleSystem, ThreeLeibnizAlgebra, TriBracket};
use crate::matrix::{vec_add, vec_is_zero, vec_zero, Matrix};
use crate::rational::Rat;
use crate::report::{Checker, MultiVerdict, Verdict};
use crate::{Error, Result};

/// The map θ as a family of endomorphism matrices indexed by ordered basis
/// pairs of the acting algebra. θ is not symmetric, so both orders are
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTensor {
    pub acting_dim: usize,
    pub acted_dim: usize,
    theta: BTreeMap<(usize, usize), Matrix>,
}

impl ActionTensor {
    pub fn zero(acting_dim: usize, acted_dim: usize) -> Self {
        ActionTensor {
            acting_dim,
            acted_dim,
            theta: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, m: Matrix) -> Result<()> {
        if i >= self.acting_dim || j >= self.acting_dim {
            return Err(Error::IndexOutOfRange(format!(
                "theta({i},{j}) in acting dim {}",
                self.acting_dim
            )));
        }
        if m.rows() != self.acted_dim || m.cols() != self.acted_dim {
            return Err(Error::DimensionMismatch(format!(
                "theta({i},{j}) is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.acted_dim,
                self.acted_dim
            )));
        }
        if m.is_zero() {
            self.theta.remove(&(i, j));
        } else {
            self.theta.insert((i, j), m);
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Matrix)> {
        self.theta.iter()
    }

    pub fn theta_basis(&self, i: usize, j: usize) -> Matrix {
        self.theta
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.acted_dim, self.acted_dim))
    }

    /// Bilinear extension of θ to coordinate vectors.
    pub fn theta_vec(&self, x: &[Rat], y: &[Rat]) -> Matrix {
        let mut out = Matrix::zero(self.acted_dim, self.acted_dim);
        for ((i, j), m) in &self.theta {
            let c = &x[*i] * &y[*j];
            if !c.is_zero() {
                out = out.add(&m.scale(&c));
            }
        }
        out
    }

    /// `D_θ(e_i, e_j) = θ(e_j, e_i) − θ(e_i, e_j)`.
    pub fn d_theta_basis(&self, i: usize, j: usize) -> Matrix {
        self.theta_basis(j, i).sub(&self.theta_basis(i, j))
    }

    pub fn d_theta_vec(&self, x: &[Rat], y: &[Rat]) -> Matrix {
        self.theta_vec(y, x).sub(&self.theta_vec(x, y))
    }
}

/// Eqs. 2.4–2.5 as matrix identities on all basis 4-tuples, plus the
/// derived identity 2.7 as an internal consistency assertion.
pub fn verify_representation(l: &LieTripleSystem, act: &ActionTensor) -> Result<Verdict> {
    if act.acting_dim != l.dim() {
        return Err(Error::DimensionMismatch(format!(
            "action acting dim {} vs algebra dim {}",
            act.acting_dim,
            l.dim()
        )));
    }
    let d = l.dim();
    let mut ck = Checker::new();
    let zero = Matrix::zero(act.acted_dim, act.acted_dim);
    for x in 0..d {
        for y in 0..d {
            for a in 0..d {
                for b in 0..d {
                    // θ(a,b)θ(x,y) − θ(y,b)θ(x,a) − θ(x,[y,a,b]) + D(y,a)θ(x,b) = 0
                    let lhs = act
                        .theta_basis(a, b)
                        .mul(&act.theta_basis(x, y))
                        .sub(&act.theta_basis(y, b).mul(&act.theta_basis(x, a)))
                        .sub(&act.theta_vec(&unit(d, x), &l.bracket.basis(y, a, b)))
                        .add(&act.d_theta_basis(y, a).mul(&act.theta_basis(x, b)));
                    expect_zero_matrix(&mut ck, "2.4", &[x, y, a, b], &lhs, &zero);

                    // θ(a,b)D(x,y) − D(x,y)θ(a,b) + θ([x,y,a],b) + θ(a,[x,y,b]) = 0
                    let lhs = act
                        .theta_basis(a, b)
                        .mul(&act.d_theta_basis(x, y))
                        .sub(&act.d_theta_basis(x, y).mul(&act.theta_basis(a, b)))
                        .add(&act.theta_vec(&l.bracket.basis(x, y, a), &unit(d, b)))
                        .add(&act.theta_vec(&unit(d, a), &l.bracket.basis(x, y, b)));
                    expect_zero_matrix(&mut ck, "2.5", &[x, y, a, b], &lhs, &zero);

                    // derived: 2.7 must follow from 2.5 + 2.6
                    let lhs = act
                        .d_theta_basis(a, b)
                        .mul(&act.d_theta_basis(x, y))
                        .sub(&act.d_theta_basis(x, y).mul(&act.d_theta_basis(a, b)))
                        .add(&act.d_theta_vec(&l.bracket.basis(x, y, a), &unit(d, b)))
                        .add(&act.d_theta_vec(&unit(d, a), &l.bracket.basis(x, y, b)));
                    expect_zero_matrix(&mut ck, "2.7", &[x, y, a, b], &lhs, &zero);
                }
            }
        }
    }
    Ok(ck.finish())
}

fn expect_zero_matrix(ck: &mut Checker, eq: &str, indices: &[usize], m: &Matrix, zero: &Matrix) {
    if m != zero {
        // report the first nonzero column as the witness vector
        for j in 0..m.cols() {
            let col = m.col(j);
            if !vec_is_zero(&col) {
                let mut idx = indices.to_vec();
                idx.push(j);
                ck.record(eq, idx, &col, &vec_zero(col.len()));
                return;
            }
        }
    }
}

/// Coherent-action verification: representation axioms, θ-image in the
/// center (2.8), θ kills products (2.9), θ acts by derivations, plus the
/// consequences 2.10–2.11 for `D_θ`.
pub fn verify_coherent_action(
    l: &LieTripleSystem,
    lp: &LieTripleSystem,
    act: &ActionTensor,
) -> Result<MultiVerdict> {
    if act.acted_dim != lp.dim() {
        return Err(Error::DimensionMismatch(format!(
            "action acted dim {} vs algebra dim {}",
            act.acted_dim,
            lp.dim()
        )));
    }
    let rep = verify_representation(l, act)?;
    let d = l.dim();
    let m = lp.dim();
    let br = &lp.bracket;

    // θ(x,y)u ∈ C(L') iff [θ(x,y)u, b, c]' = 0 for all basis b, c
    let mut ck_center = Checker::new();
    let mut ck_kills = Checker::new();
    let mut ck_der = Checker::new();
    let mut ck_d_center = Checker::new();
    let mut ck_d_kills = Checker::new();
    for x in 0..d {
        for y in 0..d {
            let th = act.theta_basis(x, y);
            let dth = act.d_theta_basis(x, y);
            for u in 0..m {
                let tu = th.col(u);
                for b in 0..m {
                    for c in 0..m {
                        let mut img = vec_zero(m);
                        for (s, coef) in tu.iter().enumerate() {
                            crate::matrix::vec_axpy(&mut img, coef, &br.basis(s, b, c));
                        }
                        ck_center.expect_eq("2.8", &[x, y, u, b, c], &img, &vec_zero(m));
                    }
                }
                let du = dth.col(u);
                for b in 0..m {
                    for c in 0..m {
                        let mut img = vec_zero(m);
                        for (s, coef) in du.iter().enumerate() {
                            crate::matrix::vec_axpy(&mut img, coef, &br.basis(s, b, c));
                        }
                        ck_d_center.expect_eq("2.10", &[x, y, u, b, c], &img, &vec_zero(m));
                    }
                }
            }
            for u in 0..m {
                for v in 0..m {
                    for w in 0..m {
                        let prod = br.basis(u, v, w);
                        let lhs = th.mul_vec(&prod);
                        ck_kills.expect_eq("2.9", &[x, y, u, v, w], &lhs, &vec_zero(m));
                        let lhs_d = dth.mul_vec(&prod);
                        ck_d_kills.expect_eq("2.11", &[x, y, u, v, w], &lhs_d, &vec_zero(m));

                        // derivation: θ(x,y)[u,v,w]' = [θu,v,w]' + [u,θv,w]' + [u,v,θw]'
                        let der = derivation_defect(br, &th, u, v, w);
                        ck_der.expect_eq("derivation", &[x, y, u, v, w], &der, &vec_zero(m));
                        let der_d = derivation_defect(br, &dth, u, v, w);
                        ck_d_kills.expect_eq(
                            "2.10-derivation",
                            &[x, y, u, v, w],
                            &der_d,
                            &vec_zero(m),
                        );
                    }
                }
            }
        }
    }

    Ok(MultiVerdict::from_checks(vec![
        ("representation".into(), rep),
        ("2.8-center".into(), ck_center.finish()),
        ("2.9-kills-products".into(), ck_kills.finish()),
        ("derivation".into(), ck_der.finish()),
        ("2.10-d-theta".into(), ck_d_center.finish()),
        ("2.11-d-theta".into(), ck_d_kills.finish()),
    ]))
}

/// `op[u,v,w]' − [op u,v,w]' − [u,op v,w]' − [u,v,op w]'` on basis indices.
fn derivation_defect(br: &TriBracket, op: &Matrix, u: usize, v: usize, w: usize) -> Vec<Rat> {
    let m = br.dim;
    let lhs = op.mul_vec(&br.basis(u, v, w));
    let mut rhs = br.eval(&op.col(u), &unit(m, v), &unit(m, w));
    rhs = vec_add(&rhs, &br.eval(&unit(m, u), &op.col(v), &unit(m, w)));
    rhs = vec_add(&rhs, &br.eval(&unit(m, u), &unit(m, v), &op.col(w)));
    crate::matrix::vec_sub(&lhs, &rhs)
}

/// The nonabelian hemisemidirect product on `L ⊕ L'` (L basis first):
/// `[(a,u),(b,v),(c,w)] = ([a,b,c], D_θ(a,b)w + [u,v,w]')`.
pub fn hemisemidirect(
    l: &LieTripleSystem,
    lp: &LieTripleSystem,
    act: &ActionTensor,
) -> Result<ThreeLeibnizAlgebra> {
    let coh = verify_coherent_action(l, lp, act)?;
    if !coh.pass {
        return Err(Error::Precondition(
            "hemisemidirect product requires a coherent action".into(),
        ));
    }
    hemisemidirect_unchecked(l, lp, act)
}

/// Same construction without re-verifying coherence (callers that already
/// hold a validated context). The 3-Leibniz axiom is still asserted.
pub fn hemisemidirect_unchecked(
    l: &LieTripleSystem,
    lp: &LieTripleSystem,
    act: &ActionTensor,
) -> Result<ThreeLeibnizAlgebra> {
    let b = hemisemidirect_bracket(l, lp, act)?;
    let mut labels = l.labels.clone();
    labels.extend(lp.labels.iter().map(|s| format!("{s}'")));
    ThreeLeibnizAlgebra::new(Some(labels), b)
        .map_err(|e| Error::Internal(format!("hemisemidirect product is not 3-Leibniz: {e}")))
}

/// The raw structure constants of the product bracket, without the (costly)
/// 3-Leibniz assertion. For callers that only evaluate the bracket.
pub(crate) fn hemisemidirect_bracket(
    l: &LieTripleSystem,
    lp: &LieTripleSystem,
    act: &ActionTensor,
) -> Result<TriBracket> {
    let n = l.dim();
    let m = lp.dim();
    let dim = n + m;
    let mut b = TriBracket::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut out = vec_zero(dim);
                if i < n && j < n && k < n {
                    let v = l.bracket.basis(i, j, k);
                    out[..n].clone_from_slice(&v);
                }
                if i < n && j < n && k >= n {
                    let v = act.d_theta_basis(i, j).col(k - n);
                    out[n..].clone_from_slice(&v);
                }
                if i >= n && j >= n && k >= n {
                    let v = lp.bracket.basis(i - n, j - n, k - n);
                    out[n..].clone_from_slice(&v);
                }
                b.set(i, j, k, out)?;
            }
        }
    }
    Ok(b)
}
