//! Representations of 3-Leibniz algebras (Eqs. 4.1–4.5), the
//! representation induced by an embedding tensor (Eqs. 4.6–4.8), the
//! coboundary operators δⁿ/∂_Tⁿ, the degree-0 map ℑ(a,b), cohomology
//! dimensions, and the executable comparison with the graded-bracket
//! differential `d_T`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{unit, ThreeLeibnizAlgebra};
use crate::comb::{wedge_basis, wedge_count, wedge_unflat, WedgeIndex};
use crate::graded::{Cochain, GradedContext};
use crate::matrix::{vec_add, vec_is_zero, vec_sub, vec_zero, Matrix};
use crate::net::Net;
use crate::rational::{rat_int, Rat};
use crate::report::{Checker, MultiVerdict, Verdict};
use crate::{Error, Result};

/// Highest coboundary degree that [`coboundary_matrix`] assembles.
pub const MAX_COBOUNDARY_DEGREE: usize = 3;

/// A representation of a 3-Leibniz algebra on a vector space `V`:
/// three action families
/// `ρˡ(x,y,·)`, `ρᵐ(x,·,z)`, `ρʳ(·,y,z)` stored as `V`-endomorphisms per
/// basis pair of the algebra.
#[derive(Debug, Clone)]
pub struct LeibnizRep {
    pub algebra: ThreeLeibnizAlgebra,
    pub v_dim: usize,
    rho_l: Vec<Matrix>,
    rho_m: Vec<Matrix>,
    rho_r: Vec<Matrix>,
}

impl LeibnizRep {
    pub fn new(
        algebra: ThreeLeibnizAlgebra,
        v_dim: usize,
        rho_l: Vec<Matrix>,
        rho_m: Vec<Matrix>,
        rho_r: Vec<Matrix>,
    ) -> Result<Self> {
        let m = algebra.dim();
        for fam in [&rho_l, &rho_m, &rho_r] {
            if fam.len() != m * m {
                return Err(Error::DimensionMismatch(format!(
                    "action family has {} matrices, expected {}",
                    fam.len(),
                    m * m
                )));
            }
            if fam.iter().any(|x| x.rows() != v_dim || x.cols() != v_dim) {
                return Err(Error::DimensionMismatch(
                    "action matrices must be square of the module dimension".into(),
                ));
            }
        }
        Ok(LeibnizRep {
            algebra,
            v_dim,
            rho_l,
            rho_m,
            rho_r,
        })
    }

    pub fn zero(algebra: ThreeLeibnizAlgebra, v_dim: usize) -> Self {
        let m = algebra.dim();
        let z = vec![Matrix::zero(v_dim, v_dim); m * m];
        LeibnizRep {
            algebra,
            v_dim,
            rho_l: z.clone(),
            rho_m: z.clone(),
            rho_r: z,
        }
    }

    /// `ρˡ(e_i, e_j, ·)` as a matrix on `V`.
    pub fn rho_l(&self, i: usize, j: usize) -> &Matrix {
        &self.rho_l[i * self.algebra.dim() + j]
    }

    /// `ρᵐ(e_i, ·, e_k)` as a matrix on `V`.
    pub fn rho_m(&self, i: usize, k: usize) -> &Matrix {
        &self.rho_m[i * self.algebra.dim() + k]
    }

    /// `ρʳ(·, e_j, e_k)` as a matrix on `V`.
    pub fn rho_r(&self, j: usize, k: usize) -> &Matrix {
        &self.rho_r[j * self.algebra.dim() + k]
    }

    fn combine(fam: &[Matrix], m: usize, x: &[Rat], y: &[Rat], v_dim: usize) -> Matrix {
        let mut out = Matrix::zero(v_dim, v_dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out = out.add(&fam[i * m + j].scale(&(a * b)));
            }
        }
        out
    }

    pub fn rho_l_vec(&self, x: &[Rat], y: &[Rat]) -> Matrix {
        Self::combine(&self.rho_l, self.algebra.dim(), x, y, self.v_dim)
    }

    pub fn rho_m_vec(&self, x: &[Rat], z: &[Rat]) -> Matrix {
        Self::combine(&self.rho_m, self.algebra.dim(), x, z, self.v_dim)
    }

    pub fn rho_r_vec(&self, y: &[Rat], z: &[Rat]) -> Matrix {
        Self::combine(&self.rho_r, self.algebra.dim(), y, z, self.v_dim)
    }
}

fn expect_zero_matrix(ck: &mut Checker, eq: &str, idx: &[usize], m: &Matrix) {
    for c in 0..m.cols() {
        let col = m.col(c);
        if !vec_is_zero(&col) {
            let mut indices = idx.to_vec();
            indices.push(c);
            ck.expect_eq(eq, &indices, &col, &vec_zero(m.rows()));
            return;
        }
    }
}

/// Verifies Eqs. 4.1–4.5 as matrix identities on all basis tuples of the
/// algebra.
pub fn verify_leibniz_rep(rep: &LeibnizRep) -> MultiVerdict {
    let m = rep.algebra.dim();
    let br = &rep.algebra.bracket;

    let mut c41 = Checker::new();
    let mut c42 = Checker::new();
    let mut c43 = Checker::new();
    let mut c44 = Checker::new();
    let mut c45 = Checker::new();

    for a in 0..m {
        for b in 0..m {
            let lab = rep.rho_l(a, b);
            for x in 0..m {
                for y in 0..m {
                    // 4.1: ρˡ(a,b)ρˡ(x,y)
                    //      = ρˡ([a,b,x],y) + ρˡ(x,[a,b,y]) + ρˡ(x,y)ρˡ(a,b)
                    let lhs = lab.mul(rep.rho_l(x, y));
                    let rhs = rep
                        .rho_l_vec(&br.basis(a, b, x), &unit(m, y))
                        .add(&rep.rho_l_vec(&unit(m, x), &br.basis(a, b, y)))
                        .add(&rep.rho_l(x, y).mul(lab));
                    expect_zero_matrix(&mut c41, "4.1", &[a, b, x, y], &lhs.sub(&rhs));

                    // 4.2: ρˡ(a,b)ρᵐ(x,·,z)
                    //      = ρᵐ([a,b,x],·,z) + ρᵐ(x,·,z)ρˡ(a,b) + ρᵐ(x,·,[a,b,z])
                    let z = y;
                    let lhs = lab.mul(rep.rho_m(x, z));
                    let rhs = rep
                        .rho_m_vec(&br.basis(a, b, x), &unit(m, z))
                        .add(&rep.rho_m(x, z).mul(lab))
                        .add(&rep.rho_m_vec(&unit(m, x), &br.basis(a, b, z)));
                    expect_zero_matrix(&mut c42, "4.2", &[a, b, x, z], &lhs.sub(&rhs));

                    // 4.3: ρˡ(a,b)ρʳ(·,y,z)
                    //      = ρʳ(·,y,z)ρˡ(a,b) + ρʳ(·,[a,b,y],z) + ρʳ(·,y,[a,b,z])
                    let lhs = lab.mul(rep.rho_r(x, z));
                    let rhs = rep
                        .rho_r(x, z)
                        .mul(lab)
                        .add(&rep.rho_r_vec(&br.basis(a, b, x), &unit(m, z)))
                        .add(&rep.rho_r_vec(&unit(m, x), &br.basis(a, b, z)));
                    expect_zero_matrix(&mut c43, "4.3", &[a, b, x, z], &lhs.sub(&rhs));
                }
            }
        }
    }

    for a in 0..m {
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    // 4.4: ρᵐ(a,·,[x,y,z]) = ρʳ(·,y,z)ρᵐ(a,·,x)
                    //      + ρᵐ(x,·,z)ρᵐ(a,·,y) + ρˡ(x,y)ρᵐ(a,·,z)
                    let xyz = br.basis(x, y, z);
                    let lhs = rep.rho_m_vec(&unit(m, a), &xyz);
                    let rhs = rep
                        .rho_r(y, z)
                        .mul(rep.rho_m(a, x))
                        .add(&rep.rho_m(x, z).mul(rep.rho_m(a, y)))
                        .add(&rep.rho_l(x, y).mul(rep.rho_m(a, z)));
                    expect_zero_matrix(&mut c44, "4.4", &[a, x, y, z], &lhs.sub(&rhs));

                    // 4.5: ρʳ(·,a,[x,y,z]) = ρʳ(·,y,z)ρʳ(·,a,x)
                    //      + ρᵐ(x,·,z)ρʳ(·,a,y) + ρˡ(x,y)ρʳ(·,a,z)
                    let lhs = rep.rho_r_vec(&unit(m, a), &xyz);
                    let rhs = rep
                        .rho_r(y, z)
                        .mul(rep.rho_r(a, x))
                        .add(&rep.rho_m(x, z).mul(rep.rho_r(a, y)))
                        .add(&rep.rho_l(x, y).mul(rep.rho_r(a, z)));
                    expect_zero_matrix(&mut c45, "4.5", &[a, x, y, z], &lhs.sub(&rhs));
                }
            }
        }
    }

    MultiVerdict::from_checks(vec![
        ("4.1".to_string(), c41.finish()),
        ("4.2".to_string(), c42.finish()),
        ("4.3".to_string(), c43.finish()),
        ("4.4".to_string(), c44.finish()),
        ("4.5".to_string(), c45.finish()),
    ])
}

/// The representation of the descendent algebra on `L` induced by a net:
/// `ρˡ_T(u,v,x) = [Tu,Tv,x]`, `ρᵐ_T(u,x,v) = [Tu,x,Tv] − T D_θ(Tu,x)v`,
/// `ρʳ_T(x,u,v) = [x,Tu,Tv] − T D_θ(x,Tu)v`. Verification of
/// Eqs. 4.1–4.5 runs and must pass.
pub fn induced_rep(net: &Net) -> Result<LeibnizRep> {
    let ctx = &net.ctx;
    let t = &net.t;
    let descendent = crate::net::descendent(net)?;
    let m = ctx.dim_lp();
    let n = ctx.dim_l();

    let mut rho_l = Vec::with_capacity(m * m);
    let mut rho_m = Vec::with_capacity(m * m);
    let mut rho_r = Vec::with_capacity(m * m);
    for i in 0..m {
        let ti = t.col(i);
        for j in 0..m {
            let tj = t.col(j);
            let l_cols = (0..n).map(|x| ctx.l.bracket.eval(&ti, &tj, &unit(n, x))).collect();
            rho_l.push(Matrix::from_cols(n, l_cols));

            // ρᵐ(e_i, ·, e_j): x ↦ [Te_i, x, Te_j] − T D_θ(Te_i, x) e_j
            let m_cols = (0..n)
                .map(|x| {
                    let ex = unit(n, x);
                    vec_sub(
                        &ctx.l.bracket.eval(&ti, &ex, &tj),
                        &t.mul_vec(&ctx.act.d_theta_vec(&ti, &ex).col(j)),
                    )
                })
                .collect();
            rho_m.push(Matrix::from_cols(n, m_cols));

            // ρʳ(·, e_i, e_j): x ↦ [x, Te_i, Te_j] − T D_θ(x, Te_i) e_j
            let r_cols = (0..n)
                .map(|x| {
                    let ex = unit(n, x);
                    vec_sub(
                        &ctx.l.bracket.eval(&ex, &ti, &tj),
                        &t.mul_vec(&ctx.act.d_theta_vec(&ex, &ti).col(j)),
                    )
                })
                .collect();
            rho_r.push(Matrix::from_cols(n, r_cols));
        }
    }

    let rep = LeibnizRep::new(descendent, n, rho_l, rho_m, rho_r)?;
    let v = verify_leibniz_rep(&rep);
    if !v.pass {
        return Err(Error::Internal(format!(
            "induced actions failed representation axioms: {:?}",
            v.checks.iter().find(|c| !c.verdict.pass).map(|c| &c.name)
        )));
    }
    Ok(rep)
}

/// One wedge slot of a cochain argument: either a canonical flat index or
/// a formal linear combination of index pairs.
enum PairArg {
    Flat(usize),
    Sum(Vec<(Rat, (usize, usize))>),
}

fn eval_general(f: &Cochain, pairs: &[PairArg], last: &[Rat]) -> Vec<Rat> {
    fn rec(
        f: &Cochain,
        pairs: &[PairArg],
        last: &[Rat],
        slot: usize,
        coeff: Rat,
        idx: &mut Vec<(usize, usize)>,
        out: &mut Vec<Rat>,
    ) {
        if slot == pairs.len() {
            for (k, c) in last.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let v = f.eval_pairs(idx, k);
                let total = &coeff * c;
                for (o, x) in out.iter_mut().zip(&v) {
                    if !x.is_zero() {
                        *o += &total * x;
                    }
                }
            }
            return;
        }
        match &pairs[slot] {
            PairArg::Flat(fl) => {
                let w = wedge_unflat(f.dom(), *fl);
                idx.push((w.i, w.j));
                rec(f, pairs, last, slot + 1, coeff, idx, out);
                idx.pop();
            }
            PairArg::Sum(terms) => {
                for (c, p) in terms {
                    if c.is_zero() {
                        continue;
                    }
                    idx.push(*p);
                    rec(f, pairs, last, slot + 1, &coeff * c, idx, out);
                    idx.pop();
                }
            }
        }
    }
    let mut out = vec_zero(f.cod());
    let mut idx = Vec::with_capacity(pairs.len());
    rec(f, pairs, last, 0, rat_int(1), &mut idx, &mut out);
    out
}

/// The coboundary `δⁿ` of an `n`-cochain (`n−1` pair slots) over a
/// representation, implementing the four sum groups of the displayed
/// formula: pair-slot substitution, final-slot substitution, the `ρˡ`
/// terms, and the `(−1)^{n+1}(ρᵐ + ρʳ)` tail.
pub fn delta_n(rep: &LeibnizRep, f: &Cochain) -> Result<Cochain> {
    let m = rep.algebra.dim();
    if f.dom() != m || f.cod() != rep.v_dim {
        return Err(Error::DimensionMismatch(format!(
            "cochain shape ({},{}) does not match representation ({},{})",
            f.dom(),
            f.cod(),
            m,
            rep.v_dim
        )));
    }
    let n = f.deg() + 1;
    let br = &rep.algebra.bracket;
    let w = wedge_count(m);
    let mut out = Cochain::zero(m, rep.v_dim, n)?;

    let mut flats = vec![0usize; n];
    for tuple in 0..w.pow(n as u32) {
        let mut rem = tuple;
        for s in (0..n).rev() {
            flats[s] = rem % w;
            rem /= w;
        }
        let pairs: Vec<WedgeIndex> = flats.iter().map(|&fl| wedge_unflat(m, fl)).collect();
        for z in 0..m {
            let mut acc = vec_zero(rep.v_dim);

            // group 1: replace U_k (j < k) by
            // u_k ∧ [u_j,v_j,v_k] + [u_j,v_j,u_k] ∧ v_k, drop U_j
            for j in 1..=n {
                let sj = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                let (uj, vj) = (pairs[j - 1].i, pairs[j - 1].j);
                for k in (j + 1)..=n {
                    let (uk, vk) = (pairs[k - 1].i, pairs[k - 1].j);
                    let bv = br.basis(uj, vj, vk);
                    let bu = br.basis(uj, vj, uk);
                    let mut sum = Vec::new();
                    for (t, c) in bv.iter().enumerate() {
                        if !c.is_zero() {
                            sum.push((c.clone(), (uk, t)));
                        }
                    }
                    for (t, c) in bu.iter().enumerate() {
                        if !c.is_zero() {
                            sum.push((c.clone(), (t, vk)));
                        }
                    }
                    let args: Vec<PairArg> = (1..=n)
                        .filter(|&s| s != j)
                        .map(|s| {
                            if s == k {
                                PairArg::Sum(std::mem::take(&mut sum.clone()))
                            } else {
                                PairArg::Flat(flats[s - 1])
                            }
                        })
                        .collect();
                    let v = eval_general(f, &args, &unit(m, z));
                    for (a, x) in acc.iter_mut().zip(&v) {
                        *a += &sj * x;
                    }
                }
            }

            // groups 2 and 3: drop U_j; substitute the final slot or act
            // by ρˡ(u_j, v_j)
            for j in 1..=n {
                let sj = if j % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                let (uj, vj) = (pairs[j - 1].i, pairs[j - 1].j);
                let args: Vec<PairArg> = (1..=n)
                    .filter(|&s| s != j)
                    .map(|s| PairArg::Flat(flats[s - 1]))
                    .collect();
                let v2 = eval_general(f, &args, &br.basis(uj, vj, z));
                let v3 = rep.rho_l(uj, vj).mul_vec(&eval_general(f, &args, &unit(m, z)));
                for ((a, x2), x3) in acc.iter_mut().zip(&v2).zip(&v3) {
                    *a += &sj * x2 - &sj * x3;
                }
            }

            // group 4: (−1)^{n+1} (ρᵐ(u_n, f(U_1..U_{n−1}, v_n), z)
            //                       + ρʳ(f(U_1..U_{n−1}, u_n), v_n, z))
            let tail_sign = if (n + 1) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let head: Vec<PairArg> = flats[..n - 1].iter().map(|&fl| PairArg::Flat(fl)).collect();
            let (un, vn) = (pairs[n - 1].i, pairs[n - 1].j);
            let fv = eval_general(f, &head, &unit(m, vn));
            let fu = eval_general(f, &head, &unit(m, un));
            let tail = vec_add(
                &rep.rho_m(un, z).mul_vec(&fv),
                &rep.rho_r(vn, z).mul_vec(&fu),
            );
            for (a, x) in acc.iter_mut().zip(&tail) {
                *a += &tail_sign * x;
            }

            if !vec_is_zero(&acc) {
                out.set_value(&flats, z, acc)?;
            }
        }
    }
    Ok(out)
}

/// The degree-0 coboundary value `ℑ(a,b): u ↦ T D_θ(a,b)u − [a,b,Tu]`.
pub fn partial0(net: &Net, a: &[Rat], b: &[Rat]) -> Result<Matrix> {
    let ctx = &net.ctx;
    let n = ctx.dim_l();
    if a.len() != n || b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "arguments must lie in the {n}-dimensional source system"
        )));
    }
    let d = ctx.act.d_theta_vec(a, b);
    let cols = (0..ctx.dim_lp())
        .map(|u| {
            vec_sub(
                &net.t.mul_vec(&d.col(u)),
                &ctx.l.bracket.eval(a, b, &net.t.col(u)),
            )
        })
        .collect();
    Ok(Matrix::from_cols(n, cols))
}

/// Assembles `∂_Tⁿ` as a matrix in the canonical cochain bases
/// (lexicographic on (pair tuple, final index), value components
/// innermost). `n = 0` maps `Λ²L` through ℑ; `n ≥ 1` is [`delta_n`] over
/// the induced representation.
pub fn coboundary_matrix(net: &Net, n: usize) -> Result<Matrix> {
    if n > MAX_COBOUNDARY_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    let nl = net.ctx.dim_l();
    let m = net.ctx.dim_lp();
    if n == 0 {
        let rows = m * nl;
        let cols = wedge_basis(nl)
            .into_iter()
            .map(|wi| {
                let im = partial0(net, &unit(nl, wi.i), &unit(nl, wi.j))?;
                Ok(Cochain::from_matrix(&im).coords().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Matrix::from_cols(rows, cols));
    }
    let rep = induced_rep(net)?;
    let dim_cn = wedge_count(m).pow((n - 1) as u32) * m * nl;
    let dim_cn1 = wedge_count(m).pow(n as u32) * m * nl;
    let mut cols = Vec::with_capacity(dim_cn);
    for k in 0..dim_cn {
        let mut coords = vec![Rat::zero(); dim_cn];
        coords[k] = rat_int(1);
        let f = Cochain::from_coords(m, nl, n - 1, coords)?;
        cols.push(delta_n(&rep, &f)?.coords().to_vec());
    }
    let mat = Matrix::from_cols(dim_cn1, cols);
    Ok(mat)
}

/// Dimensions of a cohomology group of the net's complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub n: usize,
    #[serde(rename = "dimC")]
    pub dim_c: usize,
    #[serde(rename = "dimZ")]
    pub dim_z: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
}

/// Cohomology dimensions at degree `n ∈ {1,2}`; degree 3 must be opted
/// into because of its cost.
pub fn cohomology_dims(net: &Net, n: usize, enable_degree_3: bool) -> Result<CohomologyReport> {
    let supported = n == 1 || n == 2 || (n == 3 && enable_degree_3);
    if !supported {
        return Err(Error::UnsupportedDegree(n));
    }
    let below = coboundary_matrix(net, n - 1)?;
    let at = coboundary_matrix(net, n)?;
    let dim_c = at.cols();
    let dim_b = below.rank();
    let dim_z = dim_c - at.rank();
    if dim_b > dim_z {
        return Err(Error::Internal(format!(
            "coboundary rank {dim_b} exceeds cocycle dimension {dim_z} at degree {n}"
        )));
    }
    Ok(CohomologyReport {
        n,
        dim_c,
        dim_z,
        dim_b,
        dim_h: dim_z - dim_b,
    })
}

/// Dimension of `ker ∂⁰ ⊆ Λ²L`. The complex starts at `Λ²L`; this kernel
/// is reported on its own rather than as a cohomology group.
pub fn degree0_kernel_dim(net: &Net) -> Result<usize> {
    let d0 = coboundary_matrix(net, 0)?;
    Ok(d0.cols() - d0.rank())
}

/// Executable comparison `∂_Tⁿ f = (−1)^{n−1} d_Tⁿ(f)`: the left side via
/// the representation-based coboundary, the right side via graded-bracket
/// evaluation — two disjoint code paths.
pub fn compare_with_dt(net: &Net, f: &Cochain) -> Result<Verdict> {
    let n = f.deg() + 1;
    if n != 1 && n != 2 {
        return Err(Error::UnsupportedDegree(n));
    }
    let rep = induced_rep(net)?;
    let lhs = delta_n(&rep, f)?;
    let g = GradedContext::new(net.ctx.clone())?;
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let rhs = g.dt(&net.t, f)?.scale(&rat_int(sign));
    let mut ck = Checker::new();
    for (k, (a, b)) in lhs.coords().iter().zip(rhs.coords()).enumerate() {
        if a != b {
            ck.expect_eq(
                "partial-vs-dT",
                &[k],
                std::slice::from_ref(a),
                std::slice::from_ref(b),
            );
        }
    }
    Ok(ck.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{LieTripleSystem, TriBracket};
    use crate::comb::wedge_flat;
    use crate::fixtures::{l3_context, t_star};
    use crate::net::NetContext;
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn star_net() -> Net {
        Net::new(l3_context(), t_star()).unwrap()
    }

    fn rand_cochain(rng: &mut ChaCha8Rng, dom: usize, cod: usize, deg: usize) -> Cochain {
        let len = wedge_count(dom).pow(deg as u32) * dom * cod;
        let coords = (0..len).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
        Cochain::from_coords(dom, cod, deg, coords).unwrap()
    }

    #[test]
    fn induced_rep_values_on_the_diagonal_net() {
        let rep = induced_rep(&star_net()).unwrap();
        // ρˡ(ε1, ε2)ε1 = [2ε1, ε2/2, ε1] = ε3
        assert_eq!(rep.rho_l(0, 1).col(0), unit(3, 2));
        // ρᵐ(ε1, ·, ε2) applied to ε1 vanishes on L3
        assert!(vec_is_zero(&rep.rho_m(0, 1).col(0)));
    }

    #[test]
    fn zero_net_induces_the_zero_rep() {
        let net = Net::new(l3_context(), Matrix::zero(3, 3)).unwrap();
        let rep = induced_rep(&net).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(rep.rho_l(i, j).is_zero());
                assert!(rep.rho_m(i, j).is_zero());
                assert!(rep.rho_r(i, j).is_zero());
            }
        }
    }

    #[test]
    fn zero_and_regular_reps_pass_verification() {
        let net = star_net();
        let descendent = crate::net::descendent(&net).unwrap();
        assert!(verify_leibniz_rep(&LeibnizRep::zero(descendent.clone(), 3)).pass);

        // regular pattern: each action is the bracket with the module
        // slot in the corresponding position
        let m = descendent.dim();
        let br = &descendent.bracket;
        let fam = |pos: usize| -> Vec<Matrix> {
            let mut out = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    let cols = (0..m)
                        .map(|x| match pos {
                            0 => br.basis(i, j, x),
                            1 => br.basis(i, x, j),
                            _ => br.basis(x, i, j),
                        })
                        .collect();
                    out.push(Matrix::from_cols(m, cols));
                }
            }
            out
        };
        let reg = LeibnizRep::new(descendent.clone(), m, fam(0), fam(1), fam(2)).unwrap();
        assert!(verify_leibniz_rep(&reg).pass);
    }

    #[test]
    fn delta1_matches_its_specialization() {
        let net = star_net();
        let rep = induced_rep(&net).unwrap();
        let id = Cochain::from_matrix(&Matrix::identity(3));
        let d = delta_n(&rep, &id).unwrap();
        // ∂¹(id)(ε1, ε2, ε1) = (3/2) ε3
        let flat = wedge_flat(3, WedgeIndex::new(0, 1));
        let mut want = vec_zero(3);
        want[2] = rat(3, 2);
        assert_eq!(d.value(&[flat], 0), want);
        // against the four-term formula on every basis triple
        let f = Matrix::identity(3);
        for i in 0..3 {
            for j in (i + 1)..3 {
                let fl = wedge_flat(3, WedgeIndex::new(i, j));
                for w in 0..3 {
                    let mut expect = rep.rho_l(i, j).mul_vec(&f.col(w));
                    expect = vec_sub(&expect, &f.mul_vec(&rep.algebra.bracket.basis(i, j, w)));
                    expect = vec_add(&expect, &rep.rho_m(i, w).mul_vec(&f.col(j)));
                    expect = vec_add(&expect, &rep.rho_r(j, w).mul_vec(&f.col(i)));
                    assert_eq!(d.value(&[fl], w), expect);
                }
            }
        }
        assert!(delta_n(&rep, &Cochain::zero(3, 3, 0).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn partial0_values() {
        let net = star_net();
        let e1 = unit(3, 0);
        let e2 = unit(3, 1);
        let im = partial0(&net, &e1, &e2).unwrap();
        let mut want = Matrix::zero(3, 3);
        want.set(2, 0, rat_int(-1));
        assert_eq!(im, want);
        assert!(partial0(&net, &e1, &e1).unwrap().is_zero());
        let zero_net = Net::new(l3_context(), Matrix::zero(3, 3)).unwrap();
        assert!(partial0(&zero_net, &e1, &e2).unwrap().is_zero());
    }

    #[test]
    fn coboundary_compositions_vanish() {
        let net = star_net();
        let d0 = coboundary_matrix(&net, 0).unwrap();
        let d1 = coboundary_matrix(&net, 1).unwrap();
        let d2 = coboundary_matrix(&net, 2).unwrap();
        assert!(d1.mul(&d0).is_zero());
        assert!(d2.mul(&d1).is_zero());
        // ∂⁰ columns match partial0 directly
        let im = partial0(&net, &unit(3, 0), &unit(3, 1)).unwrap();
        assert_eq!(
            d0.col(wedge_flat(3, WedgeIndex::new(0, 1))),
            Cochain::from_matrix(&im).coords().to_vec()
        );
        assert!(coboundary_matrix(&net, 4).is_err());
    }

    #[test]
    fn top_coboundary_composition_vanishes() {
        let net = star_net();
        let d2 = coboundary_matrix(&net, 2).unwrap();
        let d3 = coboundary_matrix(&net, 3).unwrap();
        assert!(d3.mul(&d2).is_zero());
    }

    #[test]
    fn partial1_kills_partial0_images() {
        let net = star_net();
        let rep = induced_rep(&net).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                let im = partial0(&net, &unit(3, i), &unit(3, j)).unwrap();
                let up = delta_n(&rep, &Cochain::from_matrix(&im)).unwrap();
                assert!(up.is_zero(), "∂¹ℑ(e{i},e{j}) ≠ 0");
            }
        }
    }

    #[test]
    fn cohomology_reports_are_consistent() {
        let net = star_net();
        for n in [1, 2] {
            let r = cohomology_dims(&net, n, false).unwrap();
            assert_eq!(r.dim_h, r.dim_z - r.dim_b);
            let dn = coboundary_matrix(&net, n).unwrap();
            assert_eq!(r.dim_z + dn.rank(), r.dim_c);
        }
        assert!(cohomology_dims(&net, 3, false).is_err());
        let k0 = degree0_kernel_dim(&net).unwrap();
        assert!(k0 <= wedge_count(3));
    }

    #[test]
    fn trivial_complex_has_full_cohomology() {
        // zero brackets, zero action, zero net: every coboundary vanishes
        let l = LieTripleSystem::new(None, TriBracket::zero(2)).unwrap();
        let ctx = NetContext::new(l.clone(), l, crate::action::ActionTensor::zero(2, 2)).unwrap();
        let net = Net::new(ctx, Matrix::zero(2, 2)).unwrap();
        for n in [1, 2] {
            let r = cohomology_dims(&net, n, false).unwrap();
            assert_eq!(r.dim_h, r.dim_c);
            assert_eq!(r.dim_b, 0);
        }
    }

    #[test]
    fn coboundary_agrees_with_the_graded_differential() {
        let net = star_net();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        assert!(compare_with_dt(&net, &Cochain::from_matrix(&Matrix::identity(3)))
            .unwrap()
            .pass);
        assert!(compare_with_dt(&net, &Cochain::zero(3, 3, 0).unwrap()).unwrap().pass);
        for deg in [0usize, 1] {
            for _ in 0..5 {
                let f = rand_cochain(&mut rng, 3, 3, deg);
                let v = compare_with_dt(&net, &f).unwrap();
                assert!(v.pass, "mismatch at degree {deg}: {:?}", v.witness);
            }
        }
    }
}
