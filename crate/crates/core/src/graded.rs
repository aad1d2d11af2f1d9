//! The graded Lie algebra of cochains on `E = L ⊕ L'`: shuffle
//! composition, the structure element Δ, the derived brackets `l₁`/`l₃`,
//! Maurer–Cartan residuals, the twisted brackets and the differential
//! `d_T`.
//!
//! A cochain of degree `d` is a multilinear map
//! `(Λ²V)^⊗d ⊗ V → W` stored on canonical wedge tuples. A linear map has
//! degree 0; all graded signs for its insertions are `+1`.

use num_traits::Zero;

use crate::action::hemisemidirect_unchecked;
use crate::algebra::TriBracket;
use crate::comb::{canonical_pair, shuffles, wedge_count, wedge_flat, wedge_unflat, WedgeIndex};
use crate::matrix::{vec_zero, Matrix};
use crate::net::{net_check, NetContext};
use crate::rational::{rat, rat_int, Rat};
use crate::{Error, Result};

/// Largest supported degree (number of wedge-pair slots).
pub const MAX_DEGREE: usize = 4;

/// A degree-`deg` cochain with slot space of dimension `dom` and values
/// in a space of dimension `cod`. Elements of the graded Lie algebra
/// have `dom == cod`; maps `L' → L` and their corrections have
/// `dom = dim L'`, `cod = dim L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    dom: usize,
    cod: usize,
    deg: usize,
    vals: Vec<Rat>,
}

impl Cochain {
    pub fn zero(dom: usize, cod: usize, deg: usize) -> Result<Self> {
        if deg > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(deg));
        }
        let w = wedge_count(dom);
        let len = w.pow(deg as u32) * dom * cod;
        Ok(Cochain {
            dom,
            cod,
            deg,
            vals: vec![Rat::zero(); len],
        })
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    /// Total count of canonical input tuples.
    pub fn input_count(&self) -> usize {
        wedge_count(self.dom).pow(self.deg as u32) * self.dom
    }

    fn offset(&self, pair_flats: &[usize], last: usize) -> usize {
        debug_assert_eq!(pair_flats.len(), self.deg);
        let w = wedge_count(self.dom);
        let mut idx = 0usize;
        for &p in pair_flats {
            debug_assert!(p < w);
            idx = idx * w + p;
        }
        (idx * self.dom + last) * self.cod
    }

    /// Value on a canonical input tuple (pair slots given by flat wedge
    /// indices).
    pub fn value(&self, pair_flats: &[usize], last: usize) -> &[Rat] {
        let o = self.offset(pair_flats, last);
        &self.vals[o..o + self.cod]
    }

    pub fn set_value(&mut self, pair_flats: &[usize], last: usize, v: Vec<Rat>) -> Result<()> {
        if pair_flats.len() != self.deg {
            return Err(Error::DimensionMismatch(format!(
                "{} pair slots given, cochain has degree {}",
                pair_flats.len(),
                self.deg
            )));
        }
        let w = wedge_count(self.dom);
        if pair_flats.iter().any(|&p| p >= w) || last >= self.dom || v.len() != self.cod {
            return Err(Error::IndexOutOfRange("cochain entry out of range".into()));
        }
        let o = self.offset(pair_flats, last);
        self.vals[o..o + self.cod].clone_from_slice(&v);
        Ok(())
    }

    /// Accumulates `coeff · v` into a (possibly non-canonical) input tuple
    /// given by explicit index pairs; reorders each pair with its sign.
    pub fn add_value(
        &mut self,
        pairs: &[(usize, usize)],
        last: usize,
        coeff: &Rat,
        v: &[Rat],
    ) -> Result<()> {
        let mut sign = 1i64;
        let mut flats = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            match canonical_pair(i, j) {
                None => return Ok(()),
                Some((w, s)) => {
                    sign *= s;
                    flats.push(wedge_flat(self.dom, w));
                }
            }
        }
        let o = self.offset(&flats, last);
        let c = coeff * rat_int(sign as i64);
        for (slot, x) in self.vals[o..o + self.cod].iter_mut().zip(v) {
            if !x.is_zero() {
                *slot += &c * x;
            }
        }
        Ok(())
    }

    /// Evaluates on index pairs that need not be canonically ordered.
    pub fn eval_pairs(&self, pairs: &[(usize, usize)], last: usize) -> Vec<Rat> {
        let mut sign = 1i64;
        let mut flats = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            match canonical_pair(i, j) {
                None => return vec_zero(self.cod),
                Some((w, s)) => {
                    sign *= s;
                    flats.push(wedge_flat(self.dom, w));
                }
            }
        }
        let v = self.value(&flats, last);
        if sign == 1 {
            v.to_vec()
        } else {
            v.iter().map(|x| -x).collect()
        }
    }

    /// Full multilinear evaluation on vector arguments.
    pub fn eval(&self, pairs: &[(&[Rat], &[Rat])], last: &[Rat]) -> Result<Vec<Rat>> {
        if pairs.len() != self.deg || last.len() != self.dom {
            return Err(Error::DimensionMismatch("evaluation arity mismatch".into()));
        }
        let mut out = vec_zero(self.cod);
        let mut idx_pairs = vec![(0usize, 0usize); self.deg];
        self.eval_rec(pairs, last, 0, &Rat::from_integer(1.into()), &mut idx_pairs, &mut out);
        Ok(out)
    }

    fn eval_rec(
        &self,
        pairs: &[(&[Rat], &[Rat])],
        last: &[Rat],
        slot: usize,
        coeff: &Rat,
        idx_pairs: &mut Vec<(usize, usize)>,
        out: &mut [Rat],
    ) {
        if slot == self.deg {
            for (k, c) in last.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let v = self.eval_pairs(idx_pairs, k);
                let total = coeff * c;
                for (o, x) in out.iter_mut().zip(&v) {
                    if !x.is_zero() {
                        *o += &total * x;
                    }
                }
            }
            return;
        }
        let (xs, ys) = pairs[slot];
        for (i, a) in xs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ys.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                idx_pairs[slot] = (i, j);
                let c = coeff * a * b;
                self.eval_rec(pairs, last, slot + 1, &c, idx_pairs, out);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(Zero::is_zero)
    }

    /// Flat coordinates in the canonical cochain basis: lexicographic on
    /// (pair-flat tuple, final index), then value components.
    pub fn coords(&self) -> &[Rat] {
        &self.vals
    }

    pub fn from_coords(dom: usize, cod: usize, deg: usize, coords: Vec<Rat>) -> Result<Self> {
        let mut c = Cochain::zero(dom, cod, deg)?;
        if coords.len() != c.vals.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates given, shape needs {}",
                coords.len(),
                c.vals.len()
            )));
        }
        c.vals = coords;
        Ok(c)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.shape_match(other)?;
        let mut out = self.clone();
        for (a, b) in out.vals.iter_mut().zip(&other.vals) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.shape_match(other)?;
        let mut out = self.clone();
        for (a, b) in out.vals.iter_mut().zip(&other.vals) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        let mut out = self.clone();
        for a in out.vals.iter_mut() {
            *a *= c;
        }
        out
    }

    fn shape_match(&self, other: &Cochain) -> Result<()> {
        if self.dom != other.dom || self.cod != other.cod || self.deg != other.deg {
            return Err(Error::DimensionMismatch(format!(
                "cochain shapes differ: ({},{},{}) vs ({},{},{})",
                self.dom, self.cod, self.deg, other.dom, other.cod, other.deg
            )));
        }
        Ok(())
    }

    /// Views a matrix as a degree-0 cochain (columns are values on basis
    /// vectors).
    pub fn from_matrix(m: &Matrix) -> Cochain {
        let mut c = Cochain::zero(m.cols(), m.rows(), 0).expect("degree 0 is supported");
        for k in 0..m.cols() {
            c.set_value(&[], k, m.col(k)).expect("shape fixed above");
        }
        c
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.deg != 0 {
            return Err(Error::Precondition(format!(
                "degree {} cochain is not a linear map",
                self.deg
            )));
        }
        Ok(Matrix::from_cols(
            self.cod,
            (0..self.dom).map(|k| self.value(&[], k).to_vec()).collect(),
        ))
    }

    /// Views a triple bracket that is antisymmetric in its first two
    /// arguments as a degree-1 cochain.
    pub fn from_tribracket(b: &TriBracket) -> Result<Cochain> {
        let d = b.dim;
        let mut c = Cochain::zero(d, d, 1)?;
        for i in 0..d {
            for k in 0..d {
                let diag = b.basis(i, i, k);
                if !crate::matrix::vec_is_zero(&diag) {
                    return Err(Error::Precondition(format!(
                        "bracket is not alternating at ({i},{i},{k})"
                    )));
                }
                for j in i + 1..d {
                    let plus = b.basis(i, j, k);
                    let minus = b.basis(j, i, k);
                    if crate::matrix::vec_add(&plus, &minus).iter().any(|x| !x.is_zero()) {
                        return Err(Error::Precondition(format!(
                            "bracket is not antisymmetric at ({i},{j},{k})"
                        )));
                    }
                    let flat = wedge_flat(d, WedgeIndex::new(i, j));
                    c.set_value(&[flat], k, plus)?;
                }
            }
        }
        Ok(c)
    }
}

/// Shuffle composition `P ∘ Q`: the three-sum formula with pair-slot
/// insertion (signs `(−1)^{(k−1)q}` over `S(k−1,q)` shuffles) and the
/// final-slot sum (sign `(−1)^{pq}` over `S(p,q)`).
pub fn circ(p_c: &Cochain, q_c: &Cochain) -> Result<Cochain> {
    if p_c.dom != p_c.cod || q_c.dom != q_c.cod || p_c.dom != q_c.dom {
        return Err(Error::DimensionMismatch(
            "composition requires endomorphism cochains on a common space".into(),
        ));
    }
    let dim = p_c.dom;
    let p = p_c.deg;
    let q = q_c.deg;
    let mut out = Cochain::zero(dim, dim, p + q)?;
    let w = wedge_count(dim);
    let total_pairs = p + q;
    let mut flats = vec![0usize; total_pairs];

    // iterate over all canonical input tuples of the result
    let tuple_count = w.pow(total_pairs as u32);
    for tuple in 0..tuple_count {
        let mut rem = tuple;
        for s in (0..total_pairs).rev() {
            flats[s] = rem % w;
            rem /= w;
        }
        let pairs: Vec<WedgeIndex> = flats.iter().map(|&f| wedge_unflat(dim, f)).collect();
        for x in 0..dim {
            let mut acc = vec_zero(dim);

            // groups A and B: insert Q's output into pair slot k
            for k in 1..=p {
                let group_sign = if ((k - 1) * q) % 2 == 0 { 1 } else { -1 };
                let special = &pairs[k + q - 1];
                let tail: Vec<usize> = flats[k + q..].to_vec();
                for sh in shuffles(k - 1, q) {
                    let sign = group_sign * sh.sign;
                    let q_flats: Vec<usize> = sh.second.iter().map(|&m| flats[m]).collect();
                    let head: Vec<usize> = sh.first.iter().map(|&m| flats[m]).collect();
                    // group A: Q(..., x_{k+q}) ⊗ y_{k+q}
                    let za = q_c.value(&q_flats, special.i);
                    accumulate_insertion(
                        p_c, &head, &tail, x, za, special.j, false, sign, &mut acc,
                    );
                    // group B: x_{k+q} ⊗ Q(..., y_{k+q})
                    let zb = q_c.value(&q_flats, special.j);
                    accumulate_insertion(
                        p_c, &head, &tail, x, zb, special.i, true, sign, &mut acc,
                    );
                }
            }

            // group C: Q fills the final slot of P
            let group_sign = if (p * q) % 2 == 0 { 1 } else { -1 };
            for sh in shuffles(p, q) {
                let sign = group_sign * sh.sign;
                let p_flats: Vec<usize> = sh.first.iter().map(|&m| flats[m]).collect();
                let q_flats: Vec<usize> = sh.second.iter().map(|&m| flats[m]).collect();
                let z = q_c.value(&q_flats, x);
                for (t, coeff) in z.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let v = p_c.value(&p_flats, t);
                    axpy_signed(&mut acc, coeff, v, sign);
                }
            }

            if !crate::matrix::vec_is_zero(&acc) {
                out.set_value(&flats, x, acc)?;
            }
        }
    }
    Ok(out)
}

/// Adds `sign · Σ_t z_t · P(head, e_t ∧ e_other or e_other ∧ e_t, tail, x)`
/// into `acc`, canonicalizing the inserted wedge pair.
fn accumulate_insertion(
    p_c: &Cochain,
    head: &[usize],
    tail: &[usize],
    x: usize,
    z: &[Rat],
    other: usize,
    other_first: bool,
    sign: i64,
    acc: &mut [Rat],
) {
    let dim = p_c.dom;
    for (t, coeff) in z.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let (i, j) = if other_first { (other, t) } else { (t, other) };
        let Some((wi, s)) = canonical_pair(i, j) else {
            continue;
        };
        let mut flats = Vec::with_capacity(head.len() + 1 + tail.len());
        flats.extend_from_slice(head);
        flats.push(wedge_flat(dim, wi));
        flats.extend_from_slice(tail);
        let v = p_c.value(&flats, x);
        axpy_signed(acc, coeff, v, sign * s);
    }
}

fn axpy_signed(acc: &mut [Rat], coeff: &Rat, v: &[Rat], sign: i64) {
    if sign == 0 {
        return;
    }
    let c = coeff * rat_int(sign);
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &c * x;
        }
    }
}

/// Graded commutator `[P,Q] = P∘Q − (−1)^{pq} Q∘P`.
pub fn bracket_3la(p_c: &Cochain, q_c: &Cochain) -> Result<Cochain> {
    let pq = circ(p_c, q_c)?;
    let qp = circ(q_c, p_c)?;
    if (p_c.deg * q_c.deg) % 2 == 0 {
        pq.sub(&qp)
    } else {
        pq.add(&qp)
    }
}

/// The coherent context together with the structure element
/// `Δ = ϖ ⊠ D_θ ⊠ ϖ'` on `E = L ⊕ L'` and the derived-bracket machinery.
#[derive(Debug, Clone)]
pub struct GradedContext {
    pub ctx: NetContext,
    pub delta: Cochain,
}

impl GradedContext {
    pub fn new(ctx: NetContext) -> Result<Self> {
        let hemi = hemisemidirect_unchecked(&ctx.l, &ctx.lp, &ctx.act)?;
        let delta = Cochain::from_tribracket(&hemi.bracket)?;
        Ok(GradedContext { ctx, delta })
    }

    pub fn dim_e(&self) -> usize {
        self.ctx.dim_l() + self.ctx.dim_lp()
    }

    fn check_f_shape(&self, f: &Cochain) -> Result<()> {
        if f.dom != self.ctx.dim_lp() || f.cod != self.ctx.dim_l() {
            return Err(Error::DimensionMismatch(format!(
                "cochain has shape ({},{}), context expects ({},{})",
                f.dom,
                f.cod,
                self.ctx.dim_lp(),
                self.ctx.dim_l()
            )));
        }
        Ok(())
    }

    /// Lifts a cochain on `(L', L)` to one on `E`: project every slot to
    /// `L'` and include the value through `L ⊂ E`.
    pub fn include_f(&self, f: &Cochain) -> Result<Cochain> {
        self.check_f_shape(f)?;
        let n = self.ctx.dim_l();
        let m = self.ctx.dim_lp();
        let e = n + m;
        let mut out = Cochain::zero(e, e, f.deg)?;
        let wf = wedge_count(m);
        let mut flats = vec![0usize; f.deg];
        for tuple in 0..wf.pow(f.deg as u32) {
            let mut rem = tuple;
            for s in (0..f.deg).rev() {
                flats[s] = rem % wf;
                rem /= wf;
            }
            let embedded: Vec<usize> = flats
                .iter()
                .map(|&fl| {
                    let w = wedge_unflat(m, fl);
                    wedge_flat(e, WedgeIndex::new(n + w.i, n + w.j))
                })
                .collect();
            for last in 0..m {
                let v = f.value(&flats, last);
                if crate::matrix::vec_is_zero(v) {
                    continue;
                }
                let mut ev = vec_zero(e);
                ev[..n].clone_from_slice(v);
                out.set_value(&embedded, n + last, ev)?;
            }
        }
        Ok(out)
    }

    /// The projection `𝒫` onto `C*(L', L)`: restrict all slots to the
    /// `L'` block and keep the `L` component of the value.
    pub fn project_p(&self, g: &Cochain) -> Result<Cochain> {
        let n = self.ctx.dim_l();
        let m = self.ctx.dim_lp();
        let e = n + m;
        if g.dom != e || g.cod != e {
            return Err(Error::DimensionMismatch(format!(
                "cochain lives on dimension {}, context expects {}",
                g.dom, e
            )));
        }
        let mut out = Cochain::zero(m, n, g.deg)?;
        let wf = wedge_count(m);
        let mut flats = vec![0usize; g.deg];
        for tuple in 0..wf.pow(g.deg as u32) {
            let mut rem = tuple;
            for s in (0..g.deg).rev() {
                flats[s] = rem % wf;
                rem /= wf;
            }
            let embedded: Vec<usize> = flats
                .iter()
                .map(|&fl| {
                    let w = wedge_unflat(m, fl);
                    wedge_flat(e, WedgeIndex::new(n + w.i, n + w.j))
                })
                .collect();
            for last in 0..m {
                let v = g.value(&embedded, n + last);
                out.set_value(&flats, last, v[..n].to_vec())?;
            }
        }
        Ok(out)
    }

    /// `l₁(f) = 𝒫 [Δ, f̂]`.
    pub fn l1(&self, f: &Cochain) -> Result<Cochain> {
        self.project_p(&bracket_3la(&self.delta, &self.include_f(f)?)?)
    }

    /// `l₃(P,Q,R) = 𝒫 [[[Δ, P̂], Q̂], R̂]`.
    pub fn l3(&self, p: &Cochain, q: &Cochain, r: &Cochain) -> Result<Cochain> {
        let step1 = bracket_3la(&self.delta, &self.include_f(p)?)?;
        let step2 = bracket_3la(&step1, &self.include_f(q)?)?;
        let step3 = bracket_3la(&step2, &self.include_f(r)?)?;
        self.project_p(&step3)
    }

    /// Maurer–Cartan residual `l₁(T) + (1/6) l₃(T,T,T)`; zero exactly when
    /// `T` satisfies Eq. 2.14.
    pub fn mc_residual(&self, t: &Matrix) -> Result<Cochain> {
        self.ctx.check_map_shape(t)?;
        let tf = Cochain::from_matrix(t);
        let lin = self.l1(&tf)?;
        let cubic = self.l3(&tf, &tf, &tf)?;
        lin.add(&cubic.scale(&rat(1, 6)))
    }

    fn require_net(&self, t: &Matrix) -> Result<Cochain> {
        let v = net_check(&self.ctx, t)?;
        if !v.pass {
            return Err(Error::Precondition(format!(
                "map is not an embedding tensor: {:?}",
                v.witness
            )));
        }
        Ok(Cochain::from_matrix(t))
    }

    /// Twisted `l₁ᵀ(f) = l₁(f) + ½ l₃(T,T,f)`; requires a valid net.
    pub fn l1_t(&self, t: &Matrix, f: &Cochain) -> Result<Cochain> {
        let tf = self.require_net(t)?;
        let lin = self.l1(f)?;
        let corr = self.l3(&tf, &tf, f)?;
        lin.add(&corr.scale(&rat(1, 2)))
    }

    /// Twisted `l₂ᵀ(f,g) = l₃(T,f,g)`; requires a valid net.
    pub fn l2_t(&self, t: &Matrix, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        let tf = self.require_net(t)?;
        self.l3(&tf, f, g)
    }

    /// Twisted `l₃ᵀ = l₃` (independent of `T`, which must still be valid).
    pub fn l3_t(&self, t: &Matrix, f: &Cochain, g: &Cochain, h: &Cochain) -> Result<Cochain> {
        self.require_net(t)?;
        self.l3(f, g, h)
    }

    /// `l₁ᵀ(T̃) + ½ l₂ᵀ(T̃,T̃) + (1/6) l₃ᵀ(T̃,T̃,T̃)`; zero exactly when
    /// `T + T̃` satisfies Eq. 2.14.
    pub fn twisted_mc_residual(&self, t: &Matrix, tt: &Matrix) -> Result<Cochain> {
        self.ctx.check_map_shape(tt)?;
        let ttf = Cochain::from_matrix(tt);
        let lin = self.l1_t(t, &ttf)?;
        let quad = self.l2_t(t, &ttf, &ttf)?;
        let cubic = self.l3(&ttf, &ttf, &ttf)?;
        lin.add(&quad.scale(&rat(1, 2)))?
            .add(&cubic.scale(&rat(1, 6)))
    }

    /// The differential `d_T(f) = l₁(f) + ½ l₃(T,T,f)` of the complex
    /// attached to a valid net `T`.
    pub fn dt(&self, t: &Matrix, f: &Cochain) -> Result<Cochain> {
        self.l1_t(t, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l3_context, t_star};
    use crate::matrix::vec_sub;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_cochain(rng: &mut ChaCha8Rng, dom: usize, cod: usize, deg: usize) -> Cochain {
        let mut c = Cochain::zero(dom, cod, deg).unwrap();
        let w = wedge_count(dom);
        let mut flats = vec![0usize; deg];
        for tuple in 0..w.pow(deg as u32) {
            let mut rem = tuple;
            for s in (0..deg).rev() {
                flats[s] = rem % w;
                rem /= w;
            }
            for last in 0..dom {
                let v: Vec<Rat> = (0..cod).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
                c.set_value(&flats, last, v).unwrap();
            }
        }
        c
    }

    #[test]
    fn degree_zero_composition_is_matrix_product() {
        let a = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(-1), rat_int(0)],
        ])
        .unwrap();
        let b = Matrix::from_rows(vec![
            vec![rat_int(3), rat_int(1)],
            vec![rat_int(2), rat_int(5)],
        ])
        .unwrap();
        let comp = circ(&Cochain::from_matrix(&a), &Cochain::from_matrix(&b)).unwrap();
        assert_eq!(comp.to_matrix().unwrap(), a.mul(&b));
        let br = bracket_3la(&Cochain::from_matrix(&a), &Cochain::from_matrix(&b)).unwrap();
        assert_eq!(br.to_matrix().unwrap(), a.mul(&b).sub(&b.mul(&a)));
    }

    #[test]
    fn composition_with_zero_vanishes() {
        let g = GradedContext::new(l3_context()).unwrap();
        let z = Cochain::zero(6, 6, 1).unwrap();
        assert!(circ(&g.delta, &z).unwrap().is_zero());
        assert!(circ(&z, &g.delta).unwrap().is_zero());
    }

    #[test]
    fn delta_squares_to_zero() {
        let g = GradedContext::new(l3_context()).unwrap();
        assert!(bracket_3la(&g.delta, &g.delta).unwrap().is_zero());
        assert!(g.project_p(&g.delta).unwrap().is_zero());
    }

    #[test]
    fn delta_values_match_the_product_bracket() {
        let g = GradedContext::new(l3_context()).unwrap();
        // Δ((ε1,0)∧(ε2,0), (0,ε1)) = (0, ε3): basis indices 0, 1, 3 on E
        let flat = wedge_flat(6, WedgeIndex::new(0, 1));
        assert_eq!(g.delta.value(&[flat], 3), &crate::algebra::unit(6, 5));
        // all-L arguments reproduce the L bracket: Δ(e1∧e2, e1) = (e3, 0)
        assert_eq!(g.delta.value(&[flat], 0), &crate::algebra::unit(6, 2));
    }

    #[test]
    fn include_project_are_a_section_pair() {
        let g = GradedContext::new(l3_context()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for deg in 0..=2 {
            let f = rand_cochain(&mut rng, 3, 3, deg);
            let back = g.project_p(&g.include_f(&f).unwrap()).unwrap();
            assert_eq!(back, f);
        }
        // include of T★ acts as (x,u) ↦ (T★u, 0)
        let lifted = g.include_f(&Cochain::from_matrix(&t_star())).unwrap();
        for u in 0..3 {
            let mut want = vec_zero(6);
            want[..3].clone_from_slice(&t_star().col(u));
            assert_eq!(lifted.value(&[], 3 + u), want);
            assert!(crate::matrix::vec_is_zero(lifted.value(&[], u)));
        }
    }

    #[test]
    fn l1_is_minus_composition_with_the_primed_bracket() {
        let g = GradedContext::new(l3_context()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for t in [t_star(), Matrix::identity(3), {
            let mut m = Matrix::zero(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, rat_int(rng.gen_range(-2..=2)));
                }
            }
            m
        }] {
            let l1t = g.l1(&Cochain::from_matrix(&t)).unwrap();
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let flat = wedge_flat(3, WedgeIndex::new(i, j));
                    for w in 0..3 {
                        let want: Vec<Rat> = t
                            .mul_vec(&g.ctx.lp.bracket.basis(i, j, w))
                            .iter()
                            .map(|x| -x)
                            .collect();
                        assert_eq!(l1t.value(&[flat], w), want);
                    }
                }
            }
        }
        assert!(g.l1(&Cochain::zero(3, 3, 0).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn l3_cubic_term_matches_closed_form() {
        let g = GradedContext::new(l3_context()).unwrap();
        for t in [t_star(), Matrix::identity(3)] {
            let tf = Cochain::from_matrix(&t);
            let cubic = g.l3(&tf, &tf, &tf).unwrap();
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let flat = wedge_flat(3, WedgeIndex::new(i, j));
                    for w in 0..3 {
                        let tu = t.col(i);
                        let tv = t.col(j);
                        let lhs = g.ctx.l.bracket.eval(&tu, &tv, &t.col(w));
                        let d = g.ctx.act.d_theta_vec(&tu, &tv).col(w);
                        let want: Vec<Rat> = vec_sub(&lhs, &t.mul_vec(&d))
                            .iter()
                            .map(|x| x * rat_int(6))
                            .collect();
                        assert_eq!(cubic.value(&[flat], w), want);
                    }
                }
            }
        }
    }

    #[test]
    fn mc_residual_detects_nets() {
        let g = GradedContext::new(l3_context()).unwrap();
        assert!(g.mc_residual(&t_star()).unwrap().is_zero());
        assert!(g.mc_residual(&Matrix::zero(3, 3)).unwrap().is_zero());
        let res = g.mc_residual(&Matrix::identity(3)).unwrap();
        assert!(!res.is_zero());
        // residual at (ε1, ε2, ε1) is −ε3
        let flat = wedge_flat(3, WedgeIndex::new(0, 1));
        let mut want = vec_zero(3);
        want[2] = rat_int(-1);
        assert_eq!(res.value(&[flat], 0), want);
    }

    #[test]
    fn lemma_closed_forms_on_basis_tuples() {
        let g = GradedContext::new(l3_context()).unwrap();
        let t = t_star();
        let t_hat = g.include_f(&Cochain::from_matrix(&t)).unwrap();
        let first = bracket_3la(&g.delta, &t_hat).unwrap();
        let second = bracket_3la(&first, &t_hat).unwrap();
        let ctx = &g.ctx;
        let n = 3usize;

        // split an E basis index into its (L, L') parts
        let split = |idx: usize| -> (Vec<Rat>, Vec<Rat>) {
            if idx < n {
                (crate::algebra::unit(n, idx), vec_zero(n))
            } else {
                (vec_zero(n), crate::algebra::unit(n, idx - n))
            }
        };

        for ai in 0..6 {
            for bi in (ai + 1)..6 {
                let flat = wedge_flat(6, WedgeIndex::new(ai, bi));
                for ci in 0..6 {
                    let (a, u) = split(ai);
                    let (b, v) = split(bi);
                    let (c, w) = split(ci);
                    let tu = t.mul_vec(&u);
                    let tv = t.mul_vec(&v);
                    let tw = t.mul_vec(&w);

                    // ([Tu,b,c]+[a,b,Tw]+[a,Tv,c]−T(D_θ(a,b)w+[u,v,w]'),
                    //  D_θ(a,Tv)w + D_θ(Tu,b)w)
                    let mut l_part = ctx.l.bracket.eval(&tu, &b, &c);
                    l_part = crate::matrix::vec_add(&l_part, &ctx.l.bracket.eval(&a, &b, &tw));
                    l_part = crate::matrix::vec_add(&l_part, &ctx.l.bracket.eval(&a, &tv, &c));
                    let inner = crate::matrix::vec_add(
                        &ctx.act.d_theta_vec(&a, &b).mul_vec(&w),
                        &ctx.lp.bracket.eval(&u, &v, &w),
                    );
                    l_part = vec_sub(&l_part, &t.mul_vec(&inner));
                    let lp_part = crate::matrix::vec_add(
                        &ctx.act.d_theta_vec(&a, &tv).mul_vec(&w),
                        &ctx.act.d_theta_vec(&tu, &b).mul_vec(&w),
                    );
                    let mut want = l_part;
                    want.extend(lp_part);
                    assert_eq!(first.value(&[flat], ci), want, "first bracket at ({ai},{bi},{ci})");

                    // 2([Tu,Tv,c]+[Tu,b,Tw]+[a,Tv,Tw]
                    //   −T(D_θ(Tu,b)w+D_θ(a,Tv)w), D_θ(Tu,Tv)w)
                    let mut l_part = ctx.l.bracket.eval(&tu, &tv, &c);
                    l_part = crate::matrix::vec_add(&l_part, &ctx.l.bracket.eval(&tu, &b, &tw));
                    l_part = crate::matrix::vec_add(&l_part, &ctx.l.bracket.eval(&a, &tv, &tw));
                    let inner = crate::matrix::vec_add(
                        &ctx.act.d_theta_vec(&tu, &b).mul_vec(&w),
                        &ctx.act.d_theta_vec(&a, &tv).mul_vec(&w),
                    );
                    l_part = vec_sub(&l_part, &t.mul_vec(&inner));
                    let lp_part = ctx.act.d_theta_vec(&tu, &tv).mul_vec(&w);
                    let mut want = l_part;
                    want.extend(lp_part);
                    let want: Vec<Rat> = want.iter().map(|x| x * rat_int(2)).collect();
                    assert_eq!(
                        second.value(&[flat], ci),
                        want,
                        "second bracket at ({ai},{bi},{ci})"
                    );
                }
            }
        }
    }

    #[test]
    fn planted_defect_matches_half_self_bracket() {
        // π(e1∧e2, e1) = e1 is alternating but not 3-Leibniz
        let mut b = TriBracket::zero(3);
        b.set(0, 1, 0, crate::algebra::unit(3, 0)).unwrap();
        let mut neg = vec_zero(3);
        neg[0] = rat_int(-1);
        b.set(1, 0, 0, neg).unwrap();
        let pi = Cochain::from_tribracket(&b).unwrap();
        let sq = bracket_3la(&pi, &pi).unwrap();
        assert!(!sq.is_zero());
        for f1 in 0..3 {
            let w1 = wedge_unflat(3, f1);
            for f2 in 0..3 {
                let w2 = wedge_unflat(3, f2);
                for x in 0..3 {
                    // π(π(x1,y1,x2),y2,x) + π(x2,π(x1,y1,y2),x)
                    //   + π(x2,y2,π(x1,y1,x)) − π(x1,y1,π(x2,y2,x))
                    let mut want = b.eval(&b.basis(w1.i, w1.j, w2.i), &crate::algebra::unit(3, w2.j), &crate::algebra::unit(3, x));
                    want = crate::matrix::vec_add(
                        &want,
                        &b.eval(&crate::algebra::unit(3, w2.i), &b.basis(w1.i, w1.j, w2.j), &crate::algebra::unit(3, x)),
                    );
                    want = crate::matrix::vec_add(&want, &b.eval_bbv(w2.i, w2.j, &b.basis(w1.i, w1.j, x)));
                    want = vec_sub(&want, &b.eval_bbv(w1.i, w1.j, &b.basis(w2.i, w2.j, x)));
                    let got: Vec<Rat> = sq
                        .value(&[f1, f2], x)
                        .iter()
                        .map(|v| v * rat(1, 2))
                        .collect();
                    assert_eq!(got, want, "defect at ({f1},{f2},{x})");
                }
            }
        }
    }

    #[test]
    fn graded_antisymmetry_and_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (dp, dq) in [(0, 0), (0, 1), (1, 1), (1, 2)] {
            let p = rand_cochain(&mut rng, 3, 3, dp);
            let q = rand_cochain(&mut rng, 3, 3, dq);
            let lhs = bracket_3la(&p, &q).unwrap();
            let rhs = bracket_3la(&q, &p).unwrap();
            let sign = if (dp * dq) % 2 == 0 { -1 } else { 1 };
            assert_eq!(lhs, rhs.scale(&rat_int(sign)), "degrees ({dp},{dq})");
        }
        for (dp, dq, dr) in [(0, 0, 0), (0, 0, 1), (0, 1, 1)] {
            let p = rand_cochain(&mut rng, 3, 3, dp);
            let q = rand_cochain(&mut rng, 3, 3, dq);
            let r = rand_cochain(&mut rng, 3, 3, dr);
            let t1 = bracket_3la(&bracket_3la(&p, &q).unwrap(), &r).unwrap();
            let t2 = bracket_3la(&bracket_3la(&q, &r).unwrap(), &p).unwrap();
            let t3 = bracket_3la(&bracket_3la(&r, &p).unwrap(), &q).unwrap();
            let s = |a: usize, b: usize| if (a * b) % 2 == 0 { 1 } else { -1 };
            let total = t1
                .scale(&rat_int(s(dp, dr)))
                .add(&t2.scale(&rat_int(s(dq, dp))))
                .unwrap()
                .add(&t3.scale(&rat_int(s(dr, dq))))
                .unwrap();
            assert!(total.is_zero(), "Jacobi fails at degrees ({dp},{dq},{dr})");
        }
    }

    #[test]
    fn l1_squares_to_zero() {
        let g = GradedContext::new(l3_context()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for deg in [0, 1] {
            let f = rand_cochain(&mut rng, 3, 3, deg);
            let twice = g.l1(&g.l1(&f).unwrap()).unwrap();
            assert!(twice.is_zero(), "l1∘l1 nonzero at degree {deg}");
        }
    }

    #[test]
    fn kernel_of_projection_is_closed() {
        // [[Δ, P̂], Q̂] ∈ ker 𝒫 for P, Q in the abelian subalgebra
        let g = GradedContext::new(l3_context()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (dp, dq) in [(0, 0), (0, 1), (1, 1)] {
            let p = g.include_f(&rand_cochain(&mut rng, 3, 3, dp)).unwrap();
            let q = g.include_f(&rand_cochain(&mut rng, 3, 3, dq)).unwrap();
            let nested = bracket_3la(&bracket_3la(&g.delta, &p).unwrap(), &q).unwrap();
            assert!(g.project_p(&nested).unwrap().is_zero(), "degrees ({dp},{dq})");
        }
    }

    #[test]
    fn twisted_residual_tracks_net_check_of_the_sum() {
        let g = GradedContext::new(l3_context()).unwrap();
        let t = t_star();
        assert!(g.twisted_mc_residual(&t, &Matrix::zero(3, 3)).unwrap().is_zero());
        // the trivial-deformation direction T1 ε1 = −ε3
        let mut t1 = Matrix::zero(3, 3);
        t1.set(2, 0, rat_int(-1));
        assert!(g.twisted_mc_residual(&t, &t1).unwrap().is_zero());
        assert!(crate::net::net_check(&g.ctx, &t.add(&t1)).unwrap().pass);
        // identity shift breaks the parametric condition
        let res = g.twisted_mc_residual(&t, &Matrix::identity(3)).unwrap();
        assert!(!res.is_zero());
        assert!(!crate::net::net_check(&g.ctx, &t.add(&Matrix::identity(3))).unwrap().pass);
    }

    #[test]
    fn twisted_brackets_are_multilinear_and_reject_non_nets() {
        let g = GradedContext::new(l3_context()).unwrap();
        let z = Cochain::zero(3, 3, 0).unwrap();
        let f = Cochain::from_matrix(&Matrix::identity(3));
        assert!(g.l1_t(&t_star(), &z).unwrap().is_zero());
        assert!(g.l2_t(&t_star(), &z, &f).unwrap().is_zero());
        assert!(matches!(
            g.l1_t(&Matrix::identity(3), &f),
            Err(Error::Precondition(_))
        ));
        // l2ᵀ is symmetric on degree-0 arguments
        let mut g2 = Matrix::zero(3, 3);
        g2.set(0, 1, rat_int(2));
        g2.set(2, 0, rat_int(-1));
        let gf = Cochain::from_matrix(&g2);
        assert_eq!(
            g.l2_t(&t_star(), &f, &gf).unwrap(),
            g.l2_t(&t_star(), &gf, &f).unwrap()
        );
    }

    #[test]
    fn differential_squares_to_zero() {
        let g = GradedContext::new(l3_context()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for deg in [0, 1, 2] {
            let f = rand_cochain(&mut rng, 3, 3, deg);
            let sq = g.dt(&t_star(), &g.dt(&t_star(), &f).unwrap()).unwrap();
            assert!(sq.is_zero(), "d_T² nonzero at degree {deg}");
        }
        assert!(g.dt(&t_star(), &Cochain::zero(3, 3, 1).unwrap()).unwrap().is_zero());
    }
}
