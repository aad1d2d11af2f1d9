//! Structure-constant representations of Lie algebras, Lie triple systems
//! and 3-Leibniz algebras, with axiom verification and subspace extraction.
//!
//! Brackets are stored sparsely on basis tuples; evaluation extends
//! multilinearly. Validated wrapper types run verification once at
//! construction so downstream modules may assume the axioms.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::matrix::{vec_add, vec_axpy, vec_is_zero, vec_zero, Matrix};
use crate::rational::Rat;
use crate::report::{Checker, Verdict};
use crate::{Error, Result};

/// Structure constants of a trilinear bracket: `c[(i,j,k)]` is the
/// coordinate vector of `[e_i, e_j, e_k]`. Absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriBracket {
    pub dim: usize,
    c: BTreeMap<(usize, usize, usize), Vec<Rat>>,
}

impl TriBracket {
    pub fn zero(dim: usize) -> Self {
        TriBracket {
            dim,
            c: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, out: Vec<Rat>) -> Result<()> {
        if i >= self.dim || j >= self.dim || k >= self.dim || out.len() != self.dim {
            return Err(Error::IndexOutOfRange(format!(
                "bracket entry ({i},{j},{k}) in dim {}",
                self.dim
            )));
        }
        if vec_is_zero(&out) {
            self.c.remove(&(i, j, k));
        } else {
            self.c.insert((i, j, k), out);
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Vec<Rat>)> {
        self.c.iter()
    }

    pub fn basis(&self, i: usize, j: usize, k: usize) -> Vec<Rat> {
        self.c
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(|| vec_zero(self.dim))
    }

    /// Trilinear evaluation on coordinate vectors.
    pub fn eval(&self, x: &[Rat], y: &[Rat], z: &[Rat]) -> Vec<Rat> {
        let mut out = vec_zero(self.dim);
        for ((i, j, k), v) in &self.c {
            let c = &x[*i] * &y[*j] * &z[*k];
            vec_axpy(&mut out, &c, v);
        }
        out
    }

    /// Evaluation with two basis arguments and one vector in the last slot.
    pub fn eval_bbv(&self, i: usize, j: usize, z: &[Rat]) -> Vec<Rat> {
        let mut out = vec_zero(self.dim);
        for k in 0..self.dim {
            if !z[k].is_zero() {
                if let Some(v) = self.c.get(&(i, j, k)) {
                    vec_axpy(&mut out, &z[k], v);
                }
            }
        }
        out
    }

    /// The matrix of `x ↦ [e_i, e_j, x]`.
    pub fn left_mult_matrix(&self, i: usize, j: usize) -> Matrix {
        let cols = (0..self.dim).map(|k| self.basis(i, j, k)).collect();
        Matrix::from_cols(self.dim, cols)
    }
}

/// Structure constants of a bilinear bracket `[e_i, e_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiBracket {
    pub dim: usize,
    c: BTreeMap<(usize, usize), Vec<Rat>>,
}

impl BiBracket {
    pub fn zero(dim: usize) -> Self {
        BiBracket {
            dim,
            c: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, out: Vec<Rat>) -> Result<()> {
        if i >= self.dim || j >= self.dim || out.len() != self.dim {
            return Err(Error::IndexOutOfRange(format!(
                "bracket entry ({i},{j}) in dim {}",
                self.dim
            )));
        }
        if vec_is_zero(&out) {
            self.c.remove(&(i, j));
        } else {
            self.c.insert((i, j), out);
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Rat>)> {
        self.c.iter()
    }

    pub fn basis(&self, i: usize, j: usize) -> Vec<Rat> {
        self.c
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| vec_zero(self.dim))
    }

    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec_zero(self.dim);
        for ((i, j), v) in &self.c {
            let c = &x[*i] * &y[*j];
            vec_axpy(&mut out, &c, v);
        }
        out
    }
}

fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

/// Checks the Lie triple system axioms: antisymmetry in the first two slots
/// (2.1), the cyclic identity (2.2) and the five-variable fundamental
/// identity (2.3).
pub fn verify_lts(b: &TriBracket) -> Verdict {
    let d = b.dim;
    let mut ck = Checker::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = vec_add(&b.basis(i, j, k), &b.basis(j, i, k));
                ck.expect_eq("2.1", &[i, j, k], &lhs, &vec_zero(d));
                let cyc = vec_add(
                    &vec_add(&b.basis(i, j, k), &b.basis(k, i, j)),
                    &b.basis(j, k, i),
                );
                ck.expect_eq("2.2", &[i, j, k], &cyc, &vec_zero(d));
            }
        }
    }
    check_fundamental_identity(b, "2.3", &mut ck);
    ck.finish()
}

/// The fundamental identity `[a,b,[x,y,z]] = [[a,b,x],y,z] + [x,[a,b,y],z]
/// + [x,y,[a,b,z]]` on all basis 5-tuples, recorded under `equation`.
fn check_fundamental_identity(b: &TriBracket, equation: &str, ck: &mut Checker) {
    let d = b.dim;
    for a in 0..d {
        for bb in 0..d {
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        let lhs = b.eval_bbv(a, bb, &b.basis(x, y, z));
                        let t1 = {
                            let abx = b.basis(a, bb, x);
                            let mut acc = vec_zero(d);
                            for (s, coef) in abx.iter().enumerate() {
                                if !coef.is_zero() {
                                    vec_axpy(&mut acc, coef, &b.basis(s, y, z));
                                }
                            }
                            acc
                        };
                        let t2 = {
                            let aby = b.basis(a, bb, y);
                            let mut acc = vec_zero(d);
                            for (s, coef) in aby.iter().enumerate() {
                                if !coef.is_zero() {
                                    vec_axpy(&mut acc, coef, &b.basis(x, s, z));
                                }
                            }
                            acc
                        };
                        let t3 = b.eval_bbv(x, y, &b.basis(a, bb, z));
                        let rhs = vec_add(&vec_add(&t1, &t2), &t3);
                        ck.expect_eq(equation, &[a, bb, x, y, z], &lhs, &rhs);
                    }
                }
            }
        }
    }
}

/// Checks only the fundamental identity (2.12), i.e. the 3-Leibniz axiom.
pub fn verify_3leibniz(b: &TriBracket) -> Verdict {
    let mut ck = Checker::new();
    check_fundamental_identity(b, "2.12", &mut ck);
    ck.finish()
}

/// Antisymmetry plus the Jacobi identity on all basis triples.
pub fn verify_lie(b: &BiBracket) -> Verdict {
    let d = b.dim;
    let mut ck = Checker::new();
    for i in 0..d {
        for j in 0..d {
            let lhs = vec_add(&b.basis(i, j), &b.basis(j, i));
            ck.expect_eq("antisymmetry", &[i, j], &lhs, &vec_zero(d));
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut jac = b.eval(&b.basis(i, j), &unit(d, k));
                jac = vec_add(&jac, &b.eval(&b.basis(j, k), &unit(d, i)));
                jac = vec_add(&jac, &b.eval(&b.basis(k, i), &unit(d, j)));
                ck.expect_eq("jacobi", &[i, j, k], &jac, &vec_zero(d));
            }
        }
    }
    ck.finish()
}

pub fn unit(dim: usize, k: usize) -> Vec<Rat> {
    let mut v = vec_zero(dim);
    v[k] = crate::rational::rat_one();
    v
}

/// A Lie triple system whose bracket has been verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieTripleSystem {
    pub labels: Vec<String>,
    pub bracket: TriBracket,
}

impl LieTripleSystem {
    pub fn new(labels: Option<Vec<String>>, bracket: TriBracket) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| default_labels(bracket.dim));
        if labels.len() != bracket.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for dim {}",
                labels.len(),
                bracket.dim
            )));
        }
        let v = verify_lts(&bracket);
        if !v.pass {
            return Err(Error::AxiomsFailed(format!(
                "not a Lie triple system: {:?}",
                v.witness
            )));
        }
        Ok(LieTripleSystem { labels, bracket })
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim
    }

    /// Basis of `{x : [x, y, z] = 0 for all y, z}`, computed as the
    /// nullspace of the stacked first-slot multiplication matrix.
    pub fn center(&self) -> Vec<Vec<Rat>> {
        let d = self.dim();
        // rows: (j, k, output coordinate); cols: the first-slot vector
        let mut rows = Vec::new();
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let row: Vec<Rat> =
                        (0..d).map(|i| self.bracket.basis(i, j, k)[l].clone()).collect();
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Matrix::zero(0, d).nullspace();
        }
        Matrix::from_rows(rows).expect("rectangular").nullspace()
    }

    /// Basis of the span of all `[e_i, e_j, e_k]` (the derived subsystem).
    pub fn derived_subsystem(&self) -> Vec<Vec<Rat>> {
        span_basis(
            self.bracket.entries().map(|(_, v)| v.clone()).collect(),
            self.dim(),
        )
    }
}

/// Deterministic basis of the span of `vectors` (RREF row basis).
pub fn span_basis(vectors: Vec<Vec<Rat>>, dim: usize) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors).expect("rectangular");
    debug_assert_eq!(m.cols(), dim);
    let (rref, pivots) = m.rref();
    (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect()
}

/// Membership of `v` in the span of `basis` (assumed an RREF row basis).
pub fn in_span(v: &[Rat], basis: &[Vec<Rat>], dim: usize) -> bool {
    if vec_is_zero(v) {
        return true;
    }
    let mut rows: Vec<Vec<Rat>> = basis.to_vec();
    rows.push(v.to_vec());
    span_basis(rows, dim).len() == basis.len()
}

/// A 3-Leibniz algebra verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeLeibnizAlgebra {
    pub labels: Vec<String>,
    pub bracket: TriBracket,
}

impl ThreeLeibnizAlgebra {
    pub fn new(labels: Option<Vec<String>>, bracket: TriBracket) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| default_labels(bracket.dim));
        if labels.len() != bracket.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for dim {}",
                labels.len(),
                bracket.dim
            )));
        }
        let v = verify_3leibniz(&bracket);
        if !v.pass {
            return Err(Error::AxiomsFailed(format!(
                "not a 3-Leibniz algebra: {:?}",
                v.witness
            )));
        }
        Ok(ThreeLeibnizAlgebra { labels, bracket })
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim
    }
}

/// A Lie algebra verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    pub labels: Vec<String>,
    pub bracket: BiBracket,
}

impl LieAlgebra {
    pub fn new(labels: Option<Vec<String>>, bracket: BiBracket) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| default_labels(bracket.dim));
        if labels.len() != bracket.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for dim {}",
                labels.len(),
                bracket.dim
            )));
        }
        let v = verify_lie(&bracket);
        if !v.pass {
            return Err(Error::AxiomsFailed(format!(
                "not a Lie algebra: {:?}",
                v.witness
            )));
        }
        Ok(LieAlgebra { labels, bracket })
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim
    }
}
