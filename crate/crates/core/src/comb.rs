//! Canonical wedge-pair indexing and shuffle enumeration.
//!
//! Wedge pairs are stored on strictly increasing index pairs `(i, j)` with
//! `i < j`; a read at `(j, i)` picks up a sign and `(i, i)` is zero, so
//! antisymmetry is structural. Shuffles carry the parity sign of the
//! underlying permutation, which is exactly the `(-1)^σ` appearing in the
//! graded composition formula.

use itertools::Itertools;

/// A strictly ordered basis pair `i < j` standing for `e_i ∧ e_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct WedgeIndex {
    pub i: usize,
    pub j: usize,
}

impl WedgeIndex {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "wedge index must be strictly ordered");
        WedgeIndex { i, j }
    }
}

/// Canonicalizes an arbitrary ordered pair: `None` for `(i, i)`, otherwise
/// the ordered pair together with the reordering sign.
pub fn canonical_pair(i: usize, j: usize) -> Option<(WedgeIndex, i64)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some((WedgeIndex::new(i, j), 1)),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some((WedgeIndex::new(j, i), -1)),
    }
}

pub fn wedge_count(dim: usize) -> usize {
    dim * dim.saturating_sub(1) / 2
}

/// Lexicographic position of `(i, j)` among ordered pairs of `0..dim`.
pub fn wedge_flat(dim: usize, w: WedgeIndex) -> usize {
    debug_assert!(w.j < dim);
    // pairs starting at i' < i, then offset within row i
    w.i * dim - w.i * (w.i + 1) / 2 + (w.j - w.i - 1)
}

pub fn wedge_unflat(dim: usize, mut idx: usize) -> WedgeIndex {
    for i in 0..dim {
        let row = dim - i - 1;
        if idx < row {
            return WedgeIndex::new(i, i + 1 + idx);
        }
        idx -= row;
    }
    panic!("wedge index out of range");
}

/// All ordered pairs of `0..dim` in lexicographic (flat) order.
pub fn wedge_basis(dim: usize) -> Vec<WedgeIndex> {
    (0..wedge_count(dim)).map(|k| wedge_unflat(dim, k)).collect()
}

/// A `(p, q)`-shuffle of `{0, …, p+q-1}`: the positions consumed by the
/// p-block and q-block, both strictly increasing, plus the permutation
/// parity of the concatenated sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub sign: i64,
}

/// Enumerates all `C(p+q, p)` shuffles in lexicographic order of the first
/// block.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let n = p + q;
    (0..n)
        .combinations(p)
        .map(|first| {
            let second: Vec<usize> = (0..n).filter(|x| !first.contains(x)).collect();
            let seq: Vec<usize> = first.iter().chain(&second).copied().collect();
            Shuffle {
                sign: permutation_sign(&seq),
                first,
                second,
            }
        })
        .collect()
}

/// Parity of a permutation given as a sequence of distinct values.
pub fn permutation_sign(seq: &[usize]) -> i64 {
    let mut inv = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
