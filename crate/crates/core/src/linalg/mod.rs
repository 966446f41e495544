//! Exact linear algebra over cyclotomic fields: kernels, generalized
//! eigenspaces and simultaneous block-diagonalization of a commuting pair
//! `(J, Y)` with `J² = I`.
//!
//! Jordan structure is read off from ranks of `(M - λI)^k`; nothing here is
//! numerical.

mod matrix;

use std::collections::BTreeMap;

use serde::Serialize;

pub use matrix::ExactMatrix;

use crate::cyclo::{two_cos, CycloNum};
use crate::error::{Error, Result};

/// Basis of the null space as column vectors.
pub fn kernel(m: &ExactMatrix) -> Vec<Vec<CycloNum>> {
    let (r, pivots) = m.rref();
    let order = m.order();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycloNum::zero(order); m.cols()];
            v[f] = CycloNum::one(order);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            v
        })
        .collect()
}

/// Maximal linearly independent subset (in order) of the given vectors.
pub fn independent_subset(vectors: &[Vec<CycloNum>], order: u32) -> Vec<Vec<CycloNum>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::from_columns(vectors, order);
    let (_, pivots) = m.rref();
    pivots.into_iter().map(|c| vectors[c].clone()).collect()
}

fn span_rank(vectors: &[Vec<CycloNum>], order: u32) -> usize {
    if vectors.is_empty() {
        0
    } else {
        ExactMatrix::from_columns(vectors, order).rank()
    }
}

/// A generalized eigenspace `ker (M - λI)^k` for large enough `k`.
#[derive(Clone, Debug)]
pub struct GeneralizedEigenspace {
    pub lambda: CycloNum,
    pub basis: Vec<Vec<CycloNum>>,
}

/// Decomposes the space into generalized eigenspaces for the supplied eigenvalues.
///
/// Fails with a spectral coverage error if the eigenvalues miss part of the spectrum.
pub fn generalized_eigenspaces(
    m: &ExactMatrix,
    eigenvalues: &[CycloNum],
) -> Result<Vec<GeneralizedEigenspace>> {
    if !m.is_square() {
        return Err(Error::Parameter("generalized eigenspaces need a square matrix".into()));
    }
    let n = m.rows();
    let mut spaces = Vec::new();
    let mut total = 0;
    for lambda in eigenvalues {
        let a = m.shift(lambda);
        // Powers until the kernel stops growing.
        let mut pow = a.clone();
        let mut dim = n - pow.rank();
        loop {
            let next = pow.mul(&a)?;
            let d = n - next.rank();
            if d == dim {
                break;
            }
            pow = next;
            dim = d;
        }
        let basis = kernel(&pow);
        total += basis.len();
        spaces.push(GeneralizedEigenspace {
            lambda: lambda.clone(),
            basis,
        });
    }
    if total != n {
        return Err(Error::Structural(format!(
            "spectral coverage: eigenvalues account for {total} of {n} dimensions"
        )));
    }
    Ok(spaces)
}

/// Jordan block sizes of `M` at `λ`, descending, from ranks of `(M - λI)^k`.
pub fn jordan_sizes(m: &ExactMatrix, lambda: &CycloNum) -> Vec<usize> {
    let n = m.rows();
    let a = m.shift(lambda);
    let mut ranks = vec![n];
    let mut pow = ExactMatrix::identity(n, m.order());
    loop {
        pow = pow.mul(&a).expect("square");
        let r = pow.rank();
        if r == *ranks.last().unwrap() {
            break;
        }
        ranks.push(r);
    }
    // Number of blocks of size >= k is rank(A^{k-1}) - rank(A^k).
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in 0..at_least.len() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..(at_least[k] - next) {
            sizes.push(k + 1);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Coordinates of the restriction of `A` to the invariant subspace spanned by `basis`.
fn restrict(a: &ExactMatrix, basis: &[Vec<CycloNum>], order: u32) -> Result<ExactMatrix> {
    let b = ExactMatrix::from_columns(basis, order);
    let ab = a.mul(&b)?;
    let d = basis.len();
    let mut cols = Vec::with_capacity(d);
    for j in 0..d {
        let x = b
            .solve_vec(&ab.column(j))
            .ok_or_else(|| Error::Structural("subspace is not invariant".into()))?;
        cols.push(x);
    }
    Ok(ExactMatrix::from_columns(&cols, order))
}

/// Jordan chains of a nilpotent matrix, as `(head, length)` pairs, longest first.
fn jordan_chains(n_mat: &ExactMatrix) -> Result<Vec<(Vec<CycloNum>, usize)>> {
    let order = n_mat.order();
    let d = n_mat.rows();
    let mut kernels = vec![Vec::new()];
    let mut pow = ExactMatrix::identity(d, order);
    loop {
        pow = pow.mul(n_mat)?;
        let k = kernel(&pow);
        let done = k.len() == d;
        kernels.push(k);
        if done {
            break;
        }
        if kernels.len() > d + 1 {
            return Err(Error::Structural("matrix is not nilpotent".into()));
        }
    }
    let top = kernels.len() - 1;
    let mut chosen: Vec<(Vec<CycloNum>, usize)> = Vec::new();
    for m in (1..=top).rev() {
        let mut span: Vec<Vec<CycloNum>> = kernels[m - 1].clone();
        for (h, l) in &chosen {
            let mut v = h.clone();
            for _ in 0..(l - m) {
                v = n_mat.mul_vec(&v);
            }
            span.push(v);
        }
        let mut rank = span_rank(&span, order);
        for v in &kernels[m] {
            span.push(v.clone());
            let r = span_rank(&span, order);
            if r > rank {
                rank = r;
                chosen.push((v.clone(), m));
            } else {
                span.pop();
            }
        }
    }
    Ok(chosen)
}

/// One diagonal block of a [`BlockReport`].
#[derive(Clone, Debug)]
pub struct Block {
    /// Index `j` of the eigenvalue `λ_j = 2cos(πj/p)`.
    pub j: u32,
    pub lambda: CycloNum,
    /// Eigenvalue of `J` on the block (`J² = I`).
    pub j_value: i64,
    pub size: usize,
    /// Position of the first column of the block in the change of basis.
    pub offset: usize,
}

/// Result of [`block_diagonalize_pair`].
#[derive(Clone, Debug)]
pub struct BlockReport {
    pub eigenvalues: Vec<CycloNum>,
    pub blocks: Vec<Block>,
    pub change_of_basis: ExactMatrix,
    /// `Q⁻¹ J Q`, diagonal.
    pub j_form: ExactMatrix,
    /// `Q⁻¹ Y Q`, Jordan form.
    pub y_form: ExactMatrix,
}

impl BlockReport {
    /// Block sizes grouped by eigenvalue index `j`.
    pub fn block_sizes(&self) -> BTreeMap<u32, Vec<usize>> {
        let mut map: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for b in &self.blocks {
            map.entry(b.j).or_default().push(b.size);
        }
        map
    }

    /// Conjugates `M` by the change of basis.
    pub fn conjugate(&self, m: &ExactMatrix) -> Result<ExactMatrix> {
        self.change_of_basis.inverse()?.mul(m)?.mul(&self.change_of_basis)
    }

    /// The square diagonal block at `b` of a matrix in block coordinates.
    pub fn block_of(&self, m: &ExactMatrix, b: &Block) -> ExactMatrix {
        let idx: Vec<usize> = (b.offset..b.offset + b.size).collect();
        m.select(&idx, &idx)
    }

    /// Whether `m` (in block coordinates) has no entries outside the diagonal blocks.
    pub fn is_block_diagonal(&self, m: &ExactMatrix) -> bool {
        let mut owner = vec![0usize; m.rows()];
        for (k, b) in self.blocks.iter().enumerate() {
            for o in owner.iter_mut().skip(b.offset).take(b.size) {
                *o = k;
            }
        }
        (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| owner[i] == owner[j] || m.get(i, j).is_zero())
        })
    }

    pub fn to_json(&self) -> BlockReportJson {
        let mut blocks: Vec<BlockJson> = Vec::new();
        for b in &self.blocks {
            match blocks.last_mut() {
                Some(last) if last.j == b.j => last.sizes.push(b.size),
                _ => blocks.push(BlockJson {
                    j: b.j,
                    lambda: b.lambda.to_cyclo_string(),
                    sizes: vec![b.size],
                }),
            }
        }
        BlockReportJson {
            eigenvalues: self.eigenvalues.iter().map(CycloNum::to_cyclo_string).collect(),
            blocks,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReportJson {
    pub eigenvalues: Vec<String>,
    pub blocks: Vec<BlockJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockJson {
    pub j: u32,
    pub lambda: String,
    pub sizes: Vec<usize>,
}

/// Diagonalizes `J` and puts `Y` into Jordan form inside each joint eigenspace.
///
/// Eigenvalues of `Y` are supplied analytically as `λ_j = 2cos(πj/p)`; generalized
/// eigenspaces are ordered by `j = 0..p`, split by the `±1` eigenspaces of `J`,
/// and blocks are listed by ascending size within each `j`.
pub fn block_diagonalize_pair(j_mat: &ExactMatrix, y: &ExactMatrix, p: u32) -> Result<BlockReport> {
    let order = y.order();
    if j_mat.mul(y)? != y.mul(j_mat)? {
        return Err(Error::Structural("J and Y do not commute".into()));
    }
    let n = y.rows();
    if j_mat.mul(j_mat)? != ExactMatrix::identity(n, order) {
        return Err(Error::Structural("J is not an involution".into()));
    }
    let eigenvalues: Vec<CycloNum> = (0..=p)
        .map(|j| two_cos(j as i64, p).lift(order))
        .collect::<Result<_>>()?;
    let spaces = generalized_eigenspaces(y, &eigenvalues)?;

    let one = CycloNum::one(order);
    let half = CycloNum::from_frac(order, 1, 2);
    let mut columns: Vec<Vec<CycloNum>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for (jdx, space) in spaces.iter().enumerate() {
        let mut pending: Vec<(usize, i64, Vec<Vec<CycloNum>>)> = Vec::new();
        for sign in [1i64, -1] {
            // Projector (I ± J)/2 restricted to the generalized eigenspace.
            let proj = ExactMatrix::identity(n, order)
                .add(&j_mat.scale(&CycloNum::from_int(order, sign)))
                .scale(&half);
            let imgs: Vec<Vec<CycloNum>> = space.basis.iter().map(|v| proj.mul_vec(v)).collect();
            let sub = independent_subset(&imgs, order);
            if sub.is_empty() {
                continue;
            }
            let a = y.shift(&space.lambda);
            let nil = restrict(&a, &sub, order)?;
            let basis_mat = ExactMatrix::from_columns(&sub, order);
            for (head, len) in jordan_chains(&nil)? {
                let mut chain = vec![head];
                for _ in 1..len {
                    let next = nil.mul_vec(chain.last().unwrap());
                    chain.push(next);
                }
                chain.reverse();
                let cols: Vec<Vec<CycloNum>> = chain.iter().map(|c| basis_mat.mul_vec(c)).collect();
                pending.push((len, sign, cols));
            }
        }
        pending.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        for (len, sign, cols) in pending {
            blocks.push(Block {
                j: jdx as u32,
                lambda: space.lambda.clone(),
                j_value: sign,
                size: len,
                offset: columns.len(),
            });
            columns.extend(cols);
        }
    }
    let q = ExactMatrix::from_columns(&columns, order);
    let qinv = q.inverse()?;
    let j_form = qinv.mul(j_mat)?.mul(&q)?;
    let y_form = qinv.mul(y)?.mul(&q)?;

    // The construction must reproduce the advertised canonical forms exactly.
    let mut expect_j = ExactMatrix::zeros(n, n, order);
    let mut expect_y = ExactMatrix::zeros(n, n, order);
    for b in &blocks {
        for k in 0..b.size {
            let i = b.offset + k;
            expect_j.set(i, i, CycloNum::from_int(order, b.j_value));
            expect_y.set(i, i, b.lambda.clone());
            if k + 1 < b.size {
                expect_y.set(i, i + 1, one.clone());
            }
        }
    }
    if j_form != expect_j || y_form != expect_y {
        return Err(Error::Internal("block form does not match Jordan data".into()));
    }
    Ok(BlockReport {
        eigenvalues,
        blocks,
        change_of_basis: q,
        j_form,
        y_form,
    })
}

/// Exact test of `Q⁻¹ M Q = B`.
pub fn verify_conjugation(q: &ExactMatrix, m: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    let qinv = q
        .inverse()
        .map_err(|_| Error::Structural("change of basis is singular".into()))?;
    Ok(qinv.mul(m)?.mul(q)? == *b)
}

/// Canonical upper Jordan block `B_{λ,k}`.
pub fn jordan_block(lambda: &CycloNum, k: usize) -> ExactMatrix {
    let order = lambda.order();
    ExactMatrix::from_fn(k, k, order, |i, j| {
        if i == j {
            lambda.clone()
        } else if j == i + 1 {
            CycloNum::one(order)
        } else {
            CycloNum::zero(order)
        }
    })
}

/// Block-diagonal matrix from square blocks.
pub fn block_diag(blocks: &[ExactMatrix], order: u32) -> ExactMatrix {
    let n: usize = blocks.iter().map(ExactMatrix::rows).sum();
    let mut m = ExactMatrix::zeros(n, n, order);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.rows();
    }
    m
}
