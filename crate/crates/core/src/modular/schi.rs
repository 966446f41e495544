//! Exact modular `S`-matrix on a basis of characters and pseudo-characters.
//!
//! Every `W_p` (pseudo-)character is a rational combination (with one factor of
//! `i` for pseudo-characters) of `A_k = θ_{k,p}/η`, `B_k = θ'_{k,p}/η` and
//! `C_k = τθ'_{k,p}/η`. On these coordinates `τ ↦ −1/τ` acts by
//! `A_k ↦ Σ ζ^{−kk'} A_{k'}`, `B_k ↦ Σ ζ^{−kk'} C_{k'}`, `C_k ↦ −Σ ζ^{−kk'} B_{k'}`,
//! each with an overall `(2p)^{−1/2}` and the sum over `k' ∈ Z/2p`. Solving in the
//! chosen basis gives `S^χ` with cyclotomic entries and a tracked power of `√(2p)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use super::{eval_characters, CharId, Tau};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::report::{Check, Report};
use crate::rings::Sign::{Minus, Plus};

/// Field order used on the modular side: `lcm(2p, 4)`, so that `i` is available.
pub fn modular_order(p: u32) -> u32 {
    (2 * p).lcm(&4)
}

/// The basis `ch[P^+_ℓ], ch[X^+_ℓ], pch[X^+_ℓ]` (`1 ≤ ℓ < p`), `ch[X^±_p]`.
pub fn character_basis(p: u32) -> Vec<CharId> {
    let l = 1..p;
    l.clone()
        .map(|l| CharId::ChP(Plus, l))
        .chain(l.clone().map(|l| CharId::ChX(Plus, l)))
        .chain(l.map(|l| CharId::Pch(Plus, l)))
        .chain([CharId::ChX(Plus, p), CharId::ChX(Minus, p)])
        .collect()
}

/// The alternative basis `ch[X^+_s]`, `pch[X^+_ℓ]`, `ch[X^-_s]`.
pub fn tilde_basis(p: u32) -> Vec<CharId> {
    (1..=p)
        .map(|s| CharId::ChX(Plus, s))
        .chain((1..p).map(|l| CharId::Pch(Plus, l)))
        .chain((1..=p).map(|s| CharId::ChX(Minus, s)))
        .collect()
}

struct ThetaSpace {
    p: u32,
    order: u32,
}

impl ThetaSpace {
    fn dim(&self) -> usize {
        3 * self.p as usize - 1
    }

    fn zeta_pow(&self, k: i64) -> CycloNum {
        CycloNum::root(self.order, k * (self.order / (2 * self.p)) as i64)
    }

    fn i(&self) -> CycloNum {
        CycloNum::root(self.order, (self.order / 4) as i64)
    }

    /// Adds `c·A_k` for any `k ∈ Z`.
    fn add_a(&self, v: &mut [CycloNum], k: i64, c: &CycloNum) {
        let p = self.p as i64;
        let mut k = k.rem_euclid(2 * p);
        if k > p {
            k = 2 * p - k;
        }
        v[k as usize] += c;
    }

    /// Adds `c·B_k` (or `c·C_k` when `tau_weighted`) for any `k ∈ Z`.
    fn add_b(&self, v: &mut [CycloNum], k: i64, c: &CycloNum, tau_weighted: bool) {
        let p = self.p as i64;
        let k = k.rem_euclid(2 * p);
        let (k, c) = if k > p { (2 * p - k, -c) } else { (k, c.clone()) };
        if k == 0 || k == p {
            return;
        }
        let base = p as usize + 1 + if tau_weighted { p as usize - 1 } else { 0 };
        v[base + k as usize - 1] += &c;
    }

    fn coords(&self, c: CharId) -> Result<Vec<CycloNum>> {
        let (p, n) = (self.p, self.order);
        let pi = p as i64;
        let mut v = vec![CycloNum::zero(n); self.dim()];
        let frac = |a: i64| CycloNum::from_frac(n, a, pi);
        let int = |a: i64| CycloNum::from_int(n, a);
        let bad = || Error::Parameter(format!("{c} is outside the W_{p} character range"));
        match c {
            CharId::ChX(Plus, s) if (1..=p).contains(&s) => {
                let k = pi - s as i64;
                self.add_a(&mut v, k, &frac(s as i64));
                self.add_b(&mut v, k, &int(2), false);
            }
            CharId::ChX(Minus, s) if (1..=p).contains(&s) => {
                let k = s as i64;
                self.add_a(&mut v, k, &frac(s as i64));
                self.add_b(&mut v, k, &int(-2), false);
            }
            CharId::ChP(e, s) if (1..p).contains(&s) => {
                let k = if e == Plus { pi - s as i64 } else { s as i64 };
                self.add_a(&mut v, k, &int(2));
            }
            CharId::Pch(Plus, s) if (1..=p).contains(&s) => {
                self.add_b(&mut v, pi - s as i64, &self.i().scale_int(-4), true);
            }
            CharId::Pch(Minus, s) if (1..=p).contains(&s) => {
                self.add_b(&mut v, s as i64, &self.i().scale_int(4), true);
            }
            _ => return Err(bad()),
        }
        Ok(v)
    }

    /// `√(2p)` times the image of a coordinate vector under `τ ↦ −1/τ`.
    fn s_action(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        let p = self.p as i64;
        let mut out = vec![CycloNum::zero(self.order); self.dim()];
        for k in 0..=p {
            let c = &v[k as usize];
            if c.is_zero() {
                continue;
            }
            for k2 in 0..2 * p {
                self.add_a(&mut out, k2, &(c * &self.zeta_pow(-k * k2)));
            }
        }
        for k in 1..p {
            let b = &v[(p + k) as usize];
            if !b.is_zero() {
                for k2 in 0..2 * p {
                    self.add_b(&mut out, k2, &(b * &self.zeta_pow(-k * k2)), true);
                }
            }
            let c = &v[(2 * p - 1 + k) as usize];
            if !c.is_zero() {
                for k2 in 0..2 * p {
                    self.add_b(&mut out, k2, &-(c * &self.zeta_pow(-k * k2)), false);
                }
            }
        }
        out
    }
}

/// `S^χ` in a given basis: `f_i(−1/τ) = Σ_j (2p)^{−e_{ij}/2} c_{ij} f_j(τ)`.
#[derive(Clone, Debug)]
pub struct SChiMatrix {
    pub p: u32,
    pub basis: Vec<CharId>,
    cyclo: ExactMatrix,
    space_inv: ExactMatrix,
}

#[derive(Serialize)]
pub struct SChiEntryJson {
    pub row: CharId,
    pub col: CharId,
    pub cyclo: String,
    #[serde(rename = "sqrt2pPower")]
    pub sqrt2p_power: i32,
}

#[derive(Serialize)]
pub struct SChiJson {
    pub p: u32,
    pub order: u32,
    pub basis: Vec<CharId>,
    pub entries: Vec<SChiEntryJson>,
}

impl SChiMatrix {
    /// Assembles `S^χ` in an arbitrary basis of the `(3p−1)`-dimensional character space.
    pub fn in_basis(p: u32, basis: Vec<CharId>) -> Result<Self> {
        if p < 2 {
            return Err(Error::Parameter("p must be at least 2".into()));
        }
        let space = ThetaSpace { p, order: modular_order(p) };
        if basis.len() != space.dim() {
            return Err(Error::Parameter(format!("basis must have {} elements", space.dim())));
        }
        let cols: Vec<Vec<CycloNum>> = basis.iter().map(|c| space.coords(*c)).collect::<Result<_>>()?;
        let m = ExactMatrix::from_columns(&cols, space.order);
        let space_inv = m
            .inverse()
            .map_err(|_| Error::Structural("character list is not a basis".into()))?;
        let n = basis.len();
        let mut cyclo = ExactMatrix::zeros(n, n, space.order);
        for (i, col) in cols.iter().enumerate() {
            let row = space_inv.mul_vec(&space.s_action(col));
            for (j, x) in row.into_iter().enumerate() {
                cyclo.set(i, j, x);
            }
        }
        Ok(SChiMatrix { p, basis, cyclo, space_inv })
    }

    pub fn order(&self) -> u32 {
        self.cyclo.order()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, c: CharId) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| *b == c)
            .ok_or_else(|| Error::Parameter(format!("{c} is not in the S^chi basis")))
    }

    /// Cyclotomic part and `√(2p)`-power of an entry.
    pub fn entry(&self, row: CharId, col: CharId) -> Result<(CycloNum, i32)> {
        let x = self.cyclo.get(self.index(row)?, self.index(col)?).clone();
        let e = if x.is_zero() { 0 } else { 1 };
        Ok((x, e))
    }

    /// The cyclotomic parts as a matrix; every nonzero entry carries one power of `(2p)^{−1/2}`.
    pub fn cyclo_matrix(&self) -> &ExactMatrix {
        &self.cyclo
    }

    /// `√(2p)` times the expansion of `c(−1/τ)` in the basis, for any `W_p` character `c`.
    pub fn transform_row(&self, c: CharId) -> Result<Vec<CycloNum>> {
        let space = ThetaSpace { p: self.p, order: self.order() };
        Ok(self.space_inv.mul_vec(&space.s_action(&space.coords(c)?)))
    }

    /// Expansion of `c(τ)` itself in the basis.
    pub fn expand(&self, c: CharId) -> Result<Vec<CycloNum>> {
        let space = ThetaSpace { p: self.p, order: self.order() };
        Ok(self.space_inv.mul_vec(&space.coords(c)?))
    }

    pub fn numeric(&self) -> DMatrix<Complex64> {
        let scale = 1.0 / (2.0 * self.p as f64).sqrt();
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| self.cyclo.get(i, j).to_complex() * scale)
    }

    /// `(S^χ)² = 1`, checked exactly as `c² = 2p·1`.
    pub fn squares_to_identity(&self) -> Result<bool> {
        let sq = self.cyclo.mul(&self.cyclo)?;
        let two_p = CycloNum::from_int(self.order(), 2 * self.p as i64);
        let target = ExactMatrix::identity(self.dim(), self.order()).scale(&two_p);
        Ok(sq == target)
    }

    pub fn to_json(&self) -> SChiJson {
        let mut entries = Vec::new();
        for (i, r) in self.basis.iter().enumerate() {
            for (j, c) in self.basis.iter().enumerate() {
                let x = self.cyclo.get(i, j);
                if !x.is_zero() {
                    entries.push(SChiEntryJson {
                        row: *r,
                        col: *c,
                        cyclo: x.to_cyclo_string(),
                        sqrt2p_power: 1,
                    });
                }
            }
        }
        SChiJson { p: self.p, order: self.order(), basis: self.basis.clone(), entries }
    }
}

/// `S^χ` in the standard basis.
pub fn assemble_schi(p: u32) -> Result<SChiMatrix> {
    SChiMatrix::in_basis(p, character_basis(p))
}

fn values(basis: &[CharId], p: u32, tau: Tau, trunc: usize) -> Result<Vec<Complex64>> {
    let all = eval_characters(p, tau, trunc)?;
    Ok(basis.iter().map(|c| all[c]).collect())
}

/// Sample points with both `τ` and `−1/τ` well inside the upper half-plane.
pub fn sample_taus(n: usize) -> Vec<Tau> {
    (0..n)
        .map(|k| {
            let t = (k as f64 + 0.5) / n as f64;
            let theta = std::f64::consts::PI * (0.3 + 0.4 * t);
            let r = 0.85 + 0.3 * ((k * 7) % n) as f64 / n as f64;
            Tau::new(r * theta.cos(), r * theta.sin()).expect("sample point")
        })
        .collect()
}

/// Least-squares extraction of `S^χ` from character values at sample points.
pub fn numeric_schi(p: u32, basis: &[CharId], taus: &[Tau], trunc: usize) -> Result<DMatrix<Complex64>> {
    let n = basis.len();
    if taus.len() < n {
        return Err(Error::Parameter(format!("need at least {n} sample points")));
    }
    let mut f = DMatrix::<Complex64>::zeros(taus.len(), n);
    let mut g = DMatrix::<Complex64>::zeros(taus.len(), n);
    for (k, t) in taus.iter().enumerate() {
        for (j, v) in values(basis, p, *t, trunc)?.into_iter().enumerate() {
            f[(k, j)] = v;
        }
        for (i, v) in values(basis, p, t.s(), trunc)?.into_iter().enumerate() {
            g[(k, i)] = v;
        }
    }
    // f · Sᵀ = g
    let svd = f.svd(true, true);
    let st = svd
        .solve(&g, 1e-14)
        .map_err(|e| Error::Numerical(format!("least-squares solve failed: {e}")))?;
    Ok(st.transpose())
}

/// Max entrywise distance between the exact and the least-squares `S^χ`.
pub fn schi_numeric_residual(s: &SChiMatrix, trunc: usize) -> Result<f64> {
    let taus = sample_taus(s.dim() + 4);
    let num = numeric_schi(s.p, &s.basis, &taus, trunc)?;
    Ok((num - s.numeric()).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Residuals of `f(−1/τ) = S^χ f(τ)` and `f(τ) = (S^χ)² f(τ)` at one point.
pub fn schi_transform_residuals(s: &SChiMatrix, tau: Tau, trunc: usize) -> Result<(f64, f64)> {
    let at = DMatrix::from_vec(s.dim(), 1, values(&s.basis, s.p, tau, trunc)?);
    let at_s = DMatrix::from_vec(s.dim(), 1, values(&s.basis, s.p, tau.s(), trunc)?);
    let m = s.numeric();
    let once = (&at_s - &m * &at).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let twice = (&at - &m * &m * &at).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok((once, twice))
}

/// `|det|` of the basis functions at `3p−1` points of the strip.
///
/// Points are picked greedily from a grid by largest residual row norm, and each
/// column is scaled to unit norm, so `|det| ≤ 1` measures independence rather
/// than the magnitudes of the functions.
pub fn basis_independence(p: u32, trunc: usize) -> Result<f64> {
    let basis = character_basis(p);
    let n = basis.len();
    let mut grid = Vec::new();
    for a in 0..13 {
        for b in 0..10 {
            grid.push(Tau::new(-1.2 + 0.2 * a as f64, 0.1 * 1.4f64.powi(b))?);
        }
    }
    let mut f = DMatrix::<Complex64>::zeros(grid.len(), n);
    for (k, t) in grid.iter().enumerate() {
        for (j, v) in values(&basis, p, *t, trunc)?.into_iter().enumerate() {
            f[(k, j)] = v;
        }
    }
    for mut col in f.column_iter_mut() {
        let norm = col.norm();
        col /= Complex64::new(norm, 0.0);
    }
    let mut residual = f.clone();
    let mut chosen = Vec::new();
    for _ in 0..n {
        let (best, _) = (0..grid.len())
            .filter(|k| !chosen.contains(k))
            .map(|k| (k, residual.row(k).norm()))
            .fold((usize::MAX, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let v = residual.row(best).normalize();
        for k in 0..grid.len() {
            let proj = residual.row(k).dotc(&v);
            let update = v.scale(1.0) * proj;
            let mut row = residual.row_mut(k);
            row -= update;
        }
        chosen.push(best);
    }
    // Maxvol refinement: swap in any row with a coefficient above 1 in the current basis.
    for _ in 0..200 {
        let sel = DMatrix::from_fn(n, n, |i, j| f[(chosen[i], j)]);
        let Some(inv) = sel.try_inverse() else { break };
        let b = &f * inv;
        let (mut bi, mut bj, mut best) = (0, 0, 1.0 + 1e-9);
        for i in 0..grid.len() {
            for j in 0..n {
                if b[(i, j)].norm() > best {
                    (bi, bj, best) = (i, j, b[(i, j)].norm());
                }
            }
        }
        if best <= 1.0 + 1e-9 {
            break;
        }
        chosen[bj] = bi;
    }
    let mut sel = DMatrix::from_fn(n, n, |i, j| f[(chosen[i], j)]);
    for mut col in sel.column_iter_mut() {
        let norm = col.norm();
        col /= Complex64::new(norm, 0.0);
    }
    Ok(sel.determinant().norm())
}

/// Structural checks on `S^χ` for one `p`.
pub fn schi_report(p: u32, tol: f64, trunc: usize) -> Result<Report> {
    let s = assemble_schi(p)?;
    let mut r = Report::new("modular", p);
    r.push(Check::new("S^chi squares to the identity", s.squares_to_identity()?, "exact"));
    let res = schi_numeric_residual(&s, trunc)?;
    r.push(Check::numeric(
        "S^chi agrees with least-squares extraction",
        res,
        1e-7f64.max(tol),
        format!("max entry deviation {res:.3e}"),
    ));
    for tau in [Tau::new(0.0, 2.0)?, Tau::new(0.3, 1.7)?] {
        let (once, twice) = schi_transform_residuals(&s, tau, trunc)?;
        r.push(Check::numeric(
            format!("S^chi transforms the characters at tau={tau}"),
            once,
            tol,
            format!("max residual {once:.3e}"),
        ));
        r.push(Check::numeric(
            format!("(S^chi)^2 fixes the characters at tau={tau}"),
            twice,
            1e-7f64.max(tol),
            format!("max residual {twice:.3e}"),
        ));
    }
    let det = basis_independence(p, trunc)?;
    r.push(Check::new(
        "basis characters are linearly independent",
        det > 1e-12,
        format!("|det| = {det:.3e} at {} sample points", 3 * p - 1),
    ));
    Ok(r)
}

/// Exact `pch[X^+_s]` row coefficient of `ch[P^+_ℓ]` predicted by the printed law:
/// `−(ℓ/2p)·4·(−1)^{ℓ+s+p}(q^{ℓs} − q^{−ℓs})`, in units of `(2p)^{−1/2}`.
pub fn printed_pch_p_coefficient(p: u32, s: u32, l: u32) -> CycloNum {
    let n = modular_order(p);
    let step = (n / (2 * p)) as i64;
    let (s, l, pi) = (s as i64, l as i64, p as i64);
    let brace = &CycloNum::root(n, l * s * step) - &CycloNum::root(n, -l * s * step);
    let sign = crate::cyclo::sign_pow(l + s + pi);
    brace.scale(&num_rational::BigRational::new((-4 * l * sign).into(), (2 * pi).into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_squares_to_one() {
        for p in 2..=5 {
            assert!(assemble_schi(p).unwrap().squares_to_identity().unwrap());
        }
    }

    #[test]
    fn pch_row_has_no_pch_terms() {
        for p in 2..=4 {
            let s = assemble_schi(p).unwrap();
            for a in 1..p {
                for b in 1..p {
                    assert!(s.entry(CharId::Pch(Plus, a), CharId::Pch(Plus, b)).unwrap().0.is_zero());
                }
            }
        }
    }

    #[test]
    fn exact_matches_numeric() {
        for p in 2..=4 {
            let s = assemble_schi(p).unwrap();
            let res = schi_numeric_residual(&s, 400).unwrap();
            assert!(res < 1e-7, "p={p}: {res}");
            let (once, twice) = schi_transform_residuals(&s, Tau::new(0.0, 2.0).unwrap(), 400).unwrap();
            assert!(once < 1e-8 && twice < 1e-7);
        }
    }

    #[test]
    fn tilde_basis_is_a_basis() {
        for p in 2..=4 {
            SChiMatrix::in_basis(p, tilde_basis(p)).unwrap();
        }
    }

    #[test]
    fn independence() {
        for p in 2..=5 {
            let d = basis_independence(p, 400).unwrap();
            assert!(d > 1e-12);
        }
    }
}
