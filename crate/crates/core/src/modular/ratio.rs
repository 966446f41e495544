//! Comparison of `S^χ` with Hopf link invariants of the quantum group.
//!
//! The rows and columns of `S^χ` are indexed by the character basis
//! `P^+_ℓ, X^+_ℓ, X^0_ℓ, X^±_p`, each sent to a quantum-group module by
//! `P^+_s → R^+_s`, `X^+_s, X^0_s → U^+_s`, `X^±_p → U^±_p`. A table assigns to
//! each pair of families the invariant to compare against: `S^{P}` (modified trace),
//! `S^{x}` (trace with the nilpotent `x` inserted) or the ordinary `S`.
//!
//! Ratios are compared in cross-multiplied form `a·d = b·c`, which keeps cells
//! with vanishing denominators meaningful. A logarithmic invariant whose second
//! argument is not projective is taken to be zero: the modified trace lives on the
//! projective ideal only.

use std::fmt;

use serde::Serialize;

use super::{assemble_schi, modular_order, tilde_basis, CharId, SChiMatrix};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::hopf::{log_hopf_target, ordinary_hopf_s, Convention, Insertion, QgLabel, Target};
use crate::linalg::{block_diag, jordan_block, kernel, ExactMatrix};
use crate::report::{Check, Report};
use crate::rings::{grothendieck_table, Sign};

/// A row or column of the character basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YLabel {
    P(u32),
    X(u32),
    X0(u32),
    Top(Sign),
}

/// CharFamily of a [`YLabel`], ignoring the index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CharFamily {
    P,
    X,
    X0,
    Top,
}

impl CharFamily {
    pub const ALL: [CharFamily; 4] = [CharFamily::P, CharFamily::X, CharFamily::X0, CharFamily::Top];

    fn members(self, p: u32) -> Vec<YLabel> {
        match self {
            CharFamily::P => (1..p).map(YLabel::P).collect(),
            CharFamily::X => (1..p).map(YLabel::X).collect(),
            CharFamily::X0 => (1..p).map(YLabel::X0).collect(),
            CharFamily::Top => vec![YLabel::Top(Sign::Plus), YLabel::Top(Sign::Minus)],
        }
    }
}

impl fmt::Display for CharFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharFamily::P => "P+s",
            CharFamily::X => "X+s",
            CharFamily::X0 => "X0s",
            CharFamily::Top => "X±p",
        })
    }
}

impl YLabel {
    pub fn family(self) -> CharFamily {
        match self {
            YLabel::P(_) => CharFamily::P,
            YLabel::X(_) => CharFamily::X,
            YLabel::X0(_) => CharFamily::X0,
            YLabel::Top(_) => CharFamily::Top,
        }
    }

    pub fn char_id(self, p: u32) -> CharId {
        match self {
            YLabel::P(s) => CharId::ChP(Sign::Plus, s),
            YLabel::X(s) => CharId::ChX(Sign::Plus, s),
            YLabel::X0(s) => CharId::Pch(Sign::Plus, s),
            YLabel::Top(e) => CharId::ChX(e, p),
        }
    }

    pub fn qg(self, p: u32) -> QgLabel {
        match self {
            YLabel::P(s) => QgLabel::R(Sign::Plus, s),
            YLabel::X(s) | YLabel::X0(s) => QgLabel::U(Sign::Plus, s),
            YLabel::Top(e) => QgLabel::U(e, p),
        }
    }

    pub fn all(p: u32) -> Vec<YLabel> {
        CharFamily::ALL.iter().flat_map(|f| f.members(p)).collect()
    }
}

impl fmt::Display for YLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YLabel::P(s) => write!(f, "P+{s}"),
            YLabel::X(s) => write!(f, "X+{s}"),
            YLabel::X0(s) => write!(f, "X0{s}"),
            YLabel::Top(Sign::Plus) => write!(f, "X+p"),
            YLabel::Top(Sign::Minus) => write!(f, "X-p"),
        }
    }
}

/// Which Hopf invariant a cell is compared with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gamma {
    /// `S^{P}`, the modified trace.
    Projective,
    /// `S^{x}`, the modified trace with `x` inserted.
    Nilpotent,
    /// The ordinary `S`.
    Empty,
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gamma::Projective => "P",
            Gamma::Nilpotent => "x",
            Gamma::Empty => "empty",
        })
    }
}

/// The γ table: rows `Y`, columns `Y'`.
pub fn gamma(row: CharFamily, col: CharFamily) -> Gamma {
    use CharFamily::*;
    match (row, col) {
        (X0, P) => Gamma::Nilpotent,
        (X0, X0) => Gamma::Projective,
        (X0, _) | (_, X0) => Gamma::Empty,
        _ => Gamma::Projective,
    }
}

/// Choice of the reference row `Y''`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RefRule {
    /// `X^0_1` for the cells `(X^0_s, P^+_ℓ)` and `(X^+_s, X^+_ℓ)`, else `X^+_1`.
    Printed,
    /// `X^0_1` for `(X^0_s, P^+_ℓ)` and `(X^0_s, X^+_ℓ)`, else `X^+_1`.
    Swapped,
}

pub fn reference_row(row: CharFamily, col: CharFamily, rule: RefRule) -> YLabel {
    let special = match rule {
        RefRule::Printed => (row, col) == (CharFamily::X0, CharFamily::P) || (row, col) == (CharFamily::X, CharFamily::X),
        RefRule::Swapped => row == CharFamily::X0 && matches!(col, CharFamily::P | CharFamily::X),
    };
    if special {
        YLabel::X0(1)
    } else {
        YLabel::X(1)
    }
}

/// Hopf invariant for a cell, in the field of order `2p`.
pub fn hopf_entry(v: QgLabel, w: QgLabel, g: Gamma, p: u32) -> Result<CycloNum> {
    let conv = Convention::Consistent;
    match g {
        Gamma::Empty => Ok(ordinary_hopf_s(v, w, p, conv)?.value),
        _ if !w.is_projective(p) => Ok(CycloNum::zero(2 * p)),
        Gamma::Projective => log_hopf_target(v, Target::of(w, p)?, Insertion::ModP, p, conv),
        Gamma::Nilpotent => {
            let t = Target::of(w, p)?;
            if t.end_dim() == 2 {
                log_hopf_target(v, t, Insertion::X, p, conv)
            } else {
                Ok(CycloNum::zero(2 * p))
            }
        }
    }
}

/// One instance of a cell that violates `a·d = b·c`.
#[derive(Clone, Debug, Serialize)]
pub struct CellFailure {
    pub row: String,
    pub col: String,
    pub chi_ratio: String,
    pub hopf_ratio: String,
}

/// All instances of one `(row family, column family)` cell.
#[derive(Clone, Debug, Serialize)]
pub struct CellResult {
    pub row: CharFamily,
    pub col: CharFamily,
    pub gamma: Gamma,
    pub instances: usize,
    /// Instances where both denominators vanish, so the identity holds vacuously.
    pub degenerate: usize,
    pub failures: Vec<CellFailure>,
}

impl CellResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_check(&self) -> Check {
        let name = format!("ratio cell ({}, {}) gamma={}", self.row, self.col, self.gamma);
        match self.failures.first() {
            None => Check::new(
                name,
                true,
                format!("{} instances agree ({} with both denominators zero)", self.instances, self.degenerate),
            ),
            Some(f) => Check::new(
                name,
                false,
                format!(
                    "{} of {} instances fail; first at ({}, {}): S^chi ratio {} vs Hopf ratio {}",
                    self.failures.len(),
                    self.instances,
                    f.row,
                    f.col,
                    f.chi_ratio,
                    f.hopf_ratio
                ),
            ),
        }
    }
}

fn show_ratio(a: &CycloNum, b: &CycloNum) -> String {
    if b.is_zero() {
        format!("({a})/0")
    } else {
        a.checked_div(b).map(|r| r.to_string()).unwrap_or_else(|_| "?".into())
    }
}

struct Tables {
    p: u32,
    order: u32,
    schi: SChiMatrix,
}

impl Tables {
    fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::Parameter("p must be at least 2".into()));
        }
        Ok(Tables { p, order: modular_order(p), schi: assemble_schi(p)? })
    }

    fn chi(&self, y: YLabel, y2: YLabel) -> Result<CycloNum> {
        Ok(self.schi.entry(y.char_id(self.p), y2.char_id(self.p))?.0)
    }

    fn hopf(&self, y: YLabel, y2: YLabel, g: Gamma) -> Result<CycloNum> {
        hopf_entry(y.qg(self.p), y2.qg(self.p), g, self.p)?.lift(self.order)
    }
}

/// Evaluates every cell of the table under a reference-row rule.
pub fn ratio_cells(p: u32, rule: RefRule) -> Result<Vec<CellResult>> {
    let t = Tables::new(p)?;
    let mut out = Vec::new();
    for row in CharFamily::ALL {
        for col in CharFamily::ALL {
            let g = gamma(row, col);
            let mut cell = CellResult { row, col, gamma: g, instances: 0, degenerate: 0, failures: Vec::new() };
            for y in row.members(p) {
                for y2 in col.members(p) {
                    let yr = reference_row(row, col, rule);
                    let a = t.chi(y, y2)?;
                    let b = t.chi(yr, y2)?;
                    let c = t.hopf(y, y2, g)?;
                    let d = t.hopf(yr, y2, g)?;
                    cell.instances += 1;
                    if b.is_zero() && d.is_zero() {
                        cell.degenerate += 1;
                    }
                    if &a * &d != &b * &c {
                        cell.failures.push(CellFailure {
                            row: y.to_string(),
                            col: y2.to_string(),
                            chi_ratio: show_ratio(&a, &b),
                            hopf_ratio: show_ratio(&c, &d),
                        });
                    }
                }
            }
            out.push(cell);
        }
    }
    Ok(out)
}

/// The ratio identity on every cell whose γ is not empty.
pub fn check_ratio_identity(p: u32) -> Result<Report> {
    let mut r = Report::new("ratio", p);
    for cell in ratio_cells(p, RefRule::Printed)? {
        if cell.gamma != Gamma::Empty {
            r.push(cell.to_check());
        }
    }
    Ok(r)
}

/// The cells with empty γ, under both reference-row rules.
pub fn check_empty_cells(p: u32) -> Result<Report> {
    let mut r = Report::new("ratio", p);
    for (rule, tag) in [(RefRule::Printed, "printed"), (RefRule::Swapped, "swapped")] {
        for cell in ratio_cells(p, rule)? {
            if cell.gamma == Gamma::Empty {
                let mut c = cell.to_check();
                c.name = format!("{tag} reference rule: {}", c.name);
                r.push(c);
            }
        }
    }
    Ok(r)
}

/// Nonzero scalars with `c^χ(Y')·S^χ_{Y,Y'} = c(γ)·S^{γ}_{Y,Y'}` on every cell.
#[derive(Clone, Debug, Serialize)]
pub struct ScalarFit {
    pub p: u32,
    /// `c^χ(Y')` for each column.
    pub chi: Vec<(String, String)>,
    /// `c(P)` and `c(empty)`.
    pub hopf: Vec<(Gamma, String)>,
    /// Normalization of `x` on each `R_ℓ`, absorbing `c(x)`.
    pub x_scale: Vec<(u32, String)>,
    pub kernel_dim: usize,
    pub all_nonzero: bool,
    /// Number of equations violated when every scalar is `1`.
    pub unit_violations: usize,
    pub equations: usize,
}

/// Solves for the scalars exactly. `x` is normalized separately on each `R_ℓ`
/// since the nilpotent endomorphism is only defined up to a scalar there.
pub fn fit_scalars(p: u32) -> Result<ScalarFit> {
    let t = Tables::new(p)?;
    let cols = YLabel::all(p);
    let nc = cols.len();
    // Unknowns: c^χ(Y') for each column, c(P), c(empty), λ_ℓ for ℓ = 1..p-1.
    let n = nc + 2 + (p as usize - 1);
    let unknown = |g: Gamma, y2: YLabel| -> usize {
        match (g, y2) {
            (Gamma::Projective, _) => nc,
            (Gamma::Empty, _) => nc + 1,
            (Gamma::Nilpotent, YLabel::P(l)) => nc + 1 + l as usize,
            (Gamma::Nilpotent, _) => unreachable!("x only appears against projective covers"),
        }
    };
    let mut rows: Vec<Vec<CycloNum>> = Vec::new();
    let mut unit_violations = 0;
    for y in YLabel::all(p) {
        for (k, &y2) in cols.iter().enumerate() {
            let g = gamma(y.family(), y2.family());
            let a = t.chi(y, y2)?;
            let h = t.hopf(y, y2, g)?;
            if a != h {
                unit_violations += 1;
            }
            let mut row = vec![CycloNum::zero(t.order); n];
            row[k] = a;
            row[unknown(g, y2)] = -h;
            rows.push(row);
        }
    }
    let m = ExactMatrix::from_fn(rows.len(), n, t.order, |i, j| rows[i][j].clone());
    let ker = kernel(&m);
    let mut best: Option<Vec<CycloNum>> = None;
    for seed in 0..8i64 {
        let mut v = vec![CycloNum::zero(t.order); n];
        for (k, b) in ker.iter().enumerate() {
            let c = CycloNum::from_int(t.order, 1 + (k as i64 + 1) * (seed + 1) + seed * seed);
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(&c * y);
            }
        }
        if v.iter().all(|x| !x.is_zero()) {
            best = Some(v);
            break;
        }
        best.get_or_insert(v);
    }
    let mut v = best.unwrap_or_else(|| vec![CycloNum::zero(t.order); n]);
    if !v[nc].is_zero() {
        let s = v[nc].inv()?;
        v = v.iter().map(|x| x * &s).collect();
    }
    let all_nonzero = !ker.is_empty() && v.iter().all(|x| !x.is_zero());
    Ok(ScalarFit {
        p,
        chi: cols.iter().zip(&v).map(|(c, x)| (c.to_string(), x.to_string())).collect(),
        hopf: vec![(Gamma::Projective, v[nc].to_string()), (Gamma::Empty, v[nc + 1].to_string())],
        x_scale: (1..p).map(|l| (l, v[nc + 1 + l as usize].to_string())).collect(),
        kernel_dim: ker.len(),
        all_nonzero,
        unit_violations,
        equations: rows.len(),
    })
}

pub fn fit_report(p: u32) -> Result<Report> {
    let f = fit_scalars(p)?;
    let mut r = Report::new("ratio", p);
    r.push(Check::new(
        "nonzero scalars reconcile S^chi with Hopf invariants",
        f.all_nonzero,
        format!(
            "kernel dimension {}; c(P) = {}, c(empty) = {}",
            f.kernel_dim, f.hopf[0].1, f.hopf[1].1
        ),
    ));
    r.push(Check::new(
        "unit scalars do not reconcile them",
        f.unit_violations > 0,
        format!("{} of {} equations fail with every scalar 1", f.unit_violations, f.equations),
    ));
    Ok(r)
}

/// How the columns of the candidate change of basis are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QgrReading {
    /// `X^+_p`, then `(X^0_ℓ, X^-_ℓ)` for ascending `ℓ`, then `X^-_p`.
    PairsAscending,
    /// As above with `ℓ` descending.
    PairsDescending,
    /// `X^+_p`, then `(X^0_ℓ, X^-_{p−ℓ})`, then `X^-_p`.
    PairsReflected,
    /// `X^+_p`, then `(X^0_ℓ ⊙ X^-_ℓ, X^-_ℓ)` with `⊙` the entrywise product, then `X^-_p`.
    EntrywiseProduct,
}

impl QgrReading {
    pub const ALL: [QgrReading; 4] = [
        QgrReading::PairsAscending,
        QgrReading::PairsDescending,
        QgrReading::PairsReflected,
        QgrReading::EntrywiseProduct,
    ];
}

/// Outcome of conjugating the Grothendieck-ring operators by a candidate.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugationOutcome {
    pub invertible: bool,
    /// `Q⁻¹JQ` is diagonal.
    pub j_diagonal: bool,
    /// `Q⁻¹YQ` is block diagonal with blocks of sizes `1, 2, …, 2, 1`.
    pub y_block_diagonal: bool,
    /// Each block is upper triangular with diagonal `λ_j` and a nonzero corner, so
    /// rescaling and reordering columns reaches the Jordan form.
    pub y_jordan_up_to_scale: bool,
    /// `Q⁻¹YQ` equals `diag(λ_0, B_{λ_1,2}, …, B_{λ_{p−1},2}, λ_p)` exactly.
    pub y_canonical: bool,
}

/// `J = [X^-_1]·` and `Y = [X^+_2]·` on the Grothendieck ring, basis `X^+_1, X^-_1, …`.
pub fn grothendieck_operators(p: u32, order: u32) -> Result<(ExactMatrix, ExactMatrix)> {
    use crate::rings::ModuleLabel;
    let t = grothendieck_table(p)?;
    let basis: Vec<ModuleLabel> = (1..=p)
        .flat_map(|s| [ModuleLabel::X(Sign::Plus, s), ModuleLabel::X(Sign::Minus, s)])
        .collect();
    let op = |m: ModuleLabel| -> Result<ExactMatrix> {
        let mut out = ExactMatrix::zeros(basis.len(), basis.len(), order);
        for (i, b) in basis.iter().enumerate() {
            for (k, c) in basis.iter().enumerate() {
                out.set(i, k, CycloNum::from_int(order, t.coefficient(&m, b, c)? as i64));
            }
        }
        Ok(out)
    };
    let y = if p == 1 { op(ModuleLabel::X(Sign::Plus, 1))? } else { op(ModuleLabel::X(Sign::Plus, 2))? };
    Ok((op(ModuleLabel::X(Sign::Minus, 1))?, y))
}

/// `diag(λ_0, B_{λ_1,2}, …, B_{λ_{p−1},2}, λ_p)` with `λ_j = 2cos(πj/p)`.
pub fn canonical_y_form(p: u32, order: u32) -> Result<ExactMatrix> {
    let mut blocks = Vec::new();
    for j in 0..=p {
        let lambda = crate::cyclo::two_cos(j as i64, p).lift(order)?;
        let size = if j == 0 || j == p { 1 } else { 2 };
        blocks.push(jordan_block(&lambda, size));
    }
    Ok(block_diag(&blocks, order))
}

/// Conjugates `J`, `Y` by `q` and classifies the result.
pub fn conjugation_outcome(q: &ExactMatrix, p: u32) -> Result<ConjugationOutcome> {
    let order = q.order();
    let (j, y) = grothendieck_operators(p, order)?;
    let Ok(qi) = q.inverse() else {
        return Ok(ConjugationOutcome {
            invertible: false,
            j_diagonal: false,
            y_block_diagonal: false,
            y_jordan_up_to_scale: false,
            y_canonical: false,
        });
    };
    let jf = qi.mul(&j)?.mul(q)?;
    let yf = qi.mul(&y)?.mul(q)?;
    let n = q.rows();
    let j_diagonal = (0..n).all(|a| (0..n).all(|b| a == b || jf.get(a, b).is_zero()));
    let block = |i: usize| -> usize {
        if i == 0 {
            0
        } else if i == n - 1 {
            p as usize
        } else {
            (i + 1) / 2
        }
    };
    let y_block_diagonal = (0..n).all(|a| (0..n).all(|b| block(a) == block(b) || yf.get(a, b).is_zero()));
    let canon = canonical_y_form(p, order)?;
    let y_jordan_up_to_scale = y_block_diagonal && {
        let mut lambdas: Vec<CycloNum> = Vec::new();
        let mut ok = yf.get(0, 0) == canon.get(0, 0) && yf.get(n - 1, n - 1) == canon.get(n - 1, n - 1);
        for k in (1..n - 1).step_by(2) {
            ok &= yf.get(k, k) == yf.get(k + 1, k + 1) && !yf.get(k, k + 1).is_zero() && yf.get(k + 1, k).is_zero();
            lambdas.push(yf.get(k, k).clone());
        }
        ok && (1..p).all(|j| lambdas.iter().filter(|l| **l == *canon.get(2 * j as usize - 1, 2 * j as usize - 1)).count() == 1)
    };
    let y_canonical = yf == canon;
    Ok(ConjugationOutcome { invertible: true, j_diagonal, y_block_diagonal, y_jordan_up_to_scale, y_canonical })
}

/// Candidate built from columns of `S^χ` in the basis `X^+_s, X^0_ℓ, X^-_s`,
/// restricted to the rows `X^±_s`.
pub fn qgr_candidate(p: u32, reading: QgrReading) -> Result<ExactMatrix> {
    let s = SChiMatrix::in_basis(p, tilde_basis(p))?;
    let order = s.order();
    let rows: Vec<CharId> = (1..=p)
        .flat_map(|k| [CharId::ChX(Sign::Plus, k), CharId::ChX(Sign::Minus, k)])
        .collect();
    let col = |c: CharId| -> Result<Vec<CycloNum>> {
        rows.iter().map(|r| Ok(s.entry(*r, c)?.0)).collect()
    };
    let x0 = |l: u32| CharId::Pch(Sign::Plus, l);
    let xm = |l: u32| CharId::ChX(Sign::Minus, l);
    let mut cols = vec![col(CharId::ChX(Sign::Plus, p))?];
    let ls: Vec<u32> = match reading {
        QgrReading::PairsDescending => (1..p).rev().collect(),
        _ => (1..p).collect(),
    };
    for l in ls {
        match reading {
            QgrReading::PairsReflected => {
                cols.push(col(x0(l))?);
                cols.push(col(xm(p - l))?);
            }
            QgrReading::EntrywiseProduct => {
                let a = col(x0(l))?;
                let b = col(xm(l))?;
                cols.push(a.iter().zip(&b).map(|(x, y)| x * y).collect());
                cols.push(b);
            }
            _ => {
                cols.push(col(x0(l))?);
                cols.push(col(xm(l))?);
            }
        }
    }
    cols.push(col(xm(p))?);
    Ok(ExactMatrix::from_columns(&cols, order))
}

/// Outcome for every reading.
pub fn qgr_readings(p: u32) -> Result<Vec<(QgrReading, ConjugationOutcome)>> {
    QgrReading::ALL
        .iter()
        .map(|&r| Ok((r, conjugation_outcome(&qgr_candidate(p, r)?, p)?)))
        .collect()
}

/// Whether some reading reaches the Jordan form after rescaling columns, with the
/// identity matrix as a negative control.
pub fn qgr_report(p: u32) -> Result<Report> {
    let mut r = Report::new("ratio", p);
    let outcomes = qgr_readings(p)?;
    let detail: Vec<String> = outcomes
        .iter()
        .map(|(rd, o)| {
            format!(
                "{rd:?}: invertible {}, J diagonal {}, Y block diagonal {}, Jordan up to scale {}, canonical {}",
                o.invertible, o.j_diagonal, o.y_block_diagonal, o.y_jordan_up_to_scale, o.y_canonical
            )
        })
        .collect();
    let ok = outcomes.iter().any(|(_, o)| o.j_diagonal && o.y_jordan_up_to_scale);
    r.push(Check::new("some S^chi column reading block-diagonalizes J and Y", ok, detail.join("; ")));
    let id = ExactMatrix::identity(2 * p as usize, modular_order(p));
    let o = conjugation_outcome(&id, p)?;
    r.push(Check::new(
        "identity matrix does not block-diagonalize J and Y",
        !(o.j_diagonal && o.y_jordan_up_to_scale),
        format!("J diagonal {}, Y block diagonal {}", o.j_diagonal, o.y_block_diagonal),
    ));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonempty_cells_hold() {
        for p in 2..=5 {
            let r = check_ratio_identity(p).unwrap();
            assert!(r.all_passed(), "{r:#?}");
        }
    }

    #[test]
    fn empty_cells_need_swapped_reference() {
        for p in 2..=4 {
            let cells = ratio_cells(p, RefRule::Printed).unwrap();
            let bad: Vec<_> = cells.iter().filter(|c| !c.passed()).map(|c| (c.row, c.col)).collect();
            assert_eq!(bad, vec![(CharFamily::X0, CharFamily::X)], "p={p}");
            assert!(ratio_cells(p, RefRule::Swapped).unwrap().iter().all(CellResult::passed));
        }
    }

    #[test]
    fn scalars_exist() {
        for p in 2..=4 {
            let f = fit_scalars(p).unwrap();
            assert!(f.all_nonzero, "{f:#?}");
            assert!(f.unit_violations > 0);
        }
    }

    #[test]
    fn reflected_reading_is_jordan_up_to_scale() {
        for p in 2..=4 {
            assert!(qgr_report(p).unwrap().all_passed());
            for (rd, o) in qgr_readings(p).unwrap() {
                assert!(!o.y_canonical, "{rd:?}");
                if rd == QgrReading::PairsReflected {
                    assert!(o.y_jordan_up_to_scale);
                }
            }
        }
    }
}
