use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::{block_diagonalize_pair, kernel, BlockReport, ExactMatrix};
use crate::report::{Check, Report};
use crate::rings::{
    build_wp_fusion_table, grothendieck_table, semisimplify, FusionTable, ModuleLabel, RingKind,
    Sign,
};

use super::{
    log_hopf_target, open_hopf_target, ordinary_hopf_s, qdim, qg_basis, Convention, EndOp,
    Insertion, QgLabel, Target,
};

use Sign::{Minus, Plus};

/// A pair `(U, V)` for which `Σ_X N_{U,V}^X Φ_{X,W} ≠ Φ_{U,W}∘Φ_{V,W}`.
#[derive(Clone, Debug)]
pub struct RepViolation {
    pub u: ModuleLabel,
    pub v: ModuleLabel,
    pub lhs: EndOp,
    pub rhs: EndOp,
}

#[derive(Clone, Debug)]
pub struct RepReport {
    pub target: Target,
    pub pairs_checked: usize,
    pub violations: Vec<RepViolation>,
}

impl RepReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_check(&self) -> Check {
        let detail = match self.violations.first() {
            None => format!("{} pairs", self.pairs_checked),
            Some(v) => format!(
                "{} violations; first ({}, {}): sum = {} + ({})x, composite = {} + ({})x",
                self.violations.len(),
                v.u,
                v.v,
                v.lhs.id_coeff,
                v.lhs.nil_coeff,
                v.rhs.id_coeff,
                v.rhs.nil_coeff
            ),
        };
        Check::new(format!("representation property, W = {}", self.target), self.holds(), detail)
    }
}

/// `Φ_{·,W}` evaluated on every basis label of a `W_p` table.
fn phi_column(t: &FusionTable, w: Target, p: u32, conv: Convention) -> Result<Vec<EndOp>> {
    t.basis()
        .iter()
        .map(|l| Ok(open_hopf_target(QgLabel::from_module(l, p)?, w, p, conv)))
        .collect()
}

/// Exhaustive check that `U ↦ Φ_{U,W}` is a representation of the tensor ring.
pub fn check_rep_property(t: &FusionTable, w: Target, p: u32, conv: Convention) -> Result<RepReport> {
    if t.kind() != RingKind::SimpleProjective || t.param() != p {
        return Err(Error::Parameter("expected the SimpleProjective table for this p".into()));
    }
    let phi = phi_column(t, w, p, conv)?;
    let d = t.dim();
    let order = 2 * p;
    let mut violations = Vec::new();
    for a in 0..d {
        for b in a..d {
            let mut lhs = EndOp::zero(order, w.end_dim());
            for c in 0..d {
                let n = t.n(a, b, c);
                if n > 0 {
                    lhs = lhs.add(&phi[c].scale_int(n as i64));
                }
            }
            let rhs = phi[a].compose(&phi[b]);
            if lhs.id_coeff != rhs.id_coeff || lhs.nil_coeff != rhs.nil_coeff {
                violations.push(RepViolation {
                    u: t.basis()[a],
                    v: t.basis()[b],
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(RepReport {
        target: w,
        pairs_checked: d * (d + 1) / 2,
        violations,
    })
}

fn simples_below_p(p: u32) -> Vec<QgLabel> {
    (1..p).flat_map(|s| [QgLabel::U(Plus, s), QgLabel::U(Minus, s)]).collect()
}

/// Semi-simple Verlinde formula from the ordinary Hopf matrix on simples of nonzero
/// quantum dimension, returned as a table on `X^±_s`, `s < p`.
pub fn verlinde_semisimple(p: u32, conv: Convention) -> Result<FusionTable> {
    let labels = simples_below_p(p);
    let n = labels.len();
    let order = 2 * p;
    let mut s = ExactMatrix::zeros(n, n, order);
    for (a, va) in labels.iter().enumerate() {
        for (m, vm) in labels.iter().enumerate() {
            s.set(a, m, ordinary_hopf_s(*va, *vm, p, conv)?.value);
        }
    }
    let sinv = s
        .inverse()
        .map_err(|_| Error::Structural("restricted ordinary Hopf matrix is singular".into()))?;
    let unit_row: Vec<CycloNum> = (0..n)
        .map(|m| s.get(0, m).inv())
        .collect::<Result<_>>()
        .map_err(|_| Error::Structural("ordinary Hopf matrix has a zero in the unit row".into()))?;
    let mut values = vec![0u64; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut acc = CycloNum::zero(order);
                for m in 0..n {
                    let term = &(&(s.get(a, m) * s.get(b, m)) * sinv.get(m, c)) * &unit_row[m];
                    acc += &term;
                }
                match acc.to_integer() {
                    Some(k) if k >= 0 => values[(a * n + b) * n + c] = k as u64,
                    _ => {
                        return Err(Error::Structural(format!(
                            "Verlinde value for ({}, {}, {}) is {acc}, not a nonnegative integer",
                            labels[a], labels[b], labels[c]
                        )))
                    }
                }
            }
        }
    }
    let basis = labels.iter().map(|l| l.to_module()).collect();
    Ok(FusionTable::from_fn(RingKind::SemiSimple, p, basis, |a, b, c| values[(a * n + b) * n + c]))
}

/// Column `ℓ` of the projective Verlinde sum: `R_0 := U^-_p`, `R_p := U^+_p`.
fn vertrip_target(l: u32, p: u32) -> Target {
    match l {
        0 => Target::Top(Minus),
        l if l == p => Target::Top(Plus),
        l => Target::Proj(l),
    }
}

/// Row label `R_j` of the projective Verlinde sum.
fn vertrip_label(j: u32, p: u32) -> QgLabel {
    match j {
        0 => QgLabel::U(Minus, p),
        j if j == p => QgLabel::U(Plus, p),
        j => QgLabel::R(Plus, j),
    }
}

/// `S^x` on `R_1..R_{p-1}` and `S^P` on the simple projectives (whose x-insertion is the identity).
fn vertrip_sx(v: QgLabel, l: u32, p: u32, conv: Convention) -> Result<CycloNum> {
    let ins = if l == 0 || l == p { Insertion::ModP } else { Insertion::X };
    log_hopf_target(v, vertrip_target(l, p), ins, p, conv)
}

/// Precomputed pieces of the projective Verlinde sum for one `p`.
pub struct ProjectiveVerlinde {
    p: u32,
    conv: Convention,
    sp: ExactMatrix,
    sp_inv: ExactMatrix,
    unit_sx_inv: Vec<CycloNum>,
}

impl ProjectiveVerlinde {
    pub fn new(p: u32, conv: Convention) -> Result<Self> {
        let n = p as usize + 1;
        let mut sp = ExactMatrix::zeros(n, n, 2 * p);
        for j in 0..=p {
            for l in 0..=p {
                let v = log_hopf_target(vertrip_label(j, p), vertrip_target(l, p), Insertion::ModP, p, conv)?;
                sp.set(j as usize, l as usize, v);
            }
        }
        let sp_inv = sp
            .inverse()
            .map_err(|_| Error::Structural("S^P restricted to R_0..R_p is singular".into()))?;
        let unit_sx_inv = (0..=p)
            .map(|l| vertrip_sx(QgLabel::U(Plus, 1), l, p, conv)?.inv())
            .collect::<Result<_>>()?;
        Ok(ProjectiveVerlinde {
            p,
            conv,
            sp,
            sp_inv,
            unit_sx_inv,
        })
    }

    /// `N_{U^+_i, R_j}^{R_k}` from the Hopf-side sum, exact.
    pub fn coefficient(&self, i: u32, j: u32, k: u32) -> Result<i64> {
        let p = self.p;
        if !(1..p).contains(&i) || j > p || k > p {
            return Err(Error::Parameter(format!("indices ({i}, {j}, {k}) out of range for p = {p}")));
        }
        let mut acc = CycloNum::zero(2 * p);
        for l in 0..=p {
            let sx = vertrip_sx(QgLabel::U(Plus, i), l, p, self.conv)?;
            let term = &(&(&sx * self.sp.get(j as usize, l as usize)) * self.sp_inv.get(l as usize, k as usize))
                * &self.unit_sx_inv[l as usize];
            acc += &term;
        }
        acc.to_integer()
            .ok_or_else(|| Error::Structural(format!("projective Verlinde sum {acc} is not an integer")))
    }
}

/// Single coefficient of the projective Verlinde formula.
pub fn verlinde_projective(i: u32, j: u32, k: u32, p: u32) -> Result<i64> {
    ProjectiveVerlinde::new(p, Convention::Consistent)?.coefficient(i, j, k)
}

/// `N_{X^+_i, R_j}^{R_k}` read from the fusion closure, where the multiplicity of
/// `R_k` is that of `P^+_k` plus that of `P^-_{p-k}`.
pub fn closure_projective_coefficient(t: &FusionTable, i: u32, j: u32, k: u32) -> Result<i64> {
    let p = t.param();
    let module = |j: u32| match j {
        0 => ModuleLabel::X(Minus, p),
        j if j == p => ModuleLabel::X(Plus, p),
        j => ModuleLabel::P(Plus, j),
    };
    let prod = t.product(&ModuleLabel::X(Plus, i), &module(j))?;
    let n = match k {
        0 => prod.coeff(&ModuleLabel::X(Minus, p)),
        k if k == p => prod.coeff(&ModuleLabel::X(Plus, p)),
        k => prod.coeff(&ModuleLabel::P(Plus, k)) + prod.coeff(&ModuleLabel::P(Minus, p - k)),
    };
    Ok(n as i64)
}

/// Compares the whole projective Verlinde table with the fusion closure.
pub fn check_projective_verlinde(p: u32) -> Result<Check> {
    let t = build_wp_fusion_table(p)?;
    let pv = ProjectiveVerlinde::new(p, Convention::Consistent)?;
    let mut bad = Vec::new();
    let mut count = 0;
    for i in 1..p {
        for j in 0..=p {
            for k in 0..=p {
                count += 1;
                let hopf = pv.coefficient(i, j, k)?;
                let oracle = closure_projective_coefficient(&t, i, j, k)?;
                if hopf != oracle {
                    bad.push(format!("N(U+{i}, R{j}; R{k}) = {hopf} vs closure {oracle}"));
                }
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{count} coefficients match the closure")
    } else {
        bad.join("; ")
    };
    Ok(Check::new("projective Verlinde formula", bad.is_empty(), detail))
}

/// Coefficients `(a, b)` of `Φ_{U,W}` recovered from normalized logarithmic invariants:
/// `a = S^x_{U,W}/S^x_{1,W}` and `b = (S^P_{U,W} - a·S^P_{1,W})/S^x_{1,W}`.
pub fn extract_ab(u: QgLabel, w: Target, p: u32, conv: Convention) -> Result<(CycloNum, CycloNum)> {
    let unit = QgLabel::U(Plus, 1);
    let sp = |v| log_hopf_target(v, w, Insertion::ModP, p, conv);
    match w {
        Target::Proj(_) => {
            let sx = |v| log_hopf_target(v, w, Insertion::X, p, conv);
            let sx1 = sx(unit)?;
            let a = sx(u)?.checked_div(&sx1)?;
            let b = (&sp(u)? - &(&a * &sp(unit)?)).checked_div(&sx1)?;
            Ok((a, b))
        }
        Target::Top(_) => Ok((sp(u)?.checked_div(&sp(unit)?)?, CycloNum::zero(2 * p))),
        Target::Simple(..) => Err(Error::Parameter("a/b extraction needs a projective target".into())),
    }
}

/// Convention-consistency suite for the ordinary and logarithmic invariants.
pub fn convention_suite(p: u32, conv: Convention) -> Result<Report> {
    let mut rep = Report::new(format!("hopf-convention-{conv:?}"), p);
    let basis = qg_basis(p);
    let unit = QgLabel::U(Plus, 1);
    let s = |v, w| ordinary_hopf_s(v, w, p, conv).map(|h| h.value);

    let mut asym = Vec::new();
    for &v in &basis {
        for &w in &basis {
            if s(v, w)? != s(w, v)? {
                asym.push(format!("({v}, {w})"));
            }
        }
    }
    rep.push(Check::new("ordinary S symmetric", asym.is_empty(), summarize(&asym)));

    let mut bad = Vec::new();
    for &v in &basis {
        let d = qdim(v, p, conv)?;
        if s(v, unit)? != d || s(unit, v)? != d {
            bad.push(format!("{v}"));
        }
    }
    rep.push(Check::new("S(V,1) = S(1,V) = qdim(V)", bad.is_empty(), summarize(&bad)));

    let mut nonzero = Vec::new();
    for &v in basis.iter().filter(|v| v.is_projective(p)) {
        if !qdim(v, p, conv)?.is_zero() {
            nonzero.push(format!("{v}"));
        }
    }
    rep.push(Check::new(
        "projectives have zero quantum dimension",
        nonzero.is_empty(),
        summarize(&nonzero),
    ));

    let mut bad = Vec::new();
    for &w in &simples_below_p(p) {
        let target = Target::of(w, p)?;
        let dw = qdim(w, p, conv)?;
        for &v in &basis {
            let phi = open_hopf_target(v, target, p, conv);
            if s(v, w)? != &dw * &phi.id_coeff {
                bad.push(format!("({v}, {w})"));
            }
        }
    }
    rep.push(Check::new("S(V,W) = qdim(W)·Φ(V,W)", bad.is_empty(), summarize(&bad)));

    let oracle = semisimplify(&build_wp_fusion_table(p)?)?;
    let (ok, detail) = match verlinde_semisimple(p, conv) {
        Ok(t) if t == oracle => (true, "matches the semi-simplified closure".to_string()),
        Ok(_) => (false, "differs from the semi-simplified closure".to_string()),
        Err(e) => (false, e.to_string()),
    };
    rep.push(Check::new("semi-simple Verlinde formula", ok, detail));

    let proj: Vec<QgLabel> = basis.iter().copied().filter(|v| v.is_projective(p)).collect();
    let mut asym = Vec::new();
    for &v in &proj {
        for &w in &proj {
            let a = log_hopf_target(v, Target::of(w, p)?, Insertion::ModP, p, conv)?;
            let b = log_hopf_target(w, Target::of(v, p)?, Insertion::ModP, p, conv)?;
            if a != b {
                asym.push(format!("({v}, {w})"));
            }
        }
    }
    rep.push(Check::new("S^P symmetric on projectives", asym.is_empty(), summarize(&asym)));
    Ok(rep)
}

fn summarize(items: &[String]) -> String {
    match items.len() {
        0 => "none".into(),
        n if n <= 6 => items.join(", "),
        n => format!("{} cases, e.g. {}", n, items[..6].join(", ")),
    }
}

/// Vanishing and nilpotency laws, trace identities, a/b extraction and the
/// two-dimensional Verlinde recursion.
pub fn hopf_laws(p: u32, conv: Convention) -> Result<Report> {
    let mut rep = Report::new("hopf-laws", p);
    let basis = qg_basis(p);
    let order = 2 * p;
    let unit = QgLabel::U(Plus, 1);

    let mut bad = Vec::new();
    for &a in basis.iter().filter(|v| !v.is_projective(p)) {
        for &pr in basis.iter().filter(|v| v.is_projective(p)) {
            for (v, w) in [(pr, a), (a, pr)] {
                if !ordinary_hopf_s(v, w, p, conv)?.value.is_zero() {
                    bad.push(format!("({v}, {w})"));
                }
            }
        }
    }
    rep.push(Check::new("S(projective, simple) = 0", bad.is_empty(), summarize(&bad)));

    let mut bad = Vec::new();
    for &v in basis.iter().filter(|v| matches!(v, QgLabel::R(..))) {
        for j in 1..p {
            let w = Target::Proj(j);
            let phi = open_hopf_target(v, w, p, conv);
            let sx = log_hopf_target(v, w, Insertion::X, p, conv)?;
            if !phi.id_coeff.is_zero() || !sx.is_zero() {
                bad.push(format!("({v}, {w})"));
            }
        }
    }
    rep.push(Check::new("Φ(R,R) nilpotent and S^x(R,R) = 0", bad.is_empty(), summarize(&bad)));

    let mut bad_ins = Vec::new();
    let mut bad_ab = Vec::new();
    for w in Target::projective(p) {
        for &v in &basis {
            let phi = open_hopf_target(v, w, p, conv);
            if let Target::Proj(_) = w {
                let sx = log_hopf_target(v, w, Insertion::X, p, conv)?;
                let sx1 = log_hopf_target(unit, w, Insertion::X, p, conv)?;
                if sx != &phi.id_coeff * &sx1 {
                    bad_ins.push(format!("({v}, {w})"));
                }
            }
            let (a, b) = extract_ab(v, w, p, conv)?;
            if a != phi.id_coeff || b != phi.nil_coeff {
                bad_ab.push(format!("({v}, {w})"));
            }
        }
    }
    rep.push(Check::new("S^x(U,W) = a(U,W)·S^x(1,W)", bad_ins.is_empty(), summarize(&bad_ins)));
    rep.push(Check::new("a/b extraction reproduces Φ", bad_ab.is_empty(), summarize(&bad_ab)));

    let t = build_wp_fusion_table(p)?;
    let mut bad = Vec::new();
    for w in Target::projective(p) {
        let ab: Vec<(CycloNum, CycloNum)> = t
            .basis()
            .iter()
            .map(|l| extract_ab(QgLabel::from_module(l, p)?, w, p, conv))
            .collect::<Result<_>>()?;
        let d = t.dim();
        for x in 0..d {
            for y in x..d {
                let mut sa = CycloNum::zero(order);
                let mut sb = CycloNum::zero(order);
                for z in 0..d {
                    let n = t.n(x, y, z) as i64;
                    if n > 0 {
                        sa += &ab[z].0.scale_int(n);
                        sb += &ab[z].1.scale_int(n);
                    }
                }
                let ra = &ab[x].0 * &ab[y].0;
                let rb = &(&ab[x].0 * &ab[y].1) + &(&ab[x].1 * &ab[y].0);
                if sa != ra || sb != rb {
                    bad.push(format!("({}, {}) at {w}", t.basis()[x], t.basis()[y]));
                }
            }
        }
    }
    rep.push(Check::new("two-dimensional Verlinde recursion", bad.is_empty(), summarize(&bad)));
    Ok(rep)
}

/// Regular-representation matrices `(N_m)_{b,c} = N_{m,b}^c` over `Q(ζ_{2p})`.
pub fn regular_matrix(t: &FusionTable, m: &ModuleLabel, order: u32) -> Result<ExactMatrix> {
    Ok(ExactMatrix::from_ints(&t.fusion_matrix(m)?, order))
}

/// Block decomposition of a table's regular representation under `(X^-_1, X^+_2)`.
pub fn ring_blocks(t: &FusionTable) -> Result<BlockReport> {
    let p = t.param();
    let order = 2 * p;
    let j = regular_matrix(t, &ModuleLabel::X(Minus, 1), order)?;
    let y = regular_matrix(t, &ModuleLabel::X(Plus, 2), order)?;
    block_diagonalize_pair(&j, &y, p)
}

fn phi_matrix(op: &EndOp) -> ExactMatrix {
    let m = op.matrix();
    let order = op.id_coeff.order();
    ExactMatrix::from_fn(2, 2, order, |i, j| m[i][j].clone())
}

/// Invertible `T` with `T·B(g) = Φ(g)·T` for all supplied pairs, if one exists.
fn intertwiner(pairs: &[(ExactMatrix, ExactMatrix)], order: u32) -> Option<ExactMatrix> {
    // Unknowns t_{rc} in row-major order; each pair contributes 4 linear equations.
    let mut rows: Vec<Vec<CycloNum>> = Vec::new();
    for (b, phi) in pairs {
        for r in 0..2 {
            for c in 0..2 {
                let mut eq = vec![CycloNum::zero(order); 4];
                for k in 0..2 {
                    eq[r * 2 + k] += b.get(k, c);
                    eq[k * 2 + c] += &(-phi.get(r, k));
                }
                rows.push(eq);
            }
        }
    }
    let sys = ExactMatrix::from_fn(rows.len(), 4, order, |i, j| rows[i][j].clone());
    let ker = kernel(&sys);
    let to_mat = |v: &[CycloNum]| ExactMatrix::from_fn(2, 2, order, |i, j| v[i * 2 + j].clone());
    let mut candidates: Vec<Vec<CycloNum>> = ker.clone();
    for w in 1..=3i64 {
        let mut acc = vec![CycloNum::zero(order); 4];
        for (k, v) in ker.iter().enumerate() {
            for i in 0..4 {
                acc[i] += &v[i].scale_int(w.pow(k as u32) + k as i64);
            }
        }
        candidates.push(acc);
    }
    candidates.iter().map(|v| to_mat(v)).find(|m| m.inverse().is_ok())
}

/// Identification of indecomposable summands of the regular representations with
/// open Hopf link representations `Φ_{·,W}`.
pub fn identify_blocks(p: u32) -> Result<Report> {
    let mut rep = Report::new("blocks", p);
    let order = 2 * p;
    let conv = Convention::Printed;

    // Grothendieck ring.
    let g = grothendieck_table(p)?;
    let gb = ring_blocks(&g)?;
    let q = &gb.change_of_basis;
    let qinv = q.inverse()?;
    let conj: Vec<(ModuleLabel, ExactMatrix)> = g
        .basis()
        .iter()
        .map(|l| Ok((*l, qinv.mul(&regular_matrix(&g, l, order)?)?.mul(q)?)))
        .collect::<Result<_>>()?;
    for b in &gb.blocks {
        let (target, ok, detail) = match b.size {
            1 => {
                let target = if b.j == 0 { Target::Top(Plus) } else { Target::Top(Minus) };
                let mut mism = Vec::new();
                for (l, m) in &conj {
                    let phi = open_hopf_target(QgLabel::from_module(l, p)?, target, p, conv);
                    if *m.get(b.offset, b.offset) != phi.id_coeff {
                        mism.push(l.to_string());
                    }
                }
                (target, mism.is_empty(), summarize(&mism))
            }
            2 => {
                let target = Target::Proj(p - b.j);
                let pairs: Vec<(ExactMatrix, ExactMatrix)> = conj
                    .iter()
                    .map(|(l, m)| {
                        let phi = open_hopf_target(QgLabel::from_module(l, p)?, target, p, conv);
                        Ok((gb.block_of(m, b), phi_matrix(&phi)))
                    })
                    .collect::<Result<_>>()?;
                match intertwiner(&pairs, order) {
                    Some(_) => (target, true, "invertible intertwiner found".to_string()),
                    None => (target, false, "no invertible intertwiner".to_string()),
                }
            }
            k => (Target::Proj(1), false, format!("unexpected block size {k}")),
        };
        rep.push(Check::new(
            format!("Grothendieck block j = {} (size {}) ~ Φ(·, {target})", b.j, b.size),
            ok,
            detail,
        ));
    }

    // Tensor ring.
    let t = build_wp_fusion_table(p)?;
    let tb = ring_blocks(&t)?;
    let q = &tb.change_of_basis;
    let qinv = q.inverse()?;
    let conj: Vec<(ModuleLabel, ExactMatrix)> = t
        .basis()
        .iter()
        .map(|l| Ok((*l, qinv.mul(&regular_matrix(&t, l, order)?)?.mul(q)?)))
        .collect::<Result<_>>()?;
    let y_form = &tb.y_form;
    let mut three_ok = true;
    let mut three_count = 0;
    for b in &tb.blocks {
        match b.size {
            1 => {
                let target = match b.j {
                    0 => Target::Top(Plus),
                    j if j == p => Target::Top(Minus),
                    j => Target::Simple(Sign::from_value(b.j_value), p - j),
                };
                let mut mism = Vec::new();
                for (l, m) in &conj {
                    let phi = open_hopf_target(QgLabel::from_module(l, p)?, target, p, conv);
                    if *m.get(b.offset, b.offset) != phi.id_coeff {
                        mism.push(l.to_string());
                    }
                }
                rep.push(Check::new(
                    format!("tensor block j = {} (size 1) ~ Φ(·, {target})", b.j),
                    mism.is_empty(),
                    summarize(&mism),
                ));
            }
            3 => {
                three_count += 1;
                let blk = tb.block_of(y_form, b).shift(&b.lambda);
                if blk.mul(&blk)?.is_zero() {
                    three_ok = false;
                }
            }
            _ => three_ok = false,
        }
    }
    rep.push(Check::new(
        "no 3×3 tensor block satisfies (B - λ)² = 0",
        three_ok && three_count == (p - 1) as usize,
        format!("{three_count} three-dimensional blocks"),
    ));

    let mut bad = Vec::new();
    for w in Target::all(p) {
        for v in qg_basis(p) {
            let phi = open_hopf_target(v, w, p, conv);
            let m = phi_matrix(&phi).shift(&phi.id_coeff);
            if !m.mul(&m)?.is_zero() {
                bad.push(format!("({v}, {w})"));
            }
        }
    }
    rep.push(Check::new("every Φ(g) satisfies (Φ - a)² = 0", bad.is_empty(), summarize(&bad)));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rep_property_small_p() {
        for p in 2..=4 {
            let t = build_wp_fusion_table(p).unwrap();
            for conv in [Convention::Printed, Convention::Consistent] {
                for w in Target::all(p) {
                    let r = check_rep_property(&t, w, p, conv).unwrap();
                    assert!(r.holds(), "p = {p}, {w}, {conv:?}: {:?}", r.to_check());
                }
            }
        }
    }

    #[test]
    fn projective_verlinde_examples() {
        assert_eq!(verlinde_projective(1, 1, 1, 2).unwrap(), 1);
        for p in 2..=4 {
            for j in 0..=p {
                for k in 0..=p {
                    assert_eq!(verlinde_projective(1, j, k, p).unwrap(), i64::from(j == k));
                }
            }
            assert!(check_projective_verlinde(p).unwrap().passed());
        }
        assert!(verlinde_projective(0, 1, 1, 3).is_err());
    }

    #[test]
    fn semisimple_verlinde_by_convention() {
        for p in 2..=5 {
            let oracle = semisimplify(&build_wp_fusion_table(p).unwrap()).unwrap();
            assert_eq!(verlinde_semisimple(p, Convention::Consistent).unwrap(), oracle);
        }
        assert!(verlinde_semisimple(3, Convention::Printed).is_err());
    }

    #[test]
    fn consistent_convention_passes_suite() {
        for p in 2..=5 {
            let r = convention_suite(p, Convention::Consistent).unwrap();
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
            let r = hopf_laws(p, Convention::Consistent).unwrap();
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
        assert!(!convention_suite(3, Convention::Printed).unwrap().all_passed());
    }

    #[test]
    fn blocks_identify() {
        for p in 2..=4 {
            let r = identify_blocks(p).unwrap();
            assert!(r.all_passed(), "p = {p}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
