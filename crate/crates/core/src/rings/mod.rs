//! Fusion rings of `W_p` (simples and projective covers), their Grothendieck
//! ring and semi-simplification, the `SF⁺_d` ring and affine `sl₂` fusion.

mod label;
mod table;

pub use label::{Family, ModuleLabel, SfKind, Sign};
pub use table::{FusionTable, FusionTableJson, RingElement, RingKind};

use itertools::iproduct;

use crate::error::{Error, Result};

use ModuleLabel::{P, X};
use Sign::{Minus, Plus};

/// Integer square matrix, row-major, used for regular representations.
pub type IntMatrix = Vec<Vec<i64>>;

fn int_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k] != 0 {
                for j in 0..m {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn int_lin(a: &IntMatrix, ca: i64, b: &IntMatrix, cb: i64) -> IntMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| ca * x + cb * y).collect())
        .collect()
}

fn check_p(p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::Parameter(format!("p must be at least 2, got {p}")));
    }
    Ok(())
}

/// Canonical `W_p` basis `X⁺₁, X⁻₁, …, X⁺_p, X⁻_p, P⁺₁, P⁻₁, …, P⁺_{p-1}, P⁻_{p-1}`.
pub fn wp_basis(p: u32) -> Vec<ModuleLabel> {
    let mut b = Vec::with_capacity(4 * p as usize - 2);
    for s in 1..=p {
        b.push(X(Plus, s));
        b.push(X(Minus, s));
    }
    for s in 1..p {
        b.push(P(Plus, s));
        b.push(P(Minus, s));
    }
    b
}

/// Simple labels `X⁺₁, X⁻₁, …, X⁺_p, X⁻_p`.
pub fn wp_simple_basis(p: u32) -> Vec<ModuleLabel> {
    (1..=p).flat_map(|s| [X(Plus, s), X(Minus, s)]).collect()
}

fn wp_index(l: ModuleLabel, p: u32) -> usize {
    let e = |s: Sign| usize::from(s == Minus);
    match l.normalized(p) {
        X(s, i) => 2 * (i as usize - 1) + e(s),
        P(s, i) => 2 * p as usize + 2 * (i as usize - 1) + e(s),
        other => panic!("{other} is not a W_p label"),
    }
}

/// Regular-representation matrix of a generator, column convention:
/// column `b` holds the coefficients of `g ⊗ b`.
fn generator_matrix(p: u32, rule: impl Fn(ModuleLabel) -> Vec<(ModuleLabel, i64)>) -> IntMatrix {
    let basis = wp_basis(p);
    let n = basis.len();
    let mut m = vec![vec![0i64; n]; n];
    for (col, b) in basis.iter().enumerate() {
        for (l, k) in rule(*b) {
            m[wp_index(l, p)][col] += k;
        }
    }
    m
}

/// `X⁺₂ ⊗ b` for `b` of positive sign, from the generator rules.
fn y_rule_plus(p: u32, b: ModuleLabel) -> Vec<(ModuleLabel, i64)> {
    match b {
        X(_, 1) => vec![(X(Plus, 2), 1)],
        X(_, s) if s < p => vec![(X(Plus, s - 1), 1), (X(Plus, s + 1), 1)],
        X(_, _) => vec![(P(Plus, p - 1), 1)],
        P(_, 1) if p == 2 => vec![(X(Plus, 2), 2), (X(Minus, 2), 2)],
        P(_, 1) => vec![(P(Plus, 2).normalized(p), 1), (X(Minus, p), 2)],
        P(_, s) if s + 1 < p => vec![(P(Plus, s - 1), 1), (P(Plus, s + 1), 1)],
        P(_, _) => vec![(P(Plus, p - 2), 1), (X(Plus, p), 2)],
        other => panic!("{other} is not a W_p label"),
    }
}

fn twist(l: ModuleLabel) -> ModuleLabel {
    match l {
        X(s, i) => X(s.flip(), i),
        P(s, i) => P(s.flip(), i),
        other => other,
    }
}

/// Regular-representation matrices `M_b` (column convention) for every basis label,
/// generated from `J = M_{X⁻₁}` and `Y = M_{X⁺₂}`.
pub fn wp_regular_matrices(p: u32) -> Result<Vec<IntMatrix>> {
    check_p(p)?;
    let n = 4 * p as usize - 2;
    let j = generator_matrix(p, |b| vec![(twist(b), 1)]);
    let y = generator_matrix(p, |b| match b.sign() {
        Some(Plus) => y_rule_plus(p, b),
        _ => y_rule_plus(p, twist(b))
            .into_iter()
            .map(|(l, k)| (twist(l), k))
            .collect(),
    });
    let mut mats: Vec<Option<IntMatrix>> = vec![None; n];
    let set = |mats: &mut Vec<Option<IntMatrix>>, l: ModuleLabel, m: IntMatrix| {
        mats[wp_index(l, p)] = Some(m);
    };
    let get = |mats: &Vec<Option<IntMatrix>>, l: ModuleLabel| -> IntMatrix {
        mats[wp_index(l, p)].clone().expect("matrix computed earlier")
    };
    set(&mut mats, X(Plus, 1), int_identity(n));
    set(&mut mats, X(Plus, 2), y.clone());
    for s in 2..p {
        // X⁺₂ ⊗ X⁺_s = X⁺_{s-1} ⊕ X⁺_{s+1}
        let m = int_lin(&int_mul(&y, &get(&mats, X(Plus, s))), 1, &get(&mats, X(Plus, s - 1)), -1);
        set(&mut mats, X(Plus, s + 1), m);
    }
    // X⁺₂ ⊗ X⁺_p = P⁺_{p-1}
    let top = int_mul(&y, &get(&mats, X(Plus, p)));
    set(&mut mats, P(Plus, p - 1), top);
    if p >= 3 {
        // X⁺₂ ⊗ P⁺_{p-1} = P⁺_{p-2} ⊕ 2·X⁺_p
        let m = int_lin(&int_mul(&y, &get(&mats, P(Plus, p - 1))), 1, &get(&mats, X(Plus, p)), -2);
        set(&mut mats, P(Plus, p - 2), m);
        for s in (2..p - 1).rev() {
            // X⁺₂ ⊗ P⁺_s = P⁺_{s-1} ⊕ P⁺_{s+1}
            let m = int_lin(&int_mul(&y, &get(&mats, P(Plus, s))), 1, &get(&mats, P(Plus, s + 1)), -1);
            set(&mut mats, P(Plus, s - 1), m);
        }
    }
    for l in wp_basis(p) {
        if l.sign() == Some(Minus) {
            let m = int_mul(&j, &get(&mats, twist(l)));
            set(&mut mats, l, m);
        }
    }
    Ok(mats.into_iter().map(|m| m.expect("all labels covered")).collect())
}

/// The tensor ring on simples and projective covers of `W_p`, closed from the
/// generator rules for `X⁻₁` and `X⁺₂`.
pub fn build_wp_fusion_table(p: u32) -> Result<FusionTable> {
    let mats = wp_regular_matrices(p)?;
    let basis = wp_basis(p);
    let n = basis.len();
    let unit = wp_index(X(Plus, 1), p);
    // M_a e_unit must be e_a, and every constant a nonnegative integer.
    for (a, m) in mats.iter().enumerate() {
        for c in 0..n {
            if m[c][unit] != i64::from(a == c) {
                return Err(Error::Internal(format!(
                    "closure: {} ⊗ unit is not {}",
                    basis[a], basis[a]
                )));
            }
            for b in 0..n {
                if m[c][b] < 0 {
                    return Err(Error::Internal(format!(
                        "closure: negative coefficient in {} ⊗ {}",
                        basis[a], basis[b]
                    )));
                }
            }
        }
    }
    let t = FusionTable::from_fn(RingKind::SimpleProjective, p, basis, |a, b, c| {
        mats[a][c][b] as u64
    });
    if let Some((a, b, _)) = t.commutativity_violation() {
        return Err(Error::Internal(format!(
            "closure is not commutative at ({}, {})",
            t.basis()[a],
            t.basis()[b]
        )));
    }
    Ok(t)
}

/// Composition factors of a `W_p` basis module in the simple basis.
pub fn composition_factors(l: ModuleLabel, p: u32) -> Vec<(ModuleLabel, u64)> {
    match l.normalized(p) {
        P(e, s) => vec![(X(e, s), 2), (X(e.flip(), p - s), 2)],
        other => vec![(other, 1)],
    }
}

/// The Grothendieck ring on `[X^±_s]`.
pub fn grothendieck_table(p: u32) -> Result<FusionTable> {
    let full = build_wp_fusion_table(p)?;
    Ok(grothendieck_from(&full))
}

/// Pushes a `SimpleProjective` table through the composition-factor map.
pub fn grothendieck_from(full: &FusionTable) -> FusionTable {
    let p = full.param();
    let simples = wp_simple_basis(p);
    let fb = full.basis().to_vec();
    let pos: Vec<usize> = simples.iter().map(|l| full.position(l).unwrap()).collect();
    let comp: Vec<Vec<u64>> = fb
        .iter()
        .map(|l| {
            let mut v = vec![0u64; simples.len()];
            for (f, k) in composition_factors(*l, p) {
                v[wp_index(f, p)] += k;
            }
            v
        })
        .collect();
    FusionTable::from_fn(RingKind::Grothendieck, p, simples, |a, b, c| {
        (0..fb.len()).map(|d| full.n(pos[a], pos[b], d) * comp[d][c]).sum()
    })
}

/// Quotient by the ideal of projectives (all `P^±_s` and `X^±_p`).
pub fn semisimplify(t: &FusionTable) -> Result<FusionTable> {
    if t.kind() != RingKind::SimpleProjective {
        return Err(Error::Parameter("semisimplify expects a SimpleProjective table".into()));
    }
    let p = t.param();
    let basis: Vec<ModuleLabel> = (1..p).flat_map(|s| [X(Plus, s), X(Minus, s)]).collect();
    let pos: Vec<usize> = basis.iter().map(|l| t.position(l)).collect::<Result<_>>()?;
    Ok(FusionTable::from_fn(RingKind::SemiSimple, p, basis, |a, b, c| {
        t.n(pos[a], pos[b], pos[c])
    }))
}

/// Whether the products of every projective with every basis element are projective.
pub fn projective_ideal_violation(t: &FusionTable) -> Option<(ModuleLabel, ModuleLabel)> {
    let p = t.param();
    let basis = t.basis();
    for (a, b) in iproduct!(0..basis.len(), 0..basis.len()) {
        if !basis[a].is_wp_projective(p) {
            continue;
        }
        let bad = (0..basis.len()).any(|c| t.n(a, b, c) > 0 && !basis[c].is_wp_projective(p));
        if bad {
            return Some((basis[a], basis[b]));
        }
    }
    None
}

/// Affine `sl₂` fusion at level `k` via the sine Verlinde formula.
pub fn affine_sl2_fusion(k: u32) -> Result<FusionTable> {
    let n = k as usize + 1;
    let h = f64::from(k + 2);
    let norm = (2.0 / h).sqrt();
    let s = |a: usize, b: usize| norm * (std::f64::consts::PI * (a * b) as f64 / h).sin();
    let mut values = vec![0u64; n * n * n];
    for (a, b, c) in iproduct!(1..=n, 1..=n, 1..=n) {
        let v: f64 = (1..=n).map(|m| s(a, m) * s(b, m) * s(c, m) / s(1, m)).sum();
        let r = v.round();
        if (v - r).abs() >= 1e-9 || r < 0.0 {
            return Err(Error::Numerical(format!(
                "affine Verlinde value {v} for ({a},{b},{c}) is not a nonnegative integer"
            )));
        }
        values[((a - 1) * n + (b - 1)) * n + (c - 1)] = r as u64;
    }
    let basis = (1..=n as u32).map(ModuleLabel::Affine).collect();
    Ok(FusionTable::from_fn(RingKind::Affine, k, basis, |a, b, c| {
        values[(a * n + b) * n + c]
    }))
}

/// Structure constants of a tensor product of two based rings, compared against
/// `t` under a label dictionary `t`-label ↦ (label in `left`, label in `right`).
pub fn matches_product(
    t: &FusionTable,
    left: &FusionTable,
    right: &FusionTable,
    dict: impl Fn(&ModuleLabel) -> (ModuleLabel, ModuleLabel),
) -> Result<bool> {
    if t.dim() != left.dim() * right.dim() {
        return Ok(false);
    }
    let idx: Vec<(usize, usize)> = t
        .basis()
        .iter()
        .map(|l| {
            let (x, y) = dict(l);
            Ok((left.position(&x)?, right.position(&y)?))
        })
        .collect::<Result<_>>()?;
    let mut seen = idx.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != idx.len() {
        return Ok(false);
    }
    let d = t.dim();
    Ok(iproduct!(0..d, 0..d, 0..d).all(|(a, b, c)| {
        let (a1, a2) = idx[a];
        let (b1, b2) = idx[b];
        let (c1, c2) = idx[c];
        t.n(a, b, c) == left.n(a1, b1, c1) * right.n(a2, b2, c2)
    }))
}

/// Dictionary from the semi-simplified `W_p` ring to affine levels `(p-2, 1)`.
pub fn semisimple_affine_dictionary(l: &ModuleLabel) -> (ModuleLabel, ModuleLabel) {
    match *l {
        X(e, s) => (ModuleLabel::Affine(s), ModuleLabel::Affine(if e == Plus { 1 } else { 2 })),
        other => panic!("{other} is not in the semi-simplified ring"),
    }
}

/// The six-label `SF⁺_d` ring; for `d > 1` it is the `d = 1` ring with relabeled basis.
pub fn sf_fusion_table(d: u32) -> Result<FusionTable> {
    use ModuleLabel::Sf;
    use SfKind::{Projective, Twisted, Untwisted};
    if d < 1 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    let basis: Vec<ModuleLabel> = [Untwisted, Twisted, Projective]
        .into_iter()
        .flat_map(|k| [Sf(k, Plus, d), Sf(k, Minus, d)])
        .collect();
    let product = |a: ModuleLabel, b: ModuleLabel| -> Vec<(ModuleLabel, u64)> {
        let (Sf(ka, ea, _), Sf(kb, eb, _)) = (a, b) else { unreachable!() };
        let e = ea * eb;
        let both = |k| vec![(Sf(k, Plus, d), 2), (Sf(k, Minus, d), 2)];
        match (ka.min(kb), ka.max(kb)) {
            (Untwisted, k) => vec![(Sf(k, e, d), 1)],
            (Twisted, Twisted) => vec![(Sf(Projective, e, d), 1)],
            (Twisted, Projective) => both(Twisted),
            (Projective, Projective) => both(Projective),
            _ => unreachable!(),
        }
    };
    let table: Vec<Vec<Vec<(ModuleLabel, u64)>>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| product(*a, *b)).collect())
        .collect();
    Ok(FusionTable::from_fn(RingKind::SF, d, basis.clone(), |a, b, c| {
        table[a][b]
            .iter()
            .filter(|(l, _)| *l == basis[c])
            .map(|(_, k)| k)
            .sum()
    }))
}

/// Dictionary `SF⁺_1 ↔ W_2`: `SF± ↔ X±₁`, `SF±(θ) ↔ X±₂`, `P± ↔ P±₁`.
pub fn sf_w2_dictionary(l: &ModuleLabel) -> ModuleLabel {
    match *l {
        ModuleLabel::Sf(SfKind::Untwisted, e, _) => X(e, 1),
        ModuleLabel::Sf(SfKind::Twisted, e, _) => X(e, 2),
        ModuleLabel::Sf(SfKind::Projective, e, _) => P(e, 1),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: Sign, s: u32) -> ModuleLabel {
        X(e, s)
    }

    #[test]
    fn p2_generator_products() {
        let t = build_wp_fusion_table(2).unwrap();
        assert_eq!(t.product(&x(Plus, 2), &x(Plus, 2)).unwrap(), RingElement::basis(P(Plus, 1)));
        let expect = RingElement::from_terms([(x(Plus, 2), 2), (x(Minus, 2), 2)]);
        assert_eq!(t.product(&x(Plus, 2), &P(Plus, 1)).unwrap(), expect);
    }

    #[test]
    fn unit_acts_trivially() {
        for p in 2..=5 {
            let t = build_wp_fusion_table(p).unwrap();
            assert_eq!(t.unit(), Some(0));
            for l in t.basis() {
                assert_eq!(t.product(&x(Plus, 1), l).unwrap(), RingElement::basis(*l));
            }
        }
    }

    #[test]
    fn p3_projective_square_expands() {
        // P⁺₁ ⊗ P⁺₁ = 2·X⁺₁⊗P⁺₁ ⊕ 2·X⁻₂⊗P⁺₁ (composition factors of the first P⁺₁).
        let t = build_wp_fusion_table(3).unwrap();
        let lhs = t.product(&P(Plus, 1), &P(Plus, 1)).unwrap();
        let two = RingElement::from_terms([(x(Plus, 1), 2), (x(Minus, 2), 2)]);
        let rhs = t.tensor(&two, &RingElement::basis(P(Plus, 1))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_examples() {
        let t = build_wp_fusion_table(3).unwrap();
        let a = RingElement::from_terms([(x(Plus, 1), 1), (x(Minus, 1), 1)]);
        let b = RingElement::basis(x(Minus, 1));
        assert_eq!(t.tensor(&a, &b).unwrap(), a);
        assert!(t.tensor(&RingElement::zero(), &b).unwrap().is_zero());
        assert!(t.tensor(&RingElement::basis(x(Plus, 9)), &b).is_err());
    }

    #[test]
    fn simple_current_squares_to_identity() {
        for p in 2..=6 {
            let t = build_wp_fusion_table(p).unwrap();
            let j = t.fusion_matrix(&x(Minus, 1)).unwrap();
            assert_eq!(int_mul(&j, &j), int_identity(t.dim()));
            assert_eq!(t.fusion_matrix(&x(Plus, 1)).unwrap(), int_identity(t.dim()));
        }
    }

    #[test]
    fn grothendieck_examples() {
        let g2 = grothendieck_table(2).unwrap();
        let e = RingElement::from_terms([(x(Plus, 1), 2), (x(Minus, 1), 2)]);
        assert_eq!(g2.product(&x(Plus, 2), &x(Plus, 2)).unwrap(), e);
        let g3 = grothendieck_table(3).unwrap();
        let e = RingElement::from_terms([(x(Plus, 1), 1), (x(Plus, 3), 1)]);
        assert_eq!(g3.product(&x(Plus, 2), &x(Plus, 2)).unwrap(), e);
        assert_eq!(g3.unit(), Some(0));
        assert!(g3.associativity_violation().is_none());
        assert!(grothendieck_table(1).is_err());
    }

    #[test]
    fn semisimplification_examples() {
        let t3 = build_wp_fusion_table(3).unwrap();
        let s3 = semisimplify(&t3).unwrap();
        assert_eq!(s3.product(&x(Plus, 2), &x(Plus, 2)).unwrap(), RingElement::basis(x(Plus, 1)));
        let s2 = semisimplify(&build_wp_fusion_table(2).unwrap()).unwrap();
        assert_eq!(s2.dim(), 2);
        assert_eq!(s2.product(&x(Minus, 1), &x(Minus, 1)).unwrap(), RingElement::basis(x(Plus, 1)));
    }

    #[test]
    fn affine_examples() {
        let k0 = affine_sl2_fusion(0).unwrap();
        assert_eq!(k0.dim(), 1);
        let k1 = affine_sl2_fusion(1).unwrap();
        let a = ModuleLabel::Affine;
        assert_eq!(k1.product(&a(2), &a(2)).unwrap(), RingElement::basis(a(1)));
        let k2 = affine_sl2_fusion(2).unwrap();
        assert_eq!(k2.coefficient(&a(2), &a(2), &a(1)).unwrap(), 1);
        assert_eq!(k2.coefficient(&a(2), &a(2), &a(3)).unwrap(), 1);
    }

    #[test]
    fn sf_rules_and_w2_dictionary() {
        let t = sf_fusion_table(1).unwrap();
        let sf = |k, e| ModuleLabel::Sf(k, e, 1);
        use SfKind::*;
        assert_eq!(
            t.product(&sf(Untwisted, Minus), &sf(Untwisted, Minus)).unwrap(),
            RingElement::basis(sf(Untwisted, Plus))
        );
        assert_eq!(
            t.product(&sf(Twisted, Plus), &sf(Twisted, Minus)).unwrap(),
            RingElement::basis(sf(Projective, Minus))
        );
        let both = RingElement::from_terms([(sf(Projective, Plus), 2), (sf(Projective, Minus), 2)]);
        assert_eq!(t.product(&sf(Projective, Minus), &sf(Projective, Minus)).unwrap(), both);
        let w2 = build_wp_fusion_table(2).unwrap();
        assert!(t.isomorphic_via(&w2, sf_w2_dictionary).unwrap());
        assert!(t.associativity_violation().is_none());
        let t3 = sf_fusion_table(3).unwrap();
        assert!(t3.basis().iter().all(|l| l.index() == 3));
    }

    #[test]
    fn json_round_trip() {
        let t = build_wp_fusion_table(3).unwrap();
        let doc = t.to_json();
        let s = serde_json::to_string(&doc).unwrap();
        let back: FusionTableJson = serde_json::from_str(&s).unwrap();
        assert_eq!(FusionTable::from_json(&back).unwrap(), t);
        assert!(s.starts_with("{\"p\":3,\"ringKind\":\"SimpleProjective\",\"basis\":[\"X+1\""));
    }
}
