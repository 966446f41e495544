//! Open Hopf link operators, ordinary and logarithmic Hopf link invariants of the
//! restricted quantum group at `q = e^{iπ/p}`, and the Verlinde-side identities
//! built from them.
//!
//! Everything is evaluated from closed forms in `Q(ζ_{2p})`. Quantum-group labels
//! `U^±_s`, `R^±_s` live in their own namespace ([`QgLabel`]) and are matched to the
//! vertex-algebra labels `X^±_s`, `P^±_s` only through [`QgLabel::from_module`].
//!
//! Two sign conventions are offered. [`Convention::Printed`] reproduces the closed
//! forms as written. [`Convention::Consistent`] changes the sign `ε''` on simple
//! targets when `ε' = -` by `(-1)^{p+1}` and restores the `ε^{p+j}` factor in
//! `S^{P}_{R^ε_i, R_j}`; with it the ordinary S-matrix is symmetric, every
//! projective has quantum dimension zero, and the semi-simple Verlinde formula
//! holds for every `p`.

mod checks;
mod reconstruct;

pub use checks::*;
pub use reconstruct::{reconstruct_tensor_ring, Reconstruction};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{brace, sign_pow, sin_ratio, two_cos, CycloNum};
use crate::error::{Error, Result};
use crate::rings::{ModuleLabel, Sign};

/// Simple `U^±_s` (`1 <= s <= p`) or projective cover `R^±_s` (`1 <= s < p`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QgLabel {
    U(Sign, u32),
    R(Sign, u32),
}

impl QgLabel {
    /// Dictionary `X ↔ U`, `P ↔ R`; `P^±_p` is normalized to `U^±_p`.
    pub fn from_module(l: &ModuleLabel, p: u32) -> Result<Self> {
        match l.normalized(p) {
            ModuleLabel::X(e, s) => QgLabel::U(e, s).checked(p),
            ModuleLabel::P(e, s) => QgLabel::R(e, s).checked(p),
            other => Err(Error::Parameter(format!("{other} has no quantum-group counterpart"))),
        }
    }

    pub fn to_module(self) -> ModuleLabel {
        match self {
            QgLabel::U(e, s) => ModuleLabel::X(e, s),
            QgLabel::R(e, s) => ModuleLabel::P(e, s),
        }
    }

    /// Validates index ranges for the given `p`.
    pub fn checked(self, p: u32) -> Result<Self> {
        let ok = match self {
            QgLabel::U(_, s) => (1..=p).contains(&s),
            QgLabel::R(_, s) => (1..p).contains(&s),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Parameter(format!("{self} is out of range for p = {p}")))
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            QgLabel::U(e, _) | QgLabel::R(e, _) => e,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            QgLabel::U(_, s) | QgLabel::R(_, s) => s,
        }
    }

    pub fn is_projective(self, p: u32) -> bool {
        match self {
            QgLabel::U(_, s) => s == p,
            QgLabel::R(..) => true,
        }
    }
}

impl fmt::Display for QgLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = |e: Sign| if e == Sign::Plus { '+' } else { '-' };
        match *self {
            QgLabel::U(e, s) => write!(f, "U{}{s}", sym(e)),
            QgLabel::R(e, s) => write!(f, "R{}{s}", sym(e)),
        }
    }
}

impl FromStr for QgLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("malformed quantum-group label {s:?}"));
        let mut chars = s.chars();
        let fam = chars.next().ok_or_else(bad)?;
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(bad()),
        };
        let idx: u32 = chars.as_str().parse().map_err(|_| bad())?;
        match fam {
            'U' => Ok(QgLabel::U(sign, idx)),
            'R' => Ok(QgLabel::R(sign, idx)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for QgLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QgLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All `U^±_s` and `R^±_s`, in the canonical `X/P` basis order.
pub fn qg_basis(p: u32) -> Vec<QgLabel> {
    let mut v: Vec<QgLabel> = (1..=p).flat_map(|s| [QgLabel::U(Sign::Plus, s), QgLabel::U(Sign::Minus, s)]).collect();
    v.extend((1..p).flat_map(|s| [QgLabel::R(Sign::Plus, s), QgLabel::R(Sign::Minus, s)]));
    v
}

/// The module `W` whose endomorphisms carry open Hopf link operators, after
/// identifying `R^-_j` with `R_{p-j} = R^+_{p-j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// `U^ε_s` with `s < p`.
    Simple(Sign, u32),
    /// `U^ε_p`.
    Top(Sign),
    /// `R_j`, `1 <= j < p`.
    Proj(u32),
}

impl Target {
    pub fn of(w: QgLabel, p: u32) -> Result<Self> {
        Ok(match w.checked(p)? {
            QgLabel::U(e, s) if s == p => Target::Top(e),
            QgLabel::U(e, s) => Target::Simple(e, s),
            QgLabel::R(Sign::Plus, j) => Target::Proj(j),
            QgLabel::R(Sign::Minus, j) => Target::Proj(p - j),
        })
    }

    pub fn end_dim(self) -> usize {
        match self {
            Target::Proj(_) => 2,
            _ => 1,
        }
    }

    /// A representative label.
    pub fn label(self, p: u32) -> QgLabel {
        match self {
            Target::Simple(e, s) => QgLabel::U(e, s),
            Target::Top(e) => QgLabel::U(e, p),
            Target::Proj(j) => QgLabel::R(Sign::Plus, j),
        }
    }

    /// Every target for `p`: simples, the two simple projectives, and `R_1..R_{p-1}`.
    pub fn all(p: u32) -> Vec<Target> {
        let mut v: Vec<Target> = (1..p)
            .flat_map(|s| [Target::Simple(Sign::Plus, s), Target::Simple(Sign::Minus, s)])
            .collect();
        v.push(Target::Top(Sign::Plus));
        v.push(Target::Top(Sign::Minus));
        v.extend((1..p).map(Target::Proj));
        v
    }

    /// The projective targets `U^±_p`, `R_j`.
    pub fn projective(p: u32) -> Vec<Target> {
        let mut v = vec![Target::Top(Sign::Plus), Target::Top(Sign::Minus)];
        v.extend((1..p).map(Target::Proj));
        v
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Target::Simple(e, s) => write!(f, "{}", QgLabel::U(e, s)),
            Target::Top(Sign::Plus) => write!(f, "U+p"),
            Target::Top(Sign::Minus) => write!(f, "U-p"),
            Target::Proj(j) => write!(f, "R{j}"),
        }
    }
}

/// Sign conventions for the closed forms (see the module docs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    Printed,
    Consistent,
}

/// `a·e + b·x` in `End(W)`, with `x² = 0`; `end_dim = 1` forces `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndOp {
    pub id_coeff: CycloNum,
    pub nil_coeff: CycloNum,
    pub end_dim: usize,
}

impl EndOp {
    pub fn scalar(a: CycloNum) -> Self {
        let order = a.order();
        EndOp {
            id_coeff: a,
            nil_coeff: CycloNum::zero(order),
            end_dim: 1,
        }
    }

    pub fn dual(a: CycloNum, b: CycloNum) -> Self {
        EndOp {
            id_coeff: a,
            nil_coeff: b,
            end_dim: 2,
        }
    }

    pub fn zero(order: u32, end_dim: usize) -> Self {
        EndOp {
            id_coeff: CycloNum::zero(order),
            nil_coeff: CycloNum::zero(order),
            end_dim,
        }
    }

    /// `(a₁e + b₁x)∘(a₂e + b₂x) = a₁a₂e + (a₁b₂ + b₁a₂)x`.
    pub fn compose(&self, other: &EndOp) -> EndOp {
        EndOp {
            id_coeff: &self.id_coeff * &other.id_coeff,
            nil_coeff: &(&self.id_coeff * &other.nil_coeff) + &(&self.nil_coeff * &other.id_coeff),
            end_dim: self.end_dim.max(other.end_dim),
        }
    }

    pub fn add(&self, other: &EndOp) -> EndOp {
        EndOp {
            id_coeff: &self.id_coeff + &other.id_coeff,
            nil_coeff: &self.nil_coeff + &other.nil_coeff,
            end_dim: self.end_dim.max(other.end_dim),
        }
    }

    pub fn scale_int(&self, k: i64) -> EndOp {
        EndOp {
            id_coeff: self.id_coeff.scale_int(k),
            nil_coeff: self.nil_coeff.scale_int(k),
            end_dim: self.end_dim,
        }
    }

    /// Matrix of left multiplication on the basis `(e, x)`, column convention.
    pub fn matrix(&self) -> [[CycloNum; 2]; 2] {
        let z = CycloNum::zero(self.id_coeff.order());
        [
            [self.id_coeff.clone(), z],
            [self.nil_coeff.clone(), self.id_coeff.clone()],
        ]
    }
}

/// Which trace or insertion produced a Hopf value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Insertion {
    Id,
    X,
    ModP,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfValue {
    pub value: CycloNum,
    pub insertion: Insertion,
}

fn int(p: u32, k: i64) -> CycloNum {
    CycloNum::from_int(2 * p, k)
}

fn ratio(a: i64, b: i64, p: u32) -> CycloNum {
    sin_ratio(a, b, p).expect("denominator index is never a multiple of p here")
}

/// `ε''` on a simple non-projective target `U^ε_s` for `V = U^{ε'}_{s'}`.
fn eps2_simple(e: Sign, e1: Sign, p: u32, conv: Convention) -> i64 {
    let printed = if e == Sign::Minus && e1 == Sign::Minus { -1 } else { 1 };
    match (conv, e1) {
        (Convention::Consistent, Sign::Minus) => printed * sign_pow(p as i64 + 1),
        _ => printed,
    }
}

/// `ε''` on `U^ε_p`: `1` if `ε = +`, else `ε'^p`.
fn eps2_top(e: Sign, e1: Sign, p: u32) -> i64 {
    match e {
        Sign::Plus => 1,
        Sign::Minus => e1.pow(p as i64),
    }
}

/// The open Hopf link operator `Φ_{V,W} ∈ End(W)`.
pub fn open_hopf(v: QgLabel, w: QgLabel, p: u32, conv: Convention) -> Result<EndOp> {
    let v = v.checked(p)?;
    Ok(open_hopf_target(v, Target::of(w, p)?, p, conv))
}

/// [`open_hopf`] with an already normalized target.
pub fn open_hopf_target(v: QgLabel, w: Target, p: u32, conv: Convention) -> EndOp {
    let pi = p as i64;
    match (w, v) {
        (Target::Simple(e, s), QgLabel::U(e1, s1)) => {
            let (s, s1) = (s as i64, s1 as i64);
            let c = sign_pow(s1 + 1) * eps2_simple(e, e1, p, conv);
            EndOp::scalar(ratio(s * s1, s, p).scale_int(c))
        }
        (Target::Simple(..), QgLabel::R(..)) => EndOp::scalar(int(p, 0)),
        (Target::Top(e), QgLabel::U(e1, s1)) => {
            let s1 = s1 as i64;
            EndOp::scalar(int(p, e.pow(s1 + 1) * eps2_top(e, e1, p) * s1))
        }
        (Target::Top(e), QgLabel::R(e1, i)) => {
            let i = i as i64;
            EndOp::scalar(int(p, e.pow(i + 1) * eps2_top(e, e1, p) * 2 * pi))
        }
        (Target::Proj(j), QgLabel::U(e, i)) => {
            let (i, j) = (i as i64, j as i64);
            let c = sign_pow(i + 1) * e.pow(pi + j);
            let den = brace(j, p).inv().expect("{j} is nonzero for 0 < j < p");
            let a = &brace(i * j, p) * &den;
            let b = &(&brace((i + 1) * j, p).scale_int(i - 1) - &brace((i - 1) * j, p).scale_int(i + 1)) * &den;
            EndOp::dual(a.scale_int(c), b.scale_int(c))
        }
        (Target::Proj(j), QgLabel::R(e, i)) => {
            let (i, j) = (i as i64, j as i64);
            let c = sign_pow(i + 1) * e.pow(pi + j) * 2 * pi;
            EndOp::dual(int(p, 0), two_cos(i * j, p).scale_int(c))
        }
    }
}

/// Quantum dimension of a simple non-projective `U^ε_s`, per convention.
fn qdim_simple(e: Sign, s: u32, p: u32, conv: Convention) -> CycloNum {
    let s = s as i64;
    let sign = match conv {
        Convention::Printed => e.value(),
        Convention::Consistent => e.pow(p as i64 + 1),
    };
    ratio(s, 1, p).scale_int(sign * sign_pow(s + 1))
}

/// Ordinary Hopf link invariant `S_{V,W}` (categorical trace of `Φ_{V,W}`).
///
/// `Printed` evaluates `(-1)^{s'+1}εε'·sin(πss'/p)/sin(π/p)`; `Consistent` uses
/// `qdim(W)·Φ_{V,W}`. Both vanish whenever either argument is projective.
pub fn ordinary_hopf_s(v: QgLabel, w: QgLabel, p: u32, conv: Convention) -> Result<HopfValue> {
    let (v, w) = (v.checked(p)?, w.checked(p)?);
    let value = match (v, w) {
        (QgLabel::U(e1, s1), QgLabel::U(e, s)) if s < p && s1 < p => match conv {
            Convention::Printed => {
                let (s, s1) = (s as i64, s1 as i64);
                ratio(s * s1, 1, p).scale_int(sign_pow(s1 + 1) * e.value() * e1.value())
            }
            Convention::Consistent => {
                let phi = open_hopf_target(v, Target::Simple(e, s), p, conv);
                &qdim_simple(e, s, p, conv) * &phi.id_coeff
            }
        },
        _ => int(p, 0),
    };
    Ok(HopfValue {
        value,
        insertion: Insertion::Id,
    })
}

/// `qdim(V) = S_{V, U^+_1}`; for a projective cover, the sum over its four
/// composition factors `2[U^ε_s] + 2[U^{-ε}_{p-s}]`.
pub fn qdim(v: QgLabel, p: u32, conv: Convention) -> Result<CycloNum> {
    let unit = QgLabel::U(Sign::Plus, 1);
    match v.checked(p)? {
        QgLabel::R(e, s) => {
            let a = ordinary_hopf_s(QgLabel::U(e, s), unit, p, conv)?.value;
            let b = ordinary_hopf_s(QgLabel::U(e.flip(), p - s), unit, p, conv)?.value;
            Ok((&a + &b).scale_int(2))
        }
        u => Ok(ordinary_hopf_s(u, unit, p, conv)?.value),
    }
}

/// Logarithmic Hopf link invariant `S^{P}_{V,W}` or `S^{x}_{V,W}` for projective `W`.
pub fn log_hopf_s(v: QgLabel, w: QgLabel, insertion: Insertion, p: u32, conv: Convention) -> Result<HopfValue> {
    let v = v.checked(p)?;
    let target = Target::of(w, p)?;
    let value = log_hopf_target(v, target, insertion, p, conv)?;
    Ok(HopfValue { value, insertion })
}

/// [`log_hopf_s`] with an already normalized target.
pub fn log_hopf_target(v: QgLabel, w: Target, insertion: Insertion, p: u32, conv: Convention) -> Result<CycloNum> {
    let pi = p as i64;
    match (w, insertion) {
        (Target::Simple(..), _) => Err(Error::Parameter(format!(
            "logarithmic invariants need a projective target, got {w}"
        ))),
        (_, Insertion::Id) => Err(Error::Parameter(
            "use ordinary_hopf_s for the identity insertion".into(),
        )),
        (Target::Top(_), Insertion::X) => Err(Error::Parameter(format!(
            "x insertion on {w}, whose endomorphism ring is one-dimensional"
        ))),
        (Target::Top(Sign::Plus), Insertion::ModP) => Ok(match v {
            QgLabel::U(_, i) => int(p, sign_pow(pi - 1) * i as i64),
            QgLabel::R(..) => int(p, sign_pow(pi - 1) * 2 * pi),
        }),
        (Target::Top(Sign::Minus), Insertion::ModP) => Ok(match v {
            QgLabel::U(e, i) => int(p, sign_pow(i as i64 - 1) * e.pow(pi) * i as i64),
            QgLabel::R(e, i) => int(p, sign_pow(i as i64 - 1) * e.pow(pi) * 2 * pi),
        }),
        (Target::Proj(j), ins) => {
            let j = j as i64;
            Ok(match (v, ins) {
                (QgLabel::U(e, i), Insertion::ModP) => {
                    let i = i as i64;
                    two_cos(i * j, p).scale_int(sign_pow(i + j + 1) * e.pow(pi + j) * i)
                }
                (QgLabel::U(e, i), _) => {
                    let i = i as i64;
                    ratio(i * j, j, p).scale_int(sign_pow(i + j + 1) * e.pow(pi + j))
                }
                (QgLabel::R(e, i), Insertion::ModP) => {
                    let i = i as i64;
                    let eps = match conv {
                        Convention::Printed => 1,
                        Convention::Consistent => e.pow(pi + j),
                    };
                    two_cos(i * j, p).scale_int(sign_pow(i + j + 1) * eps * 2 * pi)
                }
                (QgLabel::R(..), _) => int(p, 0),
            })
        }
    }
}

/// Modified trace `t_W` on `End(W)` for projective `W`, read off from the
/// invariants of the unit: `t(e) = S^P_{U^+_1,W}`, `t(x) = S^x_{U^+_1,W}`.
pub fn modified_trace(w: Target, op: &EndOp, p: u32) -> Result<CycloNum> {
    let unit = QgLabel::U(Sign::Plus, 1);
    let te = log_hopf_target(unit, w, Insertion::ModP, p, Convention::Printed)?;
    let mut t = &te * &op.id_coeff;
    if w.end_dim() == 2 {
        let tx = log_hopf_target(unit, w, Insertion::X, p, Convention::Printed)?;
        t += &(&tx * &op.nil_coeff);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    fn u(e: Sign, s: u32) -> QgLabel {
        QgLabel::U(e, s)
    }
    fn r(e: Sign, s: u32) -> QgLabel {
        QgLabel::R(e, s)
    }
    const PR: Convention = Convention::Printed;

    #[test]
    fn unit_acts_as_identity_on_projectives() {
        for p in 2..=5 {
            for j in 1..p {
                let phi = open_hopf(u(Plus, 1), r(Plus, j), p, PR).unwrap();
                assert!(phi.id_coeff.is_one() && phi.nil_coeff.is_zero());
            }
        }
    }

    #[test]
    fn printed_operator_values() {
        let phi = open_hopf(r(Plus, 1), r(Plus, 1), 3, PR).unwrap();
        assert!(phi.id_coeff.is_zero());
        assert_eq!(phi.nil_coeff, CycloNum::from_int(6, 6));
        let phi = open_hopf(u(Plus, 2), u(Plus, 1), 3, PR).unwrap();
        assert_eq!(phi.id_coeff, CycloNum::from_int(6, -1));
        assert!(open_hopf(u(Plus, 4), u(Plus, 1), 3, PR).is_err());
        // R^-_j and R^+_{p-j} share an operator.
        assert_eq!(
            open_hopf(u(Minus, 2), r(Minus, 1), 4, PR).unwrap(),
            open_hopf(u(Minus, 2), r(Plus, 3), 4, PR).unwrap()
        );
    }

    #[test]
    fn ordinary_values() {
        assert!(ordinary_hopf_s(r(Plus, 1), u(Plus, 2), 3, PR).unwrap().value.is_zero());
        assert_eq!(ordinary_hopf_s(u(Plus, 2), u(Plus, 2), 3, PR).unwrap().value, CycloNum::one(6));
        assert!(ordinary_hopf_s(u(Plus, 1), u(Plus, 1), 5, PR).unwrap().value.is_one());
        assert_eq!(qdim(u(Plus, 2), 3, PR).unwrap(), CycloNum::from_int(6, -1));
        assert!(qdim(u(Plus, 1), 4, PR).unwrap().is_one());
    }

    #[test]
    fn projective_qdim_by_convention() {
        for p in 2..=6 {
            for s in 1..p {
                for e in Sign::BOTH {
                    assert!(qdim(r(e, s), p, Convention::Consistent).unwrap().is_zero());
                    let printed = qdim(r(e, s), p, PR).unwrap().is_zero();
                    assert_eq!(printed, p % 2 == 0, "p = {p}, s = {s}");
                }
            }
        }
    }

    #[test]
    fn log_values() {
        let v = |a, b, ins| log_hopf_s(a, b, ins, 3, PR).unwrap().value;
        assert_eq!(v(u(Plus, 1), r(Plus, 1), Insertion::ModP), CycloNum::from_int(6, -1));
        assert_eq!(v(u(Plus, 2), r(Plus, 1), Insertion::X), CycloNum::one(6));
        assert!(v(r(Minus, 2), r(Plus, 1), Insertion::X).is_zero());
        assert_eq!(v(u(Minus, 2), u(Plus, 3), Insertion::ModP), CycloNum::from_int(6, 2));
        assert!(log_hopf_s(u(Plus, 1), u(Plus, 3), Insertion::X, 3, PR).is_err());
        assert!(log_hopf_s(u(Plus, 1), u(Plus, 2), Insertion::ModP, 3, PR).is_err());
    }

    #[test]
    fn trace_of_operator_gives_log_invariant() {
        for p in 2..=5 {
            for w in Target::projective(p) {
                for v in qg_basis(p) {
                    let phi = open_hopf_target(v, w, p, Convention::Consistent);
                    let t = modified_trace(w, &phi, p).unwrap();
                    let s = log_hopf_target(v, w, Insertion::ModP, p, Convention::Consistent).unwrap();
                    assert_eq!(t, s, "p = {p}, V = {v}, W = {w}");
                }
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for s in ["U+1", "U-3", "R+2", "R-1"] {
            assert_eq!(s.parse::<QgLabel>().unwrap().to_string(), s);
        }
        assert!("V+1".parse::<QgLabel>().is_err());
        let m: ModuleLabel = "P-3".parse().unwrap();
        assert_eq!(QgLabel::from_module(&m, 3).unwrap(), u(Minus, 3));
    }
}
