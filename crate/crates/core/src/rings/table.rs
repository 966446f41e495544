use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::label::ModuleLabel;
use crate::error::{Error, Result};

/// Which ring a [`FusionTable`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingKind {
    SimpleProjective,
    Grothendieck,
    SemiSimple,
    Affine,
    SF,
}

/// Finite sum of basis labels with nonnegative multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    terms: BTreeMap<ModuleLabel, u64>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(l: ModuleLabel) -> Self {
        Self::from_terms([(l, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ModuleLabel, u64)>) -> Self {
        let mut e = Self::zero();
        for (l, n) in terms {
            e.add_term(l, n);
        }
        e
    }

    pub fn add_term(&mut self, l: ModuleLabel, n: u64) {
        if n > 0 {
            *self.terms.entry(l).or_insert(0) += n;
        }
    }

    pub fn coeff(&self, l: &ModuleLabel) -> u64 {
        self.terms.get(l).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModuleLabel, &u64)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for (l, n) in other.terms() {
            e.add_term(*l, *n);
        }
        e
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, n)| if *n == 1 { l.to_string() } else { format!("{n}·{l}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Structure constants `N_{a,b}^c` of a based ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    kind: RingKind,
    /// `p` for `W_p` rings, `d` for SF, the level `k` for affine `sl₂`.
    param: u32,
    basis: Vec<ModuleLabel>,
    index: HashMap<ModuleLabel, usize>,
    constants: Vec<u64>,
}

impl FusionTable {
    /// Builds a table from a closure giving `N_{a,b}^c` on basis indices.
    pub fn from_fn(
        kind: RingKind,
        param: u32,
        basis: Vec<ModuleLabel>,
        mut f: impl FnMut(usize, usize, usize) -> u64,
    ) -> Self {
        let n = basis.len();
        let mut constants = vec![0u64; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    constants[(a * n + b) * n + c] = f(a, b, c);
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        FusionTable {
            kind,
            param,
            basis,
            index,
            constants,
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn param(&self) -> u32 {
        self.param
    }

    pub fn basis(&self) -> &[ModuleLabel] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, l: &ModuleLabel) -> Result<usize> {
        self.index
            .get(l)
            .copied()
            .ok_or_else(|| Error::Parameter(format!("label {l} is not in the basis")))
    }

    /// `N_{a,b}^c` by basis index.
    pub fn n(&self, a: usize, b: usize, c: usize) -> u64 {
        let d = self.dim();
        self.constants[(a * d + b) * d + c]
    }

    pub fn coefficient(&self, a: &ModuleLabel, b: &ModuleLabel, c: &ModuleLabel) -> Result<u64> {
        Ok(self.n(self.position(a)?, self.position(b)?, self.position(c)?))
    }

    /// Product of two basis labels.
    pub fn product(&self, a: &ModuleLabel, b: &ModuleLabel) -> Result<RingElement> {
        let (i, j) = (self.position(a)?, self.position(b)?);
        Ok(RingElement::from_terms(
            self.basis.iter().enumerate().map(|(c, l)| (*l, self.n(i, j, c))),
        ))
    }

    /// Tensor product extended bilinearly.
    pub fn tensor(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (la, na) in a.terms() {
            for (lb, nb) in b.terms() {
                for (l, n) in self.product(la, lb)?.terms() {
                    out.add_term(*l, n * na * nb);
                }
            }
        }
        Ok(out)
    }

    /// `(N_m)_{b,c} = N_{m,b}^c`.
    pub fn fusion_matrix(&self, m: &ModuleLabel) -> Result<Vec<Vec<i64>>> {
        let a = self.position(m)?;
        let d = self.dim();
        Ok((0..d)
            .map(|b| (0..d).map(|c| self.n(a, b, c) as i64).collect())
            .collect())
    }

    /// Index of the tensor unit, if some basis element acts as the identity.
    pub fn unit(&self) -> Option<usize> {
        let d = self.dim();
        (0..d).find(|&u| (0..d).all(|b| (0..d).all(|c| self.n(u, b, c) == u64::from(b == c))))
    }

    /// First violation of commutativity, if any.
    pub fn commutativity_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a + 1..d {
                for c in 0..d {
                    if self.n(a, b, c) != self.n(b, a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First violation of associativity `(a⊗b)⊗c = a⊗(b⊗c)`, if any.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let lhs: u64 = (0..d).map(|x| self.n(a, b, x) * self.n(x, c, e)).sum();
                        let rhs: u64 = (0..d).map(|x| self.n(b, c, x) * self.n(a, x, e)).sum();
                        if lhs != rhs {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        }
        None
    }

    /// Whether another table has identical constants after relabeling through `map`.
    ///
    /// `map` sends labels of `self` to labels of `other`; it must be a bijection.
    pub fn isomorphic_via(
        &self,
        other: &FusionTable,
        map: impl Fn(&ModuleLabel) -> ModuleLabel,
    ) -> Result<bool> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        let idx: Vec<usize> = self
            .basis
            .iter()
            .map(|l| other.position(&map(l)))
            .collect::<Result<_>>()?;
        let d = self.dim();
        Ok((0..d).all(|a| {
            (0..d).all(|b| (0..d).all(|c| self.n(a, b, c) == other.n(idx[a], idx[b], idx[c])))
        }))
    }

    pub fn to_json(&self) -> FusionTableJson {
        let d = self.dim();
        let mut constants = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let n = self.n(a, b, c);
                    if n != 0 {
                        constants.push((self.basis[a], self.basis[b], self.basis[c], n));
                    }
                }
            }
        }
        FusionTableJson {
            p: self.param,
            ring_kind: self.kind,
            basis: self.basis.clone(),
            constants,
        }
    }

    pub fn from_json(doc: &FusionTableJson) -> Result<Self> {
        let index: HashMap<ModuleLabel, usize> =
            doc.basis.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let d = doc.basis.len();
        let mut constants = vec![0u64; d * d * d];
        for (a, b, c, n) in &doc.constants {
            let pos = |l: &ModuleLabel| {
                index
                    .get(l)
                    .copied()
                    .ok_or_else(|| Error::Parameter(format!("label {l} is not in the basis")))
            };
            constants[(pos(a)? * d + pos(b)?) * d + pos(c)?] = *n;
        }
        Ok(FusionTable {
            kind: doc.ring_kind,
            param: doc.p,
            basis: doc.basis.clone(),
            index,
            constants,
        })
    }
}

/// JSON document for a [`FusionTable`]; constants list nonzero entries `[a, b, c, N]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct FusionTableJson {
    pub p: u32,
    pub ring_kind: RingKind,
    pub basis: Vec<ModuleLabel>,
    pub constants: Vec<(ModuleLabel, ModuleLabel, ModuleLabel, u64)>,
}
