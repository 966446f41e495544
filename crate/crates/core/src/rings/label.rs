use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A sign `±`, also used as the value `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `self^k` as `±1`.
    pub fn pow(self, k: i64) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => crate::cyclo::sign_pow(k),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_value(self.value() * rhs.value())
    }
}

/// Which simple module of `SF⁺_d` (or its projective cover) a label denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SfKind {
    /// `SF±_d`.
    Untwisted,
    /// `SF±(θ)_d`.
    Twisted,
    /// `P±_d`.
    Projective,
}

/// Label family, mirroring the variants of [`ModuleLabel`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    WpSimple,
    WpProjective,
    SFSimple,
    SFProjective,
    AffineSL2,
}

/// Basis label of a ring of modules.
///
/// String forms: `X+1`, `P-2`, `SF+1`, `SFt-1`, `SFP+2` (trailing number is `d`), `A3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleLabel {
    /// Simple `W_p`-module `X^±_s`, `1 <= s <= p`.
    X(Sign, u32),
    /// Projective cover `P^±_s`, `1 <= s < p`.
    P(Sign, u32),
    /// Simple or projective `SF⁺_d`-module.
    Sf(SfKind, Sign, u32),
    /// Integrable affine `sl₂` module with label `1..=k+1`.
    Affine(u32),
}

impl ModuleLabel {
    pub fn family(&self) -> Family {
        match self {
            ModuleLabel::X(..) => Family::WpSimple,
            ModuleLabel::P(..) => Family::WpProjective,
            ModuleLabel::Sf(SfKind::Projective, ..) => Family::SFProjective,
            ModuleLabel::Sf(..) => Family::SFSimple,
            ModuleLabel::Affine(_) => Family::AffineSL2,
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match *self {
            ModuleLabel::X(e, _) | ModuleLabel::P(e, _) | ModuleLabel::Sf(_, e, _) => Some(e),
            ModuleLabel::Affine(_) => None,
        }
    }

    pub fn index(&self) -> u32 {
        match *self {
            ModuleLabel::X(_, s) | ModuleLabel::P(_, s) | ModuleLabel::Affine(s) => s,
            ModuleLabel::Sf(_, _, d) => d,
        }
    }

    /// `P^±_p` is the simple projective `X^±_p`.
    pub fn normalized(self, p: u32) -> ModuleLabel {
        match self {
            ModuleLabel::P(e, s) if s == p => ModuleLabel::X(e, s),
            other => other,
        }
    }

    /// Whether this `W_p` label denotes a projective module.
    pub fn is_wp_projective(&self, p: u32) -> bool {
        match *self {
            ModuleLabel::P(..) => true,
            ModuleLabel::X(_, s) => s == p,
            _ => false,
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ModuleLabel::X(e, s) => write!(f, "X{}{s}", e.symbol()),
            ModuleLabel::P(e, s) => write!(f, "P{}{s}", e.symbol()),
            ModuleLabel::Sf(k, e, d) => {
                let fam = match k {
                    SfKind::Untwisted => "SF",
                    SfKind::Twisted => "SFt",
                    SfKind::Projective => "SFP",
                };
                write!(f, "{fam}{}{d}", e.symbol())
            }
            ModuleLabel::Affine(s) => write!(f, "A{s}"),
        }
    }
}

impl FromStr for ModuleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parameter(format!("malformed module label {s:?}"));
        if let Some(rest) = s.strip_prefix('A') {
            return rest.parse().map(ModuleLabel::Affine).map_err(|_| bad());
        }
        let split = s.find(['+', '-']).ok_or_else(bad)?;
        let (fam, tail) = s.split_at(split);
        let sign = if tail.starts_with('+') { Sign::Plus } else { Sign::Minus };
        let idx: u32 = tail[1..].parse().map_err(|_| bad())?;
        match fam {
            "X" => Ok(ModuleLabel::X(sign, idx)),
            "P" => Ok(ModuleLabel::P(sign, idx)),
            "SF" => Ok(ModuleLabel::Sf(SfKind::Untwisted, sign, idx)),
            "SFt" => Ok(ModuleLabel::Sf(SfKind::Twisted, sign, idx)),
            "SFP" => Ok(ModuleLabel::Sf(SfKind::Projective, sign, idx)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for ModuleLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModuleLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_strings_round_trip() {
        for s in ["X+1", "X-3", "P+2", "P-1", "SF+1", "SFt-2", "SFP+3", "A4"] {
            let l: ModuleLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("Q+1".parse::<ModuleLabel>().is_err());
        assert!("X+".parse::<ModuleLabel>().is_err());
    }

    #[test]
    fn projective_at_p_is_simple() {
        assert_eq!(ModuleLabel::P(Sign::Minus, 3).normalized(3), ModuleLabel::X(Sign::Minus, 3));
        assert_eq!(ModuleLabel::P(Sign::Minus, 2).normalized(3), ModuleLabel::P(Sign::Minus, 2));
    }
}
