//! Characters, pseudo-characters and their modular transformations.
//!
//! Numerics run in `f64` complex arithmetic; the modular `S`-matrix on the
//! character basis is also assembled exactly in a cyclotomic field so that the
//! comparison with Hopf link invariants can be decided by exact zero tests.

mod laws;
mod ratio;
mod schi;
mod series;
mod sf;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rings::Sign;

pub use laws::*;
pub use ratio::*;
pub use schi::*;
pub use series::*;
pub use sf::*;

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tau {
    re: f64,
    im: f64,
}

impl Tau {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(im > 0.0) || !re.is_finite() || !im.is_finite() {
            return Err(Error::Parameter(format!("tau = {re}+{im}i is not in the upper half-plane")));
        }
        Ok(Tau { re, im })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Tau::new(z.re, z.im)
    }

    pub fn re(self) -> f64 {
        self.re
    }

    pub fn im(self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `-1/τ`.
    pub fn s(self) -> Tau {
        let z = -1.0 / self.to_complex();
        Tau { re: z.re, im: z.im }
    }

    /// `τ + 1`.
    pub fn t(self) -> Tau {
        Tau { re: self.re + 1.0, im: self.im }
    }

    /// Default sample points: `2i`, `0.3+1.7i`, `i`.
    pub fn defaults() -> [Tau; 3] {
        [Tau { re: 0.0, im: 2.0 }, Tau { re: 0.3, im: 1.7 }, Tau { re: 0.0, im: 1.0 }]
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.re == 0.0 {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for Tau {
    type Err = Error;

    /// Accepts `a+bi`, `a-bi`, `bi` and `i`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot parse tau {s:?}; expected a+bi"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t.strip_suffix('i').ok_or_else(bad)?;
        // Split at the last sign that is not an exponent sign or the leading sign.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let parse_im = |x: &str| -> Result<f64> {
            match x {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => x.parse().map_err(|_| bad()),
            }
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        Tau::new(re, parse_im(im)?)
    }
}

/// Identifies a character or pseudo-character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharId {
    /// `ch[X^±_s]`.
    ChX(Sign, u32),
    /// `ch[P^±_s]`.
    ChP(Sign, u32),
    /// `pch[X^±_s]`, written `X0_s` when the sign is `+`.
    Pch(Sign, u32),
    /// `χ^±` of `SF^±_d`.
    Sf(Sign),
    /// `χ^±_θ` of `SF^±(θ)_d`.
    SfTheta(Sign),
    /// Character of the indecomposable `ŜF^±_d`.
    SfHat(Sign),
}

impl CharId {
    fn sign_char(e: Sign) -> char {
        match e {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for CharId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = Self::sign_char;
        match *self {
            CharId::ChX(e, s) => write!(f, "X{}{s}", c(e)),
            CharId::ChP(e, s) => write!(f, "P{}{s}", c(e)),
            CharId::Pch(Sign::Plus, s) => write!(f, "X0{s}"),
            CharId::Pch(Sign::Minus, s) => write!(f, "pchX-{s}"),
            CharId::Sf(e) => write!(f, "SF{}", c(e)),
            CharId::SfTheta(e) => write!(f, "SFth{}", c(e)),
            CharId::SfHat(e) => write!(f, "SFhat{}", c(e)),
        }
    }
}

impl FromStr for CharId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("unknown character label {s:?}"));
        let sign = |ch: char| match ch {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(bad()),
        };
        let split = |rest: &str| -> Result<(Sign, u32)> {
            let mut it = rest.chars();
            let e = sign(it.next().ok_or_else(bad)?)?;
            let n = it.as_str().parse().map_err(|_| bad())?;
            Ok((e, n))
        };
        if let Some(rest) = s.strip_prefix("SFhat") {
            return Ok(CharId::SfHat(sign(rest.chars().next().ok_or_else(bad)?)?));
        }
        if let Some(rest) = s.strip_prefix("SFth") {
            return Ok(CharId::SfTheta(sign(rest.chars().next().ok_or_else(bad)?)?));
        }
        if let Some(rest) = s.strip_prefix("SF") {
            return Ok(CharId::Sf(sign(rest.chars().next().ok_or_else(bad)?)?));
        }
        if let Some(rest) = s.strip_prefix("pchX") {
            let (e, n) = split(rest)?;
            return Ok(CharId::Pch(e, n));
        }
        if let Some(rest) = s.strip_prefix("X0") {
            return Ok(CharId::Pch(Sign::Plus, rest.parse().map_err(|_| bad())?));
        }
        if let Some(rest) = s.strip_prefix('X') {
            let (e, n) = split(rest)?;
            return Ok(CharId::ChX(e, n));
        }
        if let Some(rest) = s.strip_prefix('P') {
            let (e, n) = split(rest)?;
            return Ok(CharId::ChP(e, n));
        }
        Err(bad())
    }
}

impl Serialize for CharId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CharId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_parsing() {
        let t: Tau = "0.3+1.7i".parse().unwrap();
        assert_eq!((t.re(), t.im()), (0.3, 1.7));
        assert_eq!("2i".parse::<Tau>().unwrap(), Tau::new(0.0, 2.0).unwrap());
        assert_eq!("i".parse::<Tau>().unwrap(), Tau::new(0.0, 1.0).unwrap());
        assert_eq!("-0.5+1e-1i".parse::<Tau>().unwrap(), Tau::new(-0.5, 0.1).unwrap());
        assert!("bogus".parse::<Tau>().is_err());
        assert!("1-2i".parse::<Tau>().is_err());
        assert!("3".parse::<Tau>().is_err());
    }

    #[test]
    fn char_labels_round_trip() {
        for c in [
            CharId::ChX(Sign::Minus, 3),
            CharId::ChP(Sign::Plus, 1),
            CharId::Pch(Sign::Plus, 2),
            CharId::Pch(Sign::Minus, 2),
            CharId::SfTheta(Sign::Minus),
            CharId::SfHat(Sign::Plus),
            CharId::Sf(Sign::Plus),
        ] {
            assert_eq!(c.to_string().parse::<CharId>().unwrap(), c);
        }
    }
}
