//! The three `S`-transformation laws of the `W_p` (pseudo-)characters, evaluated
//! numerically on both sides.
//!
//! [`LawForm::Printed`] reproduces the laws exactly as usually quoted. Those fail
//! numerically. [`LawForm::Corrected`] is the form that actually holds: sines in
//! place of `q^{ℓs} − q^{−ℓs}` (which is `2i·sin`), an extra `(s/2p)·ch[P^+_s](−1/τ)`
//! term in the `ch[X^+_s]` law, and a factor `2` on the `ch[X^±_p]` terms.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{char_value, CharId, Tau};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::rings::Sign::{Minus, Plus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawForm {
    Printed,
    Corrected,
}

/// Which transformation law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WpLaw {
    /// `pch[X^+_s](−1/τ)`.
    Pch,
    /// `ch[X^+_s](−1/τ)`.
    ChX,
    /// `ch[P^+_s](−1/τ)`.
    ChP,
}

impl WpLaw {
    pub const ALL: [WpLaw; 3] = [WpLaw::Pch, WpLaw::ChX, WpLaw::ChP];

    pub fn name(self) -> &'static str {
        match self {
            WpLaw::Pch => "pch[X+s](-1/tau)",
            WpLaw::ChX => "ch[X+s](-1/tau)",
            WpLaw::ChP => "ch[P+s](-1/tau)",
        }
    }

    fn lhs_char(self, s: u32) -> CharId {
        match self {
            WpLaw::Pch => CharId::Pch(Plus, s),
            WpLaw::ChX => CharId::ChX(Plus, s),
            WpLaw::ChP => CharId::ChP(Plus, s),
        }
    }
}

/// Every `W_p` character value at one `τ`.
pub fn eval_characters(p: u32, tau: Tau, trunc: usize) -> Result<BTreeMap<CharId, Complex64>> {
    let mut out = BTreeMap::new();
    for e in [Plus, Minus] {
        for s in 1..=p {
            out.insert(CharId::ChX(e, s), char_value(CharId::ChX(e, s), p, tau, trunc)?);
            out.insert(CharId::Pch(e, s), char_value(CharId::Pch(e, s), p, tau, trunc)?);
            if s < p {
                out.insert(CharId::ChP(e, s), char_value(CharId::ChP(e, s), p, tau, trunc)?);
            }
        }
    }
    Ok(out)
}

fn q_pow(k: i64, p: u32) -> Complex64 {
    Complex64::from_polar(1.0, PI * k as f64 / p as f64)
}

fn sgn(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Right-hand side of a law, given the character values at `τ`.
pub fn law_rhs(law: WpLaw, form: LawForm, p: u32, s: u32, ch: &BTreeMap<CharId, Complex64>) -> Complex64 {
    let (pi, si) = (p as i64, s as i64);
    let r = (2.0 * p as f64).sqrt();
    let brace = |n: i64| q_pow(n, p) - q_pow(-n, p);
    let sin = |n: i64| (PI * n as f64 / p as f64).sin();
    let c = |id: CharId| ch[&id];
    let chp_rhs = |form: LawForm| -> Complex64 {
        match form {
            LawForm::Printed => {
                let mut acc = c(CharId::ChX(Plus, p)) * sgn(pi) + c(CharId::ChX(Minus, p)) * sgn(si);
                for l in 1..pi {
                    acc += c(CharId::ChP(Plus, l as u32)) * (q_pow(l * si, p) + q_pow(-l * si, p)) * sgn(l + si);
                }
                acc * sgn(pi) / r
            }
            LawForm::Corrected => {
                let mut acc = c(CharId::ChX(Plus, p)) * 2.0 + c(CharId::ChX(Minus, p)) * (2.0 * sgn(pi + si));
                for l in 1..pi {
                    acc += c(CharId::ChP(Plus, l as u32)) * (q_pow(l * si, p) + q_pow(-l * si, p)) * sgn(pi + si + l);
                }
                acc / r
            }
        }
    };
    match (law, form) {
        (WpLaw::Pch, LawForm::Printed) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 1..pi {
                let inner = c(CharId::ChX(Plus, l as u32)) - c(CharId::ChP(Plus, l as u32)) * (l as f64 / (2.0 * p as f64));
                acc += inner * brace(l * si) * sgn(l + si + pi);
            }
            acc * 4.0 / r
        }
        (WpLaw::Pch, LawForm::Corrected) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 1..pi {
                let inner = c(CharId::ChX(Plus, l as u32)) - c(CharId::ChP(Plus, l as u32)) * (l as f64 / (2.0 * p as f64));
                acc += inner * (sin(l * si) * sgn(l + si + pi));
            }
            acc * 4.0 / r
        }
        (WpLaw::ChX, LawForm::Printed) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 1..pi {
                acc += c(CharId::Pch(Plus, l as u32)) * brace(l * si) * sgn(l + si + pi + 1);
            }
            acc / r
        }
        (WpLaw::ChX, LawForm::Corrected) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 1..pi {
                acc += c(CharId::Pch(Plus, l as u32)) * (sin(l * si) * sgn(l + si + pi));
            }
            acc / r + chp_rhs(LawForm::Corrected) * (s as f64 / (2.0 * p as f64))
        }
        (WpLaw::ChP, form) => chp_rhs(form),
    }
}

/// Maximum over `1 ≤ s < p` of `|lhs − rhs|` for one law.
pub fn law_residual(law: WpLaw, form: LawForm, p: u32, tau: Tau, trunc: usize) -> Result<f64> {
    let at_tau = eval_characters(p, tau, trunc)?;
    let at_s = eval_characters(p, tau.s(), trunc)?;
    Ok((1..p)
        .map(|s| (at_s[&law.lhs_char(s)] - law_rhs(law, form, p, s, &at_tau)).norm())
        .fold(0.0, f64::max))
}

/// Checks all three laws at one `τ`.
pub fn verify_s_transform_wp(p: u32, tau: Tau, tol: f64, trunc: usize, form: LawForm) -> Result<Report> {
    if p < 2 {
        return Err(Error::Parameter("p must be at least 2".into()));
    }
    if tau.im() < 0.2 || tau.s().im() < 0.2 {
        return Err(Error::Parameter(format!("tau = {tau}: Im(tau) and Im(-1/tau) must be at least 0.2")));
    }
    let label = match form {
        LawForm::Printed => "printed",
        LawForm::Corrected => "corrected",
    };
    let mut r = Report::new("modular", p);
    for law in WpLaw::ALL {
        let res = law_residual(law, form, p, tau, trunc)?;
        r.push(Check::numeric(
            format!("{label} law {} at tau={tau}", law.name()),
            res,
            tol,
            format!("max |lhs - rhs| over s = 1..{} is {res:.3e}", p - 1),
        ));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taus() -> [Tau; 2] {
        [Tau::new(0.0, 2.0).unwrap(), Tau::new(0.3, 1.7).unwrap()]
    }

    #[test]
    fn corrected_laws_hold() {
        for p in 2..=5 {
            for t in taus() {
                let r = verify_s_transform_wp(p, t, 1e-8, 400, LawForm::Corrected).unwrap();
                assert!(r.all_passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn printed_laws_fail() {
        for p in 2..=4 {
            let r = verify_s_transform_wp(p, taus()[1], 1e-8, 400, LawForm::Printed).unwrap();
            assert_eq!(r.failures().count(), 3, "{r:?}");
        }
    }

    #[test]
    fn truncation_stable_residual() {
        let t = Tau::new(0.0, 1.0).unwrap();
        let a = law_residual(WpLaw::ChP, LawForm::Printed, 3, t, 400).unwrap();
        let b = law_residual(WpLaw::ChP, LawForm::Printed, 3, t, 800).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn rejects_low_tau() {
        assert!(verify_s_transform_wp(2, Tau::new(0.0, 0.1).unwrap(), 1e-8, 400, LawForm::Corrected).is_err());
    }
}
