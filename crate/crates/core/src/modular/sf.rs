//! Characters of the symplectic fermion algebra `SF⁺_d` and their `S`, `T` laws.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{char_value, eta, CharId, LawForm, Tau};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::rings::{ModuleLabel, RingElement, SfKind, Sign};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn half(tau: Tau) -> Tau {
    Tau::new(tau.re() / 2.0, tau.im() / 2.0).expect("upper half-plane is closed under halving")
}

fn double(tau: Tau) -> Tau {
    Tau::new(tau.re() * 2.0, tau.im() * 2.0).expect("upper half-plane is closed under doubling")
}

/// Evaluates `χ^±`, `χ^±_θ` or the `ŜF^±_d` character.
pub fn sf_char_value(c: CharId, d: u32, tau: Tau, trunc: usize) -> Result<Complex64> {
    if d < 1 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    let n = 2 * d as i32;
    let e1 = eta(tau, trunc);
    let e2 = eta(double(tau), trunc);
    let eh = eta(half(tau), trunc);
    let sign = |e: Sign| e.value() as f64;
    Ok(match c {
        CharId::Sf(e) => (e2.powi(n) / e1.powi(n) + e1.powi(n) * sign(e)) * 0.5,
        CharId::SfTheta(e) => {
            (e1.powi(2 * n) / (e2.powi(n) * eh.powi(n)) + eh.powi(n) / e1.powi(n) * sign(e)) * 0.5
        }
        CharId::SfHat(_) => e2.powi(n) / e1.powi(n) * 2f64.powi(n - 1),
        other => return Err(Error::Parameter(format!("{other} is not an SF character"))),
    })
}

/// The four `S`/`T` laws of the simple `SF⁺_d` characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfLaw {
    /// `χ^±(τ+1) = e^{πid/6} χ^±(τ)`.
    ChiT,
    /// `χ^±(−1/τ) = ±(−iτ)^d/2 (χ⁺ − χ⁻) + 2^{−d−1}(χ⁺_θ − χ⁻_θ)`.
    ChiS,
    /// `χ^±_θ(τ+1) = ±e^{−πid/12} χ^±(τ)` as printed; with `χ^±_θ` on the right once corrected.
    ThetaT,
    /// `χ^±_θ(−1/τ) = ±2^{d−1}(χ⁺ + χ⁻) + ½(χ⁺_θ + χ⁻_θ)`.
    ThetaS,
}

impl SfLaw {
    pub const ALL: [SfLaw; 4] = [SfLaw::ChiT, SfLaw::ChiS, SfLaw::ThetaT, SfLaw::ThetaS];

    pub fn name(self) -> &'static str {
        match self {
            SfLaw::ChiT => "chi(tau+1)",
            SfLaw::ChiS => "chi(-1/tau)",
            SfLaw::ThetaT => "chi_theta(tau+1)",
            SfLaw::ThetaS => "chi_theta(-1/tau)",
        }
    }
}

/// Maximum over both signs of `|lhs − rhs|`.
pub fn sf_law_residual(law: SfLaw, form: LawForm, d: u32, tau: Tau, trunc: usize) -> Result<f64> {
    let v = |c: CharId, t: Tau| sf_char_value(c, d, t, trunc);
    let chi = |e, t| v(CharId::Sf(e), t);
    let th = |e, t| v(CharId::SfTheta(e), t);
    let t = tau.to_complex();
    let df = d as f64;
    let mut worst = 0.0f64;
    for e in Sign::BOTH {
        let s = e.value() as f64;
        let (lhs, rhs) = match law {
            SfLaw::ChiT => (chi(e, tau.t())?, (I * PI * df / 6.0).exp() * chi(e, tau)?),
            SfLaw::ChiS => {
                let a = (-I * t).powf(df) * (s / 2.0) * (chi(Sign::Plus, tau)? - chi(Sign::Minus, tau)?);
                let b = (th(Sign::Plus, tau)? - th(Sign::Minus, tau)?) / 2f64.powi(d as i32 + 1);
                (chi(e, tau.s())?, a + b)
            }
            SfLaw::ThetaT => {
                let base = match form {
                    LawForm::Printed => chi(e, tau)?,
                    LawForm::Corrected => th(e, tau)?,
                };
                (th(e, tau.t())?, (-I * PI * df / 12.0).exp() * s * base)
            }
            SfLaw::ThetaS => {
                let a = (chi(Sign::Plus, tau)? + chi(Sign::Minus, tau)?) * (s * 2f64.powi(d as i32 - 1));
                let b = (th(Sign::Plus, tau)? + th(Sign::Minus, tau)?) * 0.5;
                (th(e, tau.s())?, a + b)
            }
        };
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Checks all four laws at one `τ`.
pub fn verify_sf_modular(d: u32, tau: Tau, tol: f64, trunc: usize, form: LawForm) -> Result<Report> {
    let label = match form {
        LawForm::Printed => "printed",
        LawForm::Corrected => "corrected",
    };
    let mut r = Report::new("sf", d);
    for law in SfLaw::ALL {
        let res = sf_law_residual(law, form, d, tau, trunc)?;
        r.push(Check::numeric(
            format!("{label} law {} at d={d}, tau={tau}", law.name()),
            res,
            tol,
            format!("max |lhs - rhs| over both signs is {res:.3e}"),
        ));
    }
    Ok(r)
}

/// Largest deviation between the `d = 1` characters and the `W_2` characters
/// `χ^± ↔ ch[X^±_1]`, `χ^±_θ ↔ ch[X^±_2]`.
pub fn sf_w2_character_residual(tau: Tau, trunc: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for e in Sign::BOTH {
        for (sf, s) in [(CharId::Sf(e), 1), (CharId::SfTheta(e), 2)] {
            let a = sf_char_value(sf, 1, tau, trunc)?;
            let b = char_value(CharId::ChX(e, s), 2, tau, trunc)?;
            worst = worst.max((a - b).norm());
        }
    }
    Ok(worst)
}

/// Grothendieck image of `ŜF^±_d`: `2^{2d−1}[SF⁺_d] + 2^{2d−1}[SF⁻_d]`.
pub fn sf_grothendieck_image(d: u32) -> Result<RingElement> {
    if !(1..=31).contains(&d) {
        return Err(Error::Parameter("d must be in 1..=31".into()));
    }
    let m = 1u64 << (2 * d - 1);
    Ok(RingElement::from_terms(
        Sign::BOTH.map(|e| (ModuleLabel::Sf(SfKind::Untwisted, e, d), m)),
    ))
}

/// `|ch[ŜF^±_d] − Σ_ε n_ε χ^ε|` where `n_ε` are the Grothendieck multiplicities.
pub fn sf_hat_character_residual(d: u32, tau: Tau, trunc: usize) -> Result<f64> {
    let image = sf_grothendieck_image(d)?;
    let mut worst = 0.0f64;
    for e in Sign::BOTH {
        let lhs = sf_char_value(CharId::SfHat(e), d, tau, trunc)?;
        let mut rhs = Complex64::new(0.0, 0.0);
        for (l, n) in image.terms() {
            if let ModuleLabel::Sf(SfKind::Untwisted, s, _) = l {
                rhs += sf_char_value(CharId::Sf(*s), d, tau, trunc)? * (*n as f64);
            }
        }
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_i() -> Tau {
        Tau::new(0.0, 2.0).unwrap()
    }

    #[test]
    fn chi_sum_is_eta_quotient() {
        let t = two_i();
        let s = sf_char_value(CharId::Sf(Sign::Plus), 1, t, 400).unwrap()
            + sf_char_value(CharId::Sf(Sign::Minus), 1, t, 400).unwrap();
        let q = eta(double(t), 400).powi(2) / eta(t, 400).powi(2);
        assert!((s - q).norm() < 1e-12);
    }

    #[test]
    fn corrected_laws_hold_printed_theta_t_fails() {
        for d in 1..=3 {
            let c = verify_sf_modular(d, two_i(), 1e-8, 400, LawForm::Corrected).unwrap();
            assert!(c.all_passed(), "{c:?}");
            let p = verify_sf_modular(d, two_i(), 1e-8, 400, LawForm::Printed).unwrap();
            let failed: Vec<_> = p.failures().map(|c| c.name.clone()).collect();
            assert_eq!(failed.len(), 1);
            assert!(failed[0].contains("chi_theta(tau+1)"));
        }
    }

    #[test]
    fn w2_dictionary() {
        for t in Tau::defaults() {
            assert!(sf_w2_character_residual(t, 400).unwrap() < 1e-9);
        }
    }

    #[test]
    fn hat_images() {
        let m = |d| sf_grothendieck_image(d).unwrap().coeff(&ModuleLabel::Sf(SfKind::Untwisted, Sign::Plus, d));
        assert_eq!(m(1), 2);
        assert_eq!(m(2), 8);
        for d in 1..=3 {
            assert!(sf_hat_character_residual(d, two_i(), 400).unwrap() < 1e-10);
        }
    }
}
