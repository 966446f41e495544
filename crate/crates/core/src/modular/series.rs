//! Dedekind eta, the theta series of the lattice `√(2p)Z` and the `W_p` characters.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{CharId, Tau};
use crate::error::{Error, Result};
use crate::rings::Sign;

/// Default number of factors in the eta product.
pub const DEFAULT_TRUNC: usize = 400;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `η(τ) = q^{1/24} Π_{n ≤ trunc} (1 − q^n)` with `q = e^{2πiτ}`.
pub fn eta(tau: Tau, trunc: usize) -> Complex64 {
    let t = tau.to_complex();
    let q = (2.0 * PI * I * t).exp();
    let mut acc = (2.0 * PI * I * t / 24.0).exp();
    let mut qn = q;
    for _ in 0..trunc {
        acc *= Complex64::new(1.0, 0.0) - qn;
        qn *= q;
        if qn.norm() < 1e-300 {
            break;
        }
    }
    acc
}

/// Range of `n` such that the terms `e^{πiτ(s+2pn)²/2p}` outside it are below `1e−30`.
fn window(s: i64, p: u32, tau: Tau) -> std::ops::RangeInclusive<i64> {
    let two_p = 2.0 * p as f64;
    let reach = (70.0 * two_p / (PI * tau.im())).sqrt();
    let lo = ((-reach - s as f64) / two_p).floor() as i64 - 1;
    let hi = ((reach - s as f64) / two_p).ceil() as i64 + 1;
    lo..=hi
}

fn theta_sum(s: i64, p: u32, tau: Tau, weight: impl Fn(f64) -> f64) -> Complex64 {
    let t = tau.to_complex();
    let two_p = 2 * p as i64;
    window(s, p, tau)
        .map(|n| {
            let m = (s + two_p * n) as f64;
            (PI * I * t * m * m / two_p as f64).exp() * weight(m / two_p as f64)
        })
        .sum()
}

/// `θ_{s,p}(τ) = Σ_{j ∈ s/√(2p) + √(2p)Z} e^{πiτ j²}`.
pub fn theta(s: i64, p: u32, tau: Tau) -> Complex64 {
    theta_sum(s, p, tau, |_| 1.0)
}

/// `θ'_{s,p}(τ) = Σ (j/√(2p)) e^{πiτ j²}` over the same coset.
pub fn theta_prime(s: i64, p: u32, tau: Tau) -> Complex64 {
    theta_sum(s, p, tau, |x| x)
}

fn check_index(s: u32, lo: u32, hi: u32, what: &str) -> Result<()> {
    if s < lo || s > hi {
        return Err(Error::Parameter(format!("{what} index {s} outside {lo}..={hi}")));
    }
    Ok(())
}

/// Evaluates a `W_p` character or pseudo-character at `τ`.
pub fn char_value(c: CharId, p: u32, tau: Tau, trunc: usize) -> Result<Complex64> {
    if p < 2 {
        return Err(Error::Parameter("p must be at least 2".into()));
    }
    let pi = p as i64;
    let eta = eta(tau, trunc);
    let t = tau.to_complex();
    let chx = |e: Sign, s: u32| -> Complex64 {
        let (k, sign) = match e {
            Sign::Plus => (pi - s as i64, 1.0),
            Sign::Minus => (s as i64, -1.0),
        };
        (theta(k, p, tau) * (s as f64 / p as f64) + theta_prime(k, p, tau) * (2.0 * sign)) / eta
    };
    Ok(match c {
        CharId::ChX(e, s) => {
            check_index(s, 1, p, "character")?;
            chx(e, s)
        }
        CharId::ChP(e, s) => {
            check_index(s, 1, p - 1, "projective character")?;
            let s = match e {
                Sign::Plus => s,
                Sign::Minus => p - s,
            };
            chx(Sign::Plus, s) * 2.0 + chx(Sign::Minus, p - s) * 2.0
        }
        CharId::Pch(e, s) => {
            check_index(s, 1, p, "pseudo-character")?;
            match e {
                Sign::Plus => -4.0 * I * t * theta_prime(pi - s as i64, p, tau) / eta,
                Sign::Minus => 4.0 * I * t * theta_prime(s as i64, p, tau) / eta,
            }
        }
        other => return Err(Error::Parameter(format!("{other} is not a W_p character"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tau(re: f64, im: f64) -> Tau {
        Tau::new(re, im).unwrap()
    }

    #[test]
    fn eta_at_i() {
        // Γ(1/4) / (2 π^{3/4})
        let gamma_quarter = 3.625_609_908_221_908_f64;
        let expected = gamma_quarter / (2.0 * PI.powf(0.75));
        let v = eta(tau(0.0, 1.0), DEFAULT_TRUNC);
        assert_relative_eq!(v.re, 0.768_225_422_3, epsilon = 1e-10);
        assert_relative_eq!(v.re, expected, epsilon = 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn eta_t_transform() {
        let t = tau(0.0, 2.0);
        let lhs = eta(t.t(), DEFAULT_TRUNC);
        let rhs = (I * PI / 12.0).exp() * eta(t, DEFAULT_TRUNC);
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn theta_prime_vanishes_on_symmetric_cosets() {
        for p in 2..5 {
            assert!(theta_prime(0, p, tau(0.3, 1.7)).norm() < 1e-15);
            assert!(theta_prime(p as i64, p, tau(0.3, 1.7)).norm() < 1e-15);
        }
    }

    #[test]
    fn theta_reflection() {
        let t = tau(0.1, 0.9);
        for p in 2..5u32 {
            for s in 0..=p as i64 {
                let a = theta(s, p, t);
                let b = theta(2 * p as i64 - s, p, t);
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn theta_matches_direct_sum() {
        let t = tau(0.0, 2.0);
        let direct: f64 = (-100i64..=100)
            .map(|n| {
                let m = (1 + 4 * n) as f64;
                (-PI * 2.0 * m * m / 4.0).exp()
            })
            .sum();
        assert!((theta(1, 2, t).re - direct).abs() < 1e-12);
    }

    #[test]
    fn projective_character_is_sum() {
        let t = tau(0.3, 1.7);
        for p in 2..5u32 {
            for s in 1..p {
                let lhs = char_value(CharId::ChP(Sign::Plus, s), p, t, 400).unwrap();
                let rhs = char_value(CharId::ChX(Sign::Plus, s), p, t, 400).unwrap() * 2.0
                    + char_value(CharId::ChX(Sign::Minus, p - s), p, t, 400).unwrap() * 2.0;
                assert!((lhs - rhs).norm() < 1e-12);
                let other = char_value(CharId::ChP(Sign::Minus, p - s), p, t, 400).unwrap();
                assert!((lhs - other).norm() < 1e-12);
            }
            assert!(char_value(CharId::Pch(Sign::Plus, p), p, t, 400).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn x1_at_2i_matches_q_expansion() {
        // ch[X+1] for p=2 is (θ_{1,2}/2 + 2θ'_{1,2})/η.
        let t = tau(0.0, 2.0);
        let v = char_value(CharId::ChX(Sign::Plus, 1), 2, t, 400).unwrap();
        let q = (-4.0 * PI).exp();
        let mut th = 0.0;
        let mut thp = 0.0;
        for n in -30i64..=30 {
            let m = (1 + 4 * n) as f64;
            let w = q.powf(m * m / 8.0);
            th += w;
            thp += m / 4.0 * w;
        }
        let mut eta = q.powf(1.0 / 24.0);
        for n in 1..200 {
            eta *= 1.0 - q.powi(n);
        }
        let expected = (th / 2.0 + 2.0 * thp) / eta;
        assert!(v.im.abs() < 1e-14);
        assert!(v.re > 0.0);
        assert!((v.re - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn truncation_stability() {
        let t = tau(0.0, 0.4);
        for c in [CharId::ChX(Sign::Plus, 1), CharId::Pch(Sign::Plus, 1)] {
            let a = char_value(c, 3, t, 400).unwrap();
            let b = char_value(c, 3, t, 800).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
    }
}
