//! Exact arithmetic in Q(ζ_2p): q-numbers, 2cos and sine ratios.

use logverlinde::cyclo::{brace, q, sin_ratio, two_cos};
use logverlinde::Result;

fn main() -> Result<()> {
    let p = 5;
    let qq = q(p);
    println!("q = {qq}, q^(2p) = {}", qq.pow(2 * p));
    // 2cos(π/5) is the golden ratio φ, so φ² = φ + 1.
    let phi = two_cos(1, p);
    let lhs = &phi * &phi;
    let rhs = &phi + &logverlinde::CycloNum::one(2 * p);
    println!("phi = {phi}, phi^2 - phi - 1 = {}", &lhs - &rhs);
    println!("{{3}}_q = {}", brace(3, p));
    let r = sin_ratio(2, 1, p)?;
    println!("sin(2π/5)/sin(π/5) = {r} ≈ {:.12}", r.to_complex().re);
    println!("as coefficients: [{}]", r.to_cyclo_string());
    Ok(())
}
