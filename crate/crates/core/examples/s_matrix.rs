//! Exact S-matrix of the (3p-1)-dimensional character space, checked numerically.

use logverlinde::modular::{assemble_schi, schi_numeric_residual};
use logverlinde::Result;

fn main() -> Result<()> {
    let p = 3;
    let s = assemble_schi(p)?;
    println!("basis: {}", s.basis.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
    for &row in &s.basis {
        let cells: Vec<String> = s
            .basis
            .iter()
            .map(|&col| {
                let (c, e) = s.entry(row, col).expect("basis entry");
                if c.is_zero() { "0".into() } else { format!("{:.4}", c.to_complex().re / (2.0 * p as f64).powf(e as f64 / 2.0)) }
            })
            .collect();
        println!("{row:>4}: {}", cells.join(" "));
    }
    println!("S^2 = 1: {}", s.squares_to_identity()?);
    println!("numeric residual: {:.3e}", schi_numeric_residual(&s, 400)?);
    Ok(())
}
