//! Tensor ring of W_p from the closure of X^+_2 and X^-_1, with its quotients.

use logverlinde::rings::{build_wp_fusion_table, grothendieck_table, semisimplify, ModuleLabel};
use logverlinde::Result;

fn main() -> Result<()> {
    let p: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let t = build_wp_fusion_table(p)?;
    println!("p = {p}: {} labels", t.dim());
    println!("associative: {}", t.associativity_violation().is_none());
    let x2: ModuleLabel = "X+2".parse()?;
    for b in t.basis() {
        let prod = t.product(&x2, b)?;
        let terms: Vec<String> = prod.terms().map(|(l, n)| format!("{n}{l}")).collect();
        println!("  X+2 x {b} = {}", terms.join(" + "));
    }
    println!("Grothendieck ring: {} labels", grothendieck_table(p)?.dim());
    println!("semi-simplification: {} labels", semisimplify(&t)?.dim());
    Ok(())
}
