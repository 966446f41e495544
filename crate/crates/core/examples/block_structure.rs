//! Joint block decomposition of the regular representation under X^-_1 and X^+_2.

use logverlinde::hopf::ring_blocks;
use logverlinde::rings::{build_wp_fusion_table, grothendieck_table};
use logverlinde::Result;

fn main() -> Result<()> {
    for p in 2..=4 {
        let g = ring_blocks(&grothendieck_table(p)?)?;
        let t = ring_blocks(&build_wp_fusion_table(p)?)?;
        println!("p = {p}");
        println!("  Grothendieck: {:?}", g.block_sizes());
        println!("  tensor ring:  {:?}", t.block_sizes());
        for b in &t.blocks {
            println!("    j={} J={} lambda={} size {}", b.j, b.j_value, b.lambda, b.size);
        }
    }
    Ok(())
}
