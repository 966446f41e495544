//! Rebuild the tensor ring from socle data, U+p and the logarithmic Hopf table.

use logverlinde::hopf::reconstruct_tensor_ring;
use logverlinde::rings::build_wp_fusion_table;
use logverlinde::Result;

fn main() -> Result<()> {
    for p in 2..=4 {
        let rec = reconstruct_tensor_ring(p)?;
        match rec.table {
            Some(t) => println!("p = {p}: reconstructed, equals closure table: {}", t == build_wp_fusion_table(p)?),
            None => println!("p = {p}: {} products ambiguous", rec.ambiguous.len()),
        }
    }
    Ok(())
}
