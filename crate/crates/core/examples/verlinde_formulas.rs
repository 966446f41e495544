//! Semi-simple and projective Verlinde formulas against the closure table.

use logverlinde::hopf::{check_projective_verlinde, verlinde_semisimple, Convention};
use logverlinde::rings::{build_wp_fusion_table, semisimplify};
use logverlinde::Result;

fn main() -> Result<()> {
    for p in 2..=5 {
        let ss = semisimplify(&build_wp_fusion_table(p)?)?;
        let v = verlinde_semisimple(p, Convention::Consistent)?;
        let c = check_projective_verlinde(p)?;
        println!("p = {p}: semi-simple {}, projective {:?} ({})", v == ss, c.status, c.detail);
    }
    Ok(())
}
