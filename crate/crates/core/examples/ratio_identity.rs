//! Comparison of S^chi ratios with Hopf link ratios, the fitted scalars and
//! the change-of-basis readings built from S^chi columns.

use logverlinde::modular::{check_empty_cells, check_ratio_identity, fit_scalars, qgr_readings};
use logverlinde::Result;

fn main() -> Result<()> {
    let p = 3;
    for c in check_ratio_identity(p)?.checks.iter().chain(check_empty_cells(p)?.checks.iter()) {
        println!("{:?} {}: {}", c.status, c.name, c.detail);
    }
    let fit = fit_scalars(p)?;
    println!("kernel dimension {}, all nonzero {}", fit.kernel_dim, fit.all_nonzero);
    for (col, v) in &fit.chi {
        println!("  c_chi({col}) = {v}");
    }
    for (reading, outcome) in qgr_readings(p)? {
        println!("{reading:?}: {outcome:?}");
    }
    Ok(())
}
