//! Compares the printed and the consistent sign conventions for the closed forms.

use logverlinde::hopf::{convention_suite, Convention};
use logverlinde::Result;

fn main() -> Result<()> {
    for p in 2..=5 {
        for conv in [Convention::Printed, Convention::Consistent] {
            let r = convention_suite(p, conv)?;
            println!("p = {p}, {conv:?}: {} of {} checks pass", r.checks.len() - r.failures().count(), r.checks.len());
            for c in r.failures() {
                println!("  FAIL {}: {}", c.name, c.detail);
            }
        }
    }
    Ok(())
}
