//! Run a verification suite programmatically and print the JSON report.

use logverlinde::fixtures::Fixtures;
use logverlinde::report::{emit_report, Format};
use logverlinde::suites::{run_suite, Suite, SuiteConfig};
use logverlinde::Result;

fn main() -> Result<()> {
    let suite: Suite = std::env::args().nth(1).unwrap_or_else(|| "fusion".into()).parse()?;
    let cfg = SuiteConfig::new(2, Fixtures::load_default()?);
    let report = run_suite(suite, &cfg)?;
    print!("{}", emit_report(&report, Format::Json));
    Ok(())
}
