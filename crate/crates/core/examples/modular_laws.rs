//! S-transformation laws of the W_p characters, printed and corrected forms.

use logverlinde::modular::{law_residual, LawForm, Tau, WpLaw};
use logverlinde::Result;

fn main() -> Result<()> {
    let tau: Tau = "0.3+1.7i".parse()?;
    for p in 2..=4 {
        for law in WpLaw::ALL {
            let printed = law_residual(law, LawForm::Printed, p, tau, 400)?;
            let corrected = law_residual(law, LawForm::Corrected, p, tau, 400)?;
            println!("p={p} {:<20} printed {printed:.3e}  corrected {corrected:.3e}", law.name());
        }
    }
    Ok(())
}
