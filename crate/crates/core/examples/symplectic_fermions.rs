//! Symplectic fermion characters, modular laws and the d = 1 match with W_2.

use logverlinde::modular::{sf_hat_character_residual, sf_w2_character_residual, verify_sf_modular, LawForm, Tau};
use logverlinde::rings::{build_wp_fusion_table, sf_fusion_table, sf_w2_dictionary};
use logverlinde::Result;

fn main() -> Result<()> {
    let tau: Tau = "2i".parse()?;
    for d in 1..=3 {
        for form in [LawForm::Printed, LawForm::Corrected] {
            let r = verify_sf_modular(d, tau, 1e-8, 400, form)?;
            println!("d={d} {form:?}: {} of {} laws hold", r.checks.len() - r.failures().count(), r.checks.len());
        }
        println!("d={d} SF-hat residual {:.3e}", sf_hat_character_residual(d, tau, 400)?);
    }
    println!("d=1 vs W_2 characters: {:.3e}", sf_w2_character_residual(tau, 400)?);
    let iso = sf_fusion_table(1)?.isomorphic_via(&build_wp_fusion_table(2)?, sf_w2_dictionary)?;
    println!("d=1 ring isomorphic to W_2 ring: {iso}");
    Ok(())
}
