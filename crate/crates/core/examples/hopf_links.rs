//! Open Hopf link operators and the ordinary and logarithmic invariants.

use logverlinde::hopf::{log_hopf_s, open_hopf, ordinary_hopf_s, qdim, qg_basis, Convention, Insertion, QgLabel};
use logverlinde::Result;

fn main() -> Result<()> {
    let p = 3;
    let conv = Convention::Consistent;
    let r1: QgLabel = "R+1".parse()?;
    for v in qg_basis(p) {
        let op = open_hopf(v, r1, p, conv)?;
        println!("Phi({v}, R+1) = {} + ({}) x", op.id_coeff, op.nil_coeff);
    }
    for v in qg_basis(p) {
        println!(
            "{v}: qdim {}, S(., U+2) = {}, S^P(., R+1) = {}, S^x(., R+1) = {}",
            qdim(v, p, conv)?,
            ordinary_hopf_s(v, "U+2".parse()?, p, conv)?.value,
            log_hopf_s(v, r1, Insertion::ModP, p, conv)?.value,
            log_hopf_s(v, r1, Insertion::X, p, conv)?.value,
        );
    }
    Ok(())
}
