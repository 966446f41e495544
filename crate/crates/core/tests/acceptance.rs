//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion is evaluated literally. Three of them concern printed formulas
//! that do not hold as stated; those print FAIL together with an `info` line for
//! the corrected form. The harness exits nonzero only when an outcome differs from
//! the one recorded in `EXPECTED`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use logverlinde::cyclo::two_cos;
use logverlinde::fixtures::Fixtures;
use logverlinde::hopf::{
    check_projective_verlinde, check_rep_property, convention_suite, hopf_laws, identify_blocks,
    reconstruct_tensor_ring, ring_blocks, verlinde_semisimple, Convention, Target,
};
use logverlinde::modular::{
    check_ratio_identity, fit_scalars, sf_grothendieck_image, sf_hat_character_residual, sf_w2_character_residual,
    verify_s_transform_wp, verify_sf_modular, LawForm, Tau,
};
use logverlinde::report::Report;
use logverlinde::rings::{
    affine_sl2_fusion, build_wp_fusion_table, grothendieck_table, matches_product, semisimple_affine_dictionary,
    semisimplify, ModuleLabel, SfKind, Sign,
};
use logverlinde::suites::{conjugation_pair, corrected_q_gr};
use logverlinde::Result;

/// Expected outcome per criterion. The three `false` entries are printed formulas
/// that fail as written; their corrected forms are reported as `info`.
const EXPECTED: [bool; 12] = [true, false, true, true, true, true, true, false, true, true, false, true];

struct Outcome {
    pass: bool,
    detail: String,
    info: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), info: Vec::new() }
    }

    fn info(mut self, line: impl Into<String>) -> Self {
        self.info.push(line.into());
        self
    }
}

const P_RANGE: std::ops::RangeInclusive<u32> = 2..=6;

fn first_failure(r: &Report) -> String {
    r.failures().next().map(|c| format!("{}: {}", c.name, c.detail)).unwrap_or_default()
}

fn fusion_closure() -> Result<Outcome> {
    let mut worst = Duration::ZERO;
    let mut bad = Vec::new();
    for p in P_RANGE {
        let t0 = Instant::now();
        let t = build_wp_fusion_table(p)?;
        let ok = t.dim() == (4 * p - 2) as usize
            && t.associativity_violation().is_none()
            && t.commutativity_violation().is_none();
        let dt = t0.elapsed();
        worst = worst.max(dt);
        if !ok || dt > Duration::from_secs(10) {
            bad.push(p);
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("p = 2..6, slowest {worst:.2?}, failing p: {bad:?}")))
}

fn p2_matrices(fx: &Fixtures) -> Result<Outcome> {
    let m = &fx.p2;
    let g = grothendieck_table(2)?;
    let t = build_wp_fusion_table(2)?;
    let gr = conjugation_pair(&m.q_gr_printed, &m.q_gr_j_form, &m.q_gr_y_form, &g, &m.grothendieck_basis)?;
    let q6 = conjugation_pair(&m.q_tensor_printed, &m.q_tensor_j_form, &m.q_tensor_y_form, &t, &m.tensor_basis)?;
    let fixed = conjugation_pair(&corrected_q_gr(&m.q_gr_printed), &m.q_gr_j_form, &m.q_gr_y_form, &g, &m.grothendieck_basis)?;
    Ok(Outcome::new(
        gr == (true, true) && q6 == (true, true),
        format!("printed Q^gr: J {} Y {}; Q (6x6): J {} Y {}", gr.0, gr.1, q6.0, q6.1),
    )
    .info(format!("Q^gr with entry (4,3) = -4: J {} Y {}", fixed.0, fixed.1)))
}

fn jordan_structure() -> Result<Outcome> {
    let mut bad = Vec::new();
    for p in P_RANGE {
        for (name, t, middle) in [
            ("Grothendieck", grothendieck_table(p)?, vec![2]),
            ("tensor", build_wp_fusion_table(p)?, vec![1, 3]),
        ] {
            let b = ring_blocks(&t)?;
            let sizes_ok = b.block_sizes().iter().all(|(j, s)| {
                let want: &[usize] = if *j == 0 || *j == p { &[1] } else { &middle };
                s.as_slice() == want
            }) && b.block_sizes().len() == (p + 1) as usize;
            let eig_ok = b.blocks.iter().all(|blk| blk.lambda == two_cos(blk.j as i64, p));
            if !(sizes_ok && eig_ok) {
                bad.push(format!("{name} p={p}"));
            }
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("p = 2..6, failing: {bad:?}")))
}

fn representation_property() -> Result<Outcome> {
    let mut worst = Duration::ZERO;
    let mut bad = Vec::new();
    let mut checks = 0usize;
    for p in P_RANGE {
        let t0 = Instant::now();
        let t = build_wp_fusion_table(p)?;
        for w in Target::all(p) {
            let r = check_rep_property(&t, w, p, Convention::Consistent)?;
            checks += r.pairs_checked;
            if !r.holds() {
                bad.push(format!("p={p} W={w}"));
            }
        }
        worst = worst.max(t0.elapsed());
    }
    let ok = bad.is_empty() && worst < Duration::from_secs(30);
    Ok(Outcome::new(ok, format!("{checks} exact identities, slowest p {worst:.2?}, failing: {bad:?}")))
}

fn vanishing_laws() -> Result<Outcome> {
    let names = [
        "S(projective, simple) = 0",
        "Φ(R,R) nilpotent and S^x(R,R) = 0",
    ];
    let mut bad = Vec::new();
    for p in P_RANGE {
        let r = hopf_laws(p, Convention::Consistent)?;
        for n in names {
            if !r.checks.iter().any(|c| c.name == n && c.passed()) {
                bad.push(format!("p={p}: {n}"));
            }
        }
        if p % 2 == 0 {
            let printed = convention_suite(p, Convention::Printed)?;
            if !printed.checks.iter().any(|c| c.name == "projectives have zero quantum dimension" && c.passed()) {
                bad.push(format!("p={p}: qdim"));
            }
        }
    }
    let odd: Vec<String> = [3, 5]
        .iter()
        .map(|&p| {
            let printed = convention_suite(p, Convention::Printed).expect("suite runs");
            let consistent = convention_suite(p, Convention::Consistent).expect("suite runs");
            let q = |r: &Report| {
                r.checks.iter().any(|c| c.name == "projectives have zero quantum dimension" && c.passed())
            };
            format!("p={p}: printed {}, consistent {}", q(&printed), q(&consistent))
        })
        .collect();
    Ok(Outcome::new(bad.is_empty(), format!("p = 2..6, failing: {bad:?}"))
        .info(format!("odd p, projective qdim = 0: {}", odd.join("; "))))
}

fn projective_verlinde() -> Result<Outcome> {
    let mut bad = Vec::new();
    for p in P_RANGE {
        let c = check_projective_verlinde(p)?;
        if !c.passed() {
            bad.push(format!("p={p}: {}", c.detail));
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("exact, p = 2..6, failing: {bad:?}")))
}

fn semisimplification() -> Result<Outcome> {
    let mut bad = Vec::new();
    for p in P_RANGE {
        let ss = semisimplify(&build_wp_fusion_table(p)?)?;
        let aff = matches_product(&ss, &affine_sl2_fusion(p - 2)?, &affine_sl2_fusion(1)?, semisimple_affine_dictionary)?;
        let ver = verlinde_semisimple(p, Convention::Consistent)? == ss;
        if !(aff && ver) {
            bad.push(format!("p={p} affine {aff} verlinde {ver}"));
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("p = 2..6, failing: {bad:?}")))
}

fn modular_laws(fx: &Fixtures) -> Result<Outcome> {
    let taus: Vec<Tau> = fx.modular.taus.iter().map(|t| t.parse()).collect::<Result<_>>()?;
    let [lo, hi] = fx.modular.wp_p_range;
    let (tol, trunc) = (fx.modular.law_tol, fx.modular.trunc);
    let mut printed_fail = 0;
    let mut corrected_fail = 0;
    let mut total = 0;
    let mut worst = Duration::ZERO;
    let mut example = String::new();
    for p in lo..=hi {
        for &tau in &taus {
            let t0 = Instant::now();
            let r = verify_s_transform_wp(p, tau, tol, trunc, LawForm::Printed)?;
            worst = worst.max(t0.elapsed());
            total += r.checks.len();
            printed_fail += r.failures().count();
            if example.is_empty() {
                example = first_failure(&r);
            }
            corrected_fail += verify_s_transform_wp(p, tau, tol, trunc, LawForm::Corrected)?.failures().count();
        }
    }
    Ok(Outcome::new(
        printed_fail == 0 && worst < Duration::from_secs(5),
        format!("printed laws: {printed_fail} of {total} fail (e.g. {example}); slowest {worst:.2?}"),
    )
    .info(format!("corrected laws: {corrected_fail} of {total} fail")))
}

fn ratio_identity() -> Result<Outcome> {
    let mut bad = Vec::new();
    for p in 2..=5 {
        let r = check_ratio_identity(p)?;
        if !r.all_passed() {
            bad.push(format!("p={p}: {}", first_failure(&r)));
        }
        let fit = fit_scalars(p)?;
        if !(fit.kernel_dim > 0 && fit.all_nonzero) {
            bad.push(format!("p={p}: no nonzero scalars (kernel {})", fit.kernel_dim));
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("non-empty cells and scalars, p = 2..5, failing: {bad:?}")))
}

fn block_identification() -> Result<Outcome> {
    let mut bad = Vec::new();
    for p in P_RANGE {
        let r = identify_blocks(p)?;
        if !r.all_passed() {
            bad.push(format!("p={p}: {}", first_failure(&r)));
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("p = 2..6, failing: {bad:?}")))
}

fn symplectic_fermions(fx: &Fixtures) -> Result<Outcome> {
    let tau: Tau = fx.modular.sf_tau.parse()?;
    let [lo, hi] = fx.modular.sf_d_range;
    let (tol, trunc) = (fx.modular.law_tol, fx.modular.trunc);
    let mut printed = Vec::new();
    let mut corrected = 0;
    let mut other = Vec::new();
    for d in lo..=hi {
        let r = verify_sf_modular(d, tau, tol, trunc, LawForm::Printed)?;
        printed.extend(r.failures().map(|c| format!("d={d} {}", c.name)));
        corrected += verify_sf_modular(d, tau, tol, trunc, LawForm::Corrected)?.failures().count();
        if sf_hat_character_residual(d, tau, trunc)? > tol {
            other.push(format!("d={d} SF-hat character"));
        }
        if let Some(m) = fx.modular.sf_hat_multiplicities.iter().find(|m| m.d == d) {
            let img = sf_grothendieck_image(d)?;
            let plus = img.coeff(&ModuleLabel::Sf(SfKind::Untwisted, Sign::Plus, d));
            let minus = img.coeff(&ModuleLabel::Sf(SfKind::Untwisted, Sign::Minus, d));
            if plus != m.multiplicity || minus != m.multiplicity {
                other.push(format!("d={d} SF-hat image"));
            }
        }
    }
    let w2 = sf_w2_character_residual(tau, trunc)?;
    if w2 >= fx.modular.sf_w2_tol {
        other.push(format!("W_2 match {w2:.3e}"));
    }
    Ok(Outcome::new(
        printed.is_empty() && other.is_empty(),
        format!("printed law failures: {printed:?}; other failures: {other:?}; W_2 residual {w2:.1e}"),
    )
    .info(format!("corrected laws: {corrected} failures for d = {lo}..{hi}")))
}

fn reconstruction() -> Result<Outcome> {
    let mut bad = Vec::new();
    for p in 2..=3 {
        let rec = reconstruct_tensor_ring(p)?;
        if rec.table.as_ref() != Some(&build_wp_fusion_table(p)?) {
            bad.push(format!("p={p} ({} ambiguous)", rec.ambiguous.len()));
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("p = 2, 3, failing: {bad:?}")))
}

fn main() -> ExitCode {
    let fx = Fixtures::load_default().expect("bundled fixtures load");
    let criteria: Vec<(&str, Result<Outcome>)> = vec![
        ("fusion closure", fusion_closure()),
        ("p=2 explicit change-of-basis matrices", p2_matrices(&fx)),
        ("Jordan structure", jordan_structure()),
        ("representation property", representation_property()),
        ("vanishing and nilpotency laws", vanishing_laws()),
        ("projective Verlinde formula", projective_verlinde()),
        ("semi-simplification", semisimplification()),
        ("modular S-transforms as printed", modular_laws(&fx)),
        ("ratio identity", ratio_identity()),
        ("block identification", block_identification()),
        ("symplectic fermions as printed", symplectic_fermions(&fx)),
        ("tensor ring reconstruction", reconstruction()),
    ];
    let mut unexpected = Vec::new();
    for (k, ((name, res), expected)) in criteria.into_iter().zip(EXPECTED).enumerate() {
        let n = k + 1;
        let out = res.unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        println!("{} AC{n} {name}: {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
        for line in &out.info {
            println!("     info: {line}");
        }
        if out.pass != expected {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("all outcomes match the recorded expectations");
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcomes for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
