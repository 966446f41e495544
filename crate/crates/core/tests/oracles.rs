//! Reference values from the bundled fixtures, checked against the computed objects.

use logverlinde::cyclo::sign_pow;
use logverlinde::fixtures::Fixtures;
use logverlinde::hopf::{
    log_hopf_s, open_hopf, ordinary_hopf_s, regular_matrix, ring_blocks, Convention, Insertion, QgLabel,
};
use logverlinde::modular::{eta, gamma, reference_row, CharFamily, RefRule, Tau, YLabel};
use logverlinde::rings::{build_wp_fusion_table, grothendieck_table, sf_fusion_table, FusionTable, ModuleLabel};
use logverlinde::suites::{run_suite, Suite, SuiteConfig};
use logverlinde::CycloNum;

fn fixtures() -> Fixtures {
    Fixtures::load_default().expect("bundled fixtures load")
}

fn assert_product(t: &FusionTable, a: &ModuleLabel, b: &ModuleLabel, want: &std::collections::BTreeMap<ModuleLabel, u64>) {
    let got = t.product(a, b).unwrap();
    let got: std::collections::BTreeMap<ModuleLabel, u64> = got.terms().map(|(l, n)| (*l, *n)).collect();
    assert_eq!(&got, want, "{a} x {b}");
}

#[test]
fn fusion_products_match_reference() {
    let fx = fixtures();
    for pr in &fx.fusion.wp_products {
        assert_product(&build_wp_fusion_table(pr.p).unwrap(), &pr.a, &pr.b, &pr.result);
    }
    for pr in &fx.fusion.grothendieck_products {
        assert_product(&grothendieck_table(pr.p).unwrap(), &pr.a, &pr.b, &pr.result);
    }
    for pr in &fx.fusion.sf_products {
        assert_product(&sf_fusion_table(pr.d).unwrap(), &pr.a, &pr.b, &pr.result);
    }
}

fn int(p: u32, s: &str) -> CycloNum {
    CycloNum::from_int(2 * p, s.parse().unwrap())
}

#[test]
fn hopf_values_match_reference() {
    let fx = fixtures();
    let conv = Convention::Consistent;
    for v in &fx.hopf.open_hopf {
        let op = open_hopf(v.v.parse().unwrap(), v.w.parse().unwrap(), v.p, conv).unwrap();
        assert_eq!(op.id_coeff, int(v.p, &v.id), "{v:?}");
        assert_eq!(op.nil_coeff, int(v.p, &v.nil), "{v:?}");
    }
    for v in &fx.hopf.ordinary_s {
        let s = ordinary_hopf_s(v.v.parse().unwrap(), v.w.parse().unwrap(), v.p, conv).unwrap();
        assert_eq!(s.value, int(v.p, &v.value), "{v:?}");
    }
    for v in &fx.hopf.log_s {
        let ins = if v.insertion.as_deref() == Some("x") { Insertion::X } else { Insertion::ModP };
        let s = log_hopf_s(v.v.parse().unwrap(), v.w.parse().unwrap(), ins, v.p, conv).unwrap();
        assert_eq!(s.value, int(v.p, &v.value), "{v:?}");
    }
}

/// On the one-dimensional blocks `X^-_1` acts by `1`, `(-1)^p` and `X^+_2` by `±2`.
#[test]
fn one_dimensional_block_scalars() {
    for p in 2..=5u32 {
        let g = grothendieck_table(p).unwrap();
        let b = ring_blocks(&g).unwrap();
        let xm1 = b.conjugate(&regular_matrix(&g, &"X-1".parse().unwrap(), 2 * p).unwrap()).unwrap();
        let xp2 = b.conjugate(&regular_matrix(&g, &"X+2".parse().unwrap(), 2 * p).unwrap()).unwrap();
        for blk in b.blocks.iter().filter(|blk| blk.size == 1) {
            let k = blk.offset;
            let (a, c) = if blk.j == 0 { (1, 2) } else { (sign_pow(p as i64), -2) };
            assert_eq!(*xm1.get(k, k), CycloNum::from_int(2 * p, a), "p={p} j={}", blk.j);
            assert_eq!(*xp2.get(k, k), CycloNum::from_int(2 * p, c), "p={p} j={}", blk.j);
        }
    }
}

fn family(name: &str) -> CharFamily {
    match name {
        "P" => CharFamily::P,
        "X" => CharFamily::X,
        "X0" => CharFamily::X0,
        "Top" => CharFamily::Top,
        other => panic!("unknown family {other}"),
    }
}

#[test]
fn gamma_table_and_reference_rows() {
    let fx = fixtures();
    for (row, cols) in &fx.ratio.gamma {
        for (col, g) in cols {
            assert_eq!(gamma(family(row), family(col)).to_string(), *g, "({row}, {col})");
        }
    }
    let special: Vec<(CharFamily, CharFamily)> =
        fx.ratio.reference_x0_cells.iter().map(|[r, c]| (family(r), family(c))).collect();
    for row in CharFamily::ALL {
        for col in CharFamily::ALL {
            let want = if special.contains(&(row, col)) { YLabel::X0(1) } else { YLabel::X(1) };
            assert_eq!(reference_row(row, col, RefRule::Printed), want, "({row}, {col})");
        }
    }
}

#[test]
fn eta_at_i() {
    let fx = fixtures();
    let e = eta(Tau::new(0.0, 1.0).unwrap(), fx.modular.trunc);
    assert!((e.re - fx.modular.eta_at_i).abs() < 1e-9);
    assert!(e.im.abs() < 1e-12);
}

#[test]
fn full_suite_passes_for_small_p() {
    for p in 2..=4 {
        let cfg = SuiteConfig::new(p, fixtures());
        let r = run_suite(Suite::All, &cfg).unwrap();
        let bad: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
        assert!(bad.is_empty(), "p={p}: {bad:?}");
    }
}

#[test]
fn sf_suite_passes_for_each_d() {
    let fx = fixtures();
    let [lo, hi] = fx.modular.sf_d_range;
    for d in lo..=hi {
        let mut cfg = SuiteConfig::new(2, fx.clone());
        cfg.d = d;
        let r = run_suite(Suite::Sf, &cfg).unwrap();
        let bad: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
        assert!(bad.is_empty(), "d={d}: {bad:?}");
    }
}

#[test]
fn qg_labels_round_trip() {
    for p in 2..=4 {
        for l in logverlinde::hopf::qg_basis(p) {
            assert_eq!(l.to_string().parse::<QgLabel>().unwrap(), l);
            assert_eq!(QgLabel::from_module(&l.to_module(), p).unwrap(), l);
        }
    }
}
