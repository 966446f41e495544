//! Versioned reference values: explicit matrices, table entries and sample points.
//!
//! The directory defaults to `fixtures/v1` inside the crate and can be overridden
//! with `LOGVERLINDE_FIXTURES`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rings::ModuleLabel;

pub const FIXTURES_ENV: &str = "LOGVERLINDE_FIXTURES";

pub fn default_dir() -> PathBuf {
    match std::env::var_os(FIXTURES_ENV) {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/v1")),
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Product {
    #[serde(default)]
    pub p: u32,
    #[serde(default)]
    pub d: u32,
    pub a: ModuleLabel,
    pub b: ModuleLabel,
    pub result: BTreeMap<ModuleLabel, u64>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FusionFixture {
    pub wp_products: Vec<Product>,
    pub grothendieck_products: Vec<Product>,
    pub sf_products: Vec<Product>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct P2Matrices {
    pub grothendieck_basis: Vec<ModuleLabel>,
    pub tensor_basis: Vec<ModuleLabel>,
    pub q_gr_printed: Vec<Vec<i64>>,
    pub q_gr_j_form: Vec<Vec<i64>>,
    pub q_gr_y_form: Vec<Vec<i64>>,
    pub q_tensor_printed: Vec<Vec<i64>>,
    pub q_tensor_j_form: Vec<Vec<i64>>,
    pub q_tensor_y_form: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct OpenHopfValue {
    pub p: u32,
    pub v: String,
    pub w: String,
    pub id: String,
    pub nil: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ScalarValue {
    pub p: u32,
    pub v: String,
    pub w: String,
    #[serde(default)]
    pub insertion: Option<String>,
    pub value: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct HopfFixture {
    pub open_hopf: Vec<OpenHopfValue>,
    pub ordinary_s: Vec<ScalarValue>,
    pub log_s: Vec<ScalarValue>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SfHatMultiplicity {
    pub d: u32,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ModularFixture {
    pub taus: Vec<String>,
    pub trunc: usize,
    pub law_tol: f64,
    pub eta_at_i: f64,
    pub wp_p_range: [u32; 2],
    pub sf_d_range: [u32; 2],
    pub sf_tau: String,
    pub sf_w2_tol: f64,
    pub sf_hat_multiplicities: Vec<SfHatMultiplicity>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RatioFixture {
    pub families: Vec<String>,
    pub gamma: BTreeMap<String, BTreeMap<String, String>>,
    pub reference_x0_cells: Vec<[String; 2]>,
    pub zero_examples: Vec<[String; 2]>,
}

/// Every fixture file, loaded once.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub dir: PathBuf,
    pub fusion: FusionFixture,
    pub p2: P2Matrices,
    pub hopf: HopfFixture,
    pub modular: ModularFixture,
    pub ratio: RatioFixture,
}

fn read<T: DeserializeOwned>(dir: &Path, name: &str) -> Result<T> {
    let path = dir.join(name);
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::Fixture(format!("cannot read fixture {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("malformed fixture {}: {e}", path.display())))
}

impl Fixtures {
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        Ok(Fixtures {
            dir: dir.to_path_buf(),
            fusion: read(dir, "fusion.json")?,
            p2: read(dir, "p2_matrices.json")?,
            hopf: read(dir, "hopf.json")?,
            modular: read(dir, "modular.json")?,
            ratio: read(dir, "ratio.json")?,
        })
    }

    pub fn load_default() -> Result<Self> {
        Self::load(default_dir())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        let f = Fixtures::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/v1")).unwrap();
        assert_eq!(f.p2.q_gr_printed.len(), 4);
        assert_eq!(f.p2.q_tensor_printed.len(), 6);
        assert_eq!(f.ratio.families.len(), 4);
    }

    #[test]
    fn missing_dir_is_a_fixture_error() {
        assert!(matches!(Fixtures::load("/nonexistent/fixtures"), Err(Error::Fixture(_))));
    }
}
