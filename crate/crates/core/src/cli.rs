//! Command-line front end. [`run_command`] returns the exit code and the emitted
//! document so that the binary stays a thin wrapper and tests can drive it directly.
//!
//! Exit codes: `0` all checks pass, `1` a verification check failed, `2` usage or
//! parameter error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::fixtures::{default_dir, Fixtures};
use crate::hopf::{
    log_hopf_s, open_hopf, ordinary_hopf_s, qg_basis, ring_blocks, Convention, Insertion, QgLabel,
};
use crate::linalg::BlockReport;
use crate::modular::{assemble_schi, char_value, character_basis, tilde_basis, SChiMatrix, Tau};
use crate::report::{emit_report, Format, Report};
use crate::rings::{
    affine_sl2_fusion, build_wp_fusion_table, grothendieck_table, semisimplify, sf_fusion_table, FusionTable,
};
use crate::suites::{run_suite, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "logverlinde", version, about = "Logarithmic Verlinde structures of W_p and SF_d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[arg(long, default_value_t = 400)]
    trunc: usize,
    /// Requested bit precision for numerical evaluation (at least 53).
    #[arg(long, default_value_t = 53)]
    precision: u32,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Sample point `a+bi`; defaults to the fixture sample points.
    #[arg(long)]
    tau: Option<String>,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long, default_value = "all")]
    suite: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingArg {
    Wp,
    Grothendieck,
    Semisimple,
    Sf,
    Affine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HopfKind {
    Open,
    Ordinary,
    Log,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InsertionArg {
    X,
    #[value(name = "modP")]
    ModP,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Printed,
    Consistent,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Canonical,
    Tilde,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum JordanRing {
    Wp,
    Grothendieck,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fusion table of a ring.
    Fusion {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "wp")]
        ring: RingArg,
        /// Level for `--ring affine` (defaults to p-2).
        #[arg(long)]
        level: Option<u32>,
    },
    /// Open, ordinary or logarithmic Hopf link tables.
    Hopf {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "open")]
        kind: HopfKind,
        #[arg(long, value_enum, default_value = "modP")]
        insertion: InsertionArg,
        #[arg(long, value_enum, default_value = "consistent")]
        convention: ConventionArg,
    },
    /// Exact S-matrix of the (pseudo-)characters.
    Smatrix {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "canonical")]
        basis: BasisArg,
    },
    /// Character values at sample points.
    Chars {
        #[command(flatten)]
        common: Common,
    },
    /// Joint block structure of the regular representation.
    Jordan {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "grothendieck")]
        ring: JordanRing,
    },
    /// Symplectic fermion checks at `--d`.
    Sf {
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub d: u32,
    pub trunc: usize,
    pub precision_bits: u32,
    pub tol: f64,
    pub taus: Vec<Tau>,
    pub format: Format,
    pub suite: Suite,
}

impl RunConfig {
    fn from_common(c: &Common) -> Result<Self> {
        let taus = match &c.tau {
            Some(t) => vec![t.parse()?],
            None => Vec::new(),
        };
        let cfg = RunConfig {
            p: c.p,
            d: c.d,
            trunc: c.trunc,
            precision_bits: c.precision,
            tol: c.tol,
            taus,
            format: c.format.parse()?,
            suite: c.suite.parse()?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::Parameter(format!("p must be at least 2, got {}", self.p)));
        }
        if self.d < 1 {
            return Err(Error::Parameter("d must be at least 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Parameter(format!("tol must be positive, got {}", self.tol)));
        }
        if self.trunc < 50 {
            return Err(Error::Parameter(format!("trunc must be at least 50, got {}", self.trunc)));
        }
        // Same bound as the exact-to-complex embedding.
        CycloNum::zero(1).embed_complex(self.precision_bits)?;
        Ok(())
    }

    fn suite_config(&self, fixtures: Fixtures) -> SuiteConfig {
        SuiteConfig {
            p: self.p,
            d: self.d,
            trunc: self.trunc,
            tol: self.tol,
            taus: self.taus.clone(),
            fixtures,
        }
    }
}

/// Parses `argv` (including the program name), runs the subcommand and returns
/// `(exit code, document)`. Usage errors produce a message instead of a document.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e @ (Error::Parameter(_) | Error::Fixture(_))) => (EXIT_USAGE, format!("error: {e}\n")),
        Err(e) => (EXIT_FAIL, format!("error: {e}\n")),
    }
}

fn report_outcome(r: &Report, format: Format) -> (i32, String) {
    let code = if r.all_passed() { EXIT_OK } else { EXIT_FAIL };
    (code, emit_report(r, format))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("document serializes") + "\n"
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    match cmd {
        Command::Fusion { common, ring, level } => {
            let cfg = RunConfig::from_common(&common)?;
            let t = match ring {
                RingArg::Wp => build_wp_fusion_table(cfg.p)?,
                RingArg::Grothendieck => grothendieck_table(cfg.p)?,
                RingArg::Semisimple => semisimplify(&build_wp_fusion_table(cfg.p)?)?,
                RingArg::Sf => sf_fusion_table(cfg.d)?,
                RingArg::Affine => affine_sl2_fusion(level.unwrap_or(cfg.p - 2))?,
            };
            Ok((EXIT_OK, emit_table(&t, cfg.format)))
        }
        Command::Hopf { common, kind, insertion, convention } => {
            let cfg = RunConfig::from_common(&common)?;
            let conv = match convention {
                ConventionArg::Printed => Convention::Printed,
                ConventionArg::Consistent => Convention::Consistent,
            };
            let ins = match insertion {
                InsertionArg::X => Insertion::X,
                InsertionArg::ModP => Insertion::ModP,
            };
            let doc = hopf_document(cfg.p, kind, ins, conv)?;
            Ok((EXIT_OK, emit_hopf(&doc, cfg.format)))
        }
        Command::Smatrix { common, basis } => {
            let cfg = RunConfig::from_common(&common)?;
            let s = match basis {
                BasisArg::Canonical => assemble_schi(cfg.p)?,
                BasisArg::Tilde => SChiMatrix::in_basis(cfg.p, tilde_basis(cfg.p))?,
            };
            Ok((EXIT_OK, emit_schi(&s, cfg.format)))
        }
        Command::Chars { common } => {
            let cfg = RunConfig::from_common(&common)?;
            let taus = if cfg.taus.is_empty() {
                Fixtures::load(default_dir())?.modular.taus.iter().map(|t| t.parse()).collect::<Result<_>>()?
            } else {
                cfg.taus.clone()
            };
            Ok((EXIT_OK, emit_chars(cfg.p, &taus, cfg.trunc, cfg.format)?))
        }
        Command::Jordan { common, ring } => {
            let cfg = RunConfig::from_common(&common)?;
            let t = match ring {
                JordanRing::Wp => build_wp_fusion_table(cfg.p)?,
                JordanRing::Grothendieck => grothendieck_table(cfg.p)?,
            };
            Ok((EXIT_OK, emit_blocks(&ring_blocks(&t)?, cfg.format)))
        }
        Command::Sf { common } => {
            let cfg = RunConfig::from_common(&common)?;
            let sc = cfg.suite_config(Fixtures::load(default_dir())?);
            Ok(report_outcome(&run_suite(Suite::Sf, &sc)?, cfg.format))
        }
        Command::Verify { common } => {
            let cfg = RunConfig::from_common(&common)?;
            let sc = cfg.suite_config(Fixtures::load(default_dir())?);
            Ok(report_outcome(&run_suite(cfg.suite, &sc)?, cfg.format))
        }
    }
}

fn emit_table(t: &FusionTable, format: Format) -> String {
    let doc = t.to_json();
    match format {
        Format::Json => json(&doc),
        Format::Csv => {
            let mut out = String::from("a,b,c,N\n");
            for (a, b, c, n) in &doc.constants {
                let _ = writeln!(out, "{a},{b},{c},{n}");
            }
            out
        }
        Format::Text => {
            let basis: Vec<String> = doc.basis.iter().map(|l| l.to_string()).collect();
            let mut out = format!("ring {:?} (parameter {}), basis {}\n", doc.ring_kind, doc.p, basis.join(" "));
            for a in t.basis() {
                for b in t.basis() {
                    if a > b {
                        continue;
                    }
                    let prod = t.product(a, b).expect("basis labels");
                    let terms: Vec<String> = prod
                        .terms()
                        .map(|(l, n)| if *n == 1 { l.to_string() } else { format!("{n}{l}") })
                        .collect();
                    let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                    let _ = writeln!(out, "{a} x {b} = {rhs}");
                }
            }
            out
        }
    }
}

#[derive(Serialize)]
struct HopfEntry {
    #[serde(rename = "V")]
    v: QgLabel,
    #[serde(rename = "W")]
    w: QgLabel,
    id: String,
    nil: String,
}

#[derive(Serialize)]
struct HopfDocument {
    p: u32,
    kind: &'static str,
    insertion: &'static str,
    entries: Vec<HopfEntry>,
}

fn hopf_document(p: u32, kind: HopfKind, ins: Insertion, conv: Convention) -> Result<HopfDocument> {
    let basis = qg_basis(p);
    let zero = CycloNum::zero(2 * p).to_cyclo_string();
    let mut entries = Vec::new();
    for &v in &basis {
        for &w in &basis {
            let (id, nil) = match kind {
                HopfKind::Open => {
                    let op = open_hopf(v, w, p, conv)?;
                    (op.id_coeff.to_cyclo_string(), op.nil_coeff.to_cyclo_string())
                }
                HopfKind::Ordinary => (ordinary_hopf_s(v, w, p, conv)?.value.to_cyclo_string(), zero.clone()),
                HopfKind::Log => {
                    // Only projective targets carry these invariants; x needs a
                    // two-dimensional endomorphism ring.
                    let one_dim = matches!(w, QgLabel::U(_, s) if s == p);
                    if !w.is_projective(p) || (ins == Insertion::X && one_dim) {
                        continue;
                    }
                    (log_hopf_s(v, w, ins, p, conv)?.value.to_cyclo_string(), zero.clone())
                }
            };
            entries.push(HopfEntry { v, w, id, nil });
        }
    }
    let (kind, insertion) = match kind {
        HopfKind::Open => ("open", "id"),
        HopfKind::Ordinary => ("ordinary", "id"),
        HopfKind::Log => ("log", if ins == Insertion::X { "x" } else { "modP" }),
    };
    Ok(HopfDocument { p, kind, insertion, entries })
}

fn emit_hopf(doc: &HopfDocument, format: Format) -> String {
    match format {
        Format::Json => json(doc),
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { "," } else { " " };
            let mut out = if format == Format::Csv {
                String::from("V,W,id,nil\n")
            } else {
                format!("{} Hopf link, p = {}, insertion {}\n", doc.kind, doc.p, doc.insertion)
            };
            for e in &doc.entries {
                let q = |s: &str| if format == Format::Csv { format!("\"{s}\"") } else { format!("[{s}]") };
                let _ = writeln!(out, "{}{sep}{}{sep}{}{sep}{}", e.v, e.w, q(&e.id), q(&e.nil));
            }
            out
        }
    }
}

fn emit_schi(s: &SChiMatrix, format: Format) -> String {
    let doc = s.to_json();
    match format {
        Format::Json => json(&doc),
        Format::Csv => {
            let mut out = String::from("row,col,cyclo,sqrt2pPower\n");
            for e in &doc.entries {
                let _ = writeln!(out, "{},{},\"{}\",{}", e.row, e.col, e.cyclo, e.sqrt2p_power);
            }
            out
        }
        Format::Text => {
            let mut out = format!("S^chi for p = {} over Q(zeta_{}), nonzero entries\n", doc.p, doc.order);
            for e in &doc.entries {
                let _ = writeln!(out, "{} <- {}: [{}] * (2p)^({}/2)", e.row, e.col, e.cyclo, -e.sqrt2p_power);
            }
            out
        }
    }
}

#[derive(Serialize)]
struct CharValue {
    tau: String,
    character: String,
    re: f64,
    im: f64,
}

fn emit_chars(p: u32, taus: &[Tau], trunc: usize, format: Format) -> Result<String> {
    let mut rows = Vec::new();
    for &tau in taus {
        for c in character_basis(p) {
            let z = char_value(c, p, tau, trunc)?;
            rows.push(CharValue { tau: tau.to_string(), character: c.to_string(), re: z.re, im: z.im });
        }
    }
    Ok(match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut out = String::from("tau,character,re,im\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{:e},{:e}", r.tau, r.character, r.re, r.im);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                let _ = writeln!(out, "tau={} {}: {:.12e} {:+.12e}i", r.tau, r.character, r.re, r.im);
            }
            out
        }
    })
}

fn emit_blocks(b: &BlockReport, format: Format) -> String {
    let doc = b.to_json();
    match format {
        Format::Json => json(&doc),
        Format::Csv => {
            let mut out = String::from("j,lambda,sizes\n");
            for blk in &doc.blocks {
                let sizes: Vec<String> = blk.sizes.iter().map(|s| s.to_string()).collect();
                let _ = writeln!(out, "{},\"{}\",{}", blk.j, blk.lambda, sizes.join(";"));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for blk in &doc.blocks {
                let _ = writeln!(out, "j={} lambda=[{}] sizes {:?}", blk.j, blk.lambda, blk.sizes);
            }
            out
        }
    }
}
