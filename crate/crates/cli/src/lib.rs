//! Command-line surface for certgamma: point evaluation, table reproduction
//! and oracle scans, emitting [`OutputRecord`]s as JSON lines or CSV.

pub mod format;
pub mod grid;
pub mod record;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use clap::{Args, Parser, Subcommand, ValueEnum};

use certgamma::bounds::{self, BoundKind, Status, Target, CK_MAX};
use certgamma::lngamma::{self, Request};
use certgamma::oracle;
use certgamma::series::{ComplexPoint, SeriesKind};
use certgamma::theta::{self, Terms, ThetaOptions, ThetaVariant};
use certgamma::{Error, ExtComplex};

use format::num;
use grid::{Grid, DEFAULT_GRID, MAX_POINTS};
pub use record::{render, Format, OutputRecord};

/// Oracle precision used by scans when `--digits` is absent.
pub const SCAN_DIGITS: u32 = 30;

#[derive(Debug, Parser)]
#[command(name = "certgamma", version, about = "Certified ln Γ and Riemann-Siegel theta by asymptotic series")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Decimal digits: output decimals for table1, oracle precision for table2 and scan.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Reserved; there is no randomness anywhere, so the flag is rejected.
    #[arg(long, global = true)]
    pub seedless: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ln Γ(z) or ln Γ(z + 1/2) with a certified radius.
    Lngamma(LngammaArgs),
    /// Riemann-Siegel theta with a certified radius.
    Theta(ThetaArgs),
    /// The constants c_k rounded up.
    Table1(Table1Args),
    /// Normalized errors of the theta approximations at k_min(t).
    Table2(Table2Args),
    /// Oracle sweeps: conjectured bound, sharpness spot checks, bound winners.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct LngammaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub re: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub im: f64,
    #[arg(long, conflicts_with = "accuracy")]
    pub terms: Option<u32>,
    #[arg(long)]
    pub accuracy: Option<f64>,
    /// Evaluate ln Γ(z + 1/2) instead.
    #[arg(long)]
    pub half: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    Arctan,
    Empirical,
}

impl From<VariantArg> for ThetaVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Standard => ThetaVariant::Standard,
            VariantArg::Arctan => ThetaVariant::Arctan,
            VariantArg::Empirical => ThetaVariant::Empirical,
        }
    }
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, conflicts_with = "auto")]
    pub terms: Option<u32>,
    /// k = k_min(t); also the default.
    #[arg(long)]
    pub auto: bool,
    #[arg(long, value_enum, default_value_t = VariantArg::Arctan)]
    pub variant: VariantArg,
    /// Constant c in the empirical correction (πt - k_min + c) T̃_min.
    #[arg(long, allow_hyphen_values = true)]
    pub empirical_constant: Option<f64>,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, default_value_t = 50)]
    pub kmax: u32,
}

#[derive(Debug, Args)]
pub struct Table2Args {
    #[arg(long, default_value = "1,2,5,10,20,50,100")]
    pub t_list: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanWhat {
    Conjecture,
    Sharpness,
    Bounds,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub what: ScanWhat,
    /// `k=A..B;r=LIST;arg=LIST`, radii in terms of k, angles in units of π.
    #[arg(long, default_value = DEFAULT_GRID)]
    pub grid: String,
}

fn error_record(command: &str, inputs: &BTreeMap<String, String>, e: &Error) -> OutputRecord {
    OutputRecord::error(command, inputs, e.kind(), &e.to_string())
}

/// Runs one invocation. Failures become error records in the returned stream.
pub fn run(cli: &Cli) -> Vec<OutputRecord> {
    let name = match &cli.command {
        Command::Lngamma(_) => "lngamma",
        Command::Theta(_) => "theta",
        Command::Table1(_) => "table1",
        Command::Table2(_) => "table2",
        Command::Scan(_) => "scan",
    };
    if cli.seedless {
        return vec![OutputRecord::error(
            name,
            &BTreeMap::new(),
            "usage",
            "--seedless is reserved: no command uses randomness",
        )];
    }
    match &cli.command {
        Command::Lngamma(a) => vec![cmd_lngamma(a)],
        Command::Theta(a) => vec![cmd_theta(a)],
        Command::Table1(a) => cmd_table1(a, cli.digits),
        Command::Table2(a) => cmd_table2(a, cli.digits),
        Command::Scan(a) => cmd_scan(a, cli.digits),
    }
}

pub fn exit_code(records: &[OutputRecord]) -> i32 {
    if records.iter().any(OutputRecord::is_error) {
        1
    } else {
        0
    }
}

pub fn cmd_lngamma(a: &LngammaArgs) -> OutputRecord {
    let mut inputs = BTreeMap::new();
    inputs.insert("re".to_string(), num(a.re));
    inputs.insert("im".to_string(), num(a.im));
    inputs.insert("half".to_string(), a.half.to_string());
    let request = match (a.terms, a.accuracy) {
        (Some(k), _) => {
            inputs.insert("terms".to_string(), k.to_string());
            Request::Terms(k)
        }
        (None, Some(eps)) => {
            inputs.insert("accuracy".to_string(), num(eps));
            Request::Accuracy(eps)
        }
        (None, None) => Request::Default,
    };
    let result = ComplexPoint::new(a.re, a.im).and_then(|z| {
        if a.half {
            lngamma::eval_lngamma_half(z, request)
        } else {
            lngamma::eval_lngamma(z, request)
        }
    });
    let c = match result {
        Ok(c) => c,
        Err(e) => return error_record("lngamma", &inputs, &e),
    };
    let mut r = OutputRecord::new("lngamma");
    r.inputs = inputs;
    r.output("value_re", num(c.value.re))
        .output("value_im", num(c.value.im))
        .output("radius", num(c.radius))
        .output("k_used", c.plan.k.to_string())
        .output("shifts", c.plan.shifts.to_string())
        .output("bound_kind", c.plan.bound_kind.name())
        .output("truncation_bound", num(c.plan.truncation_bound))
        .output("reflected", c.reflected.to_string());
    if c.reflected {
        r.flag("REFLECTED");
    }
    r
}

pub fn cmd_theta(a: &ThetaArgs) -> OutputRecord {
    let mut inputs = BTreeMap::new();
    inputs.insert("t".to_string(), num(a.t));
    let variant: ThetaVariant = a.variant.into();
    inputs.insert("variant".to_string(), variant.name().to_string());
    let terms = match a.terms {
        Some(k) => {
            inputs.insert("terms".to_string(), k.to_string());
            Terms::Fixed(k)
        }
        None => {
            inputs.insert("terms".to_string(), "auto".to_string());
            Terms::Auto
        }
    };
    let mut opts = ThetaOptions::default();
    if let Some(c) = a.empirical_constant {
        inputs.insert("empirical_constant".to_string(), num(c));
        opts.empirical_constant = c;
    }
    let res = match theta::eval_theta_with(a.t, terms, variant, &opts) {
        Ok(r) => r,
        Err(e) => return error_record("theta", &inputs, &e),
    };
    let mut r = OutputRecord::new("theta");
    r.inputs = inputs;
    r.output("value", num(res.value))
        .output("radius", num(res.radius))
        .output("k_used", res.k_used.to_string())
        .output("variant", res.variant.name());
    for f in &res.flags {
        r.flag(f);
    }
    if let Some(adv) = res.advisory {
        r.output("empirical_correction", num(adv.correction))
            .output("t_min", num(adv.t_min));
        r.flag("EMPIRICAL_ADVISORY");
    }
    r
}

pub fn cmd_table1(a: &Table1Args, digits: Option<u32>) -> Vec<OutputRecord> {
    let decimals = digits.unwrap_or(6);
    let mut inputs = BTreeMap::new();
    inputs.insert("kmax".to_string(), a.kmax.to_string());
    inputs.insert("digits".to_string(), decimals.to_string());
    if a.kmax == 0 || a.kmax > CK_MAX {
        let e = Error::Domain(format!("kmax must lie in 1..={CK_MAX}"));
        return vec![error_record("table1", &inputs, &e)];
    }
    if decimals > 40 {
        let e = Error::Domain("c_k is tabulated to 40 decimals at most".into());
        return vec![error_record("table1", &inputs, &e)];
    }
    (1..=a.kmax)
        .map(|k| match bounds::c_k_decimal_up(k, decimals) {
            Ok(v) => {
                let mut r = OutputRecord::new("table1");
                r.inputs = inputs.clone();
                r.output("k", k.to_string()).output("c_k", v);
                r
            }
            Err(e) => error_record("table1", &inputs, &e),
        })
        .collect()
}

pub fn cmd_table2(a: &Table2Args, digits: Option<u32>) -> Vec<OutputRecord> {
    let mut out = Vec::new();
    for item in a.t_list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let mut inputs = BTreeMap::new();
        inputs.insert("t".to_string(), item.to_string());
        let t: f64 = match item.parse() {
            Ok(t) => t,
            Err(_) => {
                out.push(error_record("table2", &inputs, &Error::Domain(format!("bad t {item:?}"))));
                continue;
            }
        };
        let d = digits.unwrap_or_else(|| oracle::table2_min_digits(t));
        inputs.insert("digits".to_string(), d.to_string());
        match oracle::table2_row(t, d) {
            Ok(row) => {
                let mut r = OutputRecord::new("table2");
                r.inputs = inputs;
                r.output("k_min", row.k_min.to_string())
                    .output("a", format::column_a(&row.a))
                    .output("b", format::column_b(&row.b))
                    .output("c", format::column_c(&row.c))
                    .output("d", format::column_d(&row.d))
                    .output("a_full", row.a.to_sci_string(30))
                    .output("b_full", row.b.to_sci_string(30))
                    .output("c_full", row.c.to_sci_string(30))
                    .output("d_full", row.d.to_sci_string(30));
                out.push(r);
            }
            Err(e) => out.push(error_record("table2", &inputs, &e)),
        }
    }
    out
}

/// Spot checks of |R_{k+1}(iy)| / |T_k(iy)| with the values the literature quotes.
pub const SHARPNESS_POINTS: [(f64, u32, f64); 2] = [(100.0 / PI, 90, 4.62), (400.0 / PI, 383, 10.15)];

pub fn cmd_scan(a: &ScanArgs, digits: Option<u32>) -> Vec<OutputRecord> {
    let digits = digits.unwrap_or(SCAN_DIGITS);
    let mut inputs = BTreeMap::new();
    let what = match a.what {
        ScanWhat::Conjecture => "conjecture",
        ScanWhat::Sharpness => "sharpness",
        ScanWhat::Bounds => "bounds",
    };
    inputs.insert("what".to_string(), what.to_string());
    inputs.insert("digits".to_string(), digits.to_string());
    if a.what == ScanWhat::Sharpness {
        return scan_sharpness(&inputs, digits);
    }
    inputs.insert("grid".to_string(), a.grid.clone());
    let g = match Grid::parse(&a.grid) {
        Ok(g) => g,
        Err(msg) => return vec![error_record("scan", &inputs, &Error::Domain(msg))],
    };
    let mut points = g.points();
    let overflow = points.len() > MAX_POINTS;
    points.truncate(MAX_POINTS);
    let mut out = match a.what {
        ScanWhat::Conjecture => scan_conjecture(&inputs, &points, digits),
        _ => scan_bounds(&inputs, &points),
    };
    if overflow {
        let e = Error::Resource(format!(
            "grid has {} points, only the first {MAX_POINTS} were evaluated",
            g.len()
        ));
        out.push(error_record("scan", &inputs, &e));
    }
    out
}

fn scan_sharpness(inputs: &BTreeMap<String, String>, digits: u32) -> Vec<OutputRecord> {
    SHARPNESS_POINTS
        .iter()
        .map(|&(y, k, quoted)| {
            let z = ExtComplex::from_f64(0.0, y, digits);
            match oracle::remainder_ratio(&z, k, SeriesKind::Stirling, digits) {
                Ok(ratio) => {
                    let mut r = OutputRecord::new("scan");
                    r.inputs = inputs.clone();
                    r.output("k", k.to_string())
                        .output("y", num(y))
                        .output("modulus_ratio", ratio.modulus.to_sci_string(12))
                        .output("imaginary_ratio", ratio.imaginary.to_sci_string(12))
                        .output("quoted", num(quoted));
                    r
                }
                Err(e) => error_record("scan", inputs, &e),
            }
        })
        .collect()
}

fn scan_conjecture(inputs: &BTreeMap<String, String>, points: &[grid::GridPoint], digits: u32) -> Vec<OutputRecord> {
    let mut out = Vec::new();
    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    let mut violations = 0usize;
    let mut worst: Option<(f64, grid::GridPoint)> = None;
    for p in points {
        let z = match ComplexPoint::new(p.re, p.im) {
            Ok(z) => z,
            Err(e) => {
                out.push(error_record("scan", inputs, &e));
                continue;
            }
        };
        let bound = match bounds::bound_conjectured(p.k, z, Target::RkNext) {
            Ok(b) if b.applicable => b,
            Ok(_) => {
                skipped += 1;
                continue;
            }
            Err(e) => {
                out.push(error_record("scan", inputs, &e));
                continue;
            }
        };
        let ze = ExtComplex::from_f64(p.re, p.im, digits);
        let ratio = match oracle::remainder_ratio(&ze, p.k, SeriesKind::Stirling, digits) {
            Ok(r) => r.modulus.to_f64(),
            Err(e) => {
                out.push(error_record("scan", inputs, &e));
                continue;
            }
        };
        evaluated += 1;
        let q = ratio / bound.normalized;
        if q >= 1.0 {
            violations += 1;
            let mut r = OutputRecord::new("scan");
            r.inputs = inputs.clone();
            r.output("k", p.k.to_string())
                .output("re", num(p.re))
                .output("im", num(p.im))
                .output("ratio", num(ratio))
                .output("bound", num(bound.normalized))
                .output("quotient", num(q));
            r.flag("CONJECTURE_VIOLATION");
            out.push(r);
        }
        if worst.map_or(true, |(w, _)| q > w) {
            worst = Some((q, *p));
        }
    }
    let mut r = OutputRecord::new("scan");
    r.inputs = inputs.clone();
    r.output("points", evaluated.to_string())
        .output("not_applicable", skipped.to_string())
        .output("violations", violations.to_string());
    if let Some((q, p)) = worst {
        r.output("max_quotient", num(q))
            .output("max_k", p.k.to_string())
            .output("max_re", num(p.re))
            .output("max_im", num(p.im));
    }
    r.flag("CONJECTURED");
    if violations > 0 {
        r.flag("CONJECTURE_VIOLATION");
    }
    out.push(r);
    out
}

fn scan_bounds(inputs: &BTreeMap<String, String>, points: &[grid::GridPoint]) -> Vec<OutputRecord> {
    let mut out = Vec::new();
    for p in points {
        let all = ComplexPoint::new(p.re, p.im)
            .and_then(|z| bounds::all_bounds(p.k, z, SeriesKind::Stirling, Target::RkNext));
        let all = match all {
            Ok(v) => v,
            Err(e) => {
                out.push(error_record("scan", inputs, &e));
                continue;
            }
        };
        let mut r = OutputRecord::new("scan");
        r.inputs = inputs.clone();
        r.output("k", p.k.to_string()).output("re", num(p.re)).output("im", num(p.im));
        for b in &all {
            // absolute values: the normalized forms use different reference terms
            let v = if b.applicable { num(b.value) } else { "n/a".to_string() };
            r.output(b.kind.name(), v);
        }
        let winner = all
            .iter()
            .filter(|b| b.is_rigorous() && b.kind != BoundKind::Conjectured && b.status == Status::Proven)
            .min_by(|a, b| a.value.total_cmp(&b.value));
        match winner {
            Some(b) => {
                r.output("winner", b.kind.name()).output("winner_value", num(b.value));
            }
            None => {
                r.output("winner", "none");
            }
        }
        out.push(r);
    }
    out
}
