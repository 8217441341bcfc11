//! Error bounds for truncated Stirling, Gauss and theta series.
//!
//! Every bound is returned as a [`BoundResult`]: an absolute bound `value` on
//! the targeted remainder plus the same bound divided by the magnitude of a
//! reference term. Floating-point evaluation of a bound always rounds upward.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

use crate::bernoulli;
use crate::error::{domain, Error, Result};
use crate::ext::{bits_for_digits, ExtReal};
use crate::series::{self, ComplexPoint, SeriesKind, MAX_TERM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    Thm1,
    Cor1,
    Thm2,
    LemmaCk,
    Thm3,
    Cor2,
    Thm4,
    Cor3,
    Cor4,
    Thm6,
    NoArctan,
    WhittakerWatson,
    Stieltjes,
    BehnkeSommer,
    Hare,
    Faulty,
    Conjectured,
}

impl BoundKind {
    pub const ALL: [BoundKind; 17] = [
        BoundKind::Thm1,
        BoundKind::Cor1,
        BoundKind::Thm2,
        BoundKind::LemmaCk,
        BoundKind::Thm3,
        BoundKind::Cor2,
        BoundKind::Thm4,
        BoundKind::Cor3,
        BoundKind::Cor4,
        BoundKind::Thm6,
        BoundKind::NoArctan,
        BoundKind::WhittakerWatson,
        BoundKind::Stieltjes,
        BoundKind::BehnkeSommer,
        BoundKind::Hare,
        BoundKind::Faulty,
        BoundKind::Conjectured,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Thm1 => "Thm1",
            BoundKind::Cor1 => "Cor1",
            BoundKind::Thm2 => "Thm2",
            BoundKind::LemmaCk => "LemmaCk",
            BoundKind::Thm3 => "Thm3",
            BoundKind::Cor2 => "Cor2",
            BoundKind::Thm4 => "Thm4",
            BoundKind::Cor3 => "Cor3",
            BoundKind::Cor4 => "Cor4",
            BoundKind::Thm6 => "Thm6",
            BoundKind::NoArctan => "NoArctan",
            BoundKind::WhittakerWatson => "WhittakerWatson",
            BoundKind::Stieltjes => "Stieltjes",
            BoundKind::BehnkeSommer => "BehnkeSommer",
            BoundKind::Hare => "Hare",
            BoundKind::Faulty => "Faulty",
            BoundKind::Conjectured => "Conjectured",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which remainder a bound controls: R_k (error after k-1 terms) or R_{k+1} (after k terms).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Rk,
    RkNext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Proven,
    /// Valid only by a proof outside the reference text (the η_k omission).
    External,
    Conjectured,
    Faulty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HatBase {
    Thm3,
    Cor2,
    Thm4,
    LemmaCk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaBound {
    Thm6,
    Cor3,
    Cor4,
    LemmaCk,
    /// Bounds the error of the approximation without the arctan term.
    NoArctan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Literature {
    WhittakerWatson,
    Stieltjes,
    BehnkeSommer,
    Hare,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BoundOptions {
    /// Drop η_k where an external proof allows it (k >= 3, or |z| >= 1 for Cor2/Cor3).
    pub omit_eta: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub family: SeriesKind,
    pub target: Target,
    /// Absolute bound on the targeted remainder.
    pub value: f64,
    /// `value` divided by the magnitude of term `reference_index` of the family.
    pub normalized: f64,
    pub reference_index: u32,
    pub applicable: bool,
    pub reason: Option<String>,
    pub status: Status,
}

impl BoundResult {
    fn not_applicable(kind: BoundKind, family: SeriesKind, target: Target, reason: impl Into<String>) -> Self {
        BoundResult {
            kind,
            family,
            target,
            value: 0.0,
            normalized: 0.0,
            reference_index: 0,
            applicable: false,
            reason: Some(reason.into()),
            status: Status::Proven,
        }
    }

    pub fn is_rigorous(&self) -> bool {
        self.applicable && self.status == Status::Proven
    }
}

const GUARD: f64 = 1.0 + 1.0 / (1u64 << 40) as f64;

/// Upward rounding applied after each floating-point chain.
pub(crate) fn up(x: f64) -> f64 {
    (x * GUARD).next_up()
}

/// e^{-pi t} rounded upward; never zero.
pub(crate) fn exp_neg_pi_t_up(t: f64) -> f64 {
    let arg = PI * t;
    let v = (-arg).exp();
    let v = up(v * (1.0 + (arg.abs() + 4.0) * f64::EPSILON));
    v.max(f64::MIN_POSITIVE)
}

/// η_k = 1/(1 - 2^{1-2k}), rounded upward.
pub fn eta(k: u32) -> f64 {
    let k = k.max(1);
    let tiny = (1.0 - 2.0 * k as f64).exp2();
    (1.0 / (1.0 - tiny)).next_up().next_up()
}

/// sqrt(pi) Γ(k+1/2)/Γ(k), rounded upward.
pub(crate) fn gamma_ratio_factor(k: u32) -> f64 {
    let k = k.max(1);
    let mut r = PI.sqrt() / 2.0;
    for j in 1..k {
        r *= (j as f64 + 0.5) / j as f64;
    }
    let r = PI.sqrt() * r;
    let err = (2.0 * k as f64 + 4.0) * f64::EPSILON / 2.0;
    up(r * (1.0 + err))
}

/// c_1..c_100, each rounded upward and kept to 50 digits.
pub struct CkTable {
    values: Vec<ExtReal>,
}

pub const CK_MAX: u32 = 100;

impl CkTable {
    pub fn get() -> &'static CkTable {
        static TABLE: OnceLock<CkTable> = OnceLock::new();
        TABLE.get_or_init(CkTable::compute)
    }

    fn compute() -> CkTable {
        let prec = 256;
        let b: Vec<Float> = (0..=3 * CK_MAX)
            .map(|m| bernoulli::even_float(m, prec).expect("within cap").abs())
            .collect();
        let pi = Float::with_val(prec, rug::float::Constant::Pi);
        let bump = Float::with_val(prec, 10u32).pow(-60i32);
        let mut values = Vec::with_capacity(CK_MAX as usize);
        for k in 1..=CK_MAX {
            let kk = k as u64;
            let base = Float::with_val(prec, &b[k as usize] / Float::with_val(prec, 2 * kk * (2 * kk - 1)));
            let kf = Float::with_val(prec, k);
            let ratio = |j: u32| -> Float {
                let m = (k + j) as u64;
                let t = Float::with_val(prec, &b[(k + j) as usize] / Float::with_val(prec, 2 * m * (2 * m - 1)));
                let scale = Float::with_val(prec, kf.clone().pow(2 * j));
                t / &base / scale
            };
            let mut sum = Float::with_val(prec, 0);
            for j in 1..=2 * k {
                sum += ratio(j);
            }
            let sqrt3kpi = Float::with_val(prec, &pi * (3 * k)).sqrt();
            sum += sqrt3kpi * ratio(2 * k);
            sum += &bump;
            let stored = Float::with_val_round(bits_for_digits(50), &sum, Round::Up).0;
            values.push(ExtReal::from_float(stored, 50));
        }
        CkTable { values }
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn value(&self, k: u32) -> Result<&ExtReal> {
        if k == 0 || k > CK_MAX {
            return domain(format!("c_k is tabulated only for 1 <= k <= {CK_MAX}"));
        }
        Ok(&self.values[k as usize - 1])
    }
}

/// c_k as a double rounded upward.
pub fn c_k(k: u32) -> Result<f64> {
    Ok(CkTable::get().value(k)?.to_f64_up())
}

/// c_k rounded upward to `decimals` places, as a decimal string.
pub fn c_k_decimal_up(k: u32, decimals: u32) -> Result<String> {
    let v = CkTable::get().value(k)?;
    let scale = Float::with_val(bits_for_digits(60), 10u32).pow(decimals);
    let scaled = Float::with_val(bits_for_digits(60), v.as_float() * &scale).ceil();
    let digits = scaled.to_integer().expect("finite").to_string();
    let d = decimals as usize;
    let padded = format!("{digits:0>width$}", width = d + 1);
    let (int, frac) = padded.split_at(padded.len() - d);
    Ok(if d == 0 { int.to_string() } else { format!("{int}.{frac}") })
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 || k >= MAX_TERM {
        return Err(Error::Domain(format!("k = {k} outside 1..{MAX_TERM}")));
    }
    Ok(())
}

/// |z| rounded downward; exact on the axes.
fn abs_down(z: ComplexPoint) -> f64 {
    if z.re == 0.0 {
        z.im.abs()
    } else if z.im == 0.0 {
        z.re.abs()
    } else {
        z.abs() * (1.0 - f64::EPSILON)
    }
}

fn reference_abs(family: SeriesKind, j: u32, z: ComplexPoint) -> Result<(f64, i32)> {
    let s = match family {
        SeriesKind::Stirling => series::term_scaled(j, z.to_c64(), false)?,
        SeriesKind::Gauss => series::term_scaled(j, z.to_c64(), true)?,
        SeriesKind::Theta => series::theta_term_scaled(j, z.re)?,
    };
    let (v, _) = s.abs_f64();
    let l2 = s.log2_abs();
    Ok((v, if l2.is_finite() { l2.floor() as i32 } else { i32::MIN }))
}

/// Builds the result `normalized * |T_ref|` with upward rounding and range handling.
fn assemble(
    kind: BoundKind,
    family: SeriesKind,
    target: Target,
    normalized: f64,
    reference_index: u32,
    z: ComplexPoint,
    status: Status,
) -> Result<BoundResult> {
    if !normalized.is_finite() {
        return Ok(BoundResult::not_applicable(kind, family, target, "bound constant is infinite"));
    }
    let normalized = up(normalized);
    let (term, l2) = reference_abs(family, reference_index, z)?;
    let log2_value = normalized.log2() + l2 as f64 + 1.0;
    let value = if log2_value > 1023.0 || !term.is_finite() {
        return Ok(BoundResult::not_applicable(kind, family, target, "bound exceeds double range"));
    } else if log2_value < -1021.0 {
        f64::MIN_POSITIVE
    } else {
        up(normalized * term * (1.0 + series::term_rel_error(reference_index)))
    };
    Ok(BoundResult {
        kind,
        family,
        target,
        value,
        normalized,
        reference_index,
        applicable: true,
        reason: None,
        status,
    })
}

fn right_half_plane(kind: BoundKind, family: SeriesKind, target: Target, z: ComplexPoint) -> Option<BoundResult> {
    if z.is_zero() {
        return Some(BoundResult::not_applicable(kind, family, target, "z = 0"));
    }
    if z.re < 0.0 {
        return Some(BoundResult::not_applicable(kind, family, target, "requires Re(z) >= 0"));
    }
    None
}

fn plus_one(target: Target, n: f64) -> f64 {
    match target {
        Target::Rk => up(1.0 + n),
        Target::RkNext => n,
    }
}

fn base_normalized(kind: BoundKind, k: u32, z: ComplexPoint) -> std::result::Result<f64, String> {
    let kf = k as f64;
    match kind {
        BoundKind::Thm1 => Ok(gamma_ratio_factor(k)),
        BoundKind::Cor1 => Ok(up((PI * kf).sqrt())),
        BoundKind::Thm2 | BoundKind::LemmaCk => {
            let r = abs_down(z);
            if kf > r {
                return Err("requires k <= |z|".to_string());
            }
            let q = up(up(kf / r) * up(kf / r));
            if kind == BoundKind::Thm2 {
                Ok(up(q / (PI * PI - 1.0).next_down()))
            } else {
                let c = c_k(k).map_err(|e| e.to_string())?;
                Ok(up(c * q))
            }
        }
        _ => unreachable!("not a base bound"),
    }
}

fn stirling_bound(kind: BoundKind, k: u32, z: ComplexPoint, target: Target) -> Result<BoundResult> {
    check_k(k)?;
    let family = SeriesKind::Stirling;
    if let Some(na) = right_half_plane(kind, family, target, z) {
        return Ok(na);
    }
    match base_normalized(kind, k, z) {
        Ok(n) => assemble(kind, family, target, plus_one(target, n), k, z, Status::Proven),
        Err(reason) => Ok(BoundResult::not_applicable(kind, family, target, reason)),
    }
}

/// Gamma-ratio bound: sqrt(pi) Γ(k+1/2)/Γ(k) |T_k| on R_{k+1}, plus |T_k| for R_k.
pub fn bound_thm1(k: u32, z: ComplexPoint, target: Target) -> Result<BoundResult> {
    stirling_bound(BoundKind::Thm1, k, z, target)
}

/// sqrt(pi k) |T_k| on R_{k+1}, plus |T_k| for R_k.
pub fn bound_cor1(k: u32, z: ComplexPoint, target: Target) -> Result<BoundResult> {
    stirling_bound(BoundKind::Cor1, k, z, target)
}

/// (k/|z|)^2/(pi^2-1) |T_k| on R_{k+1} when k <= |z|.
pub fn bound_thm2(k: u32, z: ComplexPoint, target: Target) -> Result<BoundResult> {
    stirling_bound(BoundKind::Thm2, k, z, target)
}

/// c_k (k/|z|)^2 |T_k| on R_{k+1} when k <= |z| and k <= 100.
pub fn bound_lemma_ck(k: u32, z: ComplexPoint, target: Target) -> Result<BoundResult> {
    stirling_bound(BoundKind::LemmaCk, k, z, target)
}

fn eta_factor(k: u32, r: f64, opts: &BoundOptions, abs_allows: bool) -> (f64, Status) {
    if opts.omit_eta && (k >= 3 || (abs_allows && r >= 1.0)) {
        (1.0, Status::External)
    } else {
        (eta(k), Status::Proven)
    }
}

/// Gauss-series bound on R̂ relative to |T̂_k|: η_k times the Stirling constant.
pub fn bound_hat(k: u32, z: ComplexPoint, target: Target, base: HatBase) -> Result<BoundResult> {
    bound_hat_with(k, z, target, base, &BoundOptions::default())
}

pub fn bound_hat_with(
    k: u32,
    z: ComplexPoint,
    target: Target,
    base: HatBase,
    opts: &BoundOptions,
) -> Result<BoundResult> {
    check_k(k)?;
    let family = SeriesKind::Gauss;
    let (kind, stirling_kind) = match base {
        HatBase::Thm3 => (BoundKind::Thm3, BoundKind::Thm1),
        HatBase::Cor2 => (BoundKind::Cor2, BoundKind::Cor1),
        HatBase::Thm4 => (BoundKind::Thm4, BoundKind::Thm2),
        HatBase::LemmaCk => (BoundKind::LemmaCk, BoundKind::LemmaCk),
    };
    if let Some(na) = right_half_plane(kind, family, target, z) {
        return Ok(na);
    }
    let n = match base_normalized(stirling_kind, k, z) {
        Ok(n) => n,
        Err(reason) => return Ok(BoundResult::not_applicable(kind, family, target, reason)),
    };
    let (e, status) = if base == HatBase::Cor2 {
        eta_factor(k, abs_down(z), opts, true)
    } else {
        (eta(k), Status::Proven)
    };
    assemble(kind, family, target, plus_one(target, up(e * n)), k, z, status)
}

/// Bounds on R̃_{k+1}(t); `NoArctan` bounds the error when the arctan term is dropped.
pub fn bound_theta(k: u32, t: f64, variant: ThetaBound) -> Result<BoundResult> {
    bound_theta_with(k, t, variant, &BoundOptions::default())
}

pub fn bound_theta_with(k: u32, t: f64, variant: ThetaBound, opts: &BoundOptions) -> Result<BoundResult> {
    check_k(k)?;
    if !(t > 0.0) || !t.is_finite() {
        return domain("theta bounds need finite t > 0");
    }
    let family = SeriesKind::Theta;
    let target = Target::RkNext;
    let p = ComplexPoint { re: t, im: 0.0 };
    let it = ComplexPoint { re: 0.0, im: t };
    let kf = k as f64;
    let (kind, n, status) = match variant {
        ThetaBound::Thm6 => (BoundKind::Thm6, up(eta(k) * gamma_ratio_factor(k)), Status::Proven),
        ThetaBound::Cor3 | ThetaBound::NoArctan => {
            let (e, s) = eta_factor(k, t, opts, true);
            let kind = if variant == ThetaBound::Cor3 {
                BoundKind::Cor3
            } else {
                BoundKind::NoArctan
            };
            (kind, up(e * up((PI * kf).sqrt())), s)
        }
        ThetaBound::Cor4 | ThetaBound::LemmaCk => {
            let base = if variant == ThetaBound::Cor4 {
                BoundKind::Thm2
            } else {
                BoundKind::LemmaCk
            };
            let kind = if variant == ThetaBound::Cor4 {
                BoundKind::Cor4
            } else {
                BoundKind::LemmaCk
            };
            let n = match base_normalized(base, k, it) {
                Ok(n) => n,
                Err(_) => return Ok(BoundResult::not_applicable(kind, family, target, "requires t >= k")),
            };
            let (e, s) = if variant == ThetaBound::Cor4 {
                eta_factor(k, t, opts, false)
            } else {
                (eta(k), Status::Proven)
            };
            (kind, up(e * n), s)
        }
    };
    let mut r = assemble(kind, family, target, n, k, p, status)?;
    if variant == ThetaBound::NoArctan && r.applicable {
        r.value = up(r.value + up(0.5 * exp_neg_pi_t_up(t)));
        let (term, _) = reference_abs(family, k, p)?;
        r.normalized = if term > 0.0 { up(r.value / term) } else { f64::INFINITY };
    }
    Ok(r)
}

/// Bounds from the older literature, all on the Stirling remainder.
pub fn bound_literature(kind: Literature, k: u32, z: ComplexPoint, target: Target) -> Result<BoundResult> {
    check_k(k)?;
    let family = SeriesKind::Stirling;
    let bk = match kind {
        Literature::WhittakerWatson => BoundKind::WhittakerWatson,
        Literature::Stieltjes => BoundKind::Stieltjes,
        Literature::BehnkeSommer => BoundKind::BehnkeSommer,
        Literature::Hare => BoundKind::Hare,
    };
    let na = |reason: &str| Ok(BoundResult::not_applicable(bk, family, target, reason));
    if z.is_zero() {
        return na("z = 0");
    }
    // Each of these bounds R_m by a multiple of |T_m|; R_{k+1} uses m = k+1.
    let m = match target {
        Target::Rk => k,
        Target::RkNext => k + 1,
    };
    let theta = z.arg();
    match kind {
        Literature::WhittakerWatson => {
            if !(z.re > 0.0) {
                return na("requires Re(z) > 0");
            }
            let kz = if theta.abs() <= PI / 4.0 {
                1.0
            } else {
                up(1.0 / (2.0 * theta).sin().abs())
            };
            assemble(bk, family, target, kz, m, z, Status::Proven)
        }
        Literature::Stieltjes => {
            if z.im == 0.0 && z.re < 0.0 {
                return na("requires |arg z| < pi");
            }
            let c = (theta / 2.0).cos();
            let n = up((-(2.0 * m as f64) * c.ln()).exp() * (1.0 + 8.0 * m as f64 * f64::EPSILON));
            assemble(bk, family, target, n, m, z, Status::Proven)
        }
        Literature::BehnkeSommer => {
            if z.re < 0.0 {
                return na("requires Re(z) >= 0");
            }
            // |R_{n+1}/T_{n+1}| < 1 + ((2n+1)/2) sqrt(pi/n) with n = m - 1 >= 1
            let n = m - 1;
            if n == 0 {
                return na("requires k >= 1 in R_{k+1}/T_{k+1} form");
            }
            let nf = n as f64;
            let c = up(1.0 + up(up((2.0 * nf + 1.0) / 2.0) * up((PI / nf).sqrt())));
            assemble(bk, family, target, c, m, z, Status::Proven)
        }
        Literature::Hare => {
            if z.im == 0.0 {
                return na("requires Im(z) != 0");
            }
            // c(m) |B_2m| / (2m(2m-1) |Im z|^{2m-1}) = c(m) |T_m| (|z|/|Im z|)^{2m-1}
            let ratio = up(z.abs() / z.im.abs());
            let pow = up(ratio.powi(2 * m as i32 - 1) * (1.0 + 4.0 * m as f64 * f64::EPSILON));
            let c = up(4.0 * gamma_ratio_factor(m));
            assemble(bk, family, target, up(c * pow), m, z, Status::Proven)
        }
    }
}

/// The historical theta bound (2k)!/((2 pi)^{2k+2} t^{2k+1}) + e^{-pi t}. Known to be wrong.
pub fn bound_faulty(k: u32, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return domain("faulty bound needs finite t > 0");
    }
    let kf = k as f64;
    let ln_fact: f64 = (1..=2 * k).map(|i| (i as f64).ln()).sum();
    let ln = ln_fact - (2.0 * kf + 2.0) * (2.0 * PI).ln() - (2.0 * kf + 1.0) * t.ln();
    Ok(ln.exp() + (-PI * t).exp())
}

/// k^2/(pi^2|z|^2 - k^2) on |R_{k+1}/T_k| (unproven for k <= 33).
pub fn bound_conjectured(k: u32, z: ComplexPoint, target: Target) -> Result<BoundResult> {
    check_k(k)?;
    let kind = BoundKind::Conjectured;
    let family = SeriesKind::Stirling;
    if let Some(na) = right_half_plane(kind, family, target, z) {
        return Ok(na);
    }
    let r = abs_down(z);
    let kf = k as f64;
    if kf > r {
        return Ok(BoundResult::not_applicable(kind, family, target, "requires |z| >= k"));
    }
    let pz2 = PI * PI * r * r;
    let denom = (pz2 - kf * kf) * (1.0 - 4.0 * f64::EPSILON);
    let n = match target {
        Target::RkNext => kf * kf / denom,
        Target::Rk => pz2 * (1.0 + 4.0 * f64::EPSILON) / denom,
    };
    let status = if k >= 34 {
        Status::Proven
    } else {
        Status::Conjectured
    };
    assemble(kind, family, target, n, k, z, status)
}

/// Every bound for the context, applicable or not.
pub fn all_bounds(k: u32, z: ComplexPoint, context: SeriesKind, target: Target) -> Result<Vec<BoundResult>> {
    all_bounds_with(k, z, context, target, &BoundOptions::default())
}

pub fn all_bounds_with(
    k: u32,
    z: ComplexPoint,
    context: SeriesKind,
    target: Target,
    opts: &BoundOptions,
) -> Result<Vec<BoundResult>> {
    check_k(k)?;
    let mut out = Vec::new();
    match context {
        SeriesKind::Stirling => {
            out.push(bound_thm1(k, z, target)?);
            out.push(bound_cor1(k, z, target)?);
            out.push(bound_thm2(k, z, target)?);
            if k <= CK_MAX {
                out.push(bound_lemma_ck(k, z, target)?);
            }
            for lit in [
                Literature::WhittakerWatson,
                Literature::Stieltjes,
                Literature::BehnkeSommer,
                Literature::Hare,
            ] {
                out.push(bound_literature(lit, k, z, target)?);
            }
            out.push(bound_conjectured(k, z, target)?);
        }
        SeriesKind::Gauss => {
            for base in [HatBase::Thm3, HatBase::Cor2, HatBase::Thm4] {
                out.push(bound_hat_with(k, z, target, base, opts)?);
            }
            if k <= CK_MAX {
                out.push(bound_hat_with(k, z, target, HatBase::LemmaCk, opts)?);
            }
        }
        SeriesKind::Theta => {
            if z.im != 0.0 {
                return domain("theta bounds take a real t");
            }
            let t = z.re;
            if target == Target::Rk {
                return domain("theta bounds are stated for R̃_{k+1}");
            }
            for v in [ThetaBound::Thm6, ThetaBound::Cor3, ThetaBound::Cor4] {
                out.push(bound_theta_with(k, t, v, opts)?);
            }
            if k <= CK_MAX {
                out.push(bound_theta_with(k, t, ThetaBound::LemmaCk, opts)?);
            }
        }
    }
    Ok(out)
}

/// Smallest applicable rigorous bound for the context.
pub fn best_bound(k: u32, z: ComplexPoint, context: SeriesKind, target: Target) -> Result<BoundResult> {
    best_bound_with(k, z, context, target, &BoundOptions::default())
}

pub fn best_bound_with(
    k: u32,
    z: ComplexPoint,
    context: SeriesKind,
    target: Target,
    opts: &BoundOptions,
) -> Result<BoundResult> {
    let allowed = |b: &BoundResult| {
        b.applicable
            && match b.status {
                Status::Proven => true,
                Status::External => opts.omit_eta,
                Status::Conjectured | Status::Faulty => false,
            }
            && b.kind != BoundKind::Conjectured
    };
    all_bounds_with(k, z, context, target, opts)?
        .into_iter()
        .filter(allowed)
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .ok_or_else(|| Error::NoApplicableBound(format!("k = {k}, z = {} + {}i", z.re, z.im)))
}
