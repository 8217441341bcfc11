//! Certified Riemann-Siegel theta function from its asymptotic series.

use std::f64::consts::PI;

use crate::bounds::{self, exp_neg_pi_t_up, up, ThetaBound};
use crate::error::{domain, Error, Result};
use crate::series::{self, MAX_TERM};

const EPS: f64 = f64::EPSILON / 2.0;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaVariant {
    /// Series without the arctan term.
    Standard,
    /// Series with ½ arctan(e^{-πt}).
    Arctan,
    /// Arctan variant plus (πt - k_min + c) T̃_min.
    Empirical,
}

impl ThetaVariant {
    pub fn name(self) -> &'static str {
        match self {
            ThetaVariant::Standard => "standard",
            ThetaVariant::Arctan => "arctan",
            ThetaVariant::Empirical => "empirical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Terms {
    /// k = k_min(t).
    Auto,
    Fixed(u32),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaOptions {
    /// The constant c in the empirical correction (πt - k_min + c) T̃_min.
    pub empirical_constant: f64,
}

impl Default for ThetaOptions {
    fn default() -> Self {
        ThetaOptions {
            empirical_constant: 1.0 / 12.0,
        }
    }
}

/// Uncertified information about the empirical correction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmpiricalAdvisory {
    pub correction: f64,
    pub t_min: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaResult {
    pub t: f64,
    pub value: f64,
    pub radius: f64,
    pub k_used: u32,
    pub variant: ThetaVariant,
    pub flags: Vec<String>,
    pub advisory: Option<EmpiricalAdvisory>,
}

pub const UNDERFLOW_FOLDED: &str = "UNDERFLOW_FOLDED";
pub const LOW_ACCURACY: &str = "LOW_ACCURACY";

/// ½ arctan(e^{-πt}).
pub fn arctan_term(t: f64) -> f64 {
    0.5 * (-PI * t).exp().atan()
}

/// -½ log(1 + e^{-2πt}), the real part of R̂_k(it) for every k.
pub fn re_rhat_identity(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return domain("re_rhat_identity needs t >= 0");
    }
    Ok(-0.5 * (-2.0 * PI * t).exp().ln_1p())
}

/// ϑ(t) with a certified radius; negative t by oddness.
pub fn eval_theta(t: f64, terms: Terms, variant: ThetaVariant) -> Result<ThetaResult> {
    eval_theta_with(t, terms, variant, &ThetaOptions::default())
}

pub fn eval_theta_with(t: f64, terms: Terms, variant: ThetaVariant, opts: &ThetaOptions) -> Result<ThetaResult> {
    if !t.is_finite() {
        return domain("t must be finite");
    }
    if t == 0.0 {
        return Ok(ThetaResult {
            t,
            value: 0.0,
            radius: 0.0,
            k_used: 1,
            variant,
            flags: Vec::new(),
            advisory: None,
        });
    }
    if t < 0.0 {
        let mut r = positive(-t, terms, variant, opts)?;
        r.t = t;
        r.value = -r.value;
        if let Some(a) = r.advisory.as_mut() {
            a.correction = -a.correction;
        }
        return Ok(r);
    }
    positive(t, terms, variant, opts)
}

fn positive(t: f64, terms: Terms, variant: ThetaVariant, opts: &ThetaOptions) -> Result<ThetaResult> {
    let report = series::k_min(t)?;
    let k = match terms {
        Terms::Auto => report.k_min,
        Terms::Fixed(k) => k,
    };
    if k == 0 {
        return domain("k must be at least 1");
    }
    if k >= MAX_TERM {
        return Err(Error::Resource(format!("k = {k} needs Bernoulli numbers beyond the cap")));
    }
    if variant == ThetaVariant::Empirical && k != report.k_min {
        return domain(format!("the empirical correction is defined at k = k_min(t) = {}", report.k_min));
    }
    let mut flags = Vec::new();
    if report.k_min == 1 && t <= (7.0f64 / 120.0).sqrt() {
        flags.push(LOW_ACCURACY.to_string());
    }

    // (t/2)(log t - log 2π - 1) - π/8
    let lt = t.ln();
    let inner = lt - LN_2PI - 1.0;
    let mut fp = 4.0 * EPS * (lt.abs() + LN_2PI + 1.0);
    let mut value = 0.5 * t * inner;
    fp = up(0.5 * t * fp + 2.0 * EPS * value.abs());
    value -= PI / 8.0;
    fp = up(fp + 2.0 * EPS * (value.abs() + 1.0));

    for j in 1..=k {
        let s = series::theta_term_scaled(j, t)?;
        let (term, _) = s.abs_f64();
        value += term;
        fp = up(fp + term * series::term_rel_error(j) + 2.0 * EPS * value.abs());
        if term < f64::MIN_POSITIVE {
            fp = up(fp + f64::MIN_POSITIVE);
        }
    }

    let truncation = bounds::all_bounds(k, series::ComplexPoint { re: t, im: 0.0 }, series::SeriesKind::Theta, bounds::Target::RkNext)?
        .into_iter()
        .filter(|b| b.is_rigorous())
        .map(|b| b.value)
        .fold(f64::INFINITY, f64::min);
    let truncation = if truncation.is_finite() {
        truncation
    } else {
        bounds::bound_theta(k, t, ThetaBound::Thm6)?.value
    };

    let mut radius = truncation;
    let half_exp = up(0.5 * exp_neg_pi_t_up(t));
    match variant {
        ThetaVariant::Standard => radius = up(radius + half_exp),
        ThetaVariant::Arctan | ThetaVariant::Empirical => {
            let a = arctan_term(t);
            if a == 0.0 || a < f64::MIN_POSITIVE {
                radius = up(radius + half_exp);
                flags.push(UNDERFLOW_FOLDED.to_string());
            } else {
                value += a;
                fp = up(fp + 4.0 * EPS * a * (PI * t + 2.0) + 2.0 * EPS * value.abs());
            }
        }
    }

    let mut advisory = None;
    if variant == ThetaVariant::Empirical {
        let factor = PI * t - report.k_min as f64 + opts.empirical_constant;
        let correction = factor * report.t_min;
        value += correction;
        // no theorem backs the correction, so its full size stays in the radius
        radius = up(radius + correction.abs() * (1.0 + 8.0 * EPS));
        fp = up(fp + 2.0 * EPS * value.abs());
        advisory = Some(EmpiricalAdvisory {
            correction,
            t_min: report.t_min,
        });
    }

    Ok(ThetaResult {
        t,
        value,
        radius: up(radius + fp),
        k_used: k,
        variant,
        flags,
        advisory,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // ϑ(1), ϑ(10) from the definition via arg Γ(it/2 + 1/4)
    const THETA_1: f64 = -1.767_547_952_812_290_4;
    const THETA_10: f64 = -3.067_074_396_289_895_3;

    #[test]
    fn zero_and_oddness() {
        let r = eval_theta(0.0, Terms::Auto, ThetaVariant::Arctan).unwrap();
        assert_eq!((r.value, r.radius), (0.0, 0.0));
        for v in [ThetaVariant::Standard, ThetaVariant::Arctan, ThetaVariant::Empirical] {
            let a = eval_theta(5.0, Terms::Auto, v).unwrap();
            let b = eval_theta(-5.0, Terms::Auto, v).unwrap();
            assert_eq!(a.value, -b.value);
            assert_eq!(a.radius, b.radius);
        }
    }

    #[test]
    fn auto_uses_k_min() {
        let r = eval_theta(1.0, Terms::Auto, ThetaVariant::Arctan).unwrap();
        assert_eq!(r.k_used, 4);
        let tmin = series::theta_term(4, 1.0).unwrap();
        assert!(r.radius / tmin <= 3.58);
        assert!((r.value - THETA_1).abs() <= r.radius);
    }

    #[test]
    fn containment_at_reference_points() {
        for v in [ThetaVariant::Standard, ThetaVariant::Arctan, ThetaVariant::Empirical] {
            let r = eval_theta(10.0, Terms::Auto, v).unwrap();
            assert!((r.value - THETA_10).abs() <= r.radius, "{v:?} {r:?}");
        }
        let r = eval_theta(10.0, Terms::Fixed(32), ThetaVariant::Arctan).unwrap();
        assert!((r.value - THETA_10).abs() <= r.radius);
    }

    #[test]
    fn standard_radius_has_exponential_term() {
        let a = eval_theta(10.0, Terms::Auto, ThetaVariant::Standard).unwrap();
        let b = eval_theta(10.0, Terms::Auto, ThetaVariant::Arctan).unwrap();
        assert!(a.radius >= 0.5 * (-10.0 * PI).exp());
        assert!(a.radius > b.radius);
    }

    #[test]
    fn empirical_needs_k_min() {
        assert!(eval_theta(10.0, Terms::Fixed(20), ThetaVariant::Empirical).is_err());
        let r = eval_theta(10.0, Terms::Auto, ThetaVariant::Empirical).unwrap();
        assert!(r.advisory.is_some());
    }

    #[test]
    fn underflow_is_folded() {
        let r = eval_theta(300.0, Terms::Fixed(10), ThetaVariant::Arctan).unwrap();
        assert!(r.flags.iter().any(|f| f == UNDERFLOW_FOLDED));
        assert!(r.radius > 0.0);
    }

    #[test]
    fn small_t_regime() {
        let r = eval_theta(0.1, Terms::Auto, ThetaVariant::Arctan).unwrap();
        assert_eq!(r.k_used, 1);
        assert!(r.flags.iter().any(|f| f == LOW_ACCURACY));
    }

    #[test]
    fn helper_values() {
        assert!((arctan_term(0.0) - PI / 8.0).abs() < 1e-16);
        assert!((arctan_term(1.0) - 0.021_593_524_262_391_06).abs() < 1e-16);
        for t in [0.1, 1.0, 3.0] {
            assert!(arctan_term(t) < 0.5 * (-PI * t).exp());
        }
        assert!((re_rhat_identity(0.0).unwrap() + 0.5 * 2f64.ln()).abs() < 1e-16);
        let t = 4.0;
        let v = re_rhat_identity(t).unwrap();
        assert!((v / (-0.5 * (-2.0 * PI * t).exp()) - 1.0).abs() < 1e-10);
    }
}
