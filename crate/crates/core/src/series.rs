//! Terms of the Stirling, Gauss and theta asymptotic series, their partial
//! sums, and the location of the smallest theta term.

use num_complex::Complex64;
use rug::{Float, Rational};

use crate::bernoulli::{self, MAX_INDEX};
use crate::error::{domain, Error, Result};
use crate::ext::ExtReal;
pub use crate::scaled::RangeFlag;
use crate::scaled::ScaledComplex;

/// Largest term index whose Bernoulli number is available.
pub const MAX_TERM: u32 = MAX_INDEX / 2;

/// A finite point of the complex plane in double precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return domain("complex point must have finite components");
        }
        Ok(ComplexPoint { re, im })
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn arg(self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    pub fn in_right_half_plane(self) -> bool {
        self.re >= 0.0 && !self.is_zero()
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        ComplexPoint { re: z.re, im: z.im }
    }
}

/// One term of a series, with its magnitude kept even when the double overflows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermValue {
    pub index: u32,
    pub value: Complex64,
    /// log2 of the exact-range magnitude.
    pub log2_abs: f64,
    pub flag: RangeFlag,
}

impl TermValue {
    pub fn abs(&self) -> f64 {
        self.value.norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Stirling,
    Gauss,
    Theta,
}

fn check_term_index(j: u32) -> Result<()> {
    if j == 0 {
        return domain("term index must be at least 1");
    }
    if j > MAX_TERM {
        return Err(Error::Resource(format!(
            "term index {j} needs B_{} beyond the cap {MAX_INDEX}",
            2 * j
        )));
    }
    Ok(())
}

pub(crate) fn term_scaled(j: u32, z: Complex64, half: bool) -> Result<ScaledComplex> {
    check_term_index(j)?;
    if z.re == 0.0 && z.im == 0.0 {
        return domain("series terms are undefined at z = 0");
    }
    let (mant, exp) = bernoulli::even_scaled(j, half)?;
    let denom = (2 * j as u64 * (2 * j as u64 - 1)) as f64;
    let coef = ScaledComplex::from_parts(mant / denom, exp as i64);
    Ok(ScaledComplex::new(z).recip().powu(2 * j - 1).mul(&coef))
}

fn finish(j: u32, s: ScaledComplex) -> TermValue {
    let (value, flag) = s.to_complex();
    TermValue {
        index: j,
        value,
        log2_abs: s.log2_abs(),
        flag,
    }
}

/// Relative rounding error bound of a term computed by [`stirling_term`] or [`gauss_term`].
pub(crate) fn term_rel_error(j: u32) -> f64 {
    let steps = (2.0 * j as f64).log2().ceil();
    (8.0 + 6.0 * steps) * f64::EPSILON / 2.0
}

/// T_j(z) = B_2j / (2j (2j-1) z^{2j-1}).
pub fn stirling_term(j: u32, z: ComplexPoint) -> Result<TermValue> {
    Ok(finish(j, term_scaled(j, z.to_c64(), false)?))
}

/// T̂_j(z) = B_2j(1/2) / (2j (2j-1) z^{2j-1}).
pub fn gauss_term(j: u32, z: ComplexPoint) -> Result<TermValue> {
    Ok(finish(j, term_scaled(j, z.to_c64(), true)?))
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return domain("theta terms need finite t > 0");
    }
    Ok(())
}

pub(crate) fn theta_term_scaled(j: u32, t: f64) -> Result<ScaledComplex> {
    check_t(t)?;
    Ok(term_scaled(j, Complex64::new(t, 0.0), true)?.scale(-0.5))
}

/// T̃_j(t) = |B_2j(1/2)| / (4j (2j-1) t^{2j-1}); zero if it underflows.
pub fn theta_term(j: u32, t: f64) -> Result<f64> {
    Ok(theta_term_scaled(j, t)?.abs_f64().0)
}

/// T̃_j(t) in extended precision, at the precision of `t`.
pub fn theta_term_ext(j: u32, t: &ExtReal) -> Result<ExtReal> {
    check_term_index(j)?;
    if !(*t > 0.0) {
        return domain("theta terms need t > 0");
    }
    let prec = t.as_float().prec();
    let b = Float::with_val(prec, bernoulli::half_float(j, prec)?.abs());
    let b = ExtReal::from_float(b, t.precision_digits());
    let denom = 4 * j as i64 * (2 * j as i64 - 1);
    Ok(b.div_i64(denom) / t.powi(2 * j as i32 - 1))
}

/// Sum of the first `k` terms in ascending order. Theta sums need a real positive argument.
pub fn partial_sum(kind: SeriesKind, k: u32, z: ComplexPoint) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    if kind == SeriesKind::Theta && (z.im != 0.0 || !(z.re > 0.0)) {
        return domain("theta partial sums need a real t > 0");
    }
    for j in 1..=k {
        acc += match kind {
            SeriesKind::Stirling => stirling_term(j, z)?.value,
            SeriesKind::Gauss => gauss_term(j, z)?.value,
            SeriesKind::Theta => Complex64::new(theta_term(j, z.re)?, 0.0),
        };
    }
    Ok(acc)
}

/// Location and size of the smallest theta term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinTermReport {
    pub t: f64,
    pub k_min: u32,
    /// T̃_{k_min}(t); zero once it underflows, see `ln_t_min`.
    pub t_min: f64,
    pub ln_t_min: f64,
}

/// Exact test of T̃_k(t) <= T̃_{k+1}(t) (or `<` when `strict`).
fn theta_nondecreasing_at(k: u32, t: &Rational, strict: bool) -> Result<bool> {
    let a = bernoulli::half_abs_rational(k)?;
    let b = bernoulli::half_abs_rational(k + 1)?;
    let k = k as u64;
    let lhs = a * Rational::from(t * t) * ((k + 1) * (2 * k + 1));
    let rhs = b * (k * (2 * k - 1));
    Ok(if strict { lhs < rhs } else { lhs <= rhs })
}

fn exact_t(t: f64) -> Result<Rational> {
    check_t(t)?;
    Ok(Rational::from_f64(t).expect("finite"))
}

/// Least k >= 1 with T̃_k(t) <= T̃_{k+1}(t), decided in exact arithmetic.
pub fn k_min(t: f64) -> Result<MinTermReport> {
    let tq = exact_t(t)?;
    for k in 1..MAX_TERM {
        if theta_nondecreasing_at(k, &tq, false)? {
            let s = theta_term_scaled(k, t)?;
            return Ok(MinTermReport {
                t,
                k_min: k,
                t_min: s.abs_f64().0,
                ln_t_min: s.log2_abs() * std::f64::consts::LN_2,
            });
        }
    }
    Err(Error::Resource(format!(
        "smallest theta term at t = {t} lies beyond the Bernoulli cap"
    )))
}

/// Strict decrease before k_min(t) and strict increase after it, up to `k_max`.
pub fn unimodality_check(t: f64, k_max: u32) -> Result<bool> {
    let report = k_min(t)?;
    let tq = exact_t(t)?;
    if k_max >= MAX_TERM {
        return Err(Error::Resource(format!("k_max {k_max} beyond the Bernoulli cap")));
    }
    for k in 1..report.k_min {
        if theta_nondecreasing_at(k, &tq, false)? {
            return Ok(false);
        }
    }
    for k in report.k_min..k_max {
        if !theta_nondecreasing_at(k, &tq, true)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// T̃_j(t) / T̃_{j+1}(t).
pub fn term_ratio(j: u32, t: f64) -> Result<f64> {
    let a = theta_term_scaled(j, t)?;
    let b = theta_term_scaled(j + 1, t)?;
    Ok((a.log2_abs() - b.log2_abs()).exp2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pt(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im).unwrap()
    }

    #[test]
    fn stirling_examples() {
        let one = pt(1.0, 0.0);
        assert!((stirling_term(1, one).unwrap().value.re - 1.0 / 12.0).abs() < 1e-17);
        assert!((stirling_term(2, one).unwrap().value.re + 1.0 / 360.0).abs() < 1e-18);
        assert!(stirling_term(1, pt(0.0, 0.0)).is_err());
    }

    #[test]
    fn imaginary_axis_terms_are_aligned() {
        for &y in &[0.3, 1.0, 7.5, 40.0] {
            for j in 1..=60 {
                let v = stirling_term(j, pt(0.0, y)).unwrap();
                if v.flag != RangeFlag::Normal {
                    continue;
                }
                let w = v.value * Complex64::i();
                assert!(w.re > 0.0, "j={j} y={y}");
                assert!(w.im.abs() < 1e-14 * v.abs());
            }
        }
    }

    #[test]
    fn gauss_examples() {
        let g = gauss_term(1, pt(1.0, 0.0)).unwrap().value;
        assert!((g.re + 1.0 / 24.0).abs() < 1e-17);
        let z = pt(2.0, 5.0);
        let ratio = gauss_term(3, z).unwrap().value / stirling_term(3, z).unwrap().value;
        assert!((ratio.re + (1.0 - 2f64.powi(-5))).abs() < 1e-15);
        assert!(ratio.im.abs() < 1e-15);
        let g = gauss_term(2, pt(0.0, 1.0)).unwrap();
        assert!((g.abs() - 7.0 / 2880.0).abs() < 1e-18);
    }

    #[test]
    fn gauss_to_stirling_magnitude_ratio() {
        let zs = [pt(1.0, 0.0), pt(0.5, 3.0), pt(12.0, -4.0), pt(0.0, 25.0)];
        for z in zs {
            for j in 1..=100 {
                let s = stirling_term(j, z).unwrap();
                let g = gauss_term(j, z).unwrap();
                if s.flag != RangeFlag::Normal || g.flag != RangeFlag::Normal {
                    continue;
                }
                let expected = (1.0 - 2f64.powi(1 - 2 * j as i32)) * s.abs();
                assert!((g.abs() - expected).abs() <= 10.0 * f64::EPSILON * expected);
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert!((theta_term(1, 1.0).unwrap() - 1.0 / 48.0).abs() < 1e-18);
        assert!((theta_term(1, 4.0).unwrap() - 1.0 / 192.0).abs() < 1e-18);
        // half of |T̂_2(1)| = 7/2880
        assert!((theta_term(2, 1.0).unwrap() - 7.0 / 5760.0).abs() < 1e-18);
        assert!(theta_term(1, 0.0).is_err());
        assert!(theta_term(1, -1.0).is_err());
    }

    #[test]
    fn theta_term_ext_matches_double() {
        let t = ExtReal::from_f64(3.5, 40);
        for j in [1, 5, 20] {
            let e = theta_term_ext(j, &t).unwrap().to_f64();
            let d = theta_term(j, 3.5).unwrap();
            assert!((e - d).abs() <= 1e-14 * d);
        }
    }

    #[test]
    fn partial_sums() {
        let one = pt(1.0, 0.0);
        assert_eq!(partial_sum(SeriesKind::Stirling, 0, one).unwrap(), Complex64::new(0.0, 0.0));
        let s = partial_sum(SeriesKind::Theta, 2, one).unwrap();
        assert!((s.re - (1.0 / 48.0 + 7.0 / 5760.0)).abs() < 1e-17);
        let s = partial_sum(SeriesKind::Stirling, 1, one).unwrap();
        assert!((s.re - 1.0 / 12.0).abs() < 1e-17);
        assert!(partial_sum(SeriesKind::Theta, 1, pt(1.0, 1.0)).is_err());
    }

    #[test]
    fn k_min_table_rows() {
        let rows = [(1.0, 4), (2.0, 7), (5.0, 16), (10.0, 32), (20.0, 64), (50.0, 158), (100.0, 315)];
        for (t, k) in rows {
            let r = k_min(t).unwrap();
            assert_eq!(r.k_min, k, "t={t}");
            assert!(r.t_min > 0.0);
        }
    }

    #[test]
    fn k_min_near_pi_t() {
        let mut t = 1.0;
        while t <= 100.0 {
            let guess = (PI * t + 1.25).floor() as i64;
            let k = k_min(t).unwrap().k_min as i64;
            assert!((k - guess).abs() <= 1, "t={t} k={k} guess={guess}");
            t += 0.37;
        }
    }

    #[test]
    fn small_t_starts_increasing() {
        assert_eq!(k_min(0.1).unwrap().k_min, 1);
        assert_eq!(k_min(0.24).unwrap().k_min, 1);
        assert!(k_min(0.25).unwrap().k_min > 1);
        assert!(unimodality_check(0.1, 20).unwrap());
    }

    #[test]
    fn unimodal_examples() {
        assert!(unimodality_check(1.0, 20).unwrap());
        assert!(unimodality_check(50.0, 300).unwrap());
    }

    #[test]
    fn ratio_law() {
        assert!((term_ratio(1, 1.0).unwrap() - 120.0 / 7.0).abs() < 1e-13);
        for &t in &[1.0, 3.0, 10.0] {
            let mut prev = f64::INFINITY;
            for k in 1..=60 {
                let r = term_ratio(k, t).unwrap();
                // 2k(2k-1)/(4 pi^2 t^2) approximates the reciprocal T̃_{k+1}/T̃_k
                let approx = (2 * k * (2 * k - 1)) as f64 / (4.0 * PI * PI * t * t);
                if k >= 8 {
                    assert!((r * approx - 1.0).abs() < 0.01, "k={k} t={t}");
                }
                assert!(r < prev && r > 0.0);
                prev = r;
            }
        }
    }

    #[test]
    fn minimal_term_size() {
        // T̃_min ~ e^{-2 pi t} / (2 pi sqrt t)
        for &t in &[10.0, 20.0, 50.0, 100.0] {
            let r = k_min(t).unwrap();
            let ln_guess = -2.0 * PI * t - (2.0 * PI * t.sqrt()).ln();
            let ratio = (r.ln_t_min - ln_guess).exp();
            assert!((ratio - 1.0).abs() < 5.0 / t, "t={t} ratio={ratio}");
        }
    }
}
