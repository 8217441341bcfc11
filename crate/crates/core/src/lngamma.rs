//! Certified ln Γ(z) and ln Γ(z+1/2) in double precision.
//!
//! The argument is shifted by the recurrence until |z + n| >= max(k, 1), the
//! truncated series is summed at the shifted point, and the radius combines
//! the best rigorous truncation bound with a running bound on rounding error.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bounds::{self, up, BoundKind, Target};
use crate::error::{domain, Error, Result};
use crate::series::{self, ComplexPoint, SeriesKind, MAX_TERM};

const EPS: f64 = f64::EPSILON / 2.0;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Request {
    /// Sum exactly this many terms.
    Terms(u32),
    /// Smallest number of terms whose certified radius is at most this.
    Accuracy(f64),
    /// Accuracy 1e-12 (|value| + 1).
    Default,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPlan {
    pub k: u32,
    pub shifts: u32,
    pub bound_kind: BoundKind,
    pub truncation_bound: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedValue {
    pub value: Complex64,
    /// |truth - value| <= radius, rounding included.
    pub radius: f64,
    pub plan: TruncationPlan,
    /// Evaluated through the reflection formula at 1 - z.
    pub reflected: bool,
}

/// Running bound on accumulated rounding error.
#[derive(Default)]
struct FpError(f64);

impl FpError {
    fn add(&mut self, e: f64) {
        self.0 = up(self.0 + e);
    }

    /// Error of one floating addition producing `sum`.
    fn sum(&mut self, sum: Complex64) {
        self.add(2.0 * EPS * sum.norm());
    }

    /// Error of a computed principal logarithm `lw` of an exact argument.
    fn log(&mut self, lw: Complex64) {
        self.add(4.0 * EPS * (lw.norm() + 4.0));
    }
}

fn shifts_for(z: Complex64, m: u32) -> u32 {
    let m = m.max(1) as f64;
    let reached = |n: u32| {
        let w = ComplexPoint {
            re: z.re + n as f64,
            im: z.im,
        };
        w.abs() * (1.0 - 2.0 * f64::EPSILON) >= m
    };
    let mut n = if z.im.abs() >= m {
        0
    } else {
        ((m * m - z.im * z.im).sqrt() - z.re).ceil().max(0.0) as u32
    };
    while !reached(n) {
        n += 1;
    }
    while n > 0 && reached(n - 1) {
        n -= 1;
    }
    n
}

fn context_of(half: bool) -> SeriesKind {
    if half {
        SeriesKind::Gauss
    } else {
        SeriesKind::Stirling
    }
}

fn plan_for_k(z: Complex64, k: u32, half: bool) -> Result<TruncationPlan> {
    if k == 0 || k >= MAX_TERM {
        return Err(Error::Resource(format!("k = {k} outside 1..{MAX_TERM}")));
    }
    let shifts = shifts_for(z, k);
    let w = ComplexPoint::from(z + shifts as f64);
    let b = bounds::best_bound(k, w, context_of(half), Target::RkNext)?;
    Ok(TruncationPlan {
        k,
        shifts,
        bound_kind: b.kind,
        truncation_bound: b.value,
    })
}

fn check_point(z: ComplexPoint, half: bool) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return domain("argument must be finite");
    }
    if half {
        if z.re < 0.0 {
            return domain("ln Γ(z+1/2) is evaluated for Re(z) >= 0 only");
        }
    } else if z.im == 0.0 && z.re <= 0.0 {
        return domain("ln Γ(z) is undefined on the cut (-inf, 0]");
    }
    Ok(z.to_c64())
}

/// Smallest k (with its shifts) whose truncation bound is at most `eps`.
///
/// For Stirling plans at Re(z) < 0 the plan is for the reflected point 1 - z.
pub fn choose_k(z: ComplexPoint, eps: f64, context: SeriesKind) -> Result<TruncationPlan> {
    if !(eps > 0.0) {
        return domain("accuracy must be positive");
    }
    let half = match context {
        SeriesKind::Stirling => false,
        SeriesKind::Gauss => true,
        SeriesKind::Theta => return domain("choose_k plans Stirling or Gauss sums"),
    };
    let mut zc = check_point(z, half)?;
    if !half && zc.re < 0.0 {
        zc = Complex64::new(1.0, 0.0) - zc;
    }
    let mut best = f64::INFINITY;
    for k in 1..MAX_TERM {
        let plan = plan_for_k(zc, k, half)?;
        if plan.truncation_bound <= eps {
            return Ok(plan);
        }
        best = best.min(plan.truncation_bound);
    }
    Err(Error::Accuracy { requested: eps, best })
}

/// Sum at the shifted point; returns the value and the rounding-error bound.
fn right_half(z: Complex64, plan: &TruncationPlan, half: bool) -> Result<(Complex64, f64)> {
    let mut fp = FpError::default();
    let n = plan.shifts;
    let w = z + n as f64;
    // rounding of z + n perturbs the evaluation point
    fp.add(EPS * w.norm() * (w.norm().ln().abs() + PI + 2.0));
    let lw = w.ln();
    fp.log(lw);
    let mut acc = if half {
        let main = w * lw;
        fp.add(4.0 * EPS * main.norm() + w.norm() * 4.0 * EPS * (lw.norm() + 4.0));
        main - w
    } else {
        let wh = w - 0.5;
        let main = wh * lw;
        fp.add(4.0 * EPS * main.norm() + wh.norm() * 4.0 * EPS * (lw.norm() + 4.0));
        main - w
    };
    fp.sum(acc);
    acc += 0.5 * LN_2PI;
    fp.sum(acc);
    fp.add(EPS);
    let wp = ComplexPoint::from(w);
    for j in 1..=plan.k {
        let t = if half {
            series::gauss_term(j, wp)?
        } else {
            series::stirling_term(j, wp)?
        };
        acc += t.value;
        fp.add(t.abs() * series::term_rel_error(j));
        if t.flag == series::RangeFlag::Underflow {
            fp.add(f64::MIN_POSITIVE);
        }
        fp.sum(acc);
    }
    let offset = if half { 0.5 } else { 0.0 };
    for m in 0..n {
        let v = z + (m as f64 + offset);
        fp.add(4.0 * EPS);
        let lv = v.ln();
        fp.log(lv);
        acc -= lv;
        fp.sum(acc);
    }
    Ok((acc, fp.0))
}

fn resolve_plan(z: Complex64, request: Request, half: bool) -> Result<TruncationPlan> {
    let p = ComplexPoint::from(z);
    match request {
        Request::Terms(k) => plan_for_k(z, k, half),
        Request::Accuracy(eps) => choose_k(p, eps / 2.0, context_of(half)),
        Request::Default => unreachable!("resolved by caller"),
    }
}

fn certify(z: Complex64, request: Request, half: bool) -> Result<CertifiedValue> {
    let plan = resolve_plan(z, request, half)?;
    let (value, fp) = right_half(z, &plan, half)?;
    let radius = up(plan.truncation_bound + fp);
    if let Request::Accuracy(eps) = request {
        if radius > eps {
            return Err(Error::Accuracy {
                requested: eps,
                best: radius,
            });
        }
    }
    Ok(CertifiedValue {
        value,
        radius,
        plan,
        reflected: false,
    })
}

fn default_request<F>(eval: F) -> Result<CertifiedValue>
where
    F: Fn(Request) -> Result<CertifiedValue>,
{
    let rough = eval(Request::Terms(8))?;
    let eps = 1e-12 * (rough.value.norm() + 1.0);
    eval(Request::Accuracy(eps))
}

/// ln Γ(z) on the plane cut along (-inf, 0], principal branch.
pub fn eval_lngamma(z: ComplexPoint, request: Request) -> Result<CertifiedValue> {
    let zc = check_point(z, false)?;
    if request == Request::Default {
        return default_request(|r| eval_lngamma(z, r));
    }
    if zc.re >= 0.0 {
        return certify(zc, request, false);
    }
    reflect(zc, request)
}

/// ln Γ(z) = log 2π + iπz - iπ/2 - log(1 - e^{2πiz}) - ln Γ(1 - z) for Im z > 0.
fn reflect(z: Complex64, request: Request) -> Result<CertifiedValue> {
    let upper = z.im > 0.0;
    let zu = if upper { z } else { z.conj() };
    let w = Complex64::new(1.0, 0.0) - zu;
    let inner_request = match request {
        Request::Accuracy(eps) => Request::Accuracy(eps / 2.0),
        r => r,
    };
    let inner = certify(w, inner_request, false)?;
    let mut fp = FpError::default();
    fp.add(2.0 * EPS * w.norm());
    // q = e^{2πiz} with the real part reduced exactly modulo 1
    let xr = zu.re - zu.re.round();
    let mag = (-2.0 * PI * zu.im).exp();
    let ang = 2.0 * PI * xr;
    let q = Complex64::new(mag * ang.cos(), mag * ang.sin());
    let one_minus_q = Complex64::new(1.0, 0.0) - q;
    let dq = 8.0 * EPS * mag * (1.0 + 2.0 * PI * zu.im);
    let lq = one_minus_q.ln();
    fp.add(dq / (one_minus_q.norm() - dq).max(f64::MIN_POSITIVE) * 2.0);
    fp.log(lq);
    let lin = Complex64::new(-PI * zu.im, PI * zu.re - PI / 2.0);
    fp.add(4.0 * EPS * (PI * zu.norm() + 2.0));
    let mut v = lin + LN_2PI;
    fp.sum(v);
    v -= lq;
    fp.sum(v);
    v -= inner.value;
    fp.sum(v);
    let value = if upper { v } else { v.conj() };
    let radius = up(inner.radius + fp.0);
    if let Request::Accuracy(eps) = request {
        if radius > eps {
            return Err(Error::Accuracy {
                requested: eps,
                best: radius,
            });
        }
    }
    Ok(CertifiedValue {
        value,
        radius,
        plan: inner.plan,
        reflected: true,
    })
}

/// ln Γ(z + 1/2) for Re(z) >= 0.
pub fn eval_lngamma_half(z: ComplexPoint, request: Request) -> Result<CertifiedValue> {
    let zc = check_point(z, true)?;
    if request == Request::Default {
        return default_request(|r| eval_lngamma_half(z, r));
    }
    certify(zc, request, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im).unwrap()
    }

    fn contains(c: &CertifiedValue, re: f64, im: f64) -> bool {
        (c.value - Complex64::new(re, im)).norm() <= c.radius
    }

    #[test]
    fn simple_values() {
        let c = eval_lngamma(pt(1.0, 0.0), Request::Terms(8)).unwrap();
        assert!(c.plan.shifts >= 7);
        assert!(contains(&c, 0.0, 0.0));
        assert!(c.radius < 1e-12);
        let c = eval_lngamma(pt(0.5, 0.0), Request::Default).unwrap();
        assert!(contains(&c, 0.5 * PI.ln(), 0.0));
        assert!((c.value.re - 0.572_364_942_924_700_1).abs() < 1e-12);
        let c = eval_lngamma_half(pt(0.5, 0.0), Request::Default).unwrap();
        assert!(contains(&c, 0.0, 0.0));
        let c = eval_lngamma_half(pt(0.0, 0.0), Request::Accuracy(1e-13)).unwrap();
        assert!(contains(&c, 0.5 * PI.ln(), 0.0));
    }

    #[test]
    fn reference_values() {
        // ln Γ(10 + 10i) and ln Γ(-2.5 + 0.5i), principal branch
        let c = eval_lngamma(pt(10.0, 10.0), Request::Terms(10)).unwrap();
        assert!(contains(&c, 8.236_131_750_448_718, 23.948_703_413_782_037), "{c:?}");
        let c = eval_lngamma(pt(-2.5, 0.5), Request::Accuracy(1e-12)).unwrap();
        assert!(c.reflected);
        assert!(contains(&c, -0.935_085_621_298_277_5, -8.870_962_885_247_459), "{c:?}");
    }

    #[test]
    fn conjugate_symmetry() {
        for &(x, y) in &[(3.0, 2.0), (-4.2, 0.1), (0.0, 7.0)] {
            let a = eval_lngamma(pt(x, y), Request::Accuracy(1e-12)).unwrap();
            let b = eval_lngamma(pt(x, -y), Request::Accuracy(1e-12)).unwrap();
            assert!((a.value - b.value.conj()).norm() <= a.radius + b.radius);
        }
    }

    #[test]
    fn cut_is_rejected() {
        assert!(eval_lngamma(pt(0.0, 0.0), Request::Default).is_err());
        assert!(eval_lngamma(pt(-3.0, 0.0), Request::Default).is_err());
        assert!(eval_lngamma_half(pt(-0.1, 1.0), Request::Default).is_err());
    }

    #[test]
    fn accuracy_requests() {
        let c = eval_lngamma(pt(1.0, 0.0), Request::Accuracy(1e-10)).unwrap();
        assert!(c.radius <= 1e-10 && c.value.norm() <= c.radius);
        let p = choose_k(pt(10.0, 0.0), 1.0, SeriesKind::Stirling).unwrap();
        assert_eq!(p.k, 1);
        let err = eval_lngamma(pt(10.0, 0.0), Request::Accuracy(1e-20)).unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
        let mut last = 0;
        for e in [1e-2, 1e-4, 1e-8, 1e-12, 1e-16, 1e-30] {
            let p = choose_k(pt(0.0, 3.0), e, SeriesKind::Stirling).unwrap();
            assert!(p.k >= last);
            last = p.k;
        }
    }

    #[test]
    fn shift_consistency() {
        let z = pt(0.3, 1.7);
        for k in [4, 6, 9] {
            let a = eval_lngamma(z, Request::Terms(k)).unwrap();
            let b = eval_lngamma(z, Request::Terms(k + 1)).unwrap();
            assert!((a.value - b.value).norm() <= a.radius + b.radius);
        }
    }

    #[test]
    fn imaginary_axis_uses_thm2_family() {
        let c = eval_lngamma(pt(0.0, 10.0), Request::Terms(8)).unwrap();
        assert_eq!(c.plan.shifts, 0);
        assert!(matches!(c.plan.bound_kind, BoundKind::Thm2 | BoundKind::LemmaCk));
    }

    #[test]
    fn duplication_residual() {
        // ln Γ(2z) - ln Γ(z) - ln Γ(z+1/2) = (2z - 1) log 2 - (1/2) log π
        for &(x, y) in &[(1.0, 0.5), (3.0, 4.0), (0.2, 9.0)] {
            let z = pt(x, y);
            let a = eval_lngamma(pt(2.0 * x, 2.0 * y), Request::Default).unwrap();
            let b = eval_lngamma(z, Request::Default).unwrap();
            let c = eval_lngamma_half(z, Request::Default).unwrap();
            let lhs = a.value - b.value - c.value;
            let rhs = (2.0 * z.to_c64() - 1.0) * 2f64.ln() - 0.5 * PI.ln();
            assert!((lhs - rhs).norm() <= a.radius + b.radius + c.radius + 1e-14);
        }
    }
}
