//! Arbitrary-precision reference values.
//!
//! ln Γ comes from a shifted Stirling sum whose truncation error is checked
//! against √(πK)|T_K| before anything is returned. The remainder integrals are
//! computed twice, once as a difference against ln Γ and once by Gauss-Legendre
//! quadrature of the periodic-kernel integral, and the two must agree.

use std::f64::consts::{LN_10, LOG10_2, PI};

use rug::Float;

use crate::bernoulli::{self, BernoulliPolynomial};
use crate::error::{domain, Error, Result};
use crate::ext::{ExtComplex, ExtReal};
use crate::series::{self, SeriesKind, MAX_TERM};
use crate::theta::ThetaVariant;

/// Largest precision the oracle accepts.
pub const MAX_DIGITS: u32 = 1000;
/// Guard digits carried above the requested precision.
pub const GUARD_DIGITS: u32 = 15;

const GL_ORDER: usize = 20;
const MAX_DEPTH: u32 = 40;
const MAX_SHIFT: u64 = 1_000_000;

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 || digits > MAX_DIGITS {
        return domain(format!("digits must lie in 1..={MAX_DIGITS}"));
    }
    Ok(())
}

fn internal_digits(digits: u32) -> Result<u32> {
    if digits > 2 * MAX_DIGITS {
        return Err(Error::Resource(format!(
            "needs {digits} working digits, beyond the oracle cap"
        )));
    }
    Ok(digits)
}

fn ten_pow(e: i64, digits: u32) -> ExtReal {
    ExtReal::from_i64(10, digits).powi(e as i32)
}

fn half(digits: u32) -> ExtReal {
    ExtReal::from_f64(0.5, digits)
}

fn ln_2pi(digits: u32) -> ExtReal {
    ExtReal::pi(digits).mul_i64(2).ln()
}

/// Successive series terms T_j(w) (or T̂_j(w)) at the precision of `w`.
struct TermStream {
    inv2: ExtComplex,
    pow: ExtComplex,
    j: u32,
    half: bool,
    digits: u32,
}

impl TermStream {
    fn new(w: &ExtComplex, half: bool) -> Self {
        let inv = w.recip();
        TermStream {
            inv2: &inv * &inv,
            pow: inv,
            j: 0,
            half,
            digits: w.precision_digits(),
        }
    }

    fn next(&mut self) -> Result<ExtComplex> {
        if self.j > 0 {
            self.pow = &self.pow * &self.inv2;
        }
        self.j += 1;
        let j = self.j;
        if j >= MAX_TERM {
            return Err(Error::Resource(format!("term {j} is beyond the Bernoulli cap")));
        }
        let prec = self.pow.re().as_float().prec();
        let b = if self.half {
            bernoulli::half_float(j, prec)?
        } else {
            bernoulli::even_float(j, prec)?
        };
        let c = ExtReal::from_float(b, self.digits).div_i64(2 * j as i64 * (2 * j as i64 - 1));
        Ok(self.pow.scale(&c))
    }
}

/// T_j(z) (T̂_j for the gauss family) at the precision of `z`.
pub fn oracle_term(j: u32, z: &ExtComplex, family: SeriesKind) -> Result<ExtComplex> {
    let half_family = check_family(family)?;
    if j == 0 || j >= MAX_TERM {
        return domain(format!("term index {j} outside 1..{MAX_TERM}"));
    }
    if z.re().is_zero() && z.im().is_zero() {
        return domain("series terms are undefined at z = 0");
    }
    let mut terms = TermStream::new(z, half_family);
    let mut t = terms.next()?;
    for _ in 1..j {
        t = terms.next()?;
    }
    Ok(t)
}

/// (w - 1/2) log w - w + log(2π)/2.
fn stirling_main(w: &ExtComplex) -> ExtComplex {
    let d = w.precision_digits();
    let h = half(d);
    let a = &w.add_real(&-&h) * &w.ln();
    (&a - w).add_real(&(ln_2pi(d) * &h))
}

/// w log w - w + log(2π)/2.
fn gauss_main(w: &ExtComplex) -> ExtComplex {
    let d = w.precision_digits();
    let a = w * &w.ln();
    (&a - w).add_real(&(ln_2pi(d) * half(d)))
}

fn c64(z: &ExtComplex) -> num_complex::Complex64 {
    let (re, im) = z.to_f64_pair();
    num_complex::Complex64::new(re, im)
}

/// Smallest n >= n0 with |z + n| >= radius.
fn shift_for(zr: f64, zi: f64, radius: f64, n0: u64) -> u64 {
    let need = if zi.abs() >= radius {
        0.0
    } else {
        ((radius * radius - zi * zi).sqrt() - zr).ceil().max(0.0)
    };
    (need as u64).max(n0)
}

/// Stirling sum at w with K chosen by √(πK)|T_K(w)| < tol, or `None` if the terms turn before that.
fn certified_sum(w: &ExtComplex, tol: &ExtReal) -> Result<Option<ExtComplex>> {
    let d = w.precision_digits();
    let pi = ExtReal::pi(d);
    let mut sum = stirling_main(w);
    let mut terms = TermStream::new(w, false);
    let mut prev = f64::INFINITY;
    for j in 1..MAX_TERM {
        let t = terms.next()?;
        let mag = t.abs();
        sum = &sum + &t;
        let bound = pi.mul_i64(j as i64).sqrt() * &mag;
        if bound < *tol {
            return Ok(Some(sum));
        }
        let l = mag.log10_abs();
        if j > 2 && l > prev {
            return Ok(None);
        }
        prev = l;
    }
    Ok(None)
}

/// ln Γ(z) on the principal branch to `digits` significant digits.
pub fn oracle_lngamma(z: &ExtComplex, digits: u32) -> Result<ExtComplex> {
    check_digits(digits)?;
    lngamma_at(z, digits)
}

fn lngamma_at(z: &ExtComplex, digits: u32) -> Result<ExtComplex> {
    let digits = internal_digits(digits)?;
    if z.im().is_zero() && !(*z.re() > 0.0) {
        return domain("ln Γ is evaluated off the cut (-inf, 0]");
    }
    let (zr, zi) = z.to_f64_pair();
    let tol = ten_pow(-(digits as i64) - 5, digits + GUARD_DIGITS);
    let n0 = if zr < 0.0 { (-zr).ceil() as u64 } else { 0 };
    let mut radius = 0.37 * f64::from(digits + 10) + 2.0;
    loop {
        let n = shift_for(zr, zi, radius, n0);
        if n > MAX_SHIFT {
            return Err(Error::Resource(format!("ln Γ needs a shift of {n}")));
        }
        // ln Γ(z+n) and the sum of logs cancel down to the result
        let r = z.abs().to_f64() + n as f64;
        let size10 = (2.0 + r * (1.0 + r.ln().abs())).log10().ceil() as u32;
        let wd = digits + GUARD_DIGITS + size10;
        let z = z.with_digits(wd);
        let w = z.add_real(&ExtReal::from_i64(n as i64, wd));
        if let Some(mut sum) = certified_sum(&w, &tol)? {
            for m in 0..n {
                sum = &sum - &z.add_real(&ExtReal::from_i64(m as i64, wd)).ln();
            }
            return Ok(sum.with_digits(digits));
        }
        radius *= 1.5;
    }
}

fn check_family(family: SeriesKind) -> Result<bool> {
    match family {
        SeriesKind::Stirling => Ok(false),
        SeriesKind::Gauss => Ok(true),
        SeriesKind::Theta => domain("oracle_remainder covers the stirling and gauss families"),
    }
}

fn check_remainder_args(z: &ExtComplex, k: u32) -> Result<()> {
    if z.re().is_zero() && z.im().is_zero() {
        return domain("remainder undefined at z = 0");
    }
    if z.re().is_sign_negative() {
        return domain("remainder integrals need Re(z) >= 0");
    }
    if k == 0 || k + 1 >= MAX_TERM {
        return domain(format!("k = {k} outside 1..{}", MAX_TERM - 1));
    }
    Ok(())
}

/// log10 |T_j(z)| in double precision.
fn term_log10(j: u32, z: num_complex::Complex64, half: bool) -> Result<f64> {
    Ok(series::term_scaled(j, z, half)?.log2_abs() * LOG10_2)
}

/// R_{k+1}(z) (or R̂_{k+1}) as ln Γ minus the main terms and the first k terms.
fn definitional(z: &ExtComplex, k: u32, half_family: bool, digits: u32) -> Result<ExtComplex> {
    let zc = c64(z);
    let scale = term_log10(k, zc, half_family)?.min(term_log10(k + 1, zc, half_family)?);
    let main10 = (2.0 + zc.norm() * (1.0 + zc.norm().ln().abs())).log10();
    let extra = (main10 - scale).max(0.0).ceil() as u32;
    let d = internal_digits(digits + 10 + extra)?;
    let z = z.with_digits(d);
    let (lng, main) = if half_family {
        (lngamma_at(&z.add_real(&half(d)), d)?, gauss_main(&z))
    } else {
        (lngamma_at(&z, d)?, stirling_main(&z))
    };
    let mut r = &lng.with_digits(d) - &main;
    let mut terms = TermStream::new(&z, half_family);
    for _ in 0..k {
        r = &r - &terms.next()?;
    }
    Ok(r)
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_legendre(n: usize, digits: u32) -> Vec<(ExtReal, ExtReal)> {
    let one = ExtReal::from_i64(1, digits);
    let eps = ten_pow(-(digits as i64) + 2, digits);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = ExtReal::from_f64(guess, digits);
        let mut dp = one.clone();
        for _ in 0..100 {
            let (p, d) = legendre(n, &x);
            let dx = &p / &d;
            x = &x - &dx;
            dp = d;
            if dx.abs() < eps {
                break;
            }
        }
        let (_, d) = legendre(n, &x);
        if !d.is_zero() {
            dp = d;
        }
        let w = ExtReal::from_i64(2, digits) / ((&one - &x * &x) * &dp * &dp);
        out.push((x, w));
    }
    out
}

/// P_n(x) and P_n'(x).
fn legendre(n: usize, x: &ExtReal) -> (ExtReal, ExtReal) {
    let d = x.precision_digits();
    let mut p0 = ExtReal::from_i64(1, d);
    let mut p1 = x.clone();
    for m in 2..=n as i64 {
        let p2 = (x * &p1).mul_i64(2 * m - 1) - p0.mul_i64(m - 1);
        p0 = p1;
        p1 = p2.div_i64(m);
    }
    let dp = (x * &p1 - &p0).mul_i64(n as i64) / (x * x).add_f64(-1.0);
    (p1, dp)
}

/// One Gauss-Legendre estimate of the remainder integral.
#[derive(Clone, Debug)]
pub struct QuadratureEstimate {
    /// -∫_0^U B_2k(..)/(2k (u+z)^{2k}) du plus the tail R_{k+1}(z+U) by series.
    pub value: ExtComplex,
    pub upper_limit: u64,
    /// Bound on the series truncation in the tail.
    pub tail_bound: ExtReal,
    /// Tolerance the adaptive panels were driven to.
    pub quadrature_tolerance: ExtReal,
}

struct Integrand {
    z: ExtComplex,
    poly: BernoulliPolynomial,
    two_k: u32,
    nodes: Vec<(ExtReal, ExtReal)>,
    digits: u32,
}

impl Integrand {
    /// Σ w_i f(a + s_i) over s in [s0, s1], with {u} = off + s on the panel.
    fn rule(&self, a: &ExtReal, off: &ExtReal, s0: &ExtReal, s1: &ExtReal) -> ExtComplex {
        let d = self.digits;
        let c = (s0 + s1).div_i64(2);
        let hw = (s1 - s0).div_i64(2);
        let prec = self.poly.prec();
        let mut acc = ExtComplex::zero(d);
        for (xi, wi) in &self.nodes {
            let s = &c + &(&hw * xi);
            let frac = off + &s;
            let b = self.poly.eval_float(&Float::with_val(prec, frac.as_float()));
            let b = ExtReal::from_float(b, d);
            let p = self.z.add_real(&(a + &s)).recip().powu(self.two_k);
            acc = &acc + &p.scale(&(&b * wi));
        }
        acc.scale(&hw)
    }

    fn adapt(
        &self,
        a: &ExtReal,
        off: &ExtReal,
        s0: &ExtReal,
        s1: &ExtReal,
        coarse: ExtComplex,
        tol: &ExtReal,
        depth: u32,
    ) -> Result<ExtComplex> {
        let mid = (s0 + s1).div_i64(2);
        let left = self.rule(a, off, s0, &mid);
        let right = self.rule(a, off, &mid, s1);
        let fine = &left + &right;
        if (&fine - &coarse).abs() <= *tol {
            return Ok(fine);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::Resource("quadrature panel refinement did not converge".into()));
        }
        let t2 = tol.div_i64(2);
        let l = self.adapt(a, off, s0, &mid, left, &t2, depth + 1)?;
        let r = self.adapt(a, off, &mid, s1, right, &t2, depth + 1)?;
        Ok(&l + &r)
    }
}

/// Tail R_{k+1}(w) = Σ_{j=k+1}^{K} T_j(w) + ε with |ε| <= √(πK)|T_K(w)|, stopping at `tol` or the smallest bound.
fn series_tail(w: &ExtComplex, k: u32, half_family: bool, tol: &ExtReal) -> Result<(ExtComplex, ExtReal)> {
    let d = w.precision_digits();
    let pi = ExtReal::pi(d);
    let mut terms = TermStream::new(w, half_family);
    for _ in 0..k {
        terms.next()?;
    }
    let mut sum = ExtComplex::zero(d);
    let mut best: Option<(ExtComplex, ExtReal)> = None;
    for j in k + 1..MAX_TERM {
        let t = terms.next()?;
        sum = &sum + &t;
        let bound = pi.mul_i64(j as i64).sqrt() * t.abs();
        if bound < *tol {
            return Ok((sum, bound));
        }
        match &best {
            Some((_, b)) if bound >= *b => return Ok(best.unwrap()),
            _ => best = Some((sum.clone(), bound)),
        }
    }
    Ok(best.expect("at least one tail term"))
}

/// log10 of the smallest tail bound the series at w can reach, in double precision.
fn tail_reach10(w: num_complex::Complex64, k: u32, half_family: bool, target10: f64) -> Result<f64> {
    let mut best = f64::INFINITY;
    for j in k + 1..MAX_TERM {
        let l = term_log10(j, w, half_family)? + 0.5 * (PI * j as f64).log10();
        if l < target10 {
            return Ok(l);
        }
        if l >= best {
            break;
        }
        best = l;
    }
    Ok(best)
}

fn quadrature_core(
    z: &ExtComplex,
    k: u32,
    half_family: bool,
    upper: u64,
    digits: u32,
    tol: &ExtReal,
) -> Result<QuadratureEstimate> {
    let d = internal_digits(digits)?;
    let z = z.with_digits(d);
    let two_k = 2 * k;
    let integrand = Integrand {
        z: z.clone(),
        poly: BernoulliPolynomial::new(two_k, d)?,
        two_k,
        nodes: gauss_legendre(GL_ORDER, d),
        digits: d,
    };
    let panels = 2 * upper;
    let panel_tol = tol.div_i64(2 * panels as i64);
    let zero = ExtReal::zero(d);
    let h = half(d);
    let mut integral = ExtComplex::zero(d);
    for m in 0..panels {
        let a = ExtReal::from_i64(m as i64, d).div_i64(2);
        let off = if (m + half_family as u64) % 2 == 1 { h.clone() } else { zero.clone() };
        let coarse = integrand.rule(&a, &off, &zero, &h);
        let v = integrand.adapt(&a, &off, &zero, &h, coarse, &panel_tol, 0)?;
        integral = &integral + &v;
    }
    let w = z.add_real(&ExtReal::from_i64(upper as i64, d));
    let (tail, tail_bound) = series_tail(&w, k, half_family, tol)?;
    let value = &tail - &integral.scale(&ExtReal::from_i64(1, d).div_i64(two_k as i64));
    Ok(QuadratureEstimate {
        value,
        upper_limit: upper,
        tail_bound,
        quadrature_tolerance: tol.clone(),
    })
}

/// Quadrature estimate of R_{k+1}(z) (or R̂_{k+1}) with the integral cut at `upper`.
///
/// Panels are refined until they agree to `digits` places relative to the tail-free estimate's scale |T_k(z)|.
pub fn quadrature_remainder(
    z: &ExtComplex,
    k: u32,
    family: SeriesKind,
    upper: u64,
    digits: u32,
) -> Result<QuadratureEstimate> {
    check_digits(digits)?;
    let half_family = check_family(family)?;
    check_remainder_args(z, k)?;
    if upper == 0 || upper > MAX_SHIFT {
        return domain("upper limit must lie in 1..=1000000");
    }
    let zc = c64(z);
    let scale10 = term_log10(k, zc, half_family)?.min(term_log10(k + 1, zc, half_family)?);
    let d = digits + GUARD_DIGITS;
    let tol = ten_pow(scale10.floor() as i64 - digits as i64 - 5, d);
    quadrature_core(z, k, half_family, upper, d, &tol)
}

/// Both oracle routes for one remainder.
#[derive(Clone, Debug)]
pub struct DualRemainder {
    pub definitional: ExtComplex,
    pub quadrature: QuadratureEstimate,
    /// |difference| / max modulus.
    pub relative_gap: f64,
}

/// Least integer U with |z + U|^{2k-1} >= 20 |z|^{2k-1}, so the quadrature carries most of the value.
fn independence_limit(z: num_complex::Complex64, k: u32) -> u64 {
    let target = z.norm() * 20f64.powf(1.0 / (2.0 * k as f64 - 1.0));
    shift_for(z.re, z.im, target, 1)
}

/// R_{k+1}(z) (R̂_{k+1} for the gauss family) by both routes, failing if they disagree.
pub fn oracle_remainder_dual(z: &ExtComplex, k: u32, family: SeriesKind, digits: u32) -> Result<DualRemainder> {
    check_digits(digits)?;
    let half_family = check_family(family)?;
    check_remainder_args(z, k)?;
    let a = definitional(z, k, half_family, digits)?;
    let scale10 = a.abs().log10_abs();
    if !scale10.is_finite() {
        return Err(Error::Consistency("definitional remainder vanished".into()));
    }

    let zc = c64(z);
    let tk10 = term_log10(k, zc, half_family)?;
    let cancel = (tk10 + (2.0 * k as f64 + zc.norm() + 1.0).log10() - scale10).max(0.0).ceil() as u32;
    let qd = internal_digits(digits + GUARD_DIGITS + cancel)?;
    let target10 = scale10 - digits as f64 - 8.0;
    let tol = ten_pow(target10.floor() as i64, qd);

    let mut upper = independence_limit(zc, k);
    loop {
        let w = zc + upper as f64;
        if tail_reach10(w, k, half_family, target10)? < target10 {
            break;
        }
        upper = upper + upper / 2 + 1;
        if upper > MAX_SHIFT {
            return Err(Error::Resource("quadrature upper limit exceeds the cap".into()));
        }
    }
    let q = quadrature_core(z, k, half_family, upper, qd, &tol)?;

    let gap = (&a - &q.value).abs();
    let big = a.abs().max(&q.value.abs());
    let rel = (&gap / &big).to_f64();
    let allowed = 10f64.powi(-(digits.saturating_sub(5) as i32));
    if !(rel <= allowed) {
        return Err(Error::Consistency(format!(
            "remainder routes disagree at k = {k}, z = {}: relative gap {rel:e}",
            z.with_digits(20)
        )));
    }
    Ok(DualRemainder {
        definitional: a.with_digits(digits),
        quadrature: q,
        relative_gap: rel,
    })
}

/// R_{k+1}(z) (or R̂_{k+1}(z)), cross-checked by quadrature.
pub fn oracle_remainder(z: &ExtComplex, k: u32, family: SeriesKind, digits: u32) -> Result<ExtComplex> {
    Ok(oracle_remainder_dual(z, k, family, digits)?.definitional)
}

/// |R_{k+1}(z)| / |T_k(z)| and the same with only the imaginary part of the remainder.
#[derive(Clone, Debug)]
pub struct RemainderRatio {
    pub modulus: ExtReal,
    pub imaginary: ExtReal,
}

pub fn remainder_ratio(z: &ExtComplex, k: u32, family: SeriesKind, digits: u32) -> Result<RemainderRatio> {
    let r = oracle_remainder(z, k, family, digits)?;
    let tk = oracle_term(k, &z.with_digits(r.precision_digits()), family)?.abs();
    Ok(RemainderRatio {
        modulus: &r.abs() / &tk,
        imaginary: &r.im().abs() / &tk,
    })
}

fn check_t(t: &ExtReal) -> Result<()> {
    if !(*t > 0.0) || !t.is_finite() {
        return domain("t must be finite and positive");
    }
    Ok(())
}

/// ϑ(t) from Im ln Γ(1/2 + it), cross-checked against arg Γ(1/4 + it/2) for t <= 3.
pub fn oracle_theta(t: &ExtReal, digits: u32) -> Result<ExtReal> {
    check_digits(digits)?;
    theta_at(t, digits)
}

fn theta_at(t: &ExtReal, digits: u32) -> Result<ExtReal> {
    check_t(t)?;
    let tf = t.to_f64();
    let ld = internal_digits(digits + 5 + (2.0 + tf * (1.0 + tf.ln().abs())).log10().ceil() as u32)?;
    let t = t.with_digits(ld);
    let pi = ExtReal::pi(ld);
    let h = half(ld);
    let lg = lngamma_at(&ExtComplex::new(h.clone(), t.clone()), ld)?;
    let arctan = (-(&pi * &t)).exp().atan();
    let theta = (lg.im() - &(&t * &ln_2pi(ld)) + arctan) * &h - pi.div_i64(8);

    if tf <= 3.0 {
        let q = ExtComplex::new(ExtReal::from_f64(0.25, ld), &t * &h);
        let alt = lngamma_at(&q, ld)?.im() - &(&t * &h * pi.ln());
        let gap = (&theta - &alt).abs().to_f64();
        let allowed = 10f64.powi(-(digits.saturating_sub(5) as i32)) * (1.0 + theta.abs().to_f64());
        if !(gap <= allowed) {
            return Err(Error::Consistency(format!("theta forms disagree at t = {tf}: gap {gap:e}")));
        }
    }
    Ok(theta.with_digits(digits))
}

/// (t/2) log(t/2πe) - π/8 + Σ_{j<=k} T̃_j(t), at the precision of `t`.
fn theta_series(t: &ExtReal, k: u32) -> Result<ExtReal> {
    let d = t.precision_digits();
    let pi = ExtReal::pi(d);
    let inner = t.ln() - ln_2pi(d) - ExtReal::from_i64(1, d);
    let mut s = (t * &inner).div_i64(2) - pi.div_i64(8);
    for j in 1..=k {
        s = s + series::theta_term_ext(j, t)?;
    }
    Ok(s)
}

fn empirical_constant(digits: u32) -> ExtReal {
    ExtReal::from_i64(1, digits).div_i64(12)
}

/// ϑ(t) minus the k-term approximation of the given variant.
///
/// The empirical correction is (πt - k + 1/12) T̃_k. `digits` counts significant
/// digits of the error itself.
pub fn oracle_theta_error(t: &ExtReal, k: u32, variant: ThetaVariant, digits: u32) -> Result<ExtReal> {
    check_digits(digits)?;
    check_t(t)?;
    if k == 0 || k >= MAX_TERM {
        return domain(format!("k = {k} outside 1..{MAX_TERM}"));
    }
    let tf = t.to_f64();
    let lt = |j: u32| -> Result<f64> { Ok(series::theta_term_scaled(j, tf)?.log2_abs() * LOG10_2) };
    let err10 = lt(k)?.min(lt(k + 1)?);
    let size10 = (2.0 + tf * (1.0 + tf.ln().abs())).log10();
    let d = internal_digits(digits + 10 + (size10 - err10).max(0.0).ceil() as u32)?;
    let t = t.with_digits(d);
    let theta = theta_at(&t, d)?.with_digits(d);
    let mut err = theta - theta_series(&t, k)?;
    if variant != ThetaVariant::Standard {
        let pi = ExtReal::pi(d);
        err = err - (-(&pi * &t)).exp().atan() * half(d);
        if variant == ThetaVariant::Empirical {
            let factor = &pi * &t - ExtReal::from_i64(k as i64, d) + empirical_constant(d);
            err = err - factor * series::theta_term_ext(k, &t)?;
        }
    }
    Ok(err.with_digits(digits))
}

/// R̃_{k+1}(t), the error of the arctan variant after k terms.
pub fn oracle_theta_remainder(t: &ExtReal, k: u32, digits: u32) -> Result<ExtReal> {
    oracle_theta_error(t, k, ThetaVariant::Arctan, digits)
}

/// Normalized errors of the theta approximations at k = k_min(t).
#[derive(Clone, Debug)]
pub struct NormalizedErrorRow {
    pub t: f64,
    pub k_min: u32,
    /// Standard-variant error over T̃_min.
    pub a: ExtReal,
    /// η_k √(πk).
    pub b: ExtReal,
    /// Arctan-variant error over T̃_min.
    pub c: ExtReal,
    /// Empirical-variant error over T̃_min.
    pub d: ExtReal,
}

/// Least precision accepted by [`table2_row`]: ⌈2πt / ln 10⌉ + 30.
pub fn table2_min_digits(t: f64) -> u32 {
    (2.0 * PI * t / LN_10).ceil().max(0.0) as u32 + 30
}

pub fn table2_row(t: f64, digits: u32) -> Result<NormalizedErrorRow> {
    check_digits(digits)?;
    if !(t > 0.0) || !t.is_finite() {
        return domain("t must be finite and positive");
    }
    let need = table2_min_digits(t);
    if digits < need {
        return domain(format!("t = {t} needs at least {need} digits"));
    }
    let k = series::k_min(t)?.k_min;
    let d = digits + 10;
    let te = ExtReal::from_f64(t, d);
    let pi = ExtReal::pi(d);
    let theta = theta_at(&te, d)?.with_digits(d);
    let tmin = series::theta_term_ext(k, &te)?;
    let standard = &theta - &theta_series(&te, k)?;
    let arctan = (-(&pi * &te)).exp().atan() * half(d);
    let a = &standard / &tmin;
    let c = (&standard - &arctan) / &tmin;
    let dcol = &c - &(&pi * &te - ExtReal::from_i64(k as i64, d) + empirical_constant(d));
    let one = ExtReal::from_i64(1, d);
    let eta = &one / &(&one - ExtReal::from_i64(2, d).powi(1 - 2 * k as i32));
    let b = eta * pi.mul_i64(k as i64).sqrt();
    Ok(NormalizedErrorRow {
        t,
        k_min: k,
        a: a.with_digits(digits),
        b: b.with_digits(digits),
        c: c.with_digits(digits),
        d: dcol.with_digits(digits),
    })
}
