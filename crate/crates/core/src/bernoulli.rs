//! Exact Bernoulli numbers, Bernoulli polynomials and even zeta values.
//!
//! Even-index Bernoulli numbers are produced exactly from the tangent numbers
//! (an integer-only recurrence) and kept in a grow-only process-wide table.
//! Readers share the table; growth takes the write lock once and doubles the
//! stored range so repeated growth stays amortized.

use std::fmt;
use std::sync::RwLock;

use rug::{Float, Integer, Rational};

use crate::error::{domain, Result};
use crate::ext::{bits_for_digits, ExtReal};

pub use crate::ext::ExtReal as Real;

/// Largest supported Bernoulli index (B_2000).
pub const MAX_INDEX: u32 = 2000;

/// Exact rational in canonical form: positive denominator, coprime parts, zero as 0/1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(Rational);

impl ExactRational {
    pub fn new(numerator: i64, denominator: u64) -> Self {
        ExactRational(Rational::from((numerator, denominator)))
    }

    pub fn numerator(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denominator(&self) -> &Integer {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn abs(&self) -> Self {
        ExactRational(Rational::from(self.0.abs_ref()))
    }

    /// Round-to-nearest conversion.
    pub fn to_f64(&self) -> f64 {
        Float::with_val(53, &self.0).to_f64()
    }

    pub fn to_ext(&self, digits: u32) -> ExtReal {
        ExtReal::from_rational(&self.0, digits)
    }
}

impl From<Rational> for ExactRational {
    fn from(q: Rational) -> Self {
        ExactRational(q)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

struct Entry {
    exact: Rational,
    half: Rational,
    /// Round-to-nearest mantissa and binary exponent of `exact` and `half`.
    scaled: (f64, i32),
    half_scaled: (f64, i32),
}

/// B_{2n} for n = 0, 1, ... stored contiguously.
static TABLE: RwLock<Vec<Entry>> = RwLock::new(Vec::new());

fn check_index(j: u32) -> Result<u32> {
    if j == 0 || j % 2 == 1 {
        return domain(format!("Bernoulli index {j} must be even and positive"));
    }
    if j > MAX_INDEX {
        return domain(format!("Bernoulli index {j} exceeds the cap {MAX_INDEX}"));
    }
    Ok(j / 2)
}

/// Tangent numbers T_1..T_n, integer-only recurrence.
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        let prev = Integer::from(&t[k - 1] * (k as u32 - 1));
        t[k] = prev;
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u32);
            let b = Integer::from(&t[j] * (j - k + 2) as u32);
            t[j] = a + b;
        }
    }
    t
}

fn build_entries(n_half: usize) -> Vec<Entry> {
    let tangent = tangent_numbers(n_half);
    let mut out = Vec::with_capacity(n_half + 1);
    for m in 0..=n_half {
        let exact = if m == 0 {
            Rational::from(1)
        } else {
            // B_{2m} = (-1)^{m-1} 2m T_m / (4^m (4^m - 1))
            let four_m = Integer::from(1) << (2 * m as u32);
            let den = Integer::from(&four_m - 1u32) * &four_m;
            let mut num = Integer::from(&tangent[m] * (2 * m as u32));
            if m % 2 == 0 {
                num = -num;
            }
            Rational::from((num, den))
        };
        let half = if m == 0 {
            Rational::from(1)
        } else {
            // B_{2m}(1/2) = -(1 - 2^{1-2m}) B_{2m}
            let factor = Rational::from(1) - Rational::from((1, Integer::from(1) << (2 * m as u32 - 1)));
            -(Rational::from(&exact * &factor))
        };
        let scaled = Float::with_val(53, &exact).to_f64_exp();
        let half_scaled = Float::with_val(53, &half).to_f64_exp();
        out.push(Entry {
            exact,
            half,
            scaled,
            half_scaled,
        });
    }
    out
}

fn ensure(n_half: u32) {
    {
        let table = TABLE.read().expect("bernoulli table poisoned");
        if table.len() > n_half as usize {
            return;
        }
    }
    let mut table = TABLE.write().expect("bernoulli table poisoned");
    if table.len() > n_half as usize {
        return;
    }
    let cap = (MAX_INDEX / 2) as usize;
    let target = (n_half as usize).max(2 * table.len()).max(32).min(cap);
    *table = build_entries(target);
}

fn with_entry<R>(n_half: u32, f: impl FnOnce(&Entry) -> R) -> R {
    ensure(n_half);
    let table = TABLE.read().expect("bernoulli table poisoned");
    f(&table[n_half as usize])
}

/// Exact B_j for even `j` with 2 <= j <= 2000.
pub fn bernoulli_number(j: u32) -> Result<ExactRational> {
    let n = check_index(j)?;
    Ok(with_entry(n, |e| ExactRational(e.exact.clone())))
}

/// Exact B_j(1/2) = -(1 - 2^{1-j}) B_j for even `j`.
pub fn bernoulli_half(j: u32) -> Result<ExactRational> {
    let n = check_index(j)?;
    Ok(with_entry(n, |e| ExactRational(e.half.clone())))
}

/// B_{2n} as a float at `prec` bits. `n` may be zero.
pub(crate) fn even_float(n: u32, prec: u32) -> Result<Float> {
    if n > MAX_INDEX / 2 {
        return domain(format!("Bernoulli index {} exceeds the cap {MAX_INDEX}", 2 * n));
    }
    Ok(with_entry(n, |e| Float::with_val(prec, &e.exact)))
}

/// B_{2n}(1/2) as a float at `prec` bits.
pub(crate) fn half_float(n: u32, prec: u32) -> Result<Float> {
    if n > MAX_INDEX / 2 {
        return domain(format!("Bernoulli index {} exceeds the cap {MAX_INDEX}", 2 * n));
    }
    Ok(with_entry(n, |e| Float::with_val(prec, &e.half)))
}

/// Mantissa/exponent of B_{2n} (or B_{2n}(1/2) when `half`), rounded to nearest.
pub(crate) fn even_scaled(n: u32, half: bool) -> Result<(f64, i32)> {
    if n > MAX_INDEX / 2 {
        return domain(format!("Bernoulli index {} exceeds the cap {MAX_INDEX}", 2 * n));
    }
    Ok(with_entry(n, |e| if half { e.half_scaled } else { e.scaled }))
}

/// Exact B_{2n}(1/2) and B_{2n} magnitudes, for exact comparisons. `n >= 1`.
pub(crate) fn half_abs_rational(n: u32) -> Result<Rational> {
    if n == 0 || n > MAX_INDEX / 2 {
        return domain(format!("Bernoulli index {} out of range", 2 * n));
    }
    Ok(with_entry(n, |e| Rational::from(e.half.abs_ref())))
}

/// Snapshot of the Bernoulli table: `values[i] = B_{2i}`, `half_values[i] = B_{2i}(1/2)`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    pub max_index: u32,
    pub values: Vec<ExactRational>,
    pub half_values: Vec<ExactRational>,
}

impl BernoulliTable {
    /// Table covering B_0..B_{2 max_index}.
    pub fn snapshot(max_index: u32) -> Result<Self> {
        if max_index == 0 || 2 * max_index > MAX_INDEX {
            return domain(format!("table size {max_index} outside 1..={}", MAX_INDEX / 2));
        }
        ensure(max_index);
        let table = TABLE.read().expect("bernoulli table poisoned");
        let slice = &table[..=max_index as usize];
        Ok(BernoulliTable {
            max_index,
            values: slice.iter().map(|e| ExactRational(e.exact.clone())).collect(),
            half_values: slice.iter().map(|e| ExactRational(e.half.clone())).collect(),
        })
    }
}

/// B_n(x) with rounded coefficients, evaluated by Horner's rule.
#[derive(Clone, Debug)]
pub struct BernoulliPolynomial {
    degree: u32,
    digits: u32,
    /// Coefficients from x^n down to x^0.
    coeffs: Vec<Float>,
}

impl BernoulliPolynomial {
    /// Even degree `j`, rounded for `digits` significant digits relative to |B_j|.
    pub fn new(j: u32, digits: u32) -> Result<Self> {
        let n = check_index(j)?;
        ensure(n);
        let table = TABLE.read().expect("bernoulli table poisoned");
        // Exact coefficients C(j, m) B_m of x^{j-m}.
        let exact: Vec<Rational> = (0..=j)
            .map(|m| {
                let b = match m {
                    0 => Rational::from(1),
                    1 => Rational::from((-1, 2)),
                    _ if m % 2 == 1 => Rational::new(),
                    _ => table[(m / 2) as usize].exact.clone(),
                };
                b * Integer::from(Integer::binomial_u(j, m))
            })
            .collect();
        let top = exact
            .iter()
            .filter(|q| *q.numer() != 0)
            .map(|q| Float::with_val(64, q).abs().log10().to_f64())
            .fold(f64::NEG_INFINITY, f64::max);
        let lead = Float::with_val(64, &table[n as usize].exact).abs().log10().to_f64();
        let guard = ((top - lead).max(0.0).ceil() as u32) + 10;
        let prec = bits_for_digits(digits + guard);
        let coeffs = exact.iter().map(|q| Float::with_val(prec, q)).collect();
        Ok(BernoulliPolynomial {
            degree: j,
            digits,
            coeffs,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub(crate) fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    /// Horner evaluation at any real `x` (no range check).
    pub(crate) fn eval_float(&self, x: &Float) -> Float {
        let prec = self.prec();
        let mut acc = Float::with_val(prec, &self.coeffs[0]);
        for c in &self.coeffs[1..] {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// B_n(u) for `u` in [0, 1].
    pub fn eval(&self, u: &ExtReal) -> Result<ExtReal> {
        if *u < 0.0 || *u > 1.0 {
            return domain("Bernoulli polynomial argument must lie in [0, 1]");
        }
        let v = self.eval_float(u.as_float());
        Ok(ExtReal::from_float(v, self.digits.max(u.precision_digits())))
    }
}

/// B_j(u) for even `j` and `u` in [0, 1], at the precision of `u`.
pub fn bernoulli_poly(j: u32, u: &ExtReal) -> Result<ExtReal> {
    BernoulliPolynomial::new(j, u.precision_digits())?.eval(u)
}

/// B_j({u}), the periodic extension.
pub fn periodic_bernoulli(j: u32, u: &ExtReal) -> Result<ExtReal> {
    if !u.is_finite() {
        return domain("periodic Bernoulli argument must be finite");
    }
    bernoulli_poly(j, &u.fract_floor())
}

/// Checks 2^{1-2k} B_2k({2u}) - B_2k({u}) = B_2k({u + 1/2}) at the precision of `u`.
///
/// The residual is measured relative to max(1, |B_2k|).
pub fn half_shift_identity_check(k: u32, u: &ExtReal) -> bool {
    let Some(j) = k.checked_mul(2) else {
        return false;
    };
    let digits = u.precision_digits();
    let Ok(poly) = BernoulliPolynomial::new(j, digits) else {
        return false;
    };
    let Ok(bj) = bernoulli_number(j) else {
        return false;
    };
    let two_u = u.mul_i64(2);
    let shifted = u.add_f64(0.5);
    let eval = |x: &ExtReal| poly.eval(&x.fract_floor());
    let (Ok(a), Ok(b), Ok(c)) = (eval(&two_u), eval(u), eval(&shifted)) else {
        return false;
    };
    let scale = ExtReal::from_f64(2.0, digits).powi(1 - j as i32);
    let residual = (scale * a - b - c).abs();
    let magnitude = bj.to_ext(digits).abs().max(&ExtReal::from_i64(1, digits));
    let tol = ExtReal::from_i64(10, digits).powi(-(digits as i32 - 5));
    residual < magnitude * tol
}

/// zeta(2k) = |B_2k| (2 pi)^{2k} / (2 (2k)!).
pub fn zeta_even(k: u32, digits: u32) -> Result<ExtReal> {
    if k == 0 {
        return domain("zeta_even requires k >= 1");
    }
    let b = bernoulli_number(2 * k)?;
    let d = digits + 10;
    let two_pi = ExtReal::pi(d).mul_i64(2);
    let fact = Float::with_val(bits_for_digits(d), Float::factorial(2 * k));
    let fact = ExtReal::from_float(fact, d);
    let z = b.to_ext(d).abs() * two_pi.powi(2 * k as i32) / fact.mul_i64(2);
    Ok(z.with_digits(digits))
}
