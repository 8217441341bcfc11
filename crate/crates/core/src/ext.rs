//! Extended-precision scalars used by the oracle and by table reproduction.
//!
//! [`ExtReal`] is a thin wrapper over an MPFR float that remembers its working
//! precision in decimal digits. Binary operations run at the larger of the two
//! operand precisions. [`ExtComplex`] pairs two `ExtReal`s held at one shared
//! precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Rational};

/// Smallest working precision accepted, in decimal digits.
pub const MIN_DIGITS: u32 = 30;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Binary precision used for `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32 + 16
}

/// Arbitrary-precision real with a decimal working precision.
#[derive(Clone, Debug)]
pub struct ExtReal {
    value: Float,
    digits: u32,
}

impl ExtReal {
    fn wrap(value: Float, digits: u32) -> Self {
        ExtReal { value, digits }
    }

    fn clamp(digits: u32) -> u32 {
        digits.max(MIN_DIGITS)
    }

    pub fn zero(digits: u32) -> Self {
        let d = Self::clamp(digits);
        Self::wrap(Float::new(bits_for_digits(d)), d)
    }

    pub fn from_f64(x: f64, digits: u32) -> Self {
        let d = Self::clamp(digits);
        Self::wrap(Float::with_val(bits_for_digits(d), x), d)
    }

    pub fn from_i64(x: i64, digits: u32) -> Self {
        let d = Self::clamp(digits);
        Self::wrap(Float::with_val(bits_for_digits(d), x), d)
    }

    pub fn from_rational(q: &Rational, digits: u32) -> Self {
        let d = Self::clamp(digits);
        Self::wrap(Float::with_val(bits_for_digits(d), q), d)
    }

    /// Parses a decimal literal such as `"9.5"` or `"1e-3"` exactly to the working precision.
    pub fn parse(text: &str, digits: u32) -> Option<Self> {
        let d = Self::clamp(digits);
        let parsed = Float::parse(text).ok()?;
        Some(Self::wrap(Float::with_val(bits_for_digits(d), parsed), d))
    }

    pub fn pi(digits: u32) -> Self {
        let d = Self::clamp(digits);
        Self::wrap(Float::with_val(bits_for_digits(d), Constant::Pi), d)
    }

    pub fn precision_digits(&self) -> u32 {
        self.digits
    }

    /// Re-rounds to a new working precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        let d = Self::clamp(digits);
        Self::wrap(Float::with_val(bits_for_digits(d), &self.value), d)
    }

    pub fn as_float(&self) -> &Float {
        &self.value
    }

    pub(crate) fn from_float(value: Float, digits: u32) -> Self {
        let d = Self::clamp(digits);
        let mut value = value;
        value.set_prec(bits_for_digits(d));
        Self::wrap(value, d)
    }

    fn unary(&self, f: impl FnOnce(Float) -> Float) -> Self {
        Self::wrap(f(self.value.clone()), self.digits)
    }

    pub fn ln(&self) -> Self {
        self.unary(Float::ln)
    }

    pub fn ln_1p(&self) -> Self {
        self.unary(Float::ln_1p)
    }

    pub fn exp(&self) -> Self {
        self.unary(Float::exp)
    }

    pub fn sqrt(&self) -> Self {
        self.unary(Float::sqrt)
    }

    pub fn atan(&self) -> Self {
        self.unary(Float::atan)
    }

    pub fn sin(&self) -> Self {
        self.unary(Float::sin)
    }

    pub fn cos(&self) -> Self {
        self.unary(Float::cos)
    }

    pub fn abs(&self) -> Self {
        self.unary(Float::abs)
    }

    /// Exact floor (MPFR rounds integral results exactly).
    pub fn floor(&self) -> Self {
        self.unary(Float::floor)
    }

    /// Fractional part `u - floor(u)`, exact for finite `u`.
    pub fn fract_floor(&self) -> Self {
        let fl = self.value.clone().floor();
        Self::wrap(Float::with_val(self.value.prec(), &self.value - &fl), self.digits)
    }

    pub fn powi(&self, n: i32) -> Self {
        Self::wrap(Float::with_val(self.value.prec(), (&self.value).pow(n)), self.digits)
    }

    /// `atan2(self, x)`, the argument of `x + i*self`.
    pub fn atan2(&self, x: &ExtReal) -> Self {
        let d = self.digits.max(x.digits);
        let mut y = Float::with_val(bits_for_digits(d), &self.value);
        y.atan2_mut(&x.value);
        Self::wrap(y, d)
    }

    pub fn hypot(&self, other: &ExtReal) -> Self {
        let d = self.digits.max(other.digits);
        let mut y = Float::with_val(bits_for_digits(d), &self.value);
        y.hypot_mut(&other.value);
        Self::wrap(y, d)
    }

    pub fn mul_i64(&self, n: i64) -> Self {
        Self::wrap(Float::with_val(self.value.prec(), &self.value * n), self.digits)
    }

    pub fn div_i64(&self, n: i64) -> Self {
        Self::wrap(Float::with_val(self.value.prec(), &self.value / n), self.digits)
    }

    pub fn add_f64(&self, x: f64) -> Self {
        Self::wrap(Float::with_val(self.value.prec(), &self.value + x), self.digits)
    }

    pub fn mul_f64(&self, x: f64) -> Self {
        Self::wrap(Float::with_val(self.value.prec(), &self.value * x), self.digits)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.value.is_sign_negative() && !self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Conversion rounded toward +infinity.
    pub fn to_f64_up(&self) -> f64 {
        self.value.to_f64_round(Round::Up)
    }

    /// Conversion rounded toward -infinity.
    pub fn to_f64_down(&self) -> f64 {
        self.value.to_f64_round(Round::Down)
    }

    /// Approximate `log10 |x|`, valid far outside the double range. `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.value.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.value.to_f64_exp();
        m.abs().log10() + f64::from(e) * std::f64::consts::LOG10_2
    }

    /// Decimal scientific string with `sig` significant digits.
    pub fn to_sci_string(&self, sig: usize) -> String {
        self.value.to_string_radix(10, Some(sig.max(1)))
    }

    pub fn max(&self, other: &ExtReal) -> ExtReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(self.digits as usize))
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl PartialEq<f64> for ExtReal {
    fn eq(&self, other: &f64) -> bool {
        self.value == *other
    }
}

impl PartialOrd<f64> for ExtReal {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.value.partial_cmp(other)
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: &ExtReal) -> ExtReal {
                let d = self.digits.max(rhs.digits);
                ExtReal::wrap(Float::with_val(bits_for_digits(d), &self.value $op &rhs.value), d)
            }
        }
        impl $tr<ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: ExtReal) -> ExtReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: &ExtReal) -> ExtReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $method(self, rhs: ExtReal) -> ExtReal {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal::wrap(-self.value, self.digits)
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        -(self.clone())
    }
}

/// Arbitrary-precision complex number; both parts share one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtComplex {
    re: ExtReal,
    im: ExtReal,
}

impl ExtComplex {
    pub fn new(re: ExtReal, im: ExtReal) -> Self {
        let d = re.digits.max(im.digits);
        let re = if re.digits == d { re } else { re.with_digits(d) };
        let im = if im.digits == d { im } else { im.with_digits(d) };
        ExtComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, digits: u32) -> Self {
        ExtComplex::new(ExtReal::from_f64(re, digits), ExtReal::from_f64(im, digits))
    }

    pub fn from_real(re: ExtReal) -> Self {
        let im = ExtReal::zero(re.digits);
        ExtComplex { re, im }
    }

    pub fn zero(digits: u32) -> Self {
        ExtComplex::new(ExtReal::zero(digits), ExtReal::zero(digits))
    }

    pub fn re(&self) -> &ExtReal {
        &self.re
    }

    pub fn im(&self) -> &ExtReal {
        &self.im
    }

    pub fn precision_digits(&self) -> u32 {
        self.re.digits
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        ExtComplex::new(self.re.with_digits(digits), self.im.with_digits(digits))
    }

    pub fn conj(&self) -> Self {
        ExtComplex::new(self.re.clone(), -&self.im)
    }

    pub fn abs(&self) -> ExtReal {
        self.re.hypot(&self.im)
    }

    pub fn norm_sqr(&self) -> ExtReal {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> ExtReal {
        self.im.atan2(&self.re)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        ExtComplex::new(self.abs().ln(), self.arg())
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        ExtComplex::new(&r * self.im.cos(), &r * self.im.sin())
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        ExtComplex::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn scale(&self, s: &ExtReal) -> Self {
        ExtComplex::new(&self.re * s, &self.im * s)
    }

    pub fn add_real(&self, s: &ExtReal) -> Self {
        ExtComplex::new(&self.re + s, self.im.clone())
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        ExtComplex::new(-&self.im, self.re.clone())
    }

    /// Non-negative integer power by binary exponentiation.
    pub fn powu(&self, mut n: u32) -> Self {
        let mut acc = ExtComplex::from_real(ExtReal::from_i64(1, self.precision_digits()));
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

impl Add<&ExtComplex> for &ExtComplex {
    type Output = ExtComplex;
    fn add(self, rhs: &ExtComplex) -> ExtComplex {
        ExtComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&ExtComplex> for &ExtComplex {
    type Output = ExtComplex;
    fn sub(self, rhs: &ExtComplex) -> ExtComplex {
        ExtComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&ExtComplex> for &ExtComplex {
    type Output = ExtComplex;
    fn mul(self, rhs: &ExtComplex) -> ExtComplex {
        ExtComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&ExtComplex> for &ExtComplex {
    type Output = ExtComplex;
    fn div(self, rhs: &ExtComplex) -> ExtComplex {
        self * &rhs.recip()
    }
}

impl Neg for &ExtComplex {
    type Output = ExtComplex;
    fn neg(self) -> ExtComplex {
        ExtComplex::new(-&self.re, -&self.im)
    }
}

macro_rules! complex_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<ExtComplex> for ExtComplex {
            type Output = ExtComplex;
            fn $method(self, rhs: ExtComplex) -> ExtComplex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExtComplex> for ExtComplex {
            type Output = ExtComplex;
            fn $method(self, rhs: &ExtComplex) -> ExtComplex {
                (&self).$method(rhs)
            }
        }
    };
}

complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);
