//! Double-precision mantissas with a separate binary exponent, so products of
//! hundreds of factors neither overflow nor underflow before the final rounding.

use num_complex::Complex64;

/// Range outcome of collapsing a scaled value back to a plain double.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RangeFlag {
    Normal,
    Overflow,
    Underflow,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct ScaledComplex {
    m: Complex64,
    e: i64,
}

impl ScaledComplex {
    pub(crate) fn new(z: Complex64) -> Self {
        ScaledComplex { m: z, e: 0 }.normalized()
    }

    pub(crate) fn from_parts(mant: f64, exp: i64) -> Self {
        ScaledComplex {
            m: Complex64::new(mant, 0.0),
            e: exp,
        }
        .normalized()
    }

    fn normalized(self) -> Self {
        let big = self.m.re.abs().max(self.m.im.abs());
        if big == 0.0 || !big.is_finite() {
            return self;
        }
        let (_, shift) = libm::frexp(big);
        ScaledComplex {
            m: Complex64::new(libm::scalbn(self.m.re, -shift), libm::scalbn(self.m.im, -shift)),
            e: self.e + shift as i64,
        }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        ScaledComplex {
            m: self.m * other.m,
            e: self.e + other.e,
        }
        .normalized()
    }

    pub(crate) fn recip(&self) -> Self {
        ScaledComplex {
            m: self.m.inv(),
            e: -self.e,
        }
        .normalized()
    }

    pub(crate) fn scale(&self, s: f64) -> Self {
        ScaledComplex {
            m: self.m * s,
            e: self.e,
        }
        .normalized()
    }

    pub(crate) fn powu(&self, mut n: u32) -> Self {
        let mut base = *self;
        let mut acc = ScaledComplex::new(Complex64::new(1.0, 0.0));
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    /// log2 |value|; `-inf` for zero.
    pub(crate) fn log2_abs(&self) -> f64 {
        self.m.norm().log2() + self.e as f64
    }

    /// Round to a plain complex double and report range loss.
    pub(crate) fn to_complex(&self) -> (Complex64, RangeFlag) {
        if self.is_zero() {
            return (self.m, RangeFlag::Normal);
        }
        let e = self.e.clamp(-10_000, 10_000) as i32;
        let z = Complex64::new(libm::scalbn(self.m.re, e), libm::scalbn(self.m.im, e));
        let mag = z.re.abs().max(z.im.abs());
        let flag = if !mag.is_finite() {
            RangeFlag::Overflow
        } else if mag < f64::MIN_POSITIVE {
            RangeFlag::Underflow
        } else {
            RangeFlag::Normal
        };
        (z, flag)
    }

    /// |value| rounded to a double, saturating at the range edges.
    pub(crate) fn abs_f64(&self) -> (f64, RangeFlag) {
        let n = self.m.norm();
        if n == 0.0 {
            return (0.0, RangeFlag::Normal);
        }
        let e = self.e.clamp(-10_000, 10_000) as i32;
        let v = libm::scalbn(n, e);
        let flag = if !v.is_finite() {
            RangeFlag::Overflow
        } else if v < f64::MIN_POSITIVE {
            RangeFlag::Underflow
        } else {
            RangeFlag::Normal
        };
        (v, flag)
    }
}
