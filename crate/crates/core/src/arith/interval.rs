//! Outward-rounded interval arithmetic over MPFR floats.
//!
//! Every operation rounds the lower endpoint toward `-inf` and the upper endpoint
//! toward `+inf`, so the real value of any composed expression stays inside the
//! computed interval. The evaluation path never depends on the precision, which
//! makes results inclusion-monotone: the same expression evaluated at a higher
//! precision lands inside the lower-precision enclosure.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Float, Integer, Rational};

/// A closed interval `[lo, hi]` with MPFR endpoints at a common working precision.
#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, value: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, value, Round::Down).0
}

fn up<T>(prec: u32, value: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, value, Round::Up).0
}

fn min_f(a: Float, b: Float) -> Float {
    if b < a {
        b
    } else {
        a
    }
}

fn max_f(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

impl Interval {
    /// Builds `[lo, hi]` from endpoints already rounded outward by the caller.
    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        debug_assert!(lo.is_nan() || hi.is_nan() || lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    /// The whole extended real line; produced when an operation leaves its domain.
    pub fn entire(prec: u32) -> Self {
        Interval {
            lo: Float::with_val(prec, rug::float::Special::NegInfinity),
            hi: Float::with_val(prec, rug::float::Special::Infinity),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(value: i64, prec: u32) -> Self {
        Interval {
            lo: down(prec, value),
            hi: up(prec, value),
        }
    }

    pub fn from_integer(value: &Integer, prec: u32) -> Self {
        Interval {
            lo: down(prec, value),
            hi: up(prec, value),
        }
    }

    pub fn from_rational(value: &Rational, prec: u32) -> Self {
        Interval {
            lo: down(prec, value),
            hi: up(prec, value),
        }
    }

    /// Enclosure of pi.
    pub fn pi(prec: u32) -> Self {
        Interval {
            lo: down(prec, Constant::Pi),
            hi: up(prec, Constant::Pi),
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Working precision in bits (the larger endpoint precision).
    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    fn prec_with(&self, other: &Interval) -> u32 {
        self.prec().max(other.prec())
    }

    /// `hi - lo`, rounded up.
    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    /// Width as `log2`, or `-inf` for a point interval.
    pub fn log2_width(&self) -> f64 {
        let w = self.width();
        if w.is_zero() {
            f64::NEG_INFINITY
        } else {
            let (mant, exp) = w.to_f64_exp();
            mant.abs().log2() + f64::from(exp)
        }
    }

    pub fn mid(&self) -> Float {
        let prec = self.prec() + 1;
        let mut m = Float::with_val(prec, &self.lo + &self.hi);
        m /= 2;
        m
    }

    /// Nearest `f64` to the midpoint; for display only.
    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Exact value when the interval is a single representable point.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_point() {
            self.lo.to_rational()
        } else {
            None
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains_rational(&self, value: &Rational) -> bool {
        self.lo <= *value && self.hi >= *value
    }

    pub fn contains_integer(&self, value: &Integer) -> bool {
        self.lo <= *value && self.hi >= *value
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Whether `self` lies inside `other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, rhs: &Interval) -> Interval {
        let prec = self.prec_with(rhs);
        Interval {
            lo: down(prec, &self.lo + &rhs.lo),
            hi: up(prec, &self.hi + &rhs.hi),
        }
    }

    pub fn sub(&self, rhs: &Interval) -> Interval {
        let prec = self.prec_with(rhs);
        Interval {
            lo: down(prec, &self.lo - &rhs.hi),
            hi: up(prec, &self.hi - &rhs.lo),
        }
    }

    pub fn mul(&self, rhs: &Interval) -> Interval {
        let prec = self.prec_with(rhs);
        if self.lo >= 0 && rhs.lo >= 0 {
            return Interval {
                lo: down(prec, &self.lo * &rhs.lo),
                hi: up(prec, &self.hi * &rhs.hi),
            };
        }
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let l = down(prec, a * b);
            let h = up(prec, a * b);
            lo = Some(match lo {
                Some(cur) => min_f(cur, l),
                None => l,
            });
            hi = Some(match hi {
                Some(cur) => max_f(cur, h),
                None => h,
            });
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    pub fn recip(&self) -> Interval {
        let prec = self.prec();
        if self.contains_zero() {
            return Interval::entire(prec);
        }
        Interval {
            lo: down(prec, 1 / &self.hi),
            hi: up(prec, 1 / &self.lo),
        }
    }

    pub fn div(&self, rhs: &Interval) -> Interval {
        if rhs.contains_zero() {
            return Interval::entire(self.prec_with(rhs));
        }
        let prec = self.prec_with(rhs);
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let l = down(prec, a / b);
            let h = up(prec, a / b);
            lo = Some(match lo {
                Some(cur) => min_f(cur, l),
                None => l,
            });
            hi = Some(match hi {
                Some(cur) => max_f(cur, h),
                None => h,
            });
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    pub fn mul_integer(&self, factor: &Integer) -> Interval {
        self.mul(&Interval::from_integer(factor, self.prec()))
    }

    pub fn mul_rational(&self, factor: &Rational) -> Interval {
        self.mul(&Interval::from_rational(factor, self.prec()))
    }

    pub fn add_rational(&self, term: &Rational) -> Interval {
        self.add(&Interval::from_rational(term, self.prec()))
    }

    /// Multiplication by `2^e`, exact in binary floating point.
    pub fn mul_pow2(&self, e: i32) -> Interval {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        lo <<= e;
        hi <<= e;
        Interval { lo, hi }
    }

    pub fn square(&self) -> Interval {
        let prec = self.prec();
        if self.lo >= 0 {
            Interval {
                lo: down(prec, self.lo.square_ref()),
                hi: up(prec, self.hi.square_ref()),
            }
        } else if self.hi <= 0 {
            Interval {
                lo: down(prec, self.hi.square_ref()),
                hi: up(prec, self.lo.square_ref()),
            }
        } else {
            let a = up(prec, self.lo.square_ref());
            let b = up(prec, self.hi.square_ref());
            Interval {
                lo: Float::with_val(prec, 0),
                hi: max_f(a, b),
            }
        }
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: u32) -> Interval {
        let mut result = Interval::one(self.prec());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        result
    }

    fn monotone(&self, f: impl Fn(&mut Float, Round) -> Ordering) -> Interval {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        f(&mut lo, Round::Down);
        f(&mut hi, Round::Up);
        Interval { lo, hi }
    }

    fn clamp_nonneg(&self) -> Interval {
        let mut out = self.clone();
        if out.lo < 0 {
            out.lo = Float::with_val(out.lo.prec(), 0);
        }
        out
    }

    pub fn exp(&self) -> Interval {
        self.monotone(|f, r| f.exp_round(r))
    }

    pub fn exp2(&self) -> Interval {
        self.monotone(|f, r| f.exp2_round(r))
    }

    /// Natural logarithm; a zero lower endpoint maps to `-inf`.
    pub fn ln(&self) -> Interval {
        if self.hi < 0 {
            return Interval::entire(self.prec());
        }
        self.clamp_nonneg().monotone(|f, r| f.ln_round(r))
    }

    pub fn log2(&self) -> Interval {
        if self.hi < 0 {
            return Interval::entire(self.prec());
        }
        self.clamp_nonneg().monotone(|f, r| f.log2_round(r))
    }

    pub fn sqrt(&self) -> Interval {
        if self.hi < 0 {
            return Interval::entire(self.prec());
        }
        self.clamp_nonneg().monotone(|f, r| f.sqrt_round(r))
    }

    /// Real `n`-th root of a nonnegative interval.
    pub fn root(&self, n: u32) -> Interval {
        if self.hi < 0 {
            return Interval::entire(self.prec());
        }
        self.clamp_nonneg().monotone(|f, r| f.root_round(n, r))
    }

    /// `self^exponent = exp(exponent * ln self)` for a positive base.
    pub fn pow(&self, exponent: &Interval) -> Interval {
        exponent.mul(&self.ln()).exp()
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: min_f(self.lo.clone(), other.lo.clone()),
            hi: min_f(self.hi.clone(), other.hi.clone()),
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: max_f(self.lo.clone(), other.lo.clone()),
            hi: max_f(self.hi.clone(), other.hi.clone()),
        }
    }

    /// `(floor(lo), floor(hi))`; equal entries mean the floor is certified.
    pub fn floor_bounds(&self) -> Option<(Integer, Integer)> {
        let lo = self.lo.to_integer_round(Round::Down)?.0;
        let hi = self.hi.to_integer_round(Round::Down)?.0;
        Some((lo, hi))
    }

    /// Lower endpoint as a decimal string with `digits` significant digits, rounded down.
    pub fn lo_decimal(&self, digits: usize) -> String {
        float_decimal(&self.lo, digits, Round::Down)
    }

    /// Upper endpoint as a decimal string with `digits` significant digits, rounded up.
    pub fn hi_decimal(&self, digits: usize) -> String {
        float_decimal(&self.hi, digits, Round::Up)
    }
}

/// Decimal rendering of a float with a fixed number of significant digits.
pub fn float_decimal(value: &Float, digits: usize, round: Round) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    value.to_string_radix_round(10, Some(digits.max(1)), round)
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo_decimal(20), self.hi_decimal(20))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        write!(
            f,
            "[{}, {}]",
            self.lo_decimal(digits),
            self.hi_decimal(digits)
        )
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Interval> for &Interval {
            type Output = Interval;
            fn $method(self, rhs: &Interval) -> Interval {
                Interval::$method(self, rhs)
            }
        }
        impl $trait<Interval> for Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                Interval::$method(&self, &rhs)
            }
        }
        impl $trait<&Interval> for Interval {
            type Output = Interval;
            fn $method(self, rhs: &Interval) -> Interval {
                Interval::$method(&self, rhs)
            }
        }
        impl $trait<Interval> for &Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                Interval::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn rational_enclosure_is_tight() {
        let x = Interval::from_rational(&q(1, 3), 64);
        assert!(x.contains_rational(&q(1, 3)));
        assert!(!x.is_point());
        let y = Interval::from_rational(&q(3, 4), 64);
        assert!(y.is_point());
        assert_eq!(y.to_rational(), Some(q(3, 4)));
    }

    #[test]
    fn mixed_sign_multiplication() {
        let a = Interval::from_endpoints(Float::with_val(53, -2), Float::with_val(53, 3));
        let b = Interval::from_endpoints(Float::with_val(53, -5), Float::with_val(53, 1));
        let c = &a * &b;
        assert_eq!(*c.lo(), -15);
        assert_eq!(*c.hi(), 10);
    }

    #[test]
    fn division_by_interval_with_zero_is_entire() {
        let a = Interval::one(64);
        let b = Interval::from_endpoints(Float::with_val(64, -1), Float::with_val(64, 1));
        let c = &a / &b;
        assert!(c.lo().is_infinite() && c.hi().is_infinite());
    }

    #[test]
    fn transcendental_enclosures() {
        let prec = 128;
        let two = Interval::from_i64(2, prec);
        let ln2 = two.ln();
        let back = ln2.exp();
        assert!(back.contains_integer(&Integer::from(2)));
        let l = Interval::from_i64(8, prec).log2();
        assert!(l.contains_integer(&Integer::from(3)));
        let r = Interval::from_i64(27, prec).root(3);
        assert!(r.contains_integer(&Integer::from(3)));
        let s = Interval::from_rational(&q(9, 4), prec).sqrt();
        assert_eq!(s.to_rational(), Some(q(3, 2)));
    }

    #[test]
    fn powi_matches_exact_power() {
        let x = Interval::from_rational(&q(3, 7), 200);
        let p = x.powi(11);
        let exact = rug::ops::Pow::pow(q(3, 7), 11u32);
        assert!(p.contains_rational(&exact));
    }

    #[test]
    fn square_of_straddling_interval_starts_at_zero() {
        let a = Interval::from_endpoints(Float::with_val(53, -3), Float::with_val(53, 2));
        let s = a.square();
        assert_eq!(*s.lo(), 0);
        assert_eq!(*s.hi(), 9);
    }

    #[test]
    fn pow2_scaling_is_exact() {
        let x = Interval::from_rational(&q(1, 3), 64);
        let y = x.mul_pow2(5).mul_pow2(-5);
        assert_eq!(x, y);
    }
}
