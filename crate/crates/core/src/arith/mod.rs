//! Exact integers and rationals, outward-rounded intervals, certified comparison
//! and precision escalation.

mod bounds;
mod certainty;
mod exact;
mod interval;

pub use bounds::{pk, pk_bounds_check, stirling_bounds_check};
pub use certainty::{
    certified_compare, certified_positive, escalate, verify_with_escalation, Certainty, Escalated,
    PrecisionPolicy,
};
pub use exact::{
    binomial, central_binomial, exact_integer_root, exact_rational_pow, exact_rational_root,
    parse_rational, power_of_two_exponent, squared_binomials,
};
pub use interval::{float_decimal, Interval};

/// Arbitrary-magnitude exact integer.
pub type ExactInt = rug::Integer;
/// Exact rational in lowest terms with a positive denominator.
pub type ExactRational = rug::Rational;

/// Enclosure of a nonnegative rational raised to an interval exponent, with
/// `0^0 = 1` and `0^e = 0` for positive `e`.
pub fn rational_pow(base: &ExactRational, exponent: &Interval) -> Interval {
    let prec = exponent.prec();
    if *base == 0 {
        return if exponent.is_point() && exponent.lo().is_zero() {
            Interval::one(prec)
        } else {
            Interval::zero(prec)
        };
    }
    if let Some(e) = exponent.to_rational() {
        if let Some(v) = exact_rational_pow(base, &e) {
            return Interval::from_rational(&v, prec);
        }
    }
    Interval::from_rational(base, prec).pow(exponent)
}
