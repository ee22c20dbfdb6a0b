//! The sharp exponent `p_k = log2 C(2k, k)` and the Stirling-type bounds around it.

use rug::Integer;

use super::{central_binomial, certified_compare, Certainty, Interval};

/// Enclosure of `p_k = log2 C(2k, k)`.
pub fn pk(k: u32, prec: u32) -> Interval {
    assert!(k >= 1, "p_k is defined for k >= 1");
    Interval::from_integer(&central_binomial(k), prec).log2()
}

/// `ln(2 pi)` enclosure.
fn ln_two_pi(prec: u32) -> Interval {
    Interval::pi(prec).mul_pow2(1).ln()
}

/// Checks the two-sided Stirling bound
/// `sqrt(2 pi) n^(n+1/2) e^(-n + 1/(12n+1)) < n! < sqrt(2 pi) n^(n+1/2) e^(-n + 1/(12n))`
/// in logarithmic form against the exact factorial.
pub fn stirling_bounds_check(n: u32, prec: u32) -> Certainty {
    assert!(n >= 1, "Stirling bounds need n >= 1");
    let fact = Integer::from(Integer::factorial(n));
    let ln_fact = Interval::from_integer(&fact, prec).ln();
    let nn = Interval::from_i64(i64::from(n), prec);
    let half = rug::Rational::from((1, 2));
    // 1/2 ln(2 pi) + (n + 1/2) ln n - n
    let base = ln_two_pi(prec)
        .mul_pow2(-1)
        .add(&nn.add_rational(&half).mul(&nn.ln()))
        .sub(&nn);
    let n64 = i64::from(n);
    let lower = base.add(&Interval::from_i64(12 * n64 + 1, prec).recip());
    let upper = base.add(&Interval::from_i64(12 * n64, prec).recip());
    certified_compare(&lower, &ln_fact).and(certified_compare(&ln_fact, &upper))
}

/// Checks `2k - log2(pi k)/2 - 1/(4k) < p_k < 2k - log2(pi k)/2` and, for `k >= 2`,
/// `k < p_k < 2k - 1`.
pub fn pk_bounds_check(k: u32, prec: u32) -> Certainty {
    assert!(k >= 1, "p_k is defined for k >= 1");
    let p = pk(k, prec);
    let kk = Interval::from_i64(i64::from(k), prec);
    let upper = Interval::from_i64(2 * i64::from(k), prec)
        .sub(&Interval::pi(prec).mul(&kk).log2().mul_pow2(-1));
    let lower = upper.sub(&Interval::from_i64(4 * i64::from(k), prec).recip());
    let mut verdict = certified_compare(&lower, &p).and(certified_compare(&p, &upper));
    if k >= 2 {
        let coarse_hi = Interval::from_i64(2 * i64::from(k) - 1, prec);
        verdict = verdict
            .and(certified_compare(&kk, &p))
            .and(certified_compare(&p, &coarse_hi));
    }
    verdict
}
