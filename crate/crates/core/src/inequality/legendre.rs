//! Agreement of the binomial sum with its Legendre-polynomial form
//! `f_k(x) = (u - v)^k P_k((u + v)/(u - v))`, `u = (1-x)^(p_k/k)`, `v = x^(p_k/k)`.

use rug::Rational;

use crate::arith::{escalate, Certainty, Interval, PrecisionPolicy};
use crate::error::{domain, Result};

use super::sum::{f_k, SumContext};

/// `P_k(z) = 2^(-k) sum_j C(k,j)^2 (z+1)^(k-j) (z-1)^j`.
pub fn legendre_p(ctx: &SumContext, z: &Interval) -> Interval {
    let one = Interval::one(ctx.prec);
    let sum = ctx.weighted_sum(&z.add(&one), &z.sub(&one));
    sum.mul_pow2(-(ctx.k as i32))
}

/// Both sides at one precision: `(f_k(x), (u - v)^k P_k(z))`.
pub fn legendre_sides(k: u32, x: &Rational, prec: u32) -> Result<(Interval, Interval)> {
    check(k, x)?;
    let ctx = SumContext::new(k, prec);
    let (u, v) = ctx.base_powers(x);
    let diff = u.sub(&v);
    let z = u.add(&v).div(&diff);
    let rhs = diff.powi(k).mul(&legendre_p(&ctx, &z));
    Ok((f_k(k, x, prec)?, rhs))
}

fn check(k: u32, x: &Rational) -> Result<()> {
    if k == 0 {
        return domain("k must be positive");
    }
    if *x < 0 || *x > 1 {
        return domain(format!("x = {x} lies outside [0, 1]"));
    }
    if *x == Rational::from((1, 2)) {
        return domain("x = 1/2 makes the substitution singular");
    }
    Ok(())
}

/// Certifies that both forms agree: the enclosures intersect and each is
/// narrower than `2^(-prec/2)`. Disjoint enclosures are `CertainFalse`.
pub fn legendre_reformulation_check(
    k: u32,
    x: &Rational,
    policy: PrecisionPolicy,
) -> Result<Certainty> {
    check(k, x)?;
    Ok(escalate(policy, |prec| {
        let (lhs, rhs) = legendre_sides(k, x, prec).expect("arguments checked");
        let verdict = if !lhs.intersects(&rhs) {
            Certainty::CertainFalse
        } else {
            let tol = -f64::from(prec / 2);
            if lhs.log2_width() <= tol && rhs.log2_width() <= tol {
                Certainty::CertainTrue
            } else {
                Certainty::Undecided
            }
        };
        (verdict, ())
    })
    .certainty)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn agreement_examples() {
        let p = PrecisionPolicy::default();
        assert_eq!(
            legendre_reformulation_check(1, &q(1, 4), p).unwrap(),
            Certainty::CertainTrue
        );
        let (l, r) = legendre_sides(1, &q(1, 4), 256).unwrap();
        assert_eq!(l.to_rational(), Some(1.into()));
        assert_eq!(r.to_rational(), Some(1.into()));
        assert_eq!(
            legendre_reformulation_check(2, &q(1, 4), p).unwrap(),
            Certainty::CertainTrue
        );
        assert_eq!(
            legendre_reformulation_check(5, &q(9, 10), p).unwrap(),
            Certainty::CertainTrue
        );
        assert!(legendre_reformulation_check(5, &q(1, 2), p).is_err());
    }

    #[test]
    fn legendre_low_degrees() {
        // P_2(z) = (3z^2 - 1)/2, P_3(z) = (5z^3 - 3z)/2
        let z = Interval::from_rational(&q(7, 3), 256);
        let p2 = legendre_p(&SumContext::new(2, 256), &z);
        assert!(p2.contains_rational(&q(23, 3)));
        let p3 = legendre_p(&SumContext::new(3, 256), &z);
        let zz = 7.0f64 / 3.0;
        assert!((p3.to_f64() - (5.0 * zz.powi(3) - 3.0 * zz) / 2.0).abs() < 1e-12);
    }
}
