//! Whiteley and power means of two numbers and their certified comparisons.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::arith::{
    central_binomial, certified_compare, escalate, exact_rational_pow, exact_rational_root, pk,
    rational_pow, squared_binomials, Certainty, Interval, PrecisionPolicy,
};
use crate::error::{domain, Result};
use crate::report::{Verdict, VerdictCounts, VerificationReport};

fn check_pair(x: &Rational, y: &Rational) -> Result<()> {
    if *x < 0 || *y < 0 {
        return domain("mean arguments must be nonnegative");
    }
    Ok(())
}

/// `sum_j C(k,j)^2 x^(k-j) y^j / C(2k,k)`, the `k`-th power of the Whiteley mean.
pub fn whiteley_inner(k: u32, x: &Rational, y: &Rational) -> Rational {
    let mut total = Rational::new();
    for (j, w) in squared_binomials(k).into_iter().enumerate() {
        let j = j as u32;
        total += x.clone().pow(k - j) * y.clone().pow(j) * w;
    }
    total / central_binomial(k)
}

fn root_of(value: &Rational, n: u32, prec: u32) -> Interval {
    match exact_rational_root(value, n) {
        Some(r) => Interval::from_rational(&r, prec),
        None => Interval::from_rational(value, prec).root(n),
    }
}

/// Whiteley mean `(sum_j C(k,j)^2 x^(k-j) y^j / C(2k,k))^(1/k)`; the inner
/// sum is exact and the root is exact whenever it is rational.
pub fn whiteley_mean(k: u32, x: &Rational, y: &Rational, prec: u32) -> Result<Interval> {
    check_pair(x, y)?;
    if k == 0 {
        return domain("k must be positive");
    }
    Ok(root_of(&whiteley_inner(k, x, y), k, prec))
}

/// Whiteley mean of two enclosed nonnegative numbers.
pub fn whiteley_mean_enclosure(k: u32, x: &Interval, y: &Interval) -> Interval {
    let prec = x.prec().max(y.prec());
    let mut total = Interval::zero(prec);
    for (j, w) in squared_binomials(k).iter().enumerate() {
        let j = j as u32;
        total = total.add(&x.powi(k - j).mul(&y.powi(j)).mul_integer(w));
    }
    total
        .div(&Interval::from_integer(&central_binomial(k), prec))
        .root(k)
}

/// Power mean `((x^r + y^r)/2)^(1/r)`, with the geometric mean at `r = 0` and
/// the value 0 for `r <= 0` when an argument vanishes.
pub fn power_mean(r: &Rational, x: &Rational, y: &Rational, prec: u32) -> Result<Interval> {
    check_pair(x, y)?;
    if *r <= 0 && (*x == 0 || *y == 0) {
        return Ok(Interval::zero(prec));
    }
    if *r == 0 {
        return Ok(root_of(&Rational::from(x * y), 2, prec));
    }
    let term = |b: &Rational| match exact_rational_pow(b, r) {
        Some(v) => Interval::from_rational(&v, prec),
        None => Interval::from_rational(b, prec).pow(&Interval::from_rational(r, prec)),
    };
    if let (Some(a), Some(b)) = (exact_rational_pow(x, r), exact_rational_pow(y, r)) {
        let inner = (a + b) / 2u32;
        if let Some(v) = exact_rational_pow(&inner, &Rational::from(r.recip_ref())) {
            return Ok(Interval::from_rational(&v, prec));
        }
    }
    let inner = term(x).add(&term(y)).mul_pow2(-1);
    Ok(inner.pow(&Interval::from_rational(r, prec).recip()))
}

/// Power mean with an enclosed positive exponent.
pub fn power_mean_interval(r: &Interval, x: &Rational, y: &Rational) -> Result<Interval> {
    check_pair(x, y)?;
    if !r.is_positive() {
        return domain("the exponent enclosure must be positive");
    }
    let inner = rational_pow(x, r).add(&rational_pow(y, r)).mul_pow2(-1);
    Ok(pow_nonneg(&inner, &r.recip()))
}

/// Power mean of two enclosed nonnegative numbers with an enclosed positive exponent.
pub fn power_mean_enclosure(r: &Interval, x: &Interval, y: &Interval) -> Interval {
    let inner = pow_nonneg(x, r).add(&pow_nonneg(y, r)).mul_pow2(-1);
    pow_nonneg(&inner, &r.recip())
}

fn pow_nonneg(base: &Interval, e: &Interval) -> Interval {
    if base.is_point() && base.lo().is_zero() {
        return Interval::zero(e.prec());
    }
    base.pow(e)
}

/// `r_k = k / p_k`, exactly 1 at `k = 1`.
pub fn r_k(k: u32, prec: u32) -> Result<Interval> {
    if k == 0 {
        return domain("k must be positive");
    }
    Ok(Interval::from_i64(i64::from(k), prec).div(&pk(k, prec)))
}

/// Certifies `1/2 < r_k <= 1`: the upper end is exact at `k = 1`, strict otherwise.
pub fn certify_r_k_range(k: u32, policy: PrecisionPolicy) -> Result<Certainty> {
    if k == 0 {
        return domain("k must be positive");
    }
    Ok(escalate(policy, |prec| {
        let r = r_k(k, prec).expect("k checked");
        let above_half = certified_compare(&Interval::one(prec).mul_pow2(-1), &r);
        let at_most_one = if k == 1 {
            Certainty::from_bool(r.to_rational() == Some(Rational::from(1)))
        } else {
            certified_compare(&r, &Interval::one(prec))
        };
        (above_half.and(at_most_one), ())
    })
    .certainty)
}

/// Per-pair verdicts for one comparison between two means.
#[derive(Debug, Clone)]
pub struct MeanComparisonReport {
    pub k: u32,
    /// Human-readable form of the checked relation.
    pub relation: String,
    /// Power-mean exponent at the starting precision.
    pub exponent: Interval,
    pub reports: Vec<VerificationReport>,
    pub counts: VerdictCounts,
    /// Smallest certified margin among strictly verified pairs.
    pub worst_margin: Option<Interval>,
}

impl MeanComparisonReport {
    fn new(k: u32, relation: String, exponent: Interval, reports: Vec<VerificationReport>) -> Self {
        let counts = reports.iter().map(|r| r.verdict).collect();
        let worst_margin = reports
            .iter()
            .filter(|r| r.verdict == Verdict::CertainTrue)
            .filter_map(|r| r.margin.clone())
            .min_by(|a, b| a.lo().partial_cmp(b.lo()).expect("finite margins"));
        MeanComparisonReport {
            k,
            relation,
            exponent,
            reports,
            counts,
            worst_margin,
        }
    }
}

/// Pairs `(x_max i/(n-1), 1)` for `i = 0..n`.
pub fn ray_grid(n: usize, x_max: &Rational) -> Result<Vec<(Rational, Rational)>> {
    if n < 2 {
        return domain("a grid needs at least two points");
    }
    Ok((0..n)
        .map(|i| {
            let x = Rational::from(x_max * Integer::from(i)) / Integer::from(n - 1);
            (x, Rational::from(1))
        })
        .collect())
}

/// Certifies `small <= large` pair by pair; `equal` marks the pairs where the
/// relation is an identity. The margin is `log2(large) - log2(small)`.
fn compare_pairs(
    pairs: &[(Rational, Rational)],
    policy: PrecisionPolicy,
    case: impl Fn(&Rational, &Rational) -> String + Sync,
    equal: impl Fn(&Rational, &Rational) -> bool + Sync,
    sides: impl Fn(&Rational, &Rational, u32) -> (Interval, Interval) + Sync,
) -> Vec<VerificationReport> {
    pairs
        .par_iter()
        .map(|(x, y)| {
            let id = case(x, y);
            if equal(x, y) {
                return VerificationReport::exact_equality(id, policy.start);
            }
            let e = escalate(policy, |prec| {
                let (small, large) = sides(x, y, prec);
                (
                    certified_compare(&small, &large),
                    large.log2().sub(&small.log2()),
                )
            });
            VerificationReport::from_escalated(id, e)
        })
        .collect()
}

fn check_pairs(k: u32, pairs: &[(Rational, Rational)]) -> Result<()> {
    if k == 0 {
        return domain("k must be positive");
    }
    pairs.iter().try_for_each(|(x, y)| check_pair(x, y))
}

/// Certifies `W_k(x,y) <= M_{r_k}(x,y)`. Exact equality holds at `x = y`, when
/// an argument is zero (both sides are `max(x,y) 2^(-p_k/k)`), and at `k = 1`.
pub fn verify_upper(
    k: u32,
    pairs: &[(Rational, Rational)],
    policy: PrecisionPolicy,
) -> Result<MeanComparisonReport> {
    check_pairs(k, pairs)?;
    let reports = compare_pairs(
        pairs,
        policy,
        |x, y| format!("upper k={k} x={x} y={y}"),
        |x, y| k == 1 || x == y || *x == 0 || *y == 0,
        |x, y, prec| {
            let w = whiteley_mean(k, x, y, prec).expect("pair checked");
            let m =
                power_mean_interval(&r_k(k, prec).expect("k checked"), x, y).expect("pair checked");
            (w, m)
        },
    );
    Ok(MeanComparisonReport::new(
        k,
        format!("W_{k}(x,y) <= M_r(x,y), r = k/p_k"),
        r_k(k, policy.start)?,
        reports,
    ))
}

/// Certifies `W_k(x,y) >= M_{k/(2k-1)}(x,y)`, exactly equal at `x = y` and at `k = 1`.
pub fn verify_lower(
    k: u32,
    pairs: &[(Rational, Rational)],
    policy: PrecisionPolicy,
) -> Result<MeanComparisonReport> {
    check_pairs(k, pairs)?;
    let r = Rational::from((k, 2 * k - 1));
    let reports = compare_pairs(
        pairs,
        policy,
        |x, y| format!("lower k={k} x={x} y={y}"),
        |x, y| k == 1 || x == y,
        |x, y, prec| {
            let w = whiteley_mean(k, x, y, prec).expect("pair checked");
            let m = power_mean(&r, x, y, prec).expect("pair checked");
            (m, w)
        },
    );
    Ok(MeanComparisonReport::new(
        k,
        format!("W_{k}(x,y) >= M_{r}(x,y)"),
        Interval::from_rational(&r, policy.start),
        reports,
    ))
}

/// The two earlier, weaker bounds `W_k >= M_{1/2}` and
/// `W_k <= 2^(2 - 1/r_k) M_{1/2}`. The first is an identity at `x = y`, the
/// second when an argument is zero.
pub fn verify_prior_bounds(
    k: u32,
    pairs: &[(Rational, Rational)],
    policy: PrecisionPolicy,
) -> Result<[MeanComparisonReport; 2]> {
    check_pairs(k, pairs)?;
    let half = Rational::from((1, 2));
    let lower = compare_pairs(
        pairs,
        policy,
        |x, y| format!("prior-lower k={k} x={x} y={y}"),
        |x, y| x == y,
        |x, y, prec| {
            let w = whiteley_mean(k, x, y, prec).expect("pair checked");
            (power_mean(&half, x, y, prec).expect("pair checked"), w)
        },
    );
    let upper = compare_pairs(
        pairs,
        policy,
        |x, y| format!("prior-upper k={k} x={x} y={y}"),
        |x, y| *x == 0 || *y == 0,
        |x, y, prec| {
            let w = whiteley_mean(k, x, y, prec).expect("pair checked");
            let m = power_mean(&half, x, y, prec).expect("pair checked");
            let alpha = pk(k, prec).div(&Interval::from_i64(i64::from(k), prec));
            let factor = Interval::from_i64(2, prec).sub(&alpha).exp2();
            (w, factor.mul(&m))
        },
    );
    let start = policy.start;
    Ok([
        MeanComparisonReport::new(
            k,
            format!("W_{k}(x,y) >= M_1/2(x,y)"),
            Interval::from_rational(&half, start),
            lower,
        ),
        MeanComparisonReport::new(
            k,
            format!("W_{k}(x,y) <= 2^(2-1/r) M_1/2(x,y), r = k/p_k"),
            Interval::from_rational(&half, start),
            upper,
        ),
    ])
}

/// `(1 - W_k(1+eps, 1-eps)) / eps^2`, which tends to `(k-1)/(2(2k-1))`.
pub fn expansion_coefficient(k: u32, eps: &Rational, prec: u32) -> Result<Interval> {
    if *eps <= 0 || *eps >= 1 {
        return domain("eps must lie in (0, 1)");
    }
    let w = whiteley_mean(k, &Rational::from(1 + eps), &Rational::from(1 - eps), prec)?;
    Ok(Interval::one(prec)
        .sub(&w)
        .div(&Interval::from_rational(&Rational::from(eps * eps), prec)))
}

/// `(k-1)/(2(2k-1))`.
pub fn expansion_limit(k: u32) -> Rational {
    Rational::from((k - 1, 2 * (2 * k - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn whiteley_examples() {
        let w = whiteley_mean(1, &q(1, 1), &q(2, 1), 128).unwrap();
        assert_eq!(w.to_rational(), Some(q(3, 2)));
        let w = whiteley_mean(3, &q(5, 1), &q(5, 1), 128).unwrap();
        assert_eq!(w.to_rational(), Some(q(5, 1)));
        let w = whiteley_mean(2, &q(4, 1), &q(0, 1), 256).unwrap();
        assert!((w.to_f64() - (8f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(w.log2_width() < -240.0);
    }

    #[test]
    fn power_mean_examples() {
        let pm = |r: Rational, x: i64, y: i64| power_mean(&r, &q(x, 1), &q(y, 1), 128).unwrap();
        assert_eq!(pm(q(1, 1), 3, 8).to_rational(), Some(q(11, 2)));
        assert_eq!(pm(q(0, 1), 4, 9).to_rational(), Some(q(6, 1)));
        assert_eq!(pm(q(2, 1), 1, 7).to_rational(), Some(q(5, 1)));
        assert_eq!(pm(q(-1, 1), 0, 7).to_rational(), Some(q(0, 1)));
        assert!((pm(q(1, 2), 4, 1).to_f64() - 2.25).abs() < 1e-30);
        let oracle = ((2f64.cbrt() + 5f64.cbrt()) / 2.0).powi(3);
        assert!((pm(q(1, 3), 2, 5).to_f64() - oracle).abs() < 1e-12);
    }

    #[test]
    fn r_k_examples() {
        assert_eq!(r_k(1, 128).unwrap().to_rational(), Some(q(1, 1)));
        assert!((r_k(2, 128).unwrap().to_f64() - 2.0 / 6f64.log2()).abs() < 1e-15);
        assert!((r_k(2, 128).unwrap().to_f64() - 0.7737).abs() < 1e-4);
        for k in [1, 2, 3, 50, 200] {
            assert_eq!(
                certify_r_k_range(k, policy()).unwrap(),
                Certainty::CertainTrue
            );
        }
    }

    #[test]
    fn comparison_examples() {
        let pairs = [(q(2, 1), q(2, 1)), (q(1, 1), q(0, 1)), (q(3, 1), q(1, 1))];
        let up = verify_upper(2, &pairs, policy()).unwrap();
        let v: Vec<_> = up.reports.iter().map(|r| r.verdict).collect();
        assert_eq!(
            v,
            [
                Verdict::ExactEquality,
                Verdict::ExactEquality,
                Verdict::CertainTrue
            ]
        );
        let lo = verify_lower(2, &pairs, policy()).unwrap();
        assert_eq!(lo.reports[2].verdict, Verdict::CertainTrue);
        assert_eq!(lo.counts.certain_false, 0);
        let lo1 = verify_lower(1, &pairs, policy()).unwrap();
        assert_eq!(lo1.counts.exact_equality, 3);
        let [pl, pu] =
            verify_prior_bounds(2, &[(q(4, 1), q(1, 1)), (q(1, 1), q(0, 1))], policy()).unwrap();
        assert_eq!(pl.reports[0].verdict, Verdict::CertainTrue);
        assert_eq!(pl.reports[1].verdict, Verdict::CertainTrue);
        assert_eq!(pu.reports[1].verdict, Verdict::ExactEquality);
        assert_eq!(pu.counts.certain_false, 0);
    }

    #[test]
    fn zero_argument_equality_is_real() {
        // W_k(1,0) = C(2k,k)^(-1/k) and M_{r_k}(1,0) = 2^(-1/r_k) agree numerically.
        for k in 2..8 {
            let w = whiteley_mean(k, &q(1, 1), &q(0, 1), 256).unwrap();
            let m = power_mean_interval(&r_k(k, 256).unwrap(), &q(1, 1), &q(0, 1)).unwrap();
            assert!(w.intersects(&m));
        }
    }

    #[test]
    fn expansion_examples() {
        let eps = q(1, 10_000);
        assert!(expansion_coefficient(1, &eps, 256).unwrap().contains_zero());
        for k in [2, 3, 5, 10] {
            let c = expansion_coefficient(k, &eps, 256).unwrap().to_f64();
            let target = expansion_limit(k).to_f64();
            assert!(((c - target) / target).abs() < 1e-3, "k={k}");
        }
        assert_eq!(expansion_limit(10), q(9, 38));
    }
}
