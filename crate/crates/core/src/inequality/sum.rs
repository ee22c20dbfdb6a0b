//! The normalized binomial sum
//! `f_k(x) = sum_j C(k,j)^2 (1-x)^(p_k (k-j)/k) x^(p_k j/k)` and the main
//! inequality `f_k(x) <= 1`.

use rayon::prelude::*;
use rug::{Integer, Rational};

use crate::arith::{
    central_binomial, certified_compare, escalate, pk, rational_pow, squared_binomials, Certainty,
    Interval, PrecisionPolicy,
};
use crate::error::{domain, Result};
use crate::report::VerificationReport;

use super::GridSpec;

/// Per-`k` quantities shared by every evaluation at one precision: `p_k`,
/// the exponent `alpha = p_k / k` and the squared binomial weights.
#[derive(Debug, Clone)]
pub struct SumContext {
    pub k: u32,
    pub prec: u32,
    pub p: Interval,
    pub alpha: Interval,
    pub weights: Vec<Interval>,
    pub weights_exact: Vec<Integer>,
    pub central: Integer,
}

impl SumContext {
    pub fn new(k: u32, prec: u32) -> Self {
        assert!(k >= 1, "k must be positive");
        let p = pk(k, prec);
        Self::with_exponent(k, p, prec)
    }

    /// Same sum with `p_k` replaced by an arbitrary exponent.
    pub fn with_exponent(k: u32, p: Interval, prec: u32) -> Self {
        let alpha = p.div(&Interval::from_i64(i64::from(k), prec));
        let weights_exact = squared_binomials(k);
        let weights = weights_exact
            .iter()
            .map(|w| Interval::from_integer(w, prec))
            .collect();
        SumContext {
            k,
            prec,
            p,
            alpha,
            weights,
            weights_exact,
            central: central_binomial(k),
        }
    }

    /// `((1-x)^alpha, x^alpha)` for rational `x` in `[0, 1]`.
    pub fn base_powers(&self, x: &Rational) -> (Interval, Interval) {
        let one_minus = Rational::from(1 - x);
        (
            rational_pow(&one_minus, &self.alpha),
            rational_pow(x, &self.alpha),
        )
    }

    /// `sum_j w_j u^(k-j) v^j`.
    pub fn weighted_sum(&self, u: &Interval, v: &Interval) -> Interval {
        let k = self.k as usize;
        let u_pows = power_table(u, k, self.prec);
        let v_pows = power_table(v, k, self.prec);
        let mut total = Interval::zero(self.prec);
        for j in 0..=k {
            let term = self.weights[j].mul(&u_pows[k - j]).mul(&v_pows[j]);
            total = total.add(&term);
        }
        total
    }
}

/// `[1, b, b^2, ..., b^n]` by successive multiplication.
pub(crate) fn power_table(base: &Interval, n: usize, prec: u32) -> Vec<Interval> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Interval::one(prec));
    for i in 1..=n {
        let next = out[i - 1].mul(base);
        out.push(next);
    }
    out
}

fn check_unit(x: &Rational) -> Result<()> {
    if *x < 0 || *x > 1 {
        return domain(format!("x = {x} lies outside [0, 1]"));
    }
    Ok(())
}

/// Points where `f_k = 1` holds by an exact identity: the endpoints (only one
/// term survives, with `0^0 = 1`) and the midpoint (`2^(-p_k) = 1/C(2k,k)`).
pub(crate) fn is_equality_point(k: u32, x: &Rational) -> bool {
    k == 1 || *x == 0 || *x == 1 || *x == Rational::from((1, 2))
}

fn f_k_in(ctx: &SumContext, x: &Rational) -> Interval {
    if is_equality_point(ctx.k, x) {
        return Interval::one(ctx.prec);
    }
    // f_k(1 - x) = f_k(x) term by term, so evaluate on [0, 1/2] only.
    let half = Rational::from((1, 2));
    let x = if *x > half {
        Rational::from(1 - x)
    } else {
        x.clone()
    };
    let (u, v) = ctx.base_powers(&x);
    ctx.weighted_sum(&u, &v)
}

/// Enclosure of `f_k(x)` for rational `x` in `[0, 1]`.
///
/// Returns the exact value `1` at `x` in `{0, 1/2, 1}` and for `k = 1`.
pub fn f_k(k: u32, x: &Rational, prec: u32) -> Result<Interval> {
    check_unit(x)?;
    if k == 0 {
        return domain("k must be positive");
    }
    Ok(f_k_in(&SumContext::new(k, prec), x))
}

/// Enclosure of `f_k(t)` for an interval argument strictly inside `(0, 1)`.
pub fn f_k_interval(k: u32, t: &Interval, prec: u32) -> Interval {
    let ctx = SumContext::new(k, prec);
    let one = Interval::one(prec);
    let u = one.sub(t).pow(&ctx.alpha);
    let v = t.pow(&ctx.alpha);
    ctx.weighted_sum(&u, &v)
}

/// Certified `f_k(x) < 1` with escalation; margin is `-log2 f_k(x)`.
fn check_point(k: u32, x: &Rational, policy: PrecisionPolicy, case: String) -> VerificationReport {
    if is_equality_point(k, x) {
        return VerificationReport::exact_equality(case, policy.start);
    }
    let e = escalate(policy, |prec| {
        let ctx = SumContext::new(k, prec);
        let f = f_k_in(&ctx, x);
        let verdict = certified_compare(&f, &Interval::one(prec));
        (verdict, f.log2().neg())
    });
    VerificationReport::from_escalated(case, e)
}

/// Verifies `f_k(x) <= 1` at every grid point. Exact-equality points are
/// detected by value; every other point must be certified strictly.
pub fn verify_main_inequality(
    k: u32,
    grid: &GridSpec,
    policy: PrecisionPolicy,
) -> Result<Vec<VerificationReport>> {
    if k == 0 {
        return domain("k must be positive");
    }
    if !grid.within(&Rational::new(), &Rational::from(1), false) {
        return domain("grid must lie within [0, 1]");
    }
    Ok(grid
        .points()
        .par_iter()
        .map(|x| check_point(k, x, policy, format!("k={k} x={x}")))
        .collect())
}

/// Verifies `sum_j C(k,j)^2 a^(p_k(k-j)/k) b^(p_k j/k) <= (a+b)^(p_k)` through
/// homogeneity: it is `f_k(b/(a+b)) <= 1`. The margin is
/// `log2((a+b)^p_k) - log2(lhs) = -log2 f_k(b/(a+b))`.
pub fn verify_mainineq_ab(
    k: u32,
    a: &Rational,
    b: &Rational,
    policy: PrecisionPolicy,
) -> Result<VerificationReport> {
    if *a < 0 || *b < 0 {
        return domain("a and b must be nonnegative");
    }
    let sum = Rational::from(a + b);
    if sum == 0 {
        return domain("a = b = 0 is excluded");
    }
    if k == 0 {
        return domain("k must be positive");
    }
    let x = Rational::from(b / &sum);
    Ok(check_point(k, &x, policy, format!("k={k} a={a} b={b}")))
}

/// Direct evaluation of both sides of the unnormalized inequality; returns
/// `(lhs, rhs)`. Used as an independent route in tests and reports.
pub fn mainineq_sides(k: u32, a: &Rational, b: &Rational, prec: u32) -> (Interval, Interval) {
    let ctx = SumContext::new(k, prec);
    let kk = Interval::from_i64(i64::from(k), prec);
    let mut lhs = Interval::zero(prec);
    for j in 0..=k {
        let ea = ctx
            .p
            .mul(&Interval::from_i64(i64::from(k - j), prec))
            .div(&kk);
        let eb = ctx.p.mul(&Interval::from_i64(i64::from(j), prec)).div(&kk);
        let term = ctx.weights[j as usize]
            .mul(&rational_pow(a, &ea))
            .mul(&rational_pow(b, &eb));
        lhs = lhs.add(&term);
    }
    let rhs = rational_pow(&Rational::from(a + b), &ctx.p);
    (lhs, rhs)
}

/// Certainty-only wrapper over [`check_point`].
pub fn certify_f_below_one(k: u32, x: &Rational, policy: PrecisionPolicy) -> Certainty {
    let r = check_point(k, x, policy, String::new());
    match r.verdict {
        crate::Verdict::CertainTrue | crate::Verdict::ExactEquality => Certainty::CertainTrue,
        crate::Verdict::CertainFalse => Certainty::CertainFalse,
        crate::Verdict::Undecided => Certainty::Undecided,
    }
}
