//! The second-order differential equation satisfied by the binomial sum, the
//! sign of its zeroth-order coefficient, and the auxiliary function `psi_k`.

use rayon::prelude::*;
use rug::Rational;

use crate::arith::{
    certified_compare, certified_positive, escalate, pk, rational_pow, Certainty, Interval,
    PrecisionPolicy,
};
use crate::error::{domain, Result};
use crate::report::VerificationReport;

use super::sum::{power_table, SumContext};
use super::GridSpec;

/// Values of `a_k`, `b_k`, `c_k` at one point.
#[derive(Debug, Clone)]
pub struct OdeCoefficients {
    pub a: Interval,
    pub b: Interval,
    pub c: Interval,
}

/// `(f, f', f'')` for `sum_j w_j (1-x)^(alpha(k-j)) x^(alpha j)`, differentiated
/// term by term in closed form:
/// `T' = T g`, `T'' = T (g^2 - B/x^2 - A/(1-x)^2)` with `A = alpha(k-j)`,
/// `B = alpha j`, `g = B/x - A/(1-x)`.
pub(crate) fn termwise_derivatives(
    weights: &[Interval],
    alpha: &Interval,
    u: &Interval,
    v: &Interval,
    x: &Rational,
    prec: u32,
) -> (Interval, Interval, Interval) {
    let k = weights.len() - 1;
    let xi = Interval::from_rational(x, prec);
    let si = Interval::from_rational(&Rational::from(1 - x), prec);
    let inv_x = xi.recip();
    let inv_s = si.recip();
    let inv_x2 = inv_x.square();
    let inv_s2 = inv_s.square();
    let u_pows = power_table(u, k, prec);
    let v_pows = power_table(v, k, prec);
    let mut f = Interval::zero(prec);
    let mut f1 = Interval::zero(prec);
    let mut f2 = Interval::zero(prec);
    for j in 0..=k {
        let t = weights[j].mul(&u_pows[k - j]).mul(&v_pows[j]);
        let a = alpha.mul(&Interval::from_i64((k - j) as i64, prec));
        let b = alpha.mul(&Interval::from_i64(j as i64, prec));
        let g = b.mul(&inv_x).sub(&a.mul(&inv_s));
        let h = g.square().sub(&b.mul(&inv_x2)).sub(&a.mul(&inv_s2));
        f1 = f1.add(&t.mul(&g));
        f2 = f2.add(&t.mul(&h));
        f = f.add(&t);
    }
    (f, f1, f2)
}

fn check_open_unit(x: &Rational) -> Result<()> {
    if *x <= 0 || *x >= 1 {
        return domain(format!("x = {x} lies outside (0, 1)"));
    }
    Ok(())
}

fn coefficients_in(ctx: &SumContext, x: &Rational, u: &Interval, v: &Interval) -> OdeCoefficients {
    let prec = ctx.prec;
    let p = &ctx.p;
    let one = Interval::one(prec);
    let xi = Interval::from_rational(x, prec);
    let s = Rational::from(1 - x);
    let si = Interval::from_rational(&s, prec);
    let half = *x == Rational::from((1, 2));
    // at x = 1/2 the two powers coincide, so the difference is exactly zero
    let diff = if half { Interval::zero(prec) } else { u.sub(v) };
    let sx = si.mul(&xi);
    let a = sx.square().mul(&diff.square());
    let pm1 = p.sub(&one);
    let two_pm1 = pm1.mul_pow2(1);
    let b = sx.mul(&diff).mul(
        &u.mul(&one.add(&two_pm1.mul(&xi)))
            .add(&v.mul(&one.add(&two_pm1.mul(&si)))),
    );
    let c = if half {
        // all three terms carry 2^(-2 p/k) and their coefficients cancel
        Interval::zero(prec)
    } else {
        u.square()
            .mul(&xi)
            .mul(&one.add(&pm1.mul(&xi)))
            .add(&v.square().mul(&si).mul(&one.add(&pm1.mul(&si))))
            .sub(&u.mul(v).mul(&p.sub(&two_pm1.mul(&sx))))
    };
    OdeCoefficients { a, b, c }
}

/// `a_k(x)`, `b_k(x)`, `c_k(x)` for `x` in `(0, 1)`.
pub fn ode_coefficients(k: u32, x: &Rational, prec: u32) -> Result<OdeCoefficients> {
    check_open_unit(x)?;
    if k == 0 {
        return domain("k must be positive");
    }
    let ctx = SumContext::new(k, prec);
    let (u, v) = ctx.base_powers(x);
    Ok(coefficients_in(&ctx, x, &u, &v))
}

/// Enclosure of `a_k f_k'' + b_k f_k' + p_k c_k f_k` at `x`; contains zero
/// because the expression vanishes identically.
pub fn ode_residual(k: u32, x: &Rational, prec: u32) -> Result<Interval> {
    check_open_unit(x)?;
    if k == 0 {
        return domain("k must be positive");
    }
    let ctx = SumContext::new(k, prec);
    let (u, v) = ctx.base_powers(x);
    let coef = coefficients_in(&ctx, x, &u, &v);
    let (f, f1, f2) = termwise_derivatives(&ctx.weights, &ctx.alpha, &u, &v, x, prec);
    Ok(coef
        .a
        .mul(&f2)
        .add(&coef.b.mul(&f1))
        .add(&ctx.p.mul(&coef.c).mul(&f)))
}

/// Certifies `c_k(x) < 0` at every point of a grid inside `[1/10, 1/2)`.
pub fn verify_ck_negative(
    k: u32,
    grid: &GridSpec,
    policy: PrecisionPolicy,
) -> Result<Vec<VerificationReport>> {
    if k < 2 {
        return domain("c_k < 0 is claimed for k >= 2");
    }
    if !grid.within(&Rational::from((1, 10)), &Rational::from((1, 2)), true) {
        return domain("grid must lie within [1/10, 1/2)");
    }
    Ok(grid
        .points()
        .par_iter()
        .map(|x| {
            let e = escalate(policy, |prec| {
                let c = ode_coefficients(k, x, prec).unwrap().c;
                let margin = c.neg();
                (certified_positive(&margin), margin)
            });
            VerificationReport::from_escalated(format!("c_k<0 k={k} x={x}"), e)
        })
        .collect())
}

/// `psi_k(y) = p_k y^(2 - p_k/k) + y^(1 - p_k/k) - y - p_k`; exactly zero at `y = 1`.
pub fn psi(k: u32, y: &Rational, prec: u32) -> Result<Interval> {
    if *y <= 0 {
        return domain(format!("y = {y} must be positive"));
    }
    if k == 0 {
        return domain("k must be positive");
    }
    if *y == 1 {
        return Ok(Interval::zero(prec));
    }
    let p = pk(k, prec);
    let alpha = p.div(&Interval::from_i64(i64::from(k), prec));
    let one = Interval::one(prec);
    let two = Interval::from_i64(2, prec);
    let yi = Interval::from_rational(y, prec);
    Ok(p.mul(&rational_pow(y, &two.sub(&alpha)))
        .add(&rational_pow(y, &one.sub(&alpha)))
        .sub(&yi)
        .sub(&p))
}

/// Certifies `9^(2 - p_k/k) > 1 + 80/(9 p_k + 1)`, the closed form of `psi_k(9) > 0`.
pub fn verify_psi_nine(k: u32, policy: PrecisionPolicy) -> Result<Certainty> {
    if k < 2 {
        return domain("this bound is stated for k >= 2");
    }
    Ok(escalate(policy, |prec| {
        let (rhs, lhs) = psi_nine_sides(k, prec);
        (certified_compare(&rhs, &lhs), ())
    })
    .certainty)
}

/// `(1 + 80/(9 p_k + 1), 9^(2 - p_k/k))`.
pub fn psi_nine_sides(k: u32, prec: u32) -> (Interval, Interval) {
    let p = pk(k, prec);
    let alpha = p.div(&Interval::from_i64(i64::from(k), prec));
    let one = Interval::one(prec);
    let lhs = Interval::from_i64(9, prec).pow(&Interval::from_i64(2, prec).sub(&alpha));
    let rhs =
        one.add(&Interval::from_i64(80, prec).div(&Interval::from_i64(9, prec).mul(&p).add(&one)));
    (rhs, lhs)
}
