//! `h_k(x) = sum_j C(k,j)^2 (1-x)^((2k-1)(k-j)/k) x^((2k-1)j/k)`, its minimum
//! at `x = 1/2`, and the differential equation behind that minimum.

use rayon::prelude::*;
use rug::Rational;

use crate::arith::{
    central_binomial, certified_compare, certified_positive, escalate, exact_rational_root,
    rational_pow, squared_binomials, Interval, PrecisionPolicy,
};
use crate::error::{domain, Result};
use crate::inequality::{power_table, termwise_derivatives, GridSpec, OdeCoefficients};
use crate::report::VerificationReport;

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return domain("k must be positive");
    }
    Ok(())
}

/// Exponent `(2k-1)/k`.
fn alpha(k: u32) -> Rational {
    Rational::from((2 * k - 1, k))
}

/// `h_k(1/2) = C(2k,k) 2^(-(2k-1))`.
pub fn h_k_half(k: u32) -> Rational {
    Rational::from(central_binomial(k)) >> (2 * k - 1)
}

struct HkTerms {
    weights: Vec<Interval>,
    alpha: Interval,
    u: Interval,
    v: Interval,
}

fn terms(k: u32, x: &Rational, prec: u32) -> HkTerms {
    let alpha_i = Interval::from_rational(&alpha(k), prec);
    let s = Rational::from(1 - x);
    HkTerms {
        weights: squared_binomials(k)
            .iter()
            .map(|w| Interval::from_integer(w, prec))
            .collect(),
        u: rational_pow(&s, &alpha_i),
        v: rational_pow(x, &alpha_i),
        alpha: alpha_i,
    }
}

fn weighted(t: &HkTerms, prec: u32) -> Interval {
    let k = t.weights.len() - 1;
    let up = power_table(&t.u, k, prec);
    let vp = power_table(&t.v, k, prec);
    (0..=k).fold(Interval::zero(prec), |acc, j| {
        acc.add(&t.weights[j].mul(&up[k - j]).mul(&vp[j]))
    })
}

/// Enclosure of `h_k(x)` for rational `x` in `[0, 1]`; exact at `x` in
/// `{0, 1/2, 1}`. Powers are exact when `x` or `1 - x` is a `k`-th power of a
/// rational.
pub fn h_k(k: u32, x: &Rational, prec: u32) -> Result<Interval> {
    check_k(k)?;
    if *x < 0 || *x > 1 {
        return domain(format!("x = {x} lies outside [0, 1]"));
    }
    if *x == 0 || *x == 1 {
        return Ok(Interval::one(prec));
    }
    if *x == Rational::from((1, 2)) {
        return Ok(Interval::from_rational(&h_k_half(k), prec));
    }
    // h_k(1 - x) = h_k(x) term by term.
    let x = if *x > Rational::from((1, 2)) {
        Rational::from(1 - x)
    } else {
        x.clone()
    };
    Ok(weighted(&terms(k, &x, prec), prec))
}

/// Certifies `h_k(x) >= h_k(1/2)` at each grid point in `[0, 1]`. Exact
/// equality at `x = 1/2` and, since `h_1 = 1`, everywhere for `k = 1`. The
/// margin is `log2 h_k(x) - log2 h_k(1/2)`.
pub fn verify_hk_min(
    k: u32,
    grid: &GridSpec,
    policy: PrecisionPolicy,
) -> Result<Vec<VerificationReport>> {
    check_k(k)?;
    if !grid.within(&Rational::new(), &Rational::from(1), false) {
        return domain("grid must lie within [0, 1]");
    }
    let floor = h_k_half(k);
    Ok(grid
        .points()
        .par_iter()
        .map(|x| {
            let case = format!("h_k>=h_k(1/2) k={k} x={x}");
            if k == 1 || *x == Rational::from((1, 2)) {
                return VerificationReport::exact_equality(case, policy.start);
            }
            let e = escalate(policy, |prec| {
                let h = h_k(k, x, prec).expect("arguments checked");
                let m = Interval::from_rational(&floor, prec);
                (certified_compare(&m, &h), h.log2().sub(&m.log2()))
            });
            VerificationReport::from_escalated(case, e)
        })
        .collect())
}

/// The coefficients `a~_k`, `b~_k`, `c~_k` of
/// `a~ h'' + b~ h' + (2k-1) c~ h = 0`, written with `u = (1-x)^(2-1/k)` and
/// `v = x^(2-1/k)`:
///
/// * `a~ = (1-x)^2 x^2 (u - v)^2`
/// * `b~ = (1-x) x (u - v) (u (1 + 4(k-1)x) + v (1 + 4(k-1)(1-x)))`
/// * `c~ = u^2 x (1 + 2(k-1)x) + v^2 (1-x) (1 + 2(k-1)(1-x)) - u v (2k-1 - 4(k-1)(1-x)x)`
pub fn tilde_coefficients(k: u32, x: &Rational, prec: u32) -> Result<OdeCoefficients> {
    check_k(k)?;
    if *x <= 0 || *x >= 1 {
        return domain(format!("x = {x} lies outside (0, 1)"));
    }
    let t = terms(k, x, prec);
    Ok(tilde_in(k, x, &t.u, &t.v, prec))
}

fn tilde_in(k: u32, x: &Rational, u: &Interval, v: &Interval, prec: u32) -> OdeCoefficients {
    let one = Interval::one(prec);
    let s = Rational::from(1 - x);
    let xi = Interval::from_rational(x, prec);
    let si = Interval::from_rational(&s, prec);
    let sx = Interval::from_rational(&Rational::from(&s * x), prec);
    let km1 = Interval::from_i64(i64::from(k) - 1, prec);
    let four_km1 = km1.mul_pow2(2);
    let two_km1 = km1.mul_pow2(1);
    let half = *x == Rational::from((1, 2));
    let diff = if half { Interval::zero(prec) } else { u.sub(v) };
    let a = sx.square().mul(&diff.square());
    let b = sx.mul(&diff).mul(
        &u.mul(&one.add(&four_km1.mul(&xi)))
            .add(&v.mul(&one.add(&four_km1.mul(&si)))),
    );
    let c = u
        .square()
        .mul(&xi)
        .mul(&one.add(&two_km1.mul(&xi)))
        .add(&v.square().mul(&si).mul(&one.add(&two_km1.mul(&si))))
        .sub(
            &u.mul(v)
                .mul(&Interval::from_i64(2 * i64::from(k) - 1, prec).sub(&four_km1.mul(&sx))),
        );
    OdeCoefficients { a, b, c }
}

/// Enclosure of `a~ h_k'' + b~ h_k' + (2k-1) c~ h_k` at `x` in `(0, 1)`, with
/// derivatives taken term by term; contains zero.
pub fn hk_ode_residual(k: u32, x: &Rational, prec: u32) -> Result<Interval> {
    check_k(k)?;
    if *x <= 0 || *x >= 1 {
        return domain(format!("x = {x} lies outside (0, 1)"));
    }
    let t = terms(k, x, prec);
    let coef = tilde_in(k, x, &t.u, &t.v, prec);
    let (h, h1, h2) = termwise_derivatives(&t.weights, &t.alpha, &t.u, &t.v, x, prec);
    Ok(coef.a.mul(&h2).add(&coef.b.mul(&h1)).add(
        &Interval::from_i64(2 * i64::from(k) - 1, prec)
            .mul(&coef.c)
            .mul(&h),
    ))
}

/// `(z-1)(z^(2k-1)-1) sum_{i=1}^{k-1} (z^i + z^(-i) - 2)` at
/// `z = ((1-x)/x)^(1/k)`.
pub fn factored_form(k: u32, x: &Rational, prec: u32) -> Result<Interval> {
    check_k(k)?;
    if *x <= 0 || *x >= 1 {
        return domain(format!("x = {x} lies outside (0, 1)"));
    }
    let ratio = Rational::from(1 - x) / x;
    let z = match exact_rational_root(&ratio, k) {
        Some(r) => Interval::from_rational(&r, prec),
        None => Interval::from_rational(&ratio, prec).root(k),
    };
    let one = Interval::one(prec);
    let two = Interval::from_i64(2, prec);
    let zinv = z.recip();
    let zp = power_table(&z, 2 * k as usize - 1, prec);
    let zi = power_table(&zinv, k as usize, prec);
    let sum = (1..k as usize).fold(Interval::zero(prec), |acc, i| {
        acc.add(&zp[i].add(&zi[i]).sub(&two))
    });
    Ok(z.sub(&one).mul(&zp[2 * k as usize - 1].sub(&one)).mul(&sum))
}

/// Certifies `c~_k(x) > 0` and, separately, positivity of [`factored_form`]
/// at each grid point in `(0, 1/2)`, `k >= 2`. Two reports per point, the
/// margin being the enclosed value.
pub fn tilde_c_positivity(
    k: u32,
    grid: &GridSpec,
    policy: PrecisionPolicy,
) -> Result<Vec<VerificationReport>> {
    if k < 2 {
        return domain("positivity is claimed for k >= 2");
    }
    let pts = grid.points();
    if pts.iter().any(|x| *x <= 0 || *x >= Rational::from((1, 2))) {
        return domain("grid must lie within (0, 1/2)");
    }
    let positive = |case: String, f: &(dyn Fn(u32) -> Interval + Sync)| {
        let e = escalate(policy, |prec| {
            let v = f(prec);
            (certified_positive(&v), v)
        });
        VerificationReport::from_escalated(case, e)
    };
    Ok(pts
        .par_iter()
        .flat_map_iter(|x| {
            let c = positive(format!("c~>0 k={k} x={x}"), &|prec| {
                tilde_coefficients(k, x, prec).expect("x checked").c
            });
            let f = positive(format!("factored>0 k={k} x={x}"), &|prec| {
                factored_form(k, x, prec).expect("x checked")
            });
            [c, f]
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Verdict;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    /// f64 oracle for h_k.
    fn h_f64(k: u32, x: f64) -> f64 {
        let a = (2.0 * f64::from(k) - 1.0) / f64::from(k);
        let mut c = 1.0f64;
        let mut total = 0.0;
        for j in 0..=k {
            total += c * c * (1.0 - x).powf(a * f64::from(k - j)) * x.powf(a * f64::from(j));
            c = c * f64::from(k - j) / f64::from(j + 1);
        }
        total
    }

    #[test]
    fn h_k_examples() {
        let h = h_k(1, &q(2, 7), 128).unwrap();
        assert!(h.contains_rational(&q(1, 1)));
        for k in 1..8 {
            let h = h_k(k, &q(1, 2), 128).unwrap();
            assert!(h.contains_rational(&h_k_half(k)));
        }
        assert_eq!(h_k_half(2), q(6, 8));
        let h = h_k(2, &q(1, 4), 256).unwrap();
        assert!((h.to_f64() - h_f64(2, 0.25)).abs() < 1e-14);
        let floor = Interval::from_rational(&q(3, 4), 256);
        assert_eq!(certified_compare(&floor, &h), crate::Certainty::CertainTrue);
        let (a, b) = (
            h_k(3, &q(3, 10), 128).unwrap(),
            h_k(3, &q(7, 10), 128).unwrap(),
        );
        assert_eq!((a.lo(), a.hi()), (b.lo(), b.hi()));
    }

    #[test]
    fn hk_min_grid() {
        let p = PrecisionPolicy::default();
        let r = verify_hk_min(3, &GridSpec::unit(101).unwrap(), p).unwrap();
        assert!(r.iter().all(|r| r.verdict.holds()));
        assert_eq!(r[50].verdict, Verdict::ExactEquality);
        assert_eq!(r[0].verdict, Verdict::CertainTrue);
    }

    #[test]
    fn residual_is_tight() {
        let r = hk_ode_residual(2, &q(1, 3), 256).unwrap();
        assert!(r.contains_zero());
        assert!(r.log2_width() <= -200.0);
        let r2 = hk_ode_residual(2, &q(1, 3), 512).unwrap();
        assert!(r.log2_width() - r2.log2_width() >= 64.0);
    }

    #[test]
    fn tilde_matches_general_coefficients() {
        // With p_k replaced by 2k-1 the general coefficients become the tilde ones.
        let k = 3;
        let x = q(2, 9);
        let t = tilde_coefficients(k, &x, 256).unwrap();
        let xf: f64 = 2.0 / 9.0;
        let (s, al) = (1.0 - xf, 2.0 - 1.0 / 3.0);
        let (u, v) = (s.powf(al), xf.powf(al));
        let c = u * u * xf * (1.0 + 4.0 * xf) + v * v * s * (1.0 + 4.0 * s)
            - u * v * (5.0 - 8.0 * s * xf);
        assert!((t.c.to_f64() - c).abs() < 1e-14);
        assert!(t.a.is_positive());
    }

    #[test]
    fn positivity_examples() {
        let p = PrecisionPolicy::default();
        let r = tilde_c_positivity(2, &GridSpec::closed(q(1, 4), q(1, 3), 2).unwrap(), p).unwrap();
        assert!(r.iter().all(|r| r.verdict == Verdict::CertainTrue));
        let f = factored_form(4, &q(49, 100), 256).unwrap();
        assert!(f.is_positive());
        assert!(f.to_f64() < 1e-3);
        let g = GridSpec::right_open(q(1, 100), q(1, 2), 49).unwrap();
        let r = tilde_c_positivity(4, &g, p).unwrap();
        assert!(r.iter().all(|r| r.verdict == Verdict::CertainTrue));
    }
}
