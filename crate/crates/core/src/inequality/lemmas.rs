//! Pointwise checks behind the small-`x` estimate: the termwise binomial bound,
//! the auxiliary function `phi_k`, its inflection point `t_k`, and the finitely
//! many numeric inequalities that are machine-checked over fixed `k` ranges.

use rug::{Integer, Rational};

use crate::arith::{
    binomial, certified_compare, certified_positive, escalate, pk, Certainty, Interval,
    PrecisionPolicy,
};
use crate::error::{domain, Result};
use crate::report::{Verdict, VerificationReport};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn ln_rational(x: &Rational, prec: u32) -> Interval {
    Interval::from_rational(x, prec).ln()
}

/// Certifies `C(k,j) (1-x)^(p_k(k-j)/k) x^(p_k j/k) <= (1-x)^(k-j) x^j` for
/// `x` in `[0, 1/10]`, comparing logarithms.
pub fn verify_binomialwise(
    k: u32,
    j: u32,
    x: &Rational,
    policy: PrecisionPolicy,
) -> Result<Verdict> {
    if k == 0 || j > k {
        return domain(format!("need 0 <= j <= k, k >= 1 (k={k}, j={j})"));
    }
    if *x < 0 || *x > q(1, 10) {
        return domain(format!("x = {x} lies outside [0, 1/10]"));
    }
    // k = 1: C = 1 and p_1 = 1, so both sides coincide.
    if k == 1 || *x == 0 {
        // at x = 0 both sides are 1 (j = 0) or 0 (j > 0)
        return Ok(Verdict::ExactEquality);
    }
    let e = escalate(policy, |prec| {
        let p = pk(k, prec);
        let alpha = p.div(&Interval::from_i64(i64::from(k), prec));
        let l1 = ln_rational(&Rational::from(1 - x), prec);
        let lx = ln_rational(x, prec);
        let kj = Interval::from_i64(i64::from(k - j), prec);
        let jj = Interval::from_i64(i64::from(j), prec);
        let rhs = kj.mul(&l1).add(&jj.mul(&lx));
        let lhs = Interval::from_integer(&binomial(k, j).unwrap(), prec)
            .ln()
            .add(&alpha.mul(&rhs));
        (certified_compare(&lhs, &rhs), ())
    });
    Ok(e.certainty.into())
}

fn phi_with(k: u32, p: &Interval, t: &Interval) -> Interval {
    let prec = t.prec();
    let one = Interval::one(prec);
    let half = Interval::from_rational(&q(1, 2), prec);
    let gap = Interval::from_i64(2 * i64::from(k), prec).sub(p);
    let s = one.sub(t);
    let two_pi_k = Interval::pi(prec).mul(&Interval::from_i64(2 * i64::from(k), prec));
    gap.mul(t)
        .add(&half)
        .mul(&t.ln())
        .add(&gap.mul(&s).add(&half).mul(&s.ln()))
        .add(&two_pi_k.ln().mul_pow2(-1))
}

/// `phi_k(t) = ((2k-p_k)t + 1/2) ln t + ((2k-p_k)(1-t) + 1/2) ln(1-t) + ln(2 pi k)/2`.
pub fn phi(k: u32, t: &Rational, prec: u32) -> Result<Interval> {
    if *t <= 0 || *t >= 1 {
        return domain(format!("t = {t} lies outside (0, 1)"));
    }
    if k == 0 {
        return domain("k must be positive");
    }
    Ok(phi_with(k, &pk(k, prec), &Interval::from_rational(t, prec)))
}

/// `phi_k''(t) = (2k-p_k)/((1-t)t) - (2t^2 - 2t + 1)/(2(1-t)^2 t^2)` on an
/// interval argument.
pub fn phi_second_derivative(k: u32, t: &Interval, prec: u32) -> Interval {
    let p = pk(k, prec);
    let gap = Interval::from_i64(2 * i64::from(k), prec).sub(&p);
    let one = Interval::one(prec);
    let s = one.sub(t);
    let st = s.mul(t);
    let numer = t.square().mul_pow2(1).sub(&t.mul_pow2(1)).add(&one);
    gap.div(&st).sub(&numer.div(&st.square().mul_pow2(1)))
}

/// `t_k = 1/2 - sqrt(1 - 2/(2k + 1 - p_k))/2`, where `phi_k''` vanishes.
pub fn t_critical(k: u32, prec: u32) -> Result<Interval> {
    if k == 0 {
        return domain("k must be positive");
    }
    let p = pk(k, prec);
    let denom = Interval::from_i64(2 * i64::from(k) + 1, prec).sub(&p);
    let radicand = Interval::one(prec).sub(&Interval::from_i64(2, prec).div(&denom));
    if !radicand.is_positive() {
        return domain(format!(
            "radicand 1 - 2/(2k+1-p_k) is not positive for k={k}"
        ));
    }
    let half = Interval::from_rational(&q(1, 2), prec);
    Ok(half.sub(&radicand.sqrt().mul_pow2(-1)))
}

/// Log form of `3^(9(2k-p_k)/5 + 1) / 10^(2k-p_k+1) >= 1/sqrt(2 pi k)`: returns
/// `ln(lhs) - ln(rhs)`.
fn phi_tenth_closed_form(k: u32, prec: u32) -> Interval {
    let p = pk(k, prec);
    let gap = Interval::from_i64(2 * i64::from(k), prec).sub(&p);
    let ln3 = Interval::from_i64(3, prec).ln();
    let ln10 = Interval::from_i64(10, prec).ln();
    let lhs = gap
        .mul_rational(&q(9, 5))
        .add(&Interval::one(prec))
        .mul(&ln3)
        .sub(&gap.add(&Interval::one(prec)).mul(&ln10));
    let rhs = Interval::pi(prec)
        .mul(&Interval::from_i64(2 * i64::from(k), prec))
        .ln()
        .mul_pow2(-1)
        .neg();
    lhs.sub(&rhs)
}

/// `omega_k = 9^(1 - p_k/k)`.
pub fn omega(k: u32, prec: u32) -> Interval {
    let p = pk(k, prec);
    let e = Interval::one(prec).sub(&p.div(&Interval::from_i64(i64::from(k), prec)));
    Interval::from_i64(9, prec).pow(&e)
}

/// Candidates for `j_k = floor(omega_k (k+1) / (1 + omega_k))`; a single entry
/// when the floor is certified at `prec`.
pub fn j_k_candidates(k: u32, prec: u32) -> Vec<u32> {
    let w = omega(k, prec);
    let val = w
        .mul(&Interval::from_i64(i64::from(k) + 1, prec))
        .div(&Interval::one(prec).add(&w));
    match val.floor_bounds() {
        Some((lo, hi)) => {
            let lo = lo.to_u32().unwrap_or(0);
            let hi = hi.to_u32().unwrap_or(k).min(k);
            (lo..=hi).collect()
        }
        None => (0..=k).collect(),
    }
}

/// `ln( C(k,j) 9^((1-p_k/k) j) (9/10)^(p_k - k) )`; the inequality asks this to be `<= 0`.
pub fn max_term_log(k: u32, j: u32, prec: u32) -> Interval {
    let p = pk(k, prec);
    let kk = Interval::from_i64(i64::from(k), prec);
    let ln9 = Interval::from_i64(9, prec).ln();
    let e = Interval::one(prec).sub(&p.div(&kk));
    Interval::from_integer(&Integer::from(Integer::binomial_u(k, j)), prec)
        .ln()
        .add(&e.mul(&Interval::from_i64(i64::from(j), prec)).mul(&ln9))
        .add(&p.sub(&kk).mul(&ln_rational(&q(9, 10), prec)))
}

/// Checks `9^(1-t) <= 10 (1-t)^(1-t) t^t` at a rational `t` in `(0, 1)`. Equality
/// holds exactly at `t = 1/10`, where both sides equal `9^(9/10)`.
pub fn verify_entropy_bound(t: &Rational, policy: PrecisionPolicy) -> Result<VerificationReport> {
    if *t <= 0 || *t >= 1 {
        return domain(format!("t = {t} lies outside (0, 1)"));
    }
    let case = format!("entropy-bound t={t}");
    if *t == q(1, 10) {
        return Ok(VerificationReport::exact_equality(case, policy.start));
    }
    let e = escalate(policy, |prec| {
        let s = Rational::from(1 - t);
        let lhs = Interval::from_rational(&s, prec).mul(&Interval::from_i64(9, prec).ln());
        let rhs = Interval::from_i64(10, prec)
            .ln()
            .add(&Interval::from_rational(&s, prec).mul(&ln_rational(&s, prec)))
            .add(&Interval::from_rational(t, prec).mul(&ln_rational(t, prec)));
        let margin = rhs.sub(&lhs);
        (certified_compare(&lhs, &rhs), margin)
    });
    Ok(VerificationReport::from_escalated(case, e))
}

fn positive_report(
    case: String,
    policy: PrecisionPolicy,
    f: impl Fn(u32) -> Interval,
) -> VerificationReport {
    let e = escalate(policy, |prec| {
        let v = f(prec);
        (certified_positive(&v), v)
    });
    VerificationReport::from_escalated(case, e)
}

/// The machine-checked part of the small-`x` lemma for `k` in `k_lo..=k_hi`:
///
/// * `phi_k(1/k) >= 0` (for `k >= 10`),
/// * `phi_k(1/10) >= 0`, also in its closed form
///   `3^(9(2k-p_k)/5+1) / 10^(2k-p_k+1) >= 1/sqrt(2 pi k)` (for `k >= 10`),
/// * `C(k,j_k) 9^((1-p_k/k) j_k) (9/10)^(p_k-k) <= 1` at the maximizing index `j_k`,
/// * the entropy bound `9^(1-t) <= 10 (1-t)^(1-t) t^t` at `t = i/100`, `i = 1..=99`.
///
/// Each case is certified strictly (margins are reported), except the exact
/// equality of the entropy bound at `t = 1/10`.
pub fn verify_small_x_ranges(
    k_lo: u32,
    k_hi: u32,
    policy: PrecisionPolicy,
) -> Result<Vec<VerificationReport>> {
    if k_lo < 2 || k_lo > k_hi {
        return domain(format!("need 2 <= k_lo <= k_hi, got {k_lo}..{k_hi}"));
    }
    let mut out = Vec::new();
    for k in k_lo..=k_hi {
        if k >= 10 {
            let t = q(1, i64::from(k));
            out.push(positive_report(
                format!("phi(1/k)>0 k={k}"),
                policy,
                |prec| phi(k, &t, prec).unwrap(),
            ));
            out.push(positive_report(
                format!("phi(1/10)>0 k={k}"),
                policy,
                |prec| phi(k, &q(1, 10), prec).unwrap(),
            ));
            out.push(positive_report(
                format!("phi(1/10)>0 closed-form k={k}"),
                policy,
                |prec| phi_tenth_closed_form(k, prec),
            ));
        }
        out.push(max_term_report(k, policy));
    }
    for i in 1..=99 {
        out.push(verify_entropy_bound(&q(i, 100), policy)?);
    }
    Ok(out)
}

fn max_term_report(k: u32, policy: PrecisionPolicy) -> VerificationReport {
    let e = escalate(policy, |prec| {
        let js = j_k_candidates(k, prec);
        // an uncertified floor leaves two candidates; check both
        let mut verdict = Certainty::CertainTrue;
        let mut worst: Option<Interval> = None;
        for &j in &js {
            let margin = max_term_log(k, j, prec).neg();
            verdict = verdict.and(certified_positive(&margin));
            worst = Some(match worst {
                Some(w) => w.min(&margin),
                None => margin,
            });
        }
        (verdict, (worst.unwrap(), js))
    });
    let js: Vec<String> = e.value.1.iter().map(|j| j.to_string()).collect();
    VerificationReport {
        case: format!("max-term k={k} j_k={}", js.join("|")),
        verdict: e.certainty.into(),
        margin: Some(e.value.0),
        precision: e.precision,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_f64(k: u32) -> f64 {
        let mut c = 1.0f64;
        for i in 0..k {
            c = c * f64::from(2 * k - i) / f64::from(i + 1);
        }
        c.log2()
    }

    fn phi_f64(k: u32, t: f64) -> f64 {
        let g = 2.0 * f64::from(k) - p_f64(k);
        (g * t + 0.5) * t.ln()
            + (g * (1.0 - t) + 0.5) * (1.0 - t).ln()
            + 0.5 * (2.0 * std::f64::consts::PI * f64::from(k)).ln()
    }

    #[test]
    fn binomialwise_examples() {
        let p = PrecisionPolicy::default();
        assert_eq!(
            verify_binomialwise(5, 0, &q(0, 1), p).unwrap(),
            Verdict::ExactEquality
        );
        assert_eq!(
            verify_binomialwise(5, 2, &q(1, 20), p).unwrap(),
            Verdict::CertainTrue
        );
        assert_eq!(
            verify_binomialwise(12, 1, &q(1, 10), p).unwrap(),
            Verdict::CertainTrue
        );
        assert!(verify_binomialwise(5, 2, &q(1, 5), p).is_err());
        assert!(verify_binomialwise(5, 6, &q(1, 20), p).is_err());
    }

    #[test]
    fn binomialwise_f64_oracle() {
        // C(5,2) (19/20)^(3a) (1/20)^(2a) vs (19/20)^3 (1/20)^2
        let a = p_f64(5) / 5.0;
        let lhs = 10.0 * 0.95f64.powf(3.0 * a) * 0.05f64.powf(2.0 * a);
        let rhs = 0.95f64.powi(3) * 0.05f64.powi(2);
        assert!(lhs < rhs);
    }

    #[test]
    fn phi_examples() {
        let v = phi(10, &q(1, 10), 256).unwrap();
        assert!(v.is_positive());
        assert!((v.to_f64() - phi_f64(10, 0.1)).abs() < 1e-12);
        let a = phi(10, &q(1, 2), 256).unwrap();
        let b = phi(10, &q(1, 2), 256).unwrap();
        assert!(a.intersects(&b));
        let c = phi(10, &q(3, 10), 256).unwrap();
        let d = phi(10, &q(7, 10), 256).unwrap();
        assert!(c.intersects(&d));
        assert!(phi(50, &q(1, 50), 256).unwrap().is_positive());
        assert!(phi(3, &q(0, 1), 256).is_err());
    }

    #[test]
    fn t_critical_behaviour() {
        let t10 = t_critical(10, 256).unwrap();
        assert!(t10.is_positive());
        assert!(t10.hi() < &0.5);
        let t100 = t_critical(100, 256).unwrap();
        assert_eq!(certified_compare(&t100, &t10), Certainty::CertainTrue);
        // f64 oracle for the closed form
        let g = 2.0 * 10.0 + 1.0 - p_f64(10);
        let oracle = 0.5 - 0.5 * (1.0 - 2.0 / g).sqrt();
        assert!((t10.to_f64() - oracle).abs() < 1e-12);
        for k in [10, 25, 100] {
            let t = t_critical(k, 256).unwrap();
            let d2 = phi_second_derivative(k, &t, 256);
            assert!(d2.contains_zero(), "k={k}: {d2:?}");
        }
    }

    #[test]
    fn j_k_is_the_maximizer() {
        for k in 2..=49u32 {
            let js = j_k_candidates(k, 256);
            assert_eq!(js.len(), 1, "k={k}");
            let jk = js[0];
            let best = max_term_log(k, jk, 256);
            for j in 1..k {
                if j != jk {
                    let other = max_term_log(k, j, 256);
                    assert_ne!(
                        certified_compare(&best, &other),
                        Certainty::CertainTrue,
                        "k={k} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn entropy_bound_equality_and_strict() {
        let p = PrecisionPolicy::default();
        assert_eq!(
            verify_entropy_bound(&q(1, 10), p).unwrap().verdict,
            Verdict::ExactEquality
        );
        assert_eq!(
            verify_entropy_bound(&q(1, 2), p).unwrap().verdict,
            Verdict::CertainTrue
        );
        assert_eq!(
            verify_entropy_bound(&q(11, 100), p).unwrap().verdict,
            Verdict::CertainTrue
        );
    }

    #[test]
    fn closed_form_matches_phi() {
        // the closed form is phi_k(1/10) exponentiated: the log gap is the same number
        for k in [10, 30, 99] {
            let a = phi(k, &q(1, 10), 256).unwrap();
            let b = phi_tenth_closed_form(k, 256);
            assert!(a.intersects(&b), "k={k}");
        }
    }
}
