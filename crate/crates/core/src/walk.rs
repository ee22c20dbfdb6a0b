//! The lazy simple random walk: exact laws, the endpoint inequality
//! `P(S_k=0)^(1/p) <= P(S_k=-k)^(1/p) + P(S_k=k)^(1/p)` and a seeded
//! Monte Carlo cross-check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::arith::{
    certified_compare, escalate, pk, rational_pow, squared_binomials, Certainty, Interval,
    PrecisionPolicy,
};
use crate::error::{domain, Result};
use crate::report::VerificationReport;

/// Step law with `P(X=1) = q/2`, `P(X=0) = 1/2`, `P(X=-1) = (1-q)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WalkLaw {
    q: Rational,
}

impl WalkLaw {
    pub fn new(q: Rational) -> Result<Self> {
        if !(0..=1).contains(&q) {
            return domain(format!("q = {q} lies outside [0, 1]"));
        }
        Ok(WalkLaw { q })
    }

    /// Law with the given probability of a right step, which must lie in `[0, 1/2]`.
    pub fn from_right_prob(p: Rational) -> Result<Self> {
        if p < 0 || p > (1, 2) {
            return domain(format!("P(X=1) = {p} lies outside [0, 1/2]"));
        }
        Self::new(p * 2u32)
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn right(&self) -> Rational {
        Rational::from(&self.q / 2u32)
    }

    pub fn left(&self) -> Rational {
        Rational::from(1 - &self.q) / 2u32
    }

    /// The law with `q` replaced by `1 - q`.
    pub fn mirror(&self) -> WalkLaw {
        WalkLaw {
            q: Rational::from(1 - &self.q),
        }
    }
}

/// `P(S_n = m)` for `m` in `-n..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkDistribution {
    pub n: u32,
    probs: Vec<Rational>,
}

impl WalkDistribution {
    pub fn prob(&self, m: i64) -> Rational {
        let n = i64::from(self.n);
        if m < -n || m > n {
            return Rational::new();
        }
        self.probs[(m + n) as usize].clone()
    }

    /// Pairs `(m, P(S_n = m))` in increasing `m`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let n = i64::from(self.n);
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (i as i64 - n, p))
    }

    pub fn total(&self) -> Rational {
        self.probs.iter().sum()
    }

    /// Law of the sum of independent walks with these two laws.
    pub fn convolve(&self, other: &WalkDistribution) -> WalkDistribution {
        let mut probs = vec![Rational::new(); self.probs.len() + other.probs.len() - 1];
        for (i, a) in self.probs.iter().enumerate() {
            for (j, b) in other.probs.iter().enumerate() {
                probs[i + j] += Rational::from(a * b);
            }
        }
        WalkDistribution {
            n: self.n + other.n,
            probs,
        }
    }
}

/// Exact law of `S_n`: the coefficients of `((b-a) + b t + a t^2)^n / (2b)^n`
/// for `q = a/b`, computed by repeated integer convolution.
pub fn walk_distribution(law: &WalkLaw, n: u32) -> WalkDistribution {
    let a = law.q.numer().clone();
    let b = law.q.denom().clone();
    let step = [Integer::from(&b - &a), b.clone(), a];
    let mut coeffs = vec![Integer::from(1)];
    for _ in 0..n {
        let mut next = vec![Integer::new(); coeffs.len() + 2];
        for (i, c) in coeffs.iter().enumerate() {
            for (j, s) in step.iter().enumerate() {
                next[i + j] += Integer::from(c * s);
            }
        }
        coeffs = next;
    }
    let scale = (b * 2u32).pow(n);
    let probs = coeffs
        .into_iter()
        .map(|c| Rational::from((c, scale.clone())))
        .collect();
    WalkDistribution { n, probs }
}

/// `2^(-k) sum_j C(k,j)^2 (1-q)^(k-j) q^j`, which equals `P(S_k = 0)`.
pub fn middle_prob_formula(law: &WalkLaw, k: u32) -> Rational {
    let q = &law.q;
    let p = Rational::from(1 - q);
    let mut total = Rational::new();
    for (j, w) in squared_binomials(k).into_iter().enumerate() {
        let j = j as u32;
        let term = p.clone().pow(k - j) * q.clone().pow(j) * w;
        total += term;
    }
    total >> k
}

/// `(P(S_k=-k), P(S_k=0), P(S_k=k))`.
pub fn endpoint_probs(law: &WalkLaw, k: u32) -> Result<(Rational, Rational, Rational)> {
    if k == 0 {
        return domain("k must be positive");
    }
    Ok((
        law.left().pow(k),
        middle_prob_formula(law, k),
        law.right().pow(k),
    ))
}

/// Exponent of the endpoint inequality: the sharp `p_k` or a rational override.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkExponent {
    Sharp,
    Rational(Rational),
}

impl WalkExponent {
    fn interval(&self, k: u32, prec: u32) -> Interval {
        match self {
            WalkExponent::Sharp => pk(k, prec),
            WalkExponent::Rational(r) => Interval::from_rational(r, prec),
        }
    }
}

/// Enclosures of `P(S_k=0)^(1/p)` and `P(S_k=-k)^(1/p) + P(S_k=k)^(1/p)`.
pub fn probineq_sides(law: &WalkLaw, k: u32, p: &Interval) -> Result<(Interval, Interval)> {
    let (left, mid, right) = endpoint_probs(law, k)?;
    let inv = p.recip();
    let lhs = rational_pow(&mid, &inv);
    let rhs = rational_pow(&left, &inv).add(&rational_pow(&right, &inv));
    Ok((lhs, rhs))
}

/// Cases decided by an identity: at `q` in `{0, 1}` one endpoint term vanishes
/// and both sides equal `2^(-k/p)` for every `p`; at `q = 1/2` with the sharp
/// exponent both sides equal `2^(1-2k/p_k)` because `C(2k,k) = 2^(p_k)`; at
/// `k = 1` with the sharp exponent `p_1 = 1` and both sides equal `1/2`.
fn is_walk_equality(law: &WalkLaw, k: u32, exponent: &WalkExponent) -> bool {
    let sharp = match exponent {
        WalkExponent::Sharp => true,
        WalkExponent::Rational(r) => k == 1 && *r == 1,
    };
    law.q == 0 || law.q == 1 || (sharp && (k == 1 || law.q == (1, 2)))
}

/// Verifies the endpoint inequality for one law. The margin is
/// `log2(rhs) - log2(lhs)`.
pub fn verify_probineq_exponent(
    law: &WalkLaw,
    k: u32,
    exponent: &WalkExponent,
    policy: PrecisionPolicy,
) -> Result<VerificationReport> {
    if k == 0 {
        return domain("k must be positive");
    }
    if let WalkExponent::Rational(r) = exponent {
        if *r <= 0 {
            return domain("the exponent must be positive");
        }
    }
    let case = format!("k={k} q={}", law.q);
    if is_walk_equality(law, k, exponent) {
        return Ok(VerificationReport::exact_equality(case, policy.start));
    }
    let e = escalate(policy, |prec| {
        let (lhs, rhs) = probineq_sides(law, k, &exponent.interval(k, prec)).expect("k checked");
        (certified_compare(&lhs, &rhs), rhs.log2().sub(&lhs.log2()))
    });
    Ok(VerificationReport::from_escalated(case, e))
}

/// [`verify_probineq_exponent`] with the sharp exponent `p_k`.
pub fn verify_probineq(
    law: &WalkLaw,
    k: u32,
    policy: PrecisionPolicy,
) -> Result<VerificationReport> {
    verify_probineq_exponent(law, k, &WalkExponent::Sharp, policy)
}

fn pow_or_zero(base: &Interval, e: &Interval) -> Interval {
    if base.is_point() && base.lo().is_zero() {
        if e.is_point() && e.lo().is_zero() {
            return Interval::one(e.prec());
        }
        return Interval::zero(e.prec());
    }
    base.pow(e)
}

/// Evaluates the main inequality `sum_j C(k,j)^2 a^(p(k-j)/k) b^(pj/k)` and
/// `(a+b)^p` at `a = ((1-q)/2)^(k/p)`, `b = (q/2)^(k/p)`, and the walk
/// inequality raised to the power `p` from the exact walk law, at one precision.
/// Returns `((main_lhs, walk_lhs), (main_rhs, walk_rhs))`.
pub fn equivalence_sides(
    law: &WalkLaw,
    k: u32,
    prec: u32,
) -> Result<((Interval, Interval), (Interval, Interval))> {
    if k == 0 {
        return domain("k must be positive");
    }
    let p = pk(k, prec);
    let kk = Interval::from_i64(i64::from(k), prec);
    let k_over_p = kk.div(&p);
    let a = rational_pow(&law.left(), &k_over_p);
    let b = rational_pow(&law.right(), &k_over_p);
    let mut main_lhs = Interval::zero(prec);
    for (j, w) in squared_binomials(k).iter().enumerate() {
        let j = j as i64;
        let ea = p.mul(&Interval::from_i64(i64::from(k) - j, prec)).div(&kk);
        let eb = p.mul(&Interval::from_i64(j, prec)).div(&kk);
        let term = pow_or_zero(&a, &ea)
            .mul(&pow_or_zero(&b, &eb))
            .mul_integer(w);
        main_lhs = main_lhs.add(&term);
    }
    let main_rhs = pow_or_zero(&a.add(&b), &p);

    let dist = walk_distribution(law, k);
    let n = i64::from(k);
    let inv = p.recip();
    let walk_lhs = Interval::from_rational(&dist.prob(0), prec);
    let walk_rhs = pow_or_zero(
        &rational_pow(&dist.prob(-n), &inv).add(&rational_pow(&dist.prob(n), &inv)),
        &p,
    );
    Ok(((main_lhs, walk_lhs), (main_rhs, walk_rhs)))
}

/// Certifies that both sides of the walk inequality coincide with the
/// corresponding sides of the main inequality under the substitution of
/// [`equivalence_sides`]: each pair of enclosures intersects and all four are
/// narrower than `2^(-prec/2)`.
pub fn equivalence_check(law: &WalkLaw, k: u32, policy: PrecisionPolicy) -> Result<Certainty> {
    if k == 0 {
        return domain("k must be positive");
    }
    Ok(escalate(policy, |prec| {
        let ((ml, wl), (mr, wr)) = equivalence_sides(law, k, prec).expect("k checked");
        let tol = -f64::from(prec / 2);
        let c = if !ml.intersects(&wl) || !mr.intersects(&wr) {
            Certainty::CertainFalse
        } else if [&ml, &wl, &mr, &wr].iter().all(|i| i.log2_width() <= tol) {
            Certainty::CertainTrue
        } else {
            Certainty::Undecided
        };
        (c, ())
    })
    .certainty)
}

/// Evaluates the walk inequality at `q = 1/2` with exponent `p_k - deficit`.
/// Any admissible deficit makes it fail, so the expected result is
/// `CertainFalse`.
pub fn sharpness_scan(k: u32, deficit: &Rational, policy: PrecisionPolicy) -> Result<Certainty> {
    if k == 0 {
        return domain("k must be positive");
    }
    if *deficit <= 0 {
        return domain("the deficit must be positive");
    }
    let p0 = pk(k, policy.start);
    if !Interval::from_rational(deficit, policy.start)
        .sub(&p0)
        .is_negative()
    {
        return domain(format!("the deficit must be below p_{k}"));
    }
    let law = WalkLaw::new(Rational::from((1, 2)))?;
    Ok(escalate(policy, |prec| {
        let p = pk(k, prec).sub(&Interval::from_rational(deficit, prec));
        let (lhs, rhs) = probineq_sides(&law, k, &p).expect("k checked");
        (certified_compare(&lhs, &rhs), ())
    })
    .certainty)
}

/// Empirical endpoint statistics for one value of `S_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointStat {
    pub value: i64,
    pub exact: Rational,
    pub count: u64,
    pub frequency: f64,
    /// `(freq - p) sqrt(trials / (p (1 - p)))`; zero when `p` is 0 or 1 and
    /// the frequency matches, infinite otherwise.
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub law: WalkLaw,
    pub k: u32,
    pub trials: u64,
    pub seed: u64,
    /// Counts of `S_k = m` for `m` in `-k..=k`.
    pub histogram: Vec<u64>,
    /// Statistics for `S_k` in `{-k, 0, k}`.
    pub endpoints: Vec<EndpointStat>,
    pub max_abs_z: f64,
}

impl SimulationResult {
    pub fn count(&self, m: i64) -> u64 {
        let k = i64::from(self.k);
        if m < -k || m > k {
            0
        } else {
            self.histogram[(m + k) as usize]
        }
    }
}

/// Trials per random stream.
pub const SIMULATION_CHUNK: u64 = 1 << 16;

/// Runs `trials` independent `k`-step walks. Trials are grouped in chunks of
/// [`SIMULATION_CHUNK`]; chunk `c` draws from ChaCha8 stream `c` of `seed`,
/// so results do not depend on the number of worker threads. Each step draws
/// `u` uniformly from `0..2b` for `q = a/b`: `u < b` stays, `b <= u < b + a`
/// moves right, and the rest move left.
pub fn simulate(law: &WalkLaw, k: u32, trials: u64, seed: u64) -> Result<SimulationResult> {
    if trials == 0 {
        return domain("trials must be positive");
    }
    if k == 0 {
        return domain("k must be positive");
    }
    let (Some(a), Some(b)) = (law.q.numer().to_u64(), law.q.denom().to_u64()) else {
        return domain("q must have numerator and denominator below 2^63");
    };
    if b > u64::MAX / 2 {
        return domain("q must have a denominator below 2^63");
    }
    let width = 2 * k as usize + 1;
    let chunks = trials.div_ceil(SIMULATION_CHUNK);
    let histogram = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let n = SIMULATION_CHUNK.min(trials - c * SIMULATION_CHUNK);
            let mut hist = vec![0u64; width];
            for _ in 0..n {
                let mut s = i64::from(k);
                for _ in 0..k {
                    let u = rng.gen_range(0..2 * b);
                    if u >= b {
                        s += if u < b + a { 1 } else { -1 };
                    }
                }
                hist[s as usize] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; width],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(p, q)| *p += q);
                x
            },
        );
    let (left, mid, right) = endpoint_probs(law, k)?;
    let kk = i64::from(k);
    let endpoints: Vec<EndpointStat> = [(-kk, left), (0, mid), (kk, right)]
        .into_iter()
        .map(|(value, exact)| {
            let count = histogram[(value + kk) as usize];
            let frequency = count as f64 / trials as f64;
            let p = exact.to_f64();
            let z = if p == 0.0 || p == 1.0 {
                if frequency == p {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (frequency - p) * (trials as f64 / (p * (1.0 - p))).sqrt()
            };
            EndpointStat {
                value,
                exact,
                count,
                frequency,
                z,
            }
        })
        .collect();
    let max_abs_z = endpoints.iter().map(|e| e.z.abs()).fold(0.0, f64::max);
    Ok(SimulationResult {
        law: law.clone(),
        k,
        trials,
        seed,
        histogram,
        endpoints,
        max_abs_z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Verdict;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn law(n: i64, d: i64) -> WalkLaw {
        WalkLaw::new(q(n, d)).unwrap()
    }

    #[test]
    fn distribution_examples() {
        let d = walk_distribution(&law(1, 2), 2);
        assert_eq!(d.prob(0), q(3, 8));
        assert_eq!((d.prob(1), d.prob(-1)), (q(1, 4), q(1, 4)));
        assert_eq!((d.prob(2), d.prob(-2)), (q(1, 16), q(1, 16)));
        let d = walk_distribution(&law(1, 1), 4);
        assert_eq!(d.prob(0), q(1, 16));
        assert!((1..=4).all(|m| d.prob(-m) == 0));
        let d = walk_distribution(&law(2, 7), 0);
        assert_eq!(d.prob(0), 1);
        assert_eq!(d.total(), 1);
    }

    #[test]
    fn endpoint_examples() {
        assert_eq!(
            endpoint_probs(&law(1, 2), 2).unwrap(),
            (q(1, 16), q(3, 8), q(1, 16))
        );
        assert_eq!(
            endpoint_probs(&law(0, 1), 3).unwrap(),
            (q(1, 8), q(1, 8), q(0, 1))
        );
        assert_eq!(
            endpoint_probs(&law(2, 3), 1).unwrap(),
            (q(1, 6), q(1, 2), q(1, 3))
        );
        assert_eq!(WalkLaw::from_right_prob(q(1, 3)).unwrap(), law(2, 3));
        assert!(WalkLaw::from_right_prob(q(2, 3)).is_err());
        assert!(WalkLaw::new(q(3, 2)).is_err());
    }

    #[test]
    fn probineq_examples() {
        let p = PrecisionPolicy::default();
        for k in [1, 2, 7, 40] {
            assert_eq!(
                verify_probineq(&law(1, 2), k, p).unwrap().verdict,
                Verdict::ExactEquality
            );
            assert_eq!(
                verify_probineq(&law(0, 1), k, p).unwrap().verdict,
                Verdict::ExactEquality
            );
        }
        let r = verify_probineq(&law(3, 10), 5, p).unwrap();
        assert_eq!(r.verdict, Verdict::CertainTrue);
        assert!(r.margin.unwrap().is_positive());
        // f64 oracle of both sides.
        let p5 = 252f64.log2();
        let (l, m, r) = (0.35f64.powi(5), middle_f64(0.3, 5), 0.15f64.powi(5));
        assert!(m.powf(1.0 / p5) < l.powf(1.0 / p5) + r.powf(1.0 / p5));
    }

    fn middle_f64(qq: f64, k: i32) -> f64 {
        let mut total = 0.0;
        for r in 0..=k / 2 {
            let mut c = 1.0;
            for i in 1..=k {
                c *= f64::from(i);
            }
            for i in 1..=r {
                c /= f64::from(i) * f64::from(i);
            }
            for i in 1..=(k - 2 * r) {
                c /= f64::from(i);
            }
            total += c * (qq / 2.0).powi(r) * ((1.0 - qq) / 2.0).powi(r) * 0.5f64.powi(k - 2 * r);
        }
        total
    }

    #[test]
    fn middle_formula_matches_enumeration() {
        for (n, d) in [(1, 2), (3, 10), (9, 10)] {
            for k in 1..12 {
                let exact = middle_prob_formula(&law(n, d), k as u32).to_f64();
                let oracle = middle_f64(n as f64 / d as f64, k);
                assert!((exact - oracle).abs() < 1e-14, "{n}/{d} k={k}");
            }
        }
    }

    #[test]
    fn custom_exponent() {
        let pol = PrecisionPolicy::default();
        let e = WalkExponent::Rational(q(257, 100));
        let r = verify_probineq_exponent(&law(1, 2), 5, &e, pol).unwrap();
        assert_eq!(r.verdict, Verdict::CertainFalse);
        let r = verify_probineq_exponent(&law(1, 1), 5, &e, pol).unwrap();
        assert_eq!(r.verdict, Verdict::ExactEquality);
    }

    #[test]
    fn equivalence_examples() {
        let p = PrecisionPolicy::default();
        for (l, k) in [
            (law(1, 2), 2),
            (law(1, 4), 3),
            (law(1, 1), 4),
            (law(0, 1), 3),
        ] {
            assert_eq!(equivalence_check(&l, k, p).unwrap(), Certainty::CertainTrue);
        }
    }

    #[test]
    fn sharpness_examples() {
        let p = PrecisionPolicy::default();
        assert_eq!(
            sharpness_scan(2, &q(1, 100), p).unwrap(),
            Certainty::CertainFalse
        );
        assert_eq!(
            sharpness_scan(10, &q(1, 1000), p).unwrap(),
            Certainty::CertainFalse
        );
        assert!(sharpness_scan(2, &q(0, 1), p).is_err());
        assert!(sharpness_scan(2, &q(3, 1), p).is_err());
    }

    #[test]
    fn simulation_examples() {
        let r = simulate(&law(1, 2), 2, 200_000, 11).unwrap();
        assert_eq!(r.histogram.iter().sum::<u64>(), 200_000);
        assert!(r.endpoints[1].z.abs() < 4.0);
        assert_eq!(r, simulate(&law(1, 2), 2, 200_000, 11).unwrap());
        let r = simulate(&law(1, 1), 3, 10_000, 1).unwrap();
        assert!((-3..0).all(|m| r.count(m) == 0));
        assert_eq!(r.endpoints[0].z, 0.0);
    }
}
