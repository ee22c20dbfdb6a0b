//! Certified checks of `E_k(A) <= |A|^(p_k)` on single sets and sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::ops::Pow;
use rug::Integer;

use crate::arith::{
    central_binomial, certified_compare, escalate, pk, power_of_two_exponent, Certainty, Interval,
    PrecisionPolicy,
};
use crate::error::{domain, Result};
use crate::report::{Verdict, VerdictCounts};

use super::{energy, HypercubeSubset};

/// Outcome of checking the energy bound on one set.
#[derive(Debug, Clone)]
pub struct EnergyReport {
    pub size: u64,
    pub energy: Integer,
    pub verdict: Verdict,
    /// `p_k log2|A| - log2 E_k(A)`.
    pub margin: Interval,
    pub precision: u32,
}

impl EnergyReport {
    /// Enclosure of the bound `|A|^(p_k)` at the report precision.
    pub fn bound(&self, k: u32) -> Interval {
        let prec = self.precision;
        pk(k, prec)
            .mul(&Interval::from_integer(&Integer::from(self.size), prec).log2())
            .exp2()
    }
}

fn margin(k: u32, size: u64, e: &Integer, prec: u32) -> (Interval, Interval) {
    let lhs = Interval::from_integer(e, prec).log2();
    let rhs = pk(k, prec).mul(&Interval::from_integer(&Integer::from(size), prec).log2());
    (lhs, rhs)
}

/// Checks `E_k(A) <= |A|^(p_k)`. When `|A| = 2^m` the bound is the integer
/// `C(2k,k)^m` and the comparison is exact; otherwise logarithms are compared
/// with precision escalation.
pub fn verify_energy_bound(
    a: &HypercubeSubset,
    k: u32,
    policy: PrecisionPolicy,
) -> Result<EnergyReport> {
    let e = energy(a, k)?;
    Ok(bound_report(k, a.len(), e, policy))
}

fn bound_report(k: u32, size: u64, e: Integer, policy: PrecisionPolicy) -> EnergyReport {
    if let Some(m) = power_of_two_exponent(size) {
        let bound = central_binomial(k).pow(m);
        let verdict = match e.cmp(&bound) {
            std::cmp::Ordering::Less => Verdict::CertainTrue,
            std::cmp::Ordering::Equal => Verdict::ExactEquality,
            std::cmp::Ordering::Greater => Verdict::CertainFalse,
        };
        let prec = policy.start;
        let margin = if verdict == Verdict::ExactEquality {
            Interval::zero(prec)
        } else {
            let b = Interval::from_integer(&bound, prec).log2();
            b.sub(&Interval::from_integer(&e, prec).log2())
        };
        return EnergyReport {
            size,
            energy: e,
            verdict,
            margin,
            precision: prec,
        };
    }
    let esc = escalate(policy, |prec| {
        let (lhs, rhs) = margin(k, size, &e, prec);
        (certified_compare(&lhs, &rhs), rhs.sub(&lhs))
    });
    EnergyReport {
        size,
        energy: e,
        verdict: esc.certainty.into(),
        margin: esc.value,
        precision: esc.precision,
    }
}

/// Aggregate of a sweep over many sets.
#[derive(Debug, Clone)]
pub struct EnergySweep {
    pub d: u32,
    pub k: u32,
    pub counts: VerdictCounts,
    /// Every checked set with its report, in sweep order.
    pub cases: Vec<(HypercubeSubset, EnergyReport)>,
    /// Sets attaining the bound exactly.
    pub equality_witnesses: Vec<HypercubeSubset>,
    /// Set maximizing `log2 E_k / log2 |A|` among `|A| >= 2`, with that ratio.
    pub maximizer: Option<(HypercubeSubset, Interval)>,
}

fn ratio(k: u32, r: &EnergyReport) -> Interval {
    let (le, _) = margin(k, r.size, &r.energy, r.precision);
    le.div(&Interval::from_integer(&Integer::from(r.size), r.precision).log2())
}

fn summarize(d: u32, k: u32, cases: Vec<(HypercubeSubset, EnergyReport)>) -> EnergySweep {
    let counts = cases.iter().map(|(_, r)| r.verdict).collect();
    let equality_witnesses = cases
        .iter()
        .filter(|(_, r)| r.verdict == Verdict::ExactEquality)
        .map(|(a, _)| a.clone())
        .collect();
    let mut maximizer: Option<(HypercubeSubset, Interval, u64)> = None;
    for (a, r) in cases.iter().filter(|(_, r)| r.size >= 2) {
        let q = ratio(k, r);
        let better = match &maximizer {
            None => true,
            Some((_, best, best_size)) => match certified_compare(best, &q) {
                Certainty::CertainTrue => true,
                Certainty::CertainFalse => false,
                // Overlapping enclosures count as a tie: prefer the larger set,
                // then the earlier one.
                Certainty::Undecided => r.size > *best_size,
            },
        };
        if better {
            maximizer = Some((a.clone(), q, r.size));
        }
    }
    EnergySweep {
        d,
        k,
        counts,
        cases,
        equality_witnesses,
        maximizer: maximizer.map(|(a, q, _)| (a, q)),
    }
}

/// Checks the bound on every nonempty subset of `{0,1}^d`, `d <= 4`, in order
/// of increasing mask.
pub fn exhaustive_verify(d: u32, k: u32, policy: PrecisionPolicy) -> Result<EnergySweep> {
    if d == 0 || d > 4 {
        return domain("exhaustive sweeps need 1 <= d <= 4");
    }
    let masks = 1u64 << (1u32 << d);
    let cases = (1..masks)
        .into_par_iter()
        .map(|mask| {
            let a = HypercubeSubset::from_mask_u64(d, mask)?;
            let r = verify_energy_bound(&a, k, policy)?;
            Ok((a, r))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(d, k, cases))
}

/// Random nonempty subset for sample `index`: every vertex is included with
/// probability 1/2, resampling empty draws. Sample `i` uses ChaCha8 stream `i`
/// of `seed`, so draws do not depend on how samples are spread over threads.
pub fn random_subset(d: u32, seed: u64, index: u64) -> Result<HypercubeSubset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut a = HypercubeSubset::empty(d)?;
    loop {
        for v in 0..a.vertex_count() {
            if rng.gen::<bool>() {
                a.insert(v);
            }
        }
        if !a.is_empty() {
            return Ok(a);
        }
    }
}

/// Checks the bound on `n_samples` seeded random subsets of `{0,1}^d`.
pub fn random_verify(
    d: u32,
    k: u32,
    n_samples: u64,
    seed: u64,
    policy: PrecisionPolicy,
) -> Result<EnergySweep> {
    if d == 0 || d > super::MAX_DIM {
        return domain(format!("dimension {d} outside 1..={}", super::MAX_DIM));
    }
    let cases = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let a = random_subset(d, seed, i)?;
            let r = verify_energy_bound(&a, k, policy)?;
            Ok((a, r))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(d, k, cases))
}
