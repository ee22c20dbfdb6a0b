//! Exact k-fold sum counts over the box `{0,...,k}^d` and the energy
//! `E_k(A) = sum_s N_k(s)^2`.

use std::ops::AddAssign;

use rug::ops::Pow;
use rug::Integer;

use crate::error::{domain, Error, Result};

use super::HypercubeSubset;

/// Default bound on `(k+1)^d * k`, the tally size times the number of passes.
pub const DEFAULT_TALLY_BUDGET: u128 = 1 << 28;
/// Default bound on `|A|^(2k)` for the brute-force counter.
pub const DEFAULT_BRUTEFORCE_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Counts {
    Small(Vec<u64>),
    Wide(Vec<u128>),
    Big(Vec<Integer>),
}

/// `N_k(s)` for every lattice point `s` of `{0,...,k}^d`, stored densely with
/// `s` encoded as `sum_i s_i (k+1)^(i-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumTally {
    pub k: u32,
    pub d: u32,
    counts: Counts,
}

impl SumTally {
    pub fn cells(&self) -> usize {
        match &self.counts {
            Counts::Small(c) => c.len(),
            Counts::Wide(c) => c.len(),
            Counts::Big(c) => c.len(),
        }
    }

    fn encode(&self, s: &[u32]) -> Option<usize> {
        if s.len() != self.d as usize || s.iter().any(|&c| c > self.k) {
            return None;
        }
        let radix = self.k as usize + 1;
        Some(s.iter().rev().fold(0, |acc, &c| acc * radix + c as usize))
    }

    fn decode(&self, mut idx: usize) -> Vec<u32> {
        let radix = self.k as usize + 1;
        (0..self.d)
            .map(|_| {
                let c = idx % radix;
                idx /= radix;
                c as u32
            })
            .collect()
    }

    fn count_at(&self, idx: usize) -> Integer {
        match &self.counts {
            Counts::Small(c) => Integer::from(c[idx]),
            Counts::Wide(c) => Integer::from(c[idx]),
            Counts::Big(c) => c[idx].clone(),
        }
    }

    /// `N_k(s)`; zero outside the box.
    pub fn get(&self, s: &[u32]) -> Integer {
        self.encode(s)
            .map_or_else(Integer::new, |i| self.count_at(i))
    }

    /// Nonzero counts in increasing encoded order.
    pub fn nonzero(&self) -> Vec<(Vec<u32>, Integer)> {
        (0..self.cells())
            .map(|i| (i, self.count_at(i)))
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (self.decode(i), c))
            .collect()
    }

    /// `sum_s N_k(s)`, which equals `|A|^k`.
    pub fn mass(&self) -> Integer {
        match &self.counts {
            Counts::Small(c) => Integer::from(c.iter().map(|&x| u128::from(x)).sum::<u128>()),
            Counts::Wide(c) => c.iter().map(|&x| Integer::from(x)).sum(),
            Counts::Big(c) => c.iter().sum(),
        }
    }

    /// `sum_s N_k(s)^2`.
    pub fn energy(&self) -> Integer {
        match &self.counts {
            // The sum of squares is at most mass^2 < 2^128.
            Counts::Small(c) => Integer::from(
                c.iter()
                    .map(|&x| u128::from(x) * u128::from(x))
                    .sum::<u128>(),
            ),
            Counts::Wide(c) => {
                let mut total = Integer::new();
                for &x in c {
                    total += Integer::from(x).square();
                }
                total
            }
            Counts::Big(c) => {
                let mut total = Integer::new();
                for x in c {
                    total += x.clone().square();
                }
                total
            }
        }
    }
}

fn radix_code(v: u32, d: u32, radix: usize) -> usize {
    (0..d)
        .rev()
        .fold(0, |acc, i| acc * radix + (v >> i & 1) as usize)
}

fn convolve<T>(offsets: &[usize], cells: usize, k: u32, one: T) -> Vec<T>
where
    T: Clone + Default + PartialEq + for<'a> AddAssign<&'a T>,
{
    let zero = T::default();
    let mut cur = vec![zero.clone(); cells];
    for &o in offsets {
        cur[o] = one.clone();
    }
    let mut support: Vec<usize> = offsets.to_vec();
    for _ in 1..k {
        let mut next = vec![zero.clone(); cells];
        for &s in &support {
            let c = &cur[s];
            for &o in offsets {
                next[s + o] += c;
            }
        }
        support = (0..cells).filter(|&i| next[i] != zero).collect();
        cur = next;
    }
    cur
}

/// Sum tally with the default memory budget.
pub fn sum_tally(a: &HypercubeSubset, k: u32) -> Result<SumTally> {
    sum_tally_with_budget(a, k, DEFAULT_TALLY_BUDGET)
}

/// `N_k(s) = #{(a_1,...,a_k) in A^k : a_1 + ... + a_k = s}` by `k - 1`
/// successive convolutions with `A`.
pub fn sum_tally_with_budget(a: &HypercubeSubset, k: u32, budget: u128) -> Result<SumTally> {
    if k == 0 {
        return domain("k must be positive");
    }
    if a.is_empty() {
        return domain("the set must be nonempty");
    }
    let d = a.dim();
    let required = u128::from(k + 1)
        .checked_pow(d)
        .and_then(|c| c.checked_mul(u128::from(k)))
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::Resource {
            what: "sum tally cells",
            required,
            budget,
        });
    }
    let cells = (k as usize + 1).pow(d);
    let radix = k as usize + 1;
    let offsets: Vec<usize> = a
        .vertices()
        .into_iter()
        .map(|v| radix_code(v, d, radix))
        .collect();
    let size = Integer::from(a.len());
    let mass = size.pow(k);
    let counts = if mass.significant_bits() <= 64 {
        Counts::Small(convolve(&offsets, cells, k, 1u64))
    } else if mass.significant_bits() <= 128 {
        Counts::Wide(convolve(&offsets, cells, k, 1u128))
    } else {
        Counts::Big(convolve(&offsets, cells, k, Integer::from(1)))
    };
    Ok(SumTally { k, d, counts })
}

/// Exact `E_k(A)`.
pub fn energy(a: &HypercubeSubset, k: u32) -> Result<Integer> {
    Ok(sum_tally(a, k)?.energy())
}

/// Brute-force count of `2k`-tuples from `A` whose first and last `k` entries
/// have equal coordinatewise sums; limited to `|A|^(2k) <= cap`.
pub fn energy_bruteforce(a: &HypercubeSubset, k: u32, cap: u128) -> Result<Integer> {
    if k == 0 {
        return domain("k must be positive");
    }
    let pts = a.vertices();
    let n = pts.len();
    if n == 0 {
        return domain("the set must be nonempty");
    }
    let required = (n as u128).checked_pow(2 * k).unwrap_or(u128::MAX);
    if required > cap {
        return Err(Error::Resource {
            what: "brute-force tuples",
            required,
            budget: cap,
        });
    }
    let d = a.dim() as usize;
    let coords: Vec<Vec<i64>> = pts
        .iter()
        .map(|&v| (0..d).map(|i| i64::from(v >> i & 1)).collect())
        .collect();
    let len = 2 * k as usize;
    let mut idx = vec![0usize; len];
    let mut count: u128 = 0;
    let mut diff = vec![0i64; d];
    loop {
        diff.iter_mut().for_each(|x| *x = 0);
        for (pos, &i) in idx.iter().enumerate() {
            let sign = if pos < k as usize { 1 } else { -1 };
            for (acc, &c) in diff.iter_mut().zip(&coords[i]) {
                *acc += sign * c;
            }
        }
        if diff.iter().all(|&x| x == 0) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == len {
                return Ok(Integer::from(count));
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
