use rug::Rational;

use crate::error::{domain, Result};

/// Uniform grid of exact rational points on `[lo, hi]` (or `[lo, hi)` when
/// `right_open` is set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub lo: Rational,
    pub hi: Rational,
    pub n_points: usize,
    pub right_open: bool,
}

impl GridSpec {
    pub fn closed(lo: Rational, hi: Rational, n_points: usize) -> Result<Self> {
        Self::build(lo, hi, n_points, false)
    }

    pub fn right_open(lo: Rational, hi: Rational, n_points: usize) -> Result<Self> {
        Self::build(lo, hi, n_points, true)
    }

    /// `n_points` uniform points on `[0, 1]`.
    pub fn unit(n_points: usize) -> Result<Self> {
        Self::closed(Rational::new(), Rational::from(1), n_points)
    }

    fn build(lo: Rational, hi: Rational, n_points: usize, right_open: bool) -> Result<Self> {
        if lo >= hi {
            return domain(format!("grid endpoints out of order: {lo} >= {hi}"));
        }
        if n_points < 2 {
            return domain("a grid needs at least 2 points");
        }
        Ok(GridSpec {
            lo,
            hi,
            n_points,
            right_open,
        })
    }

    pub fn points(&self) -> Vec<Rational> {
        let steps = if self.right_open {
            self.n_points
        } else {
            self.n_points - 1
        };
        let span = Rational::from(&self.hi - &self.lo);
        (0..self.n_points)
            .map(|i| {
                let frac = Rational::from((i as u64, steps as u64));
                &self.lo + Rational::from(&span * &frac)
            })
            .collect()
    }

    /// Whether every point lies in `[lo, hi]` (`hi` excluded when `hi_open`).
    pub fn within(&self, lo: &Rational, hi: &Rational, hi_open: bool) -> bool {
        let top_ok = if self.right_open {
            self.hi <= *hi
        } else if hi_open {
            self.hi < *hi
        } else {
            self.hi <= *hi
        };
        self.lo >= *lo && top_ok
    }
}
