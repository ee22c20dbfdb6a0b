//! Verdicts and per-case records shared by every verifier.

use std::fmt;

use crate::arith::{Certainty, Escalated, Interval};

/// Outcome of checking one case of an inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    CertainTrue,
    /// Equality established by an exact algebraic path, never by interval overlap.
    ExactEquality,
    CertainFalse,
    Undecided,
}

impl Verdict {
    /// `CertainTrue` or `ExactEquality`.
    pub fn holds(self) -> bool {
        matches!(self, Verdict::CertainTrue | Verdict::ExactEquality)
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::CertainTrue => "certain-true",
            Verdict::ExactEquality => "exact-equality",
            Verdict::CertainFalse => "certain-false",
            Verdict::Undecided => "undecided",
        }
    }
}

impl From<Certainty> for Verdict {
    fn from(c: Certainty) -> Self {
        match c {
            Certainty::CertainTrue => Verdict::CertainTrue,
            Certainty::CertainFalse => Verdict::CertainFalse,
            Certainty::Undecided => Verdict::Undecided,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One verified case.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub case: String,
    pub verdict: Verdict,
    /// `log2(rhs) - log2(lhs)` (or the analogous gap of the checked relation);
    /// positive when the inequality holds strictly.
    pub margin: Option<Interval>,
    pub precision: u32,
}

impl VerificationReport {
    pub fn exact_equality(case: impl Into<String>, precision: u32) -> Self {
        VerificationReport {
            case: case.into(),
            verdict: Verdict::ExactEquality,
            margin: Some(Interval::zero(precision)),
            precision,
        }
    }

    pub(crate) fn from_escalated(case: impl Into<String>, e: Escalated<Interval>) -> Self {
        VerificationReport {
            case: case.into(),
            verdict: e.certainty.into(),
            margin: Some(e.value),
            precision: e.precision,
        }
    }
}

/// Tally of verdicts over a batch of cases.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerdictCounts {
    pub certain_true: usize,
    pub exact_equality: usize,
    pub certain_false: usize,
    pub undecided: usize,
}

impl VerdictCounts {
    pub fn record(&mut self, v: Verdict) {
        match v {
            Verdict::CertainTrue => self.certain_true += 1,
            Verdict::ExactEquality => self.exact_equality += 1,
            Verdict::CertainFalse => self.certain_false += 1,
            Verdict::Undecided => self.undecided += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.certain_true + self.exact_equality + self.certain_false + self.undecided
    }

    pub fn all_hold(&self) -> bool {
        self.certain_false == 0 && self.undecided == 0
    }
}

impl FromIterator<Verdict> for VerdictCounts {
    fn from_iter<I: IntoIterator<Item = Verdict>>(iter: I) -> Self {
        let mut c = VerdictCounts::default();
        for v in iter {
            c.record(v);
        }
        c
    }
}
