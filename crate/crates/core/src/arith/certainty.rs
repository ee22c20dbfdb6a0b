use super::Interval;

/// Tri-state outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Certainty {
    CertainTrue,
    CertainFalse,
    /// The enclosures overlap at the precision used.
    Undecided,
}

impl Certainty {
    pub fn is_decided(self) -> bool {
        self != Certainty::Undecided
    }

    pub fn negate(self) -> Certainty {
        match self {
            Certainty::CertainTrue => Certainty::CertainFalse,
            Certainty::CertainFalse => Certainty::CertainTrue,
            Certainty::Undecided => Certainty::Undecided,
        }
    }

    /// Conjunction: false dominates, then undecided.
    pub fn and(self, other: Certainty) -> Certainty {
        use Certainty::*;
        match (self, other) {
            (CertainFalse, _) | (_, CertainFalse) => CertainFalse,
            (CertainTrue, CertainTrue) => CertainTrue,
            _ => Undecided,
        }
    }

    pub fn from_bool(b: bool) -> Certainty {
        if b {
            Certainty::CertainTrue
        } else {
            Certainty::CertainFalse
        }
    }
}

/// Certifies `a < b`: true iff `a.hi < b.lo`, false iff `a.lo > b.hi`.
pub fn certified_compare(a: &Interval, b: &Interval) -> Certainty {
    if a.hi() < b.lo() {
        Certainty::CertainTrue
    } else if a.lo() > b.hi() {
        Certainty::CertainFalse
    } else {
        Certainty::Undecided
    }
}

/// Certifies `0 < a`.
pub fn certified_positive(a: &Interval) -> Certainty {
    if a.lo() > &0 {
        Certainty::CertainTrue
    } else if a.hi() <= &0 {
        Certainty::CertainFalse
    } else {
        Certainty::Undecided
    }
}

/// Starting precision and cap for automatic escalation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start: u32,
    pub cap: u32,
}

impl PrecisionPolicy {
    pub const DEFAULT_START: u32 = 256;
    pub const DEFAULT_CAP: u32 = 4096;

    pub fn new(start: u32, cap: u32) -> Self {
        assert!(
            start >= 2 && start <= cap,
            "precision start must not exceed the cap"
        );
        PrecisionPolicy { start, cap }
    }

    /// No escalation: evaluate once at `prec`.
    pub fn fixed(prec: u32) -> Self {
        PrecisionPolicy::new(prec, prec)
    }

    /// The sequence `start, 2*start, ...` not exceeding `cap`.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap;
        std::iter::successors(Some(self.start), move |&p| {
            p.checked_mul(2).filter(|&n| n <= cap)
        })
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy::new(Self::DEFAULT_START, Self::DEFAULT_CAP)
    }
}

/// Result of an escalated evaluation together with the last computed payload.
#[derive(Debug, Clone)]
pub struct Escalated<T> {
    pub certainty: Certainty,
    pub value: T,
    pub precision: u32,
}

/// Re-evaluates `eval` at doubling precisions until it returns a decided verdict
/// or the cap is reached.
pub fn escalate<T>(
    policy: PrecisionPolicy,
    mut eval: impl FnMut(u32) -> (Certainty, T),
) -> Escalated<T> {
    let mut last = None;
    for prec in policy.schedule() {
        let (certainty, value) = eval(prec);
        let done = certainty.is_decided();
        last = Some(Escalated {
            certainty,
            value,
            precision: prec,
        });
        if done {
            break;
        }
    }
    last.expect("precision schedule is never empty")
}

/// Escalates a bare predicate over precisions `prec0, 2*prec0, ...` up to `prec_max`.
pub fn verify_with_escalation(
    predicate: impl Fn(u32) -> Certainty,
    prec0: u32,
    prec_max: u32,
) -> Certainty {
    escalate(PrecisionPolicy::new(prec0, prec_max), |p| {
        (predicate(p), ())
    })
    .certainty
}
