//! Certified verification of sharp binomial-sum inequalities and their
//! combinatorial, probabilistic and mean-value reformulations.
//!
//! Irrational quantities are carried as outward-rounded MPFR intervals; exact
//! equalities are established only through integer or rational identities.

pub mod arith;
pub mod energy;
mod error;
pub mod inequality;
pub mod means;
mod report;
pub mod walk;

pub use arith::{certified_compare, Certainty, ExactInt, ExactRational, Interval, PrecisionPolicy};
pub use energy::{EnergyReport, EnergySweep, HypercubeSubset, SumTally};
pub use error::{Error, Result};
pub use inequality::{GridSpec, OdeCoefficients};
pub use means::MeanComparisonReport;
pub use report::{Verdict, VerdictCounts, VerificationReport};
pub use rug;
pub use walk::{SimulationResult, WalkDistribution, WalkExponent, WalkLaw};
