//! k-additive energies of hypercube subsets and the sharp bound
//! `E_k(A) <= |A|^(p_k)`.

mod subset;
mod tally;
mod verify;

pub use subset::{HypercubeSubset, MAX_DIM};
pub use tally::{
    energy, energy_bruteforce, sum_tally, sum_tally_with_budget, SumTally, DEFAULT_BRUTEFORCE_CAP,
    DEFAULT_TALLY_BUDGET,
};
pub use verify::{
    exhaustive_verify, random_subset, random_verify, verify_energy_bound, EnergyReport, EnergySweep,
};
