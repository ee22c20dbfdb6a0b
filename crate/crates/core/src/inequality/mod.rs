//! The normalized binomial sum `f_k`, its main inequality, and every auxiliary
//! function used to certify it.

mod grid;
mod legendre;
mod lemmas;
mod ode;
mod sum;

pub use grid::GridSpec;
pub use legendre::{legendre_p, legendre_reformulation_check, legendre_sides};
pub use lemmas::{
    j_k_candidates, max_term_log, omega, phi, phi_second_derivative, t_critical,
    verify_binomialwise, verify_entropy_bound, verify_small_x_ranges,
};
pub(crate) use ode::termwise_derivatives;
pub use ode::{
    ode_coefficients, ode_residual, psi, psi_nine_sides, verify_ck_negative, verify_psi_nine,
    OdeCoefficients,
};
pub(crate) use sum::power_table;
pub use sum::{
    certify_f_below_one, f_k, f_k_interval, mainineq_sides, verify_main_inequality,
    verify_mainineq_ab, SumContext,
};
