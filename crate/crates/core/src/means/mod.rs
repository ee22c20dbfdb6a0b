//! Whiteley and power means, the sharp comparisons between them, and the
//! function `h_k` behind the lower comparison.

mod hk;
mod mean;

pub use hk::{
    factored_form, h_k, h_k_half, hk_ode_residual, tilde_c_positivity, tilde_coefficients,
    verify_hk_min,
};
pub use mean::{
    certify_r_k_range, expansion_coefficient, expansion_limit, power_mean, power_mean_enclosure,
    power_mean_interval, r_k, ray_grid, verify_lower, verify_prior_bounds, verify_upper,
    whiteley_inner, whiteley_mean, whiteley_mean_enclosure, MeanComparisonReport,
};
