//! Positivity tests, closed-form thresholds, and family classifiers.

mod classify;
mod moment;
mod reduction;
mod thresholds;

pub use classify::{
    class_a_subnormal_by_extension, classify_class_a_necessary, classify_kappa, classify_kappa_powers_h1_all_h,
    classify_kappa_subnormal, classify_s1, classify_two_one_power, s1_f2, ClassALevel, KappaVerdicts, S1Verdicts,
    TwoOneVerdicts,
};
pub use moment::{
    fifteen_point_matrix, hyponormal_six_point_window, k_hyponormal_window, moment_matrix, moment_matrix_with,
    monomial_indices, six_point_matrix, SixPoint,
};
pub use reduction::{
    backward_extension_check, build_jk, class_a_limit_h, class_a_limit_p, jk_indices, kappa_power_subnormal,
    p_of_power, reduce_lk_to_ak, two_one_power_matrix,
};
pub use thresholds::{threshold_sq, Threshold};
