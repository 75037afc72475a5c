//! Second-order analysis of the recursive decoders: mean and variance of
//! the decision statistics along paths, weakest paths, residuals and error
//! predictions.

mod moments;
mod predict;
mod qfunc;
mod threshold;
mod weakest;

pub use moments::{iterate_moments, mean_step, mu_step, path_moments, PathMoments};
pub use predict::{analysis_units, predict_errors, AnalysisUnit, Prediction, PredictionMethod, UnitPrediction};
pub use qfunc::{q, q_inv};
pub use threshold::{
    awgn_residual, awgn_sigma, crossover, epsilon_majority, epsilon_ml, epsilon_opt, epsilon_opt_order,
    epsilon_phi, epsilon_psi, gaussian_gate, mu_star, mu_star_g, mu_star_g_asymptote, residual, snr_db,
    threshold_report, ThresholdReport, DEFAULT_C,
};
pub use weakest::{weakest_path, weakest_path_at_node, weakest_prefix, weakest_prefix_at_node};
