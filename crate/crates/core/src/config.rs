//! Numeric tolerances, grids and window sizes for every approximate check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("t_grid must be non-empty and strictly positive")]
    BadTimeGrid,
    #[error("r_levels must be non-empty and inside (0, 1)")]
    BadLevels,
    #[error("tail_window must be at least 1")]
    BadTailWindow,
    #[error("{0} must be positive and finite")]
    NonPositive(&'static str),
}

/// All knobs used by approximate verdicts. Every field has a default, so a
/// partial JSON object is accepted; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Slack for comparisons between degrees in [0, 1].
    pub eps_degree: f64,
    /// Slack for limits (t -> infinity, tail spreads, crisp tails).
    pub eps_limit: f64,
    /// Absolute width at which alpha-norm bisection stops.
    pub eps_bisect: f64,
    pub bisect_max_iter: usize,
    /// Largest t considered when bracketing an alpha-norm.
    pub t_max: f64,
    /// The single far sample standing in for t -> infinity.
    pub t_large: f64,
    /// Surrogate for "for all t > 0".
    pub t_grid: Vec<f64>,
    /// Surrogate for "for all 0 < r < 1".
    pub r_levels: Vec<f64>,
    /// A prefix settles when the last `tail_window + 1` terms all comply.
    pub tail_window: usize,
    /// Largest offset p in Cauchy checks.
    pub cauchy_p_max: usize,
    /// Threshold for the sampled (xiii)/(xiv) checks.
    pub vanishing_threshold: f64,
    /// Cap on t in boundedness witness searches.
    pub bound_t_cap: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_degree: 1e-9,
            eps_limit: 1e-6,
            eps_bisect: 1e-10,
            bisect_max_iter: 200,
            t_max: 1e12,
            t_large: 1e9,
            t_grid: vec![0.01, 0.1, 1.0, 10.0, 100.0],
            r_levels: vec![0.5, 0.1, 0.01],
            tail_window: 10,
            cauchy_p_max: 3,
            vanishing_threshold: 0.5,
            bound_t_cap: 1e9,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.t_grid.is_empty() || self.t_grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(ConfigError::BadTimeGrid);
        }
        if self.r_levels.is_empty() || self.r_levels.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(ConfigError::BadLevels);
        }
        if self.tail_window == 0 {
            return Err(ConfigError::BadTailWindow);
        }
        let positive = [
            ("eps_degree", self.eps_degree),
            ("eps_limit", self.eps_limit),
            ("eps_bisect", self.eps_bisect),
            ("t_max", self.t_max),
            ("t_large", self.t_large),
            ("bound_t_cap", self.bound_t_cap),
            ("vanishing_threshold", self.vanishing_threshold),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(ConfigError::NonPositive(name));
            }
        }
        Ok(())
    }

    /// Smallest r level, the strictest convergence requirement.
    pub fn finest_level(&self) -> f64 {
        self.r_levels.iter().copied().fold(f64::INFINITY, f64::min)
    }
}
