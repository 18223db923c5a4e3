//! Run configuration shared by the analysis pipeline and the CLI.

use serde::{Deserialize, Serialize};

use crate::curve::DerivativeScheme;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Verdict tolerance for the characterization checks.
    pub tol: f64,
    /// Degeneracy and orthonormality tolerance for frame construction.
    pub frame_tol: f64,
    /// Unit-speed tolerance for pseudo arc-length reparametrization.
    pub reparam_tol: f64,
    /// Samples excluded at each end of the curve by all checks.
    pub margin: usize,
    /// Derivative estimator used by the frame construction.
    pub derivatives: DerivativeScheme,
    /// Integrator step.
    pub step: f64,
    /// Seed for randomized diagnostics.
    pub seed: u64,
    /// Minimum distance from a pole of the cone scaling factor.
    pub pole_margin: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tol: 1e-4,
            frame_tol: 1e-6,
            reparam_tol: 1e-6,
            margin: 2,
            derivatives: DerivativeScheme::default(),
            step: 1e-3,
            seed: 0,
            pole_margin: 0.05,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("tol", self.tol),
            ("frame_tol", self.frame_tol),
            ("reparam_tol", self.reparam_tol),
            ("step", self.step),
            ("pole_margin", self.pole_margin),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.margin < 2 {
            return Err(Error::InvalidConfig(format!("margin must be at least 2, got {}", self.margin)));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}
