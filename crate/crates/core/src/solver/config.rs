use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::discretization::RadialGrid;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Minimize the energy on the Nehari set.
    SuperlinearNehari,
    /// Minimize the energy globally.
    SublinearGlobal,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::SuperlinearNehari => "superlinear-nehari",
            Mode::SublinearGlobal => "sublinear-global",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "superlinear-nehari" => Ok(Mode::SuperlinearNehari),
            "sublinear-global" => Ok(Mode::SublinearGlobal),
            _ => Err(Error::Parse(format!(
                "unknown mode {s:?}, expected superlinear-nehari or sublinear-global"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub nodes: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            r_min: 1e-6,
            r_max: 1e2,
            nodes: 1024,
        }
    }
}

impl GridConfig {
    pub fn build(&self, dim: u32) -> Result<Arc<RadialGrid>> {
        Ok(Arc::new(RadialGrid::new(dim, self.r_min, self.r_max, self.nodes)?))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub grid: GridConfig,
    pub mode: Mode,
    pub max_iterations: usize,
    /// First trial step of the line search, in the `H^1` metric.
    pub initial_step: f64,
    /// Sufficient-decrease constant of the Armijo rule.
    pub armijo: f64,
    /// Step reduction factor when the Armijo rule fails.
    pub backtrack: f64,
    /// Bound on the dual norm residual `‖I'(u)‖_* / (1 + ‖u‖)`.
    pub tol_gradient: f64,
    /// Bound on `|I'(u)u| / (1 + ‖u‖²)` and the Nehari projection accuracy.
    pub tol_nehari: f64,
    /// Bound on the relative energy change over the last 5 iterations.
    pub tol_energy: f64,
    pub seed: u64,
    pub multistarts: usize,
    /// Factor applied to the sampled embedding levels to make them usable
    /// as constants.
    pub inflation: f64,
    /// Radius splitting the inner and outer embedding estimates.
    pub split_radius: f64,
    /// Random directions sampled on the mountain-pass sphere.
    pub sphere_samples: usize,
    /// Attempt the solve even when the calculus does not certify it.
    pub force: bool,
}

impl SolverConfig {
    pub fn new(mode: Mode) -> Self {
        SolverConfig {
            grid: GridConfig::default(),
            mode,
            max_iterations: 5000,
            initial_step: 1.0,
            armijo: 1e-4,
            backtrack: 0.5,
            tol_gradient: 1e-8,
            tol_nehari: 1e-10,
            tol_energy: 1e-12,
            seed: 0,
            multistarts: 5,
            inflation: 2.0,
            split_radius: 1.0,
            sphere_samples: 64,
            force: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("initial_step", self.initial_step),
            ("armijo", self.armijo),
            ("tol_gradient", self.tol_gradient),
            ("tol_nehari", self.tol_nehari),
            ("tol_energy", self.tol_energy),
            ("split_radius", self.split_radius),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return Err(Error::InvalidInput(format!("backtrack must be in (0, 1), got {}", self.backtrack)));
        }
        if self.armijo >= 1.0 {
            return Err(Error::InvalidInput(format!("armijo must be below 1, got {}", self.armijo)));
        }
        if !(self.inflation >= 1.0 && self.inflation.is_finite()) {
            return Err(Error::InvalidInput(format!("inflation must be >= 1, got {}", self.inflation)));
        }
        if self.max_iterations == 0 || self.multistarts == 0 || self.sphere_samples == 0 {
            return Err(Error::InvalidInput(
                "max_iterations, multistarts and sphere_samples must be >= 1".into(),
            ));
        }
        Ok(())
    }
}
