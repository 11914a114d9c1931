//! The run configuration file: a TOML tree, validated before any
//! computation, with every default filled in on resolution so that reports
//! can embed the exact configuration that produced them.

use std::fmt;
use std::path::Path;

use radial_nls::exponents::{PotentialRates, Regime};
use radial_nls::problem::{Family, Nonlinearity, PowerProfile, RadialProblem};
use radial_nls::real::Real;
use radial_nls::solver::{GridConfig, Mode, SolverConfig};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// An exact rate, written as a string (`"-49/20"`, `"-2.45"`) or a TOML number.
#[derive(Clone, Debug, PartialEq)]
pub struct Rate {
    text: String,
    value: Real,
}

impl Rate {
    pub fn value(&self) -> &Real {
        &self.value
    }

    pub fn from_real(value: Real) -> Self {
        Rate {
            text: value.to_string(),
            value,
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RateInput {
    Int(i64),
    Float(f64),
    Text(String),
}

impl<'de> Deserialize<'de> for Rate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = match RateInput::deserialize(d)? {
            RateInput::Int(v) => v.to_string(),
            RateInput::Float(v) if v.is_finite() => v.to_string(),
            RateInput::Float(v) => return Err(serde::de::Error::custom(format!("rate must be finite, got {v}"))),
            RateInput::Text(s) => s,
        };
        let value: Real = text.parse().map_err(serde::de::Error::custom)?;
        Ok(Rate { text, value })
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Output directory, overridden by `--out`.
    #[serde(default = "default_out")]
    pub out: String,
    pub problem: ProblemConfig,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot: Option<PlotSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub verify: VerifySection,
}

fn default_out() -> String {
    "out".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub dim: u32,
    pub a0: Rate,
    pub b0: Rate,
    pub a: Rate,
    pub b: Rate,
    /// Coefficients of `V`; its exponents are `a0` and `a`.
    #[serde(default)]
    pub v: ProfileConfig,
    /// Coefficients of `K`; its exponents are `b0` and `b`.
    #[serde(default)]
    pub k: ProfileConfig,
    pub nonlinearity: FamilyConfig,
}

/// `c0 r^p0` below `r1`, `c_inf r^p_inf` above `r2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProfileConfig {
    pub c0: f64,
    pub c_inf: f64,
    pub r1: f64,
    pub r2: f64,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            c0: 1.0,
            c_inf: 1.0,
            r1: 1.0,
            r2: 1.0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyConfig {
    MinPower { q1: f64, q2: f64 },
    RationalPower { q1: f64, q2: f64 },
    PurePower { q: f64 },
    PowerDiff { q1: f64, q2: f64, q: f64 },
    LogModulated { q1: f64, q2: f64, epsilon: f64 },
    Zero,
}

impl FamilyConfig {
    pub fn family(&self) -> Family {
        match *self {
            FamilyConfig::MinPower { q1, q2 } => Family::MinPower { q1, q2 },
            FamilyConfig::RationalPower { q1, q2 } => Family::RationalPower { q1, q2 },
            FamilyConfig::PurePower { q } => Family::PurePower { q },
            FamilyConfig::PowerDiff { q1, q2, q } => Family::PowerDiff { q1, q2, q },
            FamilyConfig::LogModulated { q1, q2, epsilon } => Family::LogModulated { q1, q2, epsilon },
            FamilyConfig::Zero => Family::Zero,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub r_min: f64,
    pub r_max: f64,
    pub nodes: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        let g = GridConfig::default();
        GridSection {
            r_min: g.r_min,
            r_max: g.r_max,
            nodes: g.nodes,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    /// `superlinear-nehari`, `sublinear-global`, or `auto` to follow the
    /// growth claim derived from the nonlinearity.
    pub mode: String,
    pub max_iterations: usize,
    pub initial_step: f64,
    pub armijo: f64,
    pub backtrack: f64,
    pub tol_gradient: f64,
    pub tol_nehari: f64,
    pub tol_energy: f64,
    pub seed: u64,
    pub multistarts: usize,
    pub inflation: f64,
    pub split_radius: f64,
    pub sphere_samples: usize,
    pub force: bool,
}

impl Default for SolverSection {
    fn default() -> Self {
        let c = SolverConfig::new(Mode::SuperlinearNehari);
        SolverSection {
            mode: "auto".into(),
            max_iterations: c.max_iterations,
            initial_step: c.initial_step,
            armijo: c.armijo,
            backtrack: c.backtrack,
            tol_gradient: c.tol_gradient,
            tol_nehari: c.tol_nehari,
            tol_energy: c.tol_energy,
            seed: c.seed,
            multistarts: c.multistarts,
            inflation: c.inflation,
            split_radius: c.split_radius,
            sphere_samples: c.sphere_samples,
            force: c.force,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotSection {
    /// A regime name, or `all` for every regime at its representative value.
    pub regime: String,
    /// The fixed `a0` or `a`; defaults to the regime's representative value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed: Option<Rate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<Rate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<Rate>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    41
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    A0,
    B0,
    A,
    B,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::A0 => "a0",
            SweepParameter::B0 => "b0",
            SweepParameter::A => "a",
            SweepParameter::B => "b",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: SweepParameter,
    pub values: Vec<Rate>,
    /// Also run the solver on every admissible instance.
    #[serde(default)]
    pub solve: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    /// Include the solver invariants (requires a solve).
    pub solve: bool,
    /// Random profiles for the gradient check.
    pub gradient_profiles: usize,
}

impl Default for VerifySection {
    fn default() -> Self {
        VerifySection {
            solve: true,
            gradient_profiles: 5,
        }
    }
}

/// Parses a configuration, reporting the path of the offending field.
pub fn parse(text: &str) -> Result<RunConfig, CliError> {
    let de = toml::Deserializer::new(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Config(format!("{path}: {}", e.into_inner().message()))
    })
}

pub fn load(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

impl RunConfig {
    pub fn rates(&self) -> Result<PotentialRates, CliError> {
        let p = &self.problem;
        PotentialRates::new(
            p.dim,
            p.a0.value().clone(),
            p.b0.value().clone(),
            p.a.value().clone(),
            p.b.value().clone(),
        )
        .map_err(|e| CliError::Config(format!("problem: {e}")))
    }

    pub fn problem(&self) -> Result<RadialProblem, CliError> {
        self.problem_with(self.rates()?)
    }

    /// The configured profiles and nonlinearity with other rates.
    pub fn problem_with(&self, rates: PotentialRates) -> Result<RadialProblem, CliError> {
        let p = &self.problem;
        let profile = |name: &str, c: &ProfileConfig, p0: &Real, p_inf: &Real| {
            PowerProfile::new(c.c0, p0.clone(), c.c_inf, p_inf.clone(), c.r1, c.r2)
                .map_err(|e| CliError::Config(format!("problem.{name}: {e}")))
        };
        let v = profile("v", &p.v, rates.a0(), rates.a())?;
        let k = profile("k", &p.k, rates.b0(), rates.b())?;
        let f = Nonlinearity::new(p.nonlinearity.family())
            .map_err(|e| CliError::Config(format!("problem.nonlinearity: {e}")))?;
        RadialProblem::new(rates, v, k, f).map_err(|e| CliError::Config(format!("problem: {e}")))
    }

    /// Solver settings; `auto` mode is decided by `superlinear`.
    pub fn solver_config(&self, superlinear: bool) -> Result<SolverConfig, CliError> {
        let s = &self.solver;
        let mode = match s.mode.as_str() {
            "auto" if superlinear => Mode::SuperlinearNehari,
            "auto" => Mode::SublinearGlobal,
            other => other
                .parse()
                .map_err(|e| CliError::Config(format!("solver.mode: {e}")))?,
        };
        let config = SolverConfig {
            grid: GridConfig {
                r_min: self.grid.r_min,
                r_max: self.grid.r_max,
                nodes: self.grid.nodes,
            },
            max_iterations: s.max_iterations,
            initial_step: s.initial_step,
            armijo: s.armijo,
            backtrack: s.backtrack,
            tol_gradient: s.tol_gradient,
            tol_nehari: s.tol_nehari,
            tol_energy: s.tol_energy,
            seed: s.seed,
            multistarts: s.multistarts,
            inflation: s.inflation,
            split_radius: s.split_radius,
            sphere_samples: s.sphere_samples,
            force: s.force,
            ..SolverConfig::new(mode)
        };
        config.validate().map_err(|e| CliError::Config(format!("solver: {e}")))?;
        Ok(config)
    }

    /// Checks everything that can be checked without computing.
    pub fn validate(&self) -> Result<(), CliError> {
        let problem = self.problem()?;
        self.solver_config(true)?;
        radial_nls::discretization::RadialGrid::new(problem.dim(), self.grid.r_min, self.grid.r_max, self.grid.nodes)
            .map_err(|e| CliError::Config(format!("grid: {e}")))?;
        if let Some(plot) = &self.plot {
            if plot.regime != "all" {
                plot.regime
                    .parse::<Regime>()
                    .map_err(|e| CliError::Config(format!("plot.regime: {e}")))?;
            } else if plot.fixed.is_some() {
                return Err(CliError::Config("plot.fixed: not allowed with regime = \"all\"".into()));
            }
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(CliError::Config("sweep.values: at least one value is required".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CLASSICAL: &str = r#"
        [problem]
        dim = 3
        a0 = 0
        b0 = "0"
        a = 0.0
        b = "-0/1"
        [problem.nonlinearity]
        family = "pure-power"
        q = 4.0
    "#;

    #[test]
    fn defaults_are_filled_in() {
        let c = parse(CLASSICAL).unwrap();
        c.validate().unwrap();
        assert_eq!(c.grid.nodes, 1024);
        assert_eq!(c.solver.mode, "auto");
        let again = parse(&toml::to_string(&c).unwrap()).unwrap();
        assert_eq!(toml::to_string(&again).unwrap(), toml::to_string(&c).unwrap());
    }

    #[test]
    fn rates_are_exact() {
        let c = parse(&CLASSICAL.replace("b0 = \"0\"", "b0 = -2.45")).unwrap();
        assert_eq!(*c.problem.b0.value(), Real::ratio(-49, 20));
    }

    #[test]
    fn unknown_keys_name_their_path() {
        let err = parse(&CLASSICAL.replace("q = 4.0", "q = 4.0\nextra = 1")).unwrap_err();
        assert!(err.to_string().contains("problem.nonlinearity"), "{err}");
        let err = parse(&format!("{CLASSICAL}\n[grid]\nnodes = \"many\"")).unwrap_err();
        assert!(err.to_string().contains("grid.nodes"), "{err}");
        let err = parse(&CLASSICAL.replace("a0 = 0", "a0 = \"x\"")).unwrap_err();
        assert!(err.to_string().contains("problem.a0"), "{err}");
    }
}
