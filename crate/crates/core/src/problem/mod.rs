//! Concrete potentials and nonlinearities for `-Δu + V(|x|) u = K(|x|) f(u)`.

mod checks;
mod nonlinearity;
mod profile;

pub use checks::{
    analytic_growth_constant, check_growth, check_k_integrable, check_structure, default_samples,
    log_samples, Condition, GrowthReport, IntegrabilityReport, Sampled, StructureReport,
};
pub use nonlinearity::{Family, Nonlinearity, Truncation};
pub use profile::{eval_potential, PowerProfile};

use crate::error::{Error, Result};
use crate::exponents::{admissibility, AdmissibilityReport, GrowthClaim, PotentialRates};
use crate::real::Real;

/// Rates, the two potential profiles realizing them, and the nonlinearity.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProblem {
    rates: PotentialRates,
    v: PowerProfile,
    k: PowerProfile,
    f: Nonlinearity,
}

impl RadialProblem {
    pub fn new(rates: PotentialRates, v: PowerProfile, k: PowerProfile, f: Nonlinearity) -> Result<Self> {
        let pairs = [
            ("V near 0", v.p0(), rates.a0()),
            ("V at infinity", v.p_inf(), rates.a()),
            ("K near 0", k.p0(), rates.b0()),
            ("K at infinity", k.p_inf(), rates.b()),
        ];
        for (name, profile, rate) in pairs {
            if profile.to_f64() != rate.to_f64() {
                return Err(Error::InvalidInput(format!(
                    "{name}: profile exponent {profile} differs from rate {rate}"
                )));
            }
        }
        Ok(RadialProblem { rates, v, k, f })
    }

    /// Pure power profiles `V = cv r^a0`, `K = ck r^b0` when the rates at zero
    /// and infinity agree, or unit-coefficient profiles crossing over at `r = 1`.
    pub fn with_unit_profiles(rates: PotentialRates, f: Nonlinearity) -> Result<Self> {
        let v = PowerProfile::new(1.0, rates.a0().clone(), 1.0, rates.a().clone(), 1.0, 1.0)?;
        let k = PowerProfile::new(1.0, rates.b0().clone(), 1.0, rates.b().clone(), 1.0, 1.0)?;
        RadialProblem::new(rates, v, k, f)
    }

    /// `-Δu + u = |u|^(q-2) u` in dimension `dim`.
    pub fn constant_coefficients(dim: u32, q: f64) -> Result<Self> {
        let zero = || Real::int(0);
        let rates = PotentialRates::new(dim, zero(), zero(), zero(), zero())?;
        RadialProblem::with_unit_profiles(rates, Nonlinearity::pure_power(q)?)
    }

    pub fn rates(&self) -> &PotentialRates {
        &self.rates
    }

    pub fn dim(&self) -> u32 {
        self.rates.dim()
    }

    pub fn v(&self) -> &PowerProfile {
        &self.v
    }

    pub fn k(&self) -> &PowerProfile {
        &self.k
    }

    pub fn f(&self) -> &Nonlinearity {
        &self.f
    }

    pub fn with_f(&self, f: Nonlinearity) -> Self {
        RadialProblem { f, ..self.clone() }
    }
}

/// Everything the checks establish about a problem, and the growth claim
/// handed to the exponent calculus.
#[derive(Clone, Debug)]
pub struct Hypotheses {
    pub growth: GrowthReport,
    pub structure: StructureReport,
    pub k_integrable: IntegrabilityReport,
    pub claim: GrowthClaim,
}

/// Runs the growth, structure and integrability checks and derives the
/// claim: the Ambrosetti-Rabinowitz exponent when that condition holds,
/// else the small-`t` exponent, else the exponent of the condition at
/// infinity (usable only with integrable `K`).
pub fn hypotheses(problem: &RadialProblem) -> Result<Hypotheses> {
    let f = problem.f();
    let (q1, q2) = f
        .envelope()
        .ok_or_else(|| Error::NotAdmissible(format!("{f} has no growth exponents")))?;
    let samples = default_samples();
    let growth = check_growth(f, q1, q2, &samples)?;
    let structure = check_structure(f, &samples)?;
    let k_integrable = check_k_integrable(problem.k(), problem.dim());
    let (q1r, q2r) = (Real::from_shortest_decimal(q1), Real::from_shortest_decimal(q2));
    let positive = structure.positive_somewhere.holds() == Some(true);
    let ar = &structure.ambrosetti_rabinowitz;
    let small_t = &structure.small_t_lower_bound;
    let at_infinity = &structure.ar_at_infinity;
    let claim = match (ar.holds(), ar.witness, small_t.holds(), small_t.witness) {
        (Some(true), Some(theta), _, _) if positive && theta.is_finite() => {
            GrowthClaim::superlinear(q1r, q2r, Real::from_shortest_decimal(theta))
        }
        (_, _, Some(true), Some(theta)) => GrowthClaim::sublinear(q1r, q2r, Real::from_shortest_decimal(theta)),
        _ => {
            let theta = at_infinity.witness.filter(|t| *t > 2.0).unwrap_or(2.0);
            GrowthClaim::sublinear(q1r, q2r, Real::from_shortest_decimal(theta))
        }
    };
    let integrable = k_integrable.analytic && k_integrable.numerically_integrable();
    let claim = claim
        .with_ratio_increasing(structure.ratio_increasing.holds() == Some(true))
        .with_integrable_weight(integrable, at_infinity.holds() == Some(true));
    Ok(Hypotheses {
        growth,
        structure,
        k_integrable,
        claim,
    })
}

/// Hypotheses of the problem and the resulting admissibility report.
pub fn admissibility_of(problem: &RadialProblem) -> Result<(Hypotheses, AdmissibilityReport)> {
    let h = hypotheses(problem)?;
    let report = admissibility(problem.rates(), &h.claim)?;
    Ok((h, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_must_match_rates() {
        let rates = PotentialRates::parse(3, "0", "0", "0", "-4").unwrap();
        let f = Nonlinearity::pure_power(4.0).unwrap();
        let flat = PowerProfile::constant(1.0).unwrap();
        assert!(RadialProblem::new(rates.clone(), flat.clone(), flat.clone(), f.clone()).is_err());
        let p = RadialProblem::with_unit_profiles(rates, f).unwrap();
        assert_eq!(p.k().eval(2.0), 1.0 / 16.0);
    }

    #[test]
    fn classical_claim() {
        let p = RadialProblem::constant_coefficients(3, 4.0).unwrap();
        let (h, rep) = admissibility_of(&p).unwrap();
        assert!(h.claim.superlinear);
        assert_eq!(h.claim.theta, Real::int(4));
        assert!(rep.is_applicable(crate::exponents::Theorem::GroundState));
    }

    #[test]
    fn sublinear_claim() {
        let rates = PotentialRates::parse(3, "-5", "-2.45", "-1", "-2.4").unwrap();
        let p = RadialProblem::with_unit_profiles(rates, Nonlinearity::min_power(1.5, 1.8).unwrap()).unwrap();
        let (h, rep) = admissibility_of(&p).unwrap();
        assert!(!h.claim.superlinear);
        assert_eq!(h.claim.theta, Real::ratio(9, 5));
        assert!(rep.is_applicable(crate::exponents::Theorem::DoublePowerSub));
    }
}
