//! Which existence result covers a given instance.

use std::fmt;

use super::{CorollaryBounds, Intervals, PotentialRates, SubPowerExponents, SuperPowerExponents};
use crate::error::{Error, Result};
use crate::real::{ExtReal, OpenInterval, Real};

/// The existence results the calculus can certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Theorem {
    /// Earlier super-linear result: single growth exponent in `(q_lower, q_upper)`.
    SinglePowerSuper,
    /// Earlier sub-linear result for pure powers on the `A x B` regions.
    SinglePowerSub,
    /// Double-power super-linear result with `q1 ∈ I1`, `q2 ∈ I2`, both `> 2`.
    DoublePowerSuper,
    /// The incompatible case `I1 ∩ I2 = ∅` of the double-power super-linear result.
    DoublePowerIncompatible,
    /// Double-power sub-linear result with `q1 ∈ I1`, `q2 ∈ I2`, both `< 2`.
    DoublePowerSub,
    /// Ground state on the Nehari manifold.
    GroundState,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::SinglePowerSuper,
        Theorem::SinglePowerSub,
        Theorem::DoublePowerSuper,
        Theorem::DoublePowerIncompatible,
        Theorem::DoublePowerSub,
        Theorem::GroundState,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::SinglePowerSuper => "single-power-super",
            Theorem::SinglePowerSub => "single-power-sub",
            Theorem::DoublePowerSuper => "double-power-super",
            Theorem::DoublePowerIncompatible => "double-power-incompatible",
            Theorem::DoublePowerSub => "double-power-sub",
            Theorem::GroundState => "ground-state",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What is known about the nonlinearity `f`.
///
/// `q1, q2` are the exponents of the envelope
/// `|f(t)| <= M min{t^(q1-1), t^(q2-1)}`. When `superlinear` is set, `theta`
/// is the exponent of `0 <= theta F(t) <= f(t) t` (together with `F > 0`
/// somewhere); otherwise `theta` is the exponent of
/// `liminf_{t->0+} F(t)/t^theta > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthClaim {
    pub q1: Real,
    pub q2: Real,
    pub theta: Real,
    pub superlinear: bool,
    /// `K(|x|)` is integrable on the whole space.
    pub k_integrable: bool,
    /// `0 < theta F(t) <= f(t) t` for large `t` with some `theta > 2`.
    pub ar_at_infinity: bool,
    /// `f(t)/t` strictly increasing on `(0, inf)`.
    pub ratio_increasing: bool,
}

impl GrowthClaim {
    pub fn superlinear(q1: Real, q2: Real, theta: Real) -> Self {
        GrowthClaim {
            q1,
            q2,
            theta,
            superlinear: true,
            k_integrable: false,
            ar_at_infinity: false,
            ratio_increasing: false,
        }
    }

    pub fn sublinear(q1: Real, q2: Real, theta: Real) -> Self {
        GrowthClaim {
            superlinear: false,
            ..GrowthClaim::superlinear(q1, q2, theta)
        }
    }

    pub fn with_ratio_increasing(mut self, value: bool) -> Self {
        self.ratio_increasing = value;
        self
    }

    pub fn with_integrable_weight(mut self, k_integrable: bool, ar_at_infinity: bool) -> Self {
        self.k_integrable = k_integrable;
        self.ar_at_infinity = ar_at_infinity;
        self
    }

    fn q_min(&self) -> Real {
        self.q1.clone().min(self.q2.clone())
    }

    fn q_max(&self) -> Real {
        self.q1.clone().max(self.q2.clone())
    }
}

/// Exponents that a result actually uses. Any pair inside
/// `[min(q1,q2), max(q1,q2)]` is dominated by the claimed envelope, since
/// `min{t^(q1-1), t^(q2-1)} <= min{t^(p1-1), t^(p2-1)}` for such `p1, p2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub q1: Real,
    pub q2: Real,
    /// The claimed exponents were used as they are.
    pub direct: bool,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub theorem: Theorem,
    pub applicable: bool,
    pub reason: String,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub rates: PotentialRates,
    pub claim: GrowthClaim,
    pub b_lower: ExtReal,
    pub b_star: ExtReal,
    pub q_star: ExtReal,
    pub q_upper_star: ExtReal,
    pub q_double_star: ExtReal,
    pub intervals: Intervals,
    pub super_power: Option<SuperPowerExponents>,
    pub sub_power: Option<SubPowerExponents>,
    pub corollary: Option<CorollaryBounds>,
    pub in_p: bool,
    pub in_p1: bool,
    pub verdicts: Vec<Verdict>,
}

impl AdmissibilityReport {
    pub fn applicable(&self) -> Vec<Theorem> {
        self.verdicts
            .iter()
            .filter(|v| v.applicable)
            .map(|v| v.theorem)
            .collect()
    }

    pub fn is_applicable(&self, theorem: Theorem) -> bool {
        self.verdicts
            .iter()
            .any(|v| v.theorem == theorem && v.applicable)
    }

    pub fn verdict(&self, theorem: Theorem) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.theorem == theorem)
            .expect("every theorem has a verdict")
    }
}

/// A point of the open interval `iv` inside the closed range `[lo, hi]`.
fn point_in(iv: &OpenInterval, lo: &Real, hi: &Real) -> Option<Real> {
    if !iv.meets_closed(lo, hi) {
        return None;
    }
    let left = match &iv.lo {
        ExtReal::Finite(v) => v.clone().max(lo.clone()),
        _ => lo.clone(),
    };
    let right = match &iv.hi {
        ExtReal::Finite(v) => v.clone().min(hi.clone()),
        _ => hi.clone(),
    };
    if left < right {
        Some((left + right) / Real::int(2))
    } else {
        Some(left)
    }
}

fn above_two() -> OpenInterval {
    OpenInterval::new(ExtReal::int(2), ExtReal::PosInf)
}

fn one_to_two() -> OpenInterval {
    OpenInterval::new(ExtReal::int(1), ExtReal::int(2))
}

/// Exponents `p1 ∈ I1 ∩ window`, `p2 ∈ I2 ∩ window` dominated by the claim.
fn dominated_pair(iv: &Intervals, window: &OpenInterval, claim: &GrowthClaim) -> Option<Witness> {
    let direct = iv.i1.contains(&claim.q1)
        && iv.i2.contains(&claim.q2)
        && window.contains(&claim.q1)
        && window.contains(&claim.q2);
    if direct {
        return Some(Witness {
            q1: claim.q1.clone(),
            q2: claim.q2.clone(),
            direct: true,
        });
    }
    let (lo, hi) = (claim.q_min(), claim.q_max());
    let p1 = point_in(&iv.i1.intersect(window), &lo, &hi)?;
    let p2 = point_in(&iv.i2.intersect(window), &lo, &hi)?;
    Some(Witness {
        q1: p1,
        q2: p2,
        direct: false,
    })
}

/// Decides every existence result for the given rates and growth claim.
pub fn admissibility(rates: &PotentialRates, claim: &GrowthClaim) -> Result<AdmissibilityReport> {
    if claim.q1 <= Real::int(1) || claim.q2 <= Real::int(1) {
        return Err(Error::InvalidInput(format!(
            "growth exponents must exceed 1, got q1={} q2={}",
            claim.q1, claim.q2
        )));
    }
    if claim.theta <= Real::int(0) {
        return Err(Error::InvalidInput(format!(
            "theta must be positive, got {}",
            claim.theta
        )));
    }

    let intervals = rates.intervals();
    let super_power = rates.super_power_exponents();
    let sub_power = rates.sub_power_exponents();
    let corollary = rates.corollary_double();
    let b_lower = rates.b_lower();
    let b0 = ExtReal::Finite(rates.b0().clone());
    let two = Real::int(2);
    let (q_lo, q_hi) = (claim.q_min(), claim.q_max());
    let mut verdicts = Vec::new();

    // double-power super-linear
    let super_rates = b0 > b_lower;
    let super_pair = dominated_pair(&intervals, &above_two(), claim);
    let ar_route = claim.superlinear && claim.theta > two;
    let integrable_route = claim.k_integrable && claim.ar_at_infinity;
    let double_super = super_rates && super_pair.is_some() && (ar_route || integrable_route);
    let reason = if !super_rates {
        format!("b0 = {} <= b_lower = {}", rates.b0(), b_lower)
    } else if super_pair.is_none() {
        format!(
            "no exponents above 2 in I1 = {} and I2 = {} within [{}, {}]",
            intervals.i1, intervals.i2, q_lo, q_hi
        )
    } else if !(ar_route || integrable_route) {
        "neither an Ambrosetti-Rabinowitz condition with theta > 2 nor integrable K with the condition at infinity".to_string()
    } else {
        let w = super_pair.as_ref().unwrap();
        format!(
            "b0 > b_lower = {}; q1 = {} ∈ I1 = {}, q2 = {} ∈ I2 = {}",
            b_lower, w.q1, intervals.i1, w.q2, intervals.i2
        )
    };
    verdicts.push(Verdict {
        theorem: Theorem::DoublePowerSuper,
        applicable: double_super,
        reason,
        witness: if double_super { super_pair.clone() } else { None },
    });

    // incompatible case
    let incompatible = match &corollary {
        Some(bounds) => {
            let q1_ok = claim.q_min() > two && ExtReal::Finite(claim.q_min()) < bounds.q1_bound;
            let q2_ok = ExtReal::Finite(claim.q_max()) > bounds.q2_bound;
            let ok = q1_ok && q2_ok && (ar_route || integrable_route);
            let reason = format!(
                "I1 ∩ I2 = ∅; requires 2 < q1 < {} and q2 > {}",
                bounds.q1_bound, bounds.q2_bound
            );
            (ok, reason)
        }
        None => (false, "corollary hypotheses fail".to_string()),
    };
    verdicts.push(Verdict {
        theorem: Theorem::DoublePowerIncompatible,
        applicable: incompatible.0,
        reason: incompatible.1,
        witness: incompatible.0.then(|| Witness {
            q1: claim.q_min(),
            q2: claim.q_max(),
            direct: true,
        }),
    });

    // double-power sub-linear
    let sub_rates = *rates.b0() > rates.sublinear_b0_bound()
        && *rates.b() < rates.a().clone().max(Real::int(-2));
    let sub_pair = dominated_pair(&intervals, &one_to_two(), claim);
    let small_t_route = !claim.superlinear && claim.theta < two;
    let double_sub = sub_rates && sub_pair.is_some() && small_t_route;
    let reason = if !sub_rates {
        format!(
            "needs b0 > {} and b < max{{a,-2}} = {}",
            rates.sublinear_b0_bound(),
            rates.a().clone().max(Real::int(-2))
        )
    } else if sub_pair.is_none() {
        format!(
            "no exponents in (1,2) within I1 = {}, I2 = {} and [{}, {}]",
            intervals.i1, intervals.i2, q_lo, q_hi
        )
    } else if !small_t_route {
        "needs liminf F(t)/t^theta > 0 as t -> 0 with theta < 2".to_string()
    } else {
        let w = sub_pair.as_ref().unwrap();
        format!(
            "q1 = {} ∈ I1 ∩ (1,2), q2 = {} ∈ I2 ∩ (1,2)",
            w.q1, w.q2
        )
    };
    verdicts.push(Verdict {
        theorem: Theorem::DoublePowerSub,
        applicable: double_sub,
        reason,
        witness: if double_sub { sub_pair } else { None },
    });

    // earlier super-linear, single exponent
    let single_super = match &super_power {
        Some(e) if e.q_lower < e.q_upper => {
            let range = OpenInterval::new(e.q_lower.clone(), e.q_upper.clone());
            match point_in(&range, &q_lo, &q_hi) {
                Some(q) if ar_route => (true, format!("q = {q} ∈ ({}, {})", e.q_lower, e.q_upper), Some(q)),
                Some(_) => (false, "needs an Ambrosetti-Rabinowitz exponent theta > 2".to_string(), None),
                None => (
                    false,
                    format!("[{q_lo}, {q_hi}] misses ({}, {})", e.q_lower, e.q_upper),
                    None,
                ),
            }
        }
        Some(e) => (false, format!("q_lower = {} >= q_upper = {}", e.q_lower, e.q_upper), None),
        None => (false, format!("undefined since b0 <= b_lower = {b_lower}"), None),
    };
    verdicts.push(Verdict {
        theorem: Theorem::SinglePowerSuper,
        applicable: single_super.0,
        reason: single_super.1,
        witness: single_super.2.map(|q| Witness {
            q1: q.clone(),
            q2: q,
            direct: false,
        }),
    });

    // earlier sub-linear, pure power
    let single_sub = match &sub_power {
        Some(e) if !e.conflicts.is_empty() => (
            false,
            format!("region formulas disagree: {}", e.conflicts.join("; ")),
            None,
        ),
        Some(e) if e.q_lower < e.q_upper => {
            let range = OpenInterval::new(e.q_lower.clone(), e.q_upper.clone());
            match point_in(&range, &q_lo, &q_hi) {
                Some(q) if !claim.superlinear => (true, format!("q = {q} ∈ ({}, {})", e.q_lower, e.q_upper), Some(q)),
                Some(_) => (false, "only covers sub-linear powers".to_string(), None),
                None => (
                    false,
                    format!("[{q_lo}, {q_hi}] misses ({}, {})", e.q_lower, e.q_upper),
                    None,
                ),
            }
        }
        Some(e) => (false, format!("q_lower = {} >= q_upper = {}", e.q_lower, e.q_upper), None),
        None => (false, "rates outside the A x B regions".to_string(), None),
    };
    verdicts.push(Verdict {
        theorem: Theorem::SinglePowerSub,
        applicable: single_sub.0,
        reason: single_sub.1,
        witness: single_sub.2.map(|q| Witness {
            q1: q.clone(),
            q2: q,
            direct: false,
        }),
    });

    // ground state: first part of the double-power super-linear result plus
    // strict monotonicity of f(t)/t
    let first_part = super_rates && super_pair.is_some() && ar_route;
    let ground_state = first_part && claim.ratio_increasing;
    let reason = if !first_part {
        "double-power super-linear result (with theta > 2) does not apply".to_string()
    } else if !claim.ratio_increasing {
        "f(t)/t is not strictly increasing".to_string()
    } else {
        "f(t)/t strictly increasing on top of the super-linear hypotheses".to_string()
    };
    verdicts.push(Verdict {
        theorem: Theorem::GroundState,
        applicable: ground_state,
        reason,
        witness: if ground_state { super_pair } else { None },
    });

    verdicts.sort_by_key(|v| v.theorem);

    Ok(AdmissibilityReport {
        rates: rates.clone(),
        claim: claim.clone(),
        b_lower,
        b_star: rates.b_star(),
        q_star: rates.q_star(),
        q_upper_star: rates.q_upper_star(),
        q_double_star: rates.q_double_star(),
        intervals,
        super_power,
        sub_power,
        corollary,
        in_p: rates.in_p(),
        in_p1: rates.in_p1(),
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rates(a0: &str, b0: &str, a: &str, b: &str) -> PotentialRates {
        PotentialRates::parse(3, a0, b0, a, b).unwrap()
    }

    fn r(s: &str) -> Real {
        s.parse().unwrap()
    }

    #[test]
    fn classical_cubic() {
        let claim = GrowthClaim::superlinear(r("4"), r("4"), r("4")).with_ratio_increasing(true);
        let rep = admissibility(&rates("0", "0", "0", "0"), &claim).unwrap();
        assert_eq!(
            rep.applicable(),
            vec![
                Theorem::SinglePowerSuper,
                Theorem::DoublePowerSuper,
                Theorem::GroundState
            ]
        );
        assert!(rep.verdict(Theorem::DoublePowerSuper).witness.as_ref().unwrap().direct);
    }

    #[test]
    fn sublinear_outside_p1() {
        let claim = GrowthClaim::sublinear(r("1.5"), r("1.5"), r("1.5"));
        let rep = admissibility(&rates("-5", "-2.45", "-1", "-2.4"), &claim).unwrap();
        assert!(rep.is_applicable(Theorem::DoublePowerSub));
        assert!(!rep.is_applicable(Theorem::SinglePowerSub));
        assert!(rep.in_p);
        assert!(!rep.in_p1);
    }

    #[test]
    fn incompatible_double_power() {
        let claim = GrowthClaim::superlinear(r("4"), r("9"), r("4"));
        let rep = admissibility(&rates("0", "0", "-2", "1"), &claim).unwrap();
        assert!(rep.is_applicable(Theorem::DoublePowerSuper));
        assert!(rep.is_applicable(Theorem::DoublePowerIncompatible));
        assert!(!rep.is_applicable(Theorem::SinglePowerSuper));
        let w = rep.verdict(Theorem::DoublePowerSuper).witness.clone().unwrap();
        assert!(rep.intervals.i1.contains(&w.q1));
        assert!(rep.intervals.i2.contains(&w.q2));
    }

    #[test]
    fn dominated_exponents_are_found() {
        // claim (3, 8) on the classical rates: not directly q2 ∈ I2 & q1 ∈ I1
        // with q1 = 8 ∉ I1 = (1,6), but 3..8 contains points of (2,6).
        let claim = GrowthClaim::superlinear(r("8"), r("3"), r("3"));
        let rep = admissibility(&rates("0", "0", "0", "0"), &claim).unwrap();
        let w = rep.verdict(Theorem::DoublePowerSuper).witness.clone().unwrap();
        assert!(!w.direct);
        assert!(rep.intervals.i1.contains(&w.q1));
    }

    #[test]
    fn rejects_bad_exponents() {
        let claim = GrowthClaim::superlinear(r("1"), r("3"), r("3"));
        assert!(admissibility(&rates("0", "0", "0", "0"), &claim).is_err());
        let claim = GrowthClaim::superlinear(r("3"), r("3"), r("0"));
        assert!(admissibility(&rates("0", "0", "0", "0"), &claim).is_err());
    }

    #[test]
    fn quadratic_is_never_superlinear() {
        let claim = GrowthClaim::superlinear(r("2"), r("2"), r("2"));
        let rep = admissibility(&rates("0", "0", "0", "0"), &claim).unwrap();
        assert!(rep.applicable().is_empty());
    }
}
