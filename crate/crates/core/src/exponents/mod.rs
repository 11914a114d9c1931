//! Piecewise exponent calculus for the rates of the potentials.
//!
//! The potentials behave like `V(r) ~ r^a0`, `K(r) ~ r^b0` near the origin
//! and like `V(r) ~ r^a`, `K(r) ~ r^b` at infinity. Everything in this module
//! is a pure function of `(N, a0, b0, a, b)`; with rational inputs every
//! result is an exact rational or `±inf`.
//!
//! Branch conditions are written exactly as the case distinctions of the
//! theory: note in particular that `q_star` uses the strict test
//! `a0 < -(2N-2)` for its first branch while `q_upper_star` uses the
//! non-strict `a0 <= -(2N-2)`.

mod admissibility;
mod corollary;
mod curves;
mod prior;

pub use admissibility::{admissibility, AdmissibilityReport, GrowthClaim, Theorem, Verdict, Witness};
pub use corollary::{corollary_double, corollary_hypothesis, CorollaryBounds, CorollaryHypothesis};
pub use curves::{exponent_curves, CurveRow, CurveSpec, Regime};
pub use prior::{a_regions, b_regions, ARegion, BRegion, SubPowerExponents, SuperPowerExponents};

use crate::error::{Error, Result};
use crate::real::{ExtReal, OpenInterval, Real};

/// Dimension and power rates of `V` and `K` at zero and infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialRates {
    dim: u32,
    a0: Real,
    b0: Real,
    a: Real,
    b: Real,
}

/// The intervals `I1`, `I2` and their intersection.
#[derive(Clone, Debug, PartialEq)]
pub struct Intervals {
    pub i1: OpenInterval,
    pub i2: OpenInterval,
    pub both: OpenInterval,
}

pub(crate) fn two_times(num: Real, den: Real) -> Real {
    assert!(
        !den.is_zero(),
        "internal error: zero denominator inside a guarded branch"
    );
    Real::int(2) * num / den
}

pub(crate) fn four_times(num: Real, den: Real) -> Real {
    assert!(
        !den.is_zero(),
        "internal error: zero denominator inside a guarded branch"
    );
    Real::int(4) * num / den
}

impl PotentialRates {
    /// Rates in the order `(a0, b0, a, b)`.
    pub fn new(dim: u32, a0: Real, b0: Real, a: Real, b: Real) -> Result<Self> {
        if dim < 3 {
            return Err(Error::InvalidInput(format!("dimension must be >= 3, got {dim}")));
        }
        for (name, v) in [("a0", &a0), ("b0", &b0), ("a", &a), ("b", &b)] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("rate {name} must be finite")));
            }
        }
        Ok(PotentialRates { dim, a0, b0, a, b })
    }

    /// Convenience constructor from decimal or fraction strings.
    pub fn parse(dim: u32, a0: &str, b0: &str, a: &str, b: &str) -> Result<Self> {
        Self::new(dim, a0.parse()?, b0.parse()?, a.parse()?, b.parse()?)
    }

    pub fn from_f64(dim: u32, a0: f64, b0: f64, a: f64, b: f64) -> Result<Self> {
        Self::new(dim, Real::float(a0), Real::float(b0), Real::float(a), Real::float(b))
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }
    pub fn a0(&self) -> &Real {
        &self.a0
    }
    pub fn b0(&self) -> &Real {
        &self.b0
    }
    pub fn a(&self) -> &Real {
        &self.a
    }
    pub fn b(&self) -> &Real {
        &self.b
    }

    pub fn is_exact(&self) -> bool {
        self.a0.is_exact() && self.b0.is_exact() && self.a.is_exact() && self.b.is_exact()
    }

    pub fn with_a0(&self, a0: Real) -> Self {
        PotentialRates { a0, ..self.clone() }
    }
    pub fn with_b0(&self, b0: Real) -> Self {
        PotentialRates { b0, ..self.clone() }
    }
    pub fn with_a(&self, a: Real) -> Self {
        PotentialRates { a, ..self.clone() }
    }
    pub fn with_b(&self, b: Real) -> Self {
        PotentialRates { b, ..self.clone() }
    }

    pub(crate) fn n(&self) -> Real {
        Real::int(self.dim as i64)
    }

    /// `2N - 2`
    pub(crate) fn two_n_minus_two(&self) -> Real {
        Real::int(2 * self.dim as i64 - 2)
    }

    /// `-(N+2)/2`
    pub(crate) fn minus_half_n_plus_two(&self) -> Real {
        Real::ratio(-(self.dim as i64 + 2), 2)
    }

    /// `min{a0, -(N-a0)/2, -(N+2)/2}` without the `-inf` branch; the bound
    /// on `b0` for the sub-linear theory and for the set `P`.
    pub fn sublinear_b0_bound(&self) -> Real {
        let n = self.n();
        let half_term = -((n - &self.a0) / Real::int(2));
        self.a0.clone().min(half_term).min(self.minus_half_n_plus_two())
    }

    /// `b_lower(a0)`: `-inf` if `a0 < -(2N-2)`, else `min{a0, -2}`.
    pub fn b_lower(&self) -> ExtReal {
        if self.a0 < -self.two_n_minus_two() {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(self.a0.clone().min(Real::int(-2)))
        }
    }

    /// `b_star(a0)`: `-inf` if `a0 < -(2N-2)`, else
    /// `min{a0, -(N-a0)/2, -(N+2)/2}`.
    pub fn b_star(&self) -> ExtReal {
        if self.a0 < -self.two_n_minus_two() {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(self.sublinear_b0_bound())
        }
    }

    /// `(b_lower, b_star)`.
    pub fn threshold_exponents(&self) -> (ExtReal, ExtReal) {
        (self.b_lower(), self.b_star())
    }

    /// Lower endpoint of `I1`, evaluated from its three-branch formula.
    pub fn q_star(&self) -> ExtReal {
        let n = self.n();
        let m = self.two_n_minus_two();
        let (a0, b0) = (&self.a0, &self.b0);
        let one = Real::int(1);
        if *a0 < -m.clone() {
            let t1 = two_times(&n + b0, &n + a0);
            let t2 = two_times(&m + &(Real::int(2) * b0) - a0, &m + a0);
            ExtReal::Finite(one.max(t1).max(t2))
        } else if *a0 < -n.clone() {
            ExtReal::Finite(one.max(two_times(&n + b0, &n + a0)))
        } else {
            ExtReal::Finite(one)
        }
    }

    /// Upper endpoint of `I1`, evaluated from its four-branch formula; the
    /// boundary `a0 = -(2N-2)` belongs to the `+inf` branch.
    pub fn q_upper_star(&self) -> ExtReal {
        let n = self.n();
        let m = self.two_n_minus_two();
        let (a0, b0) = (&self.a0, &self.b0);
        if *a0 <= -m.clone() {
            ExtReal::PosInf
        } else if *a0 <= -n.clone() {
            ExtReal::Finite(two_times(&m + &(Real::int(2) * b0) - a0, &m + a0))
        } else if *a0 < Real::int(-2) {
            let t1 = two_times(&n + b0, &n + a0);
            let t2 = two_times(&m + &(Real::int(2) * b0) - a0, &m + a0);
            ExtReal::Finite(t1.min(t2))
        } else {
            ExtReal::Finite(two_times(&n + b0, n - Real::int(2)))
        }
    }

    /// Lower endpoint of `I2`.
    pub fn q_double_star(&self) -> ExtReal {
        let n = self.n();
        let m = self.two_n_minus_two();
        let (a, b) = (&self.a, &self.b);
        let one = Real::int(1);
        if *a <= Real::int(-2) {
            ExtReal::Finite(one.max(two_times(&n + b, &n - &Real::int(2))))
        } else {
            let t1 = two_times(&n + b, &n + a);
            let t2 = two_times(&m + &(Real::int(2) * b) - a, &m + a);
            ExtReal::Finite(one.max(t1).max(t2))
        }
    }

    /// `I1 = (q_star, q_upper_star)` for `b0 > b_star`; the endpoint
    /// functions are only defined there, so `I1` is reported empty otherwise.
    pub fn i1(&self) -> OpenInterval {
        if ExtReal::Finite(self.b0.clone()) > self.b_star() {
            OpenInterval::new(self.q_star(), self.q_upper_star())
        } else {
            OpenInterval::empty()
        }
    }

    /// `I2 = (q_double_star, +inf)`.
    pub fn i2(&self) -> OpenInterval {
        OpenInterval::new(self.q_double_star(), ExtReal::PosInf)
    }

    pub fn intervals(&self) -> Intervals {
        let i1 = self.i1();
        let i2 = self.i2();
        let both = i1.intersect(&i2);
        Intervals { i1, i2, both }
    }

    /// Exponents of the earlier super-linear result (`None` when
    /// `b0 <= b_lower`).
    pub fn super_power_exponents(&self) -> Option<SuperPowerExponents> {
        prior::super_power(self)
    }

    /// Exponents of the earlier sub-linear result (`None` when the rates lie
    /// outside the `A`/`B` regions).
    pub fn sub_power_exponents(&self) -> Option<SubPowerExponents> {
        prior::sub_power(self)
    }

    /// Corollary bounds when its hypotheses hold.
    pub fn corollary_double(&self) -> Option<CorollaryBounds> {
        corollary_double(self)
    }

    /// Membership in the set `P`: `b0 > min{a0,-(N-a0)/2,-(N+2)/2}`,
    /// `b < max{a,-2}` and `I1 ∩ I2 ≠ ∅`.
    pub fn in_p(&self) -> bool {
        self.b0 > self.sublinear_b0_bound()
            && self.b < self.a.clone().max(Real::int(-2))
            && !self.intervals().both.is_empty()
    }

    /// Membership in `P1`: both region conditions and `q_lower < q_upper`
    /// for the earlier sub-linear exponents.
    pub fn in_p1(&self) -> bool {
        self.sub_power_exponents().is_some_and(|sub| sub.q_lower < sub.q_upper)
    }
}

impl std::fmt::Display for PotentialRates {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "N={} a0={} b0={} a={} b={}",
            self.dim, self.a0, self.b0, self.a, self.b
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rates(a0: &str, b0: &str, a: &str, b: &str) -> PotentialRates {
        PotentialRates::parse(3, a0, b0, a, b).unwrap()
    }

    fn q(s: &str) -> ExtReal {
        ExtReal::Finite(s.parse().unwrap())
    }

    #[test]
    fn rejects_low_dimension() {
        assert!(PotentialRates::parse(2, "0", "0", "0", "0").is_err());
        assert!(PotentialRates::from_f64(3, f64::NAN, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(
            rates("-10", "0", "0", "0").threshold_exponents(),
            (ExtReal::NegInf, ExtReal::NegInf)
        );
        assert_eq!(
            rates("0", "0", "0", "0").threshold_exponents(),
            (q("-2"), q("-2.5"))
        );
        assert_eq!(
            rates("-3", "0", "0", "0").threshold_exponents(),
            (q("-3"), q("-3"))
        );
        // a0 = -(2N-2) is the first non-(-inf) point.
        assert_eq!(rates("-4", "0", "0", "0").b_lower(), q("-4"));
    }

    #[test]
    fn q_star_branches() {
        assert_eq!(rates("0", "0", "0", "0").q_star(), q("1"));
        assert_eq!(rates("-5", "-2.45", "0", "0").q_star(), q("1"));
        // a0 = -4.5 < -(2N-2) = -4 selects the first branch; brute-force the
        // three candidates 1, 2(N+b0)/(N+a0), 2(2N-2+2b0-a0)/(2N-2+a0).
        let r = rates("-4.5", "-2", "0", "0");
        let candidates: [Real; 3] = [
            Real::int(1),
            Real::int(2) * Real::int(1) / "-1.5".parse::<Real>().unwrap(),
            Real::int(2) * "4.5".parse::<Real>().unwrap() / "-0.5".parse::<Real>().unwrap(),
        ];
        let brute = candidates.into_iter().fold(Real::int(-1000), Real::max);
        assert_eq!(r.q_star(), ExtReal::Finite(brute));
        assert_eq!(r.q_star(), q("1"));
        // second branch: a0 = -3.5, b0 = -4 gives 2(-1)/(-0.5) = 4
        assert_eq!(rates("-3.5", "-4", "0", "0").q_star(), q("4"));
    }

    #[test]
    fn q_upper_star_branches() {
        assert_eq!(rates("-4", "7", "0", "0").q_upper_star(), ExtReal::PosInf);
        assert_eq!(rates("0", "0", "0", "0").q_upper_star(), q("6"));
        assert_eq!(rates("-2.5", "-2.2", "0", "0").q_upper_star(), q("2.8"));
        // second branch -(2N-2) < a0 <= -N: 2(4 - 4 + 3)/(4 - 3) = 6
        assert_eq!(rates("-3", "-2", "0", "0").q_upper_star(), q("6"));
    }

    #[test]
    fn q_double_star_branches() {
        assert_eq!(rates("0", "0", "0", "0").q_double_star(), q("2"));
        assert_eq!(rates("0", "0", "-3", "-4").q_double_star(), q("1"));
        assert_eq!(rates("0", "0", "-2", "1").q_double_star(), q("8"));
    }

    #[test]
    fn interval_examples() {
        let r = rates("-5", "-2.45", "-1", "-2.4");
        let iv = r.intervals();
        let one_inf = OpenInterval::new(q("1"), ExtReal::PosInf);
        assert_eq!(iv.i1, one_inf);
        assert_eq!(iv.i2, one_inf);
        assert_eq!(iv.both, one_inf);

        let iv = rates("0", "0", "0", "0").intervals();
        assert_eq!(iv.i1, OpenInterval::new(q("1"), q("6")));
        assert_eq!(iv.i2, OpenInterval::new(q("2"), ExtReal::PosInf));
        assert_eq!(iv.both, OpenInterval::new(q("2"), q("6")));

        let iv = rates("0", "0", "-2", "1").intervals();
        assert_eq!(iv.i1, OpenInterval::new(q("1"), q("6")));
        assert_eq!(iv.i2, OpenInterval::new(q("8"), ExtReal::PosInf));
        assert!(iv.both.is_empty());
    }

    #[test]
    fn i1_empty_below_b_star() {
        let r = rates("0", "-3", "0", "0");
        assert!(r.i1().is_empty());
        // at a0 = -(2N-2) the raw formulas would give a nonempty interval
        let r = rates("-4", "-5", "0", "0");
        assert!(r.i1().is_empty());
    }

    #[test]
    fn float_rates_work() {
        let r = PotentialRates::from_f64(3, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(!r.is_exact());
        assert_eq!(r.q_upper_star().to_f64(), 6.0);
    }
}
