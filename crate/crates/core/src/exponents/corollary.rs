//! The double-power corollary: the super-linear case without compatibility,
//! `I1 ∩ I2 = ∅`, where `q1` and `q2` must be genuinely different.

use super::{two_times, PotentialRates};
use crate::real::{ExtReal, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryHypothesis {
    /// `a <= -2` and `b >= max{2((N-2)b0 - (N-1)(a0+2))/(2N-2+a0), b0}`.
    SmallA,
    /// `b > a > -2` and
    /// `(b-a)/(2N-2+a) >= max{(b0-a0)/(2N-2+a0), (b0+2)/(2(N-2))}`.
    LargeA,
}

/// Bounds `2 < q1 < q1_bound` and `q2 > q2_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryBounds {
    pub hypothesis: CorollaryHypothesis,
    /// Piecewise form of the upper bound for `q1`.
    pub q1_bound: ExtReal,
    /// Piecewise form of the lower bound for `q2`.
    pub q2_bound: ExtReal,
    /// `max{2(N+b0)/(N-2), 2(2N-2+2b0-a0)/(2N-2+a0)}` as written.
    pub q1_bound_literal: Real,
    /// `min{2(N+b)/(N-2), 2(2N-2+2b-a)/(2N-2+a)}` as written; `None` when
    /// `2N-2+a <= 0`, where the second term has no meaning (possible under
    /// [`CorollaryHypothesis::SmallA`]).
    pub q2_bound_literal: Option<Real>,
}

impl CorollaryBounds {
    /// Whether the bounds coincide with `(q_upper_star, q_double_star)`,
    /// the literal min/max forms agree with the piecewise forms, and
    /// `q1_bound <= q2_bound`.
    pub fn is_consistent(&self, r: &PotentialRates) -> bool {
        let literal_ok = ExtReal::Finite(self.q1_bound_literal.clone()) == self.q1_bound
            && self
                .q2_bound_literal
                .as_ref()
                .is_none_or(|v| ExtReal::Finite(v.clone()) == self.q2_bound);
        literal_ok
            && self.q1_bound == r.q_upper_star()
            && self.q2_bound == r.q_double_star()
            && self.q1_bound <= self.q2_bound
    }
}

/// Which corollary hypothesis holds, if any (including `a0 > -(2N-2)` and
/// `b0 > min{a0, -2}`).
pub fn corollary_hypothesis(r: &PotentialRates) -> Option<CorollaryHypothesis> {
    let n = r.n();
    let m = r.two_n_minus_two();
    let two = Real::int(2);
    let minus_two = Real::int(-2);
    let (a0, b0, a, b) = (&r.a0, &r.b0, &r.a, &r.b);
    if !(*a0 > -m.clone() && *b0 > a0.clone().min(minus_two.clone())) {
        return None;
    }
    if *a <= minus_two {
        let n_minus_one = &n - &Real::int(1);
        let numer = (&n - &two) * b0 - n_minus_one * (a0 + &two);
        let bound = two_times(numer, &m + a0).max(b0.clone());
        (*b >= bound).then_some(CorollaryHypothesis::SmallA)
    } else if *b > *a {
        let lhs = (b - a) / (&m + a);
        let rhs = ((b0 - a0) / (&m + a0)).max((b0 + &two) / (two.clone() * (&n - &two)));
        (lhs >= rhs).then_some(CorollaryHypothesis::LargeA)
    } else {
        None
    }
}

/// Corollary bounds when its hypotheses hold.
///
/// The lower bound for `q2` is returned in its piecewise form. Under
/// `a <= -2` with `a <= -(2N-2)` the literal `min{..}` form would divide by a
/// non-positive number, while the piecewise value `2(N+b)/(N-2)` still equals
/// `q_double_star`.
pub fn corollary_double(r: &PotentialRates) -> Option<CorollaryBounds> {
    let hypothesis = corollary_hypothesis(r)?;
    let n = r.n();
    let m = r.two_n_minus_two();
    let two = Real::int(2);
    let (a0, b0, a, b) = (&r.a0, &r.b0, &r.a, &r.b);

    let cup_first = two_times(&n + b0, &n - &two);
    let cup_second = two_times(&m + &(&two * b0) - a0, &m + a0);
    let q1_bound_literal = cup_first.clone().max(cup_second.clone());
    let q1_bound = if *a0 < Real::int(-2) {
        cup_second
    } else {
        cup_first
    };

    let cdwn_first = two_times(&n + b, &n - &two);
    let m_plus_a = &m + a;
    let cdwn_second = (!m_plus_a.is_negative() && !m_plus_a.is_zero())
        .then(|| two_times(&m + &(&two * b) - a, m_plus_a));
    let q2_bound_literal = cdwn_second
        .clone()
        .map(|second| cdwn_first.clone().min(second));
    let q2_bound = match hypothesis {
        CorollaryHypothesis::SmallA => cdwn_first,
        CorollaryHypothesis::LargeA => cdwn_second.expect("2N-2+a > 0 when a > -2"),
    };

    let bounds = CorollaryBounds {
        hypothesis,
        q1_bound: ExtReal::Finite(q1_bound),
        q2_bound: ExtReal::Finite(q2_bound),
        q1_bound_literal,
        q2_bound_literal,
    };
    if r.is_exact() {
        assert!(
            bounds.is_consistent(r),
            "corollary bounds disagree with the interval endpoints at {r}"
        );
    }
    Some(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rates(a0: &str, b0: &str, a: &str, b: &str) -> PotentialRates {
        PotentialRates::parse(3, a0, b0, a, b).unwrap()
    }

    #[test]
    fn small_a_example() {
        let c = rates("0", "0", "-2", "1").corollary_double().unwrap();
        assert_eq!(c.hypothesis, CorollaryHypothesis::SmallA);
        assert_eq!(c.q1_bound, ExtReal::int(6));
        assert_eq!(c.q2_bound, ExtReal::int(8));
    }

    #[test]
    fn classical_rates_not_applicable() {
        assert!(rates("0", "0", "0", "0").corollary_double().is_none());
    }

    #[test]
    fn large_a_example() {
        // a = 0, b = 1: (b-a)/(2N-2+a) = 1/4 >= max{0, 2/2 = 1}? no.
        assert!(rates("0", "0", "0", "1").corollary_double().is_none());
        // b = 4: 4/4 = 1 >= 1
        let c = rates("0", "0", "0", "4").corollary_double().unwrap();
        assert_eq!(c.hypothesis, CorollaryHypothesis::LargeA);
        // 2(4 + 8 - 0)/4 = 6
        assert_eq!(c.q2_bound, ExtReal::int(6));
        assert!(c.is_consistent(&rates("0", "0", "0", "4")));
    }

    #[test]
    fn literal_min_undefined_for_very_negative_a() {
        // a = -5 <= -(2N-2) = -4: literal second term meaningless
        let r = rates("0", "0", "-5", "3");
        let c = r.corollary_double().unwrap();
        assert!(c.q2_bound_literal.is_none());
        assert_eq!(c.q2_bound, r.q_double_star());
    }

    #[test]
    fn intersecting_intervals_never_apply() {
        for (a0, b0, a, b) in [("0", "0", "0", "0"), ("-1", "0", "-3", "-1"), ("0", "1", "1", "1")] {
            let r = rates(a0, b0, a, b);
            if !r.intervals().both.is_empty() {
                assert!(r.corollary_double().is_none(), "{r}");
            }
        }
    }
}
