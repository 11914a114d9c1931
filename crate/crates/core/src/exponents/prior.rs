//! Limiting exponents of the two earlier existence results that the
//! double-power theory contains: the super-linear pair `(q_lower, q_upper)`
//! requiring `b0 > b_lower(a0)` and the sub-linear pair defined on the
//! regions `A1..A5` x `B1..B6`.

use std::fmt;

use super::{four_times, two_times, PotentialRates};
use crate::real::{ExtReal, Real};

/// Super-linear limiting exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperPowerExponents {
    pub q_lower: ExtReal,
    pub q_upper: ExtReal,
    /// Which row of the `q_lower` table was used (1-based).
    pub lower_row: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ARegion {
    A1,
    A2,
    A3,
    A4,
    A5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BRegion {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
}

impl fmt::Display for ARegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl fmt::Display for BRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Sub-linear limiting exponents with every matching region label.
#[derive(Clone, Debug, PartialEq)]
pub struct SubPowerExponents {
    pub a_regions: Vec<ARegion>,
    pub b_regions: Vec<BRegion>,
    pub q_lower: ExtReal,
    pub q_upper: ExtReal,
    /// Disagreements between label combinations when regions overlap.
    pub conflicts: Vec<String>,
}

pub(super) fn super_power(r: &PotentialRates) -> Option<SuperPowerExponents> {
    let b0 = ExtReal::Finite(r.b0.clone());
    if b0 <= r.b_lower() {
        return None;
    }
    let n = r.n();
    let m = r.two_n_minus_two();
    let two = Real::int(2);
    let (a0, b0, a, b) = (&r.a0, &r.b0, &r.a, &r.b);

    let at_infinity_small_a = || two_times(&n + b, &n - &two);
    let at_infinity_large_a = || two_times(&m + &(&two * b) - a, &m + a);
    let origin_term = || two_times(&m + &(&two * b0) - a0, &m + a0);
    let above_min = *b0 > Real::int(-2).min(a0.clone());
    let below_a0 = *b0 <= *a0 && *a0 < -m.clone();

    let (lower, row) = if *a <= Real::int(-2) && above_min {
        (two.clone().max(at_infinity_small_a()), 1)
    } else if *a <= Real::int(-2) && below_a0 {
        (two.clone().max(at_infinity_small_a()).max(origin_term()), 2)
    } else if *a > Real::int(-2) && above_min {
        (two.clone().max(at_infinity_large_a()), 3)
    } else if *a > Real::int(-2) && below_a0 {
        (two.clone().max(at_infinity_large_a()).max(origin_term()), 4)
    } else {
        // b0 > b_lower(a0) always lands in one of the rows above.
        unreachable!("q_lower table does not cover {r}");
    };

    let upper = if *a0 < -m.clone() || (*a0 == -m.clone() && *b0 > *a0) {
        ExtReal::PosInf
    } else if -m.clone() < *a0 && *a0 < Real::int(-2) && *b0 > *a0 {
        ExtReal::Finite(origin_term())
    } else if *a0 >= Real::int(-2) && *b0 > Real::int(-2) {
        ExtReal::Finite(two_times(&n + b0, &n - &two))
    } else {
        unreachable!("q_upper table does not cover {r}");
    };

    Some(SuperPowerExponents {
        q_lower: ExtReal::Finite(lower),
        q_upper: upper,
        lower_row: row,
    })
}

/// All regions `A_i` containing `(a, b)`, inequalities exactly as stated.
pub fn a_regions(r: &PotentialRates) -> Vec<ARegion> {
    let (a, b) = (&r.a, &r.b);
    let lo = r.minus_half_n_plus_two();
    let half = (a - &Real::int(2)) / Real::int(2);
    let quarter = (a - &Real::int(2 * r.dim as i64 + 2)) / Real::int(4);
    let minus_two = Real::int(-2);
    let mut out = Vec::new();
    if lo.clone().max(half.clone()) <= *b && *b < minus_two {
        out.push(ARegion::A1);
    }
    if lo <= *b && *b < minus_two.clone().min(quarter.clone()) {
        out.push(ARegion::A2);
    }
    if *a <= minus_two && lo < *b && *b < half {
        out.push(ARegion::A3);
    }
    if *b <= lo && quarter <= *b && *b < half {
        out.push(ARegion::A4);
    }
    if *a > minus_two && quarter <= *b && *b < half {
        out.push(ARegion::A5);
    }
    out
}

/// All regions `B_j` containing `(a0, b0)`, inequalities exactly as stated.
pub fn b_regions(r: &PotentialRates) -> Vec<BRegion> {
    let (a0, b0) = (&r.a0, &r.b0);
    let lo = r.minus_half_n_plus_two();
    let half = (a0 - &Real::int(2)) / Real::int(2);
    let quarter = (a0 - &Real::int(2 * r.dim as i64 + 2)) / Real::int(4);
    let minus_two = Real::int(-2);
    let mut out = Vec::new();
    if lo.clone().max(half.clone()) < *b0 && *b0 <= minus_two {
        out.push(BRegion::B1);
    }
    if lo < *b0 && *b0 <= minus_two && minus_two <= *a0 {
        out.push(BRegion::B2);
    }
    if *a0 < minus_two && lo < *b0 && *b0 <= half {
        out.push(BRegion::B3);
    }
    if *b0 < lo && quarter < *b0 && *b0 <= half {
        out.push(BRegion::B4);
    }
    if *b0 >= minus_two && quarter < *b0 && *b0 <= half {
        out.push(BRegion::B5);
    }
    if half < *b0 && *b0 <= quarter {
        out.push(BRegion::B6);
    }
    out
}

pub(super) fn sub_power(r: &PotentialRates) -> Option<SubPowerExponents> {
    let a_regions = a_regions(r);
    let b_regions = b_regions(r);
    if a_regions.is_empty() || b_regions.is_empty() {
        return None;
    }
    let n = r.n();
    let m = r.two_n_minus_two();
    let two = Real::int(2);
    let (a0, b0, a, b) = (&r.a0, &r.b0, &r.a, &r.b);

    let lower_for = |ar: ARegion, br: BRegion| -> Real {
        let infinity_part = match ar {
            ARegion::A1 | ARegion::A2 | ARegion::A3 => two_times(&n + b, &n - &two),
            ARegion::A4 | ARegion::A5 => four_times(&n + b, &m + a),
        };
        match br {
            BRegion::B6 => infinity_part.max(four_times(&n + b0, &m + a0)),
            _ => infinity_part,
        }
    };
    let upper_for = |br: BRegion| -> Real {
        match br {
            BRegion::B1 | BRegion::B2 => two_times(&n + b0, &n - &two),
            BRegion::B3 | BRegion::B4 | BRegion::B5 => four_times(&n + b0, &m + a0),
            BRegion::B6 => two.clone(),
        }
    };

    let mut conflicts = Vec::new();
    let q_lower = lower_for(a_regions[0], b_regions[0]);
    for &ar in &a_regions {
        for &br in &b_regions {
            let v = lower_for(ar, br);
            if v != q_lower {
                conflicts.push(format!(
                    "q_lower differs: ({}, {}) gives {} but ({}, {}) gives {}",
                    a_regions[0], b_regions[0], q_lower, ar, br, v
                ));
            }
        }
    }
    let q_upper = upper_for(b_regions[0]);
    for &br in &b_regions[1..] {
        let v = upper_for(br);
        if v != q_upper {
            conflicts.push(format!(
                "q_upper differs: {} gives {} but {} gives {}",
                b_regions[0], q_upper, br, v
            ));
        }
    }

    Some(SubPowerExponents {
        a_regions,
        b_regions,
        q_lower: ExtReal::Finite(q_lower),
        q_upper: ExtReal::Finite(q_upper),
        conflicts,
    })
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
    fn classical_rates() {
        let r = rates("0", "0", "0", "0");
        let sup = r.super_power_exponents().unwrap();
        assert_eq!(sup.q_lower, q("2"));
        assert_eq!(sup.q_upper, q("6"));
        // (0,0) satisfies none of the A-region inequalities
        assert!(a_regions(&r).is_empty());
        assert!(r.sub_power_exponents().is_none());
    }

    #[test]
    fn p_minus_p1_example() {
        let r = rates("-5", "-2.45", "-1", "-2.4");
        let sub = r.sub_power_exponents().unwrap();
        assert_eq!(sub.a_regions, vec![ARegion::A2]);
        assert_eq!(sub.b_regions, vec![BRegion::B1]);
        assert_eq!(sub.q_lower, q("1.2"));
        assert_eq!(sub.q_upper, q("1.1"));
        assert!(sub.q_lower >= sub.q_upper);
        assert!(sub.conflicts.is_empty());
    }

    #[test]
    fn super_undefined_at_or_below_b_lower() {
        assert!(rates("0", "-2", "0", "0").super_power_exponents().is_none());
        assert!(rates("0", "-3", "0", "0").super_power_exponents().is_none());
    }

    #[test]
    fn super_infinite_upper_for_very_negative_a0() {
        let sup = rates("-10", "-3", "0", "0").super_power_exponents().unwrap();
        assert_eq!(sup.q_upper, ExtReal::PosInf);
        assert!(sup.q_lower >= q("2"));
    }

    #[test]
    fn super_row_two_and_four() {
        // b0 <= a0 < -(2N-2)
        let sup = rates("-6", "-7", "-3", "-4").super_power_exponents().unwrap();
        assert_eq!(sup.lower_row, 2);
        let sup = rates("-6", "-7", "0", "0").super_power_exponents().unwrap();
        assert_eq!(sup.lower_row, 4);
        // 2(4 - 14 + 6)/(4 - 6) = 4
        assert_eq!(sup.q_lower, q("4"));
    }

    #[test]
    fn b6_region() {
        // (a0-2)/2 < b0 <= (a0-8)/4 needs a0 < -4; a0 = -10: -6 < b0 <= -4.5
        let r = rates("-10", "-5", "-3", "-2.4");
        assert_eq!(b_regions(&r), vec![BRegion::B6]);
    }
}
