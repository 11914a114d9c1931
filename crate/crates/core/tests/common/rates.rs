//! Random rational rates and the interval facts they must satisfy.

use radial_nls::exponents::PotentialRates;
use radial_nls::real::{ExtReal, OpenInterval, Real};
use rand::Rng;

const DENOMINATORS: [i64; 6] = [1, 2, 3, 4, 6, 8];

/// A rational in roughly `[-span, span]` with a small denominator, so that
/// branch boundaries (integers and halves) are hit often.
pub fn random_rational<R: Rng>(rng: &mut R, span: i64) -> Real {
    let den = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
    let num = rng.gen_range(-span * den..=span * den);
    Real::ratio(num, den)
}

pub fn random_rates<R: Rng>(rng: &mut R, dim: u32) -> PotentialRates {
    let span = 2 * dim as i64 + 4;
    PotentialRates::new(
        dim,
        random_rational(rng, span),
        random_rational(rng, span),
        random_rational(rng, span),
        random_rational(rng, span),
    )
    .unwrap()
}

fn open(lo: i64, hi: Option<i64>) -> OpenInterval {
    OpenInterval::new(ExtReal::int(lo), hi.map_or(ExtReal::PosInf, ExtReal::int))
}

fn iff(name: &str, lhs: bool, rhs: bool, r: &PotentialRates) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{name}: left {lhs} right {rhs} at {r}"))
    }
}

/// The six interval facts plus the identity with the single-power
/// super-linear range.
pub fn check_interval_facts(r: &PotentialRates) -> Result<(), String> {
    let iv = r.intervals();
    let b0 = ExtReal::Finite(r.b0().clone());
    let above_two = open(2, None);
    let one_two = open(1, Some(2));
    let one_inf = open(1, None);

    iff("I1 nonempty <=> b0 > b_star", !iv.i1.is_empty(), b0 > r.b_star(), r)?;
    // The raw endpoint formulas also give a nonempty interval for some
    // b0 <= b_star when a0 is -(2N-2) or -N; elsewhere they agree.
    let crit = -Real::int(2 * r.dim() as i64 - 2);
    let minus_n = -Real::int(r.dim() as i64);
    if *r.a0() != crit && *r.a0() != minus_n {
        let raw = OpenInterval::new(r.q_star(), r.q_upper_star());
        iff("raw (q_star, q_upper_star) nonempty <=> b0 > b_star", !raw.is_empty(), b0 > r.b_star(), r)?;
    }
    if !iv.i1.is_subset_of(&one_inf) || !iv.i2.is_subset_of(&one_inf) {
        return Err(format!("I1 = {} or I2 = {} leaves (1, inf) at {r}", iv.i1, iv.i2));
    }
    iff(
        "I1 ∩ (2,inf) nonempty <=> b0 > b_lower",
        !iv.i1.intersect(&above_two).is_empty(),
        b0 > r.b_lower(),
        r,
    )?;
    if iv.i2.intersect(&above_two).is_empty() {
        return Err(format!("I2 ∩ (2,inf) empty at {r}"));
    }
    iff(
        "I1 ∩ (1,2) nonempty <=> b0 > min{a0,-(N-a0)/2,-(N+2)/2}",
        !iv.i1.intersect(&one_two).is_empty(),
        *r.b0() > r.sublinear_b0_bound(),
        r,
    )?;
    iff(
        "I2 ∩ (1,2) nonempty <=> b < max{a,-2}",
        !iv.i2.intersect(&one_two).is_empty(),
        *r.b() < r.a().clone().max(Real::int(-2)),
        r,
    )?;

    if b0 > r.b_lower() {
        let sup = r
            .super_power_exponents()
            .ok_or_else(|| format!("single-power super-linear exponents undefined at {r}"))?;
        if sup.q_lower < Real::int(2) || sup.q_upper <= Real::int(2) {
            return Err(format!("range check q_lower >= 2, q_upper > 2 fails at {r}"));
        }
        let compatible = sup.q_lower < sup.q_upper;
        iff("I1 ∩ I2 nonempty <=> q_lower < q_upper", !iv.both.is_empty(), compatible, r)?;
        if compatible {
            let lhs = iv.both.intersect(&above_two);
            let rhs = OpenInterval::new(sup.q_lower.clone(), sup.q_upper.clone());
            if lhs != rhs {
                return Err(format!("I1 ∩ I2 ∩ (2,inf) = {lhs} but (q_lower, q_upper) = {rhs} at {r}"));
            }
        }
    } else if r.super_power_exponents().is_some() {
        return Err(format!("super-linear exponents defined with b0 <= b_lower at {r}"));
    }

    Ok(())
}

/// Threshold order and the sub-linear range facts.
pub fn check_secondary_facts(r: &PotentialRates) -> Result<(), String> {
    let (b_lower, b_star) = r.threshold_exponents();
    if b_star > b_lower {
        return Err(format!("b_star > b_lower at {r}"));
    }
    let equal = b_star == b_lower;
    iff("b_star = b_lower <=> a0 <= -N", equal, *r.a0() <= -Real::int(r.dim() as i64), r)?;

    if let Some(sub) = r.sub_power_exponents() {
        // The only overlap with disagreeing formulas: B2 and B5 share the
        // segment b0 = -2, -2 < a0 < 2N-6, where they give 2 and
        // 4(N-2)/(2N-2+a0).
        let expected_conflict = *r.b0() == Real::int(-2)
            && *r.a0() > Real::int(-2)
            && *r.a0() < Real::int(2 * r.dim() as i64 - 6);
        if sub.conflicts.is_empty() == expected_conflict {
            return Err(format!("unexpected region conflicts {:?} at {r}", sub.conflicts));
        }
        let (lo, hi) = (&sub.q_lower, &sub.q_upper);
        if !(*lo >= Real::int(1) && *lo < Real::int(2) && *hi > Real::int(1) && *hi <= Real::int(2)) {
            return Err(format!("sub-linear range check fails: ({lo}, {hi}) at {r}"));
        }
        if lo < hi {
            let range = OpenInterval::new(lo.clone(), hi.clone());
            let target = r.intervals().both.intersect(&open(1, Some(2)));
            if !range.is_subset_of(&target) {
                return Err(format!("({lo}, {hi}) not inside I1 ∩ I2 ∩ (1,2) = {target} at {r}"));
            }
        }
    }

    if let Some(c) = r.corollary_double() {
        if !c.is_consistent(r) {
            return Err(format!("corollary bounds inconsistent at {r}: {c:?}"));
        }
    }
    Ok(())
}
