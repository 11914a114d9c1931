//! Tabulated exponent curves: `q_star(a0, ·)`, `q_upper_star(a0, ·)` over
//! `b0` and `q_double_star(a, ·)` over `b`, with exact breakpoints.

use std::fmt;
use std::str::FromStr;

use super::PotentialRates;
use crate::error::{Error, Result};
use crate::real::{ExtReal, Real};

/// The eight fixed-parameter regimes in which the curves change shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `a0 < -(2N-2)`
    A0BelowCritical,
    /// `a0 = -(2N-2)`
    A0AtCritical,
    /// `-(2N-2) < a0 < -N`
    A0BetweenCriticalAndN,
    /// `a0 = -N`
    A0AtN,
    /// `-N < a0 < -2`
    A0BetweenNAndTwo,
    /// `a0 >= -2`
    A0AtLeastTwo,
    /// `a <= -2`
    AAtMostTwo,
    /// `a > -2`
    AAboveTwo,
}

impl Regime {
    pub const ALL: [Regime; 8] = [
        Regime::A0BelowCritical,
        Regime::A0AtCritical,
        Regime::A0BetweenCriticalAndN,
        Regime::A0AtN,
        Regime::A0BetweenNAndTwo,
        Regime::A0AtLeastTwo,
        Regime::AAtMostTwo,
        Regime::AAboveTwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::A0BelowCritical => "a0-below-critical",
            Regime::A0AtCritical => "a0-at-critical",
            Regime::A0BetweenCriticalAndN => "a0-between-critical-and-n",
            Regime::A0AtN => "a0-at-n",
            Regime::A0BetweenNAndTwo => "a0-between-n-and-two",
            Regime::A0AtLeastTwo => "a0-at-least-two",
            Regime::AAtMostTwo => "a-at-most-two",
            Regime::AAboveTwo => "a-above-two",
        }
    }

    pub fn condition(self) -> &'static str {
        match self {
            Regime::A0BelowCritical => "a0 < -(2N-2)",
            Regime::A0AtCritical => "a0 = -(2N-2)",
            Regime::A0BetweenCriticalAndN => "-(2N-2) < a0 < -N",
            Regime::A0AtN => "a0 = -N",
            Regime::A0BetweenNAndTwo => "-N < a0 < -2",
            Regime::A0AtLeastTwo => "a0 >= -2",
            Regime::AAtMostTwo => "a <= -2",
            Regime::AAboveTwo => "a > -2",
        }
    }

    /// Whether the curves are functions of `b0` at fixed `a0`.
    pub fn fixes_a0(self) -> bool {
        !matches!(self, Regime::AAtMostTwo | Regime::AAboveTwo)
    }

    /// Regime of a fixed `a0` (`at_zero`) or fixed `a`.
    pub fn classify(dim: u32, fixed: &Real, at_zero: bool) -> Regime {
        let n = Real::int(dim as i64);
        let crit = -Real::int(2 * dim as i64 - 2);
        let minus_two = Real::int(-2);
        if !at_zero {
            return if *fixed <= minus_two {
                Regime::AAtMostTwo
            } else {
                Regime::AAboveTwo
            };
        }
        if *fixed < crit {
            Regime::A0BelowCritical
        } else if *fixed == crit {
            Regime::A0AtCritical
        } else if *fixed < -n.clone() {
            Regime::A0BetweenCriticalAndN
        } else if *fixed == -n {
            Regime::A0AtN
        } else if *fixed < minus_two {
            Regime::A0BetweenNAndTwo
        } else {
            Regime::A0AtLeastTwo
        }
    }

    /// A representative fixed parameter inside the regime.
    pub fn representative(self, dim: u32) -> Real {
        let n = dim as i64;
        match self {
            Regime::A0BelowCritical => Real::int(-(2 * n - 2) - 1),
            Regime::A0AtCritical => Real::int(-(2 * n - 2)),
            Regime::A0BetweenCriticalAndN => Real::ratio(-(3 * n - 2), 2),
            Regime::A0AtN => Real::int(-n),
            Regime::A0BetweenNAndTwo => Real::ratio(-(n + 2), 2),
            Regime::A0AtLeastTwo => Real::int(0),
            Regime::AAtMostTwo => Real::int(-3),
            Regime::AAboveTwo => Real::int(0),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Regime::ALL.iter().map(|r| r.name()).collect();
                Error::InvalidInput(format!("unknown regime {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub dim: u32,
    pub regime: Regime,
    /// The fixed `a0` or `a`; must lie in `regime`.
    pub fixed: Real,
    pub lo: Real,
    pub hi: Real,
    pub samples: usize,
}

/// One table row. `None` marks an undefined value (`b0 <= b_star`).
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub abscissa: Real,
    pub values: Vec<Option<ExtReal>>,
}

impl CurveSpec {
    pub fn column_names(&self) -> Vec<&'static str> {
        if self.regime.fixes_a0() {
            vec!["b0", "q_star", "q_upper_star"]
        } else {
            vec!["b", "q_double_star"]
        }
    }

    fn rates_at(&self, x: &Real) -> PotentialRates {
        let zero = Real::int(0);
        let r = if self.regime.fixes_a0() {
            PotentialRates::new(self.dim, self.fixed.clone(), x.clone(), zero.clone(), zero)
        } else {
            PotentialRates::new(self.dim, zero.clone(), zero, self.fixed.clone(), x.clone())
        };
        r.expect("validated dimension and finite rates")
    }

    fn evaluate(&self, x: &Real) -> Vec<Option<ExtReal>> {
        let r = self.rates_at(x);
        if self.regime.fixes_a0() {
            if ExtReal::Finite(x.clone()) > r.b_star() {
                vec![Some(r.q_star()), Some(r.q_upper_star())]
            } else {
                vec![None, None]
            }
        } else {
            vec![Some(r.q_double_star())]
        }
    }

    /// Affine pieces (as functions of the abscissa) of every branch formula
    /// valid at the fixed parameter, given by their values at 0 and 1.
    fn pieces(&self) -> Vec<(Real, Real)> {
        let dim = self.dim as i64;
        let n = Real::int(dim);
        let m = Real::int(2 * dim - 2);
        let two = Real::int(2);
        let c = &self.fixed;
        let mut out = vec![(Real::int(1), Real::int(1))];
        let mut push = |num: &dyn Fn(&Real) -> Real, den: Real| {
            if !den.is_zero() {
                let at0 = two.clone() * num(&Real::int(0)) / den.clone();
                let at1 = two.clone() * num(&Real::int(1)) / den;
                out.push((at0, at1));
            }
        };
        push(&|x| &n + x, &n + c);
        push(&|x| &m + &(Real::int(2) * x) - c, &m + c);
        push(&|x| &n + x, &n - &two);
        out
    }

    /// Abscissae in `[lo, hi]` where two pieces cross, plus `b_star` and
    /// `b_lower` for fixed `a0`.
    pub fn breakpoints(&self) -> Vec<Real> {
        let pieces = self.pieces();
        let mut out = Vec::new();
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let (p0, p1) = &pieces[i];
                let (q0, q1) = &pieces[j];
                let slope_diff = (p1 - p0) - (q1 - q0);
                if !slope_diff.is_zero() {
                    out.push((q0 - p0) / slope_diff);
                }
            }
        }
        if self.regime.fixes_a0() {
            let r = self.rates_at(&Real::int(0));
            for v in [r.b_star(), r.b_lower()] {
                if let ExtReal::Finite(v) = v {
                    out.push(v);
                }
            }
        } else {
            out.push(Real::int(-2));
        }
        out.retain(|x| self.lo <= *x && *x <= self.hi);
        out
    }
}

/// Tabulates the curves of `spec` on `samples` equispaced abscissae plus the
/// breakpoints, sorted and without duplicates. `lo > hi` yields no rows.
pub fn exponent_curves(spec: &CurveSpec) -> Result<Vec<CurveRow>> {
    if spec.dim < 3 {
        return Err(Error::InvalidInput(format!("dimension must be >= 3, got {}", spec.dim)));
    }
    if spec.samples < 2 {
        return Err(Error::InvalidInput("at least two samples are required".into()));
    }
    let actual = Regime::classify(spec.dim, &spec.fixed, spec.regime.fixes_a0());
    if actual != spec.regime {
        return Err(Error::InvalidInput(format!(
            "fixed value {} lies in regime {} ({}), not {} ({})",
            spec.fixed,
            actual,
            actual.condition(),
            spec.regime,
            spec.regime.condition()
        )));
    }
    if spec.lo > spec.hi {
        return Ok(Vec::new());
    }
    let mut xs = if spec.lo == spec.hi {
        vec![spec.lo.clone()]
    } else {
        let steps = Real::int(spec.samples as i64 - 1);
        let width = &spec.hi - &spec.lo;
        (0..spec.samples)
            .map(|k| &spec.lo + &(Real::int(k as i64) * &width / &steps))
            .collect()
    };
    xs.extend(spec.breakpoints());
    xs.sort_by(|x, y| x.partial_cmp(y).expect("finite abscissae"));
    xs.dedup();
    Ok(xs
        .into_iter()
        .map(|x| CurveRow {
            values: spec.evaluate(&x),
            abscissa: x,
        })
        .collect())
}
