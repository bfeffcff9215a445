//! Risk statistics on discrete distributions.
//!
//! A [`StatisticSpec`] names one member of the families used to represent
//! pure-risk preferences (expectation, expected utility, dual utility,
//! rank-dependent utility, entropic and entropic mixtures). Raw values live on
//! the family's own scale; [`StatisticSpec::certainty_equivalent`] maps them
//! back to the outcome scale so that `δ_c` evaluates to `c`.

use serde::{Deserialize, Serialize};

use crate::distribution::DiscreteDistribution;
use crate::error::{domain, Error, Result};
use crate::sampling::Sampler;

/// Below this magnitude the entropic statistic uses its second-order expansion.
pub const ENTROPIC_SMALL_A: f64 = 1e-8;
/// Outcome-axis tolerance for certainty-equivalent bisection.
pub const BISECTION_TOL: f64 = 1e-10;
pub const BISECTION_MAX_ITER: usize = 200;
/// Grid step used to classify distortions as convex or concave.
pub const CONVEXITY_GRID: usize = 256;

/// An increasing utility function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum UtilitySpec {
    Identity {},
    /// `x ↦ (x - shift)^exponent` on `[shift, ∞)`.
    Power {
        exponent: f64,
        #[serde(default)]
        shift: f64,
    },
    /// `x ↦ (e^{ax} - 1) / a`, increasing for every `a ≠ 0`, concave for `a < 0`.
    Exponential {
        a: f64,
    },
    /// Linear interpolation through `points`, extended linearly past the ends.
    PiecewiseLinear {
        points: Vec<(f64, f64)>,
    },
}

impl UtilitySpec {
    /// Checks parameters and that the function is non-decreasing.
    pub fn validate_increasing(&self) -> Result<()> {
        match self {
            UtilitySpec::Identity {} => Ok(()),
            UtilitySpec::Power { exponent, shift } => {
                if !(exponent.is_finite() && *exponent > 0.0 && shift.is_finite()) {
                    return domain(format!(
                        "power utility needs a positive exponent, got {exponent}"
                    ));
                }
                Ok(())
            }
            UtilitySpec::Exponential { a } => {
                if *a == 0.0 || !a.is_finite() {
                    return domain("exponential utility needs a finite nonzero coefficient");
                }
                Ok(())
            }
            UtilitySpec::PiecewiseLinear { points } => validate_breakpoints(points, false),
        }
    }

    /// Checks that the function is a valid vNM utility: continuous and
    /// strictly increasing.
    pub fn validate(&self) -> Result<()> {
        self.validate_increasing()?;
        if let UtilitySpec::PiecewiseLinear { points } = self {
            validate_breakpoints(points, true)?;
        }
        Ok(())
    }

    /// Smallest admissible argument, if the domain is bounded below.
    pub fn domain_lower_bound(&self) -> Option<f64> {
        match self {
            UtilitySpec::Power { shift, .. } => Some(*shift),
            _ => None,
        }
    }

    pub fn check_domain(&self, x: f64) -> Result<()> {
        match self.domain_lower_bound() {
            Some(lb) if x < lb => domain(format!(
                "outcome {x} lies below the utility domain bound {lb}"
            )),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        match self {
            UtilitySpec::Identity {} => x,
            UtilitySpec::Power { exponent, shift } => (x - shift).max(0.0).powf(*exponent),
            UtilitySpec::Exponential { a } => (a * x).exp_m1() / a,
            UtilitySpec::PiecewiseLinear { points } => interpolate(points, x),
        }
    }

    /// Inverse on the image of the utility.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        match self {
            UtilitySpec::Identity {} => Ok(y),
            UtilitySpec::Power { exponent, shift } => {
                if y < 0.0 {
                    return domain(format!("{y} is outside the image of the power utility"));
                }
                Ok(shift + y.powf(1.0 / exponent))
            }
            UtilitySpec::Exponential { a } => {
                let arg = a * y;
                if arg <= -1.0 {
                    return domain(format!(
                        "{y} is outside the image of the exponential utility"
                    ));
                }
                Ok(arg.ln_1p() / a)
            }
            UtilitySpec::PiecewiseLinear { points } => {
                let swapped: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (y, x)).collect();
                validate_breakpoints(&swapped, true)?;
                Ok(interpolate(&swapped, y))
            }
        }
    }

    pub fn is_concave(&self) -> bool {
        match self {
            UtilitySpec::Identity {} => true,
            UtilitySpec::Power { exponent, .. } => *exponent <= 1.0,
            UtilitySpec::Exponential { a } => *a < 0.0,
            UtilitySpec::PiecewiseLinear { points } => {
                slopes(points).windows(2).all(|w| w[1] <= w[0])
            }
        }
    }

    pub fn is_convex(&self) -> bool {
        match self {
            UtilitySpec::Identity {} => true,
            UtilitySpec::Power { exponent, .. } => *exponent >= 1.0,
            UtilitySpec::Exponential { a } => *a > 0.0,
            UtilitySpec::PiecewiseLinear { points } => {
                slopes(points).windows(2).all(|w| w[1] >= w[0])
            }
        }
    }
}

/// A distortion `g : [0,1] → [0,1]`, strictly increasing with `g(0)=0`, `g(1)=1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistortionSpec {
    Identity {},
    /// `t ↦ t^exponent`; convex for exponents above one.
    Power {
        exponent: f64,
    },
    /// `t ↦ 1 - (1 - t)^exponent`; concave for exponents above one.
    DualPower {
        exponent: f64,
    },
    /// Interpolation through points that start at (0,0) and end at (1,1).
    PiecewiseLinear {
        points: Vec<(f64, f64)>,
    },
}

impl DistortionSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            DistortionSpec::Identity {} => Ok(()),
            DistortionSpec::Power { exponent } | DistortionSpec::DualPower { exponent } => {
                if !(exponent.is_finite() && *exponent > 0.0) {
                    return domain(format!(
                        "power distortion needs a positive exponent, got {exponent}"
                    ));
                }
                Ok(())
            }
            DistortionSpec::PiecewiseLinear { points } => {
                validate_breakpoints(points, true)?;
                let first = points[0];
                let last = points[points.len() - 1];
                if first != (0.0, 0.0) || last != (1.0, 1.0) {
                    return domain("piecewise-linear distortion must run from (0,0) to (1,1)");
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= 1.0 {
            return 1.0;
        }
        match self {
            DistortionSpec::Identity {} => t,
            DistortionSpec::Power { exponent } => t.powf(*exponent),
            DistortionSpec::DualPower { exponent } => 1.0 - (1.0 - t).powf(*exponent),
            DistortionSpec::PiecewiseLinear { points } => interpolate(points, t),
        }
    }

    fn second_differences(&self) -> impl Iterator<Item = f64> + '_ {
        let h = 1.0 / CONVEXITY_GRID as f64;
        (1..CONVEXITY_GRID).map(move |k| {
            let t = k as f64 * h;
            self.eval(t - h) - 2.0 * self.eval(t) + self.eval(t + h)
        })
    }

    /// Second-difference test on a 1/256 grid.
    pub fn is_convex(&self) -> bool {
        self.second_differences().all(|d| d >= -1e-12)
    }

    pub fn is_concave(&self) -> bool {
        self.second_differences().all(|d| d <= 1e-12)
    }
}

/// A risk statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum StatisticSpec {
    Expectation {},
    EU {
        utility: UtilitySpec,
    },
    DU {
        distortion: DistortionSpec,
    },
    RDU {
        utility: UtilitySpec,
        distortion: DistortionSpec,
    },
    /// `(1/a) log E[e^{aX}]`, the mean when `a = 0`.
    Entropic {
        a: f64,
    },
    /// Average of entropic statistics over a finite set of coefficients.
    EntropicMixture {
        pairs: Vec<(f64, f64)>,
    },
}

impl StatisticSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            StatisticSpec::Expectation {} => Ok(()),
            StatisticSpec::EU { utility } => utility.validate(),
            StatisticSpec::DU { distortion } => distortion.validate(),
            StatisticSpec::RDU {
                utility,
                distortion,
            } => {
                utility.validate()?;
                distortion.validate()
            }
            StatisticSpec::Entropic { a } => {
                if !a.is_finite() {
                    return domain("entropic coefficient must be finite");
                }
                Ok(())
            }
            StatisticSpec::EntropicMixture { pairs } => {
                if pairs.is_empty() {
                    return domain("entropic mixture needs at least one component");
                }
                if pairs
                    .iter()
                    .any(|&(a, w)| !(a.is_finite() && w.is_finite() && w > 0.0))
                {
                    return domain("entropic mixture weights must be positive");
                }
                let total: f64 = pairs.iter().map(|p| p.1).sum();
                if (total - 1.0).abs() > 1e-12 {
                    return domain(format!("entropic mixture weights sum to {total}"));
                }
                Ok(())
            }
        }
    }

    /// Utility scale of the statistic, when it has one. Expectation and dual
    /// utility sit on the identity scale; the entropic families have none.
    pub fn utility(&self) -> Option<UtilitySpec> {
        match self {
            StatisticSpec::Expectation {} | StatisticSpec::DU { .. } => {
                Some(UtilitySpec::Identity {})
            }
            StatisticSpec::EU { utility } | StatisticSpec::RDU { utility, .. } => {
                Some(utility.clone())
            }
            StatisticSpec::Entropic { .. } | StatisticSpec::EntropicMixture { .. } => None,
        }
    }

    /// `γ(Q ⊕ δ_a) = γ(Q) + a`.
    pub fn is_constant_additive(&self) -> bool {
        match self {
            StatisticSpec::Expectation {}
            | StatisticSpec::DU { .. }
            | StatisticSpec::Entropic { .. }
            | StatisticSpec::EntropicMixture { .. } => true,
            StatisticSpec::EU { utility } | StatisticSpec::RDU { utility, .. } => {
                *utility == UtilitySpec::Identity {}
            }
        }
    }

    /// `γ(a ⊗ Q) = a γ(Q)` for `a ≥ 0`.
    pub fn is_positively_homogeneous(&self) -> bool {
        match self {
            StatisticSpec::Expectation {} | StatisticSpec::DU { .. } => true,
            StatisticSpec::EU { utility } | StatisticSpec::RDU { utility, .. } => {
                *utility == UtilitySpec::Identity {}
            }
            StatisticSpec::Entropic { a } => *a == 0.0,
            StatisticSpec::EntropicMixture { pairs } => pairs.iter().all(|p| p.0 == 0.0),
        }
    }

    /// Outcome interval used when sampling distributions for property checks.
    pub fn sampling_range(&self) -> (f64, f64) {
        match self.utility().and_then(|u| u.domain_lower_bound()) {
            Some(lb) => (lb, lb + 10.0),
            None => (-5.0, 5.0),
        }
    }

    fn check_support(&self, d: &DiscreteDistribution) -> Result<()> {
        if let Some(u) = self.utility() {
            u.check_domain(d.min_value())?;
        }
        Ok(())
    }

    /// The statistic on its native scale.
    pub fn eval(&self, d: &DiscreteDistribution) -> Result<f64> {
        self.check_support(d)?;
        Ok(match self {
            StatisticSpec::Expectation {} => d.expectation(),
            StatisticSpec::EU { utility } => {
                d.atoms().map(|(v, w)| utility.eval_unchecked(v) * w).sum()
            }
            StatisticSpec::DU { distortion } => dual_utility(distortion, d),
            StatisticSpec::RDU {
                utility,
                distortion,
            } => dual_utility(distortion, &d.map_increasing(|v| utility.eval_unchecked(v))),
            StatisticSpec::Entropic { a } => entropic(*a, d),
            StatisticSpec::EntropicMixture { pairs } => {
                pairs.iter().map(|&(a, w)| w * entropic(a, d)).sum()
            }
        })
    }

    /// The unique `c` with `γ(δ_c) = γ(d)`.
    pub fn certainty_equivalent(&self, d: &DiscreteDistribution) -> Result<f64> {
        let raw = self.eval(d)?;
        self.certainty_equivalent_of_value(raw)
    }

    /// Maps a raw statistic value back to the outcome scale.
    pub fn certainty_equivalent_of_value(&self, raw: f64) -> Result<f64> {
        match self {
            StatisticSpec::EU { utility } | StatisticSpec::RDU { utility, .. } => {
                utility.inverse(raw).map_err(|e| {
                    Error::Internal(format!("statistic value has no certainty equivalent: {e}"))
                })
            }
            _ => Ok(raw),
        }
    }

    /// Certainty equivalent found by bisection on `c ↦ γ(δ_c)`, without the
    /// closed-form inverses.
    pub fn certainty_equivalent_by_bisection(&self, d: &DiscreteDistribution) -> Result<f64> {
        let target = self.eval(d)?;
        let (mut lo, mut hi) = (d.min_value(), d.max_value());
        if hi - lo <= BISECTION_TOL {
            return Ok(lo);
        }
        for _ in 0..BISECTION_MAX_ITER {
            if hi - lo <= BISECTION_TOL {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.eval(&DiscreteDistribution::point(mid))? < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Samples second-order ordered pairs `Q ≥_ssd P` and checks `γ(Q) ≥ γ(P)`.
    ///
    /// Pairs come from a mean-preserving spread of one atom of `Q`, followed
    /// with probability one half by an upward shift of `Q`.
    pub fn check_ssd_monotone(
        &self,
        trials: usize,
        seed: u64,
    ) -> Result<CheckReport<(DiscreteDistribution, DiscreteDistribution)>> {
        self.validate()?;
        let mut rng = Sampler::new(seed);
        let (lo, hi) = self.sampling_range();
        for trial in 0..trials {
            let (better, worse) = rng.ssd_ordered_pair(lo, hi);
            let gb = self.certainty_equivalent(&better)?;
            let gw = self.certainty_equivalent(&worse)?;
            if gb < gw - value_tol(gb, gw) {
                return Ok(CheckReport::failed(trial + 1, (better, worse)));
            }
        }
        Ok(CheckReport::passed(trials))
    }

    /// Samples `(Q, P, λ)` and checks
    /// `γ(λ ⊗ Q ⊕ (1-λ) ⊗ P) ≥ min{γ(Q), γ(P)}`.
    ///
    /// Half of the trials pit a two-point distribution against the point mass
    /// at its own certainty equivalent, which is where non-concave utilities
    /// fail.
    pub fn check_comonotonic_quasiconcave(
        &self,
        trials: usize,
        seed: u64,
    ) -> Result<CheckReport<(DiscreteDistribution, DiscreteDistribution, f64)>> {
        self.validate()?;
        let mut rng = Sampler::new(seed);
        let (lo, hi) = self.sampling_range();
        for trial in 0..trials {
            let p = rng.distribution(lo, hi, if trial % 2 == 0 { 2 } else { 5 });
            let q = if trial % 2 == 0 {
                DiscreteDistribution::point(self.certainty_equivalent(&p)?.max(lo))
            } else {
                rng.distribution(lo, hi, 5)
            };
            let lambda = rng.uniform(0.05, 0.95);
            if let Some(w) = quasiconcavity_violation(self, &q, &p, lambda)? {
                return Ok(CheckReport::failed(trial + 1, w));
            }
        }
        Ok(CheckReport::passed(trials))
    }
}

type QuasiconcavityWitness = (DiscreteDistribution, DiscreteDistribution, f64);

fn quasiconcavity_violation(
    spec: &StatisticSpec,
    q: &DiscreteDistribution,
    p: &DiscreteDistribution,
    lambda: f64,
) -> Result<Option<QuasiconcavityWitness>> {
    let mix = q.otimes(lambda)?.oplus(&p.otimes(1.0 - lambda)?);
    let gm = spec.certainty_equivalent(&mix)?;
    let floor = spec
        .certainty_equivalent(q)?
        .min(spec.certainty_equivalent(p)?);
    if gm < floor - value_tol(gm, floor) {
        Ok(Some((q.clone(), p.clone(), lambda)))
    } else {
        Ok(None)
    }
}

fn value_tol(a: f64, b: f64) -> f64 {
    1e-10 * (1.0 + a.abs().max(b.abs()))
}

/// Dual utility as a finite sum over the survival steps, which covers the
/// negative part of the integral as well.
fn dual_utility(g: &DistortionSpec, d: &DiscreteDistribution) -> f64 {
    let mut prev = 1.0;
    let mut acc = 0.0;
    for (&v, &s) in d.values().iter().zip(d.survival_levels()) {
        let gs = g.eval(s);
        acc += v * (prev - gs);
        prev = gs;
    }
    acc
}

fn entropic(a: f64, d: &DiscreteDistribution) -> f64 {
    if a.abs() < ENTROPIC_SMALL_A {
        return d.expectation() + 0.5 * a * d.variance();
    }
    let top = d
        .values()
        .iter()
        .map(|&v| a * v)
        .fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = d.atoms().map(|(v, w)| w * (a * v - top).exp()).sum();
    (top + sum.ln()) / a
}

/// Result of a sampled property check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport<W> {
    /// Number of trials evaluated, including the failing one.
    pub trials: usize,
    pub witness: Option<W>,
}

impl<W> CheckReport<W> {
    pub fn passed(trials: usize) -> Self {
        Self {
            trials,
            witness: None,
        }
    }

    pub fn failed(trials: usize, witness: W) -> Self {
        Self {
            trials,
            witness: Some(witness),
        }
    }

    pub fn is_passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn slopes(points: &[(f64, f64)]) -> Vec<f64> {
    points
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .collect()
}

fn validate_breakpoints(points: &[(f64, f64)], strict: bool) -> Result<()> {
    if points.len() < 2 {
        return domain("piecewise-linear functions need at least two points");
    }
    if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return domain("piecewise-linear breakpoints must be finite");
    }
    for w in points.windows(2) {
        if w[1].0 <= w[0].0 {
            return domain("piecewise-linear abscissae must be strictly increasing");
        }
        if w[1].1 < w[0].1 || (strict && w[1].1 == w[0].1) {
            return domain(if strict {
                "piecewise-linear function must be strictly increasing"
            } else {
                "piecewise-linear function must be non-decreasing"
            });
        }
    }
    Ok(())
}

fn interpolate(points: &[(f64, f64)], x: f64) -> f64 {
    let k = points.partition_point(|p| p.0 < x);
    if k < points.len() && points[k].0 == x {
        return points[k].1;
    }
    let seg = k.clamp(1, points.len() - 1);
    let (x0, y0) = points[seg - 1];
    let (x1, y1) = points[seg];
    y0 + (x - x0) * (y1 - y0) / (x1 - x0)
}
