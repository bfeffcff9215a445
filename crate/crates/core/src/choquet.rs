//! Acts, act-to-distribution maps and Choquet integrals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::capacity::{Event, FiniteCapacity, ProbabilityVector};
use crate::distribution::DiscreteDistribution;
use crate::error::{check_dim, domain, Error, Result};
use crate::sampling::Sampler;
use crate::statistic::CheckReport;

/// Core minima within this distance of the previous chain level are snapped
/// onto it, so LP noise does not create spurious atoms.
pub const CORE_LEVEL_SNAP: f64 = 1e-9;
pub const COMONOTONE_TOL: f64 = 1e-15;
pub const MIXTURE_WEIGHT_TOL: f64 = 1e-12;
/// Mixing weights tried in every sampled concavity trial, next to one random weight.
pub const LAMBDA_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// A real-valued act on `n` states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Act(Vec<f64>);

impl Act {
    pub fn new(outcomes: Vec<f64>) -> Result<Self> {
        if outcomes.is_empty() {
            return domain("an act needs at least one state");
        }
        if outcomes.iter().any(|x| !x.is_finite()) {
            return domain("act outcomes must be finite");
        }
        Ok(Self(outcomes))
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self(vec![c; n])
    }

    /// `1_A`.
    pub fn indicator(n: usize, event: Event) -> Self {
        Self(
            (0..n)
                .map(|i| if event.contains(i) { 1.0 } else { 0.0 })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn outcomes(&self) -> &[f64] {
        &self.0
    }

    pub fn add(&self, other: &Act) -> Result<Act> {
        check_dim(self.n(), other.n())?;
        Ok(Act(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a + b)
            .collect()))
    }

    pub fn scale(&self, a: f64) -> Act {
        Act(self.0.iter().map(|x| a * x).collect())
    }

    /// `λ·self + (1-λ)·other`.
    pub fn mix(&self, lambda: f64, other: &Act) -> Result<Act> {
        check_dim(self.n(), other.n())?;
        Ok(Act(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Act {
        Act(self.0.iter().map(|&x| f(x)).collect())
    }

    /// No pair of states on which the two acts move in opposite directions.
    pub fn is_comonotonic(&self, other: &Act) -> bool {
        if self.n() != other.n() {
            return false;
        }
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if (self.0[i] - self.0[j]) * (other.0[i] - other.0[j]) < -COMONOTONE_TOL {
                    return false;
                }
            }
        }
        true
    }

    /// `{X > v}`.
    pub fn upper_set(&self, v: f64) -> Event {
        Event(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > v)
                .fold(0, |m, (i, _)| m | 1 << i),
        )
    }

    /// Distinct outcomes in increasing order, each with the event above it.
    pub fn chain(&self) -> Vec<(f64, Event)> {
        let mut vals = self.0.clone();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        vals.into_iter().map(|v| (v, self.upper_set(v))).collect()
    }
}

impl TryFrom<Vec<f64>> for Act {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Act> for Vec<f64> {
    fn from(a: Act) -> Self {
        a.0
    }
}

impl fmt::Display for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// `∫ X dν` in its finite form `Σ_k v_k (ν(X > v_{k-1}) - ν(X > v_k))`.
pub fn choquet_integral(c: &FiniteCapacity, x: &Act) -> Result<f64> {
    choquet_integral_distorted(c, x, |t| t)
}

/// `∫ X d(g∘ν)` for any non-decreasing `g` with `g(1) = 1`.
pub fn choquet_integral_distorted(
    c: &FiniteCapacity,
    x: &Act,
    g: impl Fn(f64) -> f64,
) -> Result<f64> {
    check_dim(c.n(), x.n())?;
    let mut prev = 1.0;
    let mut acc = 0.0;
    for (v, above) in x.chain() {
        let level = g(c.value(above));
        acc += v * (prev - level);
        prev = level;
    }
    Ok(acc)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("level must lie in (0, 1), got {alpha}"));
    }
    Ok(())
}

/// Lower `α`-quantile of the Choquet image of `X`, via the 0/1 distortion
/// that jumps at `1 - α`.
pub fn g_alpha(c: &FiniteCapacity, alpha: f64, x: &Act) -> Result<f64> {
    check_alpha(alpha)?;
    let cut = 1.0 - alpha;
    choquet_integral_distorted(c, x, |t| if t >= cut { 1.0 } else { 0.0 })
}

/// Average of the lower quantiles below `α`, via the distortion
/// `β ↦ (β/α - (1-α)/α)⁺`.
pub fn h_alpha(c: &FiniteCapacity, alpha: f64, x: &Act) -> Result<f64> {
    check_alpha(alpha)?;
    choquet_integral_distorted(c, x, |t| {
        if t >= 1.0 {
            1.0
        } else {
            (t / alpha - (1.0 - alpha) / alpha).max(0.0)
        }
    })
}

/// One prior in a quantile mixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub prior: ProbabilityVector,
    pub weight: f64,
}

/// A rule sending acts to distributions on the outcome line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ActToDistMap {
    /// Survival function `x ↦ ν(X > x)`.
    Choquet { capacity: FiniteCapacity },
    /// Pushforward under one prior.
    Probabilistic { prior: ProbabilityVector },
    /// Pointwise infimum of survival functions over a set of priors.
    PriorSet { priors: Vec<ProbabilityVector> },
    /// Survival function `x ↦ min { μ(X > x) : μ ∈ core(ν) }`.
    CoreOf { capacity: FiniteCapacity },
    /// Weighted quantile average of the pushforwards.
    QuantileMixture { components: Vec<MixtureComponent> },
}

impl ActToDistMap {
    pub fn n(&self) -> usize {
        match self {
            ActToDistMap::Choquet { capacity } | ActToDistMap::CoreOf { capacity } => capacity.n(),
            ActToDistMap::Probabilistic { prior } => prior.n(),
            ActToDistMap::PriorSet { priors } => priors.first().map_or(0, ProbabilityVector::n),
            ActToDistMap::QuantileMixture { components } => {
                components.first().map_or(0, |c| c.prior.n())
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ActToDistMap::Choquet { .. } | ActToDistMap::Probabilistic { .. } => Ok(()),
            ActToDistMap::CoreOf { capacity } => {
                if !capacity.is_balanced()? {
                    return Err(Error::Config(
                        "core map needs a capacity with a nonempty core".into(),
                    ));
                }
                Ok(())
            }
            ActToDistMap::PriorSet { priors } => {
                if priors.is_empty() {
                    return Err(Error::Config("prior set is empty".into()));
                }
                for p in priors {
                    check_dim(priors[0].n(), p.n())?;
                }
                Ok(())
            }
            ActToDistMap::QuantileMixture { components } => {
                if components.is_empty() {
                    return Err(Error::Config("quantile mixture is empty".into()));
                }
                for c in components {
                    check_dim(components[0].prior.n(), c.prior.n())?;
                    if !(c.weight.is_finite() && c.weight > 0.0) {
                        return domain("mixture weights must be positive");
                    }
                }
                let total: f64 = components.iter().map(|c| c.weight).sum();
                if (total - 1.0).abs() > MIXTURE_WEIGHT_TOL {
                    return domain(format!("mixture weights sum to {total}"));
                }
                Ok(())
            }
        }
    }

    /// The capacity this map is built on, if any.
    pub fn capacity(&self) -> Option<&FiniteCapacity> {
        match self {
            ActToDistMap::Choquet { capacity } | ActToDistMap::CoreOf { capacity } => {
                Some(capacity)
            }
            _ => None,
        }
    }

    pub fn act_to_dist(&self, x: &Act) -> Result<DiscreteDistribution> {
        check_dim(self.n(), x.n())?;
        match self {
            ActToDistMap::Choquet { capacity } => Ok(from_chain(x, |e| capacity.value(e))),
            ActToDistMap::Probabilistic { prior } => Ok(from_chain(x, |e| prior.measure(e))),
            ActToDistMap::PriorSet { priors } => {
                let images: Vec<DiscreteDistribution> = priors
                    .iter()
                    .map(|p| from_chain(x, |e| p.measure(e)))
                    .collect();
                DiscreteDistribution::fsd_infimum(&images)
            }
            ActToDistMap::CoreOf { capacity } => {
                let mut pairs = Vec::new();
                let mut prev = 1.0;
                for (v, above) in x.chain() {
                    let level = if above.is_empty() {
                        0.0
                    } else {
                        let raw = capacity.core_min_on_event(above)?.min(prev);
                        if prev - raw <= CORE_LEVEL_SNAP {
                            prev
                        } else {
                            raw
                        }
                    };
                    pairs.push((v, level));
                    prev = level;
                }
                Ok(DiscreteDistribution::from_levels(pairs))
            }
            ActToDistMap::QuantileMixture { components } => {
                let mut acc: Option<DiscreteDistribution> = None;
                for c in components {
                    let part = from_chain(x, |e| c.prior.measure(e)).otimes(c.weight)?;
                    acc = Some(match acc {
                        None => part,
                        Some(a) => a.oplus(&part),
                    });
                }
                acc.ok_or_else(|| Error::Config("quantile mixture is empty".into()))
            }
        }
    }

    /// Searches for `(X, Y, λ)` with
    /// `D(λX + (1-λ)Y)` not second-order dominating `λ ⊗ D(X) ⊕ (1-λ) ⊗ D(Y)`.
    pub fn check_concavity(&self, mode: ConcavityMode) -> Result<CheckReport<ConcavityWitness>> {
        self.validate()?;
        let n = self.n();
        match mode {
            ConcavityMode::IndicatorWitness => {
                let full = 1u32 << n;
                let mut checked = 0;
                for a in 0..full {
                    for b in a + 1..full {
                        let (x, y) = (Act::indicator(n, Event(a)), Act::indicator(n, Event(b)));
                        checked += 1;
                        if !self.concave_at(&x, &y, 0.5)? {
                            return Ok(CheckReport::failed(
                                checked,
                                ConcavityWitness {
                                    x,
                                    y,
                                    lambda: 0.5,
                                    events: Some((Event(a), Event(b))),
                                },
                            ));
                        }
                    }
                }
                Ok(CheckReport::passed(checked))
            }
            ConcavityMode::Sampled { trials, seed } => {
                let mut rng = Sampler::new(seed);
                for trial in 0..trials {
                    let x = rng.act(n);
                    let y = rng.act(n);
                    let random = rng.uniform(0.0, 1.0);
                    for lambda in LAMBDA_GRID.into_iter().chain([random]) {
                        if !self.concave_at(&x, &y, lambda)? {
                            return Ok(CheckReport::failed(
                                trial + 1,
                                ConcavityWitness {
                                    x,
                                    y,
                                    lambda,
                                    events: None,
                                },
                            ));
                        }
                    }
                }
                Ok(CheckReport::passed(trials))
            }
        }
    }

    /// Whether the concavity inequality holds at `(X, Y, λ)`.
    pub fn concave_at(&self, x: &Act, y: &Act, lambda: f64) -> Result<bool> {
        let lhs = self.act_to_dist(&x.mix(lambda, y)?)?;
        let rhs = self
            .act_to_dist(x)?
            .otimes(lambda)?
            .oplus(&self.act_to_dist(y)?.otimes(1.0 - lambda)?);
        Ok(lhs.ssd_compare(&rhs).is_ge())
    }
}

/// How [`ActToDistMap::check_concavity`] chooses test points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcavityMode {
    /// Every pair of indicator acts at `λ = 1/2`; exhaustive for Choquet maps.
    IndicatorWitness,
    Sampled {
        trials: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcavityWitness {
    pub x: Act,
    pub y: Act,
    pub lambda: f64,
    /// The events behind indicator witnesses.
    pub events: Option<(Event, Event)>,
}

fn from_chain(x: &Act, level: impl Fn(Event) -> f64) -> DiscreteDistribution {
    DiscreteDistribution::from_levels(x.chain().into_iter().map(|(v, e)| (v, level(e))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::CapacityLiteral;
    use crate::statistic::DistortionSpec;

    fn urn() -> FiniteCapacity {
        let table = [
            ("100", 1.0 / 3.0),
            ("010", 0.25),
            ("001", 0.28),
            ("110", 0.72),
            ("101", 0.75),
            ("011", 2.0 / 3.0),
        ];
        FiniteCapacity::try_from(CapacityLiteral {
            n: 3,
            table: Some(table.iter().map(|(k, v)| (k.to_string(), *v)).collect()),
            distortion: None,
            base: None,
        })
        .unwrap()
    }

    fn act(v: &[f64]) -> Act {
        Act::new(v.to_vec()).unwrap()
    }

    #[test]
    fn urn_bets_map_to_two_point_laws() {
        let map = ActToDistMap::Choquet { capacity: urn() };
        let r = map.act_to_dist(&act(&[4.0, 0.0, 0.0])).unwrap();
        assert_eq!(r.values(), [0.0, 4.0]);
        assert_eq!(r.survival_levels(), [1.0 / 3.0, 0.0]);
        let b = map.act_to_dist(&act(&[0.0, 6.0, 0.0])).unwrap();
        assert_eq!(b.expectation(), 1.5);
        let y = map.act_to_dist(&act(&[0.0, 0.0, 5.0])).unwrap();
        assert!((y.expectation() - 1.4).abs() < 1e-15);
        let c = map.act_to_dist(&Act::constant(3, 1.0)).unwrap();
        assert!(c.is_point_mass());
    }

    #[test]
    fn choquet_integral_matches_distribution_mean() {
        let c = urn();
        let x = act(&[2.0, -1.0, 3.5]);
        let d = ActToDistMap::Choquet {
            capacity: c.clone(),
        }
        .act_to_dist(&x)
        .unwrap();
        assert_eq!(choquet_integral(&c, &x).unwrap(), d.expectation());
        // Direct evaluation: ascending outcomes -1, 2, 3.5 with upper sets
        // {red, yellow}, {yellow}, ∅.
        let direct = -(1.0 - 0.75) + 2.0 * (0.75 - 0.28) + 3.5 * 0.28;
        assert!((choquet_integral(&c, &x).unwrap() - direct).abs() < 1e-15);
    }

    #[test]
    fn choquet_integral_is_translation_covariant_and_homogeneous() {
        let c = urn();
        let x = act(&[2.0, -1.0, 3.5]);
        let base = choquet_integral(&c, &x).unwrap();
        let shifted = choquet_integral(&c, &x.add(&Act::constant(3, 1.5)).unwrap()).unwrap();
        assert!((shifted - base - 1.5).abs() < 1e-12);
        assert!((choquet_integral(&c, &x.scale(3.0)).unwrap() - 3.0 * base).abs() < 1e-12);
    }

    #[test]
    fn probability_capacity_matches_probabilistic_map() {
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let choquet = ActToDistMap::Choquet {
            capacity: FiniteCapacity::from_probability(&p).unwrap(),
        };
        let prob = ActToDistMap::Probabilistic { prior: p };
        let x = act(&[1.0, -2.0, 0.5]);
        assert_eq!(
            choquet.act_to_dist(&x).unwrap(),
            prob.act_to_dist(&x).unwrap()
        );
    }

    #[test]
    fn quantile_levels() {
        let c = urn();
        let b = act(&[0.0, 6.0, 0.0]);
        assert_eq!(g_alpha(&c, 0.5, &b).unwrap(), 0.0);
        assert_eq!(g_alpha(&c, 0.8, &b).unwrap(), 6.0);
        // H at 0.8: (0 * 0.75 + 6 * 0.05) / 0.8
        assert!((h_alpha(&c, 0.8, &b).unwrap() - 0.375).abs() < 1e-12);
        assert!(g_alpha(&c, 0.0, &b).is_err());
        assert!(h_alpha(&c, 1.0, &b).is_err());
    }

    #[test]
    fn prior_set_is_fsd_infimum() {
        let priors = vec![
            ProbabilityVector::new(vec![0.5, 0.5]).unwrap(),
            ProbabilityVector::new(vec![0.9, 0.1]).unwrap(),
        ];
        let map = ActToDistMap::PriorSet { priors };
        let d = map.act_to_dist(&act(&[0.0, 1.0])).unwrap();
        assert_eq!(
            d,
            DiscreteDistribution::new(vec![(0.0, 0.9), (1.0, 0.1)]).unwrap()
        );
    }

    #[test]
    fn core_map_agrees_with_choquet_for_exact_capacity() {
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let c = FiniteCapacity::from_probability(&p)
            .unwrap()
            .distort(&DistortionSpec::Power { exponent: 2.0 })
            .unwrap();
        let x = act(&[2.0, -1.0, 3.5]);
        let a = ActToDistMap::Choquet {
            capacity: c.clone(),
        }
        .act_to_dist(&x)
        .unwrap();
        let b = ActToDistMap::CoreOf { capacity: c }
            .act_to_dist(&x)
            .unwrap();
        assert_eq!(a.values(), b.values());
        assert!(a.approx_eq(&b, 1e-9));
    }

    #[test]
    fn quantile_mixture_weights_quantiles() {
        let components = vec![
            MixtureComponent {
                prior: ProbabilityVector::new(vec![1.0, 0.0]).unwrap(),
                weight: 0.5,
            },
            MixtureComponent {
                prior: ProbabilityVector::new(vec![0.0, 1.0]).unwrap(),
                weight: 0.5,
            },
        ];
        let map = ActToDistMap::QuantileMixture { components };
        let d = map.act_to_dist(&act(&[0.0, 2.0])).unwrap();
        assert_eq!(d, DiscreteDistribution::point(1.0));
    }

    #[test]
    fn supermodular_choquet_map_is_concave() {
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let convex = FiniteCapacity::from_probability(&p)
            .unwrap()
            .distort(&DistortionSpec::Power { exponent: 2.0 })
            .unwrap();
        let map = ActToDistMap::Choquet { capacity: convex };
        assert!(map
            .check_concavity(ConcavityMode::IndicatorWitness)
            .unwrap()
            .is_passed());
        assert!(map
            .check_concavity(ConcavityMode::Sampled {
                trials: 200,
                seed: 3
            })
            .unwrap()
            .is_passed());
    }

    #[test]
    fn submodular_choquet_map_has_indicator_witness() {
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let concave = FiniteCapacity::from_probability(&p)
            .unwrap()
            .distort(&DistortionSpec::DualPower { exponent: 2.0 })
            .unwrap();
        let map = ActToDistMap::Choquet { capacity: concave };
        let report = map
            .check_concavity(ConcavityMode::IndicatorWitness)
            .unwrap();
        let w = report.witness.expect("submodular capacity is not concave");
        assert_eq!(w.lambda, 0.5);
        assert!(!map.concave_at(&w.x, &w.y, w.lambda).unwrap());
    }

    #[test]
    fn comonotonicity() {
        let x = act(&[1.0, 2.0, 3.0]);
        assert!(x.is_comonotonic(&act(&[0.0, 0.0, 5.0])));
        assert!(!x.is_comonotonic(&act(&[1.0, 0.0, 5.0])));
        assert!(x.is_comonotonic(&Act::constant(3, 7.0)));
    }

    #[test]
    fn map_literal_parses() {
        let m: ActToDistMap =
            serde_json::from_str(r#"{"kind":"Probabilistic","prior":[0.25,0.75]}"#).unwrap();
        assert_eq!(m.n(), 2);
        assert!(serde_json::from_str::<ActToDistMap>(
            r#"{"kind":"Probabilistic","prior":[0.2,0.7]}"#
        )
        .is_err());
    }
}
