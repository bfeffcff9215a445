//! Ambiguity models: aggregate-then-evaluate and evaluate-then-aggregate.

use serde::{Deserialize, Serialize};

use crate::capacity::{Event, FiniteCapacity, ProbabilityVector};
use crate::choquet::{Act, ActToDistMap};
use crate::distribution::DiscreteDistribution;
use crate::error::{check_dim, domain, Error, Result};
use crate::statistic::{StatisticSpec, UtilitySpec};

/// Values closer than this fall into one indifference class when ranking.
pub const TIE_TOL: f64 = 1e-10;
pub const MATCHING_TOL: f64 = 1e-10;
pub const MATCHING_MAX_ITER: usize = 200;
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// How per-prior certainty equivalents are combined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum AggregatorSpec {
    Maxmin {},
    AlphaMaxmin {
        alpha: f64,
    },
    /// `v⁻¹(Σ π_i v(U_i))` over certainty equivalents `U_i`.
    Smooth {
        v: UtilitySpec,
        weights: Vec<f64>,
    },
    /// `min_i (u(U_i) + c_i)` on the statistic's utility scale.
    Variational {
        costs: Vec<f64>,
    },
}

impl AggregatorSpec {
    fn validate(&self, priors: usize, statistic: &StatisticSpec) -> Result<()> {
        match self {
            AggregatorSpec::Maxmin {} => Ok(()),
            AggregatorSpec::AlphaMaxmin { alpha } => {
                if !(0.0..=1.0).contains(alpha) {
                    return domain(format!("alpha must lie in [0, 1], got {alpha}"));
                }
                Ok(())
            }
            AggregatorSpec::Smooth { v, weights } => {
                v.validate()?;
                check_dim(priors, weights.len())?;
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return domain("smooth weights must be non-negative");
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > WEIGHT_SUM_TOL {
                    return domain(format!("smooth weights sum to {total}"));
                }
                Ok(())
            }
            AggregatorSpec::Variational { costs } => {
                check_dim(priors, costs.len())?;
                if costs.iter().any(|c| !c.is_finite() || *c < 0.0) {
                    return domain("variational costs must be non-negative");
                }
                if !costs.contains(&0.0) {
                    return domain("variational costs need at least one zero");
                }
                if statistic.utility().is_none() {
                    return Err(Error::Config(
                        "variational aggregation needs a statistic with a utility scale".into(),
                    ));
                }
                Ok(())
            }
        }
    }
}

/// A preference over acts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum AmbiguityModel {
    /// Map each act to one distribution, then apply the statistic.
    #[serde(rename = "ATE")]
    Ate {
        map: ActToDistMap,
        statistic: StatisticSpec,
    },
    /// Apply the statistic under every prior, then aggregate.
    #[serde(rename = "ETA")]
    Eta {
        priors: Vec<ProbabilityVector>,
        aggregator: AggregatorSpec,
        statistic: StatisticSpec,
    },
}

/// One entry of a ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedAct {
    pub name: String,
    pub value: f64,
    /// Indifference class, counted from the best class at 0.
    pub class: usize,
}

impl AmbiguityModel {
    pub fn choquet(capacity: FiniteCapacity, statistic: StatisticSpec) -> Self {
        AmbiguityModel::Ate {
            map: ActToDistMap::Choquet { capacity },
            statistic,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AmbiguityModel::Ate { map, .. } => map.n(),
            AmbiguityModel::Eta { priors, .. } => priors.first().map_or(0, ProbabilityVector::n),
        }
    }

    pub fn statistic(&self) -> &StatisticSpec {
        match self {
            AmbiguityModel::Ate { statistic, .. } | AmbiguityModel::Eta { statistic, .. } => {
                statistic
            }
        }
    }

    /// The same model under another statistic.
    pub fn with_statistic(&self, statistic: StatisticSpec) -> Result<Self> {
        let mut m = self.clone();
        match &mut m {
            AmbiguityModel::Ate { statistic: s, .. } | AmbiguityModel::Eta { statistic: s, .. } => {
                *s = statistic
            }
        }
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AmbiguityModel::Ate { map, statistic } => {
                map.validate()?;
                statistic.validate()
            }
            AmbiguityModel::Eta {
                priors,
                aggregator,
                statistic,
            } => {
                if priors.is_empty() {
                    return Err(Error::Config("ETA model needs at least one prior".into()));
                }
                for p in priors {
                    check_dim(priors[0].n(), p.n())?;
                }
                statistic.validate()?;
                aggregator.validate(priors.len(), statistic)
            }
        }
    }

    /// Value of `x` on the certainty-equivalent scale.
    pub fn evaluate(&self, x: &Act) -> Result<f64> {
        check_dim(self.n(), x.n())?;
        match self {
            AmbiguityModel::Ate { map, statistic } => {
                statistic.certainty_equivalent(&map.act_to_dist(x)?)
            }
            AmbiguityModel::Eta {
                priors,
                aggregator,
                statistic,
            } => {
                let laws: Vec<DiscreteDistribution> = priors
                    .iter()
                    .map(|p| ActToDistMap::Probabilistic { prior: p.clone() }.act_to_dist(x))
                    .collect::<Result<_>>()?;
                aggregate(aggregator, statistic, &laws)
            }
        }
    }

    /// Acts in decreasing order of value. Values within [`TIE_TOL`] of the
    /// first member of a class join it; a class keeps input order.
    pub fn rank(&self, acts: &[(String, Act)]) -> Result<Vec<RankedAct>> {
        self.rank_with_tolerance(acts, TIE_TOL)
    }

    pub fn rank_with_tolerance(&self, acts: &[(String, Act)], tol: f64) -> Result<Vec<RankedAct>> {
        if !(tol.is_finite() && tol >= 0.0) {
            return domain(format!("tie tolerance {tol} must be non-negative"));
        }
        if acts.is_empty() {
            return domain("cannot rank an empty list of acts");
        }
        let values: Vec<f64> = acts
            .iter()
            .map(|(_, x)| self.evaluate(x))
            .collect::<Result<_>>()?;
        let mut order: Vec<usize> = (0..acts.len()).collect();
        order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in order {
            match classes.last_mut() {
                Some(class) if values[class[0]] - values[i] <= tol => class.push(i),
                _ => classes.push(vec![i]),
            }
        }
        let mut out = Vec::with_capacity(acts.len());
        for (c, mut members) in classes.into_iter().enumerate() {
            members.sort_unstable();
            for i in members {
                out.push(RankedAct {
                    name: acts[i].0.clone(),
                    value: values[i],
                    class: c,
                });
            }
        }
        Ok(out)
    }

    /// The probability `p` at which a Bernoulli lottery is valued like the
    /// bet `1_A`, found by bisection on `[0, 1]`.
    pub fn matching_probability(&self, event: Event) -> Result<f64> {
        let n = self.n();
        if event.0 as u64 >= 1u64 << n {
            return domain("event lies outside the state space");
        }
        let target = self.evaluate(&Act::indicator(n, event))?;
        let statistic = self.statistic();
        let phi = |p: f64| statistic.certainty_equivalent(&DiscreteDistribution::bernoulli(p)?);
        let (f0, f1) = (phi(0.0)?, phi(1.0)?);
        if target < f0 - MATCHING_TOL || target > f1 + MATCHING_TOL {
            return Err(Error::Internal(format!(
                "bet value {target} lies outside the lottery range [{f0}, {f1}]"
            )));
        }
        // Bisect until the bracket cannot shrink further; the bracket is far
        // below MATCHING_TOL long before the iteration cap.
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..MATCHING_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if phi(mid)? < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if hi - lo > MATCHING_TOL {
            return Err(Error::Internal(format!(
                "bisection stalled on [{lo}, {hi}]"
            )));
        }
        Ok(0.5 * (lo + hi))
    }
}

fn aggregate(
    aggregator: &AggregatorSpec,
    statistic: &StatisticSpec,
    laws: &[DiscreteDistribution],
) -> Result<f64> {
    let ces: Vec<f64> = laws
        .iter()
        .map(|d| statistic.certainty_equivalent(d))
        .collect::<Result<_>>()?;
    let min = ces.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = ces.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    match aggregator {
        AggregatorSpec::Maxmin {} => Ok(min),
        AggregatorSpec::AlphaMaxmin { alpha } => Ok(alpha * min + (1.0 - alpha) * max),
        AggregatorSpec::Smooth { v, weights } => {
            let mut acc = 0.0;
            for (u, w) in ces.iter().zip(weights) {
                acc += w * v.eval(*u)?;
            }
            v.inverse(acc)
        }
        AggregatorSpec::Variational { costs } => {
            statistic.utility().ok_or_else(|| {
                Error::Config(
                    "variational aggregation needs a statistic with a utility scale".into(),
                )
            })?;
            let mut best = f64::INFINITY;
            for (d, c) in laws.iter().zip(costs) {
                best = best.min(statistic.eval(d)? + c);
            }
            statistic.certainty_equivalent_of_value(best)
        }
    }
}

/// `true` when `more` assigns at least as much to every event as `less`;
/// otherwise the first event where it falls short.
pub fn more_ambiguity_averse(
    more: &FiniteCapacity,
    less: &FiniteCapacity,
) -> Result<Option<Event>> {
    more.first_event_below(less)
}

/// Ambiguity aversion in the absolute sense: the core is nonempty.
pub fn is_ambiguity_averse(c: &FiniteCapacity) -> Result<bool> {
    c.is_balanced()
}

/// Worst certainty equivalent over the core vertices of a supermodular capacity.
pub fn robust_evaluate(c: &FiniteCapacity, statistic: &StatisticSpec, x: &Act) -> Result<f64> {
    check_dim(c.n(), x.n())?;
    statistic.validate()?;
    let mut best = f64::INFINITY;
    for mu in c.core_vertices_supermodular()? {
        let d = ActToDistMap::Probabilistic { prior: mu }.act_to_dist(x)?;
        best = best.min(statistic.certainty_equivalent(&d)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::CapacityLiteral;
    use crate::statistic::DistortionSpec;

    fn table(n: usize, entries: &[(&str, f64)]) -> FiniteCapacity {
        FiniteCapacity::try_from(CapacityLiteral {
            n,
            table: Some(entries.iter().map(|(k, v)| (k.to_string(), *v)).collect()),
            distortion: None,
            base: None,
        })
        .unwrap()
    }

    fn urn() -> FiniteCapacity {
        table(
            3,
            &[
                ("100", 1.0 / 3.0),
                ("010", 0.25),
                ("001", 0.28),
                ("110", 0.72),
                ("101", 0.75),
                ("011", 2.0 / 3.0),
            ],
        )
    }

    fn urn_acts() -> Vec<(String, Act)> {
        [
            ("R", [4.0, 0.0, 0.0]),
            ("B", [0.0, 6.0, 0.0]),
            ("Y", [0.0, 0.0, 5.0]),
            ("C", [1.0, 1.0, 1.0]),
        ]
        .into_iter()
        .map(|(n, v)| (n.to_string(), Act::new(v.to_vec()).unwrap()))
        .collect()
    }

    fn sqrt() -> UtilitySpec {
        UtilitySpec::Power {
            exponent: 0.5,
            shift: 0.0,
        }
    }

    fn names(r: &[RankedAct]) -> Vec<&str> {
        r.iter().map(|a| a.name.as_str()).collect()
    }

    #[test]
    fn urn_ranking_under_expectation() {
        let m = AmbiguityModel::choquet(urn(), StatisticSpec::Expectation {});
        let r = m.rank(&urn_acts()).unwrap();
        assert_eq!(names(&r), ["B", "Y", "R", "C"]);
        let expected = [1.5, 1.4, 4.0 / 3.0, 1.0];
        for (a, e) in r.iter().zip(expected) {
            assert!((a.value - e).abs() <= 1e-12);
        }
        assert_eq!(r.iter().map(|a| a.class).collect::<Vec<_>>(), [0, 1, 2, 3]);
    }

    #[test]
    fn urn_ranking_under_sqrt_utility() {
        let m = AmbiguityModel::choquet(urn(), StatisticSpec::EU { utility: sqrt() });
        let r = m.rank(&urn_acts()).unwrap();
        assert_eq!(names(&r), ["C", "R", "Y", "B"]);
        let y = &r[2];
        assert!((y.value - (0.28 * 5f64.sqrt()).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn ties_form_classes_in_input_order() {
        let m = AmbiguityModel::choquet(urn(), StatisticSpec::Expectation {});
        let acts = vec![
            ("b".to_string(), Act::constant(3, 1.0)),
            ("a".to_string(), Act::constant(3, 2.0)),
            ("c".to_string(), Act::constant(3, 1.0 + 1e-12)),
        ];
        let r = m.rank(&acts).unwrap();
        assert_eq!(names(&r), ["a", "b", "c"]);
        assert_eq!(r[1].class, r[2].class);
        assert!(m.rank(&[]).is_err());
        assert_eq!(m.rank(&acts[..1]).unwrap().len(), 1);
    }

    #[test]
    fn maxmin_over_urn_priors() {
        // 30 red balls and 60 blue-or-yellow balls, every split allowed.
        let priors: Vec<ProbabilityVector> = (0..=60)
            .map(|b| {
                ProbabilityVector::new(vec![1.0 / 3.0, b as f64 / 90.0, (60 - b) as f64 / 90.0])
                    .unwrap()
            })
            .collect();
        let m = AmbiguityModel::Eta {
            priors,
            aggregator: AggregatorSpec::Maxmin {},
            statistic: StatisticSpec::Expectation {},
        };
        m.validate().unwrap();
        assert_eq!(
            m.evaluate(&Act::new(vec![0.0, 6.0, 0.0]).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn singleton_prior_set_matches_ate() {
        let p = ProbabilityVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        let stat = StatisticSpec::EU { utility: sqrt() };
        let ate =
            AmbiguityModel::choquet(FiniteCapacity::from_probability(&p).unwrap(), stat.clone());
        let x = Act::new(vec![1.0, 4.0, 9.0]).unwrap();
        let expected = ate.evaluate(&x).unwrap();
        let aggregators = [
            AggregatorSpec::Maxmin {},
            AggregatorSpec::AlphaMaxmin { alpha: 0.3 },
            AggregatorSpec::Smooth {
                v: UtilitySpec::Exponential { a: -1.0 },
                weights: vec![1.0],
            },
            AggregatorSpec::Variational { costs: vec![0.0] },
        ];
        for aggregator in aggregators {
            let eta = AmbiguityModel::Eta {
                priors: vec![p.clone()],
                aggregator,
                statistic: stat.clone(),
            };
            eta.validate().unwrap();
            assert!((eta.evaluate(&x).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn variational_needs_utility_scale() {
        let m = AmbiguityModel::Eta {
            priors: vec![ProbabilityVector::uniform(2)],
            aggregator: AggregatorSpec::Variational { costs: vec![0.0] },
            statistic: StatisticSpec::Entropic { a: 1.0 },
        };
        assert!(matches!(m.validate(), Err(Error::Config(_))));
        let no_zero = AmbiguityModel::Eta {
            priors: vec![ProbabilityVector::uniform(2)],
            aggregator: AggregatorSpec::Variational { costs: vec![0.5] },
            statistic: StatisticSpec::Expectation {},
        };
        assert!(no_zero.validate().is_err());
    }

    #[test]
    fn variational_penalizes_on_utility_scale() {
        let priors = vec![
            ProbabilityVector::new(vec![1.0, 0.0]).unwrap(),
            ProbabilityVector::new(vec![0.0, 1.0]).unwrap(),
        ];
        let m = AmbiguityModel::Eta {
            priors,
            aggregator: AggregatorSpec::Variational {
                costs: vec![0.0, 1.0],
            },
            statistic: StatisticSpec::EU { utility: sqrt() },
        };
        // Utilities 3 and 1 (+1 cost) give min 2, certainty equivalent 4.
        assert_eq!(m.evaluate(&Act::new(vec![9.0, 1.0]).unwrap()).unwrap(), 4.0);
    }

    #[test]
    fn matching_probability_recovers_capacity() {
        let c = urn();
        let rdu = StatisticSpec::RDU {
            utility: sqrt(),
            distortion: DistortionSpec::Power { exponent: 2.0 },
        };
        for stat in [StatisticSpec::Expectation {}, rdu] {
            let m = AmbiguityModel::choquet(c.clone(), stat);
            for e in (0..8).map(Event) {
                let p = m.matching_probability(e).unwrap();
                assert!((p - c.value(e)).abs() < 1e-8, "{e:?}: {p}");
            }
        }
    }

    #[test]
    fn comparative_aversion() {
        let p = ProbabilityVector::new(vec![0.3, 0.7]).unwrap();
        let mu = FiniteCapacity::from_probability(&p).unwrap();
        let distorted = mu
            .distort(&DistortionSpec::Power { exponent: 2.0 })
            .unwrap();
        assert_eq!(more_ambiguity_averse(&mu, &mu).unwrap(), None);
        assert_eq!(more_ambiguity_averse(&mu, &distorted).unwrap(), None);
        let low = table(2, &[("10", 0.3), ("01", 0.4)]);
        let high = table(2, &[("10", 0.5), ("01", 0.4)]);
        assert_eq!(
            more_ambiguity_averse(&low, &high).unwrap(),
            Some(Event::singleton(0))
        );
    }

    #[test]
    fn absolute_aversion() {
        assert!(!is_ambiguity_averse(&urn()).unwrap());
        let p = ProbabilityVector::new(vec![0.4, 0.6]).unwrap();
        assert!(is_ambiguity_averse(&FiniteCapacity::from_probability(&p).unwrap()).unwrap());
        assert!(!is_ambiguity_averse(&table(2, &[("10", 0.7), ("01", 0.7)])).unwrap());
    }

    #[test]
    fn robust_value_matches_choquet_on_two_states() {
        let c = table(2, &[("10", 0.3), ("01", 0.4)]);
        let x = Act::new(vec![10.0, 0.0]).unwrap();
        assert!(
            (robust_evaluate(&c, &StatisticSpec::Expectation {}, &x).unwrap() - 3.0).abs() < 1e-12
        );
        let submodular = table(2, &[("10", 0.7), ("01", 0.6)]);
        assert!(robust_evaluate(&submodular, &StatisticSpec::Expectation {}, &x).is_err());
    }

    #[test]
    fn model_literal_parses() {
        let json = r#"{"kind":"ETA","priors":[[0.5,0.5],[0.2,0.8]],
            "aggregator":{"kind":"AlphaMaxmin","alpha":0.5},
            "statistic":{"family":"Expectation"}}"#;
        let m: AmbiguityModel = serde_json::from_str(json).unwrap();
        m.validate().unwrap();
        assert_eq!(
            m.evaluate(&Act::new(vec![0.0, 1.0]).unwrap()).unwrap(),
            0.65
        );
    }
}
