use ate_core::sampling::Sampler;
use ate_core::{
    choquet_integral, more_ambiguity_averse, Act, ActToDistMap, AggregatorSpec, AmbiguityModel,
    DiscreteDistribution, DistortionSpec, Event, FiniteCapacity, StatisticSpec, UtilitySpec,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn statistics() -> Vec<StatisticSpec> {
    vec![
        StatisticSpec::Expectation {},
        StatisticSpec::Entropic { a: -0.4 },
        StatisticSpec::Entropic { a: 0.7 },
        StatisticSpec::EU {
            utility: UtilitySpec::Exponential { a: 0.3 },
        },
        StatisticSpec::DU {
            distortion: DistortionSpec::Power { exponent: 2.0 },
        },
        StatisticSpec::RDU {
            utility: UtilitySpec::Exponential { a: -0.2 },
            distortion: DistortionSpec::DualPower { exponent: 1.5 },
        },
    ]
}

/// Statistics from the fixed list that pass the library's quasiconcavity check.
fn quasiconcave_statistics() -> &'static [StatisticSpec] {
    static CACHE: OnceLock<Vec<StatisticSpec>> = OnceLock::new();
    CACHE.get_or_init(|| {
        statistics()
            .into_iter()
            .filter(|s| {
                s.check_comonotonic_quasiconcave(200, 3)
                    .unwrap()
                    .is_passed()
            })
            .collect()
    })
}

/// Choquet integral from the sorted distinct outcomes:
/// `v_1 + Σ_j (v_j − v_{j−1}) ν(X ≥ v_j)`.
fn layer_cake(c: &FiniteCapacity, x: &Act) -> f64 {
    let mut vals = x.outcomes().to_vec();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let at_least = |t: f64| {
        let states: Vec<usize> = (0..x.n()).filter(|&i| x.outcomes()[i] >= t).collect();
        c.value(Event::from_states(&states))
    };
    let mut total = vals[0];
    for w in vals.windows(2) {
        total += (w[1] - w[0]) * at_least(w[1]);
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn choquet_matches_layer_cake(seed in any::<u64>(), n in 2usize..=7) {
        let mut s = Sampler::new(seed);
        let c = s.capacity(n);
        let x = s.act(n);
        let direct = choquet_integral(&c, &x).unwrap();
        prop_assert!((direct - layer_cake(&c, &x)).abs() <= 1e-12);
        let d = ActToDistMap::Choquet { capacity: c }.act_to_dist(&x).unwrap();
        prop_assert!((d.expectation() - direct).abs() <= 1e-12);
    }

    #[test]
    fn comonotonic_acts_add(seed in any::<u64>(), n in 2usize..=7) {
        let mut s = Sampler::new(seed);
        let c = s.capacity(n);
        let (x, y) = s.comonotonic_pair(n);
        prop_assert!(x.is_comonotonic(&y));
        let sum = x.add(&y).unwrap();
        let lhs = choquet_integral(&c, &sum).unwrap();
        let rhs = choquet_integral(&c, &x).unwrap() + choquet_integral(&c, &y).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9);
        let map = ActToDistMap::Choquet { capacity: c };
        let joint = map.act_to_dist(&sum).unwrap();
        let split = map.act_to_dist(&x).unwrap().oplus(&map.act_to_dist(&y).unwrap());
        prop_assert!(joint.quantile_gap(&split) <= 1e-9);
    }

    #[test]
    fn choquet_translates_and_scales(seed in any::<u64>(), n in 2usize..=6, shift in -3.0f64..3.0, a in 0.0f64..4.0) {
        let mut s = Sampler::new(seed);
        let c = s.capacity(n);
        let x = s.act(n);
        let base = choquet_integral(&c, &x).unwrap();
        let moved = choquet_integral(&c, &x.map(|v| v + shift)).unwrap();
        prop_assert!((moved - base - shift).abs() <= 1e-12);
        let scaled = choquet_integral(&c, &x.scale(a)).unwrap();
        prop_assert!((scaled - a * base).abs() <= 1e-11);
    }

    #[test]
    fn probability_capacity_reduces_to_pushforward(seed in any::<u64>(), n in 2usize..=7) {
        let mut s = Sampler::new(seed);
        let p = s.probability_vector(n);
        let x = s.act(n);
        let c = FiniteCapacity::from_probability(&p).unwrap();
        let via_capacity = ActToDistMap::Choquet { capacity: c }.act_to_dist(&x).unwrap();
        let via_prior = ActToDistMap::Probabilistic { prior: p }.act_to_dist(&x).unwrap();
        prop_assert!(via_capacity.approx_eq(&via_prior, 1e-12));
    }

    #[test]
    fn stochastic_orders_are_consistent(seed in any::<u64>(), c in 0.0f64..2.0) {
        let mut s = Sampler::new(seed);
        let d = s.distribution(-3.0, 3.0, 6);
        prop_assert!(d.shift(c).fsd_compare(&d).is_ge());
        prop_assert!(d.shift(c).ssd_compare(&d).is_ge());
        let mean = DiscreteDistribution::point(d.expectation());
        prop_assert!(mean.ssd_compare(&d).is_ge());
        prop_assert!(mean.cv_compare(&d).is_ge());
        let e = s.distribution(-3.0, 3.0, 6);
        if d.fsd_compare(&e).is_ge() {
            prop_assert!(d.ssd_compare(&e).is_ge());
        }
        let (better, worse) = s.ssd_ordered_pair(-2.0, 2.0);
        prop_assert!(better.ssd_compare(&worse).is_ge());
    }

    #[test]
    fn quantile_algebra_round_trips(seed in any::<u64>(), a in 0.0f64..3.0) {
        let mut s = Sampler::new(seed);
        let d = s.distribution(-3.0, 3.0, 5);
        let e = s.distribution(-3.0, 3.0, 5);
        let sum = d.oplus(&e);
        prop_assert!((sum.expectation() - d.expectation() - e.expectation()).abs() <= 1e-12);
        prop_assert!(d.oplus(&e).quantile_gap(&e.oplus(&d)) == 0.0);
        let scaled = d.otimes(a).unwrap();
        prop_assert!((scaled.expectation() - a * d.expectation()).abs() <= 1e-12);
        for k in 1..20 {
            let alpha = k as f64 / 20.0;
            let lhs = sum.quantile_at(alpha).unwrap();
            let rhs = d.quantile_at(alpha).unwrap() + e.quantile_at(alpha).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }
    }

    #[test]
    fn additive_statistics_translate(seed in any::<u64>(), shift in -2.0f64..2.0, a in 0.1f64..3.0) {
        let mut s = Sampler::new(seed);
        let d = s.distribution(-2.0, 2.0, 5);
        for stat in statistics() {
            let base = stat.certainty_equivalent(&d).unwrap();
            if stat.is_constant_additive() {
                let moved = stat.certainty_equivalent(&d.shift(shift)).unwrap();
                prop_assert!((moved - base - shift).abs() <= 1e-9, "{stat:?}");
            }
            if stat.is_positively_homogeneous() {
                let scaled = stat.certainty_equivalent(&d.otimes(a).unwrap()).unwrap();
                prop_assert!((scaled - a * base).abs() <= 1e-9, "{stat:?}");
            }
            prop_assert!(base >= d.min_value() - 1e-9 && base <= d.max_value() + 1e-9);
        }
    }

    #[test]
    fn ranking_is_sorted_and_complete(seed in any::<u64>(), n in 2usize..=5, k in 1usize..6) {
        let mut s = Sampler::new(seed);
        let model = AmbiguityModel::choquet(s.capacity(n), StatisticSpec::Expectation {});
        let mut acts: Vec<(String, Act)> = (0..k).map(|i| (format!("a{i}"), s.act(n))).collect();
        acts.push(("dup".into(), acts[0].1.clone()));
        let ranked = model.rank(&acts).unwrap();
        prop_assert_eq!(ranked.len(), acts.len());
        for w in ranked.windows(2) {
            prop_assert!(w[0].value >= w[1].value - 1e-10);
            prop_assert!(w[1].class == w[0].class || w[1].class == w[0].class + 1);
        }
        let class_of = |name: &str| ranked.iter().find(|r| r.name == name).unwrap().class;
        prop_assert_eq!(class_of("a0"), class_of("dup"));
        prop_assert_eq!(ranked[0].class, 0);
    }

    #[test]
    fn single_prior_eta_equals_ate(seed in any::<u64>(), n in 2usize..=6) {
        let mut s = Sampler::new(seed);
        let p = s.probability_vector(n);
        let x = s.act(n);
        for stat in statistics() {
            let ate = AmbiguityModel::Ate {
                map: ActToDistMap::Probabilistic { prior: p.clone() },
                statistic: stat.clone(),
            };
            for aggregator in [
                AggregatorSpec::Maxmin {},
                AggregatorSpec::AlphaMaxmin { alpha: 0.3 },
                AggregatorSpec::Smooth { v: UtilitySpec::Exponential { a: 0.5 }, weights: vec![1.0] },
            ] {
                let eta = AmbiguityModel::Eta {
                    priors: vec![p.clone()],
                    aggregator,
                    statistic: stat.clone(),
                };
                let (u, v) = (ate.evaluate(&x).unwrap(), eta.evaluate(&x).unwrap());
                prop_assert!((u - v).abs() <= 1e-9, "{stat:?}: {u} vs {v}");
            }
        }
    }

    #[test]
    fn pointwise_larger_capacity_dominates(seed in any::<u64>(), n in 2usize..=5) {
        let mut s = Sampler::new(seed);
        let smaller = s.capacity(n);
        let larger = smaller.distort(&s.concave_distortion()).unwrap();
        prop_assert!(more_ambiguity_averse(&larger, &smaller).unwrap().is_none());
        prop_assert!(more_ambiguity_averse(&larger, &larger).unwrap().is_none());
        let stats = statistics();
        let stat = stats[s.index(stats.len())].clone();
        let hi = AmbiguityModel::choquet(larger.clone(), stat.clone());
        let lo = AmbiguityModel::choquet(smaller.clone(), stat);
        for _ in 0..5 {
            let x = s.act(n);
            let dh = ActToDistMap::Choquet { capacity: larger.clone() }.act_to_dist(&x).unwrap();
            let dl = ActToDistMap::Choquet { capacity: smaller.clone() }.act_to_dist(&x).unwrap();
            prop_assert!(dh.fsd_compare(&dl).is_ge());
            prop_assert!(hi.evaluate(&x).unwrap() >= lo.evaluate(&x).unwrap() - 1e-9);
        }
        for event in Event::proper_nonempty(n) {
            let (a, b) = (hi.matching_probability(event).unwrap(), lo.matching_probability(event).unwrap());
            prop_assert!(a >= b - 1e-8);
        }
    }

    #[test]
    fn models_inherit_translation_and_homogeneity(seed in any::<u64>(), n in 2usize..=6, shift in -2.0f64..2.0, a in 0.0f64..3.0) {
        let mut s = Sampler::new(seed);
        let c = s.capacity(n);
        let x = s.act(n);
        for stat in statistics() {
            let model = AmbiguityModel::choquet(c.clone(), stat.clone());
            let base = model.evaluate(&x).unwrap();
            if stat.is_constant_additive() {
                let moved = model.evaluate(&x.map(|v| v + shift)).unwrap();
                prop_assert!((moved - base - shift).abs() <= 1e-10, "{stat:?}");
            }
            if stat.is_positively_homogeneous() {
                let scaled = model.evaluate(&x.scale(a)).unwrap();
                prop_assert!((scaled - a * base).abs() <= 1e-10, "{stat:?}");
            }
        }
    }

    #[test]
    fn comonotonic_mixtures_of_indifferent_acts(seed in any::<u64>(), n in 2usize..=5, lambda in 0.0f64..=1.0) {
        let mut s = Sampler::new(seed);
        let c = s.capacity(n);
        let (x, y) = s.comonotonic_pair(n);
        for stat in quasiconcave_statistics() {
            let model = AmbiguityModel::choquet(c.clone(), stat.clone());
            let (ux, uy) = (model.evaluate(&x).unwrap(), model.evaluate(&y).unwrap());
            // Shift y so both acts share one value; shifting keeps them comonotonic.
            let y = y.map(|v| v + ux - uy);
            let uy = model.evaluate(&y).unwrap();
            if (ux - uy).abs() > 1e-12 {
                continue;
            }
            let mixed = model.evaluate(&x.mix(lambda, &y).unwrap()).unwrap();
            prop_assert!(mixed >= ux.min(uy) - 1e-10, "{stat:?}: {mixed} < {ux}");
        }
    }
}
