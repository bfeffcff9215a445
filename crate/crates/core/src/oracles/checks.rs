use crate::capacity::{Event, FiniteCapacity, ProbabilityVector};
use crate::choquet::{Act, ActToDistMap, ConcavityMode, MixtureComponent};
use crate::distribution::DiscreteDistribution;
use crate::error::Result;
use crate::model::AmbiguityModel;
use crate::sampling::Sampler;
use crate::statistic::{DistortionSpec, StatisticSpec, UtilitySpec};

use super::{Budget, Outcome, Subject};

/// Tolerance between the averaged-quantile distortion and the direct integral.
const AVERAGED_QUANTILE_TOL: f64 = 1e-12;
/// Tolerance between the core-vertex minimum and the Choquet evaluation.
const ROBUST_TOL: f64 = 1e-9;
/// Agreement tolerance on survival levels produced by the core LP.
const LP_LEVEL_TOL: f64 = 1e-9;
/// Perturbation steps `2^{-k/3}` for the continuity surrogate.
const CONTINUITY_STEPS: u32 = 64;
const CONTINUITY_TARGET: f64 = 1e-6;
/// Sampled acts per capacity in the concavity check; each act pair is tried
/// at ten mixing weights.
const CONCAVITY_TRIALS: usize = 50;
/// Simplex grid resolution when searching for a dominating prior.
const SIMPLEX_GRID: usize = 20;

/// `(1/α) ∫_0^α q(β) dβ` for the lower quantile function `q` of the Choquet
/// image of `x`, integrated directly over the steps of `q`.
pub fn averaged_quantile(c: &FiniteCapacity, alpha: f64, x: &Act) -> f64 {
    let mut vals = x.outcomes().to_vec();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let mut prev_cut: f64 = 0.0;
    let mut acc = 0.0;
    for v in vals {
        let cut = 1.0 - c.value(x.upper_set(v));
        acc += v * (cut.min(alpha) - prev_cut.min(alpha));
        prev_cut = cut;
    }
    acc / alpha
}

/// `(1/a) log Σ_k e^{a v_k} (ν(X > v_{k-1}) - ν(X > v_k))` computed from the
/// capacity chain, and its mean when `a = 0`.
pub fn entropic_on_capacity(c: &FiniteCapacity, a: f64, x: &Act) -> f64 {
    let mut vals = x.outcomes().to_vec();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let mut prev = 1.0;
    let mut acc = 0.0;
    for v in vals {
        let level = c.value(x.upper_set(v));
        let w = prev - level;
        acc += w * if a == 0.0 { v } else { (a * v).exp() };
        prev = level;
    }
    if a == 0.0 {
        acc
    } else {
        acc.ln() / a
    }
}

fn choquet(c: &FiniteCapacity) -> ActToDistMap {
    ActToDistMap::Choquet {
        capacity: c.clone(),
    }
}

fn indicators(n: usize) -> impl Iterator<Item = Act> {
    (0..1u32 << n).map(move |m| Act::indicator(n, Event(m)))
}

/// Capacities on two states with singleton values on a coarse grid.
fn two_state_grid() -> Vec<FiniteCapacity> {
    const STEPS: [f64; 5] = [0.0, 0.25, 0.5, 0.7, 1.0];
    let mut out = Vec::new();
    for a in STEPS {
        for b in STEPS {
            out.push(FiniteCapacity::new(2, vec![0.0, a, b, 1.0]).expect("grid capacity"));
        }
    }
    out
}

pub(super) fn comonotonic_algebra(s: &dyn Subject, b: &Budget, out: &mut Outcome) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    for i in 0..b.instances {
        let n = b.n_for(i);
        let c = if i % 2 == 0 {
            rng.capacity(n)
        } else {
            rng.supermodular_capacity(n)
        };
        let map = choquet(&c);
        let (x, y) = rng.comonotonic_pair(n);
        let lambda = if i % 10 == 0 {
            0.0
        } else {
            rng.uniform(0.0, 3.0)
        };
        out.checked += 1;
        let dx = s.act_to_dist(&map, &x)?;
        let dy = s.act_to_dist(&map, &y)?;
        if s.act_to_dist(&map, &x.add(&y)?)? != s.oplus(&dx, &dy) {
            out.fail(format!("sum capacity=[{c}] x={x} y={y}"));
            return Ok(());
        }
        if s.act_to_dist(&map, &x.scale(lambda))? != s.otimes(&dx, lambda)? {
            out.fail(format!("scale capacity=[{c}] x={x} lambda={lambda}"));
            return Ok(());
        }
    }
    Ok(())
}

pub(super) fn quantile_identities(s: &dyn Subject, b: &Budget, out: &mut Outcome) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    for i in 0..b.instances {
        let n = b.n_for(i);
        let c = rng.capacity(n);
        let x = rng.act(n);
        let d = s.act_to_dist(&choquet(&c), &x)?;
        let levels = d.survival_levels();
        // Every third instance probes a jump of the quantile function.
        let mut alpha = rng.uniform(0.001, 0.999);
        if i % 3 == 0 {
            let jump = 1.0 - levels[rng.index(levels.len())];
            if jump > 0.0 && jump < 1.0 {
                alpha = jump;
            }
        }
        out.checked += 1;
        let g = s.g_alpha(&c, alpha, &x)?;
        let var = d.quantile_at(alpha)?;
        if g != var {
            out.fail(format!(
                "quantile capacity=[{c}] x={x} alpha={alpha} distorted={g} direct={var}"
            ));
            return Ok(());
        }
        let h = s.h_alpha(&c, alpha, &x)?;
        let direct = averaged_quantile(&c, alpha, &x);
        if (h - direct).abs() > AVERAGED_QUANTILE_TOL {
            out.fail(format!(
                "averaged quantile capacity=[{c}] x={x} alpha={alpha} distorted={h} direct={direct}"
            ));
            return Ok(());
        }
    }
    Ok(())
}

/// Utility families used for the transformation property.
fn utility_families(rng: &mut Sampler) -> Vec<UtilitySpec> {
    vec![
        UtilitySpec::Identity {},
        UtilitySpec::Power {
            exponent: 0.5,
            shift: -6.0,
        },
        UtilitySpec::Power {
            exponent: 2.0,
            shift: -6.0,
        },
        UtilitySpec::Exponential { a: 0.7 },
        UtilitySpec::Exponential { a: -1.1 },
        rng.increasing_transform(),
    ]
}

pub(super) fn mapping_characterization(
    s: &dyn Subject,
    b: &Budget,
    out: &mut Outcome,
) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    for i in 0..b.instances {
        let n = b.n_for(i);
        let c = rng.capacity(n);
        let map = choquet(&c);
        let x = rng.act(n);
        out.checked += 1;

        let y = Act::new(
            x.outcomes()
                .iter()
                .map(|&v| {
                    if rng.coin() {
                        v
                    } else {
                        v - rng.uniform(0.0, 2.0)
                    }
                })
                .collect(),
        )?;
        if !s
            .act_to_dist(&map, &x)?
            .fsd_compare(&s.act_to_dist(&map, &y)?)
            .is_ge()
        {
            out.fail(format!("monotonicity capacity=[{c}] x={x} y={y}"));
            return Ok(());
        }

        let dx = s.act_to_dist(&map, &x)?;
        for u in utility_families(&mut rng) {
            let lhs = s.act_to_dist(&map, &x.map(|v| u.eval_unchecked(v)))?;
            if lhs != dx.pushforward_monotone(&u)? {
                out.fail(format!("transformation capacity=[{c}] x={x} utility={u:?}"));
                return Ok(());
            }
        }

        let z = Act::new((0..n).map(|_| rng.uniform(-1.0, 1.0)).collect())?;
        let mut last = f64::INFINITY;
        for k in 1..=CONTINUITY_STEPS {
            let eps = 2f64.powf(-(k as f64) / 3.0);
            let xk = x.add(&z.scale(eps))?;
            last = s.act_to_dist(&map, &xk)?.levy_distance(&dx);
            if last > eps * (1.0 + 1e-9) + 1e-12 {
                out.fail(format!(
                    "continuity capacity=[{c}] x={x} direction={z} step={k} levy={last}"
                ));
                return Ok(());
            }
        }
        if last >= CONTINUITY_TARGET {
            out.fail(format!("continuity capacity=[{c}] x={x} final levy={last}"));
            return Ok(());
        }
    }
    out.notes.push(format!(
        "continuity checked on surrogate sequences x + 2^(-k/3) z, k <= {CONTINUITY_STEPS}"
    ));

    // The quantile mixture of two priors must break the transformation property.
    let mut found = None;
    for _ in 0..b.instances.max(50) {
        let n = 2 + rng.index(b.n_max - 1);
        let map = ActToDistMap::QuantileMixture {
            components: vec![
                MixtureComponent {
                    prior: rng.probability_vector(n),
                    weight: 0.5,
                },
                MixtureComponent {
                    prior: rng.probability_vector(n),
                    weight: 0.5,
                },
            ],
        };
        let x = rng.act(n);
        let dx = s.act_to_dist(&map, &x)?;
        for u in utility_families(&mut rng).into_iter().skip(1) {
            let lhs = s.act_to_dist(&map, &x.map(|v| u.eval_unchecked(v)))?;
            if lhs.quantile_gap(&dx.pushforward_monotone(&u)?) > 1e-9 {
                found = Some(format!("x={x} utility={u:?}"));
                break;
            }
        }
        if found.is_some() {
            break;
        }
    }
    match found {
        Some(w) => out.notes.push(format!(
            "quantile mixture breaks the transformation property at {w}"
        )),
        None => {
            out.fail("quantile mixture satisfied the transformation property on every trial".into())
        }
    }
    Ok(())
}

pub(super) fn concavity_iff_supermodular(
    s: &dyn Subject,
    b: &Budget,
    out: &mut Outcome,
) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    let mut capacities = two_state_grid();
    for i in 0..b.instances {
        let n = b.n_for(i);
        capacities.push(if i % 2 == 0 {
            rng.supermodular_capacity(n)
        } else {
            rng.capacity(n)
        });
    }
    let (mut sup, mut non) = (0, 0);
    for c in capacities {
        out.checked += 1;
        let map = choquet(&c);
        let indicator = s.concavity_report(&map, ConcavityMode::IndicatorWitness)?;
        if s.is_supermodular(&c) {
            sup += 1;
            if let Some(w) = indicator.witness {
                out.fail(format!(
                    "supermodular capacity=[{c}] has indicator witness x={} y={}",
                    w.x, w.y
                ));
                return Ok(());
            }
            let sampled = s.concavity_report(
                &map,
                ConcavityMode::Sampled {
                    trials: CONCAVITY_TRIALS,
                    seed: rng.index(usize::MAX) as u64,
                },
            )?;
            if let Some(w) = sampled.witness {
                out.fail(format!(
                    "supermodular capacity=[{c}] violates concavity x={} y={} lambda={}",
                    w.x, w.y, w.lambda
                ));
                return Ok(());
            }
        } else {
            non += 1;
            match indicator.witness {
                Some(w) if w.lambda == 0.5 && w.events.is_some() => {}
                _ => {
                    out.fail(format!(
                        "non-supermodular capacity=[{c}] has no indicator witness"
                    ));
                    return Ok(());
                }
            }
        }
    }
    out.notes
        .push(format!("supermodular={sup} non_supermodular={non}"));
    Ok(())
}

/// Choquet and core images agree: identical atoms, levels within LP noise.
fn images_agree(a: &DiscreteDistribution, b: &DiscreteDistribution) -> bool {
    a.values() == b.values() && a.approx_eq(b, LP_LEVEL_TOL)
}

pub(super) fn exactness_iff_core_agreement(
    s: &dyn Subject,
    b: &Budget,
    out: &mut Outcome,
) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    let (mut exact_count, mut inexact_count, mut skipped) = (0, 0, 0);
    for i in 0..b.instances {
        let n = b.n_for(i);
        let c = match i % 3 {
            0 => rng.supermodular_capacity(n),
            1 => rng.balanced_capacity(n),
            _ => rng.capacity(n),
        };
        let acts: Vec<Act> = (0..5).map(|_| rng.act(n)).collect();
        if !c.is_balanced()? {
            skipped += 1;
            continue;
        }
        out.checked += 1;
        let choquet_map = choquet(&c);
        let core_map = ActToDistMap::CoreOf {
            capacity: c.clone(),
        };
        let exact = s.is_exact(&c)?;
        let mut disagreement = None;
        for x in indicators(n).chain(acts) {
            let a = s.act_to_dist(&choquet_map, &x)?;
            let k = s.act_to_dist(&core_map, &x)?;
            if !images_agree(&a, &k) {
                disagreement = Some(x);
                break;
            }
        }
        if exact {
            exact_count += 1;
            if let Some(x) = disagreement {
                out.fail(format!("exact capacity=[{c}] but images differ at x={x}"));
                return Ok(());
            }
        } else {
            inexact_count += 1;
            match disagreement {
                Some(x) if x.outcomes().iter().all(|&v| v == 0.0 || v == 1.0) => {}
                _ => {
                    out.fail(format!(
                        "inexact capacity=[{c}] but images agree on every indicator act"
                    ));
                    return Ok(());
                }
            }
        }
    }
    out.notes.push(format!(
        "exact={exact_count} inexact={inexact_count} skipped_unbalanced={skipped}"
    ));
    Ok(())
}

fn robust_statistics(rng: &mut Sampler) -> Vec<StatisticSpec> {
    let distortion = if rng.coin() {
        DistortionSpec::Power { exponent: 2.0 }
    } else {
        DistortionSpec::DualPower { exponent: 1.5 }
    };
    let shifted_sqrt = UtilitySpec::Power {
        exponent: 0.5,
        shift: -6.0,
    };
    vec![
        StatisticSpec::Expectation {},
        StatisticSpec::EU {
            utility: shifted_sqrt.clone(),
        },
        StatisticSpec::RDU {
            utility: shifted_sqrt,
            distortion,
        },
    ]
}

pub(super) fn robust_representation(s: &dyn Subject, b: &Budget, out: &mut Outcome) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    for i in 0..b.instances {
        let n = b.n_for(i);
        let c = rng.supermodular_capacity(n);
        out.checked += 1;
        for stat in robust_statistics(&mut rng) {
            let model = AmbiguityModel::choquet(c.clone(), stat.clone());
            for _ in 0..20 {
                let x = rng.act(n);
                let robust = s.robust_evaluate(&c, &stat, &x)?;
                let direct = s.evaluate(&model, &x)?;
                if (robust - direct).abs() > ROBUST_TOL {
                    out.fail(format!(
                        "capacity=[{c}] statistic={stat:?} x={x} robust={robust} choquet={direct}"
                    ));
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn pointwise_max(a: &FiniteCapacity, b: &FiniteCapacity) -> FiniteCapacity {
    let v = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x.max(*y))
        .collect();
    FiniteCapacity::new(a.n(), v).expect("maximum of capacities is a capacity")
}

pub(super) fn comparative_aversion(s: &dyn Subject, b: &Budget, out: &mut Outcome) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    let grid = two_state_grid();
    let mut pairs: Vec<(FiniteCapacity, FiniteCapacity)> = Vec::new();
    for c1 in &grid {
        for c2 in &grid {
            pairs.push((c1.clone(), c2.clone()));
        }
    }
    for i in 0..b.instances {
        let n = b.n_for(i);
        let c2 = rng.capacity(n);
        let c1 = match i % 3 {
            0 => c2.clone(),
            1 => pointwise_max(&c2, &rng.capacity(n)),
            _ => rng.capacity(n),
        };
        pairs.push((c1, c2));
    }
    let (mut holds, mut fails) = (0, 0);
    for (c1, c2) in pairs {
        out.checked += 1;
        let n = c1.n();
        let (m1, m2) = (choquet(&c1), choquet(&c2));
        match s.more_ambiguity_averse(&c1, &c2)? {
            None => {
                holds += 1;
                let acts: Vec<Act> = indicators(n).chain((0..10).map(|_| rng.act(n))).collect();
                for x in acts {
                    if !s
                        .act_to_dist(&m1, &x)?
                        .fsd_compare(&s.act_to_dist(&m2, &x)?)
                        .is_ge()
                    {
                        out.fail(format!(
                            "pair [{c1}] / [{c2}] reported ordered but images are not at x={x}"
                        ));
                        return Ok(());
                    }
                }
            }
            Some(e) => {
                fails += 1;
                let x = Act::indicator(n, e);
                let genuine = c1.value(e) < c2.value(e)
                    && !s
                        .act_to_dist(&m1, &x)?
                        .fsd_compare(&s.act_to_dist(&m2, &x)?)
                        .is_ge();
                if !genuine {
                    out.fail(format!(
                        "pair [{c1}] / [{c2}] reported witness {} that does not separate them",
                        e.key(n)
                    ));
                    return Ok(());
                }
            }
        }
    }
    out.notes.push(format!("ordered={holds} unordered={fails}"));
    Ok(())
}

pub(super) fn distortion_preservation(
    s: &dyn Subject,
    b: &Budget,
    out: &mut Outcome,
) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    for i in 0..b.instances {
        let n = b.n_for(i);
        out.checked += 1;
        let sup = rng.supermodular_capacity(n);
        let convex = [
            DistortionSpec::Power { exponent: 2.0 },
            DistortionSpec::Power { exponent: 3.0 },
            rng.piecewise_distortion(true),
        ];
        for g in &convex {
            let d = s.distort(&sup, g)?;
            if !s.is_supermodular(&d) {
                out.fail(format!("supermodular capacity=[{sup}] distortion={g:?}"));
                return Ok(());
            }
        }
        let sub = rng.submodular_capacity(n);
        let concave = [
            DistortionSpec::DualPower { exponent: 2.0 },
            DistortionSpec::DualPower { exponent: 3.0 },
            rng.piecewise_distortion(false),
        ];
        for g in &concave {
            let d = s.distort(&sub, g)?;
            if !s.is_submodular(&d) {
                out.fail(format!("submodular capacity=[{sub}] distortion={g:?}"));
                return Ok(());
            }
        }
    }
    Ok(())
}

/// All probability vectors on `n` states with coordinates in multiples of
/// `1/steps`.
fn simplex_grid(n: usize, steps: usize) -> Vec<Vec<f64>> {
    fn rec(n: usize, left: usize, steps: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if cur.len() == n - 1 {
            let mut v: Vec<f64> = cur.iter().map(|&k| k as f64 / steps as f64).collect();
            v.push(left as f64 / steps as f64);
            out.push(v);
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, steps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, steps, steps, &mut Vec::new(), &mut out);
    out
}

pub(super) fn concave_not_averse(s: &dyn Subject, b: &Budget, out: &mut Outcome) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    for i in 0..b.instances {
        let n = b.n_for(i);
        let mu1 = rng.probability_vector(n);
        let mu2 = rng.probability_vector(n);
        let map = ActToDistMap::QuantileMixture {
            components: vec![
                MixtureComponent {
                    prior: mu1.clone(),
                    weight: 0.5,
                },
                MixtureComponent {
                    prior: mu2.clone(),
                    weight: 0.5,
                },
            ],
        };
        out.checked += 1;
        let describe = || format!("priors={:?} / {:?}", mu1.weights(), mu2.weights());

        let seed = rng.index(usize::MAX) as u64;
        for mode in [
            ConcavityMode::IndicatorWitness,
            ConcavityMode::Sampled {
                trials: 10 * CONCAVITY_TRIALS,
                seed,
            },
        ] {
            if let Some(w) = s.concavity_report(&map, mode)?.witness {
                out.fail(format!(
                    "{} not concave at x={} y={} lambda={}",
                    describe(),
                    w.x,
                    w.y,
                    w.lambda
                ));
                return Ok(());
            }
        }

        // A prior μ with D(X) ≤_fsd X_#μ for all X must satisfy
        // μ(E) ≥ P(D(1_E) > 0) on every event.
        let floor: Vec<f64> = (0..1u32 << n)
            .map(|m| {
                s.act_to_dist(&map, &Act::indicator(n, Event(m)))
                    .map(|d| d.survival_at(0.0))
            })
            .collect::<Result<_>>()?;
        let full = Event::full(n);
        let defeating = Event::proper_nonempty(n).find(|&a| {
            let ac = a.complement(n);
            mu1.measure(a) > mu2.measure(a) + 1e-12
                && floor[a.0 as usize] >= mu1.measure(a) - 1e-12
                && floor[ac.0 as usize] >= mu2.measure(ac) - 1e-12
                && floor[a.0 as usize] + floor[ac.0 as usize] > 1.0 + 1e-12
        });
        let Some(a) = defeating else {
            out.fail(format!("{} has no defeating event", describe()));
            return Ok(());
        };
        debug_assert!(a != full);
        for cand in simplex_grid(n, SIMPLEX_GRID) {
            let p = ProbabilityVector::new(cand.clone())?;
            let dominates =
                (0..1u32 << n).all(|m| p.measure(Event(m)) >= floor[m as usize] - 1e-12);
            if dominates {
                out.fail(format!(
                    "{} is dominated by grid prior {cand:?}",
                    describe()
                ));
                return Ok(());
            }
        }
        if i == 0 {
            out.notes.push(format!(
                "first instance defeated by event {} with floors {} + {}",
                a.key(n),
                floor[a.0 as usize],
                floor[a.complement(n).0 as usize]
            ));
        }
    }
    Ok(())
}

pub(super) fn binary_concavity(s: &dyn Subject, b: &Budget, out: &mut Outcome) -> Result<()> {
    let mut rng = Sampler::new(b.seed);
    for i in 0..b.instances {
        let n = b.n_for(i);
        let c = if i % 2 == 0 {
            rng.supermodular_capacity(n)
        } else {
            let k = 2 + rng.index(3);
            rng.lower_envelope(n, k)
        };
        out.checked += 1;
        if !s.is_exact(&c)? {
            out.fail(format!("exactness test rejected exact capacity=[{c}]"));
            return Ok(());
        }
        let map = choquet(&c);
        for _ in 0..20 {
            let a = rng.event(n);
            let (p, q) = (rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
            let (hi, lo) = (p.max(q), p.min(q));
            let target = Act::new(
                (0..n)
                    .map(|j| if a.contains(j) { hi } else { lo })
                    .collect(),
            )?;
            let k = 2 + rng.index(2);
            let mut lambdas = rng.probability_vector(k).weights().to_vec();
            if lambdas[k - 1] < 0.05 {
                lambdas[k - 1] += 0.05;
                let total: f64 = lambdas.iter().sum();
                lambdas.iter_mut().for_each(|l| *l /= total);
            }
            let mut parts: Vec<Act> = (0..k - 1).map(|_| rng.act(n)).collect();
            let mut rest = target.clone();
            for (x, l) in parts.iter().zip(&lambdas) {
                rest = rest.add(&x.scale(-l))?;
            }
            parts.push(rest.scale(1.0 / lambdas[k - 1]));

            let lhs = s.act_to_dist(&map, &target)?;
            let mut rhs: Option<DiscreteDistribution> = None;
            for (x, l) in parts.iter().zip(&lambdas) {
                let term = s.otimes(&s.act_to_dist(&map, x)?, *l)?;
                rhs = Some(match rhs {
                    None => term,
                    Some(r) => s.oplus(&r, &term),
                });
            }
            let rhs = rhs.expect("at least two parts");
            if !lhs.ssd_compare(&rhs).is_ge() {
                let shown: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
                out.fail(format!(
                    "capacity=[{c}] binary act {target} weights={lambdas:?} parts={}",
                    shown.join(" ")
                ));
                return Ok(());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_grid_counts() {
        assert_eq!(simplex_grid(2, 4).len(), 5);
        assert_eq!(simplex_grid(3, 20).len(), 231);
        for v in simplex_grid(3, 5) {
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn averaged_quantile_on_a_bet() {
        let c = FiniteCapacity::new(2, vec![0.0, 0.0, 0.25, 1.0]).unwrap();
        let x = Act::new(vec![0.0, 6.0]).unwrap();
        assert!((averaged_quantile(&c, 0.8, &x) - 0.375).abs() < 1e-15);
        assert_eq!(averaged_quantile(&c, 0.5, &x), 0.0);
    }

    #[test]
    fn entropic_on_additive_capacity() {
        let p = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
        let c = FiniteCapacity::from_probability(&p).unwrap();
        let x = Act::new(vec![0.0, 2.0]).unwrap();
        let direct = ((1.0 + 2f64.exp()) / 2.0).ln();
        assert!((entropic_on_capacity(&c, 1.0, &x) - direct).abs() < 1e-15);
        assert_eq!(entropic_on_capacity(&c, 0.0, &x), 1.0);
    }
}
