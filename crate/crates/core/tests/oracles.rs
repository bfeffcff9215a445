use ate_core::choquet::choquet_integral_distorted;
use ate_core::oracles::{verify, verify_with, Budget, Subject, TheoremId};
use ate_core::{
    Act, ActToDistMap, DiscreteDistribution, DistortionSpec, Error, Event, FiniteCapacity, Result,
    StatisticSpec,
};

fn small(theorem: TheoremId) -> Budget {
    let mut b = theorem.default_budget();
    b.instances = b.instances.min(60);
    b
}

fn assert_caught(subject: &dyn Subject, theorem: TheoremId) {
    let report = verify_with(subject, theorem, small(theorem)).unwrap();
    assert!(
        !report.passed,
        "planted fault went unnoticed by {theorem}:\n{}",
        report.to_records()
    );
    assert!(report.witness.is_some());
}

#[test]
fn every_suite_passes_on_the_library() {
    for theorem in TheoremId::ALL {
        let report = verify(theorem, theorem.default_budget()).unwrap();
        assert!(report.passed, "{}", report.to_records());
        assert!(report.instances_checked > 0);
        assert!(report.witness.is_none());
    }
}

#[test]
fn reports_are_reproducible() {
    for theorem in TheoremId::ALL {
        let a = verify(theorem, small(theorem)).unwrap();
        let b = verify(theorem, small(theorem)).unwrap();
        assert_eq!(a.to_records(), b.to_records());
    }
}

#[test]
fn identifiers_round_trip() {
    for theorem in TheoremId::ALL {
        assert_eq!(theorem.as_str().parse::<TheoremId>().unwrap(), theorem);
    }
    assert!(matches!(
        "thm99".parse::<TheoremId>(),
        Err(Error::Config(_))
    ));
}

#[test]
fn budgets_respect_state_caps() {
    let mut b = TheoremId::ExactnessIffCoreAgreement.default_budget();
    b.n_max = 7;
    assert!(matches!(
        verify(TheoremId::ExactnessIffCoreAgreement, b),
        Err(Error::Size(_))
    ));
    b.n_max = 1;
    assert!(verify(TheoremId::ExactnessIffCoreAgreement, b).is_err());
    let mut b = TheoremId::RobustRepresentation.default_budget();
    b.n_max = 9;
    assert!(verify(TheoremId::RobustRepresentation, b).is_err());
}

#[test]
fn concavity_suite_on_two_states() {
    let b = Budget {
        instances: 20,
        seed: 7,
        n_max: 2,
    };
    let report = verify(TheoremId::ConcavityIffSupermodular, b).unwrap();
    assert!(report.passed);
    assert!(report.notes.iter().any(|n| n.contains("non_supermodular")));
}

struct BiasedSum;
impl Subject for BiasedSum {
    fn oplus(&self, a: &DiscreteDistribution, b: &DiscreteDistribution) -> DiscreteDistribution {
        a.oplus(b).shift(1e-9)
    }
}

#[test]
fn canary_comonotonic_algebra() {
    assert_caught(&BiasedSum, TheoremId::ComonotonicAlgebra);
}

struct StrictCut;
impl Subject for StrictCut {
    fn g_alpha(&self, c: &FiniteCapacity, alpha: f64, x: &Act) -> Result<f64> {
        let cut = 1.0 - alpha;
        choquet_integral_distorted(c, x, |t| if t > cut { 1.0 } else { 0.0 })
    }
}

#[test]
fn canary_quantile_identities() {
    assert_caught(&StrictCut, TheoremId::QuantileIdentities);
}

struct Reversed;
impl Subject for Reversed {
    fn act_to_dist(&self, map: &ActToDistMap, x: &Act) -> Result<DiscreteDistribution> {
        match map {
            ActToDistMap::Choquet { .. } => map.act_to_dist(&x.scale(-1.0)),
            _ => map.act_to_dist(x),
        }
    }
}

#[test]
fn canary_mapping_characterization() {
    assert_caught(&Reversed, TheoremId::MappingCharacterization);
}

struct AlwaysSupermodular;
impl Subject for AlwaysSupermodular {
    fn is_supermodular(&self, _: &FiniteCapacity) -> bool {
        true
    }
}

#[test]
fn canary_concavity_iff_supermodular() {
    assert_caught(&AlwaysSupermodular, TheoremId::ConcavityIffSupermodular);
}

struct AlwaysExact;
impl Subject for AlwaysExact {
    fn is_exact(&self, _: &FiniteCapacity) -> Result<bool> {
        Ok(true)
    }
}

#[test]
fn canary_exactness() {
    assert_caught(&AlwaysExact, TheoremId::ExactnessIffCoreAgreement);
}

struct BestCase;
impl Subject for BestCase {
    fn robust_evaluate(
        &self,
        c: &FiniteCapacity,
        statistic: &StatisticSpec,
        x: &Act,
    ) -> Result<f64> {
        let mut best = f64::NEG_INFINITY;
        for mu in c.core_vertices_supermodular()? {
            let d = ActToDistMap::Probabilistic { prior: mu }.act_to_dist(x)?;
            best = best.max(statistic.certainty_equivalent(&d)?);
        }
        Ok(best)
    }
}

#[test]
fn canary_robust_representation() {
    assert_caught(&BestCase, TheoremId::RobustRepresentation);
}

struct AlwaysOrdered;
impl Subject for AlwaysOrdered {
    fn more_ambiguity_averse(
        &self,
        _: &FiniteCapacity,
        _: &FiniteCapacity,
    ) -> Result<Option<Event>> {
        Ok(None)
    }
}

#[test]
fn canary_comparative_aversion() {
    assert_caught(&AlwaysOrdered, TheoremId::ComparativeAversion);
}

struct WrongDistortion;
impl Subject for WrongDistortion {
    fn distort(&self, c: &FiniteCapacity, _: &DistortionSpec) -> Result<FiniteCapacity> {
        c.distort(&DistortionSpec::DualPower { exponent: 2.0 })
    }
}

#[test]
fn canary_distortion_preservation() {
    assert_caught(&WrongDistortion, TheoremId::DistortionPreservation);
}

struct InfimumInsteadOfMixture;
impl Subject for InfimumInsteadOfMixture {
    fn act_to_dist(&self, map: &ActToDistMap, x: &Act) -> Result<DiscreteDistribution> {
        match map {
            ActToDistMap::QuantileMixture { components } => ActToDistMap::PriorSet {
                priors: components.iter().map(|c| c.prior.clone()).collect(),
            }
            .act_to_dist(x),
            _ => map.act_to_dist(x),
        }
    }
}

#[test]
fn canary_concave_not_averse() {
    assert_caught(&InfimumInsteadOfMixture, TheoremId::ConcaveNotAverse);
}

struct NeverExact;
impl Subject for NeverExact {
    fn is_exact(&self, _: &FiniteCapacity) -> Result<bool> {
        Ok(false)
    }
}

#[test]
fn canary_binary_concavity() {
    assert_caught(&NeverExact, TheoremId::BinaryConcavity);
}
