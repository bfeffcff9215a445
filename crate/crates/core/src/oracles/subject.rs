use crate::capacity::{Event, FiniteCapacity};
use crate::choquet::{Act, ActToDistMap, ConcavityMode, ConcavityWitness};
use crate::distribution::DiscreteDistribution;
use crate::error::Result;
use crate::model::{self, AmbiguityModel};
use crate::statistic::{CheckReport, DistortionSpec, StatisticSpec};

/// The operations the theorem checks exercise. Every method defaults to the
/// library implementation; tests override single methods to plant faults and
/// confirm the matching check notices.
pub trait Subject {
    fn act_to_dist(&self, map: &ActToDistMap, x: &Act) -> Result<DiscreteDistribution> {
        map.act_to_dist(x)
    }

    fn oplus(&self, a: &DiscreteDistribution, b: &DiscreteDistribution) -> DiscreteDistribution {
        a.oplus(b)
    }

    fn otimes(&self, a: &DiscreteDistribution, lambda: f64) -> Result<DiscreteDistribution> {
        a.otimes(lambda)
    }

    fn g_alpha(&self, c: &FiniteCapacity, alpha: f64, x: &Act) -> Result<f64> {
        crate::choquet::g_alpha(c, alpha, x)
    }

    fn h_alpha(&self, c: &FiniteCapacity, alpha: f64, x: &Act) -> Result<f64> {
        crate::choquet::h_alpha(c, alpha, x)
    }

    fn concavity_report(
        &self,
        map: &ActToDistMap,
        mode: ConcavityMode,
    ) -> Result<CheckReport<ConcavityWitness>> {
        map.check_concavity(mode)
    }

    fn is_supermodular(&self, c: &FiniteCapacity) -> bool {
        c.is_supermodular()
    }

    fn is_submodular(&self, c: &FiniteCapacity) -> bool {
        c.is_submodular()
    }

    fn is_exact(&self, c: &FiniteCapacity) -> Result<bool> {
        c.is_exact()
    }

    fn distort(&self, c: &FiniteCapacity, g: &DistortionSpec) -> Result<FiniteCapacity> {
        c.distort(g)
    }

    fn evaluate(&self, model: &AmbiguityModel, x: &Act) -> Result<f64> {
        model.evaluate(x)
    }

    fn robust_evaluate(
        &self,
        c: &FiniteCapacity,
        statistic: &StatisticSpec,
        x: &Act,
    ) -> Result<f64> {
        model::robust_evaluate(c, statistic, x)
    }

    fn more_ambiguity_averse(
        &self,
        c1: &FiniteCapacity,
        c2: &FiniteCapacity,
    ) -> Result<Option<Event>> {
        model::more_ambiguity_averse(c1, c2)
    }
}

/// The unmodified library.
#[derive(Debug, Clone, Copy, Default)]
pub struct Reference;

impl Subject for Reference {}
