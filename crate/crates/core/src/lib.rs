//! Decision models under ambiguity built from capacities, act-to-distribution
//! maps and risk statistics, with brute-force checkers for their structural
//! properties.

pub mod capacity;
pub mod choquet;
pub mod distribution;
pub mod error;
pub mod lp;
pub mod model;
pub mod oracles;
pub mod sampling;
pub mod scenario;
pub mod statistic;

pub use capacity::{CapacityLiteral, Event, FiniteCapacity, ProbabilityVector};
pub use choquet::{
    choquet_integral, g_alpha, h_alpha, Act, ActToDistMap, ConcavityMode, ConcavityWitness,
    MixtureComponent,
};
pub use distribution::{DiscreteDistribution, OrderRelation};
pub use error::{Error, Result};
pub use model::{
    is_ambiguity_averse, more_ambiguity_averse, robust_evaluate, AggregatorSpec, AmbiguityModel,
    RankedAct,
};
pub use scenario::{Scenario, ScenarioOptions};
pub use statistic::{CheckReport, DistortionSpec, StatisticSpec, UtilitySpec};
