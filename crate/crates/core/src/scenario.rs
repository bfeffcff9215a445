//! Scenario files: a state count, named acts, one model and run options.

use std::fmt;
use std::path::Path;

use indexmap::IndexMap;
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::capacity::{FiniteCapacity, MAX_STATES, MIN_STATES};
use crate::choquet::{Act, ActToDistMap};
use crate::error::{check_dim, Error, Result};
use crate::model::{AmbiguityModel, TIE_TOL};
use crate::statistic::StatisticSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioOptions {
    /// Values closer than this are reported as indifferent.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_tolerance() -> f64 {
    TIE_TOL
}

fn default_seed() -> u64 {
    7
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        Self {
            tolerance: default_tolerance(),
            seed: default_seed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub n: usize,
    /// Acts in file order.
    #[serde(deserialize_with = "unique_acts")]
    pub acts: IndexMap<String, Act>,
    pub model: AmbiguityModel,
    #[serde(default)]
    pub options: ScenarioOptions,
    /// Capacity analysed by `capacity-report` when the model carries none.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<FiniteCapacity>,
    /// Free-form remarks; ignored by every command.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let scenario: Scenario = serde_json::from_str(text).map_err(|e| {
            if e.line() == 0 {
                Error::Parse(e.to_string())
            } else {
                Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
            }
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_STATES..=MAX_STATES).contains(&self.n) {
            return Err(Error::Size(format!(
                "scenario needs between {MIN_STATES} and {MAX_STATES} states, got {}",
                self.n
            )));
        }
        if self.acts.is_empty() {
            return Err(Error::Config("scenario lists no acts".into()));
        }
        for act in self.acts.values() {
            check_dim(self.n, act.n())?;
        }
        check_dim(self.n, self.model.n())?;
        self.model.validate()?;
        if let Some(c) = &self.capacity {
            check_dim(self.n, c.n())?;
        }
        let tol = self.options.tolerance;
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::Config(format!(
                "tolerance {tol} must be non-negative"
            )));
        }
        Ok(())
    }

    /// Same scenario with the model's statistic replaced.
    pub fn with_statistic(&self, statistic: StatisticSpec) -> Result<Self> {
        Ok(Self {
            model: self.model.with_statistic(statistic)?,
            ..self.clone()
        })
    }

    /// The explicit capacity if present, otherwise the one inside the model's map.
    pub fn capacity(&self) -> Option<&FiniteCapacity> {
        self.capacity.as_ref().or(match &self.model {
            AmbiguityModel::Ate { map, .. } => map.capacity(),
            AmbiguityModel::Eta { .. } => None,
        })
    }

    /// Acts as owned `(name, act)` pairs, the shape `rank` takes.
    pub fn act_list(&self) -> Vec<(String, Act)> {
        self.acts
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Convenience constructor for a Choquet model.
    pub fn choquet(
        capacity: FiniteCapacity,
        statistic: StatisticSpec,
        acts: Vec<(String, Act)>,
    ) -> Result<Self> {
        let scenario = Self {
            n: capacity.n(),
            acts: acts.into_iter().collect(),
            model: AmbiguityModel::Ate {
                map: ActToDistMap::Choquet { capacity },
                statistic,
            },
            options: ScenarioOptions::default(),
            capacity: None,
            notes: Vec::new(),
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

fn unique_acts<'de, D>(deserializer: D) -> std::result::Result<IndexMap<String, Act>, D::Error>
where
    D: Deserializer<'de>,
{
    struct ActsVisitor;

    impl<'de> Visitor<'de> for ActsVisitor {
        type Value = IndexMap<String, Act>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an object mapping act names to outcome arrays")
        }

        fn visit_map<A: MapAccess<'de>>(
            self,
            mut map: A,
        ) -> std::result::Result<Self::Value, A::Error> {
            let mut acts = IndexMap::new();
            while let Some((name, act)) = map.next_entry::<String, Act>()? {
                if acts.contains_key(&name) {
                    return Err(serde::de::Error::custom(format!(
                        "duplicate act name {name:?}"
                    )));
                }
                acts.insert(name, act);
            }
            Ok(acts)
        }
    }

    deserializer.deserialize_map(ActsVisitor)
}
