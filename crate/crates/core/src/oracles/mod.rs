//! Brute-force verification of the structural results behind the models.
//!
//! Each [`TheoremId`] names one property suite. [`verify`] runs it on seeded
//! random instances plus small exhaustive grids and returns a
//! [`VerificationReport`]; the same budget always yields the same report.

mod checks;
mod subject;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::capacity::MAX_VERTEX_STATES;
use crate::error::{Error, Result};

pub use checks::{averaged_quantile, entropic_on_capacity};
pub use subject::{Reference, Subject};

/// State cap for checks that solve core LPs or search the simplex.
pub const LP_STATE_CAP: usize = 6;
/// State cap for everything else.
pub const GENERAL_STATE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    ComonotonicAlgebra,
    QuantileIdentities,
    MappingCharacterization,
    ConcavityIffSupermodular,
    ExactnessIffCoreAgreement,
    RobustRepresentation,
    ComparativeAversion,
    DistortionPreservation,
    ConcaveNotAverse,
    BinaryConcavity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::ComonotonicAlgebra,
        TheoremId::QuantileIdentities,
        TheoremId::MappingCharacterization,
        TheoremId::ConcavityIffSupermodular,
        TheoremId::ExactnessIffCoreAgreement,
        TheoremId::RobustRepresentation,
        TheoremId::ComparativeAversion,
        TheoremId::DistortionPreservation,
        TheoremId::ConcaveNotAverse,
        TheoremId::BinaryConcavity,
    ];

    /// Identifier accepted on the command line.
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ComonotonicAlgebra => "prop5_comonotonic_algebra",
            TheoremId::QuantileIdentities => "prop12_quantile_identities",
            TheoremId::MappingCharacterization => "thm1_r_properties",
            TheoremId::ConcavityIffSupermodular => "thm5_saa",
            TheoremId::ExactnessIffCoreAgreement => "lemma3_exactness",
            TheoremId::RobustRepresentation => "thm6_robust",
            TheoremId::ComparativeAversion => "thm4_comparative",
            TheoremId::DistortionPreservation => "appA_distortion_preservation",
            TheoremId::ConcaveNotAverse => "ex3_concave_not_averse",
            TheoremId::BinaryConcavity => "prop10_forward",
        }
    }

    /// Largest state count the suite accepts.
    pub fn state_cap(self) -> usize {
        match self {
            TheoremId::ExactnessIffCoreAgreement
            | TheoremId::BinaryConcavity
            | TheoremId::ConcaveNotAverse => LP_STATE_CAP,
            TheoremId::RobustRepresentation => MAX_VERTEX_STATES,
            _ => GENERAL_STATE_CAP,
        }
    }

    /// Budget used when the caller does not pick one.
    pub fn default_budget(self) -> Budget {
        let (instances, n_max) = match self {
            TheoremId::ComonotonicAlgebra | TheoremId::QuantileIdentities => (1000, 6),
            TheoremId::MappingCharacterization => (200, 6),
            TheoremId::ConcavityIffSupermodular => (200, 3),
            TheoremId::ExactnessIffCoreAgreement | TheoremId::BinaryConcavity => (100, 5),
            TheoremId::RobustRepresentation => (100, 6),
            TheoremId::ComparativeAversion | TheoremId::DistortionPreservation => (200, 6),
            TheoremId::ConcaveNotAverse => (20, 4),
        };
        Budget {
            instances,
            seed: 7,
            n_max,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
                Error::Config(format!(
                    "unknown theorem id {s:?}; expected one of {}",
                    known.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Number of random instances; grid instances come on top.
    pub instances: usize,
    pub seed: u64,
    /// Random instances cycle through state counts `2..=n_max`.
    pub n_max: usize,
}

impl Budget {
    fn validate(&self, theorem: TheoremId) -> Result<()> {
        let cap = theorem.state_cap();
        if self.n_max < 2 || self.n_max > cap {
            return Err(Error::Size(format!(
                "{theorem} accepts n_max between 2 and {cap}, got {}",
                self.n_max
            )));
        }
        if self.instances == 0 {
            return Err(Error::Config("budget needs at least one instance".into()));
        }
        Ok(())
    }

    /// State count of random instance `i`.
    pub(crate) fn n_for(&self, i: usize) -> usize {
        2 + i % (self.n_max - 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub budget: Budget,
    pub instances_checked: usize,
    pub passed: bool,
    /// Description of the first failing instance.
    pub witness: Option<String>,
    /// Coverage remarks, such as properties checked only on surrogates.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    /// `key=value` lines in fixed order. Elapsed time is left out so that the
    /// records are reproducible.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        };
        line("theorem_id", self.theorem.as_str());
        line("seed", &self.budget.seed.to_string());
        line("n_max", &self.budget.n_max.to_string());
        line("instances_requested", &self.budget.instances.to_string());
        line("instances_checked", &self.instances_checked.to_string());
        line("passed", if self.passed { "true" } else { "false" });
        line("witness", self.witness.as_deref().unwrap_or("none"));
        for note in &self.notes {
            line("note", note);
        }
        out
    }
}

/// Tally shared by the individual checks.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub checked: usize,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn fail(&mut self, witness: String) {
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }
}

/// Runs the property suite for `theorem` against the library.
pub fn verify(theorem: TheoremId, budget: Budget) -> Result<VerificationReport> {
    verify_with(&Reference, theorem, budget)
}

/// Runs the property suite against an arbitrary implementation.
pub fn verify_with(
    subject: &dyn Subject,
    theorem: TheoremId,
    budget: Budget,
) -> Result<VerificationReport> {
    budget.validate(theorem)?;
    let start = Instant::now();
    let mut out = Outcome::default();
    match theorem {
        TheoremId::ComonotonicAlgebra => checks::comonotonic_algebra(subject, &budget, &mut out)?,
        TheoremId::QuantileIdentities => checks::quantile_identities(subject, &budget, &mut out)?,
        TheoremId::MappingCharacterization => {
            checks::mapping_characterization(subject, &budget, &mut out)?
        }
        TheoremId::ConcavityIffSupermodular => {
            checks::concavity_iff_supermodular(subject, &budget, &mut out)?
        }
        TheoremId::ExactnessIffCoreAgreement => {
            checks::exactness_iff_core_agreement(subject, &budget, &mut out)?
        }
        TheoremId::RobustRepresentation => {
            checks::robust_representation(subject, &budget, &mut out)?
        }
        TheoremId::ComparativeAversion => checks::comparative_aversion(subject, &budget, &mut out)?,
        TheoremId::DistortionPreservation => {
            checks::distortion_preservation(subject, &budget, &mut out)?
        }
        TheoremId::ConcaveNotAverse => checks::concave_not_averse(subject, &budget, &mut out)?,
        TheoremId::BinaryConcavity => checks::binary_concavity(subject, &budget, &mut out)?,
    }
    Ok(VerificationReport {
        theorem,
        budget,
        instances_checked: out.checked,
        passed: out.witness.is_none(),
        witness: out.witness,
        notes: out.notes,
        elapsed: start.elapsed(),
    })
}
