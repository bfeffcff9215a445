//! Capacities on a finite state space, their cores, and the related LPs.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, domain, Error, Result};
use crate::lp::{self, LpOutcome};
use crate::statistic::DistortionSpec;

pub const MIN_STATES: usize = 2;
pub const MAX_STATES: usize = 12;
/// Largest state count for which core vertices are enumerated.
pub const MAX_VERTEX_STATES: usize = 8;
/// Slack allowed in the super/submodularity inequalities.
pub const MODULARITY_TOL: f64 = 1e-12;
/// Gap between the core minimum and the capacity below which an event counts
/// as exactly represented.
pub const EXACTNESS_TOL: f64 = 1e-9;
pub const PROBABILITY_SUM_TOL: f64 = 1e-12;
const VERTEX_DEDUP_TOL: f64 = 1e-12;

/// A subset of `{0, …, n-1}` stored as a bit mask; bit `i` is state `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Event(pub u32);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub fn full(n: usize) -> Self {
        Event(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        Event(1 << i)
    }

    pub fn from_states(states: &[usize]) -> Self {
        Event(states.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Event) -> Event {
        Event(self.0 | other.0)
    }

    pub fn intersection(self, other: Event) -> Event {
        Event(self.0 & other.0)
    }

    pub fn complement(self, n: usize) -> Event {
        Event(!self.0 & Event::full(n).0)
    }

    pub fn is_subset_of(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn states(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// `n` characters of `0`/`1`; character `i` is the membership of state `i`.
    pub fn key(self, n: usize) -> String {
        (0..n)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    pub fn parse_key(key: &str, n: usize) -> Result<Event> {
        if key.chars().count() != n {
            return Err(Error::Parse(format!(
                "event key {key:?} must have exactly {n} characters"
            )));
        }
        let mut mask = 0u32;
        for (i, ch) in key.chars().enumerate() {
            match ch {
                '1' => mask |= 1 << i,
                '0' => {}
                _ => {
                    return Err(Error::Parse(format!(
                        "event key {key:?} may contain only 0 and 1"
                    )))
                }
            }
        }
        Ok(Event(mask))
    }

    /// Proper nonempty subsets of an `n`-state space, in mask order.
    pub fn proper_nonempty(n: usize) -> impl Iterator<Item = Event> {
        (1..(1u32 << n) - 1).map(Event)
    }
}

/// A probability vector on `n` states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Accepts non-negative weights summing to one within `1e-12`; entries
    /// within `1e-15` below zero are clamped.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return domain("probability vector needs at least one state");
        }
        if weights.iter().any(|w| !w.is_finite() || *w < -1e-15) {
            return domain("probability weights must be finite and non-negative");
        }
        let weights: Vec<f64> = weights.into_iter().map(|w| w.max(0.0)).collect();
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_SUM_TOL {
            return domain(format!("probability weights sum to {total}"));
        }
        Ok(Self(weights))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn point_mass(n: usize, state: usize) -> Self {
        let mut w = vec![0.0; n];
        w[state] = 1.0;
        Self(w)
    }

    /// Builds from LP output, where the weights only sum to one up to the
    /// solver tolerance.
    pub(crate) fn from_solver(weights: Vec<f64>) -> Self {
        Self(weights.into_iter().map(|w| w.max(0.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    /// Sum of the weights in `event`, accumulated in state order and capped at one.
    pub fn measure(&self, event: Event) -> f64 {
        let mut acc = 0.0;
        for (i, w) in self.0.iter().enumerate() {
            if event.contains(i) {
                acc += w;
            }
        }
        acc.min(1.0)
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(w, v)| w * v).sum()
    }
}

impl TryFrom<Vec<f64>> for ProbabilityVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ProbabilityVector> for Vec<f64> {
    fn from(p: ProbabilityVector) -> Self {
        p.0
    }
}

/// A normalized monotone set function on `2^{0..n}`, indexed by event mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CapacityLiteral", into = "CapacityLiteral")]
pub struct FiniteCapacity {
    n: usize,
    values: Vec<f64>,
}

impl FiniteCapacity {
    /// `values[mask]` is the capacity of the event with that mask.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_state_count(n)?;
        check_dim(1 << n, values.len())?;
        if values
            .iter()
            .any(|v| !v.is_finite() || *v < 0.0 || *v > 1.0)
        {
            return domain("capacity values must lie in [0, 1]");
        }
        if values[0] != 0.0 {
            return domain("capacity of the empty event must be 0");
        }
        if values[(1 << n) - 1] != 1.0 {
            return domain("capacity of the full event must be 1");
        }
        for mask in 1..values.len() {
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                if values[mask ^ bit] > values[mask] {
                    return domain(format!(
                        "capacity is not monotone: {} exceeds {}",
                        Event((mask ^ bit) as u32).key(n),
                        Event(mask as u32).key(n)
                    ));
                }
            }
        }
        Ok(Self { n, values })
    }

    /// The additive capacity of a probability vector.
    pub fn from_probability(p: &ProbabilityVector) -> Result<Self> {
        let n = p.n();
        check_state_count(n)?;
        let mut values: Vec<f64> = (0..1u32 << n).map(|m| p.measure(Event(m))).collect();
        values[(1 << n) - 1] = 1.0;
        Self::new(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, event: Event) -> f64 {
        self.values[event.0 as usize]
    }

    /// `g ∘ ν`, with the empty and full events pinned to 0 and 1.
    pub fn distort(&self, g: &DistortionSpec) -> Result<Self> {
        g.validate()?;
        let mut values: Vec<f64> = self.values.iter().map(|&v| g.eval(v)).collect();
        let last = values.len() - 1;
        values[0] = 0.0;
        values[last] = 1.0;
        Self::new(self.n, values)
    }

    fn modularity_violation(&self, super_: bool) -> Option<(Event, Event)> {
        let size = 1u32 << self.n;
        for a in 0..size {
            for b in a + 1..size {
                let (i, u) = (a & b, a | b);
                if i == a || i == b {
                    continue;
                }
                let lhs = self.values[u as usize] + self.values[i as usize];
                let rhs = self.values[a as usize] + self.values[b as usize];
                let bad = if super_ {
                    lhs < rhs - MODULARITY_TOL
                } else {
                    lhs > rhs + MODULARITY_TOL
                };
                if bad {
                    return Some((Event(a), Event(b)));
                }
            }
        }
        None
    }

    /// First pair `(A, B)` with `ν(A∪B) + ν(A∩B) < ν(A) + ν(B)`.
    pub fn supermodularity_violation(&self) -> Option<(Event, Event)> {
        self.modularity_violation(true)
    }

    pub fn is_supermodular(&self) -> bool {
        self.supermodularity_violation().is_none()
    }

    pub fn submodularity_violation(&self) -> Option<(Event, Event)> {
        self.modularity_violation(false)
    }

    pub fn is_submodular(&self) -> bool {
        self.submodularity_violation().is_none()
    }

    /// Returns the additive representation when `ν(A) = Σ_{i∈A} ν({i})` for
    /// every event, up to `1e-12`.
    pub fn as_probability(&self) -> Option<ProbabilityVector> {
        let p: Vec<f64> = (0..self.n)
            .map(|i| self.value(Event::singleton(i)))
            .collect();
        let p = ProbabilityVector::new(p).ok()?;
        (0..self.values.len())
            .all(|m| (p.measure(Event(m as u32)) - self.values[m]).abs() <= 1e-12)
            .then_some(p)
    }

    /// First event on which `self` lies strictly below `other`.
    pub fn first_event_below(&self, other: &FiniteCapacity) -> Result<Option<Event>> {
        check_dim(self.n, other.n)?;
        Ok(Event::proper_nonempty(self.n).find(|&e| self.value(e) < other.value(e)))
    }

    /// Minimizes `costs · μ` over the core. `None` when the core is empty.
    pub fn core_minimizer(&self, costs: &[f64]) -> Result<Option<(f64, ProbabilityVector)>> {
        check_dim(self.n, costs.len())?;
        if costs.iter().any(|c| !c.is_finite()) {
            return domain("core objective must be finite");
        }
        let shift = costs.iter().cloned().fold(0.0, f64::min);
        let shifted: Vec<f64> = costs.iter().map(|c| c - shift).collect();
        let constraints: Vec<Event> = Event::proper_nonempty(self.n)
            .filter(|&e| self.value(e) > 0.0)
            .collect();
        // Dual of the core LP: maximize Σ ν(B) y_B + t subject to
        // Σ_{B∋i} y_B + t ≤ cost_i, with t split into t⁺ - t⁻.
        let k = constraints.len();
        let mut objective: Vec<f64> = constraints.iter().map(|&e| self.value(e)).collect();
        objective.extend([1.0, -1.0]);
        let rows: Vec<Vec<f64>> = (0..self.n)
            .map(|i| {
                let mut row: Vec<f64> = constraints
                    .iter()
                    .map(|e| if e.contains(i) { 1.0 } else { 0.0 })
                    .collect();
                row.extend([1.0, -1.0]);
                row
            })
            .collect();
        debug_assert_eq!(rows[0].len(), k + 2);
        match lp::maximize(&objective, &rows, &shifted)? {
            LpOutcome::Unbounded => Ok(None),
            LpOutcome::Optimal { value, duals, .. } => {
                Ok(Some((value + shift, ProbabilityVector::from_solver(duals))))
            }
        }
    }

    /// Some probability vector in the core, or `None` if the core is empty.
    pub fn core_point(&self) -> Result<Option<ProbabilityVector>> {
        Ok(self.core_minimizer(&vec![1.0; self.n])?.map(|(_, mu)| mu))
    }

    /// Whether the core is nonempty.
    pub fn is_balanced(&self) -> Result<bool> {
        Ok(self.core_point()?.is_some())
    }

    /// `min { μ(A) : μ ∈ core }`.
    pub fn core_min_on_event(&self, event: Event) -> Result<f64> {
        if event.0 as usize >= self.values.len() {
            return domain("event lies outside the state space");
        }
        let costs: Vec<f64> = (0..self.n)
            .map(|i| if event.contains(i) { 1.0 } else { 0.0 })
            .collect();
        match self.core_minimizer(&costs)? {
            Some((value, _)) => Ok(value.clamp(0.0, 1.0)),
            None => domain("capacity has an empty core"),
        }
    }

    /// First proper nonempty event whose core minimum exceeds the capacity by
    /// more than `1e-9`. Fails on an empty core.
    pub fn exactness_violation(&self) -> Result<Option<Event>> {
        if !self.is_balanced()? {
            return domain("capacity has an empty core");
        }
        for event in Event::proper_nonempty(self.n) {
            if self.core_min_on_event(event)? - self.value(event) > EXACTNESS_TOL {
                return Ok(Some(event));
            }
        }
        Ok(None)
    }

    pub fn is_exact(&self) -> Result<bool> {
        if !self.is_balanced()? {
            return Ok(false);
        }
        Ok(self.exactness_violation()?.is_none())
    }

    /// Marginal vectors over all state orderings, deduplicated. For a
    /// supermodular capacity these are the vertices of the core.
    pub fn core_vertices_supermodular(&self) -> Result<Vec<ProbabilityVector>> {
        if self.n > MAX_VERTEX_STATES {
            return Err(Error::Size(format!(
                "vertex enumeration supports at most {MAX_VERTEX_STATES} states, got {}",
                self.n
            )));
        }
        if let Some((a, b)) = self.supermodularity_violation() {
            return domain(format!(
                "capacity is not supermodular at ({}, {})",
                a.key(self.n),
                b.key(self.n)
            ));
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        let mut vertices = Vec::new();
        loop {
            vertices.push(self.marginal_vector(&order));
            if !next_permutation(&mut order) {
                break;
            }
        }
        vertices.sort_by(|a, b| a.partial_cmp(b).expect("finite marginals"));
        let mut unique: Vec<Vec<f64>> = Vec::new();
        for v in vertices {
            let duplicate = unique
                .iter()
                .rev()
                .take_while(|u| v[0] - u[0] <= VERTEX_DEDUP_TOL)
                .any(|u| {
                    u.iter()
                        .zip(&v)
                        .all(|(x, y)| (x - y).abs() <= VERTEX_DEDUP_TOL)
                });
            if !duplicate {
                unique.push(v);
            }
        }
        Ok(unique
            .into_iter()
            .map(ProbabilityVector::from_solver)
            .collect())
    }

    fn marginal_vector(&self, order: &[usize]) -> Vec<f64> {
        let mut mu = vec![0.0; self.n];
        let mut prefix = Event::EMPTY;
        for &i in order {
            let next = prefix.union(Event::singleton(i));
            mu[i] = self.value(next) - self.value(prefix);
            prefix = next;
        }
        mu
    }
}

impl fmt::Display for FiniteCapacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, v) in self.values.iter().enumerate() {
            if m > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", Event(m as u32).key(self.n), v)?;
        }
        Ok(())
    }
}

fn check_state_count(n: usize) -> Result<()> {
    if !(MIN_STATES..=MAX_STATES).contains(&n) {
        return Err(Error::Size(format!(
            "state count must be between {MIN_STATES} and {MAX_STATES}, got {n}"
        )));
    }
    Ok(())
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// JSON form of a capacity: either an explicit table keyed by event strings or
/// a distortion of a base probability vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityLiteral {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distortion: Option<DistortionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<f64>>,
}

impl TryFrom<CapacityLiteral> for FiniteCapacity {
    type Error = Error;

    fn try_from(lit: CapacityLiteral) -> Result<Self> {
        check_state_count(lit.n)?;
        let n = lit.n;
        match (lit.table, lit.base) {
            (Some(table), None) => {
                if lit.distortion.is_some() {
                    return Err(Error::Config(
                        "a capacity table cannot carry a distortion".into(),
                    ));
                }
                let mut values: Vec<Option<f64>> = vec![None; 1 << n];
                values[0] = Some(0.0);
                values[(1 << n) - 1] = Some(1.0);
                for (key, v) in &table {
                    let e = Event::parse_key(key, n)?;
                    if (e.is_empty() && *v != 0.0) || (e == Event::full(n) && *v != 1.0) {
                        return domain(format!("capacity of {key} is fixed, got {v}"));
                    }
                    values[e.0 as usize] = Some(*v);
                }
                let values = values
                    .into_iter()
                    .enumerate()
                    .map(|(m, v)| {
                        v.ok_or_else(|| {
                            Error::Config(format!(
                                "capacity table is missing event {}",
                                Event(m as u32).key(n)
                            ))
                        })
                    })
                    .collect::<Result<Vec<f64>>>()?;
                FiniteCapacity::new(n, values)
            }
            (None, Some(base)) => {
                check_dim(n, base.len())?;
                let additive = FiniteCapacity::from_probability(&ProbabilityVector::new(base)?)?;
                match lit.distortion {
                    Some(g) => additive.distort(&g),
                    None => Ok(additive),
                }
            }
            _ => Err(Error::Config(
                "capacity needs exactly one of `table` or `base`".into(),
            )),
        }
    }
}

impl From<FiniteCapacity> for CapacityLiteral {
    fn from(c: FiniteCapacity) -> Self {
        let table = (0..c.values.len())
            .map(|m| (Event(m as u32).key(c.n), c.values[m]))
            .collect();
        CapacityLiteral {
            n: c.n,
            table: Some(table),
            distortion: None,
            base: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap(n: usize, table: &[(&str, f64)]) -> FiniteCapacity {
        let lit = CapacityLiteral {
            n,
            table: Some(table.iter().map(|(k, v)| (k.to_string(), *v)).collect()),
            distortion: None,
            base: None,
        };
        FiniteCapacity::try_from(lit).unwrap()
    }

    fn urn() -> FiniteCapacity {
        cap(
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

    #[test]
    fn event_keys_are_state_ordered() {
        assert_eq!(Event::parse_key("100", 3).unwrap(), Event::singleton(0));
        assert_eq!(Event::from_states(&[0, 2]).key(3), "101");
        assert!(Event::parse_key("10", 3).is_err());
        assert!(Event::parse_key("1x0", 3).is_err());
        assert_eq!(
            Event::from_states(&[1]).complement(3),
            Event::from_states(&[0, 2])
        );
    }

    #[test]
    fn validation_rejects_bad_tables() {
        assert!(FiniteCapacity::new(2, vec![0.0, 0.6, 0.5, 0.5]).is_err());
        assert!(FiniteCapacity::new(2, vec![0.0, 0.5, 0.5, 0.9]).is_err());
        assert!(FiniteCapacity::new(1, vec![0.0, 1.0]).is_err());
        assert!(FiniteCapacity::new(2, vec![0.0, 0.5, 0.5]).is_err());
        let missing = CapacityLiteral {
            n: 2,
            table: Some([("10".to_string(), 0.5)].into_iter().collect()),
            distortion: None,
            base: None,
        };
        assert!(matches!(
            FiniteCapacity::try_from(missing),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn probability_capacity_is_modular_and_exact() {
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let c = FiniteCapacity::from_probability(&p).unwrap();
        assert!(c.is_supermodular() && c.is_submodular());
        assert!(c.is_exact().unwrap());
        assert_eq!(c.as_probability(), Some(p));
    }

    #[test]
    fn self_conjugate_urn_capacity_has_empty_core() {
        // Every event and its complement sum to one, so a core element would
        // have to equal the singleton values, which sum to 0.8633.
        let c = urn();
        assert!(!c.is_balanced().unwrap());
        assert!(!c.is_exact().unwrap());
        assert!(!c.is_supermodular());
    }

    #[test]
    fn balanced_capacity_core_point_dominates() {
        let c = cap(
            3,
            &[
                ("100", 0.2),
                ("010", 0.1),
                ("001", 0.3),
                ("110", 0.4),
                ("101", 0.6),
                ("011", 0.5),
            ],
        );
        assert!(c.is_exact().unwrap());
        let mu = c.core_point().unwrap().unwrap();
        for e in Event::proper_nonempty(3) {
            assert!(mu.measure(e) >= c.value(e) - 1e-9);
        }
        assert!((c.core_min_on_event(Event::singleton(0)).unwrap() - 0.2).abs() < 1e-9);
    }

    #[test]
    fn unbalanced_capacity_has_empty_core() {
        let c = cap(2, &[("10", 0.6), ("01", 0.6)]);
        assert!(!c.is_balanced().unwrap());
        assert!(!c.is_exact().unwrap());
        assert!(c.core_min_on_event(Event::singleton(0)).is_err());
    }

    #[test]
    fn balanced_but_inexact_capacity() {
        // Pairs at 0.6 force every singleton above 0.2 in the core.
        let c = cap(
            3,
            &[
                ("100", 0.0),
                ("010", 0.0),
                ("001", 0.0),
                ("110", 0.6),
                ("101", 0.6),
                ("011", 0.6),
            ],
        );
        assert!(c.is_balanced().unwrap());
        assert_eq!(c.exactness_violation().unwrap(), Some(Event::singleton(0)));
        assert!((c.core_min_on_event(Event::singleton(0)).unwrap() - 0.2).abs() < 1e-9);
    }

    #[test]
    fn convex_distortion_gives_supermodular_vertices() {
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let c = FiniteCapacity::from_probability(&p)
            .unwrap()
            .distort(&DistortionSpec::Power { exponent: 2.0 })
            .unwrap();
        assert!(c.is_supermodular());
        assert!(!c.is_submodular());
        let vs = c.core_vertices_supermodular().unwrap();
        assert_eq!(vs.len(), 6);
        for v in &vs {
            assert!((v.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for e in Event::proper_nonempty(3) {
                assert!(v.measure(e) >= c.value(e) - 1e-12);
            }
        }
        let concave = FiniteCapacity::from_probability(&p)
            .unwrap()
            .distort(&DistortionSpec::DualPower { exponent: 2.0 })
            .unwrap();
        assert!(concave.is_submodular());
        assert!(concave.core_vertices_supermodular().is_err());
    }

    #[test]
    fn additive_capacity_has_single_vertex() {
        let c = FiniteCapacity::from_probability(&ProbabilityVector::uniform(4)).unwrap();
        assert_eq!(c.core_vertices_supermodular().unwrap().len(), 1);
    }

    #[test]
    fn literal_round_trip() {
        let c = urn();
        let json = serde_json::to_string(&c).unwrap();
        let back: FiniteCapacity = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let dist: FiniteCapacity = serde_json::from_str(
            r#"{"n":2,"distortion":{"family":"power","exponent":2},"base":[0.5,0.5]}"#,
        )
        .unwrap();
        assert_eq!(dist.value(Event::singleton(0)), 0.25);
        assert!(
            serde_json::from_str::<FiniteCapacity>(r#"{"n":2,"base":[0.5,0.5],"x":1}"#).is_err()
        );
    }

    #[test]
    fn permutations_enumerate_all_orders() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
