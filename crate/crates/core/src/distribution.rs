//! Finitely supported distributions on the real line.
//!
//! A [`DiscreteDistribution`] is stored in survival form: strictly increasing
//! atom values together with the survival level `S(v) = Q((v, ∞))` at each
//! atom. The last level is always exactly zero. Atom masses are the successive
//! level differences, so two constructions that produce the same survival
//! levels compare equal bit for bit.
//!
//! Quantiles follow `q(α) = inf{x : S(x) < 1 - α}`. The comonotonic sum
//! ([`DiscreteDistribution::oplus`]) and the stochastic-order comparisons all
//! walk the common refinement of two quantile step functions, see
//! [`QuantileCoupling`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::statistic::UtilitySpec;

/// Values closer than this are merged into one atom.
pub const ATOM_MERGE_TOL: f64 = 1e-12;
/// Allowed deviation of supplied weights from a total of one.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Tolerance on integrated quantiles in the second-order comparison.
pub const SSD_TOL: f64 = 1e-10;
/// Tolerance on quantile values in the first-order comparison.
pub const FSD_TOL: f64 = 1e-12;
/// Tolerance on means in the concave-order comparison.
pub const MEAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    values: Vec<f64>,
    levels: Vec<f64>,
}

/// Outcome of comparing two distributions under a partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderRelation {
    /// The first argument dominates the second.
    Ge,
    /// The second argument dominates the first.
    Le,
    Eq,
    Incomparable,
}

impl OrderRelation {
    fn from_flags(ge: bool, le: bool) -> Self {
        match (ge, le) {
            (true, true) => OrderRelation::Eq,
            (true, false) => OrderRelation::Ge,
            (false, true) => OrderRelation::Le,
            (false, false) => OrderRelation::Incomparable,
        }
    }

    /// True for `Ge` and `Eq`.
    pub fn is_ge(self) -> bool {
        matches!(self, OrderRelation::Ge | OrderRelation::Eq)
    }

    pub fn is_le(self) -> bool {
        matches!(self, OrderRelation::Le | OrderRelation::Eq)
    }
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrderRelation::Ge => "GE",
            OrderRelation::Le => "LE",
            OrderRelation::Eq => "EQ",
            OrderRelation::Incomparable => "INCOMPARABLE",
        };
        f.write_str(s)
    }
}

impl DiscreteDistribution {
    /// Builds a distribution from `(value, weight)` pairs in any order.
    ///
    /// Weights must be positive and sum to one within [`WEIGHT_SUM_TOL`];
    /// they are renormalized exactly and equal values are merged.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return domain("a distribution needs at least one atom");
        }
        for &(v, w) in &atoms {
            if !v.is_finite() {
                return domain(format!("atom value {v} is not finite"));
            }
            if !(w.is_finite() && w > 0.0) {
                return domain(format!("atom weight {w} must be positive and finite"));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return domain(format!("weights sum to {total}, expected 1"));
        }
        Ok(Self::from_masses(atoms))
    }

    /// Same as [`new`](Self::new) without the check that weights sum to one;
    /// the weights are normalized by their total.
    pub fn from_unnormalized(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return domain("a distribution needs at least one atom");
        }
        if atoms
            .iter()
            .any(|&(v, w)| !(v.is_finite() && w.is_finite() && w > 0.0))
        {
            return domain("atoms need finite values and positive finite weights");
        }
        Ok(Self::from_masses(atoms))
    }

    /// Point mass at `c`.
    pub fn point(c: f64) -> Self {
        Self {
            values: vec![c],
            levels: vec![0.0],
        }
    }

    /// Two-point distribution on {0, 1} with mass `p` at 1.
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("bernoulli parameter {p} outside [0, 1]"));
        }
        Ok(Self::from_levels(vec![(0.0, p), (1.0, 0.0)]))
    }

    fn from_masses(mut atoms: Vec<(f64, f64)>) -> Self {
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        let mut pairs = Vec::with_capacity(atoms.len());
        let mut above = 0.0;
        let mut levels = vec![0.0; atoms.len()];
        for k in (0..atoms.len()).rev() {
            levels[k] = above / total;
            above += atoms[k].1;
        }
        for (k, &(v, _)) in atoms.iter().enumerate() {
            pairs.push((v, levels[k]));
        }
        Self::from_levels(pairs)
    }

    /// Builds a distribution from `(value, survival level)` pairs.
    ///
    /// Values must be non-decreasing and levels non-increasing with the last
    /// level zero. Values within [`ATOM_MERGE_TOL`] of the first value of their
    /// group are merged, and atoms that carry no mass are dropped.
    pub(crate) fn from_levels(pairs: Vec<(f64, f64)>) -> Self {
        debug_assert!(pairs.last().is_some_and(|p| p.1 == 0.0));
        let mut grouped: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for (v, s) in pairs {
            match grouped.last_mut() {
                Some((first, level)) if v - *first <= ATOM_MERGE_TOL => *level = s,
                _ => grouped.push((v, s)),
            }
        }
        let mut values = Vec::with_capacity(grouped.len());
        let mut levels = Vec::with_capacity(grouped.len());
        let mut prev = 1.0;
        for (v, s) in grouped {
            if s < prev {
                values.push(v);
                levels.push(s);
                prev = s;
            }
        }
        Self { values, levels }
    }

    /// Atom values in increasing order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Survival level `S(v)` at each atom value.
    pub fn survival_levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(value, weight)` pairs in increasing value order.
    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mut prev = 1.0;
        self.values.iter().zip(&self.levels).map(move |(&v, &s)| {
            let w = prev - s;
            prev = s;
            (v, w)
        })
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    pub fn max_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn is_point_mass(&self) -> bool {
        self.values.len() == 1
    }

    /// `S(x) = Q((x, ∞))`.
    pub fn survival_at(&self, x: f64) -> f64 {
        // Index of the last atom with value <= x.
        match self.values.partition_point(|&v| v <= x) {
            0 => 1.0,
            k => self.levels[k - 1],
        }
    }

    /// `q(α) = inf{x : S(x) < 1 - α}` for `α` in (0, 1).
    pub fn quantile_at(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return domain(format!("quantile level {alpha} outside (0, 1)"));
        }
        Ok(self.quantile_unchecked(alpha))
    }

    pub(crate) fn quantile_unchecked(&self, alpha: f64) -> f64 {
        let threshold = 1.0 - alpha;
        let k = self
            .levels
            .iter()
            .position(|&s| s < threshold)
            .unwrap_or(self.levels.len() - 1);
        self.values[k]
    }

    /// `∫_0^α q(β) dβ` for `α` in [0, 1], computed exactly on the step function.
    pub fn integrated_quantile(&self, alpha: f64) -> f64 {
        let mut acc = 0.0;
        let mut lo = 0.0;
        for (&v, &s) in self.values.iter().zip(&self.levels) {
            let hi = 1.0 - s;
            if hi >= alpha {
                acc += v * (alpha - lo);
                return acc;
            }
            acc += v * (hi - lo);
            lo = hi;
        }
        acc
    }

    pub fn expectation(&self) -> f64 {
        self.atoms().map(|(v, w)| v * w).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.expectation();
        self.atoms().map(|(v, w)| w * (v - m) * (v - m)).sum()
    }

    /// Image under an increasing function given as a [`UtilitySpec`].
    pub fn pushforward_monotone(&self, f: &UtilitySpec) -> Result<Self> {
        f.validate_increasing()?;
        for &v in &self.values {
            f.check_domain(v)?;
        }
        Ok(self.map_increasing(|v| f.eval_unchecked(v)))
    }

    /// Image under a non-decreasing map. Equal images are merged.
    pub(crate) fn map_increasing(&self, f: impl Fn(f64) -> f64) -> Self {
        let pairs = self
            .values
            .iter()
            .zip(&self.levels)
            .map(|(&v, &s)| (f(v), s))
            .collect();
        Self::from_levels(pairs)
    }

    /// Location shift by `c`.
    pub fn shift(&self, c: f64) -> Self {
        self.map_increasing(|v| v + c)
    }

    /// Comonotonic sum: the distribution whose quantile function is the sum of
    /// the two quantile functions.
    pub fn oplus(&self, other: &Self) -> Self {
        let pairs = QuantileCoupling::new(self, other)
            .map(|seg| (seg.left + seg.right, seg.level))
            .collect();
        Self::from_levels(pairs)
    }

    /// Quantile scaling by a nonnegative factor; `0 ⊗ Q = δ_0`.
    pub fn otimes(&self, a: f64) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return domain(format!("scaling factor {a} must be a nonnegative real"));
        }
        if a == 0.0 {
            return Ok(Self::point(0.0));
        }
        Ok(self.map_increasing(|v| a * v))
    }

    /// First-order stochastic dominance via quantile comparison.
    pub fn fsd_compare(&self, other: &Self) -> OrderRelation {
        let mut ge = true;
        let mut le = true;
        for seg in QuantileCoupling::new(self, other) {
            if seg.left < seg.right - FSD_TOL {
                ge = false;
            }
            if seg.left > seg.right + FSD_TOL {
                le = false;
            }
        }
        OrderRelation::from_flags(ge, le)
    }

    /// Second-order stochastic dominance via integrated quantiles.
    pub fn ssd_compare(&self, other: &Self) -> OrderRelation {
        let mut ge = true;
        let mut le = true;
        let mut diff = 0.0;
        for seg in QuantileCoupling::new(self, other) {
            diff += (seg.left - seg.right) * seg.mass;
            if diff < -SSD_TOL {
                ge = false;
            }
            if diff > SSD_TOL {
                le = false;
            }
        }
        OrderRelation::from_flags(ge, le)
    }

    /// Concave order: second-order dominance with equal means.
    pub fn cv_compare(&self, other: &Self) -> OrderRelation {
        if (self.expectation() - other.expectation()).abs() > MEAN_TOL {
            return OrderRelation::Incomparable;
        }
        self.ssd_compare(other)
    }

    /// Greatest first-order lower bound: the survival function is the
    /// pointwise minimum of the inputs' survival functions.
    pub fn fsd_infimum(ds: &[Self]) -> Result<Self> {
        let Some(first) = ds.first() else {
            return domain("the first-order infimum of an empty family is undefined");
        };
        if ds.len() == 1 {
            return Ok(first.clone());
        }
        let mut grid: Vec<f64> = ds.iter().flat_map(|d| d.values.iter().copied()).collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let pairs = grid
            .into_iter()
            .map(|x| {
                let s = ds
                    .iter()
                    .map(|d| d.survival_at(x))
                    .fold(f64::INFINITY, f64::min);
                (x, s)
            })
            .collect();
        Ok(Self::from_levels(pairs))
    }

    /// Atom-wise comparison: same values exactly, survival levels within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= ATOM_MERGE_TOL)
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Largest pointwise gap between the two quantile functions.
    pub fn quantile_gap(&self, other: &Self) -> f64 {
        QuantileCoupling::new(self, other)
            .map(|seg| (seg.left - seg.right).abs())
            .fold(0.0, f64::max)
    }

    /// Lévy distance between the two distribution functions.
    pub fn levy_distance(&self, other: &Self) -> f64 {
        // The distance is attained at a grid built from atoms shifted by
        // candidate epsilons; bisection on epsilon keeps this simple.
        let fits = |eps: f64| {
            let pts: Vec<f64> = self
                .values
                .iter()
                .chain(&other.values)
                .flat_map(|&x| [x - eps, x, x + eps])
                .collect();
            pts.iter().all(|&x| {
                let s = self.survival_at(x);
                other.survival_at(x + eps) - eps <= s + 1e-15
                    && s <= other.survival_at(x - eps) + eps + 1e-15
            })
        };
        let (mut lo, mut hi) = (0.0, 1.0_f64);
        if fits(0.0) {
            return 0.0;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if fits(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

impl fmt::Display for DiscreteDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (v, w)) in self.atoms().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:{w}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for DiscreteDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let atoms: Vec<[f64; 2]> = self.atoms().map(|(v, w)| [v, w]).collect();
        atoms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscreteDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let atoms: Vec<(f64, f64)> = Vec::deserialize(d)?;
        Self::new(atoms).map_err(serde::de::Error::custom)
    }
}

/// One piece of the common refinement of two quantile step functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledSegment {
    pub left: f64,
    pub right: f64,
    /// Survival level at the upper end of the α-interval.
    pub level: f64,
    /// Length of the α-interval.
    pub mass: f64,
}

/// Walks both quantile functions over the merged breakpoints of (0, 1), in
/// increasing α. Each segment carries the two quantile values, which is the
/// comonotonic coupling of the pair.
pub struct QuantileCoupling<'a> {
    left: &'a DiscreteDistribution,
    right: &'a DiscreteDistribution,
    i: usize,
    j: usize,
    prev: f64,
}

impl<'a> QuantileCoupling<'a> {
    pub fn new(left: &'a DiscreteDistribution, right: &'a DiscreteDistribution) -> Self {
        Self {
            left,
            right,
            i: 0,
            j: 0,
            prev: 1.0,
        }
    }
}

impl Iterator for QuantileCoupling<'_> {
    type Item = CoupledSegment;

    fn next(&mut self) -> Option<CoupledSegment> {
        if self.i >= self.left.levels.len() || self.j >= self.right.levels.len() {
            return None;
        }
        let s = self.left.levels[self.i];
        let t = self.right.levels[self.j];
        let level = match s.partial_cmp(&t) {
            Some(Ordering::Less) => t,
            _ => s,
        };
        let seg = CoupledSegment {
            left: self.left.values[self.i],
            right: self.right.values[self.j],
            level,
            mass: self.prev - level,
        };
        if s == level {
            self.i += 1;
        }
        if t == level {
            self.j += 1;
        }
        self.prev = level;
        Some(seg)
    }
}
