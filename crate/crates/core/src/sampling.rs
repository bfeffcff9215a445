//! Seeded generators for acts, capacities and distributions.
//!
//! Every generator draws from a single ChaCha stream, so a seed fixes the
//! whole sequence of instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::{Event, FiniteCapacity, ProbabilityVector};
use crate::choquet::Act;
use crate::distribution::DiscreteDistribution;
use crate::statistic::{DistortionSpec, UtilitySpec};

/// Outcomes of sampled acts are drawn uniformly from this interval.
pub const ACT_RANGE: (f64, f64) = (-5.0, 5.0);

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return lo;
        }
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// Uniform on the simplex (normalized exponential spacings).
    pub fn probability_vector(&mut self, n: usize) -> ProbabilityVector {
        let raw: Vec<f64> = (0..n)
            .map(|_| -(1.0 - self.rng.gen::<f64>()).ln() + 1e-3)
            .collect();
        let total: f64 = raw.iter().sum();
        let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
        ProbabilityVector::new(w).expect("normalized weights")
    }

    pub fn act(&mut self, n: usize) -> Act {
        let (lo, hi) = ACT_RANGE;
        Act::new((0..n).map(|_| self.uniform(lo, hi)).collect()).expect("finite outcomes")
    }

    pub fn event(&mut self, n: usize) -> Event {
        Event(self.rng.gen_range(0..1u32 << n))
    }

    /// Monotone capacity from independent uniforms, made monotone by a running
    /// maximum over immediate subsets and normalized by the full-set value.
    pub fn capacity(&mut self, n: usize) -> FiniteCapacity {
        let size = 1usize << n;
        let mut v: Vec<f64> = (0..size).map(|_| self.rng.gen::<f64>()).collect();
        v[0] = 0.0;
        for mask in 1..size {
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                v[mask] = v[mask].max(v[mask ^ bit]);
            }
        }
        let top = v[size - 1];
        for x in v.iter_mut() {
            *x /= top;
        }
        v[size - 1] = 1.0;
        FiniteCapacity::new(n, v).expect("monotone by construction")
    }

    /// Power distortion with exponent above one, or a piecewise-linear
    /// distortion with increasing slopes.
    pub fn convex_distortion(&mut self) -> DistortionSpec {
        if self.coin() {
            DistortionSpec::Power {
                exponent: self.uniform(1.2, 4.0),
            }
        } else {
            self.piecewise_distortion(true)
        }
    }

    pub fn concave_distortion(&mut self) -> DistortionSpec {
        if self.coin() {
            DistortionSpec::DualPower {
                exponent: self.uniform(1.2, 4.0),
            }
        } else {
            self.piecewise_distortion(false)
        }
    }

    /// Piecewise-linear distortion with increasing (convex) or decreasing
    /// (concave) slopes.
    pub fn piecewise_distortion(&mut self, convex: bool) -> DistortionSpec {
        let k = 2 + self.index(3);
        let mut xs: Vec<f64> = (0..k).map(|_| self.uniform(0.05, 0.95)).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| *a - *b < 1e-3);
        let mut slopes: Vec<f64> = (0..=xs.len()).map(|_| self.uniform(0.1, 3.0)).collect();
        slopes.sort_by(f64::total_cmp);
        if !convex {
            slopes.reverse();
        }
        let mut knots = vec![0.0];
        knots.extend(&xs);
        knots.push(1.0);
        let mut ys = vec![0.0];
        for (w, s) in knots.windows(2).zip(&slopes) {
            ys.push(ys.last().unwrap() + s * (w[1] - w[0]));
        }
        let top = *ys.last().unwrap();
        let mut points: Vec<(f64, f64)> =
            knots.iter().zip(&ys).map(|(&x, &y)| (x, y / top)).collect();
        *points.last_mut().unwrap() = (1.0, 1.0);
        DistortionSpec::PiecewiseLinear { points }
    }

    pub fn supermodular_capacity(&mut self, n: usize) -> FiniteCapacity {
        let p = self.probability_vector(n);
        let g = self.convex_distortion();
        FiniteCapacity::from_probability(&p)
            .and_then(|c| c.distort(&g))
            .expect("distorted probability is a capacity")
    }

    pub fn submodular_capacity(&mut self, n: usize) -> FiniteCapacity {
        let p = self.probability_vector(n);
        let g = self.concave_distortion();
        FiniteCapacity::from_probability(&p)
            .and_then(|c| c.distort(&g))
            .expect("distorted probability is a capacity")
    }

    /// A capacity lying below a random probability vector, hence balanced;
    /// usually not exact.
    pub fn balanced_capacity(&mut self, n: usize) -> FiniteCapacity {
        let mu = self.probability_vector(n);
        let size = 1usize << n;
        let mut v: Vec<f64> = (0..size)
            .map(|m| mu.measure(Event(m as u32)) * self.rng.gen::<f64>())
            .collect();
        v[0] = 0.0;
        for mask in 1..size {
            let mut rest = mask;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                v[mask] = v[mask].max(v[mask ^ bit]);
            }
        }
        v[size - 1] = 1.0;
        FiniteCapacity::new(n, v).expect("monotone by construction")
    }

    /// Eventwise minimum of `k` random priors; exact, and for `k ≥ 3`
    /// usually not supermodular.
    pub fn lower_envelope(&mut self, n: usize, k: usize) -> FiniteCapacity {
        let priors: Vec<ProbabilityVector> = (0..k).map(|_| self.probability_vector(n)).collect();
        let size = 1usize << n;
        let mut v: Vec<f64> = (0..size)
            .map(|m| {
                priors
                    .iter()
                    .map(|p| p.measure(Event(m as u32)))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        v[size - 1] = 1.0;
        FiniteCapacity::new(n, v).expect("minimum of measures is a capacity")
    }

    /// A strictly increasing piecewise-linear map of the line.
    pub fn increasing_transform(&mut self) -> UtilitySpec {
        let k = 2 + self.index(4);
        let mut xs: Vec<f64> = (0..k).map(|_| self.uniform(-6.0, 6.0)).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| *a - *b < 1e-3);
        if xs.len() < 2 {
            xs = vec![-1.0, 1.0];
        }
        let mut points = vec![(xs[0], self.uniform(-2.0, 2.0))];
        for w in xs.windows(2) {
            let y = points.last().unwrap().1 + self.uniform(0.1, 2.0) * (w[1] - w[0]);
            points.push((w[1], y));
        }
        UtilitySpec::PiecewiseLinear { points }
    }

    /// Two acts obtained as increasing transforms of a common act.
    pub fn comonotonic_pair(&mut self, n: usize) -> (Act, Act) {
        let z = self.act(n);
        let f = self.increasing_transform();
        let h = self.increasing_transform();
        (
            z.map(|v| f.eval_unchecked(v)),
            z.map(|v| h.eval_unchecked(v)),
        )
    }

    /// Distribution with 1 to `max_atoms` atoms placed uniformly in `[lo, hi]`.
    pub fn distribution(&mut self, lo: f64, hi: f64, max_atoms: usize) -> DiscreteDistribution {
        let k = 1 + self.index(max_atoms.max(1));
        let w = self.probability_vector(k);
        let atoms = w
            .weights()
            .iter()
            .map(|&p| (self.uniform(lo, hi), p))
            .collect();
        DiscreteDistribution::new(atoms).expect("valid atoms")
    }

    /// A pair `(Q, P)` with `Q ≥_ssd P`, both supported in `[lo, hi + 1]`.
    ///
    /// `P` spreads part of one atom of `Q` to both sides without moving its
    /// mean; `Q` is then shifted up with probability one half.
    pub fn ssd_ordered_pair(
        &mut self,
        lo: f64,
        hi: f64,
    ) -> (DiscreteDistribution, DiscreteDistribution) {
        let q = self.distribution(lo, hi, 4);
        let atoms: Vec<(f64, f64)> = q.atoms().collect();
        let pick = self.index(atoms.len());
        let (v, w) = atoms[pick];
        let (room_l, room_r) = (v - lo, hi - v);
        let worse = if room_l > 1e-6 && room_r > 1e-6 {
            let dl = self.uniform(0.0, room_l).max(1e-6);
            let dr = self.uniform(0.0, room_r).max(1e-6);
            let moved = w * self.uniform(0.1, 1.0);
            let mut spread: Vec<(f64, f64)> = atoms
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pick)
                .map(|(_, &a)| a)
                .collect();
            spread.push((v, w - moved));
            spread.push((v - dl, moved * dr / (dl + dr)));
            spread.push((v + dr, moved * dl / (dl + dr)));
            DiscreteDistribution::new(spread).expect("valid spread")
        } else {
            q.clone()
        };
        let better = if self.coin() {
            q.shift(self.uniform(0.0, 1.0))
        } else {
            q
        };
        (better, worse)
    }
}
