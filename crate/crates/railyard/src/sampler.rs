//! Exact sequential sampling of pure coverings.
//!
//! A backward table stores, for every column cut, the vector obtained by
//! feeding the vacuum through the remaining transfer operators. The
//! forward pass then draws each boundary partition from its exact
//! conditional distribution. On specs whose vertex operators keep the
//! support finite (the Aztec case) the procedure is exact; otherwise the
//! size cap truncates and the lost mass is reported.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::combinatorics::{
    enumerate_interlacing, maya_from_charged, ChargedPartition, InterlaceDirection, InterlaceKind,
    Partition,
};
use crate::fock::{apply_gamma, FockVector};
use crate::graph::{
    sequence_to_covering, Covering, Edge, GraphError, Letter, RygSpec, Sign,
};
use crate::scalar::Scalar;

#[derive(Error, Debug)]
pub enum SamplerError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("partition {0} has no mass in the backward table (cap too small?)")]
    NoMass(String),
    #[error("truncation mass {0} exceeds the caller threshold {1}")]
    TruncationTooLarge(f64, f64),
}

/// Backward transfer vectors `v_i`, `i = l ..= r+1`, over `f64`.
pub struct BackwardTable {
    spec: Arc<RygSpec>,
    size_cap: u32,
    tables: Vec<FockVector<f64>>,
}

impl BackwardTable {
    /// Build the table at partition-size cap `size_cap`.
    pub fn build(spec: &Arc<RygSpec>, size_cap: u32) -> Result<BackwardTable, SamplerError> {
        let weights = spec.numeric_weights()?;
        let n = spec.column_count();
        let mut tables = vec![FockVector::vacuum(1.0, size_cap)];
        for idx in (0..n).rev() {
            let i = spec.l() + idx as i32;
            let next = apply_gamma(spec.column(i), &weights[idx], tables.last().unwrap());
            tables.push(next);
        }
        tables.reverse(); // tables[idx] = v_{l+idx}, idx = 0..=n
        Ok(BackwardTable {
            spec: spec.clone(),
            size_cap,
            tables,
        })
    }

    pub fn spec(&self) -> &Arc<RygSpec> {
        &self.spec
    }

    pub fn size_cap(&self) -> u32 {
        self.size_cap
    }

    /// `v_i`, indexed by absolute column cut `i` in `l ..= r+1`.
    pub fn vector(&self, i: i32) -> &FockVector<f64> {
        &self.tables[(i - self.spec.l()) as usize]
    }

    /// The truncated partition function `v_l(vacuum)`.
    pub fn z_truncated(&self) -> f64 {
        self.vector(self.spec.l()).coefficient(&ChargedPartition::vacuum())
    }

    /// Fraction of partition-function mass lost to the size cap, measured
    /// against a recomputation at `size_cap + 2`. Zero exactly when the
    /// support is finite below the cap (e.g. Aztec diamonds).
    pub fn truncation_gap(&self) -> Result<f64, SamplerError> {
        let bigger = BackwardTable::build(&self.spec, self.size_cap + 2)?;
        let z0 = self.z_truncated();
        let z1 = bigger.z_truncated();
        Ok(if z1 > 0.0 { 1.0 - z0 / z1 } else { 0.0 })
    }

    /// Candidate successors of `lambda` across column `i`, with their
    /// unnormalized masses `x^{|delta|} v_{i+1}(mu)`.
    fn transitions(&self, i: i32, lambda: &Partition) -> Vec<(Partition, f64)> {
        let t = self.spec.column(i);
        let (kind, direction) = match (t.letter, t.sign) {
            (Letter::L, Sign::Plus) => (InterlaceKind::Horizontal, InterlaceDirection::Grow),
            (Letter::L, Sign::Minus) => (InterlaceKind::Horizontal, InterlaceDirection::Shrink),
            (Letter::R, Sign::Plus) => (InterlaceKind::Vertical, InterlaceDirection::Grow),
            (Letter::R, Sign::Minus) => (InterlaceKind::Vertical, InterlaceDirection::Shrink),
        };
        let budget = match direction {
            InterlaceDirection::Grow => self.size_cap.saturating_sub(lambda.size()),
            InterlaceDirection::Shrink => lambda.size(),
        };
        let x = self.spec.numeric_weight(i).expect("numeric weights");
        let next = self.vector(i + 1);
        let mut out = Vec::new();
        for mu in enumerate_interlacing(lambda, kind, direction, budget) {
            let mass = next.coefficient(&ChargedPartition::new(mu.clone(), 0));
            if mass > 0.0 {
                let delta = (mu.size() as i64 - lambda.size() as i64).unsigned_abs() as u32;
                out.push((mu, x.powi(delta as i32) * mass));
            }
        }
        out
    }

    /// Draw one pure covering; identical `(seed, index)` pairs give
    /// identical coverings, and distinct indices are independent streams.
    pub fn sample(&self, seed: u64, index: u64) -> Result<Covering, SamplerError> {
        let mut states = vec![Partition::empty()];
        let mut lambda = Partition::empty();
        for i in self.spec.column_indices() {
            let options = self.transitions(i, &lambda);
            let total: f64 = options.iter().map(|(_, m)| m).sum();
            if options.is_empty() || total <= 0.0 {
                return Err(SamplerError::NoMass(format!("{}", lambda)));
            }
            let mut rng = column_rng(seed, index, i);
            let mut u = rng.gen::<f64>() * total;
            let mut chosen = options.len() - 1;
            for (idx, (_, m)) in options.iter().enumerate() {
                if u < *m {
                    chosen = idx;
                    break;
                }
                u -= m;
            }
            lambda = options[chosen].0.clone();
            states.push(lambda.clone());
        }
        debug_assert!(lambda.is_empty(), "chain must return to the vacuum");
        self.covering_from_states(&states)
    }

    fn covering_from_states(&self, states: &[Partition]) -> Result<Covering, SamplerError> {
        let h = states
            .iter()
            .map(|p| p.size() as i32)
            .max()
            .unwrap_or(0)
            .max(1)
            + 1;
        let mayas: Vec<_> = states
            .iter()
            .map(|p| maya_from_charged(&ChargedPartition::new(p.clone(), 0)))
            .collect();
        Ok(sequence_to_covering(&self.spec, &mayas, h)?)
    }

    /// Exact sampling probability of a covering under the table (the
    /// product of its conditional transition probabilities).
    pub fn covering_probability(&self, c: &Covering) -> Result<f64, SamplerError> {
        let states = crate::graph::covering_to_sequence(c)?;
        let mut p = 1.0;
        let mut lambda = Partition::empty();
        for (idx, i) in self.spec.column_indices().enumerate() {
            let target = crate::combinatorics::charged_from_maya(&states[idx + 1]).parts;
            let options = self.transitions(i, &lambda);
            let total: f64 = options.iter().map(|(_, m)| m).sum();
            let mass = options
                .iter()
                .find(|(mu, _)| *mu == target)
                .map(|(_, m)| *m)
                .ok_or_else(|| SamplerError::NoMass(format!("{}", target)))?;
            p *= mass / total;
            lambda = target;
        }
        Ok(p)
    }
}

/// Deterministic per-column generator: the seed is mixed with the sample
/// index and column through splitmix64 steps, then drives ChaCha8.
fn column_rng(seed: u64, index: u64, column: i32) -> ChaCha8Rng {
    let mut state = seed;
    for salt in [index, column as u64 ^ 0x9e37_79b9_7f4a_7c15] {
        state = splitmix64(state ^ salt);
    }
    ChaCha8Rng::seed_from_u64(state)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Exact-rational backward table for small caps; used to certify the
/// sampler's per-covering probabilities.
pub struct ExactBackwardTable {
    spec: Arc<RygSpec>,
    tables: Vec<FockVector<BigRational>>,
}

impl ExactBackwardTable {
    pub fn build(spec: &Arc<RygSpec>, size_cap: u32) -> Result<ExactBackwardTable, SamplerError> {
        let weights = spec.rational_weights()?;
        let n = spec.column_count();
        let one: BigRational = num::One::one();
        let mut tables = vec![FockVector::vacuum(one, size_cap)];
        for idx in (0..n).rev() {
            let i = spec.l() + idx as i32;
            let next = apply_gamma(spec.column(i), &weights[idx], tables.last().unwrap());
            tables.push(next);
        }
        tables.reverse();
        Ok(ExactBackwardTable {
            spec: spec.clone(),
            tables,
        })
    }

    pub fn z_truncated(&self) -> BigRational {
        self.tables[0].coefficient(&ChargedPartition::vacuum())
    }

    /// Exact probability of a covering: `weight / Z` when the cap holds
    /// the full support.
    pub fn covering_probability(&self, c: &Covering) -> Result<BigRational, SamplerError> {
        let states = crate::graph::covering_to_sequence(c)?;
        let weights = self.spec.rational_weights()?;
        let mut p: BigRational = num::One::one();
        let mut lambda = Partition::empty();
        for (idx, _) in self.spec.column_indices().enumerate() {
            let target = crate::combinatorics::charged_from_maya(&states[idx + 1]).parts;
            let v_here = &self.tables[idx];
            let v_next = &self.tables[idx + 1];
            let denom = v_here.coefficient(&ChargedPartition::new(lambda.clone(), 0));
            if Scalar::is_zero(&denom) {
                return Err(SamplerError::NoMass(format!("{}", lambda)));
            }
            let delta =
                (target.size() as i64 - lambda.size() as i64).unsigned_abs() as u32;
            let x = &weights[idx];
            let mut mass = v_next.coefficient(&ChargedPartition::new(target.clone(), 0));
            for _ in 0..delta {
                mass *= x;
            }
            p *= mass / denom;
            lambda = target;
        }
        Ok(p)
    }
}

/// Observed coverage frequency of an edge across samples.
#[derive(Clone, Debug)]
pub struct EdgeFrequency {
    pub edge: Edge,
    pub hits: u64,
    pub samples: u64,
    pub frequency: f64,
    /// binomial standard error at the observed frequency
    pub sigma: f64,
}

/// Tally the coverage frequencies of the probed edges.
pub fn empirical_stats<'a>(
    samples: impl Iterator<Item = &'a Covering>,
    edges: &[Edge],
) -> Vec<EdgeFrequency> {
    let mut hits: BTreeMap<Edge, u64> = edges.iter().map(|e| (*e, 0)).collect();
    let mut n = 0u64;
    for c in samples {
        n += 1;
        for e in edges {
            if c.is_covered(e) {
                *hits.get_mut(e).unwrap() += 1;
            }
        }
    }
    edges
        .iter()
        .map(|e| {
            let h = hits[e];
            let freq = if n > 0 { h as f64 / n as f64 } else { 0.0 };
            let sigma = if n > 0 {
                (freq * (1.0 - freq) / n as f64).sqrt()
            } else {
                0.0
            };
            EdgeFrequency {
                edge: *e,
                hits: h,
                samples: n,
                frequency: freq,
                sigma,
            }
        })
        .collect()
}
