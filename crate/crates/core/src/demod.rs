//! Destination-side demodulators.
//!
//! The destination first hard-decides every received BPSK symbol, then jointly
//! recovers the source bits by exhaustive search over the codebook. With full
//! CSI each hard bit is weighted by its log-likelihood ratio magnitude
//! `ln((1-p)/p)`; without source-to-relay CSI every bit gets weight one and
//! the search degenerates to minimum-distance decoding.

use num_complex::Complex64;
use rand::Rng;

use crate::channel::CrossoverVector;
use crate::gf2code::NetworkCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemodKind {
    /// Joint demodulation with reliability weights from genie CSI.
    Ml,
    /// Unweighted minimum-distance decoding (no source-to-relay CSI).
    Mdd,
}

/// Per-position reliability weights. Non-negative because cross-over
/// probabilities never exceed 1/2, and finite because they are clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    w: Vec<f64>,
}

impl WeightVector {
    pub fn uniform(len: usize) -> Self {
        Self { w: vec![1.0; len] }
    }

    pub fn from_values(w: Vec<f64>) -> Self {
        Self { w }
    }

    pub fn values(&self) -> &[f64] {
        &self.w
    }

    pub fn into_values(self) -> Vec<f64> {
        self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }
}

/// Elementwise `w[m] = ln((1 - P[m]) / P[m])`.
pub fn weights(p: &CrossoverVector) -> WeightVector {
    WeightVector { w: p.entries().iter().map(|&p| ((1.0 - p) / p).ln()).collect() }
}

/// Coherent BPSK hard decision: the sign of `Re(y conj(h))` picks the bit.
/// Exact ties (a measure-zero event) are resolved by a fair coin from the
/// trial's random stream.
pub fn bpsk_hard_decision<R: Rng>(y: Complex64, h: Complex64, rng: &mut R) -> u8 {
    let metric = y.re * h.re + y.im * h.im;
    if metric > 0.0 {
        0
    } else if metric < 0.0 {
        1
    } else if rng.random::<bool>() {
        1
    } else {
        0
    }
}

/// Exhaustive joint demodulation: returns the information word whose codeword
/// minimises `sum_m w[m] |hard[m] - c[m]|`. Ties are broken uniformly at
/// random among the minimisers, fed by the trial's random stream.
pub fn ml_joint_demodulate<R: Rng>(
    hard: u64,
    w: &WeightVector,
    code: &NetworkCode,
    rng: &mut R,
) -> u64 {
    debug_assert_eq!(w.len(), code.block_len());
    let weights = w.values();
    let mut best = 0u64;
    let mut best_metric = f64::INFINITY;
    let mut ties = 0u32;
    for (b, &cw) in code.codebook().iter().enumerate() {
        let mut metric = 0.0;
        let mut diff = hard ^ cw;
        while diff != 0 {
            metric += weights[diff.trailing_zeros() as usize];
            diff &= diff - 1;
        }
        if metric < best_metric {
            best_metric = metric;
            best = b as u64;
            ties = 1;
        } else if metric == best_metric {
            // Reservoir rule: the k-th tied candidate wins with probability 1/k.
            ties += 1;
            if rng.random_range(0..ties) == 0 {
                best = b as u64;
            }
        }
    }
    best
}

/// Minimum-distance decoding: joint demodulation with unit weights.
pub fn mdd_demodulate<R: Rng>(hard: u64, code: &NetworkCode, rng: &mut R) -> u64 {
    ml_joint_demodulate(hard, &WeightVector::uniform(code.block_len()), code, rng)
}
