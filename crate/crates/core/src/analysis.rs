//! Closed-form error analysis.
//!
//! Builds the per-source average bit error probability from pairwise error
//! probabilities of the distributed code, in three flavours:
//!
//! * an exact conditional PEP oracle that enumerates all flip patterns on the
//!   differing positions;
//! * a high-SNR conditional PEP built from products and capped min-terms;
//! * fading-averaged (APEP) closed forms over Rayleigh links, from which the
//!   union-bound ABEP, the per-source diversity order and the coding gain
//!   follow.
//!
//! All pair sums use compensated summation so results do not depend on
//! scheduling.

use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::channel::{self, SnrPoint, Topology};
use crate::demod::{self, DemodKind};
use crate::gf2code::{EncodingMatrix, NetworkCode};
use crate::rng;
use crate::{Error, Result};

/// Exact PEP enumeration is limited to `2^24` flip patterns.
pub const MAX_PEP_DISTANCE: u32 = 24;

/// Exhaustive code search is limited to `2^20` encoding matrices.
pub const MAX_SEARCH_BITS: usize = 20;

/// Compensated (Kahan) accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Reciprocal-variance profile of the network seen by each codeword
/// position: `1/sigma^2_{S_t D}` on the direct positions and
/// `1/sigma^2_{R_q D} + sum_t g_{t,q} / sigma^2_{S_t R_q}` on the relay
/// positions (the source terms vanish for ideal source-to-relay links).
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaSrd {
    v: Vec<f64>,
}

impl SigmaSrd {
    pub fn from_values(v: Vec<f64>) -> Self {
        Self { v }
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }
}

pub fn sigma_srd(top: &Topology, code: &NetworkCode) -> SigmaSrd {
    let n_s = code.n_sources();
    let n_r = code.n_relays();
    let mut v = Vec::with_capacity(n_s + n_r);
    for t in 0..n_s {
        v.push(1.0 / top.sigma_sq_sd(t));
    }
    for q in 0..n_r {
        let mut entry = 1.0 / top.sigma_sq_rd(q);
        if !top.ideal_sr() {
            let g = code.encoding().row(q);
            for t in 0..n_s {
                if g >> t & 1 == 1 {
                    entry += 1.0 / top.sigma_sq_sr(t, q);
                }
            }
        }
        v.push(entry);
    }
    SigmaSrd { v }
}

/// Exact conditional pairwise error probability, by enumerating all `2^{d_H}`
/// flip patterns on the positions where `c` and `cbar` differ. A pattern is
/// an error when the flipped weights strictly outweigh the unflipped ones;
/// exact ties never count (the step function is zero at the origin).
pub fn pep_oracle(p: &[f64], w: &[f64], c: u64, cbar: u64) -> Result<f64> {
    let delta = c ^ cbar;
    let d_h = delta.count_ones();
    if d_h > MAX_PEP_DISTANCE {
        return Err(Error::Guard(format!(
            "pairwise distance {} exceeds the enumeration limit of {}",
            d_h, MAX_PEP_DISTANCE
        )));
    }
    Ok(pep_oracle_delta(p, w, delta))
}

fn pep_oracle_delta(p: &[f64], w: &[f64], delta: u64) -> f64 {
    let positions = crate::gf2code::bit_positions(delta);
    let d = positions.len();
    if d == 0 {
        return 0.0;
    }
    let mut pep = 0.0;
    for pattern in 0u64..1 << d {
        let mut signed = 0.0;
        let mut prob = 1.0;
        for (i, &m) in positions.iter().enumerate() {
            if pattern >> i & 1 == 1 {
                signed += w[m];
                prob *= p[m];
            } else {
                signed -= w[m];
                prob *= 1.0 - p[m];
            }
        }
        if signed > 0.0 {
            pep += prob;
        }
    }
    pep
}

/// High-SNR upper bound on the conditional PEP: the all-positions product
/// plus, for every partition size `d` up to half the distance, min-terms
/// `min(prod_A P, prod_complement P)` over the leading combinations, capped
/// so the total number of min-terms is `2^{d_H - 1} - 1`.
pub fn pep_high_snr(p: &[f64], c: u64, cbar: u64) -> f64 {
    let positions = crate::gf2code::bit_positions(c ^ cbar);
    let d_h = positions.len() as u32;
    if d_h == 0 {
        return 0.0;
    }
    let probs: Vec<f64> = positions.iter().map(|&m| p[m]).collect();
    let mut total: f64 = probs.iter().product();
    for d in 1..=d_h / 2 {
        let keep = n_d_count(d_h, d).expect("d within range");
        let mut comb: Vec<usize> = (0..d as usize).collect();
        for k in 0..keep {
            let mut inside = 1.0;
            let mut outside = 1.0;
            let mut next = 0;
            for (i, &pi) in probs.iter().enumerate() {
                if next < comb.len() && comb[next] == i {
                    inside *= pi;
                    next += 1;
                } else {
                    outside *= pi;
                }
            }
            total += inside.min(outside);
            if k + 1 < keep {
                advance_combination(&mut comb, d_h as usize);
            }
        }
    }
    total
}

/// Lexicographically next combination of `comb.len()` indices out of `n`.
fn advance_combination(comb: &mut [usize], n: usize) {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return;
        }
    }
}

/// Number of min-terms contributed by partition size `d`: the full binomial
/// count while the running total stays within `2^{d_H - 1} - 1`, then the
/// remainder.
pub fn n_d_count(d_h: u32, d: u32) -> Result<u64> {
    if d < 1 || d > d_h / 2 {
        return Err(Error::InvalidParameter(format!(
            "partition size {} outside 1..={} for distance {}",
            d,
            d_h / 2,
            d_h
        )));
    }
    let cap = (1u64 << (d_h - 1)) - 1;
    let mut cum = 0u64;
    for e in 1..d {
        cum += binomial(d_h, e);
    }
    let b = binomial(d_h, d);
    Ok(if cum + b <= cap { b } else { cap - cum })
}

/// Moment-matching correction constant for collapsing a product of `d`
/// Gaussian tails into a single tail:
/// `[2^{d-1} pi^{(d-1)/2} Gamma(d + 1/2) / (Gamma(3/2)^d Gamma(d + 1))]^{1/d}`.
pub fn upsilon(d: u32) -> f64 {
    use std::f64::consts::PI;
    let df = f64::from(d);
    let ln = (df - 1.0) * std::f64::consts::LN_2
        + 0.5 * (df - 1.0) * PI.ln()
        + statrs::function::gamma::ln_gamma(df + 0.5)
        - df * statrs::function::gamma::ln_gamma(1.5)
        - statrs::function::gamma::ln_gamma(df + 1.0);
    (ln / df).exp()
}

/// The bracket multiplying `(4 gamma)^{-d_H}` in the averaged PEP:
/// `1 + 2 sqrt(pi) Gamma(d_H + 1/2) sum_d N_d / (Gamma(d + 1/2) Gamma(d_H - d + 1/2))`.
fn min_term_bracket(d_h: u32) -> f64 {
    use std::f64::consts::PI;
    let dh = f64::from(d_h);
    let mut sum = Kahan::default();
    for d in 1..=d_h / 2 {
        let n_d = n_d_count(d_h, d).expect("d within range") as f64;
        sum.add(n_d / (gamma(f64::from(d) + 0.5) * gamma(dh - f64::from(d) + 0.5)));
    }
    1.0 + 2.0 * PI.sqrt() * gamma(dh + 0.5) * sum.value()
}

/// Product over positions of `chi{Delta[m] Sigma[m]}` with `chi{0} = 1`:
/// only the differing positions contribute their reciprocal-variance entry.
fn chi_product(delta: u64, sigma: &SigmaSrd) -> f64 {
    let mut prod = 1.0;
    let mut mask = delta;
    while mask != 0 {
        prod *= sigma.v[mask.trailing_zeros() as usize];
        mask &= mask - 1;
    }
    prod
}

/// Fading-averaged pairwise error probability, high-SNR closed form:
/// `(4 gamma)^{-d_H} * bracket(d_H) * prod chi{Delta Sigma}`.
pub fn apep_high_snr(snr: SnrPoint, c: u64, cbar: u64, sigma: &SigmaSrd) -> f64 {
    let delta = c ^ cbar;
    let d_h = delta.count_ones();
    if d_h == 0 {
        return 0.0;
    }
    (4.0 * snr.gamma()).powi(-(d_h as i32)) * min_term_bracket(d_h) * chi_product(delta, sigma)
}

/// Constant in front of the distance-2 averaged PEP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dh2Prefactor {
    /// `6/16`: the min-term part of the distance-2 bracket with the product
    /// term dropped, which is exact for the min-form conditional PEP.
    #[default]
    ThreeEighths,
    /// `1/2`: the `(sqrt(2) gamma)^{-2}` variant, kept for comparison.
    Half,
}

impl Dh2Prefactor {
    fn constant(self) -> f64 {
        match self {
            Dh2Prefactor::ThreeEighths => 6.0 / 16.0,
            Dh2Prefactor::Half => 0.5,
        }
    }
}

/// Exact averaged PEP for codeword pairs at Hamming distance two.
pub fn apep_dh2(snr: SnrPoint, c: u64, cbar: u64, sigma: &SigmaSrd, pre: Dh2Prefactor) -> Result<f64> {
    let delta = c ^ cbar;
    if delta.count_ones() != 2 {
        return Err(Error::InvalidParameter(format!(
            "pair distance is {}, expected 2",
            delta.count_ones()
        )));
    }
    Ok(pre.constant() * snr.gamma().powi(-2) * chi_product(delta, sigma))
}

fn averaged_pair_probability(snr: SnrPoint, delta: u64, sigma: &SigmaSrd, dh2: Dh2Prefactor) -> f64 {
    if delta.count_ones() == 2 {
        dh2.constant() * snr.gamma().powi(-2) * chi_product(delta, sigma)
    } else {
        apep_high_snr(snr, 0, delta, sigma)
    }
}

/// How the union-bound ABEP is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AbepMode {
    /// Sum the averaged closed forms over all codeword pairs. Tightest at
    /// high SNR; cheap at any SNR.
    Asymptotic,
    /// Average the exact conditional PEP oracle over sampled channel
    /// realizations; valid at any SNR, with Monte Carlo noise.
    SemiAnalytic { samples: u64, seed: u64 },
}

/// Union-bound ABEP of source `t`: over equiprobable information words the
/// ordered-pair sum collapses, by linearity, to one term per nonzero
/// information difference with bit `t` set.
pub fn abep_union_bound(
    snr: SnrPoint,
    code: &NetworkCode,
    top: &Topology,
    t: usize,
    mode: AbepMode,
    dh2: Dh2Prefactor,
) -> Result<f64> {
    top.check_code(code)?;
    if t >= code.n_sources() {
        return Err(Error::InvalidParameter(format!("source index {t} out of range")));
    }
    let deltas: Vec<u64> = (1..1u64 << code.n_sources())
        .filter(|db| db >> t & 1 == 1)
        .map(|db| code.codeword(db))
        .collect();
    match mode {
        AbepMode::Asymptotic => {
            let sigma = sigma_srd(top, code);
            let mut acc = Kahan::default();
            for &delta in &deltas {
                acc.add(averaged_pair_probability(snr, delta, &sigma, dh2));
            }
            Ok(acc.value())
        }
        AbepMode::SemiAnalytic { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidParameter("need at least one fading sample".into()));
            }
            if let Some(&worst) = deltas.iter().max_by_key(|d| d.count_ones()) {
                if worst.count_ones() > MAX_PEP_DISTANCE {
                    return Err(Error::Guard(format!(
                        "pair distance {} exceeds the enumeration limit of {}",
                        worst.count_ones(),
                        MAX_PEP_DISTANCE
                    )));
                }
            }
            // Fixed-size chunks with an ordered final reduction keep the sum
            // independent of the worker count.
            const CHUNK: u64 = 4096;
            let n_chunks = samples.div_ceil(CHUNK);
            let chunk_sums: Vec<f64> = (0..n_chunks)
                .into_par_iter()
                .map(|chunk| {
                    let lo = chunk * CHUNK;
                    let hi = (lo + CHUNK).min(samples);
                    let mut acc = Kahan::default();
                    for i in lo..hi {
                        let mut stream = rng::stream(seed, i);
                        let real = channel::sample_realization(top, &mut stream);
                        let p = channel::crossover_vector(&real, code, snr);
                        let w = demod::weights(&p);
                        for &delta in &deltas {
                            acc.add(pep_oracle_delta(p.entries(), w.values(), delta));
                        }
                    }
                    acc.value()
                })
                .collect();
            let mut total = Kahan::default();
            for s in chunk_sums {
                total.add(s);
            }
            Ok(total.value() / samples as f64)
        }
    }
}

/// Asymptotic ABEP of one source: `ABEP -> K gamma^{-G_d}`, equivalently
/// `(G_c gamma)^{-G_d}` with `G_c = K^{-1/G_d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticAbep {
    /// High-SNR slope. Equals the source's separation-vector entry under
    /// weighted joint demodulation; minimum-distance decoding keeps only
    /// `sv - floor(sv/2)` of it.
    pub diversity: u32,
    /// Coefficient `K` of the dominant-pair power law, from the
    /// reliability-weighted demodulator analysis. Not available for
    /// minimum-distance decoding.
    pub coefficient: Option<f64>,
    /// Coding gain `G_c = K^{-1/G_d}`.
    pub coding_gain: Option<f64>,
}

pub fn asymptotic_gains(
    code: &NetworkCode,
    top: &Topology,
    t: usize,
    demod: DemodKind,
    dh2: Dh2Prefactor,
) -> Result<AsymptoticAbep> {
    top.check_code(code)?;
    if t >= code.n_sources() {
        return Err(Error::InvalidParameter(format!("source index {t} out of range")));
    }
    let sv = code.separation_vector()[t];
    match demod {
        DemodKind::Mdd => Ok(AsymptoticAbep {
            diversity: sv - sv / 2,
            coefficient: None,
            coding_gain: None,
        }),
        DemodKind::Ml => {
            // Only pairs at the minimum distance survive at high SNR;
            // evaluating their averaged PEPs at gamma = 1 yields K directly.
            let sigma = sigma_srd(top, code);
            let unit = SnrPoint::new(1.0).expect("positive");
            let mut acc = Kahan::default();
            for db in code.dominant_deltas(t) {
                acc.add(averaged_pair_probability(unit, code.codeword(db), &sigma, dh2));
            }
            let k = acc.value();
            Ok(AsymptoticAbep {
                diversity: sv,
                coefficient: Some(k),
                coding_gain: Some(k.powf(-1.0 / f64::from(sv))),
            })
        }
    }
}

/// One ranked entry of the exhaustive code search.
#[derive(Debug, Clone)]
pub struct CodeCandidate {
    pub encoding: EncodingMatrix,
    pub sv: Vec<u32>,
    /// Separation vector sorted descending; the primary ranking key.
    pub sv_profile: Vec<u32>,
    pub coeff_realistic: Vec<f64>,
    pub coeff_ideal: Vec<f64>,
    /// Worst per-source gap between realistic and ideal coding gains.
    pub gain_gap: f64,
}

/// Exhaustively enumerates all `2^{N_S N_R}` encoding matrices and ranks them
/// by separation-vector profile (descending), then by the coding-gain gap
/// between realistic and ideal source-to-relay links (ascending), then by the
/// matrix bits for reproducibility.
pub fn code_search(
    n_sources: usize,
    n_relays: usize,
    top: &Topology,
    top_k: usize,
) -> Result<Vec<CodeCandidate>> {
    let bits = n_sources * n_relays;
    if bits > MAX_SEARCH_BITS {
        return Err(Error::Guard(format!(
            "search space of 2^{} matrices exceeds the 2^{} limit",
            bits, MAX_SEARCH_BITS
        )));
    }
    if top.n_sources() != n_sources || top.n_relays() != n_relays {
        return Err(Error::Dimension("topology does not match the requested network size".into()));
    }
    let realistic = top.clone().with_ideal_sr(false);
    let ideal = top.clone().with_ideal_sr(true);
    let mut out = Vec::with_capacity(1 << bits);
    for pattern in 0u64..1 << bits {
        let masks: Vec<u64> = (0..n_relays)
            .map(|q| pattern >> (q * n_sources) & ((1 << n_sources) - 1))
            .collect();
        let enc = EncodingMatrix::from_masks(n_sources, masks)?;
        let code = NetworkCode::new(enc)?;
        let mut coeff_realistic = Vec::with_capacity(n_sources);
        let mut coeff_ideal = Vec::with_capacity(n_sources);
        let mut gap = 0f64;
        for t in 0..n_sources {
            let r = asymptotic_gains(&code, &realistic, t, DemodKind::Ml, Dh2Prefactor::ThreeEighths)?;
            let i = asymptotic_gains(&code, &ideal, t, DemodKind::Ml, Dh2Prefactor::ThreeEighths)?;
            gap = gap.max((r.coding_gain.unwrap() - i.coding_gain.unwrap()).abs());
            coeff_realistic.push(r.coefficient.unwrap());
            coeff_ideal.push(i.coefficient.unwrap());
        }
        let sv = code.separation_vector().to_vec();
        let mut sv_profile = sv.clone();
        sv_profile.sort_unstable_by(|a, b| b.cmp(a));
        out.push((
            pattern,
            CodeCandidate {
                encoding: code.encoding().clone(),
                sv,
                sv_profile,
                coeff_realistic,
                coeff_ideal,
                gain_gap: gap,
            },
        ));
    }
    out.sort_by(|(pa, a), (pb, b)| {
        b.sv_profile
            .cmp(&a.sv_profile)
            .then(a.gain_gap.partial_cmp(&b.gain_gap).expect("finite gaps"))
            .then(pa.cmp(pb))
    });
    out.truncate(top_k.max(1));
    Ok(out.into_iter().map(|(_, c)| c).collect())
}
