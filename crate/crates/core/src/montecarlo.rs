//! Monte Carlo trial engine for the two-phase cooperative protocol.
//!
//! Each trial simulates one protocol round: the sources broadcast, the relays
//! demodulate-and-forward their network-coded bits, and the destination
//! jointly demodulates everything with genie CSI. Two trial modes are
//! provided, identical in distribution:
//!
//! * `Waveform` — full BPSK + AWGN synthesis and coherent hard decisions;
//! * `Bsc` — each link flips its bit with the exact conditional probability,
//!   skipping noise synthesis (the default, roughly an order of magnitude
//!   faster).
//!
//! All randomness in trial `i` comes from the stream `(seed, i)`, drawn in a
//! fixed order, so worker count and scheduling never change the counts.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::channel::{self, SnrPoint, Topology};
use crate::demod::{self, DemodKind, WeightVector};
use crate::gf2code::NetworkCode;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialMode {
    Bsc,
    Waveform,
}

#[derive(Debug, Clone)]
pub struct McConfig {
    pub seed: u64,
    /// Hard cap on trials per SNR point.
    pub max_trials: u64,
    /// Stop once every source has accumulated this many errors.
    pub target_errors: u64,
    pub mode: TrialMode,
    pub demod: DemodKind,
    pub snr_grid_db: Vec<f64>,
    /// Worker threads for this run; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            max_trials: 100_000_000,
            target_errors: 400,
            mode: TrialMode::Bsc,
            demod: DemodKind::Ml,
            snr_grid_db: Vec::new(),
            workers: None,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_trials == 0 {
            return Err(Error::InvalidParameter("max_trials must be at least 1".into()));
        }
        if self.target_errors == 0 {
            return Err(Error::InvalidParameter("target_errors must be at least 1".into()));
        }
        Ok(())
    }
}

/// Per-source tally at one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceEstimate {
    pub errors: u64,
    pub abep: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub snr_db: f64,
    pub trials: u64,
    pub per_source: Vec<SourceEstimate>,
}

const Z_95: f64 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(errors: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // The interval ends are exact at the boundary counts.
    let lo = if errors == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if errors == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Immutable per-point state shared by all trial workers.
struct TrialCtx<'a> {
    code: &'a NetworkCode,
    top: &'a Topology,
    snr: SnrPoint,
    seed: u64,
    mode: TrialMode,
    demod: DemodKind,
    n_s: usize,
    n_r: usize,
    src_mask: u64,
}

impl<'a> TrialCtx<'a> {
    fn new(top: &'a Topology, code: &'a NetworkCode, snr: SnrPoint, cfg: &McConfig) -> Result<Self> {
        top.check_code(code)?;
        cfg.validate()?;
        Ok(Self {
            code,
            top,
            snr,
            seed: cfg.seed,
            mode: cfg.mode,
            demod: cfg.demod,
            n_s: code.n_sources(),
            n_r: code.n_relays(),
            src_mask: (1u64 << code.n_sources()) - 1,
        })
    }
}

/// Reusable per-worker buffers.
#[derive(Default, Clone)]
struct Scratch {
    p_sd: Vec<f64>,
    p_sr: Vec<f64>,
    p_rd: Vec<f64>,
    p_col: Vec<f64>,
    weights: Vec<f64>,
    h: Vec<Complex64>,
}

impl Scratch {
    fn prepare(&mut self, n_s: usize, n_r: usize) {
        self.p_sd.resize(n_s, 0.0);
        self.p_sr.resize(n_s * n_r, 0.0);
        self.p_rd.resize(n_r, 0.0);
        self.p_col.resize(n_s, 0.0);
        self.weights.resize(n_s + n_r, 0.0);
        self.h.resize(n_s + n_s * n_r + n_r, Complex64::new(0.0, 0.0));
    }
}

fn exp_gain<R: Rng>(rng: &mut R, sigma_sq: f64) -> f64 {
    let u: f64 = rng.random();
    -(1.0 - u).ln() * sigma_sq
}

fn complex_gain<R: Rng>(rng: &mut R, sigma_sq: f64) -> Complex64 {
    let s = (sigma_sq / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// Runs one end-to-end trial; returns the per-source error bits.
fn trial(ctx: &TrialCtx, index: u64, scratch: &mut Scratch) -> u64 {
    let mut rng = crate::rng::stream(ctx.seed, index);
    scratch.prepare(ctx.n_s, ctx.n_r);
    let info: u64 = rng.random::<u64>() & ctx.src_mask;
    let hard = match ctx.mode {
        TrialMode::Bsc => bsc_round(ctx, info, scratch, &mut rng),
        TrialMode::Waveform => waveform_round(ctx, info, scratch, &mut rng),
    };
    let decided = match ctx.demod {
        DemodKind::Ml => {
            build_weights(ctx, scratch);
            let w = WeightVector::from_values(std::mem::take(&mut scratch.weights));
            let d = demod::ml_joint_demodulate(hard, &w, ctx.code, &mut rng);
            scratch.weights = w.into_values();
            d
        }
        DemodKind::Mdd => demod::mdd_demodulate(hard, ctx.code, &mut rng),
    };
    decided ^ info
}

/// Per-link flip probabilities for this realization, in the same order the
/// gains were drawn; also serves as the genie CSI for the weights.
fn fill_flip_probs(ctx: &TrialCtx, gains: impl Iterator<Item = f64>, scratch: &mut Scratch) {
    let (n_s, n_r) = (ctx.n_s, ctx.n_r);
    let mut it = gains;
    for t in 0..n_s {
        scratch.p_sd[t] = channel::flip_prob_from_gain(it.next().unwrap(), ctx.snr);
    }
    if !ctx.top.ideal_sr() {
        for t in 0..n_s {
            for q in 0..n_r {
                scratch.p_sr[t * n_r + q] =
                    channel::flip_prob_from_gain(it.next().unwrap(), ctx.snr);
            }
        }
    }
    for q in 0..n_r {
        scratch.p_rd[q] = channel::flip_prob_from_gain(it.next().unwrap(), ctx.snr);
    }
}

/// BSC mode: draw the fading power gains, then flip each transported bit with
/// its exact conditional probability.
fn bsc_round(ctx: &TrialCtx, info: u64, scratch: &mut Scratch, rng: &mut ChaCha8Rng) -> u64 {
    let (n_s, n_r) = (ctx.n_s, ctx.n_r);
    // Fixed draw order: direct gains, source-relay gains, forward gains.
    for t in 0..n_s {
        scratch.p_sd[t] = channel::flip_prob_from_gain(exp_gain(rng, ctx.top.sigma_sq_sd(t)), ctx.snr);
    }
    if !ctx.top.ideal_sr() {
        for t in 0..n_s {
            for q in 0..n_r {
                scratch.p_sr[t * n_r + q] =
                    channel::flip_prob_from_gain(exp_gain(rng, ctx.top.sigma_sq_sr(t, q)), ctx.snr);
            }
        }
    }
    for q in 0..n_r {
        scratch.p_rd[q] = channel::flip_prob_from_gain(exp_gain(rng, ctx.top.sigma_sq_rd(q)), ctx.snr);
    }

    let mut hard = 0u64;
    for t in 0..n_s {
        let bit = (info >> t & 1) ^ u64::from(rng.random::<f64>() < scratch.p_sd[t]);
        hard |= bit << t;
    }
    for q in 0..n_r {
        let g = ctx.code.encoding().row(q);
        let mut relay_bit = 0u64;
        if ctx.top.ideal_sr() {
            relay_bit = u64::from((g & info).count_ones() & 1);
        } else {
            for t in 0..n_s {
                if g >> t & 1 == 1 {
                    relay_bit ^=
                        (info >> t & 1) ^ u64::from(rng.random::<f64>() < scratch.p_sr[t * n_r + q]);
                }
            }
        }
        let out = relay_bit ^ u64::from(rng.random::<f64>() < scratch.p_rd[q]);
        hard |= out << (n_s + q);
    }
    hard
}

/// Waveform mode: synthesise BPSK symbols, fading and AWGN, then hard-decide
/// every link coherently. `E_m = 1`, `N_0 = 1 / gamma`.
fn waveform_round(ctx: &TrialCtx, info: u64, scratch: &mut Scratch, rng: &mut ChaCha8Rng) -> u64 {
    let (n_s, n_r) = (ctx.n_s, ctx.n_r);
    let noise_s = (0.5 / ctx.snr.gamma()).sqrt();
    // Same canonical draw order for the gains as in BSC mode.
    let mut k = 0;
    for t in 0..n_s {
        scratch.h[k] = complex_gain(rng, ctx.top.sigma_sq_sd(t));
        k += 1;
    }
    let sr_base = k;
    if !ctx.top.ideal_sr() {
        for t in 0..n_s {
            for q in 0..n_r {
                scratch.h[sr_base + t * n_r + q] = complex_gain(rng, ctx.top.sigma_sq_sr(t, q));
            }
        }
        k += n_s * n_r;
    }
    let rd_base = k;
    for q in 0..n_r {
        scratch.h[rd_base + q] = complex_gain(rng, ctx.top.sigma_sq_rd(q));
    }

    let noise = |rng: &mut ChaCha8Rng| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(noise_s * re, noise_s * im)
    };

    // Broadcasting phase: destination and relays demodulate each source.
    let mut hard = 0u64;
    let mut relay_inputs = vec![0u64; n_r];
    for t in 0..n_s {
        let x = 1.0 - 2.0 * (info >> t & 1) as f64;
        let h = scratch.h[t];
        let y = h * x + noise(rng);
        hard |= u64::from(demod::bpsk_hard_decision(y, h, rng)) << t;
        if !ctx.top.ideal_sr() {
            for q in 0..n_r {
                if ctx.code.encoding().row(q) >> t & 1 == 1 {
                    let h = scratch.h[sr_base + t * n_r + q];
                    let y = h * x + noise(rng);
                    relay_inputs[q] ^= u64::from(demod::bpsk_hard_decision(y, h, rng)) << t;
                }
            }
        }
    }
    // Relaying phase: each relay forwards its network-coded bit.
    for q in 0..n_r {
        let relay_bit = if ctx.top.ideal_sr() {
            (ctx.code.encoding().row(q) & info).count_ones() as u64 & 1
        } else {
            relay_inputs[q].count_ones() as u64 & 1
        };
        let x = 1.0 - 2.0 * relay_bit as f64;
        let h = scratch.h[rd_base + q];
        let y = h * x + noise(rng);
        hard |= u64::from(demod::bpsk_hard_decision(y, h, rng)) << (n_s + q);
    }

    // Genie CSI for the demodulator weights.
    let gains = (0..n_s)
        .map(|t| scratch.h[t].norm_sqr())
        .chain(
            (!ctx.top.ideal_sr())
                .then(|| (0..n_s * n_r).map(|i| scratch.h[sr_base + i].norm_sqr()))
                .into_iter()
                .flatten(),
        )
        .chain((0..n_r).map(|q| scratch.h[rd_base + q].norm_sqr()))
        .collect::<Vec<_>>();
    fill_flip_probs(ctx, gains.into_iter(), scratch);
    hard
}

/// Composes the end-to-end cross-over vector from the per-link probabilities
/// already in the scratch buffers, then takes log-likelihood-ratio weights.
fn build_weights(ctx: &TrialCtx, scratch: &mut Scratch) {
    let (n_s, n_r) = (ctx.n_s, ctx.n_r);
    let clamp = |p: f64| p.clamp(channel::P_MIN, channel::P_MAX);
    for t in 0..n_s {
        scratch.weights[t] = {
            let p = clamp(scratch.p_sd[t]);
            ((1.0 - p) / p).ln()
        };
    }
    for q in 0..n_r {
        let branch = if ctx.top.ideal_sr() {
            scratch.p_rd[q]
        } else {
            for t in 0..n_s {
                scratch.p_col[t] = scratch.p_sr[t * n_r + q];
            }
            channel::end_to_end_crossover(
                channel::relay_nc_crossover(&scratch.p_col, ctx.code.encoding().row(q)),
                scratch.p_rd[q],
            )
        };
        let p = clamp(branch);
        scratch.weights[n_s + q] = ((1.0 - p) / p).ln();
    }
}

/// Runs a single trial in isolation; returns the per-source error bits.
pub fn run_trial(
    top: &Topology,
    code: &NetworkCode,
    snr: SnrPoint,
    trial_index: u64,
    cfg: &McConfig,
) -> Result<u64> {
    let ctx = TrialCtx::new(top, code, snr, cfg)?;
    let mut scratch = Scratch::default();
    Ok(trial(&ctx, trial_index, &mut scratch))
}

#[derive(Clone)]
struct Counts {
    errors: Vec<u64>,
}

impl Counts {
    fn zero(n_s: usize) -> Self {
        Self { errors: vec![0; n_s] }
    }

    fn absorb(&mut self, err_mask: u64) {
        let mut mask = err_mask;
        while mask != 0 {
            self.errors[mask.trailing_zeros() as usize] += 1;
            mask &= mask - 1;
        }
    }

    fn merge(mut self, other: Counts) -> Counts {
        for (a, b) in self.errors.iter_mut().zip(other.errors) {
            *a += b;
        }
        self
    }
}

fn estimate_point(top: &Topology, code: &NetworkCode, snr_db: f64, cfg: &McConfig) -> Result<McEstimate> {
    let ctx = TrialCtx::new(top, code, SnrPoint::from_db(snr_db), cfg)?;
    let n_s = code.n_sources();
    let mut totals = Counts::zero(n_s);
    let mut trials = 0u64;
    // Batches grow geometrically; the stop rule is checked only at batch
    // boundaries so the trial set is a pure function of the config.
    let mut batch: u64 = 8_192;
    const MAX_BATCH: u64 = 1 << 21;
    while trials < cfg.max_trials {
        if totals.errors.iter().all(|&e| e >= cfg.target_errors) {
            break;
        }
        let n = batch.min(cfg.max_trials - trials);
        let got = (trials..trials + n)
            .into_par_iter()
            .fold(
                || (Counts::zero(n_s), Scratch::default()),
                |(mut counts, mut scratch), index| {
                    counts.absorb(trial(&ctx, index, &mut scratch));
                    (counts, scratch)
                },
            )
            .map(|(counts, _)| counts)
            .reduce(|| Counts::zero(n_s), Counts::merge);
        totals = totals.merge(got);
        trials += n;
        batch = (batch * 2).min(MAX_BATCH);
    }
    let per_source = totals
        .errors
        .iter()
        .map(|&errors| {
            let (ci_lo, ci_hi) = wilson_interval(errors, trials);
            SourceEstimate { errors, abep: errors as f64 / trials as f64, ci_lo, ci_hi }
        })
        .collect();
    Ok(McEstimate { snr_db, trials, per_source })
}

/// Estimates the per-source ABEP over the configured SNR grid. Deterministic
/// for a fixed `(seed, config)` regardless of worker count.
pub fn estimate_abep(top: &Topology, code: &NetworkCode, cfg: &McConfig) -> Result<Vec<McEstimate>> {
    cfg.validate()?;
    top.check_code(code)?;
    let run = || cfg.snr_grid_db.iter().map(|&db| estimate_point(top, code, db, cfg)).collect();
    match cfg.workers {
        None => run(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
            pool.install(run)
        }
    }
}

/// Empirical diversity order between two estimates:
/// `-(log10 A_hi - log10 A_lo) / ((db_hi - db_lo) / 10)` per source.
pub fn estimate_slope(low: &McEstimate, high: &McEstimate) -> Result<Vec<f64>> {
    if low.per_source.len() != high.per_source.len() {
        return Err(Error::Dimension("estimates cover different source counts".into()));
    }
    let decades = (high.snr_db - low.snr_db) / 10.0;
    if decades == 0.0 {
        return Err(Error::InvalidParameter("estimates are at the same SNR".into()));
    }
    low.per_source
        .iter()
        .zip(&high.per_source)
        .enumerate()
        .map(|(t, (lo, hi))| {
            if lo.abep == 0.0 || hi.abep == 0.0 {
                return Err(Error::DegenerateEstimate(format!(
                    "source {} has a zero-error estimate",
                    t + 1
                )));
            }
            Ok(-(hi.abep.log10() - lo.abep.log10()) / decades)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{self, Dh2Prefactor};
    use approx::assert_relative_eq;

    fn repetition_1s1r() -> NetworkCode {
        NetworkCode::from_rows(1, &[vec![1]]).unwrap()
    }

    #[test]
    fn wilson_contains_the_point_estimate() {
        for (e, n) in [(0u64, 100u64), (3, 100), (50, 100), (400, 1_000_000)] {
            let (lo, hi) = wilson_interval(e, n);
            let p = e as f64 / n as f64;
            assert!(lo <= p && p <= hi, "({e}, {n})");
        }
    }

    #[test]
    fn infinite_snr_yields_no_errors() {
        let code = repetition_1s1r();
        let top = Topology::iid(1, 1, 1.0).unwrap();
        let cfg = McConfig {
            snr_grid_db: vec![120.0],
            max_trials: 10_000,
            target_errors: 1,
            ..Default::default()
        };
        let est = estimate_abep(&top, &code, &cfg).unwrap();
        assert_eq!(est[0].per_source[0].errors, 0);
    }

    #[test]
    fn direct_link_ber_matches_exact_average() {
        // Single source, no relays, gamma sigma^2 = 1.
        let code = NetworkCode::from_rows(1, &[]).unwrap();
        let top = Topology::iid(1, 0, 1.0).unwrap();
        let cfg = McConfig {
            snr_grid_db: vec![0.0],
            max_trials: 1_000_000,
            target_errors: u64::MAX,
            seed: 42,
            ..Default::default()
        };
        let est = &estimate_abep(&top, &code, &cfg).unwrap()[0];
        let exact = channel::avg_link_flip_prob_exact(1.0, SnrPoint::new(1.0).unwrap());
        let se = (exact * (1.0 - exact) / est.trials as f64).sqrt();
        assert!(
            (est.per_source[0].abep - exact).abs() < 3.0 * se,
            "{} vs {exact}",
            est.per_source[0].abep
        );
    }

    #[test]
    fn waveform_and_bsc_modes_agree() {
        let code = NetworkCode::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let top = Topology::iid(2, 2, 1.0).unwrap();
        let base = McConfig {
            snr_grid_db: vec![10.0],
            max_trials: 200_000,
            target_errors: u64::MAX,
            seed: 7,
            ..Default::default()
        };
        let bsc = &estimate_abep(&top, &code, &base).unwrap()[0];
        let wave = &estimate_abep(
            &top,
            &code,
            &McConfig { mode: TrialMode::Waveform, seed: 8, ..base.clone() },
        )
        .unwrap()[0];
        for t in 0..2 {
            let a = &bsc.per_source[t];
            let b = &wave.per_source[t];
            assert!(a.ci_lo <= b.ci_hi && b.ci_lo <= a.ci_hi, "CIs must overlap: {a:?} vs {b:?}");
            // Two-proportion z-test.
            let n = bsc.trials as f64;
            let pool = (a.errors + b.errors) as f64 / (2.0 * n);
            let z = (a.abep - b.abep) / (pool * (1.0 - pool) * 2.0 / n).sqrt();
            assert!(z.abs() < 4.0, "z = {z}");
        }
    }

    #[test]
    fn worker_count_does_not_change_counts() {
        let code = NetworkCode::from_rows(2, &[vec![1, 0], vec![1, 1]]).unwrap();
        let top = Topology::iid(2, 2, 1.0).unwrap();
        let mk = |workers| McConfig {
            snr_grid_db: vec![6.0, 10.0],
            max_trials: 60_000,
            target_errors: 150,
            seed: 99,
            workers: Some(workers),
            ..Default::default()
        };
        let one = estimate_abep(&top, &code, &mk(1)).unwrap();
        let four = estimate_abep(&top, &code, &mk(4)).unwrap();
        let sixteen = estimate_abep(&top, &code, &mk(16)).unwrap();
        assert_eq!(one, four);
        assert_eq!(one, sixteen);
    }

    #[test]
    fn repetition_estimate_tracks_asymptote() {
        let code = repetition_1s1r();
        let top = Topology::iid(1, 1, 1.0).unwrap();
        let cfg = McConfig {
            snr_grid_db: vec![20.0],
            target_errors: 400,
            seed: 3,
            ..Default::default()
        };
        let est = &estimate_abep(&top, &code, &cfg).unwrap()[0];
        let gains = analysis::asymptotic_gains(
            &code,
            &top,
            0,
            DemodKind::Ml,
            Dh2Prefactor::ThreeEighths,
        )
        .unwrap();
        let asym = gains.coefficient.unwrap() * SnrPoint::from_db(20.0).gamma().powi(-2);
        let ratio = est.per_source[0].abep / asym;
        assert!((0.5..2.0).contains(&ratio), "ratio {ratio}");
        // Stop rule: 400 errors keep the interval within ~10% of the mean.
        let src = &est.per_source[0];
        assert!(src.errors >= 400);
        assert!((src.ci_hi - src.ci_lo) / 2.0 <= 0.11 * src.abep);
    }

    #[test]
    fn slope_of_a_pure_power_law() {
        let mk = |snr_db: f64, abep: f64| McEstimate {
            snr_db,
            trials: 1,
            per_source: vec![SourceEstimate { errors: 1, abep, ci_lo: 0.0, ci_hi: 1.0 }],
        };
        let k = 0.42;
        let low = mk(20.0, k * SnrPoint::from_db(20.0).gamma().powi(-2));
        let high = mk(30.0, k * SnrPoint::from_db(30.0).gamma().powi(-2));
        let slopes = estimate_slope(&low, &high).unwrap();
        assert_relative_eq!(slopes[0], 2.0, max_relative = 1e-12);

        let zero = mk(30.0, 0.0);
        assert!(matches!(estimate_slope(&low, &zero), Err(Error::DegenerateEstimate(_))));
    }

    #[test]
    fn ml_never_loses_to_mdd() {
        let code = NetworkCode::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let top = Topology::iid(2, 2, 1.0).unwrap();
        let base = McConfig {
            snr_grid_db: vec![10.0],
            max_trials: 150_000,
            target_errors: u64::MAX,
            seed: 21,
            ..Default::default()
        };
        let ml = &estimate_abep(&top, &code, &base).unwrap()[0];
        let mdd = &estimate_abep(
            &top,
            &code,
            &McConfig { demod: DemodKind::Mdd, ..base.clone() },
        )
        .unwrap()[0];
        for t in 0..2 {
            let half = (ml.per_source[t].ci_hi - ml.per_source[t].ci_lo) / 2.0;
            assert!(
                ml.per_source[t].abep <= mdd.per_source[t].abep + 3.0 * half,
                "source {t}: ml {} vs mdd {}",
                ml.per_source[t].abep,
                mdd.per_source[t].abep
            );
        }
    }

    #[test]
    fn mc_stays_below_union_bound() {
        let code = NetworkCode::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let top = Topology::iid(2, 2, 1.0).unwrap();
        let cfg = McConfig {
            snr_grid_db: vec![15.0],
            max_trials: 400_000,
            target_errors: u64::MAX,
            seed: 17,
            ..Default::default()
        };
        let est = &estimate_abep(&top, &code, &cfg).unwrap()[0];
        for t in 0..2 {
            let bound = analysis::abep_union_bound(
                SnrPoint::from_db(15.0),
                &code,
                &top,
                t,
                analysis::AbepMode::SemiAnalytic { samples: 100_000, seed: 5 },
                Dh2Prefactor::ThreeEighths,
            )
            .unwrap();
            let half = (est.per_source[t].ci_hi - est.per_source[t].ci_lo) / 2.0;
            assert!(
                est.per_source[t].abep <= bound + 3.0 * half,
                "source {t}: mc {} vs bound {bound}",
                est.per_source[t].abep
            );
        }
    }
}
