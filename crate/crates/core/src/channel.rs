//! Rayleigh fading topology and cross-over probabilities.
//!
//! Every wireless link `X -> Y` carries a circularly-symmetric complex
//! Gaussian gain with variance `sigma^2_XY` (`sigma^2_XY / 2` per dimension),
//! so `|h|^2` is exponential with mean `sigma^2_XY`. Conditioned on the gains,
//! each link is a binary symmetric channel; the relay branch additionally
//! accumulates the demodulate-and-forward errors of every source it mixes.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use statrs::function::erf::erfc;

use crate::gf2code::NetworkCode;
use crate::{Error, Result};

/// Flip probabilities are clamped to `[P_MIN, P_MAX]` before reliability
/// weights are formed; genie CSI can make a link error probability
/// numerically zero.
pub const P_MIN: f64 = 1e-15;
pub const P_MAX: f64 = 0.5;

/// Gaussian tail probability, evaluated through the complementary error
/// function for accuracy over the whole argument range.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// A transmit SNR point `gamma = E_m / N_0` (linear). The per-symbol energy
/// is fixed at `E_m = 1`; total and per-node energies over one protocol round
/// are `E_m (N_S + N_R)` and `E_m` and are reported by the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPoint {
    gamma: f64,
}

impl SnrPoint {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("snr must be positive, got {gamma}")));
        }
        Ok(Self { gamma })
    }

    pub fn from_db(db: f64) -> Self {
        Self { gamma: 10f64.powf(db / 10.0) }
    }

    pub fn gamma(self) -> f64 {
        self.gamma
    }

    pub fn db(self) -> f64 {
        10.0 * self.gamma.log10()
    }
}

/// Per-link fading variances of the whole network.
///
/// `ideal_sr` marks perfectly reliable source-to-relay links as a mode flag
/// rather than a huge variance, so the corresponding limit formulas are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    sigma_sq_sd: Vec<f64>,
    /// Indexed `[source][relay]`.
    sigma_sq_sr: Vec<Vec<f64>>,
    sigma_sq_rd: Vec<f64>,
    ideal_sr: bool,
}

impl Topology {
    /// All links share one variance.
    pub fn iid(n_sources: usize, n_relays: usize, sigma_sq: f64) -> Result<Self> {
        Self::from_links(
            vec![sigma_sq; n_sources],
            vec![vec![sigma_sq; n_relays]; n_sources],
            vec![sigma_sq; n_relays],
        )
    }

    /// Explicit per-link variances.
    pub fn from_links(
        sigma_sq_sd: Vec<f64>,
        sigma_sq_sr: Vec<Vec<f64>>,
        sigma_sq_rd: Vec<f64>,
    ) -> Result<Self> {
        let n_s = sigma_sq_sd.len();
        let n_r = sigma_sq_rd.len();
        if n_s == 0 {
            return Err(Error::InvalidParameter("need at least one source".into()));
        }
        if sigma_sq_sr.len() != n_s || sigma_sq_sr.iter().any(|row| row.len() != n_r) {
            return Err(Error::Dimension(format!(
                "source-to-relay variance table must be {} x {}",
                n_s, n_r
            )));
        }
        let all = sigma_sq_sd
            .iter()
            .chain(sigma_sq_rd.iter())
            .chain(sigma_sq_sr.iter().flatten());
        for &v in all {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("variance must be positive, got {v}")));
            }
        }
        Ok(Self { sigma_sq_sd, sigma_sq_sr, sigma_sq_rd, ideal_sr: false })
    }

    /// Derives variances from 2D node positions as `sigma^2 = d^{-alpha}`.
    /// Coincident nodes are rejected (the variance would diverge).
    pub fn from_positions(
        sources: &[[f64; 2]],
        relays: &[[f64; 2]],
        destination: [f64; 2],
        alpha: f64,
    ) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("path-loss exponent must be positive, got {alpha}")));
        }
        let var = |a: [f64; 2], b: [f64; 2]| -> Result<f64> {
            let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
            if d == 0.0 {
                return Err(Error::InvalidParameter("coincident nodes give infinite variance".into()));
            }
            Ok(d.powf(-alpha))
        };
        let sd = sources.iter().map(|&s| var(s, destination)).collect::<Result<Vec<_>>>()?;
        let sr = sources
            .iter()
            .map(|&s| relays.iter().map(|&r| var(s, r)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let rd = relays.iter().map(|&r| var(r, destination)).collect::<Result<Vec<_>>>()?;
        Self::from_links(sd, sr, rd)
    }

    pub fn with_ideal_sr(mut self, ideal: bool) -> Self {
        self.ideal_sr = ideal;
        self
    }

    pub fn ideal_sr(&self) -> bool {
        self.ideal_sr
    }

    pub fn n_sources(&self) -> usize {
        self.sigma_sq_sd.len()
    }

    pub fn n_relays(&self) -> usize {
        self.sigma_sq_rd.len()
    }

    pub fn sigma_sq_sd(&self, t: usize) -> f64 {
        self.sigma_sq_sd[t]
    }

    pub fn sigma_sq_sr(&self, t: usize, q: usize) -> f64 {
        self.sigma_sq_sr[t][q]
    }

    pub fn sigma_sq_rd(&self, q: usize) -> f64 {
        self.sigma_sq_rd[q]
    }

    pub fn check_code(&self, code: &NetworkCode) -> Result<()> {
        if code.n_sources() != self.n_sources() || code.n_relays() != self.n_relays() {
            return Err(Error::Dimension(format!(
                "code is {} x {}, topology is {} x {}",
                code.n_relays(),
                code.n_sources(),
                self.n_relays(),
                self.n_sources()
            )));
        }
        Ok(())
    }
}

/// One draw of all complex link gains. Under `ideal_sr` the source-to-relay
/// gains are not materialised; the relays decode perfectly downstream.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub h_sd: Vec<Complex64>,
    /// Indexed `[source][relay]`; empty when the topology is `ideal_sr`.
    pub h_sr: Vec<Vec<Complex64>>,
    pub h_rd: Vec<Complex64>,
    pub ideal_sr: bool,
}

fn complex_gaussian<R: Rng>(sigma_sq: f64, rng: &mut R) -> Complex64 {
    let s = (sigma_sq / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// Independent Rayleigh draws for every link, in the fixed order
/// source-destination, source-relay (source-major), relay-destination.
pub fn sample_realization<R: Rng>(top: &Topology, rng: &mut R) -> ChannelRealization {
    let h_sd = (0..top.n_sources()).map(|t| complex_gaussian(top.sigma_sq_sd(t), rng)).collect();
    let h_sr = if top.ideal_sr() {
        Vec::new()
    } else {
        (0..top.n_sources())
            .map(|t| (0..top.n_relays()).map(|q| complex_gaussian(top.sigma_sq_sr(t, q), rng)).collect())
            .collect()
    };
    let h_rd = (0..top.n_relays()).map(|q| complex_gaussian(top.sigma_sq_rd(q), rng)).collect();
    ChannelRealization { h_sd, h_sr, h_rd, ideal_sr: top.ideal_sr() }
}

/// Instantaneous BPSK flip probability `Q(sqrt(2 gamma |h|^2))`.
pub fn link_flip_prob(h: Complex64, snr: SnrPoint) -> f64 {
    flip_prob_from_gain(h.norm_sqr(), snr)
}

pub fn flip_prob_from_gain(gain_sq: f64, snr: SnrPoint) -> f64 {
    q_function((2.0 * snr.gamma() * gain_sq).sqrt())
}

/// Probability that the network-coded bit formed at a relay differs from the
/// network-coded true bits, i.e. that an odd number of the mixed
/// source-to-relay links flipped. Closed form over the active links:
/// `sum_t g_t p_t prod_{r>t} (1 - 2 g_r p_r)`.
pub fn relay_nc_crossover(p_sr: &[f64], g: u64) -> f64 {
    let mut total = 0.0;
    for (t, &p) in p_sr.iter().enumerate() {
        if g >> t & 1 == 0 {
            continue;
        }
        let mut term = p;
        for (r, &pr) in p_sr.iter().enumerate().skip(t + 1) {
            if g >> r & 1 == 1 {
                term *= 1.0 - 2.0 * pr;
            }
        }
        total += term;
    }
    total
}

/// Same quantity through the chain of recurrences
/// `P_{1:t} = P_{1:t-1} (1 - p_t) + (1 - P_{1:t-1}) p_t`; kept as an
/// independent route for cross-checking.
pub fn relay_nc_crossover_recursive(p_sr: &[f64], g: u64) -> f64 {
    let mut acc = 0.0;
    for (t, &p) in p_sr.iter().enumerate() {
        let pt = if g >> t & 1 == 1 { p } else { 0.0 };
        acc = acc * (1.0 - pt) + (1.0 - acc) * pt;
    }
    acc
}

/// Serial concatenation of two binary symmetric channels.
pub fn end_to_end_crossover(a: f64, b: f64) -> f64 {
    a + b - 2.0 * a * b
}

/// The `N_S + N_R` end-to-end bit-flip probabilities feeding the joint
/// demodulator: direct links first, then one composite entry per relay
/// branch. Entries are clamped to `(0, 1/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverVector {
    p: Vec<f64>,
    n_sources: usize,
}

impl CrossoverVector {
    pub fn from_probs(p: Vec<f64>, n_sources: usize) -> Self {
        let p = p.into_iter().map(|v| v.clamp(P_MIN, P_MAX)).collect();
        Self { p, n_sources }
    }

    pub fn entries(&self) -> &[f64] {
        &self.p
    }

    pub fn n_sources(&self) -> usize {
        self.n_sources
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

/// Composes the per-position cross-over probabilities for one channel
/// realization: direct links are single hops; each relay branch cascades the
/// network-coding error at the relay with its forward link. Under `ideal_sr`
/// the branch reduces to the relay-destination link alone.
pub fn crossover_vector(real: &ChannelRealization, code: &NetworkCode, snr: SnrPoint) -> CrossoverVector {
    let n_s = code.n_sources();
    let n_r = code.n_relays();
    let mut p = Vec::with_capacity(n_s + n_r);
    for t in 0..n_s {
        p.push(link_flip_prob(real.h_sd[t], snr));
    }
    let mut p_col = vec![0.0; n_s];
    for q in 0..n_r {
        let p_rd = link_flip_prob(real.h_rd[q], snr);
        let branch = if real.ideal_sr {
            p_rd
        } else {
            for t in 0..n_s {
                p_col[t] = link_flip_prob(real.h_sr[t][q], snr);
            }
            end_to_end_crossover(relay_nc_crossover(&p_col, code.encoding().row(q)), p_rd)
        };
        p.push(branch);
    }
    CrossoverVector::from_probs(p, n_s)
}

/// Exact Rayleigh-averaged BPSK error probability of a single link:
/// `(1/2) [1 - sqrt(gs / (1 + gs))]` with `gs = gamma sigma^2`.
pub fn avg_link_flip_prob_exact(sigma_sq: f64, snr: SnrPoint) -> f64 {
    let gs = snr.gamma() * sigma_sq;
    0.5 * (1.0 - (gs / (1.0 + gs)).sqrt())
}

/// High-SNR average of the composite relay-branch cross-over probability:
/// the reciprocal-variance sum of the mixed source-to-relay links plus the
/// forward link, each as `(4 gamma sigma^2)^{-1}`. Under `ideal_sr` only the
/// forward term remains.
pub fn avg_relay_crossover_high_snr(top: &Topology, g: u64, relay: usize, snr: SnrPoint) -> f64 {
    let inv = |sigma_sq: f64| 1.0 / (4.0 * snr.gamma() * sigma_sq);
    let mut total = inv(top.sigma_sq_rd(relay));
    if !top.ideal_sr() {
        for t in 0..top.n_sources() {
            if g >> t & 1 == 1 {
                total += inv(top.sigma_sq_sr(t, relay));
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::Rng;

    /// Brute-force oracle: probability of an odd number of flips among the
    /// active links.
    pub(crate) fn odd_flip_enumeration(p: &[f64], g: u64) -> f64 {
        let active: Vec<f64> =
            p.iter().enumerate().filter(|(t, _)| g >> t & 1 == 1).map(|(_, &v)| v).collect();
        let mut total = 0.0;
        for pattern in 0..(1u64 << active.len()) {
            if (pattern.count_ones() & 1) == 1 {
                let mut prob = 1.0;
                for (i, &pi) in active.iter().enumerate() {
                    prob *= if pattern >> i & 1 == 1 { pi } else { 1.0 - pi };
                }
                total += prob;
            }
        }
        total
    }

    #[test]
    fn sampled_gain_means_match_variances() {
        let top = Topology::from_links(vec![1.0], vec![vec![0.125]], vec![2.0]).unwrap();
        let mut rng = rng::stream(11, 0);
        let n = 1_000_000;
        let (mut sd, mut sr, mut rd) = (0.0, 0.0, 0.0);
        for _ in 0..n {
            let r = sample_realization(&top, &mut rng);
            sd += r.h_sd[0].norm_sqr();
            sr += r.h_sr[0][0].norm_sqr();
            rd += r.h_rd[0].norm_sqr();
        }
        assert_relative_eq!(sd / n as f64, 1.0, max_relative = 0.01);
        // sigma^2 = d^{-alpha} with d = 2, alpha = 3.
        assert_relative_eq!(sr / n as f64, 0.125, max_relative = 0.01);
        assert_relative_eq!(rd / n as f64, 2.0, max_relative = 0.01);
    }

    #[test]
    fn positions_derive_path_loss_variances() {
        let top = Topology::from_positions(&[[0.0, 0.0]], &[[0.0, 2.0]], [3.0, 0.0], 3.0).unwrap();
        assert_relative_eq!(top.sigma_sq_sr(0, 0), 0.125, max_relative = 1e-12);
        assert_relative_eq!(top.sigma_sq_sd(0), 3f64.powf(-3.0), max_relative = 1e-12);
        assert!(Topology::from_positions(&[[1.0, 1.0]], &[[1.0, 1.0]], [0.0, 0.0], 3.0).is_err());
    }

    #[test]
    fn ideal_sr_realizations_skip_relay_inputs() {
        let top = Topology::iid(2, 2, 1.0).unwrap().with_ideal_sr(true);
        let real = sample_realization(&top, &mut rng::stream(1, 0));
        assert!(real.h_sr.is_empty());
        assert!(real.ideal_sr);
    }

    #[test]
    fn link_flip_prob_examples() {
        let snr = SnrPoint::new(1.0).unwrap();
        assert_relative_eq!(link_flip_prob(Complex64::new(0.0, 0.0), snr), 0.5);
        assert_eq!(link_flip_prob(Complex64::new(1e9, 0.0), snr), 0.0);
        // Numerical quadrature of the Gaussian tail at sqrt(2); the erfc
        // implementation is good to about ten significant digits.
        assert_relative_eq!(
            link_flip_prob(Complex64::new(1.0, 0.0), snr),
            0.07864960352514257,
            max_relative = 1e-9
        );
    }

    #[test]
    fn relay_crossover_closed_form_examples() {
        assert_relative_eq!(relay_nc_crossover(&[0.3, 0.2], 0b01), 0.3);
        assert_relative_eq!(relay_nc_crossover(&[0.1, 0.2], 0b11), 0.26, max_relative = 1e-12);
        assert_relative_eq!(relay_nc_crossover(&[0.1, 0.1, 0.1], 0b111), 0.244, max_relative = 1e-12);
        assert_eq!(relay_nc_crossover(&[0.1, 0.2], 0), 0.0);
    }

    #[test]
    fn relay_crossover_routes_agree_on_examples() {
        for (p, g) in [
            (vec![0.3, 0.2], 0b01u64),
            (vec![0.1, 0.2], 0b11),
            (vec![0.1, 0.1, 0.1], 0b111),
        ] {
            let a = relay_nc_crossover(&p, g);
            let b = relay_nc_crossover_recursive(&p, g);
            let c = odd_flip_enumeration(&p, g);
            assert_relative_eq!(a, b, epsilon = 1e-12);
            assert_relative_eq!(a, c, epsilon = 1e-12);
        }
    }

    #[test]
    fn relay_crossover_routes_agree_randomised() {
        let mut rng = rng::stream(23, 0);
        for _ in 0..1000 {
            let n_s = rng.random_range(1..=10usize);
            let p: Vec<f64> = (0..n_s).map(|_| rng.random::<f64>() * 0.5).collect();
            let g: u64 = rng.random::<u64>() & ((1 << n_s) - 1);
            let a = relay_nc_crossover(&p, g);
            let b = relay_nc_crossover_recursive(&p, g);
            let c = odd_flip_enumeration(&p, g);
            assert!((a - b).abs() < 1e-12, "closed form vs recursion: {a} vs {b}");
            assert!((a - c).abs() < 1e-12, "closed form vs enumeration: {a} vs {c}");
        }
    }

    #[test]
    fn end_to_end_examples() {
        assert_relative_eq!(end_to_end_crossover(0.26, 0.1), 0.308, max_relative = 1e-12);
        assert_relative_eq!(end_to_end_crossover(0.3, 0.0), 0.3);
        assert_relative_eq!(end_to_end_crossover(0.5, 0.17), 0.5);
    }

    #[test]
    fn crossover_vector_composition() {
        let code = crate::gf2code::NetworkCode::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let snr = SnrPoint::new(1.0).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let real = ChannelRealization {
            h_sd: vec![one; 2],
            h_sr: vec![vec![one; 2]; 2],
            h_rd: vec![one; 2],
            ideal_sr: false,
        };
        let p = crossover_vector(&real, &code, snr);
        let q = q_function(2f64.sqrt());
        assert_relative_eq!(p.entries()[0], q, max_relative = 1e-12);
        // Relay branch: three cascaded BSCs with flip probability q each.
        let expect = odd_flip_enumeration(&[q, q, q], 0b111);
        assert_relative_eq!(p.entries()[2], expect, max_relative = 1e-12);
        assert_relative_eq!(p.entries()[3], expect, max_relative = 1e-12);

        // Huge gains drive every entry to the clamp floor.
        let big = Complex64::new(1e9, 0.0);
        let real = ChannelRealization {
            h_sd: vec![big; 2],
            h_sr: vec![vec![big; 2]; 2],
            h_rd: vec![big; 2],
            ideal_sr: false,
        };
        for &v in crossover_vector(&real, &code, snr).entries() {
            assert_eq!(v, P_MIN);
        }
    }

    #[test]
    fn crossover_vector_degenerate_and_ideal() {
        // No relays: the vector is just the direct links.
        let code = crate::gf2code::NetworkCode::from_rows(1, &[]).unwrap();
        let snr = SnrPoint::new(1.0).unwrap();
        let real = ChannelRealization {
            h_sd: vec![Complex64::new(1.0, 0.0)],
            h_sr: Vec::new(),
            h_rd: Vec::new(),
            ideal_sr: false,
        };
        let p = crossover_vector(&real, &code, snr);
        assert_eq!(p.len(), 1);
        assert_relative_eq!(p.entries()[0], q_function(2f64.sqrt()), max_relative = 1e-12);

        // Ideal source-to-relay links: the branch is the forward link alone.
        let code = crate::gf2code::NetworkCode::from_rows(2, &[vec![1, 1]]).unwrap();
        let real = ChannelRealization {
            h_sd: vec![Complex64::new(1.0, 0.0); 2],
            h_sr: Vec::new(),
            h_rd: vec![Complex64::new(0.5, 0.5)],
            ideal_sr: true,
        };
        let p = crossover_vector(&real, &code, snr);
        assert_relative_eq!(p.entries()[2], link_flip_prob(Complex64::new(0.5, 0.5), snr));
    }

    #[test]
    fn averaged_link_flip_prob_examples() {
        let snr = SnrPoint::new(1.0).unwrap();
        assert_relative_eq!(avg_link_flip_prob_exact(1.0, snr), 0.14644660940672627, max_relative = 1e-10);
        assert!(avg_link_flip_prob_exact(1e-9, snr) > 0.49);
        let p100 = avg_link_flip_prob_exact(100.0, snr);
        // (1/2)(1 - sqrt(100/101)) evaluated independently.
        assert_relative_eq!(p100, 0.0024814048950055, max_relative = 1e-10);
        // High-SNR form (4 gamma sigma^2)^{-1} lands within one percent here.
        assert_relative_eq!(p100, 0.0025, max_relative = 1e-2);
    }

    #[test]
    fn averaged_link_flip_prob_matches_fading_average() {
        // Monte Carlo cross-check at several gamma sigma^2 products.
        let mut rng = rng::stream(5, 0);
        for (i, gs) in [0.1, 1.0, 10.0, 100.0].into_iter().enumerate() {
            let snr = SnrPoint::new(gs).unwrap();
            let n = 1_000_000;
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..n {
                let u: f64 = rng.random();
                let gain = -(1.0 - u).ln();
                let p = flip_prob_from_gain(gain, snr);
                sum += p;
                sum_sq += p * p;
            }
            let mean = sum / n as f64;
            let std_err = ((sum_sq / n as f64 - mean * mean) / n as f64).sqrt();
            let exact = avg_link_flip_prob_exact(1.0, snr);
            assert!(
                (mean - exact).abs() <= 3.0 * std_err,
                "case {i}: mean {mean} vs exact {exact} (3se = {})",
                3.0 * std_err
            );
        }
    }

    #[test]
    fn high_snr_relay_average_examples() {
        let top = Topology::iid(2, 2, 1.0).unwrap();
        let snr = SnrPoint::new(100.0).unwrap();
        assert_relative_eq!(avg_relay_crossover_high_snr(&top, 0b11, 0, snr), 0.0075, max_relative = 1e-12);
        let ideal = top.clone().with_ideal_sr(true);
        assert_relative_eq!(avg_relay_crossover_high_snr(&ideal, 0b11, 0, snr), 0.0025, max_relative = 1e-12);
        assert_relative_eq!(avg_relay_crossover_high_snr(&top, 0, 1, snr), 0.0025, max_relative = 1e-12);
    }

    #[test]
    fn crossover_vector_monotone_in_snr() {
        let code = crate::gf2code::NetworkCode::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let top = Topology::iid(2, 2, 1.0).unwrap();
        let real = sample_realization(&top, &mut rng::stream(3, 1));
        let mut prev: Option<Vec<f64>> = None;
        for db in [0.0, 5.0, 10.0, 15.0, 20.0] {
            let p = crossover_vector(&real, &code, SnrPoint::from_db(db)).entries().to_vec();
            if let Some(prev) = &prev {
                for (a, b) in prev.iter().zip(&p) {
                    assert!(b <= a, "entries must not increase with snr");
                }
            }
            prev = Some(p);
        }
    }

    proptest! {
        // Closure: all composition stages stay within [0, 1/2] when the
        // inputs do.
        #[test]
        fn prop_crossover_closure(
            p in proptest::collection::vec(0f64..=0.5, 1..8),
            g in any::<u64>(),
            rd in 0f64..=0.5,
        ) {
            let branch = relay_nc_crossover(&p, g);
            prop_assert!((0.0..=0.5 + 1e-12).contains(&branch));
            let e2e = end_to_end_crossover(branch, rd);
            prop_assert!((0.0..=0.5 + 1e-12).contains(&e2e));
        }
    }
}
