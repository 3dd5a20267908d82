//! Link-level simulator and analytical toolkit for multi-source multi-relay
//! cooperative networks with binary network coding at the relays.
//!
//! The network of `N_S` sources and `N_R` demodulate-and-forward relays is
//! treated as a distributed systematic linear block code of length
//! `N_S + N_R`: each relay transmits the XOR of a subset of the (possibly
//! wrongly demodulated) source bits, and the destination jointly demodulates
//! all hard decisions with per-bit reliability weights.
//!
//! The crate provides two independent routes to the per-source average bit
//! error probability (ABEP) and cross-checks them:
//!
//! * [`montecarlo`] — a deterministic, parallel trial engine that simulates
//!   the full two-phase protocol, either at waveform level (BPSK + AWGN +
//!   Rayleigh fading) or as the equivalent cascade of binary symmetric
//!   channels;
//! * [`analysis`] — closed-form pairwise error probabilities, union-bound
//!   ABEP, asymptotic diversity order / coding gain, and an exhaustive
//!   network-code search.

pub mod analysis;
pub mod channel;
pub mod demod;
pub mod gf2code;
pub mod montecarlo;
pub mod rng;

mod error;

pub use error::{Error, Result};
