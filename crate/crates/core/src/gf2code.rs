//! Binary network-code algebra over GF(2).
//!
//! A network of `N_S` sources and `N_R` relays defines a systematic linear
//! block code of length `N_S + N_R`: the first `N_S` codeword bits are the
//! information bits themselves, and relay `q` contributes one parity bit,
//! the XOR of the source bits selected by its encoding vector `g_q`.
//!
//! Bit vectors are packed into `u64` words, LSB first: bit `m` of a codeword
//! holds position `m + 1` in the 1-based ordering used throughout (sources
//! first, relays after). The semantic contract is positional bits; packing is
//! an implementation detail.

use crate::{Error, Result};

/// Codebooks are materialised with all `2^{N_S}` codewords; exhaustive joint
/// demodulation dominates cost long before this limit is reached.
pub const MAX_SOURCES: usize = 20;

/// Codewords are packed into a single 64-bit word.
pub const MAX_BLOCK_LEN: usize = 64;

/// The `N_R x N_S` binary matrix of relay encoding vectors. Row `q` selects
/// which source bits relay `q` XORs together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingMatrix {
    rows: Vec<u64>,
    n_sources: usize,
}

impl EncodingMatrix {
    /// Builds the matrix from explicit 0/1 rows. An empty row list describes
    /// the degenerate relay-less network.
    pub fn new(n_sources: usize, rows: &[Vec<u8>]) -> Result<Self> {
        if n_sources == 0 {
            return Err(Error::InvalidParameter("need at least one source".into()));
        }
        let mut masks = Vec::with_capacity(rows.len());
        for (q, row) in rows.iter().enumerate() {
            if row.len() != n_sources {
                return Err(Error::Dimension(format!(
                    "encoding row {} has {} entries, expected {}",
                    q + 1,
                    row.len(),
                    n_sources
                )));
            }
            let mut mask = 0u64;
            for (t, &bit) in row.iter().enumerate() {
                match bit {
                    0 => {}
                    1 => mask |= 1 << t,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "encoding entry ({}, {}) is {}, expected 0 or 1",
                            q + 1,
                            t + 1,
                            other
                        )))
                    }
                }
            }
            masks.push(mask);
        }
        Self::from_masks(n_sources, masks)
    }

    /// Builds the matrix from packed rows (bit `t` of `masks[q]` selects
    /// source `t + 1` at relay `q + 1`).
    pub fn from_masks(n_sources: usize, masks: Vec<u64>) -> Result<Self> {
        if n_sources == 0 {
            return Err(Error::InvalidParameter("need at least one source".into()));
        }
        if n_sources > MAX_SOURCES {
            return Err(Error::Guard(format!(
                "{} sources exceeds the limit of {}",
                n_sources, MAX_SOURCES
            )));
        }
        if n_sources + masks.len() > MAX_BLOCK_LEN {
            return Err(Error::Guard(format!(
                "block length {} exceeds the packed-word limit of {}",
                n_sources + masks.len(),
                MAX_BLOCK_LEN
            )));
        }
        let valid = if n_sources == 64 { u64::MAX } else { (1u64 << n_sources) - 1 };
        if masks.iter().any(|m| m & !valid != 0) {
            return Err(Error::Dimension("encoding row wider than source count".into()));
        }
        Ok(Self { rows: masks, n_sources })
    }

    pub fn n_sources(&self) -> usize {
        self.n_sources
    }

    pub fn n_relays(&self) -> usize {
        self.rows.len()
    }

    /// Encoding vector of relay `q` (0-based), as a packed source mask.
    pub fn row(&self, q: usize) -> u64 {
        self.rows[q]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|&mask| (0..self.n_sources).map(|t| (mask >> t & 1) as u8).collect())
            .collect()
    }
}

/// The `(N_S + N_R) x N_S` generator of the whole distributed code: identity
/// on top, encoding matrix below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: Vec<u64>,
    n_sources: usize,
}

/// Stacks the systematic identity block on top of the encoding matrix.
pub fn build_generator(enc: &EncodingMatrix) -> GeneratorMatrix {
    let mut rows = Vec::with_capacity(enc.n_sources() + enc.n_relays());
    for t in 0..enc.n_sources() {
        rows.push(1u64 << t);
    }
    rows.extend_from_slice(enc.rows());
    GeneratorMatrix { rows, n_sources: enc.n_sources() }
}

impl GeneratorMatrix {
    pub fn n_sources(&self) -> usize {
        self.n_sources
    }

    pub fn block_len(&self) -> usize {
        self.rows.len()
    }

    /// Row `m` as a packed source mask.
    pub fn row(&self, m: usize) -> u64 {
        self.rows[m]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// GF(2) product `c = G (*) b` for packed information bits `b`.
    pub fn encode(&self, b: u64) -> u64 {
        let mut c = 0u64;
        for (m, &row) in self.rows.iter().enumerate() {
            c |= (((row & b).count_ones() & 1) as u64) << m;
        }
        c
    }

    /// Positional-bit variant with a length check.
    pub fn encode_bits(&self, bits: &[u8]) -> Result<Vec<u8>> {
        if bits.len() != self.n_sources {
            return Err(Error::Dimension(format!(
                "information word has {} bits, expected {}",
                bits.len(),
                self.n_sources
            )));
        }
        let b = bits_to_mask(bits)?;
        Ok(mask_to_bits(self.encode(b), self.block_len()))
    }
}

/// A binary network code together with its cached codebook and separation
/// vector. Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct NetworkCode {
    enc: EncodingMatrix,
    gen: GeneratorMatrix,
    codebook: Vec<u64>,
    sv: Vec<u32>,
}

impl NetworkCode {
    pub fn new(enc: EncodingMatrix) -> Result<Self> {
        let gen = build_generator(&enc);
        let n_s = enc.n_sources();
        let codebook: Vec<u64> = (0..1u64 << n_s).map(|b| gen.encode(b)).collect();
        let sv = separation_from_codebook(&codebook, n_s);
        Ok(Self { enc, gen, codebook, sv })
    }

    /// Convenience constructor from 0/1 rows.
    pub fn from_rows(n_sources: usize, rows: &[Vec<u8>]) -> Result<Self> {
        Self::new(EncodingMatrix::new(n_sources, rows)?)
    }

    pub fn n_sources(&self) -> usize {
        self.enc.n_sources()
    }

    pub fn n_relays(&self) -> usize {
        self.enc.n_relays()
    }

    pub fn block_len(&self) -> usize {
        self.gen.block_len()
    }

    pub fn encoding(&self) -> &EncodingMatrix {
        &self.enc
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.gen
    }

    pub fn encode(&self, b: u64) -> u64 {
        self.gen.encode(b)
    }

    /// Cached codeword for the packed information word `b`.
    pub fn codeword(&self, b: u64) -> u64 {
        self.codebook[b as usize]
    }

    /// All `2^{N_S}` codewords, indexed by information word.
    pub fn codebook(&self) -> &[u64] {
        &self.codebook
    }

    /// Per-source minimum Hamming distance over codeword pairs that differ in
    /// that source's information bit.
    pub fn separation_vector(&self) -> &[u32] {
        &self.sv
    }

    /// Information-bit difference patterns whose codewords realise `sv[t]`.
    /// These are the pairs that dominate the high-SNR error rate of source `t`.
    pub fn dominant_deltas(&self, t: usize) -> Vec<u64> {
        (1..self.codebook.len() as u64)
            .filter(|&db| db >> t & 1 == 1 && self.codebook[db as usize].count_ones() == self.sv[t])
            .collect()
    }
}

/// By linearity, `sv[t]` equals the minimum codeword weight over nonzero
/// information differences with bit `t` set.
fn separation_from_codebook(codebook: &[u64], n_sources: usize) -> Vec<u32> {
    (0..n_sources)
        .map(|t| {
            (1..codebook.len() as u64)
                .filter(|&db| db >> t & 1 == 1)
                .map(|db| codebook[db as usize].count_ones())
                .min()
                .expect("nonzero information word exists")
        })
        .collect()
}

pub fn hamming_distance(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

pub fn weight(mask: u64) -> u32 {
    mask.count_ones()
}

/// The GF(2) difference pattern of two codewords.
pub fn delta(a: u64, b: u64) -> u64 {
    a ^ b
}

/// Positions (0-based) where `a` and `b` differ.
pub fn diff_positions(a: u64, b: u64) -> Vec<usize> {
    bit_positions(a ^ b)
}

pub fn bit_positions(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

pub fn bits_to_mask(bits: &[u8]) -> Result<u64> {
    if bits.len() > MAX_BLOCK_LEN {
        return Err(Error::Guard(format!("{} bits exceed the packed-word limit", bits.len())));
    }
    let mut mask = 0u64;
    for (i, &bit) in bits.iter().enumerate() {
        match bit {
            0 => {}
            1 => mask |= 1 << i,
            other => {
                return Err(Error::InvalidParameter(format!("bit {} is {}, expected 0 or 1", i, other)))
            }
        }
    }
    Ok(mask)
}

pub fn mask_to_bits(mask: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| (mask >> i & 1) as u8).collect()
}

/// Hamming distance between positional bit slices of equal length.
pub fn hamming_distance_bits(a: &[u8], b: &[u8]) -> Result<u32> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!("lengths {} and {} differ", a.len(), b.len())));
    }
    Ok(hamming_distance(bits_to_mask(a)?, bits_to_mask(b)?))
}
