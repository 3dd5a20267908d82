//! Report structures and their text / CSV / JSON renderings.
//!
//! CSV files are RFC-4180 with `.` decimals and a fixed column order;
//! probabilities are printed as `%.6e` so reruns are byte-identical.

use std::io::Write;

use serde::Serialize;

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct SvReport {
    pub n_sources: usize,
    pub n_relays: usize,
    pub rate: f64,
    pub sv: Vec<u32>,
    pub dominant: Vec<SvDominant>,
}

/// The codeword pairs that set one source's minimum distance, reported as
/// information-bit differences and their codewords.
#[derive(Debug, Serialize)]
pub struct SvDominant {
    pub source: usize,
    pub distance: u32,
    pub info_deltas: Vec<String>,
    pub codewords: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub n_sources: usize,
    pub n_relays: usize,
    pub rate: f64,
    /// Total transmit energy of one protocol round, in units of the
    /// per-symbol energy (one slot per node).
    pub total_energy: f64,
    pub entries: Vec<AnalyzeEntry>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeEntry {
    pub sr_mode: String,
    pub demod: String,
    pub source: usize,
    pub diversity: u32,
    pub coefficient: Option<f64>,
    pub coding_gain: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct SimulateRow {
    pub snr_db: f64,
    pub source: usize,
    pub trials: u64,
    pub errors: u64,
    pub abep_mc: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

#[derive(Debug, Serialize)]
pub struct CompareRow {
    pub snr_db: f64,
    pub source: usize,
    pub trials: u64,
    pub errors: u64,
    pub abep_mc: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub abep_semi: f64,
    pub abep_union: f64,
    pub abep_asym: f64,
    pub ratio_mc_semi: f64,
    pub ratio_mc_asym: f64,
    pub slope_mc: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct DesignReport {
    pub n_sources: usize,
    pub n_relays: usize,
    pub entries: Vec<DesignEntry>,
}

#[derive(Debug, Serialize)]
pub struct DesignEntry {
    pub rank: usize,
    /// One string of 0/1 per relay row.
    pub encoding: Vec<String>,
    pub sv: Vec<u32>,
    pub gain_gap: f64,
    pub coeff_realistic: Vec<f64>,
    pub coeff_ideal: Vec<f64>,
}

pub fn bits_string(mask: u64, len: usize) -> String {
    (0..len).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn prob(x: f64) -> String {
    format!("{x:.6e}")
}

pub fn write_json<W: Write, T: Serialize>(mut w: W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(|e| CliError::Io(format!("write json: {e}")))?;
    writeln!(w).map_err(|e| CliError::Io(format!("write json: {e}")))?;
    Ok(())
}

pub fn write_simulate_csv<W: Write>(w: W, rows: &[SimulateRow]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| CliError::Io(format!("write csv: {e}"));
    out.write_record(["snr_db", "source", "trials", "errors", "abep_mc", "ci_lo", "ci_hi"])
        .map_err(io)?;
    for r in rows {
        out.write_record([
            r.snr_db.to_string(),
            r.source.to_string(),
            r.trials.to_string(),
            r.errors.to_string(),
            prob(r.abep_mc),
            prob(r.ci_lo),
            prob(r.ci_hi),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| CliError::Io(format!("write csv: {e}")))
}

pub fn write_compare_csv<W: Write>(w: W, rows: &[CompareRow]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| CliError::Io(format!("write csv: {e}"));
    out.write_record([
        "snr_db",
        "source",
        "trials",
        "errors",
        "abep_mc",
        "ci_lo",
        "ci_hi",
        "abep_semi",
        "abep_union",
        "abep_asym",
        "ratio_mc_semi",
        "ratio_mc_asym",
        "slope_mc",
    ])
    .map_err(io)?;
    for r in rows {
        out.write_record([
            r.snr_db.to_string(),
            r.source.to_string(),
            r.trials.to_string(),
            r.errors.to_string(),
            prob(r.abep_mc),
            prob(r.ci_lo),
            prob(r.ci_hi),
            prob(r.abep_semi),
            prob(r.abep_union),
            prob(r.abep_asym),
            format!("{:.4}", r.ratio_mc_semi),
            format!("{:.4}", r.ratio_mc_asym),
            r.slope_mc.map(|s| format!("{s:.3}")).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| CliError::Io(format!("write csv: {e}")))
}

pub fn write_analyze_csv<W: Write>(w: W, report: &AnalyzeReport) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| CliError::Io(format!("write csv: {e}"));
    out.write_record(["sr_mode", "demod", "source", "diversity", "coefficient", "coding_gain"])
        .map_err(io)?;
    for e in &report.entries {
        out.write_record([
            e.sr_mode.clone(),
            e.demod.clone(),
            e.source.to_string(),
            e.diversity.to_string(),
            e.coefficient.map(prob).unwrap_or_default(),
            e.coding_gain.map(prob).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| CliError::Io(format!("write csv: {e}")))
}

pub fn write_design_csv<W: Write>(w: W, report: &DesignReport) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| CliError::Io(format!("write csv: {e}"));
    out.write_record(["rank", "encoding", "sv", "gain_gap", "coeff_realistic", "coeff_ideal"])
        .map_err(io)?;
    for e in &report.entries {
        out.write_record([
            e.rank.to_string(),
            e.encoding.join(";"),
            e.sv.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
            format!("{:.6}", e.gain_gap),
            e.coeff_realistic.iter().map(|&c| prob(c)).collect::<Vec<_>>().join(";"),
            e.coeff_ideal.iter().map(|&c| prob(c)).collect::<Vec<_>>().join(";"),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| CliError::Io(format!("write csv: {e}")))
}

pub fn render_sv_text(report: &SvReport) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "network: {} sources, {} relays (rate {}/{})\n",
        report.n_sources,
        report.n_relays,
        report.n_sources,
        report.n_sources + report.n_relays
    ));
    s.push_str(&format!("separation vector: {:?}\n", report.sv));
    for d in &report.dominant {
        s.push_str(&format!(
            "  S{}: sv {} via information differences {} (codewords {})\n",
            d.source,
            d.distance,
            d.info_deltas.join(", "),
            d.codewords.join(", ")
        ));
    }
    s
}

pub fn render_analyze_text(report: &AnalyzeReport) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "network: {} sources, {} relays (rate {}/{}, round energy {} E_m)\n",
        report.n_sources,
        report.n_relays,
        report.n_sources,
        report.n_sources + report.n_relays,
        report.total_energy
    ));
    s.push_str("sr_mode    demod  source  diversity  abep ~ K * snr^-d          coding_gain\n");
    for e in &report.entries {
        let law = match e.coefficient {
            Some(k) => format!("{:<12.4} * snr^-{}", k, e.diversity),
            None => format!("slope -{} (coefficient n/a)", e.diversity),
        };
        let gain = e.coding_gain.map(|g| format!("{g:.4}")).unwrap_or_else(|| "-".into());
        s.push_str(&format!(
            "{:<10} {:<6} S{:<6} {:<10} {:<27} {}\n",
            e.sr_mode, e.demod, e.source, e.diversity, law, gain
        ));
    }
    s
}

pub fn render_design_text(report: &DesignReport) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "code search over {} sources x {} relays\n",
        report.n_sources, report.n_relays
    ));
    s.push_str("rank  encoding        sv        gain_gap  K_realistic / K_ideal\n");
    for e in &report.entries {
        let ks: Vec<String> = e
            .coeff_realistic
            .iter()
            .zip(&e.coeff_ideal)
            .map(|(r, i)| format!("{r:.4}/{i:.4}"))
            .collect();
        s.push_str(&format!(
            "{:<5} {:<15} {:<9} {:<9.4} {}\n",
            e.rank,
            e.encoding.join("|"),
            format!("{:?}", e.sv),
            e.gain_gap,
            ks.join("  ")
        ));
    }
    s
}
