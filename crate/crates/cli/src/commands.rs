//! The five experiment commands, producing report structures.

use ncsim::analysis::{self, AbepMode};
use ncsim::channel::SnrPoint;
use ncsim::demod::DemodKind;
use ncsim::montecarlo::{self, McEstimate};

use crate::config::{DemodOpt, ExperimentConfig, SrMode};
use crate::report::*;
use crate::CliError;

pub fn sv_report(cfg: &ExperimentConfig) -> Result<SvReport, CliError> {
    let code = cfg.build_code()?;
    let (n_s, n_r) = (code.n_sources(), code.n_relays());
    let sv = code.separation_vector().to_vec();
    let dominant = (0..n_s)
        .map(|t| {
            let deltas = code.dominant_deltas(t);
            SvDominant {
                source: t + 1,
                distance: sv[t],
                info_deltas: deltas.iter().map(|&d| bits_string(d, n_s)).collect(),
                codewords: deltas
                    .iter()
                    .map(|&d| bits_string(code.codeword(d), code.block_len()))
                    .collect(),
            }
        })
        .collect();
    Ok(SvReport {
        n_sources: n_s,
        n_relays: n_r,
        rate: n_s as f64 / (n_s + n_r) as f64,
        sv,
        dominant,
    })
}

/// Closed-form diversity/coding-gain table. Covers both demodulators and
/// both source-to-relay settings unless the caller pinned one explicitly.
pub fn analyze_report(
    cfg: &ExperimentConfig,
    demod: Option<DemodOpt>,
    sr: Option<SrMode>,
) -> Result<AnalyzeReport, CliError> {
    let code = cfg.build_code()?;
    let base = cfg.build_topology()?;
    let (n_s, n_r) = (code.n_sources(), code.n_relays());
    let srs = sr.map(|s| vec![s]).unwrap_or_else(|| vec![SrMode::Realistic, SrMode::Ideal]);
    let demods = demod.map(|d| vec![d]).unwrap_or_else(|| vec![DemodOpt::Ml, DemodOpt::Mdd]);
    let mut entries = Vec::new();
    for &sr_mode in &srs {
        let top = base.clone().with_ideal_sr(sr_mode == SrMode::Ideal);
        for &dm in &demods {
            let kind = match dm {
                DemodOpt::Ml => DemodKind::Ml,
                DemodOpt::Mdd => DemodKind::Mdd,
            };
            for t in 0..n_s {
                let gains = analysis::asymptotic_gains(&code, &top, t, kind, cfg.dh2_prefactor())?;
                entries.push(AnalyzeEntry {
                    sr_mode: match sr_mode {
                        SrMode::Realistic => "realistic".into(),
                        SrMode::Ideal => "ideal".into(),
                    },
                    demod: match dm {
                        DemodOpt::Ml => "ml".into(),
                        DemodOpt::Mdd => "mdd".into(),
                    },
                    source: t + 1,
                    diversity: gains.diversity,
                    coefficient: gains.coefficient,
                    coding_gain: gains.coding_gain,
                });
            }
        }
    }
    Ok(AnalyzeReport {
        n_sources: n_s,
        n_relays: n_r,
        rate: n_s as f64 / (n_s + n_r) as f64,
        total_energy: (n_s + n_r) as f64,
        entries,
    })
}

fn run_grid(cfg: &ExperimentConfig) -> Result<Vec<McEstimate>, CliError> {
    let code = cfg.build_code()?;
    let top = cfg.build_topology()?;
    let mc = cfg.mc_config();
    let mut estimates = Vec::with_capacity(mc.snr_grid_db.len());
    for &db in &mc.snr_grid_db {
        let point = montecarlo::estimate_abep(
            &top,
            &code,
            &ncsim::montecarlo::McConfig { snr_grid_db: vec![db], ..mc.clone() },
        )?
        .pop()
        .expect("one point per grid entry");
        eprintln!(
            "snr {db} dB: {} trials, errors {:?}",
            point.trials,
            point.per_source.iter().map(|s| s.errors).collect::<Vec<_>>()
        );
        estimates.push(point);
    }
    Ok(estimates)
}

pub fn simulate_rows(cfg: &ExperimentConfig) -> Result<Vec<SimulateRow>, CliError> {
    let rows = run_grid(cfg)?
        .into_iter()
        .flat_map(|point| {
            point
                .per_source
                .iter()
                .enumerate()
                .map(|(t, s)| SimulateRow {
                    snr_db: point.snr_db,
                    source: t + 1,
                    trials: point.trials,
                    errors: s.errors,
                    abep_mc: s.abep,
                    ci_lo: s.ci_lo,
                    ci_hi: s.ci_hi,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(rows)
}

/// Joins the Monte Carlo estimate with the semi-analytic bound, the
/// all-pairs asymptotic bound and the dominant-pair power law (the analytic
/// columns always describe the reliability-weighted demodulator; a
/// minimum-distance run is compared against that reference).
pub fn compare_rows(cfg: &ExperimentConfig) -> Result<Vec<CompareRow>, CliError> {
    let code = cfg.build_code()?;
    let top = cfg.build_topology()?;
    let dh2 = cfg.dh2_prefactor();
    let estimates = run_grid(cfg)?;
    let mut rows = Vec::new();
    for (i, point) in estimates.iter().enumerate() {
        let snr = SnrPoint::from_db(point.snr_db);
        let slopes = (i > 0)
            .then(|| montecarlo::estimate_slope(&estimates[i - 1], point).ok())
            .flatten();
        for (t, s) in point.per_source.iter().enumerate() {
            let semi = analysis::abep_union_bound(
                snr,
                &code,
                &top,
                t,
                AbepMode::SemiAnalytic {
                    samples: cfg.analysis.semi_analytic_samples,
                    seed: cfg.mc.seed,
                },
                dh2,
            )?;
            let union = analysis::abep_union_bound(snr, &code, &top, t, AbepMode::Asymptotic, dh2)?;
            let gains = analysis::asymptotic_gains(&code, &top, t, DemodKind::Ml, dh2)?;
            let asym = gains.coefficient.expect("weighted analysis has a coefficient")
                * snr.gamma().powi(-(gains.diversity as i32));
            rows.push(CompareRow {
                snr_db: point.snr_db,
                source: t + 1,
                trials: point.trials,
                errors: s.errors,
                abep_mc: s.abep,
                ci_lo: s.ci_lo,
                ci_hi: s.ci_hi,
                abep_semi: semi,
                abep_union: union,
                abep_asym: asym,
                ratio_mc_semi: if semi > 0.0 { s.abep / semi } else { f64::NAN },
                ratio_mc_asym: if asym > 0.0 { s.abep / asym } else { f64::NAN },
                slope_mc: slopes.as_ref().map(|v| v[t]),
            });
        }
    }
    Ok(rows)
}

pub fn design_report(cfg: &ExperimentConfig, top_k: usize) -> Result<DesignReport, CliError> {
    let top = cfg.build_topology()?;
    let (n_s, n_r) = (cfg.network.n_sources, cfg.network.n_relays);
    let found = analysis::code_search(n_s, n_r, &top, top_k)?;
    let entries = found
        .into_iter()
        .enumerate()
        .map(|(i, c)| DesignEntry {
            rank: i + 1,
            encoding: c.encoding.rows().iter().map(|&m| bits_string(m, n_s)).collect(),
            sv: c.sv,
            gain_gap: c.gain_gap,
            coeff_realistic: c.coeff_realistic,
            coeff_ideal: c.coeff_ideal,
        })
        .collect();
    Ok(DesignReport { n_sources: n_s, n_relays: n_r, entries })
}
