//! `ncsim` — simulation and closed-form analysis of network-coded
//! cooperative relay networks.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ncsim_cli::config::{self, DemodOpt, ExperimentConfig, FormatOpt, McMode, SrMode};
use ncsim_cli::{commands, presets, report, CliError};

#[derive(Parser)]
#[command(
    name = "ncsim",
    version,
    about = "Link-level simulation and closed-form ABEP analysis of multi-source multi-relay networks with binary network coding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Separation vector and dominant codeword pairs of the network code
    Sv(CommonArgs),
    /// Closed-form per-source diversity order and coding gain
    Analyze(CommonArgs),
    /// Monte Carlo ABEP estimation over the configured SNR grid (CSV)
    Simulate(CommonArgs),
    /// Monte Carlo vs semi-analytic vs asymptotic ABEP, one row per point and source (CSV)
    Compare(CommonArgs),
    /// Exhaustive search over relay encoding matrices
    Design(DesignArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Experiment config file (TOML; `.json` files parse as JSON)
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Named preset, e.g. `fig1` or `table1 2s2r nc3 ideal`
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Override the Monte Carlo seed
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Report format (sv/analyze/design default to plain text)
    #[arg(long, value_enum)]
    format: Option<FormatOpt>,
    /// Override the demodulator
    #[arg(long, value_enum)]
    demod: Option<DemodOpt>,
    /// Override the source-to-relay link quality
    #[arg(long, value_enum)]
    sr: Option<SrMode>,
    /// Override the trial mode
    #[arg(long, value_enum)]
    mode: Option<McMode>,
}

#[derive(Args)]
struct DesignArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// How many ranked codes to report
    #[arg(long, default_value_t = 10)]
    top_k: usize,
}

impl CommonArgs {
    fn load(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = match (&self.config, &self.preset) {
            (Some(path), None) => ExperimentConfig::load(path)?,
            (None, Some(name)) => presets::resolve(name)?,
            (None, None) => {
                return Err(CliError::Config("pass either --config or --preset".into()))
            }
            (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
        };
        if let Some(seed) = self.seed {
            cfg.mc.seed = seed;
        }
        if let Some(demod) = self.demod {
            cfg.mc.demod = demod;
        }
        if let Some(mode) = self.mode {
            cfg.mc.mode = mode;
        }
        if let Some(sr) = self.sr {
            cfg.topology.sr_mode = sr;
        }
        if let Some(out) = &self.out {
            cfg.output.get_or_insert_with(|| config::OutputBlock { path: None, format: None }).path =
                Some(out.clone());
        }
        if let Some(format) = self.format {
            cfg.output
                .get_or_insert_with(|| config::OutputBlock { path: None, format: None })
                .format = Some(format);
        }
        Ok(cfg)
    }
}

fn sink(cfg: &ExperimentConfig) -> Result<Box<dyn Write>, CliError> {
    match cfg.output.as_ref().and_then(|o| o.path.as_ref()) {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(Box::new(std::io::BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn format_of(cfg: &ExperimentConfig) -> Option<FormatOpt> {
    cfg.output.as_ref().and_then(|o| o.format)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sv(args) => {
            let cfg = args.load()?;
            let report = commands::sv_report(&cfg)?;
            let mut out = sink(&cfg)?;
            match format_of(&cfg) {
                Some(FormatOpt::Json) => report::write_json(out, &report)?,
                Some(FormatOpt::Csv) | None => out
                    .write_all(report::render_sv_text(&report).as_bytes())
                    .map_err(|e| CliError::Io(e.to_string()))?,
            }
        }
        Command::Analyze(args) => {
            let cfg = args.load()?;
            let report = commands::analyze_report(&cfg, args.demod, args.sr)?;
            let mut out = sink(&cfg)?;
            match format_of(&cfg) {
                Some(FormatOpt::Json) => report::write_json(out, &report)?,
                Some(FormatOpt::Csv) => report::write_analyze_csv(out, &report)?,
                None => out
                    .write_all(report::render_analyze_text(&report).as_bytes())
                    .map_err(|e| CliError::Io(e.to_string()))?,
            }
        }
        Command::Simulate(args) => {
            let cfg = args.load()?;
            let rows = commands::simulate_rows(&cfg)?;
            let out = sink(&cfg)?;
            match format_of(&cfg) {
                Some(FormatOpt::Json) => report::write_json(out, &rows)?,
                _ => report::write_simulate_csv(out, &rows)?,
            }
        }
        Command::Compare(args) => {
            let cfg = args.load()?;
            let rows = commands::compare_rows(&cfg)?;
            let out = sink(&cfg)?;
            match format_of(&cfg) {
                Some(FormatOpt::Json) => report::write_json(out, &rows)?,
                _ => report::write_compare_csv(out, &rows)?,
            }
        }
        Command::Design(args) => {
            let cfg = args.common.load()?;
            let report = commands::design_report(&cfg, args.top_k)?;
            let mut out = sink(&cfg)?;
            match format_of(&cfg) {
                Some(FormatOpt::Json) => report::write_json(out, &report)?,
                Some(FormatOpt::Csv) => report::write_design_csv(out, &report)?,
                None => out
                    .write_all(report::render_design_text(&report).as_bytes())
                    .map_err(|e| CliError::Io(e.to_string()))?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
