//! Command-line front end: analyze one isotherm CSV into a JSON report, or
//! compare computed surface areas for a directory of isotherms against a
//! reference table.
//!
//! Exit codes: 0 on success with a chosen result, 2 when no window is
//! admissible (the report is still written), 1 on input or parse errors,
//! 64 on bad flags.

use betrs::io::{
    compare_fixture, parse_isotherm_csv, write_bet_plot_csv, write_candidates_csv,
    write_fixture_csv, write_report_json,
};
use betrs::model::{Config, Isotherm};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Molar volume of an ideal gas at standard temperature and pressure, in
/// cm^3 per mol.
const STP_MOLAR_VOLUME_CM3: f64 = 22413.96;

const EXIT_NO_CANDIDATE: u8 = 2;
const EXIT_INPUT_ERROR: u8 = 1;
const EXIT_BAD_FLAGS: u8 = 64;

#[derive(Parser)]
#[command(name = "betrs", version, about = "BET surface-area analysis of adsorption isotherms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one isotherm CSV and emit a JSON report.
    Analyze(AnalyzeArgs),
    /// Analyze every CSV in a directory and tabulate the computed areas
    /// against a reference table.
    Compare(CompareArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Isotherm CSV with pressure and uptake columns.
    input: PathBuf,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a per-point linearization table for plotting.
    #[arg(long)]
    plot_data: Option<PathBuf>,
    /// Also write the full candidate table.
    #[arg(long)]
    candidates: Option<PathBuf>,
    #[command(flatten)]
    thresholds: ThresholdArgs,
}

#[derive(Args)]
struct CompareArgs {
    /// Reference CSV with name and area columns.
    #[arg(long)]
    reference: PathBuf,
    /// Directory of isotherm CSVs; each file stem is the isotherm name.
    #[arg(long)]
    inputs: PathBuf,
    #[command(flatten)]
    thresholds: ThresholdArgs,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Minimum points per fitting window.
    #[arg(long, default_value_t = 10)]
    min_points: usize,
    /// Minimum R^2 of the linearized fit.
    #[arg(long, default_value_t = 0.995)]
    min_r2: f64,
    /// Monolayer disagreement tolerance in percent.
    #[arg(long, default_value_t = 20.0)]
    tolerance_pct: f64,
    /// Adsorbate cross-sectional area in nm^2.
    #[arg(long, default_value_t = 0.162)]
    cross_section: f64,
    /// Unit of the uptake column.
    #[arg(long, value_enum, default_value_t = UptakeUnit::MmolG)]
    uptake_unit: UptakeUnit,
}

#[derive(Clone, Copy, ValueEnum)]
enum UptakeUnit {
    /// Millimole per gram.
    MmolG,
    /// Mole per gram.
    MolG,
    /// Cubic centimeter at standard temperature and pressure per gram.
    Cm3stpG,
}

impl UptakeUnit {
    fn scale_to_mol_per_g(self) -> f64 {
        match self {
            UptakeUnit::MmolG => 1e-3,
            UptakeUnit::MolG => 1.0,
            UptakeUnit::Cm3stpG => 1.0 / STP_MOLAR_VOLUME_CM3,
        }
    }
}

impl ThresholdArgs {
    fn to_config(&self) -> Config {
        Config {
            min_points: self.min_points,
            min_r_squared: self.min_r2,
            monolayer_tolerance_pct: self.tolerance_pct,
            cross_section_nm2: self.cross_section,
            uptake_unit_scale: self.uptake_unit.scale_to_mol_per_g(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not flag errors.
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(EXIT_BAD_FLAGS);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::Analyze(args) => run_analyze(&args),
        Command::Compare(args) => run_compare(&args),
    }
}

fn load_isotherm(path: &Path) -> Result<Isotherm, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_isotherm_csv(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn validated_config(thresholds: &ThresholdArgs) -> Result<Config, ExitCode> {
    let cfg = thresholds.to_config();
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return Err(ExitCode::from(EXIT_BAD_FLAGS));
    }
    Ok(cfg)
}

fn run_analyze(args: &AnalyzeArgs) -> ExitCode {
    let cfg = match validated_config(&args.thresholds) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    let iso = match load_isotherm(&args.input) {
        Ok(iso) => iso,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };

    let report = betrs::analyze(&iso, &cfg);
    let json = write_report_json(&report);

    if let Some(out) = &args.out {
        if let Err(e) = std::fs::write(out, json.as_bytes()) {
            eprintln!("error: cannot write {}: {e}", out.display());
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    } else {
        println!("{json}");
    }

    if let Some(path) = &args.candidates {
        if let Err(e) = std::fs::write(path, write_candidates_csv(&report)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    }

    if let Some(path) = &args.plot_data {
        match &report.chosen {
            Some(chosen) => {
                if let Err(e) = std::fs::write(path, write_bet_plot_csv(&iso, chosen)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_INPUT_ERROR);
                }
            }
            None => eprintln!("note: no admissible window, plot table not written"),
        }
    }

    if report.chosen.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NO_CANDIDATE)
    }
}

fn run_compare(args: &CompareArgs) -> ExitCode {
    let cfg = match validated_config(&args.thresholds) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    let reference = match std::fs::read_to_string(&args.reference) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.reference.display());
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };

    let mut files: Vec<PathBuf> = match std::fs::read_dir(&args.inputs) {
        Ok(entries) => entries
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("csv")))
            .collect(),
        Err(e) => {
            eprintln!("error: cannot list {}: {e}", args.inputs.display());
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };
    files.sort();

    let mut computed: BTreeMap<String, f64> = BTreeMap::new();
    for path in &files {
        let name = match path.file_stem().and_then(|s| s.to_str()) {
            Some(name) => name.to_string(),
            None => {
                eprintln!("error: unusable file name {}", path.display());
                return ExitCode::from(EXIT_INPUT_ERROR);
            }
        };
        let iso = match load_isotherm(path) {
            Ok(iso) => iso,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_INPUT_ERROR);
            }
        };
        let report = betrs::analyze(&iso, &cfg);
        match report.surface_area_m2_per_g {
            Some(area) => {
                computed.insert(name, area);
            }
            None => eprintln!("note: {name}: no admissible window"),
        }
    }

    match compare_fixture(&reference, &computed) {
        Ok(rows) => {
            print!("{}", write_fixture_csv(&rows));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", args.reference.display());
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
