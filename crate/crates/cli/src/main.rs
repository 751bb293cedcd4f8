//! `djc` — command-line front end for the planar Dirac oscillator in its
//! Jaynes-Cummings form: closed-form spectra and traces, propagator-oracle
//! trajectories, trapped-ion parameter translation and the verification
//! suite.
//!
//! Exit codes: 0 success, 1 validation error, 2 numerical-verification
//! failure, 3 I/O failure.

mod emit;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;

use djc_core::dirac2d::{
    build_hamiltonian_cartesian, build_hamiltonian_jc, collapse_revival_trace,
    poisson_series_cutoff, spectrum, zitterbewegung_trace, ObservableTrace, PhysParams,
};
use djc_core::fockspace::{
    angular_momentum_lz, chiral_number_operator, chiral_number_state, spin_z, Chirality, FockSpace,
    OperatorMatrix,
};
use djc_core::iontrap::{
    dirac_from_trap, format_param_file, parse_param_file, pulse_table, shelving_probability,
    trap_from_dirac, IonTrapParams,
};
use djc_core::propagator::{diagonalize, observable_trace};
use djc_core::spin::Spin;
use djc_core::verify::{max_residual, run_verification};

use emit::{Cell, Table};

#[derive(Debug)]
enum CliError {
    Validation(String),
    Verification(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Verification(_) => "verification",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Verification(m) | CliError::Io(m) => m,
        }
    }
}

impl From<djc_core::Error> for CliError {
    fn from(err: djc_core::Error) -> Self {
        CliError::Validation(err.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EvolveForm {
    Jc,
    Cartesian,
}

#[derive(Parser, Debug)]
#[command(
    name = "djc",
    version,
    about = "Planar Dirac oscillator / Jaynes-Cummings simulator",
    long_about = "Closed-form spectra, Zitterbewegung and collapse/revival dynamics of the \
planar Dirac oscillator, an independent numerical propagation oracle, and translation to \
trapped-ion laser parameters. Natural units m = c = ħ = 1 unless stated otherwise."
)]
struct Cli {
    /// Output format for tabular data (map-trap always emits `key = value`)
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form doublet spectrum: (n_l, E_plus, E_minus, alpha, beta)
    Spectrum {
        /// Dimensionless coupling ξ = ħω/mc²
        #[arg(long, allow_negative_numbers = true)]
        xi: f64,
        /// Largest doublet quantum number to list
        #[arg(long, default_value_t = 6)]
        n_l_max: usize,
    },
    /// Zitterbewegung trace of one doublet: (t, lz, sz, jz, P_e)
    Zitter {
        #[arg(long, allow_negative_numbers = true)]
        xi: f64,
        /// Doublet quantum number (initial state |n_l−1⟩|↓⟩)
        #[arg(long, default_value_t = 1)]
        n_l: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t_start: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_end: f64,
        /// Number of grid points (endpoints inclusive)
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Collapse/revival series from a circular coherent state: (t, lz, sz)
    Revival {
        #[arg(long, allow_negative_numbers = true)]
        xi: f64,
        /// Coherent amplitude, real part
        #[arg(long, allow_negative_numbers = true)]
        z_re: f64,
        /// Coherent amplitude, imaginary part
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z_im: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t_start: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_end: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Series length; defaults to the smallest cutoff whose Poisson
        /// tail drops below 1e-12
        #[arg(long)]
        n_terms: Option<usize>,
    },
    /// Propagator-oracle trajectory for cross-checking: (t, lz, sz, jz, P_e)
    Evolve {
        #[arg(long, allow_negative_numbers = true)]
        xi: f64,
        #[arg(long, default_value_t = 1)]
        n_l: usize,
        /// Hamiltonian build to evolve under
        #[arg(long, value_enum, default_value_t = EvolveForm::Jc)]
        form: EvolveForm,
        /// Fock cutoff (per mode; the cartesian form costs O(n_max⁶))
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t_start: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_end: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Translate trap settings to oscillator parameters, or solve for trap
    /// settings from (ξ, ω₁, η); emits the flat `key = value` format
    MapTrap {
        /// Trap-parameter file (`key = value`, SI units)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Lamb-Dicke parameter η
        #[arg(long)]
        eta: Option<f64>,
        /// Sideband coupling Ω̃ (angular s⁻¹)
        #[arg(long)]
        omega_rabi: Option<f64>,
        /// JC detuning δ (angular s⁻¹)
        #[arg(long)]
        delta: Option<f64>,
        /// Motional ground-state width (normalized)
        #[arg(long)]
        delta_width: Option<f64>,
        /// Target coupling ξ (switches to the inverse mapping)
        #[arg(long)]
        xi: Option<f64>,
        /// Target Zitterbewegung frequency ω₁ (angular s⁻¹, inverse mapping)
        #[arg(long)]
        omega1: Option<f64>,
    },
    /// The four red/blue sideband pulse pairs that assemble the oscillator
    Pulses {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        omega_rabi: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Run the analytic-vs-oracle equivalence suite and report residuals
    Verify {
        /// Fock cutoff for the single-mode checks (two-mode checks are
        /// capped at 10; the interior identities are cutoff-independent)
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Seed for the randomized checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}: {}", err.kind(), err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Spectrum { xi, n_l_max } => {
            let params = natural(xi)?;
            let mut table = Table::new(vec!["n_l", "E_plus", "E_minus", "alpha", "beta"]);
            for n_l in 1..=n_l_max {
                let d = spectrum(params, n_l)?;
                table.push_row(vec![
                    Cell::Int(n_l as i64),
                    Cell::Num(d.energy_plus()),
                    Cell::Num(d.energy_minus()),
                    Cell::Num(d.alpha()),
                    Cell::Num(d.beta()),
                ]);
            }
            write_table(&table, cli.format, &cli.output)
        }
        Command::Zitter {
            xi,
            n_l,
            t_start,
            t_end,
            points,
        } => {
            let params = natural(xi)?;
            let times = time_grid(t_start, t_end, points)?;
            let trace = zitterbewegung_trace(params, n_l, &times)?;
            let table = trace_with_population(&trace)?;
            write_table(&table, cli.format, &cli.output)
        }
        Command::Revival {
            xi,
            z_re,
            z_im,
            t_start,
            t_end,
            points,
            n_terms,
        } => {
            let params = natural(xi)?;
            let z = C64::new(z_re, z_im);
            let times = time_grid(t_start, t_end, points)?;
            let n_terms = match n_terms {
                Some(n) => n,
                None => poisson_series_cutoff(z)?,
            };
            let trace = collapse_revival_trace(params, z, &times, n_terms)?;
            let mut table = Table::new(vec!["t", "lz", "sz"]);
            for k in 0..trace.len() {
                table.push_row(vec![
                    Cell::Num(trace.times()[k]),
                    Cell::Num(trace.lz()[k]),
                    Cell::Num(trace.sz()[k]),
                ]);
            }
            write_table(&table, cli.format, &cli.output)
        }
        Command::Evolve {
            xi,
            n_l,
            form,
            n_max,
            t_start,
            t_end,
            points,
        } => {
            let params = natural(xi)?;
            let times = time_grid(t_start, t_end, points)?;
            let trace = oracle_trace(params, n_l, form, n_max, &times)?;
            let table = trace_with_population(&trace)?;
            write_table(&table, cli.format, &cli.output)
        }
        Command::MapTrap {
            input,
            eta,
            omega_rabi,
            delta,
            delta_width,
            xi,
            omega1,
        } => {
            if xi.is_some() || omega1.is_some() {
                let (Some(xi), Some(omega1), Some(eta)) = (xi, omega1, eta) else {
                    return Err(CliError::Validation(
                        "the inverse mapping needs --xi, --omega1 and --eta".into(),
                    ));
                };
                let design = trap_from_dirac(xi, omega1, eta)?;
                for warning in &design.warnings {
                    eprintln!("warning: {warning}");
                }
                write_text(&format_param_file(&design.params), &cli.output)
            } else {
                let trap = load_trap(input, eta, omega_rabi, delta, delta_width)?;
                let params = dirac_from_trap(&trap)?;
                let mut out = String::new();
                out.push_str("# oscillator parameters in trap-natural units (hbar = 1)\n");
                out.push_str(&format!("m = {}\n", params.m()));
                out.push_str(&format!("c = {}\n", params.c()));
                out.push_str(&format!("omega = {}\n", params.omega()));
                out.push_str(&format!("hbar = {}\n", params.hbar()));
                out.push_str(&format!("xi = {}\n", params.xi()));
                out.push_str(&format!("mc2 = {}\n", params.mc2()));
                out.push_str(&format!("delta_width = {}\n", params.delta_width()));
                out.push_str(&format!("omega1_hz = {}\n", params.zitter_frequency(1)));
                write_text(&out, &cli.output)
            }
        }
        Command::Pulses {
            input,
            eta,
            omega_rabi,
            delta,
        } => {
            let trap = load_trap(input, eta, omega_rabi, delta, None)?;
            let mut table = Table::new(vec![
                "axis",
                "detuning_hz",
                "phase_red",
                "phase_blue",
                "produced_terms",
            ]);
            for row in pulse_table(&trap) {
                let terms = row
                    .produced_terms
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(" + ");
                table.push_row(vec![
                    Cell::Text(row.axis.to_string()),
                    Cell::Num(row.detuning),
                    Cell::Num(row.phase_red),
                    Cell::Num(row.phase_blue),
                    Cell::Text(terms),
                ]);
            }
            write_table(&table, cli.format, &cli.output)
        }
        Command::Verify { n_max, seed } => {
            if n_max < 2 {
                return Err(CliError::Validation(format!(
                    "n_max must be at least 2, got {n_max}"
                )));
            }
            let outcomes = run_verification(n_max, seed)?;
            let mut table = Table::new(vec!["check", "residual", "tolerance", "status"]);
            let mut all_passed = true;
            for outcome in &outcomes {
                all_passed &= outcome.passed();
                table.push_row(vec![
                    Cell::Text(outcome.name.into()),
                    Cell::Num(outcome.residual),
                    Cell::Num(outcome.tolerance),
                    Cell::Text(if outcome.passed() { "PASS" } else { "FAIL" }.into()),
                ]);
            }
            write_table(&table, cli.format, &cli.output)?;
            let summary = format!(
                "verify: max residual {:.3e} across {} checks",
                max_residual(&outcomes),
                outcomes.len()
            );
            eprintln!("{summary}");
            if all_passed {
                Ok(())
            } else {
                Err(CliError::Verification(summary))
            }
        }
    }
}

fn natural(xi: f64) -> CliResult<PhysParams> {
    PhysParams::natural(xi).map_err(Into::into)
}

fn time_grid(t_start: f64, t_end: f64, points: usize) -> CliResult<Vec<f64>> {
    if points < 1 {
        return Err(CliError::Validation("need at least one grid point".into()));
    }
    if !t_end.is_finite() || !t_start.is_finite() || t_end < t_start {
        return Err(CliError::Validation(format!(
            "t_end = {t_end} must not precede t_start = {t_start}"
        )));
    }
    if points == 1 {
        return Ok(vec![t_start]);
    }
    Ok((0..points)
        .map(|k| t_start + (t_end - t_start) * k as f64 / (points - 1) as f64)
        .collect())
}

/// (t, lz, sz, jz, P_e) rows; the shelving population is derived from sz and
/// never stored independently.
fn trace_with_population(trace: &ObservableTrace) -> CliResult<Table> {
    let mut table = Table::new(vec!["t", "lz", "sz", "jz", "P_e"]);
    for k in 0..trace.len() {
        let population = shelving_probability(trace.sz()[k])?;
        table.push_row(vec![
            Cell::Num(trace.times()[k]),
            Cell::Num(trace.lz()[k]),
            Cell::Num(trace.sz()[k]),
            Cell::Num(trace.jz()[k]),
            Cell::Num(population),
        ]);
    }
    Ok(table)
}

fn oracle_trace(
    params: PhysParams,
    n_l: usize,
    form: EvolveForm,
    n_max: usize,
    times: &[f64],
) -> CliResult<ObservableTrace> {
    if n_l == 0 {
        return Err(djc_core::Error::InvalidDoubletIndex.into());
    }
    if n_max < 2 {
        return Err(CliError::Validation(format!(
            "n_max must be at least 2, got {n_max}"
        )));
    }
    let (space, hamiltonian, lz_op) = match form {
        EvolveForm::Jc => {
            let space = FockSpace::single_left(n_max)?;
            let h = build_hamiltonian_jc(params, space)?;
            let number = chiral_number_operator(space, Chirality::Left)?;
            let lz =
                OperatorMatrix::new(space, "L_z/ħ", -number.entries().clone())?.spin_extended()?;
            (space, h, lz)
        }
        EvolveForm::Cartesian => {
            let space = FockSpace::two_mode(n_max)?;
            let h = build_hamiltonian_cartesian(params, space)?;
            let lz = angular_momentum_lz(space, 1.0)?.spin_extended()?;
            (space, h, lz)
        }
    };
    let start = chiral_number_state(space, Chirality::Left, n_l - 1)?.with_spin(Spin::Down);
    let decomp = diagonalize(&hamiltonian)?;
    observable_trace(&decomp, &start, &lz_op, &spin_z(space), times).map_err(Into::into)
}

fn load_trap(
    input: Option<PathBuf>,
    eta: Option<f64>,
    omega_rabi: Option<f64>,
    delta: Option<f64>,
    delta_width: Option<f64>,
) -> CliResult<IonTrapParams> {
    if let Some(path) = input {
        if eta.is_some() || omega_rabi.is_some() || delta.is_some() || delta_width.is_some() {
            return Err(CliError::Validation(
                "give either --input or explicit trap flags, not both".into(),
            ));
        }
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        return parse_param_file(&text).map_err(Into::into);
    }
    let (Some(eta), Some(omega_rabi), Some(delta)) = (eta, omega_rabi, delta) else {
        return Err(CliError::Validation(
            "need --input FILE or all of --eta, --omega-rabi, --delta".into(),
        ));
    };
    let mut trap = IonTrapParams::new(eta, omega_rabi, delta)?;
    if let Some(width) = delta_width {
        trap = trap.with_motional_width(width)?;
    }
    Ok(trap)
}

fn write_table(table: &Table, format: Format, output: &Option<PathBuf>) -> CliResult<()> {
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let mut json = serde_json::to_string_pretty(&table.to_json())
                .map_err(|e| CliError::Io(e.to_string()))?;
            json.push('\n');
            json
        }
    };
    write_text(&text, output)
}

fn write_text(text: &str, output: &Option<PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}
