//! The `geoscatter` command line: JSON run configurations in, CSV out.
//!
//! ```text
//! geoscatter <command> [--config run.json] [--preset fig1|fig2|fig3|fig5] [--out data.csv]
//! ```
//!
//! `<command>` is one of `amplitude`, `sweep`, `total-xsec`, `perturb`,
//! `lattice` (overriding the config's own `command`), `run` (use the
//! config's `command`) or `validate`. Exit status is 0 on success, 2 for
//! configuration and I/O errors, 3 for numerical failures.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use rayon::prelude::*;

pub use config::{
    CheckReport, Command, CouplingEntry, CouplingPair, CouplingsConfig, Diagnostic, KinematicsConfig, LatticeConfig,
    PerturbationConfig, Preset, QuadratureConfig, RunConfig, RunPlan, Severity, Surface, SurfaceConfig,
};

use crate::born::{
    amplitude_radial, differential_cross_section, gaussian_amplitude_first_order, gaussian_total_cross_section,
    total_cross_section_numeric, Amplitude, CurvatureCouplings, ScatteringKinematics,
};
use crate::error::Error;
use crate::lattice::structure_factor_lattice;
use crate::perturbation::{perturbed_gaussian_amplitude_first_order, z_factors};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Action {
    Amplitude,
    Sweep,
    TotalXsec,
    Perturb,
    Lattice,
    Run,
    Validate,
}

impl Action {
    fn command(self) -> Option<Command> {
        match self {
            Action::Amplitude => Some(Command::Amplitude),
            Action::Sweep => Some(Command::Sweep),
            Action::TotalXsec => Some(Command::TotalXsec),
            Action::Perturb => Some(Command::Perturb),
            Action::Lattice => Some(Command::Lattice),
            Action::Run | Action::Validate => None,
        }
    }
}

/// First-Born scattering amplitudes on curved surfaces.
#[derive(Debug, Parser)]
#[command(name = "geoscatter", version)]
struct Args {
    #[arg(value_enum)]
    command: Action,
    /// JSON run configuration.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,
    /// Built-in figure configuration.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// CSV destination; defaults to the config's `output`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse `args` (including the program name) and run. Returns the exit
/// status.
pub fn run_from_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_CONFIG
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };

    let (config, base_dir) = match (&args.preset, &args.config) {
        (Some(p), _) => (p.config(), PathBuf::from(".")),
        (None, Some(path)) => match load_config(path) {
            Ok(c) => c,
            Err(msg) => {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_CONFIG;
            }
        },
        (None, None) => unreachable!("clap requires --config or --preset"),
    };

    let report = config.check(args.command.command(), &base_dir);
    if args.command == Action::Validate {
        return print_validation(&report, stdout);
    }
    for d in &report.diagnostics {
        let _ = writeln!(stderr, "{d}");
    }
    let Some(plan) = report.plan else {
        return EXIT_CONFIG;
    };

    let csv = match render_csv(&plan) {
        Ok(csv) => csv,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_NUMERICAL;
        }
    };
    match args.out.or(plan.output) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, csv) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_CONFIG;
            }
        }
        None => {
            if let Err(e) = stdout.write_all(csv.as_bytes()) {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_CONFIG;
            }
        }
    }
    EXIT_OK
}

/// Read and parse a config file; returns it with its directory.
pub fn load_config(path: &Path) -> Result<(RunConfig, PathBuf), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let config = RunConfig::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((config, dir))
}

fn print_validation(report: &CheckReport, out: &mut dyn Write) -> i32 {
    if report.diagnostics.is_empty() {
        let _ = writeln!(out, "ok");
    }
    for d in &report.diagnostics {
        let _ = writeln!(out, "{d}");
    }
    if report.has_errors() {
        EXIT_CONFIG
    } else {
        EXIT_OK
    }
}

/// Compute every grid point of `plan` and format the CSV. Rows run
/// coupling → angle → wavenumber.
pub fn render_csv(plan: &RunPlan) -> Result<String, String> {
    let multi = plan.couplings.len() > 1;
    let mut header: Vec<&str> = match plan.command {
        Command::TotalXsec => vec!["sigma_k", "lambda1", "lambda2", "sigma_tot_over_sigma"],
        _ => vec!["sigma_k", "theta", "re_f", "im_f", "dcs_over_sigma"],
    };
    match plan.command {
        Command::Perturb => header.extend(["z1", "z2"]),
        Command::Lattice => header.push("c_abs2"),
        _ => {}
    }
    if multi && plan.command != Command::TotalXsec {
        header.extend(["lambda1", "lambda2"]);
    }

    let thetas: &[f64] = match plan.command {
        Command::TotalXsec => &[f64::NAN],
        _ => &plan.thetas,
    };
    let grid: Vec<(CurvatureCouplings, f64, f64)> = plan
        .couplings
        .iter()
        .flat_map(|&c| thetas.iter().flat_map(move |&t| plan.k_values.iter().map(move |&k| (c, t, k))))
        .collect();
    let rows: Vec<Result<Vec<f64>, Error>> = grid.par_iter().map(|&(c, t, k)| row(plan, c, t, k)).collect();

    let mut out = header.join(",");
    out.push('\n');
    for (result, &(c, theta, k)) in rows.into_iter().zip(&grid) {
        let mut values = result.map_err(|e| match plan.command {
            Command::TotalXsec => format!("numerical failure at k = {k}: {e}"),
            _ => format!("numerical failure at k = {k}, theta = {theta}: {e}"),
        })?;
        if multi && plan.command != Command::TotalXsec {
            values.extend([c.lambda1, c.lambda2]);
        }
        let line: Vec<String> = values.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn row(plan: &RunPlan, couplings: CurvatureCouplings, theta: f64, k: f64) -> Result<Vec<f64>, Error> {
    let sigma = plan.surface.sigma();
    let amplitude_row = |f: Amplitude| vec![sigma * k, theta, f.re(), f.im(), differential_cross_section(f) / sigma];
    let gaussian = match &plan.surface {
        Surface::Gaussian(g) => Some(g),
        Surface::Tabulated(_) => None,
    };

    if plan.command == Command::TotalXsec {
        let total = match gaussian {
            Some(g) => gaussian_total_cross_section(g, k, couplings),
            None => total_cross_section_numeric(
                |t| amplitude_radial(plan.surface.profile(), ScatteringKinematics::new(k, t)?, couplings, &plan.quadrature),
                &plan.quadrature,
            )?,
        };
        return Ok(vec![sigma * k, couplings.lambda1, couplings.lambda2, total / sigma]);
    }

    let kin = ScatteringKinematics::new(k, theta)?;
    match plan.command {
        Command::Amplitude => Ok(amplitude_row(amplitude_radial(
            plan.surface.profile(),
            kin,
            couplings,
            &plan.quadrature,
        )?)),
        Command::Sweep => {
            let g = gaussian.expect("checked by the config");
            Ok(amplitude_row(gaussian_amplitude_first_order(g, kin, couplings)))
        }
        Command::Perturb => {
            let spec = plan.perturbation.as_ref().expect("checked by the config");
            let f = gaussian_amplitude_first_order(&spec.bump, kin, couplings);
            let f_eps = perturbed_gaussian_amplitude_first_order(spec, kin, couplings);
            let (z1, z2) = z_factors(spec, kin, couplings)?;
            let mut r = amplitude_row(Amplitude(f.0 + spec.epsilon * f_eps.0));
            r.extend([z1, z2]);
            Ok(r)
        }
        Command::Lattice => {
            let g = gaussian.expect("checked by the config");
            let lattice = plan.lattice.as_ref().expect("checked by the config");
            let (k_in, k_out) = kin.lab_vectors();
            let c = structure_factor_lattice(lattice, k_in, k_out)?;
            let f = gaussian_amplitude_first_order(g, kin, couplings);
            let mut r = amplitude_row(Amplitude(c * f.0));
            r.push(c.norm_sqr());
            Ok(r)
        }
        Command::TotalXsec => unreachable!(),
    }
}
