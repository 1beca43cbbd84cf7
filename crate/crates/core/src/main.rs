use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fock_lab::error::FockError;
use fock_lab::fock::FockParams;
use fock_lab::generators::{
    covering_check_window, generate_covering_rings, generate_disjoint_rings, generate_lattice,
    Generated,
};
use fock_lab::geometry::{
    coverage_defect, pairwise_disjoint, theorem_verdicts, Divisor, Sign, Window,
};
use fock_lab::io::{
    divisor_to_json, parse_divisor, parse_values, points_csv, render_report, sweep_csv, CliError,
};
use fock_lab::kernels::gram_matrix;
use fock_lab::numerics::{
    frame_sweep, hole_mass_experiment, matched_degree, min_norm_interpolate, riesz_bounds,
    MeasurementVector, DEFAULT_RCOND,
};
use fock_lab::report;

#[derive(Parser)]
#[command(
    name = "fock-lab",
    version,
    about = "Sampling, interpolation and uniqueness experiments in the Fock space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Disc-coverage and disjointness verdicts on a window.
    CheckGeometry {
        divisor: PathBuf,
        #[arg(long)]
        window: f64,
        /// Grid pitch; defaults to window/100.
        #[arg(long)]
        grid_step: Option<f64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        c_list: Vec<f64>,
        #[arg(long, default_value_t = 0.0)]
        hole_radius: f64,
        /// CSV (`re,im`) of points left uncovered by the shrunk discs for the smallest C.
        #[arg(long)]
        defects_csv: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Empirical frame bounds of the truncated analysis operator.
    FrameBounds {
        divisor: PathBuf,
        #[arg(long, conflicts_with = "degree_sweep")]
        degree: Option<usize>,
        /// Inclusive range `a:b:step`.
        #[arg(long, value_parser = parse_sweep)]
        degree_sweep: Option<Sweep>,
        /// Keep only points with |λ| ≤ R; also sets the default degree ⌈αR²⌉.
        #[arg(long)]
        window: Option<f64>,
        /// CSV (`N,smin,smax,ratio`) of the sweep.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Minimal-norm interpolation of prescribed measurements.
    Interpolate {
        divisor: PathBuf,
        #[arg(long)]
        values: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RCOND)]
        rcond: f64,
        /// Include the solution atoms in the report.
        #[arg(long)]
        atoms: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Spectrum of the Gram matrix of the divisor atoms.
    Gram {
        divisor: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Generate a divisor file.
    Generate {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Window mass of functions vanishing on the divisor.
    Uniqueness {
        divisor: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        window: f64,
        /// Grid pitch of the window; defaults to window/100.
        #[arg(long)]
        grid_step: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct GenCommon {
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long)]
    window: f64,
    /// Divisor file to write.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FamilyCmd {
    Lattice {
        #[arg(long)]
        spacing: f64,
        #[arg(long, default_value_t = 1)]
        mult: usize,
        #[command(flatten)]
        common: GenCommon,
    },
    CoveringRings {
        #[arg(long)]
        c: f64,
        #[command(flatten)]
        common: GenCommon,
    },
    DisjointRings {
        #[arg(long)]
        c: f64,
        #[command(flatten)]
        common: GenCommon,
    },
}

#[derive(Clone)]
struct Sweep(Vec<usize>);

fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err("expected a:b:step".into());
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let (a, b, step) = (num(a)?, num(b)?, num(step)?);
    if step == 0 || a > b {
        return Err("need a <= b and step >= 1".into());
    }
    Ok(Sweep((a..=b).step_by(step).collect()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|error| CliError::Io {
        path: path.display().to_string(),
        error,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|error| CliError::Io {
        path: path.display().to_string(),
        error,
    })
}

fn load_divisor(path: &Path) -> Result<Divisor, CliError> {
    let (x, merges) = parse_divisor(&read(path)?).map_err(|error| CliError::Schema {
        path: path.display().to_string(),
        error,
    })?;
    for m in merges {
        eprintln!(
            "warning: {}: {} entries at ({}, {}) merged into multiplicity {}",
            path.display(),
            m.occurrences,
            m.lambda.re,
            m.lambda.im,
            m.mult
        );
    }
    Ok(x)
}

fn emit(out: &Output, value: Value) -> Result<(), CliError> {
    let text = render_report(value);
    match &out.report {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn window(radius: f64, grid_step: Option<f64>) -> Result<Window, CliError> {
    Ok(Window::new(radius, grid_step.unwrap_or(radius / 100.0))?)
}

fn run_generate(family: FamilyCmd) -> Result<(), CliError> {
    let (g, common): (Generated, GenCommon) = match family {
        FamilyCmd::Lattice {
            spacing,
            mult,
            common,
        } => {
            let p = FockParams::new(common.alpha)?;
            (generate_lattice(p, spacing, mult, common.window)?, common)
        }
        FamilyCmd::CoveringRings { c, common } => {
            let p = FockParams::new(common.alpha)?;
            (generate_covering_rings(p, c, common.window)?, common)
        }
        FamilyCmd::DisjointRings { c, common } => {
            let p = FockParams::new(common.alpha)?;
            (generate_disjoint_rings(p, c, common.window)?, common)
        }
    };
    let contract = match g.family {
        fock_lab::generators::Family::Lattice { .. } => json!(null),
        fock_lab::generators::Family::CoveringRings { c } => {
            let w = covering_check_window(g.window)?;
            let uncovered = coverage_defect(&g.divisor, c, Sign::Minus, &w, 0.0)?;
            json!({"check": "shrunk discs cover the window", "grid_step": w.grid_step(), "holds": uncovered.is_empty()})
        }
        fock_lab::generators::Family::DisjointRings { c } => {
            let holds = pairwise_disjoint(&g.divisor, c, Sign::Plus).disjoint;
            json!({"check": "enlarged discs pairwise disjoint", "holds": holds})
        }
    };
    write(&common.out, &divisor_to_json(&g.divisor))?;
    emit(
        &Output {
            report: common.report,
        },
        report::generate_report(&g, contract),
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::CheckGeometry {
            divisor,
            window: radius,
            grid_step,
            c_list,
            hole_radius,
            defects_csv,
            out,
        } => {
            let x = load_divisor(&divisor)?;
            let w = window(radius, grid_step)?;
            let v = theorem_verdicts(&x, &w, &c_list, hole_radius)?;
            if let Some(path) = defects_csv {
                write(&path, &points_csv(&v.sampling_sufficient[0].uncovered))?;
            }
            emit(
                &out,
                report::geometry_report(&x, &w, &c_list, hole_radius, &v),
            )
        }
        Command::FrameBounds {
            divisor,
            degree,
            degree_sweep,
            window: radius,
            csv,
            out,
        } => {
            let mut x = load_divisor(&divisor)?;
            if let Some(r) = radius {
                if r <= 0.0 || !r.is_finite() {
                    return Err(FockError::InvalidWindow(format!(
                        "radius must be positive, got {r}"
                    ))
                    .into());
                }
                let kept = x
                    .entries()
                    .iter()
                    .copied()
                    .filter(|e| e.lambda.norm() <= r)
                    .collect();
                x = Divisor::new(*x.params(), kept)?;
            }
            let extent = radius.unwrap_or(x.digest().max_modulus);
            let degrees = match (degree, degree_sweep) {
                (Some(n), _) => vec![n],
                (None, Some(Sweep(s))) => s,
                (None, None) => vec![matched_degree(extent, x.params())],
            };
            let rows = frame_sweep(&x, &degrees)?;
            if let Some(path) = csv {
                write(&path, &sweep_csv(&rows))?;
            }
            emit(&out, report::frame_report(&x, &degrees, extent, &rows))
        }
        Command::Interpolate {
            divisor,
            values,
            rcond,
            atoms,
            out,
        } => {
            let x = load_divisor(&divisor)?;
            let v = parse_values(&read(&values)?).map_err(|error| CliError::Schema {
                path: values.display().to_string(),
                error,
            })?;
            let mv = MeasurementVector::new(x.labels(), v.clone())?;
            let sol = min_norm_interpolate(&x, &mv, rcond)?;
            emit(
                &out,
                report::interpolation_report(&x, &v, rcond, &sol, atoms),
            )
        }
        Command::Gram { divisor, out } => {
            let x = load_divisor(&divisor)?;
            let g = gram_matrix(&x.labels(), x.params())?;
            let riesz = riesz_bounds(&g);
            emit(&out, report::gram_report(&x, &g, &riesz))
        }
        Command::Generate { family } => run_generate(family),
        Command::Uniqueness {
            divisor,
            degree,
            window: radius,
            grid_step,
            out,
        } => {
            let x = load_divisor(&divisor)?;
            let w = window(radius, grid_step)?;
            let mass = hole_mass_experiment(&x, degree, &w)?;
            let baseline =
                hole_mass_experiment(&Divisor::new(*x.params(), Vec::new())?, degree, &w)?;
            emit(
                &out,
                report::uniqueness_report(&x, degree, &w, mass, baseline),
            )
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
