//! Report documents for the command-line tool.
//!
//! Every report has the same top-level layout:
//!
//! ```text
//! tool     name and version
//! command  subcommand name
//! input    everything the result depends on (α, divisor, window, N, C list, ...)
//! scope    what the numbers are a proxy for
//! results  the numbers
//! ```
//!
//! Builders only assemble [`serde_json::Value`]s; rendering and rounding live
//! in [`crate::io::render_report`].

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::generators::Generated;
use crate::geometry::{CoverageAtC, Divisor, ExistsVerdict, GeometryVerdicts, Window};
use crate::kernels::GramMatrix;
use crate::numerics::{InterpolationSolution, SpectralSummary};

pub const TOOL_NAME: &str = "fock-lab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const WINDOW_SCOPE: &str = "on window: finite-window proxies of conditions on the whole plane";
const TRUNCATION_SCOPE: &str = "on window: truncated to polynomials of degree <= N";

fn complex(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn points(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().copied().map(complex).collect())
}

/// Input echo of a divisor: α, every point, and summary counts.
pub fn divisor_echo(x: &Divisor) -> Value {
    let d = x.digest();
    json!({
        "alpha": d.alpha,
        "points": x.entries().iter().map(|e| json!({
            "re": e.lambda.re,
            "im": e.lambda.im,
            "mult": e.mult,
        })).collect::<Vec<_>>(),
        "point_count": d.points,
        "total_multiplicity": d.total_multiplicity,
        "max_multiplicity": d.max_multiplicity,
        "max_modulus": d.max_modulus,
    })
}

fn window_echo(w: &Window) -> Value {
    json!({"radius": w.radius(), "grid_step": w.grid_step()})
}

fn envelope(command: &str, input: Value, scope: &str, results: Value) -> Value {
    let mut m = Map::new();
    m.insert(
        "tool".into(),
        json!({"name": TOOL_NAME, "version": TOOL_VERSION}),
    );
    m.insert("command".into(), json!(command));
    m.insert("input".into(), input);
    m.insert("scope".into(), json!(scope));
    m.insert("results".into(), results);
    Value::Object(m)
}

fn exists(v: &ExistsVerdict) -> Value {
    json!({"holds": v.holds, "witness_c": v.witness})
}

fn coverage(v: &CoverageAtC) -> Value {
    json!({
        "c": v.c,
        "holds": v.holds,
        "uncovered_count": v.uncovered.len(),
        "uncovered": points(&v.uncovered),
    })
}

pub fn summary_value(s: &SpectralSummary) -> Value {
    json!({
        "N": s.degree,
        "smin": s.smin,
        "smax": s.smax,
        "ratio": s.ratio,
        "lower_bound": s.lower_bound(),
        "upper_bound": s.upper_bound(),
        "rank_deficient": s.rank_deficient,
    })
}

pub fn geometry_report(
    x: &Divisor,
    w: &Window,
    c_list: &[f64],
    hole_radius: f64,
    v: &GeometryVerdicts,
) -> Value {
    let input = json!({
        "divisor": divisor_echo(x),
        "window": window_echo(w),
        "c_list": c_list,
        "hole_radius": hole_radius,
    });
    let results = json!({
        "windowed_points": v.windowed_points,
        "finite_overlap_bound": v.finite_overlap_bound,
        "sampling_necessary": exists(&v.sampling_necessary),
        "sampling_sufficient_all": v.sampling_sufficient_all(),
        "sampling_sufficient": v.sampling_sufficient.iter().map(coverage).collect::<Vec<_>>(),
        "interpolation_necessary": exists(&v.interpolation_necessary),
        "interpolation_sufficient": exists(&v.interpolation_sufficient),
        "zero_divisor_condition": {
            "holds": v.proposition.holds,
            "hole_radius": v.proposition.hole_radius,
            "uncovered_count": v.proposition.uncovered.len(),
            "uncovered": points(&v.proposition.uncovered),
        },
        "exclusivity_consistent": v.corollary_consistent,
    });
    envelope("check-geometry", input, WINDOW_SCOPE, results)
}

pub fn frame_report(
    x: &Divisor,
    degrees: &[usize],
    window: f64,
    rows: &[SpectralSummary],
) -> Value {
    let input = json!({
        "divisor": divisor_echo(x),
        "degrees": degrees,
        "window": {"radius": window},
    });
    let results = json!({"frame_bounds": rows.iter().map(summary_value).collect::<Vec<_>>()});
    envelope("frame-bounds", input, TRUNCATION_SCOPE, results)
}

pub fn interpolation_report(
    x: &Divisor,
    values: &[Complex64],
    rcond: f64,
    sol: &InterpolationSolution,
    include_atoms: bool,
) -> Value {
    let input = json!({
        "divisor": divisor_echo(x),
        "values": points(values),
        "rcond": rcond,
    });
    let mut results = json!({
        "atoms": sol.coefficients.len(),
        "residual": sol.residual,
        "norm": sol.norm,
        "gram_condition": sol.gram_condition,
        "truncated_eigenvalues": sol.truncated,
        "riesz": summary_value(&sol.riesz),
    });
    if include_atoms {
        results["atom_dump"] = Value::Array(
            sol.function
                .atoms()
                .iter()
                .map(|a| json!({"lambda": complex(a.lambda), "k": a.k, "coeff": complex(a.coeff)}))
                .collect(),
        );
    }
    envelope("interpolate", input, WINDOW_SCOPE, results)
}

pub fn gram_report(x: &Divisor, g: &GramMatrix, riesz: &SpectralSummary) -> Value {
    let input = json!({"divisor": divisor_echo(x)});
    let results = json!({
        "dimension": g.dim(),
        "hermitian_defect": g.hermitian_defect(),
        "eigenvalues": g.eigenvalues(),
        "riesz": summary_value(riesz),
    });
    envelope("gram", input, WINDOW_SCOPE, results)
}

pub fn generate_report(g: &Generated, contract: Value) -> Value {
    let mut family = json!({"name": g.family.name()});
    match g.family {
        crate::generators::Family::Lattice { spacing, mult } => {
            family["spacing"] = json!(spacing);
            family["mult"] = json!(mult);
        }
        crate::generators::Family::CoveringRings { c }
        | crate::generators::Family::DisjointRings { c } => {
            family["c"] = json!(c);
        }
    }
    let input = json!({
        "alpha": g.divisor.params().alpha(),
        "family": family,
        "window": {"radius": g.window},
    });
    let results = json!({
        "schedule": g.rings.iter().map(|r| json!({
            "radius": r.radius,
            "count": r.count,
            "mult": r.mult,
        })).collect::<Vec<_>>(),
        "contract": contract,
        "divisor": divisor_echo(&g.divisor),
    });
    envelope("generate", input, WINDOW_SCOPE, results)
}

pub fn uniqueness_report(
    x: &Divisor,
    degree: usize,
    w: &Window,
    hole_mass: f64,
    baseline: f64,
) -> Value {
    let input = json!({
        "divisor": divisor_echo(x),
        "N": degree,
        "window": window_echo(w),
    });
    let results = json!({
        "hole_mass": hole_mass,
        "empty_divisor_baseline": baseline,
        "suppression": if hole_mass > 0.0 { baseline / hole_mass } else { f64::INFINITY },
    });
    envelope("uniqueness", input, TRUNCATION_SCOPE, results)
}
