//! Spectral side of sampling and interpolation on finite truncations.
//!
//! The functionals of a divisor are `f ↦ ⟨f, T_λ e_k⟩` for `k < m_λ`. On
//! `span{e_0, …, e_N}` they form the analysis matrix `A[(λ,k), n] = ⟨e_n, T_λ e_k⟩`
//! whose extreme singular values estimate the frame bounds. On the atom side the
//! Gram matrix gives Riesz bounds and the minimal-norm interpolant.
//!
//! All decompositions are dense and deterministic (nalgebra SVD / Hermitian
//! eigensolver), so fixtures are reproducible.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FockError, Result};
use crate::fock::{ln_factorial, Atom, FockFunction, FockParams};
use crate::geometry::{Divisor, DivisorDigest, Window};
use crate::kernels::{displacement_element, gram_matrix, GramMatrix};

/// Default relative eigenvalue cutoff of the Gram pseudo-inverse.
pub const DEFAULT_RCOND: f64 = 1e-12;

/// Nodes of the radial rule behind [`basis_window_mass`].
const WINDOW_MASS_NODES: usize = 200;

/// Values `v_λ^{(k)}` on the labels of a divisor.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementVector {
    pub labels: Vec<(Complex64, usize)>,
    pub values: Vec<Complex64>,
}

impl MeasurementVector {
    pub fn new(labels: Vec<(Complex64, usize)>, values: Vec<Complex64>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(FockError::LabelMismatch);
        }
        Ok(Self { labels, values })
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `v_λ^{(k)} = ⟨f, T_λ e_k⟩` in divisor order, `k` ascending.
pub fn measurements(f: &FockFunction, x: &Divisor) -> Result<MeasurementVector> {
    f.params().ensure_same(x.params())?;
    let labels = x.labels();
    let values = labels
        .par_iter()
        .map(|&(lambda, k)| f.inner(&FockFunction::atom(*x.params(), lambda, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementVector { labels, values })
}

#[derive(Clone, Debug)]
pub struct AnalysisMatrix {
    pub labels: Vec<(Complex64, usize)>,
    pub degree: usize,
    pub entries: DMatrix<Complex64>,
    pub digest: DivisorDigest,
}

impl AnalysisMatrix {
    /// `A c` for basis coefficients `c_0..c_N`.
    pub fn apply(&self, coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
        if coeffs.len() != self.degree + 1 {
            return Err(FockError::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.degree + 1,
                coeffs.len()
            )));
        }
        let c = DVector::from_column_slice(coeffs);
        Ok((&self.entries * c).iter().copied().collect())
    }
}

/// `A[(λ,k), n] = ⟨e_n, T_λ e_k⟩ = conj ⟨T_λ e_k, e_n⟩`.
pub fn analysis_matrix(x: &Divisor, degree: usize) -> AnalysisMatrix {
    let labels = x.labels();
    let params = *x.params();
    let cols = degree + 1;
    let rows: Vec<Vec<Complex64>> = labels
        .par_iter()
        .map(|&(lambda, k)| {
            (0..cols)
                .map(|n| displacement_element(lambda, n, k, &params).conj())
                .collect()
        })
        .collect();
    let entries = DMatrix::from_fn(labels.len(), cols, |p, n| rows[p][n]);
    AnalysisMatrix {
        labels,
        degree,
        entries,
        digest: x.digest(),
    }
}

/// Extreme singular values and the ratio `smax²/smin²`.
///
/// For an analysis matrix these are the square roots of the empirical frame
/// bounds on the truncated space; for a Gram matrix, the square roots of its
/// extreme eigenvalues (so `ratio` is the condition number).
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSummary {
    pub smin: f64,
    pub smax: f64,
    pub ratio: f64,
    pub degree: Option<usize>,
    /// Fewer measurements than unknowns: `smin = 0` by construction.
    pub rank_deficient: bool,
    pub digest: Option<DivisorDigest>,
}

impl SpectralSummary {
    fn from_extremes(smin: f64, smax: f64) -> (f64, f64, f64) {
        let ratio = if smin > 0.0 {
            (smax / smin).powi(2)
        } else {
            f64::INFINITY
        };
        (smin, smax, ratio)
    }

    /// Lower bound `smin²`.
    pub fn lower_bound(&self) -> f64 {
        self.smin * self.smin
    }

    /// Upper bound `smax²`.
    pub fn upper_bound(&self) -> f64 {
        self.smax * self.smax
    }
}

pub fn frame_bounds(a: &AnalysisMatrix) -> Result<SpectralSummary> {
    let (rows, cols) = a.entries.shape();
    if rows == 0 {
        return Err(FockError::EmptyDivisor);
    }
    let sv = a.entries.clone().singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let rank_deficient = rows < cols;
    let smin = if rank_deficient {
        0.0
    } else {
        sv.iter().copied().fold(f64::INFINITY, f64::min)
    };
    let (smin, smax, ratio) = SpectralSummary::from_extremes(smin, smax);
    Ok(SpectralSummary {
        smin,
        smax,
        ratio,
        degree: Some(a.degree),
        rank_deficient,
        digest: Some(a.digest.clone()),
    })
}

/// `frame_bounds` over a list of truncation degrees, evaluated in parallel and
/// returned in input order.
pub fn frame_sweep(x: &Divisor, degrees: &[usize]) -> Result<Vec<SpectralSummary>> {
    degrees
        .par_iter()
        .map(|&n| frame_bounds(&analysis_matrix(x, n)))
        .collect()
}

pub fn riesz_bounds(g: &GramMatrix) -> SpectralSummary {
    let ev = g.eigenvalues();
    let lo = ev.first().copied().unwrap_or(0.0).max(0.0);
    let hi = ev.last().copied().unwrap_or(0.0).max(0.0);
    let (smin, smax, ratio) = SpectralSummary::from_extremes(lo.sqrt(), hi.sqrt());
    SpectralSummary {
        smin,
        smax,
        ratio,
        degree: None,
        rank_deficient: false,
        digest: None,
    }
}

#[derive(Clone, Debug)]
pub struct InterpolationSolution {
    /// `Σ c_q T_{λ_q} e_{k_q}` on the divisor labels.
    pub function: FockFunction,
    pub coefficients: Vec<Complex64>,
    /// `max |⟨f, T_λ e_k⟩ − v_λ^{(k)}|`, measured through the inner product.
    pub residual: f64,
    pub norm: f64,
    /// `λmax/λmin` of the Gram matrix (infinite when singular).
    pub gram_condition: f64,
    /// Number of eigenvalues dropped by the `rcond` cutoff.
    pub truncated: usize,
    pub riesz: SpectralSummary,
}

/// Minimal-norm `f` in the span of the divisor atoms with
/// `⟨f, T_λ e_k⟩ = v_λ^{(k)}`, via the Gram pseudo-inverse.
pub fn min_norm_interpolate(
    x: &Divisor,
    v: &MeasurementVector,
    rcond: f64,
) -> Result<InterpolationSolution> {
    if x.is_empty() {
        return Err(FockError::EmptyDivisor);
    }
    if rcond <= 0.0 || !rcond.is_finite() {
        return Err(FockError::InvalidRcond(rcond));
    }
    let labels = x.labels();
    if labels != v.labels {
        return Err(FockError::LabelMismatch);
    }
    let params = *x.params();
    let gram = gram_matrix(&labels, &params)?;
    let riesz = riesz_bounds(&gram);
    let eig = gram.entries.clone().symmetric_eigen();
    let lmax = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let lmin = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let cutoff = rcond * lmax;
    let rhs = DVector::from_column_slice(&v.values);
    let mut c = DVector::<Complex64>::zeros(labels.len());
    let mut truncated = 0;
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l > cutoff {
            let u = eig.eigenvectors.column(i);
            let proj = u.dotc(&rhs);
            c += u * (proj / l);
        } else {
            truncated += 1;
        }
    }
    let coefficients: Vec<Complex64> = c.iter().copied().collect();
    let function = FockFunction::from_atoms(
        params,
        labels
            .iter()
            .zip(&coefficients)
            .map(|(&(lambda, k), &coeff)| Atom::new(lambda, k, coeff))
            .collect(),
    );
    let measured = measurements(&function, x)?;
    let residual = measured
        .values
        .iter()
        .zip(&v.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let norm_sq: f64 = coefficients
        .iter()
        .zip(&v.values)
        .map(|(c, v)| (c.conj() * v).re)
        .sum();
    let gram_condition = if lmin > 0.0 {
        lmax / lmin
    } else {
        f64::INFINITY
    };
    Ok(InterpolationSolution {
        function,
        coefficients,
        residual,
        norm: norm_sq.max(0.0).sqrt(),
        gram_condition,
        truncated,
        riesz,
    })
}

/// Default truncation degree for a window of radius `R`: `⌈αR²⌉`, the degree
/// at which `|e_N|²e^{-α|z|²}` peaks on the window edge.
pub fn matched_degree(radius: f64, params: &FockParams) -> usize {
    (params.alpha() * radius * radius).ceil().max(0.0) as usize
}

/// `‖e_n · 1_{|z|≤R}‖²`, by Gauss–Legendre quadrature in the radius.
pub fn basis_window_mass(n: usize, radius: f64, params: &FockParams) -> f64 {
    if radius <= 0.0 {
        return 0.0;
    }
    let alpha = params.alpha();
    let rule = GaussLegendre::new(NonZeroUsize::new(WINDOW_MASS_NODES).expect("nonzero"));
    let log_const = (2.0 * alpha).ln() + n as f64 * alpha.ln() - ln_factorial(n);
    let half = 0.5 * radius;
    rule.as_node_weight_pairs()
        .iter()
        .map(|&(node, w)| {
            let r = half * (node + 1.0);
            let ln_f = log_const + (2 * n + 1) as f64 * r.ln() - alpha * r * r;
            half * w * ln_f.exp()
        })
        .sum()
}

/// Largest window-mass fraction `Σ|c_n|² p_n(W)` over unit coefficient
/// vectors annihilated by every functional of the divisor on
/// `span{e_0, …, e_N}`.
pub fn hole_mass_experiment(x: &Divisor, degree: usize, w: &Window) -> Result<f64> {
    let cols = degree + 1;
    let constraints = x.total_multiplicity();
    if constraints >= cols {
        return Err(FockError::Infeasible(format!(
            "{constraints} constraints leave no free direction in degree {degree}"
        )));
    }
    let a = analysis_matrix(x, degree);
    // pad to square so the SVD returns a full right basis
    let mut square = DMatrix::<Complex64>::zeros(cols, cols);
    square
        .view_mut((0, 0), (constraints, cols))
        .copy_from(&a.entries);
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested V^*");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let tol = smax * cols as f64 * f64::EPSILON;
    let null: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= tol)
        .map(|(i, _)| i)
        .collect();
    let masses: Vec<f64> = (0..cols)
        .map(|n| basis_window_mass(n, w.radius(), x.params()))
        .collect();
    // null-space basis as columns: conjugate rows of V^*
    let z = DMatrix::from_fn(cols, null.len(), |n, j| v_t[(null[j], n)].conj());
    let weighted = DMatrix::from_fn(cols, null.len(), |n, j| z[(n, j)] * masses[n]);
    let reduced = z.adjoint() * weighted;
    let top = reduced
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(0.0, f64::max);
    Ok(top)
}
