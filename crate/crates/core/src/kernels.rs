//! Displacement matrix elements, Gram matrices of translated basis states,
//! and a brute-force quadrature oracle for the inner product.
//!
//! With `w = √α z` and `x = |w|²`, the overlap of a displaced basis state with
//! a basis state is
//!
//! ```text
//! ⟨T_z e_k, e_j⟩ = e^{−x/2} √(k!/j!) · w̄^{j−k} · L_k^{(j−k)}(x)      j ≥ k
//! ⟨T_z e_k, e_j⟩ = e^{−x/2} √(j!/k!) · (−w)^{k−j} · L_j^{(k−j)}(x)   j < k
//! ```
//!
//! obtained by expanding `e^{α z̄ ζ}(ζ − z)^k` in powers of ζ. The tests pin it
//! against [`quadrature_inner_oracle`].

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FockError, Result};
use crate::fock::{compose_phase, exp_parts, ln_factorial, FockFunction, FockParams};

const RESCALE_ABOVE: f64 = 1e100;

/// Generalized Laguerre polynomial `L_n^{(a)}(x)` as `(mantissa, ln_scale)`,
/// value = `mantissa · e^{ln_scale}`. Three-term recurrence in the degree with
/// periodic rescaling so large degrees do not overflow.
pub fn laguerre_scaled(n: usize, a: f64, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    if n == 0 {
        return (prev, 0.0);
    }
    let mut cur = 1.0 + a - x;
    let mut ln_scale = 0.0;
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0 + a - x) * cur - (mf + a) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs();
        if mag > RESCALE_ABOVE {
            prev /= mag;
            cur /= mag;
            ln_scale += mag.ln();
        }
    }
    (cur, ln_scale)
}

/// `L_n^{(a)}(x)`.
pub fn laguerre(n: usize, a: f64, x: f64) -> f64 {
    let (m, s) = laguerre_scaled(n, a, x);
    m * s.exp()
}

/// `⟨T_z e_k, e_j⟩`, i.e. the `j`-th basis coefficient of the displaced state
/// `T_z e_k`.
pub fn displacement_element(z: Complex64, j: usize, k: usize, params: &FockParams) -> Complex64 {
    let w = z * params.alpha().sqrt();
    let x = w.norm_sqr();
    if x == 0.0 {
        return if j == k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let (lo, hi) = if j >= k { (k, j) } else { (j, k) };
    let d = hi - lo;
    let (lag, lag_scale) = laguerre_scaled(lo, d as f64, x);
    if lag == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let df = d as f64;
    let mut ln_mag = -0.5 * x + 0.5 * (ln_factorial(lo) - ln_factorial(hi)) + lag_scale;
    let mut angle = 0.0;
    if d > 0 {
        ln_mag += 0.5 * df * x.ln();
        // w̄^d for j > k, (−w)^d for j < k
        angle = if j > k { -df * w.arg() } else { df * w.arg() };
    }
    let mut sign = lag.signum();
    if j < k && d % 2 == 1 {
        sign = -sign;
    }
    exp_parts(ln_mag + lag.abs().ln(), angle) * sign
}

/// `⟨T_λ e_k, T_μ e_j⟩`.
///
/// Uses `T_μ^* T_λ = T_{−μ} T_λ = phase · T_{λ−μ}` from [`compose_phase`].
pub fn atom_overlap(
    lambda: Complex64,
    k: usize,
    mu: Complex64,
    j: usize,
    params: &FockParams,
) -> Complex64 {
    let (phase, shift) = compose_phase(-mu, lambda, params);
    phase * displacement_element(shift, j, k, params)
}

/// Gram matrix of a family of unit atoms: `G[p, q] = ⟨atom_q, atom_p⟩`, so
/// that `(G c)_p = ⟨Σ_q c_q atom_q, atom_p⟩`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub labels: Vec<(Complex64, usize)>,
    pub entries: DMatrix<Complex64>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Largest `|G − G^*|` entry.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((self.entries[(p, q)] - self.entries[(q, p)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = self.entries.clone().symmetric_eigen();
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

pub(crate) fn check_distinct_labels(family: &[(Complex64, usize)]) -> Result<()> {
    let mut sorted: Vec<(f64, f64, usize)> = family.iter().map(|(l, k)| (l.re, l.im, *k)).collect();
    sorted.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 == w[1].1 && w[0].2 == w[1].2 {
            return Err(FockError::DuplicateLabel {
                re: w[0].0,
                im: w[0].1,
                k: w[0].2,
            });
        }
    }
    Ok(())
}

/// Assemble the Gram matrix of `{T_λ e_k}` for the given labels.
///
/// Entries are computed independently (in parallel), so values do not depend
/// on scheduling.
pub fn gram_matrix(family: &[(Complex64, usize)], params: &FockParams) -> Result<GramMatrix> {
    if family.is_empty() {
        return Err(FockError::InvalidArgument("empty family".into()));
    }
    check_distinct_labels(family)?;
    let n = family.len();
    let rows: Vec<Vec<Complex64>> = family
        .par_iter()
        .map(|&(lp, kp)| {
            family
                .iter()
                .map(|&(lq, kq)| atom_overlap(lq, kq, lp, kp, params))
                .collect()
        })
        .collect();
    let entries = DMatrix::from_fn(n, n, |p, q| rows[p][q]);
    Ok(GramMatrix {
        labels: family.to_vec(),
        entries,
    })
}

/// Tensor rule on the disc `|z| ≤ R`: Gauss–Legendre in the radius and the
/// periodic trapezoid rule in the angle. Weights include `(α/π) r dr dθ`.
#[derive(Clone, Debug)]
pub struct PolarQuadrature {
    params: FockParams,
    points: Vec<Complex64>,
    weights: Vec<f64>,
}

impl PolarQuadrature {
    pub fn new(params: FockParams, radius: f64, n_r: usize, n_theta: usize) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(FockError::InvalidArgument(format!(
                "quadrature radius must be positive, got {radius}"
            )));
        }
        if n_r < 8 || n_theta < 8 {
            return Err(FockError::InvalidArgument(format!(
                "quadrature needs at least 8 nodes per direction, got {n_r}x{n_theta}"
            )));
        }
        let rule = GaussLegendre::new(NonZeroUsize::new(n_r).expect("n_r >= 8"));
        let dtheta = std::f64::consts::TAU / n_theta as f64;
        let scale = params.alpha() / std::f64::consts::PI;
        let mut points = Vec::with_capacity(n_r * n_theta);
        let mut weights = Vec::with_capacity(n_r * n_theta);
        for &(node, wgt) in rule.as_node_weight_pairs() {
            let r = 0.5 * radius * (node + 1.0);
            let wr = 0.5 * radius * wgt * r * dtheta * scale;
            for t in 0..n_theta {
                let theta = t as f64 * dtheta;
                points.push(Complex64::from_polar(r, theta));
                weights.push(wr);
            }
        }
        Ok(Self {
            params,
            points,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Values of `f(z) e^{−α|z|²/2}` at the nodes.
    pub fn sample(&self, f: &FockFunction) -> Result<Vec<Complex64>> {
        self.params.ensure_same(f.params())?;
        Ok(self
            .points
            .iter()
            .map(|&z| f.evaluate_weighted(z))
            .collect())
    }

    /// Quadrature of `f ḡ` from pre-sampled weighted values.
    pub fn inner_from_samples(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        f.iter()
            .zip(g)
            .zip(&self.weights)
            .map(|((a, b), w)| a * b.conj() * *w)
            .sum()
    }

    pub fn inner(&self, f: &FockFunction, g: &FockFunction) -> Result<Complex64> {
        Ok(self.inner_from_samples(&self.sample(f)?, &self.sample(g)?))
    }
}

/// Brute-force `(α/π) ∫_{|z|≤R} f ḡ e^{−α|z|²} dm(z)`.
pub fn quadrature_inner_oracle(
    f: &FockFunction,
    g: &FockFunction,
    radius: f64,
    n_r: usize,
    n_theta: usize,
) -> Result<Complex64> {
    f.params().ensure_same(g.params())?;
    PolarQuadrature::new(*f.params(), radius, n_r, n_theta)?.inner(f, g)
}

/// Truncation radius for the oracle: the farthest atom centre plus
/// `√((max degree + 10)/α) + 4`.
pub fn default_oracle_radius(f: &FockFunction, g: &FockFunction) -> f64 {
    let atoms = f.atoms().iter().chain(g.atoms());
    let centre = atoms.clone().map(|a| a.lambda.norm()).fold(0.0, f64::max);
    let degree = atoms.map(|a| a.k).max().unwrap_or(0);
    centre + ((degree as f64 + 10.0) / f.params().alpha()).sqrt() + 4.0
}
