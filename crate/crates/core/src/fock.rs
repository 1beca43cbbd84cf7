//! Exact arithmetic in the Fock space F²α.
//!
//! Functions are stored as finite sums of atoms `c · T_λ e_k`, where
//! `e_k(z) = √(α^k / k!) z^k` is the monomial orthonormal basis and
//!
//! ```text
//! T_λ f(ζ) = exp(α λ̄ ζ − α|λ|²/2) · f(ζ − λ)
//! ```
//!
//! is the (unitary) Weyl translation. Translations map atoms to atoms up to a
//! unimodular phase, so the representation is closed under `translate` and
//! norms are computed from closed-form atom overlaps instead of integrals.

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{FockError, Result};
use crate::kernels;

/// The weight parameter α of the Gaussian measure `(α/π) e^{−α|z|²} dm(z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FockParams {
    alpha: f64,
}

impl FockParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Self { alpha })
        } else {
            Err(FockError::InvalidAlpha(alpha))
        }
    }

    /// α = 1.
    pub fn unit() -> Self {
        Self { alpha: 1.0 }
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub(crate) fn ensure_same(&self, other: &FockParams) -> Result<()> {
        if self.alpha == other.alpha {
            Ok(())
        } else {
            Err(FockError::ParamMismatch {
                left: self.alpha,
                right: other.alpha,
            })
        }
    }
}

/// One term `coeff · T_λ e_k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub lambda: Complex64,
    pub k: usize,
    pub coeff: Complex64,
}

impl Atom {
    pub fn new(lambda: Complex64, k: usize, coeff: Complex64) -> Self {
        Self { lambda, k, coeff }
    }

    /// The unit-coefficient atom `T_λ e_k`.
    pub fn unit(lambda: Complex64, k: usize) -> Self {
        Self::new(lambda, k, Complex64::new(1.0, 0.0))
    }
}

/// `e^{x + iy}` with modulus and angle evaluated separately, so that a zero
/// real part yields a phase of modulus one up to rounding of `cos`/`sin`.
#[inline]
pub(crate) fn exp_parts(x: f64, y: f64) -> Complex64 {
    let m = x.exp();
    Complex64::new(m * y.cos(), m * y.sin())
}

/// `ln k!`, exact-product for small `k` and log-gamma beyond.
pub fn ln_factorial(k: usize) -> f64 {
    if k <= 20 {
        (1..=k).map(|i| i as f64).product::<f64>().ln()
    } else {
        ln_gamma(k as f64 + 1.0)
    }
}

/// `ln √(α^k / k!)`.
#[inline]
fn ln_basis_norm(k: usize, alpha: f64) -> f64 {
    0.5 * (k as f64 * alpha.ln() - ln_factorial(k))
}

/// `e_k(z) = √(α^k / k!) z^k`.
pub fn basis_eval(k: usize, z: Complex64, params: &FockParams) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let kf = k as f64;
    exp_parts(kf * r.ln() + ln_basis_norm(k, params.alpha), kf * z.arg())
}

/// Value of `a.coeff · T_λ e_k` at ζ, multiplied by `e^{shift}`.
///
/// `shift` lets callers fold the Gaussian weight into the exponent, which keeps
/// far-field evaluations finite.
fn atom_eval_shifted(a: &Atom, zeta: Complex64, alpha: f64, shift: f64) -> Complex64 {
    let cross = a.lambda.conj() * zeta;
    let mut x = alpha * cross.re - 0.5 * alpha * a.lambda.norm_sqr() + shift;
    let mut y = alpha * cross.im;
    if a.k > 0 {
        let d = zeta - a.lambda;
        let r = d.norm();
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let kf = a.k as f64;
        x += kf * r.ln() + ln_basis_norm(a.k, alpha);
        y += kf * d.arg();
    }
    a.coeff * exp_parts(x, y)
}

/// `coeff · e^{α λ̄ ζ − (α/2)|λ|²} · e_k(ζ − λ)`.
pub fn atom_eval(a: &Atom, zeta: Complex64, params: &FockParams) -> Complex64 {
    atom_eval_shifted(a, zeta, params.alpha, 0.0)
}

/// Phase law of the Weyl translations: `T_w ∘ T_z = phase · T_{w+z}` with
/// `phase = e^{−iα Im(z̄ w)}`. Returns `(phase, w + z)`.
///
/// Every place that combines two translations goes through this function so
/// the sign convention lives in exactly one spot.
pub fn compose_phase(w: Complex64, z: Complex64, params: &FockParams) -> (Complex64, Complex64) {
    let theta = -params.alpha * (z.conj() * w).im;
    (exp_parts(0.0, theta), w + z)
}

/// Finite atom expansion `Σ coeff_i · T_{λ_i} e_{k_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockFunction {
    params: FockParams,
    atoms: Vec<Atom>,
}

impl FockFunction {
    pub fn zero(params: FockParams) -> Self {
        Self {
            params,
            atoms: Vec::new(),
        }
    }

    pub fn from_atoms(params: FockParams, atoms: Vec<Atom>) -> Self {
        Self { params, atoms }
    }

    /// The basis function `e_k`.
    pub fn basis(params: FockParams, k: usize) -> Self {
        Self::atom(params, Complex64::new(0.0, 0.0), k)
    }

    /// The unit atom `T_λ e_k`.
    pub fn atom(params: FockParams, lambda: Complex64, k: usize) -> Self {
        Self::from_atoms(params, vec![Atom::unit(lambda, k)])
    }

    /// `Σ c_n e_n`.
    pub fn from_basis_coeffs(params: FockParams, coeffs: &[Complex64]) -> Self {
        let atoms = coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| Atom::new(Complex64::new(0.0, 0.0), n, c))
            .collect();
        Self::from_atoms(params, atoms)
    }

    pub fn params(&self) -> &FockParams {
        &self.params
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn push(&mut self, atom: Atom) {
        self.atoms.push(atom);
    }

    /// Sum of two functions (atom lists concatenated).
    pub fn add(&self, other: &FockFunction) -> Result<FockFunction> {
        self.params.ensure_same(&other.params)?;
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Ok(Self::from_atoms(self.params, atoms))
    }

    pub fn scale(&self, s: Complex64) -> FockFunction {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom::new(a.lambda, a.k, a.coeff * s))
            .collect();
        Self::from_atoms(self.params, atoms)
    }

    /// Merge atoms sharing the exact same `(λ, k)` by summing coefficients.
    /// First-occurrence order is kept.
    pub fn merged(&self) -> FockFunction {
        let mut out: Vec<Atom> = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            match out.iter_mut().find(|b| b.lambda == a.lambda && b.k == a.k) {
                Some(b) => b.coeff += a.coeff,
                None => out.push(*a),
            }
        }
        Self::from_atoms(self.params, out)
    }

    pub fn evaluate(&self, zeta: Complex64) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| atom_eval_shifted(a, zeta, self.params.alpha, 0.0))
            .sum()
    }

    /// `f(ζ) · e^{−(α/2)|ζ|²}`, evaluated without forming the two factors
    /// separately.
    pub fn evaluate_weighted(&self, zeta: Complex64) -> Complex64 {
        let shift = -0.5 * self.params.alpha * zeta.norm_sqr();
        self.atoms
            .iter()
            .map(|a| atom_eval_shifted(a, zeta, self.params.alpha, shift))
            .sum()
    }

    /// Exact `T_z f`.
    pub fn translate(&self, z: Complex64) -> FockFunction {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let (phase, shift) = compose_phase(z, a.lambda, &self.params);
                Atom::new(shift, a.k, a.coeff * phase)
            })
            .collect();
        Self::from_atoms(self.params, atoms)
    }

    /// `⟨self, other⟩`, linear in the first argument.
    pub fn inner(&self, other: &FockFunction) -> Result<Complex64> {
        self.params.ensure_same(&other.params)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            for b in &other.atoms {
                let g = kernels::atom_overlap(a.lambda, a.k, b.lambda, b.k, &self.params);
                acc += a.coeff * b.coeff.conj() * g;
            }
        }
        Ok(acc)
    }

    pub fn norm(&self) -> f64 {
        if self.atoms.is_empty() {
            return 0.0;
        }
        // Same params on both sides, so this cannot fail.
        let sq = self.inner(self).map(|v| v.re).unwrap_or(0.0);
        sq.max(0.0).sqrt()
    }

    /// Orthogonal projection onto `span{e_0, …, e_N}`.
    pub fn to_basis_coeffs(&self, max_degree: usize) -> BasisCoefficients {
        let coeffs: Vec<Complex64> = (0..=max_degree)
            .map(|n| {
                self.atoms
                    .iter()
                    .map(|a| {
                        a.coeff * kernels::displacement_element(a.lambda, n, a.k, &self.params)
                    })
                    .sum()
            })
            .collect();
        let captured: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        let total = self.norm().powi(2);
        BasisCoefficients {
            params: self.params,
            coeffs,
            defect: total - captured,
        }
    }

    /// Grid estimate of `sup |f(z)| e^{−(α/2)|z|²}` over the square
    /// `|Re z|, |Im z| ≤ R` with pitch `step`.
    pub fn sup_norm_estimate(&self, radius: f64, step: f64) -> Result<f64> {
        if step <= 0.0 || !step.is_finite() {
            return Err(FockError::InvalidArgument(format!(
                "grid step must be positive, got {step}"
            )));
        }
        if radius < 0.0 || !radius.is_finite() {
            return Err(FockError::InvalidArgument(format!(
                "radius must be nonnegative, got {radius}"
            )));
        }
        let n = (radius / step).floor() as i64;
        let best = (-n..=n)
            .into_par_iter()
            .map(|i| {
                let x = i as f64 * step;
                (-n..=n)
                    .map(|j| {
                        self.evaluate_weighted(Complex64::new(x, j as f64 * step))
                            .norm()
                    })
                    .fold(0.0_f64, f64::max)
            })
            .reduce(|| 0.0_f64, f64::max);
        Ok(best)
    }
}

/// Coefficients `c_n = ⟨f, e_n⟩` for `n = 0..=N`, with the truncation defect
/// `‖f‖² − Σ|c_n|²`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisCoefficients {
    pub params: FockParams,
    pub coeffs: Vec<Complex64>,
    pub defect: f64,
}

impl BasisCoefficients {
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn to_function(&self) -> FockFunction {
        FockFunction::from_basis_coeffs(self.params, &self.coeffs)
    }
}
