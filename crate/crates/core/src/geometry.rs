//! Divisors and the disc geometry attached to them.
//!
//! Every entry `(λ, m)` of a divisor carries the disc `D(λ, √(m/α))`, possibly
//! enlarged or shrunk by a constant `C`. All discs are open. The checks here are
//! finite-window proxies: ℂ is replaced by `{|z| ≤ R}` sampled on a square grid,
//! and the exceptional compact set by a central disc of radius `hole_radius`.
//!
//! Internally everything is computed in the normalized variable `u = √α z`,
//! where radii become `√m ± C√α`. A divisor and its image under
//! [`rescale_to_unit_alpha`] therefore produce bit-identical verdicts when the
//! window, grid step and constants are scaled by the same `√α`.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FockError, Result};
use crate::fock::FockParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivisorEntry {
    pub lambda: Complex64,
    pub mult: usize,
}

/// A coincident-point merge performed during normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct MergedPoint {
    pub lambda: Complex64,
    pub occurrences: usize,
    pub mult: usize,
}

/// Finite divisor `{(λ, m_λ)}` with pairwise distinct points and `m_λ ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Divisor {
    params: FockParams,
    entries: Vec<DivisorEntry>,
}

impl Divisor {
    pub fn new(params: FockParams, entries: Vec<DivisorEntry>) -> Result<Self> {
        for e in &entries {
            if e.mult == 0 {
                return Err(FockError::InvalidDivisor(format!(
                    "multiplicity must be at least 1 at ({}, {})",
                    e.lambda.re, e.lambda.im
                )));
            }
            if !e.lambda.re.is_finite() || !e.lambda.im.is_finite() {
                return Err(FockError::InvalidDivisor("non-finite point".into()));
            }
        }
        let mut order: Vec<usize> = (0..entries.len()).collect();
        order.sort_by(|&a, &b| point_cmp(entries[a].lambda, entries[b].lambda));
        for w in order.windows(2) {
            let (a, b) = (entries[w[0]].lambda, entries[w[1]].lambda);
            if a == b {
                return Err(FockError::InvalidDivisor(format!(
                    "coincident points at ({}, {})",
                    a.re, a.im
                )));
            }
        }
        Ok(Self { params, entries })
    }

    /// Build a divisor, summing the multiplicities of coincident points.
    /// The first occurrence fixes the position in the entry order.
    pub fn merging(
        params: FockParams,
        entries: Vec<DivisorEntry>,
    ) -> Result<(Self, Vec<MergedPoint>)> {
        // +0.0 folds the two signed zeros onto one key
        let key = |z: Complex64| ((z.re + 0.0).to_bits(), (z.im + 0.0).to_bits());
        let mut slot: HashMap<(u64, u64), usize> = HashMap::new();
        let mut out: Vec<DivisorEntry> = Vec::with_capacity(entries.len());
        let mut occurrences: Vec<usize> = Vec::with_capacity(entries.len());
        for e in entries {
            match slot.get(&key(e.lambda)) {
                Some(&i) => {
                    out[i].mult += e.mult;
                    occurrences[i] += 1;
                }
                None => {
                    slot.insert(key(e.lambda), out.len());
                    out.push(e);
                    occurrences.push(1);
                }
            }
        }
        let merges = out
            .iter()
            .zip(&occurrences)
            .filter(|(_, &n)| n > 1)
            .map(|(e, &n)| MergedPoint {
                lambda: e.lambda,
                occurrences: n,
                mult: e.mult,
            })
            .collect();
        Ok((Self::new(params, out)?, merges))
    }

    pub fn params(&self) -> &FockParams {
        &self.params
    }

    pub fn entries(&self) -> &[DivisorEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// Measurement labels `(λ, k)` with `k < m_λ`, in divisor order and `k`
    /// ascending.
    pub fn labels(&self) -> Vec<(Complex64, usize)> {
        self.entries
            .iter()
            .flat_map(|e| (0..e.mult).map(move |k| (e.lambda, k)))
            .collect()
    }

    /// Same multiplicities, every point multiplied by `factor`.
    pub fn scale_points(&self, factor: f64) -> Result<Divisor> {
        let entries = self
            .entries
            .iter()
            .map(|e| DivisorEntry {
                lambda: e.lambda * factor,
                mult: e.mult,
            })
            .collect();
        Divisor::new(self.params, entries)
    }

    /// Number of points with `|λ| ≤ radius`.
    pub fn count_within(&self, radius: f64) -> usize {
        self.entries
            .iter()
            .filter(|e| e.lambda.norm() <= radius)
            .count()
    }

    pub fn digest(&self) -> DivisorDigest {
        DivisorDigest {
            alpha: self.params.alpha(),
            points: self.len(),
            total_multiplicity: self.total_multiplicity(),
            max_multiplicity: self.entries.iter().map(|e| e.mult).max().unwrap_or(0),
            max_modulus: self
                .entries
                .iter()
                .map(|e| e.lambda.norm())
                .fold(0.0, f64::max),
        }
    }

    fn scale(&self) -> f64 {
        self.params.alpha().sqrt()
    }
}

fn point_cmp(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Short description of a divisor for reports.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorDigest {
    pub alpha: f64,
    pub points: usize,
    pub total_multiplicity: usize,
    pub max_multiplicity: usize,
    pub max_modulus: f64,
}

/// Finite stand-in for ℂ: the disc `|z| ≤ radius`, probed on the square grid
/// `grid_step · ℤ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    radius: f64,
    grid_step: f64,
}

impl Window {
    pub fn new(radius: f64, grid_step: f64) -> Result<Self> {
        if radius <= 0.0 || !radius.is_finite() {
            return Err(FockError::InvalidWindow(format!(
                "radius must be positive, got {radius}"
            )));
        }
        if grid_step <= 0.0 || !grid_step.is_finite() {
            return Err(FockError::InvalidWindow(format!(
                "grid step must be positive, got {grid_step}"
            )));
        }
        if grid_step > radius / 10.0 {
            return Err(FockError::InvalidWindow(format!(
                "grid step {grid_step} exceeds radius/10 = {}",
                radius / 10.0
            )));
        }
        Ok(Self { radius, grid_step })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }
}

/// Enlarge (`Plus`) or shrink (`Minus`) the discs by `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Normalized radius `√m ± c_u`, absent when the shrunk radius is not positive.
#[inline]
fn normalized_radius(mult: usize, c_u: f64, sign: Sign) -> Option<f64> {
    let base = (mult as f64).sqrt();
    match sign {
        Sign::Plus => Some(base + c_u),
        Sign::Minus => {
            let r = base - c_u;
            (r > 0.0).then_some(r)
        }
    }
}

/// Radius `√(m/α) ± C` of the disc attached to `entry`. With `Sign::Minus`
/// the entry is excluded (None) unless `m > αC²`.
pub fn disc_radius(entry: &DivisorEntry, params: &FockParams, c: f64, sign: Sign) -> Option<f64> {
    let s = params.alpha().sqrt();
    normalized_radius(entry.mult, c * s, sign).map(|r| r / s)
}

/// Normalized disc: centre `√α λ`, radius `√m ± C√α`.
#[derive(Clone, Copy, Debug)]
struct NDisc {
    centre: Complex64,
    radius: f64,
}

fn normalized_discs(x: &Divisor, c: f64, sign: Sign) -> Vec<NDisc> {
    let s = x.scale();
    let c_u = c * s;
    x.entries
        .iter()
        .filter_map(|e| {
            normalized_radius(e.mult, c_u, sign).map(|radius| NDisc {
                centre: e.lambda * s,
                radius,
            })
        })
        .collect()
}

/// Grid over the annulus `hole ≤ |u| ≤ R` in normalized units. Yields the
/// integer grid index with the normalized point.
struct NGrid {
    pitch: f64,
    half: i64,
    radius: f64,
    hole: f64,
}

impl NGrid {
    fn new(x: &Divisor, w: &Window, hole_radius: f64) -> Self {
        let s = x.scale();
        let pitch = w.grid_step * s;
        let radius = w.radius * s;
        Self {
            pitch,
            half: (radius / pitch).floor() as i64,
            radius,
            hole: hole_radius * s,
        }
    }

    #[inline]
    fn point(&self, i: i64, j: i64) -> Option<Complex64> {
        let u = Complex64::new(i as f64 * self.pitch, j as f64 * self.pitch);
        let r = u.norm();
        (r <= self.radius && r >= self.hole).then_some(u)
    }

    /// Discs that can touch the probed region.
    fn relevant(&self, discs: &[NDisc]) -> Vec<NDisc> {
        discs
            .iter()
            .copied()
            .filter(|d| d.centre.norm() - d.radius < self.radius)
            .collect()
    }
}

fn count_at(discs: &[NDisc], u: Complex64) -> usize {
    discs
        .iter()
        .filter(|d| (u - d.centre).norm() < d.radius)
        .count()
}

fn covered(discs: &[NDisc], u: Complex64) -> bool {
    discs.iter().any(|d| (u - d.centre).norm() < d.radius)
}

/// Number of discs `D(λ, √(m/α))` containing `z`.
pub fn overlap_count_at(x: &Divisor, z: Complex64) -> usize {
    let discs = normalized_discs(x, 0.0, Sign::Plus);
    count_at(&discs, z * x.scale())
}

/// Largest overlap count over the window grid; a lower estimate of the
/// supremum over ℂ.
pub fn max_overlap(x: &Divisor, w: &Window) -> usize {
    let grid = NGrid::new(x, w, 0.0);
    let discs = grid.relevant(&normalized_discs(x, 0.0, Sign::Plus));
    (-grid.half..=grid.half)
        .into_par_iter()
        .map(|i| {
            (-grid.half..=grid.half)
                .filter_map(|j| grid.point(i, j))
                .map(|u| count_at(&discs, u))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Grid points of the annulus `hole_radius ≤ |z| ≤ R` lying in none of the
/// discs `D(λ, √(m/α) ± C)`, in row-major grid order.
pub fn coverage_defect(
    x: &Divisor,
    c: f64,
    sign: Sign,
    w: &Window,
    hole_radius: f64,
) -> Result<Vec<Complex64>> {
    if !(0.0..w.radius).contains(&hole_radius) {
        return Err(FockError::InvalidWindow(format!(
            "hole radius {hole_radius} must lie in [0, {})",
            w.radius
        )));
    }
    let grid = NGrid::new(x, w, hole_radius);
    let discs = grid.relevant(&normalized_discs(x, c, sign));
    let step = w.grid_step;
    let rows: Vec<Vec<Complex64>> = (-grid.half..=grid.half)
        .into_par_iter()
        .map(|i| {
            (-grid.half..=grid.half)
                .filter(|&j| matches!(grid.point(i, j), Some(u) if !covered(&discs, u)))
                .map(|j| Complex64::new(i as f64 * step, j as f64 * step))
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Outcome of a pairwise disjointness check.
#[derive(Clone, Debug, PartialEq)]
pub struct Disjointness {
    pub disjoint: bool,
    /// Entry indices of the first overlapping pair, in scan order.
    pub violation: Option<(usize, usize)>,
}

/// Whether the discs `D(λ, √(m/α) ± C)` are pairwise disjoint. Entries whose
/// shrunk radius is absent are skipped; tangent discs count as disjoint.
pub fn pairwise_disjoint(x: &Divisor, c: f64, sign: Sign) -> Disjointness {
    let s = x.scale();
    let c_u = c * s;
    let discs: Vec<(usize, NDisc)> = x
        .entries
        .iter()
        .enumerate()
        .filter_map(|(i, e)| {
            normalized_radius(e.mult, c_u, sign).map(|radius| {
                (
                    i,
                    NDisc {
                        centre: e.lambda * s,
                        radius,
                    },
                )
            })
        })
        .collect();
    for (a, (ia, da)) in discs.iter().enumerate() {
        for (ib, db) in &discs[a + 1..] {
            if (da.centre - db.centre).norm() < da.radius + db.radius {
                return Disjointness {
                    disjoint: false,
                    violation: Some((*ia, *ib)),
                };
            }
        }
    }
    Disjointness {
        disjoint: true,
        violation: None,
    }
}

/// An existentially quantified condition tested over a finite list of `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExistsVerdict {
    pub holds: bool,
    /// Smallest listed `C` for which the condition holds.
    pub witness: Option<f64>,
}

/// Coverage by the shrunk discs for one `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverageAtC {
    pub c: f64,
    pub holds: bool,
    pub uncovered: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropositionVerdict {
    pub holds: bool,
    pub hole_radius: f64,
    pub uncovered: Vec<Complex64>,
}

/// Window verdicts for the sampling/interpolation/uniqueness conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometryVerdicts {
    /// Window estimate (lower bound) of the overlap supremum.
    pub finite_overlap_bound: usize,
    /// Enlarged discs cover the whole window for some listed `C`.
    pub sampling_necessary: ExistsVerdict,
    /// Shrunk discs (entries with `m > αC²`) cover the annulus, per `C`.
    pub sampling_sufficient: Vec<CoverageAtC>,
    /// Shrunk discs pairwise disjoint for some listed `C`.
    pub interpolation_necessary: ExistsVerdict,
    /// Enlarged discs pairwise disjoint for some listed `C`.
    pub interpolation_sufficient: ExistsVerdict,
    /// Unmodified discs cover the annulus outside the hole.
    pub proposition: PropositionVerdict,
    pub corollary_consistent: bool,
    pub windowed_points: usize,
}

impl GeometryVerdicts {
    pub fn sampling_sufficient_all(&self) -> bool {
        self.sampling_sufficient.iter().all(|v| v.holds)
    }
}

fn first_witness(
    c_list: &[f64],
    mut test: impl FnMut(f64) -> Result<bool>,
) -> Result<ExistsVerdict> {
    for &c in c_list {
        if test(c)? {
            return Ok(ExistsVerdict {
                holds: true,
                witness: Some(c),
            });
        }
    }
    Ok(ExistsVerdict {
        holds: false,
        witness: None,
    })
}

/// Evaluate all geometric conditions on the window.
///
/// Universal quantifiers over `C` are reported per listed value; existential
/// ones report the smallest listed witness.
pub fn theorem_verdicts(
    x: &Divisor,
    w: &Window,
    c_list: &[f64],
    hole_radius: f64,
) -> Result<GeometryVerdicts> {
    if c_list.is_empty() {
        return Err(FockError::InvalidArgument("C list must be nonempty".into()));
    }
    if c_list.iter().any(|c| *c <= 0.0 || !c.is_finite()) {
        return Err(FockError::InvalidArgument(
            "C values must be positive".into(),
        ));
    }
    if c_list.windows(2).any(|p| p[0] > p[1]) {
        return Err(FockError::InvalidArgument(
            "C list must be sorted ascending".into(),
        ));
    }
    let finite_overlap_bound = max_overlap(x, w);
    let sampling_necessary = first_witness(c_list, |c| {
        Ok(coverage_defect(x, c, Sign::Plus, w, 0.0)?.is_empty())
    })?;
    let sampling_sufficient = c_list
        .iter()
        .map(|&c| {
            let uncovered = coverage_defect(x, c, Sign::Minus, w, hole_radius)?;
            Ok(CoverageAtC {
                c,
                holds: uncovered.is_empty(),
                uncovered,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let interpolation_necessary =
        first_witness(
            c_list,
            |c| Ok(pairwise_disjoint(x, c, Sign::Minus).disjoint),
        )?;
    let interpolation_sufficient =
        first_witness(c_list, |c| Ok(pairwise_disjoint(x, c, Sign::Plus).disjoint))?;
    let uncovered = coverage_defect(x, 0.0, Sign::Plus, w, hole_radius)?;
    let proposition = PropositionVerdict {
        holds: uncovered.is_empty(),
        hole_radius,
        uncovered,
    };
    let s = x.scale();
    let windowed_points = x
        .entries
        .iter()
        .filter(|e| (e.lambda * s).norm() <= w.radius * s)
        .count();
    let both = sampling_sufficient.iter().all(|v| v.holds) && interpolation_sufficient.holds;
    let corollary_consistent = windowed_points < 2 || !both;
    Ok(GeometryVerdicts {
        finite_overlap_bound,
        sampling_necessary,
        sampling_sufficient,
        interpolation_necessary,
        interpolation_sufficient,
        proposition,
        corollary_consistent,
        windowed_points,
    })
}

/// Change of variable `z ↦ √α z`: returns the divisor at α = 1 with the same
/// multiplicities.
pub fn rescale_to_unit_alpha(x: &Divisor) -> Divisor {
    let s = x.scale();
    Divisor {
        params: FockParams::unit(),
        entries: x
            .entries
            .iter()
            .map(|e| DivisorEntry {
                lambda: e.lambda * s,
                mult: e.mult,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate_lattice;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn div(alpha: f64, pts: &[(f64, f64, usize)]) -> Divisor {
        Divisor::new(
            FockParams::new(alpha).unwrap(),
            pts.iter()
                .map(|&(re, im, mult)| DivisorEntry {
                    lambda: c(re, im),
                    mult,
                })
                .collect(),
        )
        .unwrap()
    }

    /// Brute-force membership straight from the definition of the open disc.
    fn brute_count(x: &Divisor, z: Complex64) -> usize {
        x.entries()
            .iter()
            .filter(|e| (z - e.lambda).norm() < (e.mult as f64 / x.params().alpha()).sqrt())
            .count()
    }

    #[test]
    fn divisor_invariants() {
        let p = FockParams::unit();
        let bad = Divisor::new(
            p,
            vec![DivisorEntry {
                lambda: c(0.0, 0.0),
                mult: 0,
            }],
        );
        assert!(bad.is_err());
        let dup = Divisor::new(
            p,
            vec![
                DivisorEntry {
                    lambda: c(1.0, 0.0),
                    mult: 1,
                },
                DivisorEntry {
                    lambda: c(1.0, 0.0),
                    mult: 2,
                },
            ],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn merging_sums_multiplicities_in_first_occurrence_order() {
        let p = FockParams::unit();
        let (x, merges) = Divisor::merging(
            p,
            vec![
                DivisorEntry {
                    lambda: c(2.0, 0.0),
                    mult: 1,
                },
                DivisorEntry {
                    lambda: c(1.0, 0.0),
                    mult: 1,
                },
                DivisorEntry {
                    lambda: c(2.0, 0.0),
                    mult: 3,
                },
            ],
        )
        .unwrap();
        assert_eq!(
            x.entries()[0],
            DivisorEntry {
                lambda: c(2.0, 0.0),
                mult: 4
            }
        );
        assert_eq!(
            x.entries()[1],
            DivisorEntry {
                lambda: c(1.0, 0.0),
                mult: 1
            }
        );
        assert_eq!(merges.len(), 1);
        assert_eq!(merges[0].occurrences, 2);
    }

    #[test]
    fn disc_radius_examples() {
        let p = FockParams::unit();
        let e4 = DivisorEntry {
            lambda: c(0.0, 0.0),
            mult: 4,
        };
        let e1 = DivisorEntry {
            lambda: c(0.0, 0.0),
            mult: 1,
        };
        assert_eq!(disc_radius(&e4, &p, 0.0, Sign::Plus), Some(2.0));
        assert_eq!(disc_radius(&e4, &p, 1.0, Sign::Minus), Some(1.0));
        assert_eq!(disc_radius(&e1, &p, 2.0, Sign::Minus), None);
        assert_eq!(disc_radius(&e4, &p, 2.0, Sign::Minus), None);
    }

    #[test]
    fn overlap_count_examples() {
        let x = div(1.0, &[(0.0, 0.0, 1), (1.0, 0.0, 1)]);
        assert_eq!(overlap_count_at(&x, c(0.5, 0.0)), 2);
        let x = div(1.0, &[(0.0, 0.0, 1)]);
        assert_eq!(overlap_count_at(&x, c(2.0, 0.0)), 0);
        let x = div(1.0, &[(0.0, 0.0, 4), (3.0, 0.0, 1)]);
        for z in [c(2.5, 0.0), c(1.9, 0.0), c(0.0, 0.0), c(2.0, 0.0)] {
            assert_eq!(overlap_count_at(&x, z), brute_count(&x, z));
        }
        assert_eq!(overlap_count_at(&x, c(2.5, 0.0)), 1);
        assert_eq!(overlap_count_at(&x, c(1.9, 0.0)), 1);
    }

    #[test]
    fn max_overlap_examples() {
        let w = Window::new(5.0, 0.05).unwrap();
        assert_eq!(max_overlap(&div(1.0, &[(0.3, 0.2, 3)]), &w), 1);

        let lat = generate_lattice(FockParams::unit(), 1.0, 1, 7.0)
            .unwrap()
            .divisor;
        let m = max_overlap(&lat, &w);
        // brute force over the same grid
        let mut brute = 0;
        for i in -100..=100 {
            for j in -100..=100 {
                let z = c(i as f64 * 0.05, j as f64 * 0.05);
                if z.norm() <= 5.0 {
                    brute = brute.max(brute_count(&lat, z));
                }
            }
        }
        assert_eq!(m, brute);
        assert_eq!(m, 4);
    }

    #[test]
    fn coverage_examples() {
        let x = div(1.0, &[(0.0, 0.0, 9)]);
        let w = Window::new(2.5, 0.05).unwrap();
        assert!(coverage_defect(&x, 0.0, Sign::Plus, &w, 0.0)
            .unwrap()
            .is_empty());

        let w = Window::new(4.0, 0.05).unwrap();
        let d = coverage_defect(&x, 0.0, Sign::Plus, &w, 0.0).unwrap();
        assert!(!d.is_empty());
        assert!(d.iter().all(|z| z.norm() >= 3.0));

        let lat = generate_lattice(FockParams::unit(), 1.0, 1, 7.0)
            .unwrap()
            .divisor;
        let w = Window::new(5.0, 0.05).unwrap();
        let d = coverage_defect(&lat, 0.5, Sign::Minus, &w, 0.0).unwrap();
        assert!(d.iter().any(|z| (z - c(0.5, 0.5)).norm() < 1e-9));
        // every reported point is geometrically uncovered
        for z in &d {
            assert!(lat.entries().iter().all(|e| (z - e.lambda).norm() >= 0.5));
        }

        assert!(coverage_defect(&x, 0.0, Sign::Plus, &w, 5.0).is_err());
    }

    #[test]
    fn hole_excludes_central_points() {
        let x = div(1.0, &[(3.0, 0.0, 1)]);
        let w = Window::new(2.0, 0.1).unwrap();
        let d = coverage_defect(&x, 0.0, Sign::Plus, &w, 1.0).unwrap();
        assert!(d.iter().all(|z| z.norm() >= 1.0 - 1e-12));
    }

    #[test]
    fn disjoint_examples() {
        let x = div(1.0, &[(0.0, 0.0, 1), (4.0, 0.0, 1)]);
        assert!(pairwise_disjoint(&x, 1.0, Sign::Plus).disjoint);
        let x = div(1.0, &[(0.0, 0.0, 1), (3.0, 0.0, 1)]);
        let r = pairwise_disjoint(&x, 1.0, Sign::Plus);
        assert!(!r.disjoint);
        assert_eq!(r.violation, Some((0, 1)));
        let x = div(1.0, &[(0.0, 0.0, 16), (5.0, 0.0, 4)]);
        assert!(pairwise_disjoint(&x, 1.0, Sign::Minus).disjoint);
        // tangency is disjoint
        let x = div(1.0, &[(0.0, 0.0, 1), (2.0, 0.0, 1)]);
        assert!(pairwise_disjoint(&x, 0.0, Sign::Plus).disjoint);
    }

    #[test]
    fn verdicts_on_unit_lattice() {
        let lat = generate_lattice(FockParams::unit(), 1.0, 1, 5.0)
            .unwrap()
            .divisor;
        let w = Window::new(5.0, 0.05).unwrap();
        let v = theorem_verdicts(&lat, &w, &[0.25, 0.5, 1.0], 0.0).unwrap();
        assert!(v.sampling_necessary.holds);
        assert!(!v.interpolation_sufficient.holds);
        assert_eq!(v.interpolation_necessary.witness, Some(0.5));
        assert!(v.corollary_consistent);
        assert_eq!(v.finite_overlap_bound, 4);

        let w1 = Window::new(5.0, 0.05).unwrap();
        let v1 = theorem_verdicts(&lat, &w1, &[1.0], 0.0).unwrap();
        assert_eq!(v1.sampling_necessary.witness, Some(1.0));
    }

    #[test]
    fn verdicts_on_sparse_points() {
        let pts: Vec<(f64, f64, usize)> = (-2..=2)
            .flat_map(|i| (-2..=2).map(move |j| (10.0 * i as f64, 10.0 * j as f64, 1)))
            .collect();
        let x = div(1.0, &pts);
        let w = Window::new(15.0, 0.25).unwrap();
        let v = theorem_verdicts(&x, &w, &[1.0], 0.0).unwrap();
        assert!(v.interpolation_sufficient.holds);
        assert!(!v.sampling_necessary.holds);
        assert!(v.corollary_consistent);
    }

    #[test]
    fn verdicts_reject_bad_c_list() {
        let x = div(1.0, &[(0.0, 0.0, 1)]);
        let w = Window::new(2.0, 0.1).unwrap();
        assert!(theorem_verdicts(&x, &w, &[], 0.0).is_err());
        assert!(theorem_verdicts(&x, &w, &[1.0, 0.5], 0.0).is_err());
    }

    #[test]
    fn window_invariant() {
        assert!(Window::new(1.0, 0.2).is_err());
        assert!(Window::new(1.0, 0.1).is_ok());
        assert!(Window::new(0.0, 0.0).is_err());
    }

    #[test]
    fn rescale_examples() {
        let x = div(1.0, &[(1.0, 2.0, 3)]);
        assert_eq!(rescale_to_unit_alpha(&x), x);
        let x = div(4.0, &[(1.0, 0.0, 4)]);
        let y = rescale_to_unit_alpha(&x);
        assert_eq!(y.params().alpha(), 1.0);
        assert_eq!(
            y.entries()[0],
            DivisorEntry {
                lambda: c(2.0, 0.0),
                mult: 4
            }
        );
        let before = disc_radius(&x.entries()[0], x.params(), 0.0, Sign::Plus).unwrap();
        let after = disc_radius(&y.entries()[0], y.params(), 0.0, Sign::Plus).unwrap();
        assert_relative_eq!(before, 1.0);
        assert_relative_eq!(after, 2.0 * before);
    }

    #[test]
    fn coverage_monotone_in_c() {
        let x = div(
            1.0,
            &[
                (0.0, 0.0, 4),
                (2.5, 1.0, 2),
                (-1.5, -2.0, 9),
                (1.0, -3.0, 1),
            ],
        );
        let w = Window::new(5.0, 0.1).unwrap();
        let mut prev_plus: Option<Vec<Complex64>> = None;
        let mut prev_minus: Option<Vec<Complex64>> = None;
        for cc in [0.0, 0.25, 0.5, 1.0, 2.0] {
            let plus = coverage_defect(&x, cc, Sign::Plus, &w, 0.0).unwrap();
            let minus = coverage_defect(&x, cc, Sign::Minus, &w, 0.0).unwrap();
            if let Some(p) = &prev_plus {
                assert!(plus.iter().all(|z| p.contains(z)));
            }
            if let Some(m) = &prev_minus {
                assert!(m.iter().all(|z| minus.contains(z)));
            }
            prev_plus = Some(plus);
            prev_minus = Some(minus);
        }
    }
}
