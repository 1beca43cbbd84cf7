//! Divisor families for the experiments.
//!
//! - square lattices with constant multiplicity (bounded-multiplicity control),
//! - covering rings: multiplicities growing with |λ|, shrunk discs covering a
//!   disc around the origin,
//! - disjoint rings: multiplicities growing with |λ|, enlarged discs pairwise
//!   disjoint.
//!
//! Ring schedules are built in the normalized variable `u = √α z` and mapped
//! back. Each generator checks its contract with [`crate::geometry`] before
//! returning.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::fock::FockParams;
use crate::geometry::{coverage_defect, pairwise_disjoint, Divisor, DivisorEntry, Sign, Window};

/// Growth rate of the normalized disc radius with the distance to the origin.
const RING_GROWTH: f64 = 0.5;
/// Smallest normalized effective radius used by the covering schedule.
const MIN_EFFECTIVE_RADIUS: f64 = 1.0;
/// Normalized clearance between enlarged discs in the disjoint schedule.
const DISJOINT_GAP: f64 = 0.1;

/// One ring of a generated schedule (original units).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ring {
    pub radius: f64,
    pub count: usize,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Lattice { spacing: f64, mult: usize },
    CoveringRings { c: f64 },
    DisjointRings { c: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Lattice { .. } => "lattice",
            Family::CoveringRings { .. } => "covering-rings",
            Family::DisjointRings { .. } => "disjoint-rings",
        }
    }
}

/// A generated divisor together with the schedule that produced it.
#[derive(Clone, Debug)]
pub struct Generated {
    pub divisor: Divisor,
    pub family: Family,
    pub window: f64,
    /// Rings in emission order; a centre point appears as a ring of radius 0.
    pub rings: Vec<Ring>,
}

/// Square lattice `dℤ + idℤ` clipped to `|λ| ≤ R`, constant multiplicity.
pub fn generate_lattice(
    params: FockParams,
    spacing: f64,
    mult: usize,
    window: f64,
) -> Result<Generated> {
    if spacing <= 0.0 || !spacing.is_finite() {
        return Err(FockError::InvalidArgument(format!(
            "spacing must be positive, got {spacing}"
        )));
    }
    if mult == 0 {
        return Err(FockError::InvalidArgument(
            "multiplicity must be at least 1".into(),
        ));
    }
    if window < 0.0 || !window.is_finite() {
        return Err(FockError::InvalidArgument(format!(
            "window must be nonnegative, got {window}"
        )));
    }
    let n = (window / spacing).floor() as i64;
    let mut entries = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let lambda = Complex64::new(i as f64 * spacing, j as f64 * spacing);
            if lambda.norm() <= window {
                entries.push(DivisorEntry { lambda, mult });
            }
        }
    }
    Ok(Generated {
        divisor: Divisor::new(params, entries)?,
        family: Family::Lattice { spacing, mult },
        window,
        rings: Vec::new(),
    })
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(FockError::InvalidArgument(format!(
            "C must be positive, got {c}"
        )))
    }
}

fn check_window(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(FockError::InvalidArgument(format!(
            "window must be positive, got {r}"
        )))
    }
}

fn ring_points(radius_u: f64, count: usize, offset: f64) -> impl Iterator<Item = Complex64> {
    (0..count).map(move |t| {
        if radius_u == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(radius_u, offset + TAU * t as f64 / count as f64)
        }
    })
}

fn emit(params: FockParams, rings_u: &[(f64, usize, usize)]) -> Result<(Divisor, Vec<Ring>)> {
    let s = params.alpha().sqrt();
    let mut entries = Vec::new();
    let mut rings = Vec::with_capacity(rings_u.len());
    for (n, &(radius_u, count, mult)) in rings_u.iter().enumerate() {
        // stagger alternate rings by half a step
        let offset = if n % 2 == 1 { PI / count as f64 } else { 0.0 };
        entries.extend(ring_points(radius_u, count, offset).map(|u| DivisorEntry {
            lambda: u / s,
            mult,
        }));
        rings.push(Ring {
            radius: radius_u / s,
            count,
            mult,
        });
    }
    Ok((Divisor::new(params, entries)?, rings))
}

/// Grid used to validate the covering contract.
pub fn covering_check_window(window: f64) -> Result<Window> {
    Window::new(window, window / 100.0)
}

/// Rings of points whose shrunk discs `D(λ, √(m/α) − C)` cover `{|z| ≤ R}`.
///
/// Schedule (normalized): a centre point, then rings whose effective radius
/// `e = max(1, |inner edge|/2)` grows with the distance; each ring covers a band
/// of half-width `e/2`, consecutive bands overlap, and the number of points per
/// ring is the smallest keeping every band cell within `0.95 e` of its centre.
/// Multiplicities `m = ⌈(e + C√α)²⌉` are nondecreasing in |λ|.
pub fn generate_covering_rings(params: FockParams, c: f64, window: f64) -> Result<Generated> {
    check_c(c)?;
    check_window(window)?;
    let s = params.alpha().sqrt();
    let c_u = c * s;
    let r_u = window * s;
    let mult_for = |e: f64| ((e + c_u) * (e + c_u)).ceil() as usize;

    let mut rings_u = vec![(0.0, 1, mult_for(MIN_EFFECTIVE_RADIUS))];
    let mut outer = 0.9 * MIN_EFFECTIVE_RADIUS;
    while outer < r_u {
        let e = MIN_EFFECTIVE_RADIUS.max(RING_GROWTH * outer);
        let h = 0.5 * e;
        let rho = outer + 0.8 * h;
        let reach = 0.95 * e;
        let corner = |k: usize| {
            let ang = PI / k as f64;
            [rho - h, rho + h]
                .iter()
                .map(|&r| {
                    (rho * rho + r * r - 2.0 * rho * r * ang.cos())
                        .max(0.0)
                        .sqrt()
                })
                .fold(0.0, f64::max)
        };
        let mut k = 3;
        while corner(k) >= reach {
            k += 1;
        }
        rings_u.push((rho, k, mult_for(e)));
        outer = rho + 0.9 * h;
    }
    let (divisor, rings) = emit(params, &rings_u)?;
    let w = covering_check_window(window)?;
    let defect = coverage_defect(&divisor, c, Sign::Minus, &w, 0.0)?;
    if !defect.is_empty() {
        return Err(FockError::ContractViolation(format!(
            "covering rings leave {} grid points uncovered",
            defect.len()
        )));
    }
    Ok(Generated {
        divisor,
        family: Family::CoveringRings { c },
        window,
        rings,
    })
}

/// Rings of points whose enlarged discs `D(λ, √(m/α) + C)` are pairwise
/// disjoint, with `m = max(1, ⌊(|λ|√α/2)²⌋)` growing along the family.
///
/// Consecutive rings are separated by the sum of their enlarged radii plus a
/// gap, and each ring carries as many points as its circumference allows.
pub fn generate_disjoint_rings(params: FockParams, c: f64, window: f64) -> Result<Generated> {
    check_c(c)?;
    check_window(window)?;
    let s = params.alpha().sqrt();
    let c_u = c * s;
    let r_u = window * s;
    let mult_at = |rho: f64| ((RING_GROWTH * rho).powi(2).floor() as usize).max(1);
    let reach_at = |rho: f64| (mult_at(rho) as f64).sqrt() + c_u;

    let mut rings_u = vec![(0.0, 1, 1)];
    let mut prev_rho = 0.0;
    let mut prev_reach = 1.0 + c_u;
    loop {
        let mut rho = prev_rho + 2.0 * prev_reach + DISJOINT_GAP;
        loop {
            let need = prev_rho + prev_reach + reach_at(rho) + DISJOINT_GAP;
            if need <= rho {
                break;
            }
            rho = need;
        }
        if rho > r_u {
            break;
        }
        let reach = reach_at(rho);
        let ratio = (reach + 0.5 * DISJOINT_GAP) / rho;
        let count = if ratio >= 1.0 {
            1
        } else {
            ((PI / ratio.asin()).floor() as usize).max(1)
        };
        rings_u.push((rho, count, mult_at(rho)));
        prev_rho = rho;
        prev_reach = reach;
    }
    let (divisor, rings) = emit(params, &rings_u)?;
    let check = pairwise_disjoint(&divisor, c, Sign::Plus);
    if !check.disjoint {
        return Err(FockError::ContractViolation(format!(
            "enlarged discs overlap at entries {:?}",
            check.violation
        )));
    }
    Ok(Generated {
        divisor,
        family: Family::DisjointRings { c },
        window,
        rings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::max_overlap;

    #[test]
    fn lattice_examples() {
        let p = FockParams::unit();
        assert_eq!(generate_lattice(p, 1.0, 1, 1.5).unwrap().divisor.len(), 9);
        let g = generate_lattice(p, 10.0, 1, 5.0).unwrap();
        assert_eq!(g.divisor.len(), 1);
        assert_eq!(g.divisor.entries()[0].lambda, Complex64::new(0.0, 0.0));
        assert!(generate_lattice(p, 0.0, 1, 5.0).is_err());
        assert!(generate_lattice(p, 1.0, 0, 5.0).is_err());
    }

    #[test]
    fn covering_rings_contract() {
        for &(alpha, c, r) in &[(1.0, 1.0, 8.0), (2.0, 0.5, 6.0), (0.5, 1.5, 10.0)] {
            let p = FockParams::new(alpha).unwrap();
            let g = generate_covering_rings(p, c, r).unwrap();
            let w = covering_check_window(r).unwrap();
            assert!(coverage_defect(&g.divisor, c, Sign::Minus, &w, 0.0)
                .unwrap()
                .is_empty());
            // multiplicities nondecreasing in |λ|
            let mut e: Vec<_> = g.divisor.entries().to_vec();
            e.sort_by(|a, b| a.lambda.norm().total_cmp(&b.lambda.norm()));
            assert!(e.windows(2).all(|w| w[0].mult <= w[1].mult));
            assert!(!pairwise_disjoint(&g.divisor, c, Sign::Plus).disjoint);
        }
    }

    #[test]
    fn covering_multiplicities_grow() {
        let g = generate_covering_rings(FockParams::unit(), 1.0, 40.0).unwrap();
        let first = g.rings.first().unwrap().mult;
        let last = g.rings.last().unwrap().mult;
        assert!(last > 20 * first, "{first} -> {last}");
    }

    #[test]
    fn disjoint_rings_contract() {
        for &(alpha, c, r) in &[(1.0, 1.0, 7.0), (2.0, 0.5, 12.0), (0.5, 2.0, 30.0)] {
            let p = FockParams::new(alpha).unwrap();
            let g = generate_disjoint_rings(p, c, r).unwrap();
            assert!(pairwise_disjoint(&g.divisor, c, Sign::Plus).disjoint);
            let w = Window::new(r, r / 100.0).unwrap();
            if g.divisor.count_within(r) >= 2 {
                assert!(!coverage_defect(&g.divisor, c, Sign::Minus, &w, 0.0)
                    .unwrap()
                    .is_empty());
            }
            assert_eq!(max_overlap(&g.divisor, &w), 1);
        }
    }

    #[test]
    fn disjoint_multiplicities_unbounded() {
        let g = generate_disjoint_rings(FockParams::unit(), 1.0, 200.0).unwrap();
        assert!(g.rings.last().unwrap().mult >= 100);
    }

    #[test]
    fn generators_reject_bad_input() {
        let p = FockParams::unit();
        assert!(generate_covering_rings(p, 0.0, 5.0).is_err());
        assert!(generate_disjoint_rings(p, 1.0, -1.0).is_err());
    }
}
