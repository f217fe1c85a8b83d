//! Measured-distance kernel: Lipschitz-potential distances, pointed
//! Hausdorff distance, their composite within a common ambient space, and
//! an exhaustive small-space Gromov-Hausdorff oracle.

mod gh;
mod lp;

pub use gh::{gh_exact_small, Correspondence, GhMatch, GH_SIZE_CAP};
pub use lp::{lipschitz_distance, LipschitzPotential, LpOutcome};

use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, PointedMeasuredSpace};

/// Absolute tolerance to which [`star_distance`] brackets its infimum.
pub const STAR_BISECTION_TOL: f64 = 1e-6;

/// Fallback value of [`star_distance`] when no admissible epsilon exists.
pub const STAR_FALLBACK: f64 = 0.5;

/// Pointed Hausdorff distance between two subsets of one ambient space:
/// the infimum over `eps > 0` such that each set, intersected with the
/// closed ball `B(z, 1/eps)`, lies in the closed `eps`-neighbourhood of
/// the other.
///
/// The predicate is monotone in `eps` and can only change value at
/// finitely many thresholds (the point-to-set distances and the
/// reciprocals of distances to `z`), so the infimum is found exactly by
/// scanning those candidates. It never exceeds the plain Hausdorff
/// distance.
pub fn pointed_hausdorff(
    space: &FiniteMetricSpace,
    z: usize,
    a: &[usize],
    b: &[usize],
) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("pointed_hausdorff: empty set".into()));
    }
    if z >= space.len() {
        return Err(Error::Domain(format!("pointed_hausdorff: basepoint {z} out of range")));
    }
    // per point: (distance to z, distance to the other set)
    let stats = |set: &[usize], other: &[usize]| -> Result<Vec<(f64, f64)>> {
        set.iter()
            .map(|&i| Ok((space.d(z, i), space.dist_to_set(i, other)?)))
            .collect()
    };
    let sa = stats(a, b)?;
    let sb = stats(b, a)?;

    let mut candidates: Vec<f64> = vec![0.0];
    for (dz, dset) in sa.iter().chain(&sb) {
        candidates.push(*dset);
        if *dz > 0.0 {
            candidates.push(1.0 / dz);
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // holds(eps) with the ball membership either closed (at eps) or strict
    // (just above eps)
    let holds = |eps: f64, strict_ball: bool| -> bool {
        let inv = if eps == 0.0 { f64::INFINITY } else { 1.0 / eps };
        let side = |stats: &[(f64, f64)]| {
            stats.iter().all(|&(dz, dset)| {
                let in_ball = if strict_ball { dz < inv } else { dz <= inv };
                !in_ball || dset <= eps
            })
        };
        side(&sa) && side(&sb)
    };

    for &c in &candidates {
        if holds(c, false) || holds(c, true) {
            return Ok(c);
        }
    }
    // the predicate always holds for large eps, so the scan cannot fall out
    Err(Error::Solver("pointed_hausdorff: candidate scan exhausted".into()))
}

/// The infimum over `eps` in (0, 1/2) with
/// `lipschitz_distance(mu, nu, 1/eps, 1/eps, x) < eps`, bracketed by
/// bisection to [`STAR_BISECTION_TOL`]; returns [`STAR_FALLBACK`] when no
/// admissible `eps` exists.
///
/// Shrinking `eps` simultaneously enlarges the admissible potential class
/// and tightens the comparison, so the predicate is monotone in `eps` and
/// bisection is valid.
pub fn star_distance(
    space: &FiniteMetricSpace,
    mu: &[f64],
    nu: &[f64],
    x: usize,
) -> Result<f64> {
    let predicate = |eps: f64| -> Result<bool> {
        let out = lipschitz_distance(space, mu, nu, 1.0 / eps, 1.0 / eps, x)?;
        Ok(out.value < eps)
    };
    let mut hi = 0.5 - 1e-12;
    if !predicate(hi)? {
        return Ok(STAR_FALLBACK);
    }
    let mut lo = 0.0;
    while hi - lo > STAR_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if predicate(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `d_H(z)(supp A, supp B) + F_z(w_A, w_B)` for two pointed measured
/// spaces living in one ambient space with one basepoint: an upper bound
/// for the pointed measured Gromov-Hausdorff distance over all embeddings.
pub fn pmgh_in_common_space(
    a: &PointedMeasuredSpace,
    b: &PointedMeasuredSpace,
) -> Result<f64> {
    if a.base().space() != b.base().space() {
        return Err(Error::Domain(
            "pmgh_in_common_space: the two spaces do not share an ambient space".into(),
        ));
    }
    if a.basepoint() != b.basepoint() {
        return Err(Error::Domain(format!(
            "pmgh_in_common_space: basepoint mismatch ({} vs {})",
            a.basepoint(),
            b.basepoint()
        )));
    }
    let z = a.basepoint();
    let dh = pointed_hausdorff(a.base().space(), z, a.base().support(), b.base().support())?;
    let star = star_distance(a.base().space(), a.base().weights(), b.base().weights(), z)?;
    Ok(dh + star)
}
