//! Blowup views, per-point multiscale diagnostics, the tube-mass check,
//! and the rectifiable/unrectifiable point classifier.
//!
//! A blowup view at `(x, r)` rescales distances by `1/r` and weights by
//! `1/mass(B(x, r))`, restricted to the ball of radius `K r`; the unit
//! ball of every view carries mass exactly 1. Views stand in for tangent
//! behaviour at a single scale; the profiles walk a decreasing ladder of
//! scales and record, per scale, quasi-path connectivity at the basepoint
//! and the pointed Gromov-Hausdorff distance of a small farthest-point
//! subsample against a uniform grid on [-1, 1] (the flat reference).
//!
//! Finite samples lose all structure below their resolution: a scale `r`
//! is "resolvable" at `x` only when `B(x, r/10)` holds at least two
//! support points, and the connectivity quantifier only ranges over
//! targets at distance at least `r` from the basepoint (pairs below the
//! view's own scale would read sampling noise as disconnection).

use crate::distances::gh_exact_small;
use crate::error::{Error, Result};
use crate::quasipath::{disconnected_targets, quasi_path, QuasiPathCertificate, SeparatingDecomposition};
use crate::space::{FiniteMetricSpace, MeasuredSpace, PointedMeasuredSpace};
use crate::sum::compensated_sum;
use serde::{Deserialize, Serialize};

/// Ball-shrink factor of the resolvability guard: scale `r` is resolvable
/// at `x` when `B(x, r / RESOLVE_DIVISOR)` holds two support points.
pub const RESOLVE_DIVISOR: f64 = 10.0;

/// A rescaled, renormalized pointed view: the finite stand-in for a
/// tangent at one scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlowupView {
    /// Index of the basepoint in the parent space.
    pub center: usize,
    pub scale: f64,
    pub multiplier: f64,
    /// Parent indices of the view members (distance at most `K r` from x).
    pub members: Vec<usize>,
    /// Rescaled member-by-member distances, row-major.
    pub dist: Vec<f64>,
    /// Rescaled member weights (parent weights over the unit-ball mass).
    pub weights: Vec<f64>,
    /// Member-local indices of the unit ball, decided on the parent
    /// distances (so the normalization is exact, not a rescaled compare).
    pub unit_ball: Vec<usize>,
}

impl BlowupView {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.members.len() + j]
    }

    /// Mass of the rescaled unit ball; equals 1 up to summation rounding.
    pub fn unit_ball_mass(&self) -> f64 {
        compensated_sum(self.unit_ball.iter().map(|&i| self.weights[i]))
    }

    /// Member-local index of the basepoint.
    pub fn center_local(&self) -> usize {
        self.members.iter().position(|&i| i == self.center).unwrap()
    }

    /// Rebuild the view as a standalone measured space. The rescaled
    /// submatrix of a valid metric is a valid metric, so no re-validation
    /// happens here.
    pub fn to_measured_space(&self) -> Result<MeasuredSpace> {
        let k = self.members.len();
        let rows: Vec<Vec<f64>> =
            (0..k).map(|i| self.dist[i * k..(i + 1) * k].to_vec()).collect();
        MeasuredSpace::new(FiniteMetricSpace::from_matrix_unchecked(rows), self.weights.clone())
    }
}

/// Blowup of a pointed space at scale `r`, restricted to `B(x, K r)`.
pub fn blowup(p: &PointedMeasuredSpace, r: f64, k_mult: f64) -> Result<BlowupView> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("blowup: scale must be positive, got {r}")));
    }
    if !(k_mult >= 1.0) {
        return Err(Error::Domain(format!("blowup: view multiplier must be >= 1, got {k_mult}")));
    }
    let m = p.base();
    let x = p.basepoint();
    let ball_mass = m.ball_mass(x, r);
    if !(ball_mass > 0.0) {
        return Err(Error::Domain(format!("blowup: B({x}, {r}) carries no mass")));
    }
    let members: Vec<usize> =
        (0..m.len()).filter(|&i| m.d(x, i) <= k_mult * r).collect();
    let k = members.len();
    let mut dist = Vec::with_capacity(k * k);
    for &i in &members {
        for &j in &members {
            dist.push(m.d(i, j) / r);
        }
    }
    let weights: Vec<f64> = members.iter().map(|&i| m.weights()[i] / ball_mass).collect();
    let unit_ball: Vec<usize> = members
        .iter()
        .enumerate()
        .filter(|&(_, &i)| m.d(x, i) <= r)
        .map(|(local, _)| local)
        .collect();
    Ok(BlowupView { center: x, scale: r, multiplier: k_mult, members, dist, weights, unit_ball })
}

/// Specification of the scale ladder `r0 * lambda^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderSpec {
    /// Top scale; `None` means diameter / 4.
    pub r0: Option<f64>,
    /// Ratio between consecutive rungs, in (0, 1).
    pub lambda: f64,
}

impl Default for LadderSpec {
    fn default() -> Self {
        Self { r0: None, lambda: 0.5 }
    }
}

impl LadderSpec {
    /// Materialize the ladder for a space: strictly decreasing, stopping
    /// once no support point can resolve the rung.
    pub fn build(&self, m: &MeasuredSpace) -> Result<Vec<f64>> {
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(Error::Domain(format!(
                "ladder: lambda must be in (0, 1), got {}",
                self.lambda
            )));
        }
        let diam = m.space().full_diameter();
        let r0 = match self.r0 {
            Some(r0) if r0 > 0.0 => r0,
            Some(r0) => {
                return Err(Error::Domain(format!("ladder: r0 must be positive, got {r0}")))
            }
            None => diam / 4.0,
        };
        // least nearest-neighbour distance over the support
        let mut min_nn = f64::INFINITY;
        for &i in m.support() {
            for &j in m.support() {
                if i != j {
                    min_nn = min_nn.min(m.d(i, j));
                }
            }
        }
        let mut ladder = Vec::new();
        let mut r = r0;
        while ladder.len() < 60 {
            ladder.push(r);
            r *= self.lambda;
            if !min_nn.is_finite() || r / RESOLVE_DIVISOR < min_nn {
                break;
            }
        }
        Ok(ladder)
    }
}

/// Whether scale `r` is resolvable at `x`: `B(x, r/10)` holds >= 2
/// support points.
pub fn is_resolvable(m: &MeasuredSpace, x: usize, r: f64) -> bool {
    let limit = r / RESOLVE_DIVISOR;
    let row = m.space().row(x);
    let mut count = 0;
    for &i in m.support() {
        if row[i] <= limit {
            count += 1;
            if count >= 2 {
                return true;
            }
        }
    }
    false
}

/// Per-scale connectivity outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ScaleConnectivity {
    Connected,
    Disconnected { witness: usize, split: SeparatingDecomposition },
    /// Below the sampling resolution at this point.
    Unresolvable,
    /// No target at distance >= r inside the view; nothing to probe.
    NoTargets,
}

impl ScaleConnectivity {
    pub fn is_determinate(&self) -> bool {
        matches!(self, ScaleConnectivity::Connected | ScaleConnectivity::Disconnected { .. })
    }
}

/// Quasi-path connectivity of the blowup views at the basepoint, one
/// outcome per ladder rung.
///
/// The predicate is scale-invariant, so it is evaluated directly on the
/// parent distances restricted to the view members; the result equals the
/// pointed check on the materialized [`BlowupView`]. Targets range over
/// view members at distance >= r from the basepoint. A failing rung
/// carries the separating decomposition of its smallest-index witness.
pub fn connectivity_profile(
    m: &MeasuredSpace,
    x: usize,
    ladder: &[f64],
    delta: f64,
    locality: f64,
    k_mult: f64,
) -> Result<Vec<ScaleConnectivity>> {
    if !m.support().contains(&x) {
        return Err(Error::Domain(format!("connectivity_profile: point {x} not in support")));
    }
    if !(delta > 0.0) || !(locality > 0.0) || !(k_mult >= 1.0) {
        return Err(Error::Domain(
            "connectivity_profile: delta, locality must be positive and K >= 1".into(),
        ));
    }
    let mut out = Vec::with_capacity(ladder.len());
    for &r in ladder {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("connectivity_profile: bad ladder rung {r}")));
        }
        if !is_resolvable(m, x, r) {
            out.push(ScaleConnectivity::Unresolvable);
            continue;
        }
        let members: Vec<usize> = m
            .support()
            .iter()
            .copied()
            .filter(|&i| m.d(x, i) <= k_mult * r)
            .collect();
        let targets: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&y| y != x && m.d(x, y) >= r)
            .collect();
        if targets.is_empty() {
            out.push(ScaleConnectivity::NoTargets);
            continue;
        }
        let failed = if locality >= 1.0 {
            disconnected_targets(m.space(), &members, x, &targets, delta, locality)
        } else {
            let view = view_space(m, &members)?;
            let mut failed = Vec::new();
            for &y in &targets {
                let cert = quasi_path(
                    &view,
                    local_of(&members, x),
                    local_of(&members, y),
                    delta,
                    locality,
                )?;
                if cert.as_split().is_some() {
                    failed.push(y);
                }
            }
            failed
        };
        match failed.first() {
            None => out.push(ScaleConnectivity::Connected),
            Some(&witness) => {
                let split = witness_split(m, &members, x, witness, delta, locality)?;
                out.push(ScaleConnectivity::Disconnected { witness, split });
            }
        }
    }
    Ok(out)
}

fn local_of(members: &[usize], p: usize) -> usize {
    members.iter().position(|&i| i == p).unwrap()
}

fn view_space(m: &MeasuredSpace, members: &[usize]) -> Result<MeasuredSpace> {
    let rows: Vec<Vec<f64>> = members
        .iter()
        .map(|&i| members.iter().map(|&j| m.d(i, j)).collect())
        .collect();
    MeasuredSpace::new(
        FiniteMetricSpace::from_matrix_unchecked(rows),
        members.iter().map(|&i| m.weights()[i]).collect(),
    )
}

/// Separating decomposition for a failing target, in parent indices.
fn witness_split(
    m: &MeasuredSpace,
    members: &[usize],
    x: usize,
    y: usize,
    delta: f64,
    locality: f64,
) -> Result<SeparatingDecomposition> {
    let view = view_space(m, members)?;
    let cert = quasi_path(&view, local_of(members, x), local_of(members, y), delta, locality)?;
    match cert {
        QuasiPathCertificate::Split(s) => Ok(SeparatingDecomposition {
            a_side: s.a_side.into_iter().map(|i| members[i]).collect(),
            b_side: s.b_side.into_iter().map(|i| members[i]).collect(),
            gap: s.gap,
        }),
        QuasiPathCertificate::Path(_) => Err(Error::Solver(
            "witness_split: sweep reported a disconnection the search cannot reproduce".into(),
        )),
    }
}

/// Per-scale flatness: pointed Gromov-Hausdorff distance between a
/// farthest-point subsample of the unit-ball view and a uniform grid on
/// [-1, 1]. `None` marks a degenerate (sub-two-point) view.
pub fn flatness_profile(
    m: &MeasuredSpace,
    x: usize,
    ladder: &[f64],
    subsample: usize,
) -> Result<Vec<Option<f64>>> {
    if !m.support().contains(&x) {
        return Err(Error::Domain(format!("flatness_profile: point {x} not in support")));
    }
    if subsample < 3 || subsample > 7 || subsample % 2 == 0 {
        return Err(Error::Domain(format!(
            "flatness_profile: subsample size must be odd and in 3..=7, got {subsample}"
        )));
    }
    let grid = flat_reference(subsample)?;
    let mut out = Vec::with_capacity(ladder.len());
    for &r in ladder {
        let unit: Vec<usize> = m
            .support()
            .iter()
            .copied()
            .filter(|&i| m.d(x, i) <= r)
            .collect();
        if unit.len() < 2 {
            out.push(None);
            continue;
        }
        let net = farthest_point_net(m.space(), &unit, x, subsample);
        let rows: Vec<Vec<f64>> = net
            .iter()
            .map(|&i| net.iter().map(|&j| m.d(i, j) / r).collect())
            .collect();
        let net_space = FiniteMetricSpace::from_matrix_unchecked(rows);
        let gh = gh_exact_small(&net_space, &grid, Some((0, subsample / 2)))?;
        out.push(Some(gh.distance));
    }
    Ok(out)
}

/// The flat reference model: `m` uniform atoms on [-1, 1].
fn flat_reference(m: usize) -> Result<FiniteMetricSpace> {
    let pts: Vec<Vec<f64>> = (0..m)
        .map(|i| vec![-1.0 + 2.0 * i as f64 / (m - 1) as f64])
        .collect();
    FiniteMetricSpace::from_points(&pts)
}

/// Greedy farthest-point net of `candidates`, seeded at `seed`, of size
/// `min(k, candidates.len())`; ties broken by ascending index.
pub fn farthest_point_net(
    space: &FiniteMetricSpace,
    candidates: &[usize],
    seed: usize,
    k: usize,
) -> Vec<usize> {
    let mut chosen = vec![seed];
    let mut dist: Vec<f64> = candidates.iter().map(|&c| space.d(seed, c)).collect();
    while chosen.len() < k.min(candidates.len()) {
        let mut best = (0usize, f64::NEG_INFINITY);
        for (ci, &c) in candidates.iter().enumerate() {
            if dist[ci] > best.1 && !chosen.contains(&c) {
                best = (ci, dist[ci]);
            }
        }
        if best.1 <= f64::NEG_INFINITY {
            break;
        }
        let new = candidates[best.0];
        chosen.push(new);
        for (ci, &c) in candidates.iter().enumerate() {
            dist[ci] = dist[ci].min(space.d(new, c));
        }
    }
    chosen
}

/// Fraction of the total mass within distance `r` of a polyline given in
/// the ambient coordinate model. Refused for matrix-only spaces.
pub fn tube_mass(m: &MeasuredSpace, polyline: &[Vec<f64>], r: f64) -> Result<f64> {
    let coords = m.space().coords().ok_or_else(|| {
        Error::Unsupported("tube_mass requires a coordinate-backed space".into())
    })?;
    if polyline.is_empty() {
        return Err(Error::Domain("tube_mass: empty polyline".into()));
    }
    if r < 0.0 {
        return Err(Error::Domain(format!("tube_mass: negative radius {r}")));
    }
    for (k, v) in polyline.iter().enumerate() {
        if v.len() != coords.dim {
            return Err(Error::Shape(format!(
                "tube_mass: polyline vertex {k} has dimension {}, expected {}",
                v.len(),
                coords.dim
            )));
        }
    }
    let total = m.total_mass();
    if total <= 0.0 {
        return Ok(0.0);
    }
    let near = (0..m.len())
        .filter(|&i| dist_to_polyline(coords.point(i), polyline) <= r)
        .collect::<Vec<_>>();
    Ok(m.mass(&near) / total)
}

fn dist_to_polyline(p: &[f64], polyline: &[Vec<f64>]) -> f64 {
    if polyline.len() == 1 {
        return dist_pts(p, &polyline[0]);
    }
    let mut best = f64::INFINITY;
    for seg in polyline.windows(2) {
        best = best.min(dist_to_segment(p, &seg[0], &seg[1]));
    }
    best
}

fn dist_pts(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Exact point-to-segment distance via the clamped projection.
fn dist_to_segment(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut ab2 = 0.0;
    let mut ap_ab = 0.0;
    for i in 0..p.len() {
        let ab = b[i] - a[i];
        ab2 += ab * ab;
        ap_ab += (p[i] - a[i]) * ab;
    }
    if ab2 == 0.0 {
        return dist_pts(p, a);
    }
    let t = (ap_ab / ab2).clamp(0.0, 1.0);
    let mut d2 = 0.0;
    for i in 0..p.len() {
        let proj = a[i] + t * (b[i] - a[i]);
        d2 += (p[i] - proj) * (p[i] - proj);
    }
    d2.sqrt()
}

/// Frozen decision thresholds of the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// A scale counts as flat when its flatness value is below this.
    pub flat_cutoff: f64,
    /// Rectifiable-like requires at least this fraction of resolvable
    /// scales to be flat.
    pub flat_pass_fraction: f64,
    /// Unrectifiable-like requires at least this fraction of resolvable
    /// scales to be disconnected.
    pub disconnect_fraction: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { flat_cutoff: 0.25, flat_pass_fraction: 0.8, disconnect_fraction: 0.5 }
    }
}

/// Classifier parameters; the defaults carry the frozen thresholds and
/// the step parameter 1/6.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyParams {
    pub delta: f64,
    pub locality: f64,
    pub ladder: LadderSpec,
    /// View multiplier; `None` means locality + 1.
    pub k_mult: Option<f64>,
    pub flatness_subsample: usize,
    pub thresholds: Thresholds,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        Self {
            delta: 1.0 / 6.0,
            locality: 2.0,
            ladder: LadderSpec::default(),
            k_mult: None,
            flatness_subsample: 5,
            thresholds: Thresholds::default(),
        }
    }
}

/// Per-point label of the dichotomy classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointLabel {
    RectifiableLike,
    UnrectifiableLike,
    Indeterminate,
}

/// Compact per-scale record for reports (the full split stays in the
/// connectivity profile API).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "connectivity", rename_all = "snake_case")]
pub enum ScaleSummary {
    Connected,
    Disconnected { witness: usize, gap: f64 },
    Unresolvable,
    NoTargets,
}

/// Everything the classifier observed at one point and one scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleRecord {
    pub r: f64,
    pub connectivity: ScaleSummary,
    pub flatness: Option<f64>,
    /// Density window `(min, max)` of `mass(B(x, rho)) / (2 rho)` over a
    /// geometric grid spanning `[r/4, r]`; diagnostic only.
    pub density_window: (f64, f64),
}

/// Multiscale profile of one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentProfile {
    pub point: usize,
    pub scales: Vec<ScaleRecord>,
}

/// Aggregate label fractions over the support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabelFractions {
    pub rectifiable_like: f64,
    pub unrectifiable_like: f64,
    pub indeterminate: f64,
}

/// Output of [`classify`]: per-point labels, aggregate fractions, and the
/// per-point profiles behind them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RectifiabilityVerdict {
    pub ladder: Vec<f64>,
    /// One label per support point, in support order.
    pub labels: Vec<PointLabel>,
    pub fractions: LabelFractions,
    pub profiles: Vec<TangentProfile>,
}

/// Per-point dichotomy classifier.
///
/// A point is rectifiable-like when every resolvable scale is connected
/// and the flatness value stays below the cutoff on at least the required
/// fraction of resolvable scales; unrectifiable-like when at least the
/// required fraction of resolvable scales is disconnected; indeterminate
/// otherwise (including when no scale resolves). The rule is homogeneous
/// in the metric, so rescaling distances and the ladder together cannot
/// change any verdict.
pub fn classify(m: &MeasuredSpace, params: &ClassifyParams) -> Result<RectifiabilityVerdict> {
    let th = &params.thresholds;
    for (name, v) in [
        ("flat_cutoff", th.flat_cutoff),
        ("flat_pass_fraction", th.flat_pass_fraction),
        ("disconnect_fraction", th.disconnect_fraction),
    ] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!("classify: threshold {name} = {v} invalid")));
        }
    }
    if m.support().is_empty() {
        return Err(Error::Domain("classify: empty support".into()));
    }
    let ladder = params.ladder.build(m)?;
    let k_mult = params.k_mult.unwrap_or(params.locality + 1.0);
    let mut labels = Vec::with_capacity(m.support().len());
    let mut profiles = Vec::with_capacity(m.support().len());
    for &x in m.support() {
        let conn = connectivity_profile(m, x, &ladder, params.delta, params.locality, k_mult)?;
        let flat = flatness_profile(m, x, &ladder, params.flatness_subsample)?;
        let mut scales = Vec::with_capacity(ladder.len());
        for (k, &r) in ladder.iter().enumerate() {
            let summary = match &conn[k] {
                ScaleConnectivity::Connected => ScaleSummary::Connected,
                ScaleConnectivity::Disconnected { witness, split } => {
                    ScaleSummary::Disconnected { witness: *witness, gap: split.gap }
                }
                ScaleConnectivity::Unresolvable => ScaleSummary::Unresolvable,
                ScaleConnectivity::NoTargets => ScaleSummary::NoTargets,
            };
            let lo = r / 4.0;
            let radii = crate::space::geometric_radii(lo, r);
            let profile = m.density_profile(x, 1.0, &radii)?;
            scales.push(ScaleRecord {
                r,
                connectivity: summary,
                flatness: flat[k],
                density_window: (profile.theta_min, profile.theta_max),
            });
        }

        let resolvable: Vec<usize> =
            (0..ladder.len()).filter(|&k| conn[k].is_determinate()).collect();
        let label = if resolvable.is_empty() {
            PointLabel::Indeterminate
        } else {
            let n_res = resolvable.len() as f64;
            let disconnected = resolvable
                .iter()
                .filter(|&&k| matches!(conn[k], ScaleConnectivity::Disconnected { .. }))
                .count() as f64;
            let all_connected = disconnected == 0.0;
            let flat_pass = resolvable
                .iter()
                .filter(|&&k| matches!(flat[k], Some(v) if v < th.flat_cutoff))
                .count() as f64;
            if all_connected && flat_pass / n_res >= th.flat_pass_fraction - 1e-12 {
                PointLabel::RectifiableLike
            } else if disconnected / n_res >= th.disconnect_fraction - 1e-12 {
                PointLabel::UnrectifiableLike
            } else {
                PointLabel::Indeterminate
            }
        };
        labels.push(label);
        profiles.push(TangentProfile { point: x, scales });
    }
    let n = labels.len() as f64;
    let frac = |want: PointLabel| labels.iter().filter(|&&l| l == want).count() as f64 / n;
    Ok(RectifiabilityVerdict {
        ladder,
        fractions: LabelFractions {
            rectifiable_like: frac(PointLabel::RectifiableLike),
            unrectifiable_like: frac(PointLabel::UnrectifiableLike),
            indeterminate: frac(PointLabel::Indeterminate),
        },
        labels,
        profiles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_four_corner_cantor, gen_segment, gen_union};

    fn pointed(m: &MeasuredSpace, x: usize) -> PointedMeasuredSpace {
        PointedMeasuredSpace::new(m.clone(), x).unwrap()
    }

    #[test]
    fn blowup_whole_space_normalizes() {
        let m = gen_segment(21).unwrap();
        let diam = m.space().full_diameter();
        let v = blowup(&pointed(&m, 10), diam, 1.0).unwrap();
        assert_eq!(v.members.len(), 21);
        assert!((v.unit_ball_mass() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn blowup_rescales_distances() {
        let m = gen_segment(101).unwrap();
        let v = blowup(&pointed(&m, 50), 0.25, 1.0).unwrap();
        // members are the samples of [0.25, 0.75]; distances scale by 4
        assert_eq!(v.members.first(), Some(&25));
        assert_eq!(v.members.last(), Some(&75));
        let c = v.center_local();
        for (local, &parent) in v.members.iter().enumerate() {
            assert_eq!(v.d(c, local), m.d(50, parent) / 0.25);
        }
    }

    #[test]
    fn blowup_single_atom() {
        let m = MeasuredSpace::new(
            FiniteMetricSpace::from_points(&[vec![0.0, 0.0], vec![10.0, 0.0]]).unwrap(),
            vec![1.0, 1.0],
        )
        .unwrap();
        let v = blowup(&pointed(&m, 0), 0.5, 1.0).unwrap();
        assert_eq!(v.members, vec![0]);
        assert_eq!(v.unit_ball_mass(), 1.0);
    }

    #[test]
    fn blowup_normalization_across_corpora() {
        for m in [gen_segment(60).unwrap(), gen_four_corner_cantor(3).unwrap()] {
            let diam = m.space().full_diameter();
            for &x in &[m.support()[0], m.support()[m.support().len() / 2]] {
                for r in [diam / 4.0, diam / 16.0] {
                    let v = blowup(&pointed(&m, x), r, 2.0).unwrap();
                    assert!(
                        (v.unit_ball_mass() - 1.0).abs() <= 1e-12,
                        "normalization off at x={x}, r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn blowup_composition_dyadic() {
        // T_s(T_r(mu, x)) = T_{rs}(mu, x) for dyadic scales: identical
        // member sets and bitwise-equal rescaled distances
        let m = gen_four_corner_cantor(3).unwrap();
        let x = m.support()[17];
        let (r, s) = (0.5, 0.25);
        let k = 1.0;
        let first = blowup(&pointed(&m, x), r, k).unwrap();
        let first_space = first.to_measured_space().unwrap();
        let local = first.center_local();
        let second = blowup(&pointed(&first_space, local), s, k).unwrap();
        let direct = blowup(&pointed(&m, x), r * s, k).unwrap();
        let remapped: Vec<usize> = second.members.iter().map(|&l| first.members[l]).collect();
        assert_eq!(remapped, direct.members);
        assert_eq!(second.dist, direct.dist);
        let dw: Vec<f64> = direct.weights.clone();
        for (a, b) in second.weights.iter().zip(&dw) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn connectivity_profile_segment_interior_all_true() {
        let m = gen_segment(400).unwrap();
        let ladder = [0.12, 0.06, 0.03];
        let profile = connectivity_profile(&m, 200, &ladder, 1.0 / 6.0, 2.0, 3.0).unwrap();
        for (k, outcome) in profile.iter().enumerate() {
            assert_eq!(*outcome, ScaleConnectivity::Connected, "rung {k}");
        }
    }

    #[test]
    fn connectivity_profile_cantor_disconnects_with_witness() {
        let m = gen_four_corner_cantor(4).unwrap();
        let diam = m.space().full_diameter();
        let profile =
            connectivity_profile(&m, 0, &[diam / 4.0], 1.0 / 6.0, 2.0, 3.0).unwrap();
        match &profile[0] {
            ScaleConnectivity::Disconnected { witness, split } => {
                // the split is sound: re-check it exhaustively
                let d = m.d(0, *witness);
                assert!(split.gap > d / 6.0);
                let mut gap = f64::INFINITY;
                for &i in &split.a_side {
                    for &j in &split.b_side {
                        gap = gap.min(m.d(i, j));
                    }
                }
                assert_eq!(gap, split.gap);
            }
            other => panic!("expected disconnection, got {other:?}"),
        }
    }

    #[test]
    fn connectivity_profile_guards_subresolution() {
        let m = gen_segment(20).unwrap();
        // r/10 far below the mesh 1/19
        let profile = connectivity_profile(&m, 10, &[0.01], 1.0 / 6.0, 2.0, 3.0).unwrap();
        assert_eq!(profile[0], ScaleConnectivity::Unresolvable);
    }

    #[test]
    fn flatness_zero_on_exact_grid() {
        // five points isometric to the reference grid, viewed at r = 1
        let xs: Vec<Vec<f64>> = (0..5).map(|i| vec![-1.0 + 0.5 * i as f64, 0.0]).collect();
        let m = MeasuredSpace::new(
            FiniteMetricSpace::from_points(&xs).unwrap(),
            vec![0.2; 5],
        )
        .unwrap();
        let flat = flatness_profile(&m, 2, &[1.0], 5).unwrap();
        assert_eq!(flat[0], Some(0.0));
    }

    #[test]
    fn flatness_segment_small_cantor_large() {
        let seg = gen_segment(200).unwrap();
        let f_seg = flatness_profile(&seg, 100, &[0.2], 5).unwrap()[0].unwrap();
        assert!(f_seg < 0.05, "segment flatness {f_seg}");
        let cantor = gen_four_corner_cantor(4).unwrap();
        let diam = cantor.space().full_diameter();
        let f_can = flatness_profile(&cantor, 0, &[diam / 4.0], 5).unwrap()[0].unwrap();
        assert!(f_can > 0.25, "cantor flatness {f_can}");
    }

    #[test]
    fn flatness_rejects_even_subsample() {
        let m = gen_segment(10).unwrap();
        assert!(flatness_profile(&m, 5, &[0.5], 4).is_err());
        assert!(flatness_profile(&m, 5, &[0.5], 9).is_err());
    }

    #[test]
    fn tube_mass_cases() {
        let m = gen_segment(50).unwrap();
        // the generating segment itself catches everything at any radius
        let seg = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        assert_eq!(tube_mass(&m, &seg, 0.0).unwrap(), 1.0);
        // a polyline through every point trivially catches everything
        let coords = m.space().coords().unwrap();
        let through: Vec<Vec<f64>> = (0..m.len()).map(|i| coords.point(i).to_vec()).collect();
        assert_eq!(tube_mass(&m, &through, 1e-9).unwrap(), 1.0);
        // matrix-only spaces are refused
        let abstract_space = MeasuredSpace::new(
            FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]], None).unwrap(),
            vec![0.5, 0.5],
        )
        .unwrap();
        assert!(matches!(
            tube_mass(&abstract_space, &seg, 0.1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn tube_mass_cantor_short_route_misses_most() {
        let m = gen_four_corner_cantor(4).unwrap();
        let coords = m.space().coords().unwrap();
        // greedy nearest-neighbour route, truncated at length 4
        let mut route = vec![0usize];
        let mut used = vec![false; m.len()];
        used[0] = true;
        let mut length = 0.0;
        while length < 4.0 {
            let last = *route.last().unwrap();
            let mut best = (usize::MAX, f64::INFINITY);
            for i in 0..m.len() {
                if !used[i] && m.d(last, i) < best.1 {
                    best = (i, m.d(last, i));
                }
            }
            if best.0 == usize::MAX {
                break;
            }
            length += best.1;
            used[best.0] = true;
            route.push(best.0);
        }
        let polyline: Vec<Vec<f64>> = route.iter().map(|&i| coords.point(i).to_vec()).collect();
        let quadrant = 0.25;
        let frac = tube_mass(&m, &polyline, quadrant / 4.0).unwrap();
        assert!(frac < 0.7, "tube fraction {frac}");
        assert!(frac > 0.0);
    }

    #[test]
    fn classify_segment_mostly_rectifiable() {
        let m = gen_segment(200).unwrap();
        let params = ClassifyParams {
            ladder: LadderSpec { r0: Some(0.08), lambda: 0.5 },
            ..ClassifyParams::default()
        };
        let v = classify(&m, &params).unwrap();
        assert!(
            v.fractions.rectifiable_like >= 0.9,
            "fractions {:?}",
            v.fractions
        );
    }

    #[test]
    fn classify_cantor_mostly_unrectifiable() {
        let m = gen_four_corner_cantor(4).unwrap();
        let v = classify(&m, &ClassifyParams::default()).unwrap();
        assert!(
            v.fractions.unrectifiable_like >= 0.9,
            "fractions {:?}",
            v.fractions
        );
    }

    #[test]
    fn classify_union_splits_roughly_half() {
        let seg = gen_segment(256).unwrap();
        let cantor = gen_four_corner_cantor(4).unwrap();
        let m = gen_union(&[seg, cantor], &[vec![0.0, 0.0], vec![30.0, 0.0]]).unwrap();
        let params = ClassifyParams {
            ladder: LadderSpec { r0: Some(0.14), lambda: 0.5 },
            ..ClassifyParams::default()
        };
        let v = classify(&m, &params).unwrap();
        assert!(
            (v.fractions.rectifiable_like - 0.5).abs() <= 0.10,
            "fractions {:?}",
            v.fractions
        );
        assert!(
            (v.fractions.unrectifiable_like - 0.5).abs() <= 0.10,
            "fractions {:?}",
            v.fractions
        );
    }

    #[test]
    fn classify_scale_invariance_dyadic() {
        let m = gen_four_corner_cantor(4).unwrap();
        let coords = m.space().coords().unwrap();
        let scaled_pts: Vec<Vec<f64>> = (0..m.len())
            .map(|i| coords.point(i).iter().map(|c| 4.0 * c).collect())
            .collect();
        let scaled = MeasuredSpace::new(
            FiniteMetricSpace::from_points(&scaled_pts).unwrap(),
            m.weights().to_vec(),
        )
        .unwrap();
        let base = classify(&m, &ClassifyParams::default()).unwrap();
        let diam = m.space().full_diameter();
        let params_scaled = ClassifyParams {
            ladder: LadderSpec { r0: Some(4.0 * diam / 4.0), lambda: 0.5 },
            ..ClassifyParams::default()
        };
        let moved = classify(&scaled, &params_scaled).unwrap();
        assert_eq!(base.labels, moved.labels);
    }
}
