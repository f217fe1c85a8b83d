//! Finite (weighted, pointed) metric spaces and the elementary
//! metric/measure operations everything else consumes.
//!
//! Conventions that are load-bearing downstream:
//!
//! * balls are **closed**: `ball(x, r) = { i : d(x, i) <= r }`, ties at the
//!   radius included;
//! * the measure is the supplied per-point weight vector, and every mass
//!   evaluation is a compensated sum in ascending index order;
//! * a distance matrix is accepted only if it is symmetric with zero
//!   diagonal and satisfies the triangle inequality within a construction
//!   tolerance (default `1e-9` relative to the largest entry).

use crate::error::{Error, Result};
use crate::sum::{compensated_sum, Accumulator};
use serde::{Deserialize, Serialize};

/// Ratio between consecutive radii sampled by [`MeasuredSpace::ahlfors_constant`].
pub const AHLFORS_RADIUS_RATIO: f64 = 1.189_207_115_002_721; // 2^(1/4)

/// Default triangle-inequality tolerance, relative to the largest distance.
pub const DEFAULT_TRIANGLE_TOL_REL: f64 = 1e-9;

/// Optional coordinate backing for a space built from a point cloud.
///
/// Row-major `n x dim`. Only coordinate-backed spaces can answer
/// geometric queries such as tube mass against a polyline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coords {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl Coords {
    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }
}

/// A finite metric space: `n` points with a full symmetric distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
    labels: Option<Vec<String>>,
    coords: Option<Coords>,
}

/// One violated metric axiom found by [`validate_metric`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MetricViolation {
    /// `D[i][i] != 0`.
    NonzeroDiagonal { i: usize, value: f64 },
    /// Negative entry.
    Negative { i: usize, j: usize, value: f64 },
    /// `D[i][j] != D[j][i]`.
    Asymmetry { i: usize, j: usize, dij: f64, dji: f64 },
    /// `D[i][k] > D[i][j] + D[j][k] + tol`.
    Triangle { i: usize, j: usize, k: usize, excess: f64 },
}

/// Outcome of [`validate_metric`]: either `ok` or every violation found.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<MetricViolation>,
}

/// Check the three metric axioms on a square matrix within `tol`.
///
/// Returns the full list of violations rather than stopping at the first;
/// rejecting silently non-metric inputs would corrupt every graph-search
/// semantics built on top.
pub fn validate_metric(dist: &[Vec<f64>], tol: f64) -> Result<ValidationReport> {
    let n = dist.len();
    for (i, row) in dist.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape(format!(
                "row {} has length {}, expected {}",
                i,
                row.len(),
                n
            )));
        }
    }
    if tol < 0.0 || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance must be finite and >= 0, got {tol}")));
    }
    let mut violations = Vec::new();
    for i in 0..n {
        if dist[i][i] != 0.0 {
            violations.push(MetricViolation::NonzeroDiagonal { i, value: dist[i][i] });
        }
        for j in (i + 1)..n {
            if dist[i][j] < 0.0 {
                violations.push(MetricViolation::Negative { i, j, value: dist[i][j] });
            }
            if dist[i][j] != dist[j][i] {
                violations.push(MetricViolation::Asymmetry {
                    i,
                    j,
                    dij: dist[i][j],
                    dji: dist[j][i],
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let excess = dist[i][k] - (dist[i][j] + dist[j][k]);
                if excess > tol {
                    violations.push(MetricViolation::Triangle { i, j, k, excess });
                }
            }
        }
    }
    Ok(ValidationReport { ok: violations.is_empty(), violations })
}

impl FiniteMetricSpace {
    /// Build from a full distance matrix, validating the metric axioms.
    ///
    /// `tol` is the absolute triangle slack; `None` uses
    /// [`DEFAULT_TRIANGLE_TOL_REL`] times the largest entry.
    pub fn from_matrix(dist: Vec<Vec<f64>>, tol: Option<f64>) -> Result<Self> {
        let max = dist
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0_f64, |m, &v| if v.is_finite() { m.max(v.abs()) } else { f64::INFINITY });
        if !max.is_finite() {
            return Err(Error::Domain("distance matrix contains non-finite entries".into()));
        }
        let tol = tol.unwrap_or(DEFAULT_TRIANGLE_TOL_REL * max);
        let report = validate_metric(&dist, tol)?;
        if !report.ok {
            return Err(Error::Domain(format!(
                "matrix is not a metric within tol {tol:.3e}: first violation {:?} ({} total)",
                report.violations[0],
                report.violations.len()
            )));
        }
        let n = dist.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in &dist {
            flat.extend_from_slice(row);
        }
        Ok(Self { n, dist: flat, labels: None, coords: None })
    }

    /// Build from a matrix that is already known to be a metric (a
    /// principal submatrix or rescaling of a validated one); skips the
    /// cubic triangle check.
    pub(crate) fn from_matrix_unchecked(dist: Vec<Vec<f64>>) -> Self {
        let n = dist.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in &dist {
            debug_assert_eq!(row.len(), n);
            flat.extend_from_slice(row);
        }
        Self { n, dist: flat, labels: None, coords: None }
    }

    /// Build from coordinates, keeping them for geometric queries.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::Domain("point cloud is empty".into()));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::Shape("points have zero dimension".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::Shape(format!(
                    "point {} has dimension {}, expected {}",
                    i,
                    p.len(),
                    dim
                )));
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain(format!("point {i} has non-finite coordinates")));
            }
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclidean(&points[i], &points[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        let mut data = Vec::with_capacity(n * dim);
        for p in points {
            data.extend_from_slice(p);
        }
        Ok(Self { n, dist, labels: None, coords: Some(Coords { dim, data }) })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Shape(format!(
                "{} labels for {} points",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn coords(&self) -> Option<&Coords> {
        self.coords.as_ref()
    }

    /// Full row of distances from `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// dist(a, A) = min over i in A of d(a, i).
    pub fn dist_to_set(&self, a: usize, set: &[usize]) -> Result<f64> {
        self.check_index(a)?;
        if set.is_empty() {
            return Err(Error::Domain("dist_to_set: empty set".into()));
        }
        let mut best = f64::INFINITY;
        for &i in set {
            self.check_index(i)?;
            best = best.min(self.d(a, i));
        }
        Ok(best)
    }

    /// diam(A) = max over pairs in A; a singleton has diameter 0.
    pub fn diameter(&self, set: &[usize]) -> Result<f64> {
        if set.is_empty() {
            return Err(Error::Domain("diameter: empty set".into()));
        }
        let mut best = 0.0_f64;
        for (k, &i) in set.iter().enumerate() {
            self.check_index(i)?;
            for &j in &set[k + 1..] {
                best = best.max(self.d(i, j));
            }
        }
        Ok(best)
    }

    /// Diameter over all points.
    pub fn full_diameter(&self) -> f64 {
        let mut best = 0.0_f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                best = best.max(self.d(i, j));
            }
        }
        best
    }

    /// Closed epsilon-neighbourhood `{ i : dist(i, A) <= eps }`.
    pub fn neighborhood(&self, set: &[usize], eps: f64) -> Result<Vec<usize>> {
        if set.is_empty() {
            return Err(Error::Domain("neighborhood: empty set".into()));
        }
        if eps < 0.0 {
            return Err(Error::Domain(format!("neighborhood: negative eps {eps}")));
        }
        let mut out = Vec::new();
        for i in 0..self.n {
            if self.dist_to_set(i, set)? <= eps {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Hausdorff distance between two index sets.
    pub fn hausdorff_distance(&self, a: &[usize], b: &[usize]) -> Result<f64> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Domain("hausdorff_distance: empty set".into()));
        }
        let mut worst = 0.0_f64;
        for &i in a {
            worst = worst.max(self.dist_to_set(i, b)?);
        }
        for &j in b {
            worst = worst.max(self.dist_to_set(j, a)?);
        }
        Ok(worst)
    }

    /// Closed ball `{ i : d(x, i) <= r }`; always contains `x` for r >= 0.
    pub fn ball(&self, x: usize, r: f64) -> Vec<usize> {
        let row = self.row(x);
        (0..self.n).filter(|&i| row[i] <= r).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::Domain(format!("point index {} out of range 0..{}", i, self.n)));
        }
        Ok(())
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc.sqrt()
}

/// One entry of a density profile: the ratio `mass(B(x, r)) / (2r)^s`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DensityEntry {
    pub r: f64,
    pub theta: f64,
}

/// Density profile of a point over a list of radii, with the min/max as
/// finite stand-ins for the lower and upper densities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityProfile {
    pub entries: Vec<DensityEntry>,
    pub theta_min: f64,
    pub theta_max: f64,
    /// Radii excluded from the profile (r = 0 divides by zero).
    pub skipped: Vec<f64>,
}

/// A finite metric space with nonnegative per-point mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasuredSpace {
    space: FiniteMetricSpace,
    weights: Vec<f64>,
    support: Vec<usize>,
}

impl MeasuredSpace {
    pub fn new(space: FiniteMetricSpace, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::Shape(format!(
                "{} weights for {} points",
                weights.len(),
                space.len()
            )));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::Domain(format!("weight {i} is {w}, must be finite and >= 0")));
            }
        }
        let support = weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, _)| i)
            .collect();
        Ok(Self { space, weights, support })
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `{ i : w[i] > 0 }`, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.space.d(i, j)
    }

    /// Total mass, recomputed from the weights.
    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.weights.iter().copied())
    }

    /// mass(A) = sum of weights over `A`, in the order given.
    pub fn mass(&self, set: &[usize]) -> f64 {
        compensated_sum(set.iter().map(|&i| self.weights[i]))
    }

    /// mass of the closed ball B(x, r).
    pub fn ball_mass(&self, x: usize, r: f64) -> f64 {
        let row = self.space.row(x);
        let mut acc = Accumulator::new();
        for i in 0..self.space.len() {
            if row[i] <= r {
                acc.add(self.weights[i]);
            }
        }
        acc.value()
    }

    /// Density profile `theta(r) = mass(B(x,r)) / (2r)^s` over the given radii.
    ///
    /// Zero radii are excluded and reported in `skipped` rather than
    /// poisoning the profile.
    pub fn density_profile(&self, x: usize, s: f64, radii: &[f64]) -> Result<DensityProfile> {
        if s <= 0.0 {
            return Err(Error::Domain(format!("density_profile: s must be positive, got {s}")));
        }
        if !self.support.contains(&x) {
            return Err(Error::Domain(format!("density_profile: point {x} not in support")));
        }
        let mut entries = Vec::new();
        let mut skipped = Vec::new();
        for &r in radii {
            if r <= 0.0 {
                skipped.push(r);
                continue;
            }
            let theta = self.ball_mass(x, r) / (2.0 * r).powf(s);
            entries.push(DensityEntry { r, theta });
        }
        let theta_min = entries.iter().map(|e| e.theta).fold(f64::INFINITY, f64::min);
        let theta_max = entries.iter().map(|e| e.theta).fold(f64::NEG_INFINITY, f64::max);
        Ok(DensityProfile { entries, theta_min, theta_max, skipped })
    }

    /// Smallest C >= 1 with `r^s / C <= mass(B(x, r)) <= C r^s` over every
    /// support point and the sampled radii.
    ///
    /// Radii are sampled geometrically with ratio 2^(1/4) from `r_min`,
    /// with `r_max` always included, so a caller that needs the bound to
    /// hold at specific radii can pin them to the window endpoints.
    pub fn ahlfors_constant(&self, r_min: f64, r_max: f64, s: f64) -> Result<f64> {
        if self.support.is_empty() {
            return Err(Error::Domain("ahlfors_constant: empty support".into()));
        }
        if !(r_min > 0.0) || !(r_max >= r_min) {
            return Err(Error::Domain(format!(
                "ahlfors_constant: need 0 < r_min <= r_max, got ({r_min}, {r_max})"
            )));
        }
        if s <= 0.0 {
            return Err(Error::Domain(format!("ahlfors_constant: s must be positive, got {s}")));
        }
        let radii = geometric_radii(r_min, r_max);
        let mut c = 1.0_f64;
        for &x in &self.support {
            for &r in &radii {
                let m = self.ball_mass(x, r);
                let rs = r.powf(s);
                if m <= 0.0 {
                    return Ok(f64::INFINITY);
                }
                c = c.max(m / rs).max(rs / m);
            }
        }
        Ok(c)
    }
}

/// Geometric grid with ratio 2^(1/4) from `r_min` up, `r_max` appended
/// when the grid does not land on it exactly.
pub fn geometric_radii(r_min: f64, r_max: f64) -> Vec<f64> {
    let mut radii = Vec::new();
    let mut r = r_min;
    while r < r_max {
        radii.push(r);
        r *= AHLFORS_RADIUS_RATIO;
    }
    if *radii.last().unwrap_or(&0.0) != r_max {
        radii.push(r_max);
    }
    radii
}

/// A measured space with a distinguished basepoint in its support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointedMeasuredSpace {
    base: MeasuredSpace,
    basepoint: usize,
}

impl PointedMeasuredSpace {
    pub fn new(base: MeasuredSpace, basepoint: usize) -> Result<Self> {
        if !base.support().contains(&basepoint) {
            return Err(Error::Domain(format!(
                "basepoint {basepoint} is not in the support"
            )));
        }
        Ok(Self { base, basepoint })
    }

    pub fn base(&self) -> &MeasuredSpace {
        &self.base
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }
}
