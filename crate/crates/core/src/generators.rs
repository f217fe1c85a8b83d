//! Deterministic reference corpora with length-calibrated weights.
//!
//! Every generator emits a 2-d coordinate-backed [`MeasuredSpace`] whose
//! total mass equals the arclength of the generating curve (exactly for
//! segment, circle and Cantor; within quadrature error for the graph and
//! spiral kinds). Coordinates are rounded to 1e-12 before the distance
//! matrix is built so that identical specs reproduce bit-identical clouds.

use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, MeasuredSpace};
use crate::sum::Accumulator;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

/// Subdivision count for arclength quadrature of curve-backed kinds.
const QUADRATURE_STEPS: usize = 10_000;

/// Number of constant-slope pieces in the seeded Lipschitz graph.
const GRAPH_PIECES: usize = 50;

/// Angular span of the spiral, in radians.
const SPIRAL_TURNS: f64 = 3.0;

/// A reproducible corpus description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusSpec {
    Segment { m: usize },
    Circle { m: usize },
    LipschitzGraph { m: usize, l: f64, seed: u64 },
    Spiral { m: usize, decay: f64 },
    FourCornerCantor { depth: u32 },
    Union { parts: Vec<UnionPart> },
}

/// One member of a union corpus: a spec plus a translation offset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionPart {
    pub spec: Box<CorpusSpec>,
    pub offset: Vec<f64>,
}

impl CorpusSpec {
    pub fn generate(&self) -> Result<MeasuredSpace> {
        match self {
            CorpusSpec::Segment { m } => gen_segment(*m),
            CorpusSpec::Circle { m } => gen_circle(*m),
            CorpusSpec::LipschitzGraph { m, l, seed } => gen_lipschitz_graph(*m, *l, *seed),
            CorpusSpec::Spiral { m, decay } => gen_spiral(*m, *decay),
            CorpusSpec::FourCornerCantor { depth } => gen_four_corner_cantor(*depth),
            CorpusSpec::Union { parts } => {
                let clouds = parts
                    .iter()
                    .map(|p| p.spec.generate())
                    .collect::<Result<Vec<_>>>()?;
                let offsets: Vec<Vec<f64>> = parts.iter().map(|p| p.offset.clone()).collect();
                gen_union(&clouds, &offsets)
            }
        }
    }
}

fn round_1e12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn build(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<MeasuredSpace> {
    let rounded: Vec<Vec<f64>> = points
        .into_iter()
        .map(|p| p.into_iter().map(round_1e12).collect())
        .collect();
    MeasuredSpace::new(FiniteMetricSpace::from_points(&rounded)?, weights)
}

/// m uniform samples of the unit segment `[0,1] x {0}`, each of mass 1/m.
pub fn gen_segment(m: usize) -> Result<MeasuredSpace> {
    if m < 2 {
        return Err(Error::Domain(format!("gen_segment: m must be >= 2, got {m}")));
    }
    let points: Vec<Vec<f64>> = (0..m)
        .map(|i| vec![i as f64 / (m - 1) as f64, 0.0])
        .collect();
    build(points, vec![1.0 / m as f64; m])
}

/// m uniform samples of the circle of circumference 1, each of mass 1/m.
pub fn gen_circle(m: usize) -> Result<MeasuredSpace> {
    if m < 2 {
        return Err(Error::Domain(format!("gen_circle: m must be >= 2, got {m}")));
    }
    let radius = 1.0 / (2.0 * std::f64::consts::PI);
    let points: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let phi = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
            vec![radius * phi.cos(), radius * phi.sin()]
        })
        .collect();
    build(points, vec![1.0 / m as f64; m])
}

/// Seeded piecewise-linear graph over `[0,1]` with slope clamped to `l`.
///
/// The graph has [`GRAPH_PIECES`] constant-slope pieces with slopes drawn
/// uniformly from `[-l, l]` (ChaCha20, so the draw is identical across
/// platforms). Weights are arclength/m with arclength evaluated on a
/// 10^4-point subdivision; the subdivision contains every piece joint, so
/// for this piecewise-linear curve the quadrature is exact up to rounding.
pub fn gen_lipschitz_graph(m: usize, l: f64, seed: u64) -> Result<MeasuredSpace> {
    if m < 2 {
        return Err(Error::Domain(format!("gen_lipschitz_graph: m must be >= 2, got {m}")));
    }
    if l < 0.0 {
        return Err(Error::Domain(format!("gen_lipschitz_graph: l must be >= 0, got {l}")));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let slopes: Vec<f64> = (0..GRAPH_PIECES)
        .map(|_| if l == 0.0 { 0.0 } else { rng.gen_range(-l..=l) })
        .collect();
    // heights at the piece joints t = k / GRAPH_PIECES
    let mut joints = vec![0.0_f64; GRAPH_PIECES + 1];
    for k in 0..GRAPH_PIECES {
        joints[k + 1] = joints[k] + slopes[k] / GRAPH_PIECES as f64;
    }
    let graph = |t: f64| -> f64 {
        let k = ((t * GRAPH_PIECES as f64) as usize).min(GRAPH_PIECES - 1);
        joints[k] + slopes[k] * (t - k as f64 / GRAPH_PIECES as f64)
    };
    let arclen = polyline_arclength(|t| {
        let t = t.clamp(0.0, 1.0);
        (t, graph(t))
    });
    let points: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let t = i as f64 / (m - 1) as f64;
            vec![t, graph(t)]
        })
        .collect();
    build(points, vec![arclen / m as f64; m])
}

/// m uniform angle samples of the logarithmic spiral `e^{-decay t}(cos t, sin t)`
/// over [`SPIRAL_TURNS`] turns, with arclength-calibrated weights.
pub fn gen_spiral(m: usize, decay: f64) -> Result<MeasuredSpace> {
    if m < 2 {
        return Err(Error::Domain(format!("gen_spiral: m must be >= 2, got {m}")));
    }
    if decay <= 0.0 {
        return Err(Error::Domain(format!("gen_spiral: decay must be positive, got {decay}")));
    }
    let theta_max = SPIRAL_TURNS * 2.0 * std::f64::consts::PI;
    let at = |theta: f64| -> (f64, f64) {
        let rho = (-decay * theta).exp();
        (rho * theta.cos(), rho * theta.sin())
    };
    let arclen = polyline_arclength(|t| at(t * theta_max));
    let points: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let theta = theta_max * i as f64 / (m - 1) as f64;
            let (x, y) = at(theta);
            vec![x, y]
        })
        .collect();
    build(points, vec![arclen / m as f64; m])
}

/// Four-corner Cantor cloud: the 4^depth centers of the depth-level corner
/// cells of the 1/4-contraction scheme on the unit square, each carrying
/// mass 4^-depth (total mass 1 at every depth).
pub fn gen_four_corner_cantor(depth: u32) -> Result<MeasuredSpace> {
    if !(1..=7).contains(&depth) {
        return Err(Error::Domain(format!(
            "gen_four_corner_cantor: depth must be in 1..=7, got {depth}"
        )));
    }
    let n = 4usize.pow(depth);
    let cell = 0.25_f64.powi(depth as i32);
    let mut points = Vec::with_capacity(n);
    for code in 0..n {
        // two bits per level: bit 0 -> x side, bit 1 -> y side
        let mut x = 0.0;
        let mut y = 0.0;
        let mut c = code;
        let mut scale = 0.75;
        for _ in 0..depth {
            if c & 1 == 1 {
                x += scale;
            }
            if c & 2 == 2 {
                y += scale;
            }
            c >>= 2;
            scale *= 0.25;
        }
        points.push(vec![x + cell / 2.0, y + cell / 2.0]);
    }
    build(points, vec![0.25_f64.powi(depth as i32); n])
}

/// Disjoint union of coordinate-backed clouds under per-cloud translations.
pub fn gen_union(clouds: &[MeasuredSpace], offsets: &[Vec<f64>]) -> Result<MeasuredSpace> {
    if clouds.is_empty() {
        return Err(Error::Domain("gen_union: no clouds".into()));
    }
    if clouds.len() != offsets.len() {
        return Err(Error::Shape(format!(
            "gen_union: {} clouds but {} offsets",
            clouds.len(),
            offsets.len()
        )));
    }
    let dim = clouds[0]
        .space()
        .coords()
        .ok_or_else(|| Error::Unsupported("gen_union: cloud 0 has no coordinates".into()))?
        .dim;
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut ranges: Vec<std::ops::Range<usize>> = Vec::new();
    for (ci, (cloud, offset)) in clouds.iter().zip(offsets).enumerate() {
        let coords = cloud.space().coords().ok_or_else(|| {
            Error::Unsupported(format!("gen_union: cloud {ci} has no coordinates"))
        })?;
        if coords.dim != dim || offset.len() != dim {
            return Err(Error::Shape(format!(
                "gen_union: cloud {ci} dim {} / offset dim {} do not match {}",
                coords.dim,
                offset.len(),
                dim
            )));
        }
        let start = points.len();
        for i in 0..cloud.len() {
            let p: Vec<f64> = coords
                .point(i)
                .iter()
                .zip(offset)
                .map(|(c, o)| c + o)
                .collect();
            points.push(p);
            weights.push(cloud.weights()[i]);
        }
        ranges.push(start..points.len());
    }
    let merged = build(points, weights)?;
    // translated clouds must stay strictly apart
    for a in 0..ranges.len() {
        for b in (a + 1)..ranges.len() {
            for i in ranges[a].clone() {
                for j in ranges[b].clone() {
                    if merged.d(i, j) <= 0.0 {
                        return Err(Error::Domain(format!(
                            "gen_union: clouds {a} and {b} overlap at points {i}, {j}"
                        )));
                    }
                }
            }
        }
    }
    Ok(merged)
}

/// Arclength of `t -> curve(t)`, `t` in [0,1], as a polyline over
/// [`QUADRATURE_STEPS`] equal parameter steps.
fn polyline_arclength(curve: impl Fn(f64) -> (f64, f64)) -> f64 {
    let mut acc = Accumulator::new();
    let (mut px, mut py) = curve(0.0);
    for j in 1..=QUADRATURE_STEPS {
        let (x, y) = curve(j as f64 / QUADRATURE_STEPS as f64);
        acc.add(((x - px) * (x - px) + (y - py) * (y - py)).sqrt());
        px = x;
        py = y;
    }
    acc.value()
}
