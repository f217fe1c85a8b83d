//! Besicovitch partitions, R-disjoint families, and the extraction loop
//! that produces them from a measured space.
//!
//! A partition splits a target set into two blocks realizing their mutual
//! distance at a witness pair. The extraction loop covers the support at
//! a small radius, clusters the cover, splits off the part reachable from
//! the seed points, records the minimum-gap pair, and then bridges the
//! gap with a ball of radius `(2R+1) omega / 2` so the next round works
//! on a more connected cover. A finite metric space has no midpoints, so
//! the bridging ball is carried abstractly: it is a graph node whose
//! distance to a point `q` is `max(0, min(d(q,p1), d(q,p2)) - omega/2)`,
//! an inclusion-generous surrogate for a ball centered at the midpoint of
//! the witness pair. Connectivity progress is then guaranteed and the
//! loop terminates within `|initial cover|` rounds.
//!
//! After the loop, the recorded bridge balls are sorted by decreasing
//! diameter and greedily thinned to a pairwise-disjoint subfamily; the
//! partitions whose ball survived are returned. Disjointness of the
//! surrogate bridge balls implies R-disjointness of the witness balls
//! `B(p_i, R omega)` exactly, so the emitted family always passes the P1
//! check.

use crate::covering::{greedy_separated_cover, UniformCover};
use crate::error::{Error, Result};
use crate::space::MeasuredSpace;
use crate::sum::compensated_sum;
use serde::{Deserialize, Serialize};

/// A two-block partition with its witness pair: `omega = dist(E1, E2) =
/// d(p1, p2) > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesicovitchPartition {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub omega: f64,
    pub p1: usize,
    pub p2: usize,
}

/// One node of the cover graph during extraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum BallNode {
    Cover { center: usize, radius: f64 },
    Bridge { p1: usize, p2: usize, omega: f64, radius: f64 },
}

impl BallNode {
    pub fn radius(&self) -> f64 {
        match *self {
            BallNode::Cover { radius, .. } | BallNode::Bridge { radius, .. } => radius,
        }
    }

    /// Surrogate distance from this node's center to a point.
    fn center_dist_to_point(&self, m: &MeasuredSpace, q: usize) -> f64 {
        match *self {
            BallNode::Cover { center, .. } => m.d(center, q),
            BallNode::Bridge { p1, p2, omega, .. } => {
                (m.d(q, p1).min(m.d(q, p2)) - omega / 2.0).max(0.0)
            }
        }
    }

    /// Surrogate center-to-center distance between two nodes.
    fn center_dist(&self, m: &MeasuredSpace, other: &BallNode) -> f64 {
        match (self, other) {
            (&BallNode::Cover { center: a, .. }, &BallNode::Cover { center: b, .. }) => m.d(a, b),
            (&BallNode::Cover { center, .. }, &BallNode::Bridge { .. }) => {
                other.center_dist_to_point(m, center)
            }
            (&BallNode::Bridge { .. }, &BallNode::Cover { center, .. }) => {
                self.center_dist_to_point(m, center)
            }
            (
                &BallNode::Bridge { p1: a1, p2: a2, omega: oa, .. },
                &BallNode::Bridge { p1: b1, p2: b2, omega: ob, .. },
            ) => {
                let cross = m
                    .d(a1, b1)
                    .min(m.d(a1, b2))
                    .min(m.d(a2, b1))
                    .min(m.d(a2, b2));
                (cross - oa / 2.0 - ob / 2.0).max(0.0)
            }
        }
    }

    /// Whether this node's ball covers the point `q` (closed).
    fn covers(&self, m: &MeasuredSpace, q: usize) -> bool {
        self.center_dist_to_point(m, q) <= self.radius()
    }
}

/// Exhaustive minimum over `E1 x E2`, ties broken lexicographically.
pub fn min_gap_pair(
    m: &MeasuredSpace,
    e1: &[usize],
    e2: &[usize],
) -> Result<(usize, usize, f64)> {
    if e1.is_empty() || e2.is_empty() {
        return Err(Error::Domain("min_gap_pair: empty block".into()));
    }
    if e1.iter().any(|i| e2.contains(i)) {
        return Err(Error::Domain("min_gap_pair: blocks overlap".into()));
    }
    let mut best = (e1[0], e2[0], f64::INFINITY);
    for &i in e1 {
        for &j in e2 {
            let d = m.d(i, j);
            if d < best.2 {
                best = (i, j, d);
            }
        }
    }
    Ok(best)
}

/// R-disjointness of two partitions: all four witness balls of radius
/// `R omega` must be disjoint, i.e. `d(p_i, p'_j) > R omega + R omega'`
/// for every choice of witnesses (closed balls, so exact touching
/// counts as intersecting).
pub fn check_r_disjoint(
    m: &MeasuredSpace,
    p: &BesicovitchPartition,
    q: &BesicovitchPartition,
    locality: f64,
) -> bool {
    let bound = locality * p.omega + locality * q.omega;
    [p.p1, p.p2]
        .iter()
        .all(|&a| [q.p1, q.p2].iter().all(|&b| m.d(a, b) > bound))
}

/// A connected component of the (fattened) cover graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterComponent {
    /// Node indices of the component, ascending.
    pub balls: Vec<usize>,
    /// Whether the component contains (covers) a seed point.
    pub is_base: bool,
}

fn snapshot_components(
    nodes: &[BallNode],
    parent: &mut [usize],
    seeded: &[bool],
) -> Vec<ClusterComponent> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..nodes.len() {
        let r = find(parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<ClusterComponent> = groups
        .into_iter()
        .map(|(root, balls)| ClusterComponent { balls, is_base: seeded[root] })
        .collect();
    out.sort_by_key(|c| c.balls[0]);
    out
}

fn components_of(
    m: &MeasuredSpace,
    nodes: &[BallNode],
    seeds: &[usize],
    fatten: f64,
) -> Vec<ClusterComponent> {
    let k = nodes.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let touch = nodes[i].center_dist(m, &nodes[j])
                <= nodes[i].radius() + nodes[j].radius() + 2.0 * fatten;
            if touch {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj] = ri;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..k {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<ClusterComponent> = groups
        .into_values()
        .map(|balls| {
            let is_base = seeds
                .iter()
                .any(|&s| balls.iter().any(|&b| nodes[b].covers(m, s)));
            ClusterComponent { balls, is_base }
        })
        .collect();
    out.sort_by_key(|c| c.balls[0]);
    out
}

/// Connected components of a plain uniform cover under `fatten`-fattened
/// touching (center distance at most `2r + 2 fatten`), with the base flag
/// marking components that contain a seed.
pub fn cluster_components(
    m: &MeasuredSpace,
    cover: &UniformCover,
    seeds: &[usize],
    fatten: f64,
) -> Result<Vec<ClusterComponent>> {
    if fatten < 0.0 {
        return Err(Error::Domain(format!("cluster_components: fatten must be >= 0, got {fatten}")));
    }
    let nodes: Vec<BallNode> = cover
        .centers
        .iter()
        .map(|&c| BallNode::Cover { center: c, radius: cover.radius })
        .collect();
    Ok(components_of(m, &nodes, seeds, fatten))
}

/// Per-round record of the extraction loop.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundTrace {
    pub round: usize,
    pub components: Vec<ClusterComponent>,
    pub f1_len: usize,
    pub f2_len: usize,
    pub pair: (usize, usize),
    pub omega: f64,
    pub bridge_radius: f64,
}

/// Construction log: per-round clusters and bridges, the thinning order,
/// and which rounds survived.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub cover: UniformCover,
    pub rounds: Vec<RoundTrace>,
    /// Round indices in decreasing bridge-diameter order.
    pub thinning_order: Vec<usize>,
    /// Subset of `thinning_order` whose bridge balls were kept.
    pub kept_rounds: Vec<usize>,
    pub diagnostic: Option<String>,
}

/// An R-disjoint family of Besicovitch partitions plus its trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionFamily {
    pub partitions: Vec<BesicovitchPartition>,
    pub locality: f64,
    pub trace: ExtractionTrace,
}

/// Run the full extraction loop.
///
/// `seeds` play the role of the net points anchoring the "reachable"
/// side; when they form a net at a scale below `delta`, every recorded
/// gap satisfies `omega < delta` (the nearest seed to any point of the
/// far block bounds the gap by the net scale).
pub fn extract_partitions(
    m: &MeasuredSpace,
    seeds: &[usize],
    delta: f64,
    locality: f64,
    rhat: f64,
) -> Result<PartitionFamily> {
    if seeds.is_empty() {
        return Err(Error::Domain("extract_partitions: empty seed list".into()));
    }
    for &s in seeds {
        if !m.support().contains(&s) {
            return Err(Error::Domain(format!("extract_partitions: seed {s} not in support")));
        }
    }
    if !(delta > 0.0) || !(rhat > 0.0) {
        return Err(Error::Domain(format!(
            "extract_partitions: delta and rhat must be positive, got ({delta}, {rhat})"
        )));
    }
    if locality < 1.0 {
        return Err(Error::Domain(format!(
            "extract_partitions: locality must be >= 1, got {locality}"
        )));
    }

    let cover = greedy_separated_cover(m, rhat)?;
    let fatten = rhat / 4.0;
    let mut nodes: Vec<BallNode> = cover
        .centers
        .iter()
        .map(|&c| BallNode::Cover { center: c, radius: cover.radius })
        .collect();
    let cap = nodes.len();

    // The cover graph only ever gains nodes and edges, so components,
    // seed flags, F1 membership and the distance to F1 are all monotone
    // and can be maintained incrementally across rounds.
    let support = m.support().to_vec();
    let n_sup = support.len();

    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    let mut seeded: Vec<bool> = vec![false; nodes.len()];
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // point -> covering nodes, node -> covered seed?, initial edges
    let mut point_nodes: Vec<Vec<usize>> = vec![Vec::new(); n_sup];
    for (v, node) in nodes.iter().enumerate() {
        for (q, &s) in support.iter().enumerate() {
            if node.covers(m, s) {
                point_nodes[q].push(v);
            }
        }
        if seeds.iter().any(|&s| node.covers(m, s)) {
            seeded[v] = true;
        }
    }
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if nodes[i].center_dist(m, &nodes[j])
                <= nodes[i].radius() + nodes[j].radius() + 2.0 * fatten
            {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    let s = seeded[ri] || seeded[rj];
                    parent[rj] = ri;
                    seeded[ri] = s;
                }
            }
        }
    }

    let mut in_f1: Vec<bool> = vec![false; n_sup];
    // distance to F1 and the smallest F1 point attaining it, per point
    let mut dist1: Vec<f64> = vec![f64::INFINITY; n_sup];
    let mut best_p1: Vec<usize> = vec![usize::MAX; n_sup];
    let absorb = |q: usize,
                  in_f1: &mut Vec<bool>,
                  dist1: &mut Vec<f64>,
                  best_p1: &mut Vec<usize>| {
        in_f1[q] = true;
        let s = support[q];
        for (t, &other) in support.iter().enumerate() {
            if in_f1[t] {
                continue;
            }
            let d = m.d(s, other);
            if d < dist1[t] || (d == dist1[t] && s < best_p1[t]) {
                dist1[t] = d;
                best_p1[t] = s;
            }
        }
    };

    let mut rounds: Vec<RoundTrace> = Vec::new();
    let mut all_partitions: Vec<BesicovitchPartition> = Vec::new();
    let mut diagnostic = None;
    let mut round = 0usize;
    loop {
        // move newly base-covered points into F1
        let mut fresh: Vec<usize> = Vec::new();
        for q in 0..n_sup {
            if in_f1[q] {
                continue;
            }
            let covered = point_nodes[q]
                .iter()
                .any(|&v| seeded[find(&mut parent, v)]);
            if covered {
                fresh.push(q);
            }
        }
        for &q in &fresh {
            absorb(q, &mut in_f1, &mut dist1, &mut best_p1);
        }

        let f1: Vec<usize> =
            (0..n_sup).filter(|&q| in_f1[q]).map(|q| support[q]).collect();
        let f2: Vec<usize> =
            (0..n_sup).filter(|&q| !in_f1[q]).map(|q| support[q]).collect();
        if f2.is_empty() {
            if round == 0 {
                diagnostic =
                    Some("cover is already connected to the seeds at rhat; empty family".into());
            }
            break;
        }
        if round >= cap {
            return Err(Error::Solver(format!(
                "extract_partitions: termination cap of {cap} rounds exceeded"
            )));
        }

        // minimum-gap pair, ties lexicographic in (p1, p2)
        let mut pair = (usize::MAX, usize::MAX, f64::INFINITY);
        for q in 0..n_sup {
            if in_f1[q] {
                continue;
            }
            let cand = (best_p1[q], support[q], dist1[q]);
            if cand.2 < pair.2
                || (cand.2 == pair.2 && (cand.0, cand.1) < (pair.0, pair.1))
            {
                pair = cand;
            }
        }
        let (p1, p2, omega) = pair;
        let bridge_radius = (2.0 * locality + 1.0) * omega / 2.0;
        rounds.push(RoundTrace {
            round,
            components: snapshot_components(&nodes, &mut parent, &seeded),
            f1_len: f1.len(),
            f2_len: f2.len(),
            pair: (p1, p2),
            omega,
            bridge_radius,
        });
        all_partitions.push(BesicovitchPartition { e1: f1, e2: f2, omega, p1, p2 });

        // attach the bridge node
        let bridge = BallNode::Bridge { p1, p2, omega, radius: bridge_radius };
        let v = nodes.len();
        parent.push(v);
        seeded.push(seeds.iter().any(|&s| bridge.covers(m, s)));
        for (q, &s) in support.iter().enumerate() {
            if bridge.covers(m, s) {
                point_nodes[q].push(v);
            }
        }
        for i in 0..v {
            if nodes[i].center_dist(m, &bridge)
                <= nodes[i].radius() + bridge.radius() + 2.0 * fatten
            {
                let (ri, rv) = (find(&mut parent, i), find(&mut parent, v));
                if ri != rv {
                    let s = seeded[ri] || seeded[rv];
                    parent[rv] = ri;
                    seeded[ri] = s;
                }
            }
        }
        nodes.push(bridge);
        round += 1;
    }

    // Thin to a pairwise-disjoint subfamily, largest bridge balls first.
    let bridge_of = |idx: usize| -> BallNode {
        let r = &rounds[idx];
        BallNode::Bridge {
            p1: r.pair.0,
            p2: r.pair.1,
            omega: r.omega,
            radius: r.bridge_radius,
        }
    };
    let mut order: Vec<usize> = (0..rounds.len()).collect();
    order.sort_by(|&i, &j| {
        rounds[j]
            .bridge_radius
            .total_cmp(&rounds[i].bridge_radius)
            .then(i.cmp(&j))
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        let bi = bridge_of(i);
        let disjoint = kept.iter().all(|&j| {
            let bj = bridge_of(j);
            bi.center_dist(m, &bj) > bi.radius() + bj.radius()
        });
        if disjoint {
            kept.push(i);
        }
    }
    let partitions: Vec<BesicovitchPartition> =
        kept.iter().map(|&i| all_partitions[i].clone()).collect();

    Ok(PartitionFamily {
        partitions,
        locality,
        trace: ExtractionTrace {
            cover,
            rounds,
            thinning_order: order,
            kept_rounds: kept,
            diagnostic,
        },
    })
}

/// Verification report for a partition family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyReport {
    /// Pairwise R-disjointness, checked exactly on every pair.
    pub p1: bool,
    /// All gaps below `delta`, checked exactly.
    pub p2: bool,
    pub sum_omega: f64,
    /// `sum_omega * 3(2R+1) / mass(support)`: compare against `1 - eps`.
    /// Reported, not asserted; finite samples only approximate pure
    /// unrectifiability.
    pub ratio: f64,
}

/// Check P1 and P2 exactly and report the cumulative-gap ratio.
pub fn verify_family(
    m: &MeasuredSpace,
    family: &PartitionFamily,
    delta: f64,
    locality: f64,
) -> FamilyReport {
    let ps = &family.partitions;
    let mut p1 = true;
    for i in 0..ps.len() {
        for j in (i + 1)..ps.len() {
            if !check_r_disjoint(m, &ps[i], &ps[j], locality) {
                p1 = false;
            }
        }
    }
    let p2 = ps.iter().all(|p| p.omega < delta);
    let sum_omega = compensated_sum(ps.iter().map(|p| p.omega));
    let total = m.mass(m.support());
    let ratio = if total > 0.0 {
        sum_omega * 3.0 * (2.0 * locality + 1.0) / total
    } else {
        0.0
    };
    FamilyReport { p1, p2, sum_omega, ratio }
}

/// Re-check the partition type invariants against a target set.
pub fn check_partition(
    m: &MeasuredSpace,
    p: &BesicovitchPartition,
    target: &[usize],
) -> Result<()> {
    if p.e1.is_empty() || p.e2.is_empty() {
        return Err(Error::Domain("partition has an empty block".into()));
    }
    let mut union: Vec<usize> = p.e1.iter().chain(&p.e2).copied().collect();
    union.sort_unstable();
    let mut expected = target.to_vec();
    expected.sort_unstable();
    if union != expected {
        return Err(Error::Domain("partition blocks do not cover the target exactly".into()));
    }
    if p.e1.iter().any(|i| p.e2.contains(i)) {
        return Err(Error::Domain("partition blocks overlap".into()));
    }
    let (q1, q2, omega) = min_gap_pair(m, &p.e1, &p.e2)?;
    if omega != p.omega || m.d(p.p1, p.p2) != p.omega {
        return Err(Error::Domain(format!(
            "stored omega {} disagrees with exhaustive gap {omega} (pair ({q1},{q2}))",
            p.omega
        )));
    }
    if !(p.omega > 0.0) {
        return Err(Error::Domain("omega must be positive".into()));
    }
    if !p.e1.contains(&p.p1) || !p.e2.contains(&p.p2) {
        return Err(Error::Domain("witness points are not in their blocks".into()));
    }
    Ok(())
}
