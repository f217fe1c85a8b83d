//! Quasi-path connectivity: certificates, membership predicates for the
//! pointed and global quasi-path classes, and path-transfer operations.
//!
//! A `delta`-quasi-path between `a` and `b` is a finite chain with every
//! hop at most `delta * d(a, b)`; the search is confined to the closed
//! ball `B(a, R d(a, b))` with the two endpoints always admitted (for
//! `R < 1` the endpoint `b` lies outside its own search ball, and the
//! standard worked examples require it to be reachable by a direct hop).
//! When no path exists, the reachable set forms a separating
//! decomposition whose gap exceeds `delta * d(a, b)` by construction.

use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, MeasuredSpace};
use serde::{Deserialize, Serialize};

/// A witnessing chain for quasi-path connectivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiPath {
    /// Point indices, starting at `a` and ending at `b`.
    pub nodes: Vec<usize>,
    pub a: usize,
    pub b: usize,
    /// Step parameter: hops are bounded by `delta * d(a, b)`.
    pub delta: f64,
    /// Locality parameter: interior nodes lie in `B(a, locality * d(a, b))`.
    pub locality: f64,
}

/// A witnessing split for the failure of quasi-path connectivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatingDecomposition {
    /// Block containing `a`.
    pub a_side: Vec<usize>,
    /// Block containing `b`.
    pub b_side: Vec<usize>,
    /// Exact minimum distance between the blocks; exceeds `delta * d(a, b)`.
    pub gap: f64,
}

/// Constructive disjunction: either a path or a split, never both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum QuasiPathCertificate {
    Path(QuasiPath),
    Split(SeparatingDecomposition),
}

impl QuasiPathCertificate {
    pub fn as_path(&self) -> Option<&QuasiPath> {
        match self {
            QuasiPathCertificate::Path(p) => Some(p),
            QuasiPathCertificate::Split(_) => None,
        }
    }

    pub fn as_split(&self) -> Option<&SeparatingDecomposition> {
        match self {
            QuasiPathCertificate::Path(_) => None,
            QuasiPathCertificate::Split(s) => Some(s),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Breadth-first certificate over an explicit vertex list.
///
/// `vertices` must contain `a` and `b`; edges join vertices at distance
/// at most `step`. Ties are broken by ascending point index, so the
/// returned shortest-hop path is deterministic.
fn bfs_certificate(
    space: &FiniteMetricSpace,
    vertices: &[usize],
    a: usize,
    b: usize,
    step: f64,
) -> QuasiPathCertificate {
    let k = vertices.len();
    let pos: std::collections::HashMap<usize, usize> =
        vertices.iter().enumerate().map(|(p, &v)| (v, p)).collect();
    let (pa, pb) = (pos[&a], pos[&b]);
    let mut parent = vec![usize::MAX; k];
    let mut seen = vec![false; k];
    let mut queue = std::collections::VecDeque::new();
    seen[pa] = true;
    queue.push_back(pa);
    while let Some(u) = queue.pop_front() {
        for v in 0..k {
            if !seen[v] && space.d(vertices[u], vertices[v]) <= step {
                seen[v] = true;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    if seen[pb] {
        let mut path = vec![vertices[pb]];
        let mut v = pb;
        while v != pa {
            v = parent[v];
            path.push(vertices[v]);
        }
        path.reverse();
        QuasiPathCertificate::Path(QuasiPath { nodes: path, a, b, delta: 0.0, locality: 0.0 })
    } else {
        let mut a_side = Vec::new();
        let mut b_side = Vec::new();
        for (p, &v) in vertices.iter().enumerate() {
            if seen[p] {
                a_side.push(v);
            } else {
                b_side.push(v);
            }
        }
        let mut gap = f64::INFINITY;
        for &i in &a_side {
            for &j in &b_side {
                gap = gap.min(space.d(i, j));
            }
        }
        QuasiPathCertificate::Split(SeparatingDecomposition { a_side, b_side, gap })
    }
}

fn search_vertices(m: &MeasuredSpace, a: usize, b: usize, radius: f64) -> Vec<usize> {
    let mut vertices: Vec<usize> = m
        .support()
        .iter()
        .copied()
        .filter(|&i| m.d(a, i) <= radius || i == a || i == b)
        .collect();
    if !vertices.contains(&a) {
        vertices.push(a);
    }
    if !vertices.contains(&b) {
        vertices.push(b);
    }
    vertices.sort_unstable();
    vertices
}

/// Decide quasi-path connectivity between two support points.
///
/// Breadth-first search over the support restricted to
/// `B(a, locality * d(a, b))` (endpoints adjoined) with hop threshold
/// `delta * d(a, b)`. Returns the shortest-hop path, or the reachable /
/// unreachable split whose gap then automatically exceeds the threshold.
pub fn quasi_path(
    m: &MeasuredSpace,
    a: usize,
    b: usize,
    delta: f64,
    locality: f64,
) -> Result<QuasiPathCertificate> {
    if a == b {
        return Err(Error::Degenerate(format!("quasi_path: a == b == {a}")));
    }
    if !(delta > 0.0) || !(locality > 0.0) {
        return Err(Error::Domain(format!(
            "quasi_path: delta and locality must be positive, got ({delta}, {locality})"
        )));
    }
    for p in [a, b] {
        if !m.support().contains(&p) {
            return Err(Error::Domain(format!("quasi_path: point {p} not in support")));
        }
    }
    let d = m.d(a, b);
    let vertices = search_vertices(m, a, b, locality * d);
    match bfs_certificate(m.space(), &vertices, a, b, delta * d) {
        QuasiPathCertificate::Path(mut p) => {
            p.delta = delta;
            p.locality = locality;
            Ok(QuasiPathCertificate::Path(p))
        }
        split => Ok(split),
    }
}

/// Report of a pointed membership check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QpReport {
    pub holds: bool,
    /// On failure: the first failing target (ascending index) and its split.
    pub witness: Option<(usize, SeparatingDecomposition)>,
}

/// Pointed class membership: every support point must be quasi-path
/// reachable from `x` inside its own ball. Targets are scanned in
/// ascending index order and the first failure is returned as witness.
pub fn is_qp(m: &MeasuredSpace, x: usize, delta: f64, locality: f64) -> Result<QpReport> {
    if !m.support().contains(&x) {
        return Err(Error::Domain(format!("is_qp: point {x} not in support")));
    }
    for &y in m.support() {
        if y == x {
            continue;
        }
        if let QuasiPathCertificate::Split(split) = quasi_path(m, x, y, delta, locality)? {
            return Ok(QpReport { holds: false, witness: Some((y, split)) });
        }
    }
    Ok(QpReport { holds: true, witness: None })
}

/// Report of a global membership check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QReport {
    pub holds: bool,
    /// On failure: the first failing ordered pair and its split.
    pub witness: Option<(usize, usize, SeparatingDecomposition)>,
}

/// Global class membership: the pointed condition over every ordered pair
/// of distinct support points, scanned lexicographically. A singleton
/// support holds vacuously.
pub fn is_q(m: &MeasuredSpace, delta: f64, locality: f64) -> Result<QReport> {
    for &a in m.support() {
        for &b in m.support() {
            if a == b {
                continue;
            }
            if let QuasiPathCertificate::Split(split) = quasi_path(m, a, b, delta, locality)? {
                return Ok(QReport { holds: false, witness: Some((a, b, split)) });
            }
        }
    }
    Ok(QReport { holds: true, witness: None })
}

/// Replace each interior node of a path in `e_set` by its nearest
/// neighbour in `f_set`, paying `2 eps` in the step parameter.
///
/// Preconditions (refused by name when violated):
/// `eps < min(1 / ((locality + 1) d(a,b)^2), 1)` and
/// `pointed_hausdorff(a, e_set, f_set) < eps * d(a, b)`.
pub fn transfer_quasi_path(
    m: &MeasuredSpace,
    path: &QuasiPath,
    e_set: &[usize],
    f_set: &[usize],
    eps: f64,
) -> Result<QuasiPath> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("transfer_quasi_path: eps must be positive, got {eps}")));
    }
    let d = m.d(path.a, path.b);
    let bound = (1.0 / ((path.locality + 1.0) * d * d)).min(1.0);
    if eps >= bound {
        return Err(Error::Refused(format!(
            "transfer_quasi_path: eps = {eps} must be below min(1/((R+1) d^2), 1) = {bound}"
        )));
    }
    let dh = crate::distances::pointed_hausdorff(m.space(), path.a, e_set, f_set)?;
    if dh >= eps * d {
        return Err(Error::Refused(format!(
            "transfer_quasi_path: pointed Hausdorff distance {dh} is not below eps * d(a,b) = {}",
            eps * d
        )));
    }
    let mut nodes = vec![path.a];
    for &node in &path.nodes[1..path.nodes.len() - 1] {
        let (cand, dist) = nearest_in(m.space(), node, f_set)
            .ok_or_else(|| Error::Refused("transfer_quasi_path: empty replacement set".into()))?;
        if dist > eps * d {
            return Err(Error::Refused(format!(
                "transfer_quasi_path: node {node} has no replacement within eps * d(a,b) = {}",
                eps * d
            )));
        }
        nodes.push(cand);
    }
    nodes.push(path.b);
    let out = QuasiPath {
        nodes,
        a: path.a,
        b: path.b,
        delta: path.delta + 2.0 * eps,
        locality: path.locality + eps,
    };
    check_path(m, &out)?;
    Ok(out)
}

/// Replace each interior node by a nearby point of `k_set`, tripling the
/// step parameter. The mass preconditions are checked first: every node's
/// `delta * d(a,b)`-ball must carry mass above `eps`, and the mass of
/// `B(b, (R+1) d(a,b))` outside `k_set` must stay below `eps`.
pub fn transfer_via_mass(
    m: &MeasuredSpace,
    path: &QuasiPath,
    k_set: &[usize],
    eps: f64,
    delta: f64,
) -> Result<QuasiPath> {
    if !(eps > 0.0) || !(delta > 0.0) {
        return Err(Error::Domain(format!(
            "transfer_via_mass: eps and delta must be positive, got ({eps}, {delta})"
        )));
    }
    let d = m.d(path.a, path.b);
    for p in [path.a, path.b] {
        if !k_set.contains(&p) {
            return Err(Error::Refused(format!(
                "transfer_via_mass: endpoint {p} is not in the target set"
            )));
        }
    }
    for (n, &node) in path.nodes.iter().enumerate() {
        let ball_mass = m.ball_mass(node, delta * d);
        if ball_mass <= eps {
            return Err(Error::Refused(format!(
                "transfer_via_mass: node {n} (point {node}) has ball mass {ball_mass} <= eps = {eps}"
            )));
        }
    }
    let big_ball = m.space().ball(path.b, (path.locality + 1.0) * d);
    let outside: Vec<usize> =
        big_ball.iter().copied().filter(|i| !k_set.contains(i)).collect();
    let outside_mass = m.mass(&outside);
    if outside_mass >= eps {
        return Err(Error::Refused(format!(
            "transfer_via_mass: mass {outside_mass} of B(b, (R+1) d) outside the target set is not below eps = {eps}"
        )));
    }
    let mut nodes = vec![path.a];
    for (n, &node) in path.nodes.iter().enumerate().skip(1).take(path.nodes.len() - 2) {
        let (cand, dist) = nearest_in(m.space(), node, k_set)
            .ok_or_else(|| Error::Refused("transfer_via_mass: empty target set".into()))?;
        if dist > delta * d {
            return Err(Error::Refused(format!(
                "transfer_via_mass: node {n} (point {node}) has no target-set point within delta * d(a,b)"
            )));
        }
        nodes.push(cand);
    }
    nodes.push(path.b);
    let out = QuasiPath {
        nodes,
        a: path.a,
        b: path.b,
        delta: 3.0 * delta,
        locality: path.locality + delta,
    };
    check_path(m, &out)?;
    Ok(out)
}

fn nearest_in(space: &FiniteMetricSpace, from: usize, set: &[usize]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for &i in set {
        let d = space.d(from, i);
        match best {
            Some((_, bd)) if d >= bd => {}
            _ => best = Some((i, d)),
        }
    }
    best
}

/// Re-check every path invariant exactly; used after construction and by
/// the soundness tests.
pub fn check_path(m: &MeasuredSpace, path: &QuasiPath) -> Result<()> {
    if path.nodes.first() != Some(&path.a) || path.nodes.last() != Some(&path.b) {
        return Err(Error::Domain("path endpoints do not match".into()));
    }
    let d = m.d(path.a, path.b);
    for w in path.nodes.windows(2) {
        let hop = m.d(w[0], w[1]);
        if hop > path.delta * d {
            return Err(Error::Domain(format!(
                "hop {} -> {} of length {hop} exceeds delta * d(a,b) = {}",
                w[0],
                w[1],
                path.delta * d
            )));
        }
    }
    for &node in &path.nodes[1..path.nodes.len().saturating_sub(1)] {
        if m.d(path.a, node) > path.locality * d {
            return Err(Error::Domain(format!(
                "interior node {node} escapes B(a, locality * d(a,b))"
            )));
        }
    }
    Ok(())
}

/// Re-check a split against the vertex set that produced it.
pub fn check_split(
    m: &MeasuredSpace,
    split: &SeparatingDecomposition,
    a: usize,
    b: usize,
    delta: f64,
    locality: f64,
) -> Result<()> {
    let d = m.d(a, b);
    let expected = search_vertices(m, a, b, locality * d);
    let mut combined: Vec<usize> =
        split.a_side.iter().chain(&split.b_side).copied().collect();
    combined.sort_unstable();
    if combined != expected {
        return Err(Error::Domain("split does not partition the search ball".into()));
    }
    if !split.a_side.contains(&a) || !split.b_side.contains(&b) {
        return Err(Error::Domain("split sides do not contain their endpoints".into()));
    }
    if split.a_side.iter().any(|i| split.b_side.contains(i)) {
        return Err(Error::Domain("split sides overlap".into()));
    }
    let mut gap = f64::INFINITY;
    for &i in &split.a_side {
        for &j in &split.b_side {
            gap = gap.min(m.d(i, j));
        }
    }
    if gap != split.gap {
        return Err(Error::Domain(format!("stored gap {} != exhaustive gap {gap}", split.gap)));
    }
    if !(split.gap > delta * d) {
        return Err(Error::Domain(format!(
            "gap {} does not exceed delta * d(a,b) = {}",
            split.gap,
            delta * d
        )));
    }
    Ok(())
}

/// All-targets connectivity sweep for a fixed source.
///
/// For `locality >= 1` the per-target graphs are monotone in
/// `d(x, target)`: both the search ball and the hop threshold grow with
/// the target distance. Activating edges in that order over a union-find
/// answers every target with the exact same ball/threshold comparisons as
/// the per-target breadth-first search, in one pass.
///
/// Returns the sub-list of `targets` that are NOT connected to `x`.
pub(crate) fn disconnected_targets(
    space: &FiniteMetricSpace,
    members: &[usize],
    x: usize,
    targets: &[usize],
    delta: f64,
    locality: f64,
) -> Vec<usize> {
    debug_assert!(locality >= 1.0);
    let k = members.len();
    let pos: std::collections::HashMap<usize, usize> =
        members.iter().enumerate().map(|(p, &v)| (v, p)).collect();
    let px = pos[&x];

    // queries sorted by distance from x, ascending
    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.sort_by(|&i, &j| {
        space
            .d(x, targets[i])
            .total_cmp(&space.d(x, targets[j]))
            .then(targets[i].cmp(&targets[j]))
    });
    let query_dist: Vec<f64> = order.iter().map(|&i| space.d(x, targets[i])).collect();

    // first query index at which `value <= scale * query_dist[idx]` holds
    let first_active = |value: f64, scale: f64| -> usize {
        let mut lo = 0usize;
        let mut hi = query_dist.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if scale * query_dist[mid] >= value {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    };

    let mut buckets: Vec<Vec<(u32, u32)>> = vec![Vec::new(); query_dist.len()];
    for u in 0..k {
        let du = space.d(x, members[u]);
        for v in (u + 1)..k {
            let idx = first_active(space.d(members[u], members[v]), delta)
                .max(first_active(du, locality))
                .max(first_active(space.d(x, members[v]), locality));
            if idx < buckets.len() {
                buckets[idx].push((u as u32, v as u32));
            }
        }
    }

    let mut uf = UnionFind::new(k);
    let mut out = Vec::new();
    for (qi, &ti) in order.iter().enumerate() {
        for &(u, v) in &buckets[qi] {
            uf.union(u as usize, v as usize);
        }
        let pt = pos[&targets[ti]];
        if uf.find(pt) != uf.find(px) {
            out.push(targets[ti]);
        }
    }
    out.sort_unstable();
    out
}
