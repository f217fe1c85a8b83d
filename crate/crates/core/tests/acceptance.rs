//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measurements (run with `-- --nocapture` to see them).
//!
//! Budgets are asserted in wall-clock time; run via `cargo test` (the
//! workspace test profile is optimized) or `--release`.

#![allow(clippy::needless_range_loop)]

use rectilens::besipart::{extract_partitions, verify_family};
use rectilens::blowup::{blowup, classify, ClassifyParams, LadderSpec};
use rectilens::covering::{greedy_net, greedy_separated_cover, verify_t_properties};
use rectilens::distances::lipschitz_distance;
use rectilens::generators::{gen_circle, gen_four_corner_cantor, gen_lipschitz_graph, gen_segment};
use rectilens::quasipath::{is_q, is_qp, quasi_path, QuasiPathCertificate};
use rectilens::space::{validate_metric, FiniteMetricSpace, MeasuredSpace, PointedMeasuredSpace};
use std::time::Instant;

/// xorshift64* so the suite is deterministic without extra dependencies.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }
    fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn min_pair_distance(m: &MeasuredSpace) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            best = best.min(m.d(i, j));
        }
    }
    best
}

// -------------------------------------------------------------------------
// Criterion 1: cover guarantees on a 50-configuration sweep
// -------------------------------------------------------------------------

#[test]
fn criterion_1_cover_guarantees() {
    let start = Instant::now();
    let mut configs: Vec<(MeasuredSpace, f64, String)> = Vec::new();
    for m in [100, 200, 400] {
        let cloud = gen_segment(m).unwrap();
        for r in [0.02, 0.03, 0.05, 0.1, 0.15, 0.2] {
            configs.push((cloud.clone(), r, format!("segment m={m} r={r}")));
        }
    }
    for m in [100, 200, 400] {
        let cloud = gen_circle(m).unwrap();
        for r in [0.01, 0.015, 0.02, 0.04, 0.06, 0.08] {
            configs.push((cloud.clone(), r, format!("circle m={m} r={r}")));
        }
    }
    for depth in 2..=5u32 {
        let cloud = gen_four_corner_cantor(depth).unwrap();
        let diam = cloud.space().full_diameter();
        for f in [48.0, 12.0, 4.0] {
            configs.push((cloud.clone(), diam / f, format!("cantor depth={depth} r=diam/{f}")));
        }
    }
    // two spares to land exactly on the 50-configuration sweep
    configs.push((gen_segment(300).unwrap(), 0.07, "segment m=300 r=0.07".into()));
    configs.push((gen_circle(300).unwrap(), 0.03, "circle m=300 r=0.03".into()));
    assert_eq!(configs.len(), 50);

    let mut worst_t2 = f64::INFINITY;
    let mut worst_t3 = f64::INFINITY;
    for (cloud, r, name) in &configs {
        let cover = greedy_separated_cover(cloud, *r).unwrap();
        // the guarantee needs the mass bounds at radii r/4 and 3r, which
        // the sampling grid pins as its endpoints
        let c = cloud.ahlfors_constant(r / 4.0, 3.0 * r, 1.0).unwrap();
        assert!(c.is_finite(), "{name}: C is infinite");
        let report = verify_t_properties(cloud, &cover, c, 1).unwrap();
        assert!(report.t1, "{name}: T1 violated");
        assert!(
            report.t2,
            "{name}: T2 violated: {} > {}",
            report.t2_diameter_sum, report.t2_bound
        );
        assert!(
            report.t3,
            "{name}: T3 violated: {} > {}",
            report.t3_max_overlap, report.t3_bound
        );
        worst_t2 = worst_t2.min(report.t2_margin);
        worst_t3 = worst_t3.min(report.t3_margin);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "criterion 1 took {elapsed:.2}s, budget 10s");
    println!(
        "[PASS] criterion 1: cover guarantees on 50 configs, zero violations \
         (worst margins: T2 {worst_t2:.3}, T3 {worst_t3:.3}) in {elapsed:.2}s"
    );
}

// -------------------------------------------------------------------------
// Criterion 2: certificate soundness and completeness on random spaces
// -------------------------------------------------------------------------

/// Exhaustive simple-chain enumeration; independent of the search code.
fn exhaustive_has_path(
    m: &MeasuredSpace,
    vertices: &[usize],
    cur: usize,
    b: usize,
    step: f64,
    used: &mut Vec<usize>,
) -> bool {
    if cur == b {
        return true;
    }
    for &v in vertices {
        if used.contains(&v) || m.d(cur, v) > step {
            continue;
        }
        used.push(v);
        if exhaustive_has_path(m, vertices, v, b, step, used) {
            return true;
        }
        used.pop();
    }
    false
}

fn random_space(rng: &mut Rng) -> MeasuredSpace {
    let n = 2 + rng.below(7); // 2..=8 points
    if rng.unit() < 0.5 {
        // Euclidean cloud
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.range(0.0, 2.0), rng.range(0.0, 2.0)])
            .collect();
        MeasuredSpace::new(
            FiniteMetricSpace::from_points(&pts).unwrap(),
            vec![1.0 / n as f64; n],
        )
        .unwrap()
    } else {
        // abstract metric: shortest-path closure of a random symmetric matrix
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = rng.range(0.1, 2.0);
                d[i][j] = v;
                d[j][i] = v;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        let report = validate_metric(&d, 1e-12).unwrap();
        assert!(report.ok, "closure failed to produce a metric");
        MeasuredSpace::new(
            FiniteMetricSpace::from_matrix(d, Some(1e-12)).unwrap(),
            vec![1.0 / n as f64; n],
        )
        .unwrap()
    }
}

#[test]
fn criterion_2_certificate_soundness_completeness() {
    let start = Instant::now();
    let mut rng = Rng::new(0x5eed_cafe);
    let mut paths = 0usize;
    let mut splits = 0usize;
    for _ in 0..1000 {
        let m = random_space(&mut rng);
        let delta = rng.range(0.15, 1.2);
        let locality = rng.range(0.8, 3.0);
        for a in 0..m.len() {
            for b in 0..m.len() {
                if a == b {
                    continue;
                }
                let d = m.d(a, b);
                let cert = quasi_path(&m, a, b, delta, locality).unwrap();
                // the same vertex set the search used, rebuilt here
                let mut vertices: Vec<usize> = (0..m.len())
                    .filter(|&i| m.d(a, i) <= locality * d || i == a || i == b)
                    .collect();
                vertices.sort_unstable();
                let mut used = vec![a];
                let oracle =
                    exhaustive_has_path(&m, &vertices, a, b, delta * d, &mut used);
                match cert {
                    QuasiPathCertificate::Path(p) => {
                        assert!(oracle, "search found a path the oracle denies");
                        paths += 1;
                        for w in p.nodes.windows(2) {
                            assert!(m.d(w[0], w[1]) <= delta * d);
                        }
                    }
                    QuasiPathCertificate::Split(s) => {
                        assert!(!oracle, "oracle found a path the search missed");
                        splits += 1;
                        assert!(
                            s.gap > delta * d,
                            "split gap {} fails to exceed {}",
                            s.gap,
                            delta * d
                        );
                        // the stored gap is the exhaustive minimum
                        let mut gap = f64::INFINITY;
                        for &i in &s.a_side {
                            for &j in &s.b_side {
                                gap = gap.min(m.d(i, j));
                            }
                        }
                        assert_eq!(gap, s.gap);
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "criterion 2 took {elapsed:.2}s, budget 30s");
    println!(
        "[PASS] criterion 2: 1000 random spaces, {paths} paths and {splits} splits \
         all agree with the exhaustive oracle in {elapsed:.2}s"
    );
}

// -------------------------------------------------------------------------
// Criterion 3: Besicovitch family invariants
// -------------------------------------------------------------------------

#[test]
fn criterion_3_besipart_invariants() {
    let start = Instant::now();
    let delta = 1.0 / 6.0;
    let mut total_partitions = 0usize;
    for depth in 3..=5u32 {
        let m = gen_four_corner_cantor(depth).unwrap();
        let diam = m.space().full_diameter();
        let nn = min_pair_distance(&m);
        for locality in [1.0, 2.0] {
            let bound = delta * diam / (3.0 * (2.0 * locality + 1.0));
            let rhat = bound.min(nn / 3.0);
            assert!(rhat <= bound);
            // seeds: net coarse enough to leave uncovered clusters, still
            // below delta so every recorded gap stays below delta
            let seed_scale = bound.max(2.0 * nn);
            assert!(seed_scale < delta);
            let seeds = greedy_net(&m, seed_scale).unwrap();
            let family = extract_partitions(&m, &seeds, delta, locality, rhat).unwrap();
            let report = verify_family(&m, &family, delta, locality);
            assert!(report.p1, "depth {depth} R {locality}: P1 violated");
            assert!(report.p2, "depth {depth} R {locality}: P2 violated");
            assert!(
                !family.partitions.is_empty(),
                "depth {depth} R {locality}: empty family"
            );
            total_partitions += family.partitions.len();
        }
    }
    // the two-cluster fixture: exactly one partition with omega = 0.8
    let fixture = MeasuredSpace::new(
        FiniteMetricSpace::from_points(&[
            vec![0.0, 0.0],
            vec![0.1, 0.0],
            vec![0.9, 0.0],
            vec![1.0, 0.0],
        ])
        .unwrap(),
        vec![0.25; 4],
    )
    .unwrap();
    let family = extract_partitions(&fixture, &[0], 0.9, 1.0, 0.05).unwrap();
    assert_eq!(family.partitions.len(), 1);
    assert!(
        (family.partitions[0].omega - 0.8).abs() <= 1e-12,
        "fixture omega {}",
        family.partitions[0].omega
    );
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "[PASS] criterion 3: P1/P2 zero violations on Cantor depths 3-5 x R in {{1,2}} \
         ({total_partitions} partitions), fixture omega = 0.8 exactly, in {elapsed:.2}s"
    );
}

// -------------------------------------------------------------------------
// Criterion 4: dichotomy regression at desk scale
// -------------------------------------------------------------------------

#[test]
fn criterion_4_dichotomy_regression() {
    let delta = 1.0 / 6.0;
    let base = ClassifyParams { delta, ..ClassifyParams::default() };

    // rectifiable corpora: the ladder starts at diam/16 for the two
    // endpoint-bearing curves so the coarse-scale boundary truncation
    // stays within the indeterminate allowance; the circle has no
    // endpoints and uses the default diam/4
    let mut results = Vec::new();
    for (name, cloud, r0_div) in [
        ("segment", gen_segment(400).unwrap(), Some(16.0)),
        ("circle", gen_circle(400).unwrap(), None),
        ("lipschitz-graph", gen_lipschitz_graph(400, 0.3, 1).unwrap(), Some(16.0)),
    ] {
        let start = Instant::now();
        let diam = cloud.space().full_diameter();
        let params = ClassifyParams {
            ladder: LadderSpec { r0: r0_div.map(|d| diam / d), lambda: 0.5 },
            ..base.clone()
        };
        let verdict = classify(&cloud, &params).unwrap();
        let elapsed = start.elapsed().as_secs_f64();
        assert!(elapsed < 60.0, "{name} took {elapsed:.2}s, budget 60s");
        assert!(
            verdict.fractions.rectifiable_like >= 0.9,
            "{name}: rectifiable fraction {:.3} below 0.9 ({:?})",
            verdict.fractions.rectifiable_like,
            verdict.fractions
        );
        results.push(format!(
            "{name} {:.1}% rect in {elapsed:.1}s",
            100.0 * verdict.fractions.rectifiable_like
        ));
    }

    let start = Instant::now();
    let cantor = gen_four_corner_cantor(4).unwrap();
    let verdict = classify(&cantor, &base).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "cantor took {elapsed:.2}s, budget 60s");
    assert!(
        verdict.fractions.unrectifiable_like >= 0.9,
        "cantor: unrectifiable fraction {:.3} below 0.9 ({:?})",
        verdict.fractions.unrectifiable_like,
        verdict.fractions
    );
    results.push(format!(
        "cantor-4 {:.1}% unrect in {elapsed:.1}s",
        100.0 * verdict.fractions.unrectifiable_like
    ));
    println!("[PASS] criterion 4: dichotomy regression: {}", results.join(", "));
}

// -------------------------------------------------------------------------
// Criterion 5: LP kernel against the grid brute-force oracle
// -------------------------------------------------------------------------

/// Grid brute force over potentials f in {-1, -0.9, ..., 1}^n filtered by
/// the admissibility constraints, then refined by a shrinking pattern
/// search over all sign directions. Independent of the solver.
fn lp_grid_oracle(
    space: &FiniteMetricSpace,
    mu: &[f64],
    nu: &[f64],
    l: f64,
    r: f64,
    x: usize,
) -> f64 {
    let n = space.len();
    let inside: Vec<bool> = (0..n).map(|i| space.d(x, i) <= r).collect();
    let feasible = |f: &[f64]| -> bool {
        for i in 0..n {
            if f[i].abs() > 1.0 + 1e-12 {
                return false;
            }
            if !inside[i] && f[i] != 0.0 {
                return false;
            }
            for j in (i + 1)..n {
                if (f[i] - f[j]).abs() > l * space.d(i, j) + 1e-12 {
                    return false;
                }
            }
        }
        true
    };
    let objective =
        |f: &[f64]| -> f64 { (0..n).map(|i| f[i] * (mu[i] - nu[i])).sum() };

    // coarse grid, step 0.1
    let steps = 21usize;
    let mut best = vec![0.0; n];
    let mut best_val = 0.0;
    let total = steps.pow(n as u32);
    let mut f = vec![0.0; n];
    for code in 0..total {
        let mut c = code;
        for v in f.iter_mut() {
            *v = -1.0 + 0.1 * (c % steps) as f64;
            c /= steps;
        }
        if feasible(&f) {
            let val = objective(&f);
            if val > best_val {
                best_val = val;
                best.copy_from_slice(&f);
            }
        }
    }

    // local refinement: pattern search over every sign direction, with a
    // shrinking step; the feasible set has 0/±1 edge directions, so this
    // converges to the optimum
    let dirs: Vec<Vec<f64>> = (0..3usize.pow(n as u32))
        .map(|code| {
            let mut c = code;
            (0..n)
                .map(|_| {
                    let d = (c % 3) as f64 - 1.0;
                    c /= 3;
                    d
                })
                .collect()
        })
        .filter(|d: &Vec<f64>| d.iter().any(|&v| v != 0.0))
        .collect();
    let mut h = 0.1;
    while h > 1e-10 {
        let mut improved = true;
        while improved {
            improved = false;
            for dir in &dirs {
                let cand: Vec<f64> =
                    best.iter().zip(dir).map(|(b, d)| b + h * d).collect();
                if feasible(&cand) {
                    let val = objective(&cand);
                    if val > best_val + 1e-15 {
                        best_val = val;
                        best = cand;
                        improved = true;
                    }
                }
            }
        }
        h /= 2.0;
    }
    best_val
}

#[test]
fn criterion_5_lp_kernel_vs_grid_oracle() {
    let start = Instant::now();
    let mut rng = Rng::new(0xf00d_f00d);
    let mut worst = 0.0_f64;
    for trial in 0..50 {
        let n = 2 + rng.below(3); // 2..=4
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.range(0.0, 1.5), rng.range(0.0, 1.5)])
            .collect();
        let space = FiniteMetricSpace::from_points(&pts).unwrap();
        let mu: Vec<f64> = (0..n).map(|_| rng.range(0.0, 1.0)).collect();
        let nu: Vec<f64> = (0..n).map(|_| rng.range(0.0, 1.0)).collect();
        let l = rng.range(0.4, 3.0);
        let r = rng.range(0.3, 2.5);
        let x = rng.below(n);
        let solved = lipschitz_distance(&space, &mu, &nu, l, r, x).unwrap();
        let oracle = lp_grid_oracle(&space, &mu, &nu, l, r, x);
        let err = (solved.value - oracle).abs();
        worst = worst.max(err);
        assert!(
            err <= 1e-6,
            "trial {trial}: solver {} vs oracle {oracle} (err {err:.3e})",
            solved.value
        );
        solved.potential.check(&space, 1e-9).unwrap();
    }
    // analytic two-point values min(L d, 2), exact
    for (d, l) in [(1.0, 1.0), (1.0, 3.0), (0.7, 2.0), (2.0, 0.6)] {
        let space =
            FiniteMetricSpace::from_points(&[vec![0.0, 0.0], vec![d, 0.0]]).unwrap();
        let out = lipschitz_distance(&space, &[1.0, 0.0], &[0.0, 1.0], l, 10.0, 0).unwrap();
        let expect = (l * d).min(2.0);
        assert_eq!(out.value, expect, "d={d}, L={l}");
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "[PASS] criterion 5: LP kernel matches the grid oracle on 50 instances \
         (worst error {worst:.2e}) and the analytic two-point values exactly, in {elapsed:.2}s"
    );
}

// -------------------------------------------------------------------------
// Criterion 6: invariant suites
// -------------------------------------------------------------------------

#[test]
fn criterion_6_invariant_suites() {
    let start = Instant::now();

    // blowup normalization within 1e-12 across corpora, points, scales
    let mut checked = 0usize;
    for cloud in [
        gen_segment(150).unwrap(),
        gen_circle(150).unwrap(),
        gen_four_corner_cantor(3).unwrap(),
    ] {
        let diam = cloud.space().full_diameter();
        for xi in [0usize, cloud.support().len() / 2] {
            let x = cloud.support()[xi];
            let p = PointedMeasuredSpace::new(cloud.clone(), x).unwrap();
            for div in [2.0, 4.0, 16.0] {
                let v = blowup(&p, diam / div, 2.0).unwrap();
                assert!((v.unit_ball_mass() - 1.0).abs() <= 1e-12);
                checked += 1;
            }
        }
    }

    // classifier scale invariance: exact verdict equality under dyadic
    // rescaling of distances and ladder
    for (cloud, r0) in [
        (gen_segment(120).unwrap(), 0.125),
        (gen_four_corner_cantor(3).unwrap(), 0.6),
    ] {
        let coords = cloud.space().coords().unwrap();
        let scaled_pts: Vec<Vec<f64>> = (0..cloud.len())
            .map(|i| coords.point(i).iter().map(|c| 4.0 * c).collect())
            .collect();
        let scaled = MeasuredSpace::new(
            FiniteMetricSpace::from_points(&scaled_pts).unwrap(),
            cloud.weights().iter().map(|w| 4.0 * w).collect(),
        )
        .unwrap();
        let params = |r0: f64| ClassifyParams {
            ladder: LadderSpec { r0: Some(r0), lambda: 0.5 },
            ..ClassifyParams::default()
        };
        let a = classify(&cloud, &params(r0)).unwrap();
        let b = classify(&scaled, &params(4.0 * r0)).unwrap();
        assert_eq!(a.labels, b.labels, "verdicts changed under scaling");
    }

    // certificate scale invariance on random small spaces
    let mut rng = Rng::new(0xabcd_1234);
    for _ in 0..50 {
        let n = 3 + rng.below(5);
        let pts: Vec<Vec<f64>> =
            (0..n).map(|_| vec![rng.range(0.0, 1.0), rng.range(0.0, 1.0)]).collect();
        let m = MeasuredSpace::new(
            FiniteMetricSpace::from_points(&pts).unwrap(),
            vec![1.0 / n as f64; n],
        )
        .unwrap();
        let scaled_pts: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| p.iter().map(|c| 4.0 * c).collect())
            .collect();
        let ms = MeasuredSpace::new(
            FiniteMetricSpace::from_points(&scaled_pts).unwrap(),
            vec![1.0 / n as f64; n],
        )
        .unwrap();
        let delta = rng.range(0.2, 0.9);
        let loc = rng.range(1.0, 2.5);
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let c1 = quasi_path(&m, a, b, delta, loc).unwrap();
                let c2 = quasi_path(&ms, a, b, delta, loc).unwrap();
                match (&c1, &c2) {
                    (QuasiPathCertificate::Path(p), QuasiPathCertificate::Path(q)) => {
                        assert_eq!(p.nodes, q.nodes)
                    }
                    (QuasiPathCertificate::Split(s), QuasiPathCertificate::Split(t)) => {
                        assert_eq!(s.a_side, t.a_side)
                    }
                    _ => panic!("certificate variant changed under scaling"),
                }
            }
        }
    }

    // Hausdorff distance pseudometric: triangle inequality on 1000 triples
    let cloud = gen_four_corner_cantor(3).unwrap();
    let n = cloud.len();
    let mut rng = Rng::new(0x7777_7777);
    let random_subset = |rng: &mut Rng| -> Vec<usize> {
        let size = 1 + rng.below(10);
        let mut s: Vec<usize> = (0..size).map(|_| rng.below(n)).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    for _ in 0..1000 {
        let a = random_subset(&mut rng);
        let b = random_subset(&mut rng);
        let c = random_subset(&mut rng);
        let dab = cloud.space().hausdorff_distance(&a, &b).unwrap();
        let dbc = cloud.space().hausdorff_distance(&b, &c).unwrap();
        let dac = cloud.space().hausdorff_distance(&a, &c).unwrap();
        assert!(dac <= dab + dbc + 1e-12, "triangle violated: {dac} > {dab} + {dbc}");
        assert_eq!(dab, cloud.space().hausdorff_distance(&b, &a).unwrap());
    }

    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "[PASS] criterion 6: invariants hold ({checked} blowup normalizations, \
         scale-invariant verdicts and certificates, 1000 Hausdorff triples) in {elapsed:.2}s"
    );
}

// -------------------------------------------------------------------------
// Criterion 7: the worked dyadic example
// -------------------------------------------------------------------------

#[test]
fn criterion_7_dyadic_worked_example() {
    // {1, 1/2, ..., 1/2^20} u {0}, origin last
    let mut xs: Vec<f64> = (0..=20).map(|n| 0.5_f64.powi(n)).collect();
    xs.push(0.0);
    let m = MeasuredSpace::new(
        FiniteMetricSpace::from_points(
            &xs.iter().map(|&x| vec![x, 0.0]).collect::<Vec<_>>(),
        )
        .unwrap(),
        vec![1.0 / 22.0; 22],
    )
    .unwrap();
    let origin = 21;

    // pointed membership at the origin holds at the printed parameters
    // (1, 1/2): each target is one direct hop away
    assert!(is_qp(&m, origin, 1.0, 0.5).unwrap().holds);

    // the global check fails in the worked example's substance, which
    // binds step parameter 1/2 and locality 1 (a "1/2-quasi-path" inside
    // the unit-distance ball; at the literal binding delta = 1 the direct
    // hop a -> b is always admissible and no space can fail)
    assert!(is_q(&m, 1.0, 0.5).unwrap().holds);
    let report = is_q(&m, 0.5, 1.0).unwrap();
    assert!(!report.holds);
    let (a, b, split) = report.witness.unwrap();
    let coords = m.space().coords().unwrap();
    let (xa, xb) = (coords.point(a)[0], coords.point(b)[0]);
    assert!(xa > 0.0 && xb > 0.0, "witness touches the origin");
    let ratio = if xa > xb { xa / xb } else { xb / xa };
    assert!(
        (ratio - 2.0).abs() < 1e-12,
        "witness ({xa}, {xb}) is not a consecutive dyadic pair"
    );
    assert!(split.gap > 0.5 * m.d(a, b));
    println!(
        "[PASS] criterion 7: dyadic example is pointed-connected at (1, 1/2) and fails \
         the global check at step 1/2 in the unit ball with witness ({xa}, {xb})"
    );
}
