//! Exhaustive pointed/unpointed Gromov-Hausdorff distance for tiny spaces.
//!
//! `d_GH = 1/2 min over correspondences of max |d_A(i,j) - d_B(i',j')|`,
//! where a correspondence is a relation total on both sides. A minimal
//! correspondence is always the union of a map `A -> B` and a map
//! `B -> A`, so the search branches over those two maps jointly with the
//! running distortion as the pruning bound. This is an oracle, not a
//! production matcher: the size cap keeps the search exhaustive.

use crate::error::{Error, Result};
use crate::space::FiniteMetricSpace;
use serde::{Deserialize, Serialize};

/// Hard cap on the side sizes accepted by [`gh_exact_small`].
pub const GH_SIZE_CAP: usize = 7;

/// A relation between two index sets, total on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub pairs: Vec<(usize, usize)>,
}

/// Result of the exhaustive search: the distance and a witnessing
/// correspondence attaining it.
#[derive(Debug, Clone)]
pub struct GhMatch {
    pub distance: f64,
    pub correspondence: Correspondence,
}

struct Search<'a> {
    a: &'a FiniteMetricSpace,
    b: &'a FiniteMetricSpace,
    pairs: Vec<(usize, usize)>,
    best: f64,
    best_pairs: Vec<(usize, usize)>,
}

impl Search<'_> {
    /// Distortion contributed by adding `(i, k)` against the placed pairs.
    fn added_distortion(&self, i: usize, k: usize) -> f64 {
        let mut worst = 0.0_f64;
        for &(j, l) in &self.pairs {
            worst = worst.max((self.a.d(i, j) - self.b.d(k, l)).abs());
        }
        worst
    }

    fn run(&mut self, stage: usize, order_a: &[Vec<usize>], cur: f64) {
        if cur >= self.best {
            return;
        }
        if stage == order_a.len() {
            let uncovered = self.uncovered_b();
            self.cover_b(0, &uncovered, cur);
            return;
        }
        // order_a[stage] lists candidate partners for A-point `stage`,
        // best-affinity first
        for &k in &order_a[stage] {
            let add = self.added_distortion(stage, k);
            let next = cur.max(add);
            if next >= self.best {
                continue;
            }
            self.pairs.push((stage, k));
            self.run(stage + 1, order_a, next);
            self.pairs.pop();
        }
    }

    fn uncovered_b(&self) -> Vec<usize> {
        (0..self.b.len())
            .filter(|&l| !self.pairs.iter().any(|&(_, k)| k == l))
            .collect()
    }

    fn cover_b(&mut self, idx: usize, uncovered: &[usize], cur: f64) {
        if cur >= self.best {
            return;
        }
        if idx == uncovered.len() {
            self.best = cur;
            self.best_pairs = self.pairs.clone();
            return;
        }
        let l = uncovered[idx];
        for j in 0..self.a.len() {
            let add = self.added_distortion(j, l);
            let next = cur.max(add);
            if next >= self.best {
                continue;
            }
            self.pairs.push((j, l));
            self.cover_b(idx + 1, uncovered, next);
            self.pairs.pop();
        }
    }
}

/// Exhaustive (pointed) Gromov-Hausdorff distance between spaces of at
/// most [`GH_SIZE_CAP`] points each; with `pointed = Some((xa, xb))` the
/// basepoints are forced to correspond.
pub fn gh_exact_small(
    a: &FiniteMetricSpace,
    b: &FiniteMetricSpace,
    pointed: Option<(usize, usize)>,
) -> Result<GhMatch> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("gh_exact_small: empty space".into()));
    }
    if a.len() > GH_SIZE_CAP || b.len() > GH_SIZE_CAP {
        return Err(Error::Refused(format!(
            "gh_exact_small is an exhaustive oracle capped at {GH_SIZE_CAP} points per side, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if let Some((xa, xb)) = pointed {
        if xa >= a.len() || xb >= b.len() {
            return Err(Error::Domain(format!("pointed pair ({xa}, {xb}) out of range")));
        }
    }

    // Candidate ordering: partners whose sorted distance rows look most
    // alike first, so the first full correspondence already gives a tight
    // pruning bound.
    let sig_a = sorted_rows(a);
    let sig_b = sorted_rows(b);
    let affinity = |i: usize, k: usize| -> f64 {
        sig_a[i]
            .iter()
            .zip(&sig_b[k])
            .map(|(p, q)| (p - q).abs())
            .fold(0.0_f64, f64::max)
    };
    let mut order_a: Vec<Vec<usize>> = (0..a.len())
        .map(|i| {
            let mut ks: Vec<usize> = (0..b.len()).collect();
            ks.sort_by(|&p, &q| affinity(i, p).total_cmp(&affinity(i, q)).then(p.cmp(&q)));
            ks
        })
        .collect();
    if let Some((xa, xb)) = pointed {
        order_a[xa] = vec![xb];
    }

    let mut search = Search { a, b, pairs: Vec::new(), best: f64::INFINITY, best_pairs: Vec::new() };
    search.run(0, &order_a, 0.0);
    let distortion = search.best;
    let mut pairs = search.best_pairs;
    pairs.sort_unstable();
    Ok(GhMatch { distance: distortion / 2.0, correspondence: Correspondence { pairs } })
}

fn sorted_rows(s: &FiniteMetricSpace) -> Vec<Vec<f64>> {
    let pad = GH_SIZE_CAP;
    (0..s.len())
        .map(|i| {
            let mut row: Vec<f64> = s.row(i).to_vec();
            row.sort_by(f64::total_cmp);
            row.resize(pad, f64::INFINITY);
            row
        })
        .collect()
}
