//! Rectifiability diagnostics for finite weighted metric spaces.
//!
//! The crate treats a weighted point cloud as a metric measure space and
//! provides, on top of the elementary metric/measure operations:
//!
//! * uniform covers with separated centers and verified size/overlap
//!   guarantees ([`covering`]);
//! * quasi-path connectivity certificates - either an explicit chain or a
//!   separating decomposition - and the pointed/global membership
//!   predicates built on them ([`quasipath`]);
//! * Besicovitch partitions with witness pairs, extracted by an
//!   iterative cover-cluster-bridge loop and thinned to an R-disjoint
//!   family ([`besipart`]);
//! * blowup (tangent-like) views across scale ladders, per-point
//!   connectivity/flatness profiles, tube-mass diagnostics, and a
//!   per-point rectifiable/unrectifiable classifier ([`blowup`]);
//! * an exact Lipschitz-potential distance kernel, pointed Hausdorff and
//!   composite measured distances, plus an exhaustive small-space
//!   Gromov-Hausdorff oracle ([`distances`]);
//! * deterministic reference corpora with length-calibrated weights
//!   ([`generators`]).
//!
//! The `rectilens` binary drives all of it in batch mode and writes
//! versioned JSON reports; see the README.

// Parameter validation deliberately uses `!(x > 0.0)` so that NaN fails
// the check; index-based loops are the house style of the numeric kernels.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod besipart;
pub mod blowup;
pub mod covering;
pub mod distances;
pub mod error;
pub mod generators;
pub mod io;
pub mod quasipath;
pub mod report;
pub mod space;
pub mod sum;

pub use error::{Error, Result};
pub use space::{FiniteMetricSpace, MeasuredSpace, PointedMeasuredSpace};
