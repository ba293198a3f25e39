//! Cycles on the plane as points of a projective space.
//!
//! A *cycle* is a circle, a straight line, a point (zero radius circle) or a
//! circle with imaginary radius, encoded by homogeneous coordinates
//! `(k, l, n, m)` of the equation `k(x² + y²) − 2lx − 2ny + m = 0`.
//! The crate provides:
//!
//! - [`Cycle`] with its FSCc matrix `[[L̄, −m], [k, −L]]`, `L = l + i n`,
//!   and the indefinite cycle product `⟨C, C₁⟩ = km₁ + k₁m − 2ll₁ − 2nn₁`;
//! - the action of fractional linear transformations ([`MoebiusMatrix`]) on
//!   points and cycles, and reflections in cycles;
//! - the cycles cross ratio `⟦C₁, C₂; C₃, C₄⟧` with its finite, infinite and
//!   indeterminate cases, and the limits resolving the `0/0` case;
//! - figure constructions built from orthogonality: pencils, intersection
//!   points, the harmonic-conjugation figure and the Möbius invariant
//!   distance between cycles.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cross_ratio;
pub mod cycle;
mod error;
pub mod figures;
pub mod moebius;
pub mod numeric;

pub use cross_ratio::{
    capacitance, cross_ratio, point_cross_ratio, resolve_orthogonal_limit, resolve_tangent_limit,
    steiner_power_cr, CrossRatioValue,
};
pub use cycle::{Cycle, ExtendedPoint, FscMatrix, InversiveDistance, Point, C_INF, C_REAL};
pub use error::{Error, FigureStep, Result};
pub use figures::{
    complex_cross_ratio, harmonic_figure, intersection_points, moebius_distance, orthogonal_pencil,
    orthogonal_to_three, vertical_axis_formula, ComplexCrossRatio, ComplexCycle, DistanceReport,
    HarmonicReport, Pencil,
};
pub use moebius::{conjugate_cycle, reflect_in_cycle, MoebiusMatrix};
pub use numeric::{Complex, Mat2, QuadraticRoots, ScalarLimit, Tolerance, Vec4};
