//! Numeric substrate: tolerances, homogeneous 4-vectors, 2×2 complex
//! matrices and the small solvers the geometry needs.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Complex scalar used for `z = x + iy`, `L = l + in` and matrix entries.
pub type Complex = num_complex::Complex64;

/// Absolute and relative thresholds for floating point comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Tolerance {
    /// `eps_abs = eps_rel = 1e-9`.
    pub const DEFAULT: Tolerance = Tolerance {
        eps_abs: 1e-9,
        eps_rel: 1e-9,
    };

    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self> {
        let valid = |e: f64| e.is_finite() && e > 0.0;
        if valid(eps_abs) && valid(eps_rel) {
            Ok(Self { eps_abs, eps_rel })
        } else {
            Err(Error::InvalidTolerance)
        }
    }

    /// Same threshold for both the absolute and relative test.
    pub fn uniform(eps: f64) -> Result<Self> {
        Self::new(eps, eps)
    }

    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        approx_eq(a, b, *self)
    }

    pub fn is_zero(&self, a: f64) -> bool {
        a.abs() <= self.eps_abs
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `|a − b| ≤ eps_abs` or `|a − b| ≤ eps_rel · max(|a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, tol: Tolerance) -> bool {
    let diff = (a - b).abs();
    diff <= tol.eps_abs || diff <= tol.eps_rel * a.abs().max(b.abs())
}

/// Homogeneous coordinates of a point in three dimensional projective space.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self([a, b, c, d])
    }

    pub fn dot(&self, other: &Vec4) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn scale(&self, factor: f64) -> Vec4 {
        Vec4(self.0.map(|x| x * factor))
    }

    /// Unit Euclidean length representative, `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vec4> {
        let norm = self.norm();
        (norm > 0.0 && norm.is_finite()).then(|| self.scale(1.0 / norm))
    }

    /// All components within `eps_abs` of zero.
    pub fn is_zero(&self, tol: Tolerance) -> bool {
        self.0.iter().all(|x| tol.is_zero(*x))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Projective equality: `u = λ v` for some `λ ≠ 0`.
    ///
    /// Both vectors are brought to unit length and every 2×2 minor
    /// `uᵢvⱼ − uⱼvᵢ` must vanish within tolerance.
    pub fn proj_eq(&self, other: &Vec4, tol: Tolerance) -> bool {
        let (Some(u), Some(v)) = (self.normalized(), other.normalized()) else {
            return false;
        };
        for i in 0..4 {
            for j in (i + 1)..4 {
                if !approx_eq(u.0[i] * v.0[j], u.0[j] * v.0[i], tol) {
                    return false;
                }
            }
        }
        true
    }

    /// Projective equality with a positive factor.
    pub fn oriented_eq(&self, other: &Vec4, tol: Tolerance) -> bool {
        self.proj_eq(other, tol) && self.dot(other) > 0.0
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, rhs: Vec4) -> Vec4 {
        Vec4(core::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, rhs: Vec4) -> Vec4 {
        Vec4(core::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        self.scale(-1.0)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, rhs: Vec4) -> Vec4 {
        rhs.scale(self)
    }
}

/// Basis of the solutions `x` of `rows[i] · x = 0`.
///
/// Each row is scaled to unit length, then reduced by Gaussian elimination
/// with complete pivoting; a pivot below `eps_abs` ends the elimination.
/// The returned vectors are orthonormal and their count is `4 − rank`.
pub fn nullspace(rows: &[Vec4], tol: Tolerance) -> Vec<Vec4> {
    let mut a: Vec<[f64; 4]> = rows
        .iter()
        .filter_map(|r| r.normalized())
        .map(|r| r.0)
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut used = [false; 4];

    for r in 0..a.len() {
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            for (j, value) in row.iter().enumerate() {
                if !used[j] && best.is_none_or(|(_, _, b)| value.abs() > b) {
                    best = Some((i, j, value.abs()));
                }
            }
        }
        let Some((pi, pj, mag)) = best else { break };
        if mag <= tol.eps_abs {
            break;
        }
        a.swap(r, pi);
        let inv = 1.0 / a[r][pj];
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        a[r][pj] = 1.0;
        let pivot_row = a[r];
        for (i, row) in a.iter_mut().enumerate() {
            if i != r {
                let f = row[pj];
                if f != 0.0 {
                    for j in 0..4 {
                        row[j] -= f * pivot_row[j];
                    }
                    row[pj] = 0.0;
                }
            }
        }
        used[pj] = true;
        pivots.push((r, pj));
    }

    let mut basis: Vec<Vec4> = Vec::new();
    for free in (0..4).filter(|j| !used[*j]) {
        let mut x = [0.0; 4];
        x[free] = 1.0;
        for &(r, pj) in &pivots {
            x[pj] = -a[r][free];
        }
        // Gram-Schmidt against the vectors found so far.
        let mut v = Vec4(x);
        for b in &basis {
            v = v - b.scale(v.dot(b));
        }
        if let Some(v) = v.normalized() {
            basis.push(v);
        }
    }
    basis
}

/// Roots of `a t² + b t + c = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuadraticRoots {
    /// Two distinct real roots, ascending.
    Distinct(f64, f64),
    /// A real root of multiplicity two.
    Double(f64),
    /// The pair `re ± i im` with `im > 0`.
    Conjugate { re: f64, im: f64 },
    /// `a ≈ 0`: the single root of `b t + c`.
    Linear(f64),
}

pub fn quadratic_roots(a: f64, b: f64, c: f64, tol: Tolerance) -> Result<QuadraticRoots> {
    if tol.is_zero(a) && tol.is_zero(b) && tol.is_zero(c) {
        return Err(Error::AllZero);
    }
    if tol.is_zero(a) {
        if tol.is_zero(b) {
            return Err(Error::NoSolution);
        }
        return Ok(QuadraticRoots::Linear(-c / b));
    }
    let (bb, ac4) = (b * b, 4.0 * a * c);
    if approx_eq(bb, ac4, tol) {
        return Ok(QuadraticRoots::Double(-b / (2.0 * a)));
    }
    let disc = bb - ac4;
    if disc > 0.0 {
        let q = -0.5 * (b + libm::copysign(libm::sqrt(disc), b));
        let (r1, r2) = (q / a, c / q);
        Ok(if r1 <= r2 {
            QuadraticRoots::Distinct(r1, r2)
        } else {
            QuadraticRoots::Distinct(r2, r1)
        })
    } else {
        Ok(QuadraticRoots::Conjugate {
            re: -b / (2.0 * a),
            im: libm::sqrt(-disc) / (2.0 * a.abs()),
        })
    }
}

/// A limit value on the extended real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarLimit {
    Finite(f64),
    Infinite,
}

/// Limit of `num(t) / den(t)` as `t → 0⁺`.
///
/// Coefficients are in ascending powers of `t`; a coefficient within
/// `eps_abs` of zero counts as vanishing.
pub fn lowest_order_ratio(num: &[f64], den: &[f64], tol: Tolerance) -> Result<ScalarLimit> {
    let order = |p: &[f64]| p.iter().position(|c| !tol.is_zero(*c));
    match (order(num), order(den)) {
        (None, None) => Err(Error::BothZeroPolynomials),
        (None, Some(_)) => Ok(ScalarLimit::Finite(0.0)),
        (Some(_), None) => Ok(ScalarLimit::Infinite),
        (Some(on), Some(od)) if on > od => Ok(ScalarLimit::Finite(0.0)),
        (Some(on), Some(od)) if on < od => Ok(ScalarLimit::Infinite),
        (Some(o), Some(_)) => Ok(ScalarLimit::Finite(num[o] / den[o])),
    }
}

/// 2×2 complex matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex; 2]; 2]);

impl Mat2 {
    pub const fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        let (one, zero) = (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
        Self::new(one, zero, zero, one)
    }

    pub fn det(&self) -> Complex {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> Complex {
        self.0[0][0] + self.0[1][1]
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|row| row.map(|z| z.conj())))
    }

    /// Adjugate, `adj(M) = det(M) · M⁻¹`.
    pub fn adj(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self::new(d, -b, -c, a)
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self(self.0.map(|row| row.map(|z| z * factor)))
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |acc, z| acc.max(z.norm()))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (x, y) = (self.0, rhs.0);
        Mat2(core::array::from_fn(|i| {
            core::array::from_fn(|j| x[i][0] * y[0][j] + x[i][1] * y[1][j])
        }))
    }
}
