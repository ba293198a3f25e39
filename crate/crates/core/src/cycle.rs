//! Cycles, their FSCc matrices and the cycle product.

use core::fmt;

use crate::error::{Error, Result};
use crate::numeric::{approx_eq, Complex, Mat2, Tolerance, Vec4};

/// A finite point `z = x + iy` of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex) -> Self {
        Self::new(z.re, z.im)
    }
}

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedPoint {
    Finite(Point),
    Infinity,
}

impl From<Point> for ExtendedPoint {
    fn from(p: Point) -> Self {
        ExtendedPoint::Finite(p)
    }
}

/// Homogeneous tetracyclic coordinates `(k, l, n, m)` of the cycle
/// `k(x² + y²) − 2lx − 2ny + m = 0`.
///
/// Cycles are projective: `(k, l, n, m)` and `λ(k, l, n, m)` describe the
/// same set of points. The sign of `λ` carries the orientation, which every
/// predicate here ignores.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cycle {
    pub k: f64,
    pub l: f64,
    pub n: f64,
    pub m: f64,
}

/// The point at infinity, `(0, 0, 0, 1)`.
pub const C_INF: Cycle = Cycle::new(0.0, 0.0, 0.0, 1.0);

/// The real line `y = 0`, stored as `(0, 0, 1, 0)`.
///
/// The FSCc matrix `[[i, 0], [0, i]]` decodes to the oppositely oriented
/// representative `(0, 0, −1, 0)`; with positive `n` the upper half-plane is
/// on the positive side.
pub const C_REAL: Cycle = Cycle::new(0.0, 0.0, 1.0, 0.0);

impl Cycle {
    /// Coordinates are taken as given; see [`Cycle::try_new`] for the
    /// checked constructor.
    pub const fn new(k: f64, l: f64, n: f64, m: f64) -> Self {
        Self { k, l, n, m }
    }

    pub fn try_new(k: f64, l: f64, n: f64, m: f64) -> Result<Self> {
        Self::try_from_vec4(Vec4::new(k, l, n, m))
    }

    pub fn try_from_vec4(v: Vec4) -> Result<Self> {
        if v.0.iter().all(|x| *x == 0.0) || !v.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self::from_vec4(v))
    }

    pub const fn from_vec4(v: Vec4) -> Self {
        let [k, l, n, m] = v.0;
        Self { k, l, n, m }
    }

    pub const fn coords(&self) -> Vec4 {
        Vec4([self.k, self.l, self.n, self.m])
    }

    pub fn scaled(&self, factor: f64) -> Cycle {
        Cycle::from_vec4(self.coords().scale(factor))
    }

    /// Circle with the given centre and squared radius; a negative value
    /// gives a circle with imaginary radius.
    pub fn with_radius_squared(center: Point, radius_squared: f64) -> Cycle {
        let Point { x, y } = center;
        Cycle::new(1.0, x, y, x * x + y * y - radius_squared)
    }

    /// `(1, x₀, y₀, x₀² + y₀² − r²)`.
    pub fn from_circle(center: Point, r: f64) -> Cycle {
        Self::with_radius_squared(center, r * r)
    }

    /// The line `l·x + n·y = half_m`, i.e. `(0, l, n, 2·half_m)`.
    pub fn from_line(l: f64, n: f64, half_m: f64) -> Result<Cycle> {
        if l == 0.0 && n == 0.0 {
            return Err(Error::DegenerateLine);
        }
        Ok(Cycle::new(0.0, l, n, 2.0 * half_m))
    }

    /// Zero radius cycle `(1, x, y, x² + y²)`, or [`C_INF`].
    pub fn from_point(z: ExtendedPoint) -> Cycle {
        match z {
            ExtendedPoint::Finite(p) => Self::with_radius_squared(p, 0.0),
            ExtendedPoint::Infinity => C_INF,
        }
    }

    /// The cycle product `⟨C, C₁⟩ = km₁ + k₁m − 2ll₁ − 2nn₁`.
    pub fn product(&self, other: &Cycle) -> f64 {
        self.k * other.m + other.k * self.m - 2.0 * self.l * other.l - 2.0 * self.n * other.n
    }

    /// `det` of the FSCc matrix, `mk − l² − n²`; `⟨C, C⟩ = 2 det`.
    pub fn det_fsc(&self) -> f64 {
        self.m * self.k - self.l * self.l - self.n * self.n
    }

    /// Product of the unit Euclidean length representatives; the quantity
    /// all "vanishes" decisions are made on.
    pub fn unit_product(&self, other: &Cycle) -> f64 {
        match (self.coords().normalized(), other.coords().normalized()) {
            (Some(a), Some(b)) => Cycle::from_vec4(a).product(&Cycle::from_vec4(b)),
            _ => 0.0,
        }
    }

    pub fn proj_eq(&self, other: &Cycle, tol: Tolerance) -> bool {
        self.coords().proj_eq(&other.coords(), tol)
    }

    pub fn oriented_eq(&self, other: &Cycle, tol: Tolerance) -> bool {
        self.coords().oriented_eq(&other.coords(), tol)
    }

    pub fn to_fsc(&self) -> FscMatrix {
        FscMatrix::from(*self)
    }

    /// Decodes an FSCc-shaped matrix, see [`FscMatrix::decode`].
    pub fn from_fsc(matrix: &Mat2, tol: Tolerance) -> Result<Cycle> {
        FscMatrix::decode(matrix, tol)
    }

    fn unit_k(&self) -> f64 {
        self.coords().normalized().map_or(0.0, |v| v.0[0])
    }

    fn require_circle(&self, tol: Tolerance) -> Result<()> {
        if tol.is_zero(self.unit_k()) {
            Err(Error::IsLine)
        } else {
            Ok(())
        }
    }

    /// `(l² + n² − km) / k²`; negative for circles with imaginary radius.
    pub fn radius_squared(&self, tol: Tolerance) -> Result<f64> {
        self.require_circle(tol)?;
        Ok(-self.det_fsc() / (self.k * self.k))
    }

    /// `(l/k, n/k)`.
    pub fn center(&self, tol: Tolerance) -> Result<Point> {
        self.require_circle(tol)?;
        Ok(Point::new(self.l / self.k, self.n / self.k))
    }

    /// Orthogonal to the point at infinity.
    pub fn is_line(&self, tol: Tolerance) -> bool {
        tol.is_zero(self.unit_product(&C_INF))
    }

    /// Self-orthogonal, including the point at infinity.
    pub fn is_isotropic(&self, tol: Tolerance) -> bool {
        tol.is_zero(self.unit_product(self))
    }

    /// A finite zero radius cycle: isotropic and not the point at infinity.
    pub fn is_point(&self, tol: Tolerance) -> bool {
        self.is_isotropic(tol) && !self.proj_eq(&C_INF, tol)
    }

    pub fn is_orthogonal(&self, other: &Cycle, tol: Tolerance) -> bool {
        tol.is_zero(self.unit_product(other))
    }

    /// Incidence with a point, given as a zero radius cycle.
    pub fn passes_through(&self, point: &Cycle, tol: Tolerance) -> Result<bool> {
        if !point.is_point(tol) {
            return Err(Error::NotAPoint);
        }
        Ok(self.is_orthogonal(point, tol))
    }

    /// A geodesic of the upper half-plane model: orthogonal to the real line.
    pub fn is_lobachevsky_line(&self, tol: Tolerance) -> bool {
        self.is_orthogonal(&C_REAL, tol)
    }

    /// `⟨C, C₁⟩² = ⟨C, C⟩·⟨C₁, C₁⟩`.
    ///
    /// Decided on `θ² = 1` when neither cycle is isotropic, so that small
    /// circles far from the origin are not all reported tangent; a point is
    /// tangent to the cycles through it.
    pub fn is_tangent(&self, other: &Cycle, tol: Tolerance) -> bool {
        if let Ok(theta) = self.inversive_distance(other, tol) {
            return approx_eq(theta.squared(), 1.0, tol);
        }
        let (Some(a), Some(b)) = (self.coords().normalized(), other.coords().normalized()) else {
            return false;
        };
        let (a, b) = (Cycle::from_vec4(a), Cycle::from_vec4(b));
        let cross = a.product(&b);
        approx_eq(cross * cross, a.product(&a) * b.product(&b), tol)
    }

    /// Inversive distance `θ = ⟨C, C₁⟩ / √(⟨C, C⟩⟨C₁, C₁⟩)`.
    ///
    /// With both cycles scaled to `k > 0` this equals `(d² − r² − R²)/(2rR)`,
    /// the negative of the classical `(r² + R² − d²)/(2rR)`: externally
    /// tangent circles give `θ = 1`, concentric circles of radii 1 and 2
    /// give `θ = −5/4`. The sign also flips with the orientation of either
    /// cycle; `θ²` is unaffected by both.
    pub fn inversive_distance(&self, other: &Cycle, tol: Tolerance) -> Result<InversiveDistance> {
        if self.is_isotropic(tol) || other.is_isotropic(tol) {
            return Err(Error::IsotropicCycle);
        }
        let radicand = self.product(self) * other.product(other);
        let cross = self.product(other);
        Ok(if radicand > 0.0 {
            InversiveDistance::Real(cross / libm::sqrt(radicand))
        } else {
            InversiveDistance::Imaginary(-cross / libm::sqrt(-radicand))
        })
    }

    /// Generalised Steiner power `⟨C, C₁⟩ + √(⟨C, C⟩⟨C₁, C₁⟩)` with both
    /// cycles scaled to `k = 1`.
    ///
    /// For real circles this is `d² − (r − r₁)²`; for two points it is the
    /// squared distance.
    pub fn steiner_power(&self, other: &Cycle, tol: Tolerance) -> Result<f64> {
        let (a, b) = (self.normalize_k(tol)?, other.normalize_k(tol)?);
        let radicand = a.product(&a) * b.product(&b);
        if radicand < -tol.eps_abs {
            return Err(Error::NegativeRadicand);
        }
        Ok(a.product(&b) + libm::sqrt(radicand.max(0.0)))
    }

    /// Representative with `k = 1`.
    pub fn normalize_k(&self, tol: Tolerance) -> Result<Cycle> {
        self.require_circle(tol)?;
        Ok(self.scaled(1.0 / self.k))
    }

    /// Representative with `⟨C, C⟩ = ±1`, scaled by a positive factor so the
    /// orientation is kept.
    pub fn normalize_det(&self, tol: Tolerance) -> Result<Cycle> {
        if self.is_isotropic(tol) {
            return Err(Error::IsotropicCycle);
        }
        Ok(self.scaled(1.0 / libm::sqrt(self.product(self).abs())))
    }

    /// The point represented by a zero radius cycle.
    pub fn to_point(&self, tol: Tolerance) -> Result<ExtendedPoint> {
        if !self.is_isotropic(tol) {
            return Err(Error::NotAPoint);
        }
        if tol.is_zero(self.unit_k()) {
            Ok(ExtendedPoint::Infinity)
        } else {
            Ok(ExtendedPoint::Finite(Point::new(
                self.l / self.k,
                self.n / self.k,
            )))
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.k, self.l, self.n, self.m)
    }
}

/// Inversive distance value; `Imaginary(x)` stands for `θ = i·x`, which
/// happens when exactly one of the cycles has an imaginary radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InversiveDistance {
    Real(f64),
    Imaginary(f64),
}

impl InversiveDistance {
    /// `θ²`, which is real in both cases.
    pub fn squared(&self) -> f64 {
        match *self {
            Self::Real(x) => x * x,
            Self::Imaginary(x) => -x * x,
        }
    }
}

/// The FSCc matrix `[[L̄, −m], [k, −L]]` with `L = l + i n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FscMatrix(Mat2);

impl From<Cycle> for FscMatrix {
    fn from(c: Cycle) -> Self {
        let big_l = Complex::new(c.l, c.n);
        FscMatrix(Mat2::new(
            big_l.conj(),
            Complex::new(-c.m, 0.0),
            Complex::new(c.k, 0.0),
            -big_l,
        ))
    }
}

impl FscMatrix {
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// Entrywise conjugate, the FSCc matrix of the reflection in the real axis.
    pub fn conj(&self) -> FscMatrix {
        FscMatrix(self.0.conj())
    }

    pub fn det(&self) -> f64 {
        self.0.det().re
    }

    /// Reads `(k, L, m)` back from a matrix of FSCc shape.
    ///
    /// The diagonal carries `L` twice (`L̄` and `−L`); the two readings are
    /// averaged. The off-diagonal entries must be real and the two diagonal
    /// readings must agree, both relative to the largest entry, otherwise
    /// [`Error::StructureLost`] is returned.
    pub fn decode(matrix: &Mat2, tol: Tolerance) -> Result<Cycle> {
        let [[a, b], [c, d]] = matrix.0;
        let scale = matrix.max_abs();
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::ZeroVector);
        }
        let violation = b.im.abs().max(c.im.abs()).max((a.conj() + d).norm());
        if violation > tol.eps_abs && violation > tol.eps_rel * scale {
            return Err(Error::StructureLost {
                residual: violation / scale,
            });
        }
        let big_l = (a.conj() - d) * 0.5;
        Cycle::try_new(c.re, big_l.re, big_l.im, -b.re)
    }
}
