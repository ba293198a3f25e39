//! The cycles cross ratio `⟦C₁, C₂; C₃, C₄⟧` and quantities expressed
//! through it.

use core::fmt;

use crate::cycle::{Cycle, Point, C_REAL};
use crate::error::{Error, Result};
use crate::numeric::{approx_eq, lowest_order_ratio, Complex, ScalarLimit, Tolerance, Vec4};

/// Value of a cycles cross ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CrossRatioValue {
    Finite(f64),
    /// `⟨C₁, C₄⟩⟨C₂, C₃⟩ = 0` while `⟨C₁, C₃⟩⟨C₂, C₄⟩ ≠ 0`.
    Infinite,
    /// Both `⟨C₁, C₄⟩⟨C₂, C₃⟩` and `⟨C₁, C₃⟩⟨C₂, C₄⟩` vanish.
    Indeterminate,
}

impl CrossRatioValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl From<ScalarLimit> for CrossRatioValue {
    fn from(limit: ScalarLimit) -> Self {
        match limit {
            ScalarLimit::Finite(v) => Self::Finite(v),
            ScalarLimit::Infinite => Self::Infinite,
        }
    }
}

impl fmt::Display for CrossRatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinite => f.write_str("inf"),
            Self::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

/// `⟦C₁, C₂; C₃, C₄⟧ = ⟨C₁, C₃⟩⟨C₂, C₄⟩ / (⟨C₁, C₄⟩⟨C₂, C₃⟩)`.
///
/// Which case applies is decided on the products of unit length
/// representatives, so rescaling any argument never changes the tag. The
/// finite value is computed from the products as given.
pub fn cross_ratio(
    c1: &Cycle,
    c2: &Cycle,
    c3: &Cycle,
    c4: &Cycle,
    tol: Tolerance,
) -> CrossRatioValue {
    let vanishes = |a: &Cycle, b: &Cycle| tol.is_zero(a.unit_product(b));
    let den_zero = vanishes(c1, c4) || vanishes(c2, c3);
    let num_zero = vanishes(c1, c3) || vanishes(c2, c4);
    match (den_zero, num_zero) {
        (false, true) => CrossRatioValue::Finite(0.0),
        (false, false) => CrossRatioValue::Finite(
            c1.product(c3) * c2.product(c4) / (c1.product(c4) * c2.product(c3)),
        ),
        (true, false) => CrossRatioValue::Infinite,
        (true, true) => CrossRatioValue::Indeterminate,
    }
}

/// `cap(C, C₁) = ⟦C, C₁; C₁, C⟧`, the squared inversive distance.
///
/// `0` for orthogonal cycles, `1` for tangent ones and above `1` for
/// disjoint ones.
pub fn capacitance(c: &Cycle, c1: &Cycle, tol: Tolerance) -> CrossRatioValue {
    cross_ratio(c, c1, c1, c, tol)
}

/// Steiner power through cross ratios with the real line:
/// `⟦C, C_ℝ; C₁, C_ℝ⟧ + √⟦C, C_ℝ; C, C_ℝ⟧ · √⟦C₁, C_ℝ; C₁, C_ℝ⟧`.
///
/// Needs no normalization of the inputs and is invariant under maps fixing
/// the real line. For `k = 1` representatives it equals
/// `(−sgn(nn₁)⟨C, C₁⟩ + √(⟨C, C⟩⟨C₁, C₁⟩)) / (2|nn₁|)`; in particular it is
/// [`Cycle::steiner_power`] divided by `2|nn₁|` when the two centres are on
/// opposite sides of the real line.
pub fn steiner_power_cr(c: &Cycle, c1: &Cycle, tol: Tolerance) -> Result<f64> {
    let term = |a: &Cycle, b: &Cycle| {
        cross_ratio(a, &C_REAL, b, &C_REAL, tol)
            .finite()
            .ok_or(Error::UndefinedTerm)
    };
    let (mixed, own, other) = (term(c, c1)?, term(c, c)?, term(c1, c1)?);
    if own < -tol.eps_abs || other < -tol.eps_abs {
        return Err(Error::NegativeRadicand);
    }
    Ok(mixed + libm::sqrt(own.max(0.0)) * libm::sqrt(other.max(0.0)))
}

/// Classical cross ratio `(z₁, z₂; z₃, z₄) = (z₁ − z₃)(z₂ − z₄) / ((z₁ − z₄)(z₂ − z₃))`.
///
/// Harmonic conjugates with respect to `z₁, z₂` (here `c₁c₂ = −z₁z₂` with
/// the midpoint of `z₁, z₂` at the origin) give `−1`, and the cycles cross
/// ratio of the corresponding zero radius cycles is its squared modulus:
///
/// ```
/// use cycles_core::{cross_ratio, point_cross_ratio, Complex, Cycle, Point, Tolerance};
///
/// let (z1, z2) = (Complex::new(-2.0, 0.0), Complex::new(2.0, 0.0));
/// let (c1, c2) = (Complex::new(1.0, 0.0), Complex::new(4.0, 0.0));
/// assert_eq!(c1 * c2, -(z1 * z2));
/// assert_eq!(point_cross_ratio(c1, c2, z1, z2), Complex::new(-1.0, 0.0));
///
/// let cycle = |z: Complex| Cycle::from_point(Point::from_complex(z).into());
/// let value = cross_ratio(&cycle(c1), &cycle(c2), &cycle(z1), &cycle(z2), Tolerance::DEFAULT);
/// assert_eq!(value.finite(), Some(1.0));
/// ```
pub fn point_cross_ratio(z1: Complex, z2: Complex, z3: Complex, z4: Complex) -> Complex {
    (z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3))
}

/// Rescales by a power of two so the largest component is in `[0.5, 1)`;
/// exact in floating point.
fn binary_normalized(v: Vec4) -> (Vec4, f64) {
    let (_, exp) = libm::frexp(v.max_abs());
    let factor = libm::ldexp(1.0, -exp);
    (v.scale(factor), factor)
}

/// Polynomials in `t` for the cycle family `base + t·direction`.
struct LinearFamily {
    base: Cycle,
    direction: Cycle,
}

impl LinearFamily {
    fn product_with(&self, c: &Cycle) -> [f64; 2] {
        [self.base.product(c), self.direction.product(c)]
    }

    fn self_product(&self) -> [f64; 3] {
        [
            self.base.product(&self.base),
            2.0 * self.base.product(&self.direction),
            self.direction.product(&self.direction),
        ]
    }
}

fn square(p: [f64; 2]) -> [f64; 3] {
    [p[0] * p[0], 2.0 * p[0] * p[1], p[1] * p[1]]
}

fn scaled(p: [f64; 3], s: f64) -> [f64; 3] {
    p.map(|x| x * s)
}

/// `⟦C, Z_t; Z_t, C⟧` as `t → 0⁺` for the cycles `Z_t` centred at `center`
/// with squared radius `t`.
///
/// The numerator `⟨C, Z_t⟩²` and denominator `⟨C, C⟩⟨Z_t, Z_t⟩` are
/// expanded exactly in `t` and the limit taken by comparing the lowest
/// order coefficients. Any non-isotropic `C` through the centre resolves to
/// `0` (orthogonality); a `C` missing the centre gives the plain value
/// `cap(C, Z₀) = ∞`.
pub fn resolve_orthogonal_limit(
    c: &Cycle,
    center: Point,
    tol: Tolerance,
) -> Result<CrossRatioValue> {
    let (c, _) = binary_normalized(c.coords());
    let c = Cycle::from_vec4(c);
    let z0 = Cycle::with_radius_squared(center, 0.0);
    let (base, factor) = binary_normalized(z0.coords());
    let family = LinearFamily {
        base: Cycle::from_vec4(base),
        direction: Cycle::new(0.0, 0.0, 0.0, -factor),
    };
    let num = square(family.product_with(&c));
    let den = scaled(family.self_product(), c.product(&c));
    Ok(lowest_order_ratio(&num, &den, tol)?.into())
}

/// Value `1` assigned to `⟦Z, C; C, Z⟧` for a point `Z` on `C`, obtained
/// from the pencil `C_t = (1 − t)Z + tC` where `⟦C_t, C; C, C_t⟧` is
/// identically `1` for `t > 0`.
///
/// Both polynomials of `⟦C_t, C; C, C_t⟧` are formed exactly and compared
/// coefficientwise before the value is returned.
pub fn resolve_tangent_limit(z: &Cycle, c: &Cycle, tol: Tolerance) -> Result<f64> {
    if !z.is_point(tol) {
        return Err(Error::NotAPoint);
    }
    if !c.passes_through(z, tol)? {
        return Err(Error::NotIncident);
    }
    let z = Cycle::from_vec4(binary_normalized(z.coords()).0);
    let c = Cycle::from_vec4(binary_normalized(c.coords()).0);
    let family = LinearFamily {
        base: z,
        direction: Cycle::from_vec4(c.coords() - z.coords()),
    };
    let num = square(family.product_with(&c));
    let den = scaled(family.self_product(), c.product(&c));

    let limit = lowest_order_ratio(&num, &den, tol)?;
    let scale = num
        .iter()
        .chain(den.iter())
        .fold(0.0f64, |a, x| a.max(x.abs()));
    let coefficient_tol = Tolerance {
        eps_abs: tol.eps_abs * scale,
        eps_rel: tol.eps_rel,
    };
    let identical = num
        .iter()
        .zip(den.iter())
        .all(|(a, b)| approx_eq(*a, *b, coefficient_tol));
    match limit {
        ScalarLimit::Finite(v) if identical && approx_eq(v, 1.0, tol) => Ok(1.0),
        _ => Err(Error::NotIdenticallyOne),
    }
}
