//! Constructions built from orthogonality: pencils, intersection points,
//! the harmonic-conjugation figure and the Möbius invariant distance.

use core::cmp::Ordering;
use core::fmt;

use rand_core::RngCore;

use crate::cycle::{Cycle, ExtendedPoint, C_REAL};
use crate::error::{Error, FigureStep, Result};
use crate::moebius::reflect_in_cycle;
use crate::numeric::{nullspace, quadratic_roots, Complex, QuadraticRoots, Tolerance, Vec4};

/// Projective line through two cycles, parametrised as `(1 − t)·a + t·b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pencil {
    pub a: Cycle,
    pub b: Cycle,
}

impl Pencil {
    pub fn new(a: Cycle, b: Cycle, tol: Tolerance) -> Result<Pencil> {
        if a.coords().is_zero(tol) || b.coords().is_zero(tol) {
            return Err(Error::ZeroVector);
        }
        if a.proj_eq(&b, tol) {
            return Err(Error::CoincidentCycles);
        }
        Ok(Pencil { a, b })
    }

    pub fn at(&self, t: f64, tol: Tolerance) -> Result<Cycle> {
        let v = (1.0 - t) * self.a.coords() + t * self.b.coords();
        let scale = self.a.coords().max_abs().max(self.b.coords().max_abs());
        if tol.is_zero(v.max_abs() / scale) {
            return Err(Error::ZeroVector);
        }
        Ok(Cycle::from_vec4(v))
    }
}

/// Row `r` with `r · X = ⟨X, c⟩`.
fn orthogonality_row(c: &Cycle) -> Vec4 {
    Vec4::new(c.m, -2.0 * c.l, -2.0 * c.n, c.k)
}

/// Flips the sign so the first non-negligible coordinate is positive.
fn sign_fixed(v: Vec4, tol: Tolerance) -> Cycle {
    let lead =
        v.0.iter()
            .copied()
            .find(|x| !tol.is_zero(*x))
            .unwrap_or(1.0);
    Cycle::from_vec4(if lead < 0.0 { -v } else { v })
}

/// All cycles orthogonal to both `c` and `c1`.
pub fn orthogonal_pencil(c: &Cycle, c1: &Cycle, tol: Tolerance) -> Result<Pencil> {
    let basis = nullspace(&[orthogonality_row(c), orthogonality_row(c1)], tol);
    match basis[..] {
        [a, b] => Ok(Pencil {
            a: Cycle::from_vec4(a),
            b: Cycle::from_vec4(b),
        }),
        _ => Err(Error::DegenerateConstraints),
    }
}

/// The cycle orthogonal to three given ones, up to scale, with the first
/// non-zero coordinate made positive. It may have an imaginary radius.
pub fn orthogonal_to_three(c1: &Cycle, c2: &Cycle, c3: &Cycle, tol: Tolerance) -> Result<Cycle> {
    let rows = [c1, c2, c3].map(orthogonality_row);
    let basis = nullspace(&rows, tol);
    if basis.len() == 1 {
        Ok(sign_fixed(basis[0], tol))
    } else {
        Err(Error::DegenerateRank { basis })
    }
}

/// Cycle with complex coordinates; arises for the intersection points of
/// cycles which do not meet in the real plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexCycle {
    pub k: Complex,
    pub l: Complex,
    pub n: Complex,
    pub m: Complex,
}

impl From<Cycle> for ComplexCycle {
    fn from(c: Cycle) -> Self {
        let [k, l, n, m] = c.coords().0.map(|x| Complex::new(x, 0.0));
        ComplexCycle { k, l, n, m }
    }
}

impl ComplexCycle {
    pub const fn new(k: Complex, l: Complex, n: Complex, m: Complex) -> Self {
        ComplexCycle { k, l, n, m }
    }

    pub fn components(&self) -> [Complex; 4] {
        [self.k, self.l, self.n, self.m]
    }

    fn from_components([k, l, n, m]: [Complex; 4]) -> Self {
        ComplexCycle { k, l, n, m }
    }

    /// `s·a + b`.
    fn combination(s: Complex, a: &Cycle, b: &Cycle) -> Self {
        let (a, b) = (a.coords().0, b.coords().0);
        Self::from_components(core::array::from_fn(|i| s * a[i] + b[i]))
    }

    /// Cycle product extended bilinearly: no coordinate is conjugated.
    pub fn pairing(&self, other: &ComplexCycle) -> Complex {
        self.k * other.m + other.k * self.m - 2.0 * self.l * other.l - 2.0 * self.n * other.n
    }

    pub fn conj(&self) -> Self {
        Self::from_components(self.components().map(|z| z.conj()))
    }

    fn euclidean_norm(&self) -> f64 {
        libm::sqrt(self.components().iter().map(|z| z.norm_sqr()).sum())
    }

    fn unit(&self) -> Self {
        let norm = self.euclidean_norm();
        if norm == 0.0 {
            return *self;
        }
        Self::from_components(self.components().map(|z| z / norm))
    }

    /// Scaled so that `k = 1`, or, when `k` is negligible, so that the
    /// largest coordinate is `1`.
    pub fn canonical(&self, tol: Tolerance) -> Self {
        let c = self.components();
        let scale = c.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        if scale == 0.0 {
            return *self;
        }
        let pivot = if c[0].norm() > tol.eps_abs * scale {
            c[0]
        } else {
            c.iter().copied().fold(
                c[0],
                |best, z| if z.norm() > best.norm() { z } else { best },
            )
        };
        Self::from_components(c.map(|z| z / pivot))
    }

    /// The real cycle this represents, if its canonical form has
    /// negligible imaginary parts.
    pub fn to_real(&self, tol: Tolerance) -> Option<Cycle> {
        let c = self.canonical(tol).components();
        c.iter()
            .all(|z| z.im.abs() <= tol.eps_abs.max(tol.eps_rel * z.norm()))
            .then(|| Cycle::new(c[0].re, c[1].re, c[2].re, c[3].re))
    }

    pub fn is_real(&self, tol: Tolerance) -> bool {
        self.to_real(tol).is_some()
    }
}

impl fmt::Display for ComplexCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.k, self.l, self.n, self.m)
    }
}

/// Cross ratio whose value may be complex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ComplexCrossRatio {
    Finite(Complex),
    Infinite,
    Indeterminate,
}

impl ComplexCrossRatio {
    pub fn finite(self) -> Option<Complex> {
        match self {
            Self::Finite(w) => Some(w),
            _ => None,
        }
    }
}

/// `⟦C₁, C₂; C₃, C₄⟧` with the bilinear pairing; tags decided as for the
/// real cross ratio, on unit length representatives.
pub fn complex_cross_ratio(
    c1: &ComplexCycle,
    c2: &ComplexCycle,
    c3: &ComplexCycle,
    c4: &ComplexCycle,
    tol: Tolerance,
) -> ComplexCrossRatio {
    let vanishes =
        |a: &ComplexCycle, b: &ComplexCycle| tol.is_zero(a.unit().pairing(&b.unit()).norm());
    let den_zero = vanishes(c1, c4) || vanishes(c2, c3);
    let num_zero = vanishes(c1, c3) || vanishes(c2, c4);
    match (den_zero, num_zero) {
        (false, true) => ComplexCrossRatio::Finite(Complex::new(0.0, 0.0)),
        (false, false) => ComplexCrossRatio::Finite(
            c1.pairing(c3) * c2.pairing(c4) / (c1.pairing(c4) * c2.pairing(c3)),
        ),
        (true, false) => ComplexCrossRatio::Infinite,
        (true, true) => ComplexCrossRatio::Indeterminate,
    }
}

fn real_point_order(a: &Cycle, b: &Cycle, tol: Tolerance) -> Ordering {
    let key = |c: &Cycle| match c.to_point(tol) {
        Ok(ExtendedPoint::Finite(p)) => (0, p.x, p.y),
        _ => (1, 0.0, 0.0),
    };
    let (ka, kb) = (key(a), key(b));
    ka.0.cmp(&kb.0)
        .then(ka.1.partial_cmp(&kb.1).unwrap_or(Ordering::Equal))
        .then(ka.2.partial_cmp(&kb.2).unwrap_or(Ordering::Equal))
}

fn canonical_real(c: &Cycle, tol: Tolerance) -> Cycle {
    ComplexCycle::from(*c)
        .canonical(tol)
        .to_real(tol)
        .unwrap_or(*c)
}

/// The two self-orthogonal cycles orthogonal to both `c` and `co`: their
/// intersection points, complex when the cycles do not meet.
///
/// Real points come ordered by `(x, y)` with infinity last; a complex
/// conjugate pair comes with the member whose first non-real canonical
/// coordinate has positive imaginary part first. Touching cycles give the
/// point of contact twice.
pub fn intersection_points(
    c: &Cycle,
    co: &Cycle,
    tol: Tolerance,
) -> Result<(ComplexCycle, ComplexCycle)> {
    let Pencil { a, b } = orthogonal_pencil(c, co, tol)?;
    let (lead, trail) = if a.product(&a).abs() >= b.product(&b).abs() {
        (a, b)
    } else {
        (b, a)
    };
    // ⟨s·lead + trail, s·lead + trail⟩ = 0
    let roots = quadratic_roots(
        lead.product(&lead),
        2.0 * lead.product(&trail),
        trail.product(&trail),
        tol,
    )?;
    let real_at = |s: f64| Cycle::from_vec4(s * lead.coords() + trail.coords());
    let real_pair = |p: Cycle, q: Cycle| {
        let (p, q) = (canonical_real(&p, tol), canonical_real(&q, tol));
        let (p, q) = if real_point_order(&p, &q, tol) == Ordering::Greater {
            (q, p)
        } else {
            (p, q)
        };
        (ComplexCycle::from(p), ComplexCycle::from(q))
    };
    Ok(match roots {
        QuadraticRoots::Distinct(s1, s2) => real_pair(real_at(s1), real_at(s2)),
        QuadraticRoots::Double(s) => real_pair(real_at(s), real_at(s)),
        QuadraticRoots::Linear(s) => real_pair(real_at(s), lead),
        QuadraticRoots::Conjugate { re, im } => {
            let z = ComplexCycle::combination(Complex::new(re, im), &lead, &trail).canonical(tol);
            let w = z.conj();
            let first_imaginary = z
                .components()
                .iter()
                .map(|x| x.im)
                .find(|im| !tol.is_zero(*im))
                .unwrap_or(0.0);
            if first_imaginary >= 0.0 {
                (z, w)
            } else {
                (w, z)
            }
        }
    })
}

/// Everything constructed by [`harmonic_figure`].
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicReport {
    pub mirror: Cycle,
    pub c1: Cycle,
    /// Reflection of `c1` in the mirror.
    pub c2: Cycle,
    /// The chosen cycle orthogonal to the mirror and `c1`.
    pub co: Cycle,
    /// Parameter of `co` in the orthogonal pencil.
    pub t: f64,
    pub z1: ComplexCycle,
    pub z2: ComplexCycle,
    /// `⟦C₁, C₂; Z₁, Z₂⟧`, equal to `1`.
    pub cross_ratio: ComplexCrossRatio,
    /// `|⟨Co, C₂⟩|` on unit representatives; reflection keeps `Co ⊥ C₂`.
    pub orthogonality_residual: f64,
    /// `c1` is orthogonal to the mirror, so it is its own reflection.
    pub degenerate: bool,
}

const PENCIL_DRAWS: usize = 16;

/// Harmonic conjugation figure: `c2` is the reflection of `c1` in the
/// mirror, `co` any cycle orthogonal to the mirror and `c1`, and `z1, z2`
/// the intersection points of the mirror with `co`. Then
/// `⟦C₁, C₂; Z₁, Z₂⟧ = 1` whatever `co` was chosen.
///
/// `co` is drawn from the orthogonal pencil with a parameter in `[−1, 2)`
/// taken from `rng`; draws giving a zero-radius `co` are repeated.
pub fn harmonic_figure<R: RngCore + ?Sized>(
    mirror: &Cycle,
    c1: &Cycle,
    rng: &mut R,
    tol: Tolerance,
) -> Result<HarmonicReport> {
    let c2 = reflect_in_cycle(mirror, c1, tol).map_err(Error::at(FigureStep::Reflection))?;
    let pencil =
        orthogonal_pencil(mirror, c1, tol).map_err(Error::at(FigureStep::OrthogonalPencil))?;

    let mut chosen = Err(Error::IsotropicCycle);
    for _ in 0..PENCIL_DRAWS {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let t = -1.0 + 3.0 * u;
        match pencil.at(t, tol) {
            Ok(co) if !co.is_isotropic(tol) => {
                chosen = Ok((t, co));
                break;
            }
            Ok(_) => {}
            Err(e) => chosen = Err(e),
        }
    }
    let (t, co) = chosen.map_err(Error::at(FigureStep::PencilMember))?;
    let (z1, z2) =
        intersection_points(mirror, &co, tol).map_err(Error::at(FigureStep::IntersectionPoints))?;

    let (p1, p2) = (ComplexCycle::from(*c1), ComplexCycle::from(c2));
    Ok(HarmonicReport {
        mirror: *mirror,
        c1: *c1,
        c2,
        co,
        t,
        z1,
        z2,
        cross_ratio: complex_cross_ratio(&p1, &p2, &z1, &z2, tol),
        orthogonality_residual: co.unit_product(&c2).abs(),
        degenerate: c2.proj_eq(c1, tol),
    })
}

/// Result of [`moebius_distance`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceReport {
    /// Cycle orthogonal to both inputs and the real line.
    pub c: Cycle,
    pub z1: ComplexCycle,
    pub z2: ComplexCycle,
    /// `⟦C₁, C₂; Z₁, Z₂⟧`.
    pub cross_ratio: Complex,
    /// `½ log` of the cross ratio, principal branch.
    pub distance: Complex,
    /// The cross ratio is real and positive, so the distance is real.
    pub is_real: bool,
}

impl DistanceReport {
    /// The real signed distance; its sign follows the order of `z1, z2`.
    pub fn signed(&self) -> Option<f64> {
        self.is_real.then_some(self.distance.re)
    }

    /// `|d|`, the modulus for a non-real value.
    pub fn absolute(&self) -> f64 {
        if self.is_real {
            self.distance.re.abs()
        } else {
            self.distance.norm()
        }
    }
}

/// Möbius invariant distance `½ log ⟦C₁, C₂; Z₁, Z₂⟧`, where `Z₁, Z₂` are
/// the points where the real line meets the cycle orthogonal to `C₁`, `C₂`
/// and the real line.
///
/// On zero-radius cycles in the upper half-plane `|d|` is the Lobachevsky
/// distance. When the orthogonal cycle has an imaginary radius the points
/// are complex conjugate and the value is not real.
pub fn moebius_distance(c1: &Cycle, c2: &Cycle, tol: Tolerance) -> Result<DistanceReport> {
    if c1.proj_eq(&C_REAL, tol) || c2.proj_eq(&C_REAL, tol) {
        return Err(Error::Precondition("cycle equals real line"));
    }
    if c1.proj_eq(c2, tol) {
        return Err(Error::Precondition("cycles coincide"));
    }
    let c = orthogonal_to_three(c1, c2, &C_REAL, tol)
        .map_err(Error::at(FigureStep::CommonOrthogonal))?;
    if c.is_isotropic(tol) {
        return Err(Error::at(FigureStep::CommonOrthogonal)(
            Error::IsotropicCycle,
        ));
    }
    let (z1, z2) =
        intersection_points(&c, &C_REAL, tol).map_err(Error::at(FigureStep::IntersectionPoints))?;

    let (p1, p2) = (ComplexCycle::from(*c1), ComplexCycle::from(*c2));
    let w = match complex_cross_ratio(&p1, &p2, &z1, &z2, tol) {
        ComplexCrossRatio::Finite(w) if w.norm() != 0.0 => w,
        ComplexCrossRatio::Indeterminate => {
            return Err(Error::at(FigureStep::CrossRatio)(Error::UndefinedTerm))
        }
        _ => return Err(Error::LogOfZero),
    };
    let is_real = w.re > 0.0 && w.im.abs() <= tol.eps_abs.max(tol.eps_rel * w.norm());
    let distance = if is_real {
        Complex::new(0.5 * libm::log(w.re), 0.0)
    } else {
        0.5 * w.ln()
    };
    Ok(DistanceReport {
        c,
        z1,
        z2,
        cross_ratio: w,
        distance,
        is_real,
    })
}

/// `log(m₁/k₁) − log(k₂/m₂)`, a closed form proposed for cycles centred on
/// the imaginary axis.
///
/// It does not reproduce [`moebius_distance`]: for such cycles the
/// construction gives `½(log(m₁/k₁) − log(m₂/k₂))`.
pub fn vertical_axis_formula(c1: &Cycle, c2: &Cycle, tol: Tolerance) -> Result<f64> {
    let ratio = |c: &Cycle| -> Result<f64> {
        if c.is_line(tol) {
            return Err(Error::IsLine);
        }
        let r = c.m / c.k;
        if r > 0.0 {
            Ok(r)
        } else {
            Err(Error::Precondition("m/k must be positive"))
        }
    };
    Ok(libm::log(ratio(c1)?) - libm::log(1.0 / ratio(c2)?))
}
