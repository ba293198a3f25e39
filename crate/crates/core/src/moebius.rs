//! Fractional linear transformations acting on points and cycles, and
//! reflections in cycles.

use crate::cycle::{Cycle, ExtendedPoint, Point};
use crate::error::{Error, Result};
use crate::numeric::{Complex, Mat2, Tolerance};

/// Invertible matrix `[[α, β], [γ, δ]]` of the map `z ↦ (αz + β)/(γz + δ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMatrix(Mat2);

impl MoebiusMatrix {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex, tol: Tolerance) -> Result<Self> {
        Self::from_mat2(Mat2::new(a, b, c, d), tol)
    }

    pub fn from_mat2(m: Mat2, tol: Tolerance) -> Result<Self> {
        if m.det().norm() <= tol.eps_abs || !m.det().norm().is_finite() {
            return Err(Error::Singular);
        }
        Ok(Self(m))
    }

    /// Matrix with real entries.
    pub fn real(a: f64, b: f64, c: f64, d: f64, tol: Tolerance) -> Result<Self> {
        let re = |x| Complex::new(x, 0.0);
        Self::new(re(a), re(b), re(c), re(d), tol)
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn det(&self) -> Complex {
        self.0.det()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMatrix) -> MoebiusMatrix {
        MoebiusMatrix(self.0 * other.0)
    }

    pub fn inverse(&self) -> MoebiusMatrix {
        MoebiusMatrix(self.0.adj().scale(self.det().inv()))
    }

    /// Real entries and positive determinant: the map fixes the real line
    /// and the upper half-plane.
    pub fn preserves_upper_half_plane(&self, tol: Tolerance) -> bool {
        self.0 .0.iter().flatten().all(|z| tol.is_zero(z.im)) && self.det().re > 0.0
    }

    /// `z ↦ (αz + β)/(γz + δ)` on the Riemann sphere.
    pub fn apply_to_point(&self, z: ExtendedPoint, tol: Tolerance) -> ExtendedPoint {
        let [[a, b], [c, d]] = self.0 .0;
        let (num, den) = match z {
            ExtendedPoint::Infinity => (a, c),
            ExtendedPoint::Finite(p) => {
                let z = p.to_complex();
                (a * z + b, c * z + d)
            }
        };
        if den.norm() <= tol.eps_abs * num.norm().max(1.0) {
            ExtendedPoint::Infinity
        } else {
            ExtendedPoint::Finite(Point::from_complex(num / den))
        }
    }

    /// Image of a cycle, `M̄ C M⁻¹` taken projectively.
    ///
    /// Computed as `M̄ C adj(M) / |det M|`. The literal `M̄ C M⁻¹` differs
    /// from a proper FSCc matrix by the unit factor `conj(s)/s`, `s² = det M`;
    /// multiplying by `det M / |det M|` removes it, keeps the orientation and
    /// keeps cycle products unchanged.
    pub fn apply_to_cycle(&self, c: &Cycle, tol: Tolerance) -> Result<Cycle> {
        let image = self.0.conj() * *c.to_fsc().matrix() * self.0.adj();
        let image = image.scale(Complex::new(1.0 / self.det().norm(), 0.0));
        Cycle::from_fsc(&image, tol)
    }
}

/// Reflection of a cycle in the real axis: `(k, l, n, m) ↦ (k, l, −n, m)`.
pub fn conjugate_cycle(c: &Cycle) -> Cycle {
    Cycle::new(c.k, c.l, -c.n, c.m)
}

/// Reflection of `c` in the cycle `mirror`, FSCc matrix `C C̄₁ C`.
///
/// Mirrors with imaginary radius are allowed; only isotropic mirrors are
/// rejected.
pub fn reflect_in_cycle(mirror: &Cycle, c: &Cycle, tol: Tolerance) -> Result<Cycle> {
    if mirror.is_isotropic(tol) {
        return Err(Error::DegenerateMirror);
    }
    let m = *mirror.to_fsc().matrix();
    let image = m * *c.to_fsc().conj().matrix() * m;
    Cycle::from_fsc(&image, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::C_REAL;
    use proptest::prelude::*;

    const TOL: Tolerance = Tolerance::DEFAULT;
    const UNIT: Cycle = Cycle::new(1.0, 0.0, 0.0, -1.0);

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn fin(x: f64, y: f64) -> ExtendedPoint {
        ExtendedPoint::Finite(Point::new(x, y))
    }

    fn pt(x: f64, y: f64) -> Cycle {
        Cycle::from_point(fin(x, y))
    }

    #[test]
    fn singular_matrix_rejected() {
        assert_eq!(
            MoebiusMatrix::real(1.0, 2.0, 2.0, 4.0, TOL),
            Err(Error::Singular)
        );
    }

    #[test]
    fn point_action_examples() {
        let shift = MoebiusMatrix::real(1.0, 1.0, 0.0, 1.0, TOL).unwrap();
        assert_eq!(shift.apply_to_point(fin(0.0, 0.0), TOL), fin(1.0, 0.0));
        assert_eq!(
            shift.apply_to_point(ExtendedPoint::Infinity, TOL),
            ExtendedPoint::Infinity
        );
        let flip = MoebiusMatrix::real(0.0, 1.0, 1.0, 0.0, TOL).unwrap();
        assert_eq!(
            flip.apply_to_point(ExtendedPoint::Infinity, TOL),
            fin(0.0, 0.0)
        );
        assert_eq!(
            flip.apply_to_point(fin(0.0, 0.0), TOL),
            ExtendedPoint::Infinity
        );
        let pole = MoebiusMatrix::real(1.0, 0.0, 1.0, 1.0, TOL).unwrap();
        assert_eq!(
            pole.apply_to_point(fin(-1.0, 0.0), TOL),
            ExtendedPoint::Infinity
        );
    }

    #[test]
    fn cycle_action_examples() {
        let generic = Cycle::new(2.0, -1.0, 0.5, 3.0);
        let id = MoebiusMatrix::identity();
        assert!(id
            .apply_to_cycle(&generic, TOL)
            .unwrap()
            .proj_eq(&generic, TOL));

        let shift = MoebiusMatrix::real(1.0, 1.0, 0.0, 1.0, TOL).unwrap();
        let image = shift.apply_to_cycle(&UNIT, TOL).unwrap();
        assert!(image.proj_eq(&Cycle::new(1.0, 1.0, 0.0, 0.0), TOL));
        // three-point check: 1, i, −1 go to 2, 1 + i, 0
        for (x, y) in [(2.0, 0.0), (1.0, 1.0), (0.0, 0.0)] {
            assert!(image.passes_through(&pt(x, y), TOL).unwrap());
        }

        let flip = MoebiusMatrix::real(0.0, 1.0, 1.0, 0.0, TOL).unwrap();
        assert!(flip
            .apply_to_cycle(&C_REAL, TOL)
            .unwrap()
            .proj_eq(&C_REAL, TOL));
    }

    #[test]
    fn rotation_keeps_fsc_structure() {
        // the literal M̄CM⁻¹ has complex off-diagonals for this matrix
        let phase = c(0.6, 0.8);
        let rot = MoebiusMatrix::new(phase, c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), TOL).unwrap();
        let circle = Cycle::from_circle(Point::new(1.0, 0.0), 0.5);
        let image = rot.apply_to_cycle(&circle, TOL).unwrap();
        assert!(image.proj_eq(&Cycle::from_circle(Point::new(0.6, 0.8), 0.5), TOL));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(
            conjugate_cycle(&Cycle::new(1.0, 0.0, 1.0, 0.0)),
            Cycle::new(1.0, 0.0, -1.0, 0.0)
        );
        assert!(conjugate_cycle(&C_REAL).proj_eq(&C_REAL, TOL));
        assert_eq!(conjugate_cycle(&pt(2.0, 3.0)), pt(2.0, -3.0));
        let m = Cycle::new(1.0, 2.0, -3.0, 0.5);
        let matrix_conj = Cycle::from_fsc(m.to_fsc().conj().matrix(), TOL).unwrap();
        assert_eq!(matrix_conj, conjugate_cycle(&m));
    }

    #[test]
    fn reflection_examples() {
        let c1 = Cycle::new(2.0, -1.0, 3.0, 1.0);
        let mirrored = reflect_in_cycle(&C_REAL, &c1, TOL).unwrap();
        assert!(mirrored.proj_eq(&conjugate_cycle(&c1), TOL));

        let image = reflect_in_cycle(&UNIT, &pt(2.0, 0.0), TOL).unwrap();
        assert!(image.proj_eq(&pt(0.5, 0.0), TOL));

        let twice = reflect_in_cycle(&UNIT, &image, TOL).unwrap();
        assert!(twice.proj_eq(&pt(2.0, 0.0), TOL));

        assert_eq!(
            reflect_in_cycle(&pt(0.0, 0.0), &c1, TOL),
            Err(Error::DegenerateMirror)
        );
    }

    #[test]
    fn reflection_in_imaginary_mirror_is_allowed() {
        let mirror = Cycle::new(1.0, 0.0, 0.0, 1.0);
        let c1 = Cycle::from_circle(Point::new(1.0, 1.0), 0.5);
        let image = reflect_in_cycle(&mirror, &c1, TOL).unwrap();
        let back = reflect_in_cycle(&mirror, &image, TOL).unwrap();
        assert!(back.proj_eq(&c1, TOL));
    }

    #[test]
    fn compose_and_inverse() {
        let m =
            MoebiusMatrix::new(c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0), c(2.0, -0.5), TOL).unwrap();
        let p = m.compose(&m.inverse());
        let [[a, b], [cc, d]] = p.matrix().0;
        assert!((a - c(1.0, 0.0)).norm() < 1e-12 && (d - c(1.0, 0.0)).norm() < 1e-12);
        assert!(b.norm() < 1e-12 && cc.norm() < 1e-12);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -3.0f64..3.0
    }

    fn complex() -> impl Strategy<Value = Complex> {
        (coord(), coord()).prop_map(|(re, im)| Complex::new(re, im))
    }

    fn moebius() -> impl Strategy<Value = MoebiusMatrix> {
        (complex(), complex(), complex(), complex()).prop_filter_map(
            "well conditioned",
            |(a, b, cc, d)| {
                let m = Mat2::new(a, b, cc, d);
                (m.det().norm() > 0.5).then(|| MoebiusMatrix::from_mat2(m, TOL).unwrap())
            },
        )
    }

    fn real_moebius() -> impl Strategy<Value = MoebiusMatrix> {
        (coord(), coord(), coord(), coord()).prop_filter_map("det > 0", |(a, b, cc, d)| {
            (a * d - b * cc > 0.5).then(|| MoebiusMatrix::real(a, b, cc, d, TOL).unwrap())
        })
    }

    fn cycle() -> impl Strategy<Value = Cycle> {
        (coord(), coord(), coord(), coord()).prop_map(|(k, l, n, m)| Cycle::new(k, l, n, m))
    }

    proptest! {
        #[test]
        fn incidence_is_preserved(
            m in moebius(), x in coord(), y in coord(), r in 0.2f64..3.0,
        ) {
            let circle = Cycle::from_circle(Point::new(x, y), r);
            let image = m.apply_to_cycle(&circle, TOL).unwrap();
            let tol = Tolerance::uniform(1e-7).unwrap();
            for i in 0..8 {
                let angle = f64::from(i) * core::f64::consts::FRAC_PI_4;
                let on = fin(x + r * angle.cos(), y + r * angle.sin());
                match m.apply_to_point(on, TOL) {
                    ExtendedPoint::Finite(p) => {
                        let z = Cycle::from_point(p.into());
                        prop_assert!(image.is_orthogonal(&z, tol), "{}", image.unit_product(&z));
                    }
                    ExtendedPoint::Infinity => prop_assert!(image.is_line(tol)),
                }
            }
        }

        #[test]
        fn orthogonality_is_preserved(m in moebius(), a in cycle(), b in cycle()) {
            // make b orthogonal to a: b − (⟨a,b⟩/⟨a,a⟩) a when a is not isotropic
            prop_assume!(a.product(&a).abs() > 0.1);
            let b = Cycle::from_vec4(b.coords() - a.coords().scale(b.product(&a) / a.product(&a)));
            prop_assume!(b.coords().norm() > 0.1);
            let (ma, mb) = (m.apply_to_cycle(&a, TOL).unwrap(), m.apply_to_cycle(&b, TOL).unwrap());
            prop_assert!(ma.is_orthogonal(&mb, Tolerance::uniform(1e-8).unwrap()));
        }

        #[test]
        fn action_is_a_homomorphism(m1 in moebius(), m2 in moebius(), c in cycle(), x in coord(), y in coord()) {
            prop_assume!(c.coords().norm() > 0.1);
            let tol = Tolerance::uniform(1e-7).unwrap();
            let composed = m1.compose(&m2).apply_to_cycle(&c, TOL).unwrap();
            let stepwise = m1.apply_to_cycle(&m2.apply_to_cycle(&c, TOL).unwrap(), TOL).unwrap();
            prop_assert!(composed.proj_eq(&stepwise, tol));
            if let (ExtendedPoint::Finite(p), ExtendedPoint::Finite(q)) = (
                m1.compose(&m2).apply_to_point(fin(x, y), TOL),
                m1.apply_to_point(m2.apply_to_point(fin(x, y), TOL), TOL),
            ) {
                prop_assert!((p.to_complex() - q.to_complex()).norm() <= 1e-7 * p.to_complex().norm().max(1.0));
            }
        }

        #[test]
        fn point_cycles_follow_points(m in moebius(), x in coord(), y in coord()) {
            let tol = Tolerance::uniform(1e-7).unwrap();
            let image = m.apply_to_cycle(&pt(x, y), TOL).unwrap();
            let expected = Cycle::from_point(m.apply_to_point(fin(x, y), TOL));
            prop_assert!(image.proj_eq(&expected, tol));
        }

        #[test]
        fn real_maps_fix_the_real_line(m in real_moebius()) {
            prop_assert!(m.preserves_upper_half_plane(TOL));
            prop_assert!(m.apply_to_cycle(&C_REAL, TOL).unwrap().oriented_eq(&C_REAL, TOL));
        }

        #[test]
        fn reflection_is_an_involution_preserving_inversive_distance(
            mirror in cycle(), a in cycle(), b in cycle(),
        ) {
            prop_assume!(mirror.unit_product(&mirror).abs() > 0.05);
            prop_assume!(a.unit_product(&a).abs() > 0.05 && b.unit_product(&b).abs() > 0.05);
            let tol = Tolerance::uniform(1e-7).unwrap();
            let ra = reflect_in_cycle(&mirror, &a, TOL).unwrap();
            let rb = reflect_in_cycle(&mirror, &b, TOL).unwrap();
            prop_assert!(reflect_in_cycle(&mirror, &ra, TOL).unwrap().proj_eq(&a, tol));
            let before = a.inversive_distance(&b, TOL).unwrap();
            let after = ra.inversive_distance(&rb, TOL).unwrap();
            match (before, after) {
                (crate::InversiveDistance::Real(x), crate::InversiveDistance::Real(y))
                | (crate::InversiveDistance::Imaginary(x), crate::InversiveDistance::Imaginary(y)) => {
                    prop_assert!((x - y).abs() <= 1e-7 * x.abs().max(1.0), "{} vs {}", x, y);
                }
                _ => prop_assert!(false, "kind changed: {:?} {:?}", before, after),
            }
        }
    }
}
