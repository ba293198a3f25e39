//! Seeded invariant suites behind `cycles verify`.
//!
//! Every trial draws from its own ChaCha8 stream (`seed`, stream
//! `suite << 32 | trial`), so results are identical for any thread count.

use std::fmt::Write as _;

use cycles_core::{
    capacitance, cross_ratio, harmonic_figure, moebius_distance, point_cross_ratio,
    reflect_in_cycle, resolve_orthogonal_limit, resolve_tangent_limit, steiner_power_cr,
    vertical_axis_formula, Complex, CrossRatioValue, Cycle, ExtendedPoint, InversiveDistance,
    MoebiusMatrix, Point, Tolerance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub trials: usize,
    pub threads: usize,
    /// Use a corrupted cycle product in the squared-modulus suite.
    pub mutate_product: bool,
    pub tol: Tolerance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Trial = fn(&mut ChaCha8Rng, &Options) -> f64;

struct Suite {
    name: &'static str,
    tolerance: f64,
    trial: Trial,
}

const SUITES: [Suite; 13] = [
    Suite {
        name: "product = 2 det, C̄C = −det·I",
        tolerance: 0.0,
        trial: product_identity,
    },
    Suite {
        name: "cross ratio FLT invariance",
        tolerance: 1e-6,
        trial: flt_invariance,
    },
    Suite {
        name: "zero-radius squared modulus",
        tolerance: 1e-9,
        trial: squared_modulus,
    },
    Suite {
        name: "capacitance = θ²",
        tolerance: 1e-9,
        trial: capacitance_theta,
    },
    Suite {
        name: "limit resolutions 0 and 1",
        tolerance: 0.0,
        trial: limits,
    },
    Suite {
        name: "harmonic figure = 1",
        tolerance: 1e-6,
        trial: harmonic,
    },
    Suite {
        name: "distance = Lobachevsky metric",
        tolerance: 1e-9,
        trial: lobachevsky_metric,
    },
    Suite {
        name: "distance Möbius invariance",
        tolerance: 1e-6,
        trial: distance_invariance,
    },
    Suite {
        name: "distance additivity",
        tolerance: 1e-6,
        trial: additivity,
    },
    Suite {
        name: "reflection involution, θ kept",
        tolerance: 1e-6,
        trial: reflection,
    },
    Suite {
        name: "Steiner power = cross-ratio form",
        tolerance: 1e-9,
        trial: steiner_equality,
    },
    Suite {
        name: "Steiner cross-ratio form invariance",
        tolerance: 1e-6,
        trial: steiner_invariance,
    },
    Suite {
        name: "vertical-axis closed form relation",
        tolerance: 1e-6,
        trial: vertical_axis,
    },
];

pub fn run(options: &Options) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .enumerate()
        .map(|(index, suite)| run_suite(index as u64, suite, options))
        .collect()
}

fn trial_rng(seed: u64, suite: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite << 32) | trial);
    rng
}

fn run_suite(index: u64, suite: &Suite, options: &Options) -> SuiteResult {
    let trials = options.trials;
    let mut residuals = vec![0.0f64; trials];
    let threads = options.threads.clamp(1, trials.max(1));
    let chunk = trials.div_ceil(threads).max(1);
    std::thread::scope(|scope| {
        for (c, slot) in residuals.chunks_mut(chunk).enumerate() {
            scope.spawn(move || {
                for (i, r) in slot.iter_mut().enumerate() {
                    let trial = (c * chunk + i) as u64;
                    *r = (suite.trial)(&mut trial_rng(options.seed, index, trial), options);
                }
            });
        }
    });
    let fails = |r: &f64| r.is_nan() || *r > suite.tolerance;
    SuiteResult {
        name: suite.name,
        trials,
        failures: residuals.iter().filter(|r| fails(r)).count(),
        max_residual: residuals.iter().fold(0.0, |m, r| {
            if r.is_nan() {
                f64::INFINITY
            } else {
                m.max(*r)
            }
        }),
        tolerance: suite.tolerance,
    }
}

pub fn table(results: &[SuiteResult]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<40} {:>7} {:>9} {:>13} {:>10}  result",
        "suite", "trials", "failures", "max residual", "tolerance"
    );
    for r in results.iter().filter(|r| r.trials > 0) {
        let _ = writeln!(
            s,
            "{:<40} {:>7} {:>9} {:>13.3e} {:>10.0e}  {}",
            r.name,
            r.trials,
            r.failures,
            r.max_residual,
            r.tolerance,
            if r.passed() { "PASS" } else { "FAIL" }
        );
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(
        s,
        "{} of {} suites passed",
        results.len() - failed,
        results.len()
    );
    s
}

// generators

fn dyadic(rng: &mut ChaCha8Rng) -> f64 {
    let den = [1.0, 2.0, 4.0, 8.0][rng.gen_range(0..4)];
    f64::from(rng.gen_range(-20i32..=20)) / den
}

fn dyadic_cycle(rng: &mut ChaCha8Rng) -> Cycle {
    loop {
        let c = Cycle::new(dyadic(rng), dyadic(rng), dyadic(rng), dyadic(rng));
        if c.coords().max_abs() > 0.0 {
            return c;
        }
    }
}

fn generic_cycle(rng: &mut ChaCha8Rng, tol: Tolerance) -> Cycle {
    loop {
        let c = dyadic_cycle(rng);
        if !c.is_isotropic(tol) {
            return c;
        }
    }
}

fn pt(x: f64, y: f64) -> Cycle {
    Cycle::from_point(ExtendedPoint::Finite(Point::new(x, y)))
}

fn upper_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (rng.gen_range(-5.0..5.0), rng.gen_range(0.1..5.0))
}

fn real_map(rng: &mut ChaCha8Rng, tol: Tolerance) -> MoebiusMatrix {
    loop {
        let [a, b, c, d] = [(); 4].map(|_| rng.gen_range(-3.0..3.0));
        if a * d - b * c > 0.1 {
            if let Ok(m) = MoebiusMatrix::real(a, b, c, d, tol) {
                return m;
            }
        }
    }
}

fn complex_map(rng: &mut ChaCha8Rng, tol: Tolerance) -> MoebiusMatrix {
    loop {
        let [a, b, c, d] =
            [(); 4].map(|_| Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        if (a * d - b * c).norm() > 0.5 {
            if let Ok(m) = MoebiusMatrix::new(a, b, c, d, tol) {
                return m;
            }
        }
    }
}

fn relative(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs()).max(1.0)
    }
}

fn hyperbolic(a: (f64, f64), b: (f64, f64)) -> f64 {
    let d2 = (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2);
    (1.0 + d2 / (2.0 * a.1 * b.1)).acosh()
}

// suites

fn product_identity(rng: &mut ChaCha8Rng, _: &Options) -> f64 {
    let c = dyadic_cycle(rng);
    let m = *c.to_fsc().matrix();
    let det = c.det_fsc();
    let conj_times = m.conj() * m;
    let off = [conj_times.0[0][1], conj_times.0[1][0]]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let diag = [conj_times.0[0][0], conj_times.0[1][1]]
        .iter()
        .map(|z| (z + det).norm())
        .fold(0.0, f64::max);
    (c.product(&c) - 2.0 * det).abs() + off + diag
}

fn flt_invariance(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let c = [(); 4].map(|_| dyadic_cycle(rng));
    let m = complex_map(rng, o.tol);
    let Ok(moved) = c
        .iter()
        .map(|x| m.apply_to_cycle(x, o.tol))
        .collect::<Result<Vec<_>, _>>()
    else {
        return f64::INFINITY;
    };
    match (
        cross_ratio(&c[0], &c[1], &c[2], &c[3], o.tol),
        cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3], o.tol),
    ) {
        (CrossRatioValue::Finite(x), CrossRatioValue::Finite(y)) => {
            if x == y {
                0.0
            } else {
                (x - y).abs() / x.abs().max(y.abs())
            }
        }
        (x, y) if x == y => 0.0,
        _ => f64::INFINITY,
    }
}

/// `km₁ + k₁m − 2ll₁ − nn₁`: one factor 2 dropped.
fn corrupted_product(a: &Cycle, b: &Cycle) -> f64 {
    a.k * b.m + b.k * a.m - 2.0 * a.l * b.l - a.n * b.n
}

fn squared_modulus(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let z = [(); 4].map(|_| Complex::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)));
    let expected = point_cross_ratio(z[0], z[1], z[2], z[3]).norm_sqr();
    let c = z.map(|w| pt(w.re, w.im));
    let value = if o.mutate_product {
        let p = corrupted_product;
        p(&c[0], &c[2]) * p(&c[1], &c[3]) / (p(&c[0], &c[3]) * p(&c[1], &c[2]))
    } else {
        match cross_ratio(&c[0], &c[1], &c[2], &c[3], o.tol) {
            CrossRatioValue::Finite(v) => v,
            _ => return f64::INFINITY,
        }
    };
    (value - expected).abs() / expected.max(f64::MIN_POSITIVE)
}

fn capacitance_theta(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let (a, b) = (generic_cycle(rng, o.tol), generic_cycle(rng, o.tol));
    match (capacitance(&a, &b, o.tol), a.inversive_distance(&b, o.tol)) {
        (CrossRatioValue::Finite(cap), Ok(theta)) => relative(cap, theta.squared()),
        _ => f64::INFINITY,
    }
}

fn limits(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    loop {
        let (x, y) = (
            f64::from(rng.gen_range(-9i32..=9)),
            f64::from(rng.gen_range(-9i32..=9)),
        );
        let [k, l, n] = [(); 3].map(|_| f64::from(rng.gen_range(-9i32..=9)));
        let c = Cycle::new(k, l, n, 2.0 * l * x + 2.0 * n * y - k * (x * x + y * y));
        if c.product(&c) == 0.0 {
            continue;
        }
        let orthogonal = resolve_orthogonal_limit(&c, Point::new(x, y), o.tol);
        let tangent = resolve_tangent_limit(&pt(x, y), &c, o.tol);
        return match (orthogonal, tangent) {
            (Ok(CrossRatioValue::Finite(zero)), Ok(one)) => zero.abs() + (one - 1.0).abs(),
            _ => f64::INFINITY,
        };
    }
}

fn harmonic(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let (mirror, c1) = loop {
        let (m, c) = (generic_cycle(rng, o.tol), generic_cycle(rng, o.tol));
        if !c.proj_eq(&m, o.tol) && !c.is_orthogonal(&m, o.tol) {
            break (m, c);
        }
    };
    match harmonic_figure(&mirror, &c1, rng, o.tol) {
        Ok(report) => report
            .cross_ratio
            .finite()
            .map_or(f64::INFINITY, |w| (w - 1.0).norm()),
        Err(_) => f64::INFINITY,
    }
}

fn lobachevsky_metric(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let (a, b) = (upper_point(rng), upper_point(rng));
    match moebius_distance(&pt(a.0, a.1), &pt(b.0, b.1), o.tol) {
        Ok(report) => (report.absolute() - hyperbolic(a, b)).abs(),
        Err(_) => f64::INFINITY,
    }
}

fn distance_invariance(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    loop {
        let (a, b) = (generic_cycle(rng, o.tol), generic_cycle(rng, o.tol));
        let Ok(before) = moebius_distance(&a, &b, o.tol) else {
            continue;
        };
        let m = real_map(rng, o.tol);
        let moved = (m.apply_to_cycle(&a, o.tol), m.apply_to_cycle(&b, o.tol));
        let (Ok(ma), Ok(mb)) = moved else {
            return f64::INFINITY;
        };
        return match moebius_distance(&ma, &mb, o.tol) {
            Ok(after) => relative(before.absolute(), after.absolute()),
            Err(_) => f64::INFINITY,
        };
    }
}

fn additivity(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let (cx, r) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.5..4.0));
    let mut phi = [(); 3].map(|_| rng.gen_range(0.05..3.09f64));
    phi.sort_by(|a, b| a.total_cmp(b));
    let p = phi.map(|t| pt(cx + r * t.cos(), r * t.sin()));
    let d = |a: &Cycle, b: &Cycle| moebius_distance(a, b, o.tol).ok().and_then(|r| r.signed());
    match (d(&p[0], &p[1]), d(&p[1], &p[2]), d(&p[0], &p[2])) {
        (Some(d12), Some(d23), Some(d13)) => (d13 - d12 - d23).abs() / d13.abs().max(1.0),
        _ => f64::INFINITY,
    }
}

fn reflection(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let mirror = generic_cycle(rng, o.tol);
    let (a, b) = (generic_cycle(rng, o.tol), generic_cycle(rng, o.tol));
    let images = (
        reflect_in_cycle(&mirror, &a, o.tol),
        reflect_in_cycle(&mirror, &b, o.tol),
    );
    let (Ok(ra), Ok(rb)) = images else {
        return f64::INFINITY;
    };
    let Ok(back) = reflect_in_cycle(&mirror, &ra, o.tol) else {
        return f64::INFINITY;
    };
    // distance of the unit vectors up to sign
    let (u, v) = (
        a.coords().normalized().unwrap(),
        back.coords().normalized().unwrap(),
    );
    let involution = (u - v).norm().min((u + v).norm());
    let theta = match (
        a.inversive_distance(&b, o.tol),
        ra.inversive_distance(&rb, o.tol),
    ) {
        (Ok(InversiveDistance::Real(x)), Ok(InversiveDistance::Real(y)))
        | (Ok(InversiveDistance::Imaginary(x)), Ok(InversiveDistance::Imaginary(y))) => {
            relative(x, y)
        }
        _ => f64::INFINITY,
    };
    involution.max(theta)
}

fn off_axis_circle(rng: &mut ChaCha8Rng) -> Cycle {
    let x = rng.gen_range(-5.0..5.0);
    let y = loop {
        let y: f64 = rng.gen_range(-5.0..5.0);
        if y.abs() > 0.1 {
            break y;
        }
    };
    Cycle::from_circle(Point::new(x, y), rng.gen_range(0.1..3.0)).scaled(rng.gen_range(0.5..4.0))
}

fn steiner_equality(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let (a, b) = (off_axis_circle(rng), off_axis_circle(rng));
    match (a.steiner_power(&b, o.tol), steiner_power_cr(&a, &b, o.tol)) {
        (Ok(plain), Ok(via_cr)) => relative(plain, via_cr),
        _ => f64::INFINITY,
    }
}

fn steiner_invariance(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let (a, b) = (off_axis_circle(rng), off_axis_circle(rng));
    let m = real_map(rng, o.tol);
    let (Ok(ma), Ok(mb)) = (m.apply_to_cycle(&a, o.tol), m.apply_to_cycle(&b, o.tol)) else {
        return f64::INFINITY;
    };
    match (
        steiner_power_cr(&a, &b, o.tol),
        steiner_power_cr(&ma, &mb, o.tol),
    ) {
        (Ok(x), Ok(y)) => relative(x, y),
        _ => f64::INFINITY,
    }
}

fn axis_cycle(rng: &mut ChaCha8Rng) -> Cycle {
    let y: f64 = rng.gen_range(0.5..4.0);
    Cycle::with_radius_squared(Point::new(0.0, y), rng.gen_range(0.0..0.8) * y * y)
}

/// Fits `formula = a·d + b` through two configurations and measures how
/// far a third one is from the fitted line.
fn vertical_axis(rng: &mut ChaCha8Rng, o: &Options) -> f64 {
    let mut sample = || loop {
        let (c1, c2) = (axis_cycle(rng), axis_cycle(rng));
        let d = moebius_distance(&c1, &c2, o.tol)
            .ok()
            .and_then(|r| r.signed());
        let f = vertical_axis_formula(&c1, &c2, o.tol).ok();
        if let (Some(d), Some(f)) = (d, f) {
            if d.abs() > 1e-3 {
                return (d, f);
            }
        }
    };
    let (p, q, r) = (sample(), sample(), sample());
    if (p.0 - q.0).abs() < 1e-6 {
        return (p.1 - q.1).abs();
    }
    let a = (q.1 - p.1) / (q.0 - p.0);
    let predicted = p.1 + a * (r.0 - p.0);
    (r.1 - predicted).abs() / r.1.abs().max(1.0)
}
