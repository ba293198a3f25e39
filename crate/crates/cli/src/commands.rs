use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use cycles_core::{
    capacitance, cross_ratio, harmonic_figure, moebius_distance, resolve_orthogonal_limit,
    resolve_tangent_limit, Complex, ComplexCrossRatio, ComplexCycle, CrossRatioValue, Cycle,
    ExtendedPoint, Tolerance, C_REAL,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, Figure, Resolve, ViewArgs};
use crate::document::{expect_count, load_all, CycleDocument};
use crate::svg::{render, RenderConfig, Scene};
use crate::{verify, CliError, Outcome};

/// Shortest round-trip form, without a negative zero.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        "0".to_owned()
    } else {
        format!("{x}")
    }
}

pub fn fmt_complex(z: Complex) -> String {
    if z.im == 0.0 {
        fmt_num(z.re)
    } else if z.re == 0.0 {
        format!("{}i", fmt_num(z.im))
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{} {sign} {}i", fmt_num(z.re), fmt_num(z.im.abs()))
    }
}

fn fmt_cycle(c: &Cycle) -> String {
    format!(
        "({}, {}, {}, {})",
        fmt_num(c.k),
        fmt_num(c.l),
        fmt_num(c.n),
        fmt_num(c.m)
    )
}

fn fmt_complex_cycle(z: &ComplexCycle, tol: Tolerance) -> String {
    match z.to_real(tol) {
        Some(c) => fmt_cycle(&c),
        None => {
            let [k, l, n, m] = z.components().map(fmt_complex);
            format!("({k}, {l}, {n}, {m})")
        }
    }
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<Complex> for ComplexJson {
    fn from(z: Complex) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

fn complex_cycle_json(z: &ComplexCycle, tol: Tolerance) -> Value {
    match z.to_real(tol) {
        Some(c) => json!(CycleDocument::from_cycle(&c, None)),
        None => {
            let [k, l, n, m] = z.components().map(ComplexJson::from);
            json!({ "k": k, "l": l, "n": n, "m": m })
        }
    }
}

fn cross_ratio_json(value: CrossRatioValue) -> Value {
    match value {
        CrossRatioValue::Finite(v) => json!(v),
        CrossRatioValue::Infinite => json!("inf"),
        CrossRatioValue::Indeterminate => json!("indeterminate"),
    }
}

fn complex_cross_ratio_text(value: ComplexCrossRatio) -> String {
    match value {
        ComplexCrossRatio::Finite(w) => fmt_complex(w),
        ComplexCrossRatio::Infinite => "inf".to_owned(),
        ComplexCrossRatio::Indeterminate => "indeterminate".to_owned(),
    }
}

fn complex_cross_ratio_json(value: ComplexCrossRatio) -> Value {
    match value {
        ComplexCrossRatio::Finite(w) => json!(ComplexJson::from(w)),
        ComplexCrossRatio::Infinite => json!("inf"),
        ComplexCrossRatio::Indeterminate => json!("indeterminate"),
    }
}

fn cycles(args: &[String], count: usize) -> Result<(Vec<CycleDocument>, Vec<Cycle>), CliError> {
    let docs = expect_count(load_all(args)?, count)?;
    let cycles = docs
        .iter()
        .map(CycleDocument::to_cycle)
        .collect::<Result<_, _>>()?;
    Ok((docs, cycles))
}

fn render_config(view: &ViewArgs) -> Result<RenderConfig, CliError> {
    let cfg = RenderConfig {
        stroke_width: view.stroke_width,
        dashed_imaginary: !view.hide_imaginary,
        ..RenderConfig::default()
    };
    cfg.with_viewport(&view.viewport)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Write {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn dispatch(command: &Command, as_json: bool, tol: Tolerance) -> Result<Outcome, CliError> {
    match command {
        Command::Product { cycles: args } => product(args, as_json, tol),
        Command::Crossratio {
            cycles: args,
            resolve,
        } => crossratio(args, *resolve, as_json, tol),
        Command::Distance {
            cycles: args,
            render,
            view,
        } => distance(args, render.as_deref(), view, as_json, tol),
        Command::Figure {
            figure:
                Figure::Harmonic {
                    cycles: args,
                    seed,
                    render,
                    view,
                },
        } => harmonic(args, *seed, render.as_deref(), view, as_json, tol),
        Command::Render {
            cycles: args,
            output,
            view,
        } => render_cycles(args, output.as_deref(), view, tol),
        Command::Verify {
            seed,
            trials,
            threads,
            mutate_product,
        } => {
            let options = verify::Options {
                seed: *seed,
                trials: *trials,
                threads: threads
                    .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
                mutate_product: *mutate_product,
                tol,
            };
            let results = verify::run(&options);
            let success = results.iter().all(|r| r.passed());
            let text = if as_json {
                serde_json::to_string_pretty(&results).expect("serializable") + "\n"
            } else {
                verify::table(&results)
            };
            Ok(Outcome { text, success })
        }
    }
}

/// Relative position read off the product and the capacitance.
pub fn classify(a: &Cycle, b: &Cycle, tol: Tolerance) -> &'static str {
    if a.is_orthogonal(b, tol) {
        return "orthogonal";
    }
    match capacitance(a, b, tol) {
        CrossRatioValue::Finite(c) if tol.approx_eq(c, 1.0) => "tangent",
        CrossRatioValue::Finite(c) if c > 1.0 => "disjoint",
        CrossRatioValue::Finite(c) if c >= 0.0 => "intersecting",
        CrossRatioValue::Finite(_) => "imaginary inversive distance",
        // a zero-radius cycle off the other cycle
        CrossRatioValue::Infinite | CrossRatioValue::Indeterminate => "disjoint",
    }
}

fn product(args: &[String], as_json: bool, tol: Tolerance) -> Result<Outcome, CliError> {
    let (_, c) = cycles(args, 2)?;
    let value = c[0].product(&c[1]);
    let value = if value == 0.0 { 0.0 } else { value };
    let class = classify(&c[0], &c[1], tol);
    Ok(Outcome::ok(if as_json {
        json!({ "product": value, "classification": class }).to_string() + "\n"
    } else {
        format!("{} ({class})\n", fmt_num(value))
    }))
}

fn crossratio(
    args: &[String],
    resolve: Option<Resolve>,
    as_json: bool,
    tol: Tolerance,
) -> Result<Outcome, CliError> {
    let (docs, c) = cycles(args, 4)?;
    let value = match resolve {
        None => cross_ratio(&c[0], &c[1], &c[2], &c[3], tol),
        Some(mode) => {
            if !(docs[0].same_cycle(&docs[3], tol)? && docs[1].same_cycle(&docs[2], tol)?) {
                return Err(CliError::Domain(
                    "precondition: --resolve needs a quadruple of the form X, Y, Y, X".into(),
                ));
            }
            let (point, cycle) = if c[1].is_point(tol) {
                (c[1], c[0])
            } else if c[0].is_point(tol) {
                (c[0], c[1])
            } else {
                return Err(CliError::Domain(
                    "precondition: one cycle of the pair must have zero radius".into(),
                ));
            };
            let precondition =
                |e: cycles_core::Error| CliError::Domain(format!("precondition: {e}"));
            match mode {
                Resolve::Orthogonal => {
                    if !cycle.passes_through(&point, tol).map_err(precondition)? {
                        return Err(precondition(cycles_core::Error::NotIncident));
                    }
                    let ExtendedPoint::Finite(centre) = point.to_point(tol)? else {
                        return Err(precondition(cycles_core::Error::PointAtInfinity));
                    };
                    resolve_orthogonal_limit(&cycle, centre, tol)?
                }
                Resolve::Tangent => CrossRatioValue::Finite(
                    resolve_tangent_limit(&point, &cycle, tol).map_err(precondition)?,
                ),
            }
        }
    };
    Ok(Outcome::ok(if as_json {
        json!({ "cross_ratio": cross_ratio_json(value) }).to_string() + "\n"
    } else {
        format!(
            "{}\n",
            match value {
                CrossRatioValue::Finite(v) => fmt_num(v),
                other => other.to_string(),
            }
        )
    }))
}

fn distance(
    args: &[String],
    render_to: Option<&Path>,
    view: &ViewArgs,
    as_json: bool,
    tol: Tolerance,
) -> Result<Outcome, CliError> {
    let (docs, c) = cycles(args, 2)?;
    let report = moebius_distance(&c[0], &c[1], tol)?;

    if let Some(path) = render_to {
        let mut scene = Scene::default();
        scene.push(c[0], docs[0].label.clone().unwrap_or_else(|| "C1".into()));
        scene.push(c[1], docs[1].label.clone().unwrap_or_else(|| "C2".into()));
        scene.push(C_REAL, "real line");
        scene.push(report.c, "C");
        match (report.z1.to_real(tol), report.z2.to_real(tol)) {
            (Some(z1), Some(z2)) => {
                scene.push(z1, "Z1");
                scene.push(z2, "Z2");
            }
            _ => scene.notes.push(format!(
                "Z1, Z2 complex conjugate: {}",
                fmt_complex_cycle(&report.z1, tol)
            )),
        }
        scene
            .notes
            .push(format!("d = {}", fmt_complex(report.distance)));
        write_file(path, &render(&scene, &render_config(view)?, tol))?;
    }

    let text = if as_json {
        json!({
            "c": CycleDocument::from_cycle(&report.c, None),
            "z1": complex_cycle_json(&report.z1, tol),
            "z2": complex_cycle_json(&report.z2, tol),
            "cross_ratio": ComplexJson::from(report.cross_ratio),
            "distance": ComplexJson::from(report.distance),
            "is_real": report.is_real,
            "signed": report.signed(),
            "absolute": report.absolute(),
        })
        .to_string()
            + "\n"
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "C = {}", fmt_cycle(&report.c));
        let _ = writeln!(s, "Z1 = {}", fmt_complex_cycle(&report.z1, tol));
        let _ = writeln!(s, "Z2 = {}", fmt_complex_cycle(&report.z2, tol));
        let _ = writeln!(s, "cross ratio = {}", fmt_complex(report.cross_ratio));
        match report.signed() {
            Some(d) => {
                let _ = writeln!(s, "signed distance = {}", fmt_num(d));
            }
            None => {
                let _ = writeln!(s, "distance = {} (not real)", fmt_complex(report.distance));
            }
        }
        let _ = writeln!(s, "|d| = {}", fmt_num(report.absolute()));
        s
    };
    Ok(Outcome::ok(text))
}

fn harmonic(
    args: &[String],
    seed: u64,
    render_to: Option<&Path>,
    view: &ViewArgs,
    as_json: bool,
    tol: Tolerance,
) -> Result<Outcome, CliError> {
    let (_, c) = cycles(args, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = harmonic_figure(&c[0], &c[1], &mut rng, tol)?;

    if let Some(path) = render_to {
        let mut scene = Scene::default();
        scene.push(report.mirror, "C (mirror)");
        scene.push(report.c1, "C1");
        scene.push(report.c2, "C2");
        scene.push(report.co, "Co");
        match (report.z1.to_real(tol), report.z2.to_real(tol)) {
            (Some(z1), Some(z2)) => {
                scene.push(z1, "Z1");
                scene.push(z2, "Z2");
            }
            _ => scene.notes.push(format!(
                "Z1, Z2 complex conjugate: {}",
                fmt_complex_cycle(&report.z1, tol)
            )),
        }
        scene.notes.push(format!(
            "[[C1, C2; Z1, Z2]] = {}",
            complex_cross_ratio_text(report.cross_ratio)
        ));
        if report.degenerate {
            scene.notes.push("degenerate: C2 ≡ C1".into());
        }
        write_file(path, &render(&scene, &render_config(view)?, tol))?;
    }

    let text = if as_json {
        json!({
            "mirror": CycleDocument::from_cycle(&report.mirror, Some("C")),
            "c1": CycleDocument::from_cycle(&report.c1, Some("C1")),
            "c2": CycleDocument::from_cycle(&report.c2, Some("C2")),
            "co": CycleDocument::from_cycle(&report.co, Some("Co")),
            "t": report.t,
            "z1": complex_cycle_json(&report.z1, tol),
            "z2": complex_cycle_json(&report.z2, tol),
            "cross_ratio": complex_cross_ratio_json(report.cross_ratio),
            "orthogonality_residual": report.orthogonality_residual,
            "degenerate": report.degenerate,
        })
        .to_string()
            + "\n"
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "C (mirror) = {}", fmt_cycle(&report.mirror));
        let _ = writeln!(s, "C1 = {}", fmt_cycle(&report.c1));
        let _ = writeln!(s, "C2 = {}", fmt_cycle(&report.c2));
        let _ = writeln!(
            s,
            "Co = {} (t = {})",
            fmt_cycle(&report.co),
            fmt_num(report.t)
        );
        let _ = writeln!(s, "Z1 = {}", fmt_complex_cycle(&report.z1, tol));
        let _ = writeln!(s, "Z2 = {}", fmt_complex_cycle(&report.z2, tol));
        let _ = writeln!(s, "|<Co, C2>| = {:e}", report.orthogonality_residual);
        if report.degenerate {
            let _ = writeln!(s, "degenerate: C2 ≡ C1");
        }
        let _ = writeln!(
            s,
            "cross ratio = {}",
            complex_cross_ratio_text(report.cross_ratio)
        );
        s
    };
    Ok(Outcome::ok(text))
}

fn render_cycles(
    args: &[String],
    output: Option<&Path>,
    view: &ViewArgs,
    tol: Tolerance,
) -> Result<Outcome, CliError> {
    let docs = load_all(args)?;
    let mut scene = Scene::default();
    for (i, doc) in docs.iter().enumerate() {
        scene.push(
            doc.to_cycle()?,
            doc.label.clone().unwrap_or_else(|| format!("C{}", i + 1)),
        );
    }
    let svg = render(&scene, &render_config(view)?, tol);
    match output {
        Some(path) => {
            write_file(path, &svg)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(svg)),
    }
}
