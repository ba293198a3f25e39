//! Plain SVG 1.1 rendering of cycles.
//!
//! Real circles become `<circle>`, lines are clipped to the viewport,
//! zero-radius cycles are 3 px dots and circles with imaginary radius are
//! dashed circles of radius `√(−r²)` with a note. Output depends only on
//! the input, so equal figures give identical bytes.

use std::fmt::Write;

use cycles_core::{Cycle, ExtendedPoint, Tolerance};

use crate::CliError;

const WIDTH: f64 = 600.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#555555",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderConfig {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub stroke_width: f64,
    pub dashed_imaginary: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            xmin: -5.0,
            xmax: 5.0,
            ymin: -5.0,
            ymax: 5.0,
            stroke_width: 1.5,
            dashed_imaginary: true,
        }
    }
}

impl RenderConfig {
    /// Parses `xmin,xmax,ymin,ymax`.
    pub fn with_viewport(mut self, spec: &str) -> Result<Self, CliError> {
        let parts: Vec<f64> = spec
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Parse(format!("viewport {spec:?}: {e}")))?;
        let [xmin, xmax, ymin, ymax] = parts[..] else {
            return Err(CliError::Parse(format!(
                "viewport {spec:?}: expected xmin,xmax,ymin,ymax"
            )));
        };
        if !(xmin < xmax && ymin < ymax) {
            return Err(CliError::Parse(format!(
                "viewport {spec:?}: need xmin < xmax and ymin < ymax"
            )));
        }
        self.xmin = xmin;
        self.xmax = xmax;
        self.ymin = ymin;
        self.ymax = ymax;
        Ok(self)
    }

    fn scale(&self) -> f64 {
        WIDTH / (self.xmax - self.xmin)
    }

    fn height(&self) -> f64 {
        (self.ymax - self.ymin) * self.scale()
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (
            (x - self.xmin) * self.scale(),
            (self.ymax - y) * self.scale(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SceneItem {
    pub cycle: Cycle,
    pub label: String,
}

/// Cycles to draw, in order, plus free-text notes listed in the corner.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub items: Vec<SceneItem>,
    pub notes: Vec<String>,
}

impl Scene {
    pub fn push(&mut self, cycle: Cycle, label: impl Into<String>) {
        self.items.push(SceneItem {
            cycle,
            label: label.into(),
        });
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000".to_owned()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Segment of the line through `p` with direction `d` inside the viewport.
fn clip_line(p: (f64, f64), d: (f64, f64), cfg: &RenderConfig) -> Option<((f64, f64), (f64, f64))> {
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, d, lo, hi) in [
        (p.0, d.0, cfg.xmin, cfg.xmax),
        (p.1, d.1, cfg.ymin, cfg.ymax),
    ] {
        if d == 0.0 {
            if p < lo || p > hi {
                return None;
            }
        } else {
            let (a, b) = ((lo - p) / d, (hi - p) / d);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
    }
    (t0 < t1).then_some((
        (p.0 + t0 * d.0, p.1 + t0 * d.1),
        (p.0 + t1 * d.0, p.1 + t1 * d.1),
    ))
}

fn draw(out: &mut String, item: &SceneItem, colour: &str, cfg: &RenderConfig, tol: Tolerance) {
    let c = item.cycle;
    let label = escape(&item.label);
    let sw = num(cfg.stroke_width);
    if c.is_point(tol) || c.proj_eq(&cycles_core::C_INF, tol) {
        match c.to_point(tol) {
            Ok(ExtendedPoint::Finite(p)) => {
                let (x, y) = cfg.px(p.x, p.y);
                let _ = writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="3" fill="{colour}"/>"#,
                    num(x),
                    num(y)
                );
                let _ = writeln!(
                    out,
                    r#"<text x="{}" y="{}" font-size="12" fill="{colour}">{label}</text>"#,
                    num(x + 5.0),
                    num(y - 5.0)
                );
            }
            _ => {
                let _ = writeln!(out, "<!-- {label}: point at infinity -->");
            }
        }
        return;
    }
    if c.is_line(tol) {
        // −2lx − 2ny + m = 0
        let norm2 = c.l * c.l + c.n * c.n;
        let s = c.m / (2.0 * norm2);
        // direction along the line, pointing to increasing x (then y)
        let d = if -c.n > 0.0 || (c.n == 0.0 && c.l > 0.0) {
            (-c.n, c.l)
        } else {
            (c.n, -c.l)
        };
        match clip_line((c.l * s, c.n * s), d, cfg) {
            Some((a, b)) => {
                let ((x1, y1), (x2, y2)) = (cfg.px(a.0, a.1), cfg.px(b.0, b.1));
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="{sw}"/>"#,
                    num(x1),
                    num(y1),
                    num(x2),
                    num(y2)
                );
                let _ = writeln!(
                    out,
                    r#"<text x="{}" y="{}" font-size="12" fill="{colour}">{label}</text>"#,
                    num(x2.min(WIDTH - 40.0)),
                    num((y2 + 14.0).min(cfg.height() - 4.0))
                );
            }
            None => {
                let _ = writeln!(out, "<!-- {label}: line outside the viewport -->");
            }
        }
        return;
    }
    let (cx, cy) = (c.l / c.k, c.n / c.k);
    let r2 = -c.det_fsc() / (c.k * c.k);
    let (x, y) = cfg.px(cx, cy);
    if r2 > 0.0 {
        let r = r2.sqrt() * cfg.scale();
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{colour}" stroke-width="{sw}"/>"#,
            num(x),
            num(y),
            num(r)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12" fill="{colour}">{label}</text>"#,
            num(x + r * std::f64::consts::FRAC_1_SQRT_2 + 3.0),
            num(y - r * std::f64::consts::FRAC_1_SQRT_2 - 3.0)
        );
    } else if cfg.dashed_imaginary {
        let r = (-r2).sqrt() * cfg.scale();
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{colour}" stroke-width="{sw}" stroke-dasharray="6 4"/>"#,
            num(x),
            num(y),
            num(r)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12" fill="{colour}">{label} (imaginary, r² = {})</text>"#,
            num(x + r * std::f64::consts::FRAC_1_SQRT_2 + 3.0),
            num(y - r * std::f64::consts::FRAC_1_SQRT_2 - 3.0),
            num(r2)
        );
    } else {
        let _ = writeln!(out, "<!-- {label}: imaginary radius, not drawn -->");
    }
}

pub fn render(scene: &Scene, cfg: &RenderConfig, tol: Tolerance) -> String {
    let (w, h) = (WIDTH, cfg.height());
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        num(w),
        num(h)
    );
    for (i, item) in scene.items.iter().enumerate() {
        draw(&mut out, item, PALETTE[i % PALETTE.len()], cfg, tol);
    }
    for (i, note) in scene.notes.iter().enumerate() {
        let _ = writeln!(
            out,
            r##"<text x="8" y="{}" font-size="12" fill="#000000">{}</text>"##,
            18 + 16 * i,
            escape(note)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cycles_core::{Point, C_INF, C_REAL};

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn scene() -> Scene {
        let mut s = Scene::default();
        s.push(Cycle::new(1.0, 0.0, 0.0, -1.0), "unit");
        s.push(C_REAL, "real line");
        s.push(Cycle::with_radius_squared(Point::new(1.0, 1.0), 0.0), "z");
        s.push(
            Cycle::with_radius_squared(Point::new(0.0, 0.0), -4.0),
            "ghost",
        );
        s.push(C_INF, "inf");
        s.notes.push("a < b".into());
        s
    }

    #[test]
    fn elements_and_styles() {
        let svg = render(&scene(), &RenderConfig::default(), TOL);
        assert!(svg.contains(
            r##"<circle cx="300.000" cy="300.000" r="60.000" fill="none" stroke="#1f77b4""##
        ));
        assert!(svg.contains(r#"<line x1="0.000" y1="300.000" x2="600.000" y2="300.000""#));
        assert!(svg.contains(r#"r="3""#));
        assert!(
            svg.contains(r#"stroke-dasharray="6 4""#) && svg.contains("(imaginary, r² = -4.000)")
        );
        assert!(svg.contains("<!-- inf: point at infinity -->"));
        assert!(svg.contains("a &lt; b"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn deterministic_output() {
        let cfg = RenderConfig::default().with_viewport("-3,3,-2,2").unwrap();
        assert_eq!(render(&scene(), &cfg, TOL), render(&scene(), &cfg, TOL));
    }

    #[test]
    fn y_axis_points_up() {
        let mut s = Scene::default();
        s.push(Cycle::with_radius_squared(Point::new(0.0, 4.0), 0.0), "top");
        let svg = render(&s, &RenderConfig::default(), TOL);
        assert!(svg.contains(r#"cx="300.000" cy="60.000""#));
    }

    #[test]
    fn clipping() {
        let cfg = RenderConfig::default();
        assert_eq!(
            clip_line((0.0, 0.0), (1.0, 1.0), &cfg),
            Some(((-5.0, -5.0), (5.0, 5.0)))
        );
        assert_eq!(clip_line((0.0, 9.0), (1.0, 0.0), &cfg), None);
        assert!(RenderConfig::default().with_viewport("1,0,0,1").is_err());
        assert!(RenderConfig::default().with_viewport("1,2,3").is_err());
    }
}
