use std::process::{Command, Output};

use serde_json::Value;

const UNIT: &str = r#"{"k":1,"l":0,"n":0,"m":-1}"#;
const REAL: &str = r#"{"k":0,"l":0,"n":1,"m":0}"#;
const INF: &str = r#"{"k":0,"l":0,"n":0,"m":1}"#;

fn cycles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycles"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn point(x: f64, y: f64) -> String {
    format!(r#"{{"k":1,"l":{x},"n":{y},"m":{}}}"#, x * x + y * y)
}

#[test]
fn product_examples() {
    let out = cycles(&["product", UNIT, REAL]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 (orthogonal)\n");

    // circles of radius 1 centred 2 apart touch
    let out = cycles(&["product", UNIT, r#"{"k":1,"l":2,"n":0,"m":3}"#]);
    assert_eq!(stdout(&out), "2 (tangent)\n");

    let out = cycles(&["product", REAL, INF]);
    assert_eq!(stdout(&out), "0 (orthogonal)\n");

    let out = cycles(&["--json", "product", UNIT, UNIT]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["product"].as_f64(), Some(-2.0));
}

#[test]
fn array_argument_is_flattened() {
    let arg = format!("[{UNIT},{REAL}]");
    let out = cycles(&["product", &arg]);
    assert_eq!(stdout(&out), "0 (orthogonal)\n");
}

#[test]
fn cycles_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    std::fs::write(
        &path,
        format!(r#"{{"cycles":[{UNIT},{REAL}],"relations":[]}}"#),
    )
    .unwrap();
    let out = cycles(&["product", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "0 (orthogonal)\n");
}

#[test]
fn four_point_cross_ratio() {
    let (a, b, c, d) = (
        point(0.0, 0.0),
        point(1.0, 0.0),
        point(3.0, 0.0),
        point(4.0, 0.0),
    );
    let out = cycles(&["crossratio", &a, &b, &c, &d]);
    assert_eq!(out.status.code(), Some(0));
    let v: f64 = stdout(&out).trim().parse().unwrap();
    // squared modulus of the point cross ratio (0−3)(1−4)/((0−4)(1−3)) = 9/8
    assert!((v - 81.0 / 64.0).abs() < 1e-12, "{v}");
}

#[test]
fn indeterminate_and_its_resolutions() {
    let z = point(1.0, 0.0);
    let args = |extra: &[&'static str]| {
        let mut v: Vec<String> = vec!["crossratio".into()];
        v.extend(extra.iter().map(|s| s.to_string()));
        v.extend([UNIT.to_string(), z.clone(), z.clone(), UNIT.to_string()]);
        v
    };
    let run = |a: Vec<String>| cycles(&a.iter().map(String::as_str).collect::<Vec<_>>());

    let out = run(args(&[]));
    assert_eq!(stdout(&out), "indeterminate\n");
    let out = run(args(&["--resolve", "tangent"]));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "1\n");
    let out = run(args(&["--resolve", "orthogonal"]));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn resolve_rejects_a_point_off_the_cycle() {
    let z = point(2.0, 0.0);
    let out = cycles(&["crossratio", "--resolve", "tangent", UNIT, &z, &z, UNIT]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("precondition"), "{}", stderr(&out));
}

#[test]
fn distance_between_nested_circles() {
    // circles through i and 2i orthogonal to the real line: |d| = log 2
    let out = cycles(&["--json", "distance", UNIT, r#"{"k":1,"l":0,"n":0,"m":-4}"#]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["is_real"], Value::Bool(true));
    let d = v["absolute"].as_f64().unwrap();
    assert!((d - 2f64.ln()).abs() < 1e-12, "{d}");
    let cr = v["cross_ratio"]["re"].as_f64().unwrap();
    assert!((cr - 0.25).abs() < 1e-12, "{cr}");
}

#[test]
fn distance_is_moebius_invariant() {
    // z ↦ 2z + 1 maps circle((0,0),1), circle((0,0),2) to circle((1,0),2), circle((1,0),4)
    let before = cycles(&["--json", "distance", UNIT, r#"{"k":1,"l":0,"n":0,"m":-4}"#]);
    let after = cycles(&[
        "--json",
        "distance",
        r#"{"k":1,"l":1,"n":0,"m":-3}"#,
        r#"{"k":1,"l":1,"n":0,"m":-15}"#,
    ]);
    assert_eq!(after.status.code(), Some(0), "{}", stderr(&after));
    let d0 = json(&before)["absolute"].as_f64().unwrap();
    let d1 = json(&after)["absolute"].as_f64().unwrap();
    assert!((d0 - d1).abs() < 1e-9, "{d0} vs {d1}");
}

#[test]
fn distance_to_the_real_line_is_refused() {
    let out = cycles(&["distance", UNIT, REAL]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("real line"), "{}", stderr(&out));
}

#[test]
fn harmonic_figure_is_one_for_every_seed() {
    let c1 = r#"{"k":1,"l":3,"n":0,"m":8}"#;
    let mut orthogonal = Vec::new();
    for seed in ["0", "1", "2"] {
        let out = cycles(&["--json", "figure", "harmonic", UNIT, c1, "--seed", seed]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let v = json(&out);
        let cr = &v["cross_ratio"];
        assert!((cr["re"].as_f64().unwrap() - 1.0).abs() < 1e-9, "{cr}");
        assert!(cr["im"].as_f64().unwrap().abs() < 1e-9, "{cr}");
        assert_eq!(v["degenerate"], Value::Bool(false));
        orthogonal.push(v["co"].clone());
    }
    assert_ne!(orthogonal[0], orthogonal[1]);
}

#[test]
fn harmonic_figure_reports_orthogonal_cycle_as_degenerate() {
    let out = cycles(&["figure", "harmonic", UNIT, REAL]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(
        stdout(&out).contains("degenerate: C2 ≡ C1"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn render_is_deterministic() {
    let args = [
        "render",
        UNIT,
        REAL,
        r#"{"k":1,"l":0,"n":0,"m":4}"#,
        "--viewport",
        "-3,3,-3,3",
    ];
    let a = cycles(&args);
    let b = cycles(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).starts_with("<?xml"));
    assert!(stdout(&a).contains("stroke-dasharray"));
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let out = cycles(&[
        "render",
        UNIT,
        "-o",
        path.to_str().unwrap(),
        "--viewport",
        "-3,3,-3,3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .ends_with("</svg>\n"));
}

#[test]
fn figures_render_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let harmonic = dir.path().join("harmonic.svg");
    let out = cycles(&[
        "figure",
        "harmonic",
        UNIT,
        r#"{"k":1,"l":3,"n":0,"m":8}"#,
        "--render",
        harmonic.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(std::fs::read_to_string(&harmonic)
        .unwrap()
        .contains("<circle"));

    let distance = dir.path().join("distance.svg");
    let out = cycles(&[
        "distance",
        UNIT,
        r#"{"k":1,"l":0,"n":0,"m":-4}"#,
        "--render",
        distance.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(std::fs::read_to_string(&distance)
        .unwrap()
        .contains("<line"));
}

#[test]
fn write_failure_exits_2() {
    let out = cycles(&["render", UNIT, "-o", "/nonexistent-dir/fig.svg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(cycles(&["product", r#"{"k":1"#]).status.code(), Some(2));
    assert_eq!(
        cycles(&["product", r#"{"k":1,"l":0,"n":0,"m":0,"x":1}"#, UNIT])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cycles(&["product", r#"{"k":0,"l":0,"n":0,"m":0}"#, UNIT])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cycles(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_reports_the_two_unmet_relations() {
    let out = cycles(&["verify", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let failed: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_end().ends_with("FAIL"))
        .collect();
    assert_eq!(failed.len(), 2, "{text}");
    assert!(failed[0].starts_with("Steiner power = cross-ratio form"));
    assert!(failed[1].starts_with("vertical-axis closed form relation"));
    assert!(text.contains("11 of 13 suites passed"));
}

#[test]
fn verify_output_does_not_depend_on_threads() {
    let a = cycles(&["verify", "--trials", "40", "--seed", "7", "--threads", "1"]);
    let b = cycles(&["verify", "--trials", "40", "--seed", "7", "--threads", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_with_no_trials_passes() {
    assert_eq!(cycles(&["verify", "--trials", "0"]).status.code(), Some(0));
}

#[test]
fn mutated_product_is_caught() {
    let out = cycles(&["verify", "--trials", "40", "--mutate-product"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let row = text
        .lines()
        .find(|l| l.starts_with("zero-radius squared modulus"))
        .unwrap();
    assert!(row.trim_end().ends_with("FAIL"), "{row}");
}
