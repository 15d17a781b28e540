use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spannerdraw"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn graph(n: usize, edges: &[(usize, usize)]) -> String {
    let e: Vec<String> = edges.iter().map(|(u, v)| format!("[{u},{v}]")).collect();
    format!(r#"{{"version":"spannerdraw/1","n":{n},"edges":[{}]}}"#, e.join(","))
}

fn drawing(edges: &[(usize, usize)], pts: &[(&str, &str)]) -> String {
    let e: Vec<String> = edges.iter().map(|(u, v)| format!("[{u},{v}]")).collect();
    let c: Vec<String> = pts.iter().map(|(x, y)| format!(r#"["{x}","{y}"]"#)).collect();
    format!(
        r#"{{"version":"spannerdraw/1","n":{},"edges":[{}],"coords":[{}]}}"#,
        pts.len(),
        e.join(","),
        c.join(",")
    )
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn planar_cycle_with_half_epsilon() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c4.json", &graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]));
    let o = run(dir.path(), &["draw", "planar", "c4.json", "--epsilon", "1/2", "-o", "out.json"]);
    assert!(o.status.success());
    let rep = stdout(&o);
    assert_eq!(field(&rep, "planar"), "true");
    let json = run(dir.path(), &["metrics", "out.json", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let hi: f64 = v["spanning_ratio"]["hi_decimal"].as_str().unwrap().parse().unwrap();
    assert!(hi < 1.5, "{hi}");
}

#[test]
fn draw_report_matches_metrics() {
    let dir = TempDir::new().unwrap();
    write(&dir, "k4.json", &graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]));
    let d = run(dir.path(), &["draw", "proper", "k4.json", "-o", "out.json"]);
    assert!(d.status.success());
    let m = run(dir.path(), &["metrics", "out.json"]);
    assert_eq!(stdout(&d), stdout(&m));
}

#[test]
fn drawing_without_output_goes_to_stdout() {
    let dir = TempDir::new().unwrap();
    write(&dir, "p.json", &graph(3, &[(0, 1), (1, 2)]));
    let o = run(dir.path(), &["draw", "tree-planar", "p.json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"coords\""));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(field(&err, "planar"), "true");
    assert!(err.contains("n_prime: "));
}

#[test]
fn k5_is_rejected_as_nonplanar() {
    let dir = TempDir::new().unwrap();
    let edges: Vec<_> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    write(&dir, "k5.json", &graph(5, &edges));
    let o = run(dir.path(), &["draw", "planar", "k5.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tree_constructions_reject_cycles() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c3.json", &graph(3, &[(0, 1), (1, 2), (2, 0)]));
    for c in ["tree-proper", "tree-planar"] {
        assert_eq!(run(dir.path(), &["draw", c, "c3.json"]).status.code(), Some(3));
    }
}

#[test]
fn metrics_on_unit_square() {
    let dir = TempDir::new().unwrap();
    let sq = drawing(&[(0, 1), (1, 2), (2, 3), (3, 0)], &[("0", "0"), ("1", "0"), ("1", "1"), ("0", "1")]);
    write(&dir, "sq.json", &sq);
    let rep = stdout(&run(dir.path(), &["metrics", "sq.json"]));
    // opposite corners: path 2 over diagonal sqrt 2
    assert!(field(&rep, "spanning_ratio").starts_with("[1.41421356"), "{rep}");
    assert_eq!(field(&rep, "width"), "1 (~1)");
    assert_eq!(field(&rep, "planar"), "true");
    assert_eq!(field(&rep, "min_pairwise_distance_sq"), "1");
}

#[test]
fn metrics_on_collinear_path() {
    let dir = TempDir::new().unwrap();
    write(&dir, "p.json", &drawing(&[(0, 1), (1, 2)], &[("0", "0"), ("1", "0"), ("3", "0")]));
    let rep = stdout(&run(dir.path(), &["metrics", "p.json"]));
    assert_eq!(field(&rep, "no_three_collinear"), "false");
    assert!(field(&rep, "spanning_ratio").starts_with("[1"), "{rep}");
    assert_eq!(field(&rep, "planar"), "true");
}

#[test]
fn metrics_with_coincident_vertices() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c.json", &drawing(&[(0, 1), (1, 2)], &[("0", "0"), ("1", "0"), ("0", "0")]));
    let o = run(dir.path(), &["metrics", "c.json"]);
    assert!(o.status.success());
    let rep = stdout(&o);
    assert_eq!(field(&rep, "min_pairwise_distance_sq"), "0");
    assert!(field(&rep, "spanning_ratio").contains("inf"), "{rep}");
    assert_eq!(field(&rep, "proper"), "false");
}

fn star(n: usize) -> String {
    let mut pts = vec![("0".to_string(), "0".to_string())];
    for k in 0..n {
        if 4 * k == 2 * n {
            pts.push(("-1".into(), "0".into()));
            continue;
        }
        // rational point on the unit circle from t = tan(theta / 2)
        let t = num_rational_approx((std::f64::consts::PI * k as f64 / n as f64).tan());
        let (p, q) = t;
        let den = p * p + q * q;
        pts.push((format!("{}/{den}", q * q - p * p), format!("{}/{den}", 2 * p * q)));
    }
    let edges: Vec<_> = (1..=n).map(|v| (0, v)).collect();
    let refs: Vec<(&str, &str)> = pts.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    drawing(&edges, &refs)
}

fn num_rational_approx(t: f64) -> (i128, i128) {
    let q = 1i128 << 40;
    ((t * q as f64).round() as i128, q)
}

#[test]
fn verify_flags_big_star() {
    let dir = TempDir::new().unwrap();
    write(&dir, "star.json", &star(100));
    let o = run(dir.path(), &["verify", "star.json", "--s", "1.4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "violations"), "1");
    assert!(out.contains("vertex 0: A1=100 violation"), "{out}");
    assert_eq!(field(&out, "verdict"), "Consistent");
}

#[test]
fn verify_accepts_constructed_drawing() {
    let dir = TempDir::new().unwrap();
    assert!(run(dir.path(), &["generate", "tree", "--n", "40", "--seed", "3", "-o", "t.json"]).status.success());
    assert!(run(dir.path(), &["draw", "tree-proper", "t.json", "-o", "d.json"]).status.success());
    let out = stdout(&run(dir.path(), &["verify", "d.json", "--s", "2"]));
    assert_eq!(field(&out, "violations"), "0");
    assert_eq!(field(&out, "verdict"), "Consistent");
}

#[test]
fn verify_rejects_s_below_one() {
    let dir = TempDir::new().unwrap();
    write(&dir, "star.json", &star(4));
    assert_eq!(run(dir.path(), &["verify", "star.json", "--s", "0.5"]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    write(&dir, "bad.json", "{\"version\": \"spannerdraw/1\"");
    assert_eq!(run(dir.path(), &["metrics", "bad.json"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["metrics", "missing.json"]).status.code(), Some(5));
}

#[test]
fn svg_for_triangle_and_empty_graph() {
    let dir = TempDir::new().unwrap();
    write(&dir, "tri.json", &drawing(&[(0, 1), (1, 2), (0, 2)], &[("0", "0"), ("4", "0"), ("0", "3")]));
    assert!(run(dir.path(), &["export-svg", "tri.json", "--out", "tri.svg"]).status.success());
    let svg = std::fs::read_to_string(dir.path().join("tri.svg")).unwrap();
    assert!(svg.contains("visualization only"));
    assert_eq!(svg.matches("<line").count(), 3);
    assert_eq!(svg.matches("<circle").count(), 3);

    write(&dir, "empty.json", r#"{"version":"spannerdraw/1","n":0,"edges":[],"coords":[]}"#);
    assert!(run(dir.path(), &["export-svg", "empty.json", "--out", "e.svg"]).status.success());
    let svg = std::fs::read_to_string(dir.path().join("e.svg")).unwrap();
    assert!(svg.contains("<svg") && !svg.contains("<line") && !svg.contains("<circle"));
}

#[test]
fn recognizers() {
    let dir = TempDir::new().unwrap();
    write(&dir, "p.json", &graph(4, &[(0, 1), (1, 2), (2, 3)]));
    let o = run(dir.path(), &["recognize", "sr1", "p.json", "--witness", "w.json"]);
    assert_eq!(stdout(&o).trim(), "true");
    let m = stdout(&run(dir.path(), &["metrics", "w.json"]));
    assert!(field(&m, "spanning_ratio").starts_with("[1, 1]"), "{m}");

    write(&dir, "star.json", &graph(4, &[(0, 1), (0, 2), (0, 3)]));
    assert_eq!(stdout(&run(dir.path(), &["recognize", "sr1", "star.json"])).trim(), "false");
    let o = stdout(&run(dir.path(), &["recognize", "planar-sr1", "p.json"]));
    assert!(o.starts_with("true\nclass: "), "{o}");
}

#[test]
fn written_files_round_trip() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["generate", "planar", "--n", "15", "--seed", "1", "-o", "g.json"]);
    run(dir.path(), &["draw", "planar", "g.json", "-o", "a.json"]);
    // drawing a drawing ignores the old coordinates, so a re-run is identical
    run(dir.path(), &["draw", "planar", "a.json", "-o", "b.json"]);
    let a = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
    let b = std::fs::read_to_string(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
}
