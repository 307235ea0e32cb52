use std::path::Path;
use std::process::{Command, Output};

use hyperfourier::qft2d::{self, QuaternionField2D};
use hyperfourier::verify::Suite;
use hyperfourier::{Quaternion, TransformPath};
use hyperfourier_cli::commands;
use hyperfourier_cli::format::{self, Grid};

fn hyperfourier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperfourier")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn q2(path: &Path) -> QuaternionField2D {
    match format::read_grid(path).unwrap() {
        Grid::Q2(f) => f,
        other => panic!("expected a 2D grid, got {}", other.kind()),
    }
}

fn write_q2(path: &Path, f: QuaternionField2D) {
    format::write_grid(path, &Grid::Q2(f)).unwrap();
}

#[test]
fn zero_csv_converts_to_zero_grid() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, grid) = (dir.path().join("z.csv"), dir.path().join("z.qf2d"));
    std::fs::write(&csv, "x,y,r,i,j,k\n0,0,0,0,0,0\n1,0,0,0,0,0\n0,1,0,0,0,0\n1,1,0,0,0,0\n").unwrap();
    let out = hyperfourier(&["convert", "--in", s(&csv), "--kind", "csv", "--out", s(&grid)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let f = q2(&grid);
    assert_eq!((f.width(), f.height()), (2, 2));
    assert!(f.data().iter().all(|q| *q == Quaternion::ZERO));
}

#[test]
fn csv_grid_csv_round_trip_is_value_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, grid, b) = (dir.path().join("a.csv"), dir.path().join("a.qf2d"), dir.path().join("b.csv"));
    let mut text = String::from("x,y,r,i,j,k\n");
    for y in 0..3 {
        for x in 0..2 {
            text += &format!("{x},{y},{:?},{:?},-0.1,{:?}\n", 0.1 * x as f64, 1.0 / 3.0 + y as f64, 1e-300);
        }
    }
    std::fs::write(&a, &text).unwrap();
    assert!(hyperfourier(&["convert", "--in", s(&a), "--kind", "csv", "--out", s(&grid)]).status.success());
    assert!(hyperfourier(&["convert", "--in", s(&grid), "--kind", "qf2d", "--out", s(&b)]).status.success());
    assert_eq!(std::fs::read_to_string(&b).unwrap(), text);
}

#[test]
fn red_pixel_becomes_i() {
    let dir = tempfile::tempdir().unwrap();
    let (png, grid) = (dir.path().join("red.png"), dir.path().join("red.qf2d"));
    image::RgbImage::from_pixel(1, 1, image::Rgb([255, 0, 0])).save(&png).unwrap();
    assert!(hyperfourier(&["convert", "--in", s(&png), "--kind", "image", "--out", s(&grid)]).status.success());
    assert_eq!(q2(&grid).data(), &[Quaternion::I]);
}

#[test]
fn malformed_csv_is_a_usage_error_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, grid) = (dir.path().join("bad.csv"), dir.path().join("bad.qf2d"));
    std::fs::write(&csv, "0,0,1,0,0,0\n1,0,1,0,zz,0\n").unwrap();
    let out = hyperfourier(&["convert", "--in", s(&csv), "--kind", "csv", "--out", s(&grid)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert!(!grid.exists());
}

#[test]
fn transform_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, spec, back) = (dir.path().join("a.qf2d"), dir.path().join("s.qf2d"), dir.path().join("b.qf2d"));
    let f = QuaternionField2D::from_fn(16, 8, |x, y| Quaternion::new(x as f64, -(y as f64), 0.5, (x * y) as f64 * 0.01)).unwrap();
    write_q2(&a, f.clone());
    for (fwd, inv) in [("qft", "iqft"), ("qftr", "iqftr")] {
        assert!(hyperfourier(&["transform", fwd, "--in", s(&a), "--out", s(&spec)]).status.success());
        assert!(hyperfourier(&["transform", inv, "--in", s(&spec), "--out", s(&back)]).status.success());
        assert!(q2(&back).relative_error(&f).unwrap() <= 1e-10);
    }
}

#[test]
fn constant_field_has_dc_only_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let (a, spec, mag) = (dir.path().join("c.qf2d"), dir.path().join("c.spec"), dir.path().join("mag.csv"));
    let c = Quaternion::new(1.0, 2.0, -1.0, 0.5);
    write_q2(&a, QuaternionField2D::from_fn(8, 4, |_, _| c).unwrap());
    let out = hyperfourier(&["transform", "qft", "--in", s(&a), "--out", s(&spec), "--magnitude", s(&mag)]);
    assert!(out.status.success());
    let f = q2(&spec);
    assert!(f.get(0, 0).max_abs_diff(c * 32.0) <= 1e-12);
    assert!(f.data()[1..].iter().all(|q| q.norm() <= 1e-12));
    let rows = std::fs::read_to_string(&mag).unwrap();
    assert_eq!(rows.lines().count(), 33);
}

#[test]
fn direct_and_fast_files_agree() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.qf2d");
    let f = QuaternionField2D::from_fn(16, 16, |x, y| Quaternion::new((x as f64).sin(), (y as f64).cos(), 0.1 * x as f64, -0.3)).unwrap();
    write_q2(&a, f);
    for t in ["qft", "qftr"] {
        let (d, fast) = (dir.path().join("d"), dir.path().join("f"));
        assert!(hyperfourier(&["transform", t, "--in", s(&a), "--path", "direct", "--out", s(&d)]).status.success());
        assert!(hyperfourier(&["transform", t, "--in", s(&a), "--path", "fast", "--out", s(&fast)]).status.success());
        assert!(q2(&fast).relative_error(&q2(&d)).unwrap() <= 1e-9);
    }
}

#[test]
fn fast_on_odd_size_fails_and_auto_warns() {
    let dir = tempfile::tempdir().unwrap();
    let (a, o) = (dir.path().join("a.qf2d"), dir.path().join("o.qf2d"));
    write_q2(&a, QuaternionField2D::from_fn(6, 5, |x, y| Quaternion::new(x as f64, y as f64, 0.0, 1.0)).unwrap());
    let out = hyperfourier(&["transform", "qft", "--in", s(&a), "--path", "fast", "--out", s(&o)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("power-of-two"));
    let out = hyperfourier(&["transform", "qft", "--in", s(&a), "--out", s(&o)]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn dimensionality_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (a, o) = (dir.path().join("a.qf2d"), dir.path().join("o"));
    write_q2(&a, QuaternionField2D::zeros(2, 2).unwrap());
    let out = hyperfourier(&["transform", "sft", "--in", s(&a), "--out", s(&o)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(hyperfourier(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(hyperfourier(&["frobnicate"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_hyperfourier"))
        .args(["verify", "--suite", "quat"])
        .env("HYPERFOURIER_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_prints_table_and_exits_zero() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperfourier"))
        .args(["verify", "--suite", "quat", "--seed", "7"])
        .env("HYPERFOURIER_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("quat: associativity"));
    assert!(text.trim_end().ends_with("0 failed"));
}

#[test]
fn verify_qft_includes_plancherel_control_and_is_deterministic() {
    let a = commands::verify(Suite::Qft, 42).unwrap();
    assert!(a.passed());
    assert!(a.rows.iter().any(|r| r.check.name.contains("quaternion Plancherel fails")));
    let b = commands::verify(Suite::Qft, 42).unwrap();
    let values = |r: &commands::RunReport| r.rows.iter().map(|r| r.check.clone()).collect::<Vec<_>>();
    assert_eq!(values(&a), values(&b));
}

#[test]
fn verify_all_passes_with_seed_42() {
    let report = commands::verify(Suite::All, 42).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn bench_checks_outputs_and_reports_speedup() {
    let rows = commands::bench(&[16], 1).unwrap();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert!(r.deviation <= commands::BENCH_TOLERANCE);
        assert!(r.speedup() >= 2.0, "{}", commands::format_bench(&rows));
    }
    assert!(commands::bench(&[12], 1).is_err());
}

#[test]
fn library_transform_matches_core() {
    let f = QuaternionField2D::from_fn(4, 4, |x, y| Quaternion::new(1.0, x as f64, y as f64, 0.0)).unwrap();
    let out = commands::apply(commands::Transform::Qftr, &Grid::Q2(f.clone()), TransformPath::Direct).unwrap();
    assert_eq!(out, Grid::from(qft2d::qftr_forward_direct(&f)));
}
