use std::path::Path;
use std::process::{Command, Output};

fn rectihull(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rectihull"))
        .args(args)
        .current_dir(dir)
        .env_remove("RECTIHULL_EPS_REL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

#[test]
fn seed_writes_off_and_reports_fvector() {
    let dir = tempfile::tempdir().unwrap();
    let o = rectihull(&["seed", "tetrahedron", "-o", "tet.off"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("(4,6,4)"));
    let off = std::fs::read_to_string(dir.path().join("tet.off")).unwrap();
    assert!(off.starts_with("OFF\n4 4 6\n"));
}

#[test]
fn seed_prism_and_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let o = rectihull(
        &["seed", "prism", "5", "-o", "p5.off", "--json"],
        dir.path(),
    );
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["fvector"]["v"], 10);
    assert_eq!(v["fvector"]["f"], 7);
    assert!((v["measure"]["volume"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let o = rectihull(&["seed", "polygon", "4", "--json"], dir.path());
    let v = json(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert!((v["area"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn unknown_shape_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = rectihull(&["seed", "rhombicosidodecahedron"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown shape"));
}

#[test]
fn rectify_chain_from_file() {
    let dir = tempfile::tempdir().unwrap();
    rectihull(&["seed", "tetrahedron", "-o", "tet.off"], dir.path());
    let o = rectihull(&["rectify", "tet.off", "-k", "2", "--json"], dir.path());
    assert!(o.status.success());
    let v = json(&o);
    let steps = v["steps"].as_array().unwrap();
    let fv: Vec<(u64, u64, u64)> = steps
        .iter()
        .map(|s| {
            let f = &s["fvector"];
            (
                f["v"].as_u64().unwrap(),
                f["e"].as_u64().unwrap(),
                f["f"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(fv, vec![(4, 6, 4), (6, 12, 8), (12, 24, 14)]);

    let o = rectihull(&["rectify", "tet.off", "-k", "1"], dir.path());
    assert!(stdout(&o).contains("(6,12,8)"));
}

#[test]
fn seed_then_rectify_zero_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "tetrahedron",
        "cube",
        "octahedron",
        "icosahedron",
        "dodecahedron",
        "prism7",
    ] {
        let o = rectihull(&["seed", name, "-o", "a.off"], dir.path());
        assert!(o.status.success(), "{name}");
        let o = rectihull(&["rectify", "a.off", "-k", "0", "-o", "b.off"], dir.path());
        assert!(o.status.success(), "{name}");
        let a = std::fs::read(dir.path().join("a.off")).unwrap();
        let b = std::fs::read(dir.path().join("b.off")).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn invalid_off_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.off"), "OFF\n3 1 0\n0 0 0\n1 0\n").unwrap();
    let o = rectihull(&["rectify", "bad.off"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn degenerate_input_exit_code() {
    // A flat "solid": two copies of a triangle sharing all vertices.
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("flat.off"),
        "OFF\n3 2 3\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n3 0 2 1\n",
    )
    .unwrap();
    let o = rectihull(&["measure", "flat.off"], dir.path());
    assert!(
        matches!(o.status.code(), Some(2) | Some(3)),
        "{:?}",
        o.status
    );
}

#[test]
fn polygon_series_totals() {
    let dir = tempfile::tempdir().unwrap();
    let o = rectihull(&["polygon-series", "4", "-k", "6", "--json"], dir.path());
    let v = json(&o);
    assert!((v["area_inf"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let areas: Vec<f64> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["area_measured"].as_f64().unwrap())
        .collect();
    for (k, a) in areas.iter().enumerate() {
        assert!((a - 0.5f64.powi(k as i32)).abs() < 1e-12);
    }
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-9);

    let o = rectihull(&["polygon-series", "3", "-k", "6", "--json"], dir.path());
    assert!((json(&o)["area_inf"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);

    let o = rectihull(&["polygon-series", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn probes() {
    let dir = tempfile::tempdir().unwrap();
    let o = rectihull(&["probe", "conj3", "--seed", "cube", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["lambda"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert_eq!(v["verdict"], "holds-numerically");

    let o = rectihull(&["probe", "mahler", "--seed", "cube", "--json"], dir.path());
    let m = json(&o)["volumes"]["mahler"].as_f64().unwrap();
    assert!((m - 32.0 / 3.0).abs() < 1e-9);

    let o = rectihull(
        &["probe", "conj1", "--seed", "tetrahedron", "--json"],
        dir.path(),
    );
    assert!(json(&o)["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn fails_is_an_answer_and_inconclusive_is_not() {
    let dir = tempfile::tempdir().unwrap();
    // R1 of a pentagonal prism is not similar to R1 of its dual bipyramid.
    let o = rectihull(
        &["probe", "conj1", "--seed", "prism5", "--json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "fails");

    let o = rectihull(
        &["probe", "lemma1", "--seed", "prism5", "--json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(json(&o)["verdict"], "inconclusive");
}

#[test]
fn json_schema_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let keys = |args: &[&str]| -> Vec<String> {
        let o = rectihull(args, dir.path());
        json(&o).as_object().unwrap().keys().cloned().collect()
    };
    let a = keys(&["probe", "mahler", "--seed", "cube", "--json"]);
    let b = keys(&["probe", "conj3", "--seed", "tetrahedron", "--json"]);
    assert_eq!(a, b);
    for args in [
        &["seed", "cube", "--json"][..],
        &["rectify", "cube", "-k", "1", "--json"],
        &["measure", "cube", "--json"],
        &["measure", "--prism-rect", "5", "--json"],
        &["polygon-series", "5", "--json"],
    ] {
        let first = rectihull(args, dir.path());
        let second = rectihull(args, dir.path());
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let o = rectihull(&["export", "cube", "-k", "1", "-o", "co.obj"], dir.path());
    assert!(o.status.success());
    let obj = std::fs::read_to_string(dir.path().join("co.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 12);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 14);

    let o = rectihull(
        &["export", "cube", "-k", "1", "--format", "off"],
        dir.path(),
    );
    assert!(stdout(&o).starts_with("OFF\n12 14 24\n"));
}

#[test]
fn tolerance_flags() {
    let dir = tempfile::tempdir().unwrap();
    let o = rectihull(&["seed", "cube", "--eps-rel", "-1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_rectihull"))
        .args(["seed", "cube"])
        .current_dir(dir.path())
        .env("RECTIHULL_EPS_REL", "1e-7")
        .output()
        .unwrap();
    assert!(o.status.success());
}
