use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn tanlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tanlab")).args(args).env_remove("TANLAB_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn solve(name: &str) -> (i32, serde_json::Value) {
    let path = data(name);
    let o = tanlab(&["solve", path.to_str().unwrap()]);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn enumerate_prints_family_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = tanlab(&["enumerate", "--family", "pentagon", "--out", out.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pentagons: 2 convex, 20 lattice, 31 non-lattice, 53 total"));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["entries"].as_array().unwrap().len(), 53);

    let o = tanlab(&["enumerate", "--family", "quadrangle"]);
    assert_eq!(stdout(&o).trim(), "6 quadrangles, 0 non-convex");
    let o = tanlab(&["enumerate", "--family", "convex"]);
    assert_eq!(stdout(&o).trim(), "13 convex tangrams");
}

#[test]
fn class_filter_narrows_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = tanlab(&["enumerate", "--family", "pentagon", "--class", "nonlattice", "--out", out.to_str().unwrap()]);
    assert!(stdout(&o).contains("pentagons: 0 convex, 0 lattice, 31 non-lattice, 31 total"));
}

#[test]
fn solve_verdicts() {
    let (code, json) = solve("pentagon-63111.json");
    assert_eq!(code, 0);
    assert_eq!(json["class"], "lattice");
    assert_eq!(json["witness"]["placements"].as_array().unwrap().len(), 7);

    let (code, json) = solve("unit-square.json");
    assert_eq!(code, 1);
    assert_eq!(json["verdict"], "not-tangram");

    let (code, json) = solve("pentagon-d1-d2-b.json");
    assert_eq!(code, 0);
    assert_eq!(json["class"], "non-lattice");
    assert!(json["split"]["cut"].is_array());
}

#[test]
fn malformed_polygons_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("truncated.json", r#"{"vertices": [[[0,1,0,1],[0,1,0,1]],"#, "line 1"),
        ("unreduced.json", r#"{"vertices": [[[0,2,0,1],[0,1,0,1]]]}"#, "vertices[0][0]"),
        (
            "slanted.json",
            r#"{"vertices": [[[0,1,0,1],[0,1,0,1]], [[2,1,0,1],[1,1,0,1]], [[0,1,0,1],[1,1,0,1]]]}"#,
            "pi/4",
        ),
        (
            "clockwise.json",
            r#"{"vertices": [[[0,1,0,1],[0,1,0,1]], [[0,1,0,1],[1,1,0,1]], [[1,1,0,1],[1,1,0,1]], [[1,1,0,1],[0,1,0,1]]]}"#,
            "clockwise",
        ),
    ];
    for (name, text, hint) in cases {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        let o = tanlab(&["solve", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(3), "{name}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.to_lowercase().contains(hint), "{name}: {err}");
    }
}

#[test]
fn exit_codes_for_usage_and_io() {
    assert_eq!(tanlab(&["--help"]).status.code(), Some(0));
    assert_eq!(tanlab(&["--version"]).status.code(), Some(0));
    assert_eq!(tanlab(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(tanlab(&["verify", "--bound", "4"]).status.code(), Some(3));
    assert_eq!(tanlab(&["enumerate", "--family", "hexagon"]).status.code(), Some(3));
    assert_eq!(tanlab(&["verify", "--jobs", "0"]).status.code(), Some(3));
    assert_eq!(tanlab(&["solve", "/nonexistent/polygon.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let blocked = dir.path().join("file");
    fs::write(&blocked, "").unwrap();
    let out = blocked.join("c.json");
    assert_eq!(tanlab(&["enumerate", "--family", "convex", "--out", out.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_passes_at_default_bound() {
    let o = tanlab(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("53/53 pentagons verified"));
}

#[test]
fn verify_reports_missing_entries_when_under_bounded() {
    let o = tanlab(&["verify", "--debug-bound", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("missing"), "{text}");
    assert!(text.contains("63111"), "{text}");
    assert!(!text.contains("53/53"));
}

#[test]
fn pruning_does_not_change_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(tanlab(&["verify", "--no-prune"]).status.code(), Some(0));
    tanlab(&["enumerate", "--out", a.to_str().unwrap()]);
    tanlab(&["enumerate", "--no-prune", "--jobs", "1", "--out", b.to_str().unwrap()]);
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn render_writes_one_drawing_per_entry() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("c.json");
    let svgs = dir.path().join("svg");
    tanlab(&["enumerate", "--family", "pentagon", "--out", cat.to_str().unwrap()]);
    let o = tanlab(&["render", cat.to_str().unwrap(), "--svg-dir", svgs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(&svgs).unwrap().count(), 53);

    let svg = fs::read_to_string(svgs.join("5-52311.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="tan""#).count(), 7);
    let outline = svg.lines().find(|l| l.contains(r#"class="outline""#)).unwrap();
    let points = outline.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(points.split(' ').count(), 5);
}

#[test]
fn render_rejects_a_broken_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("c.json");
    fs::write(&cat, "{\"summary\": 3}").unwrap();
    let o = tanlab(&["render", cat.to_str().unwrap(), "--svg-dir", dir.path().join("svg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}
