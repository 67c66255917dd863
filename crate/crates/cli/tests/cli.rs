use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flatfold_core::io::{parse_document, parse_pattern, write_document, Document};
use flatfold_core::orthotree::quarter_fold;
use flatfold_core::outer::{OuterPattern, Region};
use flatfold_core::geom::Point2;
use flatfold_core::treefold::realize_base_star;
use serde_json::Value;

fn flatfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json report")
}

const TWO_NODE_TREE: &str =
    r#"{"version": 1, "type": "tree", "data": {"rotation": [[1,2,3,4],[0,5,6,7],[0],[0],[0],[1],[1],[1]]}}"#;

#[test]
fn base_star_validates() {
    let dir = tempfile::tempdir().unwrap();
    let star = write_document(&Document::Pattern(realize_base_star(6).unwrap().pattern));
    let f = put(dir.path(), "star.json", &star);
    let o = flatfold(&["validate", s(&f)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(report(&o)["pass"], true);
}

#[test]
fn odd_degree_fails_maekawa() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "odd.json",
        r#"{"version": 1, "type": "pattern", "data": {
            "vertices": {"3": {"x": 0.0, "y": 0.0}},
            "segments": [],
            "rays": [{"apex": 3, "dir": "0 turn"}, {"apex": 3, "dir": "1/3 turn"}, {"apex": 3, "dir": "2/3 turn"}]
        }}"#,
    );
    let o = flatfold(&["validate", s(&f), "--format", "text"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).lines().any(|l| l == "maekawa: vertex 3"), "{}", stderr(&o));
    assert!(stdout(&o).contains("maekawa: FAIL vertex 3"));
}

#[test]
fn malformed_input_exits_2_with_a_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "bad.json", "{\"version\": 1,\n\"type\": \"pattern\",\n\"data\": [\n");
    let o = flatfold(&["validate", s(&f)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = flatfold(&["validate", s(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 2);
    let o = flatfold(&["fixtures", "no-such-fixture"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn fold_tree_writes_pattern_plan_and_layering() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "tree.json", TWO_NODE_TREE);
    let out = dir.path().join("out");
    let o = flatfold(&["fold-tree", s(&f), "--output", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["data"]["rays"], 6);
    assert_eq!(r["data"]["segments"], 1);
    let p = parse_pattern(&std::fs::read_to_string(out.join("pattern.json")).unwrap()).unwrap();
    assert_eq!(p.rays.len(), 6);
    for name in ["plan.json", "layering.json", "report.json"] {
        let text = std::fs::read_to_string(out.join(name)).unwrap();
        if name != "report.json" {
            parse_document(&text).unwrap();
        }
    }
}

#[test]
fn odd_tree_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "tree.json",
        r#"{"version": 1, "type": "tree", "data": {"rotation": [[1,2,3],[0],[0],[0]]}}"#,
    );
    let o = flatfold(&["fold-tree", s(&f)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("node 0 has degree 3"), "{}", stderr(&o));
}

#[test]
fn five_leg_spider_does_not_fit_a_square() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "spider.json",
        r#"{"version": 1, "type": "tree", "data": {"rotation":
            [[1,3,5,7,9],[0,2],[1],[0,4],[3],[0,6],[5],[0,8],[7],[0,10],[9]]}}"#,
    );
    let o = flatfold(&["fold-square", s(&f)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stderr(&o).trim(), "spine has 5 leaves > 4");
}

#[test]
fn four_leg_spider_folds_on_a_square() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(
        dir.path(),
        "spider.json",
        r#"{"version": 1, "type": "tree", "data": {"rotation":
            [[1,3,5,7],[0,2],[1],[0,4],[3],[0,6],[5],[0,8],[7]]}}"#,
    );
    let o = flatfold(&["fold-square", s(&f)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn empty_orthotree_is_the_quarter_fold() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "spec.json", r#"{"version": 1, "type": "orthotree", "data": {"steps": []}}"#);
    let out = dir.path().join("out");
    let o = flatfold(&["orthotree", s(&f), "--output", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let p = parse_pattern(&std::fs::read_to_string(out.join("pattern.json")).unwrap()).unwrap();
    assert_eq!(p, quarter_fold());
}

#[test]
fn render_star_pleat_and_disk() {
    let dir = tempfile::tempdir().unwrap();
    let star = write_document(&Document::Pattern(realize_base_star(6).unwrap().pattern));
    let f = put(dir.path(), "star.json", &star);
    let o = flatfold(&["render", s(&f), "--wedges"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let svg = stdout(&o);
    assert_eq!(svg.matches(r#"<line class="ray""#).count(), 6);
    assert_eq!(svg.matches(r#"class="wedge""#).count(), 2);

    let mut disk = OuterPattern::new(Region::Disk { center: Point2::ORIGIN, radius: 1.0 });
    let a = disk.add_point_at(0.1);
    let b = disk.add_point_at(0.4);
    disk.add_chord(a, b);
    let f = put(dir.path(), "disk.json", &write_document(&Document::Outer(disk)));
    let svg_path = dir.path().join("disk.svg");
    let o = flatfold(&["render", s(&f), "--output", s(&svg_path)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.contains(r#"<circle class="boundary""#));
    assert_eq!(svg.matches(r#"class="chord""#).count(), 1);

    let mut pleat = OuterPattern::new(Region::unit_square());
    for x in [0.3, 0.6] {
        let a = pleat.add_point(Point2::new(x, 0.0));
        let b = pleat.add_point(Point2::new(x, 1.0));
        pleat.add_chord(a, b);
    }
    let f = put(dir.path(), "pleat.json", &write_document(&Document::Outer(pleat)));
    let out = dir.path().join("pleat");
    assert_eq!(code(&flatfold(&["fold-square", s(&f), "--output", s(&out)])), 0);
    let o = flatfold(&["render", s(&f), "--layering", s(&out.join("layering.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let svg = stdout(&o);
    for k in 0..3 {
        assert!(svg.contains(&format!(">{k}</text>")), "{svg}");
    }
}

#[test]
fn fixtures_write_pattern_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = flatfold(&["fixtures", "no-safe-crease", "--output", s(dir.path())]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("no-safe-crease.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["safe_creases"], 0);
    let f = dir.path().join("no-safe-crease.json");
    let o = flatfold(&["validate", s(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["data"]["safe_creases"], serde_json::json!([]));

    let f = put(dir.path(), "tc.json", &stdout(&flatfold(&["fixtures", "tree-counterexample"])));
    assert_eq!(code(&flatfold(&["validate", s(&f)])), 0);
    let o = flatfold(&["validate", s(&f), "--global"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("layering: none found"));
}

#[test]
fn tightness_path_connectivity() {
    let dir = tempfile::tempdir().unwrap();
    let f = put(dir.path(), "path.json", &stdout(&flatfold(&["fixtures", "tightness-path"])));
    let o = flatfold(&["connectivity", s(&f)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["data"]["connectivity"]["vertex_connectivity"], 2);
    assert_eq!(r["data"]["connectivity"]["edge_connectivity"], 4);
}

#[test]
fn output_is_deterministic() {
    let a = flatfold(&["fold-disk", "random", "--seed", "5"]);
    let b = flatfold(&["fold-disk", "random", "--seed", "5"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let (x, y) = (dir.path().join("x"), dir.path().join("y"));
    flatfold(&["fold-square", "random", "--seed", "9", "--output", s(&x)]);
    flatfold(&["fold-square", "random", "--seed", "9", "--output", s(&y)]);
    for name in ["pattern.json", "plan.json", "layering.json", "report.json"] {
        assert_eq!(
            std::fs::read(x.join(name)).unwrap(),
            std::fs::read(y.join(name)).unwrap(),
            "{name}"
        );
    }
    let f = x.join("pattern.json");
    let text = std::fs::read_to_string(&f).unwrap();
    assert_eq!(write_document(&parse_document(&text).unwrap()), text);
}
