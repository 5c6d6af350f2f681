use serde_json::Value;

use tanlab_web::{catalog_index, entry_drawing, parse_vertices, solve_text};

#[test]
fn index_lists_the_catalog() {
    let rows: Vec<Value> = serde_json::from_str(&catalog_index()).unwrap();
    assert_eq!(rows.len(), 64);
    let pentagons = rows.iter().filter(|r| r["family"] == "pentagon").count();
    assert_eq!(pentagons, 53);
    assert!(rows.iter().any(|r| r["label"] == "D1.D2.b" && r["class"] == "nonlattice-nonconvex"));
}

#[test]
fn drawings_by_label() {
    let svg = entry_drawing("63111");
    assert_eq!(svg.matches(r#"class="tan""#).count(), 7);
    assert!(entry_drawing("no such label").is_empty());
}

#[test]
fn typed_triangle_is_a_tangram() {
    let reply: Value = serde_json::from_str(&solve_text("0, 0\n4, 0\n0, 4\n")).unwrap();
    assert_eq!(reply["verdict"], "tangram");
    assert_eq!(reply["class"], "lattice");
    assert_eq!(reply["area"], "8");
    assert_eq!(reply["match_label"], "211");
    assert!(reply["svg"].as_str().unwrap().starts_with("<svg"));
}

#[test]
fn clockwise_and_irrational_input() {
    // a 2√2 × 2√2 square, listed clockwise
    let text = "# square\n0, 0\n0, 2√2\n2sqrt2, 2√2\n2√2, 0";
    let reply: Value = serde_json::from_str(&solve_text(text)).unwrap();
    assert_eq!(reply["verdict"], "tangram");
    assert_eq!(reply["angles"], "2222");
}

#[test]
fn errors_name_the_line() {
    let reply: Value = serde_json::from_str(&solve_text("0, 0\n1 1\n")).unwrap();
    assert!(reply["error"].as_str().unwrap().starts_with("line 2"));
    let reply: Value = serde_json::from_str(&solve_text("0, 0\n1, x\n0, 1")).unwrap();
    assert!(reply["error"].as_str().unwrap().starts_with("line 2"));
    assert!(parse_vertices("0, 0\n2, 1\n0, 1").is_err());
}

#[test]
fn unit_square_is_not() {
    let reply: Value = serde_json::from_str(&solve_text("0,0\n1,0\n1,1\n0,1")).unwrap();
    assert_eq!(reply["verdict"], "not-tangram");
    assert!(reply.get("svg").is_none());
}
