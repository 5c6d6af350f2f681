//! Browser bindings: browse the catalog and test typed polygons.
//!
//! The plain functions are what the page calls through the `#[wasm_bindgen]`
//! wrappers at the bottom; they return JSON strings.

use std::sync::OnceLock;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tanlab::catalog::{Catalog, EntryClass};
use tanlab::enumerator::{full_catalog, solve_polygon, Verdict};
use tanlab::geometry::{Point, Polygon};
use tanlab::qfield::Qr;
use tanlab::render::{dissection_svg, entry_svg};

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(full_catalog)
}

#[derive(Serialize)]
struct IndexRow<'a> {
    label: &'a str,
    family: String,
    class: EntryClass,
    angles: String,
}

/// One row per catalog entry, in catalog order.
pub fn catalog_index() -> String {
    let rows: Vec<IndexRow> = catalog()
        .entries
        .iter()
        .map(|e| IndexRow {
            label: &e.label,
            family: format!("{:?}", e.family).to_lowercase(),
            class: e.cls,
            angles: e.polygon.angle_string(),
        })
        .collect();
    serde_json::to_string(&rows).expect("index serializes")
}

/// Drawing of the entry with this label, or an empty string.
pub fn entry_drawing(label: &str) -> String {
    catalog().find(label).map(entry_svg).unwrap_or_default()
}

/// Parses one `x, y` vertex per line; blank lines and `#` comments are skipped.
pub fn parse_vertices(text: &str) -> Result<Polygon, String> {
    let mut pts = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((x, y)) = line.split_once(',') else {
            return Err(format!("line {}: expected `x, y`", n + 1));
        };
        let coord = |s: &str| s.trim().parse::<Qr>().map_err(|e| format!("line {}: {e}", n + 1));
        pts.push(Point::new(coord(x)?, coord(y)?));
    }
    Polygon::new_any_orientation(pts).map_err(|e| e.to_string())
}

#[derive(Serialize, Default)]
struct SolveReply {
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    area: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    angles: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    match_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg: Option<String>,
}

/// Verdict, class, catalog match and drawing for typed vertices.
pub fn solve_text(text: &str) -> String {
    let reply = match parse_vertices(text) {
        Err(e) => SolveReply { error: Some(e), ..Default::default() },
        Ok(poly) => {
            let verdict = solve_polygon(&poly);
            let key = poly.canonical_key();
            let mut reply = SolveReply {
                verdict: Some(verdict.as_str()),
                area: Some(poly.area().to_string()),
                angles: Some(poly.angle_string()),
                match_label: catalog().entries.iter().find(|e| e.key == key).map(|e| e.label.clone()),
                ..Default::default()
            };
            if let Verdict::Tangram(class, w) = verdict {
                reply.class = Some(class.as_str());
                reply.svg = Some(dissection_svg(w.dissection(), "typed polygon"));
            }
            reply
        }
    };
    serde_json::to_string(&reply).expect("reply serializes")
}

#[wasm_bindgen(js_name = catalogIndex)]
pub fn catalog_index_js() -> String {
    catalog_index()
}

#[wasm_bindgen(js_name = entryDrawing)]
pub fn entry_drawing_js(label: &str) -> String {
    entry_drawing(label)
}

#[wasm_bindgen(js_name = solveText)]
pub fn solve_text_js(text: &str) -> String {
    solve_text(text)
}
