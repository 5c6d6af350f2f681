//! SVG drawings of dissections. Coordinates are exact up to the final
//! conversion to pixels.

use std::fmt::Write;

use crate::catalog::CatalogEntry;
use crate::geometry::{Point, Polygon};
use crate::qfield::Qr;
use crate::solver::Dissection;
use crate::tans::TanKind;

pub const PX_PER_UNIT: i64 = 40;
pub const MARGIN_PX: i64 = 10;

fn fill(kind: TanKind) -> &'static str {
    match kind {
        TanKind::SmallTri1 => "#e8a33d",
        TanKind::SmallTri2 => "#d9772b",
        TanKind::MediumTri => "#6bb07a",
        TanKind::LargeTri1 => "#4f86c6",
        TanKind::LargeTri2 => "#7a6cc4",
        TanKind::Square => "#d45d79",
        TanKind::Parallelogram => "#59b3b3",
    }
}

/// Maps exact coordinates to pixels: x to the right, y up, with a margin.
#[derive(Clone, Debug)]
pub struct PixelFrame {
    min_x: Qr,
    max_y: Qr,
    pub width: f64,
    pub height: f64,
}

impl PixelFrame {
    pub fn fit(poly: &Polygon) -> PixelFrame {
        let xs = poly.vertices().iter().map(|v| &v.x);
        let ys = poly.vertices().iter().map(|v| &v.y);
        let min_x = xs.clone().min().unwrap().clone();
        let max_x = xs.max().unwrap().clone();
        let min_y = ys.clone().min().unwrap().clone();
        let max_y = ys.max().unwrap().clone();
        let scale = Qr::from_int(PX_PER_UNIT);
        let pad = Qr::from_int(2 * MARGIN_PX);
        let width = ((&max_x - &min_x) * scale.clone() + pad.clone()).to_f64();
        let height = ((&max_y - &min_y) * scale + pad).to_f64();
        PixelFrame { min_x, max_y, width, height }
    }

    /// Exact pixel coordinates.
    pub fn exact(&self, p: &Point) -> (Qr, Qr) {
        let scale = Qr::from_int(PX_PER_UNIT);
        let margin = Qr::from_int(MARGIN_PX);
        ((&p.x - &self.min_x) * scale.clone() + margin.clone(), (&self.max_y - &p.y) * scale + margin)
    }

    pub fn to_px(&self, p: &Point) -> (f64, f64) {
        let (x, y) = self.exact(p);
        (x.to_f64(), y.to_f64())
    }
}

fn points_attr(frame: &PixelFrame, poly: &Polygon) -> String {
    poly.vertices()
        .iter()
        .map(|v| {
            let (x, y) = frame.to_px(v);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Tans as thin filled polygons under a thick outline of the target.
pub fn dissection_svg(d: &Dissection, title: &str) -> String {
    let frame = PixelFrame::fit(&d.target);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = frame.width,
        h = frame.height
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    for pl in &d.placements {
        let poly = crate::tans::placed_polygon(pl);
        let _ = writeln!(
            s,
            r##"<polygon class="tan" data-kind="{}" points="{}" fill="{}" stroke="#222" stroke-width="1"/>"##,
            pl.kind,
            points_attr(&frame, &poly),
            fill(pl.kind)
        );
    }
    let _ = writeln!(
        s,
        r##"<polygon class="outline" points="{}" fill="none" stroke="#000" stroke-width="3" stroke-linejoin="round"/>"##,
        points_attr(&frame, &d.target)
    );
    s.push_str("</svg>\n");
    s
}

pub fn entry_svg(entry: &CatalogEntry) -> String {
    dissection_svg(&entry.witness, &entry.label)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// File name for an entry's drawing.
pub fn file_name(entry: &CatalogEntry) -> String {
    let safe: String =
        entry.label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '_' }).collect();
    format!("{}-{}.svg", entry.family.vertex_count(), safe)
}
