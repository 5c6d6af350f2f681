//! The seven tans, placements, and quarter-cell rasterization.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{Lattice, Point, Polygon, Symmetry};
use crate::qfield::Qr;

/// Shape class of a tan; the two small and the two large triangles share a shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TanShape {
    Small,
    Medium,
    Large,
    Square,
    Parallelogram,
}

impl TanShape {
    pub const ALL: [TanShape; 5] =
        [TanShape::Small, TanShape::Medium, TanShape::Large, TanShape::Square, TanShape::Parallelogram];

    /// Reference pose; vertex 0 is the origin and all vertices lie in ℤ².
    pub fn reference_coords(self) -> &'static [(i64, i64)] {
        match self {
            TanShape::Small => &[(0, 0), (1, 0), (0, 1)],
            TanShape::Medium => &[(0, 0), (2, 0), (1, 1)],
            TanShape::Large => &[(0, 0), (2, 0), (0, 2)],
            TanShape::Square => &[(0, 0), (1, 0), (1, 1), (0, 1)],
            TanShape::Parallelogram => &[(0, 0), (1, 0), (2, 1), (1, 1)],
        }
    }

    pub fn reference_polygon(self) -> Polygon {
        Polygon::from_int_coords(self.reference_coords()).expect("reference tans are valid")
    }

    /// Area in units of ¼, i.e. the number of quarter-cells covered.
    pub fn quarter_cell_count(self) -> usize {
        match self {
            TanShape::Small => 2,
            TanShape::Large => 8,
            _ => 4,
        }
    }

    pub fn area(self) -> Qr {
        Qr::from_parts(self.quarter_cell_count() as i64, 4, 0, 1)
    }

    pub fn name(self) -> &'static str {
        match self {
            TanShape::Small => "small",
            TanShape::Medium => "medium",
            TanShape::Large => "large",
            TanShape::Square => "square",
            TanShape::Parallelogram => "parallelogram",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TanKind {
    SmallTri1,
    SmallTri2,
    MediumTri,
    LargeTri1,
    LargeTri2,
    Square,
    Parallelogram,
}

impl TanKind {
    pub const ALL: [TanKind; 7] = [
        TanKind::SmallTri1,
        TanKind::SmallTri2,
        TanKind::MediumTri,
        TanKind::LargeTri1,
        TanKind::LargeTri2,
        TanKind::Square,
        TanKind::Parallelogram,
    ];

    pub fn shape(self) -> TanShape {
        match self {
            TanKind::SmallTri1 | TanKind::SmallTri2 => TanShape::Small,
            TanKind::MediumTri => TanShape::Medium,
            TanKind::LargeTri1 | TanKind::LargeTri2 => TanShape::Large,
            TanKind::Square => TanShape::Square,
            TanKind::Parallelogram => TanShape::Parallelogram,
        }
    }

    pub fn area(self) -> Qr {
        self.shape().area()
    }

    pub fn quarter_cell_count(self) -> usize {
        self.shape().quarter_cell_count()
    }

    pub fn reference_polygon(self) -> Polygon {
        self.shape().reference_polygon()
    }

    /// Ids of each shape, in order, for assigning ids to solved shapes.
    pub fn of_shape(shape: TanShape) -> &'static [TanKind] {
        match shape {
            TanShape::Small => &[TanKind::SmallTri1, TanKind::SmallTri2],
            TanShape::Medium => &[TanKind::MediumTri],
            TanShape::Large => &[TanKind::LargeTri1, TanKind::LargeTri2],
            TanShape::Square => &[TanKind::Square],
            TanShape::Parallelogram => &[TanKind::Parallelogram],
        }
    }

    /// Bit `i` set for `TanKind::ALL[i]`.
    pub fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for TanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Per-shape counts of a tan multiset.
pub fn shape_counts(tans: &[TanKind]) -> [u8; 5] {
    let mut counts = [0u8; 5];
    for t in tans {
        counts[t.shape() as usize] += 1;
    }
    counts
}

/// A tan moved into place: mirror in the x-axis (optional), rotate by
/// `rotation · π/4` about the origin, then translate.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Placement {
    pub kind: TanKind,
    #[serde(rename = "rot")]
    pub rotation: u8,
    #[serde(rename = "refl")]
    pub reflected: bool,
    #[serde(rename = "t")]
    pub translation: Point,
}

impl Placement {
    pub fn symmetry(&self) -> Symmetry {
        Symmetry::new(self.rotation as i32, self.reflected)
    }

    /// Ordering used to tell apart two placements of identical pieces.
    pub fn order_key(&self) -> (u8, bool, &Qr, &Qr) {
        (self.rotation, self.reflected, &self.translation.x, &self.translation.y)
    }

    /// The placement after applying `sym` then translating by `t`.
    pub fn moved(&self, sym: Symmetry, t: &Point) -> Placement {
        let combined = sym.compose(&self.symmetry());
        Placement {
            kind: self.kind,
            rotation: combined.rotation,
            reflected: combined.reflected,
            translation: &sym.apply(&self.translation) + t,
        }
    }
}

/// Exact vertex cycle of the placed tan, counter-clockwise.
pub fn placed_polygon(pl: &Placement) -> Polygon {
    let reference = pl.kind.reference_polygon();
    let moved = reference.transformed(pl.symmetry());
    moved.translated(&pl.translation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    S,
    E,
    N,
    W,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::S, Quadrant::E, Quadrant::N, Quadrant::W];

    /// Centroid offset within the unit cell, scaled by 6.
    fn centroid6(self) -> (i64, i64) {
        match self {
            Quadrant::S => (3, 1),
            Quadrant::E => (5, 3),
            Quadrant::N => (3, 5),
            Quadrant::W => (1, 3),
        }
    }

    /// Triangle corners within the unit cell, scaled by 2, counter-clockwise.
    fn corners2(self) -> [(i64, i64); 3] {
        match self {
            Quadrant::S => [(0, 0), (2, 0), (1, 1)],
            Quadrant::E => [(2, 0), (2, 2), (1, 1)],
            Quadrant::N => [(2, 2), (0, 2), (1, 1)],
            Quadrant::W => [(0, 2), (0, 0), (1, 1)],
        }
    }
}

/// One of the four triangles cut from the unit square `[i,i+1]×[j,j+1]` by
/// both diagonals, in some lattice frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuarterCell {
    pub i: i64,
    pub j: i64,
    pub q: Quadrant,
}

impl QuarterCell {
    pub fn new(i: i64, j: i64, q: Quadrant) -> Self {
        QuarterCell { i, j, q }
    }

    pub fn shifted(self, di: i64, dj: i64) -> Self {
        QuarterCell { i: self.i + di, j: self.j + dj, q: self.q }
    }

    /// Corners in frame coordinates scaled by 2.
    pub fn corners2(self) -> [(i64, i64); 3] {
        self.q.corners2().map(|(x, y)| (2 * self.i + x, 2 * self.j + y))
    }
}

/// Winding test of an integer point against an integer polygon; the point must
/// not lie on the boundary.
fn winding_int(poly: &[(i64, i64)], p: (i64, i64)) -> i32 {
    let n = poly.len();
    let mut w = 0;
    for k in 0..n {
        let a = poly[k];
        let b = poly[(k + 1) % n];
        let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
        if a.1 <= p.1 {
            if b.1 > p.1 && cross > 0 {
                w += 1;
            }
        } else if b.1 <= p.1 && cross < 0 {
            w -= 1;
        }
    }
    w
}

/// Quarter-cells inside a polygon given by integer frame coordinates.
pub fn cells_of_local_polygon(poly: &[(i64, i64)]) -> Vec<QuarterCell> {
    let min_x = poly.iter().map(|p| p.0).min().unwrap_or(0);
    let max_x = poly.iter().map(|p| p.0).max().unwrap_or(0);
    let min_y = poly.iter().map(|p| p.1).min().unwrap_or(0);
    let max_y = poly.iter().map(|p| p.1).max().unwrap_or(0);
    let scaled: Vec<(i64, i64)> = poly.iter().map(|&(x, y)| (6 * x, 6 * y)).collect();
    let mut cells = Vec::new();
    for i in min_x..max_x {
        for j in min_y..max_y {
            for q in Quadrant::ALL {
                let (cx, cy) = q.centroid6();
                // Centroids never lie on a frame-octilinear line through lattice points.
                if winding_int(&scaled, (6 * i + cx, 6 * j + cy)) != 0 {
                    cells.push(QuarterCell::new(i, j, q));
                }
            }
        }
    }
    cells
}

/// Integer frame coordinates of every vertex, if all are lattice points.
pub fn local_coords(poly: &Polygon, frame: &Lattice) -> Option<Vec<(i64, i64)>> {
    poly.vertices().iter().map(|v| frame.to_local(v)).collect()
}

fn twice_area_int(poly: &[(i64, i64)]) -> i64 {
    let n = poly.len();
    (0..n)
        .map(|k| {
            let a = poly[k];
            let b = poly[(k + 1) % n];
            a.0 * b.1 - a.1 * b.0
        })
        .sum()
}

/// The quarter-cells covered by a placed tan, if it is aligned to `frame`.
pub fn rasterize(pl: &Placement, frame: &Lattice) -> Option<BTreeSet<QuarterCell>> {
    let local = local_coords(&placed_polygon(pl), frame)?;
    let cells: BTreeSet<QuarterCell> = cells_of_local_polygon(&local).into_iter().collect();
    (cells.len() == pl.kind.quarter_cell_count()).then_some(cells)
}

/// A polygon together with its quarter-cell decomposition in a lattice frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub frame: Lattice,
    pub cells: BTreeSet<QuarterCell>,
    pub boundary: Polygon,
}

impl Region {
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Builds a region from a connected cell set whose boundary is a simple polygon.
    pub fn from_cells(frame: Lattice, cells: BTreeSet<QuarterCell>) -> Option<Region> {
        let boundary = trace_boundary(&frame, &cells)?;
        if cells.len() as i64 != 2 * twice_area_of(&boundary) {
            return None;
        }
        Some(Region { frame, cells, boundary })
    }
}

/// Twice the area as an integer count of half units, for lattice-aligned polygons.
fn twice_area_of(poly: &Polygon) -> i64 {
    (poly.area() * Qr::from_int(2)).to_i64().unwrap_or(-1)
}

/// Boundary of the union of cells as a simple polygon; `None` if the union
/// is disconnected, has holes, or pinches at a vertex.
fn trace_boundary(frame: &Lattice, cells: &BTreeSet<QuarterCell>) -> Option<Polygon> {
    let mut edges: BTreeSet<((i64, i64), (i64, i64))> = BTreeSet::new();
    for c in cells {
        let k = c.corners2();
        for e in [(k[0], k[1]), (k[1], k[2]), (k[2], k[0])] {
            if !edges.remove(&(e.1, e.0)) {
                edges.insert(e);
            }
        }
    }
    let mut next: HashMap<(i64, i64), (i64, i64)> = HashMap::new();
    for &(a, b) in &edges {
        if next.insert(a, b).is_some() {
            return None;
        }
    }
    let &(start, _) = edges.iter().next()?;
    let mut ring = vec![start];
    let mut cur = next[&start];
    while cur != start {
        ring.push(cur);
        cur = *next.get(&cur)?;
        if ring.len() > edges.len() {
            return None;
        }
    }
    if ring.len() != edges.len() {
        return None;
    }
    let half = Qr::from_parts(1, 2, 0, 1);
    let pts: Vec<Point> = ring
        .into_iter()
        .map(|(x, y)| {
            let local = Point::new(Qr::from_int(x) * &half, Qr::from_int(y) * &half);
            frame.local_to_world(&local)
        })
        .collect();
    Polygon::new(pts).ok()
}

/// Rasterizes a frame-aligned polygon.
pub fn polygon_to_region(poly: &Polygon, frame: &Lattice) -> Option<Region> {
    let local = local_coords(poly, frame)?;
    let cells: BTreeSet<QuarterCell> = cells_of_local_polygon(&local).into_iter().collect();
    if cells.len() as i64 != 2 * twice_area_int(&local) {
        return None;
    }
    Some(Region { frame: frame.clone(), cells, boundary: poly.clone() })
}
