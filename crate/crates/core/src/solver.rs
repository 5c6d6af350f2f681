//! Exact-cover tiling of quarter-cell regions by tans, split solving for
//! two-lattice pentagons, and exact dissection checks.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{
    any_lattice_of_points, lattice_of_points, orient, twice_signed_area, Direction, Parity, Point, Polygon,
};
use crate::qfield::Qr;
use crate::tans::{
    cells_of_local_polygon, placed_polygon, polygon_to_region, Placement, QuarterCell, Region, TanKind, TanShape,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Cut branches where some remaining shape has no free placement left.
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { prune: true }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("region has {cells} quarter-cells but the tans cover {required}")]
    AreaMismatch { cells: usize, required: usize },
    #[error("tan {0} listed more than once")]
    DuplicateTan(TanKind),
    #[error("no tiling exists")]
    NoTiling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangramClass {
    #[serde(rename = "lattice")]
    Lattice,
    #[serde(rename = "non-lattice")]
    NonLattice,
}

impl TangramClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TangramClass::Lattice => "lattice",
            TangramClass::NonLattice => "non-lattice",
        }
    }
}

/// Placements of tans that together tile `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dissection {
    pub target: Polygon,
    /// Sorted by tan id.
    pub placements: Vec<Placement>,
}

impl Dissection {
    pub fn kinds(&self) -> Vec<TanKind> {
        self.placements.iter().map(|p| p.kind).collect()
    }

    pub fn polygons(&self) -> Vec<Polygon> {
        self.placements.iter().map(placed_polygon).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct DissectionWire {
    target: Polygon,
    placements: Vec<Placement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class: Option<TangramClass>,
}

impl Serialize for Dissection {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DissectionWire { target: self.target.clone(), placements: self.placements.clone(), class: Some(classify(self)) }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dissection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = DissectionWire::deserialize(d)?;
        Ok(Dissection { target: w.target, placements: w.placements })
    }
}

/// Two interior-disjoint convex parts in different lattices, each tiled by
/// a share of the seven tans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub t1: Region,
    pub t1_dissection: Dissection,
    pub t2: Region,
    pub t2_dissection: Dissection,
    /// Shared boundary segment starting at `v0`.
    pub cut: (Point, Point),
    pub v0: Point,
}

impl SplitWitness {
    /// All seven placements as a dissection of `target`.
    pub fn combined(&self, target: Polygon) -> Dissection {
        let mut placements: Vec<Placement> =
            self.t1_dissection.placements.iter().chain(&self.t2_dissection.placements).cloned().collect();
        placements.sort_by_key(|p| p.kind);
        Dissection { target, placements }
    }
}

/// Search order: large triangles first.
const SHAPE_ORDER: [TanShape; 5] =
    [TanShape::Large, TanShape::Medium, TanShape::Square, TanShape::Parallelogram, TanShape::Small];

#[derive(Clone, Debug)]
struct LocalPlacement {
    shape: TanShape,
    rotation: u8,
    reflected: bool,
    t: (i64, i64),
    mask: u64,
}

/// Orientation of a reference shape by an even rotation and optional mirror,
/// in integer coordinates.
fn orient_int(coords: &[(i64, i64)], rotation: u8, reflected: bool) -> Vec<(i64, i64)> {
    coords
        .iter()
        .map(|&(x, y)| {
            let (mut x, mut y) = if reflected { (x, -y) } else { (x, y) };
            for _ in 0..rotation / 2 {
                (x, y) = (-y, x);
            }
            (x, y)
        })
        .collect()
}

/// Region cells indexed for bitmask search, with every placement of every
/// shape that fits inside.
struct Board {
    full: u64,
    placements: Vec<LocalPlacement>,
    /// `by_min[cell][shape]`: placements whose lowest cell is `cell`.
    by_min: Vec<[Vec<usize>; 5]>,
    by_shape: [Vec<usize>; 5],
}

impl Board {
    fn new(region: &Region, shapes: &BTreeSet<TanShape>) -> Board {
        let cells: Vec<QuarterCell> = region.cells.iter().copied().collect();
        assert!(cells.len() <= 64, "regions are at most 64 quarter-cells");
        let index: HashMap<QuarterCell, usize> = cells.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let full = if cells.len() == 64 { u64::MAX } else { (1u64 << cells.len()) - 1 };
        let (min_i, max_i) = (cells.iter().map(|c| c.i).min(), cells.iter().map(|c| c.i).max());
        let (min_j, max_j) = (cells.iter().map(|c| c.j).min(), cells.iter().map(|c| c.j).max());
        let mut placements = Vec::new();
        let mut seen: HashSet<(TanShape, u64)> = HashSet::new();
        if let (Some(min_i), Some(max_i), Some(min_j), Some(max_j)) = (min_i, max_i, min_j, max_j) {
            for &shape in shapes {
                for reflected in [false, true] {
                    for rotation in [0u8, 2, 4, 6] {
                        let oriented = orient_int(shape.reference_coords(), rotation, reflected);
                        let base = cells_of_local_polygon(&oriented);
                        let bi0 = base.iter().map(|c| c.i).min().unwrap();
                        let bi1 = base.iter().map(|c| c.i).max().unwrap();
                        let bj0 = base.iter().map(|c| c.j).min().unwrap();
                        let bj1 = base.iter().map(|c| c.j).max().unwrap();
                        for ti in (min_i - bi0)..=(max_i - bi1) {
                            for tj in (min_j - bj0)..=(max_j - bj1) {
                                let mask = base
                                    .iter()
                                    .try_fold(0u64, |m, c| index.get(&c.shifted(ti, tj)).map(|&k| m | (1u64 << k)));
                                let Some(mask) = mask else { continue };
                                if seen.insert((shape, mask)) {
                                    placements.push(LocalPlacement { shape, rotation, reflected, t: (ti, tj), mask });
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut by_min: Vec<[Vec<usize>; 5]> = vec![Default::default(); cells.len()];
        let mut by_shape: [Vec<usize>; 5] = Default::default();
        for (k, p) in placements.iter().enumerate() {
            by_min[p.mask.trailing_zeros() as usize][p.shape as usize].push(k);
            by_shape[p.shape as usize].push(k);
        }
        Board { full, placements, by_min, by_shape }
    }

    fn feasible(&self, covered: u64, counts: &[u8; 5]) -> bool {
        SHAPE_ORDER.iter().all(|&s| {
            counts[s as usize] == 0 || self.by_shape[s as usize].iter().any(|&k| self.placements[k].mask & covered == 0)
        })
    }

    fn search(
        &self,
        covered: u64,
        counts: &mut [u8; 5],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
        opts: SolveOptions,
    ) -> bool {
        if covered == self.full {
            out.push(chosen.clone());
            return out.len() >= limit;
        }
        let cell = (!covered & self.full).trailing_zeros() as usize;
        for shape in SHAPE_ORDER {
            if counts[shape as usize] == 0 {
                continue;
            }
            for &k in &self.by_min[cell][shape as usize] {
                let mask = self.placements[k].mask;
                if mask & covered != 0 {
                    continue;
                }
                counts[shape as usize] -= 1;
                chosen.push(k);
                let next = covered | mask;
                let descend = !opts.prune || self.feasible(next, counts);
                if descend && self.search(next, counts, chosen, out, limit, opts) {
                    return true;
                }
                chosen.pop();
                counts[shape as usize] += 1;
            }
        }
        false
    }
}

fn check_tans(region: &Region, tans: &[TanKind]) -> Result<[u8; 5], TileError> {
    let mut seen = 0u8;
    for &t in tans {
        if seen & t.bit() != 0 {
            return Err(TileError::DuplicateTan(t));
        }
        seen |= t.bit();
    }
    let required: usize = tans.iter().map(|t| t.quarter_cell_count()).sum();
    if required != region.cells.len() {
        return Err(TileError::AreaMismatch { cells: region.cells.len(), required });
    }
    let mut counts = [0u8; 5];
    for t in tans {
        counts[t.shape() as usize] += 1;
    }
    Ok(counts)
}

/// Converts chosen local placements to a dissection, giving identical pieces
/// their ids in placement order.
fn to_dissection(region: &Region, board: &Board, chosen: &[usize], tans: &[TanKind]) -> Dissection {
    let parity = region.frame.parity.rotation();
    let mut placements = Vec::with_capacity(chosen.len());
    for shape in TanShape::ALL {
        let mut world: Vec<Placement> = chosen
            .iter()
            .map(|&k| &board.placements[k])
            .filter(|p| p.shape == shape)
            .map(|p| Placement {
                kind: TanKind::of_shape(shape)[0],
                rotation: ((p.rotation as i32 + parity) % 8) as u8,
                reflected: p.reflected,
                translation: region.frame.to_world(p.t),
            })
            .collect();
        world.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        let mut ids: Vec<TanKind> = tans.iter().copied().filter(|t| t.shape() == shape).collect();
        ids.sort();
        for (mut pl, id) in world.into_iter().zip(ids) {
            pl.kind = id;
            placements.push(pl);
        }
    }
    placements.sort_by_key(|p| p.kind);
    Dissection { target: region.boundary.clone(), placements }
}

fn run(region: &Region, tans: &[TanKind], limit: usize, opts: SolveOptions) -> Result<Vec<Dissection>, TileError> {
    let mut counts = check_tans(region, tans)?;
    let shapes: BTreeSet<TanShape> = tans.iter().map(|t| t.shape()).collect();
    let board = Board::new(region, &shapes);
    let mut out = Vec::new();
    if !region.cells.is_empty() {
        board.search(0, &mut counts, &mut Vec::new(), &mut out, limit, opts);
    } else {
        out.push(Vec::new());
    }
    Ok(out.iter().map(|c| to_dissection(region, &board, c, tans)).collect())
}

/// First tiling of `region` using each listed tan exactly once.
pub fn tile(region: &Region, tans: &[TanKind]) -> Result<Dissection, TileError> {
    tile_with(region, tans, SolveOptions::default())
}

pub fn tile_with(region: &Region, tans: &[TanKind], opts: SolveOptions) -> Result<Dissection, TileError> {
    run(region, tans, 1, opts)?.into_iter().next().ok_or(TileError::NoTiling)
}

/// Every tiling, counting tilings that differ only by swapping identical pieces once.
pub fn tile_all(region: &Region, tans: &[TanKind]) -> Vec<Dissection> {
    tile_all_with(region, tans, SolveOptions::default())
}

pub fn tile_all_with(region: &Region, tans: &[TanKind], opts: SolveOptions) -> Vec<Dissection> {
    run(region, tans, usize::MAX, opts).unwrap_or_default()
}

/// Tan subsets for the first part of a split, one per multiset up to
/// swapping identical pieces, with more large triangles in the first part tried first.
pub fn split_partitions(first_cells: usize) -> Vec<Vec<TanKind>> {
    let mut seen = HashSet::new();
    let mut parts: Vec<(Vec<u8>, Vec<TanKind>)> = Vec::new();
    for mask in 0u8..128 {
        let subset: Vec<TanKind> = TanKind::ALL.iter().copied().filter(|t| mask & t.bit() != 0).collect();
        if subset.iter().map(|t| t.quarter_cell_count()).sum::<usize>() != first_cells {
            continue;
        }
        let mut counts = [0u8; 5];
        for t in &subset {
            counts[t.shape() as usize] += 1;
        }
        if !seen.insert(counts) {
            continue;
        }
        let priority: Vec<u8> = SHAPE_ORDER.iter().map(|&s| counts[s as usize]).collect();
        // Canonical ids: the lowest ids of each shape go to the first part.
        let mut canonical = Vec::new();
        for s in TanShape::ALL {
            canonical.extend_from_slice(&TanKind::of_shape(s)[..counts[s as usize] as usize]);
        }
        canonical.sort();
        parts.push((priority, canonical));
    }
    parts.sort_by(|a, b| b.0.cmp(&a.0));
    parts.into_iter().map(|(_, p)| p).collect()
}

fn complement(tans: &[TanKind]) -> Vec<TanKind> {
    TanKind::ALL.iter().copied().filter(|t| !tans.contains(t)).collect()
}

/// Common boundary segment of two polygons sharing the vertex `v0`.
fn shared_segment(t1: &Polygon, t2: &Polygon, v0: &Point) -> (Point, Point) {
    let rays = |p: &Polygon| -> Vec<(Direction, Point)> {
        let n = p.len();
        let Some(k) = p.vertices().iter().position(|v| v == v0) else { return Vec::new() };
        [p.vertex(k + 1), p.vertex(k + n - 1)]
            .into_iter()
            .map(|w| (Direction::of_vector(&(w - v0)).expect("octilinear"), w.clone()))
            .collect()
    };
    for (d1, w1) in rays(t1) {
        for (d2, w2) in rays(t2) {
            if d1 == d2 {
                let near = if (&w1 - v0).dot(&(&w1 - v0)) <= (&w2 - v0).dot(&(&w2 - v0)) { w1.clone() } else { w2 };
                return (v0.clone(), near);
            }
        }
    }
    (v0.clone(), v0.clone())
}

/// Tiles two parts lying in different lattices with complementary tan sets.
pub fn solve_split(t1_poly: &Polygon, t2_poly: &Polygon, v0: &Point) -> Option<SplitWitness> {
    solve_split_with(t1_poly, t2_poly, v0, SolveOptions::default())
}

pub fn solve_split_with(t1_poly: &Polygon, t2_poly: &Polygon, v0: &Point, opts: SolveOptions) -> Option<SplitWitness> {
    let l1 = any_lattice_of_points(t1_poly.vertices())?;
    let l2 = any_lattice_of_points(t2_poly.vertices())?;
    if l1.parity == l2.parity {
        return None;
    }
    let r1 = polygon_to_region(t1_poly, &l1)?;
    let r2 = polygon_to_region(t2_poly, &l2)?;
    if r1.cell_count() + r2.cell_count() != 32 {
        return None;
    }
    for s1 in split_partitions(r1.cell_count()) {
        let s2 = complement(&s1);
        let Ok(d1) = tile_with(&r1, &s1, opts) else { continue };
        let Ok(d2) = tile_with(&r2, &s2, opts) else { continue };
        return Some(SplitWitness {
            cut: shared_segment(t1_poly, t2_poly, v0),
            t1: r1,
            t1_dissection: d1,
            t2: r2,
            t2_dissection: d2,
            v0: v0.clone(),
        });
    }
    None
}

/// Clips `subject` (any simple polygon) to the convex CCW polygon `clip`.
fn clip_convex(subject: &[Point], clip: &Polygon) -> Vec<Point> {
    let mut out: Vec<Point> = subject.to_vec();
    let n = clip.len();
    for e in 0..n {
        if out.is_empty() {
            break;
        }
        let (a, b) = clip.edge(e);
        let input = std::mem::take(&mut out);
        let m = input.len();
        let ab = b - a;
        for k in 0..m {
            let p = &input[k];
            let q = &input[(k + 1) % m];
            let p_in = orient(a, b, p) >= 0;
            let q_in = orient(a, b, q) >= 0;
            if p_in {
                out.push(p.clone());
            }
            if p_in != q_in {
                let num = ab.cross(&(p - a));
                let den = ab.cross(&(p - q));
                let s = num / den;
                out.push(p + &(q - p).scale(&s));
            }
        }
    }
    out
}

/// Area of the intersection of a simple polygon with a convex polygon.
pub fn intersection_area(subject: &Polygon, convex: &Polygon) -> Qr {
    let clipped = clip_convex(subject.vertices(), convex);
    if clipped.len() < 3 {
        return Qr::zero();
    }
    twice_signed_area(&clipped) * Qr::from_parts(1, 2, 0, 1)
}

/// Exact check that the placements tile the target: distinct tans, each
/// inside the target, pairwise interior-disjoint, with areas summing to the target's.
pub fn validate(d: &Dissection) -> bool {
    let mut seen = 0u8;
    for p in &d.placements {
        if seen & p.kind.bit() != 0 || p.rotation > 7 {
            return false;
        }
        seen |= p.kind.bit();
    }
    let polys = d.polygons();
    let total = polys.iter().fold(Qr::zero(), |acc, p| acc + p.area());
    if total != d.target.area() {
        return false;
    }
    for p in &polys {
        if intersection_area(&d.target, p) != p.area() {
            return false;
        }
    }
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            if !intersection_area(&polys[i], &polys[j]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Lattice iff every tan induces the same lattice.
pub fn classify(d: &Dissection) -> TangramClass {
    let mut lattices =
        d.placements.iter().map(|p| lattice_of_points(placed_polygon(p).vertices(), Parity::from_rotation(p.rotation)));
    let Some(first) = lattices.next() else { return TangramClass::Lattice };
    if first.is_some() && lattices.all(|l| l == first) {
        TangramClass::Lattice
    } else {
        TangramClass::NonLattice
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Lattice;

    fn region(c: &[(i64, i64)]) -> Region {
        polygon_to_region(&Polygon::from_int_coords(c).unwrap(), &Lattice::unit()).unwrap()
    }

    #[test]
    fn big_triangle_takes_all_seven() {
        let r = region(&[(0, 0), (4, 0), (0, 4)]);
        let d = tile(&r, &TanKind::ALL).unwrap();
        assert_eq!(d.kinds(), TanKind::ALL.to_vec());
        assert!(validate(&d));
        assert_eq!(classify(&d), TangramClass::Lattice);
    }

    #[test]
    fn square_from_two_large() {
        let r = region(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let tans = [TanKind::LargeTri1, TanKind::LargeTri2];
        assert!(tile(&r, &tans).is_ok());
        let all = tile_all(&r, &tans);
        assert_eq!(all.len(), 2);
        for d in &all {
            assert!(validate(d));
            let (a, b) = (&d.placements[0], &d.placements[1]);
            assert!(a.order_key() <= b.order_key());
        }
    }

    #[test]
    fn unit_square_single_solution() {
        let r = region(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(tile_all(&r, &[TanKind::Square]).len(), 1);
    }

    #[test]
    fn precondition_errors() {
        let r = region(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(tile(&r, &[TanKind::LargeTri1]), Err(TileError::AreaMismatch { cells: 4, required: 8 }));
        assert_eq!(
            tile(&r, &[TanKind::SmallTri1, TanKind::SmallTri1]),
            Err(TileError::DuplicateTan(TanKind::SmallTri1))
        );
        assert_eq!(tile(&r, &[TanKind::MediumTri]), Err(TileError::NoTiling));
    }

    #[test]
    fn pruning_does_not_change_answers() {
        let r = region(&[(0, 0), (4, 0), (0, 4)]);
        let a = tile_all_with(&r, &TanKind::ALL, SolveOptions { prune: true });
        let b = tile_all_with(&r, &TanKind::ALL, SolveOptions { prune: false });
        assert_eq!(a, b);
        assert!(a.len() > 1);
    }

    #[test]
    fn validate_rejects_overlap_and_shift() {
        let r = region(&[(0, 0), (4, 0), (0, 4)]);
        let d = tile(&r, &TanKind::ALL).unwrap();
        let mut shifted = d.clone();
        shifted.placements[0].translation = &shifted.placements[0].translation + &Point::from_ints(0, 1);
        assert!(!validate(&shifted));

        let two = region(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let small = |kind| Placement { kind, rotation: 0, reflected: false, translation: Point::origin() };
        let overlap =
            Dissection { target: two.boundary, placements: vec![small(TanKind::SmallTri1), small(TanKind::SmallTri2)] };
        assert!(!validate(&overlap));
    }

    #[test]
    fn partitions_prefer_large_in_first_part() {
        let parts = split_partitions(16);
        assert_eq!(parts[0], vec![TanKind::LargeTri1, TanKind::LargeTri2]);
        let counts: HashSet<Vec<TanKind>> = parts.iter().cloned().collect();
        assert_eq!(counts.len(), parts.len());
        assert!(split_partitions(0).len() == 1 && split_partitions(32).len() == 1);
    }

    #[test]
    fn intersection_area_examples() {
        let a = Polygon::from_int_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let b = Polygon::from_int_coords(&[(1, 1), (3, 1), (3, 3), (1, 3)]).unwrap();
        assert_eq!(intersection_area(&a, &b), Qr::one());
        let c = Polygon::from_int_coords(&[(2, 0), (3, 0), (3, 1), (2, 1)]).unwrap();
        assert!(intersection_area(&a, &c).is_zero());
        let l = Polygon::from_int_coords(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(intersection_area(&l, &b), Qr::zero());
        assert_eq!(intersection_area(&l, &a), Qr::from_int(3));
    }
}
