//! Exact octilinear polygon geometry.
//!
//! Polygons here have every edge along one of the eight directions `d·π/4`.
//! Angles are handled as integer codes (interior angle `k·π/4`), lattices as
//! a parity plus an anchor, and congruence through [`CanonicalKey`].

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::qfield::Qr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} repeats its predecessor")]
    RepeatedVertex(usize),
    #[error("edge {0} is not along a multiple of pi/4")]
    NotOctilinear(usize),
    #[error("boundary doubles back on itself at vertex {0}")]
    Spike(usize),
    #[error("boundary is not simple")]
    NotSimple,
    #[error("vertices are in clockwise order")]
    Clockwise,
}

/// A point with exact coordinates. Serialized as `[x, y]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub x: Qr,
    pub y: Qr,
}

impl Point {
    pub fn new(x: Qr, y: Qr) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(x.into(), y.into())
    }

    pub fn origin() -> Self {
        Self::default()
    }

    pub fn dot(&self, other: &Point) -> Qr {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &Point) -> Qr {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn scale(&self, s: &Qr) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    /// Image under rotation by `eighth_turns · π/4` about `center`.
    pub fn rotate_about(&self, center: &Point, eighth_turns: i32) -> Point {
        let v = self - center;
        &rotate_vec(&v, eighth_turns) + center
    }

    /// Mirror in the x-axis.
    pub fn reflect_x(&self) -> Point {
        Point::new(self.x.clone(), -&self.y)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.x, &self.y).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (x, y) = <(Qr, Qr)>::deserialize(d)?;
        Ok(Point { x, y })
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

/// `(cos, sin)` of `r·π/4`.
fn cos_sin(r: i32) -> (Qr, Qr) {
    let h = Qr::half_sqrt2;
    let one = Qr::one;
    let zero = Qr::zero;
    match r.rem_euclid(8) {
        0 => (one(), zero()),
        1 => (h(), h()),
        2 => (zero(), one()),
        3 => (-h(), h()),
        4 => (-one(), zero()),
        5 => (-h(), -h()),
        6 => (zero(), -one()),
        _ => (h(), -h()),
    }
}

fn rotate_vec(v: &Point, r: i32) -> Point {
    match r.rem_euclid(8) {
        0 => v.clone(),
        2 => Point::new(-&v.y, v.x.clone()),
        4 => Point::new(-&v.x, -&v.y),
        6 => Point::new(v.y.clone(), -&v.x),
        _ => {
            let (c, s) = cos_sin(r);
            Point::new(&c * &v.x - &s * &v.y, &s * &v.x + &c * &v.y)
        }
    }
}

/// One of the eight octilinear directions, `d·π/4` from the positive x-axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Direction(u8);

impl Direction {
    pub fn new(d: i32) -> Self {
        Direction(d.rem_euclid(8) as u8)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn is_axis(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Integer step vector: `(1,0)`, `(1,1)`, `(0,1)`, `(-1,1)`, ...
    pub fn step(self) -> (i64, i64) {
        const STEPS: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
        STEPS[self.0 as usize]
    }

    pub fn rotated(self, eighth_turns: i32) -> Self {
        Direction::new(self.0 as i32 + eighth_turns)
    }

    pub fn opposite(self) -> Self {
        self.rotated(4)
    }

    /// Direction of a nonzero vector, if octilinear.
    pub fn of_vector(v: &Point) -> Option<Direction> {
        let sx = v.x.signum();
        let sy = v.y.signum();
        let d = if sy == 0 {
            match sx {
                1 => 0,
                -1 => 4,
                _ => return None,
            }
        } else if sx == 0 {
            if sy > 0 {
                2
            } else {
                6
            }
        } else if v.x == v.y {
            if sx > 0 {
                1
            } else {
                5
            }
        } else if v.x == -&v.y {
            if sy > 0 {
                3
            } else {
                7
            }
        } else {
            return None;
        };
        Some(Direction(d))
    }
}

/// Interior angle `k·π/4` at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngleCode(pub u8);

impl AngleCode {
    /// Code at a vertex entered along `d_in` and left along `d_out` on a CCW boundary.
    pub fn between(d_in: Direction, d_out: Direction) -> AngleCode {
        AngleCode(((d_in.0 as i32 + 4 - d_out.0 as i32).rem_euclid(8)) as u8)
    }

    pub fn is_reflex(self) -> bool {
        self.0 > 4
    }
}

/// Sign of the turn `a → b → c`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    (b - a).cross(&(c - a)).signum()
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == 0 && (p - a).dot(&(p - b)).signum() <= 0
}

/// Closed-segment intersection test.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(c, a, b))
        || (o2 == 0 && on_segment(d, a, b))
        || (o3 == 0 && on_segment(a, c, d))
        || (o4 == 0 && on_segment(b, c, d))
}

/// True iff the closed vertex cycle has edges meeting only at the shared
/// endpoints of consecutive edges.
pub fn is_simple(vertices: &[Point]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    let edge = |i: usize| (&vertices[i], &vertices[(i + 1) % n]);
    for i in 0..n {
        let (a, b) = edge(i);
        if a == b {
            return false;
        }
        // Consecutive edges a→b, b→c must not fold back over each other.
        let c = &vertices[(i + 2) % n];
        if orient(a, b, c) == 0 && (b - a).dot(&(c - b)).signum() < 0 {
            return false;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let (a, b) = edge(i);
            let (c, d) = edge(j);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Twice the signed shoelace area of a vertex cycle.
pub fn twice_signed_area(vertices: &[Point]) -> Qr {
    let n = vertices.len();
    let mut acc = Qr::zero();
    for i in 0..n {
        acc += &vertices[i].cross(&vertices[(i + 1) % n]);
    }
    acc
}

/// Removes repeated consecutive points and straight (collinear, same-direction) vertices.
pub fn simplify_ring(mut pts: Vec<Point>) -> Vec<Point> {
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let cur = &pts[i];
            let next = &pts[(i + 1) % n];
            let redundant =
                cur == prev || (orient(prev, cur, next) == 0 && (cur - prev).dot(&(next - cur)).signum() > 0);
            if redundant {
                pts.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return pts;
        }
    }
}

/// A simple, counter-clockwise, octilinear polygon without straight vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates a CCW vertex cycle; straight vertices are merged away.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + n - 1) % n] {
                return Err(GeometryError::RepeatedVertex(i));
            }
        }
        for i in 0..n {
            let v = &vertices[(i + 1) % n] - &vertices[i];
            if Direction::of_vector(&v).is_none() {
                return Err(GeometryError::NotOctilinear(i));
            }
        }
        for i in 0..n {
            let d_in = Direction::of_vector(&(&vertices[i] - &vertices[(i + n - 1) % n])).unwrap();
            let d_out = Direction::of_vector(&(&vertices[(i + 1) % n] - &vertices[i])).unwrap();
            if d_out == d_in.opposite() {
                return Err(GeometryError::Spike(i));
            }
        }
        let vertices = simplify_ring(vertices);
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if !is_simple(&vertices) {
            return Err(GeometryError::NotSimple);
        }
        if !twice_signed_area(&vertices).is_positive() {
            return Err(GeometryError::Clockwise);
        }
        Ok(Self { vertices })
    }

    /// Like [`Polygon::new`] but accepts either orientation.
    pub fn new_any_orientation(mut vertices: Vec<Point>) -> Result<Self, GeometryError> {
        if twice_signed_area(&vertices).is_negative() {
            vertices.reverse();
        }
        Self::new(vertices)
    }

    pub fn from_int_coords(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_direction(&self, i: usize) -> Direction {
        let (a, b) = self.edge(i);
        Direction::of_vector(&(b - a)).expect("octilinear by construction")
    }

    pub fn edge_directions(&self) -> Vec<Direction> {
        (0..self.len()).map(|i| self.edge_direction(i)).collect()
    }

    /// Euclidean length of edge `i`.
    pub fn edge_length(&self, i: usize) -> Qr {
        let (a, b) = self.edge(i);
        edge_length(&(b - a))
    }

    pub fn area(&self) -> Qr {
        twice_signed_area(&self.vertices) * Qr::from_parts(1, 2, 0, 1)
    }

    /// Interior angle code at each vertex.
    pub fn angle_codes(&self) -> Vec<AngleCode> {
        let dirs = self.edge_directions();
        let n = dirs.len();
        (0..n).map(|i| AngleCode::between(dirs[(i + n - 1) % n], dirs[i])).collect()
    }

    pub fn is_convex(&self) -> bool {
        self.angle_codes().iter().all(|k| !k.is_reflex())
    }

    pub fn reflex_count(&self) -> usize {
        self.angle_codes().iter().filter(|k| k.is_reflex()).count()
    }

    pub fn translated(&self, t: &Point) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|v| v + t).collect() }
    }

    /// Image under a point-group symmetry about the origin; orientation is restored to CCW.
    pub fn transformed(&self, sym: Symmetry) -> Polygon {
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| sym.apply(v)).collect();
        if sym.reflected {
            vertices.reverse();
        }
        Polygon { vertices }
    }

    pub fn rotated_about(&self, center: &Point, eighth_turns: i32) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|v| v.rotate_about(center, eighth_turns)).collect() }
    }

    /// Exact point-in-polygon test for the closed polygon.
    pub fn contains_closed(&self, p: &Point) -> bool {
        let n = self.len();
        for i in 0..n {
            let (a, b) = self.edge(i);
            if on_segment(p, a, b) {
                return true;
            }
        }
        self.winding(p) != 0
    }

    /// Winding number of the boundary around a point not on it.
    fn winding(&self, p: &Point) -> i32 {
        let n = self.len();
        let mut w = 0;
        for i in 0..n {
            let (a, b) = self.edge(i);
            if a.y <= p.y {
                if b.y > p.y && orient(a, b, p) > 0 {
                    w += 1;
                }
            } else if b.y <= p.y && orient(a, b, p) < 0 {
                w -= 1;
            }
        }
        w
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canonical_form(self)
    }

    /// Angle codes read in the canonical cyclic order, e.g. `"52131"`.
    pub fn angle_string(&self) -> String {
        canonical_angle_string(&self.angle_codes())
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonWire {
    vertices: Vec<Point>,
}

impl Serialize for Polygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolygonWire { vertices: self.vertices.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = PolygonWire::deserialize(d)?;
        Polygon::new(wire.vertices).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vertices.iter()).finish()
    }
}

/// Length of an octilinear vector.
pub fn edge_length(v: &Point) -> Qr {
    let d = Direction::of_vector(v).expect("octilinear vector");
    if d.is_axis() {
        v.x.abs() + v.y.abs()
    } else {
        v.x.abs() * Qr::sqrt2()
    }
}

/// Lexicographically largest reading of a cyclic code sequence over all
/// starting points and both directions. For one-reflex pentagons this starts
/// at the reflex vertex, matching the usual `"53121"` style.
pub fn canonical_angle_string(codes: &[AngleCode]) -> String {
    let n = codes.len();
    let digits: Vec<u8> = codes.iter().map(|k| b'0' + k.0).collect();
    let mut best: Option<Vec<u8>> = None;
    for rev in [false, true] {
        let seq: Vec<u8> = if rev { digits.iter().rev().copied().collect() } else { digits.clone() };
        for s in 0..n {
            let cand: Vec<u8> = (0..n).map(|i| seq[(s + i) % n]).collect();
            if best.as_ref().is_none_or(|b| cand > *b) {
                best = Some(cand);
            }
        }
    }
    String::from_utf8(best.unwrap_or_default()).unwrap()
}

/// Element of the 16-element point group: optional mirror in the x-axis,
/// followed by rotation by `rotation · π/4` about the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    pub rotation: u8,
    pub reflected: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { rotation: 0, reflected: false };

    pub fn new(rotation: i32, reflected: bool) -> Self {
        Symmetry { rotation: rotation.rem_euclid(8) as u8, reflected }
    }

    pub fn all() -> impl Iterator<Item = Symmetry> {
        (0..16).map(|i| Symmetry::new(i % 8, i >= 8))
    }

    pub fn apply(&self, p: &Point) -> Point {
        let p = if self.reflected { p.reflect_x() } else { p.clone() };
        rotate_vec(&p, self.rotation as i32)
    }

    pub fn apply_direction(&self, d: Direction) -> Direction {
        let d = if self.reflected { Direction::new(-(d.0 as i32)) } else { d };
        d.rotated(self.rotation as i32)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        // R^a F^b R^c F^e = R^(a ± c) F^(b xor e)
        let c = if self.reflected { -(other.rotation as i32) } else { other.rotation as i32 };
        Symmetry::new(self.rotation as i32 + c, self.reflected ^ other.reflected)
    }

    pub fn inverse(&self) -> Symmetry {
        if self.reflected {
            *self
        } else {
            Symmetry::new(-(self.rotation as i32), false)
        }
    }
}

/// Which lattice family: the unit grid, or its image under rotation by π/4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Axis,
    Diagonal,
}

impl Parity {
    pub fn from_rotation(rotation: u8) -> Parity {
        if rotation.is_multiple_of(2) {
            Parity::Axis
        } else {
            Parity::Diagonal
        }
    }

    pub fn rotation(self) -> i32 {
        match self {
            Parity::Axis => 0,
            Parity::Diagonal => 1,
        }
    }

    pub fn other(self) -> Parity {
        match self {
            Parity::Axis => Parity::Diagonal,
            Parity::Diagonal => Parity::Axis,
        }
    }
}

/// A unit lattice `anchor + R(ℤ²)` where `R` is the identity or rotation by π/4.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub parity: Parity,
    /// Canonical residue: both frame coordinates in `[0, 1)`.
    pub anchor: Point,
}

impl Lattice {
    pub fn unit() -> Lattice {
        Lattice { parity: Parity::Axis, anchor: Point::origin() }
    }

    /// The lattice of the given parity through `p`.
    pub fn through(p: &Point, parity: Parity) -> Lattice {
        let local = rotate_vec(p, -parity.rotation());
        let residue =
            Point::new(&local.x - &Qr::from_bigint(local.x.floor()), &local.y - &Qr::from_bigint(local.y.floor()));
        Lattice { parity, anchor: rotate_vec(&residue, parity.rotation()) }
    }

    /// Integer frame coordinates of `p`, if it is a lattice point.
    pub fn to_local(&self, p: &Point) -> Option<(i64, i64)> {
        let rel = rotate_vec(&(p - &self.anchor), -self.parity.rotation());
        Some((rel.x.to_i64()?, rel.y.to_i64()?))
    }

    pub fn to_world(&self, (i, j): (i64, i64)) -> Point {
        &rotate_vec(&Point::from_ints(i, j), self.parity.rotation()) + &self.anchor
    }

    /// Frame coordinates of an arbitrary point (not necessarily integral).
    pub fn to_local_exact(&self, p: &Point) -> Point {
        rotate_vec(&(p - &self.anchor), -self.parity.rotation())
    }

    /// Inverse of [`Lattice::to_local_exact`].
    pub fn local_to_world(&self, p: &Point) -> Point {
        &rotate_vec(p, self.parity.rotation()) + &self.anchor
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.to_local(p).is_some()
    }
}

/// The lattice of the given parity containing every point, if one exists.
pub fn lattice_of_points(points: &[Point], parity: Parity) -> Option<Lattice> {
    let first = points.first()?;
    let lattice = Lattice::through(first, parity);
    points.iter().all(|p| lattice.contains(p)).then_some(lattice)
}

/// Either parity's lattice containing all points (axis tried first).
pub fn any_lattice_of_points(points: &[Point]) -> Option<Lattice> {
    lattice_of_points(points, Parity::Axis).or_else(|| lattice_of_points(points, Parity::Diagonal))
}

/// Congruence-invariant encoding of an octilinear polygon: the minimal
/// serialized `(direction, length)` edge cycle over all 16 point-group
/// symmetries and all starting edges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalKey(pub String);

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Key({})", self.0)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn serialize_edges(edges: &[(Direction, &str)], start: usize) -> String {
    let n = edges.len();
    let mut s = String::new();
    for i in 0..n {
        let (d, len) = edges[(start + i) % n];
        s.push((b'0' + d.0) as char);
        s.push(':');
        s.push_str(len);
        s.push(';');
    }
    s
}

/// The symmetry and starting vertex that realize the canonical key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPose {
    pub key: CanonicalKey,
    pub symmetry: Symmetry,
    /// Index (in the transformed polygon) of the vertex that starts the key.
    pub start: usize,
}

pub fn canonical_pose(poly: &Polygon) -> CanonicalPose {
    let n = poly.len();
    let lengths: Vec<String> = (0..n)
        .map(|i| {
            let w = poly.edge_length(i).to_wire().expect("edge length fits i64");
            format!("{}/{}:{}/{}", w[0], w[1], w[2], w[3])
        })
        .collect();
    let dirs = poly.edge_directions();
    let mut best: Option<CanonicalPose> = None;
    for sym in Symmetry::all() {
        // Transformed CCW edge cycle. A reflection reverses orientation, so
        // the cycle is read backwards with each edge flipped.
        let edges: Vec<(Direction, &str)> = if sym.reflected {
            (0..n).rev().map(|i| (sym.apply_direction(dirs[i]).opposite(), lengths[i].as_str())).collect()
        } else {
            (0..n).map(|i| (sym.apply_direction(dirs[i]), lengths[i].as_str())).collect()
        };
        for start in 0..n {
            let s = serialize_edges(&edges, start);
            if best.as_ref().is_none_or(|b| s < b.key.0) {
                best = Some(CanonicalPose { key: CanonicalKey(s), symmetry: sym, start });
            }
        }
    }
    best.expect("nonempty polygon")
}

pub fn canonical_form(poly: &Polygon) -> CanonicalKey {
    canonical_pose(poly).key
}

/// The congruent copy of `poly` whose vertex cycle is read directly off the
/// canonical key, starting at the origin.
pub fn canonical_polygon(poly: &Polygon) -> (Polygon, Symmetry, Point) {
    let pose = canonical_pose(poly);
    let moved = poly.transformed(pose.symmetry);
    let n = moved.len();
    // transformed() reverses the list under reflection, which shifts edge
    // indices by one relative to the key's edge order.
    let first = if pose.symmetry.reflected { pose.start + n - 1 } else { pose.start };
    let start_vertex = moved.vertex(first).clone();
    let vertices: Vec<Point> = (0..n).map(|i| moved.vertex(first + i) - &start_vertex).collect();
    let translation = Point::new(-&start_vertex.x, -&start_vertex.y);
    (Polygon { vertices }, pose.symmetry, translation)
}
