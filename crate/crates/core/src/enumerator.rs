//! Enumeration of convex tangrams, one-reflex pentagonal tangrams (lattice
//! and non-lattice), the split candidates, and the quadrangle exclusion.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::catalog::{Catalog, CatalogEntry, EntryClass, SplitInfo};
use crate::geometry::{
    any_lattice_of_points, canonical_angle_string, simplify_ring, AngleCode, CanonicalKey, Direction, Lattice, Parity,
    Point, Polygon, Symmetry,
};
use crate::qfield::Qr;
use crate::solver::{
    classify, solve_split_with, split_partitions, tile_with, Dissection, SolveOptions, SplitWitness, TangramClass,
};
use crate::tans::{polygon_to_region, Region, TanKind, TanShape};

#[cfg(feature = "parallel")]
fn par_filter_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Option<U> + Sync + Send) -> Vec<U> {
    items.par_iter().filter_map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_filter_map<T, U>(items: &[T], f: impl Fn(&T) -> Option<U>) -> Vec<U> {
    items.iter().filter_map(f).collect()
}

/// Default bound on free side-length parameters.
pub const DEFAULT_BOUND: i64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub bound: i64,
    pub solve: SolveOptions,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { bound: DEFAULT_BOUND, solve: SolveOptions::default() }
    }
}

/// A cyclic order of interior angle codes, stored as its canonical digit string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngleOrder(pub String);

impl AngleOrder {
    pub fn codes(&self) -> Vec<u8> {
        self.0.bytes().map(|b| b - b'0').collect()
    }
}

impl std::fmt::Display for AngleOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// All canonical code strings of length `n` with entries in `allowed` summing to `4n - 8`.
fn code_orders(n: usize, allowed: &[u8], keep: impl Fn(&[u8]) -> bool) -> Vec<AngleOrder> {
    let target = (4 * n - 8) as u32;
    let mut out = BTreeSet::new();
    let mut seq = vec![0u8; n];
    fn rec(
        pos: usize,
        sum: u32,
        target: u32,
        seq: &mut Vec<u8>,
        allowed: &[u8],
        keep: &dyn Fn(&[u8]) -> bool,
        out: &mut BTreeSet<String>,
    ) {
        if pos == seq.len() {
            if sum == target && keep(seq) {
                let codes: Vec<AngleCode> = seq.iter().map(|&k| AngleCode(k)).collect();
                out.insert(canonical_angle_string(&codes));
            }
            return;
        }
        for &k in allowed {
            if sum + k as u32 <= target {
                seq[pos] = k;
                rec(pos + 1, sum + k as u32, target, seq, allowed, keep, out);
            }
        }
    }
    rec(0, 0, target, &mut seq, allowed, &keep, &mut out);
    out.into_iter().map(AngleOrder).collect()
}

/// Distinct sorted code multisets of one-reflex pentagons.
pub fn pentagon_code_multisets() -> Vec<Vec<u8>> {
    let set: BTreeSet<Vec<u8>> = angle_orders_pentagon()
        .iter()
        .map(|o| {
            let mut c = o.codes();
            c.sort_unstable_by(|a, b| b.cmp(a));
            c
        })
        .collect();
    set.into_iter().collect()
}

/// The cyclic angle orders of pentagons with exactly one reflex angle,
/// up to rotation and reversal.
pub fn angle_orders_pentagon() -> Vec<AngleOrder> {
    code_orders(5, &[1, 2, 3, 5, 6, 7], |s| s.iter().filter(|&&k| k >= 5).count() == 1)
}

/// Angle orders of convex `n`-gons with no straight angles.
pub fn angle_orders_convex(n: usize) -> Vec<AngleOrder> {
    code_orders(n, &[1, 2, 3], |_| true)
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn twice_area(v: &[(i64, i64)]) -> i64 {
    let n = v.len();
    (0..n).map(|k| cross(v[k], v[(k + 1) % n])).sum()
}

/// Every closed integer polygon with the given CCW angle codes, first side in
/// direction 0 or 1, and all free side parameters in `1..=bound`; the last
/// two side lengths are solved from closure. When all codes are convex,
/// branches whose partial area already exceeds `max_twice_area` are cut.
pub fn closed_lattice_polygons(codes: &[u8], bound: i64, max_twice_area: i64) -> Vec<Vec<(i64, i64)>> {
    let n = codes.len();
    let convex = codes.iter().all(|&k| k < 4);
    let mut out = Vec::new();
    for d0 in 0..2 {
        let mut dirs = vec![Direction::new(d0)];
        for i in 1..n {
            dirs.push(dirs[i - 1].rotated(4 - codes[i] as i32));
        }
        let w: Vec<(i64, i64)> = dirs.iter().map(|d| d.step()).collect();
        let det = cross(w[n - 2], w[n - 1]);
        let mut verts = vec![(0i64, 0i64)];
        rec_lengths(0, n, bound, max_twice_area, convex, &w, det, &mut verts, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn rec_lengths(
    i: usize,
    n: usize,
    bound: i64,
    max_twice_area: i64,
    convex: bool,
    w: &[(i64, i64)],
    det: i64,
    verts: &mut Vec<(i64, i64)>,
    out: &mut Vec<Vec<(i64, i64)>>,
) {
    let cur = *verts.last().unwrap();
    if i == n - 2 {
        // cur + a·w[n-2] + b·w[n-1] = origin
        let r = (-cur.0, -cur.1);
        let a_num = cross(r, w[n - 1]);
        let b_num = cross(w[n - 2], r);
        if a_num % det != 0 || b_num % det != 0 {
            return;
        }
        let (a, b) = (a_num / det, b_num / det);
        if a <= 0 || b <= 0 {
            return;
        }
        let mut poly = verts.clone();
        poly.push((cur.0 + a * w[n - 2].0, cur.1 + a * w[n - 2].1));
        if twice_area(&poly) <= max_twice_area || !convex {
            out.push(poly);
        }
        return;
    }
    for s in 1..=bound {
        let next = (cur.0 + s * w[i].0, cur.1 + s * w[i].1);
        verts.push(next);
        if convex && i >= 1 && twice_area(verts) > max_twice_area {
            verts.pop();
            break;
        }
        rec_lengths(i + 1, n, bound, max_twice_area, convex, w, det, verts, out);
        verts.pop();
    }
}

/// Distinct valid polygons (by canonical key, first occurrence kept) with the
/// given codes and exact doubled area.
fn polygons_with_codes(codes: &[u8], bound: i64, twice_area_target: i64) -> Vec<Polygon> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in closed_lattice_polygons(codes, bound, twice_area_target) {
        if twice_area(&v) != twice_area_target {
            continue;
        }
        let Ok(poly) = Polygon::from_int_coords(&v) else { continue };
        if poly.len() != codes.len() {
            continue;
        }
        if seen.insert(poly.canonical_key()) {
            out.push(poly);
        }
    }
    out
}

fn letter(i: usize) -> String {
    let mut s = String::new();
    let mut i = i;
    loop {
        s.insert(0, (b'a' + (i % 26) as u8) as char);
        if i < 26 {
            return s;
        }
        i = i / 26 - 1;
    }
}

/// Appends `.a`, `.b`, ... in key order within groups of equal base label;
/// singleton groups keep the bare base label.
fn assign_letters<T>(items: Vec<(String, CanonicalKey, T)>) -> Vec<(String, T)> {
    let mut groups: BTreeMap<String, Vec<(CanonicalKey, T)>> = BTreeMap::new();
    for (base, key, item) in items {
        groups.entry(base).or_default().push((key, item));
    }
    let mut out = Vec::new();
    for (base, mut members) in groups {
        members.sort_by(|a, b| a.0.cmp(&b.0));
        let single = members.len() == 1;
        for (k, (_, item)) in members.into_iter().enumerate() {
            let label = if single { base.clone() } else { format!("{base}.{}", letter(k)) };
            out.push((label, item));
        }
    }
    out
}

/// The base label (group name) of a label: everything before a trailing `.x` letter.
pub fn label_group(label: &str) -> &str {
    match label.rsplit_once('.') {
        Some((head, tail)) if tail.chars().all(|c| c.is_ascii_lowercase()) => head,
        _ => label,
    }
}

fn tile_seven(poly: &Polygon, frame: &Lattice, opts: SolveOptions) -> Option<Dissection> {
    let region = polygon_to_region(poly, frame)?;
    tile_with(&region, &TanKind::ALL, opts).ok()
}

/// Non-convex lattice pentagons tileable by the seven tans in one lattice.
pub fn enumerate_lattice_pentagons(bound: i64) -> Vec<CatalogEntry> {
    enumerate_lattice_pentagons_with(EnumOptions { bound, ..Default::default() })
}

pub fn enumerate_lattice_pentagons_with(opts: EnumOptions) -> Vec<CatalogEntry> {
    let candidates: Vec<(AngleOrder, Polygon)> = angle_orders_pentagon()
        .into_iter()
        .flat_map(|order| {
            polygons_with_codes(&order.codes(), opts.bound, 16).into_iter().map(move |p| (order.clone(), p))
        })
        .collect();
    let mut seen = HashSet::new();
    let candidates: Vec<_> = candidates.into_iter().filter(|(_, p)| seen.insert(p.canonical_key())).collect();
    let solved: Vec<(String, CanonicalKey, (Polygon, Dissection))> = par_filter_map(&candidates, |(order, poly)| {
        let d = tile_seven(poly, &Lattice::unit(), opts.solve)?;
        Some((order.0.clone(), poly.canonical_key(), (poly.clone(), d)))
    });
    assign_letters(solved)
        .into_iter()
        .map(|(label, (poly, d))| CatalogEntry::new(label, EntryClass::LatticeNonconvex, &poly, &d, None))
        .collect()
}

/// Convex tangrams with 3 to 8 vertices.
pub fn enumerate_convex(bound: i64) -> Vec<CatalogEntry> {
    enumerate_convex_with(EnumOptions { bound, ..Default::default() })
}

pub fn enumerate_convex_with(opts: EnumOptions) -> Vec<CatalogEntry> {
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for n in 3..=8 {
        for order in angle_orders_convex(n) {
            for poly in polygons_with_codes(&order.codes(), opts.bound, 16) {
                if seen.insert(poly.canonical_key()) {
                    candidates.push((order.clone(), poly));
                }
            }
        }
    }
    let solved: Vec<_> = par_filter_map(&candidates, |(order, poly)| {
        let d = tile_seven(poly, &Lattice::unit(), opts.solve)?;
        Some((order.0.clone(), poly.canonical_key(), (poly.clone(), d)))
    });
    assign_letters(solved)
        .into_iter()
        .map(|(label, (poly, d))| CatalogEntry::new(label, EntryClass::Convex, &poly, &d, None))
        .collect()
}

/// Outcome of the exact search for a non-convex quadrangle with angles
/// π/4, π/4, π/4, 5π/4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrangleReport {
    /// Values `ξ = k + l√2` (k, l ≥ 0) with `√(8(2+√2)) ≤ ξ < 4√2`.
    pub candidates: Vec<Qr>,
    /// Every `(ξ, η)` tried, with `ξ ≥ η > ξ/√2`.
    pub tested: Vec<(Qr, Qr)>,
    /// Pairs satisfying `8 = ¼ξ² + ½(η − ξ/√2)²`.
    pub solutions: Vec<(Qr, Qr)>,
}

impl QuadrangleReport {
    pub fn nonconvex_count(&self) -> usize {
        self.solutions.len()
    }
}

/// Non-negative combinations `k + l√2` strictly below `upper`.
fn combos_below(upper: &Qr) -> Vec<Qr> {
    let mut out = Vec::new();
    let mut l = 0;
    loop {
        let base = Qr::from_ints(0, l);
        if &base >= upper {
            break;
        }
        let mut k = 0;
        loop {
            let v = &base + &Qr::from_int(k);
            if &v >= upper {
                break;
            }
            out.push(v);
            k += 1;
        }
        l += 1;
    }
    out
}

pub fn check_no_nonconvex_quadrangle() -> QuadrangleReport {
    let upper = Qr::from_ints(0, 4);
    let lower_sq = Qr::from_ints(16, 8); // 8(2 + √2)
    let mut candidates: Vec<Qr> = combos_below(&upper).into_iter().filter(|x| x.square() >= lower_sq).collect();
    candidates.sort();
    let eight = Qr::from_int(8);
    let quarter = Qr::from_parts(1, 4, 0, 1);
    let half = Qr::from_parts(1, 2, 0, 1);
    let mut tested = Vec::new();
    let mut solutions = Vec::new();
    for xi in &candidates {
        let xi_over_root2 = xi * &Qr::half_sqrt2();
        // η ≤ ξ, so every η is below ξ + 1
        for eta in combos_below(&(xi + &Qr::one())) {
            if &eta > xi || eta <= xi_over_root2 {
                continue;
            }
            let rhs = &quarter * &xi.square() + &half * &(&eta - &xi_over_root2).square();
            if rhs == eight {
                solutions.push((xi.clone(), eta.clone()));
            }
            tested.push((xi.clone(), eta));
        }
    }
    QuadrangleReport { candidates, tested, solutions }
}

/// A convex lattice part of a split, with its label and number of basic triangles.
#[derive(Clone, Debug)]
pub struct Part {
    pub label: String,
    pub count: usize,
    pub polygon: Polygon,
    pub region: Region,
}

/// Labels of the triangles by number of basic triangles.
const T2_LABELS: [(usize, &str); 5] = [(9, "A"), (4, "B"), (1, "C"), (8, "D"), (2, "E")];

/// Reference shapes naming the quadrangles: (label, vertices).
const T1_QUADRANGLES: [(&str, &[(i64, i64)]); 21] = [
    ("F", &[(0, 0), (5, 0), (4, 1), (1, 1)]),
    ("G", &[(0, 0), (5, 0), (3, 2), (2, 2)]),
    ("H", &[(0, 1), (1, 0), (3, 0), (0, 3)]),
    ("I", &[(0, 2), (2, 0), (4, 0), (0, 4)]),
    ("J", &[(0, 1), (1, 0), (4, 0), (0, 4)]),
    ("K", &[(0, 0), (4, 0), (5, 1), (1, 1)]),
    ("L", &[(0, 0), (2, 0), (4, 2), (2, 2)]),
    ("M", &[(0, 0), (3, 0), (5, 2), (2, 2)]),
    ("N", &[(0, 0), (2, 0), (5, 3), (3, 3)]),
    ("O", &[(0, 0), (4, 0), (3, 1), (0, 1)]),
    ("P", &[(0, 0), (3, 0), (1, 2), (0, 2)]),
    ("Q", &[(0, 0), (4, 0), (2, 2), (0, 2)]),
    ("R", &[(0, 0), (4, 0), (1, 3), (0, 3)]),
    ("S", &[(0, 0), (2, 0), (5, 3), (4, 4)]),
    ("T", &[(0, 0), (3, 0), (1, 2), (0, 1)]),
    ("U", &[(0, 0), (4, 0), (1, 3), (0, 2)]),
    ("V", &[(0, 0), (4, 0), (4, 1), (0, 1)]),
    ("W", &[(0, 0), (2, 0), (2, 2), (0, 2)]),
    ("X", &[(0, 0), (3, 0), (3, 2), (0, 2)]),
    ("Y", &[(1, 0), (3, 2), (2, 3), (0, 1)]),
    ("Z", &[(1, 0), (4, 3), (3, 4), (0, 1)]),
];

fn quadrangle_label(key: &CanonicalKey) -> Option<&'static str> {
    T1_QUADRANGLES.iter().find(|(_, v)| &Polygon::from_int_coords(v).unwrap().canonical_key() == key).map(|(l, _)| *l)
}

/// Some subset of the seven tans that tiles the region, if any.
fn tileable_by_subset(region: &Region, opts: SolveOptions) -> Option<Vec<TanKind>> {
    split_partitions(region.cell_count()).into_iter().find(|s| tile_with(region, s, opts).is_ok())
}

fn lattice_parts(codes_n: &[usize], counts: &BTreeSet<usize>, opts: SolveOptions) -> Vec<(CanonicalKey, Part)> {
    let max = *counts.iter().max().unwrap_or(&0) as i64;
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for &n in codes_n {
        for order in angle_orders_convex(n) {
            for v in closed_lattice_polygons(&order.codes(), max, max) {
                let c = twice_area(&v);
                if !counts.contains(&(c as usize)) {
                    continue;
                }
                let Ok(poly) = Polygon::from_int_coords(&v) else { continue };
                let key = poly.canonical_key();
                if !seen.insert(key.clone()) {
                    continue;
                }
                found.push((key, c as usize, poly));
            }
        }
    }
    par_filter_map(&found, |(key, count, poly)| {
        let region = polygon_to_region(poly, &Lattice::unit())?;
        tileable_by_subset(&region, opts)?;
        Some((key.clone(), Part { label: String::new(), count: *count, polygon: poly.clone(), region }))
    })
}

/// Lattice isosceles right triangles of area below 8 tileable by some of the tans.
pub fn enumerate_t2_triangles() -> Vec<Part> {
    enumerate_t2_triangles_with(SolveOptions::default())
}

pub fn enumerate_t2_triangles_with(opts: SolveOptions) -> Vec<Part> {
    let counts: BTreeSet<usize> = (1..16).collect();
    let mut parts: Vec<Part> = lattice_parts(&[3], &counts, opts)
        .into_iter()
        .map(|(_, mut p)| {
            p.label = T2_LABELS
                .iter()
                .find(|(c, _)| *c == p.count)
                .map_or_else(|| format!("?{}", p.count), |(_, l)| l.to_string());
            p
        })
        .collect();
    parts.sort_by(|a, b| a.label.cmp(&b.label));
    parts
}

/// The basic-triangle counts a first part may have, given the second parts.
pub fn t1_counts(t2: &[Part]) -> BTreeSet<usize> {
    t2.iter().map(|p| 16 - p.count).collect()
}

/// Convex lattice triangles and quadrangles whose counts complement a
/// second part, tileable by some of the tans.
pub fn enumerate_t1_candidates() -> Vec<Part> {
    enumerate_t1_candidates_with(SolveOptions::default())
}

pub fn enumerate_t1_candidates_with(opts: SolveOptions) -> Vec<Part> {
    let t2 = enumerate_t2_triangles_with(opts);
    let counts = t1_counts(&t2);
    let mut parts: Vec<Part> = lattice_parts(&[3, 4], &counts, opts)
        .into_iter()
        .map(|(key, mut p)| {
            p.label = if p.polygon.len() == 3 {
                T2_LABELS.iter().find(|(c, _)| *c == p.count).map_or("?", |(_, l)| l).to_string()
            } else {
                quadrangle_label(&key).map_or_else(|| format!("?{}", p.count), str::to_string)
            };
            p
        })
        .collect();
    parts.sort_by(|a, b| a.label.cmp(&b.label));
    parts
}

/// A pentagon formed by two parts sharing the vertex `v0`.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub pentagon: Polygon,
    pub t2_placed: Polygon,
    pub v0: Point,
}

/// `a` has edge `v0 → p`, `b` has edge `q → v0` along the same ray; walks
/// `a` from `p` to `v0`, then `b` from after `v0` to `q`.
fn union_ring(a: &Polygon, ia: usize, b: &Polygon, ib: usize) -> Vec<Point> {
    let (na, nb) = (a.len(), b.len());
    let mut ring = Vec::with_capacity(na + nb);
    for k in 1..=na {
        ring.push(a.vertex(ia + k).clone());
    }
    for k in 1..nb {
        ring.push(b.vertex(ib + 1 + k).clone());
    }
    simplify_ring(ring)
}

/// Pentagons with one reflex vertex obtained by attaching `t2_shape`, turned
/// by an odd number of eighth-turns (optionally mirrored), to `t1` so that
/// one side of each starts at a common vertex along a common ray.
pub fn glue(t1: &Polygon, t2_shape: &Polygon) -> Vec<Gluing> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for rot in [1, 3, 5, 7] {
        for refl in [false, true] {
            let t2_base = t2_shape.transformed(Symmetry::new(rot, refl));
            for i in 0..t1.len() {
                let v0 = t1.vertex(i);
                let out_dir = t1.edge_direction(i);
                let in_dir = t1.edge_direction(i + t1.len() - 1).opposite();
                for j in 0..t2_base.len() {
                    let t = v0 - t2_base.vertex(j);
                    let t2 = t2_base.translated(&t);
                    let m = t2.len();
                    let t2_out = t2.edge_direction(j);
                    let t2_in = t2.edge_direction(j + m - 1).opposite();
                    let mut rings = Vec::new();
                    // t1 leaves v0 along the ray, t2 arrives at v0 along it
                    if out_dir == t2_in {
                        rings.push(union_ring(t1, i, &t2, j + m - 1));
                    }
                    if in_dir == t2_out {
                        rings.push(union_ring(&t2, j, t1, i + t1.len() - 1));
                    }
                    for ring in rings {
                        let Ok(p) = Polygon::new(ring) else { continue };
                        if p.len() != 5 || p.reflex_count() != 1 {
                            continue;
                        }
                        let sig = (p.vertices().to_vec(), t2.vertices().to_vec());
                        if seen.insert(sig) {
                            out.push(Gluing { pentagon: p, t2_placed: t2.clone(), v0: v0.clone() });
                        }
                    }
                }
            }
        }
    }
    out
}

fn tan_shape_multiset(tans: &[TanKind]) -> Vec<TanShape> {
    let mut v: Vec<TanShape> = tans.iter().map(|t| t.shape()).collect();
    v.sort();
    v
}

/// `D1` when the triangle D is covered by the two large triangles, `D2` otherwise.
fn part_label(part: &Part, tans: &[TanKind]) -> String {
    if part.label == "D" {
        if tan_shape_multiset(tans) == vec![TanShape::Large, TanShape::Large] {
            "D1".into()
        } else {
            "D2".into()
        }
    } else {
        part.label.clone()
    }
}

fn split_info(w: &SplitWitness) -> SplitInfo {
    SplitInfo {
        v0: w.v0.clone(),
        cut: [w.cut.0.clone(), w.cut.1.clone()],
        t1_tans: w.t1_dissection.kinds(),
        t2_tans: w.t2_dissection.kinds(),
    }
}

/// A solved gluing: pentagon, pair label, witness.
#[derive(Clone, Debug)]
pub struct SolvedGluing {
    pub pair: String,
    pub t1: String,
    pub pentagon: Polygon,
    pub witness: SplitWitness,
}

/// All solved gluings for every admissible (t1, t2) pair, in generation order.
pub fn solved_gluings(opts: SolveOptions) -> Vec<SolvedGluing> {
    let t2s = enumerate_t2_triangles_with(opts);
    let t1s = enumerate_t1_candidates_with(opts);
    let mut jobs = Vec::new();
    for t1 in &t1s {
        for t2 in &t2s {
            if t1.count + t2.count != 16 {
                continue;
            }
            for g in glue(&t1.polygon, &t2.polygon) {
                jobs.push((t1, t2, g));
            }
        }
    }
    par_filter_map(&jobs, |(t1, t2, g)| {
        let w = solve_split_with(&t1.polygon, &g.t2_placed, &g.v0, opts)?;
        let pair = format!("{}.{}", part_label(t1, &w.t1_dissection.kinds()), part_label(t2, &w.t2_dissection.kinds()));
        Some(SolvedGluing { pair, t1: t1.label.clone(), pentagon: g.pentagon.clone(), witness: w })
    })
}

/// Non-convex pentagons tileable with the tans split over two lattices.
pub fn enumerate_nonlattice_pentagons() -> Vec<CatalogEntry> {
    enumerate_nonlattice_pentagons_with(SolveOptions::default())
}

pub fn enumerate_nonlattice_pentagons_with(opts: SolveOptions) -> Vec<CatalogEntry> {
    let mut first: HashMap<CanonicalKey, SolvedGluing> = HashMap::new();
    for s in solved_gluings(opts) {
        first.entry(s.pentagon.canonical_key()).or_insert(s);
    }
    let items: Vec<_> = first.into_iter().map(|(k, s)| (s.pair.clone(), k, s)).collect();
    assign_letters(items)
        .into_iter()
        .map(|(label, s)| {
            let d = s.witness.combined(s.pentagon.clone());
            CatalogEntry::new(label, EntryClass::NonlatticeNonconvex, &s.pentagon, &d, Some(&split_info(&s.witness)))
        })
        .collect()
}

/// Keys found by both the lattice and the non-lattice pentagon pipelines.
pub fn lattice_nonlattice_overlap(lattice: &[CatalogEntry], nonlattice: &[CatalogEntry]) -> Vec<CanonicalKey> {
    let l: HashSet<&CanonicalKey> = lattice.iter().map(|e| &e.key).collect();
    nonlattice.iter().filter(|e| l.contains(&e.key)).map(|e| e.key.clone()).collect()
}

/// Convex tangrams plus all one-reflex pentagonal tangrams, deduplicated
/// with precedence convex, then lattice, then non-lattice.
pub fn full_catalog() -> Catalog {
    full_catalog_with(EnumOptions::default())
}

pub fn full_catalog_with(opts: EnumOptions) -> Catalog {
    let convex = enumerate_convex_with(opts);
    let lattice = enumerate_lattice_pentagons_with(opts);
    let nonlattice = enumerate_nonlattice_pentagons_with(opts.solve);
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for e in convex.into_iter().chain(lattice).chain(nonlattice) {
        if seen.insert(e.key.clone()) {
            entries.push(e);
        }
    }
    Catalog::from_entries(entries)
}

/// How a polygon was shown to be a tangram.
#[derive(Clone, Debug)]
pub enum Witness {
    Single(Dissection),
    Split(Box<SplitWitness>, Dissection),
}

impl Witness {
    pub fn dissection(&self) -> &Dissection {
        match self {
            Witness::Single(d) | Witness::Split(_, d) => d,
        }
    }
}

/// Point where the ray from `from` along `dir` first meets the boundary,
/// ignoring the two edges at vertex `skip`.
fn first_hit(poly: &Polygon, skip: usize, dir: Direction) -> Option<(usize, Point)> {
    let from = poly.vertex(skip);
    let (sx, sy) = dir.step();
    let d = Point::from_ints(sx, sy);
    let n = poly.len();
    let mut best: Option<(Qr, usize, Point)> = None;
    for e in 0..n {
        if e == skip || (e + 1) % n == skip {
            continue;
        }
        let (a, b) = poly.edge(e);
        let ab = b - a;
        let denom = d.cross(&ab);
        if denom.is_zero() {
            continue;
        }
        let fa = a - from;
        // from + t·d = a + u·ab
        let t = fa.cross(&ab) / denom.clone();
        let u = fa.cross(&d) / denom;
        if !t.is_positive() || u.is_negative() || u > Qr::one() {
            continue;
        }
        if best.as_ref().is_none_or(|(bt, _, _)| &t < bt) {
            let hit = from + &d.scale(&t);
            best = Some((t, e, hit));
        }
    }
    best.map(|(_, e, p)| (e, p))
}

/// Splits a polygon along the chord from vertex `v` to a point on edge `e`.
fn split_at(poly: &Polygon, v: usize, e: usize, hit: &Point) -> Option<(Polygon, Polygon)> {
    let n = poly.len();
    let mut left = vec![poly.vertex(v).clone()];
    let mut k = v;
    while k != e {
        k = (k + 1) % n;
        left.push(poly.vertex(k).clone());
    }
    left.push(hit.clone());
    let mut right = vec![hit.clone()];
    let mut k = e;
    while k != v {
        k = (k + 1) % n;
        right.push(poly.vertex(k).clone());
    }
    let clean = |mut r: Vec<Point>| {
        r.dedup();
        if r.len() > 1 && r.first() == r.last() {
            r.pop();
        }
        Polygon::new(simplify_ring(r)).ok()
    };
    Some((clean(left)?, clean(right)?))
}

/// Decides whether a polygon is a tangram, first with all tans in the
/// lattice of its vertices, then split along an extended side at a reflex vertex.
pub fn solve_pentagon(poly: &Polygon) -> Option<(TangramClass, Witness)> {
    solve_pentagon_with(poly, SolveOptions::default())
}

pub fn solve_pentagon_with(poly: &Polygon, opts: SolveOptions) -> Option<(TangramClass, Witness)> {
    if poly.area() != Qr::from_int(8) {
        return None;
    }
    if let Some(frame) = any_lattice_of_points(poly.vertices()) {
        if let Some(d) = tile_seven(poly, &frame, opts) {
            return Some((classify(&d), Witness::Single(d)));
        }
    }
    let n = poly.len();
    for (v, code) in poly.angle_codes().into_iter().enumerate() {
        if !code.is_reflex() {
            continue;
        }
        let d_in = poly.edge_direction(v + n - 1);
        let d_out = poly.edge_direction(v).opposite();
        for dir in [d_in, d_out] {
            let Some((e, hit)) = first_hit(poly, v, dir) else { continue };
            let Some((a, b)) = split_at(poly, v, e, &hit) else { continue };
            let (t1, t2) = match any_lattice_of_points(a.vertices()).map(|l| l.parity) {
                Some(Parity::Axis) => (a, b),
                _ => (b, a),
            };
            if let Some(w) = solve_split_with(&t1, &t2, &hit, opts) {
                let d = w.combined(poly.clone());
                return Some((classify(&d), Witness::Split(Box::new(w), d)));
            }
        }
    }
    None
}

/// Outcome of [`solve_polygon`].
#[derive(Clone, Debug)]
pub enum Verdict {
    Tangram(TangramClass, Witness),
    NotTangram,
    /// No dissection with all tans in one lattice, and the polygon is a
    /// non-convex polygon with six or more vertices, where splits are not searched.
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Tangram(..) => "tangram",
            Verdict::NotTangram => "not-tangram",
            Verdict::Undecided => "undecided",
        }
    }
}

/// Complete for pentagons and for convex polygons (every tangram triangle and
/// quadrangle is convex, and convex tangrams tile in a single lattice).
pub fn solve_polygon(poly: &Polygon) -> Verdict {
    solve_polygon_with(poly, SolveOptions::default())
}

pub fn solve_polygon_with(poly: &Polygon, opts: SolveOptions) -> Verdict {
    if poly.area() != Qr::from_int(8) {
        return Verdict::NotTangram;
    }
    if poly.len() == 5 {
        return match solve_pentagon_with(poly, opts) {
            Some((class, w)) => Verdict::Tangram(class, w),
            None => Verdict::NotTangram,
        };
    }
    if let Some(frame) = any_lattice_of_points(poly.vertices()) {
        if let Some(d) = tile_seven(poly, &frame, opts) {
            return Verdict::Tangram(classify(&d), Witness::Single(d));
        }
    }
    if poly.is_convex() {
        Verdict::NotTangram
    } else {
        Verdict::Undecided
    }
}
