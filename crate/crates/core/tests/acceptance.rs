//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tanlab::catalog::{Catalog, CatalogEntry, EntryClass, Family};
use tanlab::enumerator::{
    check_no_nonconvex_quadrangle, enumerate_convex, enumerate_lattice_pentagons, enumerate_t1_candidates,
    enumerate_t2_triangles, full_catalog, label_group,
};
use tanlab::geometry::{Lattice, Point, Symmetry};
use tanlab::qfield::Qr;
use tanlab::solver::{classify, tile, tile_all, validate, TangramClass};
use tanlab::tans::{rasterize, Placement, Quadrant, QuarterCell, Region, TanKind, TanShape};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn pentagons(cat: &Catalog, cls: EntryClass) -> Vec<&CatalogEntry> {
    cat.entries.iter().filter(|e| e.family == Family::Pentagon && e.cls == cls).collect()
}

fn group_counts<'a>(entries: impl Iterator<Item = &'a CatalogEntry>) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for e in entries {
        *m.entry(label_group(&e.label).to_string()).or_insert(0) += 1;
    }
    m
}

fn criterion_1(cat: &Catalog, elapsed: Duration) -> Outcome {
    let convex = pentagons(cat, EntryClass::Convex).len();
    let lattice = pentagons(cat, EntryClass::LatticeNonconvex).len();
    let nonlattice = pentagons(cat, EntryClass::NonlatticeNonconvex).len();
    let keys: HashSet<_> = cat.entries.iter().filter(|e| e.family == Family::Pentagon).map(|e| e.key.clone()).collect();
    ensure((convex, lattice, nonlattice) == (2, 20, 31), format!("got {convex}/{lattice}/{nonlattice}"))?;
    ensure(keys.len() == 53, format!("{} distinct pentagon keys", keys.len()))?;
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("53 pentagons = 2 convex + 20 lattice + 31 non-lattice, {:.1}s with 4 jobs", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let convex = enumerate_convex(16);
    let mut by_n = BTreeMap::new();
    for e in &convex {
        *by_n.entry(e.polygon.len()).or_insert(0) += 1;
    }
    let expect = BTreeMap::from([(3, 1), (4, 6), (5, 2), (6, 4)]);
    ensure(by_n == expect, format!("family split {by_n:?}"))?;
    ensure(convex.len() == 13, format!("{} convex", convex.len()))?;
    Ok("13 convex tangrams: 1 triangle, 6 quadrangles, 2 pentagons, 4 hexagons, no 7- or 8-gons".into())
}

fn criterion_3(cat: &Catalog) -> Outcome {
    let report = check_no_nonconvex_quadrangle();
    let expect = vec![Qr::from_ints(1, 3), Qr::from_ints(4, 1)];
    let mut got = report.candidates.clone();
    got.sort();
    ensure(got == expect, format!("candidates {got:?}"))?;
    ensure(report.solutions.is_empty(), format!("solutions {:?}", report.solutions))?;
    let triangles = cat.entries.iter().filter(|e| e.family == Family::Triangle).count();
    ensure(triangles == 1, format!("{triangles} triangles"))?;
    Ok(format!("xi in {{4+√2, 1+3√2}}, {} (xi, eta) pairs tested, 0 solutions; 1 triangle", report.tested.len()))
}

fn criterion_4(cat: &Catalog) -> Outcome {
    let expect: BTreeMap<&str, usize> = [
        ("53121", 1),
        ("53112", 1),
        ("52311", 1),
        ("52131", 2),
        ("51321", 4),
        ("52221", 1),
        ("63111", 1),
        ("61311", 3),
        ("62211", 1),
        ("62121", 1),
        ("61221", 1),
        ("72111", 2),
        ("71211", 1),
        ("53211", 0),
        ("52212", 0),
        ("62112", 0),
    ]
    .into_iter()
    .collect();
    let lattice = pentagons(cat, EntryClass::LatticeNonconvex);
    let mut by_order: BTreeMap<String, usize> = BTreeMap::new();
    for e in &lattice {
        let order = e.polygon.angle_string();
        ensure(label_group(&e.label) == order, format!("label {} vs angle order {order}", e.label))?;
        *by_order.entry(order).or_insert(0) += 1;
    }
    for (order, n) in &expect {
        let got = by_order.get(*order).copied().unwrap_or(0);
        ensure(got == *n, format!("{order}: expected {n}, got {got}"))?;
    }
    ensure(by_order.keys().all(|k| expect.contains_key(k.as_str())), format!("unexpected orders {by_order:?}"))?;
    Ok("lattice pentagons per angle order match (13 orders present, 53211/52212/62112 absent)".into())
}

fn criterion_5(cat: &Catalog) -> Outcome {
    let expect: BTreeMap<String, usize> = [
        ("D1.D2", 2),
        ("F.D1", 2),
        ("G.B", 2),
        ("J.C", 2),
        ("K.D1", 2),
        ("L.D2", 2),
        ("M.B", 2),
        ("P.D1", 6),
        ("Q.B", 2),
        ("R.C", 2),
        ("T.A", 4),
        ("V.D1", 2),
        ("W.D2", 1),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    let got = group_counts(pentagons(cat, EntryClass::NonlatticeNonconvex).into_iter());
    ensure(got == expect, format!("pair multiplicities {got:?}"))?;
    let excluded = ["H", "I", "N", "O", "S", "U", "X", "Y", "Z"];
    for e in pentagons(cat, EntryClass::NonlatticeNonconvex) {
        let t1 = e.label.split('.').next().unwrap_or("");
        ensure(!excluded.contains(&t1), format!("{} uses excluded part {t1}", e.label))?;
    }
    Ok("13 pair groups match, no entry uses H, I, N, O, S, U, X, Y or Z".into())
}

fn criterion_6() -> Outcome {
    let t2 = enumerate_t2_triangles();
    let counts: BTreeSet<usize> = t2.iter().map(|p| p.count).collect();
    ensure(counts == BTreeSet::from([1, 2, 4, 8, 9]), format!("T2 counts {counts:?}"))?;
    ensure(t2.len() == 5, format!("{} T2 triangles", t2.len()))?;
    let t1 = enumerate_t1_candidates();
    let triangles: Vec<_> = t1.iter().filter(|p| p.polygon.len() == 3).collect();
    ensure(
        triangles.len() == 1 && triangles[0].count == 8 && triangles[0].label == "D",
        format!("T1 triangles {:?}", triangles.iter().map(|p| (&p.label, p.count)).collect::<Vec<_>>()),
    )?;
    let quads: Vec<_> = t1.iter().filter(|p| p.polygon.len() == 4).collect();
    ensure(quads.len() == 21, format!("{} T1 quadrangles", quads.len()))?;
    let allowed = BTreeSet::from([7, 8, 12, 14, 15]);
    ensure(quads.iter().all(|p| allowed.contains(&p.count)), "T1 count outside {7,8,12,14,15}")?;
    let labels: BTreeSet<&str> = quads.iter().map(|p| p.label.as_str()).collect();
    let expect: BTreeSet<&str> = "FGHIJKLMNOPQRSTUVWXYZ".split("").filter(|s| !s.is_empty()).collect();
    ensure(labels == expect, format!("T1 labels {labels:?}"))?;
    Ok("T2 counts {1,2,4,8,9}; T1 = D plus 21 quadrangles F..Z with counts in {7,8,12,14,15}".into())
}

fn criterion_7(cat: &Catalog) -> Outcome {
    let mut checked = 0;
    for e in &cat.entries {
        let d = &e.witness;
        ensure(d.kinds() == TanKind::ALL.to_vec(), format!("{}: tans {:?}", e.label, d.kinds()))?;
        ensure(validate(d), format!("{}: witness fails validation", e.label))?;
        let class = classify(d);
        let expect = match e.cls {
            EntryClass::NonlatticeNonconvex => TangramClass::NonLattice,
            _ => TangramClass::Lattice,
        };
        ensure(class == expect, format!("{}: classified {}", e.label, class.as_str()))?;
        checked += 1;
    }
    Ok(format!("{checked}/{checked} witnesses validate exactly; lattice entries classify lattice, non-lattice entries non-lattice"))
}

fn neighbors(c: QuarterCell) -> [QuarterCell; 3] {
    let q = |i, j, q| QuarterCell::new(i, j, q);
    let (i, j) = (c.i, c.j);
    match c.q {
        Quadrant::S => [q(i, j, Quadrant::E), q(i, j, Quadrant::W), q(i, j - 1, Quadrant::N)],
        Quadrant::E => [q(i, j, Quadrant::S), q(i, j, Quadrant::N), q(i + 1, j, Quadrant::W)],
        Quadrant::N => [q(i, j, Quadrant::E), q(i, j, Quadrant::W), q(i, j + 1, Quadrant::S)],
        Quadrant::W => [q(i, j, Quadrant::S), q(i, j, Quadrant::N), q(i - 1, j, Quadrant::E)],
    }
}

fn normalize(cells: &BTreeSet<QuarterCell>) -> BTreeSet<QuarterCell> {
    let mi = cells.iter().map(|c| c.i).min().unwrap();
    let mj = cells.iter().map(|c| c.j).min().unwrap();
    cells.iter().map(|c| c.shifted(-mi, -mj)).collect()
}

/// Edge-connected quarter-cell sets up to translation, by size.
fn polyaboloes(max: usize) -> Vec<Vec<BTreeSet<QuarterCell>>> {
    let mut levels: Vec<Vec<BTreeSet<QuarterCell>>> = vec![Vec::new()];
    levels.push(Quadrant::ALL.iter().map(|&q| BTreeSet::from([QuarterCell::new(0, 0, q)])).collect());
    for _ in 2..=max {
        let mut next = BTreeSet::new();
        for set in levels.last().unwrap() {
            for c in set {
                for n in neighbors(*c) {
                    if !set.contains(&n) {
                        let mut grown = set.clone();
                        grown.insert(n);
                        next.insert(normalize(&grown));
                    }
                }
            }
        }
        levels.push(next.into_iter().collect());
    }
    levels
}

type CellSolution = BTreeSet<(TanShape, Vec<QuarterCell>)>;

/// Cell patterns of a shape at the origin, from every orientation that lands on the grid.
fn patterns(shape: TanShape) -> Vec<Vec<QuarterCell>> {
    let kind = TanKind::ALL.iter().copied().find(|k| k.shape() == shape).unwrap();
    let mut out = BTreeSet::new();
    for sym in Symmetry::all() {
        let pl = Placement { kind, rotation: sym.rotation, reflected: sym.reflected, translation: Point::origin() };
        if let Some(cells) = rasterize(&pl, &Lattice::unit()) {
            out.insert(cells.into_iter().collect::<Vec<_>>());
        }
    }
    out.into_iter().collect()
}

fn fits(region: &BTreeSet<QuarterCell>, pats: &[Vec<QuarterCell>]) -> Vec<BTreeSet<QuarterCell>> {
    let mut out = BTreeSet::new();
    for pat in pats {
        for r in region {
            if r.q != pat[0].q {
                continue;
            }
            let (di, dj) = (r.i - pat[0].i, r.j - pat[0].j);
            let placed: BTreeSet<QuarterCell> = pat.iter().map(|c| c.shifted(di, dj)).collect();
            if placed.is_subset(region) {
                out.insert(placed);
            }
        }
    }
    out.into_iter().collect()
}

fn brute_force(
    region: &BTreeSet<QuarterCell>,
    tans: &[TanKind],
    pats: &BTreeMap<TanShape, Vec<Vec<QuarterCell>>>,
) -> HashSet<Vec<(TanShape, Vec<QuarterCell>)>> {
    let options: Vec<(TanShape, Vec<BTreeSet<QuarterCell>>)> =
        tans.iter().map(|t| (t.shape(), fits(region, &pats[&t.shape()]))).collect();
    let mut found = HashSet::new();
    fn rec(
        k: usize,
        used: &BTreeSet<QuarterCell>,
        chosen: &mut Vec<(TanShape, Vec<QuarterCell>)>,
        options: &[(TanShape, Vec<BTreeSet<QuarterCell>>)],
        region: &BTreeSet<QuarterCell>,
        found: &mut HashSet<Vec<(TanShape, Vec<QuarterCell>)>>,
    ) {
        if k == options.len() {
            if used == region {
                let mut s = chosen.clone();
                s.sort();
                found.insert(s);
            }
            return;
        }
        for cells in &options[k].1 {
            if cells.is_disjoint(used) {
                let next: BTreeSet<QuarterCell> = used.union(cells).copied().collect();
                chosen.push((options[k].0, cells.iter().copied().collect()));
                rec(k + 1, &next, chosen, options, region, found);
                chosen.pop();
            }
        }
    }
    rec(0, &BTreeSet::new(), &mut Vec::new(), &options, region, &mut found);
    found
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut multisets: BTreeMap<Vec<TanShape>, Vec<TanKind>> = BTreeMap::new();
    for mask in 1u8..128 {
        let tans: Vec<TanKind> = TanKind::ALL.iter().copied().filter(|t| mask & t.bit() != 0).collect();
        let mut shapes: Vec<TanShape> = tans.iter().map(|t| t.shape()).collect();
        shapes.sort();
        multisets.entry(shapes).or_insert(tans);
    }
    let pats: BTreeMap<TanShape, Vec<Vec<QuarterCell>>> = TanShape::ALL.iter().map(|&s| (s, patterns(s))).collect();
    let (mut regions, mut instances, mut tileable) = (0, 0, 0);
    for (size, level) in polyaboloes(8).iter().enumerate() {
        for cells in level {
            let Some(region) = Region::from_cells(Lattice::unit(), cells.clone()) else { continue };
            regions += 1;
            for tans in multisets.values() {
                if tans.iter().map(|t| t.quarter_cell_count()).sum::<usize>() != size {
                    continue;
                }
                instances += 1;
                let oracle = brute_force(cells, tans, &pats);
                let solver: Vec<CellSolution> = tile_all(&region, tans)
                    .iter()
                    .map(|d| {
                        d.placements
                            .iter()
                            .map(|p| (p.kind.shape(), rasterize(p, &region.frame).unwrap().into_iter().collect()))
                            .collect()
                    })
                    .collect();
                let solver_set: HashSet<Vec<(TanShape, Vec<QuarterCell>)>> =
                    solver.iter().map(|s| s.iter().cloned().collect()).collect();
                ensure(solver_set.len() == solver.len(), format!("duplicate solutions on {cells:?} {tans:?}"))?;
                ensure(solver_set == oracle, format!("solution sets differ on {cells:?} with {tans:?}"))?;
                ensure(tile(&region, tans).is_ok() == !oracle.is_empty(), "satisfiability differs")?;
                if !oracle.is_empty() {
                    tileable += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!(
        "{regions} regions of area <= 2, {instances} (region, tans) pairs, {tileable} tileable; agree in {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn random_qr(rng: &mut StdRng) -> Qr {
    Qr::from_parts(rng.gen_range(-60..=60), rng.gen_range(1..=2), rng.gen_range(-60..=60), rng.gen_range(1..=2))
}

fn criterion_9(cat: &Catalog) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7a9);
    for e in &cat.entries {
        let mut codes: Vec<u8> = e.polygon.angle_codes().iter().map(|k| k.0).collect();
        codes.sort();
        for _ in 0..1000 {
            let sym = Symmetry::new(rng.gen_range(0..8), rng.gen_bool(0.5));
            let t = Point::new(random_qr(&mut rng), random_qr(&mut rng));
            let moved = e.polygon.transformed(sym).translated(&t);
            ensure(moved.canonical_key() == e.key, format!("{}: key changed under {sym:?}", e.label))?;
            ensure(moved.area() == e.polygon.area(), format!("{}: area changed", e.label))?;
            let mut c: Vec<u8> = moved.angle_codes().iter().map(|k| k.0).collect();
            c.sort();
            ensure(c == codes, format!("{}: angle codes changed", e.label))?;
        }
    }
    let keys = |v: Vec<CatalogEntry>| v.into_iter().map(|e| e.key).collect::<BTreeSet<_>>();
    ensure(
        keys(enumerate_lattice_pentagons(16)) == keys(enumerate_lattice_pentagons(20)),
        "lattice keys differ between bounds 16 and 20",
    )?;
    ensure(keys(enumerate_convex(16)) == keys(enumerate_convex(20)), "convex keys differ between bounds 16 and 20")?;
    Ok(format!(
        "{} entries x 1000 transforms keep key, area and angle codes; bounds 16 and 20 agree",
        cat.entries.len()
    ))
}

fn main() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().expect("thread pool");
    let start = Instant::now();
    let cat = pool.install(full_catalog);
    let elapsed = start.elapsed();

    let results: Vec<(&str, Outcome)> = vec![
        ("pentagon tangram counts", criterion_1(&cat, elapsed)),
        ("convex tangrams", criterion_2()),
        ("no non-convex quadrangle", criterion_3(&cat)),
        ("lattice pentagons per angle order", criterion_4(&cat)),
        ("non-lattice pentagons per part pair", criterion_5(&cat)),
        ("split part candidates", criterion_6()),
        ("witness validity", criterion_7(&cat)),
        ("solver vs brute force", criterion_8()),
        ("invariance and bound robustness", criterion_9(&cat)),
    ];
    let mut failed = 0;
    for (k, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(msg) => println!("[PASS] {}. {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {msg}", k + 1)
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
