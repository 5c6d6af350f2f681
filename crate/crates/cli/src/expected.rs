//! Reference counts the full pipeline is checked against.

use std::collections::BTreeMap;

use tanlab::catalog::{Catalog, EntryClass, Family};
use tanlab::enumerator::label_group;

pub const PENTAGONS: usize = 53;

/// Convex tangrams per family.
const CONVEX: [(Family, usize); 6] = [
    (Family::Triangle, 1),
    (Family::Quadrangle, 6),
    (Family::Pentagon, 2),
    (Family::Hexagon, 4),
    (Family::Heptagon, 0),
    (Family::Octagon, 0),
];

/// Non-convex lattice pentagons per angle order.
const LATTICE: [(&str, usize); 16] = [
    ("53211", 0),
    ("53121", 1),
    ("53112", 1),
    ("52311", 1),
    ("52131", 2),
    ("51321", 4),
    ("52221", 1),
    ("52212", 0),
    ("63111", 1),
    ("61311", 3),
    ("62211", 1),
    ("62121", 1),
    ("62112", 0),
    ("61221", 1),
    ("72111", 2),
    ("71211", 1),
];

/// Non-lattice pentagons per pair of split parts.
const NONLATTICE: [(&str, usize); 13] = [
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
];

pub struct Report {
    pub diff: Vec<String>,
    pub pentagons_verified: usize,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.diff.is_empty()
    }
}

fn compare(what: &str, expected: usize, found: usize, diff: &mut Vec<String>) {
    if found < expected {
        diff.push(format!("missing  {what}: expected {expected}, found {found}"));
    } else if found > expected {
        diff.push(format!("extra    {what}: expected {expected}, found {found}"));
    }
}

fn groups(cat: &Catalog, cls: EntryClass) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for e in cat.entries.iter().filter(|e| e.family == Family::Pentagon && e.cls == cls) {
        *m.entry(label_group(&e.label).to_string()).or_insert(0) += 1;
    }
    m
}

pub fn check(cat: &Catalog) -> Report {
    let mut diff = Vec::new();
    let mut verified = 0;
    for (family, n) in CONVEX {
        let found = cat.entries.iter().filter(|e| e.family == family && e.cls == EntryClass::Convex).count();
        compare(&format!("convex {family:?}s").to_lowercase(), n, found, &mut diff);
        if family == Family::Pentagon {
            verified += n.min(found);
        }
    }
    let nonconvex_other = cat.entries.iter().filter(|e| e.family != Family::Pentagon && e.cls != EntryClass::Convex);
    for e in nonconvex_other {
        diff.push(format!("extra    non-convex {:?} {}", e.family, e.label).to_lowercase());
    }
    for (cls, table, name) in [
        (EntryClass::LatticeNonconvex, &LATTICE[..], "lattice pentagons"),
        (EntryClass::NonlatticeNonconvex, &NONLATTICE[..], "non-lattice pentagons"),
    ] {
        let mut found = groups(cat, cls);
        for (group, n) in table {
            let got = found.remove(*group).unwrap_or(0);
            compare(&format!("{name} {group}"), *n, got, &mut diff);
            verified += n.min(&got);
        }
        for (group, got) in found {
            compare(&format!("{name} {group}"), 0, got, &mut diff);
        }
    }
    for e in &cat.entries {
        if let Err(msg) = e.check() {
            diff.push(format!("invalid  {msg}"));
        }
    }
    Report { diff, pentagons_verified: verified }
}
