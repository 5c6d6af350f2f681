//! Catalog entries and their JSON form.

use serde::{Deserialize, Serialize};

use crate::geometry::{canonical_polygon, CanonicalKey, Point, Polygon, Symmetry};
use crate::solver::{classify, validate, Dissection, TangramClass};
use crate::tans::TanKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Triangle,
    Quadrangle,
    Pentagon,
    Hexagon,
    Heptagon,
    Octagon,
}

impl Family {
    pub fn of_vertex_count(n: usize) -> Option<Family> {
        Some(match n {
            3 => Family::Triangle,
            4 => Family::Quadrangle,
            5 => Family::Pentagon,
            6 => Family::Hexagon,
            7 => Family::Heptagon,
            8 => Family::Octagon,
            _ => return None,
        })
    }

    pub fn vertex_count(self) -> usize {
        self as usize + 3
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntryClass {
    #[serde(rename = "convex")]
    Convex,
    #[serde(rename = "lattice-nonconvex")]
    LatticeNonconvex,
    #[serde(rename = "nonlattice-nonconvex")]
    NonlatticeNonconvex,
}

/// How a non-lattice witness splits into its two single-lattice parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitInfo {
    pub v0: Point,
    pub cut: [Point; 2],
    pub t1_tans: Vec<TanKind>,
    pub t2_tans: Vec<TanKind>,
}

impl SplitInfo {
    fn moved(&self, sym: Symmetry, t: &Point) -> SplitInfo {
        let mv = |p: &Point| &sym.apply(p) + t;
        SplitInfo {
            v0: mv(&self.v0),
            cut: [mv(&self.cut[0]), mv(&self.cut[1])],
            t1_tans: self.t1_tans.clone(),
            t2_tans: self.t2_tans.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub family: Family,
    #[serde(rename = "class")]
    pub cls: EntryClass,
    pub key: CanonicalKey,
    pub polygon: Polygon,
    pub witness: Dissection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitInfo>,
}

impl CatalogEntry {
    /// Builds an entry with polygon and witness moved to the canonical pose.
    pub fn new(
        label: String,
        cls: EntryClass,
        polygon: &Polygon,
        witness: &Dissection,
        split: Option<&SplitInfo>,
    ) -> CatalogEntry {
        let (canon, sym, t) = canonical_polygon(polygon);
        let placements = witness.placements.iter().map(|p| p.moved(sym, &t)).collect();
        CatalogEntry {
            label,
            family: Family::of_vertex_count(canon.len()).expect("3 to 8 vertices"),
            cls,
            key: polygon.canonical_key(),
            witness: Dissection { target: canon.clone(), placements },
            polygon: canon,
            split: split.map(|s| s.moved(sym, &t)),
        }
    }

    /// Exact check that the entry is internally consistent.
    pub fn check(&self) -> Result<(), String> {
        if self.polygon.area() != crate::qfield::Qr::from_int(8) {
            return Err(format!("{}: area is {}", self.label, self.polygon.area()));
        }
        if self.polygon.canonical_key() != self.key {
            return Err(format!("{}: key does not match polygon", self.label));
        }
        if self.witness.target != self.polygon {
            return Err(format!("{}: witness target differs from polygon", self.label));
        }
        if self.witness.placements.len() != 7 || !validate(&self.witness) {
            return Err(format!("{}: witness does not validate", self.label));
        }
        let expect = match self.cls {
            EntryClass::NonlatticeNonconvex => TangramClass::NonLattice,
            _ => TangramClass::Lattice,
        };
        if classify(&self.witness) != expect {
            return Err(format!("{}: witness classifies as {}", self.label, classify(&self.witness).as_str()));
        }
        if (self.cls == EntryClass::Convex) != self.polygon.is_convex() {
            return Err(format!("{}: convexity disagrees with class", self.label));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PentagonSummary {
    pub convex: usize,
    pub lattice: usize,
    pub nonlattice: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub triangles: usize,
    pub quadrangles: usize,
    pub convex_total: usize,
    pub pentagons: PentagonSummary,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub summary: Summary,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Sorts entries (family, class, label) and recomputes the summary.
    pub fn from_entries(mut entries: Vec<CatalogEntry>) -> Catalog {
        entries.sort_by(|a, b| (a.family, a.cls, &a.label, &a.key).cmp(&(b.family, b.cls, &b.label, &b.key)));
        let count = |f: &dyn Fn(&CatalogEntry) -> bool| entries.iter().filter(|e| f(e)).count();
        let pent = |c: EntryClass| count(&|e| e.family == Family::Pentagon && e.cls == c);
        let summary = Summary {
            triangles: count(&|e| e.family == Family::Triangle),
            quadrangles: count(&|e| e.family == Family::Quadrangle),
            convex_total: count(&|e| e.cls == EntryClass::Convex),
            pentagons: PentagonSummary {
                convex: pent(EntryClass::Convex),
                lattice: pent(EntryClass::LatticeNonconvex),
                nonlattice: pent(EntryClass::NonlatticeNonconvex),
                total: count(&|e| e.family == Family::Pentagon),
            },
        };
        Catalog { summary, entries }
    }

    pub fn filtered(&self, keep: impl Fn(&CatalogEntry) -> bool) -> Catalog {
        Catalog::from_entries(self.entries.iter().filter(|e| keep(e)).cloned().collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog values fit the wire format")
    }

    pub fn from_json(s: &str) -> Result<Catalog, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn find(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}
