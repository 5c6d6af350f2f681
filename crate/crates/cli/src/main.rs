mod expected;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tanlab::catalog::{Catalog, CatalogEntry, EntryClass, Family, SplitInfo};
use tanlab::enumerator::{
    check_no_nonconvex_quadrangle, enumerate_convex_with, full_catalog_with, solve_polygon_with, EnumOptions, Verdict,
    Witness, DEFAULT_BOUND,
};
use tanlab::geometry::Polygon;
use tanlab::render::{dissection_svg, entry_svg, file_name};
use tanlab::solver::{Dissection, SolveOptions};

/// Exact enumeration and verification of tangram figures.
#[derive(Parser, Debug)]
#[command(name = "tanlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Upper bound on free side-length parameters (at least 16).
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND, value_parser = clap::value_parser!(i64).range(16..))]
    bound: i64,

    /// Worker threads for the search.
    #[arg(long, global = true, env = "TANLAB_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    /// Turn off the solver's dead-end pruning.
    #[arg(long, global = true)]
    no_prune: bool,

    /// Side-length bound with no lower limit, for testing.
    #[arg(long, global = true, hide = true)]
    debug_bound: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate tangrams and write the catalog as JSON.
    Enumerate {
        #[command(flatten)]
        filter: Filter,
        /// Catalog JSON destination.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw every entry into this directory.
        #[arg(long)]
        svg_dir: Option<PathBuf>,
    },
    /// Decide whether the polygon in a JSON file is a tangram.
    Solve {
        polygon: PathBuf,
        /// Result JSON destination; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Draw the witness dissection to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the full pipeline and compare against the reference counts.
    Verify,
    /// Draw the entries of a catalog file as SVG.
    Render {
        catalog: PathBuf,
        #[command(flatten)]
        filter: Filter,
        #[arg(long, default_value = "svg")]
        svg_dir: PathBuf,
    },
}

#[derive(clap::Args, Debug)]
struct Filter {
    #[arg(long, value_enum, default_value_t = FamilyArg::All)]
    family: FamilyArg,
    #[arg(long, value_enum, default_value_t = ClassArg::All)]
    class: ClassArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Triangle,
    Quadrangle,
    Pentagon,
    Convex,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Convex,
    Lattice,
    Nonlattice,
    All,
}

impl Filter {
    fn keeps(&self, e: &CatalogEntry) -> bool {
        let family = match self.family {
            FamilyArg::Triangle => e.family == Family::Triangle,
            FamilyArg::Quadrangle => e.family == Family::Quadrangle,
            FamilyArg::Pentagon => e.family == Family::Pentagon,
            FamilyArg::Convex => e.cls == EntryClass::Convex,
            FamilyArg::All => true,
        };
        let class = match self.class {
            ClassArg::Convex => e.cls == EntryClass::Convex,
            ClassArg::Lattice => e.cls == EntryClass::LatticeNonconvex,
            ClassArg::Nonlattice => e.cls == EntryClass::NonlatticeNonconvex,
            ClassArg::All => true,
        };
        family && class
    }
}

enum Failure {
    Negative,
    Io(String),
    Usage(String),
}

impl Failure {
    fn io(path: &Path, err: impl std::fmt::Display) -> Failure {
        Failure::Io(format!("{}: {err}", path.display()))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let opts =
        EnumOptions { bound: cli.debug_bound.unwrap_or(cli.bound), solve: SolveOptions { prune: !cli.no_prune } };
    let outcome = match &cli.command {
        Command::Enumerate { filter, out, svg_dir } => enumerate(filter, out.as_deref(), svg_dir.as_deref(), opts),
        Command::Solve { polygon, out, svg } => solve(polygon, out.as_deref(), svg.as_deref(), opts.solve),
        Command::Verify => verify(opts),
        Command::Render { catalog, filter, svg_dir } => render(catalog, filter, svg_dir),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn summary_lines(cat: &Catalog, family: FamilyArg) -> Vec<String> {
    let s = &cat.summary;
    let mut lines = Vec::new();
    let all = family == FamilyArg::All;
    if all || family == FamilyArg::Triangle {
        lines.push(plural(s.triangles, "triangle"));
    }
    if all || family == FamilyArg::Quadrangle {
        let nonconvex = check_no_nonconvex_quadrangle().nonconvex_count();
        lines.push(format!("{}, {nonconvex} non-convex", plural(s.quadrangles, "quadrangle")));
    }
    if all || family == FamilyArg::Pentagon {
        let p = &s.pentagons;
        lines.push(format!(
            "pentagons: {} convex, {} lattice, {} non-lattice, {} total",
            p.convex, p.lattice, p.nonlattice, p.total
        ));
    }
    if all || family == FamilyArg::Convex {
        lines.push(format!("{} convex tangrams", s.convex_total));
    }
    lines
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

fn write_svgs(cat: &Catalog, dir: &Path) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    for e in &cat.entries {
        write_file(&dir.join(file_name(e)), &entry_svg(e))?;
    }
    Ok(())
}

fn enumerate(filter: &Filter, out: Option<&Path>, svg_dir: Option<&Path>, opts: EnumOptions) -> Outcome {
    let needs_pentagons =
        matches!(filter.family, FamilyArg::Pentagon | FamilyArg::All) && filter.class != ClassArg::Convex;
    let cat = if needs_pentagons {
        full_catalog_with(opts)
    } else {
        // every tangram triangle and quadrangle is convex
        Catalog::from_entries(enumerate_convex_with(opts))
    };
    let cat = cat.filtered(|e| filter.keeps(e));
    if let Some(path) = out {
        write_file(path, &cat.to_json())?;
    }
    if let Some(dir) = svg_dir {
        write_svgs(&cat, dir)?;
    }
    for line in summary_lines(&cat, filter.family) {
        println!("{line}");
    }
    Ok(())
}

fn read_polygon(path: &Path) -> Result<Polygon, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        let field = if at == "." { String::new() } else { format!(" at {at}") };
        Failure::Usage(format!("{}{field}: {}", path.display(), e.inner()))
    })
}

#[derive(Serialize)]
struct SolveResult<'a> {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Dissection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    split: Option<SplitInfo>,
}

fn solve(path: &Path, out: Option<&Path>, svg: Option<&Path>, opts: SolveOptions) -> Outcome {
    let poly = read_polygon(path)?;
    let verdict = solve_polygon_with(&poly, opts);
    let mut result = SolveResult { verdict: verdict.as_str(), class: None, witness: None, split: None };
    if let Verdict::Tangram(class, witness) = &verdict {
        result.class = Some(class.as_str());
        result.witness = Some(witness.dissection());
        if let Witness::Split(w, _) = witness {
            result.split = Some(SplitInfo {
                v0: w.v0.clone(),
                cut: [w.cut.0.clone(), w.cut.1.clone()],
                t1_tans: w.t1_dissection.kinds(),
                t2_tans: w.t2_dissection.kinds(),
            });
        }
        if let Some(svg) = svg {
            write_file(svg, &dissection_svg(witness.dissection(), &path.display().to_string()))?;
        }
    }
    let json = serde_json::to_string_pretty(&result).expect("result serializes");
    match out {
        Some(p) => {
            write_file(p, &json)?;
            match &verdict {
                Verdict::Tangram(class, _) => println!("tangram ({})", class.as_str()),
                v => println!("{}", v.as_str()),
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{json}");
        }
    }
    match verdict {
        Verdict::Tangram(..) => Ok(()),
        _ => Err(Failure::Negative),
    }
}

fn verify(opts: EnumOptions) -> Outcome {
    let cat = full_catalog_with(opts);
    for line in summary_lines(&cat, FamilyArg::All) {
        println!("{line}");
    }
    let report = expected::check(&cat);
    for line in &report.diff {
        println!("  {line}");
    }
    println!("{}/{} pentagons verified", report.pentagons_verified, expected::PENTAGONS);
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn render(path: &Path, filter: &Filter, dir: &Path) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let cat = Catalog::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let cat = cat.filtered(|e| filter.keeps(e));
    write_svgs(&cat, dir)?;
    println!("{} written to {}", plural(cat.entries.len(), "drawing"), dir.display());
    Ok(())
}
