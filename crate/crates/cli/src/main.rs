use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use codim1::analysis::{analyze, subdivided};
use codim1::catalog::{self, CatalogEntry};
use codim1::duality::{alexander_duality_record, poincare_duality_check, w1};
use codim1::homology::betti_numbers;
use codim1::io::{complex_from_json, complex_to_json, distinct_names, map_from_json, map_to_json};
use codim1::selftest::{run_selftest, DEFAULT_SEED};
use codim1::separation::complement_components_oracle;
use codim1::{Error, Result, SimplicialComplex, SimplicialMap};

/// Component counts and obstructions for codimension-one simplicial maps.
#[derive(Parser)]
#[command(name = "codim1", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in instances, or export them as files.
    Catalog {
        #[arg(long)]
        entry: Option<String>,
        /// Write each entry's complexes and map under DIR/<id>/.
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Full report: certificates, separation, obstruction.
    Analyze(Input),
    /// Only the component count of the complement of the image.
    Oracle(Input),
    /// Poincaré and Alexander duality checks, w₁, Betti numbers.
    DualityCheck(Input),
    /// Run the invariant suite on the catalog.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct Input {
    /// A built-in catalog entry instead of files.
    #[arg(long, conflicts_with_all = ["complex", "map"])]
    entry: Option<String>,
    #[arg(long, value_name = "FILE")]
    complex: Vec<PathBuf>,
    #[arg(long, value_name = "FILE")]
    map: Option<PathBuf>,
    /// Barycentric subdivisions applied before analysis.
    #[arg(long, value_name = "K", default_value_t = 0)]
    subdivide: usize,
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
}

struct Loaded {
    complexes: Vec<Arc<SimplicialComplex>>,
    map: Option<SimplicialMap>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::input(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

fn find_entry(id: &str) -> Result<CatalogEntry> {
    catalog::find(id).ok_or_else(|| Error::input(format!("no catalog entry {id}")))
}

impl Input {
    fn load(&self) -> Result<Loaded> {
        if let Some(id) = &self.entry {
            let e = find_entry(id)?;
            return Ok(Loaded { complexes: e.complexes, map: Some(e.map) });
        }
        let complexes = self
            .complex
            .iter()
            .map(|p| read(p).and_then(|t| complex_from_json(&t)).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        distinct_names(&complexes)?;
        let map = self.map.as_deref().map(|p| map_from_json(&read(p)?, &complexes)).transpose()?;
        Ok(Loaded { complexes, map })
    }

    fn require_map(&self) -> Result<SimplicialMap> {
        self.load()?.map.ok_or_else(|| Error::input("a map is required: pass --map FILE or --entry ID"))
    }
}

/// Writes `value` to `out`, or to stdout.
fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_catalog(entry: Option<&str>, export: Option<&Path>, json_out: Option<&Path>) -> Result<i32> {
    let entries = match entry {
        Some(id) => vec![find_entry(id)?],
        None => catalog::catalog(),
    };
    if let Some(dir) = export {
        for e in &entries {
            for k in &e.complexes {
                write(&dir.join(&e.id).join(format!("{}.json", k.name())), &complex_to_json(k))?;
            }
            write(&dir.join(&e.id).join("map.json"), &map_to_json(&e.map))?;
        }
    }
    let summaries: Vec<_> = entries.iter().map(CatalogEntry::summary).collect();
    emit(&serde_json::to_value(summaries).expect("serializable"), json_out)?;
    Ok(0)
}

fn run_analyze(input: &Input) -> Result<i32> {
    let report = analyze(&input.require_map()?, input.subdivide)?;
    emit(&report.to_value(), input.json.as_deref())?;
    Ok(report.exit_code)
}

fn run_oracle(input: &Input) -> Result<i32> {
    let f = subdivided(&input.require_map()?, input.subdivide)?;
    let count = complement_components_oracle(f.codomain(), &f.image_subcomplex()?)?;
    let value = json!({"map": f.name(), "codomain": f.codomain().name(), "subdivisions": input.subdivide, "beta0_oracle": count});
    emit(&value, input.json.as_deref())?;
    Ok(0)
}

/// Certified complexes get every check; others only Betti numbers (exit 1).
fn run_duality(input: &Input) -> Result<i32> {
    let loaded = input.load()?;
    let mut complexes = loaded.complexes;
    let mut map = loaded.map;
    for _ in 0..input.subdivide {
        complexes = complexes.iter().map(|k| Arc::new(k.barycentric_subdivide().complex)).collect();
        map = map.map(|f| f.subdivide()).transpose()?;
    }
    if complexes.is_empty() {
        return Err(Error::input("pass at least one --complex FILE or --entry ID"));
    }
    let mut all_hold = true;
    let mut all_certified = true;
    let mut records = Vec::new();
    for k in &complexes {
        let dim = k.dim();
        let certified = dim.is_some_and(|n| k.manifold_certificate(n).is_closed_z2_homology_n_manifold);
        let (poincare, w1_zero) = match (certified, dim) {
            (true, Some(n)) => (Some(poincare_duality_check(k, n)?), Some(w1(k, n)?.is_zero_class(k)?)),
            _ => (None, None),
        };
        all_hold &= poincare != Some(false);
        all_certified &= certified;
        records.push(json!({
            "complex": k.name(),
            "dim": dim,
            "betti": betti_numbers(k),
            "certified": certified,
            "poincare_duality": poincare,
            "w1_is_zero": w1_zero,
        }));
    }
    let alexander = match &map {
        Some(f) => {
            let y = f.codomain();
            match y.dim().filter(|&n| y.manifold_certificate(n).is_closed_z2_homology_n_manifold) {
                Some(n) => {
                    let r = alexander_duality_record(y, n, &f.image_subcomplex()?)?;
                    all_hold &= r.holds;
                    serde_json::to_value(r).expect("serializable")
                }
                None => {
                    all_certified = false;
                    Value::Null
                }
            }
        }
        None => Value::Null,
    };
    emit(&json!({"complexes": records, "alexander_duality_of_image": alexander}), input.json.as_deref())?;
    Ok(if !all_hold {
        2
    } else if !all_certified {
        1
    } else {
        0
    })
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Catalog { entry, export, json } => run_catalog(entry.as_deref(), export.as_deref(), json.as_deref()),
        Command::Analyze(input) => run_analyze(&input),
        Command::Oracle(input) => run_oracle(&input),
        Command::DualityCheck(input) => run_duality(&input),
        Command::Selftest { seed } => {
            let outcome = run_selftest(&catalog::catalog(), seed);
            print!("{}", outcome.output());
            Ok(outcome.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
