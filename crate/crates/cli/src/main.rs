use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hellybench::bounds;
use hellybench::complex::Complex;
use hellybench::config::Caps;
use hellybench::constructions as cons;
use hellybench::geometry;
use hellybench::homology;
use hellybench::verify::{self, IntRange, Suite, Summary, SweepSpec};

#[derive(Parser)]
#[command(name = "hellybench", version, about = "Exact checks of fractional Helly bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and print it with its predicted statistics.
    Construct(ConstructArgs),
    /// Run a verification suite; one JSON report per line.
    Verify(VerifyArgs),
    /// Tabulate closed-form bounds over parameter ranges.
    Table(TableArgs),
    /// Reduced Betti numbers and Leray data of a complex.
    Homology(HomologyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    /// Block-partition complex and its factors (n, t, r, d).
    KExtremal,
    /// Eckhoff hypergraph (n, d, r).
    Eckhoff,
    /// Exact slab family realising the Eckhoff hypergraph (n, d, r, seed).
    SlabFamily,
    /// Product construction: plan, hypergraph and lifted bodies (n, t, d, r, seed).
    ProductFamily,
    /// Partial-transversal complex for 1-Leray intersections (n, m).
    Turan,
}

#[derive(Args)]
struct ConstructArgs {
    object: Object,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// leray-intersection, eckhoff, product, partition, turan or higher-faces.
    suite: Suite,
    /// Ranges are `a`, `a..b` or `a..=b`.
    #[arg(long)]
    n: Option<IntRange>,
    #[arg(long)]
    d: Option<IntRange>,
    #[arg(long)]
    t: Option<IntRange>,
    #[arg(long)]
    r: Option<IntRange>,
    #[arg(long)]
    m: Option<IntRange>,
    #[arg(long)]
    x: Option<IntRange>,
    #[arg(long)]
    k: Option<IntRange>,
    #[arg(long)]
    j: Option<IntRange>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances per parameter tuple.
    #[arg(long, default_value_t = 6)]
    samples: usize,
    /// Skip the geometric realisations.
    #[arg(long)]
    no_geometry: bool,
    /// Skip the negative controls.
    #[arg(long)]
    no_controls: bool,
    /// Record wall-clock time per report.
    #[arg(long)]
    timing: bool,
    /// Write flattened numeric fields as CSV instead of JSON lines.
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableBound {
    #[value(name = "g-d")]
    GD,
    Frachel,
    Turan,
    All,
}

#[derive(Args)]
struct TableArgs {
    bound: TableBound,
    #[arg(long, default_value = "2..=10")]
    n: IntRange,
    #[arg(long, default_value = "1..=3")]
    t: IntRange,
    #[arg(long, default_value = "1..=2")]
    d: IntRange,
    #[arg(long, default_value = "0..=8")]
    r: IntRange,
    /// CSV instead of JSON lines.
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HomologyArgs {
    /// A complex as `{"n": .., "maximal_faces": [[..], ..]}`, or any object
    /// with such a complex under the key "complex".
    #[arg(long = "in")]
    input: PathBuf,
    /// Also certify the d-Leray property exhaustively.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(path: Option<&Path>, value: &Value) -> Result<()> {
    let mut w = output(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn construct(a: &ConstructArgs) -> Result<Value> {
    let (n, d, t, r, m, seed) = (a.n, a.d, a.t, a.r, a.m, a.seed);
    Ok(match a.object {
        Object::KExtremal => json!({
            "object": "k-extremal",
            "params": { "n": n, "t": t, "r": r, "d": d },
            "complex": cons::k_extremal(n, t, r, d)?,
            "factors": cons::k_extremal_factors(n, t, r, d)?,
            "predicted": cons::k_extremal_predicted(n, t, r, d)?,
        }),
        Object::Eckhoff => json!({
            "object": "eckhoff",
            "params": { "n": n, "d": d, "r": r },
            "hypergraph": cons::h_eckhoff(n, d, r)?,
            "predicted": cons::h_eckhoff_predicted(n, d, r)?,
        }),
        Object::SlabFamily => {
            let family = geometry::build_slab_family(n, d, r, seed)?;
            json!({
                "object": "slab-family",
                "params": { "n": n, "d": d, "r": r },
                "seed": seed,
                "family": family,
                "sets": family.sets(),
                "predicted": cons::h_eckhoff_predicted(n, d, r)?,
            })
        }
        Object::ProductFamily => {
            let plan = cons::ProductFamilyPlan::new(n, t, d, r)?;
            json!({
                "object": "product-family",
                "params": { "n": n, "t": t, "d": d, "r": r },
                "seed": seed,
                "hypergraph": cons::product_family_hypergraph(&plan)?,
                "bodies": geometry::lift_product_family(&plan, seed)?,
                "predicted": plan.predicted()?,
                "plan": plan,
            })
        }
        Object::Turan => {
            let (complex, factors) = cons::turan_1leray_complex(n, m)?;
            json!({
                "object": "turan",
                "params": { "n": n, "m": m },
                "complex": complex,
                "factors": factors,
                "predicted": cons::turan_1leray_predicted(n, m)?,
            })
        }
    })
}

fn run_verify(a: &VerifyArgs, argv: &[String]) -> Result<bool> {
    let mut spec = SweepSpec::new(a.suite);
    spec.n = a.n;
    spec.d = a.d;
    spec.t = a.t;
    spec.r = a.r;
    spec.m = a.m;
    spec.x = a.x;
    spec.k = a.k;
    spec.j = a.j;
    spec.seed = a.seed;
    spec.samples = a.samples;
    spec.caps = Caps::from_env();
    spec.geometry = !a.no_geometry;
    spec.controls = !a.no_controls;
    spec.timing = a.timing;
    spec.echo = json!({ "argv": argv });
    let reports = verify::run(&spec)?;
    let mut w = output(a.out.as_deref())?;
    if a.csv {
        let (header, rows) = verify::to_table(&reports);
        let mut csv = csv::Writer::from_writer(&mut w);
        csv.write_record(&header)?;
        for row in rows {
            csv.write_record(&row)?;
        }
        csv.flush()?;
    } else {
        for r in &reports {
            serde_json::to_writer(&mut w, r)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    let s = Summary::of(&reports);
    eprintln!(
        "{}: {} reports, {} pass, {} fail, {} skip, {} info, {} error, {} controls, {} not ok",
        a.suite, s.total, s.pass, s.fail, s.skip, s.info, s.error, s.controls, s.not_ok
    );
    for r in reports.iter().filter(|r| !r.ok) {
        eprintln!("  not ok: {} {} {:?}", r.case, Value::Object(r.params.clone()), r.messages);
    }
    Ok(s.all_ok())
}

fn cell<T: ToString>(v: hellybench::Result<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn table(a: &TableArgs) -> Result<()> {
    let mut w = output(a.out.as_deref())?;
    let header = ["n", "t", "d", "r", "g_d", "frachel", "turan"];
    let mut csv = a.csv.then(|| csv::Writer::from_writer(Vec::new()));
    if let Some(c) = csv.as_mut() {
        c.write_record(header)?;
    }
    for n in a.n.iter() {
        for t in a.t.iter() {
            for d in a.d.iter() {
                for r in a.r.iter() {
                    let (n, t, d, r) = (n as u64, t as u64, d as u64, r as u64);
                    let g = cell(bounds::g_d(n, t, r, d));
                    let f = cell(bounds::frachel_bound(n, d, r));
                    let tu = cell(bounds::turan_bound(n, t));
                    let keep = match a.bound {
                        TableBound::GD => !g.is_empty(),
                        TableBound::Frachel => !f.is_empty(),
                        TableBound::Turan => !tu.is_empty(),
                        TableBound::All => !(g.is_empty() && f.is_empty() && tu.is_empty()),
                    };
                    if !keep {
                        continue;
                    }
                    let row = [n.to_string(), t.to_string(), d.to_string(), r.to_string(), g, f, tu];
                    match csv.as_mut() {
                        Some(c) => c.write_record(&row)?,
                        None => {
                            let obj: serde_json::Map<String, Value> = header
                                .iter()
                                .zip(&row)
                                .map(|(k, v)| {
                                    let val = v.parse::<i64>().map(Value::from).unwrap_or_else(|_| {
                                        if v.is_empty() {
                                            Value::Null
                                        } else {
                                            Value::String(v.clone())
                                        }
                                    });
                                    (k.to_string(), val)
                                })
                                .collect();
                            serde_json::to_writer(&mut w, &obj)?;
                            writeln!(w)?;
                        }
                    }
                }
            }
        }
    }
    if let Some(c) = csv {
        w.write_all(&c.into_inner().context("flushing csv")?)?;
    }
    w.flush()?;
    Ok(())
}

fn load_complex(path: &Path) -> Result<Complex> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).context("parsing JSON")?;
    let inner = match value.get("complex") {
        Some(c) => c.clone(),
        None => value,
    };
    serde_json::from_value(inner).context("not a complex")
}

fn homology_cmd(a: &HomologyArgs) -> Result<()> {
    let k = load_complex(&a.input)?;
    let caps = Caps::from_env();
    let betti = homology::reduced_betti(&k, &caps)?;
    let mut out = json!({
        "n": k.n(),
        "dim": k.dim(),
        "f_vector": k.f_vector(),
        "betti": betti.betti,
        "betti_neg1": betti.betti_neg1,
        "euler_characteristic": betti.euler_characteristic(),
    });
    if k.n() <= caps.leray {
        out["leray_number"] = json!(homology::leray_number(&k, &caps)?);
    }
    if let Some(d) = a.d {
        out["certificate"] = serde_json::to_value(homology::is_d_leray(&k, d, &caps)?)?;
    }
    write_json(a.out.as_deref(), &out)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => construct(a).and_then(|v| write_json(a.out.as_deref(), &v)).map(|_| true),
        Command::Verify(a) => run_verify(a, &argv),
        Command::Table(a) => table(a).map(|_| true),
        Command::Homology(a) => homology_cmd(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(k) = e.downcast_ref::<hellybench::Error>() {
                if matches!(k, hellybench::Error::Input(_) | hellybench::Error::Domain(_)) {
                    return ExitCode::from(2);
                }
            }
            ExitCode::FAILURE
        }
    }
}
