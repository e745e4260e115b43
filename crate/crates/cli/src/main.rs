use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use arq_core::ar::component::{to_dot, to_json};
use arq_core::ar::verify::run_named;
use arq_core::ar::{build_component, component_report, Component};
use arq_core::engine::DEFAULT_SEED;
use arq_core::expr::{parse_complex, parse_module, Namer};
use arq_core::homalg::{self, gdim_bound, gldim};
use arq_core::{AlgebraSpec, Engine, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "arq", version, about = "Auslander-Reiten theory for linear Nakayama algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Built-in algebra: a4gamma, radsquare:N, longrel:N or hereditary:N.
    #[arg(long, conflicts_with = "algebra")]
    preset: Option<String>,
    /// JSON file with fields `n` and `relations`.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Seed for the randomized isomorphism and idempotent searches.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Proj,
    Inj,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Dot,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Kupisch series, relations and dimensions.
    Info {
        #[command(flatten)]
        common: Common,
    },
    /// All indecomposable modules with their aliases.
    Modules {
        #[command(flatten)]
        common: Common,
    },
    /// Minimal projective or injective resolution of a module.
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, value_enum, default_value = "proj")]
        side: Side,
    },
    /// Dimensions of Hom(X, Y[k]) in the homotopy category.
    Hom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        start: String,
        #[arg(long)]
        end: String,
    },
    /// Global dimension and the bound read off the relations.
    Gldim {
        #[command(flatten)]
        common: Common,
    },
    /// The Auslander-Reiten triangle ending in an indecomposable.
    Triangle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        end: String,
    },
    /// Successive translates of an object; negative steps apply the inverse.
    TauOrbit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
        steps: i32,
    },
    /// Knits the component of the quiver containing an object.
    Component {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = arq_core::ar::verify::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a named verifier: example-d4, zan:N or zdn:N.
    Verify {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn engine(common: &Common) -> std::result::Result<Engine, Failure> {
    let alg = match (&common.preset, &common.algebra) {
        (Some(name), _) => AlgebraSpec::preset(name)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            AlgebraSpec::from_json(&text)?
        }
        (None, None) => return Err(Failure::Usage("one of --preset or --algebra is required".into())),
    };
    Ok(Engine::with_seed(alg, common.seed))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn info(e: &Engine) {
    let a = e.alg();
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    println!("n={}", a.n());
    let rels: Vec<String> = a.relations().iter().map(ToString::to_string).collect();
    println!("relations: {}", if rels.is_empty() { "none".into() } else { rels.join(" ") });
    println!("kupisch (projective lengths): {}", join(a.proj_lens()));
    println!("injective lengths: {}", join(a.inj_lens()));
    println!("indecomposables: {}", a.indecomposables().len());
    println!("gldim={} bound={}", gldim(a), gdim_bound(a));
}

fn modules(e: &Engine) -> Outcome {
    let a = e.alg();
    for m in a.indecomposables() {
        let (pd, id) = homalg::homological_dims(a, &m)?;
        println!("{:<6} {:<8} pd={pd} id={id}", a.module_alias(&m), m.to_string());
    }
    Ok(())
}

fn resolve(e: &Engine, module: &str, side: Side) -> Outcome {
    let a = e.alg();
    let m = parse_module(a, module)?;
    let names = |terms: Vec<_>| terms.iter().map(|t| a.module_alias(t)).collect::<Vec<_>>();
    let line = match side {
        Side::Proj => {
            let mut terms = names(homalg::proj_terms(a, &m));
            terms.reverse();
            format!("0 -> {}", terms.join(" -> "))
        }
        Side::Inj => format!("{} -> 0", names(homalg::inj_terms(a, &m)).join(" -> ")),
    };
    println!("{line}");
    Ok(())
}

fn hom(e: &Engine, start: &str, end: &str) -> Outcome {
    let x = e.as_projective(&parse_complex(e, start)?)?;
    let y = e.as_projective(&parse_complex(e, end)?)?;
    let (Some((xl, xh)), Some((yl, yh))) = (x.range(), y.range()) else {
        println!("all homs vanish");
        return Ok(());
    };
    for k in xl - yh..=xh - yl {
        let d = e.hom(&x, &y.shift(k)).dim();
        if d > 0 {
            println!("dim Hom({start}, ({end})[{k}]) = {d}");
        }
    }
    Ok(())
}

fn triangle(e: &Engine, end: &str) -> Outcome {
    let z = parse_complex(e, end)?;
    let tri = e.ar_triangle_ending(&z)?;
    let namer = Namer::new(e);
    let mut middle: Vec<String> = tri
        .middle
        .iter()
        .map(|(x, k)| if *k > 1 { format!("{}^{k}", namer.name(x)) } else { namer.name(x) })
        .collect();
    middle.sort();
    println!("start: {}", namer.name(&tri.start));
    println!("middle: {}", if middle.is_empty() { "0".into() } else { middle.join(" (+) ") });
    println!("end: {}", namer.name(&tri.end));
    for s in &tri.stripped {
        println!("stripped: {} in degree {}", e.alg().module_alias(&s.summand), s.degree);
    }
    Ok(())
}

fn tau_orbit(e: &Engine, start: &str, steps: i32) -> Outcome {
    let namer = Namer::new(e);
    let dir = if steps < 0 { arq_core::Direction::Inverse } else { arq_core::Direction::Forward };
    let mut x = e.as_projective(&parse_complex(e, start)?)?;
    let mut names = Vec::new();
    for i in 0..steps.unsigned_abs() {
        if i > 0 {
            x = e.tau(&x, dir)?;
        }
        names.push(namer.name(&x));
    }
    println!("{}", names.join(", "));
    Ok(())
}

fn component_text(c: &Component, report: &arq_core::ar::ComponentReport) -> String {
    let mut s = format!(
        "vertices={} triangles={} closed={}\n",
        c.vertices.len(),
        report.triangles,
        report.closed
    );
    s.push_str(&format!("tau-orbits={} shape={}\n", report.orbit_count(), report.verdict));
    match report.minus_one_as_tau {
        Some(k) => s.push_str(&format!("[-1] = tau^{k}\n")),
        None => s.push_str("[-1] is not a power of tau on this component\n"),
    }
    for (descriptor, alias) in &report.vertices {
        s.push_str(&format!("  {alias:<16} {descriptor}\n"));
    }
    s
}

fn component(e: &Engine, start: &str, budget: usize, format: Format, out: Option<&PathBuf>) -> Outcome {
    let x = parse_complex(e, start)?;
    let (c, exceeded) = match build_component(e, &x, budget) {
        Ok(c) => (c, false),
        Err(Error::BudgetExceeded(c)) => (*c, true),
        Err(err) => return Err(err.into()),
    };
    let report = component_report(e, &c);
    let text = match format {
        Format::Text => component_text(&c, &report),
        Format::Dot => to_dot(&c, &report),
        Format::Structured => {
            let v = to_json(e, &c, &report);
            serde_json::to_string_pretty(&v).expect("component serializes") + "\n"
        }
    };
    emit(out, &text)?;
    if exceeded {
        return Err(Error::BudgetExceeded(Box::new(c)).into());
    }
    Ok(())
}

fn verify(name: &str, seed: u64) -> Outcome {
    let report = run_named(name, seed)?;
    match report.first_failure() {
        None => {
            println!("PASS {} ({} checks)", report.name, report.checks.len());
            Ok(())
        }
        Some(f) => {
            println!("FAIL {}: {}: {}", report.name, f.name, f.detail);
            Err(Failure::Verify)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Info { common } => {
            info(&engine(&common)?);
            Ok(())
        }
        Command::Modules { common } => modules(&engine(&common)?),
        Command::Resolve { common, module, side } => resolve(&engine(&common)?, &module, side),
        Command::Hom { common, start, end } => hom(&engine(&common)?, &start, &end),
        Command::Gldim { common } => {
            let e = engine(&common)?;
            println!("gldim={} bound={}", gldim(e.alg()), gdim_bound(e.alg()));
            Ok(())
        }
        Command::Triangle { common, end } => triangle(&engine(&common)?, &end),
        Command::TauOrbit { common, start, steps } => tau_orbit(&engine(&common)?, &start, steps),
        Command::Component { common, start, budget, format, out } => {
            component(&engine(&common)?, &start, budget, format, out.as_ref())
        }
        Command::Verify { name, seed } => verify(&name, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 2,
                Error::BudgetExceeded(_) => 4,
                _ => 3,
            })
        }
    }
}
