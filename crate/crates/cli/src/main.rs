use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rsm_core::io;
use rsm_core::random;
use rsm_core::reductions::*;
use rsm_core::solvers::{self, Instance, SolverConfig, Strategy};
use rsm_core::Subset;
use serde_json::{json, Value};

/// Robust submodular minimization: solve, verify and generate instances.
#[derive(Parser)]
#[command(name = "rsm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find X within the thresholds of a minimizer of every function.
    Solve {
        file: PathBuf,
        /// auto, brute, d0, k2, fpt, anchored or enum.
        #[arg(long, default_value = "auto")]
        algo: String,
        #[arg(long)]
        json: bool,
    },
    /// Distance from X to the nearest minimizer of each function.
    Verify {
        file: PathBuf,
        /// Comma-separated element names.
        #[arg(long, conflicts_with = "cert")]
        x: Option<String>,
        /// Certificate file as written by `gen --with-certificate`.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Blocks, DAG and member count of one function's minimizer lattice.
    Lattice {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        json: bool,
        /// Stop counting members beyond this many.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Exhaustive search; refuses above the brute-force limit.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Sat1in3,
    Rsep,
    BalancedCut,
    Mcc,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    vars: usize,
    #[arg(long, default_value_t = 2)]
    clauses: usize,
    /// Colors for mcc.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Vertices per color (mcc), elements (rsep) or vertices (balanced-cut).
    #[arg(long)]
    n: Option<usize>,
    /// Edges per color pair (mcc).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Threshold; sat1in3 pads up to it.
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Families (rsep).
    #[arg(long, default_value_t = 3)]
    families: usize,
    /// Edge probability (balanced-cut).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Accepted for mcc, whose cliques are always planted.
    #[arg(long)]
    planted: bool,
    /// Also write the known solution to `<out>.cert.json`.
    #[arg(long)]
    with_certificate: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_errors = matches!(
        cli.command,
        Command::Solve { json: true, .. } | Command::Oracle { json: true, .. } | Command::Lattice { json: true, .. }
    );
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let kind = e.downcast_ref::<rsm_core::Error>().map_or("io", rsm_core::Error::kind);
            eprintln!("error: {e:#}");
            if json_errors {
                println!("{}", json!({"error": kind, "message": format!("{e:#}")}));
            }
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(io::parse_instance(&text)?)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let config = SolverConfig::from_env();
    match cli.command {
        Command::Solve { file, algo, json } => {
            let inst = load(&file)?;
            let strategy: Strategy = algo.parse()?;
            solve(&inst, strategy, &config, json)
        }
        Command::Oracle { file, json } => {
            let inst = load(&file)?;
            solve(&inst, Strategy::Brute, &config, json)
        }
        Command::Verify { file, x, cert } => {
            let inst = load(&file)?;
            let x = match (x, cert) {
                (Some(list), _) => {
                    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                    inst.subset_from_names(&names)?
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    io::parse_certificate(&inst, &text)?
                }
                (None, None) => Subset::empty(inst.n()),
            };
            let v = solvers::verify(&inst, &x)?;
            println!("{}", serde_json::to_string_pretty(&io::verification_value(&inst, &x, &v))?);
            Ok(if v.ok { 0 } else { 1 })
        }
        Command::Lattice { file, index, json, cap } => {
            let inst = load(&file)?;
            let lattices = inst.lattices()?;
            let l = lattices.get(index).ok_or_else(|| {
                rsm_core::Error::Precondition(format!("function index {index} out of range 0..{}", lattices.len()))
            })?;
            if json {
                println!("{}", serde_json::to_string_pretty(&io::lattice_value(inst.universe(), l, cap))?);
            } else {
                print!("{}", io::lattice_text(inst.universe(), l, cap));
            }
            Ok(0)
        }
        Command::Gen(args) => generate(&args),
    }
}

fn solve(inst: &Instance, strategy: Strategy, config: &SolverConfig, json: bool) -> anyhow::Result<u8> {
    let start = Instant::now();
    let report = solvers::dispatch(inst, strategy, config)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let value = io::report_value(inst, &report.outcome, report.algorithm, report.counters, ms);
    if json {
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        print_report(&value);
    }
    Ok(if report.outcome.is_feasible() { 0 } else { 1 })
}

fn names(v: &Value) -> String {
    let items: Vec<&str> = v.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
    format!("{{{}}}", items.join(", "))
}

fn print_report(v: &Value) {
    if v["feasible"] == json!(true) {
        println!("feasible ({})", v["algorithm"].as_str().unwrap_or(""));
        println!("X = {}", names(&v["X"]));
        for (i, w) in v["witnesses"].as_array().into_iter().flatten().enumerate() {
            println!("f{i}: distance {} to {}", w["distance"], names(&w["Y"]));
        }
    } else {
        println!("infeasible ({})", v["algorithm"].as_str().unwrap_or(""));
    }
}

fn generate(args: &GenArgs) -> anyhow::Result<u8> {
    if args.planted && !matches!(args.family, Family::Mcc) {
        anyhow::bail!("--planted applies to mcc only");
    }
    let mut rng = random::rng(args.seed);
    let (inst, cert): (Instance, Option<Subset>) = match args.family {
        Family::Sat1in3 => {
            anyhow::ensure!(args.vars >= 2, "sat1in3 needs at least two variables");
            let phi = random_formula(&mut rng, args.vars, args.clauses);
            let base = sat1in3_to_rsep(&phi);
            let rsep = if args.d > 1 { pad_rsep_threshold(&base, args.d)? } else { base.clone() };
            // Padding keeps a solution when `d` of the `2d` dummies join it.
            let cert = solve_1in3_brute(&phi).map(|a| {
                let x = sat1in3_certificate(&phi, &base, &a);
                let mut wide = Subset::from_indices(rsep.universe().len(), x.iter());
                if args.d > 1 {
                    for i in 1..=args.d {
                        wide.insert(rsep.index(&format!("pad:{i}")).expect("padding element"));
                    }
                }
                rsep.to_rsm_set(&wide)
            });
            (rsep_to_rsm(&rsep)?, cert)
        }
        Family::Rsep => {
            let rsep = random_rsep(&mut rng, args.n.unwrap_or(6), args.families, args.d);
            (rsep_to_rsm(&rsep)?, None)
        }
        Family::BalancedCut => {
            let g = random_terminal_graph(&mut rng, args.n.unwrap_or(6), args.p);
            (balancedcut_to_rsm(&g)?, None)
        }
        Family::Mcc => {
            let (g, clique) = planted_clique(&mut rng, args.k, args.n.unwrap_or(2), args.m);
            let red = mcc_to_rsm(&g)?;
            let x = red.certificate(&g, &clique);
            (red.instance, Some(x))
        }
    };
    let text = io::instance_to_string(&inst);
    match &args.output {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    if args.with_certificate {
        let path = args
            .output
            .as_ref()
            .map(|p| p.with_extension("cert.json"))
            .ok_or_else(|| anyhow::anyhow!("--with-certificate needs -o"))?;
        let Some(x) = cert else {
            eprintln!("no known solution; {} not written", path.display());
            return Ok(0);
        };
        let mut text = serde_json::to_string_pretty(&io::certificate_value(&inst, &x))?;
        text.push('\n');
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}
