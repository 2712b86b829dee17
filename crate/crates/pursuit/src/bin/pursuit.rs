use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pursuit::harness::{run_all, write_reports, Suite, SuiteConfig};
use pursuit::io::{parse_arc_list, read_arc_list, to_dot, write_arc_list};
use pursuit::report::{CheckJson, SolveJson, TraceJson};
use pursuit_core::constructions::{
    clique_substitute_all, clique_substitute_vertex, directed_cycle, directed_path, lemma3_stars,
    projective_plane_incidence_doubled, random_digraph, subdivide_arcs,
};
use pursuit_core::patterns::{find_induced, find_pk_star, find_pk_subgraph};
use pursuit_core::solver::{cop_number, solve, CopNumber, TieBreak, DEFAULT_STATE_BUDGET};
use pursuit_core::Digraph;

/// Cops and robbers on digraphs: generators, transformations, pattern
/// checks, an exact solver and verification suites.
#[derive(Parser)]
#[command(name = "pursuit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a digraph.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[command(flatten)]
        output: Output,
    },
    /// Apply a transformation to a digraph.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
        #[command(flatten)]
        output: Output,
    },
    /// Convert an arc-list file to DOT.
    Dot { input: PathBuf },
    /// Test for a forbidden pattern; prints JSON.
    Check(CheckArgs),
    /// Compute the cop number; prints JSON.
    Solve {
        input: PathBuf,
        /// Largest cop count tried (defaults to the vertex count).
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: u64,
    },
    /// Play one optimal game; prints the trace as JSON.
    Simulate {
        input: PathBuf,
        /// Cop count (defaults to the cop number).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        max_rounds: usize,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: u64,
        /// Break ties between equally good moves at random with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run verification suites and write CSV reports.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Arcs, global = true)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Arcs,
    Dot,
}

#[derive(Subcommand)]
enum Family {
    /// Directed path on k vertices.
    Path {
        #[arg(long)]
        k: usize,
    },
    /// Directed cycle on n vertices.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// One of the four oriented claws (index 0..=3).
    Star {
        #[arg(long)]
        index: usize,
    },
    /// Doubled point/line incidence digraph of PG(2, q), q prime.
    Projective {
        #[arg(long)]
        q: u64,
    },
    /// Seeded random digraph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum TransformOp {
    /// Clique substitution at one vertex, or at every vertex.
    Clique {
        input: PathBuf,
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Replace every arc by a directed path of m arcs.
    Subdivide {
        input: PathBuf,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "test")]
struct CheckSelect {
    /// Pattern digraph (arc-list file) to find as an induced subdigraph.
    #[arg(long)]
    induced: Option<PathBuf>,
    /// Directed path on k vertices as a subgraph.
    #[arg(long)]
    pk: Option<usize>,
    /// Ordered k-tuple with forward arcs exactly the consecutive ones.
    #[arg(long)]
    pk_star: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    #[command(flatten)]
    select: CheckSelect,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Theorem1,
    Theorem3,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    state_budget: u64,
    #[arg(long, default_value = "verify-out")]
    out_dir: PathBuf,
    /// Record per-instance wall time (makes the CSV non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Extra arc-list instances to run through every selected suite.
    #[arg(long)]
    instance: Vec<PathBuf>,
}

fn read_input(path: &Path) -> Result<Digraph> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return parse_arc_list(&text).context("<stdin>");
    }
    Ok(read_arc_list(path)?)
}

fn emit(output: &Output, d: &Digraph) -> Result<()> {
    let text = match output.format {
        Format::Arcs => write_arc_list(d),
        Format::Dot => to_dot(d),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text).with_context(|| path.display().to_string())?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn generate(family: &Family) -> Result<Digraph> {
    Ok(match *family {
        Family::Path { k } => directed_path(k)?,
        Family::Cycle { n } => directed_cycle(n)?,
        Family::Star { index } => match lemma3_stars().into_iter().nth(index) {
            Some(s) => s,
            None => bail!("star index must be 0..=3"),
        },
        Family::Projective { q } => projective_plane_incidence_doubled(q)?,
        Family::Random { n, p, seed } => random_digraph(n, p, seed)?,
    })
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let suites: Vec<Suite> = match args.suite {
        SuiteArg::Lemma1 => vec![Suite::Lemma1],
        SuiteArg::Lemma2 => vec![Suite::Lemma2],
        SuiteArg::Lemma3 => vec![Suite::Lemma3],
        SuiteArg::Lemma4 => vec![Suite::Lemma4],
        SuiteArg::Theorem1 => vec![Suite::Theorem1],
        SuiteArg::Theorem3 => vec![Suite::Theorem3],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut extra = Vec::new();
    for path in &args.instance {
        extra.push((path.display().to_string(), read_arc_list(path)?));
    }
    let configs: Vec<(Suite, SuiteConfig)> = suites
        .into_iter()
        .map(|suite| {
            let mut cfg = SuiteConfig::for_suite(suite);
            cfg.trials = args.trials.unwrap_or(cfg.trials);
            cfg.n_max = args.n_max.unwrap_or(cfg.n_max);
            cfg.p = args.p.unwrap_or(cfg.p);
            cfg.seed = args.seed;
            cfg.state_budget = args.state_budget;
            cfg.timing = args.timing;
            cfg.extra_instances = extra.clone();
            (suite, cfg)
        })
        .collect();
    let reports = run_all(&configs)?;
    write_reports(&args.out_dir, &reports)?;

    let mut violations = 0;
    let mut errors = 0;
    for r in &reports {
        let (v, e) = (r.violations().count(), r.errors().count());
        violations += v;
        errors += e;
        println!(
            "{:<9} instances={:<5} records={:<5} violations={v} errors={e}",
            r.suite.name(),
            r.instances_run(),
            r.records.len()
        );
        for rec in r.violations() {
            println!("  violation seed={} {} {}", rec.seed, rec.transform, rec.verdicts);
        }
        for rec in r.errors() {
            println!("  error seed={} {}", rec.seed, rec.verdicts);
        }
    }
    println!("reports written to {}", args.out_dir.display());
    Ok(if violations > 0 {
        ExitCode::from(1)
    } else if errors > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { family, output } => emit(&output, &generate(&family)?)?,
        Command::Transform { op, output } => {
            let d = match op {
                TransformOp::Clique { input, vertex: Some(v) } => {
                    clique_substitute_vertex(&read_input(&input)?, v)?
                }
                TransformOp::Clique { input, vertex: None } => clique_substitute_all(&read_input(&input)?)?,
                TransformOp::Subdivide { input, m } => subdivide_arcs(&read_input(&input)?, m)?,
            };
            emit(&output, &d)?;
        }
        Command::Dot { input } => print!("{}", to_dot(&read_input(&input)?)),
        Command::Check(args) => {
            let host = read_input(&args.input)?;
            let s = args.select;
            let json = if let Some(path) = s.induced {
                let pattern = read_input(&path)?;
                CheckJson::new("induced", None, find_induced(&host, &pattern))
            } else if let Some(k) = s.pk {
                CheckJson::new("pk", Some(k), find_pk_subgraph(&host, k)?)
            } else if let Some(k) = s.pk_star {
                CheckJson::new("pk-star", Some(k), find_pk_star(&host, k)?)
            } else {
                unreachable!("clap requires one test")
            };
            print_json(&json)?;
        }
        Command::Solve { input, k_max, state_budget } => {
            let d = read_input(&input)?;
            let k_max = k_max.unwrap_or(d.order());
            let result = cop_number(&d, k_max, state_budget)?;
            print_json(&SolveJson::new(&d, k_max, &result))?;
        }
        Command::Simulate { input, k, k_max, max_rounds, state_budget, seed } => {
            let d = read_input(&input)?;
            let k = match k {
                Some(k) => k,
                None => match cop_number(&d, k_max.unwrap_or(d.order()), state_budget)? {
                    CopNumber::Exact { cops, .. } => cops,
                    CopNumber::Exceeds { k_max } => k_max,
                },
            };
            let ties = seed.map_or(TieBreak::Lexicographic, TieBreak::Seeded);
            let trace = solve(&d, k, state_budget)?.play_trace(max_rounds, ties)?;
            print_json(&TraceJson::new(k, &trace))?;
        }
        Command::Verify(args) => return verify(&args),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
