use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use liardom::embedding::{embed_graph_with_budget, ensure_valid, DEFAULT_ROUTER_BUDGET};
use liardom::formats::{self, FileKind};
use liardom::gen::{planar_grid_graph, random_points};
use liardom::graph::{is_dominating, is_liars_dominating, SimpleGraph};
use liardom::render::{render_embedding, render_points};
use liardom::solvers::{branch_and_bound, brute_force_minimum, greedy, SolveResult};
use liardom::{build_udg, reduce, theorem_check, Budget, Error, GridEmbedding, Problem};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RoutingFailed { .. } | Error::Infeasible(_) => EXIT_INFEASIBLE,
            Error::Falsification(_) | Error::NotDominating(_) | Error::NotLiarsDominating(_) => {
                EXIT_FAIL
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<u8, Failure>;

#[derive(Parser, Debug)]
#[command(
    name = "liardom",
    version,
    about = "Liar's domination on unit disk graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Route a graph onto the 40-unit grid.
    Embed {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Routing attempts before giving up.
        #[arg(long, default_value_t = DEFAULT_ROUTER_BUDGET)]
        budget: usize,
    },
    /// Build the gadget point set of a grid-embedded graph.
    Reduce {
        #[arg(short, long)]
        input: PathBuf,
        /// Embedding file; the graph is routed when omitted.
        #[arg(short, long)]
        embedding: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the provenance of every point.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Find a small or minimum (liar's) dominating set.
    Solve {
        /// Graph or points file.
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Check a solution against an instance.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
        #[arg(long, default_value = "lds")]
        problem: Problem,
    },
    /// Compare γ(G) + 4l + 3n with γ_LR of the reduced instance.
    Theorem {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        embedding: Option<PathBuf>,
        #[arg(long, default_value_t = Budget::default().max_subsets)]
        budget: u64,
    },
    /// Draw an embedding or a point set as SVG.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded instance generators.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct SolveOpts {
    #[arg(long, default_value = "lds")]
    problem: Problem,
    #[arg(long, value_enum, default_value_t = Method::Bnb)]
    method: Method,
    #[arg(long, default_value_t = Budget::default().max_subsets)]
    budget: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Brute,
    Bnb,
    Greedy,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    what: GenWhat,
}

#[derive(Subcommand, Debug)]
enum GenWhat {
    /// Connected planar graph of maximum degree 3.
    Graph {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(2..=4096))]
        n: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the straight grid embedding the graph was sampled with.
        #[arg(long)]
        embedding: Option<PathBuf>,
    },
    /// Distinct random points in a square of the given side (deci-units).
    Points {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        count: usize,
        #[arg(long, default_value_t = 100)]
        side: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parsed<T>(path: &Path, r: Result<T, formats::ParseError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    parsed(path, formats::parse_graph(&read(path)?))
}

fn load_embedding(path: &Path) -> Result<GridEmbedding, Failure> {
    parsed(path, formats::parse_embedding(&read(path)?))
}

/// A graph file, or the unit disk graph of a points file.
fn load_instance(path: &Path) -> Result<SimpleGraph, Failure> {
    let text = read(path)?;
    match formats::sniff(&text) {
        FileKind::Graph => parsed(path, formats::parse_graph(&text)),
        FileKind::Points => {
            let pts = parsed(path, formats::parse_points(&text))?;
            Ok(build_udg(&pts)?.to_graph())
        }
        _ => Err(Failure::usage(format!(
            "{}: expected a graph or points file",
            path.display()
        ))),
    }
}

fn embedding_for(g: &SimpleGraph, path: Option<&Path>) -> Result<GridEmbedding, Failure> {
    match path {
        Some(p) => {
            let emb = load_embedding(p)?;
            ensure_valid(g, &emb)?;
            Ok(emb)
        }
        None => Ok(embed_graph_with_budget(g, DEFAULT_ROUTER_BUDGET)?),
    }
}

fn solve(g: &SimpleGraph, opts: &SolveOpts) -> Result<SolveResult, Error> {
    let budget = Budget::new(opts.budget);
    match opts.method {
        Method::Brute => brute_force_minimum(opts.problem, g, budget),
        Method::Bnb => branch_and_bound(opts.problem, g, budget),
        Method::Greedy => greedy(opts.problem, g),
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Embed {
            input,
            output,
            budget,
        } => {
            let g = load_graph(&input)?;
            let emb = embed_graph_with_budget(&g, budget)?;
            emit(output.as_deref(), &formats::write_embedding(&emb))?;
        }
        Command::Reduce {
            input,
            embedding,
            output,
            provenance,
        } => {
            let g = load_graph(&input)?;
            let emb = embedding_for(&g, embedding.as_deref())?;
            let red = reduce(&g, &emb)?;
            if let Some(p) = provenance.as_deref() {
                emit(Some(p), &formats::write_provenance(&red.map))?;
            }
            emit(output.as_deref(), &formats::write_points(&red.instance))?;
            eprintln!(
                "n={} l={} points={} edges={}",
                red.map.n,
                red.map.l,
                red.instance.len(),
                red.instance.edges().len()
            );
        }
        Command::Solve {
            input,
            output,
            opts,
        } => {
            let g = load_instance(&input)?;
            let r = solve(&g, &opts)?;
            eprintln!(
                "status={:?} subsets={} nodes={} elapsed={:?}",
                r.status, r.stats.subsets_examined, r.stats.nodes_expanded, r.stats.elapsed
            );
            let Some(sol) = r.solution else {
                eprintln!("no {} exists", opts.problem);
                return Ok(EXIT_INFEASIBLE);
            };
            eprintln!("size={}", sol.len());
            emit(output.as_deref(), &formats::write_solution(&sol))?;
        }
        Command::Verify {
            input,
            solution,
            problem,
        } => {
            let g = load_instance(&input)?;
            let d = parsed(&solution, formats::parse_solution(&read(&solution)?))?;
            let report = match problem {
                Problem::Ds => is_dominating(&g, &d)?,
                Problem::Lds => is_liars_dominating(&g, &d)?,
            };
            println!("{report}");
            if !report.ok() {
                return Ok(EXIT_FAIL);
            }
        }
        Command::Theorem {
            input,
            embedding,
            budget,
        } => {
            let g = load_graph(&input)?;
            let emb = embedding_for(&g, embedding.as_deref())?;
            let report = theorem_check(&g, Some(&emb), Budget::new(budget))?;
            println!("{}", report.record());
            print!("{}", report.table());
            if !report.pass {
                return Ok(EXIT_FAIL);
            }
        }
        Command::Render { input, output } => {
            let text = read(&input)?;
            let svg = match formats::sniff(&text) {
                FileKind::Embedding => {
                    render_embedding(&parsed(&input, formats::parse_embedding(&text))?)
                }
                FileKind::Points => {
                    let pts = parsed(&input, formats::parse_points(&text))?;
                    render_points(&build_udg(&pts)?)
                }
                _ => {
                    return Err(Failure::usage(format!(
                        "{}: expected an embedding or points file",
                        input.display()
                    )))
                }
            };
            emit(output.as_deref(), &svg)?;
        }
        Command::Gen(GenArgs { what }) => match what {
            GenWhat::Graph {
                seed,
                n,
                output,
                embedding,
            } => {
                let (g, emb) = planar_grid_graph(seed, n as usize);
                if let Some(p) = embedding.as_deref() {
                    emit(Some(p), &formats::write_embedding(&emb))?;
                }
                emit(output.as_deref(), &formats::write_graph(&g))?;
            }
            GenWhat::Points {
                seed,
                count,
                side,
                output,
            } => {
                if side <= 0 || side > 1_000_000 || (count as i64) > side.saturating_mul(side) {
                    return Err(Failure::usage(format!(
                        "cannot place {count} distinct points in a square of side {side}"
                    )));
                }
                let pts = random_points(seed, count, side);
                emit(output.as_deref(), &formats::write_points(&build_udg(&pts)?))?;
            }
        },
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
