//! Command-line front end: solve, verify, oracle, and gen over DIMACS files.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 internal error, and —
//! for `verify` — 3 when the certificate is rejected. Report lines on
//! stdout use a stable leading keyword (`RESULT`, `ROOT_TRIANGLE`,
//! `COLORING`, `TRIANGLES_TESTED`, `RULE_APPLICATIONS`, `TIME_MS`, `LOG`,
//! `N`, `M`, `VALID`, `INVALID`, `COLORABLE`, `NOT_COLORABLE`) so harnesses
//! can parse them; everything informational goes to stderr.

use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use tricolor::{
    gen_edge_subgraph, gen_stacked_triangulation, gen_wheel, is_3_colorable, is_3_colorable_jobs,
    oracle_3color_capped, parse_dimacs, test_triangle, verify, Graph, OracleAnswer, Seed,
    SolveStats, Triangle, TriangleResult, Verdict, VertexId, VerifyResult, DEFAULT_VERTEX_CAP,
};

#[derive(Parser)]
#[command(
    name = "tricolor",
    version,
    about = "Triangle-rooted 3-colorability with replayable non-colorability certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide 3-colorability of a DIMACS graph
    Solve {
        /// DIMACS graph file
        input: PathBuf,
        /// On NO, write the machine certificate here
        #[arg(long, value_name = "PATH")]
        proof: Option<PathBuf>,
        /// On NO, write the prose proof here
        #[arg(long, value_name = "PATH")]
        human_proof: Option<PathBuf>,
        /// Collapse UNDETERMINED into YES
        #[arg(long)]
        paper_compat: bool,
        /// Print the undepurated forcing log of the decisive triangle as LOG lines
        #[arg(long)]
        full_log: bool,
        /// Test a single root triangle, e.g. 1,2,3
        #[arg(long, value_name = "A,B,C")]
        triangle: Option<String>,
        /// Worker threads for testing root triangles
        #[arg(long, value_name = "K", default_value_t = 1)]
        jobs: usize,
    },
    /// Replay a certificate against a graph
    Verify {
        /// DIMACS graph file
        graph: PathBuf,
        /// Certificate file
        certificate: PathBuf,
    },
    /// Decide 3-colorability by exhaustive search, as ground truth
    Oracle {
        /// DIMACS graph file
        input: PathBuf,
        /// Vertex cap overriding the default
        #[arg(long, value_name = "N")]
        cap: Option<u32>,
    },
    /// Write a generated instance as a DIMACS file
    #[command(subcommand)]
    Gen(GenFamily),
}

#[derive(Subcommand)]
enum GenFamily {
    /// Wheel: a k-cycle plus a hub (odd k is not 3-colorable)
    Wheel {
        /// Cycle length, at least 3
        k: u32,
        /// Output DIMACS path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Random planar stacked triangulation (never 3-colorable)
    Stacked {
        /// Vertex count, at least 3
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output DIMACS path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Keep each edge of a base graph independently with probability KEEP
    Subgraph {
        /// Base DIMACS graph file
        base: PathBuf,
        #[arg(long, value_name = "KEEP")]
        keep: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output DIMACS path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
}

/// Failure carrying its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve { input, proof, human_proof, paper_compat, full_log, triangle, jobs } => {
            cmd_solve(&input, proof, human_proof, paper_compat, full_log, triangle, jobs)
        }
        Command::Verify { graph, certificate } => cmd_verify(&graph, &certificate),
        Command::Oracle { input, cap } => cmd_oracle(&input, cap),
        Command::Gen(family) => cmd_gen(family),
    }
}

/// Reads and parses a DIMACS graph, reporting warnings on stderr.
fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| Failure::usage(format!("{}: {err}", path.display())))?;
    let (graph, warnings) = parse_dimacs(&text)
        .map_err(|err| Failure::usage(format!("{}: {err}", path.display())))?;
    for warning in warnings {
        eprintln!("warning: {}: {warning}", path.display());
    }
    Ok(graph)
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|err| Failure::internal(format!("{}: {err}", path.display())))
}

fn parse_triangle_arg(g: &Graph, arg: &str) -> Result<Triangle, Failure> {
    let ids: Vec<VertexId> = arg
        .split(',')
        .map(|part| part.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("--triangle expects three vertex ids, got '{arg}'")))?;
    let [a, b, c] = ids[..] else {
        return Err(Failure::usage(format!("--triangle expects three vertex ids, got '{arg}'")));
    };
    Triangle::in_graph(g, a, b, c)
        .ok_or_else(|| Failure::usage(format!("{arg} is not a triangle of the input graph")))
}

fn cmd_solve(
    input: &Path,
    proof: Option<PathBuf>,
    human_proof: Option<PathBuf>,
    paper_compat: bool,
    full_log: bool,
    triangle: Option<String>,
    jobs: usize,
) -> Result<u8, Failure> {
    let g = load_graph(input)?;
    eprintln!(
        "note: planarity is not checked; NO certificates are sound on any simple graph, \
         while the forcing method itself is aimed at planar inputs"
    );
    let started = Instant::now();
    let verdict = match &triangle {
        Some(arg) => {
            let t = parse_triangle_arg(&g, arg)?;
            let (result, log) = test_triangle(&g, t);
            let stats = SolveStats {
                triangles_tested: 1,
                rule_applications: log.statements().len() - 1
                    + usize::from(log.contradiction().is_some()),
            };
            match result {
                TriangleResult::No(certificate) => Verdict::No { certificate, root: t, stats },
                TriangleResult::Yes(coloring) => Verdict::Yes { coloring, stats },
                TriangleResult::Undetermined => Verdict::Undetermined { stats },
            }
        }
        None if jobs > 1 => is_3_colorable_jobs(&g, jobs),
        None => is_3_colorable(&g),
    };
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let stats = verdict.stats();
    match &verdict {
        Verdict::No { certificate, root, .. } => {
            println!("RESULT NO");
            println!("ROOT_TRIANGLE {} {} {}", root.a, root.b, root.c);
            if let Some(path) = &proof {
                write_file(path, &format!("{}\n", certificate.render_machine()))?;
            }
            if let Some(path) = &human_proof {
                write_file(path, &certificate.render_human())?;
            }
            if full_log {
                let (_, log) = test_triangle(&g, *root);
                for stmt in log.statements() {
                    println!("LOG {}", stmt.machine_line());
                }
                if let Some(stmt) = log.contradiction() {
                    println!("LOG {}", stmt.machine_line());
                }
            }
        }
        Verdict::Yes { coloring, .. } => {
            println!("RESULT YES");
            let assignments: Vec<String> =
                coloring.iter().map(|(v, set)| format!("{v}={set}")).collect();
            println!("COLORING {}", assignments.join(" "));
        }
        Verdict::Undetermined { .. } => {
            if paper_compat {
                println!("RESULT YES");
            } else {
                println!("RESULT UNDETERMINED");
            }
        }
    }
    println!("TRIANGLES_TESTED {}", stats.triangles_tested);
    println!("RULE_APPLICATIONS {}", stats.rule_applications);
    println!("TIME_MS {elapsed_ms:.3}");
    Ok(0)
}

fn cmd_verify(graph: &Path, certificate: &Path) -> Result<u8, Failure> {
    let g = load_graph(graph)?;
    let text = std::fs::read_to_string(certificate)
        .map_err(|err| Failure::usage(format!("{}: {err}", certificate.display())))?;
    match verify(&g, &text) {
        VerifyResult::Valid => {
            println!("VALID");
            Ok(0)
        }
        VerifyResult::Invalid { line, reason } => {
            println!("INVALID {line} {reason}");
            Ok(3)
        }
    }
}

fn cmd_oracle(input: &Path, cap: Option<u32>) -> Result<u8, Failure> {
    let g = load_graph(input)?;
    let answer = oracle_3color_capped(&g, cap.unwrap_or(DEFAULT_VERTEX_CAP))
        .map_err(|err| Failure::usage(err.to_string()))?;
    match answer {
        OracleAnswer::Colorable(witness) => {
            let assignments: Vec<String> =
                witness.iter().map(|(v, color)| format!("{v}={color}")).collect();
            println!("COLORABLE {}", assignments.join(" "));
        }
        OracleAnswer::NotColorable => println!("NOT_COLORABLE"),
    }
    Ok(0)
}

fn cmd_gen(family: GenFamily) -> Result<u8, Failure> {
    let (graph, out) = match family {
        GenFamily::Wheel { k, out } => {
            (gen_wheel(k).map_err(|err| Failure::usage(err.to_string()))?, out)
        }
        GenFamily::Stacked { n, seed, out } => (
            gen_stacked_triangulation(n, Seed(seed))
                .map_err(|err| Failure::usage(err.to_string()))?,
            out,
        ),
        GenFamily::Subgraph { base, keep, seed, out } => {
            let g = load_graph(&base)?;
            (
                gen_edge_subgraph(&g, keep, Seed(seed))
                    .map_err(|err| Failure::usage(err.to_string()))?,
                out,
            )
        }
    };
    write_file(&out, &format!("{}\n", graph.to_dimacs()))?;
    println!("N {}", graph.vertex_count());
    println!("M {}", graph.edge_count());
    Ok(0)
}
