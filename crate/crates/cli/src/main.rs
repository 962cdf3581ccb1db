mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use critgroup::action::LabelingError;
use critgroup::critical::{critical_group, CriticalError};
use critgroup::decomposition::{sweep, DecompositionContext, DecompositionError, PullbackSum};
use critgroup::families::{ChainBase, FamilyError, FamilySpec};
use critgroup::io::{GraphFile, IoError};
use critgroup::{oracle, GraphError, Multigraph};

use output::{ComputeOutput, Failure, OracleOutput, VerifyOutput};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_DISCONNECTED: u8 = 3;
pub const EXIT_LABELING: u8 = 4;
pub const EXIT_NON_HARMONIC: u8 = 5;

const EXIT_CODES: &str = "\
Exit codes:
  0  ok
  1  verification failed
  2  parse error or invalid input
  3  graph is disconnected
  4  ORBIT_SIZE or LABELING_IMPOSSIBLE (orbits do not admit the labeling)
  5  action is not harmonic";

#[derive(Parser)]
#[command(name = "critgroup", version, about = "Critical groups of multigraphs and their dihedral decompositions")]
#[command(after_help = EXIT_CODES)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors, order and spanning-tree count of K(G).
    Compute {
        /// Graph file, or `-` for stdin.
        file: PathBuf,
    },
    /// Decomposition checks for a graph file carrying sigma1/sigma2.
    Verify {
        /// Graph file with actions, or `-` for stdin.
        file: PathBuf,
        /// Random divisors in the membership/split sweep (0 skips it).
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Brute-force cross-checks (small graphs only).
        #[arg(long)]
        oracle: bool,
    },
    /// Print a family instance as a graph file with actions.
    Family {
        #[arg(value_enum)]
        name: FamilyName,
        #[arg(long)]
        n: Option<usize>,
        /// Circulant steps, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        steps: Vec<usize>,
        /// Base graph for `chained`: edge, path, square, k4 or kite.
        #[arg(long, default_value = "square")]
        base: String,
        /// Number of rings for `linked-rings`.
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Circulant,
    Concentric,
    Klein,
    Intro,
    Chained,
    Ring,
    LinkedRings,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { file } => compute(&file).map(|o| o.render(cli.format)),
        Command::Verify { file, trials, seed, oracle } => {
            verify(&file, trials, seed, oracle).map(|o| o.render(cli.format))
        }
        Command::Family { name, n, steps, base, r } => family(name, n, steps, &base, r),
    };
    match result {
        Ok((text, code)) => {
            println!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            match cli.format {
                Format::Json => println!("{}", f.to_json()),
                Format::Text => eprintln!("{f}"),
            }
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &PathBuf) -> Result<GraphFile, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::invalid(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?
    };
    GraphFile::parse(&text).map_err(io_failure)
}

fn io_failure(e: IoError) -> Failure {
    match e {
        IoError::Graph(g) => graph_failure(g),
        e => Failure::invalid(e.to_string()),
    }
}

fn graph_failure(e: GraphError) -> Failure {
    match e {
        GraphError::Disconnected => Failure::new(EXIT_DISCONNECTED, "disconnected", e.to_string()),
        e => Failure::invalid(e.to_string()),
    }
}

fn decomposition_failure(e: DecompositionError) -> Failure {
    match e {
        DecompositionError::Labeling(l @ LabelingError::NotHarmonic { .. }) => {
            Failure::new(EXIT_NON_HARMONIC, "non_harmonic", l.to_string())
        }
        DecompositionError::Labeling(l @ LabelingError::OrbitSize { .. }) => {
            Failure::new(EXIT_LABELING, "orbit_size", l.to_string())
        }
        DecompositionError::Labeling(l @ LabelingError::LabelingImpossible { .. }) => {
            Failure::new(EXIT_LABELING, "labeling_impossible", l.to_string())
        }
        DecompositionError::Critical(CriticalError::Graph(g)) => graph_failure(g),
        e => Failure::invalid(e.to_string()),
    }
}

fn require_connected(g: &Multigraph) -> Result<(), Failure> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(graph_failure(GraphError::Disconnected))
    }
}

fn compute(path: &PathBuf) -> Result<ComputeOutput, Failure> {
    let g = read_input(path)?.graph().map_err(io_failure)?;
    require_connected(&g)?;
    let cg = critical_group(&g).map_err(|e| decomposition_failure(e.into()))?;
    let trees = g.spanning_tree_count().map_err(graph_failure)?;
    Ok(ComputeOutput::new(&g, cg.group().clone(), trees))
}

fn verify(path: &PathBuf, trials: usize, seed: u64, use_oracle: bool) -> Result<VerifyOutput, Failure> {
    let (g, action) = read_input(path)?.load().map_err(io_failure)?;
    let action =
        action.ok_or_else(|| Failure::invalid("graph file has no \"actions\"; verify needs sigma1 and sigma2"))?;
    require_connected(&g)?;
    let ctx = match DecompositionContext::new(&g, &action) {
        Ok(ctx) => ctx,
        Err(e) => {
            let mut f = decomposition_failure(e);
            if f.code == EXIT_LABELING {
                // the sum map needs no labeling, so the order obstruction is still available
                if let Ok(s) = PullbackSum::new(&g, action.sigma1(), action.sigma2()) {
                    f.certificate = Some(s.direct_sum_certificate());
                }
            }
            return Err(f);
        }
    };
    let mut report = ctx.report().map_err(decomposition_failure)?;
    if trials > 0 {
        report.attach_sweep(sweep(&ctx, trials, seed).map_err(decomposition_failure)?);
    }
    let oracle = use_oracle.then(|| match oracle::cross_check(&ctx) {
        Ok(checks) => OracleOutput { refused: None, checks },
        Err(e) => OracleOutput { refused: Some(e.to_string()), checks: Vec::new() },
    });
    Ok(VerifyOutput::new(&g, action.n(), report, oracle))
}

fn family(
    name: FamilyName,
    n: Option<usize>,
    steps: Vec<usize>,
    base: &str,
    r: usize,
) -> Result<(String, u8), Failure> {
    let need_n = |what: &str| n.ok_or_else(|| Failure::invalid(format!("family {what} needs --n")));
    let spec = match name {
        FamilyName::Circulant => FamilySpec::Circulant { n: need_n("circulant")?, steps },
        FamilyName::Concentric => FamilySpec::Concentric { n: need_n("concentric")? },
        FamilyName::Klein => FamilySpec::Klein,
        FamilyName::Intro => FamilySpec::Intro,
        FamilyName::Chained => {
            let base = ChainBase::parse(base).ok_or_else(|| {
                let names: Vec<_> = ChainBase::ALL.iter().map(|b| b.name()).collect();
                Failure::invalid(format!("unknown base {base:?}; expected one of {}", names.join(", ")))
            })?;
            FamilySpec::Chained { base, n: need_n("chained")? }
        }
        FamilyName::Ring => FamilySpec::Ring { n: need_n("ring")? },
        FamilyName::LinkedRings => FamilySpec::LinkedRings { n: need_n("linked-rings")?, r },
    };
    let f = spec.build().map_err(|e| match e {
        FamilyError::NonHarmonic(..) => Failure::new(EXIT_NON_HARMONIC, "non_harmonic", e.to_string()),
        e => Failure::invalid(e.to_string()),
    })?;
    Ok((GraphFile::from_graph(&f.graph, Some(&f.action)).to_json(), EXIT_OK))
}
