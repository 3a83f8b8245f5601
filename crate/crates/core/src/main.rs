use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crazyfrog::board::{verify, CfpInstance, Jump, Outcome};
use crazyfrog::error::{Error, Result};
use crazyfrog::gadgets::{self, StripParams};
use crazyfrog::generate::make_instance;
use crazyfrog::io::{self, InstanceBundle, Payload, Witness};
use crazyfrog::prd::{self, PrdOutcome};
use crazyfrog::reduce::{self, ham_oracle};
use crazyfrog::solver::{oracle_enumerate, solve, SearchLimits, SolveResult, ORACLE_MAX_JUMPS};

const EXIT_UNSAT: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "crazyfrog",
    version,
    about = "Crazy Frog Puzzle solver and reduction compiler"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a puzzle; prints a sign string, UNSAT or INCONCLUSIVE <nodes>.
    Solve {
        #[command(flatten)]
        puzzle: PuzzleArgs,
        /// Node budget; 0 means unlimited.
        #[arg(long, default_value_t = 0)]
        budget: u64,
    },
    /// Replay a sign vector.
    Verify {
        #[command(flatten)]
        puzzle: PuzzleArgs,
        /// Sign string, or a file holding one.
        #[arg(long)]
        signs: String,
    },
    /// Run one reduction stage, or all of them.
    Reduce {
        #[arg(long, value_enum)]
        stage: Stage,
        /// Grid-graph text file or bundle.
        #[arg(long, conflicts_with_all = ["board", "jumps"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "jumps")]
        board: Option<PathBuf>,
        #[arg(long, requires = "board")]
        jumps: Option<PathBuf>,
        /// Write the bundle here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a gadget jump sequence.
    GenGadget {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: u32,
        /// Also print the companion board.
        #[arg(long)]
        fixture: bool,
    },
    /// Exhaustive ground truth at small sizes.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Permutation reconstruction from differences.
    #[command(subcommand)]
    Prd(PrdCommand),
    /// Generate a solvable puzzle bundle from a random walk.
    MakeInstance {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        /// Number of jumps.
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the interchange file read by the browser UI.
    ExportUi {
        /// Puzzle bundle.
        #[arg(long, conflicts_with_all = ["board", "jumps"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "jumps")]
        board: Option<PathBuf>,
        #[arg(long, requires = "board")]
        jumps: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
        /// Include the bundle's witness.
        #[arg(long)]
        with_solution: bool,
    },
}

#[derive(Args)]
struct PuzzleArgs {
    #[arg(long)]
    board: PathBuf,
    #[arg(long)]
    jumps: PathBuf,
}

#[derive(Copy, Clone, ValueEnum)]
enum Stage {
    Ham2cfp,
    Cfp2lin,
    Lin2empty,
    Empty2prd,
    Full,
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    Binary,
    BinaryRev,
    Fill,
    Hole,
    Selector,
    StripCleanup,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// All solutions of a puzzle by trying every sign vector.
    Cfp {
        #[command(flatten)]
        puzzle: PuzzleArgs,
        #[arg(long, default_value_t = ORACLE_MAX_JUMPS)]
        max_m: usize,
    },
    /// Hamiltonian s-t path of a grid graph.
    Ham {
        #[arg(long)]
        graph: PathBuf,
    },
    /// All solutions of a PRD instance.
    Prd {
        #[arg(long)]
        diffs: PathBuf,
    },
}

#[derive(Subcommand)]
enum PrdCommand {
    Solve {
        #[arg(long)]
        diffs: PathBuf,
        #[arg(long, default_value_t = 0)]
        budget: u64,
    },
    Verify {
        #[arg(long)]
        diffs: PathBuf,
        /// Permutation, or a file holding one.
        #[arg(long)]
        perm: String,
    },
    /// Print an equivalent 1-D puzzle as a bundle.
    ToCfp {
        #[arg(long)]
        diffs: PathBuf,
    },
    /// Differences of an empty-board 1-D puzzle with the frog on the left.
    FromCfp {
        #[command(flatten)]
        puzzle: PuzzleArgs,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A literal argument, or the contents of the file it names.
fn literal_or_file(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if p.is_file() {
        read(p)
    } else {
        Ok(arg.to_string())
    }
}

fn load_puzzle(args: &PuzzleArgs) -> Result<CfpInstance> {
    io::parse_cfp(&read(&args.board)?, &read(&args.jumps)?)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(Error::from),
            }
        }
    }
}

fn load_bundle(
    input: Option<&Path>,
    board: Option<&Path>,
    jumps: Option<&Path>,
) -> Result<InstanceBundle> {
    match (input, board, jumps) {
        (Some(p), _, _) => {
            let text = read(p)?;
            if text.trim_start().starts_with('{') {
                io::parse_bundle(&text)
            } else {
                Ok(InstanceBundle::new(Payload::GridGraph(
                    io::parse_grid_graph(&text)?,
                )))
            }
        }
        (None, Some(b), Some(j)) => Ok(InstanceBundle::new(Payload::Cfp2d(io::parse_cfp(
            &read(b)?,
            &read(j)?,
        )?))),
        _ => Err(Error::Contract(
            "give --input, or --board with --jumps".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { puzzle, budget } => {
            let inst = load_puzzle(&puzzle)?;
            Ok(match solve(&inst, SearchLimits::with_budget(budget)) {
                SolveResult::Solved(s) => {
                    println!("{s}");
                    0
                }
                SolveResult::Unsolvable => {
                    println!("UNSAT");
                    EXIT_UNSAT
                }
                SolveResult::Inconclusive(n) => {
                    println!("INCONCLUSIVE {n}");
                    EXIT_INCONCLUSIVE
                }
            })
        }
        Command::Verify { puzzle, signs } => {
            let inst = load_puzzle(&puzzle)?;
            let signs = io::parse_signs(&literal_or_file(&signs)?)?;
            let trace = verify(&inst, &signs)?;
            Ok(match trace.outcome {
                Outcome::Complete => {
                    println!("COMPLETE");
                    0
                }
                Outcome::FailedAt { step, kind } => {
                    println!("FAILED at jump {step}: {kind}");
                    EXIT_UNSAT
                }
            })
        }
        Command::Reduce {
            stage,
            input,
            board,
            jumps,
            output,
        } => {
            let bundle = load_bundle(input.as_deref(), board.as_deref(), jumps.as_deref())?;
            let out = reduce_stage(stage, bundle)?;
            emit(&io::serialize_bundle(&out), output.as_deref())?;
            Ok(0)
        }
        Command::GenGadget { family, k, fixture } => {
            gen_gadget(family, k, fixture)?;
            Ok(0)
        }
        Command::Oracle(cmd) => oracle(cmd),
        Command::Prd(cmd) => prd_command(cmd),
        Command::MakeInstance {
            width,
            height,
            length,
            seed,
            output,
        } => {
            let g = make_instance(width, height, length, seed)?;
            let bundle = InstanceBundle {
                payload: Payload::Cfp2d(g.instance),
                provenance: vec![format!(
                    "generator=chacha8 seed={seed} width={width} height={height} length={length}"
                )],
                witness: Some(Witness::Signs(g.witness)),
            };
            emit(&io::serialize_bundle(&bundle), output.as_deref())?;
            Ok(0)
        }
        Command::ExportUi {
            input,
            board,
            jumps,
            output,
            with_solution,
        } => {
            let bundle = load_bundle(input.as_deref(), board.as_deref(), jumps.as_deref())?;
            let ui = io::export_ui(&bundle, &output, with_solution)?;
            eprintln!(
                "wrote {} ({}x{}, {} jumps)",
                output.display(),
                ui.width,
                ui.height,
                ui.jumps.len()
            );
            Ok(0)
        }
    }
}

fn reduce_stage(stage: Stage, bundle: InstanceBundle) -> Result<InstanceBundle> {
    let mut provenance = bundle.provenance.clone();
    let wrong = |want: &str| {
        Error::Contract(format!(
            "stage expects a {want} input, got {}",
            bundle.payload.kind()
        ))
    };
    let payload = match (stage, &bundle.payload) {
        (Stage::Ham2cfp, Payload::GridGraph(g)) => {
            let (inst, layout) = reduce::reduce_ham_to_cfp(g)?;
            provenance.push(format!(
                "stage=ham2cfp width={} height={} jumps={} k={}",
                layout.width,
                layout.height,
                inst.jumps.len(),
                layout.params.k
            ));
            Payload::Cfp2d(inst)
        }
        (Stage::Cfp2lin, Payload::Cfp2d(inst)) => {
            let out = reduce::reduce_2d_to_1d(inst)?;
            let left = reduce::normalize_start_leftmost(&out.instance);
            provenance.push(format!(
                "stage=cfp2lin width={} height=1 jumps={}{}",
                left.length,
                left.jumps.len(),
                out.diagnostic
                    .map(|d| format!(" note=\"{d}\""))
                    .unwrap_or_default()
            ));
            Payload::Cfp1d(left)
        }
        (Stage::Lin2empty, Payload::Cfp1d(inst)) => {
            let inst = if inst.start == 0 {
                inst.clone()
            } else {
                reduce::normalize_start_leftmost(inst)
            };
            let out = reduce::reduce_1d_to_empty(&inst)?;
            provenance.push(format!(
                "stage=lin2empty width={} height=1 jumps={}{}",
                out.instance.length,
                out.instance.jumps.len(),
                out.diagnostic
                    .map(|d| format!(" note=\"{d}\""))
                    .unwrap_or_default()
            ));
            Payload::Cfp1d(out.instance)
        }
        (Stage::Empty2prd, Payload::Cfp1d(inst)) => {
            let p = prd::cfp1d_to_prd(inst)?;
            provenance.push(format!("stage=empty2prd n={}", p.n()));
            Payload::Prd(p)
        }
        (Stage::Full, Payload::GridGraph(g)) => {
            let full = reduce::reduce_full(g)?;
            provenance.extend(full.provenance.0.iter().map(|r| r.to_string()));
            Payload::Prd(full.prd)
        }
        (Stage::Ham2cfp | Stage::Full, _) => return Err(wrong("gridgraph")),
        (Stage::Cfp2lin, _) => return Err(wrong("cfp2d")),
        (Stage::Lin2empty | Stage::Empty2prd, _) => return Err(wrong("cfp1d")),
    };
    Ok(InstanceBundle {
        payload,
        provenance,
        witness: None,
    })
}

fn gen_gadget(family: Family, k: u32, fixture: bool) -> Result<()> {
    let p = StripParams::new(k)?;
    let horizontal = |j: Vec<i64>| j.into_iter().map(Jump::horizontal).collect::<Vec<_>>();
    let (jumps, board): (Vec<Jump>, Option<String>) = match family {
        Family::Binary => {
            let f = gadgets::binary_fixture(k)?;
            (
                horizontal(f.jumps.clone()),
                Some(io::serialize_board_1d(&f)),
            )
        }
        Family::BinaryRev => {
            let f = gadgets::binary_rev_fixture(k, 0)?;
            (
                horizontal(f.jumps.clone()),
                Some(io::serialize_board_1d(&f)),
            )
        }
        Family::Fill => {
            let f = gadgets::strip_line_fixture(p, gadgets::gen_fill(p));
            (
                horizontal(f.jumps.clone()),
                Some(io::serialize_board_1d(&f)),
            )
        }
        Family::Hole => {
            let f = gadgets::strip_line_fixture(p, gadgets::gen_hole(p));
            (
                horizontal(f.jumps.clone()),
                Some(io::serialize_board_1d(&f)),
            )
        }
        Family::Selector => {
            let f = gadgets::selector_fixture(p)?;
            (f.jumps.clone(), Some(io::serialize_board(&f.board)))
        }
        Family::StripCleanup => {
            let f = gadgets::strip_cleanup_fixture(p, &[(0, 0), (2, 2)])?;
            (f.jumps.clone(), Some(io::serialize_board(&f.board)))
        }
    };
    print!("{}", io::serialize_jumps(&jumps));
    if fixture {
        println!();
        print!("{}", board.unwrap_or_default());
    }
    Ok(())
}

fn oracle(cmd: OracleCommand) -> Result<u8> {
    match cmd {
        OracleCommand::Cfp { puzzle, max_m } => {
            let inst = load_puzzle(&puzzle)?;
            let sols = oracle_enumerate(&inst, max_m)?;
            for s in &sols {
                println!("{s}");
            }
            println!("solutions {}", sols.len());
            Ok(if sols.is_empty() { EXIT_UNSAT } else { 0 })
        }
        OracleCommand::Ham { graph } => {
            let g = io::parse_grid_graph(&read(&graph)?)?;
            Ok(match ham_oracle(&g)? {
                Some(path) => {
                    let parts: Vec<String> =
                        path.iter().map(|v| format!("{} {}", v.0, v.1)).collect();
                    println!("{}", parts.join(", "));
                    0
                }
                None => {
                    println!("UNSAT");
                    EXIT_UNSAT
                }
            })
        }
        OracleCommand::Prd { diffs } => {
            let inst = io::parse_prd(&read(&diffs)?)?;
            let sols = prd::prd_oracle(&inst)?;
            for s in &sols {
                print!("{}", io::serialize_permutation(s));
            }
            println!("solutions {}", sols.len());
            Ok(if sols.is_empty() { EXIT_UNSAT } else { 0 })
        }
    }
}

fn prd_command(cmd: PrdCommand) -> Result<u8> {
    match cmd {
        PrdCommand::Solve { diffs, budget } => {
            let inst = io::parse_prd(&read(&diffs)?)?;
            Ok(
                match prd::solve_prd(&inst, SearchLimits::with_budget(budget)) {
                    PrdOutcome::Solved(p) => {
                        print!("{}", io::serialize_permutation(&p));
                        0
                    }
                    PrdOutcome::Unsat => {
                        println!("UNSAT");
                        EXIT_UNSAT
                    }
                    PrdOutcome::Inconclusive(n) => {
                        println!("INCONCLUSIVE {n}");
                        EXIT_INCONCLUSIVE
                    }
                },
            )
        }
        PrdCommand::Verify { diffs, perm } => {
            let inst = io::parse_prd(&read(&diffs)?)?;
            let perm = io::parse_permutation(&literal_or_file(&perm)?)?;
            Ok(if prd::verify_prd(&inst, &perm)? {
                println!("VALID");
                0
            } else {
                println!("INVALID");
                EXIT_UNSAT
            })
        }
        PrdCommand::ToCfp { diffs } => {
            let inst = io::parse_prd(&read(&diffs)?)?;
            let out = InstanceBundle::new(Payload::Cfp1d(prd::prd_to_cfp1d(&inst)?));
            print!("{}", io::serialize_bundle(&out));
            Ok(0)
        }
        PrdCommand::FromCfp { puzzle } => {
            let inst = io::parse_cfp1d(&read(&puzzle.board)?, &read(&puzzle.jumps)?)?;
            print!("{}", io::serialize_prd(&prd::cfp1d_to_prd(&inst)?));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } => EXIT_PARSE,
                Error::Io(_) => EXIT_IO,
                _ => EXIT_USAGE,
            })
        }
    }
}
