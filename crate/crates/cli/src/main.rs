use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use onsup_core::harness::plot::{write_batch_csv, write_trace_csv};
use onsup_core::harness::surveillance::write_fixtures;
use onsup_core::harness::{
    parse_perm, parse_sweep, simulate_batch, simulate_run_with_transcript, write_transcript, DEFAULT_MAX_STEPS,
};
use onsup_core::product::{export_product, import_product};
use onsup_core::ranking::write_ranking_csv;
use onsup_core::{
    build_product, compute_ranking, export_dfa, import_dfa, load_des, parse_formula, save_des, synchronous_product,
    translate, Des, Error, Formula, ImportMode, LinearSchedule, ProductAutomaton, RankingFunction, Result, Vocabulary,
};

#[derive(Parser)]
#[command(
    name = "onsup",
    version,
    about = "On-line permissive supervisory control for co-safe LTL"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a formula into a minimal DFA over a vocabulary.
    Translate {
        #[command(flatten)]
        spec: SpecArg,
        /// Comma-separated atomic propositions.
        #[arg(long, value_delimiter = ',', required = true)]
        ap: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synchronous product of two DES files.
    Compose {
        /// Exactly two DES files.
        #[arg(long = "des", num_args = 1, required = true)]
        des: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reachable product of a DES with a DFA.
    Product {
        #[arg(long)]
        des: PathBuf,
        #[arg(long)]
        dfa: PathBuf,
        /// Accept DFAs with missing transitions or non-absorbing accepting states.
        #[arg(long)]
        lenient: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank every state of a product automaton.
    Rank {
        #[arg(long)]
        product: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate one supervised session with a random environment.
    Run {
        #[arg(long)]
        des: PathBuf,
        #[command(flatten)]
        spec: SpecArg,
        /// Linear schedule parameters `a,b`.
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        #[arg(long)]
        seed: u64,
        /// JSON-lines transcript output.
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// CSV of `k,rank,level`.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Run batches over a sweep of linear schedules.
    Batch {
        #[arg(long)]
        des: PathBuf,
        #[command(flatten)]
        spec: SpecArg,
        /// Sweep such as `b=30;a=-0.25,-0.5,-1,-2`.
        #[arg(long, allow_hyphen_values = true)]
        perm_sweep: String,
        #[arg(long, default_value_t = 1000)]
        runs: usize,
        #[arg(long)]
        master_seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a bundled example to a directory.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpecArg {
    /// File holding one formula.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Formula given inline.
    #[arg(long)]
    formula: Option<String>,
}

impl SpecArg {
    fn parse(&self, vocab: &Vocabulary) -> Result<Formula> {
        let text = match (&self.spec, &self.formula) {
            (Some(path), _) => fs::read_to_string(path)?,
            (None, Some(text)) => text.clone(),
            (None, None) => unreachable!("clap enforces one of --spec and --formula"),
        };
        parse_formula(text.trim(), vocab)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Surveillance,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unenforceable { .. } => 3,
        Error::IllegalObservation { .. }
        | Error::Stopped
        | Error::MaxStepsExceeded { .. }
        | Error::EmptyPattern { .. } => 4,
        _ => 2,
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Run `write` against the file at `out`, or stdout when absent.
fn emit(out: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)?;
        }
    }
    Ok(())
}

fn load_des_file(path: &Path) -> Result<Des> {
    load_des(open(path)?)
}

/// Plant, formula, product and ranking of a `run` or `batch` invocation.
fn pipeline(des: &Path, spec: &SpecArg) -> Result<(ProductAutomaton, RankingFunction)> {
    let g = load_des_file(des)?;
    let formula = spec.parse(g.ap())?;
    let d = translate(&formula, g.ap())?;
    let p = build_product(&g, &d)?;
    let r = compute_ranking(&p);
    Ok((p, r))
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Translate { spec, ap, out } => {
            let vocab = Vocabulary::new(ap)?;
            let d = translate(&spec.parse(&vocab)?, &vocab)?;
            emit(out.as_deref(), |w| export_dfa(&d, w))
        }
        Command::Compose { des, out } => {
            let [a, b] = des.as_slice() else {
                return Err(Error::Config(format!(
                    "compose needs exactly two --des files, got {}",
                    des.len()
                )));
            };
            let g = synchronous_product(&load_des_file(a)?, &load_des_file(b)?)?;
            emit(out.as_deref(), |w| save_des(&g, w))
        }
        Command::Product { des, dfa, lenient, out } => {
            let g = load_des_file(&des)?;
            let mode = if lenient {
                ImportMode::Lenient
            } else {
                ImportMode::Strict
            };
            let d = import_dfa(open(&dfa)?, mode)?;
            let p = build_product(&g, &d)?;
            emit(out.as_deref(), |w| export_product(&p, w))
        }
        Command::Rank { product, out } => {
            let p = import_product(open(&product)?)?;
            let r = compute_ranking(&p);
            emit(out.as_deref(), |w| write_ranking_csv(&p, &r, w))
        }
        Command::Run {
            des,
            spec,
            perm,
            seed,
            transcript,
            trace,
            max_steps,
        } => {
            let (a, b) = parse_perm(&perm)?;
            let (p, r) = pipeline(&des, &spec)?;
            let schedule = LinearSchedule::new(a, b, r.alpha())?;
            let (record, records) = simulate_run_with_transcript(&p, &r, &schedule, seed, max_steps)?;
            if let Some(path) = transcript {
                emit(Some(&path), |w| write_transcript(&records, w))?;
            }
            if let Some(path) = trace {
                emit(Some(&path), |w| write_trace_csv(std::slice::from_ref(&record), w))?;
            }
            println!(
                "seed={} steps={} accepted={} initial_rank={} alpha={} mean_pattern_size={}",
                seed,
                record.steps,
                record.accepted,
                record.ranks[0],
                r.alpha(),
                record.mean_pattern_size()
            );
            Ok(())
        }
        Command::Batch {
            des,
            spec,
            perm_sweep,
            runs,
            master_seed,
            max_steps,
            sequential,
            out,
        } => {
            let configs = parse_sweep(&perm_sweep)?;
            let (p, r) = pipeline(&des, &spec)?;
            let summaries = simulate_batch(&p, &r, &configs, runs, master_seed, max_steps, !sequential)?;
            emit(out.as_deref(), |w| write_batch_csv(&summaries, w))
        }
        Command::Example {
            name: ExampleName::Surveillance,
            out_dir,
        } => {
            for path in write_fixtures(&out_dir)? {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}
