//! The `maxsur` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 no surjective answer
//! exists, 3 an exhaustive search exceeded its cap.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use maxsur::exact::DEFAULT_CAP;
use maxsur::format::{emit_problem, gallery_problem, pad_problem, parse_problem, Meta, Problem};
use maxsur::harness::{run_experiment, write_csv, Experiment, GenSpec, Oracle};
use maxsur::rational::{parse_decimal, rational};
use maxsur::templates::{self, classify_boolean, GALLERY_NAMES};
use maxsur::{Error, Mode, Rational, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "maxsur", version, about = "Maximum surjective CSP solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a problem file and print a JSON report.
    Solve(SolveArgs),
    /// Report whether a Boolean template is 0-valid, 1-valid and 2-monotone.
    Classify(InputArgs),
    /// Print a gallery problem, or list the gallery.
    Gallery {
        name: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a random instance for a gallery template.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a seeded ratio experiment and print CSV.
    Bench(BenchArgs),
    /// Pad the instance with one isolated element per template value.
    Reduce(InputArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Problem file (`-` for stdin).
    #[arg(required_unless_present = "gallery", conflicts_with = "gallery")]
    file: Option<PathBuf>,
    /// Use a gallery problem instead of a file.
    #[arg(long)]
    gallery: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SolverArgs {
    #[arg(long, default_value = "exact-sur", value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use the derandomized variant where one exists.
    #[arg(long)]
    deterministic: bool,
    /// approx2: try every repair choice sequence.
    #[arg(long)]
    enumerate_all: bool,
    #[arg(long, default_value = "0.1", value_parser = parse_epsilon)]
    epsilon: Rational,
    /// Largest |B|^|A| searched exhaustively.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// mincut: anchor on constraint pairs only.
    #[arg(long, alias = "paper-anchors")]
    constraint_anchors: bool,
}

impl SolverArgs {
    fn config(&self, mode: Mode) -> SolverConfig {
        SolverConfig {
            mode,
            seed: self.seed,
            deterministic: self.deterministic,
            enumerate_all: self.enumerate_all,
            epsilon: self.epsilon,
            cap: self.cap,
            constraint_anchors: self.constraint_anchors,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Gallery template name.
    #[arg(long)]
    template: String,
    #[arg(long)]
    elements: usize,
    /// Distinct tuples per relation.
    #[arg(long)]
    tuples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    template: String,
    #[arg(long)]
    elements: usize,
    #[arg(long)]
    tuples: usize,
    #[arg(long, default_value_t = 10)]
    instances: u64,
    /// Modes to run; repeat or comma-separate.
    #[arg(long = "modes", value_delimiter = ',', value_parser = parse_mode, default_value = "approx-seeded")]
    modes: Vec<Mode>,
    /// Fill the opt column by exhaustive search.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse::<Mode>().map_err(|e| e.to_string())
}

fn parse_epsilon(s: &str) -> Result<Rational, String> {
    match parse_decimal(s) {
        Some(e) if e > rational(0, 1) => Ok(e),
        Some(_) => Err("epsilon must be positive".into()),
        None => Err(format!("`{s}` is not a decimal number")),
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_infeasible() {
        EXIT_INFEASIBLE
    } else if e.is_cap_exceeded() {
        EXIT_CAP
    } else {
        EXIT_USAGE
    }
}

fn read_input(input: &InputArgs) -> Result<Problem, Error> {
    if let Some(name) = &input.gallery {
        return gallery_problem(name);
    }
    let path = input.file.as_deref().expect("clap enforces file or --gallery");
    let text = if path == Path::new("-") {
        io::read_to_string(io::stdin())?
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
    };
    parse_problem(&text).map_err(|e| match e {
        Error::Parse { path: p, message } => Error::Parse {
            path: format!("{}: {p}", path.display()),
            message,
        },
        other => other,
    })
}

fn write_output(output: Option<&Path>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Solve(args) => {
            let problem = read_input(&args.input)?;
            let config = args.solver.config(args.solver.mode);
            let report = maxsur::solve(&problem.instance, &problem.template, &config)?;
            write_output(args.input.output.as_deref(), &json_line(&report))
        }
        Command::Classify(args) => {
            let problem = read_input(&args)?;
            let class = classify_boolean(&problem.template)?;
            write_output(args.output.as_deref(), &json_line(&class))
        }
        Command::Gallery { name, output } => match name {
            Some(name) => write_output(output.as_deref(), &emit_problem(&gallery_problem(&name)?)),
            None => {
                let list: String = GALLERY_NAMES.iter().map(|n| format!("{n}\n")).collect();
                write_output(output.as_deref(), &list)
            }
        },
        Command::Gen { spec, output } => {
            let template = templates::by_name(&spec.template)?;
            let gen = GenSpec::named(&spec.template, spec.elements, spec.tuples, spec.seed);
            let instance = maxsur::harness::gen_instance(&gen)?;
            let problem = Problem {
                template,
                instance,
                meta: Some(Meta {
                    description: Some(format!(
                        "random instance: {} elements, {} tuples per relation, seed {}",
                        spec.elements, spec.tuples, spec.seed
                    )),
                    origin: Some(spec.template),
                }),
            };
            write_output(output.as_deref(), &emit_problem(&problem))
        }
        Command::Bench(args) => {
            templates::by_name(&args.template)?;
            let experiment = Experiment {
                specs: (0..args.instances)
                    .map(|i| {
                        let seed = maxsur::rng::trial_seed(args.solver.seed, i);
                        GenSpec::named(&args.template, args.elements, args.tuples, seed)
                    })
                    .collect(),
                modes: args.modes.iter().map(|&m| args.solver.config(m)).collect(),
                oracle: if args.oracle { Oracle::BruteForce } else { Oracle::None },
                keep_assignments: false,
            };
            let report = run_experiment(&experiment)?;
            let mut buf = Vec::new();
            write_csv(&report, &mut buf)?;
            write_output(args.output.as_deref(), &String::from_utf8(buf).expect("csv is utf-8"))
        }
        Command::Reduce(args) => {
            let problem = read_input(&args)?;
            write_output(args.output.as_deref(), &emit_problem(&pad_problem(&problem)?))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
