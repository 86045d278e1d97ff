use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use algebroid::error::Error;
use algebroid::instances::{builtin, parse_instance, Instance, InstanceKind, Suite, BUILTINS};
use algebroid::suite::{run_instance, RunOptions, DEFAULT_DEGREE};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "algebroid", version, about = "Exact verification of bialgebroid constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites on a built-in instance or a TOML instance file.
    Run {
        /// Built-in name or path to an instance file.
        instance: String,
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        /// Degree cap for the Weyl sweep.
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
        /// Size parameter for cn-cyclic-kn.
        #[arg(short, long)]
        n: Option<usize>,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// List the built-in instances.
    List {
        #[arg(short, long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Galois,
    Bowtie,
    Cm,
    Weyl,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Galois => Suite::Galois,
            SuiteArg::Bowtie => Suite::Bowtie,
            SuiteArg::Cm => Suite::Cm,
            SuiteArg::Weyl => Suite::Weyl,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        _ => 3,
    }
}

fn load(name: &str, n: Option<usize>) -> Result<Instance, Error> {
    if let Some(inst) = builtin(name, n) {
        return Ok(inst);
    }
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
        return parse_instance(&text);
    }
    Err(Error::Parse(format!("`{name}` is neither a built-in instance nor a file")))
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List { n } => {
            let mut out = String::new();
            for name in BUILTINS {
                match builtin(name, n).map(|i| i.kind) {
                    Some(InstanceKind::Finite(f)) => out += &format!("{name}\tdim {}\n", f.algebra.dim()),
                    _ => out += &format!("{name}\tPBW\n"),
                }
            }
            emit(&out);
            ExitCode::SUCCESS
        }
        Command::Run { instance, suite, degree, report, n, timing } => {
            let inst = match load(&instance, n) {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(error_code(&e));
                }
            };
            let opts = RunOptions { suite: suite.map(Suite::from), degree, timing };
            match run_instance(&inst, &opts) {
                Ok(rep) => {
                    match report {
                        Format::Text => emit(&rep.to_text()),
                        Format::Structured => emit(&rep.to_structured()),
                    }
                    ExitCode::from(rep.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(error_code(&e))
                }
            }
        }
    }
}
