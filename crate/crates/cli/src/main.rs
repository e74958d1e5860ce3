mod export;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use doily_core::claims::{self, Options, Suite};
use doily_core::protocols::{builtin_protocols, find_protocol, run};
use doily_core::{Error, SecretParam};

use export::{Format, Object};

#[derive(Parser)]
#[command(
    name = "doily",
    version,
    about = "Verify, export and run the pentagon and heptagon secret-sharing checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Pentagon,
    Heptagon,
    Geometry,
    Contextuality,
    Protocols,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Vec::new(),
            SuiteArg::Pentagon => vec![Suite::Pentagon],
            SuiteArg::Heptagon => vec![Suite::Heptagon],
            SuiteArg::Geometry => vec![Suite::Geometry],
            SuiteArg::Contextuality => vec![Suite::Contextuality],
            SuiteArg::Protocols => vec![Suite::Protocols],
        }
    }

    fn name(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            SuiteArg::Pentagon => "pentagon",
            SuiteArg::Heptagon => "heptagon",
            SuiteArg::Geometry => "geometry",
            SuiteArg::Contextuality => "contextuality",
            SuiteArg::Protocols => "protocols",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exit 0 iff every claim passes.
    Verify(VerifyArgs),
    /// Write a point/line figure as DOT or JSON.
    Export {
        object: Object,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one seeded protocol round and print its transcript as JSON.
    Protocol {
        id: String,
        /// Secret amplitudes "alpha,beta", e.g. "1/sqrt2, i/sqrt2".
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        secret: Option<String>,
        /// Draw the secret from the seed.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List protocol ids and claim ids.
    List,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum, conflicts_with = "suite_flag")]
    suite: Option<SuiteArg>,
    #[arg(long = "suite", value_enum, id = "suite_flag")]
    suite_flag: Option<SuiteArg>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Flip one sign in the pentagon Bell table before checking it.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn write_output(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => match io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            r => r,
        },
    }
}

fn emit(text: &str) {
    if let Err(e) = write_output(None, text) {
        eprintln!("error: {e}");
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let suite = args.suite.or(args.suite_flag).unwrap_or(SuiteArg::All);
    let opts = Options {
        seed: args.seed,
        inject_fault: args.inject_fault,
    };
    let report = report::run_suite(suite.name(), &suite.suites(), &opts);
    let json = serde_json::to_string_pretty(&report).expect("plain data") + "\n";
    if let Some(p) = &args.out {
        if let Err(e) = std::fs::write(p, &json) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return ExitCode::FAILURE;
        }
    }
    let text = if args.json { json } else { report.table() };
    emit(&text);
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn protocol(id: &str, secret: Option<String>, random: bool, seed: u64) -> ExitCode {
    let spec = match find_protocol(id) {
        Ok(s) => s,
        Err(e) => return usage(format!("{e}; run `doily list` for the protocol ids")),
    };
    let secret = match (secret, random) {
        (_, true) => SecretParam::seeded(seed),
        (Some(s), false) => match SecretParam::parse(&s) {
            Ok(s) => s,
            Err(Error::Unnormalized) => return usage(format!("secret `{s}` is not normalized")),
            Err(e) => return usage(e),
        },
        (None, false) => return usage("give --secret or --random"),
    };
    match run(&spec, &secret, seed) {
        Ok(t) => {
            emit(&(serde_json::to_string_pretty(&t).expect("plain data") + "\n"));
            if t.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn list() -> ExitCode {
    let mut text = String::from("protocols:\n");
    for p in builtin_protocols() {
        text += &format!(
            "  {:<22} measuring {:?}, recovering {}\n",
            p.id,
            p.measuring_parties(),
            p.recovery_party()
        );
    }
    text += "claims:\n";
    for id in claims::claim_ids() {
        text += &format!("  {id}\n");
    }
    emit(&text);
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
        Command::Export { object, format, out } => match write_output(out.as_ref(), &export::render(object, format)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Command::Protocol {
            id,
            secret,
            random,
            seed,
        } => protocol(&id, secret, random, seed),
        Command::List => list(),
    }
}
