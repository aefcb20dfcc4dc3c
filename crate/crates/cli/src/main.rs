use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use superchar::check::{self, CheckOptions};
use superchar::{CliError, CliResult, Spec, SuperTable, DEFAULT_CAP, DEFAULT_ORACLE_CAP};
use superchar_core::pattern::OrbitKind;

#[derive(Parser)]
#[command(name = "superchar", version, about = "Supercharacter tables of pattern groups and algebra groups")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a spec, printing its canonical form.
    Validate { spec: PathBuf },
    /// Emit the supercharacter table.
    Table {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Evaluate one supercharacter at one superclass representative.
    Value {
        spec: PathBuf,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Decide whether a supercharacter is irreducible.
    Irreducible {
        spec: PathBuf,
        #[arg(long)]
        eta: String,
    },
    /// List orbit representatives, or the orbit sizes of given elements.
    Orbits {
        spec: PathBuf,
        /// Element whose two-sided orbit size to report (repeatable).
        #[arg(long)]
        phi: Vec<String>,
        /// Functional whose two-sided co-orbit size to report (repeatable).
        #[arg(long)]
        eta: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Compare the closed-form table with brute-force enumeration.
    Check {
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u64,
        /// Largest group order for element-by-element axiom checks.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        axiom_cap: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Validate { spec } => {
            let spec = Spec::load(&spec)?;
            print!("{}", spec.canonical());
        }
        Command::Table { spec, format, out, cap } => {
            let spec = Spec::load(&spec)?;
            let table = SuperTable::build(&spec, cap)?;
            let text = match format {
                Format::Json => table.to_json()?,
                Format::Csv => table.to_csv()?,
                Format::Pretty => table.to_pretty(),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Value { spec, eta, phi, cap } => {
            let spec = Spec::load(&spec)?;
            let eta = spec.parse_functional(&eta)?;
            let phi = spec.parse_functional(&phi)?;
            let corank = spec.corank(&eta, cap)?;
            let value = spec.value_with_corank(&eta, &phi, corank)?;
            let f = spec.field();
            println!("value: {}", value.to_power_string());
            println!("expanded: {}", value.to_cyc(f.q(), f.p())?);
        }
        Command::Irreducible { spec, eta } => {
            let spec = Spec::load(&spec)?;
            let eta = spec.parse_functional(&eta)?;
            println!("irreducible: {}", spec.is_irreducible(&eta));
        }
        Command::Orbits { spec, phi, eta, cap } => {
            let spec = Spec::load(&spec)?;
            if phi.is_empty() && eta.is_empty() {
                let (classes, chars) = spec.partitions(cap)?;
                println!("superclasses: {}", classes.reps.len());
                for (rep, size) in classes.reps.iter().zip(&classes.sizes) {
                    println!("  size {size}: [{}]", spec.format_functional(rep));
                }
                println!("co-orbits: {}", chars.reps.len());
                for (rep, size) in chars.reps.iter().zip(&chars.sizes) {
                    println!("  size {size}: [{}]", spec.format_functional(rep));
                }
            }
            for text in &phi {
                let v = spec.parse_functional(text)?;
                let size = spec.orbit_size(&v, OrbitKind::Class, cap)?;
                println!("orbit [{}]: size {size}", spec.format_functional(&v));
            }
            for text in &eta {
                let v = spec.parse_functional(text)?;
                let size = spec.orbit_size(&v, OrbitKind::Character, cap)?;
                println!("co-orbit [{}]: size {size}", spec.format_functional(&v));
            }
        }
        Command::Check { spec, cap, oracle_cap, axiom_cap } => {
            let spec = Spec::load(&spec)?;
            let report = check::run(&spec, CheckOptions { cap, oracle_cap, axiom_cap })?;
            println!("{report}");
            if !report.passed() {
                let first = report
                    .witness
                    .as_ref()
                    .map(ToString::to_string)
                    .or_else(|| report.failures.first().cloned())
                    .or_else(|| report.axioms.as_ref().and_then(|a| a.witnesses.first().cloned()))
                    .unwrap_or_else(|| "axiom check failed".into());
                return Err(CliError::Mismatch(first));
            }
        }
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}
