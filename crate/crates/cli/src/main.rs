use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "nahmkit", version, about = "Exact matrix data, rational maps and flag normal forms")]
struct Cli {
    /// Input file, `-` for stdin, or inline JSON starting with `{` or `[`.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for `verify`; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Holomorphic charge of a rational map.
    Charge,
    /// Test F ∈ R_k.
    Membership {
        /// Charge vector, e.g. `2,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
    },
    /// Matrix pair to rational map.
    ToMap {
        /// Also check the pair's validity for this charge.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
    },
    /// Rational map to matrix pair.
    ToMatrix,
    /// Pair → map → pair (or map → pair → map), compared exactly.
    Roundtrip,
    /// Block matrix and canonical pair from `{"k", "q", "C"}`.
    NormalForm,
    /// Reduce `{"k", "B"}` to normal form, or undo it with `--inverse`.
    Hurtubise {
        #[arg(long)]
        inverse: bool,
    },
    /// Run a property suite.
    Verify {
        /// roundtrip, duality, hurtubise, casimir, halfpower, dimension or realflow.
        suite: String,
        /// Number of cases; each suite has its own default.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Solve the real equation on a truncated interval from a JSON config.
    Realflow,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let ctx = commands::Context { input: cli.input, seed: cli.seed, jobs: cli.jobs };
    match cli.command {
        Command::Charge => commands::charge(&ctx),
        Command::Membership { k } => commands::membership(&ctx, k),
        Command::ToMap { k } => commands::to_map(&ctx, k),
        Command::ToMatrix => commands::to_matrix(&ctx),
        Command::Roundtrip => commands::roundtrip(&ctx),
        Command::NormalForm => commands::normal_form(&ctx),
        Command::Hurtubise { inverse } => commands::hurtubise(&ctx, inverse),
        Command::Verify { suite, budget } => commands::verify(&ctx, &suite, budget),
        Command::Realflow => commands::realflow(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output_path = cli.output.clone();
    let format = cli.format;
    match run(cli).and_then(|out| out.emit(output_path.as_deref(), format)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            if let Some(body) = &e.report {
                println!("{}", serde_json::to_string_pretty(body).expect("serializable"));
            }
            ExitCode::from(e.code)
        }
    }
}
