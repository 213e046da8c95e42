use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rrc_cli::{run, FastModeArg, JobConfig, Mode};

#[derive(Parser)]
#[command(name = "rrc", version, about = "Real root classification of parametric polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the number of real solutions over parameter space.
    Solve(Common),
    /// One rational point per open cell of the complement of the polynomials.
    SamplePoints(Common),
    /// Print the parametric Hermite matrix.
    Matrix(Common),
}

#[derive(Args)]
struct Common {
    /// System file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, default_value_t = rrc_cli::config::DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated variable names.
    #[arg(long, value_delimiter = ',')]
    x_order: Option<Vec<String>>,
    /// Write JSON to this path (`-` for standard output).
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    print_matrix: bool,
    /// Degree bound for building the matrix by interpolation.
    #[arg(long)]
    lambda: Option<u32>,
    /// Prime for the modular rank probe of the matrix.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, value_enum, default_value_t = FastModeArg::Off)]
    fast_mode: FastModeArg,
}

fn config(cmd: Command) -> JobConfig {
    let (c, default) = match cmd {
        Command::Solve(c) => (c, Mode::HermiteFull),
        Command::SamplePoints(c) => (c, Mode::SamplePoints),
        Command::Matrix(c) => (c, Mode::MatrixOnly),
    };
    JobConfig {
        mode: c.mode.unwrap_or(default),
        x_order: c.x_order,
        seed: c.seed,
        json: c.json,
        print_matrix: c.print_matrix,
        lambda: c.lambda,
        prime: c.prime,
        fast_mode: c.fast_mode,
        ..JobConfig::new(c.input, default)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let cfg = config(cli.command);
    match run(&cfg) {
        Ok(out) => {
            match cfg.json.as_deref() {
                Some(p) if p.as_os_str() == "-" => println!("{}", out.json),
                Some(p) => {
                    print!("{}", out.text);
                    if let Err(e) = std::fs::write(p, format!("{}\n", out.json)) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
