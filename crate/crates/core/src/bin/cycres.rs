use clap::{Parser, Subcommand, ValueEnum};
use cycres::cli::{self, CommandOutput, Format, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cycres", version, about = "Cyc free resolutions of lattice ideals of weighted digraphs")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Root vertex (1-based); defaults to the last vertex.
    #[arg(long, global = true)]
    omega: Option<usize>,
    /// Highest degree checked by the homology oracle.
    #[arg(long, global = true)]
    max_degree: Option<u128>,
    /// Cap on the default homology degree bound.
    #[arg(long, global = true)]
    degree_cap: Option<u128>,
    /// Monomials summed over all strands that the default degree bound may reach.
    #[arg(long, global = true, default_value_t = RunConfig::default().strand_budget)]
    strand_budget: u128,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    #[arg(long, global = true, default_value_t = RunConfig::default().seed)]
    seed: u64,
    /// Fail verification when the resolution is not minimal.
    #[arg(long, global = true)]
    require_minimal: bool,
    /// Report every check as taking 0 ms.
    #[arg(long, global = true)]
    no_timings: bool,
    /// Where `resolve` writes the complex; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Class, adjugate row, grading and echelon data of the Laplacian.
    Classify { input: PathBuf },
    /// Build the complex and export it as JSON.
    Resolve { input: PathBuf },
    /// Run every structural check.
    Verify { input: PathBuf },
    /// Print the degree-0 Gröbner basis.
    Gb { input: PathBuf },
    /// Run only the graded homology oracle.
    Homology { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

fn run(args: &Args) -> cycres::Result<CommandOutput> {
    let cfg = RunConfig {
        omega: args.omega,
        max_degree: args.max_degree,
        degree_cap: args.degree_cap,
        strand_budget: args.strand_budget,
        format: match args.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        },
        seed: args.seed,
        require_minimal: args.require_minimal,
        no_timings: args.no_timings,
    };
    let (input, cmd): (_, fn(&str, &RunConfig) -> cycres::Result<CommandOutput>) = match &args.command {
        Command::Classify { input } => (input, cli::cmd_classify),
        Command::Resolve { input } => (input, cli::cmd_resolve),
        Command::Verify { input } => (input, cli::cmd_verify),
        Command::Gb { input } => (input, cli::cmd_gb),
        Command::Homology { input } => (input, cli::cmd_homology),
    };
    let text = std::fs::read_to_string(input)?;
    cmd(&text, &cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            match (&out.artifact, &args.out) {
                (Some(doc), Some(path)) => {
                    if let Err(e) = std::fs::write(path, doc) {
                        eprintln!("error: {e}");
                        return ExitCode::from(cli::EXIT_INVALID as u8);
                    }
                    print!("{}", out.stdout);
                }
                (Some(doc), None) => print!("{doc}"),
                (None, _) => print!("{}", out.stdout),
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
