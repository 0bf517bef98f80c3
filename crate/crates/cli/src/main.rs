use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use supertrace_cli::{
    cmd_dims, cmd_root_data, cmd_scan_typical, cmd_verify, AlgebraSpec, CliError, Format, Render, Suite, VerifyConfig, CACHE_ENV,
    EXIT_PASS, EXIT_USAGE,
};

#[derive(Parser, Debug)]
#[command(name = "supertrace", version, about = "Modified supertraces, modified dimensions and invariant-tensor forms")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table, global = true)]
    format: FormatArg,
    /// Directory for the Kac module cache.
    #[arg(long, env = CACHE_ENV, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Superlin,
    Trace,
    Tensors,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan data, positive roots and rho vectors: `sl M N` or `osp2 N`.
    RootData {
        family: String,
        #[arg(num_args = 1..=2, required = true)]
        dims: Vec<usize>,
    },
    /// Modified superdimension of each weight.
    Mdim {
        family: String,
        #[arg(num_args = 1..=2, required = true)]
        dims: Vec<usize>,
        /// Comma-separated `a_i = λ(h_i)`; repeat for several rows.
        #[arg(long = "weight", required = true, allow_hyphen_values = true)]
        weights: Vec<String>,
    },
    /// Quantum modified dimension as a series in h.
    Qdim {
        family: String,
        #[arg(num_args = 1..=2, required = true)]
        dims: Vec<usize>,
        #[arg(long = "weight", required = true, allow_hyphen_values = true)]
        weights: Vec<String>,
        /// Highest power of h kept.
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Scan a_s over a rational grid with the other coordinates fixed.
    ScanTypical {
        family: String,
        #[arg(num_args = 1..=2, required = true)]
        dims: Vec<usize>,
        /// Comma-separated a_i for i != s, in order.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        fixed: String,
        #[arg(long, default_value = "-3", allow_hyphen_values = true)]
        from: String,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value = "1/2")]
        step: String,
    },
    /// Run the exact verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Algebra such as sl21 or sl(3|1).
        #[arg(long, default_value = "sl21")]
        algebra: String,
        /// Largest tensor degree (defaults to the cap).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Override the default degree cap (largest N with dim g^N ≤ 512).
        #[arg(long)]
        degree_cap: Option<usize>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    Ok(match cli.command {
        Command::RootData { family, dims } => {
            let spec = AlgebraSpec::from_args(&family, &dims)?;
            (cmd_root_data(&spec)?.render(format), EXIT_PASS)
        }
        Command::Mdim { family, dims, weights } => {
            let spec = AlgebraSpec::from_args(&family, &dims)?;
            (cmd_dims(&spec, &weights, None)?.render(format), EXIT_PASS)
        }
        Command::Qdim { family, dims, weights, order } => {
            let spec = AlgebraSpec::from_args(&family, &dims)?;
            (cmd_dims(&spec, &weights, Some(order))?.render(format), EXIT_PASS)
        }
        Command::ScanTypical { family, dims, fixed, from, to, step } => {
            let spec = AlgebraSpec::from_args(&family, &dims)?;
            let out = cmd_scan_typical(&spec, &fixed, &from, &to, &step)?;
            (out.render(format), out.exit_code())
        }
        Command::Verify { suite, algebra, max_degree, degree_cap, seed } => {
            let suite = match suite {
                SuiteArg::Superlin => Suite::Superlin,
                SuiteArg::Trace => Suite::Trace,
                SuiteArg::Tensors => Suite::Tensors,
                SuiteArg::All => Suite::All,
            };
            let cfg = VerifyConfig {
                algebra: AlgebraSpec::parse_compact(&algebra)?,
                suite,
                max_degree,
                degree_cap,
                seed,
                cache_dir: cli.cache_dir,
            };
            let out = cmd_verify(&cfg)?;
            (out.render(format), out.exit_code())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(code)
        }
        Err(CliError::Usage(msg)) => {
            use clap::CommandFactory;
            eprintln!("error: {msg}\n");
            eprintln!("{}", Cli::command().render_usage());
            ExitCode::from(EXIT_USAGE)
        }
    }
}
