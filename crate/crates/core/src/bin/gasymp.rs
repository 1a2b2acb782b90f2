use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gasymp::cli::{self, Command, Inputs, Report, RunOptions};
use gasymp::field::parse_rational;
use gasymp::Error;

/// Infinity branches and generalized asymptotes of space curves.
#[derive(Parser)]
#[command(name = "gasymp", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Infinity branches of an implicit or parametric curve.
    Branches {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Branches and asymptotes of an implicit curve `f1 = f2 = 0`.
    Asymptotes {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Branches and asymptotes of a parametrization `p1, p2, p3` in `s`.
    ParamAsymptotes {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Whether two branches converge. A spec is `FILE[#k]`, where FILE is a
    /// curve input or a JSON report and `k` the 1-based branch number.
    Converge {
        first: String,
        second: String,
        #[command(flatten)]
        common: Common,
    },
    /// Which branches of a curve an asymptote approaches. The asymptote is
    /// a `q1/q2/q3` file or `REPORT.json#k`.
    Approach {
        curve: PathBuf,
        asymptote: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Local truncation order (rational).
    #[arg(long)]
    order: Option<String>,
    /// Minimum number of series terms.
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write plot samples: SVG if the name ends in `.svg`, CSV otherwise.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Sample range `a:b` for `z` and `t`.
    #[arg(long, default_value = "1:100", allow_hyphen_values = true)]
    range: String,
    /// Shear `λ,μ` tried first by the preparation.
    #[arg(long, allow_hyphen_values = true)]
    seed_transform: Option<String>,
}

fn read(p: &Path) -> Result<String, Error> {
    std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

/// `FILE[#k]` to the file text and a 0-based index.
fn spec(s: &str) -> Result<(String, usize), Error> {
    let (path, k) = match s.rsplit_once('#') {
        Some((p, k)) => {
            let k: usize = k.parse().map_err(|_| Error::InvalidArgument(format!("bad index in '{s}'")))?;
            if k == 0 {
                return Err(Error::InvalidArgument("indices start at 1".into()));
            }
            (p, k - 1)
        }
        None => (s, 0),
    };
    Ok((read(Path::new(path))?, k))
}

fn options(c: &Common) -> Result<RunOptions, Error> {
    let order = c.order.as_deref().map(|s| parse_rational(s).ok_or_else(|| Error::InvalidArgument(format!("bad order '{s}'")))).transpose()?;
    let seed = c.seed_transform.as_deref().map(cli::parse_seed).transpose()?;
    Ok(RunOptions { order, terms: c.terms, seed })
}

fn curve_input(p: &Path) -> Result<Inputs, Error> {
    Ok(Inputs::Curve(cli::parse_input(&read(p)?)?))
}

fn run(cmd: &Cmd) -> Result<Report, Error> {
    let (command, inputs, common) = match cmd {
        Cmd::Branches { input, common } => (Command::Branches, curve_input(input)?, common),
        Cmd::Asymptotes { input, common } => (Command::Asymptotes, curve_input(input)?, common),
        Cmd::ParamAsymptotes { input, common } => (Command::ParamAsymptotes, curve_input(input)?, common),
        Cmd::Converge { first, second, common } => {
            let o = options(common)?;
            let (t1, k1) = spec(first)?;
            let (t2, k2) = spec(second)?;
            (Command::Converge, Inputs::Branches(cli::load_branch(&t1, k1, &o)?, cli::load_branch(&t2, k2, &o)?), common)
        }
        Cmd::Approach { curve, asymptote, common } => {
            let c = cli::parse_input(&read(curve)?)?;
            let (t, k) = spec(asymptote)?;
            (Command::Approach, Inputs::Approach(c, cli::load_asymptote(&t, k)?), common)
        }
    };
    let report = cli::run_command(command, &inputs, &options(common)?)?;
    if let Some(path) = &common.plot {
        let table = cli::report_samples(&report, cli::parse_range(&common.range)?, common.samples)?;
        let body = if path.extension().is_some_and(|e| e == "svg") { table.to_svg() } else { table.to_csv() };
        std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let format = match &args.command {
        Cmd::Branches { common, .. }
        | Cmd::Asymptotes { common, .. }
        | Cmd::ParamAsymptotes { common, .. }
        | Cmd::Converge { common, .. }
        | Cmd::Approach { common, .. } => common.format,
    };
    match run(&args.command) {
        Ok(report) => {
            match format {
                Format::Json => print!("{}", cli::to_json(&report)),
                Format::Text => print!("{}", cli::to_text(&report)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            match format {
                Format::Json => {
                    let obj = serde_json::json!({ "error": cli::ErrorDto::from(&e) });
                    println!("{}", serde_json::to_string_pretty(&obj).expect("error serializes"));
                }
                Format::Text => eprintln!("error[{}]: {e}", e.code()),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
