use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chaindev::Metric;
use chaindev_cli::commands::{self, ExportFormat};
use chaindev_cli::error::CliError;
use chaindev_cli::generate::{self, GenerateKind};
use chaindev_cli::input::{InputDocument, InputFormat};
use chaindev_cli::output::{to_json, ErrorBody, ErrorDoc};

/// Chain distances, cluster trees, widths, spanning certificates and chain
/// developments of finite metric spaces.
#[derive(Debug, Parser)]
#[command(name = "chaindev", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    /// Input document (JSON, or CSV point lists)
    #[arg(long)]
    input: PathBuf,
    /// Input format: csv or json; inferred from the extension when omitted
    #[arg(long)]
    format: Option<String>,
    /// Metric for point inputs: euclidean, chebyshev or manhattan
    #[arg(long)]
    metric: Option<String>,
    /// Write the output document here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the chain (minimax) distance matrix
    Chaindist(SpaceArgs),
    /// Build the cluster tree
    Tree {
        #[command(flatten)]
        space: SpaceArgs,
        /// Export format: json or dot
        #[arg(long, default_value = "json")]
        export: String,
    },
    /// Compute the width (sum of r(v) * (n(v) - 1) over tree nodes)
    Width(SpaceArgs),
    /// Measure of disconnectivity: MST weight plus the connection pairs
    Dis(SpaceArgs),
    /// Build a chain development (coordinates on the real line)
    Develop(SpaceArgs),
    /// Verify a development document against its space
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        /// Development document produced by `develop`
        #[arg(long)]
        dev: PathBuf,
    },
    /// Analyze a self-similar spec: existence verdict, width series, stretch
    Selfsim {
        /// Spec document: {"branching", "root_diameter", "ratio"}
        #[arg(long)]
        input: PathBuf,
        /// Number of series terms; also the stretch depth
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// Stretch the depth-N development by this extra measure
        #[arg(long, allow_negative_numbers = true)]
        stretch: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate example spaces
    Generate {
        /// random-points, cantor, cantor-square or harmonic
        #[arg(long)]
        kind: String,
        /// Point count (random-points, harmonic)
        #[arg(long)]
        count: Option<u64>,
        /// Construction depth (cantor, cantor-square)
        #[arg(long)]
        depth: Option<u32>,
        /// Dimension for random-points
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// RNG seed for random-points
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Metric recorded for random-points
        #[arg(long, default_value = "euclidean")]
        metric: String,
        /// Output format: json or csv
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_metric(raw: &Option<String>) -> Result<Option<Metric>, CliError> {
    raw.as_deref()
        .map(|m| m.parse::<Metric>().map_err(CliError::schema))
        .transpose()
}

fn parse_input_format(raw: &Option<String>) -> Result<Option<InputFormat>, CliError> {
    match raw.as_deref() {
        None => Ok(None),
        Some("csv") => Ok(Some(InputFormat::Csv)),
        Some("json") => Ok(Some(InputFormat::Json)),
        Some(other) => Err(CliError::schema(format!(
            "unknown input format {other:?}, expected csv or json"
        ))),
    }
}

fn load_space(args: &SpaceArgs) -> Result<chaindev::FiniteMetricSpace, CliError> {
    let format = parse_input_format(&args.format)?;
    let metric = parse_metric(&args.metric)?;
    InputDocument::read(&args.input, format)?.to_space(metric)
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Chaindist(args) => {
            let text = commands::cmd_chaindist(&load_space(&args)?)?;
            emit(&args.out, text)
        }
        Command::Tree { space, export } => {
            let export: ExportFormat = export.parse().map_err(CliError::schema)?;
            let text = commands::cmd_tree(&load_space(&space)?, export)?;
            emit(&space.out, text)
        }
        Command::Width(args) => {
            let text = commands::cmd_width(&load_space(&args)?)?;
            emit(&args.out, text)
        }
        Command::Dis(args) => {
            let text = commands::cmd_dis(&load_space(&args)?)?;
            emit(&args.out, text)
        }
        Command::Develop(args) => {
            let text = commands::cmd_develop(&load_space(&args)?)?;
            emit(&args.out, text)
        }
        Command::Verify { space, dev } => {
            let dev_text = std::fs::read_to_string(&dev).map_err(|source| CliError::Io {
                path: dev.display().to_string(),
                source,
            })?;
            let dev_doc = serde_json::from_str(&dev_text)
                .map_err(|e| CliError::schema(format!("malformed development document: {e}")))?;
            let text = commands::cmd_verify(&load_space(&space)?, &dev_doc)?;
            emit(&space.out, text)
        }
        Command::Selfsim {
            input,
            depth,
            stretch,
            out,
        } => {
            let spec_text = std::fs::read_to_string(&input).map_err(|source| CliError::Io {
                path: input.display().to_string(),
                source,
            })?;
            let spec = commands::parse_spec(&spec_text)?;
            let text = commands::cmd_selfsim(&spec, depth, stretch)?;
            emit(&out, text)
        }
        Command::Generate {
            kind,
            count,
            depth,
            dim,
            seed,
            metric,
            format,
            out,
        } => {
            let kind: GenerateKind = kind.parse().map_err(CliError::schema)?;
            let cap = chaindev_cli::leaf_cap()?;
            let need_count = || {
                count.ok_or_else(|| CliError::schema("this generator needs --count"))
            };
            let need_depth = || {
                depth.ok_or_else(|| CliError::schema("this generator needs --depth"))
            };
            let doc = match kind {
                GenerateKind::RandomPoints => {
                    let metric = metric
                        .parse::<Metric>()
                        .map_err(CliError::schema)?;
                    generate::random_points(need_count()?, dim, seed, metric, cap)?
                }
                GenerateKind::Cantor => generate::cantor(need_depth()?, cap)?,
                GenerateKind::CantorSquare => generate::cantor_square(need_depth()?, cap)?,
                GenerateKind::Harmonic => generate::harmonic(need_count()?, cap)?,
            };
            let text = match format.as_str() {
                "json" => to_json(&doc),
                "csv" => doc.to_csv()?,
                other => {
                    return Err(CliError::schema(format!(
                        "unknown output format {other:?}, expected json or csv"
                    )))
                }
            };
            emit(&out, text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            print!(
                "{}",
                to_json(&ErrorDoc {
                    error: ErrorBody {
                        kind: err.kind().to_string(),
                        message: err.to_string(),
                    },
                })
            );
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
