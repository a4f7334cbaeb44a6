//! Command-line surface over the covering computations. Every value crosses
//! the boundary as an exact rational string; output is byte-identical across
//! runs with the same flags.
//!
//! Exit codes: 0 success (and refutation verdict true), 2 usage or
//! precondition violation, 3 refutation verdict false, 4 internal invariant
//! breach (two independent computation routes disagreed).

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bercov_core::glue::{build_covering, refute_overconvergent, ConstructionParams, MatchingRule};
use bercov_core::interval::{Bound, Interval};
use bercov_core::powermap::{fiber, pushforward, pushforward_oracle, split_profile};
use bercov_core::rational::parse_rational;
use bercov_core::valgroup::LogMag;
use bercov_core::{Error, Rational};

#[derive(Parser)]
#[command(
    name = "bercov",
    version,
    about = "Exact splitting profiles and glued coverings on the Berkovich line"
)]
struct Cli {
    /// Output format; defaults to json (dot for fiber-tree).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Push eta_{z1, rho} forward through h levels of z -> z^p.
    Pushforward {
        /// The residual characteristic, a prime.
        #[arg(long)]
        p: u64,
        /// Number of levels.
        #[arg(long = "h")]
        h: u32,
        /// log_p |z1| as an exact rational.
        #[arg(long = "center-mag", allow_hyphen_values = true)]
        center_mag: String,
        /// log_p rho as an exact rational, at most the center magnitude.
        #[arg(long = "radius-log", allow_hyphen_values = true)]
        radius_log: String,
    },
    /// Print the fiber-count step function of z -> z^{p^h} in lambda.
    Profile {
        #[arg(long)]
        p: u64,
        #[arg(long = "h")]
        h: u32,
    },
    /// Print the preimage tree of a point at normalized depth lambda.
    FiberTree {
        #[arg(long)]
        p: u64,
        #[arg(long = "h")]
        h: u32,
        /// lambda = log_p(|z0| / r) >= 0, exact rational.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Build the glued covering of the split annulus.
    Build {
        #[arg(long)]
        p: u64,
        /// Pin-offset scale delta > 0.
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// Gluing circle coordinate.
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
        /// Truncation: torsors 0..=N are built on each side.
        #[arg(long = "N")]
        truncation: u32,
        /// Lower skeleton end (open); defaults to t0 - 2*delta.
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        /// Upper skeleton end (open); defaults to t0 + 2*delta.
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
        /// Emit the component graph over the epsilon-band as DOT.
        #[arg(long)]
        dot: bool,
        /// Band half-width for the component graph; defaults to delta.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
    },
    /// Certify unbounded Gauss-fiber growth of the chain component.
    Refute {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
        /// Band half-width, 0 < epsilon <= delta.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
        /// Strictly increasing truncations, comma separated; at least two.
        #[arg(long = "N-list", value_delimiter = ',')]
        n_list: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
    },
}

enum Failure {
    /// Usage or precondition violation: exit 2.
    Usage(String),
    /// Invariant breach between independent routes: exit 4.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Internal(msg) => Failure::Internal(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    code: ExitCode,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: ExitCode::SUCCESS,
        }
    }
}

fn json_line(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

fn parse_flag_rational(name: &str, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|_| Failure::Usage(format!("--{name}: malformed rational {s:?}")))
}

fn pick_format(
    requested: Option<Format>,
    default: Format,
    allowed: &[Format],
) -> Result<Format, Failure> {
    let format = requested.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(Failure::Usage(
            "unsupported --format for this command".to_string(),
        ))
    }
}

fn construction_params(
    p: u64,
    delta: &str,
    t0: &str,
    truncation: u32,
    lo: Option<&str>,
    hi: Option<&str>,
) -> Result<ConstructionParams, Failure> {
    let delta = parse_flag_rational("delta", delta)?;
    let t0 = parse_flag_rational("t0", t0)?;
    let two = Rational::from_integer(2.into());
    let lo = match lo {
        Some(s) => parse_flag_rational("lo", s)?,
        None => &t0 - &two * &delta,
    };
    let hi = match hi {
        Some(s) => parse_flag_rational("hi", s)?,
        None => &t0 + &two * &delta,
    };
    Ok(ConstructionParams {
        p,
        skeleton: Interval::new(Bound::Open(lo), Bound::Open(hi)),
        t0,
        delta,
        truncation,
        matching: MatchingRule::Shift,
    })
}

/// Largest preimage tree the DOT renderer will materialize.
const MAX_TREE_LEAVES: u64 = 4096;

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Pushforward {
            p,
            h,
            center_mag,
            radius_log,
        } => {
            let format = pick_format(cli.format, Format::Json, &[Format::Json, Format::Table])?;
            let g1 = LogMag::Pow(parse_flag_rational("center-mag", &center_mag)?);
            let t = parse_flag_rational("radius-log", &radius_log)?;
            let result = pushforward(p, h, &g1, &t)?;
            // Cross-check against the expansion oracle whenever the degree
            // is small enough to expand.
            match pushforward_oracle(p, h, &g1, &t) {
                Ok(oracle) if oracle != result => {
                    return Err(Failure::Internal(format!(
                        "pushforward disagrees with the expansion oracle: {} vs {}",
                        result.to_json(),
                        oracle.to_json()
                    )));
                }
                Ok(_) => {}
                Err(Error::DegreeTooLarge { .. }) => {}
                Err(err) => return Err(err.into()),
            }
            Ok(Output::ok(match format {
                Format::Json => json_line(&result.to_json()),
                Format::Table => render::push_result_table(&result),
                Format::Dot => unreachable!(),
            }))
        }
        Command::Profile { p, h } => {
            let format = pick_format(cli.format, Format::Json, &[Format::Json, Format::Table])?;
            let profile = split_profile(p, h)?;
            Ok(Output::ok(match format {
                Format::Json => json_line(&profile.to_json()),
                Format::Table => render::profile_table(&profile),
                Format::Dot => unreachable!(),
            }))
        }
        Command::FiberTree { p, h, lambda } => {
            pick_format(cli.format, Format::Dot, &[Format::Dot])?;
            let lambda = parse_flag_rational("lambda", &lambda)?;
            let profile = fiber(p, h, &LogMag::one(), &-lambda.clone())?;
            // The enumerated count must land on the closed-form profile.
            let expected = split_profile(p, h)?
                .count_exponent_at(&lambda)
                .ok_or_else(|| Failure::Usage("--lambda must be nonnegative".to_string()))?;
            if profile.split_levels() != expected {
                return Err(Failure::Internal(format!(
                    "fiber enumeration found p^{} preimages where the profile predicts p^{}",
                    profile.split_levels(),
                    expected
                )));
            }
            if profile.count > MAX_TREE_LEAVES {
                return Err(Failure::Usage(format!(
                    "preimage tree has {} leaves; the DOT renderer caps at {}",
                    profile.count, MAX_TREE_LEAVES
                )));
            }
            Ok(Output::ok(render::fiber_tree_dot(&profile, &lambda)))
        }
        Command::Build {
            p,
            delta,
            t0,
            truncation,
            lo,
            hi,
            dot,
            epsilon,
        } => {
            let format = if dot {
                Format::Dot
            } else {
                pick_format(
                    cli.format,
                    Format::Json,
                    &[Format::Json, Format::Dot, Format::Table],
                )?
            };
            let params =
                construction_params(p, &delta, &t0, truncation, lo.as_deref(), hi.as_deref())?;
            let covering = build_covering(&params)?;
            match format {
                Format::Json => Ok(Output::ok(json_line(&covering.to_json()))),
                Format::Table => Ok(Output::ok(render::covering_table(&covering))),
                Format::Dot => {
                    let epsilon = match epsilon {
                        Some(s) => parse_flag_rational("epsilon", &s)?,
                        None => params.delta.clone(),
                    };
                    let structure = covering.components_over_neighborhood(&epsilon)?;
                    Ok(Output::ok(render::components_dot(&covering, &structure)))
                }
            }
        }
        Command::Refute {
            p,
            delta,
            t0,
            epsilon,
            n_list,
            lo,
            hi,
        } => {
            let format = pick_format(cli.format, Format::Json, &[Format::Json, Format::Table])?;
            let params = construction_params(
                p,
                &delta,
                &t0,
                *n_list.last().unwrap_or(&0),
                lo.as_deref(),
                hi.as_deref(),
            )?;
            let epsilon = parse_flag_rational("epsilon", &epsilon)?;
            let report = refute_overconvergent(&params, &epsilon, &n_list)?;
            let text = match format {
                Format::Json => json_line(&report.to_json()),
                Format::Table => render::refutation_table(&report),
                Format::Dot => unreachable!(),
            };
            Ok(Output {
                text,
                code: if report.verdict {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(3)
                },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output_path = cli.output.clone();
    match run(cli) {
        Ok(output) => {
            if let Some(path) = output_path {
                if let Err(err) = fs::write(&path, output.text.as_bytes()) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", output.text);
            }
            output.code
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal invariant breach: {msg}");
            ExitCode::from(4)
        }
    }
}
