use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use resilient::census::{bounds, bounds_csv, census, verify_construction, CensusReport};
use resilient::ci::{
    is_ci_spectral, is_correlation_immune, is_resilient, is_resilient_spectral,
    max_resiliency_order,
};
use resilient::codec::{consistent_splittings, encode_splitting, injectivity_audit};
use resilient::constructions::{boolean_lift, q4_from_splitting, simple_lift};
use resilient::splitting::{count_cross_checked, enumerate_filtered, DimFilter};
use resilient::walsh::walsh_transform;
use resilient::{Alphabet, DirectionCode, Error, Phi, Splitting, TruthTable};

/// Resilient Boolean functions from splittings of the Boolean hypercube.
#[derive(Parser)]
#[command(name = "resilient", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Count splittings, matchings and the resilient functions built from them.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0123")]
        phi: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Check balancedness, correlation immunity and resilience of a table file.
    Check {
        file: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Build a resilient function and write it as a table file.
    Construct {
        /// Splitting JSON file to send through the quaternary construction.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["simple_lift", "batch"])]
        splitting: Option<PathBuf>,
        /// Binary table file to lift with F(x,y) = f(x) xor |y|.
        #[arg(long, value_name = "FILE", conflicts_with = "batch")]
        simple_lift: Option<PathBuf>,
        /// Construct from every splitting of Q_2^n, one line per splitting.
        #[arg(long, requires = "n")]
        batch: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "0123")]
        phi: String,
        #[command(flatten)]
        output: Output,
    },
    /// List or count splittings of Q_2^n into faces.
    Splittings {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
        /// Only splittings without single-vertex faces.
        #[arg(long)]
        no_zero_faces: bool,
        #[command(flatten)]
        output: Output,
    },
    /// List or count perfect matchings of the n-cube.
    Matchings {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Print the direction word of a splitting file.
    Encode {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// List every splitting admitting a direction word.
    Decode {
        #[arg(long)]
        n: usize,
        /// Comma-separated labels, e.g. 1,1
        code: String,
        #[command(flatten)]
        output: Output,
    },
    /// Group all splittings of Q_2^n by direction word.
    Audit {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Exact and asymptotic bound values.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Verification(_) => 1,
            Error::Capacity { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().map(|s| s + "\n").collect()
}

fn check_report(f: &TruthTable, order: usize, format: Option<Format>) -> Result<String, Failure> {
    let ci = is_correlation_immune(f, order)?;
    let resilient = is_resilient(f, order)?;
    let max_order = max_resiliency_order(f);
    let spectrum = if f.alphabet() == Alphabet::Binary {
        let s = walsh_transform(f)?;
        if is_ci_spectral(f, order)? != ci || is_resilient_spectral(f, order)? != resilient {
            return Err(Error::Verification(format!(
                "face-counting and spectral checkers disagree at order {order}"
            ))
            .into());
        }
        let spectral_max = f.is_balanced().then(|| {
            (0..=f.arity())
                .take_while(|&r| s.vanishes_up_to(r))
                .last()
                .unwrap_or(0)
        });
        if spectral_max != max_order {
            return Err(Error::Verification(format!(
                "checkers disagree on the maximum resiliency order: {max_order:?} vs {spectral_max:?}"
            ))
            .into());
        }
        Some((s.at(0), s.max_abs(), s.min_nonzero_weight()))
    } else {
        None
    };
    Ok(match format {
        Some(Format::Json) => {
            let spectrum = spectrum.map(|(w0, max_abs, min_w)| {
                serde_json::json!({"w0": w0, "max_abs": max_abs, "min_nonzero_weight": min_w})
            });
            let doc = serde_json::json!({
                "q": f.q(),
                "n": f.arity(),
                "order": order,
                "weight": f.weight(),
                "balanced": f.is_balanced(),
                "correlation_immune": ci,
                "resilient": resilient,
                "max_resiliency_order": max_order,
                "spectrum": spectrum,
            });
            format!("{doc}\n")
        }
        Some(Format::Csv) => format!(
            "q,n,order,weight,balanced,correlation_immune,resilient,max_resiliency_order\n{},{},{},{},{},{},{},{}\n",
            f.q(),
            f.arity(),
            order,
            f.weight(),
            f.is_balanced(),
            ci,
            resilient,
            max_order.map(|r| r.to_string()).unwrap_or_default()
        ),
        None => {
            let mut out = format!(
                "q: {}\nn: {}\nweight: {}\nbalanced: {}\ncorrelation_immune({order}): {ci}\nresilient({order}): {resilient}\nmax_resiliency_order: {}\n",
                f.q(),
                f.arity(),
                f.weight(),
                f.is_balanced(),
                max_order.map(|r| r.to_string()).unwrap_or_else(|| "none".into()),
            );
            match spectrum {
                Some((w0, max_abs, min_w)) => out.push_str(&format!(
                    "walsh: W(0)={w0} max|W|={max_abs} min_nonzero_mask_weight={}\n",
                    min_w.map(|w| w.to_string()).unwrap_or_else(|| "none".into())
                )),
                None => out.push_str("walsh: n/a (quaternary)\n"),
            }
            out
        }
    })
}

fn construct_from_splitting(s: &Splitting, phi: Phi) -> Result<TruthTable, Failure> {
    let q4 = q4_from_splitting(s)?;
    let lift = boolean_lift(&q4, phi)?;
    verify_construction(s, &q4, &lift)?;
    Ok(lift)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Census {
            n,
            phi,
            format,
            output,
        } => {
            let report = census(n, phi.parse()?)?;
            for note in &report.skipped {
                eprintln!("skipped {note}");
            }
            let text = match format {
                Format::Csv => format!("{}\n{}\n", CensusReport::CSV_HEADER, report.csv_row()),
                Format::Json => format!("{}\n", report.to_json()),
            };
            emit(&output, &text)
        }
        Command::Check {
            file,
            order,
            format,
        } => {
            let f = TruthTable::parse_file(&read(&file)?)?;
            print!("{}", check_report(&f, order, format)?);
            Ok(())
        }
        Command::Construct {
            splitting,
            simple_lift: inner,
            batch,
            n,
            phi,
            output,
        } => {
            let phi: Phi = phi.parse()?;
            if let Some(path) = splitting {
                let s = Splitting::from_json(&read(&path)?)?;
                let f = construct_from_splitting(&s, phi)?;
                emit(&output, &f.to_file_string())
            } else if let Some(path) = inner {
                let f = TruthTable::parse_file(&read(&path)?)?;
                let lifted = simple_lift(&f)?;
                let m = f.arity();
                if m > 0 {
                    let order = m - 1;
                    if !(is_resilient(&lifted, order)? && is_resilient_spectral(&lifted, order)?) {
                        return Err(Error::Verification(format!(
                            "simple lift is not resilient of order {order}"
                        ))
                        .into());
                    }
                }
                emit(&output, &lifted.to_file_string())
            } else if batch {
                let n = n.expect("clap enforces --n with --batch");
                if n > resilient::census::MAX_FUNCTION_CENSUS_N {
                    return Err(Error::Capacity {
                        what: "batch construction",
                        max: resilient::census::MAX_FUNCTION_CENSUS_N,
                        n,
                    }
                    .into());
                }
                let mut out = String::new();
                for s in enumerate_filtered(n, DimFilter::ALL)? {
                    let f = construct_from_splitting(&s, phi)?;
                    out.push_str(&format!("{} {}\n", s.hash(), f.bit_string()));
                }
                emit(&output, &out)
            } else {
                Err(input_error(
                    "construct needs one of --splitting, --simple-lift or --batch".into(),
                ))
            }
        }
        Command::Splittings {
            n,
            count,
            no_zero_faces,
            output,
        } => {
            let filter = if no_zero_faces {
                DimFilter::NO_ZERO_FACES
            } else {
                DimFilter::ALL
            };
            if count {
                emit(&output, &format!("{}\n", count_cross_checked(n, filter)?))
            } else {
                emit(
                    &output,
                    &lines(enumerate_filtered(n, filter)?.map(|s| s.to_json())),
                )
            }
        }
        Command::Matchings { n, count, output } => {
            if n == 0 {
                return Err(input_error("perfect matchings need n >= 1".into()));
            }
            if count {
                emit(
                    &output,
                    &format!("{}\n", count_cross_checked(n, DimFilter::EDGES)?),
                )
            } else {
                emit(
                    &output,
                    &lines(enumerate_filtered(n, DimFilter::EDGES)?.map(|s| s.to_json())),
                )
            }
        }
        Command::Encode { file, output } => {
            let s = Splitting::from_json(&read(&file)?)?;
            emit(&output, &format!("{}\n", encode_splitting(&s)))
        }
        Command::Decode { n, code, output } => {
            let c = DirectionCode::parse(n, &code)?;
            let found = consistent_splittings(&c)?;
            emit(&output, &lines(found.iter().map(Splitting::to_json)))
        }
        Command::Audit { n, output } => {
            emit(&output, &format!("{}\n", injectivity_audit(n)?.to_json()))
        }
        Command::Bounds { n, format, output } => {
            let rows = bounds(n)?;
            let text = match format {
                Format::Csv => bounds_csv(&rows),
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string(&rows).expect("bounds serialize")
                ),
            };
            emit(&output, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
