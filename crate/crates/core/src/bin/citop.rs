use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use complete_intersections::invariants::parse_degrees;
use complete_intersections::report::{self, OutputFormat};
use complete_intersections::{
    classify_pair, search_pairs, verify_corpus, verify_known_pair, C1Filter, Corpus, Error,
    InvariantProfile, KeyMode, Multidegree, PairCheck, SearchConfig,
};

/// Topological invariants of smooth complete intersections.
#[derive(Parser)]
#[command(name = "citop", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Invariant,
    PowerSum,
}

impl From<Mode> for KeyMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Invariant => KeyMode::Invariant,
            Mode::PowerSum => KeyMode::PowerSum,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute d, Chern and Pontrjagin coefficients and the Euler characteristic.
    Compute {
        #[arg(long)]
        dim: u32,
        /// Comma-separated degrees, e.g. 6,5,3.
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
    },
    /// Classify two complete intersections of the same dimension.
    ClassifyPair {
        #[arg(long)]
        dim: u32,
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Compare the match keys of two multidegrees and classify them if equal.
    VerifyPair {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value = "invariant")]
        mode: Mode,
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Search for distinct multidegrees sharing a match key.
    Search {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        max_codim: usize,
        #[arg(long, default_value_t = 1)]
        min_codim: usize,
        #[arg(long, value_enum, default_value = "invariant")]
        mode: Mode,
        /// Keep only pairs with different c_1.
        #[arg(long, conflicts_with = "equal_c1")]
        distinct_c1: bool,
        /// Keep only pairs with equal c_1.
        #[arg(long)]
        equal_c1: bool,
        /// Skip pairs where both members are in the small-codimension rigid range.
        #[arg(long)]
        rigidity_pruning: bool,
        #[arg(long)]
        max_total_degree: Option<BigInt>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = complete_intersections::search::DEFAULT_MAX_TABLE_SIZE)]
        max_table_size: usize,
    },
    /// Recompute every record of the regression corpus.
    VerifyTables {
        /// Corpus file or directory; the embedded corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Factor the total degree from the individual degrees.
    Factor {
        #[arg(allow_hyphen_values = true)]
        degrees: String,
    },
}

fn multidegree(raw: &str) -> Result<Multidegree, Error> {
    Multidegree::canonicalize(&parse_degrees(raw)?)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let format = cli.format;
    match cli.command {
        Command::Compute { dim, degrees } => {
            let p = InvariantProfile::compute(dim, &multidegree(&degrees)?)?;
            print!("{}", report::render_profile(&p, format));
        }
        Command::ClassifyPair { dim, first, second } => {
            let v = classify_pair(dim, &multidegree(&first)?, &multidegree(&second)?)?;
            print!("{}", report::render_verdict(&v, format));
        }
        Command::VerifyPair {
            dim,
            mode,
            first,
            second,
        } => {
            let check = verify_known_pair(
                dim,
                &parse_degrees(&first)?,
                &parse_degrees(&second)?,
                mode.into(),
            )?;
            print!("{}", report::render_pair_check(&check, format));
            if matches!(check, PairCheck::Mismatch(_)) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Search {
            dim,
            max_degree,
            max_codim,
            min_codim,
            mode,
            distinct_c1,
            equal_c1,
            rigidity_pruning,
            max_total_degree,
            workers,
            max_table_size,
        } => {
            let config = SearchConfig {
                n: dim,
                max_degree,
                min_codim,
                max_codim,
                max_total_degree,
                mode: mode.into(),
                c1_filter: if distinct_c1 {
                    C1Filter::Distinct
                } else if equal_c1 {
                    C1Filter::Equal
                } else {
                    C1Filter::Any
                },
                rigidity_pruning,
                workers,
                max_table_size,
            };
            let reports = search_pairs(&config)?;
            print!("{}", report::render_search(&config, &reports, format));
        }
        Command::VerifyTables { corpus } => {
            let corpus = match corpus {
                Some(path) => Corpus::load(&path)?,
                None => Corpus::embedded()?,
            };
            let result = verify_corpus(&corpus)?;
            print!("{}", report::render_verification(&result, format));
            if !result.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Factor { degrees } => {
            let md = multidegree(&degrees)?;
            let f = md.factorization()?;
            print!("{}", report::render_factorization(&md, &f, format));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e @ Error::ResourceLimit { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
