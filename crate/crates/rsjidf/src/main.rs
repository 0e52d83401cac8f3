use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use rsjidf::analysis::{self, VerifyGrid};
use rsjidf::index::{read_corpus, tokenize, InvertedIndex};
use rsjidf::retrieval::{self, read_queries_from_path};
use rsjidf::scheme::WeightingScheme;
use rsjidf::weighting::LogBase;

/// Binary-independence term weighting and ranked retrieval.
#[derive(Parser)]
#[command(name = "rsjidf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an inverted index from a corpus file
    Index {
        /// Corpus: `.tsv` with `<doc id>\t<text>` lines, or `.jsonl` with
        /// one `{"id", "text"}` object per line
        input: PathBuf,
        /// Where to write the index
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rank documents for every query in a query file
    Query {
        /// Index file written by `rsjidf index`
        index: PathBuf,
        /// Query file with `<query id>\t<text>` lines
        queries: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Results per query
        #[arg(
            short = 'k',
            long = "top-k",
            default_value_t = 10,
            value_parser = clap::value_parser!(u64).range(1..)
        )]
        top_k: u64,
        /// Tag for the last run-file column (defaults to the scheme label)
        #[arg(long)]
        run_tag: Option<String>,
        /// Where to write the run file (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a CSV of per-term weights under one or more schemes
    Weights {
        /// Index file written by `rsjidf index`
        index: PathBuf,
        /// Scheme to tabulate; repeat for more columns
        #[arg(long = "scheme", value_name = "SCHEME", default_value = "usualidf")]
        schemes: Vec<String>,
        /// Logarithm base: e, 2, or 10 (flag beats RSJ_LOG_BASE)
        #[arg(long, env = "RSJ_LOG_BASE", value_enum)]
        log_base: Option<LogBaseArg>,
        /// Only tabulate these terms (normalized like document text)
        #[arg(long, num_args = 1..)]
        terms: Option<Vec<String>>,
        /// Where to write the CSV (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Trace a scheme's relevance-probability estimate over df = 0..=N
    Curve {
        /// Corpus size N
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Where to write the CSV (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute every closed-form weight from the generic log-odds weight
    /// and cross-check ranking against scoring every document
    Verify,
}

/// Scheme selection shared by `query` and `curve`.
#[derive(Args)]
struct SchemeArgs {
    /// Weighting scheme: usualidf, ch[:pi=..], rw[:pi=..], lift:L=..,
    /// or liftfn:{const,L=..|prop,c=..|power,c=..,beta=..|scaled,alpha=..}
    #[arg(long, default_value = "usualidf")]
    scheme: String,
    /// Logarithm base: e, 2, or 10 (flag beats RSJ_LOG_BASE)
    #[arg(long, env = "RSJ_LOG_BASE", value_enum)]
    log_base: Option<LogBaseArg>,
}

impl SchemeArgs {
    fn resolve(&self) -> anyhow::Result<WeightingScheme> {
        resolve_scheme(&self.scheme, self.log_base)
    }
}

fn resolve_scheme(text: &str, base: Option<LogBaseArg>) -> anyhow::Result<WeightingScheme> {
    let scheme = WeightingScheme::parse(text)?;
    Ok(match base {
        Some(base) => scheme.with_log_base(base.into()),
        None => scheme,
    })
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LogBaseArg {
    E,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

impl From<LogBaseArg> for LogBase {
    fn from(arg: LogBaseArg) -> Self {
        match arg {
            LogBaseArg::E => LogBase::E,
            LogBaseArg::Two => LogBase::Two,
            LogBaseArg::Ten => LogBase::Ten,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap exits usage errors with 2 by default; 2 is reserved for
            // scheme degeneracy here, so usage errors become 1
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("rsjidf: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Index { input, output } => {
            let docs = read_corpus(&input)
                .with_context(|| format!("reading corpus {}", input.display()))?;
            let index = InvertedIndex::build(&docs)?;
            index
                .save_to_path(&output)
                .with_context(|| format!("writing index {}", output.display()))?;
            println!("indexed N={} terms={}", index.corpus_size(), index.vocab_size());
            Ok(ExitCode::SUCCESS)
        }
        Command::Query { index, queries, scheme, top_k, run_tag, output } => {
            let index = load_index(&index)?;
            if index.corpus_size() == 0 {
                anyhow::bail!("index holds no documents");
            }
            let queries = read_queries_from_path(&queries)
                .with_context(|| format!("reading queries {}", queries.display()))?;
            let scheme = scheme.resolve()?;
            let tag = run_tag.unwrap_or_else(|| scheme.to_string());
            let mut lists = Vec::with_capacity(queries.len());
            for query in &queries {
                match retrieval::rank(&index, query, &scheme, top_k as usize) {
                    Ok(list) => lists.push(list),
                    Err(err) => {
                        eprintln!("rsjidf: query {}: {err}", query.query_id());
                        return Ok(ExitCode::from(2));
                    }
                }
            }
            let mut out = output_writer(output.as_deref())?;
            retrieval::write_run(&lists, &tag, &mut out)?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Weights { index, schemes, log_base, terms, output } => {
            let index = load_index(&index)?;
            let schemes = schemes
                .iter()
                .map(|text| resolve_scheme(text, log_base))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let terms: Option<Vec<String>> =
                terms.map(|list| list.iter().flat_map(|t| tokenize(t)).collect());
            let table = analysis::weight_table(&index, &schemes, terms.as_deref());
            let mut out = output_writer(output.as_deref())?;
            table.to_csv(&mut out)?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve { n, scheme, output } => {
            let scheme = scheme.resolve()?;
            let points = analysis::estimator_curve(n, &scheme, 0..=n);
            let mut out = output_writer(output.as_deref())?;
            analysis::curve_to_csv(&points, &mut out)?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let report = analysis::verify(&VerifyGrid::default());
            let stdout = io::stdout().lock();
            let mut w = BufWriter::new(stdout);
            report.write_text(&mut w)?;
            w.flush()?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn load_index(path: &Path) -> anyhow::Result<InvertedIndex> {
    InvertedIndex::load_from_path(path)
        .with_context(|| format!("reading index {}", path.display()))
}

/// A buffered writer over the given file, or stdout when no path is given.
fn output_writer(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
