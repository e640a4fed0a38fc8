mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use synsent::Encoding;

#[derive(Parser)]
#[command(
    name = "synsent",
    version,
    about = "Syntax-aware lexicon sentiment analysis over UD trees"
)]
struct Cli {
    /// Treat rejected sentences and malformed labels as errors.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Linearize a CoNLL-U treebank into a Label TSV file.
    Encode {
        input: PathBuf,
        #[arg(long, default_value = "rel")]
        encoding: Encoding,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild trees from a Label TSV file.
    Decode {
        input: PathBuf,
        #[arg(long, default_value = "rel")]
        encoding: Encoding,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train the frequency tagger on a CoNLL-U treebank.
    TrainTagger {
        treebank: PathBuf,
        #[arg(long, default_value = "rel")]
        encoding: Encoding,
        #[arg(long)]
        out: PathBuf,
    },
    /// Predict labels for CoNLL-U sentences or raw text.
    Tag {
        input: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score reviews from CoNLL-U trees or JSON-lines reviews.
    Analyze(AnalyzeArgs),
    /// UAS and LAS of predicted trees against gold trees.
    EvaluateParse {
        gold: PathBuf,
        pred: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Accuracy, confusion matrix and F1 of analyze output against gold stars.
    EvaluateSentiment {
        /// JSON-lines reviews with gold stars.
        gold: PathBuf,
        /// JSON-lines output of `analyze`.
        pred: PathBuf,
        #[arg(long, value_enum, default_value_t = SentimentScale::Ternary)]
        scale: SentimentScale,
        #[arg(long)]
        json: bool,
    },
    /// Merge lexicons; the first file wins on conflicts.
    MergeDicts {
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a lexicon from review titles and their star ratings.
    BuildDict {
        reviews: PathBuf,
        #[arg(long, value_enum, default_value_t = Titles::Short)]
        titles: Titles,
        #[arg(long, default_value_t = 0.6)]
        sdv_threshold: f64,
        #[arg(long, default_value_t = 5)]
        min_count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure decode and scoring throughput.
    Bench {
        input: PathBuf,
        #[command(flatten)]
        dicts: DictArgs,
        #[arg(long, default_value = "rel")]
        encoding: Encoding,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
        /// Free text printed with the results, e.g. the CPU model.
        #[arg(long)]
        hardware_note: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct DictArgs {
    /// Sentiment lexicon TSV; repeat in precedence order.
    #[arg(long = "dict", required = true)]
    dicts: Vec<PathBuf>,
    /// Modifier TSV; defaults to the bundled English list.
    #[arg(long)]
    modifiers: Option<PathBuf>,
    /// Negation word list; defaults to the bundled English list.
    #[arg(long)]
    negations: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[command(flatten)]
    dicts: DictArgs,
    #[arg(long, value_enum, default_value_t = Agg::Sum)]
    agg: Agg,
    /// Include per-node computations in every record.
    #[arg(long)]
    trace: bool,
    /// Frequency model; required for JSON-lines input, re-tags CoNLL-U input.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// Decide by file extension.
    Auto,
    Conllu,
    Jsonl,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Agg {
    Sum,
    Majority,
}

#[derive(Clone, Copy, ValueEnum)]
enum SentimentScale {
    Ternary,
    Stars,
}

#[derive(Clone, Copy, ValueEnum)]
enum Titles {
    Short,
    All,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<commands::UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
