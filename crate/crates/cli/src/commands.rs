use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use log::warn;
use rayon::prelude::*;
use synsent::conllu::{parse_conllu, simple_tokenize, write_conllu, DependencyTree};
use synsent::encoding::{decode, decode_with_repairs, encode, read_labels, write_labels};
use synsent::eval::{bench, eval_parse, eval_stars, eval_stars_ternary};
use synsent::lexicon::{
    build_title_dictionary, merge, Lexicon, ModifierLexicon, NegationSet, TitleDictionaryConfig,
    TitleMode,
};
use synsent::pipeline::{
    analyze_doc, decode_and_score, group_reviews, read_reviews, review_doc, LabelSource,
    ResultRecord, ReviewDoc,
};
use synsent::polarity::{Aggregation, Resources};
use synsent::scale::Polarity;
use synsent::{Encoding, FrequencyModel};

use crate::{Agg, AnalyzeArgs, Cli, Command, DictArgs, InputFormat, SentimentScale, Titles};

/// A bad flag combination; exits with status 2.
#[derive(Debug)]
pub struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    UsageError(message.into()).into()
}

pub fn run(cli: Cli) -> Result<()> {
    let strict = cli.strict;
    match cli.command {
        Command::Encode {
            input,
            encoding,
            out,
        } => encode_cmd(&input, encoding, out, strict),
        Command::Decode {
            input,
            encoding,
            out,
        } => decode_cmd(&input, encoding, out, strict),
        Command::TrainTagger {
            treebank,
            encoding,
            out,
        } => {
            let trees = read_treebank(&treebank, strict)?;
            let model = FrequencyModel::train(&trees, encoding)?;
            model.save(&out)?;
            eprintln!(
                "trained on {} sentences, wrote {}",
                trees.len(),
                out.display()
            );
            Ok(())
        }
        Command::Tag {
            input,
            model,
            format,
            out,
        } => tag_cmd(&input, &model, format, out, strict),
        Command::Analyze(args) => analyze_cmd(args, strict),
        Command::EvaluateParse { gold, pred, json } => {
            let gold = read_treebank(&gold, strict)?;
            let pred = read_treebank(&pred, strict)?;
            let metrics = eval_parse(&gold, &pred)?;
            if json {
                println!("{}", serde_json::to_string(&metrics)?);
            } else {
                println!("{metrics}");
            }
            Ok(())
        }
        Command::EvaluateSentiment {
            gold,
            pred,
            scale,
            json,
        } => evaluate_sentiment_cmd(&gold, &pred, scale, json),
        Command::MergeDicts { inputs, out } => {
            let lexicons = inputs
                .iter()
                .map(|p| load_lexicon(p))
                .collect::<Result<Vec<_>>>()?;
            let merged = merge(&lexicons[0], &lexicons[1..]);
            emit(out.as_deref(), &merged.to_tsv())
        }
        Command::BuildDict {
            reviews,
            titles,
            sdv_threshold,
            min_count,
            out,
        } => {
            let config = TitleDictionaryConfig {
                mode: match titles {
                    Titles::Short => TitleMode::Short,
                    Titles::All => TitleMode::All,
                },
                sdv_threshold,
                min_count,
            };
            build_dict_cmd(&reviews, &config, out)
        }
        Command::Bench {
            input,
            dicts,
            encoding,
            repetitions,
            hardware_note,
            json,
        } => {
            if repetitions == 0 {
                return Err(usage("--repetitions must be at least 1"));
            }
            bench_cmd(
                &input,
                &dicts,
                encoding,
                repetitions,
                hardware_note,
                json,
                strict,
            )
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_treebank(path: &Path, strict: bool) -> Result<Vec<DependencyTree>> {
    let outcome = parse_conllu(&read(path)?);
    for warning in &outcome.warnings {
        warn!("{}: {warning}", path.display());
    }
    for rejected in &outcome.rejected {
        warn!("{}: skipped sentence: {rejected}", path.display());
    }
    if strict && !outcome.rejected.is_empty() {
        bail!(
            "{}: {} invalid sentences",
            path.display(),
            outcome.rejected.len()
        );
    }
    Ok(outcome.trees)
}

fn encode_cmd(input: &Path, encoding: Encoding, out: Option<PathBuf>, strict: bool) -> Result<()> {
    let trees = read_treebank(input, strict)?;
    let sequences = trees
        .iter()
        .map(|t| encode(t, encoding).with_context(|| format!("sentence {}", t.sentence_id())))
        .collect::<Result<Vec<_>>>()?;
    emit(out.as_deref(), &write_labels(&sequences))
}

fn decode_cmd(input: &Path, encoding: Encoding, out: Option<PathBuf>, strict: bool) -> Result<()> {
    let file = read_labels(&read(input)?, encoding);
    for warning in &file.warnings {
        warn!("{}: {warning}", input.display());
    }
    if strict && !file.warnings.is_empty() {
        bail!(
            "{}: {} malformed labels",
            input.display(),
            file.warnings.len()
        );
    }

    let mut repaired = 0;
    let mut total = 0;
    let trees: Vec<DependencyTree> = file
        .sequences
        .iter()
        .enumerate()
        .map(|(i, labels)| {
            let decoded = decode_with_repairs(labels);
            if !decoded.repairs.is_empty() {
                let list: Vec<String> = decoded.repairs.iter().map(ToString::to_string).collect();
                warn!("sentence {}: repaired: {}", i + 1, list.join("; "));
            }
            total += decoded.repairs.len();
            repaired += usize::from(!decoded.repairs.is_empty());
            decoded.tree
        })
        .collect();
    if total > 0 {
        warn!("{total} repairs in {repaired} of {} sentences", trees.len());
    }
    emit(out.as_deref(), &write_conllu(&trees))
}

fn resolve_format(path: &Path, format: InputFormat) -> InputFormat {
    if format != InputFormat::Auto {
        return format;
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("jsonl" | "json") => InputFormat::Jsonl,
        Some("txt") => InputFormat::Text,
        _ => InputFormat::Conllu,
    }
}

fn tag_cmd(
    input: &Path,
    model: &Path,
    format: InputFormat,
    out: Option<PathBuf>,
    strict: bool,
) -> Result<()> {
    let model = FrequencyModel::load(model)?;
    let sentences: Vec<Vec<String>> = match resolve_format(input, format) {
        InputFormat::Conllu => read_treebank(input, strict)?
            .iter()
            .map(|t| t.forms().map(str::to_owned).collect())
            .collect(),
        InputFormat::Jsonl => read_reviews(&read(input)?)?
            .iter()
            .flat_map(|r| simple_tokenize(r.text.as_deref().unwrap_or_default()))
            .collect(),
        _ => simple_tokenize(&read(input)?),
    };
    let sequences: Vec<_> = sentences.iter().filter_map(|s| model.predict(s)).collect();
    emit(out.as_deref(), &write_labels(&sequences))
}

fn load_lexicon(path: &Path) -> Result<Lexicon> {
    let (lexicon, warnings) =
        Lexicon::load(path).with_context(|| format!("lexicon {}", path.display()))?;
    for warning in warnings {
        warn!("{}: {warning}", path.display());
    }
    Ok(lexicon)
}

struct Dictionaries {
    lexicon: Lexicon,
    modifiers: ModifierLexicon,
    negations: NegationSet,
}

impl Dictionaries {
    fn load(args: &DictArgs) -> Result<Self> {
        let lexicons = args
            .dicts
            .iter()
            .map(|p| load_lexicon(p))
            .collect::<Result<Vec<_>>>()?;
        let modifiers = match &args.modifiers {
            Some(path) => {
                let (m, warnings) = ModifierLexicon::load(path)
                    .with_context(|| format!("modifiers {}", path.display()))?;
                for warning in warnings {
                    warn!("{}: {warning}", path.display());
                }
                m
            }
            None => ModifierLexicon::english(),
        };
        let negations = match &args.negations {
            Some(path) => {
                NegationSet::load(path).with_context(|| format!("negations {}", path.display()))?
            }
            None => NegationSet::english(),
        };
        Ok(Dictionaries {
            lexicon: merge(&lexicons[0], &lexicons[1..]),
            modifiers,
            negations,
        })
    }

    fn resources(&self) -> Resources<'_> {
        Resources {
            lexicon: &self.lexicon,
            modifiers: &self.modifiers,
            negations: &self.negations,
        }
    }
}

fn analyze_cmd(args: AnalyzeArgs, strict: bool) -> Result<()> {
    let format = resolve_format(&args.input, args.format);
    if format == InputFormat::Text {
        return Err(usage(
            "--format text is not accepted by analyze; use conllu or jsonl",
        ));
    }
    if format == InputFormat::Jsonl && args.model.is_none() {
        return Err(usage("--model is required for JSON-lines input"));
    }
    if args.threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }

    let dictionaries = Dictionaries::load(&args.dicts)?;
    let model = args
        .model
        .as_deref()
        .map(FrequencyModel::load)
        .transpose()?;
    let docs = match (format, &model) {
        (InputFormat::Jsonl, Some(model)) => read_reviews(&read(&args.input)?)?
            .iter()
            .map(|r| review_doc(model, r))
            .collect(),
        _ => {
            let mut docs = group_reviews(read_treebank(&args.input, strict)?);
            if let Some(model) = &model {
                let source = LabelSource::Model(model.clone());
                for doc in &mut docs {
                    doc.trees = source.label_trees(&doc.trees)?.iter().map(decode).collect();
                }
            }
            docs
        }
    };

    let aggregation = match args.agg {
        Agg::Sum => Aggregation::Sum,
        Agg::Majority => Aggregation::Majority,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    let resources = dictionaries.resources();
    let results: Vec<_> = pool.install(|| {
        docs.par_iter()
            .map(|doc| analyze_doc(doc, resources, aggregation))
            .collect()
    });

    let mut lines = String::new();
    for (doc, result) in docs.iter().zip(results) {
        match result {
            Ok(result) => {
                lines.push_str(&ResultRecord::new(doc, &result, args.trace).to_json());
                lines.push('\n');
            }
            Err(err) if !strict => warn!("skipped: {err}"),
            Err(err) => return Err(err.into()),
        }
    }
    emit(args.out.as_deref(), &lines)
}

/// Reads `(id, value)` pairs from a JSON-lines file, failing on the first
/// record without `field`.
fn json_field<T>(
    path: &Path,
    field: &str,
    convert: impl Fn(&serde_json::Value) -> Option<T>,
) -> Result<Vec<(String, T)>> {
    let mut out = Vec::new();
    for (idx, line) in read(path)?.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(line)
            .with_context(|| format!("{}: line {}", path.display(), idx + 1))?;
        let id = value["id"].as_str().map(str::to_owned);
        match (id, value.get(field).and_then(&convert)) {
            (Some(id), Some(v)) => out.push((id, v)),
            _ => bail!(
                "{}: line {}: missing id or {field}",
                path.display(),
                idx + 1
            ),
        }
    }
    Ok(out)
}

/// Orders predictions like the gold records, matching by id.
fn align<G, T>(gold: &[(String, G)], pred: Vec<(String, T)>) -> Result<Vec<T>> {
    let mut by_id: HashMap<String, T> = pred.into_iter().collect();
    gold.iter()
        .map(|(id, _)| {
            by_id
                .remove(id)
                .with_context(|| format!("no prediction for review '{id}'"))
        })
        .collect()
}

fn evaluate_sentiment_cmd(
    gold: &Path,
    pred: &Path,
    scale: SentimentScale,
    json: bool,
) -> Result<()> {
    let stars = |v: &serde_json::Value| v.as_u64().and_then(|s| u8::try_from(s).ok());
    let gold = json_field(gold, "stars", stars)?;

    let gold_stars: Vec<u8> = gold.iter().map(|(_, s)| *s).collect();
    let metrics = match scale {
        SentimentScale::Ternary => {
            let pred = json_field(pred, "label", |v| v.as_str()?.parse::<Polarity>().ok())?;
            eval_stars_ternary(&gold_stars, &align(&gold, pred)?)?
        }
        SentimentScale::Stars => {
            let pred = json_field(pred, "stars", stars)?;
            eval_stars(&gold_stars, &align(&gold, pred)?)?
        }
    };
    if json {
        println!("{}", serde_json::to_string(&metrics)?);
    } else {
        println!("{metrics}");
    }
    Ok(())
}

fn build_dict_cmd(
    reviews: &Path,
    config: &TitleDictionaryConfig,
    out: Option<PathBuf>,
) -> Result<()> {
    let records = read_reviews(&read(reviews)?)?;
    let titled: Vec<(String, u8)> = records
        .into_iter()
        .filter_map(|r| match (r.title, r.stars) {
            (Some(title), Some(stars)) => Some((title, stars)),
            _ => {
                warn!("review '{}' lacks a title or stars, skipped", r.id);
                None
            }
        })
        .collect();
    let (lexicon, warnings) = build_title_dictionary(&titled, config);
    for warning in warnings {
        warn!("{warning}");
    }
    eprintln!(
        "{} words kept from {} titled reviews",
        lexicon.len(),
        titled.len()
    );
    emit(out.as_deref(), &lexicon.to_tsv())
}

fn bench_cmd(
    input: &Path,
    dicts: &DictArgs,
    encoding: Encoding,
    repetitions: usize,
    hardware_note: Option<String>,
    json: bool,
    strict: bool,
) -> Result<()> {
    let docs = group_reviews(read_treebank(input, strict)?);
    let counts = ReviewDoc::counts(&docs);
    let dictionaries = Dictionaries::load(dicts)?;
    let source = LabelSource::Gold(encoding);
    let labels = docs
        .iter()
        .map(|d| source.label_trees(&d.trees))
        .collect::<Result<Vec<_>, _>>()?;
    let resources = dictionaries.resources();

    let throughput = bench(counts, repetitions, || {
        std::hint::black_box(decode_and_score(&labels, resources, Aggregation::Sum));
    })?;

    if json {
        let mut value = serde_json::to_value(&throughput)?;
        if let Some(note) = hardware_note {
            value["hardware_note"] = note.into();
        }
        println!("{value}");
    } else {
        println!("{throughput}");
        if let Some(note) = hardware_note {
            println!("hardware: {note}");
        }
    }
    Ok(())
}
