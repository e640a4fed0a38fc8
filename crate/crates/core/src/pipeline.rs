//! Review records, label sources and the decode-and-score pipeline.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conllu::{simple_tokenize, DependencyTree};
use crate::encoding::{decode, encode, EncodeError, Encoding, LabelSequence};
use crate::eval::Counts;
use crate::polarity::{
    score_review, Aggregation, EmptyReview, PolarityResult, Resources, ReviewResult,
};
use crate::scale::Polarity;
use crate::tagger::FrequencyModel;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("review '{id}': {source}")]
    Review {
        id: String,
        #[source]
        source: EmptyReview,
    },
    #[error(transparent)]
    Encode(#[from] EncodeError),
}

/// One review of a JSON-lines review file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReviewRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stars: Option<u8>,
}

/// Parses JSON-lines reviews, enforcing unique ids and stars in 1..=5.
pub fn read_reviews(text: &str) -> Result<Vec<ReviewRecord>, PipelineError> {
    let mut seen = HashSet::new();
    let mut reviews = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| PipelineError::Record {
            line: line_no,
            message,
        };
        let record: ReviewRecord = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        if let Some(stars) = record.stars {
            if !(1..=5).contains(&stars) {
                return Err(err(format!("stars {stars} outside 1..5")));
            }
        }
        if !seen.insert(record.id.clone()) {
            return Err(err(format!("duplicate id '{}'", record.id)));
        }
        reviews.push(record);
    }
    Ok(reviews)
}

/// Sentences of one review as trees.
#[derive(Clone, Debug, PartialEq)]
pub struct ReviewDoc {
    pub id: String,
    pub stars: Option<u8>,
    pub trees: Vec<DependencyTree>,
}

impl ReviewDoc {
    pub fn counts(docs: &[ReviewDoc]) -> Counts {
        Counts {
            instances: docs.len(),
            sentences: docs.iter().map(|d| d.trees.len()).sum(),
            tokens: docs
                .iter()
                .flat_map(|d| &d.trees)
                .map(DependencyTree::len)
                .sum(),
        }
    }
}

/// Groups consecutive sentences into reviews.
///
/// A sentence carrying a `# review_id = X` (or `# newdoc id = X`) comment
/// starts review `X`; following sentences without one belong to it. A
/// `# stars = N` comment sets the gold rating. Sentences before the first
/// marker are reviews of their own, named by sentence id.
pub fn group_reviews(trees: Vec<DependencyTree>) -> Vec<ReviewDoc> {
    let mut docs: Vec<ReviewDoc> = Vec::new();
    let mut open = false;
    for tree in trees {
        let marker = tree
            .comment_value("review_id")
            .or_else(|| tree.comment_value("newdoc id"))
            .map(ToOwned::to_owned);
        let stars = tree
            .comment_value("stars")
            .and_then(|s| s.parse::<u8>().ok())
            .filter(|s| (1..=5).contains(s));

        match (marker, docs.last_mut()) {
            (None, Some(doc)) if open => {
                doc.stars = doc.stars.or(stars);
                doc.trees.push(tree);
            }
            (marker, _) => {
                open = marker.is_some();
                docs.push(ReviewDoc {
                    id: marker.unwrap_or_else(|| tree.sentence_id().to_owned()),
                    stars,
                    trees: vec![tree],
                });
            }
        }
    }
    docs
}

/// Where the labels of a sentence come from.
#[derive(Clone, Debug)]
pub enum LabelSource {
    /// Encode gold trees: an oracle tagger.
    Gold(Encoding),
    /// Labels read from a Label TSV file, aligned with the input.
    File(Vec<LabelSequence>),
    /// The frequency baseline.
    Model(FrequencyModel),
}

impl LabelSource {
    /// Labels for gold trees. For `File`, the sequences are returned as
    /// they are; for `Model`, the tree forms are tagged.
    pub fn label_trees(&self, trees: &[DependencyTree]) -> Result<Vec<LabelSequence>, EncodeError> {
        match self {
            LabelSource::Gold(encoding) => trees.iter().map(|t| encode(t, *encoding)).collect(),
            LabelSource::File(sequences) => Ok(sequences.clone()),
            LabelSource::Model(model) => Ok(trees
                .iter()
                .filter_map(|t| model.predict(&t.forms().collect::<Vec<_>>()))
                .collect()),
        }
    }
}

/// Tokenizes, tags and decodes raw text.
pub fn parse_text(model: &FrequencyModel, text: &str) -> Vec<DependencyTree> {
    simple_tokenize(text)
        .iter()
        .filter_map(|sentence| model.predict(sentence))
        .map(|labels| decode(&labels))
        .collect()
}

/// Turns a JSON review into a document using the tagger.
pub fn review_doc(model: &FrequencyModel, record: &ReviewRecord) -> ReviewDoc {
    ReviewDoc {
        id: record.id.clone(),
        stars: record.stars,
        trees: parse_text(model, record.text.as_deref().unwrap_or_default()),
    }
}

/// Decodes and scores label sequences grouped by review.
pub fn decode_and_score(
    reviews: &[Vec<LabelSequence>],
    resources: Resources,
    aggregation: Aggregation,
) -> Vec<Option<ReviewResult>> {
    reviews
        .iter()
        .map(|labels| {
            let trees: Vec<DependencyTree> = labels.iter().map(decode).collect();
            score_review(&trees, resources, aggregation).ok()
        })
        .collect()
}

/// Scores one review document.
pub fn analyze_doc(
    doc: &ReviewDoc,
    resources: Resources,
    aggregation: Aggregation,
) -> Result<ReviewResult, PipelineError> {
    score_review(&doc.trees, resources, aggregation).map_err(|source| PipelineError::Review {
        id: doc.id.clone(),
        source,
    })
}

/// The JSON-lines output record of one analyzed review.
#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord<'a> {
    pub id: &'a str,
    pub sentence_scores: &'a [f64],
    pub raw: f64,
    pub five_scale: f64,
    pub stars: u8,
    pub label: Polarity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gold_stars: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<&'a [PolarityResult]>,
}

impl<'a> ResultRecord<'a> {
    pub fn new(doc: &'a ReviewDoc, result: &'a ReviewResult, trace: bool) -> Self {
        ResultRecord {
            id: &doc.id,
            sentence_scores: &result.sentence_scores,
            raw: result.raw_score,
            five_scale: result.five_scale,
            stars: result.stars,
            label: result.label,
            gold_stars: doc.stars,
            trace: trace.then_some(result.sentences.as_slice()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result records serialize")
    }
}
