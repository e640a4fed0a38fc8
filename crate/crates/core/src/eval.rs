//! Attachment scores, classification metrics and throughput.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::conllu::DependencyTree;
use crate::scale::{label_of_stars, Polarity, ScaleError};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("gold has {gold} sentences, prediction has {pred}")]
    SentenceCount { gold: usize, pred: usize },
    #[error("sentence {index} ({sentence_id}): tokenization differs between gold and prediction")]
    Tokenization { index: usize, sentence_id: String },
    #[error("gold has {gold} items, prediction has {pred}")]
    Length { gold: usize, pred: usize },
    #[error("nothing to evaluate")]
    Empty,
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error("repetitions must be at least 1")]
    Repetitions,
}

/// Unlabeled and labeled attachment scores in percent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParseMetrics {
    pub uas: f64,
    pub las: f64,
    pub token_count: usize,
}

impl fmt::Display for ParseMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tokens\t{}", self.token_count)?;
        writeln!(f, "UAS\t{:.2}", self.uas)?;
        write!(f, "LAS\t{:.2}", self.las)
    }
}

fn percent(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

/// Scores predicted trees against gold trees with identical tokenization.
/// Every token counts, punctuation included.
pub fn eval_parse(
    gold: &[DependencyTree],
    pred: &[DependencyTree],
) -> Result<ParseMetrics, EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::SentenceCount {
            gold: gold.len(),
            pred: pred.len(),
        });
    }

    let mut tokens = 0;
    let mut heads = 0;
    let mut labeled = 0;
    for (index, (g, p)) in gold.iter().zip(pred).enumerate() {
        if g.len() != p.len() || g.forms().ne(p.forms()) {
            return Err(EvalError::Tokenization {
                index: index + 1,
                sentence_id: g.sentence_id().to_owned(),
            });
        }
        for (gt, pt) in g.tokens().iter().zip(p.tokens()) {
            tokens += 1;
            if gt.head == pt.head {
                heads += 1;
                if gt.deprel == pt.deprel {
                    labeled += 1;
                }
            }
        }
    }

    Ok(ParseMetrics {
        uas: percent(heads, tokens),
        las: percent(labeled, tokens),
        token_count: tokens,
    })
}

/// Accuracy, confusion matrix and per-class F1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub classes: Vec<String>,
    pub accuracy: f64,
    /// `confusion[gold][pred]`, indexed like `classes`.
    pub confusion: Vec<Vec<usize>>,
    pub per_class_f1: BTreeMap<String, f64>,
    pub count: usize,
}

impl ClassMetrics {
    /// Computes metrics over a closed class inventory. Items outside
    /// `classes` are not expected.
    pub fn compute<L: PartialEq + fmt::Display>(
        classes: &[L],
        gold: &[L],
        pred: &[L],
    ) -> Result<Self, EvalError> {
        if gold.len() != pred.len() {
            return Err(EvalError::Length {
                gold: gold.len(),
                pred: pred.len(),
            });
        }
        if gold.is_empty() {
            return Err(EvalError::Empty);
        }

        let index = |l: &L| {
            classes
                .iter()
                .position(|c| c == l)
                .expect("label in class list")
        };
        let k = classes.len();
        let mut confusion = vec![vec![0; k]; k];
        for (g, p) in gold.iter().zip(pred) {
            confusion[index(g)][index(p)] += 1;
        }

        let correct: usize = (0..k).map(|i| confusion[i][i]).sum();
        let per_class_f1 = classes
            .iter()
            .enumerate()
            .map(|(i, class)| {
                let tp = confusion[i][i] as f64;
                let predicted: usize = (0..k).map(|g| confusion[g][i]).sum();
                let actual: usize = confusion[i].iter().sum();
                let f1 = if predicted + actual == 0 {
                    0.0
                } else {
                    2.0 * tp / (predicted + actual) as f64
                };
                (class.to_string(), f1)
            })
            .collect();

        Ok(ClassMetrics {
            classes: classes.iter().map(ToString::to_string).collect(),
            accuracy: percent(correct, gold.len()),
            confusion,
            per_class_f1,
            count: gold.len(),
        })
    }
}

impl fmt::Display for ClassMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances\t{}", self.count)?;
        writeln!(f, "accuracy\t{:.2}", self.accuracy)?;
        writeln!(f, "gold\\pred\t{}", self.classes.join("\t"))?;
        for (class, row) in self.classes.iter().zip(&self.confusion) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{class}\t{}", cells.join("\t"))?;
        }
        let f1: Vec<String> = self
            .classes
            .iter()
            .map(|c| format!("{c}={:.4}", self.per_class_f1[c]))
            .collect();
        write!(f, "F1\t{}", f1.join("\t"))
    }
}

/// Ternary evaluation.
pub fn eval_labels(gold: &[Polarity], pred: &[Polarity]) -> Result<ClassMetrics, EvalError> {
    ClassMetrics::compute(&Polarity::ALL, gold, pred)
}

/// Ternary evaluation against star ratings, merged 1–2 / 3 / 4–5.
pub fn eval_stars_ternary(gold_stars: &[u8], pred: &[Polarity]) -> Result<ClassMetrics, EvalError> {
    let gold = gold_stars
        .iter()
        .map(|&s| label_of_stars(s))
        .collect::<Result<Vec<_>, _>>()?;
    eval_labels(&gold, pred)
}

/// Five-class evaluation on star ratings.
pub fn eval_stars(gold_stars: &[u8], pred_stars: &[u8]) -> Result<ClassMetrics, EvalError> {
    for &s in gold_stars.iter().chain(pred_stars) {
        label_of_stars(s)?;
    }
    ClassMetrics::compute(&[1u8, 2, 3, 4, 5], gold_stars, pred_stars)
}

/// Input sizes processed by one benchmark pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub instances: usize,
    pub sentences: usize,
    pub tokens: usize,
}

/// Processing rates; `instances` are reviews.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Throughput {
    pub counts: Counts,
    pub repetitions: usize,
    pub wall_seconds: f64,
    pub instances_per_sec: f64,
    pub sentences_per_sec: f64,
    pub tokens_per_sec: f64,
}

impl Throughput {
    pub fn from_counts(counts: Counts, wall_seconds: f64, repetitions: usize) -> Self {
        let rate = |n: usize| {
            if wall_seconds > 0.0 {
                n as f64 / wall_seconds
            } else {
                0.0
            }
        };
        Throughput {
            counts,
            repetitions,
            wall_seconds,
            instances_per_sec: rate(counts.instances),
            sentences_per_sec: rate(counts.sentences),
            tokens_per_sec: rate(counts.tokens),
        }
    }
}

impl fmt::Display for Throughput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances/s\tsentences/s\ttokens/s")?;
        writeln!(
            f,
            "{:.2}\t{:.2}\t{:.2}",
            self.instances_per_sec, self.sentences_per_sec, self.tokens_per_sec
        )?;
        write!(
            f,
            "({} instances, {} sentences, {} tokens; median of {} runs, {:.6} s)",
            self.counts.instances,
            self.counts.sentences,
            self.counts.tokens,
            self.repetitions,
            self.wall_seconds
        )
    }
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Times `work` over the input after one untimed warm-up pass and
/// reports rates from the median wall time.
pub fn bench<F: FnMut()>(
    counts: Counts,
    repetitions: usize,
    mut work: F,
) -> Result<Throughput, EvalError> {
    if repetitions == 0 {
        return Err(EvalError::Repetitions);
    }
    if counts.instances == 0 || counts.sentences == 0 {
        return Err(EvalError::Empty);
    }

    work();
    let times = (0..repetitions)
        .map(|_| {
            let start = Instant::now();
            work();
            start.elapsed().as_secs_f64()
        })
        .collect();

    Ok(Throughput::from_counts(counts, median(times), repetitions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::Token;
    use Polarity::*;

    fn tree(spec: &[(usize, &str)]) -> DependencyTree {
        let tokens = spec
            .iter()
            .enumerate()
            .map(|(i, &(h, r))| Token::new(i + 1, format!("w{i}"), None, h, r))
            .collect();
        DependencyTree::new("s", Vec::new(), tokens).unwrap()
    }

    #[test]
    fn parse_scores() {
        let gold = tree(&[(2, "nsubj"), (0, "root")]);
        assert_eq!(
            eval_parse(std::slice::from_ref(&gold), std::slice::from_ref(&gold)).unwrap(),
            ParseMetrics {
                uas: 100.0,
                las: 100.0,
                token_count: 2
            }
        );

        let pred = tree(&[(2, "obj"), (0, "root")]);
        let m = eval_parse(std::slice::from_ref(&gold), &[pred]).unwrap();
        assert_eq!((m.uas, m.las), (100.0, 50.0));

        let pred = tree(&[(0, "root"), (1, "root")]);
        let m = eval_parse(std::slice::from_ref(&gold), &[pred]).unwrap();
        assert_eq!((m.uas, m.las), (0.0, 0.0));
    }

    #[test]
    fn parse_mismatches() {
        let gold = tree(&[(2, "nsubj"), (0, "root")]);
        let short = tree(&[(0, "root")]);
        assert!(matches!(
            eval_parse(std::slice::from_ref(&gold), &[short]),
            Err(EvalError::Tokenization { index: 1, .. })
        ));
        assert!(matches!(
            eval_parse(std::slice::from_ref(&gold), &[]),
            Err(EvalError::SentenceCount { gold: 1, pred: 0 })
        ));
    }

    #[test]
    fn label_scores() {
        let m = eval_labels(&[Positive, Negative], &[Positive, Negative]).unwrap();
        assert_eq!(m.accuracy, 100.0);

        let m = eval_labels(&[Positive, Negative], &[Negative, Positive]).unwrap();
        assert_eq!(m.accuracy, 0.0);
        assert_eq!(
            m.confusion,
            vec![vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]]
        );
        assert_eq!(m.per_class_f1["Positive"], 0.0);

        let m = eval_stars_ternary(&[5, 3, 1], &[Positive, Neutral, Positive]).unwrap();
        assert_eq!(format!("{:.2}", m.accuracy), "66.67");
        assert_eq!(m.confusion.iter().flatten().sum::<usize>(), 3);
        // Positive: tp 1, predicted 2, actual 1
        assert!((m.per_class_f1["Positive"] - 2.0 / 3.0).abs() < 1e-12);

        assert!(eval_labels(&[Positive], &[]).is_err());
        assert!(eval_stars_ternary(&[7], &[Positive]).is_err());
        let m = eval_stars(&[1, 2, 5], &[1, 3, 5]).unwrap();
        assert_eq!(m.confusion.len(), 5);
    }

    #[test]
    fn throughput_arithmetic() {
        let counts = Counts {
            instances: 10,
            sentences: 38,
            tokens: 623,
        };
        let t = Throughput::from_counts(counts, 0.5, 1);
        assert_eq!(
            (t.instances_per_sec, t.sentences_per_sec, t.tokens_per_sec),
            (20.0, 76.0, 1246.0)
        );
    }

    #[test]
    fn bench_reports_median() {
        assert_eq!(median(vec![5.0, 1.0, 3.0, 2.0, 4.0]), 3.0);
        assert_eq!(median(vec![4.0, 1.0]), 2.5);

        let counts = Counts {
            instances: 1,
            sentences: 1,
            tokens: 1,
        };
        let mut calls = 0;
        let t = bench(counts, 5, || calls += 1).unwrap();
        assert_eq!(calls, 6);
        assert_eq!(t.repetitions, 5);
        assert!(bench(counts, 0, || {}).is_err());
        assert!(bench(Counts::default(), 1, || {}).is_err());
    }
}
