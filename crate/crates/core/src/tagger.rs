//! A most-frequent-label baseline tagger.
//!
//! Every lowercased form is tagged with the label it carried most often in
//! the training treebank. Unknown forms back off to the most frequent
//! label of their predicted UPOS, then to the globally most frequent
//! label. Count ties go to the lexicographically smallest string.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::conllu::DependencyTree;
use crate::encoding::{encode, EncodeError, Encoding, Label, LabelSequence, LabeledToken};

const HEADER: &str = "# synsent frequency model v1";

#[derive(Debug, Error)]
pub enum TaggerError {
    #[error("cannot train on an empty treebank")]
    EmptyTreebank,
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

fn format_err(line: usize, message: impl Into<String>) -> TaggerError {
    TaggerError::Format {
        line,
        message: message.into(),
    }
}

/// Trained lookup tables.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyModel {
    encoding: Encoding,
    word_to_label: BTreeMap<String, Label>,
    upos_to_label: BTreeMap<String, Label>,
    word_to_upos: BTreeMap<String, String>,
    fallback_label: Label,
    fallback_upos: String,
}

#[derive(Default)]
struct Counter(HashMap<String, usize>);

impl Counter {
    fn add(&mut self, key: &str) {
        *self.0.entry(key.to_owned()).or_default() += 1;
    }

    fn argmax(&self) -> Option<&str> {
        self.0
            .iter()
            .max_by(|(ka, ca), (kb, cb)| ca.cmp(cb).then_with(|| kb.cmp(ka)))
            .map(|(k, _)| k.as_str())
    }
}

fn argmax_map(counters: HashMap<String, Counter>) -> BTreeMap<String, String> {
    counters
        .into_iter()
        .filter_map(|(k, c)| c.argmax().map(|v| (k, v.to_owned())))
        .collect()
}

const UNKNOWN_UPOS: &str = "X";

impl FrequencyModel {
    /// Counts labels in the given encoding over the treebank.
    pub fn train(treebank: &[DependencyTree], encoding: Encoding) -> Result<Self, TaggerError> {
        let mut word_labels: HashMap<String, Counter> = HashMap::new();
        let mut upos_labels: HashMap<String, Counter> = HashMap::new();
        let mut word_upos: HashMap<String, Counter> = HashMap::new();
        let mut all_labels = Counter::default();
        let mut all_upos = Counter::default();

        for tree in treebank {
            let labels = encode(tree, encoding)?;
            for (token, item) in tree.tokens().iter().zip(labels.items()) {
                let word = token.form.to_lowercase();
                let label = item.label.to_string();
                let upos = token.upos.as_deref().unwrap_or(UNKNOWN_UPOS);
                word_labels.entry(word.clone()).or_default().add(&label);
                upos_labels.entry(upos.to_owned()).or_default().add(&label);
                word_upos.entry(word).or_default().add(upos);
                all_labels.add(&label);
                all_upos.add(upos);
            }
        }

        let fallback_label = all_labels.argmax().ok_or(TaggerError::EmptyTreebank)?;
        let fallback_upos = all_upos.argmax().ok_or(TaggerError::EmptyTreebank)?;
        let parse = |s: &str| Label::parse(s, encoding).expect("encoded labels parse");

        Ok(FrequencyModel {
            encoding,
            fallback_label: parse(fallback_label),
            fallback_upos: fallback_upos.to_owned(),
            word_to_label: argmax_map(word_labels)
                .into_iter()
                .map(|(k, v)| (k, parse(&v)))
                .collect(),
            upos_to_label: argmax_map(upos_labels)
                .into_iter()
                .map(|(k, v)| (k, parse(&v)))
                .collect(),
            word_to_upos: argmax_map(word_upos),
        })
    }

    /// A model that only knows the global fallbacks.
    pub fn fallback_only(&self) -> Self {
        FrequencyModel {
            encoding: self.encoding,
            word_to_label: BTreeMap::new(),
            upos_to_label: BTreeMap::new(),
            word_to_upos: BTreeMap::new(),
            fallback_label: self.fallback_label.clone(),
            fallback_upos: self.fallback_upos.clone(),
        }
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn fallback_label(&self) -> &Label {
        &self.fallback_label
    }

    pub fn fallback_upos(&self) -> &str {
        &self.fallback_upos
    }

    pub fn label_for_word(&self, word: &str) -> Option<&Label> {
        self.word_to_label.get(&word.to_lowercase())
    }

    pub fn upos_for_word(&self, word: &str) -> Option<&str> {
        self.word_to_upos
            .get(&word.to_lowercase())
            .map(String::as_str)
    }

    /// Tags a tokenized sentence. Returns `None` only for an empty
    /// sentence.
    pub fn predict<S: AsRef<str>>(&self, forms: &[S]) -> Option<LabelSequence> {
        let items = forms
            .iter()
            .map(|form| {
                let form = form.as_ref();
                let key = form.to_lowercase();
                let upos = self
                    .word_to_upos
                    .get(&key)
                    .unwrap_or(&self.fallback_upos)
                    .clone();
                let label = self
                    .word_to_label
                    .get(&key)
                    .or_else(|| self.upos_to_label.get(&upos))
                    .unwrap_or(&self.fallback_label)
                    .clone();
                LabeledToken {
                    form: form.to_owned(),
                    upos: Some(upos),
                    label,
                }
            })
            .collect();
        LabelSequence::new(self.encoding, items).ok()
    }

    /// Serializes to the line-oriented model format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        writeln!(out, "[meta]\nencoding\t{}", self.encoding).unwrap();
        writeln!(
            out,
            "[fallback]\nlabel\t{}\nupos\t{}",
            self.fallback_label, self.fallback_upos
        )
        .unwrap();
        writeln!(out, "[word_label]").unwrap();
        for (k, v) in &self.word_to_label {
            writeln!(out, "{k}\t{v}").unwrap();
        }
        writeln!(out, "[upos_label]").unwrap();
        for (k, v) in &self.upos_to_label {
            writeln!(out, "{k}\t{v}").unwrap();
        }
        writeln!(out, "[word_upos]").unwrap();
        for (k, v) in &self.word_to_upos {
            writeln!(out, "{k}\t{v}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TaggerError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, HEADER)) => {}
            Some((line, _)) => return Err(format_err(line, "missing model header")),
            None => return Err(format_err(1, "empty model file")),
        }

        let mut section = "";
        let mut encoding = None;
        let mut fallback_label = None;
        let mut fallback_upos = None;
        let mut raw_word_label = Vec::new();
        let mut raw_upos_label = Vec::new();
        let mut word_to_upos = BTreeMap::new();

        for (line, content) in lines {
            if content.is_empty() {
                continue;
            }
            let bracketed = content.strip_prefix('[').and_then(|s| s.strip_suffix(']'));
            if let (false, Some(name)) = (content.contains('\t'), bracketed) {
                section = match name {
                    "meta" | "fallback" | "word_label" | "upos_label" | "word_upos" => name,
                    other => return Err(format_err(line, format!("unknown section '{other}'"))),
                };
                continue;
            }
            let (key, value) = content
                .split_once('\t')
                .ok_or_else(|| format_err(line, "expected 'key<TAB>value'"))?;
            match (section, key) {
                ("meta", "encoding") => {
                    encoding = Some(
                        value
                            .parse::<Encoding>()
                            .map_err(|e| format_err(line, e.to_string()))?,
                    )
                }
                ("fallback", "label") => fallback_label = Some((line, value)),
                ("fallback", "upos") => fallback_upos = Some(value.to_owned()),
                ("word_label", _) => raw_word_label.push((line, key, value)),
                ("upos_label", _) => raw_upos_label.push((line, key, value)),
                ("word_upos", _) => {
                    word_to_upos.insert(key.to_owned(), value.to_owned());
                }
                _ => return Err(format_err(line, format!("unexpected key '{key}'"))),
            }
        }

        let encoding = encoding.ok_or_else(|| format_err(0, "missing [meta] encoding"))?;
        let parse = |line: usize, s: &str| {
            Label::parse(s, encoding).map_err(|_| format_err(line, format!("invalid label '{s}'")))
        };
        let (line, label) =
            fallback_label.ok_or_else(|| format_err(0, "missing [fallback] label"))?;
        let fallback_label = parse(line, label)?;
        let fallback_upos =
            fallback_upos.ok_or_else(|| format_err(0, "missing [fallback] upos"))?;
        let table =
            |raw: Vec<(usize, &str, &str)>| -> Result<BTreeMap<String, Label>, TaggerError> {
                raw.into_iter()
                    .map(|(line, k, v)| Ok((k.to_owned(), parse(line, v)?)))
                    .collect()
            };

        Ok(FrequencyModel {
            encoding,
            word_to_label: table(raw_word_label)?,
            upos_to_label: table(raw_upos_label)?,
            word_to_upos,
            fallback_label,
            fallback_upos,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), TaggerError> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|source| TaggerError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TaggerError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| TaggerError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_text(&text)
    }
}
