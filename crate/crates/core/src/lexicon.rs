//! Sentiment dictionaries, modifier weights and negation word sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::conllu::simple_tokenize;
use crate::scale::{normalize, ScaleSpec};

/// Bounds of the sentiment score scale.
pub const MIN_SCORE: f64 = -5.0;
pub const MAX_SCORE: f64 = 5.0;

/// Default factor for modifiers that intensify.
pub const INTENSIFIER_FACTOR: f64 = 1.25;
/// Default factor for modifiers that weaken.
pub const WEAKENER_FACTOR: f64 = 0.75;

const DEFAULT_NEGATIONS: &str = include_str!("../data/negations_en.txt");
const DEFAULT_MODIFIERS: &str = include_str!("../data/modifiers_en.tsv");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: expected 'word<TAB>value'")]
    Format { line: usize },
    #[error("line {line}: invalid number '{value}'")]
    Number { line: usize, value: String },
    #[error("line {line}: score {score} outside [-5, 5]")]
    ScoreRange { line: usize, score: f64 },
    #[error("line {line}: modifier factor {factor} must be positive")]
    Factor { line: usize, factor: f64 },
    #[error("line {line}: key '{key}' must be non-empty without whitespace")]
    Key { line: usize, key: String },
    #[error("negation list is empty")]
    EmptyNegations,
}

/// A word with its polarity score on the [-5, 5] scale.
#[derive(Clone, Debug, PartialEq)]
pub struct SentimentEntry {
    key: String,
    score: f64,
}

impl SentimentEntry {
    /// Lowercases the key; `None` if the key is empty or contains
    /// whitespace, or the score is outside [-5, 5].
    pub fn new(key: &str, score: f64) -> Option<Self> {
        let key = key.to_lowercase();
        (valid_key(&key) && (MIN_SCORE..=MAX_SCORE).contains(&score))
            .then_some(SentimentEntry { key, score })
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn score(&self) -> f64 {
        self.score
    }
}

fn valid_key(key: &str) -> bool {
    !key.is_empty() && !key.contains(char::is_whitespace)
}

/// A named sentiment dictionary.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Lexicon {
    name: String,
    entries: BTreeMap<String, f64>,
}

impl Lexicon {
    pub fn new(name: impl Into<String>) -> Self {
        Lexicon {
            name: name.into(),
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        name: impl Into<String>,
        entries: impl IntoIterator<Item = SentimentEntry>,
    ) -> Self {
        let mut lexicon = Lexicon::new(name);
        for entry in entries {
            lexicon.insert(entry);
        }
        lexicon
    }

    /// Inserts an entry, returning the score it replaced.
    pub fn insert(&mut self, entry: SentimentEntry) -> Option<f64> {
        self.entries.insert(entry.key, entry.score)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Score of an already lowercased key.
    pub fn get(&self, key: &str) -> Option<f64> {
        self.entries.get(key).copied()
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Parses `word<TAB>score` lines. Duplicate keys keep the last score.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<(Self, Vec<String>), LexiconError> {
        let mut lexicon = Lexicon::new(name);
        let mut warnings = Vec::new();
        for (line, key, score) in pairs(text)? {
            if !(MIN_SCORE..=MAX_SCORE).contains(&score) {
                return Err(LexiconError::ScoreRange { line, score });
            }
            let entry = SentimentEntry::new(&key, score).ok_or(LexiconError::Key { line, key })?;
            if lexicon.insert(entry).is_some() {
                warnings.push(format!("line {line}: duplicate entry, last one wins"));
            }
        }
        Ok((lexicon, warnings))
    }

    /// Loads a lexicon file, naming it after the file stem.
    pub fn load(path: impl AsRef<Path>) -> Result<(Self, Vec<String>), LexiconError> {
        let path = path.as_ref();
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::parse(name, &read(path)?)
    }

    /// Serializes as `word<TAB>score` lines in key order.
    pub fn to_tsv(&self) -> String {
        self.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
    }
}

/// Merges dictionaries with precedence: on conflicting keys the earliest
/// dictionary wins, `base` first.
pub fn merge(base: &Lexicon, extras: &[Lexicon]) -> Lexicon {
    let mut merged = base.clone();
    for extra in extras {
        merged.name = format!("{}+{}", merged.name, extra.name);
        for (key, &score) in &extra.entries {
            merged.entries.entry(key.clone()).or_insert(score);
        }
    }
    merged
}

/// Words that scale the polarity of their head, with their factor.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModifierLexicon {
    factors: BTreeMap<String, f64>,
}

impl ModifierLexicon {
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        ModifierLexicon {
            factors: pairs
                .into_iter()
                .filter(|&(_, f)| f > 0.0)
                .map(|(k, f)| (k.to_lowercase(), f))
                .collect(),
        }
    }

    pub fn factor(&self, key: &str) -> Option<f64> {
        self.factors.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.factors.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Parses `word<TAB>factor` lines; factors must be positive. Keys may
    /// contain spaces (multiword modifiers), which never match a single
    /// token.
    pub fn parse(text: &str) -> Result<(Self, Vec<String>), LexiconError> {
        let mut factors = BTreeMap::new();
        let mut warnings = Vec::new();
        for (line, key, factor) in pairs(text)? {
            if factor <= 0.0 || !factor.is_finite() {
                return Err(LexiconError::Factor { line, factor });
            }
            if factors.insert(key.to_lowercase(), factor).is_some() {
                warnings.push(format!("line {line}: duplicate modifier, last one wins"));
            }
        }
        Ok((ModifierLexicon { factors }, warnings))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<(Self, Vec<String>), LexiconError> {
        Self::parse(&read(path.as_ref())?)
    }

    /// The bundled English modifier list with default factors.
    pub fn english() -> Self {
        Self::parse(DEFAULT_MODIFIERS)
            .expect("bundled modifier list is valid")
            .0
    }
}

/// Words that flip the polarity of their head.
#[derive(Clone, Debug, PartialEq)]
pub struct NegationSet {
    words: BTreeSet<String>,
}

impl NegationSet {
    pub fn new<'a>(words: impl IntoIterator<Item = &'a str>) -> Result<Self, LexiconError> {
        let words: BTreeSet<String> = words
            .into_iter()
            .map(|w| w.trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        if words.is_empty() {
            return Err(LexiconError::EmptyNegations);
        }
        Ok(NegationSet { words })
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    /// One word per line, `#` comments allowed.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        Self::new(content_lines(text).map(|(_, line)| line))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        Self::parse(&read(path.as_ref())?)
    }

    /// The bundled English negation list.
    pub fn english() -> Self {
        Self::parse(DEFAULT_NEGATIONS).expect("bundled negation list is valid")
    }
}

fn read(path: &Path) -> Result<String, LexiconError> {
    fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.trim_end_matches('\r')))
        .filter(|(_, line)| !line.trim().is_empty() && !line.trim_start().starts_with('#'))
}

fn pairs(text: &str) -> Result<Vec<(usize, String, f64)>, LexiconError> {
    content_lines(text)
        .map(|(line, content)| {
            let (key, value) = content
                .split_once('\t')
                .ok_or(LexiconError::Format { line })?;
            let value = value.trim();
            let number: f64 = value.parse().map_err(|_| LexiconError::Number {
                line,
                value: value.to_owned(),
            })?;
            if !number.is_finite() {
                return Err(LexiconError::Number {
                    line,
                    value: value.to_owned(),
                });
            }
            Ok((line, key.trim().to_owned(), number))
        })
        .collect()
}

/// Aggregated star judgments of one title word.
#[derive(Clone, Debug, PartialEq)]
pub struct TitleStats {
    pub word: String,
    pub count: usize,
    pub mean: f64,
    pub sdv: f64,
}

impl TitleStats {
    /// Population statistics of the judgments. `judgments` must be
    /// non-empty.
    pub fn from_judgments(word: impl Into<String>, judgments: &[u8]) -> Self {
        let count = judgments.len();
        let n = count as f64;
        let mean = judgments.iter().map(|&s| f64::from(s)).sum::<f64>() / n;
        let sdv = if judgments.iter().all(|&s| s == judgments[0]) {
            0.0
        } else {
            let var = judgments
                .iter()
                .map(|&s| (f64::from(s) - mean).powi(2))
                .sum::<f64>()
                / n;
            var.sqrt()
        };
        TitleStats {
            word: word.into(),
            count,
            mean,
            sdv,
        }
    }
}

/// Which titles feed the title dictionary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TitleMode {
    /// Only titles consisting of a single word.
    Short,
    /// Every title.
    All,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TitleDictionaryConfig {
    pub mode: TitleMode,
    pub sdv_threshold: f64,
    pub min_count: usize,
}

impl Default for TitleDictionaryConfig {
    fn default() -> Self {
        TitleDictionaryConfig {
            mode: TitleMode::Short,
            sdv_threshold: 0.6,
            min_count: 5,
        }
    }
}

/// Per-word statistics over review titles, in word order.
///
/// A word counts once per review, however often the title repeats it.
/// Records with stars outside 1..=5 are skipped with a warning.
pub fn title_stats(reviews: &[(String, u8)], mode: TitleMode) -> (Vec<TitleStats>, Vec<String>) {
    let mut judgments: BTreeMap<String, Vec<u8>> = BTreeMap::new();
    let mut warnings = Vec::new();

    for (idx, (title, stars)) in reviews.iter().enumerate() {
        if !(1..=5).contains(stars) {
            warnings.push(format!(
                "record {}: stars {stars} outside 1..5, skipped",
                idx + 1
            ));
            continue;
        }

        let words: Vec<String> = simple_tokenize(title)
            .into_iter()
            .flatten()
            .filter(|t| t.chars().any(char::is_alphanumeric))
            .map(|t| t.to_lowercase())
            .collect();
        if mode == TitleMode::Short && words.len() != 1 {
            continue;
        }

        for word in words.into_iter().collect::<BTreeSet<_>>() {
            judgments.entry(word).or_default().push(*stars);
        }
    }

    let stats = judgments
        .into_iter()
        .map(|(word, stars)| TitleStats::from_judgments(word, &stars))
        .collect();
    (stats, warnings)
}

/// Builds a dictionary from review titles, keeping words with enough
/// support and a star standard deviation below the threshold. Scores map
/// the mean star rating from [1, 5] onto [-5, 5].
pub fn build_title_dictionary(
    reviews: &[(String, u8)],
    config: &TitleDictionaryConfig,
) -> (Lexicon, Vec<String>) {
    let (stats, warnings) = title_stats(reviews, config.mode);
    let to_score = ScaleSpec::new(1.0, 5.0, MIN_SCORE, MAX_SCORE).expect("valid scale");

    let name = match config.mode {
        TitleMode::Short => "titles-short",
        TitleMode::All => "titles-all",
    };
    let lexicon = Lexicon::from_entries(
        name,
        stats
            .iter()
            .filter(|s| s.count >= config.min_count && s.sdv < config.sdv_threshold)
            .filter_map(|s| SentimentEntry::new(&s.word, normalize(s.mean, &to_score))),
    );
    (lexicon, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lexicon_lines() {
        let (lex, warnings) = Lexicon::parse("t", "# comment\nAwesome\t4.0\n\nbad\t-3\n").unwrap();
        assert_eq!(lex.get("awesome"), Some(4.0));
        assert_eq!(lex.get("bad"), Some(-3.0));
        assert!(warnings.is_empty());

        let (lex, warnings) = Lexicon::parse("t", "nice\t1\nnice\t2\n").unwrap();
        assert_eq!(lex.get("nice"), Some(2.0));
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn rejects_bad_lexicon_lines() {
        assert!(matches!(
            Lexicon::parse("t", "good\t7\n"),
            Err(LexiconError::ScoreRange { line: 1, .. })
        ));
        assert!(matches!(
            Lexicon::parse("t", "x\t1\ngood\n"),
            Err(LexiconError::Format { line: 2 })
        ));
        assert!(matches!(
            Lexicon::parse("t", "good\tabc\n"),
            Err(LexiconError::Number { .. })
        ));
        assert!(matches!(
            Lexicon::parse("t", "very good\t1\n"),
            Err(LexiconError::Key { .. })
        ));
        assert!(matches!(
            ModifierLexicon::parse("very\t0\n"),
            Err(LexiconError::Factor { .. })
        ));
        assert!(matches!(
            NegationSet::parse("# nothing\n"),
            Err(LexiconError::EmptyNegations)
        ));
    }

    #[test]
    fn bundled_lists() {
        let negations = NegationSet::english();
        assert!(negations.contains("not"));
        assert!(negations.contains("nowhere"));
        assert!(negations.contains("mightnt"));

        let modifiers = ModifierLexicon::english();
        assert_eq!(modifiers.factor("very"), Some(INTENSIFIER_FACTOR));
        for weak in ["barely", "hardly", "slightly", "few"] {
            assert_eq!(modifiers.factor(weak), Some(WEAKENER_FACTOR), "{weak}");
        }
    }

    #[test]
    fn merge_precedence() {
        let base = Lexicon::parse("socal", "nice\t3\n").unwrap().0;
        let extra = Lexicon::parse("vader", "nice\t1.5\ngreat\t3.1\n")
            .unwrap()
            .0;
        let merged = merge(&base, &[extra]);
        assert_eq!(merged.get("nice"), Some(3.0));
        assert_eq!(merged.get("great"), Some(3.1));
        assert_eq!(merged.name(), "socal+vader");
        assert_eq!(merge(&base, &[]), base);
    }

    #[test]
    fn title_dictionary() {
        let mut reviews = Vec::new();
        for _ in 0..3 {
            reviews.push(("Excellent!".to_owned(), 5));
        }
        for s in [1, 5, 1, 5, 1, 5] {
            reviews.push(("Holidays".to_owned(), s));
        }
        reviews.push(("Bad".to_owned(), 9));

        let config = TitleDictionaryConfig {
            min_count: 3,
            ..Default::default()
        };
        let (lex, warnings) = build_title_dictionary(&reviews, &config);
        assert_eq!(lex.get("excellent"), Some(5.0));
        assert_eq!(lex.get("holidays"), None);
        assert_eq!(warnings.len(), 1);

        let (lex, _) = build_title_dictionary(&reviews, &TitleDictionaryConfig::default());
        assert!(lex.is_empty());
    }

    #[test]
    fn title_stats_population_sdv() {
        let s = TitleStats::from_judgments("w", &[1, 5, 1, 5, 1, 5]);
        assert_eq!(s.mean, 3.0);
        assert_eq!(s.sdv, 2.0);
        let s = TitleStats::from_judgments("w", &[4, 4, 4]);
        assert_eq!(s.sdv, 0.0);
    }

    #[test]
    fn short_mode_needs_single_word_titles() {
        let reviews: Vec<(String, u8)> = (0..5)
            .map(|_| ("Great stay".to_owned(), 5))
            .chain((0..5).map(|_| ("Great".to_owned(), 5)))
            .collect();
        let (short, _) = title_stats(&reviews, TitleMode::Short);
        assert_eq!(short.len(), 1);
        assert_eq!(short[0].count, 5);
        let (all, _) = title_stats(&reviews, TitleMode::All);
        assert_eq!(
            all.iter().map(|s| s.word.as_str()).collect::<Vec<_>>(),
            ["great", "stay"]
        );
        assert_eq!(all[0].count, 10);
    }
}
