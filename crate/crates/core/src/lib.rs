//! Dependency parsing as sequence labeling, with syntax-aware,
//! lexicon-based sentiment analysis on top of the decoded trees.
//!
//! The main pieces:
//!
//! * [`conllu`]: CoNLL-U I/O and the [`DependencyTree`] model.
//! * [`encoding`]: absolute, relative and PoS-based head encodings with a
//!   total decoder.
//! * [`tagger`]: a frequency baseline producing label sequences.
//! * [`lexicon`]: sentiment, modifier and negation dictionaries.
//! * [`polarity`] and [`scale`]: compositional scoring and the score/label
//!   conversions.
//! * [`eval`]: attachment scores, classification metrics and throughput.
//! * [`pipeline`]: review records and the decode-and-score loop.

pub mod conllu;
pub mod encoding;
pub mod eval;
pub mod lexicon;
pub mod pipeline;
pub mod polarity;
pub mod scale;
pub mod tagger;

pub use conllu::{
    parse_conllu, parse_conllu_strict, simple_tokenize, write_conllu, DependencyTree, Token,
};
pub use encoding::{
    convert, decode, decode_with_repairs, encode, Encoding, Label, LabelSequence, Locator,
};
pub use lexicon::{merge, Lexicon, ModifierLexicon, NegationSet};
pub use polarity::{score_review, score_sentence, Aggregation, Resources};
pub use scale::Polarity;
pub use tagger::FrequencyModel;
