//! Tree linearization: one label per token, locating the token's head by
//! absolute position, relative offset, or the n-th word with a given
//! part-of-speech tag.
//!
//! Decoding is total. Any label sequence yields a valid tree; labels that
//! cannot be honored are dropped and the affected tokens reattached.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::conllu::{find_cycle, DependencyTree, Token};

/// Relation assigned to a token that is promoted to root during repair.
pub const ROOT_DEPREL: &str = "root";

/// Relation assigned to labels that could not be parsed.
pub const FALLBACK_DEPREL: &str = "dep";

const ROOT_SENTINEL: &str = "R";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Encoding {
    Absolute,
    Relative,
    Pos,
}

impl Encoding {
    pub const ALL: [Encoding; 3] = [Encoding::Absolute, Encoding::Relative, Encoding::Pos];

    pub fn name(self) -> &'static str {
        match self {
            Encoding::Absolute => "abs",
            Encoding::Relative => "rel",
            Encoding::Pos => "pos",
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("unknown encoding '{0}', expected one of abs, rel, pos")]
pub struct UnknownEncoding(pub String);

impl FromStr for Encoding {
    type Err = UnknownEncoding;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abs" | "absolute" => Ok(Encoding::Absolute),
            "rel" | "relative" => Ok(Encoding::Relative),
            "pos" => Ok(Encoding::Pos),
            other => Err(UnknownEncoding(other.to_owned())),
        }
    }
}

/// Where a token's head is.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Locator {
    /// Absolute head position, 0 for the root.
    Absolute(usize),
    /// Signed head offset from the dependent, never 0.
    Relative(isize),
    /// The `offset`-th word tagged `tag` to the right (positive) or left
    /// (negative) of the dependent; `offset` is never 0.
    Pos { tag: String, offset: isize },
    /// The token is the root (relative and PoS encodings).
    Root,
    /// A label string that could not be parsed, kept verbatim.
    Unresolvable(String),
}

impl Locator {
    /// Whether the locator may appear in a sequence of the given encoding.
    pub fn fits(&self, encoding: Encoding) -> bool {
        match self {
            Locator::Absolute(_) => encoding == Encoding::Absolute,
            Locator::Relative(_) => encoding == Encoding::Relative,
            Locator::Pos { .. } => encoding == Encoding::Pos,
            Locator::Root => encoding != Encoding::Absolute,
            Locator::Unresolvable(_) => true,
        }
    }

    fn claims_root(&self) -> bool {
        matches!(self, Locator::Root | Locator::Absolute(0))
    }
}

/// A per-token label: head locator plus dependency relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub locator: Locator,
    pub deprel: String,
}

impl Label {
    pub fn new(locator: Locator, deprel: impl Into<String>) -> Self {
        Label {
            locator,
            deprel: deprel.into(),
        }
    }

    /// Parses a label string in the given encoding.
    ///
    /// Anything that does not match the label grammar becomes an
    /// unresolvable locator with the `dep` relation.
    pub fn parse(s: &str, encoding: Encoding) -> Result<Label, Label> {
        Self::parse_strict(s, encoding)
            .ok_or_else(|| Label::new(Locator::Unresolvable(s.to_owned()), FALLBACK_DEPREL))
    }

    fn parse_strict(s: &str, encoding: Encoding) -> Option<Label> {
        let (locator, deprel) = s.split_once('@')?;
        if deprel.is_empty() || deprel.contains(char::is_whitespace) {
            return None;
        }

        let locator = match (encoding, locator) {
            (Encoding::Relative | Encoding::Pos, ROOT_SENTINEL) => Locator::Root,
            (Encoding::Absolute, head) => {
                if !head.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                Locator::Absolute(head.parse().ok()?)
            }
            (Encoding::Relative, offset) => Locator::Relative(parse_offset(offset)?),
            (Encoding::Pos, locator) => {
                let (tag, offset) = locator.rsplit_once(':')?;
                if tag.is_empty() || tag == ROOT_SENTINEL {
                    return None;
                }
                Locator::Pos {
                    tag: tag.to_owned(),
                    offset: parse_offset(offset)?,
                }
            }
        };

        Some(Label::new(locator, deprel))
    }
}

fn parse_offset(s: &str) -> Option<isize> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let offset: isize = s.parse().ok()?;
    (offset != 0).then_some(offset)
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.locator {
            Locator::Absolute(head) => write!(f, "{head}@{}", self.deprel),
            Locator::Relative(offset) => write!(f, "{offset:+}@{}", self.deprel),
            Locator::Pos { tag, offset } => write!(f, "{tag}:{offset:+}@{}", self.deprel),
            Locator::Root => write!(f, "{ROOT_SENTINEL}@{}", self.deprel),
            Locator::Unresolvable(raw) => f.write_str(raw),
        }
    }
}

/// One token of a label sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledToken {
    pub form: String,
    pub upos: Option<String>,
    pub label: Label,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("token {id} has no UPOS tag, required by the pos encoding")]
    MissingUpos { id: usize },
    #[error("label of token {position} does not belong to the {encoding} encoding")]
    MixedEncoding { position: usize, encoding: Encoding },
    #[error("a label sequence needs at least one token")]
    Empty,
}

/// The labels of one sentence, all in one encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSequence {
    encoding: Encoding,
    items: Vec<LabeledToken>,
}

impl LabelSequence {
    pub fn new(encoding: Encoding, items: Vec<LabeledToken>) -> Result<Self, EncodeError> {
        if items.is_empty() {
            return Err(EncodeError::Empty);
        }
        if let Some(position) = items.iter().position(|t| !t.label.locator.fits(encoding)) {
            return Err(EncodeError::MixedEncoding {
                position: position + 1,
                encoding,
            });
        }
        Ok(LabelSequence { encoding, items })
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn items(&self) -> &[LabeledToken] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.items.iter().map(|t| &t.label)
    }
}

/// Encodes a tree as one label per token.
pub fn encode(tree: &DependencyTree, encoding: Encoding) -> Result<LabelSequence, EncodeError> {
    let tokens = tree.tokens();
    if encoding == Encoding::Pos {
        if let Some(t) = tokens.iter().find(|t| t.upos.is_none()) {
            return Err(EncodeError::MissingUpos { id: t.id });
        }
    }

    let items = tokens
        .iter()
        .map(|token| LabeledToken {
            form: token.form.clone(),
            upos: token.upos.clone(),
            label: Label::new(locate(tokens, token, encoding), token.deprel.clone()),
        })
        .collect();

    Ok(LabelSequence { encoding, items })
}

fn locate(tokens: &[Token], token: &Token, encoding: Encoding) -> Locator {
    match encoding {
        Encoding::Absolute => Locator::Absolute(token.head),
        _ if token.is_root() => Locator::Root,
        Encoding::Relative => Locator::Relative(token.head as isize - token.id as isize),
        Encoding::Pos => {
            let tag = tokens[token.head - 1].upos.as_deref().unwrap_or_default();
            let same_tag = |t: &&Token| t.upos.as_deref() == Some(tag);
            let offset = if token.head > token.id {
                tokens[token.id..token.head].iter().filter(same_tag).count() as isize
            } else {
                -(tokens[token.head - 1..token.id - 1]
                    .iter()
                    .filter(same_tag)
                    .count() as isize)
            };
            Locator::Pos {
                tag: tag.to_owned(),
                offset,
            }
        }
    }
}

/// A change made by the decoder to obtain a well-formed tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Repair {
    /// The label's head could not be located in the sentence.
    Unresolvable { id: usize },
    /// The token's arc was dropped because it closed a cycle.
    CycleBroken { id: usize },
    /// The token also claimed to be root and was attached to the root.
    ExtraRoot { id: usize },
    /// No token claimed root; this headless token was promoted.
    PromotedRoot { id: usize },
    /// A headless token was attached to the root.
    Reattached { id: usize },
}

impl fmt::Display for Repair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Repair::Unresolvable { id } => write!(f, "token {id}: head cannot be resolved"),
            Repair::CycleBroken { id } => write!(f, "token {id}: arc dropped to break a cycle"),
            Repair::ExtraRoot { id } => write!(f, "token {id}: extra root attached to the root"),
            Repair::PromotedRoot { id } => write!(f, "token {id}: promoted to root"),
            Repair::Reattached { id } => write!(f, "token {id}: attached to the root"),
        }
    }
}

/// Decoded tree plus the repairs applied.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub tree: DependencyTree,
    pub repairs: Vec<Repair>,
}

/// Decodes a label sequence into a tree. Never fails.
pub fn decode(labels: &LabelSequence) -> DependencyTree {
    decode_with_repairs(labels).tree
}

/// Decodes a label sequence, reporting every repair.
///
/// Repairs happen in a fixed order:
///
/// 1. Each locator is resolved to a head. Heads outside the sentence,
///    self-attachments and exhausted PoS counts leave the token headless.
/// 2. On every cycle, the arc of the leftmost token is dropped.
/// 3. The first root claimant becomes root and later claimants attach to
///    it. Without claimants, the first headless token is promoted with
///    relation `root`.
/// 4. Remaining headless tokens attach to the root.
pub fn decode_with_repairs(labels: &LabelSequence) -> Decoded {
    let items = labels.items();

    let mut repairs = Vec::new();
    let mut heads: Vec<usize> = vec![0; items.len()];
    let mut deprels: Vec<String> = items.iter().map(|t| t.label.deprel.clone()).collect();
    let mut root_claims = Vec::new();

    for (idx, item) in items.iter().enumerate() {
        let id = idx + 1;
        if item.label.locator.claims_root() {
            root_claims.push(id);
            continue;
        }
        match resolve(items, id, &item.label.locator) {
            Some(head) => heads[idx] = head,
            None => repairs.push(Repair::Unresolvable { id }),
        }
    }

    // Cycles in a functional graph are disjoint; the one found first has
    // the smallest minimum, so this drops the leftmost member of each.
    while let Some(cycle) = find_cycle(heads.iter().copied()) {
        let id = cycle[0];
        heads[id - 1] = 0;
        repairs.push(Repair::CycleBroken { id });
    }

    let root = match root_claims.first() {
        Some(&root) => root,
        None => {
            let root = heads.iter().position(|&h| h == 0).map_or(1, |idx| idx + 1);
            deprels[root - 1] = ROOT_DEPREL.to_owned();
            repairs.push(Repair::PromotedRoot { id: root });
            root
        }
    };

    for &id in root_claims.iter().skip(1) {
        heads[id - 1] = root;
        repairs.push(Repair::ExtraRoot { id });
    }
    heads[root - 1] = 0;

    for (idx, head) in heads.iter_mut().enumerate() {
        let id = idx + 1;
        if *head == 0 && id != root {
            *head = root;
            repairs.push(Repair::Reattached { id });
        }
    }

    let tokens = items
        .iter()
        .zip(heads)
        .zip(deprels)
        .enumerate()
        .map(|(idx, ((item, head), deprel))| {
            let deprel = if deprel.is_empty() {
                FALLBACK_DEPREL.to_owned()
            } else {
                deprel
            };
            Token::new(idx + 1, item.form.clone(), item.upos.clone(), head, deprel)
        })
        .collect();

    let tree = DependencyTree::new("", Vec::new(), tokens)
        .expect("decoder repairs always produce a valid tree");

    Decoded { tree, repairs }
}

fn resolve(items: &[LabeledToken], id: usize, locator: &Locator) -> Option<usize> {
    let len = items.len() as isize;
    let head = match locator {
        Locator::Absolute(head) => *head as isize,
        Locator::Relative(offset) => id as isize + offset,
        Locator::Pos { tag, offset } => {
            let matches = |idx: &usize| items[*idx].upos.as_deref() == Some(tag.as_str());
            let nth = offset.unsigned_abs().checked_sub(1)?;
            let found = if *offset > 0 {
                (id..items.len()).filter(matches).nth(nth)
            } else {
                (0..id - 1).rev().filter(matches).nth(nth)
            };
            found? as isize + 1
        }
        Locator::Root | Locator::Unresolvable(_) => return None,
    };

    (head >= 1 && head <= len && head != id as isize).then_some(head as usize)
}

/// Re-encodes labels in another encoding by decoding and encoding again.
pub fn convert(labels: &LabelSequence, to: Encoding) -> Result<LabelSequence, EncodeError> {
    if labels.encoding() == to {
        return Ok(labels.clone());
    }
    encode(&decode(labels), to)
}

/// Label TSV parse result.
#[derive(Clone, Debug, Default)]
pub struct LabelFile {
    pub sequences: Vec<LabelSequence>,
    pub warnings: Vec<String>,
}

/// Reads the Label TSV format: `ID FORM UPOS LABEL` per token, blank
/// lines between sentences.
///
/// Malformed label strings become unresolvable labels and are reported
/// as warnings. Lines with the wrong column count are skipped with a
/// warning.
pub fn read_labels(text: &str, encoding: Encoding) -> LabelFile {
    let mut file = LabelFile::default();
    let mut current = Vec::new();

    let flush = |current: &mut Vec<LabeledToken>, file: &mut LabelFile| {
        if !current.is_empty() {
            let items = std::mem::take(current);
            file.sequences.push(LabelSequence { encoding, items });
        }
    };

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            flush(&mut current, &mut file);
            continue;
        }

        let columns: Vec<&str> = line.split('\t').collect();
        if columns.len() != 4 {
            file.warnings.push(format!(
                "line {line_no}: expected 4 columns, found {}; line skipped",
                columns.len()
            ));
            continue;
        }

        let label = match Label::parse(columns[3], encoding) {
            Ok(label) if label.locator.fits(encoding) => label,
            Ok(_) | Err(_) => {
                file.warnings.push(format!(
                    "line {line_no}: malformed {encoding} label '{}'",
                    columns[3]
                ));
                Label::new(
                    Locator::Unresolvable(columns[3].to_owned()),
                    FALLBACK_DEPREL,
                )
            }
        };

        current.push(LabeledToken {
            form: columns[1].to_owned(),
            upos: (columns[2] != "_" && !columns[2].is_empty()).then(|| columns[2].to_owned()),
            label,
        });
    }
    flush(&mut current, &mut file);

    file
}

/// Writes sequences in the Label TSV format.
pub fn write_labels(sequences: &[LabelSequence]) -> String {
    let mut out = String::new();
    for sequence in sequences {
        for (idx, item) in sequence.items().iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                idx + 1,
                item.form,
                item.upos.as_deref().unwrap_or("_"),
                item.label
            ));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(spec: &[(&str, &str, usize, &str)]) -> DependencyTree {
        let tokens = spec
            .iter()
            .enumerate()
            .map(|(idx, &(form, upos, head, deprel))| {
                Token::new(idx + 1, form, Some(upos.to_owned()), head, deprel)
            })
            .collect();
        DependencyTree::new("t", Vec::new(), tokens).unwrap()
    }

    fn seq(encoding: Encoding, labels: &[Label]) -> LabelSequence {
        let items = labels
            .iter()
            .enumerate()
            .map(|(idx, label)| LabeledToken {
                form: format!("w{}", idx + 1),
                upos: Some("X".into()),
                label: label.clone(),
            })
            .collect();
        LabelSequence::new(encoding, items).unwrap()
    }

    #[test]
    fn encodes_head_of_two_as_three() {
        let t = tree(&[
            ("Honestly", "ADV", 3, "advmod"),
            ("I", "PRON", 3, "nsubj"),
            ("found", "VERB", 0, "root"),
        ]);
        let abs = encode(&t, Encoding::Absolute).unwrap();
        assert_eq!(
            abs.items()[1].label,
            Label::new(Locator::Absolute(3), "nsubj")
        );
        assert_eq!(
            abs.items()[2].label,
            Label::new(Locator::Absolute(0), "root")
        );
        let rel = encode(&t, Encoding::Relative).unwrap();
        assert_eq!(
            rel.items()[1].label,
            Label::new(Locator::Relative(1), "nsubj")
        );
        assert_eq!(rel.items()[2].label, Label::new(Locator::Root, "root"));
    }

    #[test]
    fn pos_encoding_counts_same_tag() {
        let t = tree(&[
            ("I", "PRON", 2, "nsubj"),
            ("like", "VERB", 0, "root"),
            ("the", "DET", 4, "det"),
            ("room", "NOUN", 2, "obj"),
        ]);
        let pos = encode(&t, Encoding::Pos).unwrap();
        let labels: Vec<String> = pos.labels().map(ToString::to_string).collect();
        assert_eq!(
            labels,
            ["VERB:+1@nsubj", "R@root", "NOUN:+1@det", "VERB:-1@obj"]
        );
    }

    #[test]
    fn pos_encoding_requires_upos() {
        let t = DependencyTree::new(
            "t",
            Vec::new(),
            vec![
                Token::new(1, "a", Some("X".into()), 0, "root"),
                Token::new(2, "b", None, 1, "dep"),
            ],
        )
        .unwrap();
        assert_eq!(
            encode(&t, Encoding::Pos).unwrap_err(),
            EncodeError::MissingUpos { id: 2 }
        );
        assert!(encode(&t, Encoding::Relative).is_ok());
    }

    #[test]
    fn out_of_range_head_is_ignored() {
        let labels = seq(
            Encoding::Absolute,
            &[
                Label::new(Locator::Absolute(2), "nsubj"),
                Label::new(Locator::Absolute(0), "root"),
                Label::new(Locator::Absolute(6), "obj"),
                Label::new(Locator::Absolute(2), "punct"),
            ],
        );
        let decoded = decode_with_repairs(&labels);
        assert_eq!(decoded.tree.head(3), Some(2));
        assert_eq!(decoded.tree.token(3).unwrap().deprel, "obj");
        assert_eq!(
            decoded.repairs,
            vec![Repair::Unresolvable { id: 3 }, Repair::Reattached { id: 3 }]
        );
    }

    #[test]
    fn two_cycle_repair() {
        // 1 -> 2 and 2 -> 1, no root claim: token 1's arc is dropped, it
        // is promoted to root and token 2 keeps head 1.
        let labels = seq(
            Encoding::Relative,
            &[
                Label::new(Locator::Relative(1), "amod"),
                Label::new(Locator::Relative(-1), "obj"),
            ],
        );
        let decoded = decode_with_repairs(&labels);
        let t = &decoded.tree;
        assert_eq!(t.root(), 1);
        assert_eq!(t.token(1).unwrap().deprel, "root");
        assert_eq!(t.head(2), Some(1));
        assert_eq!(t.token(2).unwrap().deprel, "obj");
        assert_eq!(
            decoded.repairs,
            vec![
                Repair::CycleBroken { id: 1 },
                Repair::PromotedRoot { id: 1 }
            ]
        );
    }

    #[test]
    fn extra_roots_attach_to_first() {
        let labels = seq(
            Encoding::Relative,
            &[
                Label::new(Locator::Root, "root"),
                Label::new(Locator::Root, "root"),
                Label::new(Locator::Relative(-2), "obj"),
            ],
        );
        let t = decode(&labels);
        assert_eq!(t.root(), 1);
        assert_eq!(t.head(2), Some(1));
        assert_eq!(t.head(3), Some(1));
    }

    #[test]
    fn exhausted_pos_count_is_unresolvable() {
        let labels = seq(
            Encoding::Pos,
            &[
                Label::new(
                    Locator::Pos {
                        tag: "X".into(),
                        offset: 2,
                    },
                    "dep",
                ),
                Label::new(Locator::Root, "root"),
                Label::new(
                    Locator::Pos {
                        tag: "NOUN".into(),
                        offset: -1,
                    },
                    "dep",
                ),
            ],
        );
        let decoded = decode_with_repairs(&labels);
        assert_eq!(decoded.tree.head(1), Some(3));
        assert_eq!(decoded.tree.head(3), Some(2));
        assert_eq!(
            decoded.repairs,
            vec![Repair::Unresolvable { id: 3 }, Repair::Reattached { id: 3 }]
        );
    }

    #[test]
    fn convert_abs_to_rel() {
        let t = tree(&[
            ("a", "X", 0, "root"),
            ("b", "X", 3, "nsubj"),
            ("c", "X", 1, "obj"),
        ]);
        let abs = encode(&t, Encoding::Absolute).unwrap();
        let rel = convert(&abs, Encoding::Relative).unwrap();
        assert_eq!(rel.items()[1].label.to_string(), "+1@nsubj");
        assert_eq!(convert(&rel, Encoding::Relative).unwrap(), rel);
    }

    #[test]
    fn label_grammar() {
        let parse = |s, e| Label::parse(s, e).unwrap();
        assert_eq!(
            parse("+1@nsubj", Encoding::Relative),
            Label::new(Locator::Relative(1), "nsubj")
        );
        assert_eq!(
            parse("R@root", Encoding::Relative),
            Label::new(Locator::Root, "root")
        );
        assert_eq!(
            parse("VERB:-1@obj", Encoding::Pos),
            Label::new(
                Locator::Pos {
                    tag: "VERB".into(),
                    offset: -1
                },
                "obj"
            )
        );
        assert_eq!(
            parse("3@nmod:poss", Encoding::Absolute),
            Label::new(Locator::Absolute(3), "nmod:poss")
        );

        for bad in ["+0@x", "1@", "x@dep", "@dep", "+1", "--1@x"] {
            let err = Label::parse(bad, Encoding::Relative).unwrap_err();
            assert_eq!(err.locator, Locator::Unresolvable(bad.to_owned()));
            assert_eq!(err.deprel, "dep");
            assert_eq!(err.to_string(), bad);
        }
        assert!(Label::parse("R@root", Encoding::Absolute).is_err());
        assert!(Label::parse("-1@x", Encoding::Absolute).is_err());
        assert!(Label::parse("R:+1@x", Encoding::Pos).is_err());
    }

    #[test]
    fn mixed_sequences_are_rejected() {
        let items = vec![LabeledToken {
            form: "a".into(),
            upos: None,
            label: Label::new(Locator::Relative(1), "dep"),
        }];
        assert!(LabelSequence::new(Encoding::Absolute, items).is_err());
    }

    #[test]
    fn label_file_io() {
        let text =
            "1\tGood\tADJ\tR@root\n2\t!\tPUNCT\t-1@punct\n\n1\tx\t_\t+99@dep\n2\ty\t_\tjunk\n";
        let file = read_labels(text, Encoding::Relative);
        assert_eq!(file.sequences.len(), 2);
        assert_eq!(file.warnings.len(), 1);
        assert_eq!(file.sequences[1].items()[0].upos, None);
        let written = write_labels(&file.sequences);
        assert_eq!(written, format!("{text}\n"));

        let t = decode(&file.sequences[1]);
        assert_eq!(t.len(), 2);

        let empty = read_labels("", Encoding::Absolute);
        assert!(empty.sequences.is_empty());
        assert_eq!(write_labels(&empty.sequences), "");
    }
}
