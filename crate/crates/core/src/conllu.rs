//! CoNLL-U reading and writing, the dependency tree data model, and a
//! naive tokenizer for raw review text.

use std::fmt;

use thiserror::Error;

/// A single basic word of a sentence.
///
/// `head` is the 1-based id of the governing token, 0 for the syntactic
/// root. The XPOS, FEATS, DEPS and MISC columns are kept verbatim.
#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub id: usize,
    pub form: String,
    pub lemma: Option<String>,
    pub upos: Option<String>,
    pub xpos: String,
    pub feats: String,
    pub head: usize,
    pub deprel: String,
    pub deps: String,
    pub misc: String,
}

impl Token {
    /// A token with only the tree-relevant columns filled in.
    pub fn new(
        id: usize,
        form: impl Into<String>,
        upos: Option<String>,
        head: usize,
        deprel: impl Into<String>,
    ) -> Self {
        Token {
            id,
            form: form.into(),
            lemma: None,
            upos,
            xpos: EMPTY.to_owned(),
            feats: EMPTY.to_owned(),
            head,
            deprel: deprel.into(),
            deps: EMPTY.to_owned(),
            misc: EMPTY.to_owned(),
        }
    }

    pub fn is_root(&self) -> bool {
        self.head == 0
    }
}

const EMPTY: &str = "_";

/// Violations of the tree invariants.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("empty sentence")]
    Empty,
    #[error("token ids must be 1..n in order: expected {expected}, found {found}")]
    IdSequence { expected: usize, found: usize },
    #[error("token {id} is its own head")]
    SelfLoop { id: usize },
    #[error("token {id} has head {head} outside [0, {len}]")]
    HeadOutOfRange { id: usize, head: usize, len: usize },
    #[error("token {id} has an empty deprel")]
    EmptyDeprel { id: usize },
    #[error("no root: no token has head 0")]
    NoRoot,
    #[error("multiple roots: tokens {0:?} have head 0")]
    MultipleRoots(Vec<usize>),
    #[error("cycle through tokens {0:?}")]
    Cycle(Vec<usize>),
}

/// A validated dependency tree over the basic words of one sentence.
///
/// Construction goes through [`DependencyTree::new`], so every value of
/// this type is single-rooted, acyclic and has ids `1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DependencyTree {
    sentence_id: String,
    comments: Vec<String>,
    tokens: Vec<Token>,
}

impl DependencyTree {
    pub fn new(
        sentence_id: impl Into<String>,
        comments: Vec<String>,
        tokens: Vec<Token>,
    ) -> Result<Self, TreeError> {
        validate(&tokens)?;
        Ok(DependencyTree {
            sentence_id: sentence_id.into(),
            comments,
            tokens,
        })
    }

    pub fn sentence_id(&self) -> &str {
        &self.sentence_id
    }

    /// Comment lines without the leading `#`.
    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token with the given 1-based id.
    pub fn token(&self, id: usize) -> Option<&Token> {
        id.checked_sub(1).and_then(|idx| self.tokens.get(idx))
    }

    pub fn root(&self) -> usize {
        self.tokens
            .iter()
            .find(|t| t.is_root())
            .map(|t| t.id)
            .expect("validated tree has a root")
    }

    pub fn head(&self, id: usize) -> Option<usize> {
        self.token(id).map(|t| t.head)
    }

    /// Dependents of every position, indexed by head id (index 0 holds the
    /// root). Dependents are listed in increasing id order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.tokens.len() + 1];
        for token in &self.tokens {
            children[token.head].push(token.id);
        }
        children
    }

    pub fn forms(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.form.as_str())
    }

    /// Value of a `# key = value` comment, if present.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| comment_value(c, key))
    }

    pub fn into_tokens(self) -> Vec<Token> {
        self.tokens
    }
}

fn comment_value<'a>(comment: &'a str, key: &str) -> Option<&'a str> {
    let (k, v) = comment.split_once('=')?;
    (k.trim() == key).then(|| v.trim())
}

fn validate(tokens: &[Token]) -> Result<(), TreeError> {
    if tokens.is_empty() {
        return Err(TreeError::Empty);
    }

    let len = tokens.len();
    let mut roots = Vec::new();
    for (idx, token) in tokens.iter().enumerate() {
        if token.id != idx + 1 {
            return Err(TreeError::IdSequence {
                expected: idx + 1,
                found: token.id,
            });
        }
        if token.head == token.id {
            return Err(TreeError::SelfLoop { id: token.id });
        }
        if token.head > len {
            return Err(TreeError::HeadOutOfRange {
                id: token.id,
                head: token.head,
                len,
            });
        }
        if token.deprel.is_empty() {
            return Err(TreeError::EmptyDeprel { id: token.id });
        }
        if token.head == 0 {
            roots.push(token.id);
        }
    }

    match roots.len() {
        0 => return Err(TreeError::NoRoot),
        1 => {}
        _ => return Err(TreeError::MultipleRoots(roots)),
    }

    if let Some(cycle) = find_cycle(tokens.iter().map(|t| t.head)) {
        return Err(TreeError::Cycle(cycle));
    }

    Ok(())
}

/// Finds a cycle in the head function, where `heads[i]` is the head of
/// token `i + 1` and 0 marks "no head".
pub(crate) fn find_cycle(heads: impl IntoIterator<Item = usize>) -> Option<Vec<usize>> {
    let heads: Vec<usize> = heads.into_iter().collect();

    // 0 = unvisited, 1 = on current path, 2 = done
    let mut state = vec![0u8; heads.len() + 1];
    for start in 1..=heads.len() {
        if state[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut node = start;
        while node != 0 && state[node] == 0 {
            state[node] = 1;
            path.push(node);
            node = heads[node - 1];
        }
        if node != 0 && state[node] == 1 {
            let pos = path.iter().position(|&n| n == node).unwrap();
            let mut cycle = path[pos..].to_vec();
            cycle.sort_unstable();
            return Some(cycle);
        }
        for n in path {
            state[n] = 2;
        }
    }
    None
}

/// Errors for one sentence block, with the 1-based line number where the
/// block (or the offending line) starts.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct SentenceError {
    pub line: usize,
    pub kind: SentenceErrorKind,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SentenceErrorKind {
    #[error("expected 10 tab-separated columns, found {0}")]
    ColumnCount(usize),
    #[error("invalid token id '{0}'")]
    BadId(String),
    #[error("invalid head '{0}'")]
    BadHead(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Result of lenient parsing: valid trees, rejected sentences and
/// warnings about skipped material.
#[derive(Clone, Debug, Default)]
pub struct ParseOutcome {
    pub trees: Vec<DependencyTree>,
    pub rejected: Vec<SentenceError>,
    pub warnings: Vec<String>,
}

/// Parses CoNLL-U text, skipping invalid sentences.
///
/// Multiword-token ranges (`3-4`) and empty nodes (`5.1`) are dropped with
/// a warning. The sentence id is taken from a `# sent_id = ...` comment,
/// falling back to the 1-based ordinal of the block.
pub fn parse_conllu(text: &str) -> ParseOutcome {
    let mut outcome = ParseOutcome::default();
    let mut ordinal = 0;

    for block in blocks(text) {
        ordinal += 1;
        match parse_block(&block, ordinal, &mut outcome.warnings) {
            Ok(tree) => outcome.trees.push(tree),
            Err(err) => {
                outcome
                    .warnings
                    .push(format!("skipping sentence {ordinal}: {err}"));
                outcome.rejected.push(err);
            }
        }
    }

    outcome
}

/// Parses CoNLL-U text, failing on the first invalid sentence.
pub fn parse_conllu_strict(text: &str) -> Result<Vec<DependencyTree>, SentenceError> {
    let mut warnings = Vec::new();
    blocks(text)
        .into_iter()
        .enumerate()
        .map(|(idx, block)| parse_block(&block, idx + 1, &mut warnings))
        .collect()
}

struct Block<'a> {
    first_line: usize,
    lines: Vec<(usize, &'a str)>,
}

fn blocks(text: &str) -> Vec<Block<'_>> {
    let mut blocks = Vec::new();
    let mut current: Option<Block> = None;

    for (idx, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            if let Some(block) = current.take() {
                blocks.push(block);
            }
            continue;
        }
        current
            .get_or_insert_with(|| Block {
                first_line: idx + 1,
                lines: Vec::new(),
            })
            .lines
            .push((idx + 1, line));
    }
    blocks.extend(current);

    blocks
}

fn parse_block(
    block: &Block,
    ordinal: usize,
    warnings: &mut Vec<String>,
) -> Result<DependencyTree, SentenceError> {
    let mut comments = Vec::new();
    let mut tokens = Vec::new();

    for &(line_no, line) in &block.lines {
        if let Some(comment) = line.strip_prefix('#') {
            comments.push(comment.to_owned());
            continue;
        }

        let columns: Vec<&str> = line.split('\t').collect();
        let err = |kind| SentenceError {
            line: line_no,
            kind,
        };
        if columns.len() != 10 {
            return Err(err(SentenceErrorKind::ColumnCount(columns.len())));
        }

        let id_text = columns[0];
        if id_text.contains('-') || id_text.contains('.') {
            warnings.push(format!(
                "line {line_no}: skipping non-word token '{id_text}'"
            ));
            continue;
        }
        let id: usize = id_text
            .parse()
            .map_err(|_| err(SentenceErrorKind::BadId(id_text.to_owned())))?;
        let head: usize = columns[6]
            .parse()
            .map_err(|_| err(SentenceErrorKind::BadHead(columns[6].to_owned())))?;

        tokens.push(Token {
            id,
            form: columns[1].to_owned(),
            lemma: optional(columns[2]),
            upos: optional(columns[3]),
            xpos: columns[4].to_owned(),
            feats: columns[5].to_owned(),
            head,
            deprel: optional(columns[7]).unwrap_or_default(),
            deps: columns[8].to_owned(),
            misc: columns[9].to_owned(),
        });
    }

    let sentence_id = comments
        .iter()
        .find_map(|c| comment_value(c, "sent_id"))
        .map(ToOwned::to_owned)
        .unwrap_or_else(|| ordinal.to_string());

    DependencyTree::new(sentence_id, comments, tokens).map_err(|e| SentenceError {
        line: block.first_line,
        kind: e.into(),
    })
}

fn optional(column: &str) -> Option<String> {
    (column != EMPTY && !column.is_empty()).then(|| column.to_owned())
}

fn or_empty(column: &str) -> &str {
    if column.is_empty() {
        EMPTY
    } else {
        column
    }
}

/// Writes trees as CoNLL-U: one blank line after every sentence.
pub fn write_conllu(trees: &[DependencyTree]) -> String {
    let mut out = String::new();
    for tree in trees {
        out.push_str(&tree.to_string());
        out.push('\n');
    }
    out
}

impl fmt::Display for DependencyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for comment in &self.comments {
            writeln!(f, "#{comment}")?;
        }
        for t in &self.tokens {
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                t.id,
                or_empty(&t.form),
                t.lemma.as_deref().unwrap_or(EMPTY),
                t.upos.as_deref().unwrap_or(EMPTY),
                or_empty(&t.xpos),
                or_empty(&t.feats),
                t.head,
                or_empty(&t.deprel),
                or_empty(&t.deps),
                or_empty(&t.misc),
            )?;
        }
        Ok(())
    }
}

fn is_punct(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '¡' | '¿' | '«' | '»' | '…' | '“' | '”' | '‘' | '’' | '–' | '—'
        )
}

fn is_sentence_end(token: &str) -> bool {
    matches!(token, "." | "!" | "?")
}

/// Splits raw text into sentences of tokens.
///
/// Tokens are whitespace-separated chunks with leading and trailing
/// punctuation characters detached one character at a time. A sentence
/// ends after a chunk whose last character is `.`, `!` or `?`.
pub fn simple_tokenize(text: &str) -> Vec<Vec<String>> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();

    for chunk in text.split_whitespace() {
        let start = chunk
            .char_indices()
            .find(|&(_, c)| !is_punct(c))
            .map(|(i, _)| i)
            .unwrap_or(chunk.len());
        let end = chunk
            .char_indices()
            .rev()
            .find(|&(_, c)| !is_punct(c))
            .map(|(i, c)| i + c.len_utf8())
            .unwrap_or(start)
            .max(start);

        current.extend(chunk[..start].chars().map(String::from));
        if start < end {
            current.push(chunk[start..end].to_owned());
        }
        current.extend(chunk[end..].chars().map(String::from));

        if chunk
            .chars()
            .last()
            .map(String::from)
            .is_some_and(|c| is_sentence_end(&c))
        {
            sentences.push(std::mem::take(&mut current));
        }
    }

    if !current.is_empty() {
        sentences.push(current);
    }

    sentences
}
