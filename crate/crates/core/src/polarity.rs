//! Compositional polarity over dependency trees.
//!
//! Scores are computed bottom-up. At each node the base score of the word
//! is added to the scores of its content dependents, the sum is scaled by
//! the factors of its modifier dependents and finally its sign is flipped
//! once per negator dependent. A dependent is a modifier when its form is
//! in the modifier lexicon and it attaches as `advmod`; a negator when its
//! form is a negation word. Negation is checked first, so a word listed in
//! both sets acts as a negator.

use serde::Serialize;
use thiserror::Error;

use crate::conllu::DependencyTree;
use crate::lexicon::{Lexicon, ModifierLexicon, NegationSet, MAX_SCORE, MIN_SCORE};
use crate::scale::{
    label_of_five_scale, majority_label, normalize, socal_to_five, Polarity, ScaleSpec,
};

/// Relation a modifier must attach with.
pub const MODIFIER_DEPREL: &str = "advmod";

/// The dictionaries the engine reads.
#[derive(Clone, Copy, Debug)]
pub struct Resources<'a> {
    pub lexicon: &'a Lexicon,
    pub modifiers: &'a ModifierLexicon,
    pub negations: &'a NegationSet,
}

/// How a node contributes to its head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Root,
    Content,
    Modifier,
    Negator,
}

/// The computation at one node.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeTrace {
    pub token_id: usize,
    pub form: String,
    pub role: Role,
    pub base_score: f64,
    /// Modifier dependents with their factors, in token order.
    pub modifier_factors: Vec<(String, f64)>,
    /// Negator dependents, in token order.
    pub negated_by: Vec<String>,
    /// Content dependents whose subtree scores were summed, in token order.
    pub content_children: Vec<usize>,
    pub subtree_score: f64,
}

impl NodeTrace {
    /// Recomputes the subtree score from this node's own fields and the
    /// traces of its content children.
    pub fn recompute(&self, traces: &[NodeTrace]) -> f64 {
        let children = self
            .content_children
            .iter()
            .map(|&id| traces[id - 1].subtree_score);
        combine(
            self.base_score,
            children,
            &self.modifier_factors,
            self.negated_by.len(),
        )
    }
}

fn combine(
    base: f64,
    children: impl Iterator<Item = f64>,
    modifiers: &[(String, f64)],
    negators: usize,
) -> f64 {
    let sum = children.fold(base, |acc, s| acc + s);
    let scaled = modifiers.iter().fold(sum, |acc, (_, f)| acc * f);
    if negators % 2 == 1 {
        // + 0.0 turns a negated zero into 0.0
        -scaled + 0.0
    } else {
        scaled
    }
}

/// Score of one sentence with a trace per token (indexed by id − 1).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolarityResult {
    pub sentence_score: f64,
    pub traces: Vec<NodeTrace>,
}

impl PolarityResult {
    pub fn trace(&self, id: usize) -> Option<&NodeTrace> {
        id.checked_sub(1).and_then(|i| self.traces.get(i))
    }
}

/// Computes the polarity of a sentence.
pub fn score_sentence(tree: &DependencyTree, resources: Resources) -> PolarityResult {
    let tokens = tree.tokens();
    let children = tree.children();
    let lowered: Vec<String> = tokens.iter().map(|t| t.form.to_lowercase()).collect();

    let role_of = |id: usize| -> Role {
        let token = &tokens[id - 1];
        let form = lowered[id - 1].as_str();
        if token.is_root() {
            Role::Root
        } else if resources.negations.contains(form) {
            Role::Negator
        } else if token.deprel == MODIFIER_DEPREL && resources.modifiers.factor(form).is_some() {
            Role::Modifier
        } else {
            Role::Content
        }
    };

    let mut traces: Vec<Option<NodeTrace>> = vec![None; tokens.len()];
    for id in post_order(tree.root(), &children) {
        let token = &tokens[id - 1];
        let base_score = token
            .lemma
            .as_deref()
            .and_then(|l| resources.lexicon.get(&l.to_lowercase()))
            .or_else(|| resources.lexicon.get(&lowered[id - 1]))
            .unwrap_or(0.0);

        let mut modifier_factors = Vec::new();
        let mut negated_by = Vec::new();
        let mut content_children = Vec::new();
        for &child in &children[id] {
            match role_of(child) {
                Role::Negator => negated_by.push(tokens[child - 1].form.clone()),
                Role::Modifier => {
                    let factor = resources.modifiers.factor(&lowered[child - 1]).unwrap();
                    modifier_factors.push((tokens[child - 1].form.clone(), factor));
                }
                Role::Content | Role::Root => content_children.push(child),
            }
        }

        let subtree_score = combine(
            base_score,
            content_children.iter().map(|&c| {
                traces[c - 1]
                    .as_ref()
                    .expect("children are scored first")
                    .subtree_score
            }),
            &modifier_factors,
            negated_by.len(),
        );

        traces[id - 1] = Some(NodeTrace {
            token_id: id,
            form: token.form.clone(),
            role: role_of(id),
            base_score,
            modifier_factors,
            negated_by,
            content_children,
            subtree_score,
        });
    }

    let traces: Vec<NodeTrace> = traces
        .into_iter()
        .map(|t| t.expect("every token is reachable from the root"))
        .collect();
    PolarityResult {
        sentence_score: traces[tree.root() - 1].subtree_score,
        traces,
    }
}

fn post_order(root: usize, children: &[Vec<usize>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(children.len());
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        order.push(node);
        stack.extend(&children[node]);
    }
    order.reverse();
    order
}

/// Review-level aggregation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    /// Sum the sentence scores, clamp, normalize and label.
    #[default]
    Sum,
    /// Label every sentence and take the majority label.
    Majority,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReviewResult {
    pub sentence_scores: Vec<f64>,
    pub raw_score: f64,
    /// Clamped raw score on the [1, 5] scale.
    pub five_scale: f64,
    /// Clamped raw score bucketed into 1..=5 stars.
    pub stars: u8,
    pub label: Polarity,
    pub aggregation: Aggregation,
    #[serde(skip)]
    pub sentences: Vec<PolarityResult>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("a review needs at least one sentence")]
pub struct EmptyReview;

fn clamp_score(score: f64) -> f64 {
    score.clamp(MIN_SCORE, MAX_SCORE)
}

/// Label of a single raw score via the five-point scale.
pub fn label_of_score(score: f64) -> Polarity {
    let five = normalize(clamp_score(score), &ScaleSpec::five_point());
    label_of_five_scale(five).expect("normalized value is in range")
}

/// Scores every sentence of a review and aggregates.
///
/// With [`Aggregation::Majority`] the label is the majority of the
/// per-sentence labels; the score fields still describe the summed score.
pub fn score_review(
    trees: &[DependencyTree],
    resources: Resources,
    aggregation: Aggregation,
) -> Result<ReviewResult, EmptyReview> {
    if trees.is_empty() {
        return Err(EmptyReview);
    }

    let sentences: Vec<PolarityResult> =
        trees.iter().map(|t| score_sentence(t, resources)).collect();
    let sentence_scores: Vec<f64> = sentences.iter().map(|s| s.sentence_score).collect();
    let raw_score: f64 = sentence_scores.iter().sum();
    let clamped = clamp_score(raw_score);
    let five_scale = normalize(clamped, &ScaleSpec::five_point());
    let stars = socal_to_five(clamped).expect("clamped score is in range");

    let label = match aggregation {
        Aggregation::Sum => label_of_five_scale(five_scale).expect("normalized value is in range"),
        Aggregation::Majority => {
            let labels: Vec<Polarity> =
                sentence_scores.iter().map(|&s| label_of_score(s)).collect();
            majority_label(&labels).expect("non-empty review")
        }
    };

    Ok(ReviewResult {
        sentence_scores,
        raw_score,
        five_scale,
        stars,
        label,
        aggregation,
        sentences,
    })
}
