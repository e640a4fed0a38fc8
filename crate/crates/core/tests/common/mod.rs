#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use synsent::conllu::{DependencyTree, Token};
use synsent::encoding::{Encoding, Label, LabelSequence, LabeledToken, Locator};

pub const UPOS: &[&str] = &["NOUN", "VERB", "ADJ", "ADV", "DET", "PUNCT"];
pub const DEPRELS: &[&str] = &["nsubj", "obj", "amod", "advmod", "det", "punct", "conj"];

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn fixture_treebank() -> Vec<DependencyTree> {
    let text = std::fs::read_to_string(data_path("fixture.conllu")).unwrap();
    synsent::parse_conllu_strict(&text).unwrap()
}

/// Builds a tree from an attachment order: `order[0]` is the root and
/// every later node attaches to a node earlier in the order.
pub fn tree_from_choices(
    n: usize,
    order: &[usize],
    picks: &[usize],
    upos: &[usize],
    deprels: &[usize],
) -> DependencyTree {
    let mut heads = vec![0; n];
    for (k, &node) in order.iter().enumerate().skip(1) {
        heads[node] = order[picks[k] % k] + 1;
    }
    let tokens = (0..n)
        .map(|i| {
            let deprel = if heads[i] == 0 {
                "root"
            } else {
                DEPRELS[deprels[i] % DEPRELS.len()]
            };
            Token::new(
                i + 1,
                format!("w{i}"),
                Some(UPOS[upos[i] % UPOS.len()].to_owned()),
                heads[i],
                deprel,
            )
        })
        .collect();
    DependencyTree::new("gen", Vec::new(), tokens).unwrap()
}

pub fn arb_tree(max_len: usize) -> impl Strategy<Value = DependencyTree> {
    (1..=max_len).prop_flat_map(|n| {
        (
            Just(n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(any::<usize>(), n),
            prop::collection::vec(any::<usize>(), n),
            prop::collection::vec(any::<usize>(), n),
        )
            .prop_map(|(n, order, picks, upos, deprels)| {
                tree_from_choices(n, &order, &picks, &upos, &deprels)
            })
    })
}

/// Random labels of any shape for a sentence of length `n`.
pub fn arb_labels(max_len: usize) -> impl Strategy<Value = LabelSequence> {
    (1..=max_len, prop::sample::select(Encoding::ALL.to_vec())).prop_flat_map(|(n, encoding)| {
        let bound = 2 * n as isize;
        let locator = (0..10u8, -bound..=bound, 0..UPOS.len()).prop_map(move |(kind, x, tag)| {
            if kind == 0 {
                return match encoding {
                    Encoding::Absolute => Locator::Absolute(0),
                    _ => Locator::Root,
                };
            }
            match encoding {
                Encoding::Absolute => Locator::Absolute(x.unsigned_abs()),
                Encoding::Relative if x == 0 => Locator::Unresolvable("+0@dep".into()),
                Encoding::Relative => Locator::Relative(x),
                Encoding::Pos if x == 0 => Locator::Unresolvable("garbage".into()),
                Encoding::Pos => Locator::Pos {
                    tag: UPOS[tag].to_owned(),
                    offset: x,
                },
            }
        });
        let item = (locator, 0..DEPRELS.len(), 0..UPOS.len()).prop_map(|(locator, rel, tag)| {
            LabeledToken {
                form: "w".into(),
                upos: Some(UPOS[tag].to_owned()),
                label: Label::new(locator, DEPRELS[rel]),
            }
        });
        prop::collection::vec(item, n)
            .prop_map(move |items| LabelSequence::new(encoding, items).unwrap())
    })
}

/// Asserts every tree invariant by rebuilding the tree from its tokens.
pub fn assert_valid(tree: &DependencyTree) {
    let rebuilt = DependencyTree::new("check", Vec::new(), tree.tokens().to_vec());
    assert!(rebuilt.is_ok(), "invalid tree: {:?}", rebuilt.err());
    // independent acyclicity check: every token reaches 0 within n steps
    let n = tree.len();
    for token in tree.tokens() {
        let mut node = token.id;
        let mut steps = 0;
        while node != 0 {
            node = tree.head(node).unwrap();
            steps += 1;
            assert!(steps <= n, "cycle through {}", token.id);
        }
    }
    assert_eq!(tree.tokens().iter().filter(|t| t.head == 0).count(), 1);
}

pub fn same_arcs(a: &DependencyTree, b: &DependencyTree) -> bool {
    a.len() == b.len()
        && a.tokens()
            .iter()
            .zip(b.tokens())
            .all(|(x, y)| x.head == y.head && x.deprel == y.deprel)
}
