mod common;

use common::*;
use proptest::prelude::*;
use synsent::conllu::{parse_conllu, write_conllu};
use synsent::encoding::{
    convert, decode, decode_with_repairs, encode, read_labels, write_labels, Encoding, Label,
    LabelSequence, LabeledToken, Locator,
};

/// Independent head lookup for PoS labels: scan every position and
/// count matching tags between dependent and candidate.
fn pos_head_oracle(upos: &[&str], dependent: usize, tag: &str, offset: isize) -> Option<usize> {
    (1..=upos.len()).find(|&cand| {
        if cand == dependent || upos[cand - 1] != tag {
            return false;
        }
        let between = |lo: usize, hi: usize| (lo..=hi).filter(|&i| upos[i - 1] == tag).count();
        if offset > 0 && cand > dependent {
            between(dependent + 1, cand) as isize == offset
        } else if offset < 0 && cand < dependent {
            -(between(cand, dependent - 1) as isize) == offset
        } else {
            false
        }
    })
}

#[test]
fn fixture_round_trips_in_every_encoding() {
    for tree in fixture_treebank() {
        for encoding in Encoding::ALL {
            let labels = encode(&tree, encoding).unwrap();
            assert_eq!(labels.len(), tree.len());
            let decoded = decode_with_repairs(&labels);
            assert!(decoded.repairs.is_empty(), "{:?}", decoded.repairs);
            assert!(
                same_arcs(&tree, &decoded.tree),
                "{} {encoding}",
                tree.sentence_id()
            );
        }
    }
}

#[test]
fn fixture_conversion_cycle_restores_labels() {
    for tree in fixture_treebank() {
        let abs = encode(&tree, Encoding::Absolute).unwrap();
        let pos = convert(&abs, Encoding::Pos).unwrap();
        let rel = convert(&pos, Encoding::Relative).unwrap();
        let back = convert(&rel, Encoding::Absolute).unwrap();
        assert_eq!(back, abs);

        // Independent check of every PoS label against the gold heads.
        let upos: Vec<&str> = tree
            .tokens()
            .iter()
            .map(|t| t.upos.as_deref().unwrap())
            .collect();
        for (token, item) in tree.tokens().iter().zip(pos.items()) {
            match &item.label.locator {
                Locator::Root => assert_eq!(token.head, 0),
                Locator::Pos { tag, offset } => assert_eq!(
                    pos_head_oracle(&upos, token.id, tag, *offset),
                    Some(token.head)
                ),
                other => panic!("unexpected locator {other:?}"),
            }
        }
    }
}

#[test]
fn fixture_label_file_round_trip() {
    let trees = fixture_treebank();
    for encoding in Encoding::ALL {
        let sequences: Vec<LabelSequence> =
            trees.iter().map(|t| encode(t, encoding).unwrap()).collect();
        let text = write_labels(&sequences);
        let file = read_labels(&text, encoding);
        assert!(file.warnings.is_empty());
        assert_eq!(file.sequences, sequences);
        assert_eq!(write_labels(&file.sequences), text);
    }
}

#[test]
fn rel_label_for_head_of_two() {
    let trees = fixture_treebank();
    let tree = trees
        .iter()
        .find(|t| t.sentence_id() == "wonderful-kind")
        .unwrap();
    let rel = encode(tree, Encoding::Relative).unwrap();
    assert_eq!(rel.items()[1].label.to_string(), "+1@nsubj");
    let abs = encode(tree, Encoding::Absolute).unwrap();
    assert_eq!(abs.items()[1].label.to_string(), "3@nsubj");
    assert_eq!(abs.items()[2].label.to_string(), "0@root");
}

#[test]
fn out_of_range_in_four_tokens() {
    let forms = ["The", "bed", "was", "comfortable"];
    let labels = ["2@det", "4@nsubj", "6@cop", "0@root"];
    let items = forms
        .iter()
        .zip(labels)
        .map(|(f, l)| LabeledToken {
            form: f.to_string(),
            upos: None,
            label: Label::parse(l, Encoding::Absolute).unwrap(),
        })
        .collect();
    let decoded = decode_with_repairs(&LabelSequence::new(Encoding::Absolute, items).unwrap());
    assert_eq!(decoded.tree.head(3), Some(4));
    assert_eq!(decoded.tree.token(3).unwrap().deprel, "cop");
    assert_eq!(decoded.repairs.len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn round_trip_random_trees(tree in arb_tree(30)) {
        for encoding in Encoding::ALL {
            let labels = encode(&tree, encoding).unwrap();
            prop_assert_eq!(labels.len(), tree.len());
            prop_assert!(same_arcs(&tree, &decode(&labels)));
        }
    }

    #[test]
    fn decoder_is_total_and_deterministic(labels in arb_labels(40)) {
        let first = decode(&labels);
        assert_valid(&first);
        prop_assert_eq!(first.len(), labels.len());
        prop_assert_eq!(decode(&labels), first);
    }

    #[test]
    fn resolvable_conversions_agree(tree in arb_tree(25)) {
        let abs = encode(&tree, Encoding::Absolute).unwrap();
        for to in Encoding::ALL {
            let converted = convert(&abs, to).unwrap();
            prop_assert!(same_arcs(&decode(&converted), &decode(&abs)));
        }
        let rel = convert(&abs, Encoding::Relative).unwrap();
        prop_assert_eq!(convert(&rel, Encoding::Relative).unwrap(), rel);
    }

    #[test]
    fn conllu_write_parse_identity(trees in prop::collection::vec(arb_tree(15), 0..5)) {
        let text = write_conllu(&trees);
        let parsed = parse_conllu(&text);
        prop_assert!(parsed.rejected.is_empty());
        prop_assert_eq!(parsed.trees.len(), trees.len());
        for (a, b) in parsed.trees.iter().zip(&trees) {
            prop_assert_eq!(a.tokens(), b.tokens());
        }
        prop_assert_eq!(write_conllu(&parsed.trees), text);
    }

    #[test]
    fn parser_never_returns_invalid_trees(
        rows in prop::collection::vec((0usize..6, 0usize..8, 0usize..3), 1..12),
        noise in prop::collection::vec(0usize..4, 1..12),
    ) {
        let mut lines = Vec::new();
        for (i, ((id, head, rel), n)) in rows.iter().zip(noise.iter().cycle()).enumerate() {
            let id_text = match n {
                0 => format!("{id}-{}", id + 1),
                1 => format!("{id}.1"),
                _ => id.to_string(),
            };
            let rel = ["root", "dep", "_"][*rel];
            lines.push(format!("{id_text}\tw{i}\t_\tX\t_\t_\t{head}\t{rel}\t_\t_"));
            if i % 5 == 4 {
                lines.push(String::new());
            }
        }
        let outcome = parse_conllu(&lines.join("\n"));
        for tree in &outcome.trees {
            assert_valid(tree);
        }
    }
}
