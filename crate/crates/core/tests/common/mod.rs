#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thue_core::colorings::*;
use thue_core::graphs::*;

/// Every builder graph (and small product) with at most 9 vertices.
pub fn small_builder_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 2..=9 {
        out.push((format!("P{n}"), build_path(n).unwrap()));
        out.push((format!("K{n}"), build_complete(n).unwrap()));
        if n >= 3 {
            out.push((format!("C{n}"), build_cycle(n).unwrap()));
        }
    }
    for (a, b, d) in [(1, 1, 5), (2, 2, 2), (3, 0, 1), (2, 1, 3), (4, 1, 1)] {
        let (t, _) = build_rooted_tree(a, b, d).unwrap();
        if t.n() <= 9 {
            out.push((format!("T({a},{b},{d})"), t));
        }
    }
    for (base, inner, k) in [
        (build_path(3).unwrap(), InnerKind::Empty, 2),
        (build_path(4).unwrap(), InnerKind::Complete, 2),
        (build_cycle(4).unwrap(), InnerKind::Empty, 2),
        (build_path(3).unwrap(), InnerKind::Complete, 3),
        (build_path(4).unwrap(), InnerKind::Empty, 2),
    ] {
        let pg = lex_product(&base, inner, k).unwrap();
        out.push((format!("{}[{inner}{k}]", base.n()), pg.view().clone()));
    }
    out
}

pub fn random_set(rng: &mut ChaCha8Rng, universe: usize, k: usize) -> Vec<Color> {
    let mut all: Vec<Color> = (0..universe as Color).collect();
    all.shuffle(rng);
    let mut s = all[..k].to_vec();
    s.sort_unstable();
    s
}

/// Replaces `swaps` members of `x` by colors outside it.
pub fn perturb(rng: &mut ChaCha8Rng, x: &[Color], universe: usize, swaps: usize) -> Vec<Color> {
    let mut out = x.to_vec();
    let mut outside: Vec<Color> = (0..universe as Color).filter(|c| !x.contains(c)).collect();
    outside.shuffle(rng);
    out.shuffle(rng);
    for i in 0..swaps.min(outside.len()) {
        out[i] = outside[i];
    }
    out.sort_unstable();
    out
}

/// Same-label positions with at most one same-label position between them
/// share at least two colors.
pub fn same_labels_overlap(sets: &LayerColorSets, labels: &LabelSequence) -> bool {
    for label in [Label::A, Label::B, Label::C] {
        let pos: Vec<usize> = (0..sets.sets.len())
            .filter(|&i| labels.labels()[i] == Some(label))
            .collect();
        for a in 0..pos.len() {
            for b in a + 1..(a + 3).min(pos.len()) {
                if common_colors(&sets.sets[pos[a]], &sets.sets[pos[b]]) < 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// A layer sequence following a random label word. Layers of one label are
/// small perturbations of a base set, so any two of them stay rich in each
/// other while layers of different labels never are.
pub fn labeled_instance(rng: &mut ChaCha8Rng, k: usize, len: usize) -> (LayerColorSets, Vec<Label>) {
    let universe = 3 * k + k / 2 - 1;
    let mut colors: Vec<Color> = (0..universe as Color).collect();
    colors.shuffle(rng);
    let base: Vec<Vec<Color>> = (0..3)
        .map(|i| {
            let mut s = colors[i * k..(i + 1) * k].to_vec();
            s.sort_unstable();
            s
        })
        .collect();
    let max_swaps = (k - richness_threshold(k).min(k)) / 2;
    let mut word = vec![Label::A, Label::B, Label::C];
    while word.len() < len {
        let last = *word.last().unwrap();
        let choices: Vec<Label> = [Label::A, Label::B, Label::C].into_iter().filter(|&l| l != last).collect();
        word.push(*choices.choose(rng).unwrap());
    }
    let sets = word
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let b = &base[l as usize];
            if i < 3 {
                b.clone()
            } else {
                let swaps = rng.gen_range(0..=max_swaps);
                perturb(rng, b, universe, swaps)
            }
        })
        .collect();
    (LayerColorSets { k, sets }, word)
}
