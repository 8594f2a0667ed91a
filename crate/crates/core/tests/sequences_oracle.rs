//! Brute-force oracles for the sequence generators and analyses.

use proptest::prelude::*;
use thue_core::sequences::*;
use thue_core::Error;

/// Naive square test: compares every candidate pair of halves directly.
fn naive_has_square(w: &[u8]) -> bool {
    let n = w.len();
    (1..=n / 2).any(|p| (0..=n - 2 * p).any(|i| w[i..i + p] == w[i + p..i + 2 * p]))
}

fn naive_palindrome_free(w: &[u8]) -> bool {
    w.windows(3).all(|t| t[0] != t[2])
}

/// All words of length `len` over `sigma` letters, in lexicographic order.
fn all_words(sigma: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..sigma).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn gen_matches_least_word_by_enumeration() {
    for (sigma, len, pf) in [(3, 5, false), (3, 5, true), (3, 7, false), (2, 3, false), (4, 4, true)] {
        let expected = all_words(sigma, len)
            .into_iter()
            .find(|w| !naive_has_square(w) && (!pf || naive_palindrome_free(w)));
        let got = gen_nonrepetitive(sigma as usize, len, pf);
        match expected {
            Some(w) => assert_eq!(got.unwrap().symbols(), &w[..], "sigma={sigma} len={len} pf={pf}"),
            None => assert!(matches!(got, Err(Error::NoSuchSequence(_)))),
        }
    }
}

#[test]
fn frozen_least_ternary_word() {
    let w = all_words(3, 5).into_iter().find(|w| !naive_has_square(w)).unwrap();
    assert_eq!(SymbolSeq::new(3, w).unwrap().to_string(), "ABACA");
}

#[test]
fn binary_words_stop_at_three() {
    assert!(all_words(2, 4).iter().all(|w| naive_has_square(w)));
    assert!(matches!(gen_nonrepetitive(2, 4, false), Err(Error::NoSuchSequence(_))));
}

#[test]
fn enumerate_count_matches_filter() {
    for (len, max_rep) in [(4, 2), (4, 4), (6, 2), (7, 6)] {
        let expected = all_words(3, len)
            .into_iter()
            .filter(|w| {
                let s = SymbolSeq::new(3, w.clone()).unwrap();
                find_repetition(&s, Some(max_rep / 2)).is_none()
            })
            .count() as u64;
        let mut visited = 0u64;
        let count = enumerate_bounded_nonrep(3, len, max_rep, |_| visited += 1).unwrap();
        assert_eq!(count, expected, "len={len} max_rep={max_rep}");
        assert_eq!(visited, expected);
    }
}

#[test]
fn search_constrained_small_matches_enumeration() {
    for len in 1..=6 {
        let expected = all_words(4, len).into_iter().find(|w| {
            !naive_has_square(w)
                && naive_palindrome_free(w)
                && w.windows(2).all(|p| !matches!((p[0], p[1]), (2, 3) | (3, 2)))
        });
        let got = search_constrained(len).unwrap().map(|s| s.symbols().to_vec());
        assert_eq!(got, expected, "len={len}");
    }
    assert_ne!(search_constrained(3).unwrap().unwrap().to_string(), "ABA");
}

#[test]
fn long_generated_words_pass_checkers() {
    let s = gen_nonrepetitive(4, 600, true).unwrap();
    assert!(!naive_has_square(s.symbols()));
    assert!(naive_palindrome_free(s.symbols()));
    let k = search_constrained(100).unwrap().unwrap();
    assert!(!naive_has_square(k.symbols()));
    assert!(naive_palindrome_free(k.symbols()));
    assert!(avoids_cd(&k));
}

#[test]
fn length22_sweep_gap_properties() {
    let mut count = 0;
    enumerate_bounded_nonrep(3, 22, 6, |w| {
        count += 1;
        let s = SymbolSeq::new(3, w.to_vec()).unwrap();
        let prof = gap_profile(&s).unwrap();
        let last = prof.gaps.len() - 1;
        for (i, &g) in prof.gaps.iter().enumerate() {
            assert!(g <= 3, "{s}: {:?}", prof.gaps);
            assert!(g >= 1 || i == 0 || i == last, "{s}: {:?}", prof.gaps);
        }
        // an interior peak centers a palindrome reaching one past its nearer neighbor peak
        for j in 1..prof.peaks.len() - 1 {
            let g1 = prof.gaps[j - 1].min(prof.gaps[j]);
            let c = prof.peaks[j] - 1;
            let r = g1 + 1;
            if c >= r && c + r < w.len() {
                assert!((1..=r).all(|d| w[c - d] == w[c + d]), "{s} at {}", c + 1);
            }
        }
        let v = find_valley(&prof).expect("valley");
        let m = classify_valley_pattern(&s, v).unwrap();
        assert_eq!(m.pattern as usize, prof.gaps[v + 1]);
    })
    .unwrap();
    assert!(count > 0);
}

proptest! {
    #[test]
    fn repetition_invariant_under_renaming(
        w in proptest::collection::vec(0u8..4, 0..40),
        perm in Just(vec![0u8, 1, 2, 3]).prop_shuffle(),
    ) {
        let s = SymbolSeq::new(4, w).unwrap();
        let t = s.permuted(&perm).unwrap();
        prop_assert_eq!(find_repetition(&s, None), find_repetition(&t, None));
        prop_assert_eq!(is_palindrome_free(&s), is_palindrome_free(&t));
    }

    #[test]
    fn find_repetition_agrees_with_naive(w in proptest::collection::vec(0u8..3, 0..30)) {
        let s = SymbolSeq::new(3, w.clone()).unwrap();
        let got = find_repetition(&s, None);
        prop_assert_eq!(got.is_some(), naive_has_square(&w));
        if let Some((start, p)) = got {
            let i = start - 1;
            prop_assert_eq!(&w[i..i + p], &w[i + p..i + 2 * p]);
        }
    }
}
