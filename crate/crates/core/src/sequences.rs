//! Words over small alphabets: repetition and palindrome detection, the
//! peak/gap decomposition of ternary words, and backtracking generators for
//! square-free words.
//!
//! A block `x_1..x_2l` is a repetition (square) when its two halves agree
//! position-wise. An odd block of length at least 3 is a palindrome exactly
//! when it contains a position whose two neighbors are equal, so a word is
//! palindrome-free iff `x[i-1] != x[i+1]` for every interior `i`: any longer
//! palindrome has such a position at its center, and a position with equal
//! neighbors is itself the center of a length-3 palindrome.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Default expansion budget for every backtracking search.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Finite word over the alphabet `0..sigma`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolSeq {
    sigma: usize,
    symbols: Vec<u8>,
}

impl SymbolSeq {
    pub fn new(sigma: usize, symbols: Vec<u8>) -> Result<Self> {
        if sigma == 0 || sigma > 26 {
            return invalid(format!("alphabet size {sigma} outside 1..=26"));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= sigma) {
            return invalid(format!("symbol {bad} not below alphabet size {sigma}"));
        }
        Ok(SymbolSeq { sigma, symbols })
    }

    /// Parses uppercase letters, `A` being symbol 0. The alphabet size is the
    /// largest symbol plus one unless given.
    pub fn from_letters(text: &str, sigma: Option<usize>) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            if !ch.is_ascii_uppercase() {
                return invalid(format!("unexpected character {ch:?} in sequence"));
            }
            symbols.push(ch as u8 - b'A');
        }
        let sigma = sigma.unwrap_or_else(|| symbols.iter().map(|&s| s as usize + 1).max().unwrap_or(1));
        SymbolSeq::new(sigma, symbols)
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Applies a relabeling `perm[old] = new` of the alphabet.
    pub fn permuted(&self, perm: &[u8]) -> Result<SymbolSeq> {
        if perm.len() != self.sigma {
            return invalid("permutation length must equal the alphabet size");
        }
        let symbols = self.symbols.iter().map(|&s| perm[s as usize]).collect();
        SymbolSeq::new(self.sigma, symbols)
    }
}

impl fmt::Display for SymbolSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", (b'A' + s) as char)?;
        }
        Ok(())
    }
}

impl FromStr for SymbolSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SymbolSeq::from_letters(s, None)
    }
}

/// Lexicographically least `(start, period)` such that the block of length
/// `2 * period` at 1-based `start` is a repetition, with `period` bounded by
/// `max_period` (default: half the length).
///
/// Runs in `O(len * max_period)`: for each period it scans the run lengths of
/// `x[i] == x[i + period]`.
pub fn find_repetition(seq: &SymbolSeq, max_period: Option<usize>) -> Option<(usize, usize)> {
    let s = seq.symbols();
    let n = s.len();
    let max_period = max_period.unwrap_or(n / 2).min(n / 2);
    let mut best: Option<(usize, usize)> = None;
    for period in 1..=max_period {
        let mut run = 0;
        for i in 0..n - period {
            let start = (i + 1).saturating_sub(period);
            if let Some((b, _)) = best {
                if start > b {
                    break;
                }
            }
            if s[i] == s[i + period] {
                run += 1;
                if run >= period {
                    let candidate = (start + 1, period);
                    if best.map_or(true, |b| candidate < b) {
                        best = Some(candidate);
                    }
                    break;
                }
            } else {
                run = 0;
            }
        }
    }
    best
}

pub fn is_palindrome_free(seq: &SymbolSeq) -> bool {
    seq.symbols().windows(3).all(|w| w[0] != w[2])
}

/// True if the word ends with a square whose half length is at most
/// `max_half`.
fn has_square_suffix(s: &[u8], max_half: usize) -> bool {
    let n = s.len();
    (1..=max_half.min(n / 2)).any(|l| s[n - 2 * l..n - l] == s[n - l..])
}

fn ends_with_palindrome(s: &[u8]) -> bool {
    let n = s.len();
    n >= 3 && s[n - 1] == s[n - 3]
}

/// Outcome of a bounded depth-first word search.
enum Walk {
    Done,
    Stopped,
}

/// Depth-first enumeration of words of length `len` over `0..sigma` in
/// lexicographic order. `accept` sees every candidate prefix after a symbol
/// is appended and decides whether to keep it; `visit` sees every full word
/// and returns `false` to stop.
fn backtrack(
    sigma: usize,
    len: usize,
    budget: u64,
    accept: impl Fn(&[u8]) -> bool,
    mut visit: impl FnMut(&[u8]) -> bool,
) -> Result<Walk> {
    if len == 0 {
        return Ok(if visit(&[]) { Walk::Done } else { Walk::Stopped });
    }
    let sigma = sigma as u8;
    let mut word: Vec<u8> = Vec::with_capacity(len);
    let mut next: Vec<u8> = vec![0];
    let mut nodes: u64 = 0;
    loop {
        let pos = word.len();
        if pos == len {
            if !visit(&word) {
                return Ok(Walk::Stopped);
            }
            word.pop();
            next.pop();
            next[pos - 1] += 1;
            continue;
        }
        let candidate = next[pos];
        if candidate >= sigma {
            if pos == 0 {
                return Ok(Walk::Done);
            }
            word.pop();
            next.pop();
            next[pos - 1] += 1;
            continue;
        }
        nodes += 1;
        if nodes > budget {
            return Err(Error::ResourceLimit(format!(
                "word search exceeded {budget} node expansions"
            )));
        }
        word.push(candidate);
        if accept(&word) {
            next.push(0);
        } else {
            word.pop();
            next[pos] += 1;
        }
    }
}

fn first_word(sigma: usize, len: usize, budget: u64, accept: impl Fn(&[u8]) -> bool) -> Result<Option<Vec<u8>>> {
    let mut found = None;
    backtrack(sigma, len, budget, accept, |w| {
        found = Some(w.to_vec());
        false
    })?;
    Ok(found)
}

/// Lexicographically least square-free word of length `len` over `sigma`
/// symbols, optionally also palindrome-free.
pub fn gen_nonrepetitive(sigma: usize, len: usize, require_palindrome_free: bool) -> Result<SymbolSeq> {
    gen_nonrepetitive_with_budget(sigma, len, require_palindrome_free, DEFAULT_NODE_BUDGET)
}

pub fn gen_nonrepetitive_with_budget(
    sigma: usize,
    len: usize,
    require_palindrome_free: bool,
    budget: u64,
) -> Result<SymbolSeq> {
    if sigma == 0 || sigma > 26 {
        return invalid(format!("alphabet size {sigma} outside 1..=26"));
    }
    let accept = |w: &[u8]| {
        !has_square_suffix(w, usize::MAX) && !(require_palindrome_free && ends_with_palindrome(w))
    };
    match first_word(sigma, len, budget, accept)? {
        Some(symbols) => SymbolSeq::new(sigma, symbols),
        None => Err(Error::NoSuchSequence(format!(
            "no {}square-free word of length {len} over {sigma} symbols",
            if require_palindrome_free { "palindrome-free " } else { "" }
        ))),
    }
}

/// Peak positions (1-based) and the gaps between consecutive peaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapProfile {
    pub peaks: Vec<usize>,
    pub gaps: Vec<usize>,
}

/// The first and last letters are always peaks; an interior letter is a peak
/// iff its two neighbors are equal.
pub fn gap_profile(seq: &SymbolSeq) -> Result<GapProfile> {
    let s = seq.symbols();
    if s.len() < 2 {
        return invalid("gap profile needs a word of length at least 2");
    }
    let mut peaks = vec![1];
    peaks.extend((1..s.len() - 1).filter(|&i| s[i - 1] == s[i + 1]).map(|i| i + 1));
    peaks.push(s.len());
    let gaps = peaks.windows(2).map(|w| w[1] - w[0] - 1).collect();
    Ok(GapProfile { peaks, gaps })
}

/// Least `i` with `gaps[i] >= gaps[i+1] <= gaps[i+2]`.
pub fn find_valley(profile: &GapProfile) -> Option<usize> {
    profile
        .gaps
        .windows(3)
        .position(|w| w[0] >= w[1] && w[1] <= w[2])
}

/// Canonical windows around a valley, indexed by the middle gap (1, 2, 3).
/// Peaks sit at the two positions flanking the middle gap.
pub const VALLEY_PATTERNS: [&str; 3] = ["CBABCBA", "ACBABCACBA", "BACBABCABACBA"];

/// A valley window matched against one of the canonical patterns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValleyMatch {
    /// 1, 2 or 3: the middle gap of the valley.
    pub pattern: u8,
    /// 1-based position of the first letter of the window.
    pub window_start: usize,
    pub window: Vec<u8>,
    /// `letters[p]` is the symbol standing for pattern letter `p` (`A`=0).
    pub letters: [u8; 3],
}

/// Matches the window around `valley` against the canonical pattern selected
/// by its middle gap, up to renaming the three letters.
///
/// Requires a ternary word free of repetitions of length at most 6 and a
/// valid valley index for that word's gap profile.
pub fn classify_valley_pattern(seq: &SymbolSeq, valley: usize) -> Result<ValleyMatch> {
    if seq.sigma() != 3 {
        return invalid("valley classification needs a ternary word");
    }
    if let Some((start, period)) = find_repetition(seq, Some(3)) {
        return invalid(format!(
            "word has a repetition of length {} at position {start}",
            2 * period
        ));
    }
    let profile = gap_profile(seq)?;
    let g = &profile.gaps;
    if valley + 2 >= g.len() || !(g[valley] >= g[valley + 1] && g[valley + 1] <= g[valley + 2]) {
        return invalid(format!("index {valley} is not a valley of {g:?}"));
    }
    let middle = g[valley + 1];
    if !(1..=3).contains(&middle) {
        return invalid(format!("middle gap {middle} outside 1..=3"));
    }
    let left_peak = profile.peaks[valley + 1];
    let right_peak = profile.peaks[valley + 2];
    let reach = middle + 1;
    if left_peak <= reach || right_peak + reach > seq.len() {
        return invalid("valley window runs past the end of the word");
    }
    let window_start = left_peak - reach;
    let window = seq.symbols()[window_start - 1..right_peak + reach].to_vec();
    let pattern = VALLEY_PATTERNS[middle - 1].as_bytes();
    debug_assert_eq!(pattern.len(), window.len());

    let mut letters = [u8::MAX; 3];
    let mut taken = [false; 3];
    for (&p, &w) in pattern.iter().zip(&window) {
        let p = (p - b'A') as usize;
        if letters[p] == u8::MAX {
            if taken[w as usize] {
                return invalid("window is not equivalent to the canonical pattern");
            }
            letters[p] = w;
            taken[w as usize] = true;
        } else if letters[p] != w {
            return invalid("window is not equivalent to the canonical pattern");
        }
    }
    Ok(ValleyMatch {
        pattern: middle as u8,
        window_start,
        window,
        letters,
    })
}

/// Visits every word of length `len` over `sigma` symbols with no repetition
/// of length at most `max_rep_len`, in lexicographic order. Returns the number
/// of words visited.
///
/// Rejected up front when the worst-case node count `sum_d sigma (sigma-1)^(d-1)`
/// (adjacent repeats are always excluded) exceeds the budget.
pub fn enumerate_bounded_nonrep(
    sigma: usize,
    len: usize,
    max_rep_len: usize,
    visitor: impl FnMut(&[u8]),
) -> Result<u64> {
    enumerate_bounded_nonrep_with_budget(sigma, len, max_rep_len, DEFAULT_NODE_BUDGET, visitor)
}

pub fn enumerate_bounded_nonrep_with_budget(
    sigma: usize,
    len: usize,
    max_rep_len: usize,
    budget: u64,
    mut visitor: impl FnMut(&[u8]),
) -> Result<u64> {
    if sigma == 0 || sigma > 26 {
        return invalid(format!("alphabet size {sigma} outside 1..=26"));
    }
    if max_rep_len < 2 {
        return invalid("max_rep_len must be at least 2");
    }
    let projected = projected_nodes(sigma, len);
    if projected > budget as f64 {
        return Err(Error::ResourceLimit(format!(
            "projected {projected:.3e} nodes for length {len} exceeds budget {budget}"
        )));
    }
    let max_half = max_rep_len / 2;
    let mut count = 0u64;
    backtrack(
        sigma,
        len,
        u64::MAX,
        |w| !has_square_suffix(w, max_half),
        |w| {
            count += 1;
            visitor(w);
            true
        },
    )?;
    Ok(count)
}

fn projected_nodes(sigma: usize, len: usize) -> f64 {
    let branch = (sigma - 1) as f64;
    (0..len).map(|d| sigma as f64 * branch.powi(d as i32)).sum()
}

/// Lexicographically least word of length `len` over `A,B,C,D` that is
/// square-free, palindrome-free and never has `C` next to `D`. `Ok(None)` if
/// the search space is exhausted.
pub fn search_constrained(len: usize) -> Result<Option<SymbolSeq>> {
    search_constrained_with_budget(len, DEFAULT_NODE_BUDGET)
}

pub fn search_constrained_with_budget(len: usize, budget: u64) -> Result<Option<SymbolSeq>> {
    if len == 0 {
        return invalid("length must be at least 1");
    }
    let accept = |w: &[u8]| {
        let n = w.len();
        if n >= 2 && matches!((w[n - 2], w[n - 1]), (2, 3) | (3, 2)) {
            return false;
        }
        !ends_with_palindrome(w) && !has_square_suffix(w, usize::MAX)
    };
    first_word(4, len, budget, accept)?
        .map(|s| SymbolSeq::new(4, s))
        .transpose()
}

/// True if the word never has `C` (2) adjacent to `D` (3).
pub fn avoids_cd(seq: &SymbolSeq) -> bool {
    seq.symbols()
        .windows(2)
        .all(|w| !matches!((w[0], w[1]), (2, 3) | (3, 2)))
}
