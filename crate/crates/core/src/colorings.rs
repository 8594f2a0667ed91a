//! Explicit colorings of path and tree products, layer color sets, and the
//! richness-based labeling of layer sequences.
//!
//! All constructions are driven by prefixes of one lexicographically least
//! square-free, palindrome-free word over four symbols, so the same `(n, k)`
//! always yields the same coloring and shorter instances are prefixes of
//! longer ones (up to 4096 driver symbols).

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graphs::{lex_product, Graph, InnerKind, ProductGraph, RootedTreeMeta};
use crate::sequences::gen_nonrepetitive;
use crate::solver::{self, SearchLimits, Status};
use crate::verifier::find_repetitive_path;

pub type Color = u32;

/// Vertex coloring with palette `0..palette`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    palette: usize,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(palette: usize, colors: Vec<Color>) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c as usize >= palette) {
            return invalid(format!("color {c} outside palette of size {palette}"));
        }
        Ok(Coloring { palette, colors })
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Distinct colors actually used, ascending.
    pub fn used_colors(&self) -> Vec<Color> {
        let mut used = self.colors.clone();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// Restriction to the vertex prefix `0..m`.
    pub fn prefix(&self, m: usize) -> Coloring {
        Coloring {
            palette: self.palette,
            colors: self.colors[..m.min(self.colors.len())].to_vec(),
        }
    }
}

/// Assignment of a `p`-subset of `0..q` to every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleColoring {
    p: usize,
    q: usize,
    sets: Vec<Vec<Color>>,
}

impl TupleColoring {
    /// Each set is sorted on construction; it must hold exactly `p` distinct
    /// colors below `q`, and `q` is capped at 64 so sets fit a bitmask.
    pub fn new(p: usize, q: usize, mut sets: Vec<Vec<Color>>) -> Result<Self> {
        if p == 0 || p > q {
            return invalid(format!("need 1 <= p <= q, got p={p}, q={q}"));
        }
        if q > 64 {
            return invalid("tuple colorings support at most 64 colors");
        }
        for (v, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.len() != p || set.iter().any(|&c| c as usize >= q) {
                return invalid(format!("vertex {v}: {set:?} is not a {p}-subset of 0..{q}"));
            }
        }
        Ok(TupleColoring { p, q, sets })
    }

    /// Builds from bitmasks, one per vertex.
    pub fn from_masks(p: usize, q: usize, masks: &[u64]) -> Result<Self> {
        let sets = masks
            .iter()
            .map(|&m| (0..64).filter(|&b| m >> b & 1 == 1).collect())
            .collect();
        TupleColoring::new(p, q, sets)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn sets(&self) -> &[Vec<Color>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.sets
            .iter()
            .map(|set| set.iter().fold(0u64, |m, &c| m | 1 << c))
            .collect()
    }

    /// The tuple coloring with singleton sets.
    pub fn from_coloring(c: &Coloring) -> Result<Self> {
        TupleColoring::new(1, c.palette().max(1), c.colors().iter().map(|&x| vec![x]).collect())
    }
}

/// Color set of every layer of a product, indexed by base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerColorSets {
    pub k: usize,
    pub sets: Vec<Vec<Color>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
    C,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::A => "A",
            Label::B => "B",
            Label::C => "C",
        };
        f.write_str(s)
    }
}

/// Partial labeling of a layer sequence; `None` marks unlabeled positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelSequence(pub Vec<Option<Label>>);

impl LabelSequence {
    pub fn labels(&self) -> &[Option<Label>] {
        &self.0
    }

    /// Labels as text, `.` for unlabeled.
    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|l| l.map_or(".".to_string(), |l| l.to_string()))
            .collect()
    }
}

/// Length of the cached driving words. Lexicographically least words of
/// different lengths need not share prefixes, so every construction reads a
/// prefix of one fixed word; only longer requests generate a fresh word.
const DRIVER_LEN: usize = 4096;

fn cached_prefix(
    cache: &'static OnceLock<Vec<u8>>,
    sigma: usize,
    palindrome_free: bool,
    len: usize,
) -> Result<Vec<u8>> {
    if len > DRIVER_LEN {
        return Ok(gen_nonrepetitive(sigma, len, palindrome_free)?.symbols().to_vec());
    }
    let word = cache.get_or_init(|| {
        gen_nonrepetitive(sigma, DRIVER_LEN, palindrome_free)
            .expect("long square-free words exist over three and four symbols")
            .symbols()
            .to_vec()
    });
    Ok(word[..len].to_vec())
}

/// Four-symbol square-free palindrome-free driving word of length `len`.
fn driver(len: usize) -> Result<Vec<u8>> {
    static WORD: OnceLock<Vec<u8>> = OnceLock::new();
    cached_prefix(&WORD, 4, true, len)
}

fn ternary_driver(len: usize) -> Result<Vec<u8>> {
    static WORD: OnceLock<Vec<u8>> = OnceLock::new();
    cached_prefix(&WORD, 3, false, len)
}

/// Nonrepetitive coloring of `P_n[E_k]` with `2k+1` colors (`k >= 3`), 6
/// colors (`k = 2`), or 3 colors (`k = 1`).
///
/// Layers cycle with period four. With `X = 0..k`, `Y = k..=2k` and `s_i`
/// the `i`-th driver symbol mapped into `Y`: layer `4i+1` is rainbow on `X`,
/// layers `4i+2` and `4i+4` are monochromatic `s_i`, and layer `4i+3` is
/// rainbow on `Y \ {s_i}`. For `k = 2`, `Y = {2,3,4,5}` and layer `4i+3`
/// takes the two smallest colors of `Y \ {s_i}`.
pub fn color_path_empty(n: usize, k: usize) -> Result<Coloring> {
    if n == 0 || k == 0 {
        return invalid("color_path_empty needs n >= 1 and k >= 1");
    }
    if k == 1 {
        let word = ternary_driver(n)?;
        return Coloring::new(3, word.iter().map(|&s| s as Color).collect());
    }
    let k32 = k as Color;
    let (palette, y): (usize, Vec<Color>) = if k == 2 {
        (6, (2..6).collect())
    } else {
        (2 * k + 1, (k32..=2 * k32).collect())
    };
    let blocks = n.div_ceil(4);
    let word = driver(blocks)?;
    let mut colors = Vec::with_capacity(n * k);
    for layer in 0..n {
        let s = y[word[layer / 4] as usize];
        match layer % 4 {
            0 => colors.extend(0..k32),
            1 | 3 => colors.extend(std::iter::repeat(s).take(k)),
            _ => colors.extend(y.iter().copied().filter(|&c| c != s).take(k)),
        }
    }
    Coloring::new(palette, colors)
}

/// Rainbow nonrepetitive coloring of `P_n[E_k]` with `ceil(7k/2)` colors.
///
/// Color blocks `X, A, B, C, D, E` are consecutive ranges of sizes `k`,
/// `floor(k/2)`, `ceil(k/2)` (three times) and `floor(k/2)`. Layer `4i+1` is
/// `X`; the driver symbol `s_i` picks the pair used on layers `4i+2 = 4i+4`
/// and `4i+3`:
///
/// | s | outer | middle |
/// |---|-------|--------|
/// | 1 | A∪B | C ∪ first floor(k/2) of D |
/// | 2 | A∪C | B∪E |
/// | 3 | C∪E | A∪D |
/// | 4 | D∪E | B ∪ first floor(k/2) of C |
pub fn color_path_rainbow(n: usize, k: usize) -> Result<Coloring> {
    if n == 0 {
        return invalid("color_path_rainbow needs n >= 1");
    }
    if k < 2 {
        return invalid("color_path_rainbow needs k >= 2");
    }
    let (lo, hi) = (k / 2, k.div_ceil(2));
    let mut next = 0 as Color;
    let mut block = |size: usize| {
        let r: Vec<Color> = (next..next + size as Color).collect();
        next += size as Color;
        r
    };
    let x = block(k);
    let a = block(lo);
    let b = block(hi);
    let c = block(hi);
    let d = block(hi);
    let e = block(lo);
    let palette = next as usize;
    debug_assert_eq!(palette, 3 * k + hi);

    let join = |p: &[Color], q: &[Color]| -> Vec<Color> { p.iter().chain(q).copied().collect() };
    let pairs: [(Vec<Color>, Vec<Color>); 4] = [
        (join(&a, &b), join(&c, &d[..lo])),
        (join(&a, &c), join(&b, &e)),
        (join(&c, &e), join(&a, &d)),
        (join(&d, &e), join(&b, &c[..lo])),
    ];

    let word = driver(n.div_ceil(4))?;
    let mut colors = Vec::with_capacity(n * k);
    for layer in 0..n {
        let (outer, middle) = &pairs[word[layer / 4] as usize];
        match layer % 4 {
            0 => colors.extend(&x),
            1 | 3 => colors.extend(outer),
            _ => colors.extend(middle),
        }
    }
    Coloring::new(palette, colors)
}

/// Rainbow blow-up of the four-symbol driver onto `P_n[K_k]`: layer `i` is
/// colored with the block `d_i * k .. d_i * k + k`. Uses `4k` colors.
pub fn color_path_complete(n: usize, k: usize) -> Result<Coloring> {
    if n == 0 || k == 0 {
        return invalid("color_path_complete needs n >= 1 and k >= 1");
    }
    let word = driver(n)?;
    Ok(blow_up(&word, k))
}

fn blow_up(levels: &[u8], k: usize) -> Coloring {
    let k32 = k as Color;
    let colors = levels
        .iter()
        .flat_map(|&d| (0..k32).map(move |j| d as Color * k32 + j))
        .collect();
    Coloring {
        palette: 4 * k,
        colors,
    }
}

/// Knobs for [`color_tree_complete`].
#[derive(Debug, Clone)]
pub struct TreeColoringOptions {
    /// Largest path order (even) checked on the level coloring.
    pub check_bound: usize,
    /// Limits for the fallback search.
    pub limits: SearchLimits,
}

impl Default for TreeColoringOptions {
    fn default() -> Self {
        TreeColoringOptions {
            check_bound: 12,
            limits: SearchLimits::default(),
        }
    }
}

/// How a tree coloring was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeColoringSource {
    LevelDriver,
    Search,
}

#[derive(Debug, Clone)]
pub struct TreeColoring {
    pub product: ProductGraph,
    pub coloring: Coloring,
    pub source: TreeColoringSource,
    /// Path bound the returned coloring was checked at.
    pub check_bound: usize,
}

/// `4k`-coloring of `T[K_k]`: a vertex on tree level `l` with inner index `j`
/// gets color `d_l * k + j`. The result is checked for repetitive paths up to
/// `check_bound` vertices; if one is found the coloring comes from an exact
/// search with `4k` colors instead.
pub fn color_tree_complete(
    tree: &Graph,
    meta: &RootedTreeMeta,
    k: usize,
    opts: &TreeColoringOptions,
) -> Result<TreeColoring> {
    if meta.level.len() != tree.n() {
        return invalid("level metadata does not match the tree");
    }
    if tree.n() > 0 && tree.edge_count() != tree.n() - 1 {
        return invalid("input graph is not a tree");
    }
    if tree.edges().iter().any(|&(u, v)| meta.level[u].abs_diff(meta.level[v]) != 1) {
        return invalid("levels of adjacent vertices must differ by one");
    }
    let product = lex_product(tree, InnerKind::Complete, k)?;
    let word = driver(meta.depth() + 1)?;
    let levels: Vec<u8> = meta.level.iter().map(|&l| word[l]).collect();
    let attempt = blow_up(&levels, k);

    if find_repetitive_path(product.view(), &attempt, opts.check_bound)?.is_none() {
        return Ok(TreeColoring {
            product,
            coloring: attempt,
            source: TreeColoringSource::LevelDriver,
            check_bound: opts.check_bound,
        });
    }
    let result = solver::exists_coloring(product.view(), 4 * k, &opts.limits)?;
    match (result.status, result.witness) {
        (Status::Exact, Some(solver::Witness::Coloring(c))) => Ok(TreeColoring {
            product,
            coloring: c,
            source: TreeColoringSource::Search,
            check_bound: product_bound(tree.n() * k),
        }),
        _ => Err(Error::FallbackFailed {
            reason: format!("no {}-coloring found within search limits", 4 * k),
            attempt: attempt.colors,
        }),
    }
}

fn product_bound(n: usize) -> usize {
    n - n % 2
}

/// Per-layer color sets of `c` on `pg`.
pub fn layer_color_sets(pg: &ProductGraph, c: &Coloring) -> Result<LayerColorSets> {
    if c.len() != pg.view().n() {
        return invalid(format!(
            "coloring has {} entries, product has {} vertices",
            c.len(),
            pg.view().n()
        ));
    }
    let k = pg.k();
    let sets = c
        .colors()
        .chunks(k)
        .map(|layer| {
            let mut s = layer.to_vec();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    Ok(LayerColorSets { k, sets })
}

fn intersection_size(x: &[Color], y: &[Color]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Size of `X ∩ Y` for ascending color lists.
pub fn common_colors(x: &[Color], y: &[Color]) -> usize {
    intersection_size(x, y)
}

/// Minimum overlap `ceil(k/2) + 1` for one `k`-set to be rich in another.
pub fn richness_threshold(k: usize) -> usize {
    k.div_ceil(2) + 1
}

/// `X` is `Y`-rich when `|X ∩ Y| >= ceil(k/2) + 1`. Sets must be ascending.
pub fn is_rich(x: &[Color], y: &[Color], k: usize) -> bool {
    intersection_size(x, y) >= richness_threshold(k)
}

fn pairwise_disjoint(sets: &[Vec<Color>]) -> bool {
    for (i, x) in sets.iter().enumerate() {
        for y in &sets[i + 1..] {
            if intersection_size(x, y) > 0 {
                return false;
            }
        }
    }
    true
}

/// Labels a layer sequence with `A, B, C`.
///
/// The first three consecutive pairwise disjoint sets, starting at index 0 or
/// else index 1, become `A, B, C`. Every later set copies the label of the
/// latest earlier set it is rich in, and stays unlabeled if there is none
/// (or if that set is itself unlabeled). With no disjoint triple at the
/// start the whole sequence is unlabeled.
pub fn label_layers(sets: &LayerColorSets) -> LabelSequence {
    let xs = &sets.sets;
    let k = sets.k;
    let mut labels = vec![None; xs.len()];
    let seed = (0..2).find(|&s| s + 3 <= xs.len() && pairwise_disjoint(&xs[s..s + 3]));
    let Some(seed) = seed else {
        return LabelSequence(labels);
    };
    labels[seed] = Some(Label::A);
    labels[seed + 1] = Some(Label::B);
    labels[seed + 2] = Some(Label::C);
    for next in seed + 3..xs.len() {
        labels[next] = (0..next)
            .rev()
            .find(|&j| is_rich(&xs[next], &xs[j], k))
            .and_then(|j| labels[j]);
    }
    LabelSequence(labels)
}

/// The `(7,2)` tuple coloring of `C_7`, stored 0-based: the 1-based listing
/// is `{1,2} {3,4} {1,7} {5,6} {3,4} {2,6} {5,7}`.
pub fn c7_fractional_example() -> TupleColoring {
    let one_based: [[Color; 2]; 7] = [[1, 2], [3, 4], [1, 7], [5, 6], [3, 4], [2, 6], [5, 7]];
    let sets = one_based
        .iter()
        .map(|s| s.iter().map(|c| c - 1).collect())
        .collect();
    TupleColoring::new(2, 7, sets).expect("listing is a valid (7,2) tuple coloring")
}
