//! Repetition checks for colorings: simple paths (ordinary and tuple
//! colorings), walks, rainbow layers, and the four-layer disjointness
//! trichotomy.
//!
//! Path searches fix the half length `l` outermost and run a DFS from every
//! start vertex; position `i >= l` may only be extended with a vertex that
//! matches position `i - l`, which cuts almost every branch early. A path and
//! its reversal are both repetitions or neither, so only the orientation with
//! the smaller endpoint first is reported.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colorings::{Color, Coloring, TupleColoring};
use crate::error::{invalid, Error, Result};
use crate::graphs::{Graph, ProductGraph};
use crate::sequences::DEFAULT_NODE_BUDGET;

/// A repetitively colored path: `path.len() == 2 * half_colors.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepetitionWitness {
    pub path: Vec<usize>,
    /// Color shared by positions `i` and `i + l`; for tuple colorings, the
    /// smallest common color of the two sets.
    pub half_colors: Vec<Color>,
}

/// Outcome of a bounded check, as written to witness files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub witness: Option<RepetitionWitness>,
    pub bound_used: usize,
    pub exact: bool,
}

/// When two vertices may sit at matching positions of the two halves.
trait PairRule: Sync {
    fn matches(&self, u: usize, w: usize) -> bool;
    fn shared(&self, u: usize, w: usize) -> Color;
}

struct Plain<'a>(&'a [Color]);

impl PairRule for Plain<'_> {
    fn matches(&self, u: usize, w: usize) -> bool {
        self.0[u] == self.0[w]
    }
    fn shared(&self, u: usize, _w: usize) -> Color {
        self.0[u]
    }
}

struct Tuple(Vec<u64>);

impl PairRule for Tuple {
    fn matches(&self, u: usize, w: usize) -> bool {
        self.0[u] & self.0[w] != 0
    }
    fn shared(&self, u: usize, w: usize) -> Color {
        (self.0[u] & self.0[w]).trailing_zeros()
    }
}

/// Largest even path order in a graph with `n` vertices.
pub fn exact_bound(n: usize) -> usize {
    n - n % 2
}

struct PathSearch<'a, R> {
    g: &'a Graph,
    rule: &'a R,
    half: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
}

impl<R: PairRule> PathSearch<'_, R> {
    fn extend(&mut self) -> bool {
        let len = self.path.len();
        let last = self.path[len - 1];
        if len == 2 * self.half {
            return self.path[0] < last;
        }
        for &w in self.g.neighbors(last) {
            if self.on_path[w] || (len >= self.half && !self.rule.matches(self.path[len - self.half], w)) {
                continue;
            }
            self.path.push(w);
            self.on_path[w] = true;
            if self.extend() {
                return true;
            }
            self.on_path[w] = false;
            self.path.pop();
        }
        false
    }
}

fn search_paths<R: PairRule>(g: &Graph, rule: &R, max_vertices: usize) -> Option<RepetitionWitness> {
    let bound = max_vertices.min(exact_bound(g.n()));
    for half in 1..=bound / 2 {
        let found = (0..g.n()).into_par_iter().find_map_first(|start| {
            let mut search = PathSearch {
                g,
                rule,
                half,
                path: vec![start],
                on_path: vec![false; g.n()],
            };
            search.on_path[start] = true;
            search.extend().then_some(search.path)
        });
        if let Some(path) = found {
            let half_colors = (0..half).map(|i| rule.shared(path[i], path[i + half])).collect();
            return Some(RepetitionWitness { path, half_colors });
        }
    }
    None
}

/// First repetitively colored simple path with at most `max_vertices`
/// vertices, by increasing half length, then start vertex, then neighbor
/// order. The search is exact once `max_vertices` reaches `n` rounded down
/// to even.
pub fn find_repetitive_path(g: &Graph, c: &Coloring, max_vertices: usize) -> Result<Option<RepetitionWitness>> {
    if c.len() != g.n() {
        return invalid(format!("coloring has {} entries, graph has {} vertices", c.len(), g.n()));
    }
    Ok(search_paths(g, &Plain(c.colors()), max_vertices))
}

/// Bounded check bundled with the bound actually used.
pub fn check_coloring(g: &Graph, c: &Coloring, max_vertices: usize) -> Result<CheckReport> {
    let bound_used = max_vertices.min(exact_bound(g.n()));
    let witness = find_repetitive_path(g, c, max_vertices)?;
    Ok(CheckReport {
        witness,
        bound_used,
        exact: bound_used == exact_bound(g.n()),
    })
}

/// Path version of the tuple criterion: a choice `c_i ∈ c(v_i)` forming a
/// repetition exists iff `c(v_i) ∩ c(v_{i+l})` is nonempty for every `i`,
/// since every position has its own independent choice.
pub fn find_tuple_repetitive_path(
    g: &Graph,
    tc: &TupleColoring,
    max_vertices: usize,
) -> Result<Option<RepetitionWitness>> {
    if tc.len() != g.n() {
        return invalid(format!("tuple coloring has {} entries, graph has {} vertices", tc.len(), g.n()));
    }
    Ok(search_paths(g, &Tuple(tc.masks()), max_vertices))
}

pub fn check_tuple_coloring(g: &Graph, tc: &TupleColoring, max_vertices: usize) -> Result<CheckReport> {
    let bound_used = max_vertices.min(exact_bound(g.n()));
    let witness = find_tuple_repetitive_path(g, tc, max_vertices)?;
    Ok(CheckReport {
        witness,
        bound_used,
        exact: bound_used == exact_bound(g.n()),
    })
}

fn is_simple_path(g: &Graph, path: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for (i, &v) in path.iter().enumerate() {
        if v >= g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
        if i > 0 && !g.has_edge(path[i - 1], v) {
            return false;
        }
    }
    true
}

/// Re-checks a witness from scratch against the graph and coloring.
pub fn validate_witness(g: &Graph, c: &Coloring, w: &RepetitionWitness) -> bool {
    let l = w.half_colors.len();
    l >= 1
        && w.path.len() == 2 * l
        && c.len() == g.n()
        && is_simple_path(g, &w.path)
        && (0..l).all(|i| c.color(w.path[i]) == w.half_colors[i] && c.color(w.path[l + i]) == w.half_colors[i])
}

pub fn validate_tuple_witness(g: &Graph, tc: &TupleColoring, w: &RepetitionWitness) -> bool {
    let l = w.half_colors.len();
    l >= 1
        && w.path.len() == 2 * l
        && tc.len() == g.n()
        && is_simple_path(g, &w.path)
        && (0..l).all(|i| {
            let x = w.half_colors[i];
            tc.sets()[w.path[i]].contains(&x) && tc.sets()[w.path[l + i]].contains(&x)
        })
}

/// True iff every layer of `pg` gets pairwise distinct colors.
pub fn is_rainbow(pg: &ProductGraph, c: &Coloring) -> bool {
    if c.len() != pg.view().n() {
        return false;
    }
    c.colors().chunks(pg.k()).all(|layer| {
        let mut sorted = layer.to_vec();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    })
}

/// A repetitively colored walk in which some position differs from its
/// partner in the other half.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkWitness {
    pub walk: Vec<usize>,
}

struct WalkSearch<'a> {
    g: &'a Graph,
    colors: &'a [Color],
    half: usize,
    walk: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl WalkSearch<'_> {
    fn extend(&mut self, boring: bool) -> Result<bool> {
        let len = self.walk.len();
        if len == 2 * self.half {
            return Ok(!boring);
        }
        let last = self.walk[len - 1];
        for &w in self.g.neighbors(last) {
            let mut still_boring = boring;
            if len >= self.half {
                let partner = self.walk[len - self.half];
                if self.colors[partner] != self.colors[w] {
                    continue;
                }
                still_boring &= partner == w;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::ResourceLimit(format!(
                    "walk search exceeded {} expansions",
                    self.budget
                )));
            }
            self.walk.push(w);
            if self.extend(still_boring)? {
                return Ok(true);
            }
            self.walk.pop();
        }
        Ok(false)
    }
}

/// First non-boring repetitively colored walk with at most
/// `max_walk_vertices` vertices. A walk `v_1..v_2t` is boring when
/// `v_i = v_{t+i}` for all `i`; those are repetitive under every coloring and
/// are skipped.
pub fn find_repetitive_walk(
    g: &Graph,
    c: &Coloring,
    max_walk_vertices: usize,
    budget: u64,
) -> Result<Option<WalkWitness>> {
    if c.len() != g.n() {
        return invalid("coloring size does not match graph");
    }
    if max_walk_vertices < 2 {
        return invalid("walk bound must be at least 2");
    }
    let mut search = WalkSearch {
        g,
        colors: c.colors(),
        half: 0,
        walk: Vec::new(),
        nodes: 0,
        budget,
    };
    for half in 1..=max_walk_vertices / 2 {
        search.half = half;
        for start in 0..g.n() {
            search.walk.clear();
            search.walk.push(start);
            if search.extend(true)? {
                return Ok(Some(WalkWitness {
                    walk: search.walk.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// True iff only boring walks of at most `max_walk_vertices` vertices are
/// repetitively colored.
pub fn is_walk_nonrepetitive(g: &Graph, c: &Coloring, max_walk_vertices: usize) -> Result<bool> {
    Ok(find_repetitive_walk(g, c, max_walk_vertices, DEFAULT_NODE_BUDGET)?.is_none())
}

/// For every path `b1 b2 b3 b4` in the base graph, the layer color sets of
/// `b1, b2, b3` or those of `b2, b3, b4` are pairwise disjoint.
pub fn check_path4_trichotomy(pg: &ProductGraph, c: &Coloring) -> bool {
    if c.len() != pg.view().n() {
        return false;
    }
    let k = pg.k();
    let masks: Vec<Vec<Color>> = c
        .colors()
        .chunks(k)
        .map(|layer| {
            let mut s = layer.to_vec();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let disjoint = |a: usize, b: usize| !masks[a].iter().any(|x| masks[b].binary_search(x).is_ok());
    let triple = |a: usize, b: usize, c: usize| disjoint(a, b) && disjoint(b, c) && disjoint(a, c);
    let base = pg.base();
    for b1 in 0..base.n() {
        for &b2 in base.neighbors(b1) {
            for &b3 in base.neighbors(b2) {
                if b3 == b1 {
                    continue;
                }
                for &b4 in base.neighbors(b3) {
                    if b4 == b1 || b4 == b2 {
                        continue;
                    }
                    if !(triple(b1, b2, b3) || triple(b2, b3, b4)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
