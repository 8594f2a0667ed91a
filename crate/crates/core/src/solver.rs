//! Exact search for nonrepetitive colorings of small graphs.
//!
//! Vertices are colored in breadth-first order. After each assignment only
//! paths through the newly colored vertex are checked, since any repetition
//! created by the assignment must use it. Colors are interchangeable, so a
//! fresh color may only be the smallest unused one.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::colorings::{Color, Coloring, TupleColoring};
use crate::error::{invalid, Result};
use crate::graphs::{Graph, ProductGraph};

/// Search budget shared by one solver call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub time_budget: Duration,
    /// Largest palette tried by the optimizing searches.
    pub palette_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 100_000_000,
            time_budget: Duration::from_secs(600),
            palette_cap: 64,
        }
    }
}

impl SearchLimits {
    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 || self.time_budget.is_zero() || self.palette_cap == 0 {
            return invalid("search limits must all be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The search completed: feasibility or optimality is proven.
    Exact,
    /// Every palette up to the cap is infeasible; only a lower bound is known.
    LowerBoundOnly,
    /// Node or time budget ran out.
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Coloring(Coloring),
    Tuple(TupleColoring),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: Status,
    /// Optimum for the optimizing searches.
    pub value: Option<usize>,
    /// Answer of a feasibility search.
    pub feasible: Option<bool>,
    /// Smallest palette not yet proven infeasible.
    pub lower_bound: Option<usize>,
    pub witness: Option<Witness>,
    pub nodes_explored: u64,
    pub elapsed_secs: f64,
}

/// Variants of the search used to cross-check symmetry breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub symmetry_breaking: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            symmetry_breaking: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Exhausted,
    Aborted,
}

struct Budget {
    start: Instant,
    limits: SearchLimits,
    nodes: u64,
    aborted: bool,
}

impl Budget {
    fn new(limits: &SearchLimits) -> Self {
        Budget {
            start: Instant::now(),
            limits: limits.clone(),
            nodes: 0,
            aborted: false,
        }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes
            || (self.nodes % 4096 == 0 && self.start.elapsed() > self.limits.time_budget)
        {
            self.aborted = true;
        }
        !self.aborted
    }

    fn elapsed(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }
}

const UNSET: u64 = 0;

/// Detects repetitive paths through one vertex among colored vertices.
///
/// Each vertex carries a bitmask of its possible colors (a single bit for
/// ordinary colorings, `p` bits for tuple colorings; zero when uncolored).
/// Two positions match when their masks intersect. A path through `v` is
/// built as `v` plus a right arm and then a left arm; each matching pair is
/// checked as soon as its later position is placed.
struct Closer<'a> {
    g: &'a Graph,
    slots: Vec<usize>,
    on_path: Vec<bool>,
}

impl<'a> Closer<'a> {
    fn new(g: &'a Graph) -> Self {
        Closer {
            g,
            slots: Vec::new(),
            on_path: vec![false; g.n()],
        }
    }

    fn repetition_through(&mut self, masks: &[u64], colored: usize, v: usize) -> bool {
        for half in 1..=colored / 2 {
            for left in 0..2 * half {
                self.slots.clear();
                self.slots.resize(2 * half, usize::MAX);
                self.slots[left] = v;
                self.on_path[v] = true;
                let hit = self.right(masks, half, left, left + 1);
                self.on_path[v] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }

    fn right(&mut self, masks: &[u64], half: usize, left: usize, pos: usize) -> bool {
        if pos == 2 * half {
            return left == 0 || self.left(masks, half, left - 1);
        }
        let prev = self.slots[pos - 1];
        for i in 0..self.g.neighbors(prev).len() {
            let w = self.g.neighbors(prev)[i];
            if self.on_path[w] || masks[w] == UNSET {
                continue;
            }
            if pos >= half && pos - half >= left && masks[self.slots[pos - half]] & masks[w] == 0 {
                continue;
            }
            self.slots[pos] = w;
            self.on_path[w] = true;
            let hit = self.right(masks, half, left, pos + 1);
            self.on_path[w] = false;
            if hit {
                return true;
            }
        }
        false
    }

    fn left(&mut self, masks: &[u64], half: usize, pos: usize) -> bool {
        let next = self.slots[pos + 1];
        for i in 0..self.g.neighbors(next).len() {
            let w = self.g.neighbors(next)[i];
            if self.on_path[w] || masks[w] == UNSET {
                continue;
            }
            if pos < half && masks[self.slots[pos + half]] & masks[w] == 0 {
                continue;
            }
            self.slots[pos] = w;
            self.on_path[w] = true;
            let hit = pos == 0 || self.left(masks, half, pos - 1);
            self.on_path[w] = false;
            if hit {
                return true;
            }
        }
        false
    }
}

/// Candidate masks for one vertex (or layer) choosing `size` colors out of
/// `q` when colors `0..used` are already in play: with symmetry breaking,
/// fresh colors must be the smallest unused ones. Ascending numeric order.
fn candidate_sets(size: usize, q: usize, used: usize, symmetry_breaking: bool) -> Vec<u64> {
    let mut out = Vec::new();
    if symmetry_breaking {
        for fresh in 0..=size.min(q.saturating_sub(used)) {
            let fresh_mask = ((1u64 << fresh) - 1) << used;
            for_each_subset(used, size - fresh, &mut |m| out.push(m | fresh_mask));
        }
    } else {
        for_each_subset(q, size, &mut |m| out.push(m));
    }
    out.sort_unstable();
    out
}

fn for_each_subset(universe: usize, size: usize, f: &mut impl FnMut(u64)) {
    fn go(start: usize, universe: usize, left: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if left == 0 {
            f(acc);
            return;
        }
        for x in start..=universe - left {
            go(x + 1, universe, left - 1, acc | 1 << x, f);
        }
    }
    if size <= universe {
        go(0, universe, size, 0, f);
    }
}

fn used_after(used: usize, mask: u64) -> usize {
    used.max(64 - mask.leading_zeros() as usize)
}

/// Vertex-by-vertex search assigning one `size`-subset of `0..q` per vertex.
struct VertexSearch<'a> {
    order: Vec<usize>,
    size: usize,
    q: usize,
    symmetry_breaking: bool,
    masks: Vec<u64>,
    closer: Closer<'a>,
    budget: &'a mut Budget,
}

impl VertexSearch<'_> {
    fn run(&mut self, idx: usize, used: usize) -> Outcome {
        if idx == self.order.len() {
            return Outcome::Found;
        }
        let v = self.order[idx];
        for mask in candidate_sets(self.size, self.q, used, self.symmetry_breaking) {
            if !self.budget.tick() {
                return Outcome::Aborted;
            }
            self.masks[v] = mask;
            if !self.closer.repetition_through(&self.masks, idx + 1, v) {
                match self.run(idx + 1, used_after(used, mask)) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            self.masks[v] = UNSET;
        }
        Outcome::Exhausted
    }
}

fn feasibility(outcome: Outcome, budget: &Budget, witness: Option<Witness>) -> SolveResult {
    let (status, feasible) = match outcome {
        Outcome::Found => (Status::Exact, Some(true)),
        Outcome::Exhausted => (Status::Exact, Some(false)),
        Outcome::Aborted => (Status::Timeout, None),
    };
    SolveResult {
        status,
        value: None,
        feasible,
        lower_bound: None,
        witness: if outcome == Outcome::Found { witness } else { None },
        nodes_explored: budget.nodes,
        elapsed_secs: budget.elapsed(),
    }
}

fn mask_to_color(mask: u64) -> Color {
    mask.trailing_zeros()
}

fn search_colors(g: &Graph, q: usize, opts: SolverOptions, budget: &mut Budget) -> (Outcome, Option<Coloring>) {
    if q > 64 {
        budget.aborted = true;
        return (Outcome::Aborted, None);
    }
    let mut search = VertexSearch {
        order: g.bfs_order(),
        size: 1,
        q,
        symmetry_breaking: opts.symmetry_breaking,
        masks: vec![UNSET; g.n()],
        closer: Closer::new(g),
        budget,
    };
    let outcome = search.run(0, 0);
    let witness = (outcome == Outcome::Found).then(|| {
        Coloring::new(q, search.masks.iter().map(|&m| mask_to_color(m)).collect())
            .expect("search colors stay below q")
    });
    (outcome, witness)
}

/// Decides whether `g` has a nonrepetitive `q`-coloring.
pub fn exists_coloring(g: &Graph, q: usize, limits: &SearchLimits) -> Result<SolveResult> {
    exists_coloring_with(g, q, limits, SolverOptions::default())
}

pub fn exists_coloring_with(g: &Graph, q: usize, limits: &SearchLimits, opts: SolverOptions) -> Result<SolveResult> {
    limits.validate()?;
    if q == 0 {
        return invalid("palette size must be at least 1");
    }
    if q > 64 {
        return invalid("palette size is capped at 64");
    }
    let mut budget = Budget::new(limits);
    let (outcome, witness) = search_colors(g, q, opts, &mut budget);
    Ok(feasibility(outcome, &budget, witness.map(Witness::Coloring)))
}

/// Shared ascending-palette driver: the first feasible `q` is the optimum
/// once every smaller palette has been exhausted.
fn ascend(
    limits: &SearchLimits,
    first: usize,
    mut attempt: impl FnMut(usize, &mut Budget) -> (Outcome, Option<Witness>),
) -> Result<SolveResult> {
    limits.validate()?;
    let mut budget = Budget::new(limits);
    let cap = limits.palette_cap.min(64);
    for q in first..=cap {
        let (outcome, witness) = attempt(q, &mut budget);
        match outcome {
            Outcome::Found => {
                return Ok(SolveResult {
                    status: Status::Exact,
                    value: Some(q),
                    feasible: Some(true),
                    lower_bound: Some(q),
                    witness,
                    nodes_explored: budget.nodes,
                    elapsed_secs: budget.elapsed(),
                })
            }
            Outcome::Exhausted => {}
            Outcome::Aborted => {
                return Ok(SolveResult {
                    status: Status::Timeout,
                    value: None,
                    feasible: None,
                    lower_bound: Some(q),
                    witness: None,
                    nodes_explored: budget.nodes,
                    elapsed_secs: budget.elapsed(),
                })
            }
        }
    }
    Ok(SolveResult {
        status: Status::LowerBoundOnly,
        value: None,
        feasible: None,
        lower_bound: Some(cap.max(first - 1) + 1),
        witness: None,
        nodes_explored: budget.nodes,
        elapsed_secs: budget.elapsed(),
    })
}

/// Thue number: least palette with a nonrepetitive coloring.
pub fn thue_number(g: &Graph, limits: &SearchLimits) -> Result<SolveResult> {
    if g.n() == 0 {
        limits.validate()?;
        return Ok(SolveResult {
            status: Status::Exact,
            value: Some(0),
            feasible: Some(true),
            lower_bound: Some(0),
            witness: Some(Witness::Coloring(Coloring::new(0, vec![])?)),
            nodes_explored: 0,
            elapsed_secs: 0.0,
        });
    }
    ascend(limits, 1, |q, budget| {
        let (outcome, c) = search_colors(g, q, SolverOptions::default(), budget);
        (outcome, c.map(Witness::Coloring))
    })
}

/// Layer-by-layer search for rainbow colorings of a product. Each layer gets
/// a `k`-set, spread over its vertices in ascending order: vertices of one
/// layer are twins, so the order inside a layer never matters.
struct LayerSearch<'a> {
    pg: &'a ProductGraph,
    order: Vec<usize>,
    q: usize,
    masks: Vec<u64>,
    closer: Closer<'a>,
    budget: &'a mut Budget,
}

impl LayerSearch<'_> {
    fn assign(&mut self, b: usize, set: u64) {
        let k = self.pg.k();
        let mut rest = set;
        for j in 0..k {
            let bit = rest & rest.wrapping_neg();
            self.masks[b * k + j] = bit;
            rest ^= bit;
        }
    }

    fn clear(&mut self, b: usize) {
        let k = self.pg.k();
        for j in 0..k {
            self.masks[b * k + j] = UNSET;
        }
    }

    fn run(&mut self, idx: usize, used: usize) -> Outcome {
        if idx == self.order.len() {
            return Outcome::Found;
        }
        let k = self.pg.k();
        let b = self.order[idx];
        let colored = (idx + 1) * k;
        let candidates = if idx == 0 {
            vec![(1u64 << k) - 1]
        } else {
            candidate_sets(k, self.q, used, true)
        };
        for set in candidates {
            if !self.budget.tick() {
                return Outcome::Aborted;
            }
            self.assign(b, set);
            let clash = (0..k).any(|j| self.closer.repetition_through(&self.masks, colored, b * k + j));
            if !clash {
                match self.run(idx + 1, used_after(used, set)) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            self.clear(b);
        }
        Outcome::Exhausted
    }
}

fn search_rainbow(pg: &ProductGraph, q: usize, budget: &mut Budget) -> (Outcome, Option<Coloring>) {
    if q < pg.k() {
        return (Outcome::Exhausted, None);
    }
    let mut search = LayerSearch {
        pg,
        order: pg.base().bfs_order(),
        q,
        masks: vec![UNSET; pg.view().n()],
        closer: Closer::new(pg.view()),
        budget,
    };
    let outcome = search.run(0, 0);
    let witness = (outcome == Outcome::Found).then(|| {
        Coloring::new(q, search.masks.iter().map(|&m| mask_to_color(m)).collect())
            .expect("search colors stay below q")
    });
    (outcome, witness)
}

/// Decides whether `pg` has a rainbow nonrepetitive `q`-coloring.
pub fn exists_rainbow_coloring(pg: &ProductGraph, q: usize, limits: &SearchLimits) -> Result<SolveResult> {
    limits.validate()?;
    if q == 0 || q > 64 {
        return invalid("palette size must be in 1..=64");
    }
    let mut budget = Budget::new(limits);
    let (outcome, witness) = search_rainbow(pg, q, &mut budget);
    Ok(feasibility(outcome, &budget, witness.map(Witness::Coloring)))
}

/// Least palette admitting a rainbow nonrepetitive coloring of `pg`.
pub fn rainbow_thue_number(pg: &ProductGraph, limits: &SearchLimits) -> Result<SolveResult> {
    if pg.base().n() == 0 {
        return thue_number(pg.view(), limits);
    }
    ascend(limits, pg.k(), |q, budget| {
        let (outcome, c) = search_rainbow(pg, q, budget);
        (outcome, c.map(Witness::Coloring))
    })
}

/// Decides whether `g` has a `p`-tuple nonrepetitive `q`-coloring.
pub fn exists_tuple_coloring(g: &Graph, p: usize, q: usize, limits: &SearchLimits) -> Result<SolveResult> {
    limits.validate()?;
    if p == 0 || p >= q {
        return invalid(format!("need 1 <= p < q, got p={p}, q={q}"));
    }
    if q > 64 {
        return invalid("palette size is capped at 64");
    }
    let mut budget = Budget::new(limits);
    let mut search = VertexSearch {
        order: g.bfs_order(),
        size: p,
        q,
        symmetry_breaking: true,
        masks: vec![UNSET; g.n()],
        closer: Closer::new(g),
        budget: &mut budget,
    };
    let outcome = search.run(0, 0);
    let witness = if outcome == Outcome::Found {
        Some(Witness::Tuple(TupleColoring::from_masks(p, q, &search.masks)?))
    } else {
        None
    };
    Ok(feasibility(outcome, &budget, witness))
}

/// Literal check over every simple path of even order, without pruning.
/// Returns true if some path is repetitively colored. Limited to 12 vertices.
pub fn brute_oracle(g: &Graph, c: &Coloring) -> Result<bool> {
    if g.n() > 12 {
        return invalid(format!("brute oracle handles at most 12 vertices, got {}", g.n()));
    }
    if c.len() != g.n() {
        return invalid("coloring size does not match graph");
    }
    fn is_repetition(colors: &[Color]) -> bool {
        let l = colors.len() / 2;
        colors[..l] == colors[l..]
    }
    fn walk(g: &Graph, c: &Coloring, path: &mut Vec<usize>, seen: &mut [bool], colors: &mut Vec<Color>) -> bool {
        if colors.len() % 2 == 0 && is_repetition(colors) {
            return true;
        }
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            path.push(w);
            colors.push(c.color(w));
            let hit = walk(g, c, path, seen, colors);
            colors.pop();
            path.pop();
            seen[w] = false;
            if hit {
                return true;
            }
        }
        false
    }
    for start in 0..g.n() {
        let mut seen = vec![false; g.n()];
        seen[start] = true;
        let mut path = vec![start];
        let mut colors = vec![c.color(start)];
        // a single vertex is an odd path, so the first even check is at 2
        if walk(g, c, &mut path, &mut seen, &mut colors) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_complete, build_cycle, build_path, lex_product, InnerKind};
    use crate::verifier::{find_repetitive_path, find_tuple_repetitive_path};

    fn limits() -> SearchLimits {
        SearchLimits::default()
    }

    fn witness_coloring(r: &SolveResult) -> &Coloring {
        match r.witness.as_ref().unwrap() {
            Witness::Coloring(c) => c,
            Witness::Tuple(_) => panic!("expected an ordinary coloring"),
        }
    }

    #[test]
    fn candidate_sets_break_value_symmetry() {
        assert_eq!(candidate_sets(1, 4, 0, true), vec![0b1]);
        assert_eq!(candidate_sets(1, 4, 2, true), vec![0b1, 0b10, 0b100]);
        assert_eq!(candidate_sets(2, 4, 0, true), vec![0b11]);
        assert_eq!(candidate_sets(2, 5, 2, true), vec![0b11, 0b101, 0b110, 0b1100]);
        assert_eq!(candidate_sets(2, 4, 0, false).len(), 6);
    }

    #[test]
    fn p4_needs_three_colors() {
        let g = build_path(4).unwrap();
        let r = exists_coloring(&g, 2, &limits()).unwrap();
        assert_eq!((r.status, r.feasible), (Status::Exact, Some(false)));
        let r = exists_coloring(&g, 3, &limits()).unwrap();
        assert_eq!((r.status, r.feasible), (Status::Exact, Some(true)));
        let c = witness_coloring(&r);
        assert!(find_repetitive_path(&g, c, 4).unwrap().is_none());
    }

    #[test]
    fn c7_needs_four_colors() {
        let g = build_cycle(7).unwrap();
        let r = exists_coloring(&g, 3, &limits()).unwrap();
        assert_eq!((r.status, r.feasible), (Status::Exact, Some(false)));
        let r = thue_number(&g, &limits()).unwrap();
        assert_eq!((r.status, r.value), (Status::Exact, Some(4)));
    }

    #[test]
    fn complete_graph() {
        let r = thue_number(&build_complete(4).unwrap(), &limits()).unwrap();
        assert_eq!(r.value, Some(4));
    }

    #[test]
    fn timeout_is_reported() {
        let g = build_cycle(7).unwrap();
        let tight = SearchLimits {
            max_nodes: 5,
            ..limits()
        };
        let r = thue_number(&g, &tight).unwrap();
        assert_eq!(r.status, Status::Timeout);
        assert!(r.value.is_none());
        assert!(r.lower_bound.is_some());
    }

    #[test]
    fn palette_cap_gives_lower_bound() {
        let g = build_cycle(7).unwrap();
        let capped = SearchLimits {
            palette_cap: 3,
            ..limits()
        };
        let r = thue_number(&g, &capped).unwrap();
        assert_eq!(r.status, Status::LowerBoundOnly);
        assert_eq!(r.lower_bound, Some(4));
    }

    #[test]
    fn rainbow_k1_matches_base() {
        let base = build_path(6).unwrap();
        let pg = lex_product(&base, InnerKind::Empty, 1).unwrap();
        let r = rainbow_thue_number(&pg, &limits()).unwrap();
        assert_eq!(r.value, thue_number(&base, &limits()).unwrap().value);
    }

    #[test]
    fn rainbow_equals_plain_on_clique_products() {
        let pg = lex_product(&build_path(4).unwrap(), InnerKind::Complete, 2).unwrap();
        let plain = thue_number(pg.view(), &limits()).unwrap();
        let rainbow = rainbow_thue_number(&pg, &limits()).unwrap();
        assert_eq!(plain.status, Status::Exact);
        assert_eq!(rainbow.status, Status::Exact);
        assert_eq!(plain.value, rainbow.value);
    }

    #[test]
    fn tuple_p1_matches_plain() {
        for n in 3..=7 {
            let g = build_cycle(n).unwrap();
            for q in 2..=4 {
                let plain = exists_coloring(&g, q, &limits()).unwrap();
                let tuple = exists_tuple_coloring(&g, 1, q, &limits()).unwrap();
                assert_eq!(plain.feasible, tuple.feasible, "C_{n}, q={q}");
            }
        }
    }

    #[test]
    fn tuple_witness_verifies() {
        let g = build_cycle(7).unwrap();
        let r = exists_tuple_coloring(&g, 2, 7, &limits()).unwrap();
        assert_eq!(r.feasible, Some(true));
        let Some(Witness::Tuple(tc)) = &r.witness else { panic!() };
        assert!(find_tuple_repetitive_path(&g, tc, 6).unwrap().is_none());
        assert!(exists_tuple_coloring(&g, 2, 2, &limits()).is_err());
    }

    #[test]
    fn brute_oracle_examples() {
        let g = build_path(4).unwrap();
        let c = Coloring::new(2, vec![0, 1, 0, 1]).unwrap();
        assert!(brute_oracle(&g, &c).unwrap());
        let c = Coloring::new(3, vec![0, 1, 2, 0]).unwrap();
        assert!(!brute_oracle(&g, &c).unwrap());
        let big = build_path(13).unwrap();
        assert!(brute_oracle(&big, &Coloring::new(1, vec![0; 13]).unwrap()).is_err());
    }

    #[test]
    fn invalid_arguments() {
        let g = build_path(3).unwrap();
        assert!(exists_coloring(&g, 0, &limits()).is_err());
        let zero = SearchLimits {
            max_nodes: 0,
            ..limits()
        };
        assert!(exists_coloring(&g, 3, &zero).is_err());
    }
}
