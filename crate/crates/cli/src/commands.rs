use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Serialize;
use thue_core::colorings::{
    c7_fractional_example, color_path_complete, color_path_empty, color_path_rainbow, color_tree_complete, Color,
    Coloring, TreeColoringOptions, TreeColoringSource,
};
use thue_core::graphs::{build_path, lex_product, InnerKind, ProductGraph};
use thue_core::json::{
    any_coloring_from_json, coloring_to_json, graph_to_json, product_to_json, sequence_from_json,
    sequence_to_json, tuple_coloring_to_json, AnyColoring, AnyGraph,
};
use thue_core::sequences::{
    avoids_cd, classify_valley_pattern, enumerate_bounded_nonrep_with_budget, find_repetition, find_valley,
    gap_profile, gen_nonrepetitive_with_budget, is_palindrome_free, search_constrained_with_budget, SymbolSeq,
};
use thue_core::solver::{
    exists_coloring, exists_rainbow_coloring, exists_tuple_coloring, rainbow_thue_number, thue_number,
    SearchLimits, SolveResult, Status, Witness,
};
use thue_core::verifier::{
    check_coloring, check_tuple_coloring, exact_bound, find_repetitive_walk, is_rainbow, CheckReport,
    RepetitionWitness,
};

use crate::error::CliError;
use crate::graph_spec::{build_tree, parse_graph, with_product};

/// Graphs with at most this many vertices are checked exactly by default.
pub const EXACT_DEFAULT_MAX_VERTICES: usize = 14;
/// Path bound used by default on larger graphs.
pub const DEFAULT_BOUND: usize = 10;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `json` to `out`, or to stdout. The human summary goes to stdout
/// when the JSON went to a file and to stderr otherwise.
fn emit(out: Option<&PathBuf>, json: &str, summary: &[String]) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_file(path, &format!("{json}\n"))?;
            summary.iter().for_each(|line| println!("{line}"));
        }
        None => {
            println!("{json}");
            summary.iter().for_each(|line| eprintln!("{line}"));
        }
    }
    Ok(())
}

fn one_based(colors: &[Color]) -> String {
    colors.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn layers_one_based(c: &Coloring, k: usize) -> String {
    c.colors().chunks(k).map(one_based).collect::<Vec<_>>().join(" | ")
}

fn inner_letter(inner: InnerKind) -> char {
    match inner {
        InnerKind::Empty => 'E',
        InnerKind::Complete => 'K',
    }
}

pub enum GenKind {
    Path(usize),
    Cycle(usize),
    Tree(String),
    G0,
    Product { base: String, inner: InnerKind, k: usize },
}

pub fn gen(kind: GenKind, out: Option<&PathBuf>, dot: Option<&PathBuf>) -> Result<u8, CliError> {
    let spec = match kind {
        GenKind::Path(n) => format!("path:{n}"),
        GenKind::Cycle(n) => format!("cycle:{n}"),
        GenKind::Tree(t) => format!("tree:{t}"),
        GenKind::G0 => "g0".to_string(),
        GenKind::Product { base, inner, k } => {
            let g = with_product(parse_graph(&base)?, Some(inner), Some(k))?;
            let pg = g.product().expect("product requested");
            return finish_gen(&product_to_json(pg), pg.view(), out, dot, format!("{base}[{}{k}]", inner_letter(inner)));
        }
    };
    let g = parse_graph(&spec)?;
    finish_gen(&graph_to_json(g.graph()), g.graph(), out, dot, spec)
}

fn finish_gen(
    json: &str,
    g: &thue_core::graphs::Graph,
    out: Option<&PathBuf>,
    dot: Option<&PathBuf>,
    name: String,
) -> Result<u8, CliError> {
    if let Some(path) = dot {
        write_file(path, &g.to_dot())?;
    }
    let summary = format!("{name}: {} vertices, {} edges", g.n(), g.edge_count());
    emit(out, json, &[summary])?;
    Ok(0)
}

pub enum Construction {
    PathEmpty { n: usize, k: usize },
    PathRainbow { n: usize, k: usize },
    PathComplete { n: usize, k: usize },
    TreeComplete { tree: String, k: usize, check_bound: usize, limits: SearchLimits },
    C7Fractional,
}

pub fn color(what: Construction, out: Option<&PathBuf>) -> Result<u8, CliError> {
    let path_product = |n: usize, inner: InnerKind, k: usize| -> Result<ProductGraph, CliError> {
        Ok(lex_product(&build_path(n)?, inner, k)?)
    };
    let (pg, c, name, extra) = match what {
        Construction::PathEmpty { n, k } => {
            (path_product(n, InnerKind::Empty, k)?, color_path_empty(n, k)?, format!("path-empty P{n}[E{k}]"), None)
        }
        Construction::PathRainbow { n, k } => (
            path_product(n, InnerKind::Empty, k)?,
            color_path_rainbow(n, k)?,
            format!("path-rainbow P{n}[E{k}]"),
            None,
        ),
        Construction::PathComplete { n, k } => (
            path_product(n, InnerKind::Complete, k)?,
            color_path_complete(n, k)?,
            format!("path-complete P{n}[K{k}]"),
            None,
        ),
        Construction::TreeComplete { tree, k, check_bound, limits } => {
            let (t, meta) = build_tree(&tree)?;
            let tc = color_tree_complete(&t, &meta, k, &TreeColoringOptions { check_bound, limits })?;
            let source = match tc.source {
                TreeColoringSource::LevelDriver => "level driver",
                TreeColoringSource::Search => "exact search",
            };
            let extra = format!("source {source}, no repetitive path up to {} vertices", tc.check_bound);
            (tc.product, tc.coloring, format!("tree-complete T({tree})[K{k}]"), Some(extra))
        }
        Construction::C7Fractional => {
            let tc = c7_fractional_example();
            let listing = tc
                .sets()
                .iter()
                .enumerate()
                .map(|(v, s)| format!("v{} {{{}}}", v + 1, one_based(s).replace(' ', ",")))
                .collect::<Vec<_>>()
                .join("; ");
            let summary = vec![format!("c7-fractional: ({},{}) tuple coloring of C7", tc.q(), tc.p()), listing];
            emit(out, &tuple_coloring_to_json(&tc), &summary)?;
            return Ok(0);
        }
    };
    let rainbow = if is_rainbow(&pg, &c) { "yes" } else { "no" };
    let mut summary = vec![format!("{name}: palette {}, rainbow {rainbow}", c.palette())];
    summary.extend(extra);
    summary.push(format!("layers (1-based): {}", layers_one_based(&c, pg.k())));
    emit(out, &coloring_to_json(&c), &summary)?;
    Ok(0)
}

pub struct VerifyArgs {
    pub graph: String,
    pub coloring: PathBuf,
    pub bound: Option<usize>,
    pub exact: bool,
    pub rainbow: bool,
    pub walks: Option<usize>,
    pub out: Option<PathBuf>,
    pub node_budget: u64,
}

/// Witness file layout: the witness fields are omitted when none was found.
#[derive(Serialize)]
struct WitnessReport<'a> {
    #[serde(flatten)]
    witness: Option<&'a RepetitionWitness>,
    bound_used: usize,
    exact: bool,
}

pub fn verify(args: VerifyArgs) -> Result<u8, CliError> {
    let graph = parse_graph(&args.graph)?;
    let coloring = any_coloring_from_json(&read_file(&args.coloring)?)?;
    let g = graph.graph();
    let bound = match (args.exact, args.bound) {
        (true, Some(_)) => return Err(CliError::Usage("--exact and --bound are exclusive".into())),
        (true, None) => exact_bound(g.n()),
        (false, Some(l)) if l < 2 => return Err(CliError::Usage("--bound must be at least 2".into())),
        (false, Some(l)) => l,
        (false, None) if g.n() <= EXACT_DEFAULT_MAX_VERTICES => exact_bound(g.n()),
        (false, None) => DEFAULT_BOUND,
    };
    let report: CheckReport = match &coloring {
        AnyColoring::Plain(c) => check_coloring(g, c, bound)?,
        AnyColoring::Tuple(tc) => check_tuple_coloring(g, tc, bound)?,
    };
    let mut code = 0;
    match &report.witness {
        Some(w) => {
            code = 1;
            println!(
                "repetitive path found: vertices {:?}, colors (1-based) {} | {}",
                w.path,
                one_based(&w.half_colors),
                one_based(&w.half_colors)
            );
        }
        None if report.exact => println!(
            "nonrepetitive: exact check, every path of up to {} vertices",
            report.bound_used
        ),
        None => println!("no repetition up to 2l ≤ {} (bounded check, not exact)", report.bound_used),
    }
    if args.rainbow {
        let (Some(pg), AnyColoring::Plain(c)) = (graph.product(), &coloring) else {
            return Err(CliError::Usage("--rainbow needs a product graph and a plain coloring".into()));
        };
        if is_rainbow(pg, c) {
            println!("rainbow: every layer has distinct colors");
        } else {
            code = 1;
            println!("not rainbow: some layer repeats a color");
        }
    }
    if let Some(w) = args.walks {
        let AnyColoring::Plain(c) = &coloring else {
            return Err(CliError::Usage("--walks needs a plain coloring".into()));
        };
        match find_repetitive_walk(g, c, w, args.node_budget)? {
            Some(walk) => {
                code = 1;
                println!("repetitive non-boring walk: {:?}", walk.walk);
            }
            None => println!("walk-nonrepetitive up to {w} walk vertices"),
        }
    }
    let json = serde_json::to_string(&WitnessReport {
        witness: report.witness.as_ref(),
        bound_used: report.bound_used,
        exact: report.exact,
    })
    .expect("report serializes");
    match &args.out {
        Some(path) => write_file(path, &format!("{json}\n"))?,
        None if report.witness.is_some() => println!("{json}"),
        None => {}
    }
    Ok(code)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Thue,
    Rainbow,
    Tuple,
}

pub struct SolveArgs {
    pub graph: String,
    pub mode: Mode,
    pub inner: Option<InnerKind>,
    pub k: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub limits: SearchLimits,
}

/// Solver output without timing, so repeated runs are byte-identical.
#[derive(Serialize)]
struct SolveOutput<'a> {
    mode: &'static str,
    vertices: usize,
    status: Status,
    value: Option<usize>,
    feasible: Option<bool>,
    lower_bound: Option<usize>,
    witness: &'a Option<Witness>,
    nodes_explored: u64,
}

pub fn solve(args: SolveArgs) -> Result<u8, CliError> {
    let graph = with_product(parse_graph(&args.graph)?, args.inner, args.k)?;
    let started = Instant::now();
    let (mode, result): (&'static str, SolveResult) = match args.mode {
        Mode::Thue => (
            "thue",
            match args.q {
                Some(q) => exists_coloring(graph.graph(), q, &args.limits)?,
                None => thue_number(graph.graph(), &args.limits)?,
            },
        ),
        Mode::Rainbow => {
            let AnyGraph::Product(pg) = &graph else {
                return Err(CliError::Usage("rainbow mode needs a product (--inner and --k)".into()));
            };
            (
                "rainbow",
                match args.q {
                    Some(q) => exists_rainbow_coloring(pg, q, &args.limits)?,
                    None => rainbow_thue_number(pg, &args.limits)?,
                },
            )
        }
        Mode::Tuple => {
            let (Some(p), Some(q)) = (args.p, args.q) else {
                return Err(CliError::Usage("tuple mode needs --p and --q".into()));
            };
            ("tuple", exists_tuple_coloring(graph.graph(), p, q, &args.limits)?)
        }
    };
    let out = SolveOutput {
        mode,
        vertices: graph.graph().n(),
        status: result.status,
        value: result.value,
        feasible: result.feasible,
        lower_bound: result.lower_bound,
        witness: &result.witness,
        nodes_explored: result.nodes_explored,
    };
    println!("{}", serde_json::to_string(&out).expect("result serializes"));
    let headline = match (result.status, result.value, result.feasible) {
        (Status::Exact, Some(v), _) => format!("exact value {v}"),
        (Status::Exact, None, Some(true)) => "feasible (exact)".to_string(),
        (Status::Exact, None, _) => "infeasible (exact)".to_string(),
        (Status::LowerBoundOnly, ..) => format!("palette cap reached; lower bound {}", bound_text(result.lower_bound)),
        (Status::Timeout, ..) => format!("budget exhausted; lower bound {}", bound_text(result.lower_bound)),
    };
    eprintln!("{headline}; wall time {:.3} s", started.elapsed().as_secs_f64());
    Ok(if result.status == Status::Exact { 0 } else { 3 })
}

fn bound_text(b: Option<usize>) -> String {
    b.map_or("unknown".to_string(), |b| b.to_string())
}

pub fn solve_limits(max_nodes: u64, time_limit: f64, palette_cap: usize) -> Result<SearchLimits, CliError> {
    if !(time_limit > 0.0 && time_limit.is_finite()) {
        return Err(CliError::Usage("--time-limit must be a positive number of seconds".into()));
    }
    let limits = SearchLimits {
        max_nodes,
        time_budget: Duration::from_secs_f64(time_limit),
        palette_cap,
    };
    limits.validate()?;
    Ok(limits)
}

/// A word given inline as letters, or a sequence JSON file.
fn parse_word(text: &str, sigma: Option<usize>) -> Result<SymbolSeq, CliError> {
    if text.ends_with(".json") {
        return Ok(sequence_from_json(&read_file(Path::new(text))?)?);
    }
    Ok(SymbolSeq::from_letters(text, sigma)?)
}

pub enum SeqAction {
    Gen { sigma: usize, len: usize, palindrome_free: bool, json: bool },
    Check { word: String, sigma: Option<usize> },
    Gaps { word: String, sigma: Option<usize> },
    Enumerate { sigma: usize, len: usize, maxrep: usize },
    Kozik { len: usize },
}

pub fn seq(action: SeqAction, budget: u64) -> Result<u8, CliError> {
    match action {
        SeqAction::Gen { sigma, len, palindrome_free, json } => {
            let s = gen_nonrepetitive_with_budget(sigma, len, palindrome_free, budget)?;
            println!("{}", if json { sequence_to_json(&s) } else { s.to_string() });
            Ok(0)
        }
        SeqAction::Check { word, sigma } => {
            let s = parse_word(&word, sigma)?;
            let mut code = 0;
            match find_repetition(&s, None) {
                Some((start, period)) => {
                    code = 1;
                    let text = s.to_string();
                    let piece = &text[start - 1..start - 1 + 2 * period];
                    println!("repetition at position {start}, period {period}: {piece}");
                }
                None => println!("square-free"),
            }
            let pf = is_palindrome_free(&s);
            println!("palindrome-free: {}", if pf { "yes" } else { "no" });
            Ok(code)
        }
        SeqAction::Gaps { word, sigma } => {
            let s = parse_word(&word, sigma)?;
            let prof = gap_profile(&s)?;
            let peaks = prof.peaks.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            println!("peaks {{{peaks}}}");
            println!("gaps {:?}", prof.gaps);
            match find_valley(&prof) {
                Some(v) => {
                    println!("valley at gaps {}..{}", v + 1, v + 3);
                    if s.sigma() == 3 {
                        match classify_valley_pattern(&s, v) {
                            Ok(m) => println!(
                                "pattern {} at position {}: {}",
                                m.pattern,
                                m.window_start,
                                SymbolSeq::new(3, m.window.clone())?
                            ),
                            Err(e) => println!("no canonical pattern: {e}"),
                        }
                    }
                }
                None => println!("no valley"),
            }
            Ok(0)
        }
        SeqAction::Enumerate { sigma, len, maxrep } => {
            let mut without_valley = 0u64;
            let mut first_bad: Option<String> = None;
            let mut patterns = [0u64; 3];
            let count = enumerate_bounded_nonrep_with_budget(sigma, len, maxrep, budget, |w| {
                let s = SymbolSeq::new(sigma, w.to_vec()).expect("enumerated words are valid");
                let valley = gap_profile(&s).ok().and_then(|p| find_valley(&p));
                match valley {
                    Some(v) if sigma == 3 => {
                        if let Ok(m) = classify_valley_pattern(&s, v) {
                            patterns[m.pattern as usize - 1] += 1;
                        }
                    }
                    Some(_) => {}
                    None => {
                        without_valley += 1;
                        first_bad.get_or_insert_with(|| s.to_string());
                    }
                }
            })?;
            println!("visited {count} sequences of length {len} over {sigma} symbols with no repetition of length <= {maxrep}");
            if sigma == 3 {
                println!("valley patterns 1/2/3: {}/{}/{}", patterns[0], patterns[1], patterns[2]);
            }
            match first_bad {
                None => {
                    println!("every sequence has a valley");
                    Ok(0)
                }
                Some(w) => {
                    println!("{without_valley} sequences without a valley, first {w}");
                    Ok(1)
                }
            }
        }
        SeqAction::Kozik { len } => match search_constrained_with_budget(len, budget)? {
            Some(s) => {
                println!("{s}");
                let square_free = find_repetition(&s, None).is_none();
                let certified = square_free && is_palindrome_free(&s) && avoids_cd(&s);
                println!(
                    "square-free {}, palindrome-free {}, no CD/DC {}",
                    square_free,
                    is_palindrome_free(&s),
                    avoids_cd(&s)
                );
                Ok(if certified { 0 } else { 1 })
            }
            None => {
                println!("no such sequence of length {len}");
                Ok(1)
            }
        },
    }
}
