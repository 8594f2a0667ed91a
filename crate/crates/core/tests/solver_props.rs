use std::time::Duration;

use proptest::prelude::*;
use thue_core::colorings::{Color, Coloring, TupleColoring};
use thue_core::graphs::*;
use thue_core::solver::*;
use thue_core::verifier::{find_repetitive_path, find_tuple_repetitive_path};

fn limits() -> SearchLimits {
    SearchLimits {
        max_nodes: 10_000_000,
        time_budget: Duration::from_secs(60),
        palette_cap: 16,
    }
}

/// Calls `f` on every coloring of `n` vertices with colors below `q`.
fn every_coloring(n: usize, q: usize, mut f: impl FnMut(&[Color]) -> bool) -> bool {
    let mut c = vec![0 as Color; n];
    loop {
        if f(&c) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            c[i] += 1;
            if (c[i] as usize) < q {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

fn feasible_by_enumeration(g: &Graph, q: usize) -> bool {
    every_coloring(g.n(), q, |c| {
        let col = Coloring::new(q, c.to_vec()).unwrap();
        !brute_oracle(g, &col).unwrap()
    })
}

fn arb_small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..12).prop_map(move |pairs| {
            let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn symmetry_breaking_preserves_feasibility(g in arb_small_graph(), q in 1usize..=4) {
        let on = exists_coloring_with(&g, q, &limits(), SolverOptions { symmetry_breaking: true }).unwrap();
        let off = exists_coloring_with(&g, q, &limits(), SolverOptions { symmetry_breaking: false }).unwrap();
        prop_assert_eq!(on.status, Status::Exact);
        prop_assert_eq!(on.feasible, off.feasible);
        prop_assert!(on.nodes_explored <= off.nodes_explored);
    }

    #[test]
    fn solver_matches_exhaustive_enumeration(g in arb_small_graph(), q in 1usize..=3) {
        let r = exists_coloring(&g, q, &limits()).unwrap();
        prop_assert_eq!(r.feasible, Some(feasible_by_enumeration(&g, q)));
        if let Some(Witness::Coloring(c)) = r.witness {
            prop_assert!(!brute_oracle(&g, &c).unwrap());
        }
    }
}

#[test]
fn path_thue_numbers() {
    let mut last = 0;
    for n in 1..=10 {
        let r = thue_number(&build_path(n).unwrap(), &limits()).unwrap();
        assert_eq!(r.status, Status::Exact);
        let v = r.value.unwrap();
        assert!(v >= last, "monotone in n");
        last = v;
        let expected = match n {
            1 => 1,
            2 | 3 => 2,
            _ => 3,
        };
        assert_eq!(v, expected, "P{n}");
    }
}

#[test]
fn induced_subgraphs_never_need_more_colors() {
    let g = lex_product(&build_path(4).unwrap(), InnerKind::Empty, 2).unwrap();
    let full = thue_number(g.view(), &limits()).unwrap().value.unwrap();
    for m in 1..g.view().n() {
        let sub = thue_number(&g.view().induced_prefix(m), &limits()).unwrap();
        assert!(sub.value.unwrap() <= full);
    }
}

#[test]
fn star_layer_repeat_needs_dk_plus_one() {
    let (star, _) = build_rooted_tree(3, 0, 1).unwrap();
    let pg = lex_product(&star, InnerKind::Empty, 2).unwrap();
    let (d, k) = (3, 2);
    // centre layer shares color 0; search the six leaf vertices
    let with_repeat = |q: usize| {
        every_coloring(6, q, |leaves| {
            let mut colors = vec![0, 0];
            colors.extend_from_slice(leaves);
            let c = Coloring::new(q, colors).unwrap();
            find_repetitive_path(pg.view(), &c, 8).unwrap().is_none()
        })
    };
    for q in 1..=d * k {
        assert!(!with_repeat(q), "q={q}");
    }
    assert!(with_repeat(d * k + 1));

    let r = thue_number(pg.view(), &limits()).unwrap();
    if let Some(Witness::Coloring(c)) = r.witness {
        if c.color(0) == c.color(1) {
            assert!(c.used_colors().len() > d * k);
        }
    }
}

#[test]
fn rainbow_search_witnesses_are_rainbow_and_nonrepetitive() {
    for (n, inner) in [(3, InnerKind::Empty), (4, InnerKind::Empty), (4, InnerKind::Complete)] {
        let pg = lex_product(&build_path(n).unwrap(), inner, 2).unwrap();
        let r = rainbow_thue_number(&pg, &limits()).unwrap();
        assert_eq!(r.status, Status::Exact);
        let Some(Witness::Coloring(c)) = r.witness else { panic!("witness") };
        assert!(thue_core::verifier::is_rainbow(&pg, &c));
        assert!(!brute_oracle(pg.view(), &c).unwrap());
        let plain = thue_number(pg.view(), &limits()).unwrap().value.unwrap();
        assert!(plain <= r.value.unwrap());
    }
}

#[test]
fn complete_inner_rainbow_equals_plain() {
    let pg = lex_product(&build_path(3).unwrap(), InnerKind::Complete, 2).unwrap();
    assert_eq!(
        rainbow_thue_number(&pg, &limits()).unwrap().value,
        thue_number(pg.view(), &limits()).unwrap().value
    );
}

#[test]
fn tuple_witnesses_verify() {
    for (n, p, q) in [(7, 2, 7), (5, 1, 4), (5, 2, 8)] {
        let g = build_cycle(n).unwrap();
        let r = exists_tuple_coloring(&g, p, q, &limits()).unwrap();
        assert_eq!(r.feasible, Some(true), "C{n} ({q},{p}) {:?}", r.status);
        let Some(Witness::Tuple(tc)) = r.witness else { panic!("witness") };
        assert!(find_tuple_repetitive_path(&g, &tc, n).unwrap().is_none());
    }
}

#[test]
fn tight_budget_times_out() {
    let g = build_path(10).unwrap();
    let tight = SearchLimits { max_nodes: 3, ..limits() };
    let r = thue_number(&g, &tight).unwrap();
    assert_eq!(r.status, Status::Timeout);
    assert!(r.value.is_none());
}

/// Every `p`-subset of `0..q`.
fn subsets(p: usize, q: usize) -> Vec<Vec<Color>> {
    (0u64..1 << q)
        .filter(|m| m.count_ones() as usize == p)
        .map(|m| (0..q as Color).filter(|&c| m >> c & 1 == 1).collect())
        .collect()
}

#[test]
fn tuple_feasibility_matches_enumeration() {
    let g = build_cycle(5).unwrap();
    for (p, q) in [(1, 3), (1, 4), (2, 5), (2, 6)] {
        let all = subsets(p, q);
        let brute = every_coloring(5, all.len(), |choice| {
            let sets = choice.iter().map(|&i| all[i as usize].clone()).collect();
            let tc = TupleColoring::new(p, q, sets).unwrap();
            find_tuple_repetitive_path(&g, &tc, 5).unwrap().is_none()
        });
        let r = exists_tuple_coloring(&g, p, q, &limits()).unwrap();
        assert_eq!(r.feasible, Some(brute), "C5 ({q},{p})");
    }
}
