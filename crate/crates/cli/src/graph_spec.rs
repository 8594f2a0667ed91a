//! Graph descriptions on the command line: `path:N`, `cycle:N`,
//! `complete:N`, `tree:a,b,d`, `g0`, or the path of a graph JSON file.

use std::fs;

use thue_core::graphs::{
    build_complete, build_cycle, build_outerplanar_g0, build_path, build_rooted_tree, lex_product, Graph,
    InnerKind, RootedTreeMeta,
};
use thue_core::json::{any_graph_from_json, AnyGraph};

use crate::error::CliError;

fn count(text: &str, what: &str) -> Result<usize, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: expected a count, got {text:?}")))
}

/// Parses `a,b,d` into rooted tree parameters.
pub fn tree_params(text: &str) -> Result<(usize, usize, usize), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "tree spec must be root_children,children,depth; got {text:?}"
        )));
    }
    Ok((
        count(parts[0], "tree")?,
        count(parts[1], "tree")?,
        count(parts[2], "tree")?,
    ))
}

pub fn build_tree(text: &str) -> Result<(Graph, RootedTreeMeta), CliError> {
    let (a, b, d) = tree_params(text)?;
    Ok(build_rooted_tree(a, b, d)?)
}

/// Builds the named graph, or loads it from a JSON file.
pub fn parse_graph(spec: &str) -> Result<AnyGraph, CliError> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let g = match kind {
        "path" => build_path(count(arg, "path")?)?,
        "cycle" => build_cycle(count(arg, "cycle")?)?,
        "complete" => build_complete(count(arg, "complete")?)?,
        "tree" => build_tree(arg)?.0,
        "g0" if arg.is_empty() => build_outerplanar_g0().0,
        _ => {
            let text = fs::read_to_string(spec)
                .map_err(|e| CliError::Usage(format!("{spec}: not a graph spec or readable file ({e})")))?;
            return Ok(any_graph_from_json(&text)?);
        }
    };
    Ok(AnyGraph::Plain(g))
}

/// Applies `--inner`/`--k` when both are given; a plain graph otherwise.
pub fn with_product(g: AnyGraph, inner: Option<InnerKind>, k: Option<usize>) -> Result<AnyGraph, CliError> {
    match (g, inner, k) {
        (g, None, None) => Ok(g),
        (AnyGraph::Plain(base), Some(inner), Some(k)) => Ok(AnyGraph::Product(lex_product(&base, inner, k)?)),
        (AnyGraph::Product(_), _, _) => Err(CliError::Usage("graph is already a product".into())),
        _ => Err(CliError::Usage("--inner and --k must be given together".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        assert_eq!(parse_graph("path:5").unwrap().graph().n(), 5);
        assert_eq!(parse_graph("cycle:7").unwrap().graph().edge_count(), 7);
        assert_eq!(parse_graph("tree:3,2,5").unwrap().graph().n(), 94);
        assert_eq!(parse_graph("g0").unwrap().graph().n(), 1757);
        assert!(parse_graph("path:x").is_err());
        assert!(parse_graph("tree:3,2").is_err());
        assert!(parse_graph("/no/such/file.json").is_err());
    }

    #[test]
    fn products() {
        let g = with_product(parse_graph("path:4").unwrap(), Some(InnerKind::Empty), Some(2)).unwrap();
        assert_eq!(g.product().unwrap().view().n(), 8);
        assert!(with_product(parse_graph("path:4").unwrap(), Some(InnerKind::Empty), None).is_err());
    }
}
