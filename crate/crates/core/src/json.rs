//! JSON file formats.
//!
//! - graph: `{"n": 4, "edges": [[0,1],[1,2],[2,3]]}`, edges `u < v`, sorted
//! - product: `{"base": <graph>, "inner": "empty"|"complete", "k": 2}`
//! - coloring: `{"palette": 3, "colors": [...], "one_based": false}`
//! - tuple coloring: `{"p": 2, "q": 7, "sets": [[0,1], ...]}`
//! - sequence: `{"sigma": 4, "symbols": [...]}`

use serde::{Deserialize, Serialize};

use crate::colorings::{Color, Coloring, TupleColoring};
use crate::error::{invalid, Error, Result};
use crate::graphs::{lex_product, Graph, InnerKind, ProductGraph};
use crate::sequences::SymbolSeq;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductJson {
    pub base: GraphJson,
    pub inner: InnerKind,
    pub k: usize,
}

impl From<&ProductGraph> for ProductJson {
    fn from(pg: &ProductGraph) -> Self {
        ProductJson {
            base: pg.base().into(),
            inner: pg.inner(),
            k: pg.k(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringJson {
    pub palette: usize,
    pub colors: Vec<Color>,
    #[serde(default)]
    pub one_based: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleColoringJson {
    pub p: usize,
    pub q: usize,
    pub sets: Vec<Vec<Color>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceJson {
    pub sigma: usize,
    pub symbols: Vec<u8>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::InvalidArgument(format!("malformed JSON: {e}"))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn graph_to_json(g: &Graph) -> String {
    to_pretty(&GraphJson::from(g))
}

/// Parses a graph, rejecting edge lists that are not in canonical form.
pub fn graph_from_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text).map_err(parse_err)?;
    if j.edges.iter().any(|e| e[0] >= e[1]) || j.edges.windows(2).any(|w| w[0] >= w[1]) {
        return invalid("edges must be [u,v] with u < v, sorted and distinct");
    }
    j.try_into()
}

pub fn product_to_json(pg: &ProductGraph) -> String {
    to_pretty(&ProductJson::from(pg))
}

pub fn product_from_json(text: &str) -> Result<ProductGraph> {
    let j: ProductJson = serde_json::from_str(text).map_err(parse_err)?;
    let base = graph_from_json(&to_pretty(&j.base))?;
    lex_product(&base, j.inner, j.k)
}

/// Either a plain graph or a product, as accepted by `verify` and `solve`.
#[derive(Debug, Clone)]
pub enum AnyGraph {
    Plain(Graph),
    Product(ProductGraph),
}

impl AnyGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            AnyGraph::Plain(g) => g,
            AnyGraph::Product(pg) => pg.view(),
        }
    }

    pub fn product(&self) -> Option<&ProductGraph> {
        match self {
            AnyGraph::Plain(_) => None,
            AnyGraph::Product(pg) => Some(pg),
        }
    }
}

pub fn any_graph_from_json(text: &str) -> Result<AnyGraph> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    if value.get("base").is_some() {
        product_from_json(text).map(AnyGraph::Product)
    } else {
        graph_from_json(text).map(AnyGraph::Plain)
    }
}

pub fn coloring_to_json(c: &Coloring) -> String {
    to_pretty(&ColoringJson {
        palette: c.palette(),
        colors: c.colors().to_vec(),
        one_based: false,
    })
}

pub fn coloring_from_json(text: &str) -> Result<Coloring> {
    let j: ColoringJson = serde_json::from_str(text).map_err(parse_err)?;
    let colors = if j.one_based {
        if j.colors.contains(&0) {
            return invalid("one-based coloring contains color 0");
        }
        j.colors.iter().map(|c| c - 1).collect()
    } else {
        j.colors
    };
    Coloring::new(j.palette, colors)
}

pub fn tuple_coloring_to_json(tc: &TupleColoring) -> String {
    to_pretty(&TupleColoringJson {
        p: tc.p(),
        q: tc.q(),
        sets: tc.sets().to_vec(),
    })
}

pub fn tuple_coloring_from_json(text: &str) -> Result<TupleColoring> {
    let j: TupleColoringJson = serde_json::from_str(text).map_err(parse_err)?;
    TupleColoring::new(j.p, j.q, j.sets)
}

#[derive(Debug, Clone)]
pub enum AnyColoring {
    Plain(Coloring),
    Tuple(TupleColoring),
}

pub fn any_coloring_from_json(text: &str) -> Result<AnyColoring> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    if value.get("sets").is_some() {
        tuple_coloring_from_json(text).map(AnyColoring::Tuple)
    } else {
        coloring_from_json(text).map(AnyColoring::Plain)
    }
}

pub fn sequence_to_json(s: &SymbolSeq) -> String {
    to_pretty(&SequenceJson {
        sigma: s.sigma(),
        symbols: s.symbols().to_vec(),
    })
}

pub fn sequence_from_json(text: &str) -> Result<SymbolSeq> {
    let j: SequenceJson = serde_json::from_str(text).map_err(parse_err)?;
    SymbolSeq::new(j.sigma, j.symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::c7_fractional_example;
    use crate::graphs::{build_cycle, build_path};

    #[test]
    fn graph_format() {
        let g = build_path(3).unwrap();
        assert_eq!(graph_to_json(&g), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
        assert!(graph_from_json(r#"{"n":3,"edges":[[1,0]]}"#).is_err());
        assert!(graph_from_json(r#"{"n":3,"edges":[[1,2],[0,1]]}"#).is_err());
        assert!(graph_from_json(r#"{"n":3,"edges":[[0,5]]}"#).is_err());
        assert!(graph_from_json("not json").is_err());
    }

    #[test]
    fn product_format() {
        let pg = lex_product(&build_cycle(4).unwrap(), InnerKind::Complete, 2).unwrap();
        let text = product_to_json(&pg);
        assert!(text.contains(r#""inner":"complete""#));
        assert_eq!(product_from_json(&text).unwrap(), pg);
        assert!(matches!(any_graph_from_json(&text).unwrap(), AnyGraph::Product(_)));
    }

    #[test]
    fn coloring_formats() {
        let c = Coloring::new(3, vec![0, 2, 1]).unwrap();
        let text = coloring_to_json(&c);
        assert_eq!(text, r#"{"palette":3,"colors":[0,2,1],"one_based":false}"#);
        assert_eq!(coloring_from_json(&text).unwrap(), c);
        let one = r#"{"palette":3,"colors":[1,3,2],"one_based":true}"#;
        assert_eq!(coloring_from_json(one).unwrap(), c);

        let tc = c7_fractional_example();
        let text = tuple_coloring_to_json(&tc);
        assert!(text.starts_with(r#"{"p":2,"q":7,"sets":[[0,1],[2,3],[0,6]"#));
        assert!(matches!(any_coloring_from_json(&text).unwrap(), AnyColoring::Tuple(_)));
    }

    #[test]
    fn sequence_format() {
        let s: SymbolSeq = "ABCA".parse().unwrap();
        let text = sequence_to_json(&s);
        assert_eq!(text, r#"{"sigma":3,"symbols":[0,1,2,0]}"#);
        assert_eq!(sequence_from_json(&text).unwrap(), s);
    }
}
