//! JSON documents for graphs, list assignments, colourings and traces.
//!
//! Graph: `{"n", "rotation", "outer"}` with clockwise rotations, or
//! `{"n", "edges"}` for a graph still to be embedded. Lists:
//! `{"lists", "root"?, "root_pairs"?}`. Colouring: a map from vertex id to
//! colour. Writers emit canonical pretty JSON with a trailing newline, so a
//! read followed by a write reproduces the input bytes.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{PlaneGraph, Vertex};
use crate::lists::{Color, ColorSet, Coloring, ListAssignment, RootPairs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}, field `{path}`: {message}")]
    Syntax {
        line: usize,
        column: usize,
        path: String,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl FormatError {
    fn field(field: &str, message: impl ToString) -> Self {
        FormatError::Field {
            field: field.to_string(),
            message: message.to_string(),
        }
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        FormatError::Syntax {
            line: inner.line(),
            column: inner.column(),
            path,
            message: inner.to_string(),
        }
    })
}

fn write<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation: Option<Vec<Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(Vertex, Vertex)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer: Option<(Vertex, Vertex)>,
}

/// A graph document: already embedded, or an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphInput {
    Embedded(PlaneGraph),
    Edges { n: usize, edges: Vec<(Vertex, Vertex)> },
}

pub fn parse_graph(text: &str) -> Result<GraphInput, FormatError> {
    let doc: GraphDoc = parse(text)?;
    match (doc.rotation, doc.edges) {
        (Some(rotation), None) => {
            if rotation.len() != doc.n {
                return Err(FormatError::field(
                    "rotation",
                    format!("has {} entries but n = {}", rotation.len(), doc.n),
                ));
            }
            PlaneGraph::new(rotation, doc.outer)
                .map(GraphInput::Embedded)
                .map_err(|e| FormatError::field("rotation", e))
        }
        (None, Some(edges)) => {
            if doc.outer.is_some() {
                return Err(FormatError::field("outer", "only allowed together with `rotation`"));
            }
            if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= doc.n || v >= doc.n) {
                return Err(FormatError::field("edges", format!("edge ({u}, {v}) leaves 0..{}", doc.n)));
            }
            Ok(GraphInput::Edges { n: doc.n, edges })
        }
        (Some(_), Some(_)) => Err(FormatError::field("edges", "give either `rotation` or `edges`, not both")),
        (None, None) => Err(FormatError::field("rotation", "missing (or give `edges`)")),
    }
}

/// Writes the dense graph on `0..slot_count` with its outer hint.
pub fn write_graph(g: &PlaneGraph) -> String {
    write(&GraphDoc {
        n: g.slot_count(),
        rotation: Some(g.rotation()),
        edges: None,
        outer: g.outer_hint(),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ListsDoc {
    lists: BTreeMap<Vertex, Vec<Color>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root_pairs: Option<Vec<(Color, Color)>>,
}

pub fn parse_lists(text: &str) -> Result<ListAssignment, FormatError> {
    let doc: ListsDoc = parse(text)?;
    let lists: BTreeMap<Vertex, ColorSet> = doc.lists.into_iter().map(|(v, l)| (v, ColorSet::from(l))).collect();
    match (doc.root, doc.root_pairs) {
        (None, None) => Ok(ListAssignment::from_lists(lists)),
        (Some(edge), Some(pairs)) => {
            if edge.0 == edge.1 {
                return Err(FormatError::field("root", "root vertices must differ"));
            }
            Ok(ListAssignment::rooted(lists, RootPairs::new(edge, pairs)))
        }
        (Some(_), None) => Err(FormatError::field("root_pairs", "required when `root` is given")),
        (None, Some(_)) => Err(FormatError::field("root", "required when `root_pairs` is given")),
    }
}

pub fn write_lists(l: &ListAssignment) -> String {
    write(&ListsDoc {
        lists: l.lists().iter().map(|(&v, c)| (v, c.iter().collect())).collect(),
        root: l.root().map(|r| r.edge),
        root_pairs: l.root().map(|r| r.pairs.clone()),
    })
}

pub fn parse_coloring(text: &str) -> Result<Coloring, FormatError> {
    parse(text)
}

pub fn write_coloring(f: &Coloring) -> String {
    write(f)
}

/// Any serializable report or trace in the same canonical style.
pub fn write_json<T: Serialize>(doc: &T) -> String {
    write(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_list_assignment, gen_polygon_triangulation, ListMode};

    #[test]
    fn graph_round_trip() {
        let g = gen_polygon_triangulation(6, 4, 2);
        let text = write_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), GraphInput::Embedded(g));
        let GraphInput::Embedded(h) = parse_graph(&text).unwrap() else { unreachable!() };
        assert_eq!(write_graph(&h), text);
    }

    #[test]
    fn lists_round_trip() {
        let g = gen_polygon_triangulation(5, 3, 1);
        let l = gen_list_assignment(&g, ListMode::Separated { k: 4, s: 2 }, 9, 1).unwrap();
        let text = write_lists(&l);
        assert_eq!(write_lists(&parse_lists(&text).unwrap()), text);
        let rooted = l.with_root((0, 4), vec![(1, 2), (3, 4)]);
        let text = write_lists(&rooted);
        assert!(text.contains("\"root_pairs\""));
        assert_eq!(parse_lists(&text).unwrap(), rooted);
    }

    #[test]
    fn lists_are_canonicalized() {
        let l = parse_lists(r#"{"lists": {"1": [4, 2, 3], "0": [9, 1]}}"#).unwrap();
        assert_eq!(l.list(1).unwrap().as_slice(), &[2, 3, 4]);
        assert!(write_lists(&l).find("\"0\"").unwrap() < write_lists(&l).find("\"1\"").unwrap());
    }

    #[test]
    fn coloring_is_sorted_map() {
        let f: Coloring = [(10, 3), (2, 1)].into();
        let text = write_coloring(&f);
        assert_eq!(text, "{\n  \"2\": 1,\n  \"10\": 3\n}\n");
        assert_eq!(parse_coloring(&text).unwrap(), f);
    }

    #[test]
    fn edge_lists_accepted() {
        let g = parse_graph(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(g, GraphInput::Edges { n: 3, edges: vec![(0, 1), (1, 2)] });
    }

    #[test]
    fn diagnostics_name_the_field() {
        let e = parse_graph("{\"n\": 2,\n \"rotation\": [[1], [\"x\"]]}").unwrap_err();
        match e {
            FormatError::Syntax { line, path, .. } => {
                assert_eq!(line, 2);
                assert!(path.starts_with("rotation"), "{path}");
            }
            other => panic!("{other}"),
        }
        let e = parse_graph(r#"{"n": 2, "rotation": [[1], []]}"#).unwrap_err();
        assert!(matches!(e, FormatError::Field { ref field, .. } if field == "rotation"), "{e}");
        assert!(parse_lists(r#"{"lists": {}, "root": [0, 1]}"#).is_err());
        assert!(parse_graph(r#"{"n": 1, "rotation": [[]], "extra": 1}"#).is_err());
        assert!(parse_graph(r#"{"n": 2, "edges": [[0, 5]]}"#).is_err());
    }
}
