//! JSON graph files.
//!
//! ```json
//! {"vertices": [...], "source": "s", "sink": "t",
//!  "edges": [["s","a"], ...], "rotation": {"s": ["a","t","b"], ...}}
//! ```
//!
//! Rotation lists are clockwise. Boundary sides are always derived from the
//! embedding and never read from the file.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{DirectedEdge, EmbeddedDigraph, OTStDigraph, VertexId};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    source: String,
    sink: String,
    edges: Vec<[String; 2]>,
    rotation: IndexMap<String, Vec<String>>,
}

pub fn parse_graph(text: &str) -> Result<EmbeddedDigraph, GraphError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut index = HashMap::with_capacity(file.vertices.len());
    for (i, name) in file.vertices.iter().enumerate() {
        if index.insert(name.as_str(), VertexId(i)).is_some() {
            return Err(GraphError::DuplicateVertex(name.clone()));
        }
    }
    let id = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    };
    let edges = file
        .edges
        .iter()
        .map(|[a, b]| Ok(DirectedEdge::new(id(a)?, id(b)?)))
        .collect::<Result<Vec<_>, GraphError>>()?;
    let mut rotation = vec![Vec::new(); file.vertices.len()];
    let mut seen = vec![false; file.vertices.len()];
    for (v, list) in &file.rotation {
        let vid = id(v)?;
        if seen[vid.0] {
            return Err(GraphError::RotationMismatch(format!(
                "two rotations for {v}"
            )));
        }
        seen[vid.0] = true;
        rotation[vid.0] = list.iter().map(|w| id(w)).collect::<Result<_, _>>()?;
    }
    let source = id(&file.source)?;
    let sink = id(&file.sink)?;
    EmbeddedDigraph::new(file.vertices, edges, rotation, source, sink)
}

pub fn parse_ot(text: &str) -> Result<OTStDigraph, GraphError> {
    OTStDigraph::classify(parse_graph(text)?)
}

/// Canonical JSON: keys in the documented order, arrays in stored order.
pub fn serialize_graph(g: &EmbeddedDigraph) -> String {
    let name = |v: VertexId| g.name(v).to_string();
    let file = GraphFile {
        vertices: g.names().to_vec(),
        source: name(g.source()),
        sink: name(g.sink()),
        edges: g
            .edges()
            .iter()
            .map(|e| [name(e.tail), name(e.head)])
            .collect(),
        rotation: g
            .vertices()
            .map(|v| {
                (
                    name(v),
                    g.rotation(v).iter().map(|i| name(i.neighbor)).collect(),
                )
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("graph serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{counterexample_polygon, rhombus};

    const TRIANGLE: &str = r#"{"vertices": ["s", "v", "t"], "source": "s", "sink": "t",
        "edges": [["s", "v"], ["v", "t"], ["s", "t"]],
        "rotation": {"s": ["v", "t"], "v": ["t", "s"], "t": ["s", "v"]}}"#;

    #[test]
    fn parses_hand_written_file() {
        let g = parse_ot(TRIANGLE).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.graph().name(g.left()[0]), "v");
    }

    #[test]
    fn round_trip_is_byte_stable() {
        for g in [rhombus(), counterexample_polygon()] {
            let text = serialize_graph(g.graph());
            let back = parse_ot(&text).unwrap();
            assert_eq!(serialize_graph(back.graph()), text);
            assert_eq!(back.left(), g.left());
        }
    }

    #[test]
    fn reports_bad_files() {
        assert!(matches!(
            parse_graph("{\"vertices\": ["),
            Err(GraphError::Syntax { line: 1, .. })
        ));
        let unknown = TRIANGLE.replace(r#"["s", "v"], ["v", "t"]"#, r#"["s", "x"], ["v", "t"]"#);
        assert_eq!(
            parse_graph(&unknown).unwrap_err(),
            GraphError::UnknownVertex("x".into())
        );
        let dup = TRIANGLE.replace(r#"["s", "v", "t"]"#, r#"["s", "s", "t"]"#);
        assert_eq!(
            parse_graph(&dup).unwrap_err(),
            GraphError::DuplicateVertex("s".into())
        );
        let extra = TRIANGLE.replace(r#""source""#, r#""left": [], "source""#);
        assert!(matches!(
            parse_graph(&extra),
            Err(GraphError::Syntax { .. })
        ));
    }
}
