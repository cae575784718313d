//! Graph file formats: a plain edge list and a read-mostly GraphML subset.
//!
//! Edge list: one `u v` pair per line, `#` starts a comment, and an optional
//! `n=<N>` header fixes the node count so isolated nodes survive.
//!
//! GraphML: only `<node id>` and `<edge source target>` are read. Node ids
//! are arbitrary strings; they are relabeled to `0..N` in document order
//! and kept as labels. Attributes and `<data>` elements are ignored.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::EdgeList { line: i + 1, msg };
        if let Some(rest) = line.strip_prefix("n=") {
            if n.is_some() || !pairs.is_empty() {
                return Err(err("node-count header must come first".into()));
            }
            n = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|e| err(e.to_string()))?,
            );
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected two node ids, got {line:?}")));
        };
        let a = a.parse::<usize>().map_err(|e| err(e.to_string()))?;
        let b = b.parse::<usize>().map_err(|e| err(e.to_string()))?;
        pairs.push((a, b));
    }
    if let Some(n) = n {
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::EdgeList {
                line: 0,
                msg: format!("pair ({a}, {b}) exceeds header n={n}"),
            });
        }
    }
    Graph::from_edge_list(&pairs, n)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "n={}", g.node_count())?;
    for e in g.edges() {
        writeln!(out, "{} {}", e.u(), e.v())?;
    }
    Ok(())
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_edge_list(g, std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn parse_graphml(text: &str) -> Result<Graph> {
    let doc = roxmltree::Document::parse(text)?;
    let root = doc.root_element();
    if root.tag_name().name() != "graphml" {
        return Err(Error::GraphMl(format!(
            "root element is <{}>, expected <graphml>",
            root.tag_name().name()
        )));
    }
    let graph = root
        .children()
        .find(|n| n.has_tag_name("graph"))
        .ok_or_else(|| Error::GraphMl("no <graph> element".into()))?;
    if graph.attribute("edgedefault") == Some("directed") {
        return Err(Error::DirectedGraph);
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels = Vec::new();
    for node in graph.children().filter(|n| n.has_tag_name("node")) {
        let id = node
            .attribute("id")
            .ok_or_else(|| Error::GraphMl("<node> without id".into()))?;
        if index.insert(id, labels.len()).is_some() {
            return Err(Error::GraphMl(format!("duplicate node id {id:?}")));
        }
        labels.push(id.to_string());
    }

    let mut pairs = Vec::new();
    for edge in graph.children().filter(|n| n.has_tag_name("edge")) {
        if edge.attribute("directed") == Some("true") {
            return Err(Error::DirectedGraph);
        }
        let mut endpoint = |attr: &str| -> Result<usize> {
            let id = edge
                .attribute(attr)
                .ok_or_else(|| Error::GraphMl(format!("<edge> without {attr}")))?;
            // Endpoints without a <node> declaration are created implicitly.
            Ok(*index.entry(id).or_insert_with(|| {
                labels.push(id.to_string());
                labels.len() - 1
            }))
        };
        let (s, t) = (endpoint("source")?, endpoint("target")?);
        // Self-loops occur in real interaction data; a simple graph drops them.
        if s != t {
            pairs.push((s, t));
        }
    }

    Graph::from_edge_list(&pairs, Some(labels.len()))?.with_labels(labels)
}

pub fn load_graphml(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_graphml(&text)
}

pub fn write_graphml<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    let id = |v: usize| -> String {
        match g.label(v) {
            Some(l) => xml_escape(l),
            None => format!("n{v}"),
        }
    };
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#
    )?;
    writeln!(out, r#"  <graph edgedefault="undirected">"#)?;
    for v in g.nodes() {
        writeln!(out, r#"    <node id="{}"/>"#, id(v))?;
    }
    for e in g.edges() {
        writeln!(
            out,
            r#"    <edge source="{}" target="{}"/>"#,
            id(e.u()),
            id(e.v())
        )?;
    }
    writeln!(out, "  </graph>")?;
    writeln!(out, "</graphml>")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Loads `.graphml`/`.xml` files as GraphML and anything else as an edge list.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("graphml") || ext.eq_ignore_ascii_case("xml") => {
            load_graphml(path)
        }
        _ => read_edge_list(path),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"<?xml version="1.0"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key id="w" for="edge" attr.name="weight" attr.type="double"/>
  <graph id="G" edgedefault="undirected">
    <node id="P53"/>
    <node id="MDM2"/>
    <edge source="P53" target="MDM2"><data key="w">0.9</data></edge>
  </graph>
</graphml>"#;

    #[test]
    fn minimal_graphml() {
        let g = parse_graphml(MINIMAL).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.label(0), Some("P53"));
        assert!(!g.is_weighted());
    }

    #[test]
    fn directed_graphml_rejected() {
        let directed = MINIMAL.replace("undirected", "directed");
        assert!(matches!(
            parse_graphml(&directed),
            Err(Error::DirectedGraph)
        ));
        let per_edge = MINIMAL.replace(r#"target="MDM2""#, r#"target="MDM2" directed="true""#);
        assert!(matches!(
            parse_graphml(&per_edge),
            Err(Error::DirectedGraph)
        ));
    }

    #[test]
    fn malformed_graphml_rejected() {
        assert!(matches!(
            parse_graphml("<graphml><graph>"),
            Err(Error::Xml(_))
        ));
        assert!(matches!(parse_graphml("<other/>"), Err(Error::GraphMl(_))));
        let no_target = MINIMAL.replace(r#"target="MDM2""#, "");
        assert!(matches!(parse_graphml(&no_target), Err(Error::GraphMl(_))));
    }

    #[test]
    fn undeclared_endpoint_is_added() {
        let g = parse_graphml(&MINIMAL.replace(r#"target="MDM2""#, r#"target="X""#)).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.label(2), Some("X"));
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_graphml("/nonexistent/combined_ppi.graphml"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn edge_list_with_header_and_comments() {
        let g = parse_edge_list("# torus fragment\nn=4\n0 1\n1 2 # inline\n\n").unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            parse_edge_list("0 1 2"),
            Err(Error::EdgeList { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 x"),
            Err(Error::EdgeList { .. })
        ));
        assert!(matches!(
            parse_edge_list("n=2\n0 5"),
            Err(Error::EdgeList { .. })
        ));
        assert!(matches!(parse_edge_list("3 3"), Err(Error::SelfLoop(3))));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2)], Some(5)).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = parse_edge_list(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
