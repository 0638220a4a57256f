//! JSON formats for graphs, color weights and replacement specs.
//!
//! A graph file looks like
//! `{"vertices": 3, "edges": [{"id": "e1", "u": 0, "v": 1, "sign": "+"}]}`
//! where every edge carries exactly one of `sign`, `color` or `label`, and all
//! edges of a file carry the same one.

use serde_json::{json, Map, Value};

use crate::colored_tutte::ColorWeights;
use crate::error::{Error, Result};
use crate::multigraph::{Color, Edge, Graph, Label, LabeledGraph, Sign, SignedGraph, ColoredGraph};
use crate::polyring::MultiPoly;
use crate::replacement::{Directive, ReplacementKind, ReplacementSpec};

/// A parsed graph file, tagged by its edge attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Signed(SignedGraph),
    Colored(ColoredGraph),
    Labeled(LabeledGraph),
}

impl GraphFile {
    pub fn kind(&self) -> &'static str {
        match self {
            GraphFile::Signed(_) => "sign",
            GraphFile::Colored(_) => "color",
            GraphFile::Labeled(_) => "label",
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GraphFile::Signed(g) => g.vertex_count(),
            GraphFile::Colored(g) => g.vertex_count(),
            GraphFile::Labeled(g) => g.vertex_count(),
        }
    }

    fn expect_kind(self, want: &str) -> Result<Self> {
        if self.kind() == want {
            Ok(self)
        } else {
            Err(Error::invalid(
                "edges",
                format!("expected `{want}` attributes, found `{}`", self.kind()),
            ))
        }
    }

    pub fn into_signed(self) -> Result<SignedGraph> {
        match self.expect_kind("sign")? {
            GraphFile::Signed(g) => Ok(g),
            _ => unreachable!(),
        }
    }

    pub fn into_colored(self) -> Result<ColoredGraph> {
        match self.expect_kind("color")? {
            GraphFile::Colored(g) => Ok(g),
            _ => unreachable!(),
        }
    }

    pub fn into_labeled(self) -> Result<LabeledGraph> {
        match self.expect_kind("label")? {
            GraphFile::Labeled(g) => Ok(g),
            _ => unreachable!(),
        }
    }

    /// The underlying graph with the attribute erased, for flow and tension.
    pub fn shape(&self) -> Graph<()> {
        match self {
            GraphFile::Signed(g) => g.map_attr(|_| ()),
            GraphFile::Colored(g) => g.map_attr(|_| ()),
            GraphFile::Labeled(g) => g.map_attr(|_| ()),
        }
    }
}

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::invalid(what, format!("malformed JSON: {e}")))
}

fn object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::invalid(field, "expected an object"))
}

fn index(v: Option<&Value>, field: &str) -> Result<usize> {
    let v = v.ok_or_else(|| Error::invalid(field, "missing"))?;
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::invalid(field, "expected a nonnegative integer"))
}

fn string<'a>(v: Option<&'a Value>, field: &str) -> Result<&'a str> {
    let v = v.ok_or_else(|| Error::invalid(field, "missing"))?;
    v.as_str().ok_or_else(|| Error::invalid(field, "expected a string"))
}

fn parse_sign(v: &Value, field: &str) -> Result<Sign> {
    match v {
        Value::String(s) if s == "+" => Ok(Sign::Plus),
        Value::String(s) if s == "-" => Ok(Sign::Minus),
        Value::Number(n) if n.as_i64() == Some(1) => Ok(Sign::Plus),
        Value::Number(n) if n.as_i64() == Some(-1) => Ok(Sign::Minus),
        _ => Err(Error::invalid(field, "expected \"+\", \"-\", 1 or -1")),
    }
}

/// Reads a graph file.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let root = parse_json(text, "graph")?;
    let obj = object(&root, "graph")?;
    let vertices = index(obj.get("vertices"), "vertices")?;
    let edges = obj
        .get("edges")
        .ok_or_else(|| Error::invalid("edges", "missing"))?
        .as_array()
        .ok_or_else(|| Error::invalid("edges", "expected an array"))?;

    let mut kind: Option<&str> = None;
    let mut signed = Vec::new();
    let mut colored = Vec::new();
    let mut labeled = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        let at = format!("edges[{i}]");
        let eo = object(e, &at)?;
        let id = string(eo.get("id"), &format!("{at}.id"))?.to_string();
        let u = index(eo.get("u"), &format!("{at}.u"))?;
        let v = index(eo.get("v"), &format!("{at}.v"))?;
        let present: Vec<&str> = ["sign", "color", "label"]
            .into_iter()
            .filter(|k| eo.contains_key(*k))
            .collect();
        let this = match present.as_slice() {
            [one] => *one,
            [] => return Err(Error::invalid(&at, "needs one of `sign`, `color`, `label`")),
            _ => return Err(Error::invalid(&at, "has more than one of `sign`, `color`, `label`")),
        };
        if let Some(k) = kind {
            if k != this {
                return Err(Error::invalid(
                    format!("{at}.{this}"),
                    format!("earlier edges use `{k}`; a file uses one attribute kind"),
                ));
            }
        }
        kind = Some(this);
        let field = format!("{at}.{this}");
        match this {
            "sign" => signed.push(Edge::new(id, u, v, parse_sign(&eo[this], &field)?)),
            "color" => colored.push(Edge::new(id, u, v, Color(string(eo.get(this), &field)?.to_string()))),
            _ => labeled.push(Edge::new(id, u, v, Label(string(eo.get(this), &field)?.to_string()))),
        }
    }
    Ok(match kind.unwrap_or("sign") {
        "sign" => GraphFile::Signed(Graph::new(vertices, signed)?),
        "color" => GraphFile::Colored(Graph::new(vertices, colored)?),
        _ => GraphFile::Labeled(Graph::new(vertices, labeled)?),
    })
}

/// Writes a graph file; `attr` supplies each edge's attribute key and value.
pub fn graph_to_json<T: Clone>(g: &Graph<T>, attr: impl Fn(&T) -> (&'static str, Value)) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            let (k, v) = attr(&e.attr);
            json!({"id": e.id, "u": e.u, "v": e.v, k: v})
        })
        .collect();
    json!({"vertices": g.vertex_count(), "edges": edges})
}

pub fn signed_graph_to_json(g: &SignedGraph) -> Value {
    graph_to_json(g, |s| ("sign", Value::from(s.as_str())))
}

/// Reads `{"c": {"x": "<poly>", "y": "<poly>"}, ...}`.
pub fn parse_color_weights(text: &str) -> Result<ColorWeights> {
    let root = parse_json(text, "colors")?;
    let mut cw = ColorWeights::new();
    for (color, entry) in object(&root, "colors")? {
        let eo = object(entry, color)?;
        let poly = |k: &str| -> Result<MultiPoly> {
            let field = format!("{color}.{k}");
            let s = string(eo.get(k), &field)?;
            MultiPoly::parse(s).map_err(|e| Error::invalid(&field, e.to_string()))
        };
        cw.insert(color.clone(), poly("x")?, poly("y")?);
    }
    Ok(cw)
}

/// Reads `{"e1": {"kind": "chain", "n": 2}, ...}`.
pub fn parse_spec(text: &str) -> Result<ReplacementSpec> {
    let root = parse_json(text, "spec")?;
    let mut spec = ReplacementSpec::new();
    for (edge, entry) in object(&root, "spec")? {
        let eo = object(entry, edge)?;
        let kind = match string(eo.get("kind"), &format!("{edge}.kind"))? {
            "chain" => ReplacementKind::Chain,
            "sheaf" => ReplacementKind::Sheaf,
            other => {
                return Err(Error::invalid(
                    format!("{edge}.kind"),
                    format!("expected \"chain\" or \"sheaf\", got \"{other}\""),
                ))
            }
        };
        let field = format!("{edge}.n");
        let n = eo
            .get("n")
            .ok_or_else(|| Error::invalid(&field, "missing"))?
            .as_i64()
            .and_then(|n| i32::try_from(n).ok())
            .ok_or_else(|| Error::invalid(&field, "expected an integer"))?;
        if n == 0 {
            return Err(Error::invalid(field, "replacement count must be nonzero"));
        }
        spec.insert(edge.clone(), Directive { kind, n })?;
    }
    Ok(spec)
}

pub fn spec_to_json(spec: &ReplacementSpec) -> Value {
    let map: Map<String, Value> = spec
        .iter()
        .map(|(id, d)| (id.clone(), json!({"kind": d.kind.as_str(), "n": d.n})))
        .collect();
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_round_trip() {
        let text = r#"{"vertices": 2, "edges": [
            {"id": "a", "u": 0, "v": 1, "sign": "+"},
            {"id": "b", "u": 1, "v": 1, "sign": -1}]}"#;
        let g = parse_graph(text).unwrap().into_signed().unwrap();
        assert_eq!(g.edge("b").unwrap().attr, Sign::Minus);
        let again = parse_graph(&signed_graph_to_json(&g).to_string()).unwrap();
        assert_eq!(again, GraphFile::Signed(g));
    }

    #[test]
    fn colored_and_labeled() {
        let c = parse_graph(r#"{"vertices": 1, "edges": [{"id": "e", "u": 0, "v": 0, "color": "red"}]}"#).unwrap();
        assert_eq!(c.kind(), "color");
        assert!(c.clone().into_signed().is_err());
        let l = parse_graph(r#"{"vertices": 1, "edges": [{"id": "e", "u": 0, "v": 0, "label": "a"}]}"#).unwrap();
        assert_eq!(l.into_labeled().unwrap().edge("e").unwrap().attr, Label::from("a"));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let field = |text: &str| match parse_graph(text).unwrap_err() {
            Error::Invalid { field, .. } => field,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(field("[1]"), "graph");
        assert_eq!(field(r#"{"edges": []}"#), "vertices");
        assert_eq!(field(r#"{"vertices": 2, "edges": [{"id": "a", "u": 0, "v": 1, "sign": "x"}]}"#), "edges[0].sign");
        assert_eq!(
            field(r#"{"vertices": 2, "edges": [{"id": "a", "u": 0, "v": 1, "sign": "+"}, {"id": "b", "u": 0, "v": 1, "color": "r"}]}"#),
            "edges[1].color"
        );
        assert_eq!(field(r#"{"vertices": 2, "edges": [{"id": "a", "u": -1, "v": 1, "sign": "+"}]}"#), "edges[0].u");
        assert!(matches!(
            parse_graph(r#"{"vertices": 1, "edges": [{"id": "a", "u": 0, "v": 3, "sign": "+"}]}"#),
            Err(Error::EndpointOutOfRange { .. })
        ));
    }

    #[test]
    fn weights_and_specs() {
        let cw = parse_color_weights(r#"{"r": {"x": "A", "y": "B^2 - 1"}}"#).unwrap();
        assert_eq!(cw.get("r").unwrap().1, MultiPoly::parse("B^2 - 1").unwrap());
        assert!(matches!(
            parse_color_weights(r#"{"r": {"x": "A +"}}"#),
            Err(Error::Invalid { field, .. }) if field == "r.x"
        ));
        let spec = parse_spec(r#"{"e1": {"kind": "chain", "n": 2}, "e2": {"kind": "sheaf", "n": -3}}"#).unwrap();
        assert_eq!(spec.get("e2"), Some(Directive::sheaf(-3)));
        assert_eq!(parse_spec(&spec_to_json(&spec).to_string()).unwrap(), spec);
        assert!(matches!(
            parse_spec(r#"{"e1": {"kind": "chain", "n": 0}}"#),
            Err(Error::Invalid { field, .. }) if field == "e1.n"
        ));
        assert!(matches!(
            parse_spec(r#"{"e1": {"kind": "braid", "n": 1}}"#),
            Err(Error::Invalid { field, .. }) if field == "e1.kind"
        ));
    }
}
