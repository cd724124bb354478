//! Import of a small DOT subset.
//!
//! Supported: a single `digraph` (optionally named) holding node statements
//! `n [start=true, end=true];` and edge statements `u -> v [id="a", label="x/y"];`.
//! Statement separators are optional. `//`, `#` and `/* */` comments are
//! skipped. Anything else is a schema error.

use std::collections::BTreeSet;

use super::{Edge, FsmGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Arrow,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Sep,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                i += 2;
                while i + 1 < chars.len() && !(chars[i] == '*' && chars[i + 1] == '/') {
                    i += 1;
                }
                if i + 1 >= chars.len() {
                    return Err(Error::Schema("unterminated comment".into()));
                }
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Tok::Arrow);
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                return Err(Error::Schema("undirected edges (`--`) are not supported".into()));
            }
            '{' => {
                out.push(Tok::LBrace);
                i += 1;
            }
            '}' => {
                out.push(Tok::RBrace);
                i += 1;
            }
            '[' => {
                out.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Tok::RBracket);
                i += 1;
            }
            '=' => {
                out.push(Tok::Eq);
                i += 1;
            }
            ';' | ',' => {
                out.push(Tok::Sep);
                i += 1;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(Error::Schema("unterminated string".into())),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Tok::Ident(s));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let begin = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[begin..i].iter().collect()));
            }
            other => return Err(Error::Schema(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(Error::Schema(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            other => Err(Error::Schema(format!("expected identifier, found {other:?}"))),
        }
    }

    fn attrs(&mut self) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        if self.peek() != Some(&Tok::LBracket) {
            return Ok(out);
        }
        self.pos += 1;
        loop {
            match self.peek() {
                Some(Tok::RBracket) => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(Tok::Sep) => self.pos += 1,
                _ => {
                    let key = self.ident()?;
                    self.expect(Tok::Eq)?;
                    let value = self.ident()?;
                    out.push((key, value));
                }
            }
        }
    }
}

fn truthy(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        other => Err(Error::Schema(format!(
            "attribute `{key}` expects true/false, got `{other}`"
        ))),
    }
}

pub fn parse_graph_dot(text: &str) -> Result<FsmGraph> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    match p.ident()?.as_str() {
        "digraph" => {}
        other => return Err(Error::Schema(format!("expected `digraph`, found `{other}`"))),
    }
    if let Some(Tok::Ident(_)) = p.peek() {
        p.pos += 1;
    }
    p.expect(Tok::LBrace)?;

    let mut vertices = BTreeSet::new();
    let mut starts = Vec::new();
    let mut ends = BTreeSet::new();
    let mut edges = Vec::new();

    loop {
        match p.peek() {
            Some(Tok::RBrace) => {
                p.pos += 1;
                break;
            }
            Some(Tok::Sep) => p.pos += 1,
            None => return Err(Error::Schema("missing closing `}`".into())),
            _ => {
                let first = p.ident()?;
                if p.peek() == Some(&Tok::Arrow) {
                    p.pos += 1;
                    let second = p.ident()?;
                    if p.peek() == Some(&Tok::Arrow) {
                        return Err(Error::Schema("edge chains are not supported".into()));
                    }
                    let attrs = p.attrs()?;
                    let mut id = None;
                    let mut label = None;
                    for (k, v) in attrs {
                        match k.as_str() {
                            "id" => id = Some(v),
                            "label" => label = Some(v),
                            _ => {}
                        }
                    }
                    let id =
                        id.ok_or_else(|| Error::Schema(format!("edge {first} -> {second} lacks an `id` attribute")))?;
                    let mut edge = Edge::new(id, first.clone(), second.clone());
                    if let Some(label) = label {
                        let (input, output) = label
                            .split_once('/')
                            .ok_or_else(|| Error::Schema(format!("label `{label}` is not of the form input/output")))?;
                        edge = edge.with_label(input, output);
                    }
                    vertices.insert(first);
                    vertices.insert(second);
                    edges.push(edge);
                } else if matches!(first.as_str(), "graph" | "node" | "edge") {
                    // Default-attribute statements carry no model information.
                    p.attrs()?;
                } else {
                    for (k, v) in p.attrs()? {
                        match k.as_str() {
                            "start" if truthy(&k, &v)? => starts.push(first.clone()),
                            "end" if truthy(&k, &v)? => {
                                ends.insert(first.clone());
                            }
                            _ => {}
                        }
                    }
                    vertices.insert(first);
                }
            }
        }
    }
    if p.peek().is_some() {
        return Err(Error::Schema("trailing content after graph body".into()));
    }
    let start = match starts.as_slice() {
        [s] => s.clone(),
        [] => return Err(Error::Model("no vertex is annotated start=true".into())),
        _ => return Err(Error::Model("more than one vertex is annotated start=true".into())),
    };
    FsmGraph::new(vertices, &start, ends, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::parse_graph_json;

    #[test]
    fn smallest_digraph_matches_json() {
        let dot = parse_graph_dot("digraph { 1 [start=true]; 2 [end=true]; 1 -> 2 [id=a]; }").unwrap();
        let json = parse_graph_json(
            r#"{"vertices":["1","2"],"start":"1","ends":["2"],"edges":[{"id":"a","from":"1","to":"2"}]}"#,
        )
        .unwrap();
        assert_eq!(dot, json);
    }

    #[test]
    fn label_splits_on_first_slash() {
        let g = parse_graph_dot(r#"digraph m { s [start=true]; s -> t [id="a", label="x/y/z"]; }"#).unwrap();
        let e = g.edge(g.edge_id("a").unwrap());
        let l = e.label.as_ref().unwrap();
        assert_eq!((l.input.as_str(), l.output.as_str()), ("x", "y/z"));
    }

    #[test]
    fn diamond_dot_equals_fixture() {
        let text = r#"
            // parallel edges between 1 and 2, and between 2 and 3
            digraph diamond {
                1 [start=true];
                3 [end=true];
                1 -> 2 [id="a"];
                1 -> 2 [id="c"];
                2 -> 3 [id="b"];
                2 -> 3 [id="d"];
            }"#;
        assert_eq!(parse_graph_dot(text).unwrap(), fixtures::diamond());
    }

    #[test]
    fn missing_start_is_model_error() {
        let err = parse_graph_dot("digraph { 1 -> 2 [id=a]; }").unwrap_err();
        assert!(matches!(err, Error::Model(_)));
    }

    #[test]
    fn malformed_inputs_are_schema_errors() {
        for text in [
            "graph { 1 -- 2 }",
            "digraph { 1 [start=true]; 1 -> 2; }",
            "digraph { 1 [start=maybe]; }",
            "digraph { 1 [start=true]; 1 -> 2 -> 3 [id=a]; }",
            "digraph { 1 [start=true];",
        ] {
            assert!(matches!(parse_graph_dot(text), Err(Error::Schema(_))), "{text}");
        }
    }
}
