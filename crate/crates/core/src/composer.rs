//! Series and parallel composition of two-lead graphs, and the circuit
//! expression language built on them.
//!
//! ```text
//! expr  := name | '@' path | 'S' '(' list ')' | 'P' '(' list ')'
//! list  := expr (','? expr)*
//! ```
//!
//! Names are catalog graphs; inside a list they may be juxtaposed, so
//! `S(QXQ)` reads the same as `S(Q,X,Q)`. Whitespace is ignored.

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::catalog::CatalogGraph;
use crate::document::read_graph;
use crate::graph::{GraphError, ScatteringGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComposeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("series composition needs at least 2 operands, got {0}")]
    SeriesArity(usize),
    #[error("parallel composition needs exactly 2 operands, got {0}")]
    ParallelArity(usize),
    #[error("circuit expression, at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("reading {path}: {message}")]
    Io { path: PathBuf, message: String },
}

/// Joins `a`'s exit to `b`'s entrance with a unit-length edge.
pub fn series(a: &ScatteringGraph, b: &ScatteringGraph) -> Result<ScatteringGraph, ComposeError> {
    let (a_in, a_out) = a.require_scattering()?;
    let (b_in, b_out) = b.require_scattering()?;
    let mut g = ScatteringGraph::new();
    let oa = g.absorb(a, "0.");
    let ob = g.absorb(b, "1.");
    let shift = |v: VertexId, o: usize| VertexId(v.0 + o);
    g.add_edge(shift(a_out, oa), shift(b_in, ob), 1)?;
    g.set_leads(shift(a_in, oa), shift(b_out, ob))?;
    Ok(g)
}

/// Places `a` and `b` side by side between two new hub vertices that carry
/// the leads.
pub fn parallel(a: &ScatteringGraph, b: &ScatteringGraph) -> Result<ScatteringGraph, ComposeError> {
    let (a_in, a_out) = a.require_scattering()?;
    let (b_in, b_out) = b.require_scattering()?;
    let mut g = ScatteringGraph::new();
    let oa = g.absorb(a, "0.");
    let ob = g.absorb(b, "1.");
    let hub_in = g.add_labeled_vertex("in", 0.0)?;
    let hub_out = g.add_labeled_vertex("out", 0.0)?;
    let shift = |v: VertexId, o: usize| VertexId(v.0 + o);
    g.add_edge(hub_in, shift(a_in, oa), 1)?;
    g.add_edge(hub_in, shift(b_in, ob), 1)?;
    g.add_edge(shift(a_out, oa), hub_out, 1)?;
    g.add_edge(shift(b_out, ob), hub_out, 1)?;
    g.set_leads(hub_in, hub_out)?;
    Ok(g)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Circuit {
    Named(CatalogGraph),
    File(PathBuf),
    Graph(Box<ScatteringGraph>),
    Series(Vec<Circuit>),
    Parallel(Vec<Circuit>),
}

impl Circuit {
    pub fn parse(text: &str) -> Result<Self, ComposeError> {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0, len: text.len() };
        let expr = p.expr()?;
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    pub fn series(children: Vec<Circuit>) -> Self {
        Self::Series(children)
    }

    pub fn parallel(a: Circuit, b: Circuit) -> Self {
        Self::Parallel(vec![a, b])
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: char, items: &[Circuit]| {
            write!(f, "{head}(")?;
            for (i, c) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")
        };
        match self {
            Self::Named(g) => write!(f, "{g}"),
            Self::File(p) => write!(f, "@{}", p.display()),
            Self::Graph(_) => f.write_str("<graph>"),
            Self::Series(items) => list(f, 'S', items),
            Self::Parallel(items) => list(f, 'P', items),
        }
    }
}

/// Flattens a circuit into one graph; series lists fold left to right.
pub fn build_circuit(expr: &Circuit) -> Result<ScatteringGraph, ComposeError> {
    match expr {
        Circuit::Named(g) => Ok(g.build()),
        Circuit::Graph(g) => Ok((**g).clone()),
        Circuit::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| ComposeError::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            Ok(read_graph(&text)?)
        }
        Circuit::Series(items) => {
            if items.len() < 2 {
                return Err(ComposeError::SeriesArity(items.len()));
            }
            let mut acc = build_circuit(&items[0])?;
            for item in &items[1..] {
                acc = series(&acc, &build_circuit(item)?)?;
            }
            Ok(acc)
        }
        Circuit::Parallel(items) => match items.as_slice() {
            [a, b] => parallel(&build_circuit(a)?, &build_circuit(b)?),
            _ => Err(ComposeError::ParallelArity(items.len())),
        },
    }
}

/// Parses and builds a graph source: a catalog name, a circuit expression
/// or an `@path` reference.
pub fn build_source(text: &str) -> Result<ScatteringGraph, ComposeError> {
    build_circuit(&Circuit::parse(text)?)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn error(&self, message: &str) -> ComposeError {
        let offset = self.chars.get(self.pos).map_or(self.len, |(o, _)| *o);
        ComposeError::Parse {
            offset,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|(_, c)| *c)
    }

    fn expr(&mut self) -> Result<Circuit, ComposeError> {
        match (self.peek(), self.peek_at(1)) {
            (None, _) => Err(self.error("expected a graph")),
            (Some(head @ ('S' | 'P')), Some('(')) => {
                self.pos += 2;
                let items = self.list()?;
                Ok(if head == 'S' {
                    Circuit::Series(items)
                } else {
                    Circuit::Parallel(items)
                })
            }
            (Some('@'), _) => {
                self.pos += 1;
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c != ',' && c != ')' && c != '(') {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.error("expected a path after '@'"));
                }
                let path: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
                Ok(Circuit::File(PathBuf::from(path)))
            }
            _ => self.name(),
        }
    }

    /// Longest catalog name at the cursor.
    fn name(&mut self) -> Result<Circuit, ComposeError> {
        let mut best: Option<CatalogGraph> = None;
        for g in CatalogGraph::ALL {
            let name = g.name();
            let matches = name
                .chars()
                .enumerate()
                .all(|(k, c)| self.peek_at(k) == Some(c));
            if matches && best.is_none_or(|b| b.name().len() < name.len()) {
                best = Some(g);
            }
        }
        match best {
            Some(g) => {
                self.pos += g.name().chars().count();
                Ok(Circuit::Named(g))
            }
            None => {
                let start = self.pos;
                let mut word = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_alphanumeric()) {
                    word.push(c);
                    self.pos += 1;
                }
                self.pos = start;
                if word.is_empty() {
                    Err(self.error("expected a graph"))
                } else {
                    Err(self.error(&format!("unknown graph name {word:?}")))
                }
            }
        }
    }

    fn list(&mut self) -> Result<Vec<Circuit>, ComposeError> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Some(')') => {
                    self.pos += 1;
                    return Ok(items);
                }
                Some(',') if !items.is_empty() => {
                    self.pos += 1;
                    if self.peek() == Some(')') {
                        return Err(self.error("expected a graph after ','"));
                    }
                }
                None => return Err(self.error("unclosed '('")),
                _ => {}
            }
            items.push(self.expr()?);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_named;

    fn counts(g: &ScatteringGraph) -> (usize, usize) {
        (g.vertex_count(), g.edge_count())
    }

    #[test]
    fn parse_forms_agree() {
        let a = Circuit::parse("S(Q,X,Q)").unwrap();
        let b = Circuit::parse(" S( Q X Q ) ").unwrap();
        let c = Circuit::parse("S(QXQ)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_string(), "S(Q,X,Q)");
        let nested = Circuit::parse("P(P(QX)P(XQ))").unwrap();
        assert_eq!(nested.to_string(), "P(P(Q,X),P(X,Q))");
        assert_eq!(
            Circuit::parse("S(DtildeD)").unwrap().to_string(),
            "S(Dtilde,D)"
        );
        assert_eq!(Circuit::parse("@a/b.json").unwrap(), Circuit::File("a/b.json".into()));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "S(", "S(Q,)", "Q)", "Y", "S(Q,Y)", "@", "q"] {
            assert!(
                matches!(Circuit::parse(bad), Err(ComposeError::Parse { .. })),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn arity() {
        assert_eq!(build_source("S()"), Err(ComposeError::SeriesArity(0)));
        assert_eq!(build_source("S(Q)"), Err(ComposeError::SeriesArity(1)));
        assert_eq!(build_source("P(Q,X,Q)"), Err(ComposeError::ParallelArity(3)));
    }

    #[test]
    fn sizes() {
        assert_eq!(counts(&build_source("S(QXQ)").unwrap()), (18, 26));
        assert_eq!(counts(&build_source("P(P(QX)P(XQ))").unwrap()), (30, 44));
        assert_eq!(counts(&build_source("P(D,D)").unwrap()), (10, 12));
        assert_eq!(counts(&build_source("S(P(QQ)P(XX)P(QQ))").unwrap()), (42, 62));
    }

    #[test]
    fn degree_three_preserved() {
        for src in ["S(Q,X)", "P(Q,X)", "P(P(QX)P(XQ))", "S(P(QQ)P(XX)P(QQ))"] {
            let report = build_source(src).unwrap().validate();
            assert!(report.all_degree_three, "{src}");
            assert!(report.is_scattering_ready(), "{src}");
        }
    }

    #[test]
    fn series_keeps_junction_degrees() {
        let d = build_named("D").unwrap();
        let s = series(&d, &d).unwrap();
        assert_eq!(s.degree(s.find("0.R").unwrap()).unwrap().0, 3);
        assert_eq!(s.degree(s.find("1.L").unwrap()).unwrap().0, 3);
        assert_eq!(s.entrance(), Some(s.find("0.L").unwrap()));
        assert_eq!(s.exit(), Some(s.find("1.R").unwrap()));
    }

    #[test]
    fn operands_need_leads() {
        let q = build_named("Q").unwrap();
        let mut bare = q.clone();
        bare.set_exit(None).unwrap();
        assert_eq!(series(&q, &bare), Err(ComposeError::Graph(GraphError::MissingLead)));
        assert_eq!(parallel(&bare, &q), Err(ComposeError::Graph(GraphError::MissingLead)));
        // operands are untouched
        assert_eq!(q, build_named("Q").unwrap());
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            build_source("@/nonexistent/graph.json"),
            Err(ComposeError::Io { .. })
        ));
    }
}
