//! Graph-definition documents (JSON).
//!
//! ```json
//! {
//!   "vertices": [{"id": "L", "alpha": 0.0}, ...],
//!   "edges": [{"u": "L", "v": "a", "mult": 1}, ...],
//!   "leads": {"entrance": "L", "exit": "R"}
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::graph::{GraphError, ScatteringGraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    pub leads: LeadsEntry,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: String,
    #[serde(default)]
    pub alpha: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub u: String,
    pub v: String,
    #[serde(default = "unit_mult")]
    pub mult: u32,
}

fn unit_mult() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeadsEntry {
    pub entrance: String,
    pub exit: String,
}

impl GraphDocument {
    pub fn from_graph(g: &ScatteringGraph) -> Result<Self, GraphError> {
        let (entrance, exit) = g.leads()?;
        let label = |v: crate::graph::VertexId| g.vertices()[v.0].label.clone();
        Ok(Self {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.label.clone(),
                    alpha: v.alpha,
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeEntry {
                    u: label(e.u),
                    v: label(e.v),
                    mult: e.mult,
                })
                .collect(),
            leads: LeadsEntry {
                entrance: label(entrance),
                exit: label(exit),
            },
        })
    }

    pub fn to_graph(&self) -> Result<ScatteringGraph, GraphError> {
        let mut g = ScatteringGraph::new();
        for v in &self.vertices {
            g.add_labeled_vertex(v.id.clone(), v.alpha)?;
        }
        for e in &self.edges {
            let (u, v) = (g.find(&e.u)?, g.find(&e.v)?);
            g.add_edge(u, v, e.mult)?;
        }
        let (a, b) = (g.find(&self.leads.entrance)?, g.find(&self.leads.exit)?);
        g.set_leads(a, b)?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Document(e.to_string()))
    }
}

pub fn read_graph(text: &str) -> Result<ScatteringGraph, GraphError> {
    GraphDocument::from_json(text)?.to_graph()
}

pub fn write_graph(g: &ScatteringGraph) -> Result<String, GraphError> {
    Ok(GraphDocument::from_graph(g)?.to_json())
}
