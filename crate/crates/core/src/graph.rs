//! Metric scattering graphs: vertices with δ-coupling strengths, undirected
//! edges with integer length multipliers, and two semi-infinite leads.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex coupling must be finite, got {0}")]
    NonFiniteAlpha(f64),
    #[error("self-loop at vertex {0} is not supported")]
    SelfLoop(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("edge length multiplier must be positive")]
    ZeroMultiplier,
    #[error("unknown catalog graph {0:?}")]
    UnknownName(String),
    #[error("graph has parallel edges; adjacency matrix is only defined for simple graphs")]
    NotSimple,
    #[error("graph needs both an entrance and an exit lead")]
    MissingLead,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph document: {0}")]
    Document(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Number of incident edge ends plus attached leads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(pub u32);

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub label: String,
    /// δ-coupling strength in units where ħ²/2m = 1 and ℓ = 1.
    pub alpha: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    /// Edge length in units of ℓ.
    pub mult: u32,
}

impl Edge {
    /// The endpoint opposite to `w`.
    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScatteringGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    entrance: Option<VertexId>,
    exit: Option<VertexId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub connected: bool,
    pub lead_count: usize,
    pub degrees: Vec<(VertexId, Degree)>,
    pub all_degree_three: bool,
}

impl ValidationReport {
    /// Ready for the scattering solver: connected and exactly two leads.
    pub fn is_scattering_ready(&self) -> bool {
        self.connected && self.lead_count == 2
    }
}

impl ScatteringGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, alpha: f64) -> Result<VertexId, GraphError> {
        let label = format!("v{}", self.vertices.len());
        self.add_labeled_vertex(label, alpha)
    }

    pub fn add_labeled_vertex(
        &mut self,
        label: impl Into<String>,
        alpha: f64,
    ) -> Result<VertexId, GraphError> {
        if !alpha.is_finite() {
            return Err(GraphError::NonFiniteAlpha(alpha));
        }
        let label = label.into();
        if self.vertices.iter().any(|v| v.label == label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        self.vertices.push(Vertex { label, alpha });
        Ok(VertexId(self.vertices.len() - 1))
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, mult: u32) -> Result<EdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if mult == 0 {
            return Err(GraphError::ZeroMultiplier);
        }
        self.edges.push(Edge { u, v, mult });
        Ok(EdgeId(self.edges.len() - 1))
    }

    pub fn set_leads(&mut self, entrance: VertexId, exit: VertexId) -> Result<(), GraphError> {
        self.check_vertex(entrance)?;
        self.check_vertex(exit)?;
        self.entrance = Some(entrance);
        self.exit = Some(exit);
        Ok(())
    }

    pub fn set_entrance(&mut self, entrance: Option<VertexId>) -> Result<(), GraphError> {
        if let Some(v) = entrance {
            self.check_vertex(v)?;
        }
        self.entrance = entrance;
        Ok(())
    }

    pub fn set_exit(&mut self, exit: Option<VertexId>) -> Result<(), GraphError> {
        if let Some(v) = exit {
            self.check_vertex(v)?;
        }
        self.exit = exit;
        Ok(())
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.vertices.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: VertexId) -> Result<&Vertex, GraphError> {
        self.vertices.get(v.0).ok_or(GraphError::UnknownVertex(v))
    }

    pub fn find(&self, label: &str) -> Result<VertexId, GraphError> {
        self.vertices
            .iter()
            .position(|v| v.label == label)
            .map(VertexId)
            .ok_or_else(|| GraphError::UnknownLabel(label.to_string()))
    }

    pub fn entrance(&self) -> Option<VertexId> {
        self.entrance
    }

    pub fn exit(&self) -> Option<VertexId> {
        self.exit
    }

    /// Both leads, or [`GraphError::MissingLead`].
    pub fn leads(&self) -> Result<(VertexId, VertexId), GraphError> {
        match (self.entrance, self.exit) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(GraphError::MissingLead),
        }
    }

    pub fn degree(&self, v: VertexId) -> Result<Degree, GraphError> {
        self.check_vertex(v)?;
        let ends = self
            .edges
            .iter()
            .map(|e| (e.u == v) as u32 + (e.v == v) as u32)
            .sum::<u32>();
        let leads = (self.entrance == Some(v)) as u32 + (self.exit == Some(v)) as u32;
        Ok(Degree(ends + leads))
    }

    /// Degrees of every vertex, in vertex order, computed in one pass.
    pub fn degrees(&self) -> Vec<Degree> {
        let mut d = vec![0u32; self.vertices.len()];
        for e in &self.edges {
            d[e.u.0] += 1;
            d[e.v.0] += 1;
        }
        for v in [self.entrance, self.exit].into_iter().flatten() {
            d[v.0] += 1;
        }
        d.into_iter().map(Degree).collect()
    }

    /// True when every vertex carries the Neumann-Kirchhoff condition (α = 0).
    pub fn is_neumann_kirchhoff(&self) -> bool {
        self.vertices.iter().all(|v| v.alpha == 0.0)
    }

    /// 0/1 adjacency matrix of a simple graph (leads excluded).
    pub fn adjacency_matrix(&self) -> Result<Vec<Vec<u8>>, GraphError> {
        let n = self.vertices.len();
        let mut a = vec![vec![0u8; n]; n];
        for e in &self.edges {
            if a[e.u.0][e.v.0] != 0 {
                return Err(GraphError::NotSimple);
            }
            a[e.u.0][e.v.0] = 1;
            a[e.v.0][e.u.0] = 1;
        }
        Ok(a)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u.0].push(e.v.0);
            adj[e.v.0].push(e.u.0);
        }
        let start = self.entrance.map_or(0, |v| v.0);
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(w) = stack.pop() {
            for &x in &adj[w] {
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Report-only diagnostics; never fails.
    pub fn validate(&self) -> ValidationReport {
        let degrees: Vec<(VertexId, Degree)> = self
            .degrees()
            .into_iter()
            .enumerate()
            .map(|(i, d)| (VertexId(i), d))
            .collect();
        ValidationReport {
            connected: self.is_connected(),
            lead_count: self.entrance.is_some() as usize + self.exit.is_some() as usize,
            all_degree_three: degrees.iter().all(|(_, d)| d.0 == 3),
            degrees,
        }
    }

    /// Checks the preconditions of the scattering solver.
    pub fn require_scattering(&self) -> Result<(VertexId, VertexId), GraphError> {
        let leads = self.leads()?;
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(leads)
    }

    /// Same graph with entrance and exit exchanged.
    pub fn with_swapped_leads(&self) -> Self {
        let mut g = self.clone();
        std::mem::swap(&mut g.entrance, &mut g.exit);
        g
    }

    /// Appends all of `other`'s vertices (labels prefixed) and edges, without
    /// its leads. Returns the id offset applied to `other`'s vertices.
    pub(crate) fn absorb(&mut self, other: &ScatteringGraph, prefix: &str) -> usize {
        let offset = self.vertices.len();
        self.vertices.extend(other.vertices.iter().map(|v| Vertex {
            label: format!("{prefix}{}", v.label),
            alpha: v.alpha,
        }));
        self.edges.extend(other.edges.iter().map(|e| Edge {
            u: VertexId(e.u.0 + offset),
            v: VertexId(e.v.0 + offset),
            mult: e.mult,
        }));
        offset
    }

    /// Label lookup table.
    pub fn label_index(&self) -> HashMap<&str, VertexId> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.label.as_str(), VertexId(i)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_vertex_checks_alpha() {
        let mut g = ScatteringGraph::new();
        let v = g.add_vertex(0.0).unwrap();
        assert_eq!(g.vertex(v).unwrap().alpha, 0.0);
        let w = g.add_vertex(2.5).unwrap();
        assert_eq!(g.vertex(w).unwrap().alpha, 2.5);
        assert!(matches!(g.add_vertex(f64::NAN), Err(GraphError::NonFiniteAlpha(_))));
        assert!(matches!(g.add_vertex(f64::INFINITY), Err(GraphError::NonFiniteAlpha(_))));
    }

    #[test]
    fn edges_and_self_loops() {
        let mut g = ScatteringGraph::new();
        let a = g.add_vertex(0.0).unwrap();
        let b = g.add_vertex(0.0).unwrap();
        g.add_edge(a, b, 1).unwrap();
        g.add_edge(a, b, 1).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.add_edge(a, a, 1), Err(GraphError::SelfLoop(a)));
        assert_eq!(g.add_edge(a, VertexId(9), 1), Err(GraphError::UnknownVertex(VertexId(9))));
        assert_eq!(g.add_edge(a, b, 0), Err(GraphError::ZeroMultiplier));
        assert_eq!(g.adjacency_matrix(), Err(GraphError::NotSimple));
    }

    #[test]
    fn degree_counts_leads() {
        let mut g = ScatteringGraph::new();
        let lone = g.add_vertex(0.0).unwrap();
        assert_eq!(g.degree(lone), Ok(Degree(0)));
        g.set_leads(lone, lone).unwrap();
        assert_eq!(g.degree(lone), Ok(Degree(2)));
        let report = g.validate();
        assert!(report.connected);
        assert_eq!(report.lead_count, 2);
        assert_eq!(report.degrees, vec![(lone, Degree(2))]);
        assert!(!report.all_degree_three);
        assert_eq!(g.degree(VertexId(3)), Err(GraphError::UnknownVertex(VertexId(3))));
    }

    #[test]
    fn adjacency_matches_degree_on_simple_graphs() {
        let mut g = ScatteringGraph::new();
        let v: Vec<_> = (0..4).map(|_| g.add_vertex(0.0).unwrap()).collect();
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)] {
            g.add_edge(v[a], v[b], 1).unwrap();
        }
        let a = g.adjacency_matrix().unwrap();
        for (i, row) in a.iter().enumerate() {
            let sum: u32 = row.iter().map(|&x| x as u32).sum();
            assert_eq!(Degree(sum), g.degree(VertexId(i)).unwrap());
        }
    }

    #[test]
    fn disconnected_graph_rejected_by_solver_check() {
        let mut g = ScatteringGraph::new();
        let a = g.add_vertex(0.0).unwrap();
        let b = g.add_vertex(0.0).unwrap();
        assert_eq!(g.require_scattering(), Err(GraphError::MissingLead));
        g.set_leads(a, b).unwrap();
        assert!(!g.validate().connected);
        assert_eq!(g.require_scattering(), Err(GraphError::Disconnected));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut g = ScatteringGraph::new();
        g.add_labeled_vertex("L", 0.0).unwrap();
        assert_eq!(
            g.add_labeled_vertex("L", 0.0),
            Err(GraphError::DuplicateLabel("L".into()))
        );
        assert_eq!(g.find("L"), Ok(VertexId(0)));
    }
}
