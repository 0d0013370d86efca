//! Named diamond and hexagonal graphs.
//!
//! Every catalog graph is equilateral with Neumann-Kirchhoff vertices and
//! leads on `L` (entrance) and `R` (exit). The hexagon perimeter runs
//! `L-a-b-R-d-c-L`; the two degree-3 variants differ only in their chords.

use std::fmt;
use std::str::FromStr;

use crate::graph::{GraphError, ScatteringGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogGraph {
    /// Diamond: two paths of length 2.
    D,
    /// Hexagon: two paths of length 3.
    H,
    /// Diamond plus the chord `a-c`.
    Dtilde,
    /// Hexagon plus chords `a-c` and `b-d` (square arrangement).
    Q,
    /// Hexagon plus crossed chords `a-d` and `b-c`.
    X,
}

impl CatalogGraph {
    pub const ALL: [CatalogGraph; 5] = [Self::D, Self::H, Self::Dtilde, Self::Q, Self::X];

    pub fn name(self) -> &'static str {
        match self {
            Self::D => "D",
            Self::H => "H",
            Self::Dtilde => "Dtilde",
            Self::Q => "Q",
            Self::X => "X",
        }
    }

    pub fn build(self) -> ScatteringGraph {
        let (labels, edges): (&[&str], &[(&str, &str)]) = match self {
            Self::D => (&["L", "a", "c", "R"], &[("L", "a"), ("a", "R"), ("L", "c"), ("c", "R")]),
            Self::Dtilde => (
                &["L", "a", "c", "R"],
                &[("L", "a"), ("a", "R"), ("L", "c"), ("c", "R"), ("a", "c")],
            ),
            Self::H => (&["L", "a", "b", "R", "d", "c"], HEXAGON),
            Self::Q => (&["L", "a", "b", "R", "d", "c"], &HEX_Q),
            Self::X => (&["L", "a", "b", "R", "d", "c"], &HEX_X),
        };
        let mut g = ScatteringGraph::new();
        for label in labels {
            g.add_labeled_vertex(*label, 0.0).expect("catalog labels are unique");
        }
        let idx = g.label_index();
        let ids: Vec<_> = edges.iter().map(|(u, v)| (idx[u], idx[v])).collect();
        for (u, v) in ids {
            g.add_edge(u, v, 1).expect("catalog edges are valid");
        }
        let (l, r) = (g.find("L").unwrap(), g.find("R").unwrap());
        g.set_leads(l, r).unwrap();
        g
    }
}

const HEXAGON: &[(&str, &str)] = &[
    ("L", "a"),
    ("a", "b"),
    ("b", "R"),
    ("L", "c"),
    ("c", "d"),
    ("d", "R"),
];

const HEX_Q: [(&str, &str); 8] = [
    HEXAGON[0], HEXAGON[1], HEXAGON[2], HEXAGON[3], HEXAGON[4], HEXAGON[5],
    ("a", "c"),
    ("b", "d"),
];

const HEX_X: [(&str, &str); 8] = [
    HEXAGON[0], HEXAGON[1], HEXAGON[2], HEXAGON[3], HEXAGON[4], HEXAGON[5],
    ("a", "d"),
    ("b", "c"),
];

impl FromStr for CatalogGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| GraphError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for CatalogGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn build_named(name: &str) -> Result<ScatteringGraph, GraphError> {
    name.parse::<CatalogGraph>().map(CatalogGraph::build)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Degree;

    #[test]
    fn sizes() {
        let counts: Vec<_> = CatalogGraph::ALL
            .iter()
            .map(|g| {
                let g = g.build();
                (g.vertex_count(), g.edge_count())
            })
            .collect();
        assert_eq!(counts, vec![(4, 4), (6, 6), (4, 5), (6, 8), (6, 8)]);
    }

    #[test]
    fn diamond_degrees() {
        let d = build_named("D").unwrap();
        assert_eq!(d.degree(d.find("L").unwrap()), Ok(Degree(3)));
        assert_eq!(d.degree(d.find("R").unwrap()), Ok(Degree(3)));
        assert_eq!(d.degree(d.find("a").unwrap()), Ok(Degree(2)));
        assert_eq!(d.degree(d.find("c").unwrap()), Ok(Degree(2)));
        let report = d.validate();
        assert!(!report.all_degree_three);
        assert_eq!(report.degrees.iter().filter(|(_, d)| d.0 == 2).count(), 2);
    }

    #[test]
    fn degree_three_family() {
        for name in ["Dtilde", "Q", "X"] {
            let report = build_named(name).unwrap().validate();
            assert!(report.all_degree_three, "{name}");
        }
        for g in CatalogGraph::ALL {
            let report = g.build().validate();
            assert!(report.connected && report.lead_count == 2, "{g}");
        }
    }

    #[test]
    fn names_round_trip_and_unknown_rejected() {
        for g in CatalogGraph::ALL {
            assert_eq!(g.name().parse::<CatalogGraph>(), Ok(g));
        }
        assert_eq!(build_named("foo"), Err(GraphError::UnknownName("foo".into())));
        assert!(build_named("q").is_err());
    }
}
