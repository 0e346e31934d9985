//! Boundary conditions for a board.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::geometry::Edge;
use crate::error::{Error, Result};

/// Labeled pipe endpoints on one boundary edge, left to right on horizontal
/// edges. Boundary edges that are not listed carry no pipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointSpec {
    pub edge: Edge,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "EdgeLimitDoc")]
pub struct EdgeLimit {
    pub edges: Vec<Edge>,
    pub max: u8,
}

#[derive(Deserialize)]
struct EdgeLimitDoc {
    #[serde(default)]
    edge: Option<Edge>,
    #[serde(default)]
    edges: Vec<Edge>,
    max: u8,
}

impl From<EdgeLimitDoc> for EdgeLimit {
    fn from(d: EdgeLimitDoc) -> Self {
        let mut edges = d.edges;
        edges.extend(d.edge);
        Self { edges, max: d.max }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    #[serde(default)]
    pub endpoints: Vec<EndpointSpec>,
    /// `[source, sink]` label pairs that must be joined by one pipe.
    #[serde(default)]
    pub connections: Vec<[String; 2]>,
    /// Bounds on the total pipe count over a set of edges (internal or not).
    #[serde(default)]
    pub edge_limits: Vec<EdgeLimit>,
    /// `[sink, source]` pairs: a pipe leaving through the first endpoint
    /// re-enters the board at the second.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<[String; 2]>,
}

impl Rule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Rule(e.to_string()))
    }

    pub fn endpoint<S: Into<String>>(
        mut self,
        edge: Edge,
        labels: impl IntoIterator<Item = S>,
    ) -> Self {
        self.endpoints.push(EndpointSpec {
            edge,
            labels: labels.into_iter().map(Into::into).collect(),
        });
        self
    }

    pub fn connect(mut self, source: impl Into<String>, sink: impl Into<String>) -> Self {
        self.connections.push([source.into(), sink.into()]);
        self
    }

    pub fn link(mut self, sink: impl Into<String>, source: impl Into<String>) -> Self {
        self.links.push([sink.into(), source.into()]);
        self
    }

    pub fn limit(mut self, edges: impl IntoIterator<Item = Edge>, max: u8) -> Self {
        self.edge_limits.push(EdgeLimit {
            edges: edges.into_iter().collect(),
            max,
        });
        self
    }

    pub fn count_on(&self, e: &Edge) -> usize {
        self.endpoints
            .iter()
            .filter(|s| s.edge == *e)
            .map(|s| s.labels.len())
            .sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.endpoints
            .iter()
            .flat_map(|s| s.labels.iter().map(String::as_str))
    }

    pub(crate) fn check_labels(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for l in self.labels() {
            if !seen.insert(l) {
                return Err(Error::Rule(format!("label {l} used twice")));
            }
        }
        let mut edges = BTreeSet::new();
        for s in &self.endpoints {
            if !edges.insert(s.edge) {
                return Err(Error::Rule(format!("edge {} listed twice", s.edge)));
            }
        }
        for pair in self.connections.iter().chain(&self.links) {
            for l in pair {
                if !seen.contains(l.as_str()) {
                    return Err(Error::Rule(format!("unknown label {l}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json() {
        let s = r#"{"endpoints":[{"edge":{"q":0,"r":0,"dir":"h"},"labels":["p1","p2"]}],
                    "connections":[["p1","q1"]],
                    "edge_limits":[{"edge":{"q":0,"r":0,"dir":"h"},"max":1},
                                   {"edges":[{"q":0,"r":0,"dir":"a"}],"max":0}]}"#;
        let r = Rule::from_json(s).unwrap();
        assert_eq!(r.count_on(&Edge::h(0, 0)), 2);
        assert_eq!(r.edge_limits[0].edges, vec![Edge::h(0, 0)]);
        assert_eq!(r.edge_limits[1].max, 0);
        // q1 is not defined anywhere
        assert!(r.check_labels().is_err());
    }

    #[test]
    fn duplicate_labels() {
        let r = Rule::new()
            .endpoint(Edge::h(0, 0), ["a"])
            .endpoint(Edge::a(0, 0), ["a"]);
        assert!(r.check_labels().is_err());
    }
}
