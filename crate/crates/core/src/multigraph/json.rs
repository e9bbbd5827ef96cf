use super::{EdgeId, Multigraph, Orientation, VertexId};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexEntry {
    Plain(u64),
    Labeled { id: u64, label: String },
}

impl VertexEntry {
    fn id(&self) -> u64 {
        match self {
            VertexEntry::Plain(id) | VertexEntry::Labeled { id, .. } => *id,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub id: u64,
    pub u: u64,
    pub v: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcEntry {
    pub id: u64,
    pub tail: u64,
    pub head: u64,
}

/// On-disk graph format shared by every subcommand.
///
/// `edges` are undirected; `directed_edges` are edges of the same graph carrying a direction.
/// A document without `directed_edges` is a plain multigraph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub directed_edges: Vec<ArcEntry>,
}

impl GraphDocument {
    pub fn from_graph(g: &Multigraph) -> Self {
        let vertices = g
            .vertices()
            .map(|v| match g.label(v) {
                Some(l) => VertexEntry::Labeled {
                    id: v.0,
                    label: l.to_owned(),
                },
                None => VertexEntry::Plain(v.0),
            })
            .collect();
        let edges = g
            .edges()
            .map(|(e, u, v)| EdgeEntry {
                id: e.0,
                u: u.0,
                v: v.0,
            })
            .collect();
        Self {
            vertices,
            edges,
            directed_edges: Vec::new(),
        }
    }

    pub fn from_orientation(d: &Orientation) -> Self {
        let mut doc = Self::from_graph(d.base());
        doc.edges.retain(|e| d.arc(EdgeId(e.id)).is_none());
        doc.directed_edges = d
            .arcs()
            .map(|(e, a)| ArcEntry {
                id: e.0,
                tail: a.tail.0,
                head: a.head.0,
            })
            .collect();
        doc
    }

    /// Underlying multigraph, directed edges included as ordinary edges.
    pub fn to_graph(&self) -> Result<Multigraph> {
        let mut g = Multigraph::new();
        for entry in &self.vertices {
            let label = match entry {
                VertexEntry::Labeled { label, .. } => Some(label.clone()),
                VertexEntry::Plain(_) => None,
            };
            g.insert_vertex(VertexId(entry.id()), label)?;
        }
        for e in &self.edges {
            g.insert_edge(EdgeId(e.id), VertexId(e.u), VertexId(e.v))?;
        }
        for a in &self.directed_edges {
            g.insert_edge(EdgeId(a.id), VertexId(a.tail), VertexId(a.head))?;
        }
        Ok(g)
    }

    pub fn to_orientation(&self) -> Result<Orientation> {
        let mut d = Orientation::new(self.to_graph()?);
        for a in &self.directed_edges {
            d.assign(EdgeId(a.id), VertexId(a.tail), VertexId(a.head))?;
        }
        Ok(d)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
