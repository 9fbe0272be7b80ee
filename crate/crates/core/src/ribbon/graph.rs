use std::collections::{HashMap, VecDeque};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Index of a vertex, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

/// Index of an undirected edge, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize);

/// A directed half of an edge.
///
/// Edge `e` owns darts `2e` (from its first end to its second) and `2e + 1`
/// (the opposite direction), so `reverse` is `d ^ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

impl Edge {
    pub fn index(self) -> usize {
        self.0
    }

    /// The dart leaving the edge's first end.
    pub fn forward(self) -> Dart {
        Dart(2 * self.0)
    }
}

impl Dart {
    pub fn index(self) -> usize {
        self.0
    }

    pub fn reverse(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    pub fn edge(self) -> Edge {
        Edge(self.0 / 2)
    }
}

/// A connected loop-free multigraph together with a cyclic order of the
/// darts leaving each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    vertex_ids: Vec<String>,
    vertex_index: HashMap<String, Vertex>,
    edge_ids: Vec<String>,
    edge_index: HashMap<String, Edge>,
    ends: Vec<[Vertex; 2]>,
    next: Vec<Dart>,
    rotation_lists: Vec<Vec<Dart>>,
    // position of each dart inside its tail's rotation list
    slot: Vec<usize>,
}

/// Wire form of a ribbon graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    pub rotation: IndexMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
}

impl RibbonGraph {
    /// Validates and builds a ribbon graph. `rotation` lists, for each
    /// vertex, the ids of its incident edges in cyclic order.
    pub fn build<V, W, E, R>(vertices: &[V], edges: &[(E, W, W)], rotation: &[(W, Vec<R>)]) -> Result<Self, GraphError>
    where
        V: AsRef<str>,
        W: AsRef<str>,
        E: AsRef<str>,
        R: AsRef<str>,
    {
        let mut vertex_ids = Vec::with_capacity(vertices.len());
        let mut vertex_index = HashMap::new();
        for v in vertices {
            let id = v.as_ref();
            if id.is_empty() {
                return Err(GraphError::EmptyId);
            }
            if vertex_index.insert(id.to_string(), Vertex(vertex_ids.len())).is_some() {
                return Err(GraphError::DuplicateVertex(id.to_string()));
            }
            vertex_ids.push(id.to_string());
        }
        if vertex_ids.is_empty() {
            return Err(GraphError::Empty);
        }

        let lookup = |id: &str| -> Result<Vertex, GraphError> {
            vertex_index
                .get(id)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
        };

        let mut edge_ids = Vec::with_capacity(edges.len());
        let mut edge_index = HashMap::new();
        let mut ends = Vec::with_capacity(edges.len());
        for (id, a, b) in edges {
            let id = id.as_ref();
            if id.is_empty() {
                return Err(GraphError::EmptyId);
            }
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if a == b {
                return Err(GraphError::SelfLoop(id.to_string()));
            }
            if edge_index.insert(id.to_string(), Edge(edge_ids.len())).is_some() {
                return Err(GraphError::DuplicateEdge(id.to_string()));
            }
            edge_ids.push(id.to_string());
            ends.push([a, b]);
        }

        let n_darts = 2 * ends.len();
        let mut rotation_lists: Vec<Option<Vec<Dart>>> = vec![None; vertex_ids.len()];
        let mut seen = vec![false; n_darts];
        for (v, list) in rotation {
            let vertex = lookup(v.as_ref())?;
            if rotation_lists[vertex.0].is_some() {
                return Err(GraphError::RotationMismatch(format!(
                    "vertex {} has two rotation lists",
                    v.as_ref()
                )));
            }
            let mut darts = Vec::with_capacity(list.len());
            for e in list {
                let e_id = e.as_ref();
                let edge = *edge_index
                    .get(e_id)
                    .ok_or_else(|| GraphError::UnknownEdge(e_id.to_string()))?;
                let [a, b] = ends[edge.0];
                let dart = if a == vertex {
                    edge.forward()
                } else if b == vertex {
                    edge.forward().reverse()
                } else {
                    return Err(GraphError::RotationMismatch(format!(
                        "edge {} is not incident to {}",
                        e_id,
                        v.as_ref()
                    )));
                };
                if std::mem::replace(&mut seen[dart.0], true) {
                    return Err(GraphError::RotationMismatch(format!(
                        "edge {} listed twice at {}",
                        e_id,
                        v.as_ref()
                    )));
                }
                darts.push(dart);
            }
            rotation_lists[vertex.0] = Some(darts);
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            let d = Dart(d);
            let tail = if d.0.is_multiple_of(2) { ends[d.edge().0][0] } else { ends[d.edge().0][1] };
            return Err(GraphError::RotationMismatch(format!(
                "edge {} missing from the rotation at {}",
                edge_ids[d.edge().0],
                vertex_ids[tail.0]
            )));
        }
        let rotation_lists: Vec<Vec<Dart>> = rotation_lists.into_iter().map(Option::unwrap_or_default).collect();
        for (v, list) in rotation_lists.iter().enumerate() {
            if list.is_empty() && vertex_ids.len() > 1 {
                return Err(GraphError::Disconnected(vertex_ids[v].clone()));
            }
        }

        let mut next = vec![Dart(0); n_darts];
        let mut slot = vec![0; n_darts];
        for list in &rotation_lists {
            for (i, &d) in list.iter().enumerate() {
                next[d.0] = list[(i + 1) % list.len()];
                slot[d.0] = i;
            }
        }

        let graph = RibbonGraph {
            vertex_ids,
            vertex_index,
            edge_ids,
            edge_index,
            ends,
            next,
            rotation_lists,
            slot,
        };
        if graph.num_vertices() == 1 {
            // a lone vertex has degree 0
            return Err(GraphError::Disconnected(graph.vertex_ids[0].clone()));
        }
        if let Some(v) = graph.unreachable_vertex() {
            return Err(GraphError::Disconnected(graph.vertex_ids[v.0].clone()));
        }
        Ok(graph)
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let edges: Vec<(&str, &str, &str)> = json
            .edges
            .iter()
            .map(|e| (e.id.as_str(), e.ends[0].as_str(), e.ends[1].as_str()))
            .collect();
        let rotation: Vec<(&str, Vec<&str>)> = json
            .rotation
            .iter()
            .map(|(v, list)| (v.as_str(), list.iter().map(String::as_str).collect()))
            .collect();
        Self::build(&json.vertices, &edges, &rotation)
    }

    pub fn parse_json(text: &str) -> Result<Self, GraphError> {
        let json: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_json(&json)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_ids.clone(),
            edges: self
                .edges()
                .map(|e| EdgeJson {
                    id: self.edge_id(e).to_string(),
                    ends: self.ends(e).map(|v| self.vertex_id(v).to_string()),
                })
                .collect(),
            rotation: self
                .vertices()
                .map(|v| {
                    let list = self.rotation_at(v).iter().map(|&d| self.edge_id(d.edge()).to_string()).collect();
                    (self.vertex_id(v).to_string(), list)
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph json is always serializable")
    }

    fn unreachable_vertex(&self) -> Option<Vertex> {
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = VecDeque::from([Vertex(0)]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &d in self.rotation_at(v) {
                let w = self.head(d);
                if !seen[w.0] {
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|s| !s).map(Vertex)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn num_darts(&self) -> usize {
        2 * self.ends.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = Vertex> + ExactSizeIterator + Clone {
        (0..self.num_vertices()).map(Vertex)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = Edge> + ExactSizeIterator + Clone {
        (0..self.num_edges()).map(Edge)
    }

    pub fn darts(&self) -> impl DoubleEndedIterator<Item = Dart> + ExactSizeIterator + Clone {
        (0..self.num_darts()).map(Dart)
    }

    pub fn tail(&self, d: Dart) -> Vertex {
        self.ends[d.0 / 2][d.0 & 1]
    }

    pub fn head(&self, d: Dart) -> Vertex {
        self.tail(d.reverse())
    }

    pub fn ends(&self, e: Edge) -> [Vertex; 2] {
        self.ends[e.0]
    }

    /// Next dart after `d` in the cyclic order at its tail.
    pub fn rotate(&self, d: Dart) -> Dart {
        self.next[d.0]
    }

    pub fn rotation_at(&self, v: Vertex) -> &[Dart] {
        &self.rotation_lists[v.0]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation_lists[v.0].len()
    }

    /// Number of rotation steps needed to go from `from` to `to` at a common tail.
    pub fn rotation_distance(&self, from: Dart, to: Dart) -> usize {
        debug_assert_eq!(self.tail(from), self.tail(to));
        let deg = self.degree(self.tail(from));
        (self.slot[to.0] + deg - self.slot[from.0]) % deg
    }

    pub fn vertex_id(&self, v: Vertex) -> &str {
        &self.vertex_ids[v.0]
    }

    pub fn edge_id(&self, e: Edge) -> &str {
        &self.edge_ids[e.0]
    }

    pub fn vertex(&self, id: &str) -> Option<Vertex> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge(&self, id: &str) -> Option<Edge> {
        self.edge_index.get(id).copied()
    }

    /// The dart of `e` leaving `tail`, if `tail` is an end of `e`.
    pub fn dart_from(&self, e: Edge, tail: Vertex) -> Option<Dart> {
        let [a, b] = self.ends[e.0];
        if a == tail {
            Some(e.forward())
        } else if b == tail {
            Some(e.forward().reverse())
        } else {
            None
        }
    }

    /// Human-readable dart name: `<edge>@<tail>`.
    pub fn dart_name(&self, d: Dart) -> String {
        format!("{}@{}", self.edge_id(d.edge()), self.vertex_id(self.tail(d)))
    }

    /// Parses `<edge>@<tail>`.
    pub fn parse_dart(&self, name: &str) -> Result<Dart, GraphError> {
        let (e, v) = name
            .rsplit_once('@')
            .ok_or_else(|| GraphError::BadDart(name.to_string()))?;
        let edge = self.edge(e).ok_or_else(|| GraphError::UnknownEdge(e.to_string()))?;
        let tail = self.vertex(v).ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
        self.dart_from(edge, tail).ok_or_else(|| GraphError::BadDart(name.to_string()))
    }

    /// Same underlying multigraph with a different rotation system.
    /// `lists[v]` must be a permutation of `rotation_at(v)`.
    pub fn with_rotation(&self, lists: Vec<Vec<Dart>>) -> Result<Self, GraphError> {
        let edges: Vec<(&str, &str, &str)> = self
            .edges()
            .map(|e| {
                let [a, b] = self.ends(e);
                (self.edge_id(e), self.vertex_id(a), self.vertex_id(b))
            })
            .collect();
        let rotation: Vec<(&str, Vec<&str>)> = lists
            .iter()
            .enumerate()
            .map(|(v, list)| {
                (
                    self.vertex_id(Vertex(v)),
                    list.iter().map(|d| self.edge_id(d.edge())).collect(),
                )
            })
            .collect();
        Self::build(&self.vertex_ids, &edges, &rotation)
    }

    /// Number of edges joining `a` and `b`.
    pub fn multiplicity(&self, a: Vertex, b: Vertex) -> usize {
        self.rotation_at(a).iter().filter(|&&d| self.head(d) == b).count()
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json_string())
    }
}
