//! Road network: exact edge lengths, validation, and shortest-distance queries.
//!
//! The network is immutable after build; all queries are pure.

use crate::length::{Length, ParseLengthError};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub length: Length,
}

impl Edge {
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn has_end(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("edge between `{0}` and `{1}` must have positive length")]
    NonPositiveLength(String, String),
    #[error("network is not connected: no path from `{0}` to `{1}`")]
    Disconnected(String, String),
    #[error("edge `{0}`-`{1}` of length {2} is longer than an alternate path of length {3}")]
    EdgeNotShortest(String, String, String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no edge between `{0}` and `{1}`")]
    UnknownEdge(String, String),
    #[error("offset {0} lies outside edge `{1}`-`{2}` of length {3}")]
    InvalidOffset(String, String, String, String),
    #[error(transparent)]
    Parse(#[from] ParseLengthError),
}

/// A point in the network: a vertex, or a location strictly inside an edge.
///
/// Offsets are measured from the edge's `u` endpoint. Boundary offsets are
/// canonicalized to `Vertex`, so points that coincide at a shared vertex
/// compare equal regardless of which edge produced them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Point {
    Vertex(VertexId),
    OnEdge { edge: EdgeId, offset: Length },
}

impl Point {
    /// Offset of this point along `edge` (from its `u` end), if it lies on it.
    pub fn offset_on(&self, net: &Network, edge: EdgeId) -> Option<Length> {
        let e = net.edge(edge);
        match self {
            Point::Vertex(w) if *w == e.u => Some(Length::zero()),
            Point::Vertex(w) if *w == e.v => Some(e.length.clone()),
            Point::Vertex(_) => None,
            Point::OnEdge { edge: pe, offset } if *pe == edge => Some(offset.clone()),
            Point::OnEdge { .. } => None,
        }
    }

    pub fn describe(&self, net: &Network) -> String {
        match self {
            Point::Vertex(v) => net.vertex_name(*v).to_string(),
            Point::OnEdge { edge, offset } => {
                let e = net.edge(*edge);
                format!(
                    "({},{})+{}",
                    net.vertex_name(e.u),
                    net.vertex_name(e.v),
                    offset
                )
            }
        }
    }
}

/// Closed sub-interval of an edge; `lo == hi` is a single point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Segment {
    pub edge: EdgeId,
    pub lo: Length,
    pub hi: Length,
}

impl Segment {
    pub fn contains(&self, offset: &Length) -> bool {
        &self.lo <= offset && offset <= &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Simple, connected, undirected network with an exact all-pairs distance table.
#[derive(Clone, Debug)]
pub struct Network {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    pair: HashMap<(VertexId, VertexId), EdgeId>,
    incident: Vec<Vec<EdgeId>>,
    dist: Vec<Vec<Length>>,
}

impl Network {
    /// Validate raw input and precompute the shortest-distance table.
    pub fn build(
        vertices: Vec<String>,
        edges: Vec<(String, String, Length)>,
    ) -> Result<Network, NetworkError> {
        let mut index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(NetworkError::DuplicateVertex(name.clone()));
            }
        }
        let n = vertices.len();
        let mut built = Vec::with_capacity(edges.len());
        let mut pair = HashMap::new();
        let mut incident = vec![Vec::new(); n];
        for (uname, vname, length) in edges {
            let u = *index
                .get(&uname)
                .ok_or_else(|| NetworkError::UnknownVertex(uname.clone()))?;
            let v = *index
                .get(&vname)
                .ok_or_else(|| NetworkError::UnknownVertex(vname.clone()))?;
            if u == v {
                return Err(NetworkError::SelfLoop(uname));
            }
            if length.is_zero() {
                return Err(NetworkError::NonPositiveLength(uname, vname));
            }
            let key = (u.min(v), u.max(v));
            let id = EdgeId(built.len());
            if pair.insert(key, id).is_some() {
                return Err(NetworkError::DuplicateEdge(uname, vname));
            }
            incident[u.0].push(id);
            incident[v.0].push(id);
            built.push(Edge { u, v, length });
        }

        let dist = Self::all_pairs(n, &built, &vertices)?;

        // Assumption: every edge is itself a shortest path between its ends.
        for e in &built {
            let d = &dist[e.u.0][e.v.0];
            if d < &e.length {
                return Err(NetworkError::EdgeNotShortest(
                    vertices[e.u.0].clone(),
                    vertices[e.v.0].clone(),
                    e.length.to_string(),
                    d.to_string(),
                ));
            }
        }

        Ok(Network {
            names: vertices,
            index,
            edges: built,
            pair,
            incident,
            dist,
        })
    }

    fn all_pairs(
        n: usize,
        edges: &[Edge],
        names: &[String],
    ) -> Result<Vec<Vec<Length>>, NetworkError> {
        let mut d: Vec<Vec<Option<Length>>> = vec![vec![None; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = Some(Length::zero());
        }
        for e in edges {
            let (i, j) = (e.u.0, e.v.0);
            let better = match &d[i][j] {
                Some(cur) => e.length < *cur,
                None => true,
            };
            if better {
                d[i][j] = Some(e.length.clone());
                d[j][i] = Some(e.length.clone());
            }
        }
        for k in 0..n {
            let row_k = d[k].clone();
            for row in d.iter_mut() {
                let dik = match &row[k] {
                    Some(x) => x.clone(),
                    None => continue,
                };
                for (cell, dkj) in row.iter_mut().zip(&row_k) {
                    let dkj = match dkj {
                        Some(x) => x,
                        None => continue,
                    };
                    let alt = &dik + dkj;
                    let better = match &cell {
                        Some(cur) => alt < *cur,
                        None => true,
                    };
                    if better {
                        *cell = Some(alt);
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        for (i, row) in d.into_iter().enumerate() {
            let mut r = Vec::with_capacity(n);
            for (j, cell) in row.into_iter().enumerate() {
                match cell {
                    Some(x) => r.push(x),
                    None => {
                        return Err(NetworkError::Disconnected(
                            names[i].clone(),
                            names[j].clone(),
                        ))
                    }
                }
            }
            out.push(r);
        }
        Ok(out)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, NetworkError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| NetworkError::UnknownVertex(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i), e))
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.pair.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    /// Shortest distance between two vertices.
    pub fn vertex_distance(&self, u: VertexId, v: VertexId) -> &Length {
        &self.dist[u.0][v.0]
    }

    /// Shortest distance from a vertex to any network point.
    pub fn point_distance(&self, v: VertexId, x: &Point) -> Length {
        match x {
            Point::Vertex(w) => self.dist[v.0][w.0].clone(),
            Point::OnEdge { edge, offset } => {
                let e = self.edge(*edge);
                let via_u = &self.dist[v.0][e.u.0] + offset;
                let rest = e.length.checked_sub(offset).expect("offset within edge");
                let via_v = &self.dist[v.0][e.v.0] + &rest;
                via_u.min(via_v)
            }
        }
    }

    /// Canonical point at `offset` from the `u` end of `edge`.
    pub fn point_on_edge(&self, edge: EdgeId, offset: Length) -> Result<Point, NetworkError> {
        let e = self.edge(edge);
        if offset > e.length {
            return Err(NetworkError::InvalidOffset(
                offset.to_string(),
                self.vertex_name(e.u).to_string(),
                self.vertex_name(e.v).to_string(),
                e.length.to_string(),
            ));
        }
        if offset.is_zero() {
            Ok(Point::Vertex(e.u))
        } else if offset == e.length {
            Ok(Point::Vertex(e.v))
        } else {
            Ok(Point::OnEdge { edge, offset })
        }
    }

    pub fn whole_edge(&self, edge: EdgeId) -> Segment {
        Segment {
            edge,
            lo: Length::zero(),
            hi: self.edge(edge).length.clone(),
        }
    }

    pub fn describe_edge(&self, e: EdgeId) -> String {
        let edge = self.edge(e);
        format!(
            "({},{})",
            self.vertex_name(edge.u),
            self.vertex_name(edge.v)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn len(s: &str) -> Length {
        s.parse().unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn triangle_direct_edge_is_shortest() {
        let net = Network::build(
            names(&["v1", "v2", "v3"]),
            vec![
                ("v1".into(), "v2".into(), len("1")),
                ("v2".into(), "v3".into(), len("1")),
                ("v1".into(), "v3".into(), len("1")),
            ],
        )
        .unwrap();
        let (a, c) = (net.vertex("v1").unwrap(), net.vertex("v3").unwrap());
        assert_eq!(net.vertex_distance(a, c), &len("1"));
    }

    #[test]
    fn path_distance_sums() {
        let net = Network::build(
            names(&["v1", "v2", "v3"]),
            vec![
                ("v1".into(), "v2".into(), len("3")),
                ("v2".into(), "v3".into(), len("4")),
            ],
        )
        .unwrap();
        let (a, c) = (net.vertex("v1").unwrap(), net.vertex("v3").unwrap());
        assert_eq!(net.vertex_distance(a, c), &len("7"));
        assert_eq!(net.vertex_distance(a, a), &len("0"));
    }

    #[test]
    fn long_chord_is_rejected() {
        // Square of unit edges plus a chord of length 5: dist(v1,v3) = 2 < 5.
        let err = Network::build(
            names(&["v1", "v2", "v3", "v4"]),
            vec![
                ("v1".into(), "v2".into(), len("1")),
                ("v2".into(), "v3".into(), len("1")),
                ("v3".into(), "v4".into(), len("1")),
                ("v4".into(), "v1".into(), len("1")),
                ("v1".into(), "v3".into(), len("5")),
            ],
        )
        .unwrap_err();
        match err {
            NetworkError::EdgeNotShortest(_, _, l, d) => {
                assert_eq!(l, "5");
                assert_eq!(d, "2");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn structural_validation() {
        assert!(matches!(
            Network::build(
                names(&["a"]),
                vec![("a".into(), "a".into(), len("1"))]
            ),
            Err(NetworkError::SelfLoop(_))
        ));
        assert!(matches!(
            Network::build(
                names(&["a", "b"]),
                vec![
                    ("a".into(), "b".into(), len("1")),
                    ("b".into(), "a".into(), len("2")),
                ]
            ),
            Err(NetworkError::DuplicateEdge(_, _))
        ));
        assert!(matches!(
            Network::build(names(&["a", "b", "c"]), vec![("a".into(), "b".into(), len("1"))]),
            Err(NetworkError::Disconnected(_, _))
        ));
        assert!(matches!(
            Network::build(names(&["a", "b"]), vec![("a".into(), "b".into(), len("0"))]),
            Err(NetworkError::NonPositiveLength(_, _))
        ));
    }

    #[test]
    fn point_distance_and_canonicalization() {
        let net = Network::build(
            names(&["a", "b", "c"]),
            vec![
                ("a".into(), "b".into(), len("4")),
                ("b".into(), "c".into(), len("2")),
            ],
        )
        .unwrap();
        let (a, b) = (net.vertex("a").unwrap(), net.vertex("b").unwrap());
        let e = net.edge_between(a, b).unwrap();
        assert_eq!(net.point_on_edge(e, len("0")).unwrap(), Point::Vertex(a));
        assert_eq!(net.point_on_edge(e, len("4")).unwrap(), Point::Vertex(b));
        let mid = net.point_on_edge(e, len("1.5")).unwrap();
        assert_eq!(net.point_distance(a, &mid), len("1.5"));
        assert_eq!(net.point_distance(b, &mid), len("2.5"));
        let c = net.vertex("c").unwrap();
        // From c the near end is b.
        assert_eq!(net.point_distance(c, &mid), len("4.5"));
        assert!(net.point_on_edge(e, len("5")).is_err());
    }
}
