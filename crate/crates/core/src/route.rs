//! Dedicated routes: directed closed walks with ordered stops.
//!
//! Stops anchor to traversal indices rather than edges, which keeps repeated
//! edges unambiguous, and walk positions are `(traversal, offset)` pairs.

use crate::length::{total, Length};
use crate::network::{EdgeId, Network, Point, VertexId};
use num_rational::BigRational;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RouteError {
    #[error("route `{0}` has no traversals")]
    Empty(String),
    #[error("route `{0}` is not a closed walk at traversal {1}")]
    NotClosed(String, usize),
    #[error("route `{0}` traverses missing edge `{1}`-`{2}`")]
    UnknownEdge(String, String, String),
    #[error("route `{0}` has no stops")]
    NoStops(String),
    #[error("route `{0}` stop {1} is out of range")]
    StopOutOfRange(String, usize),
    #[error("route `{0}` stops are not ordered along the walk")]
    StopsUnordered(String),
    #[error("position (traversal {0}, offset {1}) is not on route `{2}`")]
    PositionNotOnRoute(usize, String, String),
}

/// One directed pass over an undirected edge.
#[derive(Clone, Debug)]
pub struct Traversal {
    pub edge: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
    pub length: Length,
}

/// A stop pinned to a traversal; offset 0 is the traversal's from-vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Stop {
    pub traversal: usize,
    pub offset: Length,
}

#[derive(Clone, Debug)]
pub enum StopSpec {
    /// A stop at the end of every incoming traversal and at the start of
    /// every outgoing one, so every route vertex can host a deviation.
    Dense,
    Explicit(Vec<Stop>),
}

/// A position along the walk. Positions compare by anchor: `(i, len_i)` and
/// `(i+1, 0)` are the same physical point but distinct anchors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct WalkPos {
    pub traversal: usize,
    pub offset: Length,
}

/// A vertex the vehicle may leave the route from, between one stop and the
/// next: its identity, its anchored walk position, and the on-route distance
/// from the window's first vertex.
#[derive(Clone, Debug)]
pub struct WindowSlot {
    pub vertex: VertexId,
    pub pos: WalkPos,
    pub on_route_out: Length,
}

#[derive(Clone, Debug)]
pub struct Route {
    id: String,
    flow: u64,
    dense: bool,
    traversals: Vec<Traversal>,
    stops: Vec<Stop>,
    length: Length,
    vertices: BTreeSet<VertexId>,
    edge_set: BTreeSet<EdgeId>,
    windows: Vec<Vec<WindowSlot>>,
}

/// Stops materializing the dense convention for a traversal list.
pub fn dense_stops(traversals: &[Traversal]) -> Vec<Stop> {
    let mut stops = Vec::with_capacity(2 * traversals.len());
    for (i, t) in traversals.iter().enumerate() {
        stops.push(Stop {
            traversal: i,
            offset: Length::zero(),
        });
        stops.push(Stop {
            traversal: i,
            offset: t.length.clone(),
        });
    }
    stops
}

impl Route {
    pub fn new(
        net: &Network,
        id: impl Into<String>,
        flow: u64,
        walk: &[(VertexId, VertexId)],
        stops: StopSpec,
    ) -> Result<Route, RouteError> {
        let id = id.into();
        if walk.is_empty() {
            return Err(RouteError::Empty(id));
        }
        let mut traversals = Vec::with_capacity(walk.len());
        for (i, &(from, to)) in walk.iter().enumerate() {
            let next_from = walk[(i + 1) % walk.len()].0;
            if to != next_from {
                return Err(RouteError::NotClosed(id, i));
            }
            let edge = net.edge_between(from, to).ok_or_else(|| {
                RouteError::UnknownEdge(
                    id.clone(),
                    net.vertex_name(from).to_string(),
                    net.vertex_name(to).to_string(),
                )
            })?;
            traversals.push(Traversal {
                edge,
                from,
                to,
                length: net.edge(edge).length.clone(),
            });
        }
        let (dense, stops) = match stops {
            StopSpec::Dense => (true, dense_stops(&traversals)),
            StopSpec::Explicit(list) => {
                if list.is_empty() {
                    return Err(RouteError::NoStops(id));
                }
                for (k, s) in list.iter().enumerate() {
                    if s.traversal >= traversals.len()
                        || s.offset > traversals[s.traversal].length
                    {
                        return Err(RouteError::StopOutOfRange(id, k));
                    }
                }
                if list.windows(2).any(|w| w[0] > w[1]) {
                    return Err(RouteError::StopsUnordered(id));
                }
                (false, list)
            }
        };
        let length = total(traversals.iter().map(|t| &t.length));
        let vertices = traversals.iter().map(|t| t.from).collect();
        let edge_set = traversals.iter().map(|t| t.edge).collect();
        let mut route = Route {
            id,
            flow,
            dense,
            traversals,
            stops,
            length,
            vertices,
            edge_set,
            windows: Vec::new(),
        };
        route.windows = (0..route.stops.len())
            .map(|s| route.compute_window(s))
            .collect();
        Ok(route)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn flow(&self) -> u64 {
        self.flow
    }

    pub fn is_dense(&self) -> bool {
        self.dense
    }

    pub fn traversals(&self) -> &[Traversal] {
        &self.traversals
    }

    pub fn stops(&self) -> &[Stop] {
        &self.stops
    }

    /// Total walk length, counting repeated edges every time.
    pub fn length(&self) -> &Length {
        &self.length
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn traversed_edges(&self) -> &BTreeSet<EdgeId> {
        &self.edge_set
    }

    /// Whether a network point lies on the walk (closed edges include ends).
    pub fn contains_point(&self, p: &Point) -> bool {
        match p {
            Point::Vertex(v) => self.vertices.contains(v),
            Point::OnEdge { edge, .. } => self.edge_set.contains(edge),
        }
    }

    fn check_pos(&self, p: &WalkPos) -> Result<(), RouteError> {
        if p.traversal >= self.traversals.len()
            || p.offset > self.traversals[p.traversal].length
        {
            return Err(RouteError::PositionNotOnRoute(
                p.traversal,
                p.offset.to_string(),
                self.id.clone(),
            ));
        }
        Ok(())
    }

    /// Length of the forward sub-route from `a` to `b`; 0 when the anchored
    /// positions coincide (the full-loop reading lives in `loop_distance`).
    pub fn subroute_length(&self, a: &WalkPos, b: &WalkPos) -> Result<Length, RouteError> {
        self.check_pos(a)?;
        self.check_pos(b)?;
        if a == b {
            return Ok(Length::zero());
        }
        if a.traversal == b.traversal && a.offset <= b.offset {
            return Ok(b.offset.checked_sub(&a.offset).expect("checked order"));
        }
        let k = self.traversals.len();
        let mut acc = self.traversals[a.traversal]
            .length
            .checked_sub(&a.offset)
            .expect("offset within traversal");
        let mut t = (a.traversal + 1) % k;
        while t != b.traversal {
            acc += &self.traversals[t].length;
            t = (t + 1) % k;
        }
        acc += &b.offset;
        Ok(acc)
    }

    /// Route length when the positions coincide, else the forward sub-route.
    pub fn loop_distance(&self, from: &WalkPos, to: &WalkPos) -> Length {
        if from == to {
            self.length.clone()
        } else {
            self.subroute_length(from, to).expect("positions on route")
        }
    }

    pub fn next_stop(&self, stop: usize) -> usize {
        (stop + 1) % self.stops.len()
    }

    /// Vertex at or immediately after the stop: its traversal's to-vertex.
    pub fn vertex_at_or_after(&self, stop: usize) -> VertexId {
        self.traversals[self.stops[stop].traversal].to
    }

    /// Vertex at or immediately before the stop: its traversal's from-vertex.
    pub fn vertex_at_or_before(&self, stop: usize) -> VertexId {
        self.traversals[self.stops[stop].traversal].from
    }

    /// Anchored position of `vertex_at_or_before(stop)`.
    pub fn before_pos(&self, stop: usize) -> WalkPos {
        WalkPos {
            traversal: self.stops[stop].traversal,
            offset: Length::zero(),
        }
    }

    fn stop_pos(&self, stop: usize) -> WalkPos {
        WalkPos {
            traversal: self.stops[stop].traversal,
            offset: self.stops[stop].offset.clone(),
        }
    }

    /// On-route distance from the stop to its vertex-at-or-after.
    pub fn lead_out(&self, stop: usize) -> Length {
        let s = &self.stops[stop];
        self.traversals[s.traversal]
            .length
            .checked_sub(&s.offset)
            .expect("offset within traversal")
    }

    /// Distance traveled from this stop to the next one. A stop followed by
    /// itself (single-stop route) means a full loop.
    pub fn stop_gap(&self, stop: usize) -> Length {
        let p = self.stop_pos(stop);
        let q = self.stop_pos(self.next_stop(stop));
        if p == q {
            self.length.clone()
        } else {
            self.subroute_length(&p, &q).expect("stops on route")
        }
    }

    /// Vertices passed between visiting `stop` and its successor, in travel
    /// order. Empty when the two stops share an edge interior with no vertex
    /// between them; such a stop can never be the last stop before deviating.
    pub fn deviation_window(&self, stop: usize) -> &[WindowSlot] {
        &self.windows[stop]
    }

    fn compute_window(&self, stop: usize) -> Vec<WindowSlot> {
        let s = &self.stops[stop];
        let lead = self.lead_out(stop);
        let next = &self.stops[self.next_stop(stop)];
        let gap = self.stop_gap(stop);
        // Reachable span ends where the approach to the next stop's
        // before-vertex begins.
        let limit: BigRational = gap.sub_signed(&next.offset);
        if lead.as_ratio() > &limit {
            return Vec::new();
        }
        let k = self.traversals.len();
        let mut slots = Vec::new();
        let mut d = lead.clone();
        let mut t = s.traversal;
        loop {
            let vertex = self.traversals[t].to;
            let out = d.checked_sub(&lead).expect("monotone walk");
            slots.push(WindowSlot {
                vertex,
                pos: WalkPos {
                    traversal: (t + 1) % k,
                    offset: Length::zero(),
                },
                on_route_out: out,
            });
            t = (t + 1) % k;
            d += &self.traversals[t].length;
            if d.as_ratio() > &limit {
                break;
            }
            if slots.len() > 2 * k + 2 {
                unreachable!("window walk exceeded the loop");
            }
        }
        slots
    }

    /// Every vertex that can host a deviation for some stop.
    pub fn deviation_capable_vertices(&self) -> BTreeSet<VertexId> {
        let mut set = BTreeSet::new();
        for s in 0..self.stops.len() {
            for slot in self.deviation_window(s) {
                set.insert(slot.vertex);
            }
        }
        set
    }
}

/// Routes worth examining: positive flow and loop length within range.
pub fn admissible_routes<'a>(all: &'a [Route], range: &Length) -> Vec<&'a Route> {
    all.iter()
        .filter(|r| r.flow() > 0 && r.length() <= range)
        .collect()
}

/// Indices of admissible routes, preserving input order.
pub fn admissible_indices(all: &[Route], range: &Length) -> Vec<usize> {
    all.iter()
        .enumerate()
        .filter(|(_, r)| r.flow() > 0 && r.length() <= range)
        .map(|(i, _)| i)
        .collect()
}

/// Route with stops materialized. Dense stops are materialized at
/// construction, so this is the identity on any built route; explicit-stop
/// routes come back unchanged.
pub fn densify(route: &Route) -> Route {
    route.clone()
}
