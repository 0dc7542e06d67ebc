//! Edge scanning: per-route refueling sets on every reachable edge, their
//! endpoints, coverage signatures, and deduplicated candidate classes.

use crate::coverage::{covered_routes, deviation_plan, Params};
use crate::length::Length;
use crate::network::{EdgeId, Network, Point, Segment, VertexId};
use crate::route::{admissible_indices, Route};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("edge {0} is traversed by the route")]
    EdgeOnRoute(String),
    #[error("vertex {0} is not an endpoint of edge {1}")]
    NotAnEntry(String, String),
    #[error("edge {0} is not reachable for the route")]
    EdgeNotCandidate(String),
    #[error("endpoints {0} and {1} are not adjacent on a common edge")]
    NotAdjacent(String, String),
}

/// Reach of one entry vertex of an off-route edge.
#[derive(Clone, Debug)]
pub struct EntryEval {
    pub entry: VertexId,
    /// Remaining travel distance along the edge under the range constraint
    /// alone; negative means the entry cannot even be reached on a full trip.
    pub range_reach: BigRational,
    /// Remaining distance under both constraints; negative means no point of
    /// the edge is reachable through this entry.
    pub reach: BigRational,
    pub segment: Option<Segment>,
}

/// Per (route, edge) scan record.
#[derive(Clone, Debug)]
pub struct ScanCell {
    pub route: usize,
    pub edge: EdgeId,
    pub on_route: bool,
    pub entry_u: Option<EntryEval>,
    pub entry_v: Option<EntryEval>,
    /// Maximal disjoint refueling segments on this edge for this route.
    pub rs: Vec<Segment>,
}

#[derive(Clone, Debug)]
pub struct Endpoint {
    pub id: String,
    pub point: Point,
    /// Covered routes as indices into the admissible list, ascending.
    pub signature: Vec<usize>,
    pub flow: u64,
}

#[derive(Clone, Debug)]
pub struct CandidateClass {
    pub signature: Vec<usize>,
    /// Endpoint indices sharing the signature, ascending.
    pub members: Vec<usize>,
    pub representative: usize,
}

#[derive(Clone, Debug)]
pub struct ScanStats {
    pub vertices: usize,
    pub edges: usize,
    pub admissible: usize,
    pub endpoints: usize,
    /// 4·h·e endpoint bound, asserted during the scan.
    pub endpoint_bound: usize,
    pub duration: Duration,
    /// Admissible routes whose range cannot absorb a full deviation after the
    /// first trip (loop length ≤ range < loop length + deviation bound).
    pub tight_range_routes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    /// Indices of the admissible routes within the input list, input order.
    pub admissible: Vec<usize>,
    pub route_ids: Vec<String>,
    pub route_flows: Vec<u64>,
    pub cells: Vec<ScanCell>,
    cell_index: BTreeMap<(usize, EdgeId), usize>,
    pub endpoints: Vec<Endpoint>,
    pub classes: Vec<CandidateClass>,
    pub stats: ScanStats,
}

impl ScanResult {
    pub fn cell(&self, route: usize, edge: EdgeId) -> Option<&ScanCell> {
        self.cell_index.get(&(route, edge)).map(|&i| &self.cells[i])
    }

    pub fn admissible_routes<'a>(&self, all: &'a [Route]) -> Vec<&'a Route> {
        self.admissible.iter().map(|&i| &all[i]).collect()
    }

    /// Whether `point` lies in some refueling segment of route `hi`.
    pub fn point_in_refueling_set(&self, net: &Network, hi: usize, point: &Point) -> bool {
        let candidate_edges: Vec<EdgeId> = match point {
            Point::Vertex(v) => net.incident_edges(*v).to_vec(),
            Point::OnEdge { edge, .. } => vec![*edge],
        };
        for e in candidate_edges {
            if let Some(cell) = self.cell(hi, e) {
                if let Some(off) = point.offset_on(net, e) {
                    if cell.rs.iter().any(|s| s.contains(&off)) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Signature-equal route names for reports.
    pub fn signature_names(&self, signature: &[usize]) -> Vec<String> {
        signature.iter().map(|&i| self.route_ids[i].clone()).collect()
    }
}

/// Edges worth scanning for a route: its own traversals plus every edge
/// incident to a vertex within deviation reach of some window vertex.
pub fn candidate_edges(net: &Network, route: &Route, params: &Params) -> Vec<EdgeId> {
    let capable = route.deviation_capable_vertices();
    let mut set: BTreeSet<EdgeId> = route.traversed_edges().clone();
    for v in net.vertices() {
        let reachable = capable
            .iter()
            .any(|w| net.vertex_distance(*w, v) <= &params.deviation);
        if reachable {
            set.extend(net.incident_edges(v).iter().copied());
        }
    }
    set.into_iter().collect()
}

fn check_entry(net: &Network, edge: EdgeId, entry: VertexId) -> Result<(), ScanError> {
    if !net.edge(edge).has_end(entry) {
        return Err(ScanError::NotAnEntry(
            net.vertex_name(entry).to_string(),
            net.describe_edge(edge),
        ));
    }
    Ok(())
}

/// Remaining travel distance along an off-route edge entered via `entry`,
/// under the range constraint alone. Equals the edge length when a vehicle
/// can pass through the whole edge and still complete its loop.
pub fn range_reach(
    net: &Network,
    route: &Route,
    edge: EdgeId,
    entry: VertexId,
    params: &Params,
) -> Result<BigRational, ScanError> {
    if route.traversed_edges().contains(&edge) {
        return Err(ScanError::EdgeOnRoute(net.describe_edge(edge)));
    }
    check_entry(net, edge, entry)?;
    let e = net.edge(edge);
    let far = e.other(entry);
    let plan = deviation_plan(net, route, &Point::Vertex(entry))
        .expect("a closed walk always has a deviation-capable stop");
    let mut through = &plan.deviation_out + net.vertex_distance(far, plan.return_vertex);
    through += &plan.loop_leg;
    let slack = params.range.sub_signed(&through);
    if &slack >= e.length.as_ratio() {
        return Ok(e.length.as_ratio().clone());
    }
    // Cannot exit via the far end: out and back along the edge, halved.
    let back = params.range.sub_signed(&plan.trip_length);
    Ok(back / BigRational::from_integer(2.into()))
}

/// Remaining distance along the edge under both coverage constraints.
pub fn deviation_reach(
    net: &Network,
    route: &Route,
    edge: EdgeId,
    entry: VertexId,
    params: &Params,
) -> Result<BigRational, ScanError> {
    let beta = range_reach(net, route, edge, entry, params)?;
    let plan = deviation_plan(net, route, &Point::Vertex(entry))
        .expect("a closed walk always has a deviation-capable stop");
    let slack = params.deviation.sub_signed(&plan.deviation_out);
    Ok(slack.min(beta))
}

fn entry_eval(
    net: &Network,
    route: &Route,
    edge: EdgeId,
    entry: VertexId,
    params: &Params,
) -> EntryEval {
    let beta = range_reach(net, route, edge, entry, params).expect("off-route edge");
    let plan = deviation_plan(net, route, &Point::Vertex(entry))
        .expect("a closed walk always has a deviation-capable stop");
    let reach = params.deviation.sub_signed(&plan.deviation_out).min(beta.clone());
    let e = net.edge(edge);
    let segment = if reach < BigRational::zero() {
        None
    } else {
        let span = Length::from_ratio(reach.clone().min(e.length.as_ratio().clone()))
            .expect("non-negative reach");
        Some(if entry == e.u {
            Segment {
                edge,
                lo: Length::zero(),
                hi: span,
            }
        } else {
            let lo = e
                .length
                .checked_sub(&span)
                .expect("span clamped to edge length");
            Segment {
                edge,
                lo,
                hi: e.length.clone(),
            }
        })
    };
    EntryEval {
        entry,
        range_reach: beta,
        reach,
        segment,
    }
}

fn build_cell(net: &Network, route: &Route, hi: usize, edge: EdgeId, params: &Params) -> ScanCell {
    if route.traversed_edges().contains(&edge) {
        return ScanCell {
            route: hi,
            edge,
            on_route: true,
            entry_u: None,
            entry_v: None,
            rs: vec![net.whole_edge(edge)],
        };
    }
    let e = net.edge(edge);
    let len = e.length.as_ratio();
    let eval_u = entry_eval(net, route, edge, e.u, params);
    if &eval_u.reach >= len {
        // One side spans the edge; the other entry is not evaluated.
        return ScanCell {
            route: hi,
            edge,
            on_route: false,
            entry_u: Some(eval_u),
            entry_v: None,
            rs: vec![net.whole_edge(edge)],
        };
    }
    let eval_v = entry_eval(net, route, edge, e.v, params);
    if &eval_v.reach >= len {
        return ScanCell {
            route: hi,
            edge,
            on_route: false,
            entry_u: Some(eval_u),
            entry_v: Some(eval_v),
            rs: vec![net.whole_edge(edge)],
        };
    }
    let rs = match (&eval_u.segment, &eval_v.segment) {
        (None, None) => Vec::new(),
        (Some(s), None) => vec![s.clone()],
        (None, Some(s)) => vec![s.clone()],
        (Some(su), Some(sv)) => {
            if su.hi >= sv.lo {
                vec![net.whole_edge(edge)]
            } else {
                vec![su.clone(), sv.clone()]
            }
        }
    };
    ScanCell {
        route: hi,
        edge,
        on_route: false,
        entry_u: Some(eval_u),
        entry_v: Some(eval_v),
        rs,
    }
}

/// Refueling set of one route on one edge: the whole edge on traversed edges,
/// otherwise the union of the two entry segments.
pub fn refueling_set(
    net: &Network,
    route: &Route,
    edge: EdgeId,
    params: &Params,
) -> Result<Vec<Segment>, ScanError> {
    if !route.traversed_edges().contains(&edge) {
        let capable = route.deviation_capable_vertices();
        let e = net.edge(edge);
        let reachable = capable.iter().any(|w| {
            net.vertex_distance(*w, e.u) <= &params.deviation
                || net.vertex_distance(*w, e.v) <= &params.deviation
        });
        if !reachable {
            return Err(ScanError::EdgeNotCandidate(net.describe_edge(edge)));
        }
    }
    Ok(build_cell(net, route, 0, edge, params).rs)
}

/// Run the full scan over the pruned candidate edges of each admissible route.
pub fn scan(net: &Network, routes: &[Route], params: &Params) -> ScanResult {
    scan_impl(net, routes, params, true)
}

/// Scan every edge for every route; diagnostic twin of `scan` used to check
/// that pruning never drops a refueling segment.
pub fn scan_all_edges(net: &Network, routes: &[Route], params: &Params) -> ScanResult {
    scan_impl(net, routes, params, false)
}

fn scan_impl(net: &Network, routes: &[Route], params: &Params, prune: bool) -> ScanResult {
    let start = Instant::now();
    let admissible = admissible_indices(routes, &params.range);
    let h_routes: Vec<&Route> = admissible.iter().map(|&i| &routes[i]).collect();

    let mut cells = Vec::new();
    let mut cell_index = BTreeMap::new();
    for (hi, route) in h_routes.iter().enumerate() {
        let edges = if prune {
            candidate_edges(net, route, params)
        } else {
            net.edges().map(|(id, _)| id).collect()
        };
        for e in edges {
            let cell = build_cell(net, route, hi, e, params);
            cell_index.insert((hi, e), cells.len());
            cells.push(cell);
        }
    }

    let mut points: BTreeSet<Point> = BTreeSet::new();
    for cell in &cells {
        for seg in &cell.rs {
            points.insert(
                net.point_on_edge(seg.edge, seg.lo.clone())
                    .expect("segment within edge"),
            );
            points.insert(
                net.point_on_edge(seg.edge, seg.hi.clone())
                    .expect("segment within edge"),
            );
        }
    }

    let mut result = ScanResult {
        admissible,
        route_ids: h_routes.iter().map(|r| r.id().to_string()).collect(),
        route_flows: h_routes.iter().map(|r| r.flow()).collect(),
        cells,
        cell_index,
        endpoints: Vec::new(),
        classes: Vec::new(),
        stats: ScanStats {
            vertices: net.vertex_count(),
            edges: net.edge_count(),
            admissible: h_routes.len(),
            endpoints: 0,
            endpoint_bound: 4 * h_routes.len() * net.edge_count(),
            duration: Duration::ZERO,
            tight_range_routes: Vec::new(),
        },
    };

    for (i, point) in points.into_iter().enumerate() {
        let mut signature = Vec::new();
        let mut flow = 0u64;
        for (hi, route) in h_routes.iter().enumerate() {
            if result.point_in_refueling_set(net, hi, &point) {
                signature.push(hi);
                flow += route.flow();
            }
        }
        result.endpoints.push(Endpoint {
            id: format!("w{}", i + 1),
            point,
            signature,
            flow,
        });
    }

    assert!(
        result.endpoints.len() <= result.stats.endpoint_bound || h_routes.is_empty(),
        "endpoint count {} exceeds the 4he bound {}",
        result.endpoints.len(),
        result.stats.endpoint_bound
    );

    let mut by_signature: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, ep) in result.endpoints.iter().enumerate() {
        by_signature.entry(ep.signature.clone()).or_default().push(i);
    }
    let mut classes: Vec<CandidateClass> = by_signature
        .into_iter()
        .map(|(signature, members)| CandidateClass {
            signature,
            representative: members[0],
            members,
        })
        .collect();
    classes.sort_by_key(|c| c.representative);
    result.classes = classes;

    let mut tight = Vec::new();
    for (hi, route) in h_routes.iter().enumerate() {
        let with_dev = route.length() + &params.deviation;
        if params.range < with_dev {
            tight.push(hi);
        }
    }
    result.stats.tight_range_routes = tight;
    result.stats.endpoints = result.endpoints.len();
    result.stats.duration = start.elapsed();
    result
}

/// Coverage of the open interval between two adjacent endpoints, probed at
/// its midpoint; every interior point shares this coverage.
pub fn interior_probe(
    net: &Network,
    result: &ScanResult,
    routes: &[Route],
    params: &Params,
    wa: usize,
    wb: usize,
) -> Result<Vec<usize>, ScanError> {
    let a = &result.endpoints[wa];
    let b = &result.endpoints[wb];
    let not_adjacent = || ScanError::NotAdjacent(a.id.clone(), b.id.clone());
    let edges_a: Vec<EdgeId> = match &a.point {
        Point::Vertex(v) => net.incident_edges(*v).to_vec(),
        Point::OnEdge { edge, .. } => vec![*edge],
    };
    let mut shared = None;
    for e in edges_a {
        if let (Some(oa), Some(ob)) = (a.point.offset_on(net, e), b.point.offset_on(net, e)) {
            shared = Some((e, oa, ob));
            break;
        }
    }
    let (edge, oa, ob) = shared.ok_or_else(not_adjacent)?;
    let (lo, hi) = if oa < ob { (oa, ob) } else { (ob, oa) };
    if lo == hi {
        return Err(not_adjacent());
    }
    for other in &result.endpoints {
        if let Some(o) = other.point.offset_on(net, edge) {
            if o > lo && o < hi {
                return Err(not_adjacent());
            }
        }
    }
    let mid = (&lo + &hi).halved();
    let point = net
        .point_on_edge(edge, mid)
        .expect("midpoint lies inside the edge");
    let h = result.admissible_routes(routes);
    Ok(covered_routes(net, &h, &point, params).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::length::format_exact;
    use crate::route::StopSpec;

    fn len(s: &str) -> Length {
        s.parse().unwrap()
    }

    fn ratio(s: &str) -> BigRational {
        crate::length::parse_decimal(s).unwrap()
    }

    /// Figure-6 style fixture: 8-cycle of total length 18 plus pendant edge
    /// (v8,v9) of length 3; deviation 4, range 20.
    fn cycle_fixture() -> (Network, Vec<Route>, Params) {
        let names: Vec<String> = (1..=9).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 1..=8 {
            let j = if i == 8 { 1 } else { i + 1 };
            edges.push((format!("v{i}"), format!("v{j}"), len("2.25")));
        }
        edges.push(("v8".into(), "v9".into(), len("3")));
        let net = Network::build(names, edges).unwrap();
        let walk: Vec<_> = (1..=8)
            .map(|i| {
                let j = if i == 8 { 1 } else { i + 1 };
                (
                    net.vertex(&format!("v{i}")).unwrap(),
                    net.vertex(&format!("v{j}")).unwrap(),
                )
            })
            .collect();
        let route = Route::new(&net, "U1", 25, &walk, StopSpec::Dense).unwrap();
        let params = Params::new(len("4"), len("20")).unwrap();
        (net, vec![route], params)
    }

    #[test]
    fn pendant_reaches_match_worked_values() {
        let (net, routes, params) = cycle_fixture();
        let v8 = net.vertex("v8").unwrap();
        let v9 = net.vertex("v9").unwrap();
        let e = net.edge_between(v8, v9).unwrap();
        let r = &routes[0];
        assert_eq!(range_reach(&net, r, e, v8, &params).unwrap(), ratio("1"));
        assert_eq!(range_reach(&net, r, e, v9, &params).unwrap(), ratio("-2"));
        assert_eq!(deviation_reach(&net, r, e, v8, &params).unwrap(), ratio("1"));
        assert_eq!(deviation_reach(&net, r, e, v9, &params).unwrap(), ratio("-2"));
        let rs = refueling_set(&net, r, e, &params).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].lo, len("0"));
        assert_eq!(rs[0].hi, len("1"));
        // Entry ordering on the stored cell: (v8,v9) has u = v8.
        let result = scan(&net, &routes, &params);
        let cell = result.cell(0, e).unwrap();
        assert_eq!(format_exact(&cell.entry_u.as_ref().unwrap().reach), "1");
        assert_eq!(format_exact(&cell.entry_v.as_ref().unwrap().reach), "-2");
    }

    #[test]
    fn on_route_edges_scan_whole() {
        let (net, routes, params) = cycle_fixture();
        let v1 = net.vertex("v1").unwrap();
        let v2 = net.vertex("v2").unwrap();
        let e = net.edge_between(v1, v2).unwrap();
        let rs = refueling_set(&net, &routes[0], e, &params).unwrap();
        assert_eq!(rs, vec![net.whole_edge(e)]);
        assert!(matches!(
            range_reach(&net, &routes[0], e, v1, &params),
            Err(ScanError::EdgeOnRoute(_))
        ));
    }

    #[test]
    fn scan_collects_endpoints_and_classes() {
        let (net, routes, params) = cycle_fixture();
        let result = scan(&net, &routes, &params);
        // All route vertices plus the interior pendant boundary.
        assert!(result.endpoints.len() <= result.stats.endpoint_bound);
        let v8 = net.vertex("v8").unwrap();
        let v9 = net.vertex("v9").unwrap();
        let e = net.edge_between(v8, v9).unwrap();
        let interior: Vec<_> = result
            .endpoints
            .iter()
            .filter(|ep| matches!(&ep.point, Point::OnEdge { edge, .. } if *edge == e))
            .collect();
        assert_eq!(interior.len(), 1);
        assert_eq!(interior[0].point.offset_on(&net, e).unwrap(), len("1"));
        assert_eq!(interior[0].signature, vec![0]);
        assert_eq!(interior[0].flow, 25);
        // Single route: every endpoint covers it.
        assert!(result.endpoints.iter().all(|ep| ep.signature == vec![0]));
        assert_eq!(result.classes.len(), 1);
        // Range is tight: 18 ≤ 20 < 18 + 4.
        assert_eq!(result.stats.tight_range_routes, vec![0]);
    }

    #[test]
    fn zero_deviation_keeps_route_vertices_only() {
        let (net, routes, _) = cycle_fixture();
        let params = Params::new(len("0"), len("20")).unwrap();
        let result = scan(&net, &routes, &params);
        for ep in &result.endpoints {
            match &ep.point {
                Point::Vertex(v) => assert!(routes[0].vertex_set().contains(v)),
                other => panic!("unexpected interior endpoint {other:?}"),
            }
            assert_eq!(ep.signature, vec![0]);
        }
        assert_eq!(result.endpoints.len(), 8);
    }

    #[test]
    fn pruned_scan_matches_full_scan() {
        let (net, routes, params) = cycle_fixture();
        let pruned = scan(&net, &routes, &params);
        let full = scan_all_edges(&net, &routes, &params);
        let key = |r: &ScanResult| -> Vec<(Point, Vec<usize>)> {
            r.endpoints
                .iter()
                .map(|e| (e.point.clone(), e.signature.clone()))
                .collect()
        };
        assert_eq!(key(&pruned), key(&full));
    }

    #[test]
    fn empty_route_list_scans_empty() {
        let (net, _, params) = cycle_fixture();
        let result = scan(&net, &[], &params);
        assert_eq!(result.stats.admissible, 0);
        assert!(result.endpoints.is_empty());
        assert!(result.classes.is_empty());
    }

    #[test]
    fn zero_deviation_candidate_edges_touch_route_vertices_only() {
        let (net, routes, _) = cycle_fixture();
        let params = Params::new(len("0"), len("20")).unwrap();
        let m = candidate_edges(&net, &routes[0], &params);
        // Every incident edge of a route vertex, including the pendant.
        assert_eq!(m.len(), net.edge_count());
        let far_only: Vec<EdgeId> = m
            .into_iter()
            .filter(|&e| {
                let edge = net.edge(e);
                !routes[0].vertex_set().contains(&edge.u)
                    && !routes[0].vertex_set().contains(&edge.v)
            })
            .collect();
        assert!(far_only.is_empty());
    }

    #[test]
    fn interior_of_an_on_route_edge_covers_the_route() {
        let (net, routes, params) = cycle_fixture();
        let result = scan(&net, &routes, &params);
        let v1 = net.vertex("v1").unwrap();
        let v2 = net.vertex("v2").unwrap();
        let pos = |v| {
            result
                .endpoints
                .iter()
                .position(|ep| ep.point == Point::Vertex(v))
                .unwrap()
        };
        let cov = interior_probe(&net, &result, &routes, &params, pos(v1), pos(v2)).unwrap();
        assert_eq!(cov, vec![0]);
    }

    #[test]
    fn grid_network_scans_quickly() {
        // Polynomial behavior sanity check: a 7x7 grid with six loops scans
        // well under a second.
        let side = 7usize;
        let name = |r: usize, c: usize| format!("g{r}x{c}");
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for r in 0..side {
            for c in 0..side {
                vertices.push(name(r, c));
                if c + 1 < side {
                    edges.push((name(r, c), name(r, c + 1), len("2")));
                }
                if r + 1 < side {
                    edges.push((name(r, c), name(r + 1, c), len("2")));
                }
            }
        }
        let net = Network::build(vertices, edges).unwrap();
        let mut routes = Vec::new();
        for t in 0..6usize {
            let (r, c) = (t % 3, (t * 2) % 4);
            let square = [
                (name(r, c), name(r, c + 1)),
                (name(r, c + 1), name(r + 1, c + 1)),
                (name(r + 1, c + 1), name(r + 1, c)),
                (name(r + 1, c), name(r, c)),
            ];
            let walk: Vec<_> = square
                .iter()
                .map(|(a, b)| (net.vertex(a).unwrap(), net.vertex(b).unwrap()))
                .collect();
            routes.push(
                Route::new(&net, format!("U{}", t + 1), 5, &walk, StopSpec::Dense).unwrap(),
            );
        }
        let params = Params::new(len("4"), len("100")).unwrap();
        let started = std::time::Instant::now();
        let result = scan(&net, &routes, &params);
        assert!(result.endpoints.len() <= result.stats.endpoint_bound);
        assert!(
            started.elapsed().as_secs_f64() < 1.0,
            "scan took {:?}",
            started.elapsed()
        );
    }

    #[test]
    fn interior_probe_requires_adjacency() {
        let (net, routes, params) = cycle_fixture();
        let result = scan(&net, &routes, &params);
        let v8 = net.vertex("v8").unwrap();
        let v9 = net.vertex("v9").unwrap();
        let e = net.edge_between(v8, v9).unwrap();
        let idx_v8 = result
            .endpoints
            .iter()
            .position(|ep| ep.point == Point::Vertex(v8))
            .unwrap();
        let idx_in = result
            .endpoints
            .iter()
            .position(|ep| matches!(&ep.point, Point::OnEdge { edge, .. } if *edge == e))
            .unwrap();
        let cov = interior_probe(&net, &result, &routes, &params, idx_v8, idx_in).unwrap();
        assert_eq!(cov, vec![0]);
        let idx_v1 = result
            .endpoints
            .iter()
            .position(|ep| ep.point == Point::Vertex(net.vertex("v1").unwrap()))
            .unwrap();
        assert!(matches!(
            interior_probe(&net, &result, &routes, &params, idx_v8, idx_v8),
            Err(ScanError::NotAdjacent(_, _))
        ));
        // v1 and the pendant interior point share no edge.
        assert!(matches!(
            interior_probe(&net, &result, &routes, &params, idx_v1, idx_in),
            Err(ScanError::NotAdjacent(_, _))
        ));
    }
}
