//! Whether a station at a point covers a route: last-stop selection, the
//! deviation vertex, and the range/deviation constraints, plus an independent
//! enumeration oracle.

use crate::length::Length;
use crate::network::{Network, Point, VertexId};
use crate::route::{Route, WalkPos, WindowSlot};
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoverageError {
    #[error("driving range must be positive")]
    NonPositiveRange,
    #[error("plan violates the coverage constraints")]
    InfeasiblePlan,
}

/// Problem parameters: maximum one-way deviation distance and driving range.
#[derive(Clone, Debug)]
pub struct Params {
    pub deviation: Length,
    pub range: Length,
}

impl Params {
    pub fn new(deviation: Length, range: Length) -> Result<Params, CoverageError> {
        if range.is_zero() {
            return Err(CoverageError::NonPositiveRange);
        }
        Ok(Params { deviation, range })
    }
}

/// Result of the last-stop selection; `tie` records that another stop
/// achieved the same total and the positional tie-break decided.
#[derive(Clone, Debug)]
pub struct LastStop {
    pub stop: usize,
    pub tie: bool,
}

/// The whole refueling detour for one route and one station point.
#[derive(Clone, Debug)]
pub struct DeviationPlan {
    pub stop: usize,
    pub tie: bool,
    pub deviation_vertex: VertexId,
    pub deviation_pos: WalkPos,
    pub on_route_out: Length,
    pub return_vertex: VertexId,
    pub return_pos: WalkPos,
    /// Shortest distance from the deviation vertex to the station.
    pub deviation_out: Length,
    /// Shortest distance from the station back to the return vertex.
    pub return_leg: Length,
    /// On-route distance from the return vertex forward to the deviation
    /// vertex; the full loop when they coincide.
    pub loop_leg: Length,
    /// Station → loop → station round trip checked against the range.
    pub trip_length: Length,
    /// On-route distance from the deviation vertex to the return vertex;
    /// the part of the walk the detour replaces.
    pub skipped: Length,
}

impl DeviationPlan {
    pub fn feasible(&self, params: &Params) -> bool {
        self.trip_length <= params.range && self.deviation_out <= params.deviation
    }
}

/// Extra driving per refueling trip compared to staying on the route.
/// May be negative when the detour shortcuts a long walk segment.
pub fn additional_distance(
    plan: &DeviationPlan,
    params: &Params,
) -> Result<BigRational, CoverageError> {
    if !plan.feasible(params) {
        return Err(CoverageError::InfeasiblePlan);
    }
    let legs = &plan.deviation_out + &plan.return_leg;
    Ok(legs.sub_signed(&plan.skipped))
}

/// The stop after which the detour to `x` is cheapest: minimizes the total
/// trip (lead to the window, both detour legs, lead back in, and the
/// complementary sub-route). Stops whose window holds no vertex cannot host a
/// deviation and are skipped; `None` means no stop can.
pub fn last_stop_before(net: &Network, route: &Route, x: &Point) -> Option<LastStop> {
    let mut best: Option<(Length, usize)> = None;
    let mut tie = false;
    for s in 0..route.stops().len() {
        if route.deviation_window(s).is_empty() {
            continue;
        }
        let next = route.next_stop(s);
        let v_after = route.vertex_at_or_after(s);
        let v_before = route.vertex_at_or_before(next);
        let mut tot = route.lead_out(s);
        tot += &net.point_distance(v_after, x);
        tot += &net.point_distance(v_before, x);
        tot += &route.stops()[next].offset;
        let comp = route
            .subroute_length(
                &WalkPos {
                    traversal: route.stops()[next].traversal,
                    offset: route.stops()[next].offset.clone(),
                },
                &WalkPos {
                    traversal: route.stops()[s].traversal,
                    offset: route.stops()[s].offset.clone(),
                },
            )
            .expect("stops are on the route");
        tot += &comp;
        match &best {
            Some((cur, _)) if &tot > cur => {}
            Some((cur, _)) if &tot == cur => tie = true,
            _ => {
                // Stops iterate in walk order, so the first minimum wins ties.
                if let Some((cur, _)) = &best {
                    debug_assert!(&tot < cur);
                }
                best = Some((tot, s));
            }
        }
    }
    best.map(|(_, stop)| LastStop { stop, tie })
}

/// The window vertex where the vehicle actually leaves the route heading to
/// `x`. The out-leg key `dist(v, x) + on-route lead` is non-decreasing along
/// the window, and the deepest minimum is the vertex whose shortest path to
/// `x` departs the route.
pub fn deviation_vertex(
    net: &Network,
    route: &Route,
    x: &Point,
    stop: usize,
) -> Option<WindowSlot> {
    let window = route.deviation_window(stop);
    let mut best: Option<(Length, &WindowSlot)> = None;
    for slot in window {
        let key = &net.point_distance(slot.vertex, x) + &slot.on_route_out;
        match &best {
            Some((cur, _)) if &key > cur => {}
            _ => best = Some((key, slot)),
        }
    }
    best.map(|(_, slot)| slot.clone())
}

/// Build the full detour bundle for an off-route point, without deciding
/// feasibility. Also evaluated at entry vertices during edge scanning.
pub fn deviation_plan(net: &Network, route: &Route, x: &Point) -> Option<DeviationPlan> {
    let last = last_stop_before(net, route, x)?;
    let slot = deviation_vertex(net, route, x, last.stop)
        .expect("chosen stop has a non-empty window");
    let next = route.next_stop(last.stop);
    let return_vertex = route.vertex_at_or_before(next);
    let return_pos = route.before_pos(next);
    let deviation_out = net.point_distance(slot.vertex, x);
    let return_leg = net.point_distance(return_vertex, x);
    let loop_leg = route.loop_distance(&return_pos, &slot.pos);
    let mut trip_length = &deviation_out + &return_leg;
    trip_length += &loop_leg;
    let skipped = if slot.pos == return_pos {
        Length::zero()
    } else {
        route
            .subroute_length(&slot.pos, &return_pos)
            .expect("positions on route")
    };
    Some(DeviationPlan {
        stop: last.stop,
        tie: last.tie,
        deviation_vertex: slot.vertex,
        deviation_pos: slot.pos,
        on_route_out: slot.on_route_out,
        return_vertex,
        return_pos,
        deviation_out,
        return_leg,
        loop_leg,
        trip_length,
        skipped,
    })
}

/// Outcome of the coverage decision for one route and one point.
#[derive(Clone, Debug)]
pub enum Coverage {
    /// The point lies on the route itself; covered unconditionally.
    OnRoute,
    /// Covered through a feasible detour.
    Deviates(DeviationPlan),
    /// Not covered; the best plan is kept for diagnostics when one exists.
    Uncovered(Option<DeviationPlan>),
}

impl Coverage {
    pub fn covered(&self) -> bool {
        matches!(self, Coverage::OnRoute | Coverage::Deviates(_))
    }

    pub fn plan(&self) -> Option<&DeviationPlan> {
        match self {
            Coverage::Deviates(p) => Some(p),
            Coverage::Uncovered(Some(p)) => Some(p),
            _ => None,
        }
    }
}

/// Coverage decision: on-route points pass outright, anything else must
/// satisfy both the range and deviation constraints of its detour plan.
pub fn covers(net: &Network, route: &Route, x: &Point, params: &Params) -> Coverage {
    if route.contains_point(x) {
        return Coverage::OnRoute;
    }
    match deviation_plan(net, route, x) {
        Some(plan) if plan.feasible(params) => Coverage::Deviates(plan),
        other => Coverage::Uncovered(other),
    }
}

/// Existential reading of coverage: some stop and some window vertex admit a
/// feasible detour. Enumerates every pair; no arg-min shortcut.
pub fn oracle_covers(net: &Network, route: &Route, x: &Point, params: &Params) -> bool {
    if route.contains_point(x) {
        return true;
    }
    for s in 0..route.stops().len() {
        let next = route.next_stop(s);
        let return_vertex = route.vertex_at_or_before(next);
        let return_pos = route.before_pos(next);
        for slot in route.deviation_window(s) {
            let out = net.point_distance(slot.vertex, x);
            if out > params.deviation {
                continue;
            }
            let mut trip = &out + &net.point_distance(return_vertex, x);
            trip += &route.loop_distance(&return_pos, &slot.pos);
            if trip <= params.range {
                return true;
            }
        }
    }
    false
}

/// Routes of `h` covered by `x` (indices into `h`) and the flow they carry.
pub fn covered_routes(
    net: &Network,
    h: &[&Route],
    x: &Point,
    params: &Params,
) -> (Vec<usize>, u64) {
    let mut t = Vec::new();
    let mut flow = 0u64;
    for (i, route) in h.iter().enumerate() {
        if covers(net, route, x, params).covered() {
            t.push(i);
            flow += route.flow();
        }
    }
    (t, flow)
}
