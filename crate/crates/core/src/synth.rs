//! Random problem instances for property tests and randomized verification.
//!
//! Vertices are distinct grid points and every edge gets the Manhattan
//! distance between its ends, so each edge is itself a shortest path and the
//! triangle inequality holds by construction.

use crate::coverage::Params;
use crate::length::Length;
use crate::network::{Network, VertexId};
use crate::route::{Route, Stop, StopSpec};
use rand::Rng;

#[derive(Clone, Debug)]
pub struct SynthConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_routes: usize,
    /// Upper bound for the deviation parameter (inclusive, integer miles).
    pub max_deviation: u64,
    /// Extra range beyond the longest route (inclusive, integer miles).
    pub max_range_slack: u64,
    /// Use explicit random stops instead of the dense convention.
    pub explicit_stops: bool,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            max_vertices: 12,
            max_edges: 20,
            max_routes: 4,
            max_deviation: 6,
            max_range_slack: 20,
            explicit_stops: false,
        }
    }
}

fn manhattan(a: (i64, i64), b: (i64, i64)) -> u64 {
    ((a.0 - b.0).abs() + (a.1 - b.1).abs()) as u64
}

/// A connected network, a handful of closed-walk routes, and parameters.
pub fn random_instance<R: Rng>(rng: &mut R, cfg: &SynthConfig) -> (Network, Vec<Route>, Params) {
    let n = rng.gen_range(4..=cfg.max_vertices.max(4));
    let mut coords: Vec<(i64, i64)> = Vec::with_capacity(n);
    while coords.len() < n {
        let p = (rng.gen_range(0..12), rng.gen_range(0..12));
        if !coords.contains(&p) {
            coords.push(p);
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("v{}", i + 1)).collect();

    // Spanning tree first, then extra chords.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        pairs.push((j, i));
    }
    let extra = rng.gen_range(0..=cfg.max_edges.saturating_sub(pairs.len()));
    let mut attempts = 0;
    while pairs.len() < (n - 1) + extra && attempts < 200 {
        attempts += 1;
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if pairs.iter().any(|&(x, y)| (x.min(y), x.max(y)) == key) {
            continue;
        }
        pairs.push(key);
    }
    let edges: Vec<(String, String, Length)> = pairs
        .iter()
        .map(|&(a, b)| {
            (
                names[a].clone(),
                names[b].clone(),
                Length::from_int(manhattan(coords[a], coords[b])),
            )
        })
        .collect();
    let net = Network::build(names.clone(), edges).expect("metric lengths always validate");

    let adjacency: Vec<Vec<usize>> = {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &pairs {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    };

    let h = rng.gen_range(1..=cfg.max_routes.max(1));
    let mut routes = Vec::with_capacity(h);
    for t in 0..h {
        let walk = random_closed_walk(rng, &adjacency);
        let walk_ids: Vec<(VertexId, VertexId)> = walk
            .iter()
            .map(|&(a, b)| (VertexId(a), VertexId(b)))
            .collect();
        let stops = if cfg.explicit_stops {
            random_stops(rng, &net, &walk_ids)
        } else {
            StopSpec::Dense
        };
        let flow = rng.gen_range(1..=40u64);
        routes.push(
            Route::new(&net, format!("U{}", t + 1), flow, &walk_ids, stops)
                .expect("generated walks are closed"),
        );
    }

    let deviation = Length::from_int(rng.gen_range(0..=cfg.max_deviation));
    let longest = routes
        .iter()
        .map(|r| r.length().clone())
        .max()
        .expect("at least one route");
    let range = &longest + &Length::from_int(rng.gen_range(1..=cfg.max_range_slack.max(1)));
    let params = Params::new(deviation, range).expect("positive range");
    (net, routes, params)
}

/// Either a random walk that happens to close, or an out-and-back palindrome
/// (which exercises repeated edges in both directions).
fn random_closed_walk<R: Rng>(rng: &mut R, adjacency: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = adjacency.len();
    let start = rng.gen_range(0..n);
    if rng.gen_bool(0.5) {
        for _ in 0..8 {
            let mut walk = Vec::new();
            let mut at = start;
            for _ in 0..rng.gen_range(3..=9usize) {
                let next = adjacency[at][rng.gen_range(0..adjacency[at].len())];
                walk.push((at, next));
                at = next;
                if at == start && walk.len() >= 2 {
                    return walk;
                }
            }
        }
    }
    // Out and back along a random simple path.
    let mut path = vec![start];
    let mut at = start;
    for _ in 0..rng.gen_range(1..=4usize) {
        let options: Vec<usize> = adjacency[at]
            .iter()
            .copied()
            .filter(|v| !path.contains(v))
            .collect();
        if options.is_empty() {
            break;
        }
        at = options[rng.gen_range(0..options.len())];
        path.push(at);
    }
    if path.len() < 2 {
        let next = adjacency[start][0];
        path.push(next);
    }
    let mut walk = Vec::new();
    for w in path.windows(2) {
        walk.push((w[0], w[1]));
    }
    for w in path.windows(2).rev() {
        walk.push((w[1], w[0]));
    }
    walk
}

fn random_stops<R: Rng>(rng: &mut R, net: &Network, walk: &[(VertexId, VertexId)]) -> StopSpec {
    // Quarter-point offsets keep the arithmetic small and exact.
    let count = rng.gen_range(1..=walk.len().min(4));
    let mut picks: Vec<(usize, u8)> = (0..count)
        .map(|_| (rng.gen_range(0..walk.len()), rng.gen_range(0..=4u8)))
        .collect();
    picks.sort_unstable();
    picks.dedup();
    let stops = picks
        .into_iter()
        .map(|(t, quarters)| {
            let edge = net
                .edge_between(walk[t].0, walk[t].1)
                .expect("walk edges exist");
            let offset = Length::from_ratio(
                net.edge(edge).length.as_ratio()
                    * num_rational::BigRational::new((quarters as i64).into(), 4.into()),
            )
            .expect("offset within edge");
            Stop {
                traversal: t,
                offset,
            }
        })
        .collect();
    StopSpec::Explicit(stops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generated_instances_validate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (net, routes, params) = random_instance(&mut rng, &SynthConfig::default());
            assert!(net.vertex_count() >= 4);
            assert!(!routes.is_empty());
            for r in &routes {
                assert!(r.length() <= &params.range);
            }
        }
    }

    #[test]
    fn explicit_stop_instances_validate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let cfg = SynthConfig {
            explicit_stops: true,
            ..SynthConfig::default()
        };
        for _ in 0..20 {
            let (_, routes, _) = random_instance(&mut rng, &cfg);
            assert!(routes.iter().all(|r| !r.is_dense()));
        }
    }
}
