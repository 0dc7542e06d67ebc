//! Property and oracle tests: shortest paths against exhaustive enumeration,
//! coverage against the enumeration oracle, solver against brute force, and
//! the exactness properties of the length type.

mod common;

use common::{five_route_map, len};
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use refuelnet::cover::{build_instance, enumerate_all_minima, solve, Candidate, CoverInstance};
use refuelnet::coverage::{additional_distance, covered_routes, covers, oracle_covers, Coverage, Params};
use refuelnet::length::{format_exact, parse_decimal};
use refuelnet::network::Network;
use refuelnet::route::admissible_routes;
use refuelnet::scan::scan;
use refuelnet::synth::{random_instance, SynthConfig};
use refuelnet::verify::sample_points;
use refuelnet::Length;

/// Exhaustive simple-path minimum, independent of the distance table.
fn brute_force_distance(net: &Network, from: usize, to: usize) -> Length {
    fn go(
        net: &Network,
        at: usize,
        to: usize,
        seen: &mut Vec<bool>,
        acc: &Length,
        best: &mut Option<Length>,
    ) {
        if at == to {
            if best.as_ref().is_none_or(|b| acc < b) {
                *best = Some(acc.clone());
            }
            return;
        }
        for &e in net.incident_edges(refuelnet::VertexId(at)) {
            let edge = net.edge(e);
            let next = edge.other(refuelnet::VertexId(at)).0;
            if seen[next] {
                continue;
            }
            seen[next] = true;
            let total = acc + &edge.length;
            go(net, next, to, seen, &total, best);
            seen[next] = false;
        }
    }
    let mut seen = vec![false; net.vertex_count()];
    seen[from] = true;
    let mut best = None;
    go(net, from, to, &mut seen, &Length::zero(), &mut best);
    best.expect("network is connected")
}

#[test]
fn distance_table_matches_exhaustive_paths() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    let cfg = SynthConfig {
        max_vertices: 8,
        max_edges: 12,
        ..SynthConfig::default()
    };
    for _ in 0..15 {
        let (net, _, _) = random_instance(&mut rng, &cfg);
        for i in 0..net.vertex_count() {
            for j in 0..net.vertex_count() {
                let table = net
                    .vertex_distance(refuelnet::VertexId(i), refuelnet::VertexId(j))
                    .clone();
                assert_eq!(table, brute_force_distance(&net, i, j), "pair ({i},{j})");
            }
        }
    }
}

#[test]
fn triangle_inequality_holds_for_all_vertex_triples() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(32);
    let (net, _, _) = random_instance(&mut rng, &SynthConfig::default());
    let n = net.vertex_count();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ab = net.vertex_distance(refuelnet::VertexId(a), refuelnet::VertexId(b));
                let bc = net.vertex_distance(refuelnet::VertexId(b), refuelnet::VertexId(c));
                let ac = net.vertex_distance(refuelnet::VertexId(a), refuelnet::VertexId(c));
                assert!(ac <= &(ab + bc));
            }
        }
    }
}

#[test]
fn point_distance_is_one_lipschitz_along_edges() {
    let (net, _, _) = five_route_map();
    let v = net.vertex("v1").unwrap();
    for (id, edge) in net.edges() {
        let mut prev: Option<(Length, Length)> = None;
        for j in 0..=16u64 {
            let offset = Length::from_ratio(
                edge.length.as_ratio()
                    * num_rational::BigRational::new((j as i64).into(), 16.into()),
            )
            .unwrap();
            let p = net.point_on_edge(id, offset.clone()).unwrap();
            let d = net.point_distance(v, &p);
            if let Some((po, pd)) = prev {
                let step = offset.checked_sub(&po).unwrap();
                let diff = d.sub_signed(&pd).abs();
                assert!(diff <= step.as_ratio().clone(), "edge {id:?} step {j}");
            }
            prev = Some((offset, d));
        }
    }
}

#[test]
fn five_route_map_lengths_match_the_benchmark() {
    let (_net, routes, params) = five_route_map();
    let lengths: Vec<String> = routes.iter().map(|r| r.length().to_string()).collect();
    assert_eq!(lengths, vec!["31", "47", "30", "40", "98"]);
    // All admissible at range 100; the longest route drops at 97.
    assert_eq!(admissible_routes(&routes, &params.range).len(), 5);
    let kept = admissible_routes(&routes, &len("97"));
    assert_eq!(kept.len(), 4);
    assert!(kept.iter().all(|r| r.id() != "U5"));
    // Dense stops double the traversal count.
    assert_eq!(routes[0].stops().len(), 12);
}

#[test]
fn dense_coverage_matches_oracle_everywhere() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
    for round in 0..25 {
        let (net, routes, params) = random_instance(&mut rng, &SynthConfig::default());
        let h = admissible_routes(&routes, &params.range);
        for x in sample_points(&net, 8) {
            for route in &h {
                let a = covers(&net, route, &x, &params).covered();
                let b = oracle_covers(&net, route, &x, &params);
                assert_eq!(a, b, "round {round} route {} point {:?}", route.id(), x);
            }
        }
    }
}

#[test]
fn pipeline_coverage_implies_oracle_with_explicit_stops() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(34);
    let cfg = SynthConfig {
        explicit_stops: true,
        ..SynthConfig::default()
    };
    for _ in 0..25 {
        let (net, routes, params) = random_instance(&mut rng, &cfg);
        let h = admissible_routes(&routes, &params.range);
        for x in sample_points(&net, 6) {
            for route in &h {
                if covers(&net, route, &x, &params).covered() {
                    assert!(oracle_covers(&net, route, &x, &params));
                }
            }
        }
    }
}

#[test]
fn coverage_is_monotone_in_the_parameters() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(35);
    for _ in 0..10 {
        let (net, routes, params) = random_instance(&mut rng, &SynthConfig::default());
        let wider = Params::new(
            &params.deviation + &len("2"),
            &params.range + &len("5"),
        )
        .unwrap();
        let h = admissible_routes(&routes, &params.range);
        for x in sample_points(&net, 4) {
            for route in &h {
                if covers(&net, route, &x, &params).covered() {
                    assert!(covers(&net, route, &x, &wider).covered());
                }
            }
        }
    }
}

#[test]
fn extra_driving_distance_matches_a_simulated_trip() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(36);
    for _ in 0..15 {
        let (net, routes, params) = random_instance(&mut rng, &SynthConfig::default());
        let h = admissible_routes(&routes, &params.range);
        let two_d = &params.deviation + &params.deviation;
        for x in sample_points(&net, 6) {
            for route in &h {
                if let Coverage::Deviates(plan) = covers(&net, route, &x, &params) {
                    let ad = additional_distance(&plan, &params).unwrap();
                    assert!(ad <= two_d.as_ratio().clone());
                    // Out-leg plus return-leg minus the skipped walk segment.
                    let drive = (&plan.deviation_out + &plan.return_leg)
                        .sub_signed(&plan.skipped);
                    assert_eq!(ad, drive);
                }
            }
        }
    }
}

#[test]
fn class_dedup_preserves_the_optimum() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
    for _ in 0..10 {
        let (net, routes, params) = random_instance(&mut rng, &SynthConfig::default());
        let result = scan(&net, &routes, &params);
        if result.endpoints.is_empty() {
            continue;
        }
        let classes = build_instance(&result).unwrap();
        let raw = CoverInstance::new(
            result.route_ids.clone(),
            result.route_flows.clone(),
            result
                .endpoints
                .iter()
                .map(|ep| Candidate {
                    label: ep.id.clone(),
                    signature: ep.signature.clone(),
                    flow: ep.flow,
                })
                .collect(),
        );
        let raw = match raw {
            Ok(inst) => inst,
            Err(_) => continue, // some admissible route covered by no endpoint: impossible
        };
        assert_eq!(solve(&classes).unwrap().p, solve(&raw).unwrap().p);
    }
}

#[test]
fn solver_matches_brute_force_on_scanned_instances() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(38);
    for _ in 0..10 {
        let (net, routes, params) = random_instance(&mut rng, &SynthConfig::default());
        let result = scan(&net, &routes, &params);
        let inst = match build_instance(&result) {
            Ok(i) => i,
            Err(_) => continue,
        };
        if inst.candidates.len() > 20 || inst.route_count() == 0 {
            continue;
        }
        let p = solve(&inst).unwrap().p;
        let n = inst.candidates.len();
        let mut brute = usize::MAX;
        for mask in 0u32..(1u32 << n) {
            let mut covered = vec![false; inst.route_count()];
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    for &r in &inst.candidates[c].signature {
                        covered[r] = true;
                    }
                }
            }
            if covered.iter().all(|&x| x) {
                brute = brute.min(mask.count_ones() as usize);
            }
        }
        assert_eq!(p, brute);
        // Every enumerated optimum covers, none is shrinkable.
        let all = enumerate_all_minima(&inst).unwrap();
        for optimum in &all.optima {
            assert_eq!(optimum.len(), p);
            let mut covered = vec![false; inst.route_count()];
            for &c in optimum {
                for &r in &inst.candidates[c].signature {
                    covered[r] = true;
                }
            }
            assert!(covered.iter().all(|&x| x));
        }
    }
}

#[test]
fn station_count_is_monotone_in_deviation_and_range() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(39);
    for _ in 0..8 {
        let (net, routes, params) = random_instance(&mut rng, &SynthConfig::default());
        let mut last_p: Option<usize> = None;
        for d in 0..=4u64 {
            let p = Params::new(Length::from_int(d), params.range.clone()).unwrap();
            let result = scan(&net, &routes, &p);
            let inst = match build_instance(&result) {
                Ok(i) => i,
                Err(_) => continue,
            };
            let sol = solve(&inst).unwrap();
            if let Some(prev) = last_p {
                assert!(sol.p <= prev, "p must not grow as the deviation bound grows");
            }
            last_p = Some(sol.p);
        }
        // Growing range with H pinned (range already covers every route).
        let mut last_p: Option<usize> = None;
        for extra in 0..=3u64 {
            let p = Params::new(
                params.deviation.clone(),
                &params.range + &Length::from_int(extra * 7),
            )
            .unwrap();
            let result = scan(&net, &routes, &p);
            assert_eq!(result.stats.admissible, admissible_routes(&routes, &params.range).len());
            let inst = match build_instance(&result) {
                Ok(i) => i,
                Err(_) => continue,
            };
            let sol = solve(&inst).unwrap();
            if let Some(prev) = last_p {
                assert!(sol.p <= prev, "p must not grow as the range grows at fixed H");
            }
            last_p = Some(sol.p);
        }
    }
}

#[test]
fn distant_points_cover_nothing() {
    // Two triangle loops joined by a length-6 road; with a deviation bound of
    // 2 the middle of the road is beyond reach of both.
    let net = common::build_net(
        &["v3", "a1", "a2", "v10", "b1", "b2"],
        &[
            ("v3", "a1", "2"),
            ("a1", "a2", "2"),
            ("a2", "v3", "2"),
            ("v10", "b1", "2"),
            ("b1", "b2", "2"),
            ("b2", "v10", "2"),
            ("v3", "v10", "6"),
        ],
    );
    let u1 = common::dense_route(&net, "U1", 10, &[("v3", "a1"), ("a1", "a2"), ("a2", "v3")]);
    let u2 = common::dense_route(&net, "U2", 10, &[("v10", "b1"), ("b1", "b2"), ("b2", "v10")]);
    let routes = vec![u1, u2];
    let params = Params::new(len("2"), len("100")).unwrap();
    let h = admissible_routes(&routes, &params.range);
    let e = net
        .edge_between(net.vertex("v3").unwrap(), net.vertex("v10").unwrap())
        .unwrap();
    let mid = net.point_on_edge(e, len("3")).unwrap();
    let (t, flow) = covered_routes(&net, &h, &mid, &params);
    assert!(t.is_empty());
    assert_eq!(flow, 0);
}

#[test]
fn on_route_points_carry_their_routes() {
    let (net, routes, params) = five_route_map();
    let h = admissible_routes(&routes, &params.range);
    // A point on the loop through v25..v27 is only reachable by that route.
    let v25 = net.vertex("v25").unwrap();
    let v26 = net.vertex("v26").unwrap();
    let e = net.edge_between(v25, v26).unwrap();
    let x = net.point_on_edge(e, len("2")).unwrap();
    let (t, flow) = covered_routes(&net, &h, &x, &params);
    let names: Vec<&str> = t.iter().map(|&i| h[i].id()).collect();
    assert_eq!(names, vec!["U5"]);
    assert_eq!(flow, 5);
}

proptest! {
    #[test]
    fn decimal_strings_round_trip(int in 0u64..1_000_000, frac in 0u32..100_000, digits in 0usize..6) {
        let s = if digits == 0 {
            format!("{int}")
        } else {
            format!("{int}.{frac:0>width$}", width = digits)
        };
        let parsed: Length = s.parse().unwrap();
        let shown = parsed.to_string();
        let reparsed: Length = shown.parse().unwrap();
        prop_assert_eq!(&parsed, &reparsed);
        // Canonical form is a fixpoint of display.
        prop_assert_eq!(shown.clone(), reparsed.to_string());
    }

    #[test]
    fn parse_display_agrees_with_rational_value(num in 0i64..10_000, den_pow in 0u32..6) {
        let den = 10i64.pow(den_pow);
        let r = num_rational::BigRational::new(num.into(), den.into());
        let shown = format_exact(&r);
        prop_assert_eq!(parse_decimal(&shown).unwrap(), r);
    }
}

#[test]
fn subroute_partition_reproduces_route_length() {
    let (_net, routes, _) = five_route_map();
    let route = &routes[4];
    use refuelnet::route::WalkPos;
    let cuts: Vec<WalkPos> = (0..route.traversals().len())
        .step_by(3)
        .map(|t| WalkPos {
            traversal: t,
            offset: len("1"),
        })
        .collect();
    let mut sum = Length::zero();
    for i in 0..cuts.len() {
        let j = (i + 1) % cuts.len();
        sum += &route.subroute_length(&cuts[i], &cuts[j]).unwrap();
    }
    assert_eq!(&sum, route.length());
}
