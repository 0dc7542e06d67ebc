//! Shared fixture builders for integration tests.

use refuelnet::coverage::Params;
use refuelnet::network::Network;
use refuelnet::route::{Route, StopSpec};
use refuelnet::Length;

pub fn len(s: &str) -> Length {
    s.parse().unwrap()
}

pub fn build_net(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Network {
    Network::build(
        vertices.iter().map(|s| s.to_string()).collect(),
        edges
            .iter()
            .map(|(u, v, l)| (u.to_string(), v.to_string(), len(l)))
            .collect(),
    )
    .unwrap()
}

pub fn dense_route(net: &Network, id: &str, flow: u64, walk: &[(&str, &str)]) -> Route {
    let ids: Vec<_> = walk
        .iter()
        .map(|(a, b)| (net.vertex(a).unwrap(), net.vertex(b).unwrap()))
        .collect();
    Route::new(net, id, flow, &ids, StopSpec::Dense).unwrap()
}

/// Route lengths of the five-route benchmark (31, 47, 30, 40, 98) on a
/// reduced map whose per-edge lengths are chosen to reproduce those totals.
pub fn five_route_map() -> (Network, Vec<Route>, Params) {
    let vertices = [
        "v1", "v2", "v3", "v4", "v5", "v6", "v8", "v9", "v10", "v11", "v12", "v13", "v14",
        "v15", "v16", "v17", "v18", "v19", "v20", "v21", "v22", "v23", "v24", "v25", "v26",
        "v27",
    ];
    let edges = [
        ("v1", "v2", "6"),
        ("v2", "v6", "5"),
        ("v6", "v5", "4"),
        ("v5", "v4", "5"),
        ("v4", "v3", "6"),
        ("v3", "v1", "5"),
        ("v10", "v11", "6"),
        ("v11", "v16", "5"),
        ("v16", "v19", "5"),
        ("v19", "v20", "5"),
        ("v20", "v24", "6"),
        ("v24", "v23", "5"),
        ("v23", "v22", "5"),
        ("v22", "v21", "5"),
        ("v21", "v10", "5"),
        ("v16", "v17", "5"),
        ("v17", "v18", "5"),
        ("v18", "v15", "5"),
        ("v15", "v12", "5"),
        ("v12", "v11", "5"),
        ("v8", "v9", "4"),
        ("v9", "v14", "5"),
        ("v14", "v24", "6"),
        ("v24", "v18", "6"),
        ("v15", "v13", "7"),
        ("v13", "v8", "7"),
        ("v6", "v8", "5"),
        ("v24", "v25", "5"),
        ("v25", "v26", "4"),
        ("v26", "v27", "4"),
        ("v27", "v25", "4"),
        ("v10", "v3", "20"),
    ];
    let net = build_net(&vertices, &edges);
    let u1 = dense_route(
        &net,
        "U1",
        25,
        &[
            ("v1", "v2"),
            ("v2", "v6"),
            ("v6", "v5"),
            ("v5", "v4"),
            ("v4", "v3"),
            ("v3", "v1"),
        ],
    );
    let u2 = dense_route(
        &net,
        "U2",
        30,
        &[
            ("v10", "v11"),
            ("v11", "v16"),
            ("v16", "v19"),
            ("v19", "v20"),
            ("v20", "v24"),
            ("v24", "v23"),
            ("v23", "v22"),
            ("v22", "v21"),
            ("v21", "v10"),
        ],
    );
    let u3 = dense_route(
        &net,
        "U3",
        15,
        &[
            ("v11", "v16"),
            ("v16", "v17"),
            ("v17", "v18"),
            ("v18", "v15"),
            ("v15", "v12"),
            ("v12", "v11"),
        ],
    );
    let u4 = dense_route(
        &net,
        "U4",
        10,
        &[
            ("v8", "v9"),
            ("v9", "v14"),
            ("v14", "v24"),
            ("v24", "v18"),
            ("v18", "v15"),
            ("v15", "v13"),
            ("v13", "v8"),
        ],
    );
    let u5 = dense_route(
        &net,
        "U5",
        5,
        &[
            ("v1", "v2"),
            ("v2", "v6"),
            ("v6", "v8"),
            ("v8", "v9"),
            ("v9", "v14"),
            ("v14", "v24"),
            ("v24", "v25"),
            ("v25", "v26"),
            ("v26", "v27"),
            ("v27", "v25"),
            ("v25", "v24"),
            ("v24", "v23"),
            ("v23", "v22"),
            ("v22", "v21"),
            ("v21", "v10"),
            ("v10", "v3"),
            ("v3", "v1"),
        ],
    );
    let params = Params::new(len("4"), len("100")).unwrap();
    (net, vec![u1, u2, u3, u4, u5], params)
}
