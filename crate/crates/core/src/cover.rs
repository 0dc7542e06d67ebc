//! Exact minimum set cover over candidate classes, enumeration of every
//! minimum cover, and expansion of alternatives (signature-equal endpoints
//! and interior segments that preserve optimality).

use crate::coverage::{covered_routes, Params};
use crate::length::Length;
use crate::network::{EdgeId, Network, Point};
use crate::route::Route;
use crate::scan::{CandidateClass, ScanResult};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("route `{0}` is not covered by any candidate")]
    UncoverableRoute(String),
    #[error("signature references undeclared route `{0}`")]
    UnknownRoute(String),
    #[error("duplicate route id `{0}`")]
    DuplicateRoute(String),
    #[error("instance is infeasible")]
    Infeasible,
    #[error("enumeration would visit about {0} subsets; refusing")]
    TooLarge(u128),
    #[error("more than {0} routes are not supported by the solver")]
    TooManyRoutes(usize),
}

const MAX_ROUTES: usize = 128;
const ENUMERATION_GUARD: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct Candidate {
    pub label: String,
    /// Route indices covered, ascending.
    pub signature: Vec<usize>,
    pub flow: u64,
}

/// Set covering instance: candidates vs. routes, with the binary coverage
/// matrix implied by the signatures.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub route_ids: Vec<String>,
    pub route_flows: Vec<u64>,
    pub candidates: Vec<Candidate>,
}

impl CoverInstance {
    pub fn new(
        route_ids: Vec<String>,
        route_flows: Vec<u64>,
        candidates: Vec<Candidate>,
    ) -> Result<CoverInstance, CoverError> {
        if route_ids.len() > MAX_ROUTES {
            return Err(CoverError::TooManyRoutes(MAX_ROUTES));
        }
        let inst = CoverInstance {
            route_ids,
            route_flows,
            candidates,
        };
        for (r, id) in inst.route_ids.iter().enumerate() {
            if !inst.candidates.iter().any(|c| c.signature.contains(&r)) {
                return Err(CoverError::UncoverableRoute(id.clone()));
            }
        }
        Ok(inst)
    }

    /// Build from declared routes and labeled signature rows (classes input).
    pub fn from_rows(
        routes: Vec<(String, u64)>,
        rows: Vec<(String, Vec<String>)>,
    ) -> Result<CoverInstance, CoverError> {
        let mut index = BTreeMap::new();
        for (i, (id, _)) in routes.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(CoverError::DuplicateRoute(id.clone()));
            }
        }
        let mut candidates = Vec::with_capacity(rows.len());
        for (label, covers) in rows {
            let mut signature = Vec::with_capacity(covers.len());
            for name in covers {
                let &i = index
                    .get(&name)
                    .ok_or(CoverError::UnknownRoute(name.clone()))?;
                signature.push(i);
            }
            signature.sort_unstable();
            signature.dedup();
            let flow = signature.iter().map(|&i| routes[i].1).sum();
            candidates.push(Candidate {
                label,
                signature,
                flow,
            });
        }
        let (ids, flows) = routes.into_iter().unzip();
        CoverInstance::new(ids, flows, candidates)
    }

    pub fn route_count(&self) -> usize {
        self.route_ids.len()
    }

    /// Coverage matrix entry: candidate `c` covers route `r`.
    pub fn covers(&self, c: usize, r: usize) -> bool {
        self.candidates[c].signature.contains(&r)
    }

    fn masks(&self) -> Vec<u128> {
        self.candidates
            .iter()
            .map(|c| c.signature.iter().fold(0u128, |m, &r| m | (1u128 << r)))
            .collect()
    }

    fn full_mask(&self) -> u128 {
        if self.route_ids.is_empty() {
            0
        } else {
            (!0u128) >> (128 - self.route_ids.len())
        }
    }

    /// Deterministic solver order: descending covered flow, then label.
    pub fn solver_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.candidates.len()).collect();
        order.sort_by(|&a, &b| {
            self.candidates[b]
                .flow
                .cmp(&self.candidates[a].flow)
                .then_with(|| self.candidates[a].label.cmp(&self.candidates[b].label))
        });
        order
    }
}

/// One candidate per unique signature, built from a scan.
pub fn build_instance(scan: &ScanResult) -> Result<CoverInstance, CoverError> {
    let candidates = scan
        .classes
        .iter()
        .map(|class: &CandidateClass| Candidate {
            label: scan.endpoints[class.representative].id.clone(),
            signature: class.signature.clone(),
            flow: scan.endpoints[class.representative].flow,
        })
        .collect();
    CoverInstance::new(scan.route_ids.clone(), scan.route_flows.clone(), candidates)
}

/// Discrete comparison instance: vertices as the only candidates, grouped by
/// coverage signature.
pub fn vertex_instance(
    net: &Network,
    routes: &[Route],
    params: &Params,
) -> Result<CoverInstance, CoverError> {
    let h: Vec<&Route> = crate::route::admissible_routes(routes, &params.range);
    let mut groups: BTreeMap<Vec<usize>, (usize, Vec<usize>)> = BTreeMap::new();
    for v in net.vertices() {
        let (sig, _) = covered_routes(net, &h, &Point::Vertex(v), params);
        if sig.is_empty() {
            continue;
        }
        let entry = groups.entry(sig).or_insert((v.0, Vec::new()));
        entry.1.push(v.0);
    }
    let mut rows: Vec<(usize, Candidate)> = groups
        .into_iter()
        .map(|(signature, (first, _members))| {
            let flow = signature.iter().map(|&i| h[i].flow()).sum();
            (
                first,
                Candidate {
                    label: net.vertex_name(crate::network::VertexId(first)).to_string(),
                    signature,
                    flow,
                },
            )
        })
        .collect();
    rows.sort_by_key(|(first, _)| *first);
    let candidates = rows.into_iter().map(|(_, c)| c).collect();
    CoverInstance::new(
        h.iter().map(|r| r.id().to_string()).collect(),
        h.iter().map(|r| r.flow()).collect(),
        candidates,
    )
}

/// Minimum covers. `optima` holds candidate-index sets of size `p`;
/// `complete` marks whether every minimum cover is listed.
#[derive(Clone, Debug)]
pub struct CoverSolution {
    pub p: usize,
    pub optima: Vec<Vec<usize>>,
    pub complete: bool,
}

struct Search<'a> {
    order: &'a [usize],
    masks: &'a [u128],
    full: u128,
    best: Option<Vec<usize>>,
}

impl Search<'_> {
    /// Number of still-uncovered routes no two of which share a candidate;
    /// each needs its own station.
    fn lower_bound(&self, covered: u128) -> usize {
        let mut bound = 0usize;
        let mut used: Vec<usize> = Vec::new();
        let n = 128 - self.full.leading_zeros() as usize;
        for r in 0..n {
            if covered & (1u128 << r) != 0 {
                continue;
            }
            let owners: Vec<usize> = (0..self.masks.len())
                .filter(|&c| self.masks[c] & (1u128 << r) != 0)
                .collect();
            if owners.iter().all(|c| !used.contains(c)) {
                bound += 1;
                used.extend(owners);
            }
        }
        bound
    }

    fn dfs(&mut self, covered: u128, chosen: &mut Vec<usize>) {
        if covered == self.full {
            if self.best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                self.best = Some(chosen.clone());
            }
            return;
        }
        if let Some(b) = &self.best {
            if chosen.len() + self.lower_bound(covered) >= b.len() {
                return;
            }
        }
        // Branch on the uncovered route with the fewest remaining options.
        let n = 128 - self.full.leading_zeros() as usize;
        let mut pick = None;
        for r in 0..n {
            if covered & (1u128 << r) != 0 {
                continue;
            }
            let count = self
                .order
                .iter()
                .filter(|&&c| self.masks[c] & (1u128 << r) != 0)
                .count();
            if pick.is_none_or(|(best_count, _)| count < best_count) {
                pick = Some((count, r));
            }
        }
        let (_, route) = pick.expect("some route is uncovered");
        for &c in self.order {
            if self.masks[c] & (1u128 << route) == 0 || chosen.contains(&c) {
                continue;
            }
            chosen.push(c);
            self.dfs(covered | self.masks[c], chosen);
            chosen.pop();
        }
    }
}

/// Exact minimum cover via branch and bound; returns the deterministic first
/// optimum only.
pub fn solve(inst: &CoverInstance) -> Result<CoverSolution, CoverError> {
    if inst.route_count() == 0 {
        return Ok(CoverSolution {
            p: 0,
            optima: vec![Vec::new()],
            complete: true,
        });
    }
    let order = inst.solver_order();
    let masks = inst.masks();
    let full = inst.full_mask();
    let union = masks.iter().fold(0u128, |m, &x| m | x);
    if union != full {
        return Err(CoverError::Infeasible);
    }
    let mut search = Search {
        order: &order,
        masks: &masks,
        full,
        best: None,
    };
    search.dfs(0, &mut Vec::new());
    let mut best = search.best.ok_or(CoverError::Infeasible)?;
    best.sort_unstable();
    Ok(CoverSolution {
        p: best.len(),
        optima: vec![best],
        complete: false,
    })
}

fn combinations(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > ENUMERATION_GUARD {
            return u128::MAX;
        }
    }
    acc
}

/// Every minimum cover, in deterministic order.
pub fn enumerate_all_minima(inst: &CoverInstance) -> Result<CoverSolution, CoverError> {
    let first = solve(inst)?;
    let p = first.p;
    if p == 0 {
        return Ok(first);
    }
    let c = inst.candidates.len() as u128;
    let combos = combinations(c, p as u128);
    if combos > ENUMERATION_GUARD {
        return Err(CoverError::TooLarge(combos));
    }
    let masks = inst.masks();
    let full = inst.full_mask();
    // Suffix unions over index order let the search bail early.
    let n = inst.candidates.len();
    let mut suffix = vec![0u128; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] | masks[i];
    }
    struct Enumeration<'a> {
        p: usize,
        masks: &'a [u128],
        suffix: &'a [u128],
        full: u128,
        optima: Vec<Vec<usize>>,
    }
    impl Enumeration<'_> {
        fn rec(&mut self, at: usize, covered: u128, chosen: &mut Vec<usize>) {
            if chosen.len() == self.p {
                if covered == self.full {
                    self.optima.push(chosen.clone());
                }
                return;
            }
            if at >= self.masks.len() || covered | self.suffix[at] != self.full {
                return;
            }
            chosen.push(at);
            self.rec(at + 1, covered | self.masks[at], chosen);
            chosen.pop();
            self.rec(at + 1, covered, chosen);
        }
    }
    let mut search = Enumeration {
        p,
        masks: &masks,
        suffix: &suffix,
        full,
        optima: Vec::new(),
    };
    search.rec(0, 0, &mut Vec::new());
    Ok(CoverSolution {
        p,
        optima: search.optima,
        complete: true,
    })
}

/// An interval of station positions that keeps a cover optimal.
#[derive(Clone, Debug)]
pub struct AltSegment {
    pub edge: EdgeId,
    pub lo: Length,
    pub hi: Length,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

/// Alternatives for one selected class: every signature-equal endpoint, plus
/// maximal segments whose points can replace the class's station.
#[derive(Clone, Debug)]
pub struct ClassExpansion {
    pub class: usize,
    pub members: Vec<usize>,
    pub segments: Vec<AltSegment>,
}

/// For each class selected in `optimum`, find every placement that preserves
/// total coverage: member endpoints, and interior intervals between adjacent
/// endpoints whose probed coverage still completes the cover.
pub fn expand_alternatives(
    net: &Network,
    routes: &[Route],
    params: &Params,
    scan: &ScanResult,
    optimum: &[usize],
) -> Vec<ClassExpansion> {
    let h = scan.admissible_routes(routes);
    let full: Vec<usize> = (0..h.len()).collect();

    // Offsets of every endpoint on every edge it lies on.
    let mut per_edge: BTreeMap<EdgeId, Vec<(Length, usize)>> = BTreeMap::new();
    for (i, ep) in scan.endpoints.iter().enumerate() {
        let edges: Vec<EdgeId> = match &ep.point {
            Point::Vertex(v) => net.incident_edges(*v).to_vec(),
            Point::OnEdge { edge, .. } => vec![*edge],
        };
        for e in edges {
            if let Some(off) = ep.point.offset_on(net, e) {
                per_edge.entry(e).or_default().push((off, i));
            }
        }
    }
    for list in per_edge.values_mut() {
        list.sort();
    }

    let mut out = Vec::new();
    for &class_idx in optimum {
        let class = &scan.classes[class_idx];
        let mut others: Vec<usize> = Vec::new();
        for &other in optimum {
            if other != class_idx {
                others.extend(scan.classes[other].signature.iter().copied());
            }
        }
        others.sort_unstable();
        others.dedup();
        let missing: Vec<usize> = full
            .iter()
            .copied()
            .filter(|r| !others.contains(r))
            .collect();
        let qualifies = |sig: &[usize]| missing.iter().all(|r| sig.contains(r));

        let mut segments = Vec::new();
        for (&edge, list) in &per_edge {
            // Walk endpoint/interval elements along the edge and merge maximal
            // qualifying runs that contain at least one open interval.
            // Run state: (lo idx, lo closed, hi idx, hi closed).
            let mut run: Option<(usize, bool, usize, bool)> = None;
            let flush = |run: &mut Option<(usize, bool, usize, bool)>,
                         segments: &mut Vec<AltSegment>| {
                if let Some((lo, lo_closed, hi, hi_closed)) = run.take() {
                    segments.push(AltSegment {
                        edge,
                        lo: list[lo].0.clone(),
                        hi: list[hi].0.clone(),
                        lo_closed,
                        hi_closed,
                    });
                }
            };
            for w in 0..list.len() {
                let ep_ok = qualifies(&scan.endpoints[list[w].1].signature);
                if w > 0 {
                    let probe = crate::scan::interior_probe(
                        net, scan, routes, params, list[w - 1].1, list[w].1,
                    );
                    let int_ok = probe.map(|cov| qualifies(&cov)).unwrap_or(false);
                    if int_ok {
                        let prev_ok = qualifies(&scan.endpoints[list[w - 1].1].signature);
                        match &mut run {
                            Some(r) => {
                                r.2 = w;
                                r.3 = ep_ok;
                            }
                            None => run = Some((w - 1, prev_ok, w, ep_ok)),
                        }
                    } else {
                        flush(&mut run, &mut segments);
                    }
                }
                if !ep_ok {
                    // A station cannot sit exactly here; any run ends open.
                    flush(&mut run, &mut segments);
                }
            }
            flush(&mut run, &mut segments);
        }
        out.push(ClassExpansion {
            class: class_idx,
            members: class.members.clone(),
            segments,
        });
    }
    out
}
