//! Input file formats. Two granularities: a full problem file (network,
//! routes, parameters) and a classes file (coverage signature rows only) for
//! geometry-free solves. All numbers travel as decimal strings.

use anyhow::{anyhow, bail, Context, Result};
use refuelnet::cover::CoverInstance;
use refuelnet::coverage::Params;
use refuelnet::network::Network;
use refuelnet::route::{Route, Stop, StopSpec};
use refuelnet::scan::ScanResult;
use refuelnet::Length;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct ProblemFile {
    pub network: NetworkSection,
    #[serde(rename = "route", default)]
    pub routes: Vec<RouteSection>,
    pub params: ParamsSection,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct NetworkSection {
    pub vertices: Vec<String>,
    /// Rows of `[u, v, length]`.
    pub edges: Vec<(String, String, String)>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct RouteSection {
    pub id: String,
    pub flow: u64,
    /// Directed edge passes `[from, to]`, forming a closed walk.
    pub traversals: Vec<(String, String)>,
    #[serde(default)]
    pub stops: StopsSection,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
#[serde(untagged)]
pub enum StopsSection {
    /// The marker string `"dense"`.
    Mode(String),
    /// Rows of `[traversal index, offset]`.
    Explicit(Vec<(usize, String)>),
}

impl Default for StopsSection {
    fn default() -> Self {
        StopsSection::Mode("dense".to_string())
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct ParamsSection {
    pub deviation: String,
    pub range: String,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        toml::from_str(text).map_err(|e| anyhow!("problem file: {e}"))
    }

    pub fn load(path: &Path) -> Result<ProblemFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem files always serialize")
    }

    /// Validate and build the model: network, routes, parameters.
    pub fn build(&self) -> Result<(Network, Vec<Route>, Params)> {
        let mut edges = Vec::with_capacity(self.network.edges.len());
        for (u, v, l) in &self.network.edges {
            let length: Length = l
                .parse()
                .map_err(|e| anyhow!("edge ({u},{v}) length: {e}"))?;
            edges.push((u.clone(), v.clone(), length));
        }
        let net = Network::build(self.network.vertices.clone(), edges)?;
        let mut routes = Vec::with_capacity(self.routes.len());
        for r in &self.routes {
            let mut walk = Vec::with_capacity(r.traversals.len());
            for (from, to) in &r.traversals {
                walk.push((net.vertex(from)?, net.vertex(to)?));
            }
            let stops = match &r.stops {
                StopsSection::Mode(m) if m == "dense" => StopSpec::Dense,
                StopsSection::Mode(m) => bail!("route {}: unknown stops mode `{m}`", r.id),
                StopsSection::Explicit(rows) => {
                    let mut stops = Vec::with_capacity(rows.len());
                    for (traversal, offset) in rows {
                        let offset: Length = offset
                            .parse()
                            .map_err(|e| anyhow!("route {} stop offset: {e}", r.id))?;
                        stops.push(Stop {
                            traversal: *traversal,
                            offset,
                        });
                    }
                    StopSpec::Explicit(stops)
                }
            };
            routes.push(Route::new(&net, r.id.clone(), r.flow, &walk, stops)?);
        }
        let deviation: Length = self
            .params
            .deviation
            .parse()
            .map_err(|e| anyhow!("params.deviation: {e}"))?;
        let range: Length = self
            .params
            .range
            .parse()
            .map_err(|e| anyhow!("params.range: {e}"))?;
        let params = Params::new(deviation, range)?;
        Ok((net, routes, params))
    }

    /// Apply command-line overrides to the parameter section.
    pub fn with_overrides(mut self, deviation: Option<&str>, range: Option<&str>) -> ProblemFile {
        if let Some(d) = deviation {
            self.params.deviation = d.to_string();
        }
        if let Some(r) = range {
            self.params.range = r.to_string();
        }
        self
    }
}

/// Render a model back into a problem file (used to export generated
/// instances; parse(build(x)) reproduces x's model).
pub fn problem_from_model(net: &Network, routes: &[Route], params: &Params) -> ProblemFile {
    ProblemFile {
        network: NetworkSection {
            vertices: net.vertices().map(|v| net.vertex_name(v).to_string()).collect(),
            edges: net
                .edges()
                .map(|(_, e)| {
                    (
                        net.vertex_name(e.u).to_string(),
                        net.vertex_name(e.v).to_string(),
                        e.length.to_string(),
                    )
                })
                .collect(),
        },
        routes: routes
            .iter()
            .map(|r| RouteSection {
                id: r.id().to_string(),
                flow: r.flow(),
                traversals: r
                    .traversals()
                    .iter()
                    .map(|t| {
                        (
                            net.vertex_name(t.from).to_string(),
                            net.vertex_name(t.to).to_string(),
                        )
                    })
                    .collect(),
                stops: if r.is_dense() {
                    StopsSection::default()
                } else {
                    StopsSection::Explicit(
                        r.stops()
                            .iter()
                            .map(|s| (s.traversal, s.offset.to_string()))
                            .collect(),
                    )
                },
            })
            .collect(),
        params: ParamsSection {
            deviation: params.deviation.to_string(),
            range: params.range.to_string(),
        },
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct ClassesFile {
    #[serde(rename = "route")]
    pub routes: Vec<ClassRoute>,
    #[serde(rename = "class", default)]
    pub classes: Vec<ClassRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct ClassRoute {
    pub id: String,
    pub flow: u64,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
pub struct ClassRow {
    pub label: String,
    pub covers: Vec<String>,
}

impl ClassesFile {
    pub fn parse(text: &str) -> Result<ClassesFile> {
        toml::from_str(text).map_err(|e| anyhow!("classes file: {e}"))
    }

    pub fn load(path: &Path) -> Result<ClassesFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("classes files always serialize")
    }

    pub fn build(&self) -> Result<CoverInstance, refuelnet::cover::CoverError> {
        CoverInstance::from_rows(
            self.routes.iter().map(|r| (r.id.clone(), r.flow)).collect(),
            self.classes
                .iter()
                .map(|c| (c.label.clone(), c.covers.clone()))
                .collect(),
        )
    }
}

/// Export a scan's candidate classes for geometry-free re-solving.
pub fn classes_from_scan(scan: &ScanResult) -> ClassesFile {
    ClassesFile {
        routes: scan
            .route_ids
            .iter()
            .zip(&scan.route_flows)
            .map(|(id, &flow)| ClassRoute {
                id: id.clone(),
                flow,
            })
            .collect(),
        classes: scan
            .classes
            .iter()
            .map(|class| ClassRow {
                label: scan.endpoints[class.representative].id.clone(),
                covers: scan.signature_names(&class.signature),
            })
            .collect(),
    }
}
