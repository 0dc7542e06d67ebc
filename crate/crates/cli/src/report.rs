//! Report rendering. Everything is byte-deterministic for a given input:
//! stable orderings, no timestamps or timings unless explicitly requested.

use clap::ValueEnum;
use refuelnet::network::{Network, Point};
use refuelnet::scan::ScanResult;
use serde_json::json;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Records,
}

fn align(rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = Vec::new();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if widths.len() <= i {
                widths.push(0);
            }
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn point_fields(net: &Network, point: &Point) -> (String, String, String, String) {
    match point {
        Point::Vertex(v) => (net.vertex_name(*v).to_string(), String::new(), String::new(), String::new()),
        Point::OnEdge { edge, offset } => {
            let e = net.edge(*edge);
            (
                String::new(),
                net.vertex_name(e.u).to_string(),
                net.vertex_name(e.v).to_string(),
                offset.to_string(),
            )
        }
    }
}

pub fn scan_report(net: &Network, scan: &ScanResult, format: Format, timings: bool) -> String {
    match format {
        Format::Table => {
            let s = &scan.stats;
            let mut out = format!(
                "network: {} vertices, {} edges\nadmissible routes: {} ({})\nendpoints: {} (bound {})\n",
                s.vertices,
                s.edges,
                s.admissible,
                scan.route_ids.join(", "),
                s.endpoints,
                s.endpoint_bound,
            );
            if timings {
                out.push_str(&format!("scan time: {:?}\n", s.duration));
            }
            for &hi in &s.tight_range_routes {
                out.push_str(&format!(
                    "note: route {} cannot absorb a full deviation right after refueling (loop + deviation exceeds range)\n",
                    scan.route_ids[hi]
                ));
            }
            out.push_str("\nendpoints:\n");
            let mut rows = vec![vec![
                "id".into(),
                "location".into(),
                "covers".into(),
                "flow".into(),
            ]];
            for ep in &scan.endpoints {
                rows.push(vec![
                    ep.id.clone(),
                    ep.point.describe(net),
                    scan.signature_names(&ep.signature).join(","),
                    ep.flow.to_string(),
                ]);
            }
            out.push_str(&align(&rows));
            out.push_str("\nsignature groups:\n");
            let mut rows = vec![vec![
                "covers".into(),
                "flow".into(),
                "count".into(),
                "endpoints".into(),
            ]];
            let mut classes: Vec<_> = scan.classes.iter().collect();
            classes.sort_by(|a, b| {
                let fa = scan.endpoints[a.representative].flow;
                let fb = scan.endpoints[b.representative].flow;
                fb.cmp(&fa).then_with(|| a.signature.cmp(&b.signature))
            });
            for class in classes {
                rows.push(vec![
                    scan.signature_names(&class.signature).join(","),
                    scan.endpoints[class.representative].flow.to_string(),
                    class.members.len().to_string(),
                    class
                        .members
                        .iter()
                        .map(|&i| scan.endpoints[i].id.clone())
                        .collect::<Vec<_>>()
                        .join(" "),
                ]);
            }
            out.push_str(&align(&rows));
            out
        }
        Format::Csv => {
            let mut out =
                String::from("id,vertex,edge_u,edge_v,offset,covers,flow\n");
            for ep in &scan.endpoints {
                let (v, eu, ev, off) = point_fields(net, &ep.point);
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    ep.id,
                    v,
                    eu,
                    ev,
                    off,
                    scan.signature_names(&ep.signature).join(";"),
                    ep.flow
                ));
            }
            out
        }
        Format::Records => {
            let mut out = String::new();
            let s = &scan.stats;
            let mut header = json!({
                "type": "stats",
                "vertices": s.vertices,
                "edges": s.edges,
                "admissible": s.admissible,
                "endpoints": s.endpoints,
                "endpoint_bound": s.endpoint_bound,
            });
            if timings {
                header["scan_ms"] = json!(s.duration.as_millis() as u64);
            }
            out.push_str(&header.to_string());
            out.push('\n');
            for ep in &scan.endpoints {
                out.push_str(
                    &json!({
                        "type": "endpoint",
                        "id": ep.id,
                        "location": ep.point.describe(net),
                        "covers": scan.signature_names(&ep.signature),
                        "flow": ep.flow,
                    })
                    .to_string(),
                );
                out.push('\n');
            }
            for class in &scan.classes {
                out.push_str(
                    &json!({
                        "type": "class",
                        "covers": scan.signature_names(&class.signature),
                        "flow": scan.endpoints[class.representative].flow,
                        "members": class.members.iter().map(|&i| scan.endpoints[i].id.clone()).collect::<Vec<_>>(),
                    })
                    .to_string(),
                );
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Clone, Debug)]
pub struct StationLine {
    pub label: String,
    pub covers: Vec<String>,
    pub flow: u64,
}

#[derive(Clone, Debug)]
pub struct ExpansionLine {
    pub label: String,
    pub substitutes: Vec<String>,
    /// Human-readable alternative segments.
    pub segments: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct OptimumLine {
    pub stations: Vec<StationLine>,
    pub expansions: Vec<ExpansionLine>,
}

#[derive(Clone, Debug, Default)]
pub struct SolveReport {
    pub p: usize,
    pub optima: Vec<OptimumLine>,
    pub complete: bool,
    pub check: Option<CheckLine>,
}

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub labels: Vec<String>,
    pub covers_all: bool,
    pub missing: Vec<String>,
    pub optimal: bool,
}

pub fn solve_report(report: &SolveReport, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = format!("minimum stations: {}\n", report.p);
            if report.complete {
                out.push_str(&format!("optimal placements: {}\n", report.optima.len()));
            }
            for (i, opt) in report.optima.iter().enumerate() {
                let desc = opt
                    .stations
                    .iter()
                    .map(|s| format!("{} {{{}}}", s.label, s.covers.join(",")))
                    .collect::<Vec<_>>()
                    .join(" + ");
                out.push_str(&format!("optimum {}: {}\n", i + 1, desc));
                for exp in &opt.expansions {
                    if !exp.substitutes.is_empty() {
                        out.push_str(&format!(
                            "  {} interchangeable with: {}\n",
                            exp.label,
                            exp.substitutes.join(" ")
                        ));
                    }
                    for seg in &exp.segments {
                        out.push_str(&format!("  {} may move within: {}\n", exp.label, seg));
                    }
                }
            }
            if let Some(check) = &report.check {
                if check.covers_all {
                    out.push_str(&format!(
                        "check: {{{}}} covers every route ({})\n",
                        check.labels.join(","),
                        if check.optimal { "optimal" } else { "suboptimal" }
                    ));
                } else {
                    out.push_str(&format!(
                        "check: {{{}}} leaves uncovered: {}\n",
                        check.labels.join(","),
                        check.missing.join(",")
                    ));
                }
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("optimum,station,covers,flow\n");
            for (i, opt) in report.optima.iter().enumerate() {
                for s in &opt.stations {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        i + 1,
                        s.label,
                        s.covers.join(";"),
                        s.flow
                    ));
                }
            }
            out
        }
        Format::Records => {
            let mut out = json!({
                "type": "solution",
                "p": report.p,
                "complete": report.complete,
            })
            .to_string();
            out.push('\n');
            for (i, opt) in report.optima.iter().enumerate() {
                out.push_str(
                    &json!({
                        "type": "optimum",
                        "index": i + 1,
                        "stations": opt.stations.iter().map(|s| json!({
                            "label": s.label,
                            "covers": s.covers,
                            "flow": s.flow,
                        })).collect::<Vec<_>>(),
                        "expansions": opt.expansions.iter().map(|e| json!({
                            "label": e.label,
                            "substitutes": e.substitutes,
                            "segments": e.segments,
                        })).collect::<Vec<_>>(),
                    })
                    .to_string(),
                );
                out.push('\n');
            }
            if let Some(check) = &report.check {
                out.push_str(
                    &json!({
                        "type": "check",
                        "labels": check.labels,
                        "covers_all": check.covers_all,
                        "missing": check.missing,
                        "optimal": check.optimal,
                    })
                    .to_string(),
                );
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub deviation: String,
    pub range: String,
    pub admissible: usize,
    pub endpoints: usize,
    pub p: usize,
    pub millis: Option<u128>,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub audit: Vec<String>,
}

pub fn sweep_report(report: &SweepReport, format: Format) -> String {
    match format {
        Format::Table => {
            let mut rows = vec![vec![
                "deviation".to_string(),
                "range".into(),
                "routes".into(),
                "endpoints".into(),
                "stations".into(),
            ]];
            let with_time = report.rows.iter().any(|r| r.millis.is_some());
            if with_time {
                rows[0].push("time_ms".into());
            }
            for r in &report.rows {
                let mut row = vec![
                    r.deviation.clone(),
                    r.range.clone(),
                    r.admissible.to_string(),
                    r.endpoints.to_string(),
                    r.p.to_string(),
                ];
                if with_time {
                    row.push(r.millis.map_or(String::new(), |m| m.to_string()));
                }
                rows.push(row);
            }
            let mut out = align(&rows);
            if !report.audit.is_empty() {
                out.push_str("\naudit:\n");
                for line in &report.audit {
                    out.push_str(&format!("  {line}\n"));
                }
            }
            out
        }
        Format::Csv => {
            let with_time = report.rows.iter().any(|r| r.millis.is_some());
            let mut out = String::from("deviation,range,routes,endpoints,stations");
            if with_time {
                out.push_str(",time_ms");
            }
            out.push('\n');
            for r in &report.rows {
                out.push_str(&format!(
                    "{},{},{},{},{}",
                    r.deviation, r.range, r.admissible, r.endpoints, r.p
                ));
                if with_time {
                    out.push_str(&format!(
                        ",{}",
                        r.millis.map_or(String::new(), |m| m.to_string())
                    ));
                }
                out.push('\n');
            }
            out
        }
        Format::Records => {
            let mut out = String::new();
            for r in &report.rows {
                let mut rec = json!({
                    "type": "sweep",
                    "deviation": r.deviation,
                    "range": r.range,
                    "routes": r.admissible,
                    "endpoints": r.endpoints,
                    "stations": r.p,
                });
                if let Some(m) = r.millis {
                    rec["time_ms"] = json!(m as u64);
                }
                out.push_str(&rec.to_string());
                out.push('\n');
            }
            for line in &report.audit {
                out.push_str(&json!({"type": "audit", "note": line }).to_string());
                out.push('\n');
            }
            out
        }
    }
}

pub fn verify_report(
    report: &refuelnet::verify::VerifyReport,
    format: Format,
) -> String {
    match format {
        Format::Table | Format::Csv => {
            let mut out = format!(
                "points checked: {}\nadjacent pairs checked: {}\nambiguous points: {}\nviolations: {}\n",
                report.points_checked,
                report.pairs_checked,
                report.ambiguous_points,
                report.violations.len()
            );
            for v in &report.violations {
                out.push_str(&format!("  {v}\n"));
            }
            out.push_str(if report.ok() { "status: ok\n" } else { "status: FAILED\n" });
            out
        }
        Format::Records => {
            let mut out = json!({
                "type": "verify",
                "points_checked": report.points_checked,
                "pairs_checked": report.pairs_checked,
                "ambiguous_points": report.ambiguous_points,
                "violations": report.violations.len(),
                "ok": report.ok(),
            })
            .to_string();
            out.push('\n');
            for v in &report.violations {
                out.push_str(&json!({"type": "violation", "detail": v.to_string()}).to_string());
                out.push('\n');
            }
            out
        }
    }
}
