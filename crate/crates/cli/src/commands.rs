//! Command implementations shared by the binary and the integration tests.

use crate::files::{classes_from_scan, ClassesFile, ProblemFile};
use crate::report::{
    scan_report, solve_report, sweep_report, verify_report, CheckLine, ExpansionLine, Format,
    OptimumLine, SolveReport, StationLine, SweepReport, SweepRow,
};
use anyhow::{anyhow, Context};
use refuelnet::cover::{
    build_instance, enumerate_all_minima, expand_alternatives, solve, vertex_instance,
    CoverError, CoverInstance,
};
use refuelnet::coverage::Params;
use refuelnet::network::Network;
use refuelnet::route::Route;
use refuelnet::scan::{scan, ScanResult};
use refuelnet::verify::verify_with_scan;
use refuelnet::Length;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0:#}")]
    Input(#[from] anyhow::Error),
    #[error("{0}")]
    Infeasible(String),
    #[error("verification found {0} violation(s)")]
    Violations(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::Violations(_) => 3,
        }
    }
}

fn classify(err: CoverError) -> CliError {
    match err {
        CoverError::UncoverableRoute(_) | CoverError::Infeasible => {
            CliError::Infeasible(err.to_string())
        }
        other => CliError::Input(anyhow!(other)),
    }
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(CliError::Input),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub struct ScanArgs {
    pub network: PathBuf,
    pub deviation: Option<String>,
    pub range: Option<String>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub export_classes: Option<PathBuf>,
    pub timings: bool,
}

pub fn cmd_scan(args: &ScanArgs) -> Result<(), CliError> {
    let file = ProblemFile::load(&args.network)?
        .with_overrides(args.deviation.as_deref(), args.range.as_deref());
    let (net, routes, params) = file.build()?;
    let result = scan(&net, &routes, &params);
    if let Some(path) = &args.export_classes {
        std::fs::write(path, classes_from_scan(&result).to_toml())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let text = scan_report(&net, &result, args.format, args.timings);
    write_output(&text, args.out.as_deref())
}

pub struct SolveArgs {
    pub network: Option<PathBuf>,
    pub classes: Option<PathBuf>,
    pub deviation: Option<String>,
    pub range: Option<String>,
    pub all_optima: bool,
    pub expand: bool,
    pub discrete_vertices: bool,
    pub check: Option<Vec<String>>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

struct SolveContext {
    instance: CoverInstance,
    geometry: Option<(Network, Vec<Route>, Params, ScanResult)>,
}

fn load_solve_context(args: &SolveArgs) -> Result<SolveContext, CliError> {
    match (&args.network, &args.classes) {
        (Some(path), None) => {
            let file = ProblemFile::load(path)?
                .with_overrides(args.deviation.as_deref(), args.range.as_deref());
            let (net, routes, params) = file.build()?;
            let result = scan(&net, &routes, &params);
            let instance = if args.discrete_vertices {
                vertex_instance(&net, &routes, &params).map_err(classify)?
            } else {
                build_instance(&result).map_err(classify)?
            };
            Ok(SolveContext {
                instance,
                geometry: Some((net, routes, params, result)),
            })
        }
        (None, Some(path)) => {
            if args.discrete_vertices {
                return Err(CliError::Input(anyhow!(
                    "--discrete-vertices needs network geometry; a classes file is already a fixed candidate table"
                )));
            }
            if args.expand {
                return Err(CliError::Input(anyhow!(
                    "--expand needs network geometry; classes files carry no locations"
                )));
            }
            let instance = ClassesFile::load(path)?.build().map_err(classify)?;
            Ok(SolveContext {
                instance,
                geometry: None,
            })
        }
        _ => Err(CliError::Input(anyhow!(
            "pass exactly one of --network or --classes"
        ))),
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let ctx = load_solve_context(args)?;
    let inst = &ctx.instance;
    let solution = if args.all_optima {
        enumerate_all_minima(inst).map_err(classify)?
    } else {
        solve(inst).map_err(classify)?
    };

    let mut report = SolveReport {
        p: solution.p,
        complete: solution.complete,
        ..SolveReport::default()
    };
    for optimum in &solution.optima {
        let stations = optimum
            .iter()
            .map(|&c| StationLine {
                label: inst.candidates[c].label.clone(),
                covers: inst.candidates[c]
                    .signature
                    .iter()
                    .map(|&r| inst.route_ids[r].clone())
                    .collect(),
                flow: inst.candidates[c].flow,
            })
            .collect();
        let mut expansions = Vec::new();
        if args.expand {
            let (net, routes, params, result) = ctx
                .geometry
                .as_ref()
                .expect("expand is rejected without geometry");
            for exp in expand_alternatives(net, routes, params, result, optimum) {
                let class = &result.classes[exp.class];
                expansions.push(ExpansionLine {
                    label: result.endpoints[class.representative].id.clone(),
                    substitutes: exp
                        .members
                        .iter()
                        .filter(|&&m| m != class.representative)
                        .map(|&m| result.endpoints[m].id.clone())
                        .collect(),
                    segments: exp
                        .segments
                        .iter()
                        .map(|seg| {
                            let e = net.edge(seg.edge);
                            format!(
                                "({},{}) offsets {}{}, {}{}",
                                net.vertex_name(e.u),
                                net.vertex_name(e.v),
                                if seg.lo_closed { "[" } else { "(" },
                                seg.lo,
                                seg.hi,
                                if seg.hi_closed { "]" } else { ")" },
                            )
                        })
                        .collect(),
                });
            }
        }
        report.optima.push(OptimumLine {
            stations,
            expansions,
        });
    }

    let mut failed_check = false;
    if let Some(labels) = &args.check {
        let mut chosen = Vec::new();
        for label in labels {
            let idx = inst
                .candidates
                .iter()
                .position(|c| &c.label == label)
                .ok_or_else(|| CliError::Input(anyhow!("unknown candidate `{label}`")))?;
            chosen.push(idx);
        }
        let mut covered = vec![false; inst.route_count()];
        for &c in &chosen {
            for &r in &inst.candidates[c].signature {
                covered[r] = true;
            }
        }
        let missing: Vec<String> = covered
            .iter()
            .enumerate()
            .filter(|(_, &ok)| !ok)
            .map(|(r, _)| inst.route_ids[r].clone())
            .collect();
        failed_check = !missing.is_empty();
        report.check = Some(CheckLine {
            labels: labels.clone(),
            covers_all: missing.is_empty(),
            missing,
            optimal: !failed_check && chosen.len() == solution.p,
        });
    }

    let text = solve_report(&report, args.format);
    write_output(&text, args.out.as_deref())?;
    if failed_check {
        return Err(CliError::Infeasible(
            "checked placement does not cover every route".to_string(),
        ));
    }
    Ok(())
}

pub struct VerifyArgs {
    pub network: PathBuf,
    pub deviation: Option<String>,
    pub range: Option<String>,
    pub samples_per_edge: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    if args.samples_per_edge < 2 {
        return Err(CliError::Input(anyhow!("--samples-per-edge must be at least 2")));
    }
    let file = ProblemFile::load(&args.network)?
        .with_overrides(args.deviation.as_deref(), args.range.as_deref());
    let (net, routes, params) = file.build()?;
    let result = scan(&net, &routes, &params);
    let report = verify_with_scan(&net, &routes, &params, &result, args.samples_per_edge);
    let text = verify_report(&report, args.format);
    write_output(&text, args.out.as_deref())?;
    if !report.ok() {
        return Err(CliError::Violations(report.violations.len()));
    }
    Ok(())
}

pub struct SensitivityArgs {
    pub network: PathBuf,
    pub deviations: Vec<String>,
    pub ranges: Vec<String>,
    pub timings: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn cmd_sensitivity(args: &SensitivityArgs) -> Result<(), CliError> {
    if args.deviations.is_empty() || args.ranges.is_empty() {
        return Err(CliError::Input(anyhow!("need at least one deviation and one range value")));
    }
    let file = ProblemFile::load(&args.network)?;
    let mut report = SweepReport::default();
    for r in &args.ranges {
        for d in &args.deviations {
            let scoped = file.clone().with_overrides(Some(d), Some(r));
            let (net, routes, params) = scoped.build()?;
            let started = std::time::Instant::now();
            let result = scan(&net, &routes, &params);
            let p = if result.stats.admissible == 0 {
                0
            } else {
                let inst = build_instance(&result).map_err(classify)?;
                solve(&inst).map_err(classify)?.p
            };
            let millis = args.timings.then(|| started.elapsed().as_millis());
            report.rows.push(SweepRow {
                deviation: d.clone(),
                range: r.clone(),
                admissible: result.stats.admissible,
                endpoints: result.stats.endpoints,
                p,
                millis,
            });
        }
    }

    // Monotonicity audit over exact parameter order.
    let parse = |s: &str| -> Result<Length, CliError> {
        s.parse::<Length>()
            .map_err(|e| CliError::Input(anyhow!("sweep value `{s}`: {e}")))
    };
    for r in &args.ranges {
        let mut rows: Vec<&SweepRow> = report.rows.iter().filter(|row| &row.range == r).collect();
        let mut keyed: Vec<(Length, &SweepRow)> = Vec::new();
        for row in rows.drain(..) {
            keyed.push((parse(&row.deviation)?, row));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let ok = keyed.windows(2).all(|w| w[1].1.p <= w[0].1.p);
        report.audit.push(format!(
            "stations vs deviation at range {r}: {}",
            if ok { "non-increasing" } else { "VIOLATION" }
        ));
    }
    for d in &args.deviations {
        let mut keyed: Vec<(Length, &SweepRow)> = Vec::new();
        for row in report.rows.iter().filter(|row| &row.deviation == d) {
            keyed.push((parse(&row.range)?, row));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        for w in keyed.windows(2) {
            if w[0].1.admissible != w[1].1.admissible {
                report.audit.push(format!(
                    "stations vs range at deviation {d}: admissible routes changed between range {} and {} ({} -> {}); pair skipped",
                    w[0].1.range, w[1].1.range, w[0].1.admissible, w[1].1.admissible
                ));
            } else if w[1].1.p > w[0].1.p {
                report.audit.push(format!(
                    "stations vs range at deviation {d}: VIOLATION between range {} and {}",
                    w[0].1.range, w[1].1.range
                ));
            }
        }
        let mentioned = report
            .audit
            .iter()
            .any(|line| line.starts_with(&format!("stations vs range at deviation {d}:")));
        if !mentioned {
            report
                .audit
                .push(format!("stations vs range at deviation {d}: non-increasing"));
        }
    }

    let text = sweep_report(&report, args.format);
    write_output(&text, args.out.as_deref())
}
