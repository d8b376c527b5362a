use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sqenergy::certifier::{
    certify_three_quarters, partition_inequality_check, verify_certificate, Certificate,
    CertifyError, NodeReport, VerificationReport,
};
use sqenergy::enumeration::{
    ingest_graph6_file, sweep, Execution, GraphSource, SweepOptions, SweepSummary,
};
use sqenergy::graph::{parse_graph6, to_graph6};
use sqenergy::spectral::{self, EnergyReport};
use sqenergy::{BoundKind, Graph, Tolerances, VertexSet};

use crate::output::{emit, join, Report};
use crate::{Command, Common, Failure};

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compute {
            graph6,
            file,
            common,
        } => compute(graph6, file, &common),
        Command::Certify {
            graph6,
            bound,
            common,
        } => certify(&graph6, bound, &common),
        Command::VerifyCert {
            graph6,
            certificate,
            common,
        } => verify(&graph6, &certificate, &common),
        Command::Sweep {
            builtin,
            file,
            bound,
            top_k,
            threads,
            connected_only: _,
            include_disconnected,
            no_timing,
            common,
        } => {
            let options = SweepOptions {
                threshold: bound,
                connected_only: !include_disconnected,
                top_k,
                execution: threads
                    .map_or(Execution::Parallel, |k| Execution::ParallelWith(k as usize)),
                tolerances: common.tolerances(),
            };
            let sources = match (builtin, file) {
                (Some((a, b)), _) => (a..=b).map(|n| GraphSource::Builtin { n }).collect(),
                (None, Some(path)) => vec![GraphSource::File { path }],
                (None, None) => unreachable!("clap requires one input"),
            };
            run_sweep(&sources, &options, no_timing, &common)
        }
        Command::SplitCheck {
            graph6,
            parts,
            common,
        } => split_check(&graph6, parts, &common),
    }
}

fn graph(text: &str) -> Result<Graph, Failure> {
    parse_graph6(text.trim()).map_err(|e| Failure::Input(format!("invalid graph6 {text:?}: {e}")))
}

fn finish<T: Serialize>(report: Report<'_, T>, common: &Common) -> Result<(), Failure> {
    emit(common.out.as_deref(), &report.render(common.format)?)
}

#[derive(Serialize)]
struct ComputeRecord {
    graph6: String,
    #[serde(flatten)]
    report: EnergyReport,
}

fn compute(text: Option<String>, file: Option<PathBuf>, common: &Common) -> Result<(), Failure> {
    let tol = common.tolerances();
    let graphs: Vec<Graph> = match (text, file) {
        (Some(t), _) => vec![graph(&t)?],
        (None, Some(path)) => ingest_graph6_file(&path)?
            .map(|r| r.map(|(_, g)| g))
            .collect::<Result<_, _>>()?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let single = graphs.len() == 1 && common.format == crate::Format::Json;
    let records = graphs
        .iter()
        .map(|g| {
            Ok(ComputeRecord {
                graph6: to_graph6(g)?,
                report: spectral::energy_report(g, &tol)?,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;

    let text = || {
        let mut s = String::new();
        for r in &records {
            let e = &r.report;
            writeln!(
                s,
                "{}: n={} m={} s_plus={} s_minus={} s={} energy={}",
                r.graph6, e.n, e.m, e.s_plus, e.s_minus, e.s, e.energy
            )
            .unwrap();
        }
        s
    };
    let csv = |w: &mut csv::Writer<Vec<u8>>| {
        let mut header = vec!["graph6"];
        header.extend(EnergyReport::CSV_HEADER);
        w.write_record(&header)?;
        for r in &records {
            let mut row = vec![r.graph6.clone()];
            row.extend(r.report.csv_record());
            w.write_record(&row)?;
        }
        Ok(())
    };
    if single {
        finish(
            Report {
                json: &records[0],
                csv: None,
                text: Box::new(text),
            },
            common,
        )
    } else {
        finish(
            Report {
                json: &records,
                csv: Some(Box::new(csv)),
                text: Box::new(text),
            },
            common,
        )
    }
}

fn certificate_lines(cert: &Certificate, depth: usize, out: &mut String) {
    let extra = match cert {
        Certificate::StarCase {
            apex,
            l1,
            l2,
            l3,
            l4,
            ..
        } => format!(" apex={apex} components=({l1},{l2},{l3},{l4})"),
        Certificate::Fallback { reason, .. } => format!(" reason={reason:?}"),
        _ => String::new(),
    };
    writeln!(
        out,
        "{:indent$}{} claim={} vertices=[{}]{extra}",
        "",
        cert.kind(),
        cert.claimed_bound(),
        join(cert.vertices(), ","),
        indent = 2 * depth
    )
    .unwrap();
    for child in cert.children() {
        certificate_lines(child, depth + 1, out);
    }
}

fn certificate_rows(
    cert: &Certificate,
    path: String,
    w: &mut csv::Writer<Vec<u8>>,
) -> csv::Result<()> {
    w.write_record([
        path.as_str(),
        cert.kind(),
        &cert.claimed_bound().to_string(),
        &join(cert.vertices(), " "),
    ])?;
    for (i, child) in cert.children().iter().enumerate() {
        certificate_rows(child, format!("{path}.{i}"), w)?;
    }
    Ok(())
}

fn certify(text: &str, bound: BoundKind, common: &Common) -> Result<(), Failure> {
    let g = graph(text)?;
    let (cert, shortfall) = match certify_three_quarters(&g, bound, &common.tolerances()) {
        Ok(cert) => (cert, None),
        Err(CertifyError::TargetNotMet {
            claimed,
            required,
            certificate,
        }) => (*certificate, Some((claimed, required))),
        Err(e) => return Err(Failure::Input(e.to_string())),
    };
    finish(
        Report {
            json: &cert,
            csv: Some(Box::new(|w| {
                w.write_record(["path", "kind", "claimed_bound", "vertices"])?;
                certificate_rows(&cert, "root".into(), w)
            })),
            text: Box::new(|| {
                let mut s = String::new();
                certificate_lines(&cert, 0, &mut s);
                s
            }),
        },
        common,
    )?;
    match shortfall {
        None => Ok(()),
        Some((claimed, required)) => {
            eprintln!("certificate proves s >= {claimed}, short of the {bound} target {required}");
            Err(Failure::Check)
        }
    }
}

fn verification_lines(node: &NodeReport, depth: usize, out: &mut String) {
    writeln!(
        out,
        "{:indent$}{} {} claim={} s={} slack={}{}",
        "",
        if node.ok { "ok  " } else { "FAIL" },
        node.kind,
        node.claimed_bound,
        node.recomputed_s,
        node.slack,
        node.issues
            .iter()
            .map(|i| format!("; {i}"))
            .collect::<String>(),
        indent = 2 * depth
    )
    .unwrap();
    for child in &node.children {
        verification_lines(child, depth + 1, out);
    }
}

fn verify(text: &str, cert_path: &Path, common: &Common) -> Result<(), Failure> {
    let g = graph(text)?;
    let raw = std::fs::read_to_string(cert_path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", cert_path.display())))?;
    let cert: Certificate = serde_json::from_str(&raw).map_err(|e| {
        Failure::Input(format!(
            "malformed certificate {}: {e}",
            cert_path.display()
        ))
    })?;
    let report: VerificationReport = match verify_certificate(&g, &cert, &common.tolerances()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("certificate rejected: {e}");
            return Err(Failure::Check);
        }
    };
    finish(
        Report {
            json: &report,
            csv: Some(Box::new(|w| {
                w.write_record([
                    "kind",
                    "vertices",
                    "claimed_bound",
                    "recomputed_s",
                    "slack",
                    "ok",
                ])?;
                for node in report.root.walk() {
                    w.write_record([
                        node.kind.clone(),
                        join(&node.vertices, " "),
                        node.claimed_bound.to_string(),
                        node.recomputed_s.to_string(),
                        node.slack.to_string(),
                        node.ok.to_string(),
                    ])?;
                }
                Ok(())
            })),
            text: Box::new(|| {
                let mut s = format!(
                    "{}: {} nodes checked, root bound {}\n",
                    if report.pass { "PASS" } else { "FAIL" },
                    report.nodes_checked,
                    report.root_bound
                );
                verification_lines(&report.root, 0, &mut s);
                s
            }),
        },
        common,
    )?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run_sweep(
    sources: &[GraphSource],
    options: &SweepOptions,
    no_timing: bool,
    common: &Common,
) -> Result<(), Failure> {
    let mut summaries: Vec<SweepSummary> = Vec::new();
    for source in sources {
        summaries.extend(sweep(source, options)?);
    }
    let mut json = serde_json::to_value(&summaries)?;
    if no_timing {
        for item in json.as_array_mut().into_iter().flatten() {
            if let Some(obj) = item.as_object_mut() {
                obj.remove("wall_time_secs");
            }
        }
    }
    let fmt = |x: Option<f64>| x.map_or_else(String::new, |v| v.to_string());
    finish(
        Report {
            json: &json,
            csv: Some(Box::new(|w| {
                let mut header = vec![
                    "n",
                    "graphs_tested",
                    "violations",
                    "skipped_disconnected",
                    "eigen_failures",
                    "min_s",
                    "min_s_margin",
                    "threshold_kind",
                    "threshold",
                    "minimizers",
                ];
                if !no_timing {
                    header.push("wall_time_secs");
                }
                w.write_record(&header)?;
                for s in &summaries {
                    let mut row = vec![
                        s.n.to_string(),
                        s.graphs_tested.to_string(),
                        s.violations.to_string(),
                        s.skipped_disconnected.to_string(),
                        s.eigen_failures.to_string(),
                        fmt(s.min_s),
                        fmt(s.min_s_margin),
                        s.threshold_kind.clone(),
                        s.threshold.to_string(),
                        s.minimizers.join(" "),
                    ];
                    if !no_timing {
                        row.push(s.wall_time_secs.to_string());
                    }
                    w.write_record(&row)?;
                }
                Ok(())
            })),
            text: Box::new(|| summaries.iter().map(|s| s.digest() + "\n").collect()),
        },
        common,
    )?;
    if summaries
        .iter()
        .any(|s| s.violations > 0 || s.eigen_failures > 0)
    {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct SplitCheckReport {
    graph6: String,
    n: usize,
    parts: Vec<Vec<usize>>,
    slack_plus: f64,
    slack_minus: f64,
    tolerance: f64,
    pass: bool,
}

fn split_check(text: &str, parts: Vec<Vec<usize>>, common: &Common) -> Result<(), Failure> {
    let g = graph(text)?;
    let tol: Tolerances = common.tolerances();
    let sets = parts
        .into_iter()
        .map(|p| VertexSet::from_unsorted(g.n(), p))
        .collect::<Result<Vec<_>, _>>()?;
    let slack = partition_inequality_check(&g, &sets, &tol)?;
    let report = SplitCheckReport {
        graph6: to_graph6(&g)?,
        n: g.n(),
        parts: sets.iter().map(|s| s.as_slice().to_vec()).collect(),
        slack_plus: slack.plus,
        slack_minus: slack.minus,
        tolerance: tol.cert,
        pass: slack.plus >= -tol.cert && slack.minus >= -tol.cert,
    };
    finish(
        Report {
            json: &report,
            csv: Some(Box::new(|w| {
                w.write_record(["graph6", "parts", "slack_plus", "slack_minus", "pass"])?;
                w.write_record([
                    report.graph6.clone(),
                    report
                        .parts
                        .iter()
                        .map(|p| join(p, " "))
                        .collect::<Vec<_>>()
                        .join("|"),
                    report.slack_plus.to_string(),
                    report.slack_minus.to_string(),
                    report.pass.to_string(),
                ])
            })),
            text: Box::new(|| {
                format!(
                    "{}: slack_plus={} slack_minus={}\n",
                    if report.pass { "PASS" } else { "FAIL" },
                    report.slack_plus,
                    report.slack_minus
                )
            }),
        },
        common,
    )?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
