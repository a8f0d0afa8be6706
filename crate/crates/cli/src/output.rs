//! Rendering of analytic, oracle and sweep results.

use std::fmt::Write;

use serde::Serialize;

use qreduce::analytic::{correction_remainder_3, reduction_p, reduction_p_approx, reduction_q, zeno_q};
use qreduce::harness::{fmt_sig10, LedgerSummary, OracleReport, SweepStats};
use qreduce::noise::pattern_string;

use crate::args::Format;

#[derive(Debug, Serialize)]
struct AnalyticRow {
    n: usize,
    p: f64,
    #[serde(rename = "Q")]
    q: f64,
    #[serde(rename = "P")]
    remainder: f64,
    #[serde(rename = "P_approx")]
    remainder_approx: f64,
    correction_remainder_3: f64,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    stations: Option<usize>,
    #[serde(rename = "Q_zeno", skip_serializing_if = "Option::is_none")]
    zeno_q: Option<f64>,
}

pub fn analytic(ns: &[usize], ps: &[f64], stations: &[usize], format: Format) -> Result<String, qreduce::Error> {
    let mut rows = Vec::new();
    for &n in ns {
        for &p in ps {
            let base = |m: Option<usize>, zq: Option<f64>| AnalyticRow {
                n,
                p,
                q: reduction_q(p, n),
                remainder: reduction_p(p, n),
                remainder_approx: reduction_p_approx(p, n),
                correction_remainder_3: correction_remainder_3(p),
                stations: m,
                zeno_q: zq,
            };
            if stations.is_empty() {
                rows.push(base(None, None));
            }
            for &m in stations {
                rows.push(base(Some(m), Some(zeno_q(p, n, m)?)));
            }
        }
    }
    let with_zeno = !stations.is_empty();
    Ok(match format {
        Format::Structured => json(&rows),
        Format::Csv => {
            let mut out = String::from("n,p,Q,P,P_approx,correction_remainder_3");
            out += if with_zeno { ",M,Q_zeno\n" } else { "\n" };
            for r in &rows {
                let _ = write!(
                    out,
                    "{},{},{},{},{},{}",
                    r.n,
                    fmt_sig10(r.p),
                    fmt_sig10(r.q),
                    fmt_sig10(r.remainder),
                    fmt_sig10(r.remainder_approx),
                    fmt_sig10(r.correction_remainder_3)
                );
                if let (Some(m), Some(z)) = (r.stations, r.zeno_q) {
                    let _ = write!(out, ",{m},{}", fmt_sig10(z));
                }
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let mut out = format!("{:>3} {:>10} {:>12} {:>12} {:>12} {:>14}", "n", "p", "Q", "P", "P_approx", "3p²−2p³");
            out += &if with_zeno { format!(" {:>4} {:>12}\n", "M", "Q_zeno") } else { "\n".into() };
            for r in &rows {
                let _ = write!(
                    out,
                    "{:>3} {:>10.4} {:>12.6} {:>12.4e} {:>12.4e} {:>14.4e}",
                    r.n, r.p, r.q, r.remainder, r.remainder_approx, r.correction_remainder_3
                );
                if let (Some(m), Some(z)) = (r.stations, r.zeno_q) {
                    let _ = write!(out, " {m:>4} {z:>12.6}");
                }
                out.push('\n');
            }
            out
        }
    })
}

pub fn sweep_table(stats: &SweepStats) -> String {
    let mut out = format!(
        "{:<8} {:>3} {:>4} {:>10} {:>8} {:>10} {:>23} {:>11} {:>25}\n",
        "mode", "n", "M", "noise", "trials", "Q", "Q 95% CI", "P", "P 95% CI"
    );
    for p in &stats.points {
        let _ = writeln!(
            out,
            "{:<8} {:>3} {:>4} {:>10.4} {:>8} {:>10.6} [{:>10.6}, {:>10.6}] {:>11.4e} [{:>11.4e}, {:>11.4e}]",
            p.mode.to_string(),
            p.n,
            p.stations,
            p.noise_param,
            p.trials,
            p.q_mean,
            p.q_ci_lo,
            p.q_ci_hi,
            p.p_mean,
            p.p_ci_lo,
            p.p_ci_hi
        );
    }
    out
}

#[derive(Serialize)]
struct OracleRecord<'a> {
    n: usize,
    p: f64,
    #[serde(rename = "Q")]
    q: f64,
    #[serde(rename = "P")]
    remainder: f64,
    summary: LedgerSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    ledger: Option<&'a [qreduce::harness::LedgerEntry]>,
}

fn opt(x: Option<impl std::fmt::Display>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn oracle(reports: &[OracleReport], with_ledger: bool, format: Format) -> String {
    match format {
        Format::Structured => {
            let records: Vec<OracleRecord> = reports
                .iter()
                .map(|r| OracleRecord {
                    n: r.n,
                    p: r.channel.px,
                    q: r.q,
                    remainder: r.p,
                    summary: r.summary(),
                    ledger: with_ledger.then_some(r.ledger.as_slice()),
                })
                .collect();
            json(&records)
        }
        Format::Csv if with_ledger => {
            let mut out = String::from("pattern,probability,success_prob,class,action,infidelity\n");
            for e in &reports[0].ledger {
                let _ = writeln!(
                    out,
                    "{},{},{},{:?},{},{}",
                    pattern_string(&e.pattern),
                    fmt_sig10(e.probability),
                    fmt_sig10(e.success_prob),
                    e.class,
                    opt(e.action.map(|a| format!("{a:?}"))),
                    opt(e.infidelity.map(fmt_sig10))
                );
            }
            out
        }
        Format::Csv => {
            let mut out = String::from(
                "n,p,Q,P,patterns,benign,logical,orthogonal,benign_mass,logical_mass,orthogonal_mass\n",
            );
            for r in reports {
                let s = r.summary();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    fmt_sig10(r.channel.px),
                    fmt_sig10(r.q),
                    fmt_sig10(r.p),
                    s.patterns,
                    s.benign,
                    s.logical,
                    s.orthogonal,
                    fmt_sig10(s.benign_mass),
                    fmt_sig10(s.logical_mass),
                    fmt_sig10(s.orthogonal_mass)
                );
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            for r in reports {
                let s = r.summary();
                let _ = writeln!(out, "n = {}, px = py = pz = {}", r.n, r.channel.px);
                let _ = writeln!(out, "  Q = {:.10}", r.q);
                let _ = writeln!(out, "  P = {:.10e}", r.p);
                let _ = writeln!(out, "  patterns:   {:>7}", s.patterns);
                let _ = writeln!(out, "  benign:     {:>7}  (probability {:.6e})", s.benign, s.benign_mass);
                let _ = writeln!(out, "  logical:    {:>7}  (probability {:.6e})", s.logical, s.logical_mass);
                let _ = writeln!(out, "  orthogonal: {:>7}  (probability {:.6e})", s.orthogonal, s.orthogonal_mass);
                if with_ledger {
                    let _ = writeln!(
                        out,
                        "  {:<12} {:>12} {:>8} {:<10} {:<6} {:>12}",
                        "pattern", "probability", "Q̂", "class", "action", "infidelity"
                    );
                    for e in &r.ledger {
                        let _ = writeln!(
                            out,
                            "  {:<12} {:>12.4e} {:>8.4} {:<10} {:<6} {:>12}",
                            pattern_string(&e.pattern),
                            e.probability,
                            e.success_prob,
                            format!("{:?}", e.class),
                            opt(e.action.map(|a| format!("{a:?}"))),
                            opt(e.infidelity.map(|x| format!("{x:.4e}")))
                        );
                    }
                }
            }
            out
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output records serialize") + "\n"
}
