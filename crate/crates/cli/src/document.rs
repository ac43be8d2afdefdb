//! JSON documents printed by the CLI (schema version "1") and their table renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use schurlab_core::lie::SeriesReport;
use schurlab_core::multiplier::MultiplierReport;
use schurlab_core::theorems::{GammaImages, Relation, SweepReport, TheoremId, TheoremReport};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AlgebraIdentity {
    Catalog {
        name: String,
    },
    File {
        #[serde(rename = "file")]
        path: String,
        sha256: String,
        name: String,
    },
}

impl AlgebraIdentity {
    pub fn label(&self) -> &str {
        match self {
            AlgebraIdentity::Catalog { name } => name,
            AlgebraIdentity::File { path, .. } => path,
        }
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub algebra: AlgebraIdentity,
    #[serde(flatten)]
    pub report: MultiplierReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_images: Option<GammaImages>,
}

impl ReportDocument {
    pub fn new(
        command: &'static str,
        algebra: AlgebraIdentity,
        report: MultiplierReport,
        series: Option<SeriesReport>,
        gamma_images: Option<GammaImages>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            algebra,
            report,
            series,
            gamma_images,
        }
    }

    pub fn table(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        let mut row = |k: &str, v: String| writeln!(out, "{k:<22}{v}").unwrap();
        row("algebra", self.algebra.label().to_string());
        row("(n, m, c)", format!("({}, {}, {})", r.n, r.m, r.c));
        match self.command {
            "bounds" => {
                row("dim M", r.dim_m.to_string());
                row("bound e1", opt(r.bound_e1));
                row("bound e2", opt(r.bound_e2));
                row("attains e2", r.attains_e2.to_string());
            }
            "capable" => {
                row("capable", r.capable.to_string());
                row("dim Z^", r.dim_exterior_center.to_string());
                row("Z^ basis", r.exterior_center.join("; "));
            }
            _ => {
                row("dim M", r.dim_m.to_string());
                row("dim L^L", r.dim_exterior_square.to_string());
                row("dim Z^", r.dim_exterior_center.to_string());
                row("capable", r.capable.to_string());
                row(
                    "bounds e1 / e2",
                    format!("{} / {}", opt(r.bound_e1), opt(r.bound_e2)),
                );
            }
        }
        if let Some(s) = &self.series {
            row("gamma dims", format!("{:?}", s.gamma_dims));
            row("center dim", s.center_dim.to_string());
            row("generators", s.min_generators.to_string());
        }
        if let Some(g) = &self.gamma_images {
            row(
                "Im gamma L/2'/3'",
                format!(
                    "{} / {} / {}",
                    g.gamma_l,
                    g.gamma2_prime,
                    opt(g.gamma3_prime)
                ),
            );
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SweepDocument {
    pub schema_version: &'static str,
    pub command: &'static str,
    #[serde(flatten)]
    pub report: SweepReport,
}

impl SweepDocument {
    pub fn new(report: SweepReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: "sweep",
            report,
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<22}{:>3}{:>3}{:>3}{:>7}{:>5}{:>5}  attains",
            "algebra", "n", "m", "c", "dim M", "e1", "e2"
        )
        .unwrap();
        for r in &self.report.rows {
            writeln!(
                out,
                "{:<22}{:>3}{:>3}{:>3}{:>7}{:>5}{:>5}  {}",
                r.name,
                r.n,
                r.m,
                r.c,
                r.dim_m,
                opt(r.bound_e1),
                opt(r.bound_e2),
                if r.attains_e2 { "yes" } else { "" }
            )
            .unwrap();
        }
        writeln!(out, "attainers: {}", self.report.attainers.join(", ")).unwrap();
        for v in &self.report.violations {
            writeln!(out, "violation: {v}").unwrap();
        }
        writeln!(out, "{}", self.report.summary).unwrap();
        out
    }
}

#[derive(Debug, Serialize)]
pub struct TheoremSummary {
    pub theorem: TheoremId,
    pub instances: usize,
    pub violations: usize,
    /// Instances where an inequality is sharp.
    pub equality: Vec<String>,
    pub informational: Vec<String>,
    pub summary: String,
}

#[derive(Debug, Serialize)]
pub struct CheckDocument {
    pub schema_version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraIdentity>,
    pub violations: usize,
    pub theorems: Vec<TheoremSummary>,
    pub reports: Vec<TheoremReport>,
}

fn instance_label(r: &TheoremReport) -> String {
    match &r.instance {
        Some(i) => format!("{} [{i}]", r.algebra),
        None => r.algebra.clone(),
    }
}

impl CheckDocument {
    pub fn new(
        algebra: Option<AlgebraIdentity>,
        theorems: &[TheoremId],
        reports: Vec<TheoremReport>,
    ) -> Self {
        let mut grouped: BTreeMap<TheoremId, Vec<&TheoremReport>> =
            theorems.iter().map(|&t| (t, Vec::new())).collect();
        for r in &reports {
            grouped.entry(r.theorem).or_default().push(r);
        }
        let summaries: Vec<TheoremSummary> = theorems
            .iter()
            .map(|t| {
                let rs = &grouped[t];
                let counted: Vec<&&TheoremReport> =
                    rs.iter().filter(|r| !r.informational).collect();
                let violations = counted.iter().filter(|r| !r.holds).count();
                let summary = if violations == 0 {
                    format!("consistent with theorem on {} instances", counted.len())
                } else {
                    format!("{violations} of {} instances fail", counted.len())
                };
                TheoremSummary {
                    theorem: *t,
                    instances: counted.len(),
                    violations,
                    equality: counted
                        .iter()
                        .filter(|r| r.equality && matches!(r.relation, Relation::AtMost))
                        .map(|r| instance_label(r))
                        .collect(),
                    informational: rs
                        .iter()
                        .filter(|r| r.informational)
                        .map(|r| instance_label(r))
                        .collect(),
                    summary,
                }
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            command: "check",
            algebra,
            violations: summaries.iter().map(|s| s.violations).sum(),
            theorems: summaries,
            reports,
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            writeln!(out, "{}", r.summary()).unwrap();
        }
        for s in &self.theorems {
            writeln!(out, "{:>4}: {}", s.theorem.label(), s.summary).unwrap();
            if !s.equality.is_empty() {
                writeln!(out, "      equality: {}", s.equality.join(", ")).unwrap();
            }
            if !s.informational.is_empty() {
                writeln!(out, "      informational: {}", s.informational.join(", ")).unwrap();
            }
        }
        out
    }
}
