//! Report envelope and the three output encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use gridmp::preclusion::{Classification, MpResult};
use gridmp::{Grid, Matching};

pub const SCHEMA: &str = "gridmp/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetSource {
    Default,
    Env,
    Flag,
}

#[derive(Debug, Clone, Serialize)]
pub struct Budget {
    pub subset_tests_per_level: u128,
    pub source: BudgetSource,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub dims: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<Budget>,
    pub results: Results,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u128>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Results {
    Mp(Vec<MpJson>),
    Construct(Vec<ConstructJson>),
    Trials(Vec<TrialsJson>),
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub skipped: Vec<Skipped>,
}

#[derive(Debug, Serialize)]
pub struct Skipped {
    pub dims: String,
    pub error: String,
}

#[derive(Debug, Serialize)]
pub struct MpJson {
    pub dims: String,
    pub mp: usize,
    pub predicted_mp: usize,
    pub prediction_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub super_matched: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_counts: Option<BTreeMap<&'static str, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_sets: Option<Vec<SetJson>>,
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct SetJson {
    pub edges: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassJson>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassJson {
    Trivial { vertex: String },
    SpecialTwoGrid { u0: usize, axis: usize },
    Other,
}

impl ClassJson {
    pub fn new(grid: &Grid, c: &Classification) -> Self {
        match *c {
            Classification::TrivialAtVertex(v) => ClassJson::Trivial {
                vertex: grid.format_vertex(v),
            },
            Classification::SpecialTwoGrid { u0, axis } => ClassJson::SpecialTwoGrid { u0, axis },
            Classification::Other => ClassJson::Other,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            ClassJson::Trivial { .. } => "trivial",
            ClassJson::SpecialTwoGrid { .. } => "special_two_grid",
            ClassJson::Other => "other",
        }
    }

    fn describe(&self) -> String {
        match self {
            ClassJson::Trivial { vertex } => format!("trivial at {vertex}"),
            ClassJson::SpecialTwoGrid { u0, axis } => format!("special u0={u0} axis={axis}"),
            ClassJson::Other => "other".into(),
        }
    }
}

impl MpJson {
    pub fn bare(grid: &Grid, mp: usize, predicted: usize) -> Self {
        MpJson {
            dims: grid.to_string(),
            mp,
            predicted_mp: predicted,
            prediction_match: mp == predicted,
            super_matched: None,
            checks: None,
            class_counts: None,
            optimal_sets: None,
        }
    }

    pub fn full(grid: &Grid, r: &MpResult, sets: bool, classify: bool) -> Self {
        let classes: Vec<ClassJson> = r
            .classifications
            .iter()
            .map(|c| ClassJson::new(grid, c))
            .collect();
        let counts = classify.then(|| {
            let mut m = BTreeMap::from([("other", 0), ("special_two_grid", 0), ("trivial", 0)]);
            for c in &classes {
                *m.get_mut(c.label()).expect("known label") += 1;
            }
            m
        });
        let optimal_sets = sets.then(|| {
            r.optimal_sets
                .iter()
                .zip(&classes)
                .map(|(f, c)| SetJson {
                    edges: f.format(grid),
                    classification: classify.then(|| c.clone()),
                })
                .collect()
        });
        MpJson {
            dims: grid.to_string(),
            mp: r.mp,
            predicted_mp: r.predicted_mp,
            prediction_match: r.prediction_match,
            super_matched: Some(r.super_matched),
            checks: Some(
                r.checks
                    .iter()
                    .map(|c| CheckJson {
                        name: c.name,
                        passed: c.passed,
                    })
                    .collect(),
            ),
            class_counts: counts,
            optimal_sets,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConstructJson {
    pub kind: String,
    pub dims: String,
    pub params: BTreeMap<&'static str, serde_json::Value>,
    pub size: usize,
    pub uncovered: Vec<String>,
    pub self_check: bool,
    pub edges: Vec<String>,
}

impl ConstructJson {
    pub fn new(
        kind: &str,
        grid: &Grid,
        params: BTreeMap<&'static str, serde_json::Value>,
        m: &Matching,
        self_check: bool,
    ) -> Self {
        ConstructJson {
            kind: kind.into(),
            dims: grid.to_string(),
            params,
            size: m.len(),
            uncovered: m
                .uncovered(grid)
                .into_iter()
                .map(|v| grid.format_vertex(v))
                .collect(),
            self_check,
            edges: m.iter().map(|e| grid.format_edge(e)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TrialsJson {
    pub seed: u64,
    pub count: usize,
    pub instances: usize,
    pub disjoint_cycle_instances: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let row = |w: &mut csv::Writer<Vec<u8>>, fields: &[String]| {
            w.write_record(fields).expect("in-memory write")
        };
        match &self.results {
            Results::Mp(rs) => {
                let header = [
                    "dims",
                    "mp",
                    "predicted_mp",
                    "prediction_match",
                    "set",
                    "classification",
                    "edges",
                ];
                row(&mut w, &header.map(String::from));
                for r in rs {
                    let head = [
                        r.dims.clone(),
                        r.mp.to_string(),
                        r.predicted_mp.to_string(),
                        r.prediction_match.to_string(),
                    ];
                    match &r.optimal_sets {
                        Some(sets) if !sets.is_empty() => {
                            for (i, s) in sets.iter().enumerate() {
                                let class = s
                                    .classification
                                    .as_ref()
                                    .map_or(String::new(), |c| c.describe());
                                let mut f = head.to_vec();
                                f.extend([i.to_string(), class, s.edges.join(" ")]);
                                row(&mut w, &f);
                            }
                        }
                        _ => {
                            let mut f = head.to_vec();
                            f.extend([String::new(), String::new(), String::new()]);
                            row(&mut w, &f);
                        }
                    }
                }
                if let Some(s) = &self.summary {
                    for k in &s.skipped {
                        row(
                            &mut w,
                            &[
                                k.dims.clone(),
                                String::new(),
                                String::new(),
                                String::new(),
                                String::new(),
                                format!("skipped: {}", k.error),
                                String::new(),
                            ],
                        );
                    }
                }
            }
            Results::Construct(cs) => {
                row(&mut w, &["kind", "dims", "edge"].map(String::from));
                for c in cs {
                    for e in &c.edges {
                        row(&mut w, &[c.kind.clone(), c.dims.clone(), e.clone()]);
                    }
                }
            }
            Results::Trials(ts) => {
                row(
                    &mut w,
                    &[
                        "seed",
                        "count",
                        "instances",
                        "disjoint_cycle_instances",
                        "passed",
                    ]
                    .map(String::from),
                );
                for t in ts {
                    row(
                        &mut w,
                        &[
                            t.seed.to_string(),
                            t.count.to_string(),
                            t.instances.to_string(),
                            t.disjoint_cycle_instances.to_string(),
                            t.passed.to_string(),
                        ],
                    );
                }
            }
        }
        String::from_utf8(w.into_inner().expect("flush to vec")).expect("utf-8 fields")
    }

    fn text(&self) -> String {
        let mut out = String::new();
        match &self.results {
            Results::Mp(rs) => {
                for r in rs {
                    let verdict = if r.prediction_match {
                        "match"
                    } else {
                        "MISMATCH"
                    };
                    let _ = write!(
                        out,
                        "{}  mp={} predicted={} {verdict}",
                        r.dims, r.mp, r.predicted_mp
                    );
                    if let Some(sets) = &r.optimal_sets {
                        let _ = write!(out, " sets={}", sets.len());
                    }
                    if let Some(counts) = &r.class_counts {
                        let parts: Vec<String> =
                            counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        let _ = write!(out, " [{}]", parts.join(" "));
                    }
                    out.push('\n');
                    if let Some(checks) = &r.checks {
                        for c in checks.iter().filter(|c| !c.passed) {
                            let _ = writeln!(out, "  failed check: {}", c.name);
                        }
                    }
                    for s in r.optimal_sets.iter().flatten() {
                        let class = s
                            .classification
                            .as_ref()
                            .map_or(String::new(), |c| format!("  ({})", c.describe()));
                        let _ = writeln!(out, "  {{{}}}{class}", s.edges.join(", "));
                    }
                }
            }
            Results::Construct(cs) => {
                for c in cs {
                    let check = if c.self_check { "pass" } else { "FAIL" };
                    let _ = writeln!(
                        out,
                        "{} on {}: {} edges, uncovered {{{}}}, self-check {check}",
                        c.kind,
                        c.dims,
                        c.size,
                        c.uncovered.join("; ")
                    );
                    for e in &c.edges {
                        let _ = writeln!(out, "  {e}");
                    }
                }
            }
            Results::Trials(ts) => {
                for t in ts {
                    let _ = writeln!(
                        out,
                        "seed {:#x}: {} instances, {} disjoint-cycle instances, {} failures",
                        t.seed,
                        t.instances,
                        t.disjoint_cycle_instances,
                        t.failures.len()
                    );
                    for f in &t.failures {
                        let _ = writeln!(out, "  {f}");
                    }
                }
            }
        }
        if let Some(s) = &self.summary {
            for k in &s.skipped {
                let _ = writeln!(out, "{}  skipped: {}", k.dims, k.error);
            }
            let _ = writeln!(
                out,
                "total {} matched {} mismatched {} skipped {}",
                s.total,
                s.matched,
                s.mismatched,
                s.skipped.len()
            );
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        if let Some(ms) = self.runtime_ms {
            let _ = writeln!(out, "runtime {ms} ms");
        }
        out
    }
}
