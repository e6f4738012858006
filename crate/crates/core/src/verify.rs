//! Computing codegree sets on request and checking them against the
//! expected-value data.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{build_group, BuildOptions, Family, GroupId};
use crate::chartab::{character_table_with_classes, ConjugacyClasses};
use crate::error::{Error, Result};
use crate::formulas::predict::{expected_rows, ExpectedRow};
use crate::formulas::{codegrees_formula_with_classes, predict_from_paper, CodegreeReport};
use crate::pc::{PcGroup, DEFAULT_ORDER_GUARD};

/// Version of the JSON layouts written by `compute` and `verify`.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Formula,
    Bruteforce,
    Both,
}

impl MethodChoice {
    fn formula(self) -> bool {
        matches!(self, MethodChoice::Formula | MethodChoice::Both)
    }

    fn bruteforce(self) -> bool {
        matches!(self, MethodChoice::Bruteforce | MethodChoice::Both)
    }
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "formula" => Ok(MethodChoice::Formula),
            "bruteforce" => Ok(MethodChoice::Bruteforce),
            "both" => Ok(MethodChoice::Both),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// Settings shared by `compute` and `verify`.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub order_guard: u64,
    pub format: Format,
    /// Overrides the suite defaults when set.
    pub primes: Option<Vec<u32>>,
    pub method: MethodChoice,
    pub build: BuildOptions,
    /// Include wall-clock times in the output (which then is no longer
    /// reproducible byte for byte).
    pub timings: bool,
    /// User presentations for rows without a catalog template.
    pub supplied: BTreeMap<String, PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            order_guard: DEFAULT_ORDER_GUARD,
            format: Format::Json,
            primes: None,
            method: MethodChoice::Both,
            build: BuildOptions::default(),
            timings: false,
            supplied: BTreeMap::new(),
        }
    }
}

/// Result of `compute` on one group.
#[derive(Clone, Debug, Serialize)]
pub struct ComputeOutput {
    pub schema_version: u32,
    pub group: String,
    pub p: u32,
    pub order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<CodegreeReport>,
    /// Why no formula report is present when one was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<CodegreeReport>,
    /// Whether the formula and brute-force sets agree, when both exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r#match: Option<bool>,
}

/// Formula and/or brute-force reports for a built group. A missing closed
/// form is reported in `formula_note`, not as an error.
pub fn compute_group(group: &PcGroup, name: String, config: &RunConfig) -> Result<ComputeOutput> {
    let classes = ConjugacyClasses::new(group);
    let (formula, formula_note) = if config.method.formula() {
        match codegrees_formula_with_classes(group, &classes) {
            Ok(r) => (Some(r), None),
            Err(Error::NoFormula(why)) => (None, Some(why)),
            Err(e) => return Err(e),
        }
    } else {
        (None, None)
    };
    let bruteforce = if config.method.bruteforce() {
        Some(character_table_with_classes(group, classes, config.seed)?.codegree_report())
    } else {
        None
    };
    let r#match = match (&formula, &bruteforce) {
        (Some(f), Some(b)) => Some(f.cod == b.cod),
        _ => None,
    };
    Ok(ComputeOutput {
        schema_version: SCHEMA_VERSION,
        group: name,
        p: group.p(),
        order: group.order() as u64,
        formula,
        formula_note,
        bruteforce,
        r#match,
    })
}

pub fn compute(id: &GroupId, config: &RunConfig) -> Result<ComputeOutput> {
    let group = build_group(id, config.build, config.order_guard)?;
    compute_group(&group, id.family.to_string(), config)
}

/// A verification suite: a slice of the expected-value data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    P3,
    P4,
    P5,
    #[serde(rename = "3groups")]
    ThreeGroups,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 4] = [Suite::P3, Suite::P4, Suite::P5, Suite::ThreeGroups];

    pub fn name(self) -> &'static str {
        match self {
            Suite::P3 => "p3",
            Suite::P4 => "p4",
            Suite::P5 => "p5",
            Suite::ThreeGroups => "3groups",
            Suite::All => "all",
        }
    }

    /// Primes used when none are given.
    pub fn default_primes(self) -> Vec<u32> {
        match self {
            Suite::P3 => vec![3, 5, 7],
            Suite::P4 | Suite::P5 => vec![5, 7],
            Suite::ThreeGroups => vec![3],
            Suite::All => vec![],
        }
    }

    fn covers(self, row: &ExpectedRow) -> bool {
        let src = row.source.as_str();
        match self {
            Suite::P3 => src == "order p^3 theorem",
            Suite::P4 => src == "Table 1",
            Suite::P5 => src == "Table 2" || src == "Table 3",
            Suite::ThreeGroups => src == "Table 4",
            Suite::All => Suite::PARTS.iter().any(|s| s.covers(row)),
        }
    }

    pub fn rows(self) -> Vec<&'static ExpectedRow> {
        expected_rows().iter().filter(|r| self.covers(r)).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "p3" => Ok(Suite::P3),
            "p4" => Ok(Suite::P4),
            "p5" => Ok(Suite::P5),
            "3groups" => Ok(Suite::ThreeGroups),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matches {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_vs_bruteforce: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_vs_expected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruteforce_vs_expected: Option<bool>,
}

/// One (row, prime) check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub suite: Suite,
    pub row_id: String,
    /// Catalog template, `user_json:PATH` for supplied rows, or the row
    /// label for rows that could not be built.
    pub group: String,
    pub p: u32,
    pub status: Status,
    pub expected: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<Vec<u64>>,
    pub matches: Matches,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationResult {
    pub schema_version: u32,
    pub suite: Suite,
    pub seed: u64,
    pub method: MethodChoice,
    pub records: Vec<VerificationRecord>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// No record failed. Skipped records neither pass nor fail.
    pub pass: bool,
}

struct Job {
    suite: Suite,
    row: &'static ExpectedRow,
    p: u32,
}

fn jobs(suite: Suite, config: &RunConfig) -> Vec<Job> {
    let parts: Vec<Suite> = match suite {
        Suite::All => Suite::PARTS.to_vec(),
        s => vec![s],
    };
    let mut out = Vec::new();
    for part in parts {
        let primes = config.primes.clone().unwrap_or_else(|| part.default_primes());
        for row in part.rows() {
            for &p in &primes {
                out.push(Job { suite: part, row, p });
            }
        }
    }
    out
}

fn skipped(job: &Job, group: String, note: String) -> VerificationRecord {
    VerificationRecord {
        suite: job.suite,
        row_id: job.row.row_id.clone(),
        group,
        p: job.p,
        status: Status::Skipped,
        expected: job.row.cod(job.p),
        formula: None,
        formula_method: None,
        bruteforce: None,
        matches: Matches {
            formula_vs_bruteforce: None,
            formula_vs_expected: None,
            bruteforce_vs_expected: None,
        },
        note: Some(note),
        runtime_ms: None,
    }
}

fn run_job(job: &Job, config: &RunConfig) -> VerificationRecord {
    let row = job.row;
    let family = if let Some(path) = config.supplied.get(&row.row_id) {
        Family::UserJson(path.clone())
    } else if let Some(f) = row.family() {
        f
    } else {
        return skipped(
            job,
            row.label.clone(),
            "not_constructible: no presentation in the catalog; supply one with --supply".into(),
        );
    };
    let id = GroupId::new(family, job.p);
    let name = id.family.to_string();
    if !row.primes.admits(job.p) {
        return skipped(job, name, format!("expected value is stated only for p {}", row.primes));
    }
    let start = Instant::now();
    let group = match build_group(&id, config.build, config.order_guard) {
        Ok(g) => g,
        Err(e @ Error::OrderGuard { .. }) => return skipped(job, name, e.to_string()),
        Err(e) => {
            let mut rec = skipped(job, name, e.to_string());
            rec.status = Status::Fail;
            return rec;
        }
    };
    let mut rec = skipped(job, name.clone(), String::new());
    rec.note = None;
    match compute_group(&group, name, config) {
        Ok(out) => {
            rec.formula_method = out.formula.as_ref().map(|r| r.method.to_string());
            rec.formula = out.formula.map(|r| r.cod);
            rec.note = out.formula_note.map(|n| format!("no closed form: {n}"));
            rec.bruteforce = out.bruteforce.map(|r| r.cod);
        }
        Err(e) => {
            rec.status = Status::Fail;
            rec.note = Some(e.to_string());
        }
    }
    let expected = &rec.expected;
    rec.matches = Matches {
        formula_vs_bruteforce: match (&rec.formula, &rec.bruteforce) {
            (Some(f), Some(b)) => Some(f == b),
            _ => None,
        },
        formula_vs_expected: rec.formula.as_ref().map(|f| f == expected),
        bruteforce_vs_expected: rec.bruteforce.as_ref().map(|b| b == expected),
    };
    let m = &rec.matches;
    let all_agree = [m.formula_vs_bruteforce, m.formula_vs_expected, m.bruteforce_vs_expected]
        .iter()
        .all(|x| x.unwrap_or(true));
    let any_checked = m.formula_vs_expected.is_some() || m.bruteforce_vs_expected.is_some();
    if rec.status != Status::Fail {
        rec.status = if !all_agree {
            Status::Fail
        } else if any_checked {
            Status::Pass
        } else {
            Status::Skipped
        };
    }
    if config.timings {
        rec.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    rec
}

/// Runs every (row, prime) pair of `suite`. Pairs are evaluated in parallel
/// and reported in suite order, then prime order.
pub fn verify(suite: Suite, config: &RunConfig) -> VerificationResult {
    let records: Vec<VerificationRecord> = jobs(suite, config)
        .par_iter()
        .map(|job| run_job(job, config))
        .collect();
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    VerificationResult {
        schema_version: SCHEMA_VERSION,
        suite,
        seed: config.seed,
        method: config.method,
        passed,
        failed,
        skipped,
        pass: failed == 0,
        records,
    }
}

/// Expected set for a catalog group, if any row states one.
pub fn expected_for(id: &GroupId) -> Option<Vec<u64>> {
    predict_from_paper(id).map(|p| p.cod)
}

fn set(v: &Option<Vec<u64>>) -> String {
    match v {
        Some(v) => format_set(v),
        None => "-".into(),
    }
}

pub fn format_set(v: &[u64]) -> String {
    let s: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{{{}}}", s.join(", "))
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    }
}

impl VerificationResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "suite", "row_id", "group", "p", "status", "expected", "formula", "formula_method",
            "bruteforce", "note",
        ])
        .expect("in-memory write");
        for r in &self.records {
            w.write_record([
                r.suite.name(),
                &r.row_id,
                &r.group,
                &r.p.to_string(),
                status_name(r.status),
                &format_set(&r.expected),
                &set(&r.formula),
                r.formula_method.as_deref().unwrap_or(""),
                &set(&r.bruteforce),
                r.note.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!(
            "# verify {} (seed {})\n\n{} passed, {} failed, {} skipped: **{}**\n\n",
            self.suite,
            self.seed,
            self.passed,
            self.failed,
            self.skipped,
            if self.pass { "PASS" } else { "FAIL" }
        );
        s.push_str("| row | group | p | status | expected | formula | brute force | f=b | f=e | b=e | note |\n");
        s.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
        for r in &self.records {
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                r.row_id,
                r.group,
                r.p,
                status_name(r.status),
                format_set(&r.expected),
                set(&r.formula),
                set(&r.bruteforce),
                flag(r.matches.formula_vs_bruteforce),
                flag(r.matches.formula_vs_expected),
                flag(r.matches.bruteforce_vs_expected),
                r.note.as_deref().unwrap_or(""),
            ));
        }
        s
    }

    /// One line per failed record, for stderr.
    pub fn diff_report(&self) -> String {
        self.records
            .iter()
            .filter(|r| r.status == Status::Fail)
            .map(|r| {
                format!(
                    "MISMATCH {} {} p={}: expected {}, formula {}, brute force {}{}\n",
                    r.row_id,
                    r.group,
                    r.p,
                    format_set(&r.expected),
                    set(&r.formula),
                    set(&r.bruteforce),
                    r.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default()
                )
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Md => self.to_markdown(),
        }
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

impl ComputeOutput {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["group", "p", "order", "method", "cod"]).expect("in-memory write");
        for r in [&self.formula, &self.bruteforce].into_iter().flatten() {
            w.write_record([
                self.group.clone(),
                self.p.to_string(),
                self.order.to_string(),
                r.method.to_string(),
                format_set(&r.cod),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {} at p = {} (order {})\n\n", self.group, self.p, self.order);
        s.push_str("| method | cod(G) |\n|---|---|\n");
        for r in [&self.formula, &self.bruteforce].into_iter().flatten() {
            s.push_str(&format!("| {} | {} |\n", r.method, format_set(&r.cod)));
        }
        if let Some(note) = &self.formula_note {
            s.push_str(&format!("\nNo closed form: {note}.\n"));
        }
        if let Some(m) = self.r#match {
            s.push_str(&format!("\nmatch: {m}\n"));
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Md => self.to_markdown(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_partition_the_data() {
        let all = Suite::All.rows().len();
        let parts: usize = Suite::PARTS.iter().map(|s| s.rows().len()).sum();
        assert_eq!(all, parts);
        assert_eq!(all, expected_rows().len());
    }

    #[test]
    fn p3_suite_passes() {
        let config = RunConfig {
            primes: Some(vec![3, 5]),
            ..RunConfig::default()
        };
        let r = verify(Suite::P3, &config);
        assert!(r.pass, "{}", r.diff_report());
        assert_eq!(r.passed, 4);
        assert_eq!(r.records[0].formula_method.as_deref(), Some("cod_extraspecial"));
    }

    #[test]
    fn unbuildable_rows_are_skipped() {
        let config = RunConfig {
            primes: Some(vec![5]),
            method: MethodChoice::Formula,
            ..RunConfig::default()
        };
        let r = verify(Suite::P4, &config);
        assert!(r.pass);
        let rec = r.records.iter().find(|r| r.row_id == "t1_phi2_211a").unwrap();
        assert_eq!(rec.status, Status::Skipped);
        assert!(rec.note.as_deref().unwrap().starts_with("not_constructible"));
        // φ₂(31) is VZ, φ₂(211)b too: the formula route covers both.
        let rec = r.records.iter().find(|r| r.row_id == "t1_phi2_31").unwrap();
        assert_eq!(rec.status, Status::Pass);
    }

    #[test]
    fn guard_downgrades_to_skipped() {
        let config = RunConfig {
            primes: Some(vec![5]),
            order_guard: 100,
            ..RunConfig::default()
        };
        let r = verify(Suite::P3, &config);
        assert!(r.records.iter().all(|r| r.status == Status::Skipped));
        assert_eq!(r.passed, 0);
    }

    #[test]
    fn compute_reports_match() {
        let id = GroupId::parse("phi2_211b", 5).unwrap();
        let out = compute(&id, &RunConfig::default()).unwrap();
        assert_eq!(out.r#match, Some(true));
        assert_eq!(out.bruteforce.unwrap().cod, vec![1, 5, 125]);
        let id = GroupId::parse("phi4_221c", 5).unwrap();
        let out = compute(&id, &RunConfig::default()).unwrap();
        assert!(out.formula.is_none());
        assert!(out.formula_note.is_some());
        assert_eq!(out.bruteforce.unwrap().cod, vec![1, 5, 25]);
    }
}
