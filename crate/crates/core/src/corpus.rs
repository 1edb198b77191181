//! The reference corpus of small rings and the corpus-wide audit.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::classify::audit::theorem_audit_with;
use crate::classify::classify_all;
use crate::error::{Error, Result};
use crate::ring::{RingSpec, SizeCaps};
use crate::verify::verify_properties;

/// File name and spec of every ring in the reference corpus.
pub fn standard_corpus() -> Vec<(String, RingSpec)> {
    let z = RingSpec::zmod;
    let mut out: Vec<(String, RingSpec)> =
        (2..=30).map(|n| (format!("zmod{n:02}.json"), z(n))).collect();
    out.extend([
        ("ut2_z2.json".to_owned(), RingSpec::upper_triangular(2, z(2))),
        ("ut2_z3.json".to_owned(), RingSpec::upper_triangular(2, z(3))),
        ("m2_z2.json".to_owned(), RingSpec::matrix(2, z(2))),
        ("m2_z3.json".to_owned(), RingSpec::matrix(2, z(3))),
        ("prod_z2_z2.json".to_owned(), RingSpec::product(vec![z(2), z(2)])),
        ("prod_z2_z4.json".to_owned(), RingSpec::product(vec![z(2), z(4)])),
        ("quot_z8_4.json".to_owned(), RingSpec::quotient(z(8), vec![4])),
    ]);
    out
}

/// Writes the corpus specs into `dir`, one JSON file each.
pub fn write_corpus(dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for (name, spec) in standard_corpus() {
        fs::write(dir.join(name), spec.to_json() + "\n")?;
    }
    Ok(())
}

pub fn load_spec(path: &Path) -> Result<RingSpec> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
    RingSpec::from_json(&text)
}

/// JSON files in `dir`, sorted by file name.
pub fn spec_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir)
        .map_err(|e| Error::InvalidSpec(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    InputError,
    CapExceeded,
    InvariantViolation,
}

impl Status {
    /// Process exit code for this status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::InputError => 1,
            Status::InvariantViolation => 2,
            Status::CapExceeded => 3,
        }
    }

    pub fn of_error(err: &Error) -> Self {
        if err.is_cap() {
            Status::CapExceeded
        } else {
            Status::InputError
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingSummary {
    pub size: usize,
    pub class_count: usize,
    pub minimal_class_count: usize,
    pub predicates: BTreeMap<&'static str, Option<bool>>,
    pub route_disagreements: Vec<&'static str>,
    pub predicate_errors: Vec<String>,
    pub failed_implications: Vec<&'static str>,
    pub pair_checks: PairCounts,
    pub coprime_pairs: usize,
    pub coprimality_disagreements: usize,
    pub minimality_disagreements: usize,
    pub chains_sampled: usize,
    pub chain_failures: usize,
    pub structure_ok: bool,
    pub strongly_exchange_not_clean: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    pub radical_pairs: usize,
    pub radical_failures: usize,
    pub non_radical_pairs: usize,
    pub refinement_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingAuditEntry {
    pub file: String,
    pub ring: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<RingSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateReport {
    pub ring_count: usize,
    pub passed: usize,
    pub failed: usize,
    pub warnings: Vec<String>,
    pub status: Status,
    pub rings: Vec<RingAuditEntry>,
}

impl AggregateReport {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Full audit of one analysed ring.
pub fn audit_ring(an: &Analysis) -> (Status, RingSummary) {
    let report = classify_all(an);
    let theorems = theorem_audit_with(an, &report);
    let props = verify_properties(an);

    let chains = &props.chains;
    let chain_failures = chains.witness_failures
        + chains.lower_bound_criterion_failures
        + chains.minimal_lower_bound_failures
        + chains.annihilator_failures
        + chains.idempotent_recipe_failures
        + chains.strict_chain_length_violations;
    let predicate_errors: Vec<String> = report
        .errors()
        .map(|(name, e)| format!("{name}: {e}"))
        .collect();
    let summary = RingSummary {
        size: an.size(),
        class_count: report.class_count,
        minimal_class_count: report.minimal_class_count,
        predicates: report
            .predicates
            .0
            .iter()
            .map(|(name, _)| (*name, report.value(name)))
            .collect(),
        route_disagreements: report
            .predicates
            .0
            .iter()
            .filter(|(name, _)| report.record(name).is_some_and(|r| !r.agree))
            .map(|(name, _)| *name)
            .collect(),
        failed_implications: theorems
            .implications
            .iter()
            .chain(&theorems.finite_ring_facts)
            .filter(|i| !i.holds)
            .map(|i| i.name)
            .collect(),
        pair_checks: PairCounts {
            radical_pairs: theorems.pairs.radical_pairs,
            radical_failures: theorems.pairs.radical_failures.len(),
            non_radical_pairs: theorems.pairs.non_radical_pairs,
            refinement_failures: theorems.pairs.refinement_failures.len(),
        },
        coprime_pairs: props.coprimality.coprime_pairs,
        coprimality_disagreements: props.coprimality.disagreements.len(),
        minimality_disagreements: props.minimality.disagreements.len(),
        chains_sampled: chains.chains,
        chain_failures,
        structure_ok: props.structure.passed(),
        strongly_exchange_not_clean: theorems.strongly_exchange_not_clean,
        predicate_errors,
    };
    let cap_hit = report.errors().any(|(_, e)| e.is_cap());
    let status = if !(theorems.passed && props.passed) {
        Status::InvariantViolation
    } else if cap_hit {
        Status::CapExceeded
    } else if !summary.predicate_errors.is_empty() {
        Status::InputError
    } else {
        Status::Pass
    };
    (status, summary)
}

fn audit_file(path: &Path, caps: &SizeCaps) -> RingAuditEntry {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let prepared = load_spec(path)
        .and_then(|spec| spec.build_with(caps))
        .and_then(|ring| Analysis::with_caps(ring, *caps));
    match prepared {
        Ok(an) => {
            let (status, summary) = audit_ring(&an);
            RingAuditEntry {
                file,
                ring: Some(an.ring().label().to_owned()),
                status,
                error: None,
                summary: Some(summary),
            }
        }
        Err(e) => RingAuditEntry {
            file,
            ring: None,
            status: Status::of_error(&e),
            error: Some(e.to_string()),
            summary: None,
        },
    }
}

/// Audits every spec file in `dir`. Rings are processed concurrently; the
/// report lists them in file-name order and contains no timing data, so it
/// is identical across runs.
pub fn run_audit(dir: &Path, caps: &SizeCaps) -> Result<AggregateReport> {
    let files = spec_files(dir)?;
    let rings: Vec<RingAuditEntry> = files.par_iter().map(|p| audit_file(p, caps)).collect();
    let mut warnings = Vec::new();
    if rings.is_empty() {
        warnings.push(format!("no ring specs found in {}", dir.display()));
    }
    let passed = rings.iter().filter(|r| r.status == Status::Pass).count();
    let status = rings.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
    Ok(AggregateReport {
        ring_count: rings.len(),
        passed,
        failed: rings.len() - passed,
        warnings,
        status,
        rings,
    })
}
