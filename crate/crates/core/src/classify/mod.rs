//! Ring-class predicates, each decided by independent routes that must agree.
//!
//! Predicates live behind the [`Predicate`] trait and are looked up by name in
//! a [`PredicateRegistry`]; [`classify`] runs a selection of them on one ring.

pub mod audit;
pub mod continuity;
mod predicates;
mod registry;

pub use audit::{theorem_audit, Implication, PairLemmaAudit, TheoremAudit};
pub use predicates::{
    idempotent_lifts, is_clean, is_exchange, is_indecomposable, is_local, is_perfect_dcc,
    is_quasi_duo, is_semiperfect, is_semiregular, is_semisimple, is_strongly_exchange,
    is_vn_regular, local_decomposition,
};
pub use registry::{Predicate, PredicateRegistry};

use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};

/// Outcome of one route for a predicate. `value` is `None` when the route
/// could not run (for instance an enumeration cap was hit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Route {
    pub name: &'static str,
    pub value: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Route {
    pub fn new(name: &'static str, value: bool) -> Self {
        Self {
            name,
            value: Some(value),
            note: None,
        }
    }

    pub fn skipped(name: &'static str, note: impl Into<String>) -> Self {
        Self {
            name,
            value: None,
            note: Some(note.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredicateRecord {
    pub value: bool,
    /// Every route that ran returned `value`.
    pub agree: bool,
    pub routes: Vec<Route>,
    /// Route-specific certificates and counterexamples.
    pub witnesses: serde_json::Value,
}

impl PredicateRecord {
    /// Takes the value of the first route that ran.
    pub fn from_routes(routes: Vec<Route>, witnesses: serde_json::Value) -> Self {
        let value = routes.iter().find_map(|r| r.value).unwrap_or(false);
        let agree = routes.iter().all(|r| r.value.map_or(true, |v| v == value));
        Self {
            value,
            agree,
            routes,
            witnesses,
        }
    }

    pub fn route(&self, name: &str) -> Option<&Route> {
        self.routes.iter().find(|r| r.name == name)
    }
}

/// A predicate result, or the error that stopped it.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Record(PredicateRecord),
    Failed(Error),
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Outcome::Record(record) => record.serialize(serializer),
            Outcome::Failed(err) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("error", &err.to_string())?;
                map.serialize_entry("cap_exceeded", &err.is_cap())?;
                map.end()
            }
        }
    }
}

/// Predicate outcomes in registry order.
#[derive(Debug, Clone, PartialEq)]
pub struct PredicateTable(pub Vec<(&'static str, Outcome)>);

impl Serialize for PredicateTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, outcome) in &self.0 {
            map.serialize_entry(name, outcome)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub size: usize,
    pub class_count: usize,
    pub minimal_class_count: usize,
    pub minimal_classes: Vec<(usize, usize)>,
    pub predicates: PredicateTable,
    /// What each predicate and route decides, in words.
    pub traceability: PredicateDescriptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredicateDescriptions(pub Vec<(&'static str, &'static str)>);

impl Serialize for PredicateDescriptions {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, text) in &self.0 {
            map.serialize_entry(name, text)?;
        }
        map.end()
    }
}

impl ClassificationReport {
    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.predicates.0.iter().find(|(n, _)| *n == name).map(|(_, o)| o)
    }

    pub fn record(&self, name: &str) -> Option<&PredicateRecord> {
        match self.get(name)? {
            Outcome::Record(r) => Some(r),
            Outcome::Failed(_) => None,
        }
    }

    pub fn value(&self, name: &str) -> Option<bool> {
        self.record(name).map(|r| r.value)
    }

    /// Route disagreement in any predicate.
    pub fn routes_agree(&self) -> bool {
        self.predicates.0.iter().all(|(_, o)| match o {
            Outcome::Record(r) => r.agree,
            Outcome::Failed(_) => true,
        })
    }

    pub fn errors(&self) -> impl Iterator<Item = (&'static str, &Error)> {
        self.predicates.0.iter().filter_map(|(n, o)| match o {
            Outcome::Failed(e) => Some((*n, e)),
            Outcome::Record(_) => None,
        })
    }
}

/// Runs the given predicates concurrently and collects them in order.
pub fn classify(an: &Analysis, predicates: &[&dyn Predicate]) -> ClassificationReport {
    let outcomes: Vec<(&'static str, Outcome)> = predicates
        .par_iter()
        .map(|p| {
            let outcome = match p.evaluate(an) {
                Ok(record) => Outcome::Record(record),
                Err(err) => Outcome::Failed(err),
            };
            (p.name(), outcome)
        })
        .collect();
    let poset = an.poset();
    ClassificationReport {
        ring: an.ring().label().to_owned(),
        size: an.size(),
        class_count: poset.len(),
        minimal_class_count: poset.minimal().len(),
        minimal_classes: poset
            .minimal()
            .iter()
            .map(|&i| poset.class(i).generators())
            .collect(),
        predicates: PredicateTable(outcomes),
        traceability: PredicateDescriptions(
            predicates.iter().map(|p| (p.name(), p.description())).collect(),
        ),
    }
}

/// Every predicate of the standard registry.
pub fn classify_all(an: &Analysis) -> ClassificationReport {
    let registry = PredicateRegistry::standard();
    classify(an, &registry.all())
}
