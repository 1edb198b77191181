//! Invariant suites run over a whole ring.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::chains::{audit_chains, ChainAudit};
use crate::rcp::{is_minimal, minimal_below, prop22_suite};
use crate::ring::Element;

/// Chains sampled per ring by default.
pub const CHAIN_TARGET: usize = 1000;
/// Longest non-strict chain used to reach [`CHAIN_TARGET`].
pub const CHAIN_MAX_LENGTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoprimalityAudit {
    pub pairs: usize,
    pub coprime_pairs: usize,
    /// Pairs where the equivalent characterizations disagree.
    pub disagreements: Vec<(Element, Element)>,
    /// Pairs with `l(a) ∩ l(b) = 0` that are not coprime.
    pub annihilator_only_pairs: usize,
    /// Whether `l(a) ∩ l(b) = 0` alone was required to force coprimality.
    pub annihilator_converse_checked: bool,
}

pub fn coprimality_audit(an: &Analysis) -> CoprimalityAudit {
    let n = an.size();
    let rows: Vec<(usize, usize, Vec<(Element, Element)>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut coprime = 0;
            let mut annihilator_only = 0;
            let mut bad = Vec::new();
            for b in 0..n {
                let report = prop22_suite(an, a, b);
                coprime += usize::from(report.c1);
                annihilator_only += usize::from(report.c8 && !report.c1);
                if !report.agree {
                    bad.push((a, b));
                }
            }
            (coprime, annihilator_only, bad)
        })
        .collect();
    CoprimalityAudit {
        pairs: n * n,
        coprime_pairs: rows.iter().map(|r| r.0).sum(),
        annihilator_only_pairs: rows.iter().map(|r| r.1).sum(),
        disagreements: rows.into_iter().flat_map(|r| r.2).collect(),
        annihilator_converse_checked: an.is_von_neumann_regular(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityAudit {
    pub classes: usize,
    pub minimal: usize,
    /// Classes where the three minimality tests disagree.
    pub disagreements: Vec<(Element, Element)>,
    /// Classes whose `minimal_below` is not a minimal class below them.
    pub minimal_below_failures: Vec<(Element, Element)>,
}

pub fn minimality_audit(an: &Analysis) -> MinimalityAudit {
    let poset = an.poset();
    let mut audit = MinimalityAudit {
        classes: poset.len(),
        minimal: poset.minimal().len(),
        disagreements: Vec::new(),
        minimal_below_failures: Vec::new(),
    };
    for class in poset.classes() {
        if !is_minimal(an, class).agree {
            audit.disagreements.push(class.generators());
        }
        if let Some(m) = minimal_below(an, class) {
            if !(m.leq(class) && is_minimal(an, &m).poset_route) {
                audit.minimal_below_failures.push(class.generators());
            }
        }
    }
    audit
}

/// Structural checks on the tables and the derived objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureAudit {
    pub ring_axioms: bool,
    pub poset_is_partial_order: bool,
    pub radical_is_two_sided_ideal: bool,
    pub quotient_projection_is_ring_map: bool,
}

impl StructureAudit {
    pub fn passed(&self) -> bool {
        self.ring_axioms
            && self.poset_is_partial_order
            && self.radical_is_two_sided_ideal
            && self.quotient_projection_is_ring_map
    }
}

pub fn structure_audit(an: &Analysis) -> StructureAudit {
    let ring = an.ring();
    let radical = an.radical();
    let radical_ideal = radical.iter().all(|x| {
        radical.iter().all(|y| radical.contains(ring.add(x, y)))
            && ring
                .elements()
                .all(|r| radical.contains(ring.mul(r, x)) && radical.contains(ring.mul(x, r)))
    });
    StructureAudit {
        ring_axioms: ring.check_axioms().is_none(),
        poset_is_partial_order: an.poset().is_partial_order(),
        radical_is_two_sided_ideal: radical_ideal,
        quotient_projection_is_ring_map: an.quotient_by_radical().projection_is_ring_map(ring),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub ring: String,
    pub size: usize,
    pub structure: StructureAudit,
    pub coprimality: CoprimalityAudit,
    pub minimality: MinimalityAudit,
    pub chains: ChainAudit,
    pub passed: bool,
}

/// Runs every invariant suite on one ring.
pub fn verify_properties(an: &Analysis) -> PropertyReport {
    let structure = structure_audit(an);
    let coprimality = coprimality_audit(an);
    let minimality = minimality_audit(an);
    let chains = audit_chains(an, CHAIN_TARGET, CHAIN_MAX_LENGTH);
    let passed = structure.passed()
        && coprimality.disagreements.is_empty()
        && minimality.disagreements.is_empty()
        && minimality.minimal_below_failures.is_empty()
        && chains.passed;
    PropertyReport {
        ring: an.ring().label().to_owned(),
        size: an.size(),
        structure,
        coprimality,
        minimality,
        chains,
        passed,
    }
}
