//! Implications between ring classes, evaluated with premises and conclusions
//! computed independently, plus constructive checks on individual pairs.

use serde::Serialize;

use super::{classify_all, ClassificationReport};
use crate::analysis::Analysis;
use crate::error::Result;
use crate::ring::{additive_sum, Element, ElementSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub name: &'static str,
    pub premise: bool,
    pub conclusion: bool,
    pub holds: bool,
}

impl Implication {
    fn new(name: &'static str, premise: bool, conclusion: bool) -> Self {
        Self {
            name,
            premise,
            conclusion,
            holds: !premise || conclusion,
        }
    }
}

/// Checks on every right coprime pair `(a, b)` of elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairLemmaAudit {
    /// Pairs with `aR ∩ bR ⊆ J`.
    pub radical_pairs: usize,
    /// Of those, pairs where `(aR + J) ∩ (bR + J) ⊆ J` fails.
    pub radical_failures: Vec<(Element, Element)>,
    /// Pairs with `aR ∩ bR ⊄ J`.
    pub non_radical_pairs: usize,
    /// `(a, b) -> (c, d)` with `⟨c, d⟩ < ⟨a, b⟩` sharing one generator, for
    /// the canonical generators of each class.
    pub refinements: Vec<((Element, Element), (Element, Element))>,
    /// Non-radical pairs for which the search found nothing.
    pub refinement_failures: Vec<(Element, Element)>,
}

impl PairLemmaAudit {
    pub fn passed(&self) -> bool {
        self.radical_failures.is_empty() && self.refinement_failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremAudit {
    pub ring: String,
    pub implications: Vec<Implication>,
    /// Facts that hold for every finite ring, checked as sanity conditions.
    pub finite_ring_facts: Vec<Implication>,
    pub pairs: PairLemmaAudit,
    /// Strongly exchange rings that are not clean. Reported, never asserted.
    pub strongly_exchange_not_clean: bool,
    pub passed: bool,
}

/// Smaller class sharing a generator with `⟨a, b⟩`: first `z ∈ bR` with
/// `zR ⊊ bR` and `aR + zR = R`, else `z ∈ aR` with `zR ⊊ aR` and
/// `zR + bR = R`, both scanned in ascending order.
pub fn strict_refinement(an: &Analysis, a: Element, b: Element) -> Option<(Element, Element)> {
    let shrink = |fixed: Element, moving: Element, fixed_first: bool| {
        an.right_ideal(moving).iter().find(|&z| {
            an.right_ideal(z).is_strict_subset(an.right_ideal(moving))
                && if fixed_first {
                    an.right_coprime(fixed, z)
                } else {
                    an.right_coprime(z, fixed)
                }
        })
    };
    shrink(a, b, true)
        .map(|z| (a, z))
        .or_else(|| shrink(b, a, false).map(|z| (z, b)))
}

pub fn pair_lemma_audit(an: &Analysis) -> PairLemmaAudit {
    let ring = an.ring();
    let j = an.radical();
    let poset = an.poset();
    let mut audit = PairLemmaAudit {
        radical_pairs: 0,
        radical_failures: Vec::new(),
        non_radical_pairs: 0,
        refinements: Vec::new(),
        refinement_failures: Vec::new(),
    };
    let lifted = |ideal: &ElementSet| additive_sum(ring, ideal, j);
    for a in ring.elements() {
        for b in ring.elements().filter(|&b| an.right_coprime(a, b)) {
            let meet = an.right_ideal(a).intersection(an.right_ideal(b));
            if meet.is_subset(j) {
                audit.radical_pairs += 1;
                let wide = lifted(an.right_ideal(a)).intersection(&lifted(an.right_ideal(b)));
                if !wide.is_subset(j) {
                    audit.radical_failures.push((a, b));
                }
                continue;
            }
            audit.non_radical_pairs += 1;
            match strict_refinement(an, a, b) {
                Some(smaller) => {
                    let canonical = poset
                        .index_of_key((an.principal_index(a), an.principal_index(b)))
                        .is_some_and(|i| poset.class(i).generators() == (a, b));
                    if canonical {
                        audit.refinements.push(((a, b), smaller));
                    }
                }
                None => audit.refinement_failures.push((a, b)),
            }
        }
    }
    audit
}

fn value(report: &ClassificationReport, name: &str) -> bool {
    report.value(name).unwrap_or(false)
}

/// Evaluates every implication on one ring. Predicates that fail to evaluate
/// (a cap was hit) count as false on both sides.
pub fn theorem_audit(an: &Analysis) -> Result<TheoremAudit> {
    an.caps().check_full(an.size())?;
    let report = classify_all(an);
    Ok(theorem_audit_with(an, &report))
}

pub fn theorem_audit_with(an: &Analysis, report: &ClassificationReport) -> TheoremAudit {
    let v = |name| value(report, name);
    let se = v("strongly_exchange");
    let zero_radical = an.radical().len() == 1;
    let implications = vec![
        Implication::new("strongly_exchange_implies_semiregular", se, v("semiregular")),
        Implication::new(
            "strongly_exchange_implies_quotient_left_continuous",
            se,
            v("continuous_mod_radical"),
        ),
        Implication::new("strongly_exchange_implies_semiperfect", se, v("semiperfect")),
        Implication::new(
            "strongly_exchange_with_zero_radical_implies_semisimple",
            se && zero_radical,
            v("semisimple"),
        ),
        Implication::new("local_implies_indecomposable", v("local"), v("indecomposable")),
        Implication::new("local_implies_exchange", v("local"), v("exchange")),
        Implication::new("local_implies_clean", v("local"), v("clean")),
        Implication::new("vn_regular_implies_exchange", v("vn_regular"), v("exchange")),
        Implication::new("semisimple_implies_semiperfect", v("semisimple"), v("semiperfect")),
        Implication::new("semiperfect_implies_semiregular", v("semiperfect"), v("semiregular")),
        Implication::new("semiregular_implies_exchange", v("semiregular"), v("exchange")),
        Implication::new("exchange_implies_strongly_exchange", v("exchange"), se),
        Implication::new("strongly_exchange_implies_exchange", se, v("exchange")),
    ];
    let finite_ring_facts = vec![
        Implication::new("dcc_on_coprime_classes", true, v("perfect_dcc")),
        Implication::new("semiperfect", true, v("semiperfect")),
        Implication::new("exchange", true, v("exchange")),
    ];
    let pairs = pair_lemma_audit(an);
    let passed = implications.iter().all(|i| i.holds)
        && finite_ring_facts.iter().all(|i| i.holds)
        && pairs.passed()
        && report.routes_agree();
    TheoremAudit {
        ring: an.ring().label().to_owned(),
        implications,
        finite_ring_facts,
        pairs,
        strongly_exchange_not_clean: se && !v("clean"),
        passed,
    }
}
